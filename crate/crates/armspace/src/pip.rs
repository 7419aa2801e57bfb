//! Indexed paths: walks from the base paired with a climb index, carrying a
//! partial order and an inconsistency relation. Consistent lower sets of this
//! poset are the combinatorial shadow of arm configurations.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::graph::{
    is_prefix, suffix_decomposition, Graph, GraphPath, VertexId,
};
use crate::{CheckReport, Error, Result};

/// Guard for building the full relation tables (quadratic in element count).
pub const DEFAULT_ELEMENT_LIMIT: usize = 64;

/// A walk from the base together with a climb index.
/// The derived order (path lexicographic, then index) is the canonical
/// element order used everywhere ties must be broken.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexedPath {
    pub path: GraphPath,
    pub a: usize,
}

impl IndexedPath {
    pub fn new(path: GraphPath, a: usize) -> IndexedPath {
        IndexedPath { path, a }
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("({}, {})", self.path.display(g), self.a)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let names: Vec<_> = self.path.vertices().iter().map(|&v| g.name(v)).collect();
        serde_json::json!({ "path": names, "a": self.a })
    }

    pub fn from_json(g: &Graph, v: &serde_json::Value) -> Result<IndexedPath> {
        let doc: IndexedPathDoc = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("indexed path: {e}")))?;
        let names: Vec<&str> = doc.path.iter().map(String::as_str).collect();
        Ok(IndexedPath {
            path: GraphPath::from_names(g, &names)?,
            a: doc.a,
        })
    }
}

#[derive(serde::Deserialize)]
struct IndexedPathDoc {
    path: Vec<String>,
    a: usize,
}

/// Largest admissible climb index for the walk `p` with arm length `ell`,
/// or `None` when `p` supports no indexed path at all.
pub fn index_cap(ell: usize, p: &GraphPath) -> Option<usize> {
    if p.is_empty() {
        return None;
    }
    let n = suffix_decomposition(p).unwrap().block_count();
    (ell + 1).checked_sub(p.len() + n)
}

/// Membership test for the indexed-path poset with arm length `ell`.
pub fn ip_contains(ell: usize, u: &IndexedPath) -> bool {
    index_cap(ell, &u.path).is_some_and(|cap| u.a <= cap)
}

/// The partial order: `u` is below `v` when `u.path` is a prefix of `v.path`
/// and the block count of `u.path` plus `u.a` is at least the block of
/// `v.path` containing the last edge of `u.path` plus `v.a`. Raising the
/// index lowers the element; extending the path (without raising the index
/// past the reuse depth) raises it.
pub fn ip_leq(u: &IndexedPath, v: &IndexedPath) -> bool {
    if u.path.is_empty() || v.path.is_empty() || !is_prefix(&u.path, &v.path) {
        return false;
    }
    let nu = suffix_decomposition(&u.path).unwrap().block_count();
    let dv = suffix_decomposition(&v.path).unwrap().block_of(u.path.len());
    nu + u.a >= dv + v.a
}

/// Two indexed paths conflict exactly when neither walk is a prefix of the
/// other.
pub fn ip_inconsistent(u: &IndexedPath, v: &IndexedPath) -> bool {
    !is_prefix(&u.path, &v.path) && !is_prefix(&v.path, &u.path)
}

/// All elements strictly below `u` in the poset for arm length `ell`.
pub fn predecessors(ell: usize, u: &IndexedPath) -> Vec<IndexedPath> {
    let mut out = Vec::new();
    for i in 1..=u.path.len() {
        let sigma = u.path.prefix(i);
        let Some(cap) = index_cap(ell, &sigma) else {
            continue;
        };
        for c in 0..=cap {
            let w = IndexedPath::new(sigma.clone(), c);
            if w != *u && ip_leq(&w, u) {
                out.push(w);
            }
        }
    }
    out
}

/// Whether the member set is downward closed and free of conflicting pairs.
pub fn is_consistent_lower_set(ell: usize, set: &BTreeSet<IndexedPath>) -> bool {
    for u in set {
        if !ip_contains(ell, u) {
            return false;
        }
        if predecessors(ell, u).iter().any(|w| !set.contains(w)) {
            return false;
        }
    }
    let members: Vec<_> = set.iter().collect();
    for (i, u) in members.iter().enumerate() {
        for v in &members[i + 1..] {
            if ip_inconsistent(u, v) {
                return false;
            }
        }
    }
    true
}

/// The maximal elements of a member set, in canonical order. Lower sets are
/// serialized through this antichain.
pub fn maximal_antichain(set: &BTreeSet<IndexedPath>) -> Vec<IndexedPath> {
    set.iter()
        .filter(|u| !set.iter().any(|v| v != *u && ip_leq(u, v)))
        .cloned()
        .collect()
}

pub fn antichain_to_json(g: &Graph, set: &BTreeSet<IndexedPath>) -> serde_json::Value {
    serde_json::Value::Array(
        maximal_antichain(set)
            .iter()
            .map(|u| u.to_json(g))
            .collect(),
    )
}

/// A lower set of a materialized poset, stored as sorted element positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LowerSet {
    pub members: Vec<u32>,
    pub consistent: bool,
}

/// The fully materialized indexed-path poset for one instance: every element
/// together with relation tables for the order and the conflicts.
#[derive(Debug)]
pub struct Pip {
    base: VertexId,
    arm_len: usize,
    elements: Vec<IndexedPath>,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    inc: Vec<Vec<bool>>,
}

impl Pip {
    /// Enumerate every indexed path for the instance and tabulate both
    /// relations. Refuses with a guard error when more than `limit` elements
    /// would be created, since the tables are quadratic.
    pub fn build(g: &Graph, base: VertexId, arm_len: usize, limit: usize) -> Result<Pip> {
        if base >= g.vertex_count() {
            return Err(Error::Invalid {
                kind: "pip",
                reason: format!("base vertex id {base} out of range"),
            });
        }
        // A walk admits indexed paths exactly when edges + blocks <= ell + 1,
        // and that sum only grows along extensions, so it prunes the search.
        let paths = crate::graph::enumerate_gb_paths(g, base, |len, n| len + n <= arm_len + 1);
        let mut elements = Vec::new();
        for p in paths {
            let cap = index_cap(arm_len, &p).unwrap();
            for a in 0..=cap {
                elements.push(IndexedPath::new(p.clone(), a));
                if elements.len() > limit {
                    return Err(Error::Guard {
                        what: "indexed-path poset construction",
                        needed: elements.len(),
                        limit,
                    });
                }
            }
        }
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let m = elements.len();
        let labels = elements.iter().map(|u| u.display(g)).collect();
        let mut leq = vec![vec![false; m]; m];
        let mut inc = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                leq[i][j] = ip_leq(&elements[i], &elements[j]);
                inc[i][j] = ip_inconsistent(&elements[i], &elements[j]);
            }
        }
        Ok(Pip {
            base,
            arm_len,
            elements,
            labels,
            leq,
            inc,
        })
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn arm_len(&self) -> usize {
        self.arm_len
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[IndexedPath] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, u: &IndexedPath) -> Option<usize> {
        self.elements.binary_search(u).ok()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn inconsistent(&self, i: usize, j: usize) -> bool {
        self.inc[i][j]
    }

    /// Clones of the relation tables, for callers that want to perturb them
    /// and re-run the axiom checks.
    pub fn relation_tables(&self) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
        (self.leq.clone(), self.inc.clone())
    }

    /// Check the poset-with-conflicts axioms on the stored tables.
    pub fn verify_axioms(&self) -> CheckReport {
        self.verify_axioms_with(&self.leq, &self.inc)
    }

    /// Same checks against caller-supplied tables of the same size.
    pub fn verify_axioms_with(&self, leq: &[Vec<bool>], inc: &[Vec<bool>]) -> CheckReport {
        const MAX_WITNESSES: usize = 5;
        let m = self.elements.len();
        let mut report = CheckReport::pass("poset axioms");
        let name = |i: usize| self.labels[i].clone();
        let flag = |report: &mut CheckReport, detail: String| {
            if report.details.len() < MAX_WITNESSES {
                report.record_failure(detail);
            } else {
                report.passed = false;
            }
        };
        for i in 0..m {
            if !leq[i][i] {
                flag(&mut report, format!("reflexivity fails at {}", name(i)));
            }
            if inc[i][i] {
                flag(
                    &mut report,
                    format!("{} is marked inconsistent with itself", name(i)),
                );
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i != j && leq[i][j] && leq[j][i] {
                    flag(
                        &mut report,
                        format!("antisymmetry fails on {} and {}", name(i), name(j)),
                    );
                }
                if inc[i][j] != inc[j][i] {
                    flag(
                        &mut report,
                        format!("inconsistency not symmetric on {} and {}", name(i), name(j)),
                    );
                }
                if inc[i][j] && (leq[i][j] || leq[j][i]) {
                    flag(
                        &mut report,
                        format!("{} and {} are both comparable and inconsistent", name(i), name(j)),
                    );
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..m {
                    if leq[j][k] && !leq[i][k] {
                        flag(
                            &mut report,
                            format!(
                                "transitivity fails on {} <= {} <= {}",
                                name(i),
                                name(j),
                                name(k)
                            ),
                        );
                    }
                }
            }
        }
        // A conflict survives raising either side: if u conflicts with v and
        // v lies below w, then u conflicts with w.
        for i in 0..m {
            for j in 0..m {
                if !inc[i][j] {
                    continue;
                }
                for k in 0..m {
                    if leq[j][k] && !inc[i][k] {
                        flag(
                            &mut report,
                            format!(
                                "conflict of {} with {} does not propagate up to {}",
                                name(i),
                                name(j),
                                name(k)
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    /// The lower set generated by the given element positions, with its
    /// consistency flag.
    pub fn lower_set_generated(&self, gens: &[usize]) -> LowerSet {
        let members: Vec<u32> = (0..self.elements.len())
            .filter(|&i| gens.iter().any(|&g| self.leq[i][g]))
            .map(|i| i as u32)
            .collect();
        let consistent = !members
            .iter()
            .enumerate()
            .any(|(k, &i)| members[k + 1..].iter().any(|&j| self.inc[i as usize][j as usize]));
        LowerSet {
            members,
            consistent,
        }
    }

    /// Maximal elements among the given member positions.
    pub fn maximal_of(&self, members: &[u32]) -> Vec<u32> {
        members
            .iter()
            .copied()
            .filter(|&i| {
                !members
                    .iter()
                    .any(|&j| j != i && self.leq[i as usize][j as usize])
            })
            .collect()
    }

    /// Every consistent lower set, found by growing sets one addable element
    /// at a time. Output is sorted by size, then lexicographically by member
    /// positions. Guarded by the element count: the result can be
    /// exponential in it.
    pub fn enumerate_consistent_lower_sets(&self, limit: usize) -> Result<Vec<LowerSet>> {
        let m = self.elements.len();
        if m > limit {
            return Err(Error::Guard {
                what: "consistent lower set enumeration",
                needed: m,
                limit,
            });
        }
        let words = m.div_ceil(64);
        let mut preds = vec![vec![0u64; words]; m];
        let mut conflicts = vec![vec![0u64; words]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && self.leq[j][i] {
                    preds[i][j / 64] |= 1 << (j % 64);
                }
                if self.inc[i][j] {
                    conflicts[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
        let disjoint = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & y == 0);

        let empty = vec![0u64; words];
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        seen.insert(empty.clone());
        let mut queue = VecDeque::from([empty]);
        while let Some(mu) = queue.pop_front() {
            for u in 0..m {
                if mu[u / 64] >> (u % 64) & 1 == 1 {
                    continue;
                }
                if subset(&preds[u], &mu) && disjoint(&conflicts[u], &mu) {
                    let mut nu = mu.clone();
                    nu[u / 64] |= 1 << (u % 64);
                    if !seen.contains(&nu) {
                        if seen.len() >= limit {
                            return Err(Error::Guard {
                                what: "consistent lower set enumeration",
                                needed: seen.len() + 1,
                                limit,
                            });
                        }
                        seen.insert(nu.clone());
                        queue.push_back(nu);
                    }
                }
            }
        }
        let mut out: Vec<LowerSet> = seen
            .into_iter()
            .map(|mask| {
                let members: Vec<u32> = (0..m)
                    .filter(|&i| mask[i / 64] >> (i % 64) & 1 == 1)
                    .map(|i| i as u32)
                    .collect();
                LowerSet {
                    members,
                    consistent: true,
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members))
        });
        Ok(out)
    }

    /// Cover pairs `(i, j)` of the order: `i` strictly below `j` with nothing
    /// in between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.elements.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..m)
                    .any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Conflicting pairs `(i, j)`, `i < j`, such that no pair below them in
    /// either coordinate also conflicts. Since conflicts propagate upward,
    /// it suffices to look one cover step down on each side.
    pub fn minimal_inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.elements.len();
        let covers = self.cover_pairs();
        let mut below = vec![Vec::new(); m];
        for &(lo, hi) in &covers {
            below[hi].push(lo);
        }
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if !self.inc[i][j] {
                    continue;
                }
                let reducible = below[i].iter().any(|&i2| self.inc[i2][j])
                    || below[j].iter().any(|&j2| self.inc[i][j2]);
                if !reducible {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
