//! Finite lattices given by an explicit order relation, with checks for
//! distributivity and for the representation of a distributive lattice as
//! the lower sets of its join-irreducible subposet.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::{CheckReport, Error, Result};

/// Guard for building meet/join tables (cubic construction cost).
pub const DEFAULT_LATTICE_LIMIT: usize = 2048;

/// A finite lattice over elements `0..size`, with tabulated meets and joins
/// derived from the order relation.
pub struct FiniteLattice {
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Validate that `leq` is a partial order in which every pair has a
    /// greatest lower bound and a least upper bound, and tabulate both.
    pub fn from_leq(leq: Vec<Vec<bool>>, limit: usize) -> Result<FiniteLattice> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::Invalid {
                kind: "lattice",
                reason: "empty element set".into(),
            });
        }
        if n > limit {
            return Err(Error::Guard {
                what: "lattice table construction",
                needed: n,
                limit,
            });
        }
        if leq.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid {
                kind: "lattice",
                reason: "order table is not square".into(),
            });
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Invalid {
                    kind: "lattice",
                    reason: format!("order not reflexive at {i}"),
                });
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Invalid {
                        kind: "lattice",
                        reason: format!("order not antisymmetric on {i}, {j}"),
                    });
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::Invalid {
                            kind: "lattice",
                            reason: format!("order not transitive on {i} <= {j} <= {k}"),
                        });
                    }
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = Self::bound(&leq, i, j, true).ok_or_else(|| Error::Invalid {
                    kind: "lattice",
                    reason: format!("elements {i} and {j} have no meet"),
                })?;
                join[i][j] = Self::bound(&leq, i, j, false).ok_or_else(|| Error::Invalid {
                    kind: "lattice",
                    reason: format!("elements {i} and {j} have no join"),
                })?;
            }
        }
        Ok(FiniteLattice { leq, meet, join })
    }

    /// Greatest lower bound (`lower = true`) or least upper bound of a pair,
    /// when a unique one exists.
    fn bound(leq: &[Vec<bool>], i: usize, j: usize, lower: bool) -> Option<usize> {
        let n = leq.len();
        let below = |x: usize, y: usize| if lower { leq[x][y] } else { leq[y][x] };
        // Sweep for a maximal common bound; if a greatest one exists the
        // sweep lands on it, and the final pass verifies it dominates.
        let mut best: Option<usize> = None;
        for k in 0..n {
            if !(below(k, i) && below(k, j)) {
                continue;
            }
            best = match best {
                Some(b) if !below(b, k) => Some(b),
                _ => Some(k),
            };
        }
        let b = best?;
        let dominates =
            (0..n).all(|k| !(below(k, i) && below(k, j)) || below(k, b));
        dominates.then_some(b)
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn bottom(&self) -> usize {
        (0..self.size())
            .find(|&i| (0..self.size()).all(|j| self.leq[i][j]))
            .expect("a finite lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.size())
            .find(|&i| (0..self.size()).all(|j| self.leq[j][i]))
            .expect("a finite lattice has a top")
    }

    /// First triple violating meet-distribution over join, if any.
    pub fn distributivity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Elements other than the bottom that are not the join of two strictly
    /// smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let n = self.size();
        let bottom = self.bottom();
        (0..n)
            .filter(|&x| {
                x != bottom
                    && (0..n).all(|v| {
                        (0..n).all(|w| self.join(v, w) != x || v == x || w == x)
                    })
            })
            .collect()
    }

    /// All lower sets of the subposet induced on `points`, as sorted subsets,
    /// stopping early once more than `cap` have been found.
    fn lower_sets_of(&self, points: &[usize], cap: usize) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(Vec::new());
        let mut queue = VecDeque::from([Vec::new()]);
        while let Some(cur) = queue.pop_front() {
            if seen.len() > cap {
                break;
            }
            for &p in points {
                if cur.contains(&p) {
                    continue;
                }
                let addable = points
                    .iter()
                    .all(|&q| q == p || !self.leq[q][p] || cur.contains(&q));
                if addable {
                    let mut next = cur.clone();
                    next.push(p);
                    next.sort_unstable();
                    if !seen.contains(&next) {
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Verify that the lattice is distributive and that mapping each element
    /// to the join-irreducibles below it is an order isomorphism onto the
    /// lower sets of the join-irreducible subposet.
    pub fn verify_irreducible_representation(&self) -> CheckReport {
        let mut report = CheckReport::pass("join-irreducible representation");
        if let Some((x, y, z)) = self.distributivity_counterexample() {
            report.record_failure(format!(
                "distributivity fails on elements ({x}, {y}, {z})"
            ));
            return report;
        }
        let n = self.size();
        let irr = self.join_irreducibles();
        let image: Vec<Vec<usize>> = (0..n)
            .map(|x| irr.iter().copied().filter(|&j| self.leq[j][x]).collect())
            .collect();
        let mut positions: HashMap<&[usize], usize> = HashMap::new();
        for (x, set) in image.iter().enumerate() {
            if let Some(&y) = positions.get(set.as_slice()) {
                report.record_failure(format!(
                    "elements {y} and {x} sit over the same irreducibles"
                ));
            }
            positions.insert(set, x);
        }
        for x in 0..n {
            for y in 0..n {
                let contained = image[x].iter().all(|j| image[y].contains(j));
                if self.leq[x][y] != contained {
                    report.record_failure(format!(
                        "order and containment disagree on elements {x}, {y}"
                    ));
                }
            }
        }
        let lower_sets = self.lower_sets_of(&irr, n);
        if lower_sets.len() != n {
            report.record_failure(format!(
                "{} elements but {}{} lower sets of {} irreducibles",
                n,
                lower_sets.len(),
                if lower_sets.len() > n { "+" } else { "" },
                irr.len()
            ));
        } else {
            for set in &lower_sets {
                if !positions.contains_key(set.as_slice()) {
                    report.record_failure(format!(
                        "lower set {set:?} of the irreducibles is not realized"
                    ));
                }
            }
        }
        report
    }
}
