//! Weakly increasing labelings of walks ("tableaux"), which encode arm
//! configurations; their infinity-extended forms over a fixed spine; and the
//! distributive lattice those extensions form.

use std::collections::HashMap;

use crate::graph::{enumerate_gb_paths, is_prefix, suffix_decomposition, Graph, GraphPath, VertexId};
use crate::lattice::FiniteLattice;
use crate::pip::{index_cap, ip_leq, IndexedPath};
use crate::{CheckReport, Error, Result};

/// A walk with one label per edge. Valid tableaux have weakly increasing
/// labels, strictly increasing across edges that lead into a revisited
/// vertex, with the last label bounded by `ell - len`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PathTableau {
    pub path: GraphPath,
    pub labels: Vec<usize>,
}

impl PathTableau {
    pub fn display(&self, g: &Graph) -> String {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        format!("{}:{}", self.path.display(g), labels.join(","))
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let names: Vec<_> = self.path.vertices().iter().map(|&v| g.name(v)).collect();
        serde_json::json!({ "path": names, "labels": self.labels })
    }

    pub fn from_json(g: &Graph, v: &serde_json::Value) -> Result<PathTableau> {
        let doc: TableauDoc = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("tableau: {e}")))?;
        let names: Vec<&str> = doc.path.iter().map(String::as_str).collect();
        Ok(PathTableau {
            path: GraphPath::from_names(g, &names)?,
            labels: doc.labels,
        })
    }
}

#[derive(serde::Deserialize)]
struct TableauDoc {
    path: Vec<String>,
    labels: Vec<usize>,
}

/// First violated tableau condition, rendered, or `None` when valid.
pub fn tableau_violation(t: &PathTableau, ell: usize) -> Option<String> {
    let k = t.path.len();
    if t.labels.len() != k {
        return Some(format!(
            "walk has {k} edges but {} labels",
            t.labels.len()
        ));
    }
    if t.labels.windows(2).any(|w| w[0] > w[1]) {
        return Some("labels are not weakly increasing".into());
    }
    let verts = t.path.vertices();
    for j in 1..=k {
        for i in 1..j {
            if verts[i - 1] == verts[j] && t.labels[i - 1] >= t.labels[j - 1] {
                return Some(format!(
                    "revisit of vertex at edges {i} and {j} needs a strictly larger label"
                ));
            }
        }
    }
    if k > 0 && t.labels[k - 1] + k > ell {
        return Some(format!(
            "final label {} plus length {k} exceeds arm length {ell}",
            t.labels[k - 1]
        ));
    }
    None
}

pub fn is_tableau(t: &PathTableau, ell: usize) -> bool {
    tableau_violation(t, ell).is_none()
}

/// The tableau that climbs `a` extra steps before each block of the suffix
/// decomposition: edge `r` gets label `block_of(r) + a - 1`.
pub fn tau(u: &IndexedPath) -> Result<PathTableau> {
    if u.path.is_empty() {
        return Err(Error::Invalid {
            kind: "indexed path",
            reason: "the empty walk carries no index".into(),
        });
    }
    let d = suffix_decomposition(&u.path)?;
    let labels = (1..=u.path.len()).map(|r| d.block_of(r) + u.a - 1).collect();
    Ok(PathTableau {
        path: u.path.clone(),
        labels,
    })
}

/// Whether the tableau is the image of an indexed path: reconstruct the
/// candidate index from the final label and compare.
pub fn is_tight(t: &PathTableau) -> bool {
    if t.path.is_empty() {
        return false;
    }
    let n = suffix_decomposition(&t.path).unwrap().block_count();
    let Some(a) = (t.labels[t.labels.len() - 1] + 1).checked_sub(n) else {
        return false;
    };
    tau(&IndexedPath::new(t.path.clone(), a)).unwrap().labels == t.labels
}

/// Every tableau for arm length `ell` over walks from `b`, including the
/// empty one, sorted. Guarded by `limit` on the output size.
pub fn enumerate_tableaux(
    g: &Graph,
    b: VertexId,
    ell: usize,
    limit: usize,
) -> Result<Vec<PathTableau>> {
    let mut out = vec![PathTableau {
        path: GraphPath::empty_at(b),
        labels: Vec::new(),
    }];
    fn rec(
        path: &GraphPath,
        ell: usize,
        limit: usize,
        labels: &mut Vec<usize>,
        out: &mut Vec<PathTableau>,
    ) -> Result<()> {
        let k = path.len();
        if labels.len() == k {
            out.push(PathTableau {
                path: path.clone(),
                labels: labels.clone(),
            });
            if out.len() > limit {
                return Err(Error::Guard {
                    what: "tableau enumeration",
                    needed: out.len(),
                    limit,
                });
            }
            return Ok(());
        }
        let j = labels.len() + 1;
        let verts = path.vertices();
        let mut lo = labels.last().copied().unwrap_or(0);
        for t in 1..j {
            if verts[t - 1] == verts[j] {
                lo = lo.max(labels[t - 1] + 1);
            }
        }
        for val in lo..=ell - k {
            labels.push(val);
            rec(path, ell, limit, labels, out)?;
            labels.pop();
        }
        Ok(())
    }
    // A walk admits a labeling exactly when its minimal labeling fits, i.e.
    // when length plus block count stays within `ell + 1`.
    for path in enumerate_gb_paths(g, b, |len, n| len + n <= ell + 1) {
        rec(&path, ell, limit, &mut Vec::new(), &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// A label that may be infinite; infinite labels mark edges of the spine the
/// arm does not reach. The derived order puts every finite label below the
/// infinite one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtLabel {
    Fin(usize),
    Inf,
}

impl ExtLabel {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            ExtLabel::Fin(v) => serde_json::json!(v),
            ExtLabel::Inf => serde_json::json!("inf"),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ExtLabel> {
        if v.as_str() == Some("inf") {
            return Ok(ExtLabel::Inf);
        }
        v.as_u64()
            .map(|n| ExtLabel::Fin(n as usize))
            .ok_or_else(|| Error::Parse(format!("label must be a number or \"inf\", got {v}")))
    }
}

/// A tableau padded out to a fixed spine with infinite labels. Two extended
/// tableaux over the same spine compare by `u <= v` iff `u` is pointwise at
/// least `v`: lower labels mean the arm reaches further.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtendedTableau {
    pub spine: GraphPath,
    pub values: Vec<ExtLabel>,
}

impl ExtendedTableau {
    pub fn display(&self, g: &Graph) -> String {
        let vals: Vec<String> = self
            .values
            .iter()
            .map(|v| match v {
                ExtLabel::Fin(x) => x.to_string(),
                ExtLabel::Inf => "inf".into(),
            })
            .collect();
        format!("{}:{}", self.spine.display(g), vals.join(","))
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let names: Vec<_> = self.spine.vertices().iter().map(|&v| g.name(v)).collect();
        let labels: Vec<_> = self.values.iter().map(|v| v.to_json()).collect();
        serde_json::json!({ "path": names, "labels": labels })
    }
}

/// Pad a tableau out to the spine `q` with infinite labels. The tableau's
/// walk must be a prefix of `q`.
pub fn extend(t: &PathTableau, q: &GraphPath) -> Result<ExtendedTableau> {
    if !is_prefix(&t.path, q) {
        return Err(Error::Invalid {
            kind: "extended tableau",
            reason: "the tableau's walk is not a prefix of the spine".into(),
        });
    }
    let mut values: Vec<ExtLabel> = t.labels.iter().map(|&l| ExtLabel::Fin(l)).collect();
    values.resize(q.len(), ExtLabel::Inf);
    Ok(ExtendedTableau {
        spine: q.clone(),
        values,
    })
}

/// Drop the infinite padding, recovering the finite tableau.
pub fn truncate(u: &ExtendedTableau) -> PathTableau {
    let finite: Vec<usize> = u
        .values
        .iter()
        .take_while(|v| matches!(v, ExtLabel::Fin(_)))
        .map(|v| match v {
            ExtLabel::Fin(x) => *x,
            ExtLabel::Inf => unreachable!(),
        })
        .collect();
    PathTableau {
        path: u.spine.prefix(finite.len()),
        labels: finite,
    }
}

/// Valid extended tableaux are weakly increasing (so the infinite labels
/// form a suffix) and truncate to a valid tableau.
pub fn is_extended_tableau(u: &ExtendedTableau, ell: usize) -> bool {
    u.values.len() == u.spine.len()
        && u.values.windows(2).all(|w| w[0] <= w[1])
        && is_tableau(&truncate(u), ell)
}

/// The order: pointwise at-least, over a common spine.
pub fn ext_leq(u: &ExtendedTableau, v: &ExtendedTableau) -> bool {
    u.spine == v.spine
        && u.values
            .iter()
            .zip(&v.values)
            .all(|(a, b)| a >= b)
}

fn ext_combine(
    u: &ExtendedTableau,
    v: &ExtendedTableau,
    pick_max: bool,
) -> Result<ExtendedTableau> {
    if u.spine != v.spine {
        return Err(Error::Invalid {
            kind: "extended tableau",
            reason: "meet/join requires a common spine".into(),
        });
    }
    let values = u
        .values
        .iter()
        .zip(&v.values)
        .map(|(&a, &b)| if pick_max { a.max(b) } else { a.min(b) })
        .collect();
    Ok(ExtendedTableau {
        spine: u.spine.clone(),
        values,
    })
}

/// Greatest lower bound: pointwise maximum of the labels.
pub fn ext_meet(u: &ExtendedTableau, v: &ExtendedTableau) -> Result<ExtendedTableau> {
    ext_combine(u, v, true)
}

/// Least upper bound: pointwise minimum of the labels.
pub fn ext_join(u: &ExtendedTableau, v: &ExtendedTableau) -> Result<ExtendedTableau> {
    ext_combine(u, v, false)
}

/// Every extended tableau over the spine `q`, sorted by label vector.
/// Guarded by `limit` on the output size.
pub fn enumerate_extended(
    q: &GraphPath,
    ell: usize,
    limit: usize,
) -> Result<Vec<ExtendedTableau>> {
    fn rec(
        q: &GraphPath,
        ell: usize,
        limit: usize,
        buf: &mut Vec<ExtLabel>,
        out: &mut Vec<ExtendedTableau>,
    ) -> Result<()> {
        let emit = |values: Vec<ExtLabel>, out: &mut Vec<ExtendedTableau>| {
            out.push(ExtendedTableau {
                spine: q.clone(),
                values,
            });
            if out.len() > limit {
                return Err(Error::Guard {
                    what: "extended tableau enumeration",
                    needed: out.len(),
                    limit,
                });
            }
            Ok(())
        };
        let i = buf.len();
        if i == q.len() {
            return emit(buf.clone(), out);
        }
        // Going infinite here forces the rest of the spine infinite.
        let mut padded = buf.clone();
        padded.resize(q.len(), ExtLabel::Inf);
        emit(padded, out)?;
        // Otherwise choose a finite label for edge i + 1.
        let j = i + 1;
        let Some(hi) = ell.checked_sub(j) else {
            return Ok(());
        };
        let mut lo = 0;
        if let Some(ExtLabel::Fin(prev)) = buf.last() {
            lo = *prev;
        }
        let verts = q.vertices();
        for t in 1..j {
            if verts[t - 1] == verts[j] {
                if let ExtLabel::Fin(earlier) = buf[t - 1] {
                    lo = lo.max(earlier + 1);
                }
            }
        }
        for v in lo..=hi {
            buf.push(ExtLabel::Fin(v));
            rec(q, ell, limit, buf, out)?;
            buf.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(q, ell, limit, &mut Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

/// Enumerate the extended tableaux over `q` and assemble them into a lattice
/// under the pointwise order.
pub fn build_extended_lattice(
    q: &GraphPath,
    ell: usize,
    limit: usize,
) -> Result<(Vec<ExtendedTableau>, FiniteLattice)> {
    let elements = enumerate_extended(q, ell, limit)?;
    let n = elements.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = ext_leq(&elements[i], &elements[j]);
        }
    }
    let lattice = FiniteLattice::from_leq(leq, limit)?;
    Ok((elements, lattice))
}

/// Check that indexed paths over prefixes of `q` map, via their tableaux,
/// exactly onto the join-irreducibles of the extended lattice, matching the
/// two orders.
pub fn check_spine_irreducibles(q: &GraphPath, ell: usize, limit: usize) -> Result<CheckReport> {
    let (elements, lattice) = build_extended_lattice(q, ell, limit)?;
    let pos: HashMap<&[ExtLabel], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.values.as_slice(), i))
        .collect();

    let mut ips = Vec::new();
    for i in 1..=q.len() {
        let sigma = q.prefix(i);
        if let Some(cap) = index_cap(ell, &sigma) {
            for a in 0..=cap {
                ips.push(IndexedPath::new(sigma.clone(), a));
            }
        }
    }

    let mut report = CheckReport::pass("indexed paths as join-irreducibles");
    let mut images = Vec::with_capacity(ips.len());
    for u in &ips {
        let ext = extend(&tau(u)?, q)?;
        match pos.get(ext.values.as_slice()) {
            Some(&ix) => images.push(ix),
            None => {
                report.record_failure(format!(
                    "image of an indexed path is not an extended tableau: {:?}",
                    ext.values
                ));
                return Ok(report);
            }
        }
    }

    let mut sorted_images = images.clone();
    sorted_images.sort_unstable();
    sorted_images.dedup();
    if sorted_images.len() != images.len() {
        report.record_failure("two indexed paths share an image".into());
    }
    let irr = lattice.join_irreducibles();
    if sorted_images != irr {
        report.record_failure(format!(
            "images ({}) and join-irreducibles ({}) differ",
            sorted_images.len(),
            irr.len()
        ));
    }
    for (i, u) in ips.iter().enumerate() {
        for (j, v) in ips.iter().enumerate() {
            if ip_leq(u, v) != lattice.leq(images[i], images[j]) {
                report.record_failure(format!(
                    "order mismatch between indexed paths {i} and {j}"
                ));
            }
        }
    }
    report.note(format!(
        "{} indexed paths over {} lattice elements",
        ips.len(),
        elements.len()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_gb_paths, Graph};
    use crate::pip::Pip;

    fn triangle() -> Graph {
        Graph::new(
            vec!["b".into(), "a".into(), "c".into()],
            &[
                ("b".into(), "a".into()),
                ("a".into(), "c".into()),
                ("c".into(), "b".into()),
            ],
            Some("b"),
        )
        .unwrap()
    }

    fn fig_graph() -> Graph {
        Graph::new(
            vec!["b".into(), "a".into(), "c".into(), "d".into()],
            &[
                ("b".into(), "a".into()),
                ("a".into(), "c".into()),
                ("c".into(), "b".into()),
                ("a".into(), "d".into()),
            ],
            Some("b"),
        )
        .unwrap()
    }

    fn tab(g: &Graph, names: &[&str], labels: &[usize]) -> PathTableau {
        PathTableau {
            path: GraphPath::from_names(g, names).unwrap(),
            labels: labels.to_vec(),
        }
    }

    #[test]
    fn validity_samples() {
        let g = triangle();
        assert!(is_tableau(&tab(&g, &["b", "a", "c"], &[1, 1]), 5));
        assert!(is_tableau(&tab(&g, &["b"], &[]), 5));
        assert!(!is_tableau(&tab(&g, &["b", "a", "c"], &[2, 1]), 5));
        assert!(!is_tableau(&tab(&g, &["b", "a", "c"], &[1]), 5));
        // Revisiting b needs a strictly larger label.
        assert!(!is_tableau(&tab(&g, &["b", "a", "b"], &[1, 1]), 5));
        assert!(is_tableau(&tab(&g, &["b", "a", "b"], &[1, 2]), 5));
        // Final label plus length must fit the arm.
        assert!(!is_tableau(&tab(&g, &["b", "a", "c"], &[1, 4]), 5));
        assert!(is_tableau(&tab(&g, &["b", "a", "c"], &[1, 3]), 5));
    }

    #[test]
    fn tau_on_a_two_block_walk() {
        let g = fig_graph();
        let p = GraphPath::from_names(&g, &["b", "a", "d", "a"]).unwrap();
        let t = tau(&IndexedPath::new(p, 1)).unwrap();
        assert_eq!(t.labels, [1, 1, 2]);
        assert!(is_tight(&t));
        assert!(tau(&IndexedPath::new(GraphPath::empty_at(0), 0)).is_err());
    }

    #[test]
    fn tau_images_are_valid_and_tight() {
        let g = triangle();
        let pip = Pip::build(&g, 0, 5, 64).unwrap();
        for u in pip.elements() {
            let t = tau(u).unwrap();
            assert!(is_tableau(&t, 5), "tau of {} invalid", u.display(&g));
            assert!(is_tight(&t), "tau of {} not tight", u.display(&g));
        }
    }

    /// Enumerate every tableau for the instance by depth-first labeling.
    fn all_tableaux(g: &Graph, b: usize, ell: usize) -> Vec<PathTableau> {
        fn labelings(
            p: &GraphPath,
            ell: usize,
            buf: &mut Vec<usize>,
            out: &mut Vec<PathTableau>,
        ) {
            let j = buf.len() + 1;
            if j > p.len() {
                out.push(PathTableau {
                    path: p.clone(),
                    labels: buf.clone(),
                });
                return;
            }
            let mut lo = buf.last().copied().unwrap_or(0);
            let verts = p.vertices();
            for t in 1..j {
                if verts[t - 1] == verts[j] {
                    lo = lo.max(buf[t - 1] + 1);
                }
            }
            let Some(hi) = ell.checked_sub(j) else { return };
            for v in lo..=hi {
                buf.push(v);
                labelings(p, ell, buf, out);
                buf.pop();
            }
        }
        let mut out = vec![PathTableau {
            path: GraphPath::empty_at(b),
            labels: vec![],
        }];
        for p in enumerate_gb_paths(g, b, |len, n| len + n <= ell + 1) {
            labelings(&p, ell, &mut Vec::new(), &mut out);
        }
        out
    }

    #[test]
    fn tightness_matches_the_pointwise_maximum_oracle() {
        let g = triangle();
        let all = all_tableaux(&g, 0, 4);
        assert!(all.len() > 30);
        for t in &all {
            assert!(is_tableau(t, 4));
            if t.path.is_empty() {
                assert!(!is_tight(t));
                continue;
            }
            // Oracle: tight tableaux are pointwise-maximal among tableaux on
            // the same walk with the same final label.
            let last = *t.labels.last().unwrap();
            let peers: Vec<_> = all
                .iter()
                .filter(|s| s.path == t.path && s.labels.last() == Some(&last))
                .collect();
            let mut max = vec![0; t.labels.len()];
            for s in &peers {
                for (m, &l) in max.iter_mut().zip(&s.labels) {
                    *m = (*m).max(l);
                }
            }
            assert_eq!(
                is_tight(t),
                max == t.labels,
                "tightness disagrees on {}",
                t.display(&g)
            );
        }
    }

    #[test]
    fn enumeration_agrees_with_the_depth_first_oracle() {
        let g = triangle();
        for ell in 0..=4 {
            let got = enumerate_tableaux(&g, 0, ell, 10_000).unwrap();
            let mut want = all_tableaux(&g, 0, ell);
            want.sort();
            assert_eq!(got, want, "arm length {ell}");
            assert!(got.windows(2).all(|w| w[0] < w[1]), "no duplicates");
        }
        assert!(matches!(
            enumerate_tableaux(&g, 0, 4, 10),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn extension_and_truncation_round_trip() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let t = tab(&g, &["b", "a"], &[2]);
        let u = extend(&t, &q).unwrap();
        assert_eq!(u.values, [ExtLabel::Fin(2), ExtLabel::Inf]);
        assert!(is_extended_tableau(&u, 5));
        assert_eq!(truncate(&u), t);
        let wrong = tab(&g, &["b", "c"], &[0]);
        assert!(extend(&wrong, &q).is_err());
    }

    #[test]
    fn extended_order_and_bounds() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let low = extend(&tab(&g, &["b"], &[]), &q).unwrap();
        let mid = extend(&tab(&g, &["b", "a"], &[1]), &q).unwrap();
        let high = extend(&tab(&g, &["b", "a", "c"], &[1, 1]), &q).unwrap();
        assert!(ext_leq(&low, &mid) && ext_leq(&mid, &high));
        assert!(!ext_leq(&high, &mid));
        let other = extend(&tab(&g, &["b", "a"], &[3]), &q).unwrap();
        // mid = (1, inf), other = (3, inf): meet climbs, join descends.
        assert_eq!(
            ext_meet(&mid, &other).unwrap().values,
            [ExtLabel::Fin(3), ExtLabel::Inf]
        );
        assert_eq!(
            ext_join(&mid, &other).unwrap().values,
            [ExtLabel::Fin(1), ExtLabel::Inf]
        );
        let p = GraphPath::from_names(&g, &["b", "c"]).unwrap();
        let foreign = extend(&tab(&g, &["b"], &[]), &p).unwrap();
        assert!(ext_meet(&mid, &foreign).is_err());
        assert!(!ext_leq(&mid, &foreign));
    }

    #[test]
    fn sixteen_extensions_over_the_two_edge_spine() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let all = enumerate_extended(&q, 5, 64).unwrap();
        assert_eq!(all.len(), 16);
        for u in &all {
            assert!(is_extended_tableau(u, 5));
        }
        assert!(matches!(
            enumerate_extended(&q, 5, 10),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn revisits_constrain_the_extensions() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "b"]).unwrap();
        let all = enumerate_extended(&q, 3, 64).unwrap();
        // (0,1), (0,inf), (1,inf), (2,inf), (inf,inf).
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn lattice_operations_match_the_pointwise_ones() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let (elements, lat) = build_extended_lattice(&q, 5, 64).unwrap();
        assert_eq!(lat.size(), 16);
        for (i, u) in elements.iter().enumerate() {
            for (j, v) in elements.iter().enumerate() {
                assert_eq!(elements[lat.meet(i, j)], ext_meet(u, v).unwrap());
                assert_eq!(elements[lat.join(i, j)], ext_join(u, v).unwrap());
            }
        }
        // Bottom is the all-infinite extension; top has the least labels.
        assert!(elements[lat.bottom()]
            .values
            .iter()
            .all(|v| *v == ExtLabel::Inf));
        assert_eq!(
            elements[lat.top()].values,
            [ExtLabel::Fin(0), ExtLabel::Fin(0)]
        );
        assert!(lat.verify_irreducible_representation().passed);
    }

    #[test]
    fn spine_check_matches_indexed_paths() {
        let g = triangle();
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let report = check_spine_irreducibles(&q, 5, 64).unwrap();
        assert!(report.passed, "{:?}", report.details);
        let (_, lat) = build_extended_lattice(&q, 5, 64).unwrap();
        assert_eq!(lat.join_irreducibles().len(), 9);
    }

    #[test]
    fn spine_check_handles_revisiting_spines() {
        let g = fig_graph();
        for names in [
            vec!["b", "a", "d", "a"],
            vec!["b", "a", "c", "b"],
            vec!["b", "c", "a", "d"],
        ] {
            let q = GraphPath::from_names(&g, &names).unwrap();
            let report = check_spine_irreducibles(&q, 5, 512).unwrap();
            assert!(report.passed, "spine {names:?}: {:?}", report.details);
        }
    }

    #[test]
    fn empty_spine_is_the_one_point_lattice() {
        let q = GraphPath::empty_at(0);
        let (elements, lat) = build_extended_lattice(&q, 5, 64).unwrap();
        assert_eq!(elements.len(), 1);
        assert_eq!(lat.size(), 1);
        assert!(check_spine_irreducibles(&q, 5, 64).unwrap().passed);
    }

    #[test]
    fn json_round_trips() {
        let g = triangle();
        let t = tab(&g, &["b", "a", "c"], &[0, 2]);
        let doc = t.to_json(&g);
        assert_eq!(PathTableau::from_json(&g, &doc).unwrap(), t);
        let q = GraphPath::from_names(&g, &["b", "a", "c"]).unwrap();
        let u = extend(&tab(&g, &["b", "a"], &[1]), &q).unwrap();
        let doc = u.to_json(&g);
        assert_eq!(doc["labels"][1], "inf");
        assert_eq!(ExtLabel::from_json(&doc["labels"][0]).unwrap(), ExtLabel::Fin(1));
        assert_eq!(ExtLabel::from_json(&doc["labels"][1]).unwrap(), ExtLabel::Inf);
        assert!(ExtLabel::from_json(&serde_json::json!(-3)).is_err());
    }
}
