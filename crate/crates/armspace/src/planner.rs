//! Exact distances in the transition graph, move-minimal plans, round
//! schedules of simultaneous moves, and diameter bounds.

use crate::arm::{Configuration, Move, MoveKind};
use crate::graph::{enumerate_gb_paths, GraphPath};
use crate::tableaux::{is_tableau, PathTableau};
use crate::{Error, Instance, Result};

/// Headroom of each horizontal segment: how many raising moves the segment
/// admits before it retracts into the vertical tail. Entry `i` is
/// `ell - label(i) - i`, one-based, always at least 1.
pub fn m_profile(inst: &Instance, x: &Configuration) -> Vec<usize> {
    let t = inst.config_to_tableau(x);
    t.labels
        .iter()
        .enumerate()
        .map(|(i, &l)| inst.arm_len - l - i)
        .collect()
}

fn profile_of(ell: usize, t: &PathTableau) -> Vec<usize> {
    t.labels
        .iter()
        .enumerate()
        .map(|(i, &l)| ell - l - i)
        .collect()
}

fn common_prefix_edges(p: &GraphPath, q: &GraphPath) -> usize {
    p.vertices()
        .iter()
        .zip(q.vertices())
        .take_while(|(a, b)| a == b)
        .count()
        - 1
}

fn tableau_distance(ell: usize, tx: &PathTableau, ty: &PathTableau) -> usize {
    let mx = profile_of(ell, tx);
    let my = profile_of(ell, ty);
    let r = common_prefix_edges(&tx.path, &ty.path);
    let tail = |m: &[usize]| m[r.min(m.len())..].iter().sum::<usize>();
    let split: usize = (0..r.min(mx.len()).min(my.len()))
        .map(|j| mx[j].abs_diff(my[j]))
        .sum();
    tail(&mx) + tail(&my) + split
}

/// Exact distance between two configurations in the transition graph:
/// the profiles are summed where the flattened walks diverge and compared
/// entrywise where they agree.
pub fn distance(inst: &Instance, x: &Configuration, y: &Configuration) -> usize {
    tableau_distance(
        inst.arm_len,
        &inst.config_to_tableau(x),
        &inst.config_to_tableau(y),
    )
}

/// A move sequence from `source` to `target`, optionally grouped into
/// rounds of simultaneously applicable (commuting) moves.
#[derive(Clone, Debug)]
pub struct Plan {
    pub source: Configuration,
    pub target: Configuration,
    pub moves: Vec<Move>,
    /// Indices into `moves`, one list per round, concatenating to `0..len`.
    pub rounds: Option<Vec<Vec<usize>>>,
}

impl Plan {
    pub fn to_json(&self, inst: &Instance) -> serde_json::Value {
        let g = &inst.graph;
        let mut doc = serde_json::json!({
            "source": self.source.to_json(g),
            "target": self.target.to_json(g),
            "moves": self.moves.iter().map(|m| m.to_json(g)).collect::<Vec<_>>(),
        });
        if let Some(rounds) = &self.rounds {
            doc["rounds"] = serde_json::json!(rounds);
        }
        doc
    }
}

/// One pending tableau edit, ordered canonically: position ascending, with
/// edits to an edge's label preceding edits past the end of the walk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Edit {
    /// Raise label `i` by one (raising corner move).
    Bump(usize),
    /// Drop the final edge (raising tail move).
    Shrink,
    /// Lower label `i` by one (lowering corner move).
    Drop(usize),
    /// Append the next target edge at the greatest legal label (lowering
    /// tail move).
    Grow,
}

struct Walkthrough<'a> {
    inst: &'a Instance,
    cur: PathTableau,
    tgt: &'a PathTableau,
}

impl<'a> Walkthrough<'a> {
    /// Positions `i` (1-based) whose minimal-climb prefix lies outside the
    /// target's shadow: past the common walk prefix, or labeled lower than
    /// the target labels it.
    fn removable(&self, i: usize, r: usize) -> bool {
        i > r || self.cur.labels[i - 1] < self.tgt.labels[i - 1]
    }

    /// Apply an edit to the tableau, returning the realizing move.
    fn apply(&mut self, edit: Edit) -> Move {
        let ell = self.inst.arm_len;
        let verts = self.cur.path.vertices().to_vec();
        let k = self.cur.labels.len();
        let m = match edit {
            Edit::Bump(i) => {
                let h = self.cur.labels[i - 1];
                self.cur.labels[i - 1] += 1;
                Move {
                    kind: MoveKind::Corner,
                    up: true,
                    v: verts[i - 1],
                    w: verts[i],
                    h,
                }
            }
            Edit::Shrink => {
                let h = self.cur.labels[k - 1];
                self.cur.labels.pop();
                self.cur.path = self.cur.path.prefix(k - 1);
                Move {
                    kind: MoveKind::Tail,
                    up: true,
                    v: verts[k - 1],
                    w: verts[k],
                    h,
                }
            }
            Edit::Drop(i) => {
                self.cur.labels[i - 1] -= 1;
                Move {
                    kind: MoveKind::Corner,
                    up: false,
                    v: verts[i - 1],
                    w: verts[i],
                    h: self.cur.labels[i - 1],
                }
            }
            Edit::Grow => {
                let w = self.tgt.path.vertices()[k + 1];
                let h = ell - k - 1;
                self.cur.path = self.cur.path.extended(w);
                self.cur.labels.push(h);
                Move {
                    kind: MoveKind::Tail,
                    up: false,
                    v: verts[k],
                    w,
                    h,
                }
            }
        };
        debug_assert!(is_tableau(&self.cur, ell), "edit broke the tableau");
        m
    }

    /// Edits whose single move is legal now and strictly approaches the
    /// target, in canonical order: raising edits by position, then lowering
    /// edits by position. Every returned edit commutes with every other.
    fn candidates(&self) -> Vec<Edit> {
        let ell = self.inst.arm_len;
        let k = self.cur.labels.len();
        let kt = self.tgt.labels.len();
        let r = common_prefix_edges(&self.cur.path, &self.tgt.path);
        let mut out = Vec::new();
        for i in 1..=k {
            if !self.removable(i, r) {
                continue;
            }
            if i == k && self.cur.labels[k - 1] + k == ell {
                out.push(Edit::Shrink);
            } else {
                let mut probe = self.cur.clone();
                probe.labels[i - 1] += 1;
                if is_tableau(&probe, ell) {
                    out.push(Edit::Bump(i));
                }
            }
        }
        for i in 1..=k.min(r) {
            if self.cur.labels[i - 1] > self.tgt.labels[i - 1] {
                let mut probe = self.cur.clone();
                probe.labels[i - 1] -= 1;
                if is_tableau(&probe, ell) {
                    out.push(Edit::Drop(i));
                }
            }
        }
        if r == k && k < kt {
            let mut probe = self.cur.clone();
            probe.path = probe.path.extended(self.tgt.path.vertices()[k + 1]);
            probe.labels.push(ell - k - 1);
            if is_tableau(&probe, ell) {
                out.push(Edit::Grow);
            }
        }
        out
    }
}

fn plan_with(inst: &Instance, x: &Configuration, y: &Configuration, rounds: bool) -> Result<Plan> {
    let mut walk = Walkthrough {
        inst,
        cur: inst.config_to_tableau(x),
        tgt: &inst.config_to_tableau(y),
    };
    let want = tableau_distance(inst.arm_len, &walk.cur, walk.tgt);
    let mut moves = Vec::new();
    let mut schedule = Vec::new();
    while &walk.cur != walk.tgt {
        let cands = walk.candidates();
        if cands.is_empty() {
            return Err(Error::Invalid {
                kind: "plan",
                reason: "no legal approaching move; the planner is stuck".into(),
            });
        }
        let take = if rounds { cands.len() } else { 1 };
        let round: Vec<usize> = (0..take).map(|t| moves.len() + t).collect();
        for edit in cands.into_iter().take(take) {
            moves.push(walk.apply(edit));
        }
        schedule.push(round);
    }
    if moves.len() != want {
        return Err(Error::Invalid {
            kind: "plan",
            reason: format!("planned {} moves where the distance is {want}", moves.len()),
        });
    }
    Ok(Plan {
        source: x.clone(),
        target: y.clone(),
        moves,
        rounds: rounds.then_some(schedule),
    })
}

/// A shortest move sequence from `x` to `y`: raise every segment the target
/// does not keep, then lower into the target, smallest position first.
pub fn plan_moves(inst: &Instance, x: &Configuration, y: &Configuration) -> Result<Plan> {
    plan_with(inst, x, y, false)
}

/// A shortest-known round schedule: each round applies every legal
/// approaching move at once (they always commute).
pub fn plan_rounds(inst: &Instance, x: &Configuration, y: &Configuration) -> Result<Plan> {
    plan_with(inst, x, y, true)
}

/// Half the diameter bound: `⌊(n−1)(ℓ+1)²/2n⌋`, the largest possible total
/// headroom of a configuration over an `n`-vertex graph.
pub fn omega(ell: usize, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Invalid {
            kind: "omega",
            reason: "no graph has zero vertices".into(),
        });
    }
    let ell = ell as u128;
    let n = n as u128;
    let val = (n - 1) * (ell + 1) * (ell + 1) / (2 * n);
    usize::try_from(val).map_err(|_| Error::Invalid {
        kind: "omega",
        reason: "value exceeds the machine word".into(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiameterMode {
    /// Report the bound and hypothesis only.
    Bound,
    /// Maximize the distance formula over every configuration pair.
    ExactBfs,
    /// Use the winding construction directly when the hypothesis holds,
    /// falling back to the all-pairs maximization when it does not.
    ExactFormula,
}

#[derive(Clone, Debug)]
pub struct DiameterReport {
    pub vertex_count: usize,
    pub arm_len: usize,
    /// `2ω(ℓ,n)`; no pair of configurations is further apart than this.
    pub bound: usize,
    /// Whether two cycle-free walks of length `min{ℓ, n−1}` leave the base
    /// through different edges — the condition under which the bound is met.
    pub hypothesis_holds: bool,
    pub exact: Option<usize>,
    pub witness: Option<(Configuration, Configuration)>,
}

impl DiameterReport {
    pub fn to_json(&self, inst: &Instance) -> serde_json::Value {
        let g = &inst.graph;
        serde_json::json!({
            "n": self.vertex_count,
            "len": self.arm_len,
            "bound": self.bound,
            "hypothesis_holds": self.hypothesis_holds,
            "exact": self.exact,
            "witness": self.witness.as_ref().map(|(x, y)| {
                serde_json::json!([x.to_json(g), y.to_json(g)])
            }),
        })
    }
}

/// Cycle-free walks from the base of exactly the hypothesis length, in
/// canonical order.
fn full_length_simple_paths(inst: &Instance) -> Vec<GraphPath> {
    let n = inst.graph.vertex_count();
    let len = inst.arm_len.min(n - 1);
    enumerate_gb_paths(&inst.graph, inst.base, |l, blocks| {
        blocks == 1 && l <= len
    })
    .into_iter()
    .filter(|p| p.len() == len)
    .collect()
}

/// Whether the diameter bound is known to be attained: two cycle-free walks
/// of length `min{ℓ, n−1}` leaving the base through different edges.
pub fn diameter_hypothesis(inst: &Instance) -> bool {
    let paths = full_length_simple_paths(inst);
    if inst.arm_len.min(inst.graph.vertex_count() - 1) == 0 {
        return false;
    }
    paths
        .iter()
        .any(|p| p.vertices()[1] != paths[0].vertices()[1])
}

/// Two configurations at distance exactly `2ω(ℓ,n)`, built by winding the
/// arm back and forth along two cycle-free walks that leave the base through
/// different edges.
pub fn antipodal_pair(inst: &Instance) -> Result<(Configuration, Configuration)> {
    let n = inst.graph.vertex_count();
    let ell = inst.arm_len;
    let paths = full_length_simple_paths(inst);
    let first = paths.first().filter(|p| !p.is_empty());
    let second = paths
        .iter()
        .find(|p| first.is_some_and(|f| p.vertices()[1] != f.vertices()[1]));
    let (Some(p), Some(q)) = (first, second) else {
        return Err(Error::Invalid {
            kind: "antipodal pair",
            reason: "needs two full-length cycle-free walks leaving the base differently".into(),
        });
    };
    let mut m = 0;
    while (m + 1 - 1) / (n - 1) + m + 1 <= ell {
        m += 1;
    }
    let wind = |p: &GraphPath| -> Result<Configuration> {
        let pv = p.vertices();
        let period = 2 * (n - 1);
        let verts: Vec<_> = (0..=m)
            .map(|s| {
                let r = s % period;
                if r <= n - 1 {
                    pv[r]
                } else {
                    pv[period - r]
                }
            })
            .collect();
        let labels = (1..=m).map(|i| (i - 1) / (n - 1)).collect();
        inst.tableau_to_config(&PathTableau {
            path: GraphPath::new(&inst.graph, verts)?,
            labels,
        })
    };
    Ok((wind(p)?, wind(q)?))
}

/// Diameter of the transition graph, to the precision the mode asks for.
pub fn diameter(inst: &Instance, mode: DiameterMode, limit: usize) -> Result<DiameterReport> {
    let n = inst.graph.vertex_count();
    let mut report = DiameterReport {
        vertex_count: n,
        arm_len: inst.arm_len,
        bound: 2 * omega(inst.arm_len, n)?,
        hypothesis_holds: diameter_hypothesis(inst),
        exact: None,
        witness: None,
    };
    match mode {
        DiameterMode::Bound => {}
        DiameterMode::ExactFormula if report.hypothesis_holds => {
            let (x, y) = antipodal_pair(inst)?;
            report.exact = Some(distance(inst, &x, &y));
            report.witness = Some((x, y));
        }
        DiameterMode::ExactBfs | DiameterMode::ExactFormula => {
            let tabs =
                crate::tableaux::enumerate_tableaux(&inst.graph, inst.base, inst.arm_len, limit)?;
            let mut best = (0usize, 0usize, 0usize);
            for i in 0..tabs.len() {
                for j in i + 1..tabs.len() {
                    let d = tableau_distance(inst.arm_len, &tabs[i], &tabs[j]);
                    if d > best.0 {
                        best = (d, i, j);
                    }
                }
            }
            report.exact = Some(best.0);
            if best.1 != best.2 {
                report.witness = Some((
                    inst.tableau_to_config(&tabs[best.1])?,
                    inst.tableau_to_config(&tabs[best.2])?,
                ));
            }
        }
    }
    if let Some(exact) = report.exact {
        debug_assert!(exact <= report.bound);
    }
    Ok(report)
}
