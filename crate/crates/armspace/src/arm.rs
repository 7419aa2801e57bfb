//! Arm configurations in the workspace (graph floors stacked by height), the
//! tail/corner move catalogue, the transition graph, and the bijection
//! between configurations and tableaux.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::graph::{Graph, GraphPath, VertexId};
use crate::tableaux::{tableau_violation, PathTableau};
use crate::{Error, Instance, Result};

/// Guard for breadth-first sweeps over all configurations.
pub const DEFAULT_NODE_LIMIT: usize = 100_000;

/// Guard for checking commutativity of a move set (factorial cost).
pub const DEFAULT_COMMUTE_LIMIT: usize = 6;

/// One joint of the arm: a graph vertex at a height.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WorkVertex {
    pub v: VertexId,
    pub h: usize,
}

/// A placement of the whole arm: a self-avoiding workspace walk from the
/// anchor `(base, 0)` whose steps are horizontal (along a graph edge, same
/// height) or vertical (same vertex, one floor up).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Configuration {
    seq: Vec<WorkVertex>,
}

impl Configuration {
    pub fn new(inst: &Instance, seq: Vec<WorkVertex>) -> Result<Configuration> {
        let invalid = |reason: String| Error::Invalid {
            kind: "configuration",
            reason,
        };
        if seq.len() != inst.arm_len + 1 {
            return Err(invalid(format!(
                "arm of length {} needs {} joints, got {}",
                inst.arm_len,
                inst.arm_len + 1,
                seq.len()
            )));
        }
        if seq[0] != (WorkVertex { v: inst.base, h: 0 }) {
            return Err(invalid(format!(
                "arm must be anchored at ({}, 0)",
                inst.graph.name(inst.base)
            )));
        }
        for (i, pair) in seq.windows(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            let horizontal = p.h == q.h && inst.graph.has_edge(p.v, q.v);
            let vertical = p.v == q.v && q.h == p.h + 1;
            if !(horizontal || vertical) {
                return Err(invalid(format!("segment {} is not a workspace edge", i + 1)));
            }
        }
        let mut seen = HashSet::new();
        if !seq.iter().all(|&x| seen.insert(x)) {
            return Err(invalid("the arm intersects itself".into()));
        }
        Ok(Configuration { seq })
    }

    pub fn vertices(&self) -> &[WorkVertex] {
        &self.seq
    }

    /// Number of segments.
    pub fn len(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn uses(&self, x: WorkVertex) -> bool {
        self.seq.contains(&x)
    }

    pub fn display(&self, g: &Graph) -> String {
        self.seq
            .iter()
            .map(|x| format!("({},{})", g.name(x.v), x.h))
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::Value::Array(
            self.seq
                .iter()
                .map(|x| serde_json::json!([g.name(x.v), x.h]))
                .collect(),
        )
    }

    pub fn from_json(inst: &Instance, v: &serde_json::Value) -> Result<Configuration> {
        let pairs: Vec<(String, usize)> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("configuration: {e}")))?;
        let mut seq = Vec::with_capacity(pairs.len());
        for (name, h) in &pairs {
            let v = inst.graph.vertex_id(name).ok_or_else(|| Error::Invalid {
                kind: "configuration",
                reason: format!("unknown vertex {name:?}"),
            })?;
            seq.push(WorkVertex { v, h: *h });
        }
        Configuration::new(inst, seq)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveKind {
    Tail,
    Corner,
}

/// A local alteration of the arm. `up` selects the raising direction; the
/// labels `(v, w, h)` name the workspace square the move acts in, with the
/// arm traversing from `v` toward `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Move {
    pub kind: MoveKind,
    pub up: bool,
    pub v: VertexId,
    pub w: VertexId,
    pub h: usize,
}

impl Move {
    pub fn inverse(self) -> Move {
        Move {
            up: !self.up,
            ..self
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        format!(
            "{}{}({},{},{})",
            match self.kind {
                MoveKind::Tail => "T",
                MoveKind::Corner => "C",
            },
            if self.up { "+" } else { "-" },
            g.name(self.v),
            g.name(self.w),
            self.h
        )
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "kind": match self.kind { MoveKind::Tail => "T", MoveKind::Corner => "C" },
            "dir": if self.up { 1 } else { -1 },
            "v": g.name(self.v),
            "w": g.name(self.w),
            "h": self.h,
        })
    }

    pub fn from_json(g: &Graph, v: &serde_json::Value) -> Result<Move> {
        let doc: MoveDoc = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("move: {e}")))?;
        let kind = match doc.kind.as_str() {
            "T" => MoveKind::Tail,
            "C" => MoveKind::Corner,
            other => return Err(Error::Parse(format!("move kind must be T or C, got {other:?}"))),
        };
        let up = match doc.dir {
            1 => true,
            -1 => false,
            other => return Err(Error::Parse(format!("move dir must be 1 or -1, got {other}"))),
        };
        let resolve = |name: &str| {
            g.vertex_id(name).ok_or_else(|| Error::Invalid {
                kind: "move",
                reason: format!("unknown vertex {name:?}"),
            })
        };
        Ok(Move {
            kind,
            up,
            v: resolve(&doc.v)?,
            w: resolve(&doc.w)?,
            h: doc.h,
        })
    }
}

#[derive(serde::Deserialize)]
struct MoveDoc {
    kind: String,
    dir: i64,
    v: String,
    w: String,
    h: usize,
}

/// All configurations reachable from the initial one, with move-labeled
/// adjacency. Nodes are sorted canonically.
pub struct TransitionGraph {
    pub nodes: Vec<Configuration>,
    pub adj: Vec<Vec<usize>>,
    /// One entry per undirected edge `(i, j)` with `i < j`, labeled by the
    /// move carrying node `i` to node `j`.
    pub edges: Vec<(usize, usize, Move)>,
}

impl TransitionGraph {
    pub fn position(&self, x: &Configuration) -> Option<usize> {
        self.nodes.binary_search(x).ok()
    }
}

impl Instance {
    /// The fully vertical configuration above the anchor.
    pub fn initial_configuration(&self) -> Configuration {
        Configuration {
            seq: (0..=self.arm_len)
                .map(|h| WorkVertex { v: self.base, h })
                .collect(),
        }
    }

    /// Legal moves for `x`, ordered by the first edge of the arm they touch,
    /// with the raising move before the lowering one, and downward tail
    /// moves fanned out by neighbor order.
    pub fn legal_moves(&self, x: &Configuration) -> Vec<Move> {
        let s = &x.seq;
        let ell = x.len();
        let mut out = Vec::new();
        for j in 1..ell {
            let (a, b, c) = (s[j - 1], s[j], s[j + 1]);
            // Raising corner: horizontal then vertical, free square corner.
            if a.h == b.h && c.v == b.v && c.h == b.h + 1 {
                let target = WorkVertex { v: a.v, h: a.h + 1 };
                if !x.uses(target) {
                    out.push(Move {
                        kind: MoveKind::Corner,
                        up: true,
                        v: a.v,
                        w: b.v,
                        h: a.h,
                    });
                }
            }
            // Lowering corner: vertical then horizontal, free square corner.
            if b.v == a.v && b.h == a.h + 1 && c.h == b.h {
                let target = WorkVertex { v: c.v, h: a.h };
                if !x.uses(target) {
                    out.push(Move {
                        kind: MoveKind::Corner,
                        up: false,
                        v: a.v,
                        w: c.v,
                        h: a.h,
                    });
                }
            }
        }
        if ell >= 1 {
            let (a, b) = (s[ell - 1], s[ell]);
            if a.h == b.h {
                // Raising the tail is always possible: nothing sits above
                // the arm's end.
                out.push(Move {
                    kind: MoveKind::Tail,
                    up: true,
                    v: a.v,
                    w: b.v,
                    h: a.h,
                });
            } else {
                for &w in self.graph.neighbors(a.v) {
                    if !x.uses(WorkVertex { v: w, h: a.h }) {
                        out.push(Move {
                            kind: MoveKind::Tail,
                            up: false,
                            v: a.v,
                            w,
                            h: a.h,
                        });
                    }
                }
            }
        }
        out
    }

    /// Apply a move, or explain why `x` is outside its support.
    pub fn apply_move(&self, x: &Configuration, m: &Move) -> Result<Configuration> {
        let illegal = |why: &str| {
            Err(Error::IllegalMove(format!(
                "{} at {}: {}",
                m.display(&self.graph),
                x.display(&self.graph),
                why
            )))
        };
        let s = &x.seq;
        let ell = x.len();
        let mut seq = s.clone();
        match (m.kind, m.up) {
            (MoveKind::Tail, true) => {
                if ell == 0
                    || s[ell - 1] != (WorkVertex { v: m.v, h: m.h })
                    || s[ell] != (WorkVertex { v: m.w, h: m.h })
                {
                    return illegal("the arm does not end with that horizontal segment");
                }
                seq[ell] = WorkVertex { v: m.v, h: m.h + 1 };
            }
            (MoveKind::Tail, false) => {
                if ell == 0
                    || s[ell - 1] != (WorkVertex { v: m.v, h: m.h })
                    || s[ell] != (WorkVertex { v: m.v, h: m.h + 1 })
                {
                    return illegal("the arm does not end with that vertical segment");
                }
                if !self.graph.has_edge(m.v, m.w) {
                    return illegal("no graph edge to swing the tail onto");
                }
                let target = WorkVertex { v: m.w, h: m.h };
                if x.uses(target) {
                    return illegal("the target joint is occupied");
                }
                seq[ell] = target;
            }
            (MoveKind::Corner, up) => {
                let (from, to) = if up {
                    (
                        WorkVertex { v: m.w, h: m.h },
                        WorkVertex { v: m.v, h: m.h + 1 },
                    )
                } else {
                    (
                        WorkVertex { v: m.v, h: m.h + 1 },
                        WorkVertex { v: m.w, h: m.h },
                    )
                };
                let j = (1..ell).find(|&j| {
                    s[j - 1] == (WorkVertex { v: m.v, h: m.h })
                        && s[j] == from
                        && s[j + 1] == (WorkVertex { v: m.w, h: m.h + 1 })
                });
                let Some(j) = j else {
                    return illegal("the arm does not turn that corner");
                };
                if x.uses(to) {
                    return illegal("the target joint is occupied");
                }
                seq[j] = to;
            }
        }
        let next = Configuration { seq };
        debug_assert!(
            Configuration::new(self, next.seq.clone()).is_ok(),
            "move produced an invalid configuration"
        );
        Ok(next)
    }

    /// Whether the given legal moves can be applied to `x` in every order,
    /// subset by subset, always legally and with an order-independent
    /// outcome. Factorial in the set size, hence guarded.
    pub fn is_commutative_set(
        &self,
        x: &Configuration,
        moves: &[Move],
        limit: usize,
    ) -> Result<bool> {
        if moves.len() > limit {
            return Err(Error::Guard {
                what: "commutativity check",
                needed: moves.len(),
                limit,
            });
        }
        for mask in 0u32..1 << moves.len() {
            let subset: Vec<Move> = (0..moves.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| moves[i])
                .collect();
            let mut outcome: Option<Configuration> = None;
            for perm in subset.iter().permutations(subset.len()) {
                let mut cur = x.clone();
                for m in perm {
                    match self.apply_move(&cur, m) {
                        Ok(next) => cur = next,
                        Err(Error::IllegalMove(_)) => return Ok(false),
                        Err(e) => return Err(e),
                    }
                }
                match &outcome {
                    None => outcome = Some(cur),
                    Some(prev) if *prev != cur => return Ok(false),
                    Some(_) => {}
                }
            }
        }
        Ok(true)
    }

    /// Breadth-first sweep of every configuration reachable from the initial
    /// one (which is all of them), guarded by a node limit.
    pub fn transition_graph(&self, node_limit: usize) -> Result<TransitionGraph> {
        let start = self.initial_configuration();
        let mut ids: HashMap<Configuration, usize> = HashMap::new();
        ids.insert(start.clone(), 0);
        let mut nodes = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for m in self.legal_moves(&x) {
                let y = self.apply_move(&x, &m)?;
                if !ids.contains_key(&y) {
                    if nodes.len() >= node_limit {
                        return Err(Error::Guard {
                            what: "transition graph sweep",
                            needed: nodes.len() + 1,
                            limit: node_limit,
                        });
                    }
                    ids.insert(y.clone(), nodes.len());
                    nodes.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        nodes.sort();
        let index: HashMap<&Configuration, usize> =
            nodes.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut edge_moves: BTreeMap<(usize, usize), Move> = BTreeMap::new();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, x) in nodes.iter().enumerate() {
            for m in self.legal_moves(x) {
                let y = self.apply_move(x, &m)?;
                let j = index[&y];
                adj[i].push(j);
                let key = (i.min(j), i.max(j));
                edge_moves
                    .entry(key)
                    .or_insert(if i < j { m } else { m.inverse() });
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        let edges = edge_moves.into_iter().map(|((i, j), m)| (i, j, m)).collect();
        Ok(TransitionGraph { nodes, adj, edges })
    }

    /// Flatten the vertical runs of a configuration: the walk through the
    /// horizontal segments, each labeled by its height.
    pub fn config_to_tableau(&self, x: &Configuration) -> PathTableau {
        let mut verts = vec![x.seq[0].v];
        let mut labels = Vec::new();
        for pair in x.seq.windows(2) {
            if pair[0].h == pair[1].h {
                verts.push(pair[1].v);
                labels.push(pair[1].h);
            }
        }
        PathTableau {
            path: GraphPath::new(&self.graph, verts).expect("projection of a valid configuration"),
            labels,
        }
    }

    /// Rebuild the configuration from a tableau: climb to each label in
    /// turn, insert the horizontal segment, and spend the leftover length
    /// climbing at the end.
    pub fn tableau_to_config(&self, t: &PathTableau) -> Result<Configuration> {
        if let Some(why) = tableau_violation(t, self.arm_len) {
            return Err(Error::Invalid {
                kind: "tableau",
                reason: why,
            });
        }
        if t.path.start() != self.base {
            return Err(Error::Invalid {
                kind: "tableau",
                reason: "the walk does not start at the base".into(),
            });
        }
        let verts = t.path.vertices();
        let mut seq = vec![WorkVertex {
            v: self.base,
            h: 0,
        }];
        for (i, &label) in t.labels.iter().enumerate() {
            let cur = *seq.last().unwrap();
            for h in cur.h..label {
                seq.push(WorkVertex { v: cur.v, h: h + 1 });
            }
            seq.push(WorkVertex {
                v: verts[i + 1],
                h: label,
            });
        }
        let cur = *seq.last().unwrap();
        for i in 1..=self.arm_len + 1 - seq.len() {
            seq.push(WorkVertex {
                v: cur.v,
                h: cur.h + i,
            });
        }
        Configuration::new(self, seq)
    }
}
