//! Finite connected graphs, walks from the base vertex, and the suffix
//! decomposition that splits a walk into maximal-length cycle-free blocks.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::{Error, Result};

/// Vertices are referred to by their position in the document order of the
/// defining vertex list.
pub type VertexId = usize;

/// A finite simple connected graph with named vertices and an optional
/// distinguished base vertex.
#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<String>,
    ids: HashMap<String, VertexId>,
    adj: Vec<Vec<VertexId>>,
    edges: BTreeSet<(VertexId, VertexId)>,
    base: Option<VertexId>,
}

#[derive(serde::Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    base: Option<String>,
}

impl Graph {
    /// Build a graph from named vertices and edges, validating simplicity and
    /// connectedness.
    pub fn new(
        vertices: Vec<String>,
        edge_list: &[(String, String)],
        base: Option<&str>,
    ) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::Invalid {
                kind: "graph",
                reason: "vertex list is empty".into(),
            });
        }
        let mut ids = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if ids.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid {
                    kind: "graph",
                    reason: format!("duplicate vertex name {name:?}"),
                });
            }
        }
        let mut edges = BTreeSet::new();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, b) in edge_list {
            let &u = ids.get(a).ok_or_else(|| Error::Invalid {
                kind: "graph",
                reason: format!("edge endpoint {a:?} is not a declared vertex"),
            })?;
            let &v = ids.get(b).ok_or_else(|| Error::Invalid {
                kind: "graph",
                reason: format!("edge endpoint {b:?} is not a declared vertex"),
            })?;
            if u == v {
                return Err(Error::Invalid {
                    kind: "graph",
                    reason: format!("loop at vertex {a:?}"),
                });
            }
            if !edges.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid {
                    kind: "graph",
                    reason: format!("duplicate edge {a:?} -- {b:?}"),
                });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let base = match base {
            None => None,
            Some(name) => Some(*ids.get(name).ok_or_else(|| Error::Invalid {
                kind: "graph",
                reason: format!("base {name:?} is not a declared vertex"),
            })?),
        };
        let g = Graph {
            names: vertices,
            ids,
            adj,
            edges,
            base,
        };
        if !g.is_connected() {
            return Err(Error::Invalid {
                kind: "graph",
                reason: "graph is not connected".into(),
            });
        }
        Ok(g)
    }

    /// Parse a graph document of the form
    /// `{"vertices": [...], "edges": [[a,b], ...], "base": b?}`.
    pub fn from_json_str(doc: &str) -> Result<Graph> {
        let doc: GraphDoc =
            serde_json::from_str(doc).map_err(|e| Error::Parse(format!("graph document: {e}")))?;
        Graph::new(doc.vertices, &doc.edges, doc.base.as_deref())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| serde_json::json!([self.names[u], self.names[v]]))
            .collect();
        let mut doc = serde_json::json!({
            "vertices": self.names,
            "edges": edges,
        });
        if let Some(b) = self.base {
            doc["base"] = serde_json::Value::String(self.names[b].clone());
        }
        doc
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.ids.get(name).copied()
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }
}

/// A walk in the graph, stored as its vertex sequence (always nonempty).
/// Lexicographic order on vertex sequences is the canonical path order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphPath {
    verts: Vec<VertexId>,
}

impl GraphPath {
    /// The length-zero walk sitting at `v`.
    pub fn empty_at(v: VertexId) -> GraphPath {
        GraphPath { verts: vec![v] }
    }

    /// Build a walk, checking that consecutive vertices are adjacent in `g`.
    pub fn new(g: &Graph, verts: Vec<VertexId>) -> Result<GraphPath> {
        if verts.is_empty() {
            return Err(Error::Invalid {
                kind: "path",
                reason: "vertex sequence is empty".into(),
            });
        }
        for &v in &verts {
            if v >= g.vertex_count() {
                return Err(Error::Invalid {
                    kind: "path",
                    reason: format!("vertex id {v} out of range"),
                });
            }
        }
        for w in verts.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::Invalid {
                    kind: "path",
                    reason: format!(
                        "consecutive vertices {:?} and {:?} are not adjacent",
                        g.name(w[0]),
                        g.name(w[1])
                    ),
                });
            }
        }
        Ok(GraphPath { verts })
    }

    /// Convenience constructor from vertex names.
    pub fn from_names(g: &Graph, names: &[&str]) -> Result<GraphPath> {
        let verts = names
            .iter()
            .map(|n| {
                g.vertex_id(n).ok_or_else(|| Error::Invalid {
                    kind: "path",
                    reason: format!("unknown vertex {n:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GraphPath::new(g, verts)
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.verts.len() == 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn start(&self) -> VertexId {
        self.verts[0]
    }

    pub fn end(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    /// The prefix with the given number of edges.
    pub fn prefix(&self, edge_count: usize) -> GraphPath {
        assert!(edge_count <= self.len());
        GraphPath {
            verts: self.verts[..=edge_count].to_vec(),
        }
    }

    /// The walk extended by one more vertex. The caller is responsible for
    /// adjacency.
    pub fn extended(&self, v: VertexId) -> GraphPath {
        let mut verts = self.verts.clone();
        verts.push(v);
        GraphPath { verts }
    }

    pub fn display(&self, g: &Graph) -> String {
        self.verts
            .iter()
            .map(|&v| g.name(v))
            .collect::<Vec<_>>()
            .join("-")
    }
}

/// A walk is cycle-free when it visits no vertex twice.
pub fn is_cycle_free(p: &GraphPath) -> bool {
    let mut seen = HashSet::new();
    p.vertices().iter().all(|&v| seen.insert(v))
}

/// Whether `p` is a prefix of `r` (every walk is a prefix of itself).
pub fn is_prefix(p: &GraphPath, r: &GraphPath) -> bool {
    p.len() <= r.len() && p.vertices() == &r.vertices()[..p.vertices().len()]
}

/// The unique split of a walk into blocks, each the maximal-length cycle-free
/// suffix of what precedes it. Blocks are numbered 1..=n left to right; edge
/// `r` (1-based) belongs to block `block_of(r)`, and consecutive blocks share
/// their boundary vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuffixDecomposition {
    /// Edge counts of the blocks, left to right.
    block_lengths: Vec<usize>,
    /// `block_index[r - 1]` is the block containing edge `r`.
    block_index: Vec<usize>,
}

impl SuffixDecomposition {
    pub fn block_count(&self) -> usize {
        self.block_lengths.len()
    }

    pub fn block_lengths(&self) -> &[usize] {
        &self.block_lengths
    }

    /// Block containing the `r`-th edge, `r` in `1..=len`.
    pub fn block_of(&self, r: usize) -> usize {
        self.block_index[r - 1]
    }
}

/// Peel maximal-length cycle-free suffixes off the walk, right to left.
/// Requires at least one edge.
pub fn suffix_decomposition(p: &GraphPath) -> Result<SuffixDecomposition> {
    if p.is_empty() {
        return Err(Error::Invalid {
            kind: "path",
            reason: "suffix decomposition requires at least one edge".into(),
        });
    }
    let verts = p.vertices();
    // Vertex positions where each block starts, discovered right to left.
    let mut starts = Vec::new();
    let mut end = verts.len() - 1;
    loop {
        let mut seen: HashSet<VertexId> = HashSet::new();
        seen.insert(verts[end]);
        let mut s = end;
        while s > 0 && seen.insert(verts[s - 1]) {
            s -= 1;
        }
        starts.push(s);
        if s == 0 {
            break;
        }
        end = s;
    }
    starts.reverse();

    let mut block_lengths = Vec::with_capacity(starts.len());
    let mut block_index = vec![0; p.len()];
    let mut bounds = starts.clone();
    bounds.push(verts.len() - 1);
    for t in 0..starts.len() {
        let (s, e) = (bounds[t], bounds[t + 1]);
        block_lengths.push(e - s);
        for r in s + 1..=e {
            block_index[r - 1] = t + 1;
        }
        // Each block after the first must reuse the vertex just before it;
        // otherwise the previous peel was not maximal.
        debug_assert!(t == 0 || verts[s..=e].contains(&verts[s - 1]));
    }
    Ok(SuffixDecomposition {
        block_lengths,
        block_index,
    })
}

/// All walks out of `b`, in lexicographic order by vertex sequence, that
/// satisfy `keep(edge_count, block_count)`. The predicate must be antitone
/// along extensions (once false it stays false for every extension), which
/// holds for bounds of the form `edge_count + block_count <= c` because the
/// block count never decreases when a walk grows.
pub fn enumerate_gb_paths<F>(g: &Graph, b: VertexId, keep: F) -> Vec<GraphPath>
where
    F: Fn(usize, usize) -> bool,
{
    fn rec<F: Fn(usize, usize) -> bool>(
        g: &Graph,
        cur: &mut Vec<VertexId>,
        keep: &F,
        out: &mut Vec<GraphPath>,
    ) {
        let last = *cur.last().unwrap();
        for &w in g.neighbors(last) {
            cur.push(w);
            let p = GraphPath { verts: cur.clone() };
            let n = suffix_decomposition(&p).unwrap().block_count();
            if keep(p.len(), n) {
                out.push(p);
                rec(g, cur, keep, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, &mut vec![b], &keep, &mut out);
    out
}
