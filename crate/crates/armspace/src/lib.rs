//! Combinatorial motion planning for a chain robot ("arm") of length `arm_len`
//! anchored at a base vertex of a finite connected graph.
//!
//! The crate is organized around a few interlocking views of the same state
//! space:
//! - [`graph`]: graphs, walks, prefix order, and the maximal-length cycle-free
//!   suffix decomposition of a walk.
//! - [`pip`]: indexed paths with a partial order and an inconsistency
//!   relation, plus lower-set machinery over them.
//! - [`lattice`]: finite lattices, distributivity checks, and verification of
//!   the representation by lower sets of join-irreducibles.
//! - [`tableaux`]: labeled paths in bijection with arm configurations, their
//!   infinity-extended forms, and the lattice they generate.
//! - [`arm`]: workspace configurations, the tail/corner move catalogue, the
//!   transition graph, and the configuration/tableau bijection.
//! - [`complex`]: the two cubical complexes built from configurations and
//!   from consistent lower sets, and the isomorphism checks between them.
//! - [`planner`]: exact distances, move-minimal plans, round schedules, and
//!   transition-graph diameter computations.

pub mod arm;
pub mod complex;
pub mod dot;
pub mod graph;
pub mod lattice;
pub mod pip;
pub mod planner;
pub mod tableaux;

use graph::{Graph, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input document or expression.
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid value for the given kind of object.
    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },
    /// An operation refused to run because it would exceed a size guard.
    #[error("guard exceeded: {what} needs {needed} but the limit is {limit}")]
    Guard {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    /// A move was applied to a configuration outside its support.
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A problem instance: the graph, the anchor (base) vertex, and the arm length.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub base: VertexId,
    pub arm_len: usize,
}

impl Instance {
    pub fn new(graph: Graph, base: VertexId, arm_len: usize) -> Result<Self> {
        if base >= graph.vertex_count() {
            return Err(Error::Invalid {
                kind: "instance",
                reason: format!("base vertex id {base} out of range"),
            });
        }
        Ok(Instance {
            graph,
            base,
            arm_len,
        })
    }

    /// Build an instance using the base vertex declared in the graph document.
    pub fn from_graph(graph: Graph, arm_len: usize) -> Result<Self> {
        let base = graph.base().ok_or(Error::Invalid {
            kind: "instance",
            reason: "graph document declares no base vertex".into(),
        })?;
        Instance::new(graph, base, arm_len)
    }
}

/// Outcome of a verification pass: either a pass or the first counterexamples.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: true,
            details: Vec::new(),
        }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: false,
            details: vec![detail],
        }
    }

    pub fn note(&mut self, detail: String) {
        self.details.push(detail);
    }

    pub fn record_failure(&mut self, detail: String) {
        self.passed = false;
        self.details.push(detail);
    }
}
