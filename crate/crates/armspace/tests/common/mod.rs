//! Shared fixtures for the integration suites: a desk set of small graphs
//! with the arm anchored at a named base, plus independent oracles (plain
//! breadth-first search, cube adjacency, balanced-partition edge counts)
//! that the library code never touches.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use armspace::arm::Configuration;
use armspace::complex::CubicalComplex;
use armspace::graph::Graph;
use armspace::Instance;

/// Large enough that no guard trips on desk-scale instances.
pub const LIMIT: usize = 1_000_000;

pub fn instance(names: &[&str], edges: &[(&str, &str)], base: &str, ell: usize) -> Instance {
    let g = Graph::new(
        names.iter().map(|s| s.to_string()).collect(),
        &edges
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>(),
        Some(base),
    )
    .unwrap();
    Instance::from_graph(g, ell).unwrap()
}

pub fn triangle(ell: usize) -> Instance {
    instance(&["b", "a", "c"], &[("b", "a"), ("a", "c"), ("c", "b")], "b", ell)
}

pub fn square(ell: usize) -> Instance {
    instance(
        &["b", "a", "c", "d"],
        &[("b", "a"), ("a", "c"), ("c", "d"), ("d", "b")],
        "b",
        ell,
    )
}

pub fn complete4(ell: usize) -> Instance {
    instance(
        &["b", "u", "v", "w"],
        &[
            ("b", "u"),
            ("b", "v"),
            ("b", "w"),
            ("u", "v"),
            ("u", "w"),
            ("v", "w"),
        ],
        "b",
        ell,
    )
}

pub fn path_end(ell: usize) -> Instance {
    instance(&["b", "m", "e"], &[("b", "m"), ("m", "e")], "b", ell)
}

pub fn path_mid(ell: usize) -> Instance {
    instance(&["x", "b", "y"], &[("x", "b"), ("b", "y")], "b", ell)
}

/// Triangle b-a-c with a pendant d hanging off a.
pub fn pendant_triangle(ell: usize) -> Instance {
    instance(
        &["b", "a", "c", "d"],
        &[("b", "a"), ("a", "c"), ("c", "b"), ("a", "d")],
        "b",
        ell,
    )
}

pub fn star(ell: usize) -> Instance {
    instance(
        &["b", "p", "q", "r"],
        &[("b", "p"), ("b", "q"), ("b", "r")],
        "b",
        ell,
    )
}

/// The whole desk suite at one arm length, labeled for assertion messages.
pub fn suite(ell: usize) -> Vec<(&'static str, Instance)> {
    vec![
        ("triangle", triangle(ell)),
        ("square", square(ell)),
        ("complete-4", complete4(ell)),
        ("path-end", path_end(ell)),
        ("path-mid", path_mid(ell)),
        ("pendant-triangle", pendant_triangle(ell)),
        ("star", star(ell)),
    ]
}

pub fn config(inst: &Instance, joints: &[(&str, usize)]) -> Configuration {
    let seq = joints
        .iter()
        .map(|&(name, h)| armspace::arm::WorkVertex {
            v: inst.graph.vertex_id(name).unwrap(),
            h,
        })
        .collect();
    Configuration::new(inst, seq).unwrap()
}

/// Hop counts from `start` by plain breadth-first search; `usize::MAX` marks
/// unreachable nodes.
pub fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Adjacency where one hop may cross any cube of the complex: two vertices
/// are neighbors when some cube (of any dimension) contains both.
pub fn cube_adjacency(complex: &CubicalComplex) -> Vec<Vec<usize>> {
    let mut adj = vec![BTreeSet::new(); complex.vertex_count()];
    for d in 1..=complex.dim() {
        for cube in complex.cubes(d) {
            for (i, &u) in cube.iter().enumerate() {
                for &v in &cube[i + 1..] {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Edge count of the complete n-partite graph on m vertices whose parts are
/// as equal as possible, computed from the partition itself.
pub fn balanced_partition_edges(m: usize, n: usize) -> usize {
    let q = m / n;
    let s = m % n;
    let sum_of_squares = s * (q + 1) * (q + 1) + (n - s) * q * q;
    (m * m - sum_of_squares) / 2
}
