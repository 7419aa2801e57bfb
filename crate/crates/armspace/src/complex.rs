//! Cubical complexes built two ways: from commuting raising moves on
//! configurations, and from consistent lower sets of the indexed-path poset.
//! `check_cube_isomorphism` verifies the two constructions agree.

use std::collections::{BTreeSet, HashMap};

use crate::arm::{Configuration, Move, MoveKind, TransitionGraph, WorkVertex};
use crate::graph::suffix_decomposition;
use crate::pip::{IndexedPath, LowerSet, Pip};
use crate::tableaux::PathTableau;
use crate::{CheckReport, Error, Instance, Result};

/// Guard for per-vertex move subsets (each adds up to `2^k` cube vertices).
pub const DEFAULT_DEGREE_LIMIT: usize = 20;

/// A cubical complex identified by its vertex sets: a `d`-cube is the sorted
/// list of the `2^d` vertex ids in its 0-skeleton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalComplex {
    cubes: Vec<Vec<Vec<usize>>>,
}

impl CubicalComplex {
    fn from_sets(sets: BTreeSet<Vec<usize>>) -> CubicalComplex {
        let max_dim = sets
            .iter()
            .map(|c| c.len().trailing_zeros() as usize)
            .max()
            .unwrap_or(0);
        let mut cubes = vec![Vec::new(); max_dim + 1];
        for c in sets {
            debug_assert!(c.len().is_power_of_two());
            cubes[c.len().trailing_zeros() as usize].push(c);
        }
        CubicalComplex { cubes }
    }

    /// Cube counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.cubes.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.cubes.len() - 1
    }

    pub fn cubes(&self, d: usize) -> &[Vec<usize>] {
        self.cubes.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn vertex_count(&self) -> usize {
        self.cubes(0).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// The complex whose `d`-cubes are the outcomes of applying every subset of
/// a set of `d` raising moves, one cube per configuration and move set.
/// Vertex ids index into `tg.nodes`.
pub fn configuration_complex(inst: &Instance, tg: &TransitionGraph) -> Result<CubicalComplex> {
    let mut sets = BTreeSet::new();
    for (i, x) in tg.nodes.iter().enumerate() {
        let ups: Vec<Move> = inst.legal_moves(x).into_iter().filter(|m| m.up).collect();
        let n = ups.len();
        if n > DEFAULT_DEGREE_LIMIT {
            return Err(Error::Guard {
                what: "raising moves at one configuration",
                needed: n,
                limit: DEFAULT_DEGREE_LIMIT,
            });
        }
        // Raising moves touch pairwise disjoint parts of the arm, so each
        // subset can be applied lowest-bit first without re-deriving
        // legality; ids[mask] is the configuration after the subset `mask`.
        let mut ids = vec![0usize; 1 << n];
        ids[0] = i;
        let mut cfgs: Vec<Configuration> = Vec::with_capacity(1 << n);
        cfgs.push(x.clone());
        for mask in 1..1usize << n {
            let low = mask.trailing_zeros() as usize;
            let prev = mask & (mask - 1);
            let y = inst.apply_move(&cfgs[prev], &ups[low])?;
            ids[mask] = tg.position(&y).ok_or_else(|| Error::Invalid {
                kind: "complex",
                reason: "a move left the swept configuration set".into(),
            })?;
            cfgs.push(y);
        }
        for a in 0..1usize << n {
            let mut verts: Vec<usize> = submasks(a).map(|s| ids[s]).collect();
            verts.sort_unstable();
            debug_assert!(verts.windows(2).all(|w| w[0] != w[1]));
            sets.insert(verts);
        }
    }
    Ok(CubicalComplex::from_sets(sets))
}

/// Submasks of `a`, including `0` and `a` itself.
fn submasks(a: usize) -> impl Iterator<Item = usize> {
    let mut cur = 0usize;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == a {
            done = true;
        } else {
            // Standard trick: increment within the bits of `a`.
            cur = (cur.wrapping_sub(a)) & a;
        }
        Some(out)
    })
}

/// The complex whose `d`-cubes drop every sub-selection of `d` chosen
/// maximal elements from a consistent lower set. Vertex ids index into
/// `sets`.
pub fn lower_set_complex(pip: &Pip, sets: &[LowerSet]) -> Result<CubicalComplex> {
    let pos: HashMap<&[u32], usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.as_slice(), i))
        .collect();
    let mut cubes = BTreeSet::new();
    for s in sets {
        let maxima = pip.maximal_of(&s.members);
        let n = maxima.len();
        if n > DEFAULT_DEGREE_LIMIT {
            return Err(Error::Guard {
                what: "maximal elements of one lower set",
                needed: n,
                limit: DEFAULT_DEGREE_LIMIT,
            });
        }
        for a in 0..1usize << n {
            let mut verts = Vec::new();
            for sub in submasks(a) {
                let remaining: Vec<u32> = s
                    .members
                    .iter()
                    .copied()
                    .filter(|m| !(0..n).any(|b| sub >> b & 1 == 1 && maxima[b] == *m))
                    .collect();
                let &id = pos.get(remaining.as_slice()).ok_or_else(|| Error::Invalid {
                    kind: "complex",
                    reason: "removing maxima left the enumerated lower sets".into(),
                })?;
                verts.push(id);
            }
            verts.sort_unstable();
            debug_assert!(verts.windows(2).all(|w| w[0] != w[1]));
            cubes.insert(verts);
        }
    }
    Ok(CubicalComplex::from_sets(cubes))
}

impl Instance {
    /// One generator per horizontal segment of the arm: the prefix of the
    /// flattened walk up to that segment, indexed so that its minimal
    /// labeling climbs exactly to the segment's height.
    pub fn shadow_generators(&self, x: &Configuration) -> Vec<IndexedPath> {
        let t = self.config_to_tableau(x);
        (1..=t.path.len())
            .map(|i| {
                let sigma = t.path.prefix(i);
                let n = suffix_decomposition(&sigma).unwrap().block_count();
                IndexedPath::new(sigma, t.labels[i - 1] + 1 - n)
            })
            .collect()
    }

    /// The configuration's shadow: the lower set its generators span.
    pub fn shadow(&self, pip: &Pip, x: &Configuration) -> Result<LowerSet> {
        let mut gens = Vec::new();
        for u in self.shadow_generators(x) {
            gens.push(pip.position(&u).ok_or_else(|| Error::Invalid {
                kind: "lower set",
                reason: format!("{} is not a poset element", u.display(&self.graph)),
            })?);
        }
        Ok(pip.lower_set_generated(&gens))
    }

    /// Rebuild the configuration whose shadow is the given consistent lower
    /// set: its longest walk, labeled by the least index present for each
    /// prefix.
    pub fn shadow_inverse(&self, pip: &Pip, set: &LowerSet) -> Result<Configuration> {
        let invalid = |reason: String| Error::Invalid {
            kind: "lower set",
            reason,
        };
        if !set.consistent {
            return Err(invalid("an inconsistent set is nobody's shadow".into()));
        }
        let elems: Vec<&IndexedPath> = set
            .members
            .iter()
            .map(|&i| &pip.elements()[i as usize])
            .collect();
        let Some(longest) = elems.iter().map(|u| &u.path).max_by_key(|p| p.len()) else {
            return Ok(self.initial_configuration());
        };
        let mut labels = Vec::with_capacity(longest.len());
        for i in 1..=longest.len() {
            let sigma = longest.prefix(i);
            let n = suffix_decomposition(&sigma)?.block_count();
            let a = elems
                .iter()
                .filter(|u| u.path == sigma)
                .map(|u| u.a)
                .min()
                .ok_or_else(|| invalid(format!("no element over the {i}-edge prefix")))?;
            labels.push(n + a - 1);
        }
        self.tableau_to_config(&PathTableau {
            path: (*longest).clone(),
            labels,
        })
    }

    /// The generator a raising move consumes: the one attached to the
    /// horizontal segment the move raises (corner) or retracts (tail).
    pub fn raised_generator(&self, x: &Configuration, m: &Move) -> Result<IndexedPath> {
        let illegal = |why: &str| {
            Err(Error::IllegalMove(format!(
                "{} at {}: {}",
                m.display(&self.graph),
                x.display(&self.graph),
                why
            )))
        };
        if !m.up {
            return illegal("only raising moves consume a generator");
        }
        let s = x.vertices();
        let ell = x.len();
        let j = match m.kind {
            MoveKind::Tail => {
                if ell == 0
                    || s[ell - 1] != (WorkVertex { v: m.v, h: m.h })
                    || s[ell] != (WorkVertex { v: m.w, h: m.h })
                {
                    return illegal("the arm does not end with that horizontal segment");
                }
                ell
            }
            MoveKind::Corner => {
                match (1..ell).find(|&j| {
                    s[j - 1] == (WorkVertex { v: m.v, h: m.h })
                        && s[j] == (WorkVertex { v: m.w, h: m.h })
                        && s[j + 1] == (WorkVertex { v: m.w, h: m.h + 1 })
                }) {
                    Some(j) => j,
                    None => return illegal("the arm does not turn that corner"),
                }
            }
        };
        let i = s[..=j].windows(2).filter(|p| p[0].h == p[1].h).count();
        Ok(self.shadow_generators(x).swap_remove(i - 1))
    }
}

/// Verify that shadows carry configurations bijectively onto consistent
/// lower sets, raising moves onto maximal elements, and cube for cube the
/// configuration complex onto the lower-set complex.
pub fn check_cube_isomorphism(
    inst: &Instance,
    node_limit: usize,
    set_limit: usize,
) -> Result<CheckReport> {
    const MAX_WITNESSES: usize = 6;
    let mut report = CheckReport::pass("cube complex correspondence");
    let g = &inst.graph;

    let tg = inst.transition_graph(node_limit)?;
    let pip = Pip::build(g, inst.base, inst.arm_len, set_limit)?;
    let sets = pip.enumerate_consistent_lower_sets(set_limit)?;
    let set_pos: HashMap<&[u32], usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.as_slice(), i))
        .collect();

    if tg.nodes.len() != sets.len() {
        report.record_failure(format!(
            "{} configurations but {} consistent lower sets",
            tg.nodes.len(),
            sets.len()
        ));
    }

    let mut image = vec![usize::MAX; tg.nodes.len()];
    let mut hit = vec![false; sets.len()];
    let mut failures = 0usize;
    let mut fail = |report: &mut CheckReport, msg: String| {
        failures += 1;
        if failures <= MAX_WITNESSES {
            report.record_failure(msg);
        }
    };

    for (i, x) in tg.nodes.iter().enumerate() {
        let shadow = inst.shadow(&pip, x)?;
        if !shadow.consistent {
            fail(
                &mut report,
                format!("shadow of {} is inconsistent", x.display(g)),
            );
            continue;
        }
        let Some(&si) = set_pos.get(shadow.members.as_slice()) else {
            fail(
                &mut report,
                format!("shadow of {} was not enumerated", x.display(g)),
            );
            continue;
        };
        image[i] = si;
        if std::mem::replace(&mut hit[si], true) {
            fail(
                &mut report,
                format!("two configurations share the shadow of {}", x.display(g)),
            );
        }
        match inst.shadow_inverse(&pip, &shadow) {
            Ok(back) if &back == x => {}
            Ok(back) => fail(
                &mut report,
                format!(
                    "shadow of {} inverts to {}",
                    x.display(g),
                    back.display(g)
                ),
            ),
            Err(e) => fail(
                &mut report,
                format!("shadow of {} does not invert: {e}", x.display(g)),
            ),
        }

        // Raising moves must consume exactly the maximal elements.
        let ups: Vec<Move> = inst.legal_moves(x).into_iter().filter(|m| m.up).collect();
        let mut consumed = Vec::new();
        for m in &ups {
            let u = inst.raised_generator(x, m)?;
            let Some(p) = pip.position(&u) else {
                fail(
                    &mut report,
                    format!("raised generator of {} is unknown", m.display(g)),
                );
                continue;
            };
            consumed.push(p as u32);
            let y = inst.apply_move(x, m)?;
            let mut expect = shadow.members.clone();
            expect.retain(|&e| e != p as u32);
            if inst.shadow(&pip, &y)?.members != expect {
                fail(
                    &mut report,
                    format!(
                        "applying {} to {} does not just drop its generator",
                        m.display(g),
                        x.display(g)
                    ),
                );
            }
        }
        consumed.sort_unstable();
        let maxima = pip.maximal_of(&shadow.members);
        if consumed != maxima {
            fail(
                &mut report,
                format!(
                    "raising moves of {} consume {:?}, maxima are {:?}",
                    x.display(g),
                    consumed,
                    maxima
                ),
            );
        }
    }
    if failures > MAX_WITNESSES {
        report.record_failure(format!("... and {} more", failures - MAX_WITNESSES));
    }

    if report.passed {
        let sc = configuration_complex(inst, &tg)?;
        let xc = lower_set_complex(&pip, &sets)?;
        let mapped: BTreeSet<Vec<usize>> = (0..=sc.dim())
            .flat_map(|d| sc.cubes(d).iter())
            .map(|cube| {
                let mut v: Vec<usize> = cube.iter().map(|&i| image[i]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let target: BTreeSet<Vec<usize>> = (0..=xc.dim())
            .flat_map(|d| xc.cubes(d).iter().cloned())
            .collect();
        if mapped != target {
            report.record_failure(format!(
                "cube sets disagree: {} mapped vs {} target",
                mapped.len(),
                target.len()
            ));
        }
        if sc.f_vector() != xc.f_vector() {
            report.record_failure(format!(
                "f-vectors disagree: {:?} vs {:?}",
                sc.f_vector(),
                xc.f_vector()
            ));
        }
        report.note(format!(
            "{} configurations, f-vector {:?}, Euler characteristic {}",
            tg.nodes.len(),
            sc.f_vector(),
            sc.euler_characteristic()
        ));
    }
    Ok(report)
}
