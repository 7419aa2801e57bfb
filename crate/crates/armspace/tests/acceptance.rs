//! End-to-end acceptance gate. Each test covers one promised behavior of
//! the whole pipeline and prints a single summary line on success; a failure
//! message names the instance and the first counterexample.

mod common;

use std::collections::BTreeSet;

use armspace::arm::Move;
use armspace::complex::{configuration_complex, lower_set_complex};
use armspace::graph::{enumerate_gb_paths, suffix_decomposition, GraphPath};
use armspace::pip::{IndexedPath, Pip};
use armspace::planner::{diameter, distance, omega, plan_moves, plan_rounds, DiameterMode};
use armspace::tableaux::{
    build_extended_lattice, check_spine_irreducibles, enumerate_tableaux, is_tableau, is_tight,
    tau, PathTableau,
};

use common::*;

/// Hard ceiling from the contract: instances with more configurations than
/// this are skipped by the exhaustive sweeps.
const SWEEP_CAP: usize = 20_000;
/// Tighter ceiling for the all-pairs distance work.
const PAIR_CAP: usize = 3_000;

#[test]
fn criterion_1_triangle_diameter_is_24_in_both_exact_modes() {
    let inst = triangle(5);

    let searched = diameter(&inst, DiameterMode::ExactBfs, LIMIT).unwrap();
    assert_eq!(searched.exact, Some(24), "all-pairs maximization");

    let wound = diameter(&inst, DiameterMode::ExactFormula, LIMIT).unwrap();
    assert_eq!(wound.exact, Some(24), "winding construction");
    let (x, y) = wound.witness.expect("the winding mode reports its pair");
    let plan = plan_moves(&inst, &x, &y).unwrap();
    assert_eq!(plan.moves.len(), 24, "witness plan length");
    let mut cur = x.clone();
    for m in &plan.moves {
        cur = inst.apply_move(&cur, m).unwrap();
    }
    assert_eq!(cur, y, "witness plan must replay onto the far endpoint");

    println!("criterion 1: PASS - triangle arm-5 diameter 24 in both modes, witness replays in 24 moves");
}

#[test]
fn criterion_2_worked_figures_reproduce_exactly() {
    let inst = pendant_triangle(10);
    let g = &inst.graph;
    let p = GraphPath::from_names(g, &["b", "a", "d", "a", "c", "b", "a"]).unwrap();

    // (a) Block membership of each edge of the winding walk.
    let d = suffix_decomposition(&p).unwrap();
    let blocks: Vec<usize> = (1..=p.len()).map(|r| d.block_of(r)).collect();
    assert_eq!(blocks, [1, 1, 2, 2, 3, 3], "per-edge block membership");

    // (b) The pointwise-maximal labeling at index 2, and a slack neighbor
    // that is valid but not maximal.
    let tight = tau(&IndexedPath::new(p.clone(), 2)).unwrap();
    assert_eq!(tight.labels, [2, 2, 3, 3, 4, 4]);
    assert!(is_tight(&tight));
    let slack = PathTableau {
        path: p.clone(),
        labels: vec![2, 2, 3, 3, 3, 4],
    };
    assert!(is_tableau(&slack, 10), "the slack labeling is a tableau");
    assert!(!is_tight(&slack), "but not the pointwise maximum");

    // (c) Flattening the staircase configuration yields its edge labels.
    let x = config(
        &inst,
        &[
            ("b", 0),
            ("a", 0),
            ("a", 1),
            ("d", 1),
            ("d", 2),
            ("a", 2),
            ("a", 3),
            ("c", 3),
            ("b", 3),
            ("b", 4),
            ("a", 4),
        ],
    );
    let t = inst.config_to_tableau(&x);
    assert_eq!(t.path, p, "flattening keeps the walk");
    assert_eq!(t.labels, [0, 1, 2, 3, 3, 4], "flattened heights");

    // (d) The shadow generators carry these indices.
    let indices: Vec<usize> = inst.shadow_generators(&x).iter().map(|u| u.a).collect();
    assert_eq!(indices, [0, 1, 1, 2, 2, 2], "generator indices");

    // (e) The four legal moves of the length-9 staircase, and exactly the
    // subsets avoiding the clashing first pair commute.
    let inst9 = pendant_triangle(9);
    let x9 = config(
        &inst9,
        &[
            ("b", 0),
            ("a", 0),
            ("a", 1),
            ("d", 1),
            ("d", 2),
            ("a", 2),
            ("c", 2),
            ("b", 2),
            ("b", 3),
            ("a", 3),
        ],
    );
    let moves = inst9.legal_moves(&x9);
    let rendered: Vec<String> = moves.iter().map(|m| m.display(&inst9.graph)).collect();
    assert_eq!(
        rendered,
        ["C+(b,a,0)", "C-(a,d,0)", "C+(c,b,2)", "T+(b,a,3)"],
        "move catalogue at the staircase"
    );
    for mask in 0u32..16 {
        let subset: Vec<Move> = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| moves[i])
            .collect();
        // C+(b,a,0) and C-(a,d,0) pivot around the same joint.
        let clashes = mask & 0b0011 == 0b0011;
        assert_eq!(
            inst9.is_commutative_set(&x9, &subset, 8).unwrap(),
            !clashes,
            "subset mask {mask:#06b}"
        );
    }

    println!("criterion 2: PASS - decomposition, labelings, flattening, generators, and move set match the worked figures");
}

#[test]
fn criterion_3_bijections_and_axioms_hold_across_the_suite() {
    let mut instances = 0usize;
    let mut skipped = 0usize;
    for ell in 0..=5 {
        for (name, inst) in suite(ell) {
            let g = &inst.graph;
            let tg = inst.transition_graph(LIMIT).unwrap();
            if tg.nodes.len() > SWEEP_CAP {
                skipped += 1;
                continue;
            }
            instances += 1;
            let ctx = format!("{name}, arm length {ell}");

            let tabs = enumerate_tableaux(g, inst.base, inst.arm_len, LIMIT).unwrap();
            let pip = Pip::build(g, inst.base, inst.arm_len, LIMIT).unwrap();
            let sets = pip.enumerate_consistent_lower_sets(LIMIT).unwrap();

            assert_eq!(tg.nodes.len(), tabs.len(), "{ctx}: tableau count");
            assert_eq!(tg.nodes.len(), sets.len(), "{ctx}: lower-set count");

            // Configuration <-> tableau round trips, both directions.
            for x in &tg.nodes {
                let t = inst.config_to_tableau(x);
                assert_eq!(&inst.tableau_to_config(&t).unwrap(), x, "{ctx}");
            }
            for t in &tabs {
                let x = inst.tableau_to_config(t).unwrap();
                assert_eq!(&inst.config_to_tableau(&x), t, "{ctx}");
            }

            // Configuration <-> consistent lower set round trips.
            for x in &tg.nodes {
                let s = inst.shadow(&pip, x).unwrap();
                assert_eq!(&inst.shadow_inverse(&pip, &s).unwrap(), x, "{ctx}");
            }
            for s in &sets {
                let x = inst.shadow_inverse(&pip, s).unwrap();
                assert_eq!(
                    inst.shadow(&pip, &x).unwrap().members,
                    s.members,
                    "{ctx}"
                );
            }

            let axioms = pip.verify_axioms();
            assert!(axioms.passed, "{ctx}: {:?}", axioms.details);

            for q in enumerate_gb_paths(g, inst.base, |len, _| len <= 4) {
                let rep = check_spine_irreducibles(&q, inst.arm_len, LIMIT).unwrap();
                assert!(
                    rep.passed,
                    "{ctx}, spine {}: {:?}",
                    q.display(g),
                    rep.details
                );
                let (_, lattice) = build_extended_lattice(&q, inst.arm_len, LIMIT).unwrap();
                let rep = lattice.verify_irreducible_representation();
                assert!(
                    rep.passed,
                    "{ctx}, spine {}: {:?}",
                    q.display(g),
                    rep.details
                );
            }
        }
    }
    println!("criterion 3: PASS - bijection suite on {instances} instances ({skipped} skipped over the {SWEEP_CAP}-configuration cap)");
}

#[test]
fn criterion_4_both_complexes_agree_cube_for_cube() {
    let mut instances = 0usize;
    for ell in 0..=5 {
        for (name, inst) in suite(ell) {
            let tg = inst.transition_graph(LIMIT).unwrap();
            if tg.nodes.len() > SWEEP_CAP {
                continue;
            }
            instances += 1;
            let ctx = format!("{name}, arm length {ell}");

            let from_configs = configuration_complex(&inst, &tg).unwrap();
            let pip = Pip::build(&inst.graph, inst.base, inst.arm_len, LIMIT).unwrap();
            let sets = pip.enumerate_consistent_lower_sets(LIMIT).unwrap();
            let from_sets = lower_set_complex(&pip, &sets).unwrap();
            assert_eq!(
                from_configs.f_vector(),
                from_sets.f_vector(),
                "{ctx}: face counts"
            );

            // Raising a commutative set of moves deletes exactly the
            // generators it consumes from the shadow.
            for (k, x) in tg.nodes.iter().enumerate() {
                let before: BTreeSet<u32> =
                    inst.shadow(&pip, x).unwrap().members.into_iter().collect();
                let ups: Vec<Move> = inst.legal_moves(x).into_iter().filter(|m| m.up).collect();
                // Raising moves always commute; spot-check that claim too.
                if k % 25 == 0 && ups.len() <= 6 {
                    assert!(
                        inst.is_commutative_set(x, &ups, 6).unwrap(),
                        "{ctx}: raising moves at {} should commute",
                        x.display(&inst.graph)
                    );
                }
                for mask in 1u32..1 << ups.len() {
                    let chosen: Vec<Move> = (0..ups.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| ups[i])
                        .collect();
                    let mut consumed = BTreeSet::new();
                    for m in &chosen {
                        let u = inst.raised_generator(x, m).unwrap();
                        consumed.insert(pip.position(&u).unwrap() as u32);
                    }
                    let mut cur = x.clone();
                    for m in &chosen {
                        cur = inst.apply_move(&cur, m).unwrap();
                    }
                    let after: BTreeSet<u32> = inst
                        .shadow(&pip, &cur)
                        .unwrap()
                        .members
                        .into_iter()
                        .collect();
                    let expected: BTreeSet<u32> = before.difference(&consumed).copied().collect();
                    assert_eq!(
                        after,
                        expected,
                        "{ctx}: raising {:?} from {}",
                        chosen
                            .iter()
                            .map(|m| m.display(&inst.graph))
                            .collect::<Vec<_>>(),
                        x.display(&inst.graph)
                    );
                }
            }
        }
    }

    // The triangle with a 5-arm tops out at 3-cubes.
    let inst = triangle(5);
    let tg = inst.transition_graph(LIMIT).unwrap();
    let complex = configuration_complex(&inst, &tg).unwrap();
    assert_eq!(complex.dim(), 3, "triangle arm-5 maximal cube dimension");

    println!("criterion 4: PASS - identical face vectors and shadow-deletion law on {instances} instances; triangle arm-5 peaks at dimension 3");
}

#[test]
fn criterion_5_distances_plans_and_rounds_match_the_search_oracles() {
    let mut pairs = 0usize;
    let mut skipped = 0usize;
    for ell in 0..=5 {
        for (name, inst) in suite(ell) {
            let tg = inst.transition_graph(LIMIT).unwrap();
            let n = tg.nodes.len();
            if n > PAIR_CAP {
                skipped += 1;
                continue;
            }
            let ctx = format!("{name}, arm length {ell}");
            let pip = Pip::build(&inst.graph, inst.base, inst.arm_len, LIMIT).unwrap();
            let shadows: Vec<BTreeSet<u32>> = tg
                .nodes
                .iter()
                .map(|x| {
                    inst.shadow(&pip, x)
                        .unwrap()
                        .members
                        .into_iter()
                        .collect()
                })
                .collect();
            let complex = configuration_complex(&inst, &tg).unwrap();
            let rounds_adj = cube_adjacency(&complex);

            for i in 0..n {
                let hops = bfs_distances(&tg.adj, i);
                let round_hops = bfs_distances(&rounds_adj, i);
                for j in i + 1..n {
                    let (x, y) = (&tg.nodes[i], &tg.nodes[j]);
                    let d = distance(&inst, x, y);
                    assert_eq!(d, hops[j], "{ctx}: formula vs search");
                    assert_eq!(
                        d,
                        shadows[i].symmetric_difference(&shadows[j]).count(),
                        "{ctx}: formula vs shadow difference"
                    );

                    let plan = plan_moves(&inst, x, y).unwrap();
                    assert_eq!(plan.moves.len(), d, "{ctx}: plan length");
                    let mut cur = x.clone();
                    for m in &plan.moves {
                        cur = inst.apply_move(&cur, m).unwrap();
                    }
                    assert_eq!(&cur, y, "{ctx}: plan replay");

                    let plan = plan_rounds(&inst, x, y).unwrap();
                    let rounds = plan.rounds.as_ref().unwrap();
                    assert_eq!(
                        rounds.len(),
                        round_hops[j],
                        "{ctx}: round count vs cube-hop search"
                    );
                    pairs += 1;
                }
            }
        }
    }
    println!("criterion 5: PASS - {pairs} pairs agree with both search oracles ({skipped} instances over the {PAIR_CAP}-configuration cap)");
}

#[test]
fn criterion_6_half_bound_closed_form_matches_the_summation_form() {
    // The summation the bound derivation controls directly: each raising
    // move lifts one segment by one height step, and winding the arm down a
    // fresh branch spends every height in 1..=ell except those congruent to
    // ell+1 modulo n.
    fn summation_form(ell: usize, n: usize) -> usize {
        (1..=ell).filter(|t| t % n != (ell + 1) % n).sum()
    }

    // Quarter-squares at n = 2.
    for ell in 0..=300usize {
        assert_eq!(
            omega(ell, 2).unwrap(),
            (ell + 1) * (ell + 1) / 4,
            "arm length {ell}"
        );
    }

    let mut mismatches = Vec::new();
    let mut points = 0usize;
    for n in 1..=25usize {
        for ell in 0..=300usize {
            points += 1;
            let closed = omega(ell, n).unwrap();
            let sum = summation_form(ell, n);
            let partition = balanced_partition_edges(ell + 1, n);
            assert_eq!(
                sum, partition,
                "summation vs balanced-partition edges at arm {ell}, {n} vertices"
            );
            if closed != sum {
                mismatches.push((ell, n, closed, sum));
            }
        }
    }

    assert!(
        mismatches.is_empty(),
        "the quadratic closed form floor((n-1)(ell+1)^2/(2n)) exceeds the summation form at \
         {} of {points} points; first at arm length {}, {} vertices: closed {} vs summation {} \
         (= balanced-partition edge count). The two agree exactly when, with s = (ell+1) mod n, \
         s*(n-s) < 2n; the first eight mismatches are {:?}",
        mismatches.len(),
        mismatches[0].0,
        mismatches[0].1,
        mismatches[0].2,
        mismatches[0].3,
        &mismatches[..mismatches.len().min(8)],
    );
    println!("criterion 6: PASS - closed form, summation form, quarter-squares, and partition oracle agree on {points} points");
}

#[test]
fn criterion_7_the_bound_caps_every_instance_and_is_sharp_where_promised() {
    let mut strict_on_path_end = false;
    let mut instances = 0usize;
    for ell in 0..=5 {
        for (name, inst) in suite(ell) {
            let tg = inst.transition_graph(LIMIT).unwrap();
            if tg.nodes.len() > SWEEP_CAP {
                continue;
            }
            instances += 1;
            let report = diameter(&inst, DiameterMode::ExactBfs, LIMIT).unwrap();
            let exact = report.exact.unwrap();
            assert!(
                exact <= report.bound,
                "{name}, arm length {ell}: exact {exact} over bound {}",
                report.bound
            );
            if matches!(name, "triangle" | "square" | "complete-4") {
                assert_eq!(
                    exact, report.bound,
                    "{name}, arm length {ell}: the bound should be attained"
                );
            }
            if name == "path-end" && exact < report.bound {
                strict_on_path_end = true;
            }
        }
    }
    assert!(
        strict_on_path_end,
        "some short arm on the path graph must fall strictly below the bound"
    );
    println!("criterion 7: PASS - bound respected on {instances} instances, attained on the cycles and the complete graph, strict on the path end");
}
