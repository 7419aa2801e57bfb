//! Command-line front end: enumerate the state space, plan arm motions,
//! compute diameters, run the structural self-checks, and export DOT/JSON
//! renderings of the core objects.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage or input
//! error, 3 a size guard was exceeded.

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use armspace::arm::Configuration;
use armspace::complex::{check_cube_isomorphism, configuration_complex, lower_set_complex};
use armspace::dot::{hasse_dot, transition_dot};
use armspace::graph::{enumerate_gb_paths, Graph, GraphPath};
use armspace::pip::Pip;
use armspace::planner::{diameter, distance, plan_moves, plan_rounds, DiameterMode};
use armspace::tableaux::{
    build_extended_lattice, check_spine_irreducibles, enumerate_tableaux, PathTableau,
};
use armspace::{CheckReport, Error, Instance, Result};

#[derive(Parser)]
#[command(
    name = "arm",
    version,
    about = "Motion planning for a robotic arm constrained to a graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count configurations, tableaux, indexed paths, and consistent lower
    /// sets, checking that the counts agree where the bijections require it
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// List the objects instead of only counting them
        #[arg(long)]
        full: bool,
    },
    /// Compute a move-minimal plan between two configurations
    Plan {
        #[command(flatten)]
        common: Common,
        /// Source configuration: "initial", "path:labels" shorthand such as
        /// "b,a,d:0,1,2", or a JSON list of [vertex, height] joints
        #[arg(long, value_name = "CONFIG")]
        source: String,
        /// Target configuration, same forms as --source
        #[arg(long, value_name = "CONFIG")]
        target: String,
        /// Group the plan into rounds of simultaneously executable moves
        #[arg(long)]
        rounds: bool,
    },
    /// Report the diameter bound for the instance, optionally with the
    /// exact value and a witness pair
    Diameter {
        #[command(flatten)]
        common: Common,
        /// bound: report the ceiling only; exact-bfs: maximize the distance
        /// formula over all pairs; exact-formula: wind an antipodal pair
        /// when the sharpness condition holds
        #[arg(long, value_enum, default_value_t = ModeArg::Bound)]
        mode: ModeArg,
    },
    /// Run the structural self-checks and print one line per check
    Verify {
        #[command(flatten)]
        common: Common,
        /// Negative control: flip one relation entry first, so the axiom
        /// check must report a counterexample
        #[arg(long)]
        inject_corruption: bool,
    },
    /// Render a core object to DOT or JSON
    Export {
        #[command(flatten)]
        common: Common,
        /// hasse: the indexed-path order diagram; transition: the move
        /// graph; fvector: cube counts of both complexes side by side
        #[arg(value_enum)]
        what: Artifact,
    },
}

#[derive(Args)]
struct Common {
    /// Graph document: {"vertices": [...], "edges": [["a","b"], ...], "base": "b"}
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Base vertex name (overrides any base declared in the document)
    #[arg(long, value_name = "VERTEX")]
    base: Option<String>,
    /// Arm length
    #[arg(long, value_name = "L")]
    len: usize,
    /// Size guard applied to every enumeration; the ARM_LIMIT environment
    /// variable sets it too, with the flag taking precedence
    #[arg(long, value_name = "N")]
    limit: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Bound,
    ExactBfs,
    ExactFormula,
}

#[derive(Clone, Copy, ValueEnum)]
enum Artifact {
    Hasse,
    Transition,
    Fvector,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Cmd::Enumerate { common, full } => cmd_enumerate(common, full),
        Cmd::Plan {
            common,
            source,
            target,
            rounds,
        } => cmd_plan(common, &source, &target, rounds),
        Cmd::Diameter { common, mode } => cmd_diameter(common, mode),
        Cmd::Verify {
            common,
            inject_corruption,
        } => cmd_verify(common, inject_corruption),
        Cmd::Export { common, what } => cmd_export(common, what),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Guard { .. } => 3,
                _ => 2,
            }
        }
    }
}

/// Per-object enumeration guards. A single knob (flag or ARM_LIMIT) sets all
/// three; otherwise each falls back to its library default.
struct Guards {
    nodes: usize,
    pip: usize,
    sets: usize,
}

struct Setup {
    inst: Instance,
    guards: Guards,
    format: Format,
    out: Option<PathBuf>,
}

fn setup(common: Common) -> Result<Setup> {
    let doc = std::fs::read_to_string(&common.graph)?;
    let graph = Graph::from_json_str(&doc)?;
    let inst = match common.base.as_deref() {
        Some(name) => {
            let b = graph.vertex_id(name).ok_or_else(|| Error::Invalid {
                kind: "instance",
                reason: format!("base {name:?} is not a vertex of the graph"),
            })?;
            Instance::new(graph, b, common.len)?
        }
        None => Instance::from_graph(graph, common.len)?,
    };
    let guards = guards(common.limit)?;
    Ok(Setup {
        inst,
        guards,
        format: common.format,
        out: common.out,
    })
}

fn guards(flag: Option<usize>) -> Result<Guards> {
    let env = match std::env::var("ARM_LIMIT").ok() {
        Some(s) => Some(s.trim().parse::<usize>().map_err(|_| {
            Error::Parse(format!("ARM_LIMIT must be an unsigned integer, got {s:?}"))
        })?),
        None => None,
    };
    match flag.or(env) {
        Some(0) => Err(Error::Invalid {
            kind: "limit",
            reason: "the limit must be positive".into(),
        }),
        Some(n) => Ok(Guards {
            nodes: n,
            pip: n,
            sets: n,
        }),
        None => Ok(Guards {
            nodes: armspace::arm::DEFAULT_NODE_LIMIT,
            pip: armspace::pip::DEFAULT_ELEMENT_LIMIT,
            sets: armspace::lattice::DEFAULT_LATTICE_LIMIT,
        }),
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<()> {
    let text = if text.ends_with('\n') {
        text
    } else {
        text + "\n"
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn reject_dot(format: Format, cmd: &str) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::Invalid {
            kind: "format",
            reason: format!("dot output applies to `export hasse|transition`, not to `{cmd}`"),
        });
    }
    Ok(())
}

/// "initial", the "path:labels" tableau shorthand, or a JSON joint list.
fn parse_config(inst: &Instance, text: &str) -> Result<Configuration> {
    let text = text.trim();
    if text == "initial" {
        return Ok(inst.initial_configuration());
    }
    if text.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("configuration: {e}")))?;
        return Configuration::from_json(inst, &v);
    }
    let Some((path_part, label_part)) = text.split_once(':') else {
        return Err(Error::Parse(format!(
            "configuration must be \"initial\", \"v1,v2,...:l1,l2,...\", or a JSON joint list, got {text:?}"
        )));
    };
    let names: Vec<&str> = path_part.split(',').map(str::trim).collect();
    let path = GraphPath::from_names(&inst.graph, &names)?;
    let labels = label_part
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("label {t:?} is not an unsigned integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    inst.tableau_to_config(&PathTableau { path, labels })
}

fn cmd_enumerate(common: Common, full: bool) -> Result<bool> {
    let s = setup(common)?;
    reject_dot(s.format, "enumerate")?;
    let inst = &s.inst;
    let g = &inst.graph;
    let tg = inst.transition_graph(s.guards.nodes)?;
    let tabs = enumerate_tableaux(g, inst.base, inst.arm_len, s.guards.nodes)?;
    let pip = Pip::build(g, inst.base, inst.arm_len, s.guards.pip)?;
    let sets = pip.enumerate_consistent_lower_sets(s.guards.sets)?;

    // Configurations, tableaux, and consistent lower sets are in bijection;
    // the indexed paths are the generators, counted separately.
    let agree = tg.nodes.len() == tabs.len() && tg.nodes.len() == sets.len();

    match s.format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "configurations": tg.nodes.len(),
                "tableaux": tabs.len(),
                "indexed_paths": pip.element_count(),
                "consistent_lower_sets": sets.len(),
                "counts_agree": agree,
            });
            if full {
                doc["configuration_list"] = serde_json::Value::Array(
                    tg.nodes.iter().map(|x| x.to_json(g)).collect(),
                );
                doc["tableau_list"] =
                    serde_json::Value::Array(tabs.iter().map(|t| t.to_json(g)).collect());
                doc["indexed_path_list"] = serde_json::Value::Array(
                    (0..pip.element_count())
                        .map(|i| pip.label(i).into())
                        .collect(),
                );
                doc["lower_set_list"] = serde_json::Value::Array(
                    sets.iter()
                        .map(|ls| serde_json::json!(ls.members))
                        .collect(),
                );
            }
            emit(&s.out, doc.to_string())?;
        }
        Format::Text => {
            let mut lines = vec![
                format!("configurations: {}", tg.nodes.len()),
                format!("tableaux: {}", tabs.len()),
                format!("indexed paths: {}", pip.element_count()),
                format!("consistent lower sets: {}", sets.len()),
            ];
            if full {
                for x in &tg.nodes {
                    lines.push(format!("configuration {}", x.display(g)));
                }
                for t in &tabs {
                    lines.push(format!("tableau {}", t.display(g)));
                }
                for i in 0..pip.element_count() {
                    lines.push(format!("indexed path {}", pip.label(i)));
                }
                for ls in &sets {
                    let body: Vec<&str> =
                        ls.members.iter().map(|&i| pip.label(i as usize)).collect();
                    lines.push(format!("lower set {{{}}}", body.join(", ")));
                }
            }
            lines.push(if agree {
                "counts agree".to_string()
            } else {
                "COUNT MISMATCH".to_string()
            });
            emit(&s.out, lines.join("\n"))?;
        }
        Format::Dot => unreachable!(),
    }
    Ok(agree)
}

fn cmd_plan(common: Common, source: &str, target: &str, rounds: bool) -> Result<bool> {
    let s = setup(common)?;
    reject_dot(s.format, "plan")?;
    let x = parse_config(&s.inst, source)?;
    let y = parse_config(&s.inst, target)?;
    let plan = if rounds {
        plan_rounds(&s.inst, &x, &y)?
    } else {
        plan_moves(&s.inst, &x, &y)?
    };
    match s.format {
        Format::Json => emit(&s.out, plan.to_json(&s.inst).to_string())?,
        Format::Text => {
            let g = &s.inst.graph;
            let mut lines = vec![
                format!("source: {}", x.display(g)),
                format!("target: {}", y.display(g)),
                format!("moves: {}", plan.moves.len()),
            ];
            match &plan.rounds {
                Some(rs) => {
                    for (i, round) in rs.iter().enumerate() {
                        let body: Vec<String> =
                            round.iter().map(|&k| plan.moves[k].display(g)).collect();
                        lines.push(format!("round {}: {}", i + 1, body.join(" ")));
                    }
                }
                None => {
                    for m in &plan.moves {
                        lines.push(m.display(g));
                    }
                }
            }
            emit(&s.out, lines.join("\n"))?;
        }
        Format::Dot => unreachable!(),
    }
    Ok(true)
}

fn cmd_diameter(common: Common, mode: ModeArg) -> Result<bool> {
    let s = setup(common)?;
    reject_dot(s.format, "diameter")?;
    let mode = match mode {
        ModeArg::Bound => DiameterMode::Bound,
        ModeArg::ExactBfs => DiameterMode::ExactBfs,
        ModeArg::ExactFormula => DiameterMode::ExactFormula,
    };
    let report = diameter(&s.inst, mode, s.guards.nodes)?;
    match s.format {
        Format::Json => emit(&s.out, report.to_json(&s.inst).to_string())?,
        Format::Text => {
            let g = &s.inst.graph;
            let mut lines = vec![
                format!("vertices: {}", report.vertex_count),
                format!("arm length: {}", report.arm_len),
                format!("bound: {}", report.bound),
                format!("sharpness condition holds: {}", report.hypothesis_holds),
            ];
            if let Some(exact) = report.exact {
                lines.push(format!("exact: {exact}"));
            }
            if let Some((x, y)) = &report.witness {
                lines.push(format!("witness: {}", x.display(g)));
                lines.push(format!("         {}", y.display(g)));
            }
            emit(&s.out, lines.join("\n"))?;
        }
        Format::Dot => unreachable!(),
    }
    Ok(true)
}

fn cmd_verify(common: Common, inject_corruption: bool) -> Result<bool> {
    let s = setup(common)?;
    reject_dot(s.format, "verify")?;
    let inst = &s.inst;
    let g = &inst.graph;
    let pip = Pip::build(g, inst.base, inst.arm_len, s.guards.pip)?;

    let mut reports = Vec::new();

    reports.push(if inject_corruption {
        if pip.element_count() == 0 {
            return Err(Error::Invalid {
                kind: "verify",
                reason: "the poset is empty, so there is no relation entry to corrupt".into(),
            });
        }
        let (mut leq, inc) = pip.relation_tables();
        // Break reflexivity of the first element; the axiom check must
        // produce a counterexample naming it.
        leq[0][0] = !leq[0][0];
        let mut rep = pip.verify_axioms_with(&leq, &inc);
        rep.name = "poset axioms (corrupted relation)".into();
        rep
    } else {
        pip.verify_axioms()
    });

    // Every spine of up to four edges: tableau order matches indexed-path
    // order, and the extension lattice is recovered by its irreducibles.
    let spines = enumerate_gb_paths(g, inst.base, |len, _| len <= 4);
    let mut spine_rep = CheckReport::pass("spine tableaux vs indexed-path order");
    let mut birkhoff = CheckReport::pass("lattice irreducible representation");
    for q in &spines {
        let sub = check_spine_irreducibles(q, inst.arm_len, s.guards.sets)?;
        if !sub.passed {
            for d in sub.details {
                spine_rep.record_failure(format!("spine {}: {}", q.display(g), d));
            }
        }
        let (_, lattice) = build_extended_lattice(q, inst.arm_len, s.guards.sets)?;
        let sub = lattice.verify_irreducible_representation();
        if !sub.passed {
            for d in sub.details {
                birkhoff.record_failure(format!("spine {}: {}", q.display(g), d));
            }
        }
    }
    if spine_rep.passed {
        spine_rep.note(format!("{} spines checked", spines.len()));
    }
    if birkhoff.passed {
        birkhoff.note(format!("{} lattices checked", spines.len()));
    }
    reports.push(spine_rep);
    reports.push(birkhoff);

    reports.push(check_cube_isomorphism(inst, s.guards.nodes, s.guards.sets)?);
    reports.push(distance_agreement(inst, &pip, s.guards.nodes)?);

    let all_passed = reports.iter().all(|r| r.passed);
    match s.format {
        Format::Json => {
            let checks: Vec<_> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name,
                        "passed": r.passed,
                        "details": r.details,
                    })
                })
                .collect();
            emit(
                &s.out,
                serde_json::json!({ "checks": checks, "all_passed": all_passed }).to_string(),
            )?;
        }
        Format::Text => {
            let mut lines = Vec::new();
            for r in &reports {
                lines.push(format!(
                    "{} {}",
                    if r.passed { "ok  " } else { "FAIL" },
                    r.name
                ));
                for d in &r.details {
                    lines.push(format!("     {d}"));
                }
            }
            emit(&s.out, lines.join("\n"))?;
        }
        Format::Dot => unreachable!(),
    }
    Ok(all_passed)
}

/// The distance formula, breadth-first search over the transition graph,
/// and the shadow symmetric-difference size must agree on every pair.
fn distance_agreement(inst: &Instance, pip: &Pip, node_limit: usize) -> Result<CheckReport> {
    const MAX_WITNESSES: usize = 5;
    const PAIR_BUDGET: usize = 3_000;
    let g = &inst.graph;
    let tg = inst.transition_graph(node_limit)?;
    let n = tg.nodes.len();
    let mut report = CheckReport::pass("distance agreement");
    if n > PAIR_BUDGET {
        report.note(format!(
            "skipped: {n} configurations exceed the pairwise budget of {PAIR_BUDGET}"
        ));
        return Ok(report);
    }
    let shadows: Vec<BTreeSet<u32>> = tg
        .nodes
        .iter()
        .map(|x| {
            inst.shadow(pip, x)
                .map(|ls| ls.members.into_iter().collect())
        })
        .collect::<Result<_>>()?;
    let mut checked = 0usize;
    for i in 0..n {
        let dist = bfs_distances(&tg.adj, i);
        for j in i + 1..n {
            let formula = distance(inst, &tg.nodes[i], &tg.nodes[j]);
            let search = dist[j];
            let shadow = shadows[i].symmetric_difference(&shadows[j]).count();
            checked += 1;
            if formula != search || formula != shadow {
                if report.details.len() < MAX_WITNESSES {
                    report.record_failure(format!(
                        "{} vs {}: formula {formula}, search {search}, shadow difference {shadow}",
                        tg.nodes[i].display(g),
                        tg.nodes[j].display(g),
                    ));
                } else {
                    report.passed = false;
                }
            }
        }
    }
    if report.passed {
        report.note(format!("{checked} pairs checked"));
    }
    Ok(report)
}

fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
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

fn cmd_export(common: Common, what: Artifact) -> Result<bool> {
    let s = setup(common)?;
    let inst = &s.inst;
    let g = &inst.graph;
    match what {
        Artifact::Hasse => {
            let pip = Pip::build(g, inst.base, inst.arm_len, s.guards.pip)?;
            match s.format {
                Format::Dot => emit(&s.out, hasse_dot(&pip))?,
                Format::Json => {
                    let pair_list = |pairs: Vec<(usize, usize)>| {
                        serde_json::Value::Array(
                            pairs
                                .into_iter()
                                .map(|(a, b)| serde_json::json!([a, b]))
                                .collect(),
                        )
                    };
                    let doc = serde_json::json!({
                        "elements": (0..pip.element_count())
                            .map(|i| pip.label(i))
                            .collect::<Vec<_>>(),
                        "covers": pair_list(pip.cover_pairs()),
                        "minimal_inconsistent_pairs": pair_list(pip.minimal_inconsistent_pairs()),
                    });
                    emit(&s.out, doc.to_string())?;
                }
                Format::Text => {
                    return Err(Error::Invalid {
                        kind: "format",
                        reason: "export hasse supports dot or json output".into(),
                    })
                }
            }
        }
        Artifact::Transition => {
            let tg = inst.transition_graph(s.guards.nodes)?;
            match s.format {
                Format::Dot => emit(&s.out, transition_dot(inst, &tg))?,
                Format::Json => {
                    let doc = serde_json::json!({
                        "nodes": tg.nodes.iter().map(|x| x.to_json(g)).collect::<Vec<_>>(),
                        "edges": tg
                            .edges
                            .iter()
                            .map(|&(i, j, m)| serde_json::json!([i, j, m.to_json(g)]))
                            .collect::<Vec<_>>(),
                    });
                    emit(&s.out, doc.to_string())?;
                }
                Format::Text => {
                    return Err(Error::Invalid {
                        kind: "format",
                        reason: "export transition supports dot or json output".into(),
                    })
                }
            }
        }
        Artifact::Fvector => {
            reject_dot(s.format, "export fvector")?;
            let tg = inst.transition_graph(s.guards.nodes)?;
            let from_configs = configuration_complex(inst, &tg)?;
            let pip = Pip::build(g, inst.base, inst.arm_len, s.guards.pip)?;
            let sets = pip.enumerate_consistent_lower_sets(s.guards.sets)?;
            let from_sets = lower_set_complex(&pip, &sets)?;
            let equal = from_configs.f_vector() == from_sets.f_vector();
            match s.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "configuration_complex": from_configs.f_vector(),
                        "lower_set_complex": from_sets.f_vector(),
                        "equal": equal,
                    });
                    emit(&s.out, doc.to_string())?;
                }
                Format::Text => {
                    let render = |v: Vec<usize>| {
                        v.iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    let lines = vec![
                        format!("configuration complex: ({})", render(from_configs.f_vector())),
                        format!("lower-set complex:     ({})", render(from_sets.f_vector())),
                        format!("equal: {equal}"),
                    ];
                    emit(&s.out, lines.join("\n"))?;
                }
                Format::Dot => unreachable!(),
            }
            return Ok(equal);
        }
    }
    Ok(true)
}
