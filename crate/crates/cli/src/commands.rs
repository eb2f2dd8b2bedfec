use std::path::Path;
use std::sync::Arc;

use minorlab::certify::{adversary_search, evaluate, AdversaryMode, Proof, Scheme, SchemeA, SchemeB, SpanningTree};
use minorlab::decomp::{
    edge_deletion_to_bounded_td, low_td_cover, verify_cover, verify_decomposition, weak_diameter_cover,
};
use minorlab::graph::{
    density_check, generate_instance, is_eps_far, parse_graph, parse_property, Family, Graph, HFree, OracleError,
    OracleLimits, Property, Structure,
};
use minorlab::obstructions::{
    bound_summary, enumerate_minimal_forbidden, lep_dichotomy, verify_deletion, verify_packing, ForbiddenFamily,
    Outcome,
};
use minorlab::tester::{query_budget, run_trials, Decision, TesterParams};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::RunReport;
use crate::{
    Action, BoundsArgs, CertifyArgs, CoverArgs, CoverKindArg, DichotomyArgs, FamilyArgs, GenArgs, GraphArgs, ModeArg,
    SchemeArg, SchemeArgs, SweepArgs, SweepKind, TestArgs,
};

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn parse_structure(text: &str) -> Result<Structure, CliError> {
    match text {
        "generic" => return Ok(Structure::Generic),
        "forest" => return Ok(Structure::Forest),
        _ => {}
    }
    let dims = text.strip_prefix("lattice:").and_then(|d| d.split_once('x'));
    match dims.map(|(w, h)| (w.parse(), h.parse())) {
        Some((Ok(width), Ok(height))) => Ok(Structure::Lattice { width, height }),
        _ => Err(CliError::Usage(format!(
            "structure must be `generic`, `forest` or `lattice:WxH`, got `{text}`"
        ))),
    }
}

/// The host graph, its structure, and a config echo of where it came from.
fn load_graph(args: &GraphArgs, report: &mut RunReport) -> Result<(Graph, Structure), CliError> {
    let (graph, structure) = match (&args.graph, &args.family) {
        (Some(path), None) => {
            let bytes = read(path)?;
            report.artifact("graph", &bytes);
            report.config("graph", path.display().to_string());
            let text = String::from_utf8(bytes).map_err(CliError::data)?;
            (parse_graph(&text)?, Structure::Generic)
        }
        (None, Some(name)) => {
            let family: Family = name.parse()?;
            let n = args.n.ok_or_else(|| CliError::usage("--family needs --n"))?;
            let inst = generate_instance(family, n, args.seed)?;
            report.artifact("graph", inst.graph.to_edge_list().as_bytes());
            report
                .config("family", family.name())
                .config("n", n)
                .config("graph_seed", args.seed);
            (inst.graph, inst.structure)
        }
        _ => return Err(CliError::usage("give exactly one of --graph or --family")),
    };
    let graph = if args.connect {
        report.config("connect", true);
        graph.connect_components()
    } else {
        graph
    };
    let structure = match &args.structure {
        Some(text) => parse_structure(text)?,
        None => structure,
    };
    report.config("structure", structure);
    report.metric("vertices", graph.n()).metric("edges", graph.m());
    Ok((graph, structure))
}

fn read_forbidden(path: &Path) -> Result<Vec<Graph>, CliError> {
    let text = String::from_utf8(read(path)?).map_err(CliError::data)?;
    let mut graphs = Vec::new();
    let mut chunk = String::new();
    for line in text.lines().chain(std::iter::once("---")) {
        if line.trim() == "---" {
            if !chunk.trim().is_empty() {
                graphs.push(parse_graph(&chunk)?);
            }
            chunk.clear();
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    Ok(graphs)
}

/// The property and its forbidden family, either enumerated or read from
/// `--forbidden`.
fn load_family(args: &FamilyArgs, report: &mut RunReport) -> Result<(Arc<dyn Property>, ForbiddenFamily), CliError> {
    let (p, family): (Arc<dyn Property>, ForbiddenFamily) = match &args.forbidden {
        Some(path) => {
            report.artifact("forbidden", &read(path)?);
            let members = read_forbidden(path)?;
            let p: Arc<dyn Property> = match &args.property {
                Some(name) => parse_property(name)?,
                None => Arc::new(HFree::new("H", members.clone())),
            };
            (p, ForbiddenFamily::user_supplied(members)?)
        }
        None => {
            let p = parse_property(args.property_name())?;
            let family = enumerate_minimal_forbidden(p.as_ref(), args.depth, args.n_max)?;
            report
                .config("family_depth", args.depth)
                .config("family_n_max", args.n_max);
            (p, family)
        }
    };
    report
        .config("property", p.name())
        .config("family_source", &family.source)
        .config("N", family.size_bound)
        .metric("family_members", family.len());
    Ok((p, family))
}

fn edge_list_value(g: &Graph) -> Value {
    json!(g.edge_ids())
}

fn write_json_artifact(
    path: &Option<std::path::PathBuf>,
    name: &str,
    value: &impl serde::Serialize,
    report: &mut RunReport,
) -> Result<(), CliError> {
    if let Some(path) = path {
        let bytes = serde_json::to_vec_pretty(value)?;
        std::fs::write(path, &bytes)?;
        report.artifact(name, &bytes);
    }
    Ok(())
}

pub fn gen(args: &GenArgs) -> Result<(), CliError> {
    let family: Family = args.family.parse()?;
    let inst = generate_instance(family, args.n, args.seed)?;
    let text = inst.graph.to_edge_list();
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn test(args: &TestArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("test");
    let (g, _) = load_graph(&args.graph, &mut report)?;
    let (p, family) = load_family(&args.family, &mut report)?;
    if !density_check(&g, args.density) {
        return Err(CliError::Data(format!(
            "host has {} edges on {} vertices, above density C = {}",
            g.m(),
            g.n(),
            args.density
        )));
    }
    let params = TesterParams {
        c1: args.c1,
        c2: args.c2,
    };
    let seeds: Vec<u64> = (0..args.trials as u64)
        .map(|i| args.graph.seed.wrapping_add(i))
        .collect();
    let (trial, verdicts) = run_trials(&g, p.as_ref(), args.eps, &family, args.density, params, &seeds)?;
    let budget = query_budget(trial.delta, trial.size_bound, params);
    report
        .config("eps", args.eps)
        .config("delta", trial.delta)
        .config("delta_formula", "eps / (2 N C)")
        .config("C", args.density)
        .config("c1", args.c1)
        .config("c2", args.c2)
        .config("budget_formula", "ceil(c1 N / delta) * (1 + ceil(N c2^N))")
        .config("seeds", &seeds);
    report
        .metric("trials", trial.trials)
        .metric("reject_rate", trial.reject_rate)
        .metric("mean_queries", trial.mean_queries)
        .metric("budget_rounds", budget.rounds)
        .metric("budget_steps", budget.steps)
        .metric("budget_total", budget.total)
        .metric(
            "witness_samples",
            trial.witness_samples.iter().map(edge_list_value).collect::<Vec<_>>(),
        );
    for (seed, v) in seeds.iter().zip(&verdicts) {
        let mut row = Map::new();
        row.insert("seed".into(), json!(seed));
        row.insert("decision".into(), json!(v.decision));
        row.insert("random_vertex".into(), json!(v.stats.random_vertex_count));
        row.insert("random_neighbor".into(), json!(v.stats.random_neighbor_count));
        row.insert("queries".into(), json!(v.stats.total()));
        report.rows.push(row);
    }
    Ok(report)
}

pub fn dichotomy(args: &DichotomyArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("dichotomy");
    let (g, structure) = load_graph(&args.graph, &mut report)?;
    let (p, family) = load_family(&args.family, &mut report)?;
    let out = lep_dichotomy(&g, p.as_ref(), args.eps, &family, args.density, structure)?;
    report
        .config("eps", args.eps)
        .config("C", args.density)
        .config("delta", out.delta)
        .config("delta_formula", "eps / (2 N C)")
        .config("N_final", out.size_bound);
    report
        .metric("packing_size", out.packing_size)
        .metric("extensions", out.extensions);
    match &out.outcome {
        Outcome::Deletion(w) => {
            let verified = verify_deletion(&g, w, &out.family, args.eps) && p.is_member(&g.without_edges(&w.edits));
            report
                .metric("disjunct", "deletion")
                .metric("deleted_edges", w.edits.len())
                .metric("budget", args.eps * g.m() as f64)
                .metric("d", w.d)
                .metric("verified", verified);
        }
        Outcome::Packing(pk) => {
            report
                .metric("disjunct", "packing")
                .metric("packing_parts", pk.subgraphs.len())
                .metric("required", out.delta * g.m() as f64)
                .metric("verified", verify_packing(&g, pk, p.as_ref(), out.delta));
        }
    }
    write_json_artifact(&args.artifact, "dichotomy", &out, &mut report)?;
    Ok(report)
}

pub fn cover(args: &CoverArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("cover");
    let (g, structure) = load_graph(&args.graph, &mut report)?;
    let cover = match args.kind {
        CoverKindArg::Treedepth => low_td_cover(&g, args.delta, structure)?,
        CoverKindArg::WeakDiameter => weak_diameter_cover(&g, args.delta, structure)?,
    };
    report.config("delta", args.delta).config("kind", cover.kind);
    report
        .metric("s", cover.s)
        .metric("bound", cover.bound)
        .metric("strategy", &cover.strategy)
        .metric("required_membership", cover.required_membership())
        .metric("verified", verify_cover(&g, &cover));
    if let Some(eps) = args.deletion_eps {
        let del = edge_deletion_to_bounded_td(&g, eps, structure)?;
        let rest = g.without_edges(&del.edits);
        report
            .config("deletion_eps", eps)
            .metric("deletion_edges", del.edits.len())
            .metric("deletion_budget", eps * g.m() as f64)
            .metric("deletion_d", del.d)
            .metric(
                "deletion_verified",
                del.edits.within_budget(eps, &g) && verify_decomposition(&rest, &del.decomposition, del.d),
            );
    }
    write_json_artifact(&args.artifact, "cover", &cover, &mut report)?;
    Ok(report)
}

fn build_scheme(
    args: &SchemeArgs,
    family_args: &FamilyArgs,
    structure: &Structure,
    report: &mut RunReport,
) -> Result<Box<dyn Scheme>, CliError> {
    let scheme: Box<dyn Scheme> = match args.scheme {
        SchemeArg::Tree => Box::new(SpanningTree),
        SchemeArg::A => {
            let p = parse_property(family_args.property_name())?;
            report.config("property", p.name());
            match (args.s, args.weak_diameter) {
                (Some(s), Some(d_max)) => Box::new(SchemeA::new(p, args.eps, s, d_max)?),
                (None, None) => Box::new(SchemeA::for_structure(p, args.eps, structure)?),
                _ => return Err(CliError::usage("scheme A takes both --s and --D, or neither")),
            }
        }
        SchemeArg::B => {
            let (p, family) = load_family(family_args, report)?;
            match (args.s, args.depth_bound) {
                (Some(s), Some(d)) => Box::new(SchemeB::new(p, args.eps, family, s, d)?),
                (None, None) => Box::new(SchemeB::for_structure(p, args.eps, family, structure)?),
                _ => return Err(CliError::usage("scheme B takes both --s and --d, or neither")),
            }
        }
    };
    report
        .config("scheme", scheme.name())
        .config("scheme_params", scheme.params())
        .config("horizon", scheme.horizon());
    Ok(scheme)
}

fn record_verdict(g: &Graph, proof: &Proof, scheme: &dyn Scheme, report: &mut RunReport) -> Result<(), CliError> {
    let verdict = evaluate(g, proof, scheme)?;
    let max_cert = proof.certs.values().map(|b| b.len()).max().unwrap_or(0);
    report
        .metric("accepted", verdict.accepted)
        .metric("rejecting_vertices", &verdict.rejecting_vertices)
        .metric("proof_size_bits", verdict.proof_size_bits)
        .metric("max_certificate_bits", max_cert);
    Ok(())
}

fn write_proof(path: &Option<std::path::PathBuf>, proof: &Proof, report: &mut RunReport) -> Result<(), CliError> {
    write_json_artifact(path, "proof", proof, report)
}

pub fn certify(args: &CertifyArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("certify");
    report.config("action", format!("{:?}", args.action).to_lowercase());
    let (g, structure) = load_graph(&args.graph, &mut report)?;
    if !g.is_connected() {
        return Err(CliError::data("certification needs a connected graph"));
    }
    let scheme = build_scheme(&args.scheme, &args.family, &structure, &mut report)?;
    report.config("eps", args.scheme.eps);
    match args.action {
        Action::Prove => {
            let proof = scheme.prove(&g, structure)?;
            record_verdict(&g, &proof, scheme.as_ref(), &mut report)?;
            write_proof(&args.proof, &proof, &mut report)?;
        }
        Action::Verify => {
            let path = args
                .proof
                .as_ref()
                .ok_or_else(|| CliError::usage("verify needs --proof"))?;
            let bytes = read(path)?;
            report.artifact("proof", &bytes);
            let proof: Proof = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::Data(format!("malformed proof {}: {e}", path.display())))?;
            if proof.scheme != scheme.name() {
                return Err(CliError::Data(format!(
                    "proof is for scheme `{}`, expected `{}`",
                    proof.scheme,
                    scheme.name()
                )));
            }
            if proof.params != scheme.params() {
                return Err(CliError::Data(
                    "proof parameters differ from the scheme's public parameters".into(),
                ));
            }
            record_verdict(&g, &proof, scheme.as_ref(), &mut report)?;
        }
        Action::Attack => {
            let mode = match args.mode {
                ModeArg::Exhaustive => AdversaryMode::Exhaustive,
                ModeArg::Randomized => AdversaryMode::Randomized {
                    budget: args.budget,
                    seed: args.graph.seed,
                },
            };
            report.config("mode", mode);
            if args.scheme.scheme != SchemeArg::Tree {
                let p = parse_property(args.family.property_name())?;
                let far = match is_eps_far(&g, p.as_ref(), args.scheme.eps, OracleLimits::from_env()) {
                    Ok(far) => Some(far),
                    Err(OracleError::TooLarge { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                report.metric("eps_far", far);
            }
            match adversary_search(&g, scheme.as_ref(), mode)? {
                Some(proof) => {
                    report.metric("accepting_proof_found", true);
                    record_verdict(&g, &proof, scheme.as_ref(), &mut report)?;
                    write_proof(&args.proof, &proof, &mut report)?;
                }
                None => {
                    report
                        .metric("accepting_proof_found", false)
                        .metric("result", "no accepting proof");
                }
            }
        }
    }
    Ok(report)
}

pub fn bounds(args: &BoundsArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("bounds");
    let summary = bound_summary(args.depth, args.digit_budget)?;
    report
        .config("d", args.depth)
        .config("digit_budget", args.digit_budget)
        .config("recursion", "N(1) = 3, N(d) from the unsplit graph size recursion");
    report
        .metric("value", &summary.value)
        .metric("digits", &summary.digits)
        .metric("tower_height", summary.tower_height)
        .metric("tower_height_exact", summary.tower_height_exact);
    Ok(report)
}

fn sweep_row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn sweep(args: &SweepArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(match args.kind {
        SweepKind::Queries => "sweep-queries",
        SweepKind::Reject => "sweep-reject",
        SweepKind::ProofSize => "sweep-proof-size",
    });
    let family: Family = args.family.parse()?;
    report
        .config("family", family.name())
        .config("seed", args.seed)
        .config("ns", &args.ns);
    let seeds: Vec<u64> = (0..args.trials as u64).map(|i| args.seed.wrapping_add(i)).collect();
    let params = TesterParams::default();
    match args.kind {
        SweepKind::Queries | SweepKind::Reject => {
            let (p, forbidden) = load_family(&args.family_args, &mut report)?;
            report.config("C", args.density).config("trials", args.trials);
            let points: Vec<(usize, f64)> = match args.kind {
                SweepKind::Queries => args.ns.iter().map(|&n| (n, args.eps)).collect(),
                _ => args.eps_list.iter().map(|&e| (args.ns[0], e)).collect(),
            };
            for (n, eps) in points {
                let g = generate_instance(family, n, args.seed)?.graph;
                let (trial, verdicts) = run_trials(&g, p.as_ref(), eps, &forbidden, args.density, params, &seeds)?;
                let total: u64 = verdicts.iter().map(|v| v.stats.total()).sum();
                let rejects = verdicts.iter().filter(|v| v.decision == Decision::Reject).count();
                report.rows.push(sweep_row(&[
                    ("n", json!(n)),
                    ("edges", json!(g.m())),
                    ("eps", json!(eps)),
                    ("delta", json!(trial.delta)),
                    ("queries_total", json!(total)),
                    ("mean_queries", json!(trial.mean_queries)),
                    ("rejects", json!(rejects)),
                    ("reject_rate", json!(trial.reject_rate)),
                ]));
            }
        }
        SweepKind::ProofSize => {
            for &n in &args.ns {
                let inst = generate_instance(family, n, args.seed)?;
                let g = inst.graph.connect_components();
                let scheme = build_scheme(
                    &SchemeArgs {
                        scheme: args.scheme,
                        eps: args.eps,
                        s: None,
                        weak_diameter: None,
                        depth_bound: None,
                    },
                    &args.family_args,
                    &inst.structure,
                    &mut report,
                )?;
                let proof = scheme.prove(&g, inst.structure)?;
                let verdict = evaluate(&g, &proof, scheme.as_ref())?;
                let max_cert = proof.certs.values().map(|b| b.len()).max().unwrap_or(0);
                report.rows.push(sweep_row(&[
                    ("n", json!(n)),
                    ("proof_size_bits", json!(verdict.proof_size_bits)),
                    ("max_certificate_bits", json!(max_cert)),
                    ("accepted", json!(verdict.accepted)),
                ]));
            }
        }
    }
    Ok(report)
}
