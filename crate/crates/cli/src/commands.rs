use std::fmt;
use std::io::Read as _;

use minent_core::apps::{code_rate, confusability_graph, haplotype_instance};
use minent_core::coloring::{
    coloring_entropy, exact_coloring, gen_jk, greedy_coloring, interval_mec, Coloring, MisOracle,
    DEFAULT_NODE_LIMIT,
};
use minent_core::gen::{gen_random, RandomKind, RandomParams};
use minent_core::graphent::{graph_entropy, greedy_vs_entropy};
use minent_core::io::{
    parse_genotypes, parse_graph, parse_intervals, parse_joint_table, parse_setcover,
    write_intervals,
};
use minent_core::orientation::{
    estimate_entropy, estimate_full_sweep, exact_orientation, preferred_biased_orientation,
    sample_count, EstimatorParams, Orientation,
};
use minent_core::setcover::{
    dual_certificate, exact_cover, greedy_cover, verify_dual_feasibility, CoverAssignment,
    DEFAULT_EXACT_LIMIT,
};
use minent_core::{Graph, SetSystem};
use serde_json::{json, Value};

use crate::report::{Check, RunReport};
use crate::{
    AppCmd, Cli, ColorCmd, Command, GenCmd, GraphentCmd, Kind, OrientCmd, SetcoverCmd, Solver,
};

const LOG2_E: f64 = std::f64::consts::LOG2_E;
/// Equality slack for guarantees that hold with equality in exact arithmetic.
const EPS: f64 = 1e-9;
/// Largest graphs on which reports also run an exact coloring for comparison.
const COMPARE_COLORING_MAX_N: usize = 16;
/// Largest edge count on which reports also run the exact orientation search.
const COMPARE_ORIENTATION_MAX_M: usize = 22;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Core(minent_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<minent_core::Error> for CliError {
    fn from(e: minent_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub enum Output {
    Report(RunReport),
    Text(String),
}

fn read_input(cli: &Cli) -> Result<String> {
    match cli.global.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Output> {
    let seed = cli.global.seed;
    if let Command::Gen { action } = &cli.command {
        return generate(cli, action, argv);
    }
    let text = read_input(cli)?;
    let mut report = RunReport::new(argv, Some(&text), seed);
    match &cli.command {
        Command::Setcover { action } => setcover(&parse_setcover(&text)?, action, &mut report)?,
        Command::Orient { action } => orient(&parse_graph(&text)?, action, seed, &mut report)?,
        Command::Color { action } => color(&text, action, &mut report)?,
        Command::Graphent { action } => {
            graphent(&parse_graph(&text)?, action, cli.global.tol, &mut report)?
        }
        Command::App { action } => app(&text, action, &mut report)?,
        Command::Gen { .. } => unreachable!(),
    }
    Ok(Output::Report(report))
}

fn cover_payload(a: &CoverAssignment) -> Value {
    json!({ "assignment": a.assignment(), "counts": a.counts() })
}

fn affordable_cover(s: &SetSystem) -> Result<Option<CoverAssignment>> {
    if s.assignment_space() <= DEFAULT_EXACT_LIMIT {
        Ok(Some(exact_cover(s, DEFAULT_EXACT_LIMIT)?))
    } else {
        Ok(None)
    }
}

fn setcover(s: &SetSystem, action: &SetcoverCmd, r: &mut RunReport) -> Result<()> {
    match action {
        SetcoverCmd::Greedy => {
            let (a, trace) = greedy_cover(s);
            r.entropy("greedy", a.entropy());
            r.payload = json!({ "cover": cover_payload(&a), "trace": trace });
            if let Some(opt) = affordable_cover(s)? {
                r.entropy("exact", opt.entropy());
                r.checks.push(Check::le(
                    "greedy_minus_exact_le_log2e",
                    a.entropy() - opt.entropy(),
                    LOG2_E + EPS,
                ));
            }
        }
        SetcoverCmd::Exact { limit } => {
            let a = exact_cover(s, *limit)?;
            let g = greedy_cover(s).0;
            r.entropy("exact", a.entropy());
            r.entropy("greedy", g.entropy());
            r.payload = json!({ "cover": cover_payload(&a) });
            r.checks
                .push(Check::le("exact_le_greedy", a.entropy(), g.entropy() + EPS));
        }
        SetcoverCmd::Certify { budget } => {
            let (a, trace) = greedy_cover(s);
            let cert = dual_certificate(s, &trace)?;
            let feas = verify_dual_feasibility(s, &cert, *budget);
            r.entropy("greedy", a.entropy());
            r.entropy("dual_sum", cert.sum_y());
            r.checks.push(Check::le(
                "dual_identity_residual",
                cert.identity_residual().abs(),
                EPS,
            ));
            r.checks.push(Check::le(
                "dual_violations",
                feas.violations.len() as f64,
                0.0,
            ));
            if let Some(opt) = affordable_cover(s)? {
                r.entropy("exact", opt.entropy());
                r.checks.push(Check::le(
                    "dual_sum_le_exact",
                    cert.sum_y(),
                    opt.entropy() + EPS,
                ));
            }
            r.payload = json!({
                "cover": cover_payload(&a),
                "certificate": {
                    "y": cert.y,
                    "sum_y": cert.sum_y(),
                    "g": cert.greedy_entropy,
                },
                "subsets_checked": feas.checked,
                "exhaustive": feas.exhaustive,
                "violations": feas.violations,
            });
        }
    }
    Ok(())
}

fn orientation_payload(o: &Orientation) -> Value {
    json!({ "directions": o.directions(), "indegrees": o.indegrees() })
}

fn affordable_orientation(g: &Graph) -> Result<Option<f64>> {
    if g.m() <= COMPARE_ORIENTATION_MAX_M {
        Ok(Some(
            exact_orientation(g, 1u128 << COMPARE_ORIENTATION_MAX_M)?.entropy(),
        ))
    } else {
        Ok(None)
    }
}

fn orient(g: &Graph, action: &OrientCmd, seed: u64, r: &mut RunReport) -> Result<()> {
    match action {
        OrientCmd::Biased => {
            let o = preferred_biased_orientation(g);
            let h = minent_core::orientation::orientation_entropy(g, &o)?;
            r.entropy("biased", h);
            r.payload = orientation_payload(&o);
            if let Some(opt) = affordable_orientation(g)? {
                r.entropy("exact", opt);
                r.checks
                    .push(Check::le("biased_minus_exact_le_1", h - opt, 1.0 + EPS));
            }
        }
        OrientCmd::Exact { limit } => {
            let o = exact_orientation(g, *limit)?;
            let biased = preferred_biased_orientation(g).entropy();
            r.entropy("exact", o.entropy());
            r.entropy("biased", biased);
            r.payload = orientation_payload(&o);
            r.checks
                .push(Check::le("exact_le_biased", o.entropy(), biased + EPS));
        }
        OrientCmd::Estimate {
            epsilon,
            delta,
            one_sided,
            samples,
            full_sweep,
        } => {
            let est = if *full_sweep {
                estimate_full_sweep(g)?
            } else {
                let params = EstimatorParams {
                    samples: *samples,
                    one_sided: *one_sided,
                    ..EstimatorParams::new(*epsilon, *delta, seed)
                };
                estimate_entropy(g, &params)?
            };
            r.entropy("estimate", est.h);
            r.payload = json!({
                "H": est.h,
                "samples": est.samples,
                "sample_sum": est.sample_sum,
                "formula_samples": sample_count(*epsilon, *delta, g.max_degree().max(1))?,
                "epsilon": epsilon,
                "delta": delta,
                "one_sided": one_sided,
                "full_sweep": full_sweep,
            });
            if let Some(opt) = affordable_orientation(g)? {
                r.entropy("exact", opt);
                let slack = if *full_sweep { 1.0 } else { 1.0 + epsilon };
                let upper = if *one_sided && !*full_sweep {
                    slack + epsilon
                } else {
                    slack
                };
                r.checks
                    .push(Check::le("exact_le_estimate", opt - EPS, est.h));
                r.checks.push(Check::le(
                    "estimate_minus_exact_le_bound",
                    est.h - opt,
                    upper,
                ));
            }
        }
    }
    Ok(())
}

fn coloring_payload(g: &Graph, c: &Coloring) -> Value {
    json!({ "colors": c.colors(), "classes": c.classes(), "num_colors": c.num_colors(), "n": g.n() })
}

fn color(text: &str, action: &ColorCmd, r: &mut RunReport) -> Result<()> {
    if let ColorCmd::Interval = action {
        let iv = parse_intervals(text)?;
        let (c, layers) = interval_mec(&iv)?;
        r.entropy("interval", c.entropy());
        r.entropy("layer_lower_bound", layers.lower_bound_h);
        r.checks.push(Check::le(
            "interval_minus_lower_bound_le_1",
            c.entropy() - layers.lower_bound_h,
            1.0 + EPS,
        ));
        if iv.len() <= COMPARE_COLORING_MAX_N {
            let g = minent_core::interval_graph(&iv);
            let opt = exact_coloring(&g, DEFAULT_NODE_LIMIT)?.entropy();
            r.entropy("exact", opt);
            r.checks.push(Check::le(
                "lower_bound_le_exact",
                layers.lower_bound_h,
                opt + EPS,
            ));
        }
        r.payload = json!({ "colors": c.colors(), "layers": layers.layers });
        return Ok(());
    }
    let g = parse_graph(text)?;
    let small = g.n() <= COMPARE_COLORING_MAX_N;
    match action {
        ColorCmd::Greedy | ColorCmd::GreedyApprox => {
            let approx = matches!(action, ColorCmd::GreedyApprox);
            let oracle = if approx {
                MisOracle::Approx
            } else {
                MisOracle::Exact
            };
            let c = greedy_coloring(&g, oracle)?;
            let h = coloring_entropy(&g, &c)?;
            r.entropy("greedy", h);
            r.payload = coloring_payload(&g, &c);
            // the exact search is unweighted, so only compare on uniform weights
            if small && g.weights().is_none() {
                let opt = exact_coloring(&g, DEFAULT_NODE_LIMIT)?.entropy();
                r.entropy("exact", opt);
                let mut bound = LOG2_E;
                if approx {
                    bound += ((g.max_degree() as f64 + 2.0) / 3.0).max(1.0).log2();
                }
                r.checks.push(Check::le(
                    "greedy_minus_exact_le_bound",
                    h - opt,
                    bound + EPS,
                ));
            }
        }
        ColorCmd::Exact { node_limit } => {
            let c = exact_coloring(&g, *node_limit)?;
            let greedy = greedy_coloring(&g, MisOracle::Exact)?.entropy();
            r.entropy("exact", c.entropy());
            r.entropy("greedy", greedy);
            r.payload = coloring_payload(&g, &c);
            r.checks
                .push(Check::le("exact_le_greedy", c.entropy(), greedy + EPS));
        }
        ColorCmd::Interval => unreachable!(),
    }
    Ok(())
}

fn graphent(g: &Graph, action: &GraphentCmd, tol: f64, r: &mut RunReport) -> Result<()> {
    let unweighted = Graph::new(g.n(), g.edges().iter().copied())?;
    match action {
        GraphentCmd::Compute => {
            let e = graph_entropy(&unweighted, tol)?;
            r.entropy("graph_entropy", e.h);
            r.checks.push(Check::le("duality_gap_le_tol", e.gap, tol));
            r.payload = json!({
                "gap": e.gap,
                "iterations": e.iterations,
                "witness": e.witness,
            });
        }
        GraphentCmd::Split => {
            let h = graph_entropy(&unweighted, tol)?;
            let hc = graph_entropy(&unweighted.complement(), tol)?;
            let gap = h.h + hc.h - (g.n() as f64).log2();
            r.entropy("graph_entropy", h.h);
            r.entropy("complement_entropy", hc.h);
            r.payload = json!({ "splitting_gap": gap });
            r.checks
                .push(Check::le("splitting_gap_abs_le_2tol", gap.abs(), 2.0 * tol));
        }
        GraphentCmd::GreedyBound { constant } => {
            let rep = greedy_vs_entropy(&unweighted, *constant, tol)?;
            r.entropy("greedy", rep.g_bits);
            r.entropy("graph_entropy", rep.h_bits);
            r.entropy("chromatic", rep.chromatic_bits);
            r.checks.push(Check::le(
                "graph_entropy_le_chromatic",
                rep.h_bits - tol,
                rep.chromatic_bits,
            ));
            r.checks.push(Check::le(
                "chromatic_le_greedy",
                rep.chromatic_bits,
                rep.g_bits + EPS,
            ));
            r.checks.push(Check::le(
                "greedy_le_entropy_bound",
                rep.g_bits,
                rep.bound_rhs,
            ));
            r.payload = serde_json::to_value(&rep).expect("report is plain data");
        }
    }
    Ok(())
}

fn generate(cli: &Cli, action: &GenCmd, argv: Vec<String>) -> Result<Output> {
    let seed = cli.global.seed;
    let (text, extra) = match action {
        GenCmd::Jk { k } => {
            let jk = gen_jk(*k);
            let rows: Vec<Vec<usize>> = (1..=*k).map(|i| jk.row_members(i)).collect();
            (write_intervals(&jk.intervals), json!({ "rows": rows }))
        }
        GenCmd::Random { kind, n, size } => {
            let kind = match kind {
                Kind::Graph => RandomKind::Graph,
                Kind::Connected => RandomKind::Connected,
                Kind::Regular => RandomKind::Regular,
                Kind::Bipartite => RandomKind::Bipartite,
                Kind::Interval => RandomKind::Interval,
                Kind::Setcover => RandomKind::Setcover,
            };
            let params = RandomParams {
                n: *n,
                size: *size,
                seed,
            };
            (
                gen_random(kind, params)?.to_text(),
                json!({ "params": params, "kind": kind }),
            )
        }
    };
    if !cli.global.json {
        return Ok(Output::Text(text));
    }
    let mut report = RunReport::new(argv, None, seed);
    let mut payload = extra;
    payload["instance"] = Value::String(text);
    report.payload = payload;
    Ok(Output::Report(report))
}

fn app(text: &str, action: &AppCmd, r: &mut RunReport) -> Result<()> {
    match action {
        AppCmd::Haplotype { solver, cap } => {
            let panel = parse_genotypes(text)?;
            let inst = haplotype_instance(&panel, *cap)?;
            let (greedy, _) = greedy_cover(&inst.system);
            r.entropy("greedy", greedy.entropy());
            let exact = affordable_cover(&inst.system)?;
            let chosen = match (solver, &exact) {
                (Solver::Exact, Some(e)) => e.clone(),
                (Solver::Exact, None) => exact_cover(&inst.system, DEFAULT_EXACT_LIMIT)?,
                (Solver::Greedy, _) => greedy.clone(),
            };
            if let Some(e) = &exact {
                r.entropy("exact", e.entropy());
                r.checks.push(Check::le(
                    "greedy_minus_exact_le_log2e",
                    greedy.entropy() - e.entropy(),
                    LOG2_E + EPS,
                ));
            }
            let phasing: Vec<&str> = chosen
                .assignment()
                .iter()
                .map(|&i| inst.haplotypes[i].as_str())
                .collect();
            r.payload = json!({
                "haplotypes": inst.haplotypes,
                "phasing": phasing,
                "log2_likelihood": chosen.likelihood(),
            });
        }
        AppCmd::Confusability { color } => {
            let table = parse_joint_table(text)?;
            let g = confusability_graph(&table)?;
            let c = match color {
                Solver::Greedy => greedy_coloring(&g, MisOracle::Exact)?,
                // the exact search minimizes the uniform-weight entropy
                Solver::Exact => exact_coloring(&g, DEFAULT_NODE_LIMIT)?,
            };
            let rate = code_rate(&g, &c)?;
            r.entropy("rate", rate);
            let marginal = g
                .weights()
                .expect("confusability graphs carry marginals")
                .to_vec();
            r.entropy(
                "source",
                -marginal
                    .iter()
                    .filter(|&&p| p > 0.0)
                    .map(|p| p * p.log2())
                    .sum::<f64>(),
            );
            let codewords: serde_json::Map<String, Value> = table
                .x_labels
                .iter()
                .zip(c.colors())
                .map(|(x, &k)| (x.clone(), json!(k)))
                .collect();
            let edges: Vec<(&str, &str)> = g
                .edges()
                .iter()
                .map(|&(u, v)| (table.x_labels[u].as_str(), table.x_labels[v].as_str()))
                .collect();
            r.payload = json!({ "edges": edges, "codewords": codewords, "marginal": marginal });
        }
    }
    Ok(())
}
