use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromaroot::chromatic::{install_shared_engine, shared_engine, ChromaticEngine, MemoStore, CACHE_ENV};
use chromaroot::classes::{
    cut_satisfies, hamiltonian_path, in_K1, in_K2, to_ham_form, CutProperty, HAM_LIMIT,
};
use chromaroot::gentri::{
    brute_minor, enumerate_gentri_levels, is_generalised_triangle, poset_minor, poset_minor_witness,
    GentriTrace, ORACLE_LIMIT,
};
use chromaroot::graph::{bridges_of, graph6_decode, graph6_encode, two_cuts, Graph};
use chromaroot::poly::{
    format_rational, isolate_roots, parse_rational, refine, IntPoly, Rational, RootInterval,
};
use chromaroot::verify::{
    certify_constants, check_constants_inequalities, default_grids, omega_scan, run_suite, ClassFilter,
    Report, SuiteOptions, MIN_SAMPLES,
};

#[derive(Parser)]
#[command(name = "chromaroot", version, about = "Chromatic roots of generalised triangles, exactly")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Write output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// List generalised triangles up to isomorphism.
    Enumerate {
        #[arg(long, default_value_t = 11)]
        max_n: usize,
    },
    /// Chromatic polynomial of a graph (graph6).
    Poly { graph: String },
    /// Isolate real roots of a graph's chromatic polynomial or of a polynomial.
    Roots {
        /// graph6 string, or a polynomial with --poly
        input: String,
        /// Treat the input as a polynomial such as "t^3-2*t^2+4*t-4".
        #[arg(long)]
        poly: bool,
        #[arg(long, default_value = "1")]
        lo: String,
        #[arg(long, default_value = "2")]
        hi: String,
        /// Refine each interval below this width.
        #[arg(long, default_value = "1/1000000000000")]
        width: String,
    },
    /// Membership in K, K1, K2 and the 2-cut properties.
    Classify { graph: String },
    /// Whether H is below G, in the double-subdivision order and as a minor.
    Minor { h: String, g: String },
    /// Switch a member of K1 ∩ K2 into a form with a Hamiltonian path.
    Hamform { graph: String },
    /// Run the full verification suite.
    Verify {
        /// Bound for lemma sweeps, omega scans and structural checks.
        #[arg(long, default_value_t = 13)]
        max_n: usize,
        /// Bound for the minor cross-checks.
        #[arg(long, default_value_t = 11)]
        minor_n: usize,
        /// Bound for the Whitney switch sweep.
        #[arg(long, default_value_t = 15)]
        whitney_n: usize,
        /// Minimum samples per lemma grid.
        #[arg(long, default_value_t = MIN_SAMPLES)]
        grid: usize,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Least non-trivial root over a class.
    Omega {
        #[arg(long, default_value = "all_K")]
        class: String,
        #[arg(long, default_value_t = 13)]
        max_n: usize,
        #[arg(long)]
        timing: bool,
    },
    /// Certify the reference constants and their inequalities.
    Constants {
        #[arg(long, default_value_t = MIN_SAMPLES)]
        grid: usize,
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    if let Some(path) = &cache {
        let store = if path.exists() {
            MemoStore::load(path).with_context(|| format!("reading cache {}", path.display()))?
        } else {
            MemoStore::new()
        };
        install_shared_engine(ChromaticEngine::with_store(store))
            .map_err(|_| anyhow::anyhow!("engine already initialised"))?;
    }
    let g = &cli.global;
    let ok = match cli.command {
        Command::Enumerate { max_n } => emit_value(g, enumerate(max_n)?, Some(enumerate_csv))?,
        Command::Poly { graph } => emit_value(g, poly(&parse_graph(&graph)?), None)?,
        Command::Roots { input, poly, lo, hi, width } => emit_value(g, roots(&input, poly, &lo, &hi, &width)?, None)?,
        Command::Classify { graph } => emit_value(g, classify(&parse_graph(&graph)?)?, None)?,
        Command::Minor { h, g: host } => emit_value(g, minor(&parse_graph(&h)?, &parse_graph(&host)?)?, None)?,
        Command::Hamform { graph } => emit_value(g, hamform(&parse_graph(&graph)?)?, None)?,
        Command::Verify { max_n, minor_n, whitney_n, grid, timing } => {
            let start = Instant::now();
            let opts = SuiteOptions { sweep_n: max_n, minor_n, whitney_n, min_samples: grid };
            let mut report = run_suite(&opts)?;
            stamp(&mut report, timing, start);
            emit_report(g, &report)?
        }
        Command::Omega { class, max_n, timing } => {
            let start = Instant::now();
            let Some(filter) = ClassFilter::parse(&class) else {
                bail!("unknown class {class:?}; expected all_K, K1, K2, K1K2 or ham_path");
            };
            let table = certify_constants();
            let mut report = Report::new("omega", json!({ "class": filter.name(), "max_n": max_n }));
            report.push(omega_scan(filter, max_n, &table)?.check);
            stamp(&mut report, timing, start);
            emit_report(g, &report)?
        }
        Command::Constants { grid, timing } => {
            let start = Instant::now();
            let table = certify_constants();
            let mut report = Report::new("constants", json!({ "min_samples": grid }));
            report.extend(table.checks());
            let (_, g2) = default_grids(&table, grid);
            report.extend(check_constants_inequalities(&table, &g2).context("grid")?);
            stamp(&mut report, timing, start);
            emit_report(g, &report)?
        }
    };
    if let Some(path) = &cache {
        shared_engine()
            .memo()
            .save(path)
            .with_context(|| format!("writing cache {}", path.display()))?;
    }
    Ok(ok)
}

fn stamp(report: &mut Report, timing: bool, start: Instant) {
    if timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
}

fn parse_graph(s: &str) -> Result<Graph> {
    graph6_decode(s.trim()).with_context(|| format!("bad graph6 string {s:?}"))
}

fn write_out(global: &Global, text: &str) -> Result<()> {
    match &global.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit_report(global: &Global, report: &Report) -> Result<bool> {
    let text = match global.out {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Svg => report.to_svg(),
    };
    write_out(global, &text)?;
    for c in report.failures() {
        eprintln!("FAILED: {}", c.name);
    }
    Ok(report.passed)
}

fn emit_value(global: &Global, value: Value, csv: Option<fn(&Value) -> String>) -> Result<bool> {
    let text = match (global.out, csv) {
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            s
        }
        (Format::Csv, Some(f)) => f(&value),
        (Format::Csv, None) => flat_csv(&value),
        (Format::Svg, _) => bail!("svg output is only available for verify, omega and constants"),
    };
    write_out(global, &text)?;
    Ok(true)
}

/// `key,value` rows for top-level fields.
fn flat_csv(value: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = value {
        for (k, v) in map {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if cell.contains([',', '"', '\n']) {
                out.push_str(&format!("{k},\"{}\"\n", cell.replace('"', "\"\"")));
            } else {
                out.push_str(&format!("{k},{cell}\n"));
            }
        }
    }
    out
}

fn enumerate(max_n: usize) -> Result<Value> {
    let levels = enumerate_gentri_levels(max_n)?;
    let counts: Vec<Value> = levels
        .iter()
        .filter(|l| !l.is_empty())
        .map(|l| json!({ "n": l[0].vertex_count(), "count": l.len() }))
        .collect();
    let graphs: Vec<Value> = levels
        .iter()
        .flatten()
        .map(|g| json!({ "n": g.vertex_count(), "graph6": graph6_encode(g) }))
        .collect();
    Ok(json!({ "max_n": max_n, "counts": counts, "graphs": graphs }))
}

fn enumerate_csv(value: &Value) -> String {
    let mut out = String::from("n,graph6\n");
    for g in value["graphs"].as_array().into_iter().flatten() {
        out.push_str(&format!("{},{}\n", g["n"], g["graph6"].as_str().unwrap_or_default()));
    }
    out
}

fn poly(g: &Graph) -> Value {
    let r = shared_engine().chromatic(g);
    json!({
        "graph6": graph6_encode(g),
        "n": g.vertex_count(),
        "p": r.poly.to_string(),
        "coeffs": r.poly,
        "q": r.q_poly().to_string(),
    })
}

fn root_json(r: &RootInterval) -> Value {
    json!({
        "lo": format_rational(r.lo()),
        "hi": format_rational(r.hi()),
        "approx": format!("{:.12}", r.midpoint_f64()),
        "simple": r.is_simple(),
    })
}

fn roots(input: &str, is_poly: bool, lo: &str, hi: &str, width: &str) -> Result<Value> {
    let lo: Rational = parse_rational(lo).context("--lo")?;
    let hi: Rational = parse_rational(hi).context("--hi")?;
    let width: Rational = parse_rational(width).context("--width")?;
    let (p, graph) = if is_poly {
        (input.parse::<IntPoly>().context("bad polynomial")?, None)
    } else {
        let g = parse_graph(input)?;
        (shared_engine().polynomial(&g), Some(g))
    };
    let mut found: Vec<Value> = isolate_roots(&p, &lo, &hi)?
        .iter()
        .map(|r| root_json(&refine(r, &width)))
        .collect();
    let hi_is_root = p.eval(&hi) == Rational::from_integer(0.into());
    if hi_is_root {
        found.push(json!({ "lo": format_rational(&hi), "hi": format_rational(&hi), "approx": format!("{:.12}", chromaroot::poly::to_f64(&hi)), "exact": true }));
    }
    let mut out = json!({
        "poly": p.to_string(),
        "interval": format!("({}, {}]", format_rational(&lo), format_rational(&hi)),
        "roots": found,
    });
    if let Some(g) = graph {
        out["graph6"] = json!(graph6_encode(&g));
        out["smallest_nontrivial"] = match shared_engine().smallest_nontrivial_root(&g)? {
            Some(r) => root_json(&refine(&r, &width)),
            None => Value::Null,
        };
    }
    Ok(out)
}

fn classify(g: &Graph) -> Result<Value> {
    let mut out = json!({ "graph6": graph6_encode(g), "n": g.vertex_count() });
    let gentri = is_generalised_triangle(g);
    out["is_gentri"] = json!(gentri);
    if !gentri {
        return Ok(out);
    }
    let (k1, k2) = (in_K1(g)?, in_K2(g)?);
    out["in_K1"] = json!(k1);
    out["in_K2"] = json!(k2);
    out["in_K1K2"] = json!(k1 && k2);
    out["hamiltonian_path"] = if g.vertex_count() <= HAM_LIMIT {
        json!(hamiltonian_path(g)?)
    } else {
        json!(format!("not searched above {HAM_LIMIT} vertices"))
    };
    let mut cuts = Vec::new();
    if g.vertex_count() > 3 {
        for cut in two_cuts(g)? {
            let bridges = bridges_of(g, cut)?;
            cuts.push(json!({
                "cut": [cut.x, cut.y],
                "bridge_sizes": bridges.iter().map(|b| b.graph.vertex_count()).collect::<Vec<_>>(),
                "P1": cut_satisfies(g, cut, CutProperty::P1)?,
                "P2": cut_satisfies(g, cut, CutProperty::P2)?,
            }));
        }
    }
    out["two_cuts"] = json!(cuts);
    out["construction"] = json!(GentriTrace::of(g)?);
    Ok(out)
}

fn minor(h: &Graph, g: &Graph) -> Result<Value> {
    let mut out = json!({ "h": graph6_encode(h), "g": graph6_encode(g) });
    out["minor"] = if g.vertex_count() <= ORACLE_LIMIT {
        json!(brute_minor(h, g)?)
    } else {
        json!(format!("not searched above {ORACLE_LIMIT} vertices"))
    };
    if is_generalised_triangle(h) && is_generalised_triangle(g) {
        out["double_subdivision_order"] = json!(poset_minor(h, g)?);
        out["chain"] = match poset_minor_witness(h, g)? {
            Some(chain) => chain
                .iter()
                .map(|s| json!({ "graph6": graph6_encode(&s.graph), "subdivide": [s.edge.0, s.edge.1] }))
                .collect(),
            None => Value::Null,
        };
    }
    Ok(out)
}

fn hamform(g: &Graph) -> Result<Value> {
    let form = to_ham_form(g)?;
    let same = shared_engine().polynomial(&form.graph) == shared_engine().polynomial(g);
    Ok(json!({
        "graph6": graph6_encode(g),
        "switched": graph6_encode(&form.graph),
        "steps": form.steps,
        "path": form.path,
        "same_polynomial": same,
    }))
}
