//! The `gdcage` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failed or nothing found, 2 usage or
//! precondition error, 3 I/O, input or network error.

pub mod error;
pub mod fixtures;
pub mod hog;
pub mod input;
pub mod middle_io;
pub mod report;

use clap::{Args, Parser, Subcommand};
use error::CliError;
use gdcage_core::cage::{find_antipodal_pair, moore_bound, verify_gd_graph, CageParams};
use gdcage_core::canon::canonize;
use gdcage_core::geometry::{
    amalgamate, biaffine, default_flag, distance4_classes, levi, pg2, search_amalgam, AmalgamSpec, BiaffineLevi,
    ClassEdges, ClassKind, PlaneType, ProjectivePlane,
};
use gdcage_core::graph::encode_graph6;
use gdcage_core::middle::{check_middle, extend_middle, extract_middle};
use gdcage_core::search::{enumerate_cages_with_progress, enumerate_middles, SearchConfig};
use input::{read_graphs, read_single, read_text, render, Format};
use report::{big, elapsed_ms, from_cage_report, metric, metrics_of, Metrics, Report, Verdict};
use serde::Deserialize;
use serde_json::json;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

#[derive(Parser, Debug)]
#[command(name = "gdcage", version, about = "Regular graphs of girth 5 and diameter 4")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the lower bound k^2+k+2 on the order of a (k;5,4)-graph.
    Moore { k: usize },
    /// Check that every graph in FILE is k-regular with girth g and diameter d.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        d: usize,
        file: String,
    },
    Girth { file: String },
    Diameter { file: String },
    /// Automorphism group order and generators.
    Aut { file: String },
    /// Canonical graph6 form, one line per input graph.
    Canon { file: String },
    #[command(subcommand)]
    Middle(MiddleCmd),
    /// Enumerate Moore-bound (k;5,4)-graphs up to isomorphism.
    Search(SearchArgs),
    #[command(subcommand)]
    Geom(GeomCmd),
    #[command(subcommand)]
    Io(IoCmd),
    #[command(subcommand)]
    Hog(HogCmd),
    /// List bundled fixtures, or print one as graph6.
    Fixture { name: Option<String> },
}

#[derive(Subcommand, Debug)]
enum MiddleCmd {
    /// Middle graph between two vertices at distance 4 (default: the least such pair).
    Extract {
        file: String,
        #[arg(long, requires = "c")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        c: Option<usize>,
    },
    Check { file: String },
    Extend {
        file: String,
        #[arg(long, value_enum, default_value = "g6")]
        to: Format,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Stop after this many cages.
    #[arg(long)]
    max: Option<usize>,
    /// Print middle graphs (JSON lines) instead of cages.
    #[arg(long)]
    middle_only: bool,
    /// Emit every labelled middle rather than one per symmetry orbit.
    #[arg(long)]
    all_labelings: bool,
    /// Print cage graph6 lines instead of the JSON summary.
    #[arg(long)]
    g6: bool,
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Debug, Clone)]
struct PlaneArgs {
    q: usize,
    #[arg(long = "type", default_value_t = 1)]
    plane_type: u8,
    /// Deleted point (default: point 0).
    #[arg(long)]
    point: Option<usize>,
    /// Deleted line (default: first line through / missing the point).
    #[arg(long)]
    line: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum GeomCmd {
    /// Points and lines of PG(2,q) as JSON.
    Pg2 { q: usize },
    /// Incidence graph of PG(2,q).
    Levi {
        q: usize,
        #[arg(long, value_enum, default_value = "g6")]
        to: Format,
    },
    /// Biaffine Levi graph with its classes and distance-4 check, as JSON.
    Biaffine(PlaneArgs),
    /// Add the class-internal edges of SPEC (JSON) to a biaffine Levi graph.
    Amalgamate {
        #[command(flatten)]
        plane: PlaneArgs,
        spec: String,
        #[arg(long, value_enum, default_value = "g6")]
        to: Format,
    },
    /// Try every class-internal a-regular insertion.
    SearchAmalgam {
        #[command(flatten)]
        plane: PlaneArgs,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        budget: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum IoCmd {
    /// Convert between graph6 and edge lists.
    Convert {
        file: String,
        #[arg(long, value_enum)]
        to: Format,
    },
}

#[derive(Subcommand, Debug)]
enum HogCmd {
    /// Download a graph by House of Graphs id and print it as graph6.
    Fetch {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        id: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gdcage: {e}");
            e.exit_code()
        }
    }
}

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out<'_>, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn emit_line(out: Out<'_>, line: &str) -> Result<(), CliError> {
    emit(out, line)?;
    emit(out, "\n")
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, CliError> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| CliError::Usage(format!("bad budget {s}")))).transpose()
}

fn dispatch(cmd: Command, out: Out<'_>) -> Result<i32, CliError> {
    match cmd {
        Command::Moore { k } => {
            emit_line(out, &moore_bound(k)?.to_string())?;
            Ok(0)
        }
        Command::Verify { k, g, d, file } => {
            let params = CageParams::new(k, g, d)?;
            let mut code = 0;
            for graph in read_graphs(&file)? {
                let start = Instant::now();
                let r = verify_gd_graph(&graph, params);
                let rep = from_cage_report("verify", json!({"k": k, "g": g, "d": d, "file": file}), &graph, &r, start);
                if rep.failed() {
                    code = 1;
                }
                emit_line(out, &rep.to_line())?;
            }
            Ok(code)
        }
        Command::Girth { file } => measure("girth", &file, out),
        Command::Diameter { file } => measure("diameter", &file, out),
        Command::Aut { file } => {
            for graph in read_graphs(&file)? {
                let start = Instant::now();
                let c = canonize(&graph);
                let mut m = metrics_of(&graph);
                m.aut_order = Some(big(&c.aut.order));
                let details = json!({"generators": c.aut.generators, "orbits": c.orbits});
                emit_line(out, &measurement("aut", &file, m, start, Some(details)).to_line())?;
            }
            Ok(0)
        }
        Command::Canon { file } => {
            for graph in read_graphs(&file)? {
                emit_line(out, canonize(&graph).form.as_str())?;
            }
            Ok(0)
        }
        Command::Middle(m) => middle(m, out),
        Command::Search(args) => search(args, out),
        Command::Geom(g) => geom(g, out),
        Command::Io(IoCmd::Convert { file, to }) => {
            for graph in read_graphs(&file)? {
                emit(out, &render(&graph, to))?;
            }
            Ok(0)
        }
        Command::Hog(HogCmd::Fetch { id }) => {
            let g = hog::fetch(id)?;
            emit_line(out, &encode_graph6(&g))?;
            Ok(0)
        }
        Command::Fixture { name } => match name {
            None => {
                for f in fixtures::all() {
                    let line = json!({"name": f.name, "k": f.k, "g": f.g, "d": f.d, "order": f.order,
                        "aut_order": f.aut_order, "source": f.source});
                    emit_line(out, &line.to_string())?;
                }
                Ok(0)
            }
            Some(n) => {
                let f = fixtures::by_name(&n).ok_or_else(|| CliError::Usage(format!("no fixture named {n:?}")))?;
                emit_line(out, f.graph6.trim())?;
                Ok(0)
            }
        },
    }
}

fn measure(name: &str, file: &str, out: Out<'_>) -> Result<i32, CliError> {
    for graph in read_graphs(file)? {
        let start = Instant::now();
        emit_line(out, &measurement(name, file, metrics_of(&graph), start, None).to_line())?;
    }
    Ok(0)
}

fn measurement(command: &str, file: &str, metrics: Metrics, start: Instant, details: Option<serde_json::Value>) -> Report {
    Report {
        command: command.into(),
        params: json!({"file": file}),
        verdict: Verdict::Ok,
        metrics,
        failures: vec![],
        wall_time_ms: elapsed_ms(start),
        details,
    }
}

fn middle(cmd: MiddleCmd, out: Out<'_>) -> Result<i32, CliError> {
    match cmd {
        MiddleCmd::Extract { file, r, c } => {
            let g = read_single(&file)?;
            let (r, c) = match (r, c) {
                (Some(r), Some(c)) => (r, c),
                _ => find_antipodal_pair(&g)?,
            };
            emit_line(out, &middle_io::to_line(&extract_middle(&g, r, c)?))?;
            Ok(0)
        }
        MiddleCmd::Check { file } => {
            let start = Instant::now();
            let h = middle_io::parse(&read_text(&file)?)?;
            let r = check_middle(&h);
            let rep = from_cage_report("middle-check", json!({"k": h.k(), "file": file}), h.graph(), &r, start);
            emit_line(out, &rep.to_line())?;
            Ok(if rep.failed() { 1 } else { 0 })
        }
        MiddleCmd::Extend { file, to } => {
            let h = middle_io::parse(&read_text(&file)?)?;
            emit(out, &render(&extend_middle(&h)?, to))?;
            Ok(0)
        }
    }
}

fn search(args: SearchArgs, out: Out<'_>) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut cfg = SearchConfig::new(args.k);
    cfg.workers = args.workers;
    cfg.time_budget = budget(args.budget)?;
    cfg.max_solutions = args.max;
    cfg.emit_middle_only = args.middle_only;
    cfg.orbit_pruning = !args.all_labelings;
    let params = json!({"k": args.k, "workers": args.workers, "budget_secs": args.budget,
        "max_solutions": args.max, "orbit_pruning": cfg.orbit_pruning});
    if args.middle_only {
        let run = enumerate_middles(&cfg)?;
        for h in &run.middles {
            emit_line(out, &middle_io::to_line(h))?;
        }
        if !args.quiet {
            eprintln!("middles: {} complete: {}", run.middles.len(), run.complete);
        }
        return Ok(if run.middles.is_empty() { 1 } else { 0 });
    }
    let bucket = AtomicUsize::new(0);
    let progress = |done: usize, total: usize| {
        let b = done * 20 / total.max(1);
        if bucket.fetch_max(b, Ordering::Relaxed) < b {
            eprintln!("subtrees {done}/{total}");
        }
    };
    let res = enumerate_cages_with_progress(&cfg, if args.quiet { None } else { Some(&progress) })?;
    let code = if res.cages.is_empty() { 1 } else { 0 };
    if args.g6 {
        for c in &res.cages {
            emit_line(out, c.form.as_str())?;
        }
        return Ok(code);
    }
    let cages: Vec<_> = res
        .cages
        .iter()
        .zip(&res.middles)
        .map(|(c, ms)| json!({"graph6": c.form.as_str(), "aut_order": big(&c.aut.order), "middles": ms.len()}))
        .collect();
    let first = res.cages.first().map(|c| &c.graph);
    let rep = Report {
        command: "search".into(),
        params,
        verdict: if res.cages.is_empty() { Verdict::Fail } else { Verdict::Pass },
        metrics: Metrics {
            girth: first.map_or(serde_json::Value::Null, |g| metric(g.girth())),
            diameter: first.map_or(serde_json::Value::Null, |g| metric(g.diameter())),
            order: moore_bound(args.k)?,
            regular_degree: Some(args.k),
            aut_order: None,
        },
        failures: vec![],
        wall_time_ms: elapsed_ms(start),
        details: Some(json!({
            "complete": res.complete,
            "cage_count": res.cages.len(),
            "aut_orders": res.cages.iter().map(|c| big(&c.aut.order)).collect::<Vec<_>>(),
            "middles": res.stats.middles,
            "subtrees": res.stats.subtrees,
            "nodes": res.stats.nodes,
            "cages": cages,
        })),
    };
    emit_line(out, &rep.to_line())?;
    Ok(code)
}

fn plane_and_biaffine(a: &PlaneArgs) -> Result<(ProjectivePlane, BiaffineLevi), CliError> {
    let pi = pg2(a.q)?;
    let t = PlaneType::from_number(a.plane_type)?;
    let (dp, dl) = default_flag(&pi, t);
    let p = a.point.unwrap_or(dp);
    let l = match (a.point, a.line) {
        (_, Some(l)) => l,
        (None, None) => dl,
        (Some(p), None) => (0..pi.size())
            .find(|&l| pi.incident(p, l) == (t == PlaneType::One))
            .ok_or_else(|| CliError::Usage(format!("point {p} out of range")))?,
    };
    let b = biaffine(&pi, p, l, t)?;
    Ok((pi, b))
}

#[derive(Deserialize)]
struct SpecJson {
    classes: Vec<ClassJson>,
}

#[derive(Deserialize)]
struct ClassJson {
    kind: String,
    index: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_spec(text: &str, b: &BiaffineLevi) -> Result<AmalgamSpec, CliError> {
    let s: SpecJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("amalgam spec: {e}")))?;
    let classes = s
        .classes
        .into_iter()
        .map(|c| {
            let kind = match c.kind.as_str() {
                "point" => ClassKind::Point,
                "line" => ClassKind::Line,
                other => return Err(CliError::Input(format!("amalgam spec: unknown class kind {other:?}"))),
            };
            Ok(ClassEdges { kind, index: c.index, edges: c.edges.into_iter().map(|[u, v]| (u, v)).collect() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AmalgamSpec::from_classes(b, &classes)?)
}

fn geom(cmd: GeomCmd, out: Out<'_>) -> Result<i32, CliError> {
    match cmd {
        GeomCmd::Pg2 { q } => {
            let pi = pg2(q)?;
            let pts: Vec<_> = (0..pi.size()).map(|i| pi.point(i)).collect();
            let lines: Vec<_> = (0..pi.size()).map(|l| pi.points_on(l).to_vec()).collect();
            let j = json!({"q": q, "modulus": pi.field().modulus(), "points": pts, "lines": pts, "incidence": lines});
            emit_line(out, &j.to_string())?;
            Ok(0)
        }
        GeomCmd::Levi { q, to } => {
            emit(out, &render(&levi(&pg2(q)?), to))?;
            Ok(0)
        }
        GeomCmd::Biaffine(a) => {
            let start = Instant::now();
            let (_, b) = plane_and_biaffine(&a)?;
            let r = distance4_classes(&b);
            let mut rep = from_cage_report(
                "geom-biaffine",
                json!({"q": a.q, "type": a.plane_type, "point": b.pole, "line": b.axis}),
                &b.graph,
                &r,
                start,
            );
            rep.details = Some(json!({
                "graph6": encode_graph6(&b.graph),
                "point_classes": b.point_classes,
                "line_classes": b.line_classes,
            }));
            emit_line(out, &rep.to_line())?;
            Ok(if rep.failed() { 1 } else { 0 })
        }
        GeomCmd::Amalgamate { plane, spec, to } => {
            let (_, b) = plane_and_biaffine(&plane)?;
            let spec = parse_spec(&read_text(&spec)?, &b)?;
            emit(out, &render(&amalgamate(&b, &spec)?, to))?;
            Ok(0)
        }
        GeomCmd::SearchAmalgam { plane, a, k, g, d, budget: secs } => {
            let start = Instant::now();
            let (_, b) = plane_and_biaffine(&plane)?;
            let params = CageParams::new(k, g, d)?;
            let res = search_amalgam(&b, a, params, budget(secs)?)?;
            let found: Vec<_> = res
                .graphs
                .iter()
                .map(|(form, graph)| json!({"graph6": form.as_str(), "aut_order": big(&canonize(graph).aut.order)}))
                .collect();
            let rep = Report {
                command: "geom-search-amalgam".into(),
                params: json!({"q": plane.q, "type": plane.plane_type, "point": b.pole, "line": b.axis,
                    "a": a, "k": k, "g": g, "d": d, "budget_secs": secs}),
                verdict: if found.is_empty() { Verdict::Fail } else { Verdict::Pass },
                metrics: Metrics {
                    girth: if found.is_empty() { serde_json::Value::Null } else { json!(g) },
                    diameter: if found.is_empty() { serde_json::Value::Null } else { json!(d) },
                    order: b.graph.order(),
                    regular_degree: Some(plane.q + a),
                    aut_order: None,
                },
                failures: vec![],
                wall_time_ms: elapsed_ms(start),
                details: Some(json!({"complete": res.complete, "leaves": res.leaves,
                    "space": res.space.to_string(), "graphs": found})),
            };
            emit_line(out, &rep.to_line())?;
            Ok(if found.is_empty() { 1 } else { 0 })
        }
    }
}
