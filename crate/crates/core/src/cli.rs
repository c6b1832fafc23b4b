//! The `ngw` command line.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{table1, table1_csv, table1_text, theorem_bound_table, Aggregate, Direction};
use crate::constructions::{
    blowup_decomposition, four_block_decomposition, path_plus_remainder_decomposition,
};
use crate::error::{domain, Error, Result};
use crate::graph::{graph6_emit, graph6_parse, Graph, GraphFamily};
use crate::ng::{monte_carlo, ng_exact, replay, NgOptions, NgQuery, SymmetryMode};
use crate::report::{BoundReport, Outcome, Report};
use crate::verify::{verify_suite, VerifyLevel};
use crate::width::{certify, param_value, solve, ParamKind, ValueInterval};

#[derive(Parser, Debug)]
#[command(
    name = "ngw",
    version,
    about = "Width parameters and multi-part Nordhaus-Gaddum bounds"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of one graph, with replayed certificates.
    Solve {
        /// graph6 (optionally `g6:`), a family such as K5, P7, C6, K3,3,
        /// Petersen, or `file:PATH`.
        #[arg(long)]
        graph: String,
        /// A parameter name or `all`.
        #[arg(long, default_value = "all")]
        param: String,
    },
    /// Exact optimum over all r-decompositions of K_n.
    Ng {
        #[command(flatten)]
        q: QueryArgs,
        #[arg(long, default_value = "full")]
        symmetry: SymmetryMode,
        /// Refuse runs estimated above this many states.
        #[arg(long)]
        max_states: Option<u64>,
        /// Resume from and save progress to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Catalogue rows for a query, without solving it.
    Bounds {
        #[command(flatten)]
        q: QueryArgs,
    },
    /// An explicit decomposition with its guarantees checked.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructionKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        nondegenerate: bool,
    },
    /// Random decompositions checked against the catalogue.
    Mc {
        #[arg(long)]
        param: ParamKind,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// r / ceil(trt(r)) against sqrt(r).
    Table1 {
        #[arg(long, default_value_t = 10)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// The verification suite.
    Verify {
        #[arg(long, default_value = "smoke")]
        level: VerifyLevel,
    },
}

#[derive(clap::Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    param: ParamKind,
    #[arg(long)]
    agg: Aggregate,
    #[arg(long)]
    dir: Direction,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    /// Only decompositions whose parts all have an edge.
    #[arg(long)]
    nondegenerate: bool,
}

impl QueryArgs {
    fn query(&self) -> NgQuery {
        NgQuery {
            param: self.param,
            aggregate: self.agg,
            direction: self.dir,
            r: self.r,
            n: self.n,
            nondegenerate: self.nondegenerate,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionKind {
    Blowup,
    FourBlock,
    PathsPlusRemainder,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
    Json,
}

/// Parses a graph argument.
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    if let Some(path) = spec.strip_prefix("file:") {
        return parse_graph_file(&std::fs::read_to_string(path)?);
    }
    if let Some(g6) = spec.strip_prefix("g6:") {
        return graph6_parse(g6);
    }
    if spec.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    if let Some(g) = parse_family(spec) {
        return Graph::make(g?);
    }
    graph6_parse(spec)
}

fn parse_family(spec: &str) -> Option<Result<GraphFamily>> {
    let (head, rest) = spec.split_at(spec.char_indices().nth(1)?.0);
    let num = |s: &str| s.parse::<usize>().ok();
    let family = match (head, rest.split_once(',')) {
        ("K", Some((a, b))) => GraphFamily::CompleteBipartite(num(a)?, num(b)?),
        ("K", None) => GraphFamily::Complete(num(rest)?),
        ("E", None) => GraphFamily::Empty(num(rest)?),
        ("P", None) => GraphFamily::Path(num(rest)?),
        ("C", None) => GraphFamily::Cycle(num(rest)?),
        ("S", None) => GraphFamily::Star(num(rest)?),
        _ => return None,
    };
    if family.order() == 0 {
        return Some(domain(format!("'{spec}' has no vertices")));
    }
    Some(Ok(family))
}

/// Either a graph6 line, or an edge list: the order on the first line,
/// then one `u v` pair per line. `#` starts a comment.
pub fn parse_graph_file(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let Some(first) = lines.next() else {
        return domain("graph file is empty");
    };
    let Ok(n) = first.parse::<usize>() else {
        return graph6_parse(first);
    };
    let mut edges = Vec::new();
    for line in lines {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Domain(format!("bad edge line '{line}'")))
            })
            .collect::<Result<_>>()?;
        match nums[..] {
            [a, b] => edges.push((a, b)),
            _ => return domain(format!("bad edge line '{line}'")),
        }
    }
    Graph::from_edges(n, &edges)
}

fn run_solve(report: &mut Report, graph: &str, param: &str) -> Result<String> {
    let g = parse_graph_spec(graph)?;
    let kinds: Vec<ParamKind> = if param == "all" {
        ParamKind::ALL
            .iter()
            .copied()
            .filter(|k| g.n() <= k.order_limit())
            .collect()
    } else {
        vec![param.parse()?]
    };
    let mut values = Vec::new();
    let mut summary = format!(
        "graph {} (n = {}, m = {})\n",
        graph6_emit(&g),
        g.n(),
        g.edge_count()
    );
    for kind in kinds {
        let (value, certificate) = if kind.is_interval() || !g.has_edges() {
            (param_value(kind, &g)?, None)
        } else {
            let (v, cert) = solve(kind, &g)?;
            certify::check(kind, &g, v, &cert)?;
            (ValueInterval::exact(v), Some(cert))
        };
        summary.push_str(&format!("  {:<6} {value}\n", kind.name()));
        values.push(json!({ "param": kind, "value": value, "certificate": certificate }));
    }
    report.result = json!({
        "graph6": graph6_emit(&g),
        "n": g.n(),
        "edges": g.edge_count(),
        "values": values,
    });
    Ok(summary)
}

fn run_ng(report: &mut Report, q: NgQuery, opts: NgOptions) -> Result<String> {
    let res = ng_exact(&q, &opts)?;
    replay(&res)?;
    report.states_explored = Some(res.states_explored);
    report.add_bounds(theorem_bound_table(&q.bound_query()), res.value);
    let parts: Vec<String> = res.witness.parts().iter().map(graph6_emit).collect();
    let summary = format!(
        "{} {} {} r={} n={}{}: {}\n  witness {} (part values {})\n  {} states, {} decompositions evaluated\n",
        q.param,
        q.aggregate,
        q.direction,
        q.r,
        q.n,
        if q.nondegenerate { " non-degenerate" } else { "" },
        res.value,
        parts.join(" "),
        res.witness_values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
        res.states_explored,
        res.decompositions_evaluated,
    );
    report.result = serde_json::to_value(&res).expect("serializable");
    Ok(summary)
}

fn run_bounds(report: &mut Report, q: NgQuery) -> Result<String> {
    q.validate()?;
    let mut summary = String::new();
    for row in theorem_bound_table(&q.bound_query()) {
        summary.push_str(&format!(
            "  {:<28} {:?} {}\n",
            row.id,
            row.relation,
            row.effective
                .map_or("asymptotic".to_string(), |e| e.to_string())
        ));
        let status = row.status(ValueInterval {
            lo: 0,
            hi: u64::MAX,
        });
        report.bounds.push(BoundReport { row, status });
    }
    report.result = json!({ "rows": report.bounds.len() });
    Ok(summary)
}

fn run_construct(
    report: &mut Report,
    kind: ConstructionKind,
    n: usize,
    r: usize,
    nd: bool,
) -> Result<String> {
    let c = match kind {
        ConstructionKind::Blowup => blowup_decomposition(n, r)?,
        ConstructionKind::FourBlock => four_block_decomposition(n, r, nd)?,
        ConstructionKind::PathsPlusRemainder => path_plus_remainder_decomposition(n, r)?,
    };
    c.verify(None)?;
    let mut summary = format!("{} (n = {n}, r = {r})\n", c.provenance);
    for g in &c.guarantees {
        summary.push_str(&format!(
            "  {} {} {:?} {}: holds\n",
            g.param, g.aggregate, g.relation, g.value
        ));
    }
    report.result = serde_json::to_value(&c).expect("serializable");
    Ok(summary)
}

fn run_mc(
    report: &mut Report,
    param: ParamKind,
    r: usize,
    n: usize,
    samples: usize,
) -> Result<String> {
    let s = monte_carlo(param, r, n, samples, report.seed)?;
    let summary = format!(
        "{param} over {samples} random {r}-decompositions of K_{n}: sum {}..{}, product {}..{}, {} row checks passed\n",
        s.sum.lo.min, s.sum.hi.max, s.product.lo.min, s.product.hi.max, s.bound_checks
    );
    report.result = serde_json::to_value(&s).expect("serializable");
    Ok(summary)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            println!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run_cli(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Outcome::Usage.exit_code()
            } else {
                0
            };
        }
    };
    let pool = match cli.jobs {
        Some(0) => {
            eprintln!("--jobs must be at least 1");
            return Outcome::Usage.exit_code();
        }
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    match pool {
        Ok(pool) => pool.install(|| run(cli)),
        Err(e) => {
            eprintln!("cannot start workers: {e}");
            Outcome::Usage.exit_code()
        }
    }
}

fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    if let Command::Table1 { rmax, format } = &cli.command {
        if *format != TableFormat::Json {
            let text = table1(*rmax).map(|rows| match format {
                TableFormat::Csv => table1_csv(&rows),
                _ => table1_text(&rows),
            });
            return match text.and_then(|t| emit(&cli.out, &t)) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    Outcome::of_error(&e).exit_code()
                }
            };
        }
    }

    let (name, query): (&str, Value) = match &cli.command {
        Command::Solve { graph, param } => ("solve", json!({ "graph": graph, "param": param })),
        Command::Ng {
            q,
            symmetry,
            max_states,
            ..
        } => (
            "ng",
            json!({ "ng": q.query(), "symmetry": symmetry.to_string(), "max_states": max_states }),
        ),
        Command::Bounds { q } => ("bounds", json!(q.query())),
        Command::Construct {
            kind,
            n,
            r,
            nondegenerate,
        } => (
            "construct",
            json!({ "kind": format!("{kind:?}"), "n": n, "r": r, "nondegenerate": nondegenerate }),
        ),
        Command::Mc {
            param,
            r,
            n,
            samples,
        } => (
            "mc",
            json!({ "param": param, "r": r, "n": n, "samples": samples }),
        ),
        Command::Table1 { rmax, .. } => ("table1", json!({ "rmax": rmax })),
        Command::Verify { level } => ("verify", json!({ "level": level })),
    };

    let mut report = Report::new(name, cli.seed, query);
    let outcome = match cli.command {
        Command::Verify { level } => {
            report = verify_suite(level, cli.seed, cli.jobs);
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "  [{}] {:<22} {}\n",
                    if c.passed { "pass" } else { "FAIL" },
                    c.id,
                    c.detail
                ));
            }
            Ok(s)
        }
        Command::Solve { graph, param } => run_solve(&mut report, &graph, &param),
        Command::Ng {
            q,
            symmetry,
            max_states,
            checkpoint,
        } => run_ng(
            &mut report,
            q.query(),
            NgOptions {
                symmetry,
                jobs: cli.jobs,
                max_states,
                checkpoint,
            },
        ),
        Command::Bounds { q } => run_bounds(&mut report, q.query()),
        Command::Construct {
            kind,
            n,
            r,
            nondegenerate,
        } => run_construct(&mut report, kind, n, r, nondegenerate),
        Command::Mc {
            param,
            r,
            n,
            samples,
        } => run_mc(&mut report, param, r, n, samples),
        Command::Table1 { rmax, .. } => table1(rmax).map(|rows| {
            report.result = json!(rows
                .iter()
                .map(|row| json!({ "r": row.r, "r_over_t": row.lower, "sqrt_r": row.upper }))
                .collect::<Vec<_>>());
            table1_text(&rows)
        }),
    };
    match outcome {
        Ok(summary) => eprint!("{summary}"),
        Err(e) => {
            eprintln!("error: {e}");
            report.fail(&e);
        }
    }
    for b in report
        .bounds
        .iter()
        .filter(|b| b.status == crate::bounds::BoundStatus::Violated)
    {
        eprintln!(
            "violated: {} ({:?} {:?})",
            b.row.id, b.row.relation, b.row.effective
        );
    }
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Err(e) = emit(&cli.out, &report.to_json()) {
        eprintln!("error: {e}");
        return Outcome::of_error(&e).exit_code();
    }
    report.outcome.exit_code()
}
