use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wittgraph::corpus;
use wittgraph::graph::{GraphParseError, OrientedGraph, DEFAULT_MAX_ORIENTED_EDGES};
use wittgraph::oracle::DEFAULT_ORACLE_CAP;
use wittgraph::report::{
    build_report, classical_table, necklace_words, oracle_comparison, ReportDocument, NOT_CONNECTED_WARNING,
};
use wittgraph::verify::{run_verification, IdentityGrid, Perturbation, VerifyOptions, VerifyReport};
use wittgraph::{IdentityId, WittError};

#[derive(Parser)]
#[command(
    name = "wittgraph",
    version,
    about = "Cycle classes, zeta series and trace identities of finite graphs"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit CSV tables instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Reject graphs whose underlying undirected graph is disconnected.
    #[arg(long, global = true)]
    strict_connected: bool,
    /// Upper bound on 2|E| for input graphs.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORIENTED_EDGES)]
    max_oriented_edges: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Traces, Ω table, det(1 - zT), zeta series and Lie dimensions.
    Report {
        graph: PathBuf,
        #[arg(long, default_value_t = 12)]
        order: u64,
    },
    /// Run the identity suite; exits 1 if any check fails.
    Verify {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long, default_value_t = 12)]
        order: u64,
        /// Comma-separated identity names, e.g. `ID7,ID13` or `7,13`.
        #[arg(long, value_delimiter = ',')]
        identities: Option<Vec<IdentityId>>,
        /// Largest N on the identity grid.
        #[arg(long, default_value_t = 8)]
        grid_n: u64,
        /// Negative control: add 1 to Tr T^N of the first graph.
        #[arg(long, value_name = "N")]
        perturb_trace: Option<u64>,
        /// Print every check, not only failures.
        #[arg(long)]
        all_checks: bool,
    },
    /// Compare Tr T^N and Ω(N) with brute-force enumeration.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        oracle_max: u64,
    },
    /// Coloring words, one per non-periodic cycle class of length N.
    Necklace { graph: PathBuf, n: u64 },
    /// Necklace polynomial M(N; R) for N = 1..=N_MAX.
    Classical {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        r: i64,
    },
    /// Write the reference graphs as JSON files into DIR.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Verification,
    Input(String),
    Cap(String),
}

impl From<WittError> for Failure {
    fn from(e: WittError) -> Self {
        match e {
            WittError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GraphParseError> for Failure {
    fn from(e: GraphParseError) -> Self {
        match e {
            GraphParseError::Invalid(w) => w.into(),
            GraphParseError::Json(_) => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn load_graph(path: &Path, common: &Common) -> Result<OrientedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let g = OrientedGraph::from_json_str(&text)?;
    g.check_size(common.max_oriented_edges)?;
    if common.strict_connected && !g.is_connected() {
        return Err(Failure::Input(format!("{}: {NOT_CONNECTED_WARNING}", path.display())));
    }
    Ok(g)
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::Stdout> {
    csv::Writer::from_writer(io::stdout())
}

fn cell(v: &[String], i: usize) -> &str {
    v.get(i).map(String::as_str).unwrap_or("")
}

fn report_csv(doc: &ReportDocument) -> CmdResult {
    let mut w = csv_writer();
    w.write_record(["n", "trace", "omega", "det", "c_plus", "zeta", "dim_l", "dim_u"])?;
    for n in 0..=doc.order as usize {
        let k = n.wrapping_sub(1);
        let n_str = n.to_string();
        w.write_record([
            n_str.as_str(),
            cell(&doc.traces, k),
            cell(&doc.omega, k),
            cell(&doc.det_poly, n),
            cell(&doc.c_plus, k),
            cell(&doc.zeta, n),
            cell(&doc.lie.dim_l, k),
            cell(&doc.lie.dim_u, k),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn verify_output(rep: &VerifyReport, all_checks: bool, csv: bool) -> CmdResult {
    let shown: Vec<_> = rep.checks.iter().filter(|c| all_checks || !c.passed).collect();
    if csv {
        let mut w = csv_writer();
        w.write_record(["check", "subject", "n", "params", "passed", "lhs", "rhs", "detail"])?;
        for c in shown {
            w.write_record([
                c.check.clone(),
                c.subject.clone(),
                c.n.map(|n| n.to_string()).unwrap_or_default(),
                c.params.clone(),
                c.passed.to_string(),
                c.lhs.clone().unwrap_or_default(),
                c.rhs.clone().unwrap_or_default(),
                c.detail.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        return Ok(());
    }
    #[derive(Serialize)]
    struct Out<'a> {
        passed: usize,
        failed: usize,
        all_passed: bool,
        checks: Vec<&'a wittgraph::verify::CheckResult>,
    }
    print_json(&Out {
        passed: rep.passed,
        failed: rep.failed,
        all_passed: rep.all_passed,
        checks: shown,
    })
}

fn run(cli: Cli) -> CmdResult {
    let common = &cli.common;
    match cli.command {
        Command::Report { graph, order } => {
            let g = load_graph(&graph, common)?;
            let doc = build_report(&g, order)?;
            if common.csv {
                report_csv(&doc)
            } else {
                print_json(&doc)
            }
        }
        Command::Verify {
            graphs,
            order,
            identities,
            grid_n,
            perturb_trace,
            all_checks,
        } => {
            let mut named = Vec::with_capacity(graphs.len());
            for path in &graphs {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                named.push((name, load_graph(path, common)?));
            }
            let opts = VerifyOptions {
                order,
                identities: identities.unwrap_or_else(|| IdentityId::ALL.to_vec()),
                grid: IdentityGrid {
                    n_max: grid_n,
                    ..IdentityGrid::default()
                },
                perturb: perturb_trace.map(|n| Perturbation { graph: 0, n, delta: 1 }),
                ..VerifyOptions::default()
            };
            let rep = run_verification(&named, &opts)?;
            verify_output(&rep, all_checks, common.csv)?;
            if rep.all_passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Oracle { graph, oracle_max } => {
            let g = load_graph(&graph, common)?;
            let doc = oracle_comparison(&g, oracle_max, DEFAULT_ORACLE_CAP)?;
            if common.csv {
                let mut w = csv_writer();
                w.write_record(["n", "trace", "cycles", "omega", "nonperiodic_classes", "matches"])?;
                for r in &doc.rows {
                    w.write_record([
                        r.n.to_string(),
                        r.trace.clone(),
                        r.cycles.clone(),
                        r.omega.clone(),
                        r.nonperiodic_classes.clone(),
                        r.matches.to_string(),
                    ])?;
                }
                w.flush()?;
            } else {
                print_json(&doc)?;
            }
            if doc.all_match {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Necklace { graph, n } => {
            let g = load_graph(&graph, common)?;
            let doc = necklace_words(&g, n, DEFAULT_ORACLE_CAP)?;
            if common.csv {
                let mut w = csv_writer();
                w.write_record(["word"])?;
                for word in &doc.words {
                    w.write_record([word])?;
                }
                w.flush()?;
                Ok(())
            } else {
                print_json(&doc)
            }
        }
        Command::Classical { n_max, r } => {
            let doc = classical_table(n_max, r)?;
            if common.csv {
                let mut w = csv_writer();
                w.write_record(["n", "value"])?;
                for (i, v) in doc.values.iter().enumerate() {
                    w.write_record([(i + 1).to_string(), v.clone()])?;
                }
                w.flush()?;
                Ok(())
            } else {
                print_json(&doc)
            }
        }
        Command::Corpus { out } => {
            fs::create_dir_all(&out)?;
            for (name, g) in corpus::all() {
                let mut text = g.to_json_string();
                text.push('\n');
                fs::write(out.join(format!("{name}.json")), text)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
