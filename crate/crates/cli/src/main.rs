use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spectral_clique::bounds::{full_report_with, Tolerances, EPS_EQ};
use spectral_clique::experiments::{
    conjecture_search_with, exhaustive_verify_with, tightness_regular_with, ExperimentOptions, ExperimentResult,
    SearchMode, Stats,
};
use spectral_clique::generate;
use spectral_clique::serial::{format_real, round_sig};
use spectral_clique::spectra::{adjacency_spectrum, laplacian_spectrum};
use spectral_clique::Graph;

#[derive(Parser, Debug)]
#[command(name = "spectral-clique", version, about = "Spectral bounds on clique and independence numbers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for experiments.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    workers: u64,

    /// Relative tolerance for equality detection.
    #[arg(long, default_value_t = EPS_EQ, value_parser = positive_real, global = true)]
    eps_eq: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every bound on a graph read from an edge-list file ('-' for stdin).
    Bounds { file: PathBuf },
    /// Print adjacency and Laplacian spectra.
    Spectrum { file: PathBuf },
    /// Check all bounds on every labeled graph with at most NMAX vertices.
    Verify {
        #[arg(long)]
        nmax: usize,
    },
    /// Compare the logarithmic independence bound with random regular graphs.
    Tightness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for graphs below the Turán spectral radius with at least Turán many edges.
    Conjecture {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Sample COUNT random graphs instead of enumerating.
        #[arg(long, value_name = "COUNT")]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a generated graph in edge-list format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Turán graph T_r(n).
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Complete multipartite graph with the given part sizes.
    Multipartite {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Disjoint union of COUNT cliques of order SIZE.
    Cliques {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        size: usize,
    },
    /// Random d-regular graph.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Erdős–Rényi random graph G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((output, ok)) => {
            let mut out = io::stdout().lock();
            if out.write_all(output.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns the text for standard output and whether the run passed.
fn run(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let tol = Tolerances { eq: cli.eps_eq };
    let opts = ExperimentOptions {
        workers: cli.workers as usize,
        tol,
    };
    match &cli.command {
        Command::Bounds { file } => {
            let g = read_graph(file)?;
            let report = full_report_with(&g, None, tol);
            let violations = report.violations(tol.eq);
            for v in &violations {
                eprintln!("violation: {} {:?}: {}", v.bound, v.kind, v.detail);
            }
            let out = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            Ok((out, violations.is_empty()))
        }
        Command::Spectrum { file } => {
            let g = read_graph(file)?;
            Ok((spectrum_output(&g, cli.format)?, true))
        }
        Command::Verify { nmax } => {
            let start = Instant::now();
            let result = exhaustive_verify_with(*nmax, opts)?;
            eprintln!("verified {} graphs in {:.1?}", result.graphs_examined, start.elapsed());
            Ok(experiment_output(&result, cli.format))
        }
        Command::Tightness { n, d, trials, seed } => {
            let result = tightness_regular_with(*n, *d, *trials, *seed, opts)?;
            Ok(experiment_output(&result, cli.format))
        }
        Command::Conjecture { r, n, sample, seed } => {
            let mode = match sample {
                Some(count) => SearchMode::Sample { count: *count, seed: *seed },
                None => SearchMode::Exhaustive,
            };
            let result = conjecture_search_with(*r, *n, mode, opts)?;
            Ok(experiment_output(&result, cli.format))
        }
        Command::Generate { family } => {
            let g = match family {
                Family::Turan { n, r } => {
                    if *r == 0 || r > n {
                        bail!("need 1 <= r <= n");
                    }
                    generate::turan(*n, *r)?
                }
                Family::Multipartite { parts } => generate::complete_multipartite(parts)?,
                Family::Cliques { count, size } => generate::union_of_cliques(*count, *size)?,
                Family::Regular { n, d, seed } => generate::random_regular(*n, *d, *seed)?,
                Family::Gnp { n, p, seed } => generate::gnp(*n, *p, *seed)?,
            };
            Ok((g.to_edge_list(), true))
        }
    }
}

fn read_graph(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn spectrum_output(g: &Graph, format: Format) -> anyhow::Result<String> {
    let adj = adjacency_spectrum(g)?.values;
    let lap = laplacian_spectrum(g)?.values;
    let round = |v: &[f64]| v.iter().map(|&x| round_sig(x)).collect::<Vec<_>>();
    Ok(match format {
        Format::Json => {
            let value = json!({ "adjacency": round(&adj), "laplacian": round(&lap) });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Csv => {
            let mut out = String::from("index,adjacency,laplacian\n");
            for (i, (a, l)) in adj.iter().zip(&lap).enumerate() {
                out += &format!("{},{},{}\n", i + 1, format_real(*a), format_real(*l));
            }
            out
        }
        Format::Text => {
            let line = |v: &[f64]| v.iter().map(|x| format!("{:.9}", x)).collect::<Vec<_>>().join(" ");
            format!("adjacency: {}\nlaplacian: {}\n", line(&adj), line(&lap))
        }
    })
}

fn experiment_output(result: &ExperimentResult, format: Format) -> (String, bool) {
    let out = match format {
        Format::Json => result.to_json() + "\n",
        Format::Csv => result.to_csv(),
        Format::Text => experiment_text(result),
    };
    (out, result.pass)
}

fn experiment_text(result: &ExperimentResult) -> String {
    let verdict = if result.pass { "pass" } else { "FAIL" };
    let mut out = match &result.stats {
        Stats::Exhaustive(s) => {
            let mut out = format!(
                "{verdict}: {} graphs (n <= {}), {} violations\n",
                result.graphs_examined, result.population.n_max, result.violation_count
            );
            for b in &s.bounds {
                out += &format!(
                    "  {:<18} applicable {:>8} vacuous {:>8} n/a {:>8} equalities {:>8} min margin {:.3e}\n",
                    b.bound.label(),
                    b.applicable,
                    b.vacuous,
                    b.not_applicable,
                    b.equalities,
                    b.min_margin
                );
            }
            out
        }
        Stats::Tightness(s) => {
            let mut out = format!(
                "{verdict}: n={} d={} trials={} reference={} positive rhs {}/{}, rhs >= reference {}\n  ratio min {:.6} mean {:.6} max {:.6}; tau in [{:.6}, {:.6}]\n",
                s.n,
                s.d,
                s.trials.len(),
                if s.exact_reference { "exact" } else { "greedy" },
                s.positive_rhs,
                s.trials.len(),
                s.rhs_reaches_reference,
                s.ratio_min,
                s.ratio_mean,
                s.ratio_max,
                s.tau_min,
                s.tau_max
            );
            for t in &s.trials {
                out += &format!(
                    "  trial {:>3} tau {:.6} rhs {:.6} alpha_ref {}\n",
                    t.trial, t.tau, t.rhs, t.alpha_reference
                );
            }
            out
        }
        Stats::Conjecture(s) => {
            let mut out = format!(
                "{} counterexamples (r={}, n={}, {} graphs, {} with at least {} edges, turan mu {:.9})\n",
                s.counterexamples.len(),
                s.r,
                s.n,
                result.graphs_examined,
                s.dense_graphs,
                s.turan_edges,
                s.turan_mu
            );
            for c in &s.counterexamples {
                out += &format!("  m={} mu={:.12}\n{}", c.m, c.mu, c.graph);
            }
            out
        }
    };
    for v in &result.violations {
        out += &format!(
            "violation n={} {} {}: {}\n{}",
            v.n,
            v.bound.as_deref().unwrap_or("-"),
            v.kind,
            v.detail,
            v.graph
        );
    }
    out
}
