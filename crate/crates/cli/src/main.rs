//! `affine-cover`: kernelize, decide, describe, emit-formula, weak, gen,
//! verify and draw.
//!
//! Exit status: 0 yes/success, 1 no, 2 unknown, 64 usage, 65 bad input.

mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use affine_cover::formula::{emit_rho_formula, to_solver_text};
use affine_cover::fpt::{decide_with, CoverQuery, Decision, DecideOptions, NoReason};
use affine_cover::geom::{format_realization, parse_realization, verify_cover};
use affine_cover::graph::{format_graph, parse_graph, Graph};
use affine_cover::kernel::{kernelize, Verdict};
use affine_cover::reductions::{
    add_tails, blocking_gadget, build_one_in_three, build_plane_cover_instance, intersection_line_gadget, parse_sat_instance,
    parse_three_sat, perles_graph,
};
use affine_cover::stretch::{ExternalSolver, DEFAULT_BUDGET, DEFAULT_SEED};
use affine_cover::weak::{linear_vertex_arboricity_with_limit, vertex_thickness_with_limit, WeakCoverResult, DEFAULT_LIMIT};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "affine-cover", version, about = "Line and plane cover numbers of graphs")]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a graph to its kernel for k lines.
    Kernelize {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        input: Option<PathBuf>,
    },
    /// Decide whether the graph can be drawn on k lines.
    Decide(DecideArgs),
    /// Decide and print the description and the exact drawing.
    Describe(DecideArgs),
    /// Emit the existential real-arithmetic formula for a cover number.
    EmitFormula {
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        k: usize,
        input: Option<PathBuf>,
    },
    /// Exact weak cover number with a witness partition.
    Weak {
        #[arg(long, value_enum)]
        param: WeakParam,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        input: Option<PathBuf>,
    },
    /// Generate gadget graphs and instances.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// For `perles`: print the exact realization instead of the graph.
        #[arg(long)]
        realization: bool,
        /// For `blocking`: number of blocking gadgets.
        #[arg(long, default_value_t = 1)]
        extra: usize,
        input: Option<PathBuf>,
    },
    /// Certify a realization of a graph.
    Verify {
        #[arg(long)]
        realization: PathBuf,
        input: Option<PathBuf>,
    },
    /// Render a certified planar realization as SVG.
    Draw {
        #[arg(long)]
        realization: PathBuf,
        input: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct DecideArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Seed of the stretchability restarts.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Restarts per template.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Param {
    Rho12,
    Rho13,
    Rho23,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WeakParam {
    Pi13,
    Pi23,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    Tails,
    Perles,
    Ilgadget,
    Onein3,
    Planecover,
    Blocking,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Text to print plus the exit status.
struct Outcome {
    out: String,
    diag: String,
    status: u8,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { out, diag: String::new(), status: 0 }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(path: &Option<PathBuf>) -> Result<Graph, CliError> {
    parse_graph(&read_input(path)?).map_err(data)
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--dim must be 2 or 3, got {dim}")))
    }
}

fn check_k(k: usize) -> Result<(), CliError> {
    if k >= 1 {
        Ok(())
    } else {
        Err(CliError::Usage("--k must be at least 1".into()))
    }
}

fn decide(a: &DecideArgs, describe: bool) -> Result<Outcome, CliError> {
    check_k(a.k)?;
    check_dim(a.dim)?;
    let g = read_graph(&a.input)?;
    let opts = DecideOptions { budget: a.budget, seed: a.seed, solver: ExternalSolver::from_env(), kernelize: true };
    let q = CoverQuery { g, k: a.k, d: a.dim };
    let decision = decide_with(&q, &opts).map_err(data)?;
    Ok(match decision {
        Decision::Yes(cert) => {
            let mut out = format!("yes\n{}", cert.description.to_text());
            if describe {
                out.push_str(&format_realization(&cert.realization));
            }
            Outcome::ok(out)
        }
        Decision::No(reason) => {
            let why = match reason {
                NoReason::Kernel(r) => r.to_string(),
                NoReason::Exhausted => "every candidate template was refuted".to_string(),
            };
            Outcome { out: "no\n".into(), diag: format!("{why}\n"), status: 1 }
        }
        Decision::Unknown(pending) => Outcome {
            out: "unknown\n".into(),
            diag: format!("{} templates with unresolved stretchability; set {} to consult a solver\n", pending.len(), affine_cover::stretch::SOLVER_ENV),
            status: 2,
        },
    })
}

fn weak_text(r: &WeakCoverResult) -> String {
    let mut s = format!("value {}\n", r.value);
    for (i, part) in r.partition.iter().enumerate() {
        let vs: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
        s.push_str(&format!("part {}: {}\n", i + 1, vs.join(" ")));
    }
    s
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Kernelize { k, dim, input } => {
            check_k(*k)?;
            check_dim(*dim)?;
            let g = read_graph(input)?;
            let r = kernelize(&g, *k, *dim).map_err(data)?;
            let mut out = String::new();
            for (new, old) in r.origin.iter().enumerate() {
                out.push_str(&format!("c origin {} {}\n", new + 1, old + 1));
            }
            out.push_str(&format_graph(&r.h));
            Ok(match r.verdict {
                Verdict::Reduced => Outcome::ok(out),
                Verdict::RejectedByCounts(why) => Outcome { out, diag: format!("rejected: {why}\n"), status: 1 },
            })
        }
        Command::Decide(a) => decide(a, false),
        Command::Describe(a) => decide(a, true),
        Command::EmitFormula { param, k, input } => {
            check_k(*k)?;
            let g = read_graph(input)?;
            let (d, l) = match param {
                Param::Rho12 => (2, 1),
                Param::Rho13 => (3, 1),
                Param::Rho23 => (3, 2),
            };
            let f = emit_rho_formula(&g, *k, d, l).map_err(data)?;
            Ok(Outcome::ok(to_solver_text(&f)))
        }
        Command::Weak { param, limit, input } => {
            let g = read_graph(input)?;
            let r = match param {
                WeakParam::Pi13 => linear_vertex_arboricity_with_limit(&g, *limit),
                WeakParam::Pi23 => vertex_thickness_with_limit(&g, *limit),
            }
            .map_err(data)?;
            Ok(Outcome::ok(weak_text(&r)))
        }
        Command::Gen { kind, realization, extra, input } => {
            let out = match kind {
                GenKind::Tails => format_graph(&add_tails(&read_graph(input)?).map_err(data)?),
                GenKind::Perles => {
                    let (g, r) = perles_graph();
                    if *realization {
                        format_realization(&r)
                    } else {
                        format_graph(&g)
                    }
                }
                GenKind::Ilgadget => format_graph(&intersection_line_gadget()),
                GenKind::Onein3 => build_one_in_three(&parse_three_sat(&read_input(input)?).map_err(data)?).map_err(data)?.to_text(),
                GenKind::Planecover | GenKind::Blocking => {
                    let phi = parse_sat_instance(&read_input(input)?).map_err(data)?;
                    let g = build_plane_cover_instance(&phi);
                    match kind {
                        GenKind::Blocking => blocking_gadget(&g, *extra).to_text(),
                        _ => g.to_text(),
                    }
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Verify { realization, input } => {
            let g = read_graph(input)?;
            let r = parse_realization(&fs::read_to_string(realization)?).map_err(data)?;
            let report = verify_cover(&g, &r);
            if report.is_valid() {
                Ok(Outcome::ok(format!("valid: {} lines\n", r.lines.len())))
            } else {
                let diag: String = report.violations.iter().map(|v| format!("{v}\n")).collect();
                Ok(Outcome { out: "invalid\n".into(), diag, status: 1 })
            }
        }
        Command::Draw { realization, input } => {
            let g = read_graph(input)?;
            let r = parse_realization(&fs::read_to_string(realization)?).map_err(data)?;
            if r.dim != 2 {
                return Err(CliError::Data("only planar realizations can be drawn".into()));
            }
            let report = verify_cover(&g, &r);
            if !report.is_valid() {
                let diag: String = report.violations.iter().map(|v| format!("{v}\n")).collect();
                return Ok(Outcome { out: String::new(), diag, status: 1 });
            }
            Ok(Outcome::ok(svg::render(&g, &r)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = run(&cli.command).and_then(|o| {
        match &cli.output {
            Some(p) => fs::write(p, &o.out)?,
            None => io::stdout().write_all(o.out.as_bytes())?,
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            eprint!("{}", o.diag);
            ExitCode::from(o.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Data(_) | CliError::Io(_) => EXIT_DATA,
            })
        }
    }
}
