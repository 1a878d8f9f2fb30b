//! Command-line front end. `run` parses arguments, writes to the given sinks and
//! returns the process exit code: 0 success, 1 usage error, 2 verification
//! failure, 3 oracle budget exhausted.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cayley::CayleyGraph;
use crate::permutation::{Permutation, MAX_DIM, MIN_DIM};
use crate::tpath::{
    brute_force_pi3, build_witness, pi3_formula, random_triple, structural_audit, upper_bound,
    verify_web, verify_witness, BoundMode, TPathWitness,
};
use crate::webbuilder::TerminalTriple;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bubblestar", version, about = "Internally disjoint T-paths in bubble-sort star graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export BS_n as Graphviz dot or an edge list
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a T-path witness, written as JSON
    Witness {
        #[command(flatten)]
        pick: Pick,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a witness file from scratch
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: PathBuf,
    },
    /// Check the copy structure facts the construction relies on
    Audit {
        #[arg(long)]
        n: usize,
    },
    /// Formula and upper bound for a range of dimensions, e.g. 3..8
    Pi3 {
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact maximum by exhaustive search (n <= 4)
    Oracle {
        #[command(flatten)]
        pick: Pick,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Time witness construction on random triples
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct Pick {
    #[arg(long)]
    n: usize,
    /// Three vertices, e.g. --terminals 1234,4321,2143
    #[arg(long, value_delimiter = ',')]
    terminals: Option<Vec<String>>,
    /// Seed for a uniformly random triple when no terminals are given
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Edges,
}

/// Failure carrying its exit code.
struct Exit(i32, String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(EXIT_USAGE, msg.into())
}

fn graph(n: usize) -> Result<CayleyGraph, Exit> {
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(usage(format!("n must be between {} and {}", MIN_DIM, MAX_DIM)));
    }
    CayleyGraph::build(n).map_err(|e| usage(e.to_string()))
}

fn terminals(g: &CayleyGraph, pick: &Pick) -> Result<[Permutation; 3], Exit> {
    match &pick.terminals {
        Some(texts) => {
            if texts.len() != 3 {
                return Err(usage(format!("expected three terminals, got {}", texts.len())));
            }
            let mut vs = Vec::new();
            for s in texts {
                let v: Permutation = s.parse().map_err(|e| usage(format!("{}: {}", s, e)))?;
                g.check(&v).map_err(|e| usage(e.to_string()))?;
                vs.push(v);
            }
            let vs = [vs[0], vs[1], vs[2]];
            TerminalTriple::new(vs[0], vs[1], vs[2]).map_err(|e| usage(e.to_string()))?;
            Ok(vs)
        }
        None => Ok(random_triple(g, &mut ChaCha8Rng::seed_from_u64(pick.seed))),
    }
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Exit> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {}", p.display(), e))),
        None => out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

/// Parses `"3..8"`, `"3..=8"` or `"5"`.
fn parse_range(text: &str) -> Result<Vec<usize>, Exit> {
    let bad = || usage(format!("bad range {:?}", text));
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (a, b)
    } else if let Some((a, b)) = text.split_once("..") {
        (a, b)
    } else {
        (text, text)
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || lo < MIN_DIM || hi > MAX_DIM {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Exit> {
    let w = |out: &mut dyn Write, text: String| out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()));
    match command {
        Command::Generate { n, format, out: path } => {
            let g = graph(n)?;
            let text = match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Edges => g.to_edge_list(),
            };
            emit(out, &path, &text)
        }
        Command::Witness { pick, out: path } => {
            let g = graph(pick.n)?;
            let vs = terminals(&g, &pick)?;
            let witness = build_witness(&g, vs).map_err(|e| Exit(EXIT_VERIFY, e.to_string()))?;
            emit(out, &path, &(witness.to_json() + "\n"))
        }
        Command::Verify { n, file } => {
            let g = graph(n)?;
            let text = fs::read_to_string(&file).map_err(|e| usage(format!("{}: {}", file.display(), e)))?;
            let witness: TPathWitness =
                serde_json::from_str(&text).map_err(|e| Exit(EXIT_VERIFY, format!("malformed witness: {}", e)))?;
            check_file(&g, &witness).map_err(|msg| Exit(EXIT_VERIFY, msg))?;
            w(out, format!("ok: {} internally disjoint T-paths in BS_{}\n", witness.t_paths.len(), n))
        }
        Command::Audit { n } => {
            let g = graph(n)?;
            let report = structural_audit(&g);
            w(out, report.to_string())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Exit(EXIT_VERIFY, "audit failed".into()))
            }
        }
        Command::Pi3 { n, seed } => {
            let dims = parse_range(&n)?;
            let mut text = String::from("n\tdegree\tformula\tbound\tcmax\tmode\n");
            for n in dims {
                let g = graph(n)?;
                let mode = if n <= 4 {
                    BoundMode::Exhaustive
                } else {
                    BoundMode::Sampled { seed, samples: 500 }
                };
                let b = upper_bound(&g, mode).map_err(|e| usage(e.to_string()))?;
                text += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    n,
                    b.r,
                    pi3_formula(n),
                    b.bound,
                    b.cmax,
                    if b.exhaustive { "exhaustive" } else { "sampled" }
                );
            }
            w(out, text)
        }
        Command::Oracle { pick, budget } => {
            if pick.n > 4 {
                return Err(usage("the oracle supports n <= 4"));
            }
            let g = graph(pick.n)?;
            let vs = terminals(&g, &pick)?;
            let t = TerminalTriple::assign(&g, vs).map_err(|e| usage(e.to_string()))?;
            let r = brute_force_pi3(&g, &t, budget).map_err(|e| usage(e.to_string()))?;
            let names = vs.map(|v| v.to_string()).join(",");
            if r.exact {
                w(out, format!("terminals {}\nmax T-paths {}\nformula {}\n", names, r.value, pi3_formula(pick.n)))
            } else {
                w(out, format!("terminals {}\nmax T-paths at least {}\n", names, r.value))?;
                Err(Exit(EXIT_BUDGET, format!("budget of {} search nodes exhausted", budget)))
            }
        }
        Command::Bench { n, samples, seed } => {
            let g = graph(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut times = Vec::new();
            for _ in 0..samples {
                let vs = random_triple(&g, &mut rng);
                let start = Instant::now();
                build_witness(&g, vs).map_err(|e| Exit(EXIT_VERIFY, e.to_string()))?;
                times.push(start.elapsed().as_secs_f64() * 1e3);
            }
            if times.is_empty() {
                return w(out, "no samples\n".into());
            }
            times.sort_by(|a, b| a.total_cmp(b));
            let total: f64 = times.iter().sum();
            w(
                out,
                format!(
                    "BS_{}: {} witnesses, {} T-paths each\nmin {:.2} ms  median {:.2} ms  max {:.2} ms  mean {:.2} ms\n",
                    n,
                    samples,
                    pi3_formula(n),
                    times[0],
                    times[times.len() / 2],
                    times[times.len() - 1],
                    total / times.len() as f64
                ),
            )
        }
    }
}

/// Witness checks plus, for `n >= 4`, the web it claims to come from.
fn check_file(g: &CayleyGraph, w: &TPathWitness) -> Result<(), String> {
    verify_witness(g, w).map_err(|v| v.to_string())?;
    if g.dim() == 3 {
        if !w.web.is_empty() {
            return Err("web: BS_3 witnesses carry no web".into());
        }
    } else {
        verify_web(g, &w.triple(), &w.web).map_err(|v| format!("web: {}", v))?;
    }
    Ok(())
}
