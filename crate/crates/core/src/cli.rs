//! Command-line front end. [`run`] parses arguments, dispatches, and maps
//! errors to exit codes: 0 success, 1 runtime or I/O failure, 2 invalid
//! input, 3 state budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytic::{sample, samples_to_csv, samples_to_svg, AnalyticFn, SamplePath};
use crate::apollonian::{
    eval_four, eval_three, eval_three_unsigned, eval_two, generate_apollonian, generate_ford,
    insertion_ratio, packing_to_network, render_svg, CirclePacking,
};
use crate::error::{Error, Result};
use crate::io::{diagram_from_json, network_from_json, network_to_json};
use crate::network::{state_budget_from_env, Method};
use crate::numerics::Rational;
use crate::recoupling::{delta, sixj, tet, theta, TetLabels};

#[derive(Parser, Debug)]
#[command(name = "skeinlab", version, about = "Exact spin-network and disk-packing evaluation")]
struct Cli {
    /// Worker threads for parallel evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strand diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Spin networks.
    #[command(subcommand)]
    Net(NetCmd),
    /// Closed-form values.
    #[command(subcommand)]
    Symbols(SymbolCmd),
    /// Apollonian packings.
    #[command(subcommand)]
    Apollonian(ApollonianCmd),
    /// Ford circles.
    #[command(subcommand)]
    Ford(FordCmd),
    /// Convert a packing to its spin network.
    Pack2net {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continued evaluations along a line.
    #[command(subcommand)]
    Analytic(AnalyticCmd),
    /// Draw a packing.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DiagramCmd {
    /// Evaluate a diagram JSON file.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramMethod::Contract)]
        method: DiagramMethod,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DiagramMethod {
    Contract,
    Loops,
    /// Both evaluators, failing if they disagree.
    Both,
}

#[derive(Subcommand, Debug)]
enum NetCmd {
    /// Evaluate a network JSON file.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = NetMethod::Auto)]
        method: NetMethod,
        /// State budget for brute force (default: $SKEINLAB_STATE_BUDGET or 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List admissibility violations.
    Validate { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NetMethod {
    Brute,
    Recoupling,
    Auto,
}

#[derive(Subcommand, Debug)]
enum SymbolCmd {
    Delta { n: u32 },
    Theta { p: u32, q: u32, r: u32 },
    /// `tet P Q R p q r`.
    Tet {
        #[arg(num_args = 6, required = true)]
        labels: Vec<u32>,
    },
    /// `sixj a b i c d j`.
    Sixj {
        #[arg(num_args = 6, required = true)]
        labels: Vec<u32>,
    },
    /// Evaluation of two, three or four mutually tangent disks.
    Disks {
        #[arg(num_args = 2..=4, required = true)]
        curvatures: Vec<u32>,
        /// Three disks only: the bare factorial ratio without sign.
        #[arg(long)]
        unsigned: bool,
    },
    /// Factor from inserting disk `d` into the triangle `a b c`.
    Insertion { a: u32, b: u32, c: u32, d: u32 },
}

#[derive(Subcommand, Debug)]
enum ApollonianCmd {
    Gen(ApollonianGen),
}

#[derive(Args, Debug)]
struct ApollonianGen {
    /// Four curvatures `b1,b2,b3,b4`.
    #[arg(long)]
    root: String,
    #[arg(long, default_value_t = 0)]
    depth: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum FordCmd {
    Gen {
        #[arg(long)]
        qmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AnalyticCmd {
    Sample(SampleArgs),
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long = "fn")]
    function: String,
    /// Coordinates as affine expressions in x, e.g. "1,x,x".
    #[arg(long)]
    path: String,
    /// `t0:t1`.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
    out: SampleFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SampleFormat {
    Csv,
    Svg,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 3,
        Error::Io(_) | Error::Internal(_) | Error::ReductionFailure(_) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_root(s: &str) -> Result<[Rational; 4]> {
    let parts = s.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<Rational>>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<Rational>| Error::Parse(format!("root needs 4 curvatures, got {}", v.len())))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Diagram(DiagramCmd::Eval { file, method }) => {
            let d = diagram_from_json(&read(&file)?)?;
            let value = match method {
                DiagramMethod::Contract => d.contract()?,
                DiagramMethod::Loops => d.loop_value(),
                DiagramMethod::Both => {
                    let (c, l) = (d.contract()?, d.loop_value());
                    if c != l {
                        return Err(Error::Internal(format!("contract {c} but loop rule {l}")));
                    }
                    c
                }
            };
            writeln!(out, "{value}")?;
        }
        Command::Net(NetCmd::Eval { file, method, budget }) => {
            let net = network_from_json(&read(&file)?)?;
            let budget = budget.unwrap_or_else(state_budget_from_env);
            let value = match method {
                NetMethod::Brute => net.evaluate_brute(budget)?,
                NetMethod::Recoupling => net.evaluate_recoupling()?,
                NetMethod::Auto => {
                    let (v, m) = net.evaluate_auto(budget)?;
                    let name = match m {
                        Method::Brute => "brute force",
                        Method::Recoupling => "recoupling",
                    };
                    writeln!(err, "method: {name}")?;
                    v
                }
            };
            writeln!(out, "{value}")?;
        }
        Command::Net(NetCmd::Validate { file }) => {
            let net = network_from_json(&read(&file)?)?;
            let bad = net.validate();
            if bad.is_empty() {
                writeln!(out, "ok")?;
            } else {
                for v in &bad {
                    writeln!(out, "{v}")?;
                }
                let [a, b, c] = bad[0].labels;
                return Err(Error::Admissibility(a, b, c, bad[0].kind.describe()));
            }
        }
        Command::Symbols(s) => {
            let value = match s {
                SymbolCmd::Delta { n } => delta(n),
                SymbolCmd::Theta { p, q, r } => theta(p, q, r)?,
                SymbolCmd::Tet { labels: l } => {
                    tet(&TetLabels::new(l[0], l[1], l[2], l[3], l[4], l[5]))?
                }
                SymbolCmd::Sixj { labels: l } => sixj(l[0], l[1], l[2], l[3], l[4], l[5])?,
                SymbolCmd::Disks { curvatures: c, unsigned } => match (c.as_slice(), unsigned) {
                    ([a, b, c], true) => eval_three_unsigned(*a, *b, *c),
                    (_, true) => {
                        return Err(Error::Domain("--unsigned applies to three disks".into()))
                    }
                    ([a, b], _) => eval_two(*a, *b),
                    ([a, b, c], _) => eval_three(*a, *b, *c),
                    ([a, b, c, d], _) => eval_four(*a, *b, *c, *d),
                    _ => unreachable!("clap limits the count"),
                },
                SymbolCmd::Insertion { a, b, c, d } => insertion_ratio(a, b, c, d)?,
            };
            writeln!(out, "{value}")?;
        }
        Command::Apollonian(ApollonianCmd::Gen(g)) => {
            let p = generate_apollonian(parse_root(&g.root)?, g.depth)?;
            emit(out, g.out.as_deref(), &(serde_json::to_string_pretty(&p)? + "\n"))?;
        }
        Command::Ford(FordCmd::Gen { qmax, out: path }) => {
            let p = generate_ford(qmax)?;
            emit(out, path.as_deref(), &(serde_json::to_string_pretty(&p)? + "\n"))?;
        }
        Command::Pack2net { file, out: path } => {
            let p: CirclePacking = serde_json::from_str(&read(&file)?)?;
            p.validate()?;
            let conv = packing_to_network(&p)?;
            if !conv.open_ends.is_empty() {
                for t in &conv.open_ends {
                    writeln!(err, "open end: tangency of disks {} and {}", t[0], t[1])?;
                }
            }
            let net = conv.closed()?;
            emit(out, path.as_deref(), &(network_to_json(&net) + "\n"))?;
        }
        Command::Analytic(AnalyticCmd::Sample(a)) => {
            let f: AnalyticFn = a.function.parse()?;
            let path = SamplePath::parse(&a.path, &a.range, a.steps)?;
            let samples = sample(f, &path)?;
            let text = match a.out {
                SampleFormat::Csv => samples_to_csv(&samples),
                SampleFormat::Svg => samples_to_svg(&samples),
            };
            emit(out, a.file.as_deref(), &text)?;
        }
        Command::Render { file, svg } => {
            let p: CirclePacking = serde_json::from_str(&read(&file)?)?;
            std::fs::write(svg, render_svg(&p)?)?;
        }
    }
    Ok(())
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 1;
        }
    };
    // Output is buffered so the closure can cross into the pool.
    let (result, o, e) = pool.install(|| {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = execute(cli.command, &mut o, &mut e);
        (r, o, e)
    });
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
