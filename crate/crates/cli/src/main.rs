//! `gmlocus`: fixed points, attractors and interpolation families of
//! graded algebras, from the command line.
//!
//! Exit codes: 0 success, 1 a verification failure, 2 bad input,
//! 3 a resource limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gmlocus::frontend::{
    compute, count, groebner, parse, print, render_json, render_text, ComputeOp, Output,
    ProblemFile, RenderOptions,
};
use gmlocus::verify::{verify_corpus, verify_source, Options, PropertyId};
use gmlocus::{Error, MonomialOrder};

#[derive(Parser)]
#[command(name = "gmlocus", version, about = "Exact toolkit for graded algebras with a G_m-action")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Print zero for every timing, for byte-stable output
    #[arg(long)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a derived presentation and print its reduced basis
    Compute {
        #[arg(value_enum)]
        what: What,
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the property suite on a problem file or the built-in corpus
    Verify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        /// Comma-separated subset, e.g. P1,P8
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        /// Primes for the point-count oracle
        #[arg(long, value_delimiter = ',', default_value = "5,7")]
        primes: Vec<u64>,
        /// Drop one relation from the family; the suite should then fail
        #[arg(long)]
        negative_control: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count points over F_p
    Count {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Also count every fiber of the interpolation family
        #[arg(long)]
        fibers: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduced Gröbner basis of the input ideal
    Gb {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the canonical form of a problem file
    Fmt { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Fixed,
    Attractor,
    Repeller,
    Interp,
    Closure,
    Product,
}

impl From<What> for ComputeOp {
    fn from(w: What) -> ComputeOp {
        match w {
            What::Fixed => ComputeOp::Fixed,
            What::Attractor => ComputeOp::Attractor,
            What::Repeller => ComputeOp::Repeller,
            What::Interp => ComputeOp::Interp,
            What::Closure => ComputeOp::Closure,
            What::Product => ComputeOp::Product,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: if e.is_resource_limit() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| input_error(format!("{}:{e}", path.display())))
}

fn emit(out: &Output, args: &OutputArgs) {
    let opts = RenderOptions {
        timings: !args.no_timings,
    };
    if args.json {
        print!("{}", render_json(out, opts));
    } else {
        print!("{}", render_text(out, opts));
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_millis() as u64)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Compute { what, file, out } => {
            let p = load(&file)?;
            let op = ComputeOp::from(what);
            let (detail, ms) = timed(|| compute(op, &p));
            emit(&Output::single(&file.display().to_string(), op.name(), detail?, ms), &out);
            Ok(0)
        }
        Cmd::Verify {
            file,
            corpus,
            props,
            primes,
            negative_control,
            out,
        } => {
            let props = if props.is_empty() {
                None
            } else {
                Some(
                    props
                        .iter()
                        .map(|s| s.parse::<PropertyId>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| input_error(e.to_string()))?,
                )
            };
            if let Some(bad) = primes.iter().find(|&&p| gmlocus::Field::prime(p).is_err()) {
                return Err(input_error(format!("--primes: {bad} is not a supported prime")));
            }
            let opts = Options {
                primes,
                props,
                negative_control,
                ..Options::default()
            };
            let report = if corpus {
                verify_corpus(&opts)
            } else {
                let file = file.expect("clap requires FILE without --corpus");
                let text = read(&file)?;
                verify_source(&file.display().to_string(), &text, &opts)
            };
            emit(&Output::from(&report), &out);
            if report.is_input_error() {
                if let Some(w) = report.entries[0].witness() {
                    eprintln!("error: {w}");
                }
            }
            Ok(report.exit_code() as u8)
        }
        Cmd::Count {
            file,
            prime,
            fibers,
            out,
        } => {
            let p = load(&file)?;
            let (detail, ms) = timed(|| count(&p, prime, fibers));
            emit(&Output::single(&file.display().to_string(), "count", detail?, ms), &out);
            Ok(0)
        }
        Cmd::Gb { file, order, out } => {
            let p = load(&file)?;
            let order = match order {
                Order::Grevlex => MonomialOrder::Grevlex,
                Order::Lex => MonomialOrder::Lex,
            };
            let (detail, ms) = timed(|| groebner(&p, &order));
            emit(&Output::single(&file.display().to_string(), "gb", detail?, ms), &out);
            Ok(0)
        }
        Cmd::Fmt { file } => {
            print!("{}", print(&load(&file)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
