//! Command-line front end: `refute`, `validate` and `sweep`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::construction::certificate::{map_from_doc, map_to_doc};
use crate::construction::sweep::{parse_grid, write_csv};
use crate::construction::{
    refute, refute_exhaustive, refute_family, sweep, validate, Certificate, CertificateDoc,
    ExhaustiveVerdict, LinearMap, PairStrategy, RandomFamily,
};
use crate::error::Error;
use crate::field::{Params, Residue};
use crate::functional::{SSet, SumsetMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 10;
pub const EXIT_MAP_EXISTS: i32 = 20;

const EXIT_CODES: &str = "\
Exit codes:
   0  refutation certificate written / certificate valid / sweep written
   1  certificate failed validation (first failing check is printed)
   2  usage error
   3  malformed input file (certificate, map or grid)
   4  other failure (I/O, parameter caps)
  10  search inconclusive within budget
  20  exhaustive search found a valid linear map";

#[derive(Debug, Parser)]
#[command(name = "cobound", version, about = "Refute linear approximations of the evaluation map over F_p^n", after_help = EXIT_CODES)]
struct Cli {
    /// Worker threads for parallel searches. Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a certificate refuting a candidate map (or a random family).
    Refute(RefuteArgs),
    /// Re-check a certificate from its own contents.
    Validate {
        certificate: PathBuf,
    },
    /// Run a grid of family experiments and write CSV.
    Sweep {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Read the map from --map-file.
    File,
    /// Random dense basis images from --seed.
    Random,
    /// Exhaustive search over all maps.
    All,
    /// A random family V_x with t random pairs per point, no map.
    Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Exhaustive,
    Randomized,
}

#[derive(Debug, clap::Args)]
struct RefuteArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value = "exact")]
    mode: SumsetMode,
    #[arg(long, value_enum, default_value = "exhaustive")]
    strategy: Strategy,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// Defaults to `file` when --map-file is given.
    #[arg(long, value_enum)]
    source: Option<Source>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: format!("{}: {e}", path.display()),
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(usage(e.to_string())),
        },
        None => dispatch(cli.command),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Refute(args) => cmd_refute(&args),
        Command::Validate { certificate } => cmd_validate(&certificate),
        Command::Sweep { grid, out } => cmd_sweep(&grid, out.as_deref()),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

/// Map file: one `[[point_index, coeff], …]` list per basis image.
pub fn read_map_file(path: &Path, params: &Params) -> crate::Result<LinearMap> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let images: Vec<Vec<(u32, Residue)>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    map_from_doc(params, &images).map_err(|e| Error::Parse(e.to_string()))
}

pub fn map_file_json(map: &LinearMap) -> String {
    serde_json::to_string(&map_to_doc(map)).expect("map serializes")
}

fn cmd_refute(args: &RefuteArgs) -> Result<i32, Failure> {
    let params = Params::new(args.p, args.n, args.t)?;
    let source = match (args.source, &args.map_file) {
        (Some(s), _) => s,
        (None, Some(_)) => Source::File,
        (None, None) => return Err(usage("choose --source or give --map-file")),
    };
    let strategy = match args.strategy {
        Strategy::Exhaustive => PairStrategy::Exhaustive,
        Strategy::Randomized => PairStrategy::Randomized {
            seed: args
                .seed
                .ok_or_else(|| usage("--strategy randomized requires --seed"))?,
            budget: args.budget,
        },
    };
    let seed = || args.seed.ok_or_else(|| usage("this source requires --seed"));

    let (cert, code): (Certificate, Option<i32>) = match source {
        Source::File => {
            let path = args
                .map_file
                .as_ref()
                .ok_or_else(|| usage("--source file requires --map-file"))?;
            let map = read_map_file(path, &params)?;
            let s = SSet::build(&params)?;
            (refute(&map, params.t, &s, args.mode, strategy)?, None)
        }
        Source::Random => {
            let map = LinearMap::random(&params, seed()?);
            let s = SSet::build(&params)?;
            (refute(&map, params.t, &s, args.mode, strategy)?, None)
        }
        Source::All => {
            let s = SSet::build(&params)?;
            match refute_exhaustive(&params, args.mode)? {
                ExhaustiveVerdict::ExistsValidMap(map) => {
                    eprintln!("a valid linear map exists: {}", map_file_json(&map));
                    (
                        refute(&map, params.t, &s, args.mode, strategy)?,
                        Some(EXIT_MAP_EXISTS),
                    )
                }
                ExhaustiveVerdict::NoValidMap => {
                    eprintln!("no linear map keeps every defect in the sumset");
                    let zero = LinearMap::zero(&params);
                    (refute(&zero, params.t, &s, args.mode, strategy)?, Some(EXIT_OK))
                }
            }
        }
        Source::Family => {
            let family = RandomFamily::new(&params, seed()?);
            (refute_family(&family, args.mode, strategy)?, None)
        }
    };
    write_output(args.out.as_deref(), &cert.to_json())?;
    Ok(code.unwrap_or(if cert.is_refutation() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }))
}

fn cmd_validate(path: &Path) -> Result<i32, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let doc = CertificateDoc::from_json(&text)?;
    match validate(&doc) {
        Ok(()) => {
            println!("valid");
            Ok(EXIT_OK)
        }
        Err(failure) => {
            println!("invalid: {failure}");
            Ok(EXIT_INVALID)
        }
    }
}

fn cmd_sweep(grid: &Path, out: Option<&Path>) -> Result<i32, Failure> {
    let text = fs::read_to_string(grid).map_err(|e| io_failure(grid, e))?;
    let cells = parse_grid(&text)?;
    let rows = sweep(&cells);
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    write_output(out, &String::from_utf8(buf).expect("csv is utf-8"))?;
    Ok(EXIT_OK)
}
