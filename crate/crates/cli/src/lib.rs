//! Command-line surface for `perfect-forge`.

pub mod records;
pub mod scan;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use perfect_forge::lab::{self, LabParams};
use perfect_forge::shapes;
use perfect_forge::{classify, factorize, Class, Family};

use records::{ClassifyRecord, OutcomeRecord, SolutionRecord};
use scan::{OutputFormat, ScanConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Io(e) => write!(f, "error: {e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<perfect_forge::Error> for CliError {
    fn from(e: perfect_forge::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "perfect-forge", version, about = "Divisor-product perfect numbers: classify, scan, solve, verify")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "PERFECT_FORGE_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every class membership and order of n.
    Classify {
        n: u64,
        #[arg(long, value_enum, default_value_t = TextOrJsonl::Jsonl)]
        format: TextOrJsonl,
    },
    /// Stream the members of the named classes in [lo, hi].
    Scan {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long = "class", required = true, value_parser = parse_class)]
        classes: Vec<Class>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
        format: OutputFormat,
    },
    /// Print the exponent shapes solving a family for a given k.
    Solve {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value_t = 60)]
        alpha_max: u64,
        #[arg(long, value_enum, default_value_t = TextOrJsonl::Text)]
        format: TextOrJsonl,
    },
    /// Print the unordered factorizations of n.
    Partitions {
        n: u64,
        /// Exact number of parts.
        #[arg(long)]
        parts: Option<usize>,
        /// Keep only partitions whose parts are all congruent to --residue.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, requires = "modulus")]
        residue: Option<u64>,
    },
    /// Run one of the theorem checks; exits 3 when a counterexample is found.
    Verify(VerifyArgs),
    /// Write a class as an OEIS-style b-file.
    Emit {
        #[arg(long, value_parser = parse_class)]
        sequence: Class,
        /// Largest value scanned.
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = EmitFormat::Bfile)]
        format: EmitFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJsonl {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    Bfile,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(lab::THEOREM_IDS))]
    pub theorem: String,
    #[arg(long)]
    pub limit: Option<u64>,
    #[arg(long)]
    pub a_limit: Option<u64>,
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(long)]
    pub alpha_max: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub mersenne: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = TextOrJsonl::Text)]
    pub format: TextOrJsonl,
}

fn parse_class(s: &str) -> Result<Class, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Class::ALL.iter().map(|c| c.name()).collect();
        format!("unknown class {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|_| format!("unknown family {s:?}; expected t0tstar, e-perfect or e-superperfect"))
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => match out.flush() {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "{}", CliError::Io(e));
                EXIT_IO
            }
        },
        Err(e) => {
            let _ = out.flush();
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let workers = cli.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    match cli.command {
        Command::Scan { lo, hi, classes, format } => {
            let config = ScanConfig { lo, hi, classes, workers, output_format: format };
            scan::write_scan(&config, out)
        }
        Command::Emit { sequence, limit, format: EmitFormat::Bfile } => {
            let config = ScanConfig {
                lo: 2,
                hi: limit.max(2),
                classes: vec![sequence],
                workers,
                output_format: OutputFormat::Bfile,
            };
            if limit < 2 {
                return Ok(());
            }
            scan::write_scan(&config, out)
        }
        command => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            execute_in(&pool, command, out, err)
        }
    }
}

fn execute_in(
    pool: &rayon::ThreadPool,
    command: Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Classify { n, format } => {
            let f = factorize(n)?;
            let report = classify(&f)?;
            let rec = ClassifyRecord::from(&report);
            match format {
                TextOrJsonl::Jsonl => {
                    serde_json::to_writer(&mut *out, &rec)?;
                    writeln!(out)?;
                }
                TextOrJsonl::Text => write_classify_text(&rec, out)?,
            }
            Ok(())
        }
        Command::Solve { family, k, r_max, alpha_max, format } => {
            let report = pool.install(|| match family {
                Family::T0TStar => shapes::solve_t0tstar(k),
                Family::MultEPerfect => shapes::solve_mult_e_perfect(k, r_max, alpha_max),
                Family::MultESuperperfect => shapes::solve_mult_e_superperfect(k, r_max, alpha_max),
            })?;
            for sol in &report.solutions {
                match format {
                    TextOrJsonl::Text => writeln!(out, "{}", sol.shape.render())?,
                    TextOrJsonl::Jsonl => {
                        serde_json::to_writer(&mut *out, &SolutionRecord::new(&report, sol))?;
                        writeln!(out)?;
                    }
                }
            }
            for note in &report.diagnostics {
                writeln!(err, "note: {note}")?;
            }
            Ok(())
        }
        Command::Partitions { n, parts, modulus, residue } => {
            let congruence = modulus.map(|q| (q, residue.unwrap_or(1)));
            for p in shapes::multiplicative_partitions(n, parts, congruence)? {
                writeln!(out, "{p}")?;
            }
            Ok(())
        }
        Command::Verify(args) => {
            let params = LabParams {
                limit: args.limit,
                a_limit: args.a_limit,
                k_max: args.k_max,
                r_max: args.r_max,
                alpha_max: args.alpha_max,
                primes: args.primes,
                mersenne: args.mersenne,
                instances: None,
            };
            let outcome = pool.install(|| lab::run_by_id(&args.theorem, &params))?;
            let rec = OutcomeRecord::from(&outcome);
            match args.format {
                TextOrJsonl::Jsonl => {
                    serde_json::to_writer(&mut *out, &rec)?;
                    writeln!(out)?;
                }
                TextOrJsonl::Text => {
                    let verdict = if rec.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{} {verdict} checked={} range: {}", rec.theorem_id, rec.checked, rec.range)?;
                    for c in &rec.counterexamples {
                        writeln!(out, "  counterexample {}: {}", c.subject, c.reason)?;
                    }
                }
            }
            if outcome.passed {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} counterexample(s) for {}",
                    outcome.counterexamples.len(),
                    outcome.theorem_id
                )))
            }
        }
        Command::Scan { .. } | Command::Emit { .. } => unreachable!("handled by execute"),
    }
}

fn write_classify_text(rec: &ClassifyRecord, out: &mut dyn Write) -> io::Result<()> {
    let show = |k: &Option<String>| k.clone().unwrap_or_else(|| "-".into());
    writeln!(out, "n = {} = {}", rec.n, rec.factorization)?;
    let rows: [(&str, String); 11] = [
        ("perfect", show(&rec.perfect_order)),
        ("superperfect", show(&rec.superperfect_order)),
        ("mult_perfect", show(&rec.mult_perfect_order)),
        ("mult_e_perfect", show(&rec.mult_e_perfect_order)),
        ("mult_e_superperfect", show(&rec.mult_e_superperfect_order)),
        ("e_perfect", rec.e_perfect.to_string()),
        ("e_harmonic1", rec.e_harmonic1.to_string()),
        ("e_harmonic2", rec.e_harmonic2.to_string()),
        ("t0tstar", show(&rec.t0tstar_order)),
        ("tstar0t", show(&rec.tstar0t_order)),
        ("tstar_t", rec.tstar_t_perfect.to_string()),
    ];
    for (name, value) in rows {
        writeln!(out, "  {name:<20} {value}")?;
    }
    Ok(())
}
