mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motivic_core::formulas::suites::{self, Formula, DEFAULT_SEED};
use motivic_core::formulas::{self as f, stratum_report, Curve, IdentityReport, SingularityDatum};
use motivic_core::oracle::{self, OracleConfig, Space, DEFAULT_N_BOUND, DEFAULT_WORK_BUDGET};
use motivic_core::power::zeta_of_class;
use motivic_core::{MClass, MSeries, MotiveError};

use output::Format;

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Motivic generating functions and finite-field point counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Clone)]
struct OracleArgs {
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
    /// Maximum number of tuple evaluations before refusing.
    #[arg(long, env = "MOTIVIC_WORK_BUDGET", default_value_t = DEFAULT_WORK_BUDGET)]
    budget: u128,
    /// Largest length n the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_N_BOUND)]
    n_bound: usize,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            threads: self.threads,
            work_budget: self.budget,
            n_bound: self.n_bound,
        }
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    CohA1,
    Euler,
    FeitFine,
    QuotCurve,
    QuotSurface,
    PunctualSmooth,
    QuotPunctual,
    Zeta,
    Compose,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Euler,
    Strata,
    PunctualRoundtrip,
    PowerAxioms,
    LengthTwoStratum,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaName {
    CohA1,
    FeitFine,
    QuotCurve,
    QuotSurface,
    PunctualSmooth,
    QuotPunctual,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a generating function.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        /// Truncation order N (coefficients t^0..t^N).
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Rank of the trivial bundle for Quot series.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Dimension of the smooth point (1 or 2).
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Surface for quot-surface: A2, P2, P1xP1 or a class in L.
        #[arg(long, default_value = "A2")]
        surface: String,
        /// Curve for quot-curve: point, A1 or P1.
        #[arg(long, default_value = "A1")]
        curve: String,
        /// Class for zeta, or the smooth locus class for compose.
        #[arg(long)]
        class: Option<String>,
        /// JSON file with singular points for compose:
        /// [{"series": <series>, "multiplicity": k}, ...].
        #[arg(long)]
        singularities: Option<PathBuf>,
        /// Also evaluate the coefficients at these values of L.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check an identity suite; exits 1 if any identity fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Truncation order (defaults per suite).
        #[arg(long)]
        order: Option<usize>,
        /// Seed for randomized suites.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random instances for randomized suites.
        #[arg(long, default_value_t = 50)]
        instances: usize,
        /// Fields for the stratum point counts.
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        q: Vec<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count points of a stack or scheme over F_q by enumeration.
    Count {
        /// coh-a1, coh-a2, coh-nilp-a1, coh-nilp-a2, quot-a1, quot-a2,
        /// quot-nilp-a1, quot-nilp-a2, coh-distinct-a1, sym-distinct-a1.
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Rank for Quot spaces.
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare a formula with enumeration; exits 1 on any mismatch.
    Check {
        #[arg(value_enum)]
        formula: FormulaName,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Failure modes mapped onto the exit-code contract.
enum Failure {
    Verification(String),
    Usage(String),
    Budget(String),
    Compute(String),
}

impl From<MotiveError> for Failure {
    fn from(e: MotiveError) -> Self {
        match e {
            MotiveError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            MotiveError::InvalidArgument(_)
            | MotiveError::Parse(_)
            | MotiveError::NotPrime(_)
            | MotiveError::NotPolynomial(_)
            | MotiveError::NotEffective(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_class(s: &str) -> CliResult<MClass> {
    s.parse()
        .map_err(|e: MotiveError| usage(format!("bad class {s:?}: {e}")))
}

fn surface_class(s: &str) -> CliResult<MClass> {
    match s {
        "A2" | "a2" => Ok(MClass::l_pow(2)),
        "P2" | "p2" => parse_class("L^2 + L + 1"),
        "P1xP1" | "p1xp1" => parse_class("(L + 1)^2"),
        other => parse_class(other),
    }
}

fn check_primes(qs: &[u64]) -> CliResult<()> {
    match qs.iter().find(|&&q| !oracle::is_prime(q)) {
        Some(q) => Err(usage(format!("q = {q} is not prime"))),
        None => Ok(()),
    }
}

fn read_singularities(path: &PathBuf) -> CliResult<Vec<SingularityDatum>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let items: Vec<serde_json::Value> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    items
        .into_iter()
        .map(|item| {
            let series: MSeries = serde_json::from_value(item["series"].clone())
                .map_err(|e| usage(format!("bad singularity series: {e}")))?;
            let multiplicity = item["multiplicity"]
                .as_u64()
                .and_then(|m| u32::try_from(m).ok())
                .ok_or_else(|| usage("singularity needs a non-negative integer multiplicity"))?;
            Ok(SingularityDatum::new(series, multiplicity)?)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn build_series(
    name: SeriesName,
    order: usize,
    r: usize,
    d: usize,
    surface: &str,
    curve: &str,
    class: Option<&str>,
    singularities: Option<&PathBuf>,
) -> CliResult<MSeries> {
    Ok(match name {
        SeriesName::CohA1 => f::coh_a1_series(order),
        SeriesName::Euler => f::euler_rhs_series(order),
        SeriesName::FeitFine => f::feit_fine_series(order),
        SeriesName::QuotCurve => f::quot_curve_series(r, &Curve::parse(curve)?.zeta(order))?,
        SeriesName::QuotSurface => f::quot_surface_series(r, &surface_class(surface)?, order)?,
        SeriesName::PunctualSmooth => f::punctual_series_smooth(d, order)?,
        SeriesName::QuotPunctual => f::quot_punctual_smooth(r, d, order)?,
        SeriesName::Zeta => {
            let class = class.ok_or_else(|| usage("zeta needs --class"))?;
            zeta_of_class(&parse_class(class)?, order)?
        }
        SeriesName::Compose => {
            let locus =
                parse_class(class.ok_or_else(|| usage("compose needs --class (smooth locus)"))?)?;
            let sing = match singularities {
                Some(path) => read_singularities(path)?,
                None => Vec::new(),
            };
            f::compose_with_singularities(&f::punctual_series_smooth(d, order)?, &locus, &sing)?
        }
    })
}

fn formula(name: FormulaName, r: usize, d: usize) -> Formula {
    match name {
        FormulaName::CohA1 => Formula::CohA1,
        FormulaName::FeitFine => Formula::FeitFine,
        FormulaName::QuotCurve => Formula::QuotCurve { r },
        FormulaName::QuotSurface => Formula::QuotSurface { r },
        FormulaName::PunctualSmooth => Formula::Punctual { d },
        FormulaName::QuotPunctual => Formula::QuotPunctual { r, d },
    }
}

fn identity_suite(
    suite: Suite,
    order: Option<usize>,
    seed: u64,
    instances: usize,
) -> CliResult<Vec<IdentityReport>> {
    Ok(match suite {
        Suite::Euler => vec![suites::euler_identity(order.unwrap_or(8))?],
        Suite::Strata => suites::verify_strata_decomposition(order.unwrap_or(6))?,
        Suite::PunctualRoundtrip => {
            let n = order.unwrap_or(6);
            vec![
                suites::punctual_power_roundtrip(1, n)?,
                suites::punctual_power_roundtrip(2, n)?,
            ]
        }
        Suite::PowerAxioms => {
            let n = order.unwrap_or(5);
            let mut all = suites::power_axioms(n, seed, instances)?;
            all.extend(suites::exp_log_roundtrips(n, seed, instances)?);
            all.extend(suites::zeta_cross_checks(n, seed, instances)?);
            all
        }
        Suite::LengthTwoStratum => unreachable!("handled separately"),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Series {
            name,
            order,
            r,
            d,
            surface,
            curve,
            class,
            singularities,
            q,
            out,
        } => {
            let s = build_series(
                name,
                order,
                r,
                d,
                &surface,
                &curve,
                class.as_deref(),
                singularities.as_ref(),
            )?;
            let label = name
                .to_possible_value()
                .expect("named")
                .get_name()
                .to_string();
            output::series(&label, &s, &q, out.format)?.emit(out.output.as_ref())
        }
        Command::Verify {
            suite,
            order,
            seed,
            instances,
            q,
            out,
        } => {
            if let Suite::LengthTwoStratum = suite {
                check_primes(&q)?;
                let report = stratum_report(&q)?;
                output::stratum(&report, out.format)?.emit(out.output.as_ref())?;
                return if report.inequality_holds {
                    Ok(())
                } else {
                    Err(Failure::Verification(
                        "non-multiplicativity inequality does not hold".into(),
                    ))
                };
            }
            let reports = identity_suite(suite, order, seed, instances)?;
            let label = suite
                .to_possible_value()
                .expect("named")
                .get_name()
                .to_string();
            let rendered = output::identities(&label, &reports, out.format)?;
            rendered.emit(out.output.as_ref())?;
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.holds)
                .map(|r| r.name.as_str())
                .collect();
            let unlocalized = reports.iter().filter(|r| !r.all_localized()).count();
            if !failed.is_empty() {
                Err(Failure::Verification(format!(
                    "failed: {}",
                    failed.join(", ")
                )))
            } else if unlocalized > 0 {
                Err(Failure::Verification(format!(
                    "{unlocalized} reports leave the localized ring"
                )))
            } else {
                Ok(())
            }
        }
        Command::Count {
            space,
            n,
            q,
            r,
            oracle: oracle_args,
            out,
        } => {
            let space = Space::parse(&space, r)?;
            check_primes(&q)?;
            let cfg = oracle_args.config();
            let counts = q
                .iter()
                .map(|&q| oracle::count(space, n, q, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            output::counts(&counts, out.format)?.emit(out.output.as_ref())
        }
        Command::Check {
            formula: name,
            n_max,
            q,
            r,
            d,
            oracle: oracle_args,
            out,
        } => {
            check_primes(&q)?;
            let report = suites::check_against_oracle(
                formula(name, r, d),
                &suites::grid(n_max, &q),
                &oracle_args.config(),
            )?;
            output::check(&report, out.format)?.emit(out.output.as_ref())?;
            if report.passed {
                Ok(())
            } else {
                let bad: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|row| !row.matches || row.integral == Some(false))
                    .map(|row| {
                        format!(
                            "(n={}, q={}): formula {} vs oracle {}",
                            row.n,
                            row.q,
                            row.formula_value,
                            row.oracle.value_string()
                        )
                    })
                    .collect();
                Err(Failure::Verification(format!(
                    "mismatch at {}",
                    bad.join("; ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, kind, msg) = match failure {
                Failure::Verification(m) => (1, "verification failed", m),
                Failure::Compute(m) => (1, "error", m),
                Failure::Usage(m) => (2, "usage error", m),
                Failure::Budget(m) => (3, "refused", m),
            };
            eprintln!("motivic: {kind}: {msg}");
            ExitCode::from(code)
        }
    }
}
