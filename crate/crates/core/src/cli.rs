//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bound violation, 2 malformed input,
//! 3 precondition failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::Zero;

use crate::arith::{
    choose_basepoint, format_rational, parse_rational, Polynomial, RationalFunction,
};
use crate::bounds::{corollary_bound, degenerate_count, theorem_bound};
use crate::dependence::{
    family_degree_bound, find_relation, rank_exact, rank_series, s_membership,
};
use crate::error::{Error, Result};
use crate::format::{FamilyFile, InstanceFile, MembershipInput, ReportFile};
use crate::power::{pow_u, unit_decompose, ExponentVector};
use crate::search::verify_bound_with;
use crate::series::TruncatedSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_VIOLATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "unitcoset",
    version,
    about = "Coset bounds for unit equations over Q(z)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form bounds for n variables and group rank r.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Lead constant and rational power of the unit part of num/den.
    Power {
        /// Numerator coefficients, ascending, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        den: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        order: usize,
    },
    /// Exact and Wronskian rank of a function family.
    Rank {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Membership of an exponent vector in the relation set.
    Member {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Enumerate solutions over an exponent box and check the coset bound.
    Search {
        #[arg(long)]
        file: PathBuf,
        #[arg(long = "box")]
        box_size: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::Domain(_) => EXIT_MALFORMED,
        Error::Independence(_) | Error::Pole(_) | Error::PoleAtOrigin | Error::NotAUnit => {
            EXIT_PRECONDITION
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn parse_list(s: &str) -> Result<Vec<crate::arith::Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// Runs the front end with `out` and `err` as the output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the front end on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("write failed: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Bounds { n, r } => {
            writeln!(
                out,
                "theorem={} corollary={} degenerate_subsets={}",
                theorem_bound(n, r)?,
                corollary_bound(n, r)?,
                degenerate_count(n)?
            )
            .map_err(io)?;
        }
        Command::Power { num, den, u, order } => {
            if order == 0 {
                return Err(Error::Invalid("order must be positive".into()));
            }
            let f = RationalFunction::new(
                Polynomial::new(parse_list(&num)?),
                Polynomial::new(parse_list(&den)?),
            )?;
            let u = parse_rational(&u)?;
            let (lead, unit) =
                unit_decompose(&TruncatedSeries::from_rational_function(&f, order)?)?;
            writeln!(out, "lead={}", format_rational(&lead)).map_err(io)?;
            writeln!(out, "unit^u={}", pow_u(&unit, &u)).map_err(io)?;
        }
        Command::Rank { file, order } => {
            let fam = FamilyFile::parse(&read(&file)?)?;
            let fs = fam.functions;
            if fs.is_empty() {
                return Err(Error::Invalid("empty family".into()));
            }
            let nonzero: Vec<&RationalFunction> = fs.iter().filter(|f| !f.is_zero()).collect();
            let c = if nonzero.is_empty() {
                crate::arith::Rational::zero()
            } else {
                choose_basepoint(nonzero)
            };
            let bound = family_degree_bound(&fs);
            let m = order.unwrap_or(bound + fs.len() + 1);
            let series = fs
                .iter()
                .map(|f| TruncatedSeries::from_rational_function(&f.shift(&c), m))
                .collect::<Result<Vec<_>>>()?;
            let sr = rank_series(&series, Some(bound));
            writeln!(out, "rank_exact={}", rank_exact(&fs)).map_err(io)?;
            writeln!(
                out,
                "rank_series={} certified={} order={} basepoint={}",
                sr.rank,
                sr.certified,
                m,
                format_rational(&c)
            )
            .map_err(io)?;
        }
        Command::Member { file, u, order } => {
            let sys = MembershipInput::parse(&read(&file)?)?.to_system(order)?;
            let u = ExponentVector::new(parse_list(&u)?);
            let verdict = s_membership(&sys, &u)?;
            writeln!(out, "member={verdict}").map_err(io)?;
            if verdict {
                match find_relation(&sys.family(&u)?) {
                    Some(rel) => writeln!(out, "relation=({})", rel.to_strings().join(", ")),
                    None => writeln!(out, "relation=none"),
                }
                .map_err(io)?;
            }
        }
        Command::Search {
            file,
            box_size,
            order,
            out: report_path,
            threads,
        } => {
            let f = InstanceFile::parse(&read(&file)?)?;
            let b = box_size.unwrap_or_else(|| f.box_or_default());
            let inst = f.to_instance(order)?;
            let report = verify_bound_with(&inst, b, threads)?;
            write!(out, "{report}").map_err(io)?;
            if let Some(path) = report_path {
                std::fs::write(&path, ReportFile::from(&report).to_json())
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            if !report.within_bound {
                writeln!(
                    err,
                    "error: bound violated: {} non-degenerate cosets > {}",
                    report.nondegenerate_count(),
                    report.bound
                )
                .map_err(io)?;
                return Ok(EXIT_BOUND_VIOLATION);
            }
        }
    }
    Ok(EXIT_OK)
}
