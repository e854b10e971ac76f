use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quartic_jacobian::counting::jacobian_order;
use quartic_jacobian::curve::CurveContext;
use quartic_jacobian::divisor::{random_divisor, random_reduced_divisor};
use quartic_jacobian::grassmann::{plucker, plucker_of_divisor};
use quartic_jacobian::jacobian::{
    add, class_equal, is_zero, kummer_coords, neg, neg_class, scalar_mul, tangent_dimension,
    JacobianClass,
};
use quartic_jacobian::par::Execution;
use quartic_jacobian::pencil::{divisor_from_conics, zpoint_from_divisor, zpoint_validate, ZPoint};
use quartic_jacobian::selftest::run_all;
use quartic_jacobian::text::{self, RecordKind};
use quartic_jacobian::Error;

#[derive(Parser)]
#[command(
    name = "quartic-jac",
    version,
    about = "Jacobian arithmetic on plane quartics with a hyper-flex"
)]
struct Cli {
    /// Quartic file (`quartic p=<p>` header); defaults to x^4 + y^3 z + z^4.
    #[arg(long, global = true)]
    curve: Option<PathBuf>,
    /// Prime of the default curve.
    #[arg(long, global = true, default_value_t = 31)]
    field: u64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Validate a curve and echo its coefficients.
    ValidateCurve {
        input: Option<PathBuf>,
    },
    /// A seeded divisor in the non-special open set; rational points when
    /// the field has enough of them.
    RandomDivisor {
        /// Allow points over extensions (Galois orbits of degree 2 and 3).
        #[arg(long)]
        general: bool,
    },
    /// Divisor -> conic tuple.
    ToZpoint {
        input: PathBuf,
    },
    /// Conic tuple -> divisor.
    FromZpoint {
        input: PathBuf,
    },
    Neg {
        input: PathBuf,
    },
    Add {
        first: PathBuf,
        second: PathBuf,
    },
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        n: i128,
        input: PathBuf,
    },
    IsZero {
        input: PathBuf,
    },
    Equal {
        first: PathBuf,
        second: PathBuf,
    },
    Plucker {
        input: PathBuf,
    },
    Kummer {
        input: PathBuf,
    },
    TangentDim {
        input: PathBuf,
    },
    /// Point counts, L-polynomial and group order.
    Zeta,
    /// Run the acceptance suite and print a table.
    Selftest {
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_curve(cli: &Cli) -> std::result::Result<CurveContext, Failure> {
    match &cli.curve {
        Some(path) => curve_from_file(path),
        None => Ok(CurveContext::reference(cli.field)?),
    }
}

fn curve_from_file(path: &Path) -> std::result::Result<CurveContext, Failure> {
    let (q, prime) = text::parse_quartic(&read(path)?)?;
    Ok(CurveContext::validate(q, prime)?)
}

/// A divisor or zpoint file as a class; zpoints are validated first.
fn load_class(ctx: &CurveContext, path: &Path) -> std::result::Result<JacobianClass, Failure> {
    let s = read(path)?;
    match text::record_kind(&s)? {
        RecordKind::Divisor => Ok(JacobianClass::new(ctx, &text::parse_divisor(ctx, &s)?)?),
        RecordKind::ZPoint => Ok(JacobianClass::from_zpoint(
            ctx,
            &text::parse_zpoint(ctx, &s)?,
        )?),
        other => Err(Error::Parse(format!("expected a divisor or zpoint, found {other:?}")).into()),
    }
}

fn load_zpoint(ctx: &CurveContext, path: &Path) -> std::result::Result<ZPoint, Failure> {
    let s = read(path)?;
    match text::record_kind(&s)? {
        RecordKind::ZPoint => {
            let z = text::parse_zpoint(ctx, &s)?;
            let v = zpoint_validate(ctx, &z);
            if !v.valid {
                return Err(Error::NotInZ(format!("{:?}", v.diagnostics)).into());
            }
            Ok(z)
        }
        RecordKind::Divisor => Ok(zpoint_from_divisor(ctx, &text::parse_divisor(ctx, &s)?)?),
        other => Err(Error::Parse(format!("expected a divisor or zpoint, found {other:?}")).into()),
    }
}

fn is_zpoint_file(path: &Path) -> bool {
    read(path)
        .ok()
        .and_then(|s| text::record_kind(&s).ok())
        .is_some_and(|k| k == RecordKind::ZPoint)
}

/// Zpoint output when asked for and available, divisor output otherwise.
fn emit_class(c: &JacobianClass, prefer_zpoint: bool) -> String {
    match c.certificate() {
        Some(z) if prefer_zpoint => text::format_zpoint(z),
        _ => text::format_divisor(c.rep()),
    }
}

fn run(cli: &Cli) -> std::result::Result<(String, bool), Failure> {
    let ok = |s: String| Ok((s, true));
    match &cli.verb {
        Verb::ValidateCurve { input } => {
            let ctx = match input {
                Some(path) => curve_from_file(path)?,
                None => load_curve(cli)?,
            };
            ok(text::format_quartic(ctx.quartic()))
        }
        Verb::RandomDivisor { general } => {
            let ctx = load_curve(cli)?;
            // Small fields may have too few rational points off the special
            // locus; orbits over extensions always exist.
            let rational = match *general {
                true => Err(Error::SamplingExhausted(0)),
                false => random_reduced_divisor(&ctx, cli.seed),
            };
            let d = match rational {
                Ok(d) => d,
                Err(Error::SamplingExhausted(_)) => random_divisor(&ctx, cli.seed)?,
                Err(e) => return Err(e.into()),
            };
            ok(text::format_divisor(&d))
        }
        Verb::ToZpoint { input } => {
            let ctx = load_curve(cli)?;
            ok(text::format_zpoint(&load_zpoint(&ctx, input)?))
        }
        Verb::FromZpoint { input } => {
            let ctx = load_curve(cli)?;
            let z = load_zpoint(&ctx, input)?;
            ok(text::format_divisor(&divisor_from_conics(
                &ctx, &z.a, &z.b,
            )?))
        }
        Verb::Neg { input } => {
            let ctx = load_curve(cli)?;
            if is_zpoint_file(input) {
                return ok(text::format_zpoint(&neg(&load_zpoint(&ctx, input)?)?));
            }
            let c = load_class(&ctx, input)?;
            ok(emit_class(&neg_class(&ctx, &c)?, false))
        }
        Verb::Add { first, second } => {
            let ctx = load_curve(cli)?;
            let (a, b) = (load_class(&ctx, first)?, load_class(&ctx, second)?);
            let z = is_zpoint_file(first) && is_zpoint_file(second);
            ok(emit_class(&add(&ctx, &a, &b)?, z))
        }
        Verb::Mul { n, input } => {
            let ctx = load_curve(cli)?;
            let c = load_class(&ctx, input)?;
            ok(emit_class(
                &scalar_mul(&ctx, *n, &c)?,
                is_zpoint_file(input),
            ))
        }
        Verb::IsZero { input } => {
            let ctx = load_curve(cli)?;
            ok(format!("{}\n", is_zero(&ctx, &load_class(&ctx, input)?)?))
        }
        Verb::Equal { first, second } => {
            let ctx = load_curve(cli)?;
            let (a, b) = (load_class(&ctx, first)?, load_class(&ctx, second)?);
            ok(format!("{}\n", class_equal(&ctx, &a, &b)?))
        }
        Verb::Plucker { input } => {
            let ctx = load_curve(cli)?;
            if is_zpoint_file(input) {
                return ok(text::format_plucker(&plucker(&load_zpoint(&ctx, input)?)));
            }
            let d = text::parse_divisor(&ctx, &read(input)?)?;
            let v = plucker_of_divisor(&ctx, &d)?;
            let mut out = text::format_plucker(&v.vector);
            if !v.injective {
                out.push_str("# divisor is special: the pencil does not determine it\n");
            }
            ok(out)
        }
        Verb::Kummer { input } => {
            let ctx = load_curve(cli)?;
            let z = load_zpoint(&ctx, input)?;
            ok(text::format_kummer(&kummer_coords(&ctx, &z)?))
        }
        Verb::TangentDim { input } => {
            let ctx = load_curve(cli)?;
            let z = load_zpoint(&ctx, input)?;
            ok(format!("{}\n", tangent_dimension(&ctx, &z)?))
        }
        Verb::Zeta => {
            let ctx = load_curve(cli)?;
            ok(text::format_zeta(&jacobian_order(&ctx)?))
        }
        Verb::Selftest { sequential } => {
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::available()
            };
            let reports = run_all(exec);
            let all = reports.iter().all(|r| r.passed);
            let table: String = reports.iter().map(|r| format!("{r}\n")).collect();
            Ok((table, all))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, passed)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("E_IO: {e}");
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{}: {e}", e.code());
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("E_IO: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_multipliers_parse() {
        let cli = Cli::try_parse_from(["quartic-jac", "mul", "--n", "-3", "d.txt"]).unwrap();
        assert!(matches!(cli.verb, Verb::Mul { n: -3, .. }));
    }

    #[test]
    fn parse_errors_are_distinguished() {
        assert!(Error::Parse("x".into()).is_parse());
        assert!(!Error::ShapeViolation.is_parse());
    }
}
