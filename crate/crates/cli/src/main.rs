mod parse;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use regprod::mpcore::{render_bound, to_decimal_truncated};
use regprod::regprod::{regprod_eval, SequenceSpec};
use regprod::rug::{Float, Rational};
use regprod::specialfns::{euler_gamma, glaisher};
use regprod::tmdirichlet::{self, Series};
use regprod::verify::{self, CheckReport, Suite, Tolerance, VerifyOptions, MAX_PRECISION_BITS};
use regprod::{ApproxComplex, ApproxReal, Error, PrecisionContext};

const DEFAULT_DIGITS: u32 = 30;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

#[derive(Parser)]
#[command(name = "regprod", version, about = "Zeta-regularized products and Thue-Morse Dirichlet series")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Significant digits to print [default: 30]; for verify, overrides every digit tolerance
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    digits: Option<u32>,
    /// Starting working precision in bits
    #[arg(long, global = true, env = "REGPROD_PRECISION_BITS", default_value_t = 256)]
    precision_bits: u32,
    /// Emit one JSON record per line
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time (makes output nondeterministic)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named constant
    Constant {
        #[arg(value_enum)]
        name: ConstantName,
    },
    /// Evaluate the regularized product of a sequence
    Eval(EvalArgs),
    /// Evaluate g(s) = Σ ε_n n^-s (n ≥ 1)
    G {
        /// Complex point `<re>[+|-]<im>i`
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Evaluate f(s) = Σ ε_n (n+1)^-s (n ≥ 0)
    F {
        /// Complex point `<re>[+|-]<im>i`
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
        /// Terms for brute-force oracles
        #[arg(long, env = "REGPROD_ORACLE_N", default_value_t = regprod::oracles::DEFAULT_ORACLE_N)]
        n_terms: u64,
    },
    /// List supported sequences
    ListSequences,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    sequence: SequenceName,
    /// Shift for lerch and lerch-quadratic
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Imaginary offset for lerch-quadratic
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Base for geometric
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ConstantName {
    Q,
    Phi,
    EulerGamma,
    Glaisher,
    GPrime0,
    FPrime0,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceName {
    Integers,
    Even,
    Odd,
    Odious,
    Evil,
    ShiftedOdious,
    ShiftedEvil,
    Lerch,
    LerchQuadratic,
    #[value(name = "n2-plus-1")]
    N2Plus1,
    #[value(name = "n2-minus-n-plus-1")]
    N2MinusNPlus1,
    #[value(name = "n4-plus-1")]
    N4Plus1,
    Geometric,
    SelfPower,
    Squarefree,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Theorem,
    Catalog,
    Properties,
    Oracles,
    All,
}

#[derive(Serialize)]
struct OutputRecord {
    name: String,
    value: String,
    error_bound: String,
    digits: u32,
    method: String,
    elapsed_ms: u64,
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::InvalidContext(_) | Error::UnknownPartition(..) | Error::Pole(_) => EXIT_USAGE,
            Error::InsufficientAccuracy { .. } => EXIT_PRECISION,
            _ => EXIT_FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A computed quantity, real or complex.
enum Quantity {
    Real(ApproxReal),
    Complex(ApproxComplex),
}

struct Rendered {
    value: String,
    error_bound: String,
}

fn render(q: &Quantity, digits: u32) -> Result<Rendered, Error> {
    match q {
        Quantity::Real(x) => Ok(Rendered {
            value: to_decimal_truncated(x, digits)?,
            error_bound: render_bound(x.radius()),
        }),
        Quantity::Complex(z) if z.im.value().is_zero() && z.im.radius().is_zero() => {
            render(&Quantity::Real(z.re.clone()), digits)
        }
        Quantity::Complex(z) => {
            let re = to_decimal_truncated(&z.re, digits)?;
            let im = to_decimal_truncated(&z.im, digits)?;
            let (sign, im) = match im.strip_prefix('-') {
                Some(rest) => ('-', rest.to_string()),
                None => ('+', im),
            };
            let bound = Float::with_val(64, z.re.radius()).max(z.im.radius());
            Ok(Rendered {
                value: format!("{re}{sign}{im}i"),
                error_bound: render_bound(&bound),
            })
        }
    }
}

/// Evaluates at increasing precision until `digits` can be certified.
fn escalate<F>(ctx: PrecisionContext, digits: u32, eval: F) -> Result<(Rendered, String), Failure>
where
    F: Fn(&PrecisionContext) -> Result<(Quantity, String), Error>,
{
    let ceiling = (f64::from(MAX_PRECISION_BITS) * std::f64::consts::LOG10_2) as u32;
    if digits > ceiling {
        return Err(Failure {
            code: EXIT_PRECISION,
            message: format!("{digits} digits not reachable within {MAX_PRECISION_BITS} bits"),
        });
    }
    let mut ctx = ctx;
    loop {
        let (q, method) = eval(&ctx)?;
        match render(&q, digits) {
            Ok(r) => return Ok((r, method)),
            Err(Error::InsufficientAccuracy { max_digits }) => {
                if ctx.bits() * 2 > MAX_PRECISION_BITS {
                    return Err(Failure {
                        code: EXIT_PRECISION,
                        message: format!(
                            "{digits} digits not reachable within {MAX_PRECISION_BITS} bits (at most {max_digits})"
                        ),
                    });
                }
                ctx = ctx.doubled();
            }
            Err(e) => return Err(e.into()),
        }
    }
}

fn rational_arg(name: &str, value: &Option<String>) -> Result<Rational, Failure> {
    let text = value
        .as_ref()
        .ok_or_else(|| Failure::usage(format!("--{name} is required for this sequence")))?;
    parse::rational(text).map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn sequence_spec(args: &EvalArgs) -> Result<SequenceSpec, Failure> {
    Ok(match args.sequence {
        SequenceName::Integers => SequenceSpec::Integers,
        SequenceName::Even => SequenceSpec::Even,
        SequenceName::Odd => SequenceSpec::Odd,
        SequenceName::Odious => SequenceSpec::Odious,
        SequenceName::Evil => SequenceSpec::Evil,
        SequenceName::ShiftedOdious => SequenceSpec::ShiftedOdious,
        SequenceName::ShiftedEvil => SequenceSpec::ShiftedEvil,
        SequenceName::Lerch => SequenceSpec::LerchShift {
            x: rational_arg("x", &args.x)?,
        },
        SequenceName::LerchQuadratic => SequenceSpec::LerchQuadratic {
            x: rational_arg("x", &args.x)?,
            y: rational_arg("y", &args.y)?,
        },
        SequenceName::N2Plus1 => SequenceSpec::N2Plus1,
        SequenceName::N2MinusNPlus1 => SequenceSpec::N2MinusNPlus1,
        SequenceName::N4Plus1 => SequenceSpec::N4Plus1,
        SequenceName::Geometric => SequenceSpec::Geometric {
            a: rational_arg("a", &args.a)?,
        },
        SequenceName::SelfPower => SequenceSpec::SelfPower,
        SequenceName::Squarefree => SequenceSpec::Squarefree,
    })
}

fn constant(name: ConstantName, ctx: &PrecisionContext) -> Result<(Quantity, String), Error> {
    let series = "DerivativeSeries".to_string();
    let (x, method) = match name {
        ConstantName::Q => (tmdirichlet::q_constant(ctx)?, series),
        ConstantName::Phi => (tmdirichlet::fm_phi(ctx)?, series),
        ConstantName::GPrime0 => (tmdirichlet::g_prime0(ctx)?, series),
        ConstantName::FPrime0 => (tmdirichlet::f_prime0(ctx)?, series),
        ConstantName::EulerGamma => (euler_gamma(ctx), "BrentMcMillan".to_string()),
        ConstantName::Glaisher => (glaisher(ctx)?, "ZetaDerivative".to_string()),
    };
    Ok((Quantity::Real(x), method))
}

fn constant_label(name: ConstantName) -> &'static str {
    match name {
        ConstantName::Q => "q",
        ConstantName::Phi => "phi",
        ConstantName::EulerGamma => "euler_gamma",
        ConstantName::Glaisher => "glaisher",
        ConstantName::GPrime0 => "g_prime0",
        ConstantName::FPrime0 => "f_prime0",
    }
}

/// `s` as an exact point at the working precision of `ctx`.
fn point(re: &Rational, im: &Rational, ctx: &PrecisionContext) -> ApproxComplex {
    let prec = ctx.working_bits();
    ApproxComplex::new(
        ApproxReal::exact(Float::with_val(prec, re)),
        ApproxReal::exact(Float::with_val(prec, im)),
    )
}

struct Printer {
    json: bool,
    timing: bool,
    start: Instant,
}

impl Printer {
    fn elapsed_ms(&self) -> u64 {
        if self.timing {
            self.start.elapsed().as_millis() as u64
        } else {
            0
        }
    }

    fn record(&self, name: &str, r: &Rendered, digits: u32, method: &str) {
        let mut out = io::stdout().lock();
        if self.json {
            let rec = OutputRecord {
                name: name.to_string(),
                value: r.value.clone(),
                error_bound: r.error_bound.clone(),
                digits,
                method: method.to_string(),
                elapsed_ms: self.elapsed_ms(),
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"));
        } else {
            let _ = writeln!(out, "{name} = {}", r.value);
            let _ = writeln!(out, "  error bound {}, method {method}", r.error_bound);
            if self.timing {
                let _ = writeln!(out, "  elapsed {} ms", self.elapsed_ms());
            }
        }
    }
}

fn tolerance_digits(t: Tolerance) -> u32 {
    match t {
        Tolerance::Digits(d) => d,
        _ => 0,
    }
}

fn print_verify(printer: &Printer, reports: &[CheckReport]) {
    let mut out = io::stdout().lock();
    for r in reports {
        let status = if r.passed { "pass" } else { "fail" };
        if printer.json {
            let rec = OutputRecord {
                name: format!("{}: {}", r.suite, r.name),
                value: format!("{:.1}", r.achieved_digits),
                error_bound: "0".to_string(),
                digits: tolerance_digits(r.tolerance),
                method: format!("{status} {}", r.method),
                elapsed_ms: printer.elapsed_ms(),
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"));
        } else {
            let note = r.error.as_deref().map(|e| format!("  ({e})")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<4}  {:<10}  {:<48}  {:>6.1} digits  need {:<14}  {} bits{note}",
                status.to_uppercase(),
                r.suite.to_string(),
                r.name,
                r.achieved_digits,
                r.tolerance.to_string(),
                r.precision_bits,
            );
        }
    }
    if !printer.json {
        let passed = reports.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", reports.len());
    }
}

fn list_sequences(printer: &Printer) {
    let rows: [(&str, &str); 15] = [
        ("integers", "n, n >= 1"),
        ("even", "2n, n >= 1"),
        ("odd", "2n+1, n >= 1"),
        ("odious", "n >= 1 with an odd number of binary ones"),
        ("evil", "n >= 1 with an even number of binary ones"),
        ("shifted-odious", "n+1 for odious n"),
        ("shifted-evil", "n+1 for evil n"),
        ("lerch", "n+x, n >= 0 (--x > 0)"),
        ("lerch-quadratic", "(n+x)^2 + y^2, n >= 0 (--x > 0, --y)"),
        ("n2-plus-1", "n^2+1, n >= 0"),
        ("n2-minus-n-plus-1", "n^2-n+1, n >= 0"),
        ("n4-plus-1", "n^4+1, n >= 0"),
        ("geometric", "a^n, n >= 0 (--a > 1)"),
        ("self-power", "n^n, n >= 1, n repeated n times"),
        ("squarefree", "squarefree n >= 1"),
    ];
    let mut out = io::stdout().lock();
    for (name, terms) in rows {
        if printer.json {
            let rec = OutputRecord {
                name: name.to_string(),
                value: terms.to_string(),
                error_bound: "0".to_string(),
                digits: 0,
                method: "catalog".to_string(),
                elapsed_ms: 0,
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"));
        } else {
            let _ = writeln!(out, "{name:<20} {terms}");
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    let ctx = PrecisionContext::with_bits(common.precision_bits).map_err(|e| Failure::usage(e.to_string()))?;
    if common.precision_bits > MAX_PRECISION_BITS {
        return Err(Failure::usage(format!("--precision-bits is capped at {MAX_PRECISION_BITS}")));
    }
    let printer = Printer {
        json: common.json,
        timing: common.timing,
        start: Instant::now(),
    };
    let digits = common.digits.unwrap_or(DEFAULT_DIGITS);
    match &cli.command {
        Command::Constant { name } => {
            let (r, method) = escalate(ctx, digits, |c| constant(*name, c))?;
            printer.record(constant_label(*name), &r, digits, &method);
        }
        Command::Eval(args) => {
            let spec = sequence_spec(args)?;
            spec.validate()?;
            let (r, method) = escalate(ctx, digits, |c| {
                let res = regprod_eval(&spec, c)?;
                Ok((Quantity::Real(res.value), res.route.to_string()))
            })?;
            printer.record(&spec.name(), &r, digits, &method);
        }
        Command::G { s } | Command::F { s } => {
            let (series, label) = match &cli.command {
                Command::G { .. } => (Series::G, "g"),
                _ => (Series::F, "f"),
            };
            let (re, im) = parse::complex(s).map_err(|e| Failure::usage(format!("--s: {e}")))?;
            let (r, method) = escalate(ctx, digits, |c| {
                let z = point(&re, &im, c);
                let ev = match series {
                    Series::G => tmdirichlet::g(&z, c)?,
                    Series::F => tmdirichlet::f(&z, c)?,
                };
                Ok((Quantity::Complex(ev.value), ev.method.to_string()))
            })?;
            printer.record(&format!("{label}({s})"), &r, digits, &method);
        }
        Command::Verify { suite, n_terms } => {
            let suite = match suite {
                SuiteName::Theorem => Suite::Theorem,
                SuiteName::Catalog => Suite::Catalog,
                SuiteName::Properties => Suite::Properties,
                SuiteName::Oracles => Suite::Oracles,
                SuiteName::All => Suite::All,
            };
            let opts = VerifyOptions {
                digits: common.digits,
                oracle_n: *n_terms,
            };
            let reports = verify::run_suite(suite, &opts, &ctx);
            print_verify(&printer, &reports);
            if reports.iter().any(|r| r.exhausted) {
                return Ok(EXIT_PRECISION);
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::ListSequences => list_sequences(&printer),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
