//! Verification suites: named identities checked by independent routes.
//!
//! A digit tolerance `D` passes when `|x - y| + rx + ry ≤ 10^-D · max(1, |x|, |y|)`.
//! When a check fails only because the radii are too wide to decide it, it
//! is re-run at doubled precision up to [`MAX_PRECISION_BITS`].

use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{agreement_digits, ApproxComplex, ApproxReal, PrecisionContext};
use crate::oracles::{self, DirichletKind};
use crate::regprod::{self, LaurentSeries, SequenceSpec};
use crate::sequences::ParityClass;
use crate::specialfns::{self, euler_gamma, glaisher, glaisher_via_zeta_prime_2, log_2pi, riemann_zeta, zeta_prime};
use crate::tmdirichlet::{self, DirichletOptions, Method, Series};

pub const MAX_PRECISION_BITS: u32 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem,
    Catalog,
    Properties,
    Oracles,
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Theorem, Suite::Catalog, Suite::Properties, Suite::Oracles],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Theorem => "theorem",
            Suite::Catalog => "catalog",
            Suite::Properties => "properties",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Suite::Theorem),
            "catalog" => Ok(Suite::Catalog),
            "properties" => Ok(Suite::Properties),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            other => Err(Error::Domain(format!("unknown suite {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    /// Agreement to this many significant digits, radii included.
    Digits(u32),
    /// `|x - y| ≤ tol`, radii ignored.
    Absolute(f64),
    /// `|x - y| ≤ factor · (rx + ry)`, for heuristic oracle balls.
    Estimate(f64),
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Digits(d) => write!(f, "{d} digits"),
            Tolerance::Absolute(t) => write!(f, "abs {t:e}"),
            Tolerance::Estimate(k) => write!(f, "{k}x estimate"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Overrides every digit tolerance when set.
    pub digits: Option<u32>,
    pub oracle_n: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            digits: None,
            oracle_n: oracles::DEFAULT_ORACLE_N,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub suite: Suite,
    pub name: String,
    pub method: String,
    pub tolerance: Tolerance,
    /// Worst agreement over the compared pairs, in decimal digits.
    pub achieved_digits: f64,
    pub passed: bool,
    /// Precision of the last attempt.
    pub precision_bits: u32,
    pub error: Option<String>,
    /// Failed only because the precision cap was reached.
    pub exhausted: bool,
}

type Pairs = Vec<(ApproxReal, ApproxReal)>;
type EvalFn = Box<dyn Fn(&PrecisionContext, &VerifyOptions) -> Result<Pairs> + Send + Sync>;

struct Check {
    suite: Suite,
    name: String,
    method: &'static str,
    tolerance: Tolerance,
    eval: EvalFn,
}

fn check<F>(suite: Suite, name: impl Into<String>, method: &'static str, tolerance: Tolerance, eval: F) -> Check
where
    F: Fn(&PrecisionContext, &VerifyOptions) -> Result<Pairs> + Send + Sync + 'static,
{
    Check {
        suite,
        name: name.into(),
        method,
        tolerance,
        eval: Box::new(eval),
    }
}

// ---------------------------------------------------------------------------
// closed forms evaluated directly from MPFR-backed primitives

fn sqrt_2pi(ctx: &PrecisionContext) -> ApproxReal {
    log_2pi(ctx).div_int(2).exp()
}

fn quarter_root_pi(ctx: &PrecisionContext) -> Result<ApproxReal> {
    ctx.pi().sqrt()?.sqrt()
}

fn rational(q: &Rational, prec: u32) -> ApproxReal {
    ApproxReal::rounded(Float::with_val(prec, q))
}

fn value_of(spec: SequenceSpec, ctx: &PrecisionContext) -> Result<ApproxReal> {
    Ok(regprod::regprod_eval(&spec, ctx)?.value)
}

fn int(n: i64, ctx: &PrecisionContext) -> ApproxReal {
    ApproxReal::from_int(n, ctx.working_bits())
}

// ---------------------------------------------------------------------------
// suites

fn theorem_checks() -> Vec<Check> {
    let t = Suite::Theorem;
    vec![
        check(t, "phi leading digits 0.77351", "ZetaDerivative", Tolerance::Absolute(5e-6), |ctx, _| {
            // 0.77351 <= phi < 0.77352
            let target = ApproxReal::from_ratio(773_515, 1_000_000, ctx.working_bits());
            Ok(vec![(tmdirichlet::fm_phi(ctx)?, target)])
        }),
        check(t, "odious * evil = sqrt(2 pi)", "ZetaDerivative", Tolerance::Digits(70), |ctx, _| {
            let o = regprod::regprod_odious(ctx)?;
            let e = regprod::regprod_evil(ctx)?;
            Ok(vec![(&o.value * &e.value, sqrt_2pi(ctx))])
        }),
        check(t, "partition (odious, evil)", "ZetaDerivative", Tolerance::Digits(70), |ctx, _| {
            let o = regprod::regprod_odious(ctx)?;
            let e = regprod::regprod_evil(ctx)?;
            Ok(vec![(regprod::partition_combine(&o, &e, ctx)?, sqrt_2pi(ctx))])
        }),
        check(t, "odious = pi^(1/4) sqrt(2 phi e^-gamma)", "ZetaDerivative", Tolerance::Digits(50), |ctx, _| {
            let phi = tmdirichlet::fm_phi(ctx)?;
            let inner = &phi.mul_int(2) * &(-euler_gamma(ctx)).exp();
            let rhs = &quarter_root_pi(ctx)? * &inner.sqrt()?;
            Ok(vec![(regprod::regprod_odious(ctx)?.value, rhs)])
        }),
        check(t, "g(0) = -1", "FunctionalEquation", Tolerance::Digits(70), |ctx, _| {
            let s = ApproxComplex::real(int(0, ctx));
            let ev = tmdirichlet::g(&s, ctx)?;
            if ev.method != Method::FunctionalEquation {
                return Err(Error::Domain(format!("g(0) evaluated by {}", ev.method)));
            }
            Ok(vec![(ev.value.re, int(-1, ctx))])
        }),
        check(t, "f'(0) = log(2)/2", "FunctionalEquation", Tolerance::Digits(50), |ctx, _| {
            Ok(vec![(tmdirichlet::f_prime0(ctx)?, ctx.ln2().div_int(2))])
        }),
        check(t, "shifted odious = 2^(1/2) pi^(1/4)", "ZetaDerivative", Tolerance::Digits(30), |ctx, _| {
            let rhs = &int(2, ctx).sqrt()? * &quarter_root_pi(ctx)?;
            Ok(vec![(regprod::regprod_shifted(ParityClass::Odious, ctx)?.value, rhs)])
        }),
        check(t, "shifted evil = pi^(1/4)", "ZetaDerivative", Tolerance::Digits(30), |ctx, _| {
            Ok(vec![(regprod::regprod_shifted(ParityClass::Evil, ctx)?.value, quarter_root_pi(ctx)?)])
        }),
    ]
}

fn catalog_checks() -> Vec<Check> {
    let c = Suite::Catalog;
    let d = Tolerance::Digits(50);
    let mut out = vec![
        check(c, "integers = sqrt(2 pi)", "ClosedForm", d, |ctx, _| {
            Ok(vec![(value_of(SequenceSpec::Integers, ctx)?, sqrt_2pi(ctx))])
        }),
        check(c, "even = sqrt(pi)", "ZetaDerivative", d, |ctx, _| {
            Ok(vec![(value_of(SequenceSpec::Even, ctx)?, ctx.pi().sqrt()?)])
        }),
        check(c, "odd = sqrt(2)", "ZetaDerivative", d, |ctx, _| {
            Ok(vec![(value_of(SequenceSpec::Odd, ctx)?, int(2, ctx).sqrt()?)])
        }),
        check(c, "n^2+1 = e^pi - e^-pi", "ClosedForm", d, |ctx, _| {
            let pi = ctx.pi();
            Ok(vec![(value_of(SequenceSpec::N2Plus1, ctx)?, &pi.exp() - &(-pi).exp())])
        }),
        check(c, "n^2-n+1 = 2 cosh(pi sqrt(3)/2)", "ClosedForm", d, |ctx, _| {
            let arg = (&ctx.pi() * &int(3, ctx).sqrt()?).div_int(2);
            Ok(vec![(value_of(SequenceSpec::N2MinusNPlus1, ctx)?, arg.cosh().mul_int(2))])
        }),
        check(c, "n^4+1 = 2(cosh(pi sqrt 2) - cos(pi sqrt 2))", "ClosedForm", d, |ctx, _| {
            let arg = &ctx.pi() * &int(2, ctx).sqrt()?;
            let rhs = (&arg.cosh() - &arg.cos()).mul_int(2);
            Ok(vec![(value_of(SequenceSpec::N4Plus1, ctx)?, rhs)])
        }),
    ];
    for a in [2i64, 3] {
        out.push(check(c, format!("{a}^n = {a}^(-1/12)"), "Residue", d, move |ctx, _| {
            let spec = SequenceSpec::Geometric { a: Rational::from(a) };
            let rhs = int(a, ctx).pow(&ApproxReal::from_ratio(-1, 12, ctx.working_bits()))?;
            Ok(vec![(value_of(spec, ctx)?, rhs)])
        }));
    }
    out.push(check(c, "n^n = A e^(-1/12)", "ClosedForm", d, |ctx, _| {
        let rhs = &glaisher(ctx)? * &ApproxReal::from_ratio(-1, 12, ctx.working_bits()).exp();
        Ok(vec![(value_of(SequenceSpec::SelfPower, ctx)?, rhs)])
    }));
    out.push(check(c, "squarefree = 2 pi", "ZetaDerivative", d, |ctx, _| {
        Ok(vec![(value_of(SequenceSpec::Squarefree, ctx)?, ctx.pi().mul_int(2))])
    }));
    out.push(check(c, "lerch grid: value * Gamma(x) = sqrt(2 pi)", "ClosedForm", d, |ctx, _| {
        let prec = ctx.working_bits();
        let mut pairs = Vec::new();
        for (p, q) in [(1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (15, 4)] {
            let x = Rational::from((p, q));
            let gamma = ApproxReal::rounded(Float::with_val(prec, &x).gamma());
            let v = value_of(SequenceSpec::LerchShift { x }, ctx)?;
            pairs.push((&v * &gamma, sqrt_2pi(ctx)));
        }
        Ok(pairs)
    }));
    out.push(check(c, "lerch-quadratic grid: reflection closed forms", "ClosedForm", d, |ctx, _| {
        let mut pairs = Vec::new();
        // x = 1: 2 sinh(pi y)/y; x = 1/2: 2 cosh(pi y); x = 3/2: 2 cosh(pi y)/(1/4 + y^2)
        for (xq, yq) in [((1, 1), (1, 2)), ((1, 1), (2, 1)), ((1, 2), (1, 2)), ((1, 2), (3, 2)), ((3, 2), (1, 1))] {
            let x = Rational::from(xq);
            let y = Rational::from(yq);
            let yb = rational(&y, ctx.working_bits());
            let py = &ctx.pi() * &yb;
            let rhs = if x == 1 {
                py.sinh().mul_int(2).checked_div(&yb)?
            } else if x == Rational::from((1, 2)) {
                py.cosh().mul_int(2)
            } else {
                py.cosh().mul_int(2).checked_div(&(&ApproxReal::from_ratio(1, 4, ctx.working_bits()) + &(&yb * &yb)))?
            };
            pairs.push((value_of(SequenceSpec::LerchQuadratic { x, y }, ctx)?, rhs));
        }
        Ok(pairs)
    }));
    out.push(check(c, "glaisher: two formulas", "ClosedForm", Tolerance::Digits(40), |ctx, _| {
        Ok(vec![(glaisher(ctx)?, glaisher_via_zeta_prime_2(ctx)?)])
    }));
    out.push(check(c, "glaisher leading digits 1.2824271", "ClosedForm", Tolerance::Absolute(5e-8), |ctx, _| {
        Ok(vec![(glaisher(ctx)?, ApproxReal::from_ratio(12_824_271, 10_000_000, ctx.working_bits()))])
    }));
    out
}

fn overlap_points() -> Vec<(i64, i64, i64)> {
    // (numerator of Re s, denominator, Im s): Re s in [16, 18]
    vec![
        (16, 1, 0),
        (33, 2, 0),
        (17, 1, 0),
        (69, 4, 0),
        (18, 1, 0),
        (16, 1, 3),
        (65, 4, -2),
        (17, 1, 10),
        (35, 2, 1),
        (71, 4, -25),
    ]
}

fn properties_checks() -> Vec<Check> {
    let p = Suite::Properties;
    vec![
        check(p, "zeta(0) = -1/2", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            Ok(vec![(riemann_zeta(0, ctx)?, ApproxReal::from_ratio(-1, 2, ctx.working_bits()))])
        }),
        check(p, "scale: integers by 2 gives even", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            let base = regprod::regprod_eval(&SequenceSpec::Integers, ctx)?;
            let scaled = regprod::scale(&base, &int(2, ctx), &riemann_zeta(0, ctx)?)?;
            Ok(vec![(scaled.value, value_of(SequenceSpec::Even, ctx)?)])
        }),
        check(p, "scale: lerch(1/2) by 2 gives odd", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            let half = ApproxReal::from_ratio(1, 2, ctx.working_bits());
            let base = regprod::regprod_eval(&SequenceSpec::LerchShift { x: Rational::from((1, 2)) }, ctx)?;
            let z0 = specialfns::hurwitz_zeta_real(&int(0, ctx), &half, ctx)?;
            let scaled = regprod::scale(&base, &int(2, ctx), &z0)?;
            Ok(vec![(scaled.value, value_of(SequenceSpec::Odd, ctx)?)])
        }),
        check(p, "head of (odious, 5) = 448", "exact", Tolerance::Digits(60), |ctx, _| {
            let (head, _) = regprod::split_head(&SequenceSpec::Odious, 5, ctx)?;
            let head = head.to_i64().ok_or_else(|| Error::Domain("head overflow".into()))?;
            Ok(vec![(int(head, ctx), int(448, ctx))])
        }),
        check(p, "head split (odious, 100) recombines", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            head_recombination(SequenceSpec::Odious, 100, ctx)
        }),
        check(p, "head split (evil, 100) recombines", "ZetaDerivative", Tolerance::Digits(70), |ctx, _| {
            head_recombination(SequenceSpec::Evil, 100, ctx)
        }),
        check(p, "partition (even, odd and 1)", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            let e = regprod::regprod_eval(&SequenceSpec::Even, ctx)?;
            let o = regprod::regprod_eval(&SequenceSpec::Odd, ctx)?;
            Ok(vec![(regprod::partition_combine(&e, &o, ctx)?, sqrt_2pi(ctx))])
        }),
        check(p, "partition (shifted odious, shifted evil)", "ZetaDerivative", Tolerance::Digits(60), |ctx, _| {
            let a = regprod::regprod_shifted(ParityClass::Odious, ctx)?;
            let b = regprod::regprod_shifted(ParityClass::Evil, ctx)?;
            Ok(vec![(regprod::partition_combine(&a, &b, ctx)?, sqrt_2pi(ctx))])
        }),
        check(p, "residue route on zeta data gives sqrt(2 pi)", "Residue", Tolerance::Digits(60), |ctx, _| {
            let laurent = LaurentSeries::new(0, vec![riemann_zeta(0, ctx)?, zeta_prime(0, ctx)?])?;
            let r = regprod::residue_regprod(SequenceSpec::Integers, &laurent)?;
            Ok(vec![(r.value, sqrt_2pi(ctx))])
        }),
        check(p, "g: direct and functional equation agree", "DirectPaired", Tolerance::Digits(60), |ctx, _| {
            let prec = ctx.working_bits();
            let forced = DirichletOptions {
                force_functional_equation: true,
                ..DirichletOptions::default()
            };
            let mut pairs = Vec::new();
            for (num, den, im) in overlap_points() {
                let re = Float::with_val(prec, num) / den;
                let s = ApproxComplex::new(ApproxReal::exact(re), int(im, ctx));
                let a = tmdirichlet::evaluate(Series::G, &s, ctx, DirichletOptions::default())?;
                let b = tmdirichlet::evaluate(Series::G, &s, ctx, forced)?;
                if a.method != Method::DirectPaired || b.method != Method::FunctionalEquation {
                    return Err(Error::Domain("unexpected evaluation method".into()));
                }
                pairs.push((a.value.re, b.value.re));
                pairs.push((a.value.im, b.value.im));
            }
            Ok(pairs)
        }),
    ]
}

fn head_recombination(spec: SequenceSpec, n: u64, ctx: &PrecisionContext) -> Result<Pairs> {
    let (head, tail) = regprod::split_head(&spec, n, ctx)?;
    let head = ApproxReal::rounded(Float::with_val(ctx.working_bits(), &head));
    Ok(vec![(&head * &tail.value, value_of(spec, ctx)?)])
}

fn oracle_checks() -> Vec<Check> {
    let o = Suite::Oracles;
    vec![
        check(o, "Q against paired product", "oracle", Tolerance::Absolute(1e-5), |ctx, opts| {
            Ok(vec![(tmdirichlet::q_constant(ctx)?, oracles::q_product_oracle(opts.oracle_n, ctx)?.value)])
        }),
        check(o, "phi against defining product", "oracle", Tolerance::Absolute(1e-5), |ctx, opts| {
            Ok(vec![(tmdirichlet::fm_phi(ctx)?, oracles::phi_product_oracle(opts.oracle_n, ctx)?.value)])
        }),
        check(o, "zeta_odious(2) against partial sum", "oracle", Tolerance::Estimate(3.0), |ctx, opts| {
            let s = ApproxComplex::real(int(2, ctx));
            let fast = tmdirichlet::zeta_odious(&s, ctx)?.re;
            let slow = oracles::dirichlet_partial(DirichletKind::ZetaOdious, &s, opts.oracle_n, false, ctx)?.value;
            Ok(vec![(fast, slow)])
        }),
        check(o, "g(3) against paired partial sum", "oracle", Tolerance::Estimate(3.0), |ctx, opts| {
            let s = ApproxComplex::real(int(3, ctx));
            let fast = tmdirichlet::g(&s, ctx)?.value.re;
            let n = opts.oracle_n.min(1_000_000);
            let slow = oracles::dirichlet_partial(DirichletKind::G, &s, n, true, ctx)?.value;
            Ok(vec![(fast, slow)])
        }),
    ]
}

fn checks_for(suite: Suite) -> Vec<Check> {
    suite
        .parts()
        .into_iter()
        .flat_map(|s| match s {
            Suite::Theorem => theorem_checks(),
            Suite::Catalog => catalog_checks(),
            Suite::Properties => properties_checks(),
            Suite::Oracles => oracle_checks(),
            Suite::All => unreachable!(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// evaluation

struct Attempt {
    achieved: f64,
    passed: bool,
    /// The radii alone leave room to reach the tolerance.
    decidable: bool,
}

fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        f64::INFINITY
    } else {
        -x.to_f64().abs().log10()
    }
}

fn judge(pairs: &Pairs, tol: Tolerance) -> Attempt {
    let mut achieved = f64::INFINITY;
    let mut passed = true;
    let mut decidable = true;
    for (x, y) in pairs {
        let prec = x.prec().max(y.prec()) + 64;
        let diff = Float::with_val(prec, x.value() - y.value()).abs();
        let radii = Float::with_val(prec, x.radius() + y.radius());
        match tol {
            Tolerance::Digits(d) => {
                let got = agreement_digits(x, y);
                let scale = Float::with_val(prec, x.value().abs_ref())
                    .max(&Float::with_val(prec, y.value().abs_ref()))
                    .max(&Float::with_val(prec, 1));
                let reachable = log10_abs(&Float::with_val(prec, &radii / &scale));
                achieved = achieved.min(got);
                if got < f64::from(d) {
                    passed = false;
                    decidable &= reachable >= f64::from(d);
                }
            }
            Tolerance::Absolute(t) => {
                achieved = achieved.min(log10_abs(&diff));
                passed &= diff <= t;
            }
            Tolerance::Estimate(k) => {
                achieved = achieved.min(log10_abs(&diff));
                passed &= diff <= radii * k;
            }
        }
    }
    Attempt {
        achieved,
        passed,
        decidable,
    }
}

fn run_check(c: &Check, opts: &VerifyOptions, ctx: &PrecisionContext) -> CheckReport {
    let tolerance = match (c.tolerance, opts.digits) {
        (Tolerance::Digits(_), Some(d)) => Tolerance::Digits(d),
        (t, _) => t,
    };
    let mut ctx = *ctx;
    loop {
        let report = |achieved: f64, passed: bool, error: Option<String>, exhausted: bool, bits: u32| CheckReport {
            suite: c.suite,
            name: c.name.clone(),
            method: c.method.to_string(),
            tolerance,
            achieved_digits: achieved,
            passed,
            precision_bits: bits,
            error,
            exhausted,
        };
        let attempt = match (c.eval)(&ctx, opts) {
            Ok(pairs) => judge(&pairs, tolerance),
            Err(Error::InsufficientAccuracy { .. }) => Attempt {
                achieved: 0.0,
                passed: false,
                decidable: false,
            },
            Err(e) => return report(0.0, false, Some(e.to_string()), false, ctx.bits()),
        };
        if attempt.passed || attempt.decidable {
            return report(attempt.achieved, attempt.passed, None, false, ctx.bits());
        }
        if ctx.bits() * 2 > MAX_PRECISION_BITS {
            let msg = format!("undecidable at {} bits", ctx.bits());
            return report(attempt.achieved, false, Some(msg), true, ctx.bits());
        }
        ctx = ctx.doubled();
    }
}

/// Names of the checks in a suite, in execution order.
pub fn check_names(suite: Suite) -> Vec<String> {
    checks_for(suite).into_iter().map(|c| c.name).collect()
}

/// Runs every check of `suite` in a fixed order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions, ctx: &PrecisionContext) -> Vec<CheckReport> {
    checks_for(suite).iter().map(|c| run_check(c, opts, ctx)).collect()
}
