//! Zeta-regularized products `Π λ_n := exp(-ζ_Λ'(0))`, with
//! `ζ_Λ(s) = Σ λ_n^-s` continued to `s = 0`. When `ζ_Λ` has a simple pole at
//! 0 the product is `exp(-Res_{s=0} ζ_Λ(s)/s²)`, i.e. `exp(-c_1)` for the
//! coefficient `c_1` of `s` in the Laurent expansion.
//!
//! Most sequences have two independent routes. Both are evaluated and must
//! agree within their radii before the tighter one is returned.
//!
//! Notes on the less obvious routes:
//!
//! * Quadratics `(n+x)² + y²`: expanding
//!   `((n+x)² + y²)^-s = Σ_k C(-s,k) y^2k (n+x)^(-2s-2k)` gives
//!   `ζ_Λ(s) = Σ_k C(-s,k) y^2k ζ(2s+2k, x)`. Every `k ≥ 1` term vanishes at
//!   `s = 0` with derivative `(-1)^k/k · y^2k ζ(2k, x)`, so
//!   `-ζ_Λ'(0) = -2ζ'(0,x) - Σ_{k≥1} (-1)^k y^2k ζ(2k,x)/k`. Head terms are
//!   peeled off until `x ≥ 2|y| + 1` so the series converges fast. The same
//!   expansion with `n^4` in place of `(n+x)²` handles `n^4 + 1`.
//! * Squarefree integers: `ζ_Sq(s) = ζ(s)/ζ(2s)`, so
//!   `ζ_Sq'(0) = (ζ'(0)ζ(0) - 2ζ(0)ζ'(0))/ζ(0)² = -ζ'(0)/ζ(0)`.
//! * `n^n` is read as the multiset in which `n` occurs `n` times, so
//!   `ζ_Λ(s) = ζ(s-1)` and the product is `exp(-ζ'(-1))`.
//! * `Odd` is `2n+1` for `n ≥ 1`; adding the factor 1 changes nothing, so
//!   `Even` and `Odd ∪ {1}` partition the positive integers.

mod laurent;

use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

pub use laurent::LaurentSeries;

use crate::error::{Error, Result};
use crate::mpcore::{agreement_digits, rad_pow2_f64, render_value, ApproxComplex, ApproxReal, PrecisionContext};
use crate::sequences::ParityClass;
use crate::specialfns::{
    bernoulli_even, glaisher_via_zeta_prime_2, hurwitz_zeta_real, hurwitz_zeta_sderiv0, log_2pi, log_gamma_complex,
    log_gamma_real, riemann_zeta, zeta_prime,
};
use crate::tmdirichlet::{f_prime0, fm_phi, g_prime0};
use crate::specialfns::euler_gamma;

/// Head products in `split_head` are limited to this many terms.
pub const MAX_HEAD_TERMS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `n`, `n ≥ 1`
    Integers,
    /// `2n`, `n ≥ 1`
    Even,
    /// `2n + 1`, `n ≥ 1`
    Odd,
    Odious,
    Evil,
    /// `{n + 1 : n odious}`
    ShiftedOdious,
    /// `{n + 1 : n evil}`
    ShiftedEvil,
    /// `n + x`, `n ≥ 0`
    LerchShift { x: Rational },
    /// `(n + x)² + y²`, `n ≥ 0`
    LerchQuadratic { x: Rational, y: Rational },
    /// `n² + 1`, `n ≥ 0`
    N2Plus1,
    /// `n² - n + 1`, `n ≥ 0`
    N2MinusNPlus1,
    /// `n⁴ + 1`, `n ≥ 0`
    N4Plus1,
    /// `a^n`, `n ≥ 0`
    Geometric { a: Rational },
    /// `n^n`, `n ≥ 1`
    SelfPower,
    Squarefree,
}

impl SequenceSpec {
    pub fn name(&self) -> String {
        match self {
            SequenceSpec::Integers => "integers".into(),
            SequenceSpec::Even => "even".into(),
            SequenceSpec::Odd => "odd".into(),
            SequenceSpec::Odious => "odious".into(),
            SequenceSpec::Evil => "evil".into(),
            SequenceSpec::ShiftedOdious => "shifted-odious".into(),
            SequenceSpec::ShiftedEvil => "shifted-evil".into(),
            SequenceSpec::LerchShift { x } => format!("lerch(x={x})"),
            SequenceSpec::LerchQuadratic { x, y } => format!("lerch-quadratic(x={x},y={y})"),
            SequenceSpec::N2Plus1 => "n2-plus-1".into(),
            SequenceSpec::N2MinusNPlus1 => "n2-minus-n-plus-1".into(),
            SequenceSpec::N4Plus1 => "n4-plus-1".into(),
            SequenceSpec::Geometric { a } => format!("geometric(a={a})"),
            SequenceSpec::SelfPower => "self-power".into(),
            SequenceSpec::Squarefree => "squarefree".into(),
        }
    }

    /// Checks parameter domains.
    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::LerchShift { x } if *x <= 0 => {
                Err(Error::Domain(format!("lerch needs x > 0, got {x}")))
            }
            SequenceSpec::LerchQuadratic { x, .. } if *x <= 0 => {
                Err(Error::Domain(format!("lerch-quadratic needs x > 0, got {x}")))
            }
            SequenceSpec::Geometric { a } if *a <= 1 => {
                Err(Error::Domain(format!("geometric needs a > 1, got {a}")))
            }
            _ => Ok(()),
        }
    }

    /// The first `n` terms, for sequences of integers.
    fn integer_terms(&self, n: u64) -> Result<Vec<u64>> {
        let take = n as usize;
        Ok(match self {
            SequenceSpec::Integers => (1..=n).collect(),
            SequenceSpec::Even => (1..=n).map(|k| 2 * k).collect(),
            SequenceSpec::Odd => (1..=n).map(|k| 2 * k + 1).collect(),
            SequenceSpec::Odious => ParityClass::Odious.members().take(take).collect(),
            SequenceSpec::Evil => ParityClass::Evil.members().take(take).collect(),
            SequenceSpec::ShiftedOdious => ParityClass::Odious.members().take(take).map(|m| m + 1).collect(),
            SequenceSpec::ShiftedEvil => ParityClass::Evil.members().take(take).map(|m| m + 1).collect(),
            other => {
                return Err(Error::Domain(format!("{} is not an integer sequence", other.name())));
            }
        })
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    ZetaDerivative,
    Residue,
    ClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ZetaDerivative => "ZetaDerivative",
            Route::Residue => "Residue",
            Route::ClosedForm => "ClosedForm",
        })
    }
}

/// The second route evaluated for a result, if any.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub route: Route,
    pub agreement_digits: f64,
}

#[derive(Clone, Debug)]
pub struct RegProdResult {
    pub log_value: ApproxReal,
    pub value: ApproxReal,
    pub route: Route,
    pub spec: SequenceSpec,
    pub cross_check: Option<CrossCheck>,
}

impl RegProdResult {
    fn from_log(spec: SequenceSpec, route: Route, log_value: ApproxReal) -> Self {
        let value = log_value.exp();
        Self {
            log_value,
            value,
            route,
            spec,
            cross_check: None,
        }
    }
}

// ---------------------------------------------------------------------------
// helpers

fn ball(q: &Rational, prec: u32) -> ApproxReal {
    let (v, ord) = Float::with_val_round(prec, q, Round::Nearest);
    if ord == std::cmp::Ordering::Equal {
        ApproxReal::exact(v)
    } else {
        ApproxReal::rounded(v)
    }
}

fn log_integer(n: &Integer, prec: u32) -> ApproxReal {
    ApproxReal::rounded(Float::with_val(prec, n).ln())
}

/// Returns the tighter of two routes after checking they agree within their
/// radii (plus a few units in the last certified bit).
fn reconcile(
    name: &str,
    ctx: &PrecisionContext,
    first: (Route, ApproxReal),
    second: (Route, ApproxReal),
) -> Result<(Route, ApproxReal, CrossCheck)> {
    let (ra, a) = first;
    let (rb, b) = second;
    let prec = ctx.working_bits() + 64;
    let diff = Float::with_val(prec, a.value() - b.value()).abs();
    let scale = Float::with_val(prec, a.value().abs_ref()).max(&Float::with_val(prec, 1));
    let slack = scale >> (ctx.bits() as i32 - 8);
    let allowed = Float::with_val(prec, a.radius() + b.radius()) + slack;
    if diff > allowed {
        return Err(Error::RouteDisagreement {
            name: name.to_string(),
            first: format!("{ra}: {}", render_value(a.value(), 30)),
            second: format!("{rb}: {}", render_value(b.value(), 30)),
        });
    }
    let digits = agreement_digits(&a, &b);
    Ok(if b.radius() < a.radius() {
        (rb, b, CrossCheck { route: ra, agreement_digits: digits })
    } else {
        (ra, a, CrossCheck { route: rb, agreement_digits: digits })
    })
}

fn dual(
    spec: SequenceSpec,
    ctx: &PrecisionContext,
    first: (Route, ApproxReal),
    second: (Route, ApproxReal),
) -> Result<RegProdResult> {
    let (route, log_value, check) = reconcile(&spec.name(), ctx, first, second)?;
    let mut r = RegProdResult::from_log(spec, route, log_value);
    r.cross_check = Some(check);
    Ok(r)
}

/// Index where a geometric-type tail bound `lead · ρ^k (1 + c/k)/k` first
/// drops below `2^target`, and the bound on the rest of the series.
fn series_cutoff(log2_rho: f64, c: f64, target: f64) -> (u32, Float) {
    assert!(log2_rho < -1.0);
    let mut k = 1u32;
    loop {
        let kf = f64::from(k + 1);
        // majorant of term k+1 and a geometric tail with ratio ≤ 2·ρ
        let t = kf * log2_rho + (1.0 + c / kf).log2() - kf.log2() + 1.0;
        if t <= target {
            return (k, rad_pow2_f64(t));
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// routes for the individual catalog entries

fn integers_log(ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal)> {
    let prec = ctx.working_bits();
    let derivative = -zeta_prime(0, ctx)?;
    let closed = &log_2pi(ctx).div_int(2) - &log_gamma_real(&ApproxReal::from_int(1, prec), ctx)?;
    Ok((derivative, closed))
}

/// Laurent data `[ζ(0), ζ'(0)]` for the Riemann zeta function.
fn zeta_laurent(ctx: &PrecisionContext) -> Result<LaurentSeries> {
    LaurentSeries::new(0, vec![riemann_zeta(0, ctx)?, zeta_prime(0, ctx)?])
}

/// `-ζ'(0, x)` and `½ log 2π - log Γ(x)`.
fn lerch_shift_logs(x: &ApproxReal, ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal)> {
    let derivative = -hurwitz_zeta_sderiv0(x, ctx)?;
    let closed = &log_2pi(ctx).div_int(2) - &log_gamma_real(x, ctx)?;
    Ok((derivative, closed))
}

/// `Σ_{n<h} log((n+x)² + y²)` for the peeled head.
fn quadratic_head(x: &ApproxReal, y2: &ApproxReal, h: u64) -> Result<ApproxReal> {
    let prec = x.prec();
    let mut sum = ApproxReal::from_int(0, prec);
    for n in 0..h {
        let t = x + &ApproxReal::from_int(n as i64, prec);
        let q = &(&t * &t) + y2;
        if !q.is_positive() {
            return Err(Error::Domain("a peeled term is zero".into()));
        }
        sum = &sum + &q.ln()?;
    }
    Ok(sum)
}

/// Smallest `h ≥ 0` with `x + h ≥ bound` (with `x` taken at its lower end).
fn peel_count(x: &ApproxReal, bound: f64) -> u64 {
    let lo = x.to_f64() - x.radius_f64();
    if lo >= bound {
        0
    } else {
        (bound - lo).ceil() as u64
    }
}

/// `log 2π - 2 Re log Γ(x + iy)`, after peeling head terms until `x > 0`.
fn quadratic_closed(x: &ApproxReal, y2: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    let prec = ctx.working_bits();
    let h = peel_count(x, 1e-6);
    let head = quadratic_head(x, y2, h)?;
    let xs = x + &ApproxReal::from_int(h as i64, prec);
    let y = y2.sqrt()?;
    let lg = log_gamma_complex(&ApproxComplex::new(xs, y), ctx)?;
    Ok(&(&log_2pi(ctx) - &lg.re.mul_int(2)) + &head)
}

/// `-2ζ'(0,x) - Σ_{k≥1} (-1)^k y^2k ζ(2k,x)/k` after peeling head terms
/// until `x ≥ 2|y| + 1`.
fn quadratic_split(x: &ApproxReal, y2: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    let prec = ctx.working_bits();
    let y_abs = y2.to_f64().max(0.0).sqrt() + 1e-9;
    let h = peel_count(x, 2.0 * y_abs + 1.0);
    let head = quadratic_head(x, y2, h)?;
    let xs = x + &ApproxReal::from_int(h as i64, prec);
    let mut total = &head - &hurwitz_zeta_sderiv0(&xs, ctx)?.mul_int(2);
    if y2.value().is_zero() && y2.radius().is_zero() {
        return Ok(total);
    }
    // |y^2k ζ(2k,x)/k| ≤ (y²/x²)^k (1 + x/(2k-1)) / k
    let x_lo = xs.to_f64() - xs.radius_f64();
    let rho = (y_abs * y_abs / (x_lo * x_lo)).log2();
    let (k_max, tail) = series_cutoff(rho, x_lo, ctx.tail_target_log2());
    let mut ypow = ApproxReal::from_int(1, prec);
    for k in 1..=k_max {
        ypow = &ypow * y2;
        let z = hurwitz_zeta_real(&ApproxReal::from_int(2 * i64::from(k), prec), &xs, ctx)?;
        let term = (&ypow * &z).div_int(i64::from(k));
        total = if k % 2 == 1 { &total + &term } else { &total - &term };
    }
    Ok(total.inflate(&tail))
}

fn quadratic_logs(x: &ApproxReal, y2: &ApproxReal, ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal)> {
    Ok((quadratic_closed(x, y2, ctx)?, quadratic_split(x, y2, ctx)?))
}

/// `n⁴ + 1 = ((n+a)² + ½)((n-a)² + ½)` with `a = √2/2`; the second factor's
/// `n = 0` term equals 1 and is dropped, shifting it to `x = 1 - a`.
fn quartic_factored(ctx: &PrecisionContext) -> Result<ApproxReal> {
    let prec = ctx.working_bits();
    let a = ApproxReal::from_ratio(1, 2, prec).sqrt()?;
    let half = ApproxReal::from_ratio(1, 2, prec);
    let first = quadratic_closed(&a, &half, ctx)?;
    let second = quadratic_closed(&(&ApproxReal::from_int(1, prec) - &a), &half, ctx)?;
    Ok(&first + &second)
}

/// `Σ_{n<h} log(n⁴+1) - 4ζ'(0,h) - Σ_{k≥1} (-1)^k ζ(4k,h)/k`.
fn quartic_split(ctx: &PrecisionContext) -> Result<ApproxReal> {
    const H: u64 = 8;
    let prec = ctx.working_bits();
    let mut total = ApproxReal::from_int(0, prec);
    for n in 0..H {
        total = &total + &log_integer(&(Integer::from(n).pow(4) + 1u32), prec);
    }
    let hb = ApproxReal::from_int(H as i64, prec);
    total = &total - &hurwitz_zeta_sderiv0(&hb, ctx)?.mul_int(4);
    let rho = -4.0 * (H as f64).log2();
    let (k_max, tail) = series_cutoff(rho, H as f64, ctx.tail_target_log2());
    for k in 1..=k_max {
        let z = hurwitz_zeta_real(&ApproxReal::from_int(4 * i64::from(k), prec), &hb, ctx)?;
        let term = z.div_int(i64::from(k));
        total = if k % 2 == 1 { &total + &term } else { &total - &term };
    }
    Ok(total.inflate(&tail))
}

/// Laurent expansion of `1/(1 - a^-s) = Σ_n (-1)^n B_n L^(n-1) s^(n-1) / n!`
/// with `L = log a`, through `s^3`.
fn geometric_bernoulli_laurent(log_a: &ApproxReal) -> Result<LaurentSeries> {
    let prec = log_a.prec();
    let one = ApproxReal::from_int(1, prec);
    let mut coeffs = vec![one.checked_div(log_a)?, ApproxReal::from_ratio(1, 2, prec)];
    let mut lpow = one.clone();
    let mut fact = Integer::from(1);
    for n in 2..=4u32 {
        lpow = &lpow * log_a;
        fact *= n;
        if n % 2 == 1 {
            coeffs.push(ApproxReal::from_int(0, prec));
            continue;
        }
        let b = Float::with_val(prec, &bernoulli_even((n / 2) as usize));
        let c = ApproxReal::rounded(b / Float::with_val(prec, &fact));
        coeffs.push(&lpow * &c);
    }
    LaurentSeries::new(-1, coeffs)
}

/// The same expansion obtained by inverting `1 - e^(-sL)` through `s^4`.
fn geometric_inverted_laurent(log_a: &ApproxReal) -> Result<LaurentSeries> {
    let prec = log_a.prec();
    let mut coeffs = Vec::new();
    let mut lpow = ApproxReal::from_int(1, prec);
    for k in 1..=4i64 {
        lpow = &lpow * log_a;
        let fact: i64 = (1..=k).product();
        let c = lpow.div_int(fact);
        coeffs.push(if k % 2 == 1 { c } else { -c });
    }
    LaurentSeries::new(1, coeffs)?.invert()
}

/// `-ζ'(0)/ζ(0)` by the quotient rule, and the Laurent division
/// `ζ(s) · (1/ζ(2s))` read off by the residue rule.
fn squarefree_logs(ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal)> {
    let z0 = riemann_zeta(0, ctx)?;
    let zp = zeta_prime(0, ctx)?;
    // ζ_Sq'(0) = (ζ'(0) ζ(0) - ζ(0) · 2ζ'(0)) / ζ(0)²
    let num = &(&zp * &z0) - &(&z0 * &zp.mul_int(2));
    let derivative = num.checked_div(&(&z0 * &z0))?;
    let quotient = -derivative;

    let zeta = zeta_laurent(ctx)?;
    let zeta_2s = LaurentSeries::new(0, vec![z0, zp.mul_int(2)])?;
    let series = zeta.mul(&zeta_2s.invert()?);
    let residue = residue_log(&series)?;
    Ok((quotient, residue))
}

fn odious_logs(ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal, ApproxReal)> {
    let quarter_l2pi = log_2pi(ctx).div_int(4);
    let g0 = g_prime0(ctx)?;
    // log Q = -g'(0)
    let half_log_q = (-&g0).div_int(2);
    let odious = &quarter_l2pi - &half_log_q;
    let evil = &quarter_l2pi + &half_log_q;
    // π^(1/4) √(2 φ e^-γ)
    let phi = fm_phi(ctx)?;
    let pi = ctx.pi();
    let abstract_form = &pi.ln()?.div_int(4) + &(&(&ctx.ln2() + &phi.ln()?) - &euler_gamma(ctx)).div_int(2);
    Ok((odious, evil, abstract_form))
}

fn shifted_logs(ctx: &PrecisionContext) -> Result<(ApproxReal, ApproxReal)> {
    let quarter_l2pi = log_2pi(ctx).div_int(4);
    let half_f = f_prime0(ctx)?.div_int(2);
    Ok((&quarter_l2pi + &half_f, &quarter_l2pi - &half_f))
}

// ---------------------------------------------------------------------------
// public operations

fn residue_log(laurent: &LaurentSeries) -> Result<ApproxReal> {
    if laurent.lowest_order() < -1 {
        return Err(Error::Domain(format!(
            "pole of order {} at 0 is not supported",
            -laurent.lowest_order()
        )));
    }
    let c1 = laurent
        .coefficient(1)
        .ok_or_else(|| Error::Domain("Laurent series too short to read the s coefficient".into()))?;
    Ok(-c1)
}

/// `exp(-Res_{s=0} ζ_Λ(s)/s²)` from a Laurent expansion of `ζ_Λ` at 0.
pub fn residue_regprod(spec: SequenceSpec, zeta_laurent: &LaurentSeries) -> Result<RegProdResult> {
    Ok(RegProdResult::from_log(spec, Route::Residue, residue_log(zeta_laurent)?))
}

/// `Π (a λ_n) = a^ζ_Λ(0) Π λ_n`.
pub fn scale(base: &RegProdResult, a: &ApproxReal, zeta_at_0: &ApproxReal) -> Result<RegProdResult> {
    let log_value = &base.log_value + &(zeta_at_0 * &a.ln()?);
    Ok(RegProdResult::from_log(base.spec.clone(), base.route, log_value))
}

/// Exact product of the first `n` terms and the regularized product of the
/// rest.
pub fn split_head(spec: &SequenceSpec, n: u64, ctx: &PrecisionContext) -> Result<(Integer, RegProdResult)> {
    if n == 0 || n > MAX_HEAD_TERMS {
        return Err(Error::Domain(format!("head length must be in 1..={MAX_HEAD_TERMS}")));
    }
    let terms = spec.integer_terms(n)?;
    let head = product_tree(&terms);
    let full = regprod_eval(spec, ctx)?;
    let log_tail = &full.log_value - &log_integer(&head, ctx.working_bits());
    let tail = RegProdResult::from_log(spec.clone(), full.route, log_tail);
    Ok((head, tail))
}

fn product_tree(terms: &[u64]) -> Integer {
    match terms.len() {
        0 => Integer::from(1),
        1 => Integer::from(terms[0]),
        n => {
            let (l, r) = terms.split_at(n / 2);
            product_tree(l) * product_tree(r)
        }
    }
}

/// Registered partitions of the positive integers (up to the factor 1).
fn is_registered_partition(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    use SequenceSpec::*;
    matches!(
        (a, b),
        (Odious, Evil) | (Evil, Odious) | (Even, Odd) | (Odd, Even) | (ShiftedOdious, ShiftedEvil) | (ShiftedEvil, ShiftedOdious)
    )
}

/// `Π_A · Π_B`, checked against `Π_{n≥1} n` for registered pairs.
pub fn partition_combine(a: &RegProdResult, b: &RegProdResult, ctx: &PrecisionContext) -> Result<ApproxReal> {
    if !is_registered_partition(&a.spec, &b.spec) {
        return Err(Error::UnknownPartition(a.spec.name(), b.spec.name()));
    }
    let combined = &a.log_value + &b.log_value;
    let whole = regprod_eval(&SequenceSpec::Integers, ctx)?;
    reconcile(
        &format!("{} ∪ {}", a.spec, b.spec),
        ctx,
        (Route::ZetaDerivative, combined.clone()),
        (whole.route, whole.log_value),
    )?;
    Ok(combined.exp())
}

pub fn regprod_odious(ctx: &PrecisionContext) -> Result<RegProdResult> {
    regprod_eval(&SequenceSpec::Odious, ctx)
}

pub fn regprod_evil(ctx: &PrecisionContext) -> Result<RegProdResult> {
    regprod_eval(&SequenceSpec::Evil, ctx)
}

pub fn regprod_shifted(class: ParityClass, ctx: &PrecisionContext) -> Result<RegProdResult> {
    regprod_eval(
        &match class {
            ParityClass::Odious => SequenceSpec::ShiftedOdious,
            ParityClass::Evil => SequenceSpec::ShiftedEvil,
        },
        ctx,
    )
}

/// Evaluates the regularized product of `spec`.
pub fn regprod_eval(spec: &SequenceSpec, ctx: &PrecisionContext) -> Result<RegProdResult> {
    spec.validate()?;
    let prec = ctx.working_bits();
    let s = spec.clone();
    match spec {
        SequenceSpec::Integers => {
            let (d, c) = integers_log(ctx)?;
            dual(s, ctx, (Route::ZetaDerivative, d), (Route::ClosedForm, c))
        }
        SequenceSpec::Even => {
            let (d, _) = integers_log(ctx)?;
            let base = RegProdResult::from_log(s.clone(), Route::ZetaDerivative, d);
            let scaled = scale(&base, &ApproxReal::from_int(2, prec), &riemann_zeta(0, ctx)?)?;
            // ζ_Even(s) = 2^-s ζ(s)
            let two_s = LaurentSeries::new(0, vec![ApproxReal::from_int(1, prec), -ctx.ln2()])?;
            let residue = residue_log(&two_s.mul(&zeta_laurent(ctx)?))?;
            dual(s, ctx, (Route::ZetaDerivative, scaled.log_value), (Route::Residue, residue))
        }
        SequenceSpec::Odd => {
            // 2n+1 = 2(n + 3/2) for n ≥ 0 after reindexing
            let x = ApproxReal::from_ratio(3, 2, prec);
            let (d, _) = lerch_shift_logs(&x, ctx)?;
            let base = RegProdResult::from_log(s.clone(), Route::ZetaDerivative, d);
            let z0 = hurwitz_zeta_real(&ApproxReal::from_int(0, prec), &x, ctx)?;
            let scaled = scale(&base, &ApproxReal::from_int(2, prec), &z0)?;
            let (whole, _) = integers_log(ctx)?;
            let even = regprod_eval(&SequenceSpec::Even, ctx)?;
            let complement = &whole - &even.log_value;
            dual(s, ctx, (Route::ZetaDerivative, scaled.log_value), (Route::ClosedForm, complement))
        }
        SequenceSpec::LerchShift { x } => {
            let (d, c) = lerch_shift_logs(&ball(x, prec), ctx)?;
            dual(s, ctx, (Route::ZetaDerivative, d), (Route::ClosedForm, c))
        }
        SequenceSpec::LerchQuadratic { x, y } => {
            let yb = ball(y, prec);
            let (c, d) = quadratic_logs(&ball(x, prec), &(&yb * &yb), ctx)?;
            dual(s, ctx, (Route::ClosedForm, c), (Route::ZetaDerivative, d))
        }
        SequenceSpec::N2Plus1 => {
            // n = 0 contributes 1; n ≥ 1 is (m + 1)² + 1 for m ≥ 0
            let one = ApproxReal::from_int(1, prec);
            let (c, d) = quadratic_logs(&one, &one, ctx)?;
            dual(s, ctx, (Route::ClosedForm, c), (Route::ZetaDerivative, d))
        }
        SequenceSpec::N2MinusNPlus1 => {
            // n = 0 contributes 1; n ≥ 1 is (m + ½)² + ¾ for m ≥ 0
            let (c, d) = quadratic_logs(
                &ApproxReal::from_ratio(1, 2, prec),
                &ApproxReal::from_ratio(3, 4, prec),
                ctx,
            )?;
            dual(s, ctx, (Route::ClosedForm, c), (Route::ZetaDerivative, d))
        }
        SequenceSpec::N4Plus1 => {
            let c = quartic_factored(ctx)?;
            let d = quartic_split(ctx)?;
            dual(s, ctx, (Route::ClosedForm, c), (Route::ZetaDerivative, d))
        }
        SequenceSpec::Geometric { a } => {
            let log_a = ball(a, prec).ln()?;
            let first = residue_log(&geometric_bernoulli_laurent(&log_a)?)?;
            let second = residue_log(&geometric_inverted_laurent(&log_a)?)?;
            dual(s, ctx, (Route::Residue, first), (Route::Residue, second))
        }
        SequenceSpec::SelfPower => {
            let d = -zeta_prime(-1, ctx)?;
            let a = glaisher_via_zeta_prime_2(ctx)?;
            let c = &a.ln()? - &ApproxReal::from_ratio(1, 12, prec);
            dual(s, ctx, (Route::ZetaDerivative, d), (Route::ClosedForm, c))
        }
        SequenceSpec::Squarefree => {
            let (d, r) = squarefree_logs(ctx)?;
            dual(s, ctx, (Route::ZetaDerivative, d), (Route::Residue, r))
        }
        SequenceSpec::Odious => {
            let (odious, _, abstract_form) = odious_logs(ctx)?;
            dual(s, ctx, (Route::ZetaDerivative, odious), (Route::ClosedForm, abstract_form))
        }
        SequenceSpec::Evil => {
            let (odious, evil, _) = odious_logs(ctx)?;
            let (whole, _) = integers_log(ctx)?;
            dual(s, ctx, (Route::ZetaDerivative, evil), (Route::ClosedForm, &whole - &odious))
        }
        SequenceSpec::ShiftedOdious | SequenceSpec::ShiftedEvil => {
            let (odious, evil) = shifted_logs(ctx)?;
            let (whole, _) = integers_log(ctx)?;
            let (mine, other) = if *spec == SequenceSpec::ShiftedOdious {
                (odious, evil)
            } else {
                (evil, odious)
            };
            // the two shifted sets partition {2, 3, ...}
            dual(s, ctx, (Route::ZetaDerivative, mine), (Route::ClosedForm, &whole - &other))
        }
    }
}

/// Every catalog entry with default parameters, in display order.
pub fn catalog() -> Vec<SequenceSpec> {
    vec![
        SequenceSpec::Integers,
        SequenceSpec::Even,
        SequenceSpec::Odd,
        SequenceSpec::Odious,
        SequenceSpec::Evil,
        SequenceSpec::ShiftedOdious,
        SequenceSpec::ShiftedEvil,
        SequenceSpec::LerchShift { x: Rational::from((1, 2)) },
        SequenceSpec::LerchQuadratic {
            x: Rational::from(1),
            y: Rational::from(1),
        },
        SequenceSpec::N2Plus1,
        SequenceSpec::N2MinusNPlus1,
        SequenceSpec::N4Plus1,
        SequenceSpec::Geometric { a: Rational::from(2) },
        SequenceSpec::SelfPower,
        SequenceSpec::Squarefree,
    ]
}
