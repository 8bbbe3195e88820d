//! Multiprecision special functions: Hurwitz zeta with its s-derivative,
//! principal-branch log-Gamma, and the classical constants built on them.
//!
//! Every routine picks its own truncation from the context and adds the
//! remainder bound plus a rounding allowance to the returned radius.

mod bernoulli;
mod constants;
mod gamma;
mod hurwitz;

use std::fmt;
use std::str::FromStr;

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpcore::{rad_add, rad_mul, rad_up, ApproxComplex, ApproxReal, PrecisionContext, Rigor};

pub use bernoulli::bernoulli_even;
pub use constants::{euler_gamma, euler_gamma_harmonic, glaisher, glaisher_via_zeta_prime_2, log_2pi};

/// Named constants the CLI and verification suites can resolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstantTag {
    EulerGamma,
    Glaisher,
    Log2Pi,
    Pi,
}

impl ConstantTag {
    pub fn resolve(self, ctx: &PrecisionContext) -> Result<ApproxReal> {
        match self {
            ConstantTag::EulerGamma => Ok(euler_gamma(ctx)),
            ConstantTag::Glaisher => glaisher(ctx),
            ConstantTag::Log2Pi => Ok(log_2pi(ctx)),
            ConstantTag::Pi => Ok(ctx.pi()),
        }
    }
}

impl fmt::Display for ConstantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantTag::EulerGamma => "euler_gamma",
            ConstantTag::Glaisher => "glaisher",
            ConstantTag::Log2Pi => "log_2pi",
            ConstantTag::Pi => "pi",
        })
    }
}

impl FromStr for ConstantTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler_gamma" => Ok(ConstantTag::EulerGamma),
            "glaisher" => Ok(ConstantTag::Glaisher),
            "log_2pi" => Ok(ConstantTag::Log2Pi),
            "pi" => Ok(ConstantTag::Pi),
            other => Err(Error::Domain(format!("unknown constant {other}"))),
        }
    }
}

fn complex_point(s: &ApproxComplex, prec: u32) -> Complex {
    Complex::with_val(prec, (s.re.value(), s.im.value()))
}

fn ball(z: Complex, r: Float, rigor: Rigor) -> ApproxComplex {
    ApproxComplex::from_disc(z, r, rigor)
}

/// `ζ(s, x) = Σ_{n≥0} (n + x)^(-s)`, analytically continued in `s`.
///
/// Input radii are propagated to first order (through `∂_s ζ` and
/// `∂_x ζ = -s ζ(s+1, x)`), which marks the result heuristic.
pub fn hurwitz_zeta(s: &ApproxComplex, x: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxComplex> {
    let prec = ctx.working_bits();
    let sp = complex_point(s, prec);
    let has_input_radius = !s.disc_radius().is_zero() || !x.radius().is_zero();
    let jet = hurwitz::hurwitz_jet(&sp, x.value(), prec, ctx.tail_target_log2(), has_input_radius)?;
    let mut radius = jet.value_rad;
    let mut rigor = s.rigor().combine(x.rigor());
    if has_input_radius {
        rigor = Rigor::Heuristic;
        let ds = rad_up(crate::mpcore::cabs_up(jet.deriv.as_ref().expect("derivative requested")));
        radius = rad_add(&radius, &rad_mul(&rad_mul(&ds, &rad_up(2)), &s.disc_radius()));
        if !x.radius().is_zero() && !sp.is_zero() {
            let lower = Float::with_val(64, x.value() - x.radius());
            if lower <= 0 {
                return Err(Error::Domain("x ball reaches zero".into()));
            }
            let sp1 = Complex::with_val(80, &sp + 1u32);
            let inner = hurwitz::hurwitz_jet(&sp1, &lower, 80, -60.0, false)?;
            let dx = rad_mul(&crate::mpcore::cabs_up(&sp), &crate::mpcore::cabs_up(&inner.value));
            radius = rad_add(&radius, &rad_mul(&rad_mul(&dx, &rad_up(4)), x.radius()));
        }
    }
    Ok(ball(jet.value, radius, rigor))
}

/// Real-argument convenience wrapper around [`hurwitz_zeta`].
pub fn hurwitz_zeta_real(s: &ApproxReal, x: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    let z = hurwitz_zeta(&ApproxComplex::real(s.clone()), x, ctx)?;
    Ok(z.re)
}

/// `ζ(s)` at an integer point.
pub fn riemann_zeta(s: i64, ctx: &PrecisionContext) -> Result<ApproxReal> {
    let prec = ctx.working_bits();
    hurwitz_zeta_real(&ApproxReal::from_int(s, prec), &ApproxReal::from_int(1, prec), ctx)
}

/// `∂ζ(s, x)/∂s` for real `s`, with `x` taken as exact.
pub fn hurwitz_zeta_sderiv(s: &Float, x: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    if *x.value() <= 0 {
        return Err(Error::Domain(format!("x = {} must be positive", x.to_f64())));
    }
    let prec = ctx.working_bits();
    let sp = Complex::with_val(prec, s);
    let jet = hurwitz::hurwitz_jet(&sp, x.value(), prec, ctx.tail_target_log2(), true)?;
    let d = jet.deriv.expect("derivative requested");
    let mut out = ApproxReal::new(d.real().clone(), jet.deriv_rad, x.rigor());
    if !x.radius().is_zero() {
        // ∂_x ∂_s ζ(s, x) at s = 0 is ψ(x); bound it through log-Gamma
        let lg = gamma::log_gamma(&Complex::with_val(prec, x.value()), prec, -60.0)?;
        let extra = rad_mul(&rad_up(lg.digamma_bound * 2.0), x.radius());
        out = out.inflate(&extra).into_heuristic();
    }
    Ok(out)
}

/// `∂_s ζ(s, x)` at `s = 0`; equals `log(Γ(x)/√(2π))`.
pub fn hurwitz_zeta_sderiv0(x: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    hurwitz_zeta_sderiv(&Float::new(ctx.working_bits()), x, ctx)
}

/// `ζ'(s0)` for `s0 ∈ {-1, 0, 2}`.
pub fn zeta_prime(s0: i64, ctx: &PrecisionContext) -> Result<ApproxReal> {
    if !matches!(s0, -1 | 0 | 2) {
        return Err(Error::UnsupportedPoint(s0));
    }
    let prec = ctx.working_bits();
    hurwitz_zeta_sderiv(&Float::with_val(prec, s0), &ApproxReal::from_int(1, prec), ctx)
}

/// Principal-branch `log Γ(z)`.
pub fn log_gamma_complex(z: &ApproxComplex, ctx: &PrecisionContext) -> Result<ApproxComplex> {
    let prec = ctx.working_bits();
    let zp = complex_point(z, prec);
    let lg = gamma::log_gamma(&zp, prec, ctx.tail_target_log2())?;
    let mut radius = lg.radius;
    let mut rigor = z.rigor();
    let zr = z.disc_radius();
    if !zr.is_zero() {
        radius = rad_add(&radius, &rad_mul(&rad_up(lg.digamma_bound * 2.0), &zr));
        rigor = Rigor::Heuristic;
    }
    Ok(ball(lg.value, radius, rigor))
}

/// `log Γ(x)` for real `x > 0`.
pub fn log_gamma_real(x: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    if *x.value() <= 0 {
        return Err(Error::Domain(format!("log_gamma_real needs x > 0, got {}", x.to_f64())));
    }
    Ok(log_gamma_complex(&ApproxComplex::real(x.clone()), ctx)?.re)
}

#[cfg(test)]
mod tests;
