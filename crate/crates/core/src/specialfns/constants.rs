//! Euler–Mascheroni and Glaisher–Kinkelin constants.

use rug::float::Constant;
use rug::Float;

use crate::error::Result;
use crate::mpcore::{
    abs_up, rad_add, rad_mul, rad_pow2_f64, rad_up, ApproxReal, PrecisionContext, Rigor,
};

use super::{bernoulli, zeta_prime};

/// γ by the Brent–McMillan algorithm (variant B1).
///
/// With `A_k = B_k (H_k - ln n)` and `B_k = (n^k / k!)^2`,
/// `γ = Σ A_k / Σ B_k - K_0(2n)/I_0(2n)` and the Bessel quotient is below
/// `π e^(-4n)`. The sums are cut at `k = ⌈4.971 n⌉`, where the neglected
/// terms are `O(e^(-6n))` relative to the total.
pub fn euler_gamma(ctx: &PrecisionContext) -> ApproxReal {
    let prec = ctx.working_bits();
    let target = -ctx.tail_target_log2();
    let n = ((target + 4.0) * std::f64::consts::LN_2 / 4.0).ceil() as u64 + 1;
    let kmax = (4.970_625_759_544_232 * n as f64).ceil() as u64 + 1;

    let ln_n = Float::with_val(prec, n).ln();
    let n2 = Float::with_val(prec, n * n);
    let mut a = -ln_n.clone();
    let mut b = Float::with_val(prec, 1);
    let mut u = a.clone();
    let mut v = b.clone();
    for k in 1..=kmax {
        b *= &n2;
        b /= k * k;
        a *= &n2;
        a /= k;
        a += &b;
        a /= k;
        u += &a;
        v += &b;
    }
    let gamma = Float::with_val(prec, &u / &v);

    // Bessel quotient plus rounding in ~4 kmax operations on sums of size v
    let bessel = rad_pow2_f64(
        (std::f64::consts::PI).log2() - 4.0 * n as f64 * std::f64::consts::LOG2_E,
    );
    let scale = rad_add(&abs_up(&gamma), &rad_up(ln_n.to_f64() + 2.0));
    let slack = rad_mul(&scale, &rad_up(8 * kmax)) >> (prec as i32 - 2);
    ApproxReal::new(gamma, rad_add(&bessel, &slack), Rigor::Rigorous)
}

/// γ from the Euler–Maclaurin expansion of the harmonic numbers:
/// `γ = H_{N-1} - ln N + 1/(2N) + Σ_{j=1..M} B_2j / (2j N^2j) + R`,
/// `|R| <= |B_{2M+2}| / ((2M+2) N^(2M+2))`.
pub fn euler_gamma_harmonic(ctx: &PrecisionContext) -> ApproxReal {
    let prec = ctx.working_bits();
    let target = ctx.tail_target_log2();
    let n = (f64::from(prec) * 0.15).ceil() as u64 + 10;
    let m = (1..4096usize)
        .find(|&m| {
            bernoulli::log2_abs_bound(m + 1)
                - ((2 * m + 2) as f64).log2()
                - (2 * m + 2) as f64 * (n as f64).log2()
                <= target
        })
        .expect("harmonic expansion converges");

    let mut h = Float::new(prec);
    for k in 1..n {
        h += Float::with_val(prec, k).recip();
    }
    let nf = Float::with_val(prec, n);
    let mut g = h - Float::with_val(prec, nf.ln_ref());
    g += Float::with_val(prec, 2 * n).recip();
    let inv_n2 = Float::with_val(prec, nf.square_ref()).recip();
    let mut pw = inv_n2.clone();
    for j in 1..=m {
        let b = Float::with_val(prec, &bernoulli::bernoulli_even(j));
        g += b * &pw / (2 * j as u64);
        pw *= &inv_n2;
    }
    let rem = rad_pow2_f64(
        bernoulli::log2_abs_bound(m + 1)
            - ((2 * m + 2) as f64).log2()
            - (2 * m + 2) as f64 * (n as f64).log2(),
    );
    let scale = rad_up(f64::from(prec) + 10.0);
    let slack = rad_mul(&scale, &rad_up(4 * (n + m as u64))) >> (prec as i32 - 2);
    ApproxReal::new(g, rad_add(&rem, &slack), Rigor::Rigorous)
}

pub fn log_2pi(ctx: &PrecisionContext) -> ApproxReal {
    let prec = ctx.working_bits();
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    ApproxReal::rounded(Float::with_val(prec, two_pi.ln_ref()))
}

/// `A = exp(1/12 - ζ'(-1))`.
pub fn glaisher(ctx: &PrecisionContext) -> Result<ApproxReal> {
    let prec = ctx.working_bits();
    let zp = zeta_prime(-1, ctx)?;
    let twelfth = ApproxReal::from_ratio(1, 12, prec);
    Ok((&twelfth - &zp).exp())
}

/// `A = (2π)^(1/12) exp(γ/12 - ζ'(2)/(2π²))`.
pub fn glaisher_via_zeta_prime_2(ctx: &PrecisionContext) -> Result<ApproxReal> {
    let zp2 = zeta_prime(2, ctx)?;
    let gamma = euler_gamma(ctx);
    let pi = ctx.pi();
    let two_pi2 = (&pi * &pi).mul_int(2);
    let exponent = &(&log_2pi(ctx) + &gamma).div_int(12) - &zp2.checked_div(&two_pi2)?;
    Ok(exponent.exp())
}
