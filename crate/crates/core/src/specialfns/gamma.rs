//! Principal-branch log-Gamma by Stirling's series after an upward shift.
//!
//! `log Γ(z) = log Γ(z + N) - Σ_{k<N} log(z + k)` with every logarithm on
//! its principal branch, which is the branch continuous from the positive
//! real axis and satisfying `log Γ(z+1) = log Γ(z) + log z`.
//!
//! For `w = z + N` with `Re w > 0` the Stirling remainder after `M` terms is
//! at most `|B_{2M+2}| / ((2M+2)(2M+1)|w|^(2M+1)) · sec(arg(w)/2)^(2M+2)`.

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpcore::{cabs_up, rad_add, rad_mul, rad_pow2_f64, rad_up, rad_zero};

use super::bernoulli;

pub(crate) struct LogGammaBall {
    pub value: Complex,
    pub radius: Float,
    /// Upper bound on |ψ(z)|, for propagating input radii.
    pub digamma_bound: f64,
}

fn is_pole(z: &Complex) -> bool {
    z.imag().is_zero() && *z.real() <= 0 && z.real().is_integer()
}

fn choose_params(w_abs: f64, half_arg_sec_log2: f64, target: f64) -> Option<usize> {
    for m in 1..4096usize {
        let n = 2 * m + 2;
        let b = bernoulli::log2_abs_bound(m + 1);
        let bound = b - ((n * (n - 1)) as f64).log2() - (2 * m + 1) as f64 * w_abs.log2()
            + n as f64 * half_arg_sec_log2;
        if bound <= target {
            return Some(m);
        }
    }
    None
}

pub(crate) fn log_gamma(z: &Complex, wp: u32, target_log2: f64) -> Result<LogGammaBall> {
    if is_pole(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.real().to_f64())));
    }
    let prec = wp;
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    let want = (f64::from(wp) * 0.12 + 4.0).max(2.0 * im.abs());
    let shift = if re < want { (want - re).ceil() as u64 } else { 0 };

    let w = Complex::with_val(prec, z + shift);
    let w_re = w.real().to_f64();
    let w_im = w.imag().to_f64();
    let w_abs = w_re.hypot(w_im);
    let theta = w_im.atan2(w_re);
    let sec_log2 = -(theta / 2.0).cos().log2() + 1e-12;
    let m = choose_params(w_abs * (1.0 - 1e-12), sec_log2, target_log2)
        .expect("Stirling series reaches any target for large enough |w|");

    let mut abs_sum = rad_zero();
    let ln_w = Complex::with_val(prec, w.ln_ref());
    // (w - 1/2) log w - w + log(2π)/2
    let w_half = Complex::with_val(prec, &w - Float::with_val(prec, 0.5));
    let main = Complex::with_val(prec, &w_half * &ln_w);
    abs_sum = rad_add(&abs_sum, &cabs_up(&main));
    let mut value = main - &w;
    abs_sum = rad_add(&abs_sum, &cabs_up(&w));
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let half_log_2pi = Float::with_val(prec, two_pi.ln_ref()) / 2u32;
    value += &half_log_2pi;

    let inv_w = Complex::with_val(prec, w.recip_ref());
    let inv_w2 = Complex::with_val(prec, inv_w.square_ref());
    let mut pw = inv_w.clone();
    for j in 1..=m {
        let b = bernoulli::bernoulli_even(j);
        let denom = (2 * j * (2 * j - 1)) as u64;
        let c = Float::with_val(prec, &b) / denom;
        let term = Complex::with_val(prec, &pw * &c);
        abs_sum = rad_add(&abs_sum, &cabs_up(&term));
        value += term;
        pw *= &inv_w2;
    }

    let mut digamma = w_abs.ln().abs() + 1.0 / w_abs;
    for k in 0..shift {
        let zk = Complex::with_val(prec, z + k);
        let lk = Complex::with_val(prec, zk.ln_ref());
        abs_sum = rad_add(&abs_sum, &cabs_up(&lk));
        value -= lk;
        digamma += 1.0 / (zk.real().to_f64().hypot(zk.imag().to_f64()));
    }

    let rem_log2 = {
        let n = 2 * m + 2;
        bernoulli::log2_abs_bound(m + 1)
            - ((n * (n - 1)) as f64).log2()
            - (2 * m + 1) as f64 * (w_abs * (1.0 - 1e-12)).log2()
            + n as f64 * sec_log2
    };
    let ops = (m + shift as usize + 20) as i32;
    let slack = rad_mul(&abs_sum, &rad_up(ops)) >> (prec as i32 - 3);
    let radius = rad_add(&rad_pow2_f64(rem_log2), &slack);
    Ok(LogGammaBall {
        value,
        radius,
        digamma_bound: 2.0 * digamma + 1.0,
    })
}
