//! Euler–Maclaurin evaluation of the Hurwitz zeta function and its
//! s-derivative.
//!
//! With `y = N + x`,
//!
//! ```text
//! ζ(s, x) = Σ_{n<N} (n+x)^-s + y^(1-s)/(s-1) + y^-s/2
//!         + Σ_{j=1..M} B_2j/(2j)! (s)_{2j-1} y^(-s-2j+1) + R
//! |R| <= 4 |(s)_2M| / (2π)^2M · y^(-σ-2M+1) / (σ+2M-1)
//! ```
//!
//! The derivative is taken term by term; its remainder is bounded by a
//! Cauchy estimate of `R` on the circle `|t - s| = 1/2`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpcore::{cabs_up, rad_add, rad_mul, rad_pow2_f64, rad_up, rad_zero};

use super::bernoulli;

const CAUCHY_RADIUS: f64 = 0.5;

pub(crate) struct HurwitzJet {
    pub value: Complex,
    pub value_rad: Float,
    pub deriv: Option<Complex>,
    pub deriv_rad: Float,
}

/// log2 of the remainder bound, or +inf if the bound does not apply.
fn remainder_log2(abs_s: f64, sigma: f64, y: f64, m: usize, log2_rising: f64) -> f64 {
    let denom = sigma + 2.0 * m as f64 - 1.0;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    2.0 + log2_rising - 2.0 * m as f64 * (2.0 * std::f64::consts::PI).log2()
        + (1.0 - sigma - 2.0 * m as f64) * y.log2()
        - denom.log2()
        + 1e-9 * (abs_s + m as f64)
}

/// Picks the direct-sum length N and Bernoulli order M.
fn choose_params(abs_s: f64, sigma: f64, x: f64, wp: u32, target: f64, deriv: bool) -> (usize, usize) {
    let (a, sig, extra) = if deriv {
        (abs_s + CAUCHY_RADIUS, sigma - CAUCHY_RADIUS, (1.0 / CAUCHY_RADIUS).log2())
    } else {
        (abs_s, sigma, 0.0)
    };
    let mut n = (f64::from(wp) * 0.12 + 0.5 * a).ceil() as usize + 4;
    loop {
        let y = n as f64 + x;
        let m_cap = 6 * n + 16 + a as usize;
        let mut log2_rising = 0.0;
        for m in 1..=m_cap {
            let i = (2 * m - 2) as f64;
            log2_rising += (a + i).log2() + (a + i + 1.0).log2();
            if remainder_log2(a, sig, y, m, log2_rising) + extra <= target {
                return (n, m);
            }
        }
        n *= 2;
    }
}

fn neg_pow(ln_base: &Float, s: &Complex, prec: u32) -> Complex {
    if s.imag().is_zero() {
        let e = (-Float::with_val(prec, s.real() * ln_base)).exp();
        Complex::with_val(prec, e)
    } else {
        let mut z = Complex::with_val(prec, s * ln_base);
        z = -z;
        z.exp()
    }
}

pub(crate) fn hurwitz_jet(
    s: &Complex,
    x: &Float,
    wp: u32,
    target_log2: f64,
    want_deriv: bool,
) -> Result<HurwitzJet> {
    if *x <= 0 {
        return Err(Error::Domain(format!("Hurwitz zeta needs x > 0, got {}", x.to_f64())));
    }
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::Pole("s = 1".into()));
    }
    let prec = wp;
    let abs_s = s.real().to_f64().hypot(s.imag().to_f64());
    let sigma = s.real().to_f64();
    let (n_direct, m) = choose_params(abs_s, sigma, x.to_f64(), wp, target_log2, want_deriv);

    let mut value = Complex::new(prec);
    let mut deriv = Complex::new(prec);
    let mut abs_sum = rad_zero();

    for n in 0..n_direct {
        let base = Float::with_val(prec, x + n as u64);
        let l = Float::with_val(prec, base.ln_ref());
        let p = neg_pow(&l, s, prec);
        let mag = cabs_up(&p);
        abs_sum = rad_add(&abs_sum, &rad_mul(&mag, &rad_up(2 + l.to_f64().abs().ceil() as u64)));
        if want_deriv {
            deriv -= Complex::with_val(prec, &p * &l);
        }
        value += p;
    }

    let y = Float::with_val(prec, x + n_direct as u64);
    let l = Float::with_val(prec, y.ln_ref());
    let ys = neg_pow(&l, s, prec);
    let s_minus_1 = Complex::with_val(prec, s - 1u32);

    // y^(1-s) / (s-1)
    let y1s = Complex::with_val(prec, &ys * &y);
    let integral = Complex::with_val(prec, &y1s / &s_minus_1);
    if want_deriv {
        let inv = Complex::with_val(prec, s_minus_1.recip_ref());
        let inv2 = Complex::with_val(prec, inv.square_ref());
        let lterm = Complex::with_val(prec, &inv * &l);
        let factor = -(lterm + inv2);
        deriv += Complex::with_val(prec, &y1s * &factor);
    }
    abs_sum = rad_add(&abs_sum, &rad_mul(&cabs_up(&integral), &rad_up(2 + l.to_f64().abs().ceil() as u64)));
    value += integral;

    let half = Complex::with_val(prec, &ys / 2u32);
    if want_deriv {
        deriv -= Complex::with_val(prec, &half * &l);
    }
    abs_sum = rad_add(&abs_sum, &rad_mul(&cabs_up(&half), &rad_up(2 + l.to_f64().abs().ceil() as u64)));
    value += &half;

    let coeffs = bernoulli::em_coefficients(m, prec);
    let y2 = Float::with_val(prec, y.square_ref());
    let mut rising = s.clone();
    let mut rising_d = Complex::with_val(prec, 1);
    let mut w = Float::with_val(prec, y.recip_ref());
    for (j, c) in (1..=m).zip(coeffs.iter()) {
        let base = Complex::with_val(prec, &ys * &w) * c;
        let term = Complex::with_val(prec, &base * &rising);
        abs_sum = rad_add(&abs_sum, &cabs_up(&term));
        if want_deriv {
            let lp = Complex::with_val(prec, &rising * &l);
            let dd = Complex::with_val(prec, &rising_d - &lp);
            let dterm = Complex::with_val(prec, &base * &dd);
            abs_sum = rad_add(&abs_sum, &cabs_up(&dterm));
            deriv += dterm;
        }
        value += term;

        let a1 = Complex::with_val(prec, s + (2 * j - 1) as u32);
        let a2 = Complex::with_val(prec, s + (2 * j) as u32);
        let prod = Complex::with_val(prec, &a1 * &a2);
        let sum = a1 + a2;
        let new_d = Complex::with_val(prec, &rising_d * &prod) + Complex::with_val(prec, &rising * &sum);
        rising *= &prod;
        rising_d = new_d;
        w /= &y2;
    }

    let value_rem = remainder_log2(abs_s, sigma, y.to_f64(), m, log2_rising_abs(abs_s, 2 * m));
    let mut value_rad = rad_pow2_f64(value_rem);
    let ops = (n_direct + m + 20) as i32;
    let slack = rad_mul(&abs_sum, &rad_up(ops)) >> (prec as i32 - 3);
    value_rad = rad_add(&value_rad, &slack);

    let (deriv, deriv_rad) = if want_deriv {
        let a = abs_s + CAUCHY_RADIUS;
        let rem = remainder_log2(a, sigma - CAUCHY_RADIUS, y.to_f64(), m, log2_rising_abs(a, 2 * m))
            + (1.0 / CAUCHY_RADIUS).log2();
        (Some(deriv), rad_add(&rad_pow2_f64(rem), &slack))
    } else {
        (None, rad_zero())
    };

    Ok(HurwitzJet {
        value,
        value_rad,
        deriv,
        deriv_rad,
    })
}

fn log2_rising_abs(a: f64, len: usize) -> f64 {
    (0..len).map(|i| (a + i as f64).log2()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_tighten_with_precision() {
        let (n1, m1) = choose_params(2.0, 2.0, 1.0, 128, -132.0, false);
        let (n2, m2) = choose_params(2.0, 2.0, 1.0, 512, -516.0, false);
        assert!(n2 * m2 > n1 * m1);
    }

    #[test]
    fn remainder_bound_is_met() {
        let (n, m) = choose_params(3.0, 3.0, 0.5, 256, -260.0, true);
        let y = n as f64 + 0.5;
        let r = remainder_log2(3.5, 2.5, y, m, log2_rising_abs(3.5, 2 * m)) + 1.0;
        assert!(r <= -260.0);
    }
}
