use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use super::*;
use crate::mpcore::{agree_to, agreement_digits, to_decimal};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn exact(x: f64) -> ApproxReal {
    ApproxReal::exact(Float::with_val(ctx().working_bits(), x))
}

fn reference(v: Float) -> ApproxReal {
    ApproxReal::rounded(v)
}

/// Apéry-style series ζ(3) = 5/2 Σ_{k≥1} (-1)^(k+1) / (k^3 C(2k, k)),
/// independent of Euler–Maclaurin.
fn zeta3_apery(prec: u32) -> Float {
    let mut sum = Float::new(prec + 32);
    let mut binom = Integer::from(1);
    for k in 1..(prec as u64 / 2 + 10) {
        binom *= 2 * (2 * k - 1);
        binom /= k;
        let den = Integer::from(&binom * (k * k * k));
        let term = Float::with_val(prec + 32, den).recip();
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Float::with_val(prec, sum * 5u32 / 2u32)
}

#[test]
fn gamma_two_algorithms_agree() {
    let c = ctx();
    let bm = euler_gamma(&c);
    let em = euler_gamma_harmonic(&c);
    assert!(agreement_digits(&bm, &em) >= 70.0, "{bm} vs {em}");
    let mpfr = reference(c.float(Constant::Euler));
    assert!(agreement_digits(&bm, &mpfr) >= 70.0);
    assert_eq!(to_decimal(&bm, 10).unwrap(), "0.5772156649");
    assert!(agree_to(&bm, &bm, 70));
}

#[test]
fn gamma_radius_shrinks_with_precision() {
    let lo = euler_gamma(&PrecisionContext::with_bits(128).unwrap());
    let hi = euler_gamma(&PrecisionContext::with_bits(256).unwrap());
    assert!(hi.radius_f64() <= lo.radius_f64() / 2.0);
    let lo = euler_gamma_harmonic(&PrecisionContext::with_bits(128).unwrap());
    let hi = euler_gamma_harmonic(&PrecisionContext::with_bits(256).unwrap());
    assert!(hi.radius_f64() <= lo.radius_f64() / 2.0);
}

#[test]
fn log_gamma_special_values() {
    let c = ctx();
    let one = log_gamma_real(&exact(1.0), &c).unwrap();
    assert!(one.value().is_zero() || one.mag_upper() < 1e-70);
    let half = log_gamma_real(&exact(0.5), &c).unwrap();
    let half_ln_pi = c.pi().ln().unwrap().div_int(2);
    assert!(agreement_digits(&half, &half_ln_pi) >= 70.0);
    assert!(log_gamma_real(&exact(-1.0), &c).is_err());
    let pole = ApproxComplex::exact(Complex::with_val(128, (-3, 0)));
    assert!(matches!(log_gamma_complex(&pole, &c), Err(Error::Pole(_))));
}

#[test]
fn log_gamma_reflection_modulus() {
    // |Γ(1/2 + iy)|^2 = π / cosh(π y) with y = √3/2
    let c = ctx();
    let prec = c.working_bits();
    let y = Float::with_val(prec, 3).sqrt() / 2u32;
    let z = ApproxComplex::exact(Complex::with_val(prec, (Float::with_val(prec, 0.5), y.clone())));
    let lg = log_gamma_complex(&z, &c).unwrap();
    let lhs = lg.re.mul_int(2);
    let pi = Float::with_val(prec, Constant::Pi);
    let cosh = Float::with_val(prec, &pi * &y).cosh();
    let rhs = reference(Float::with_val(prec, &pi / &cosh).ln());
    assert!(agreement_digits(&lhs, &rhs) >= 70.0);
}

#[test]
fn log_gamma_recurrence_on_grid() {
    let c = ctx();
    let prec = c.working_bits();
    for re in [-2.5f64, -0.75, 0.1, 0.5, 1.0, 3.25, 12.0] {
        for im in [-5.0f64, -1.0, 0.5, 2.0, 7.5] {
            let z = Complex::with_val(prec, (re, im));
            let z1 = Complex::with_val(prec, &z + 1u32);
            let a = log_gamma_complex(&ApproxComplex::exact(z.clone()), &c).unwrap();
            let b = log_gamma_complex(&ApproxComplex::exact(z1), &c).unwrap();
            let lz = ApproxComplex::exact(Complex::with_val(prec, z.ln_ref()));
            let re_sum = &a.re + &lz.re;
            let im_sum = &a.im + &lz.im;
            // exact ln z values carry one ulp of rounding
            assert!(agreement_digits(&b.re, &re_sum) >= 70.0, "re at {re}+{im}i");
            assert!(agreement_digits(&b.im, &im_sum) >= 70.0, "im at {re}+{im}i");
        }
    }
}

#[test]
fn hurwitz_classical_values() {
    let c = ctx();
    let prec = c.working_bits();
    let z2 = riemann_zeta(2, &c).unwrap();
    let pi = c.pi();
    let pi2_6 = (&pi * &pi).div_int(6);
    assert!(agreement_digits(&z2, &pi2_6) >= 70.0);
    let z4 = riemann_zeta(4, &c).unwrap();
    let pi4_90 = (&(&pi * &pi) * &(&pi * &pi)).div_int(90);
    assert!(agreement_digits(&z4, &pi4_90) >= 50.0);
    let z3 = riemann_zeta(3, &c).unwrap();
    let apery = reference(zeta3_apery(prec));
    assert!(agreement_digits(&z3, &apery) >= 50.0);
    let mpfr = reference(Float::with_val(prec, 3).zeta());
    assert!(agreement_digits(&z3, &mpfr) >= 70.0);
}

#[test]
fn hurwitz_at_zero_is_half_minus_x() {
    let c = ctx();
    let prec = c.working_bits();
    let x = exact(0.7);
    let z = hurwitz_zeta_real(&ApproxReal::from_int(0, prec), &x, &c).unwrap();
    let expected = &ApproxReal::from_ratio(1, 2, prec) - &x;
    assert!(agreement_digits(&z, &expected) >= 70.0);
    assert!((z.to_f64() + 0.2).abs() < 1e-15);

    // twenty pseudo-random x in (0, 10]
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..20 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let xv = (state >> 11) as f64 / (1u64 << 53) as f64 * 10.0 + 1e-3;
        let x = exact(xv);
        let z = hurwitz_zeta_real(&ApproxReal::from_int(0, prec), &x, &c).unwrap();
        let residual = &(&z + &x) - &ApproxReal::from_ratio(1, 2, prec);
        assert!(residual.mag_upper() < 1e-70, "x = {xv}");
    }
}

#[test]
fn hurwitz_matches_partial_sum() {
    // ζ(3) - Σ_{n≤10^4} n^-3 lies in [1/(2(N+1)^2), 1/(2N^2)]
    let c = ctx();
    let prec = c.working_bits();
    let n = 10_000u64;
    let mut partial = Float::new(prec);
    for k in 1..=n {
        partial += Float::with_val(prec, k).pow(-3i32);
    }
    let z3 = riemann_zeta(3, &c).unwrap();
    let tail = Float::with_val(prec, z3.value() - &partial).to_f64();
    assert!(tail > 0.5 / ((n + 1) * (n + 1)) as f64 * 0.999999);
    assert!(tail < 0.5 / (n * n) as f64 * 1.000001);
}

#[test]
fn hurwitz_pole_and_domain() {
    let c = ctx();
    let prec = c.working_bits();
    let one = ApproxReal::from_int(1, prec);
    assert!(matches!(hurwitz_zeta_real(&one, &one, &c), Err(Error::Pole(_))));
    assert!(matches!(
        hurwitz_zeta_real(&ApproxReal::from_int(2, prec), &exact(0.0), &c),
        Err(Error::Domain(_))
    ));
    assert!(matches!(hurwitz_zeta_sderiv0(&exact(-0.5), &c), Err(Error::Domain(_))));
}

#[test]
fn hurwitz_complex_conjugate_symmetry() {
    let c = ctx();
    let prec = c.working_bits();
    let s = ApproxComplex::exact(Complex::with_val(prec, (0.5, 14.0)));
    let x = exact(1.0);
    let a = hurwitz_zeta(&s, &x, &c).unwrap();
    let b = hurwitz_zeta(&s.conj(), &x, &c).unwrap();
    assert!(agreement_digits(&a.re, &b.re) >= 60.0);
    assert!(agreement_digits(&a.im, &(-&b.im)) >= 60.0);
}

#[test]
fn sderiv0_examples() {
    let c = ctx();
    let l2pi = log_2pi(&c);
    let half_l2pi = (-&l2pi).div_int(2);
    let at1 = hurwitz_zeta_sderiv0(&exact(1.0), &c).unwrap();
    assert!(agreement_digits(&at1, &half_l2pi) >= 70.0);
    let at2 = hurwitz_zeta_sderiv0(&exact(2.0), &c).unwrap();
    assert!(agreement_digits(&at2, &half_l2pi) >= 70.0);
    let at_half = hurwitz_zeta_sderiv0(&exact(0.5), &c).unwrap();
    let half_l2 = (-&c.ln2()).div_int(2);
    assert!(agreement_digits(&at_half, &half_l2) >= 70.0);
}

#[test]
fn lerch_identity_on_grid() {
    // exp(-ζ'(0,x)) Γ(x) / √(2π) = 1 with Γ from MPFR
    let c = ctx();
    let prec = c.working_bits();
    let sqrt_2pi = log_2pi(&c).div_int(2).exp();
    for x in [0.25, 0.5, 1.0, 1.5, 2.0, 3.75] {
        let d = hurwitz_zeta_sderiv0(&exact(x), &c).unwrap();
        let g = reference(Float::with_val(prec, x).gamma());
        let lhs = (-&d).exp() * &g;
        let lhs = lhs.checked_div(&sqrt_2pi).unwrap();
        let one = ApproxReal::from_int(1, prec);
        assert!(agreement_digits(&lhs, &one) >= 50.0, "x = {x}");
    }
}

#[test]
fn zeta_prime_points() {
    let c = ctx();
    let z0 = zeta_prime(0, &c).unwrap();
    let d1 = hurwitz_zeta_sderiv0(&exact(1.0), &c).unwrap();
    assert!(agreement_digits(&z0, &d1) >= 70.0);
    assert_eq!(to_decimal(&z0, 10).unwrap(), "-0.9189385332");

    let zm1 = zeta_prime(-1, &c).unwrap();
    // ζ'(-1) = 1/12 - ln A with A = 1.2824271...
    let approx = 1.0 / 12.0 - 1.2824271f64.ln();
    assert!((zm1.to_f64() - approx).abs() < 1e-7);

    assert!(matches!(zeta_prime(1, &c), Err(Error::UnsupportedPoint(1))));
    assert!(matches!(zeta_prime(3, &c), Err(Error::UnsupportedPoint(3))));
}

#[test]
fn glaisher_routes() {
    let c = ctx();
    let a1 = glaisher(&c).unwrap();
    let a2 = glaisher_via_zeta_prime_2(&c).unwrap();
    assert!(agreement_digits(&a1, &a2) >= 40.0);
    assert_eq!(to_decimal(&a1, 8).unwrap(), "1.2824271");
    assert!(a1.is_positive() && *a1.value() > 1);
}

#[test]
fn constant_tags_resolve() {
    let c = ctx();
    for tag in [ConstantTag::EulerGamma, ConstantTag::Glaisher, ConstantTag::Log2Pi, ConstantTag::Pi] {
        let v = tag.resolve(&c).unwrap();
        assert!(crate::mpcore::max_safe_digits(&v) >= c.certified_digits(), "{tag}");
        assert_eq!(tag.to_string().parse::<ConstantTag>().unwrap(), tag);
    }
}
