//! Even-index Bernoulli numbers, exact.
//!
//! Built from tangent numbers with the integer recurrence of Brent and
//! Harvey, then `B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))`.

use parking_lot::Mutex;
use rug::{Float, Integer, Rational};

static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn tangent_numbers(n: usize) -> Vec<Integer> {
    // t[k] holds T_k for k in 1..=n; t[0] unused
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    t
}

fn build(n: usize) -> Vec<Rational> {
    let t = tangent_numbers(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = Integer::from(Integer::u_pow_u(4, k as u32));
        let den = Integer::from(&four_k - 1u32) * four_k;
        let num = Integer::from(tk * (2 * k as u64));
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}

/// `B_{2k}` for `k >= 0`.
pub fn bernoulli_even(k: usize) -> Rational {
    let mut table = TABLE.lock();
    if table.len() <= k {
        let want = (k + 1).max(2 * table.len()).max(64);
        *table = build(want);
    }
    table[k].clone()
}

/// `B_{2j} / (2j)!` for `j = 1..=m`, rounded to `prec` bits.
pub fn em_coefficients(m: usize, prec: u32) -> Vec<Float> {
    let mut out = Vec::with_capacity(m);
    let mut fact = Integer::from(1);
    for j in 1..=m {
        fact *= (2 * j - 1) as u64;
        fact *= (2 * j) as u64;
        let c = bernoulli_even(j) / Rational::from(&fact);
        out.push(Float::with_val(prec, &c));
    }
    out
}

/// Upper bound on `log2 |B_{2k}|` from `|B_2k| <= 2 ζ(2) (2k)! / (2π)^(2k)`.
pub fn log2_abs_bound(k: usize) -> f64 {
    let n = 2 * k;
    let log2_fact: f64 = (2..=n).map(|i| (i as f64).log2()).sum();
    (2.0 * 1.6449340668482264f64).log2() + log2_fact
        - n as f64 * (2.0 * std::f64::consts::PI).log2()
        + 1e-9 * n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let expected = [(1, 1, 6), (2, -1, 30), (3, 1, 42), (4, -1, 30), (5, 5, 66), (6, -691, 2730)];
        for (k, n, d) in expected {
            assert_eq!(bernoulli_even(k), Rational::from((n, d)), "B_{}", 2 * k);
        }
        assert_eq!(bernoulli_even(0), Rational::from(1));
    }

    #[test]
    fn matches_classical_recurrence() {
        // sum_{k=0}^{m-1} C(m+1, k) B_k = -(m+1) B_m
        let m_max = 40;
        let mut b: Vec<Rational> = vec![Rational::from(1)];
        for m in 1..=m_max {
            let mut acc = Rational::new();
            let mut binom = Integer::from(1);
            for (k, bk) in b.iter().enumerate() {
                acc += Rational::from(bk * &binom);
                binom *= (m + 1 - k) as u64;
                binom /= (k + 1) as u64;
            }
            b.push(-acc / Rational::from(m as u64 + 1));
        }
        for k in 1..=m_max / 2 {
            assert_eq!(bernoulli_even(k), b[2 * k]);
        }
    }

    #[test]
    fn growth_bound_holds() {
        for k in [1usize, 5, 20, 60] {
            let b = Float::with_val(128, &bernoulli_even(k)).abs();
            assert!(b.log2().to_f64() <= log2_abs_bound(k));
        }
    }
}
