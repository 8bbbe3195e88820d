//! Brute-force estimators used to cross-check the fast routes.
//!
//! Everything here runs in `f64` with compensated summation over fixed
//! chunks, so results do not depend on the thread count. Error estimates are
//! heuristic: they come from the last three decades of partial sums (an
//! Aitken step and the decade-to-decade change), doubled.

use std::ops::Range;

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mpcore::{ApproxComplex, ApproxReal, PrecisionContext, Rigor};
use crate::sequences::{tm_sign, ParityClass};
use crate::specialfns::euler_gamma_harmonic;

/// Default term count, overridable by callers.
pub const DEFAULT_ORACLE_N: u64 = 10_000_000;

const CHUNK: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct OracleEstimate {
    /// Heuristic ball whose radius is `error_estimate` plus float round-off.
    pub value: ApproxReal,
    pub terms: u64,
    pub error_estimate: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirichletKind {
    G,
    F,
    ZetaOdious,
}

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Debug, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: Compensated) {
        self.add(other.sum);
        self.add(other.comp);
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn range_sum<F>(range: Range<u64>, term: F) -> f64
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    let parts = exec::map_chunks(Execution::current(), range, CHUNK, |r| {
        let mut c = Compensated::default();
        for n in r {
            c.add(term(n));
        }
        c
    });
    let mut total = Compensated::default();
    for p in parts {
        total.merge(p);
    }
    total.total()
}

/// Partial sums over `start..=n/100`, `..=n/10`, `..=n` and the resulting
/// heuristic error estimate for the last one.
fn decade_estimate<F>(start: u64, n: u64, term: F) -> (f64, f64)
where
    F: Fn(u64) -> f64 + Sync + Send + Copy,
{
    let a = n / 100;
    let b = n / 10;
    let s_a = range_sum(start..a + 1, term);
    let s_b = s_a + range_sum(a + 1..b + 1, term);
    let s_c = s_b + range_sum(b + 1..n + 1, term);
    let d1 = s_b - s_a;
    let d2 = s_c - s_b;
    let denom = d2 - d1;
    let aitken = if denom != 0.0 { s_c - d2 * d2 / denom } else { s_c };
    let est = (aitken - s_c).abs().max(d2.abs() / 9.0);
    (s_c, 2.0 * est.max(f64::EPSILON * s_c.abs()))
}

fn heuristic_ball(v: f64, err: f64, prec: u32) -> ApproxReal {
    // round-off of a compensated sum stays within a few ulps of the total
    let roundoff = 8.0 * f64::EPSILON * v.abs().max(1.0);
    let value = Float::with_val(prec, v);
    ApproxReal::new(value, Float::with_val(64, err + roundoff), Rigor::Heuristic)
}

fn check_n(n: u64) -> Result<()> {
    if n < 1000 {
        return Err(Error::Domain(format!("oracles need at least 1000 terms, got {n}")));
    }
    Ok(())
}

/// `log(4n(4n+3) / ((4n+1)(4n+2))) = log1p(-2 / ((4n+1)(4n+2)))`
fn paired_log_term(n: u64) -> f64 {
    let m = n as f64;
    let t = -2.0 / ((4.0 * m + 1.0) * (4.0 * m + 2.0));
    f64::from(tm_sign(n)) * t.ln_1p()
}

/// `log Q = log(3/2) + Σ_{n≥1} ε_n log(4n(4n+3) / ((4n+1)(4n+2)))`, summed
/// to `n` pairs and exponentiated.
pub fn q_product_oracle(n: u64, ctx: &PrecisionContext) -> Result<OracleEstimate> {
    check_n(n)?;
    let (log_sum, err) = decade_estimate(1, n, paired_log_term);
    let log_q = 1.5f64.ln() + log_sum;
    let q = log_q.exp();
    Ok(OracleEstimate {
        value: heuristic_ball(q, q * err, ctx.working_bits()),
        terms: n,
        error_estimate: q * err,
    })
}

/// `φ = 2^(-1/2) e^γ (2/3) Π_{n≥1} ((4n+1)(4n+2) / (4n(4n+3)))^ε_n`
/// truncated at `n`, with γ from the harmonic-number expansion.
pub fn phi_product_oracle(n: u64, ctx: &PrecisionContext) -> Result<OracleEstimate> {
    check_n(n)?;
    let (log_sum, err) = decade_estimate(1, n, paired_log_term);
    let gamma = euler_gamma_harmonic(ctx).to_f64();
    let log_phi = -0.5 * std::f64::consts::LN_2 + gamma + (2.0f64 / 3.0).ln() - log_sum;
    let phi = log_phi.exp();
    Ok(OracleEstimate {
        value: heuristic_ball(phi, phi * err, ctx.working_bits()),
        terms: n,
        error_estimate: phi * err,
    })
}

/// Partial sums of the Thue–Morse series at real `s`.
///
/// Unpaired sums need `s > 1`; pairing indices `2n, 2n+1` (allowed for `g`
/// and `f` only) extends this to `s > 0`.
pub fn dirichlet_partial(
    kind: DirichletKind,
    s: &ApproxComplex,
    n: u64,
    paired: bool,
    ctx: &PrecisionContext,
) -> Result<OracleEstimate> {
    if !s.im.value().is_zero() {
        return Err(Error::Domain("oracle partial sums take real s".into()));
    }
    if n < 100 {
        return Err(Error::Domain(format!("partial sums need at least 100 terms, got {n}")));
    }
    let sv = s.re.to_f64();
    if paired && kind == DirichletKind::ZetaOdious {
        return Err(Error::Domain("pairing applies to g and f only".into()));
    }
    if (paired && sv <= 0.0) || (!paired && sv <= 1.0) {
        return Err(Error::Domain(format!("s = {sv} is outside the convergence region")));
    }
    let pw = |a: u64| (a as f64).powf(-sv);
    let (v, err) = match (kind, paired) {
        (DirichletKind::G, false) => decade_estimate(1, n, move |k| f64::from(tm_sign(k)) * pw(k)),
        (DirichletKind::G, true) => {
            let (v, e) = decade_estimate(1, n, move |k| f64::from(tm_sign(k)) * (pw(2 * k) - pw(2 * k + 1)));
            (v - 1.0, e)
        }
        (DirichletKind::F, false) => decade_estimate(1, n, move |k| f64::from(tm_sign(k - 1)) * pw(k)),
        (DirichletKind::F, true) => {
            let (v, e) = decade_estimate(1, n, move |k| f64::from(tm_sign(k)) * (pw(2 * k + 1) - pw(2 * k + 2)));
            (v + 1.0 - 2f64.powf(-sv), e)
        }
        (DirichletKind::ZetaOdious, _) => decade_estimate(1, n, move |k| {
            if ParityClass::Odious.contains(k) {
                pw(k)
            } else {
                0.0
            }
        }),
    };
    Ok(OracleEstimate {
        value: heuristic_ball(v, err, ctx.working_bits()),
        terms: n,
        error_estimate: err,
    })
}

/// Exact product of the first `n` members of a parity class.
pub fn parity_head_product(class: ParityClass, n: u64) -> Integer {
    class.members().take(n as usize).fold(Integer::from(1), |acc, m| acc * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut c = Compensated::default();
        for x in [1e16, 1.0, -1e16, 1.0] {
            c.add(x);
        }
        assert_eq!(c.total(), 2.0);
    }

    #[test]
    fn chunk_boundaries_do_not_matter() {
        let a = range_sum(1..200_001, |k| 1.0 / (k as f64 * k as f64));
        let mut c = Compensated::default();
        for k in 1..200_001u64 {
            c.add(1.0 / (k as f64 * k as f64));
        }
        assert!((a - c.total()).abs() < 1e-15);
    }

    #[test]
    fn short_oracles_are_rejected() {
        let ctx = PrecisionContext::default();
        assert!(q_product_oracle(10, &ctx).is_err());
        let s = ApproxComplex::real(ApproxReal::from_int(1, 64));
        assert!(dirichlet_partial(DirichletKind::G, &s, 1000, false, &ctx).is_err());
        assert!(dirichlet_partial(DirichletKind::ZetaOdious, &s, 1000, true, &ctx).is_err());
    }

    #[test]
    fn head_products() {
        assert_eq!(parity_head_product(ParityClass::Odious, 5), 448);
        assert_eq!(parity_head_product(ParityClass::Evil, 3), 3 * 5 * 6);
    }
}
