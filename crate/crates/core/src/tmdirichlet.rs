//! The Thue–Morse Dirichlet series
//!
//! ```text
//! g(s) = Σ_{n≥1} ε_n n^-s        f(s) = Σ_{n≥0} ε_n (n+1)^-s
//! ```
//!
//! and the constants derived from their derivatives at 0.
//!
//! For `Re(s) ≥ σ₀` both series are summed directly after pairing indices
//! `2n, 2n+1` (using `ε_2n = ε_n`, `ε_2n+1 = -ε_n`), which gives the tail bound
//! `|s| (2N)^-σ / σ`. To the left of `σ₀` they are continued with
//!
//! ```text
//! g(s) = -1 + Σ_{k≥1} (-1)^(k+1) C(s+k-1, k) 2^(-s-k) g(s+k)
//! f(s) =      Σ_{k≥1}            C(s+k-1, k) 2^(-s-k) f(s+k)
//! ```
//!
//! The second identity follows from splitting `n` by parity:
//! `f(s) = Σ ε_n (2n+1)^-s - 2^-s f(s)`, and
//! `(2n+1)^-s = 2^-s (n+1)^-s (1 - 1/(2n+2))^-s`; expanding the last factor
//! binomially, the `k = 0` term cancels `2^-s f(s)`.
//!
//! Each shift raises the real part by one, so the recursion ends in the
//! direct region. All values needed for one call lie on the lattice `s + ℕ`,
//! which is planned up front: direct points are summed in parallel, then the
//! remaining points are filled in from the top down.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use parking_lot::Mutex;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mpcore::{
    cabs_up, rad_add, rad_mul, rad_pow2, rad_pow2_f64, rad_up, rad_zero, ApproxComplex, ApproxReal,
    PrecisionContext, Rigor,
};
use crate::sequences::tm_sign;
use crate::specialfns::{euler_gamma, hurwitz_zeta};

/// Default threshold for the direct region.
pub const DEFAULT_SIGMA0: u32 = 16;

const CHUNK: u64 = 2048;
const CACHE_LIMIT: usize = 1 << 16;
/// Direct sums needing more pairs than this at `Re(s) = σ₀` are refused.
const MAX_DIRECT_PAIRS: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    /// `g(s) = Σ_{n≥1} ε_n n^-s`
    G,
    /// `f(s) = Σ_{n≥0} ε_n (n+1)^-s`
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    DirectPaired,
    FunctionalEquation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DirectPaired => "DirectPaired",
            Method::FunctionalEquation => "FunctionalEquation",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirichletOptions {
    /// Points with `Re(s) ≥ sigma0` are summed directly.
    pub sigma0: u32,
    /// Use the functional equation at the requested point even inside the
    /// direct region. Shifted points are unaffected.
    pub force_functional_equation: bool,
}

impl DirichletOptions {
    /// Defaults for `ctx`: `σ₀ = max(16, ⌈bits/16⌉)`, which keeps the paired
    /// direct sums near `2^16` pairs at any precision.
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        Self {
            sigma0: DEFAULT_SIGMA0.max(ctx.bits().div_ceil(16)),
            force_functional_equation: false,
        }
    }
}

impl Default for DirichletOptions {
    fn default() -> Self {
        Self {
            sigma0: DEFAULT_SIGMA0,
            force_functional_equation: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirichletEvaluation {
    pub s: ApproxComplex,
    pub value: ApproxComplex,
    pub method: Method,
    /// Pairs summed (direct) or functional-equation terms used.
    pub terms_used: u64,
    pub k_truncation: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct TMConstants {
    pub g_prime0: ApproxReal,
    pub q: ApproxReal,
    pub phi: ApproxReal,
    pub f_prime0: ApproxReal,
}

// ---------------------------------------------------------------------------
// cache

#[derive(Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    series: Series,
    wp: u32,
    target: i64,
    sigma0: u32,
    re: String,
    im: String,
}

#[derive(Clone)]
struct Point {
    value: Complex,
    radius: Float,
    method: Method,
    terms: u64,
    k: Option<u32>,
}

static CACHE_ON: AtomicBool = AtomicBool::new(true);

fn cache() -> &'static Mutex<HashMap<CacheKey, Point>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Point>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Turns the process-wide lattice cache on or off. Results do not depend on it.
pub fn set_cache_enabled(on: bool) {
    CACHE_ON.store(on, AtomicOrdering::SeqCst);
}

pub fn cache_enabled() -> bool {
    CACHE_ON.load(AtomicOrdering::SeqCst)
}

pub fn clear_cache() {
    cache().lock().clear();
}

// ---------------------------------------------------------------------------
// lattice evaluation

struct Lattice<'a> {
    series: Series,
    ctx: &'a PrecisionContext,
    opts: DirichletOptions,
    wp: u32,
    base: Complex,
    real: bool,
}

/// `base + m`, computed exactly.
fn shift_exact(base: &Complex, m: u64) -> Complex {
    shift_exact_signed(base, m as i64)
}

fn shift_exact_signed(base: &Complex, m: i64) -> Complex {
    let mut prec = base.real().prec().max(base.imag().prec()) + 72;
    loop {
        let (re, ord) = Float::with_val_round(prec, base.real() + m, rug::float::Round::Nearest);
        if ord == std::cmp::Ordering::Equal {
            let im = Float::with_val(prec, base.imag());
            return Complex::with_val(prec, (re, im));
        }
        prec *= 2;
    }
}

fn abs_f64(s: &Complex) -> f64 {
    s.real().to_f64().hypot(s.imag().to_f64())
}

/// Truncation order K for the functional equation at `s`, and log2 of the
/// bound on the omitted terms (`-inf` when they vanish).
///
/// `|C(s+k-1, k)| ≤ Π_{j<k} (|s|+j) / k!` and `|g(σ+k)|, |f(σ+k)| ≤ ζ(2) < 2`
/// once `σ + k ≥ 2`; successive majorants shrink by the ratio
/// `(|s|+k) / (2(k+1))`.
fn truncation(s: &Complex, target: f64) -> (u32, f64) {
    let a = abs_f64(s);
    let sigma = s.real().to_f64();
    if a == 0.0 {
        return (1, f64::NEG_INFINITY);
    }
    let kmin = ((2.0 - sigma).ceil().max(1.0)) as u32;
    // log2 of the majorant for term k
    let mut log_t = 0.0f64;
    let mut k = 0u32;
    loop {
        k += 1;
        log_t += (a + f64::from(k) - 1.0).log2() - f64::from(k).log2();
        if k < kmin {
            continue;
        }
        let kn = f64::from(k + 1);
        let ratio = ((a + kn - 1.0) / (2.0 * kn)).max(0.5);
        if ratio >= 0.95 {
            continue;
        }
        let next = log_t + (a + kn - 1.0).log2() - kn.log2();
        let tail = next + 1.0 - (sigma + kn) - (1.0 - ratio).log2();
        if tail <= target {
            return (k, tail);
        }
    }
}

/// Precision-independent encoding of an exact value.
fn exact_key(x: &Float) -> String {
    match x.to_integer_exp() {
        None => "0".into(),
        Some((mut m, mut e)) => {
            if let Some(tz) = m.find_one(0) {
                m >>= tz;
                e += tz as i32;
            }
            format!("{}p{}", m.to_string_radix(16), e)
        }
    }
}

impl<'a> Lattice<'a> {
    fn new(series: Series, ctx: &'a PrecisionContext, opts: DirichletOptions, base: Complex) -> Self {
        let real = base.imag().is_zero();
        Self {
            series,
            ctx,
            opts,
            wp: ctx.working_bits(),
            base,
            real,
        }
    }

    fn target(&self) -> f64 {
        self.ctx.tail_target_log2()
    }

    fn key(&self, s: &Complex) -> CacheKey {
        CacheKey {
            series: self.series,
            wp: self.wp,
            target: self.ctx.tail_target_log2() as i64,
            sigma0: self.opts.sigma0,
            re: exact_key(s.real()),
            im: exact_key(s.imag()),
        }
    }

    fn is_direct(&self, s: &Complex) -> bool {
        *s.real() >= self.opts.sigma0
    }

    fn cached(&self, s: &Complex) -> Option<Point> {
        if !cache_enabled() {
            return None;
        }
        cache().lock().get(&self.key(s)).cloned()
    }

    fn store(&self, s: &Complex, p: &Point) {
        if !cache_enabled() {
            return;
        }
        let mut c = cache().lock();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(self.key(s), p.clone());
    }

    /// Values at `base + m` for each `m` in `tops`.
    fn run(&self, tops: &[u64]) -> BTreeMap<u64, Point> {
        let force_top = self.opts.force_functional_equation;
        let mut known: BTreeMap<u64, Point> = BTreeMap::new();
        let mut direct: Vec<u64> = Vec::new();
        let mut fe: BTreeMap<u64, (u32, f64)> = BTreeMap::new();
        let mut stack: Vec<u64> = tops.to_vec();
        let mut seen = std::collections::BTreeSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m) {
                continue;
            }
            let s = shift_exact(&self.base, m);
            let forced = force_top && m == 0;
            if !forced {
                if let Some(p) = self.cached(&s) {
                    known.insert(m, p);
                    continue;
                }
            }
            if self.is_direct(&s) && !forced {
                direct.push(m);
            } else {
                let (k, tail) = truncation(&s, self.target());
                fe.insert(m, (k, tail));
                stack.extend((1..=u64::from(k)).map(|j| m + j));
            }
        }

        direct.sort_unstable();
        let computed = match direct.first() {
            None => Vec::new(),
            Some(&first) => {
                let s = shift_exact(&self.base, first);
                let j0 = anchor_offset(&s, self.opts.sigma0);
                let anchor = shift_exact_signed(&s, -(j0 as i64));
                let js: Vec<u64> = direct.iter().map(|&m| m - first + j0).collect();
                direct_block(self.series, &anchor, &js, self.wp, self.target())
            }
        };
        for (m, p) in direct.into_iter().zip(computed) {
            self.store(&shift_exact(&self.base, m), &p);
            known.insert(m, p);
        }

        for (&m, &(k, tail)) in fe.iter().rev() {
            let s = shift_exact(&self.base, m);
            let p = self.combine(&s, m, k, tail, &known);
            if !(force_top && m == 0) {
                self.store(&s, &p);
            }
            known.insert(m, p);
        }
        known
    }

    fn combine(&self, s: &Complex, m: u64, k_max: u32, tail: f64, known: &BTreeMap<u64, Point>) -> Point {
        let wp = self.wp;
        let ln2 = Float::with_val(wp, rug::float::Constant::Log2);
        // 2^-s
        let p = if self.real && s.real().is_integer() && s.real().to_f64().abs() < 1e9 {
            let e = s.real().to_f64() as i32;
            Complex::with_val(wp, Float::with_val(wp, 1) >> e)
        } else {
            let mut z = Complex::with_val(wp, s * &ln2);
            z = -z;
            z.exp()
        };
        let mut value = match self.series {
            Series::G => Complex::with_val(wp, -1),
            Series::F => Complex::new(wp),
        };
        let mut radius = rad_zero();
        let mut slack = rad_zero();
        let mut c = Complex::with_val(wp, 1);
        for k in 1..=k_max {
            let sk = Complex::with_val(wp, s + (k - 1));
            c *= &sk;
            c /= k;
            let coef = Complex::with_val(wp, &c * &p) >> k;
            let coef_abs = cabs_up(&coef);
            let pt = &known[&(m + u64::from(k))];
            let mut term = Complex::with_val(wp, &coef * &pt.value);
            if self.series == Series::G && k % 2 == 0 {
                term = -term;
            }
            let r = rad_mul(&coef_abs, &pt.radius);
            radius = rad_add(&radius, &rad_add(&r, &(r.clone() >> 40)));
            slack = rad_add(&slack, &rad_mul(&cabs_up(&term), &rad_up(4 * k + 16)));
            value += term;
        }
        let slack = slack >> (wp as i32 - 1);
        let mut radius = rad_add(&radius, &slack);
        if tail.is_finite() {
            radius = rad_add(&radius, &rad_pow2_f64(tail));
        }
        Point {
            value,
            radius,
            method: Method::FunctionalEquation,
            terms: u64::from(k_max),
            k: Some(k_max),
        }
    }
}

/// Pairs needed for the direct tail bound `|s| (2N)^-σ / σ` to reach `target`.
fn direct_pairs(s: &Complex, target: f64) -> u64 {
    let sigma = s.real().to_f64();
    let a = abs_f64(s);
    let need = ((a / sigma).log2() - target) / sigma;
    let two_n = need.exp2().ceil();
    ((two_n / 2.0).ceil() as u64).max(1)
}

/// Offset `j` of a direct point from its anchor: `floor(Re(s) - σ₀)`.
fn anchor_offset(s: &Complex, sigma0: u32) -> u64 {
    let d = Float::with_val(s.real().prec() + 40, s.real() - sigma0).floor();
    d.to_f64() as u64
}

/// `p^-anchor` at working precision.
fn anchor_power(p: u64, anchor: &Complex, real: bool, wp: u32) -> Complex {
    let x = anchor.real();
    if real && x.is_integer() && *x > 0 && *x <= u32::MAX {
        let e = x.to_u32_saturating().expect("in range");
        return Complex::with_val(wp, Float::with_val(wp, p).pow(e).recip());
    }
    let l = Float::with_val(wp, p).ln();
    if real {
        let v = (-Float::with_val(wp, x * &l)).exp();
        Complex::with_val(wp, v)
    } else {
        let mut t = Complex::with_val(wp, anchor * &l);
        t = -t;
        t.exp()
    }
}

/// `a^-anchor` for `0 < a ≤ amax` (index 0 unused).
///
/// The map is completely multiplicative, so only primes are exponentiated;
/// a composite `a` is `spf(a)^-anchor · (a/spf(a))^-anchor`.
fn power_table(anchor: &Complex, amax: u64, real: bool, wp: u32) -> Vec<Complex> {
    let len = amax as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes = Vec::new();
    for i in 2..len {
        if spf[i] == 0 {
            primes.push(i as u64);
            let mut j = i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let prime_powers = exec::map_items(Execution::current(), primes, |p| {
        (p, anchor_power(p, anchor, real, wp))
    });
    let mut table: Vec<Complex> = Vec::with_capacity(len);
    table.push(Complex::new(wp));
    if len > 1 {
        table.push(Complex::with_val(wp, 1));
    }
    let mut next_prime = prime_powers.into_iter().peekable();
    for a in 2..len {
        if spf[a] as usize == a {
            let (p, v) = next_prime.next().expect("sieve and prime list agree");
            debug_assert_eq!(p as usize, a);
            table.push(v);
        } else {
            let q = spf[a] as usize;
            let v = if real {
                Complex::with_val(wp, table[q].real() * table[a / q].real())
            } else {
                Complex::with_val(wp, &table[q] * &table[a / q])
            };
            table.push(v);
        }
    }
    table
}

/// Direct paired sums at the points `anchor + j` for the sorted offsets `js`.
///
/// Every base `a` is raised to `-anchor` once and then stepped through the
/// lattice by repeated multiplication with `1/a`. The chain for a given `a`
/// is the same whichever offsets are requested, so each point's value
/// depends only on the point.
fn direct_block(series: Series, anchor: &Complex, js: &[u64], wp: u32, target: f64) -> Vec<Point> {
    if js.is_empty() {
        return Vec::new();
    }
    let real = anchor.imag().is_zero();
    let points: Vec<Complex> = js.iter().map(|&j| shift_exact(anchor, j)).collect();
    let pairs: Vec<u64> = points.iter().map(|s| direct_pairs(s, target)).collect();
    // longest remaining pair count from each position on
    let mut suffix_max = pairs.clone();
    for i in (0..suffix_max.len().saturating_sub(1)).rev() {
        suffix_max[i] = suffix_max[i].max(suffix_max[i + 1]);
    }
    // G pairs (2n, 2n+1) for n ≥ 1; F pairs (2n+1, 2n+2) for n ≥ 0
    let (lo, offset) = match series {
        Series::G => (1u64, 0u64),
        Series::F => (0u64, 1u64),
    };
    let hi = suffix_max[0].max(lo);
    let table = power_table(anchor, 2 * hi + offset + 1, real, wp);
    let parts = exec::map_chunks(Execution::current(), lo..hi, CHUNK, |r| {
        let mut acc: Vec<Complex> = vec![Complex::new(wp); js.len()];
        for n in r {
            let a = 2 * n + offset;
            let mut za = table[a as usize].clone();
            let mut zb = table[a as usize + 1].clone();
            let ra = Float::with_val(wp, a).recip();
            let rb = Float::with_val(wp, a + 1).recip();
            let plus = tm_sign(n) > 0;
            let mut at = 0u64;
            for (i, &j) in js.iter().enumerate() {
                if suffix_max[i] <= n {
                    break;
                }
                while at < j {
                    za *= &ra;
                    zb *= &rb;
                    at += 1;
                }
                if pairs[i] > n {
                    let d = Complex::with_val(wp, &za - &zb);
                    if plus {
                        acc[i] += d;
                    } else {
                        acc[i] -= d;
                    }
                }
            }
        }
        acc
    });
    let chunks = parts.len() as u64;
    let mut sums: Vec<Complex> = vec![
        match series {
            Series::G => Complex::with_val(wp, -1),
            Series::F => Complex::new(wp),
        };
        js.len()
    ];
    for part in parts {
        for (s, p) in sums.iter_mut().zip(part) {
            *s += p;
        }
    }
    let anchor_abs = abs_f64(anchor);
    sums.into_iter()
        .zip(points.iter().zip(js.iter().zip(pairs.iter())))
        .map(|(value, (s, (&j, &n_pairs)))| {
            // Σ |terms| ≤ 1 + ζ(σ) < 3 for σ ≥ 2; a table entry carries at most
            // log2(a) prime factors, each from one log and one exp
            let a_max = (2 * n_pairs + 2) as f64;
            let factors = a_max.log2();
            let ops = anchor_abs * (a_max.ln() + factors) + 10.0 * factors
                + 8.0
                + 3.0 * j as f64
                + (CHUNK + chunks) as f64;
            let slack = rad_up(3.0 * ops) >> (wp as i32 - 1);
            let sigma = s.real().to_f64();
            let tail = (abs_f64(s) / sigma).log2() - sigma * ((2 * n_pairs) as f64).log2();
            Point {
                value,
                radius: rad_add(&rad_pow2_f64(tail), &slack),
                method: Method::DirectPaired,
                terms: n_pairs,
                k: None,
            }
        })
        .collect()
}

/// Direct sum at a single point with `Re(s) ≥ sigma0`.
fn direct_sum(series: Series, s: &Complex, sigma0: u32, wp: u32, target: f64) -> Point {
    let j = anchor_offset(s, sigma0);
    let anchor = shift_exact_signed(s, -(j as i64));
    direct_block(series, &anchor, &[j], wp, target).pop().expect("one point")
}

// ---------------------------------------------------------------------------
// public entry points

fn exact_point(s: &ApproxComplex) -> Result<Complex> {
    if !s.disc_radius().is_zero() {
        return Err(Error::Domain("series arguments must be exact points".into()));
    }
    Ok(s.midpoint())
}

fn to_evaluation(s: &ApproxComplex, p: Point, real: bool, prec: u32) -> DirichletEvaluation {
    let value = if real {
        let re = ApproxReal::new(p.value.real().clone(), p.radius, Rigor::Rigorous);
        ApproxComplex::new(re, ApproxReal::exact(Float::new(prec)))
    } else {
        ApproxComplex::from_disc(p.value, p.radius, Rigor::Rigorous)
    };
    DirichletEvaluation {
        s: s.clone(),
        value,
        method: p.method,
        terms_used: p.terms,
        k_truncation: p.k,
    }
}

/// Evaluates `series` at `s` with explicit options.
pub fn evaluate(series: Series, s: &ApproxComplex, ctx: &PrecisionContext, opts: DirichletOptions) -> Result<DirichletEvaluation> {
    check_sigma0(opts.sigma0, ctx)?;
    let base = exact_point(s)?;
    let lattice = Lattice::new(series, ctx, opts, base);
    let mut out = lattice.run(&[0]);
    let p = out.remove(&0).expect("requested point evaluated");
    Ok(to_evaluation(s, p, lattice.real, ctx.working_bits()))
}

fn check_sigma0(sigma0: u32, ctx: &PrecisionContext) -> Result<()> {
    if sigma0 < 2 {
        return Err(Error::InvalidContext("sigma0 must be at least 2".into()));
    }
    let pairs = direct_pairs(&Complex::with_val(64, sigma0), ctx.tail_target_log2());
    if pairs > MAX_DIRECT_PAIRS {
        return Err(Error::InvalidContext(format!(
            "sigma0 = {sigma0} needs {pairs} direct pairs at {} bits",
            ctx.bits()
        )));
    }
    Ok(())
}

fn direct_only(series: Series, s: &ApproxComplex, ctx: &PrecisionContext) -> Result<DirichletEvaluation> {
    let sigma0 = DirichletOptions::for_context(ctx).sigma0;
    let base = exact_point(s)?;
    if *base.real() < sigma0 {
        return Err(Error::Domain(format!(
            "direct summation needs Re(s) ≥ {sigma0}, got {}",
            base.real().to_f64()
        )));
    }
    let p = direct_sum(series, &base, sigma0, ctx.working_bits(), ctx.tail_target_log2());
    Ok(to_evaluation(s, p, base.imag().is_zero(), ctx.working_bits()))
}

/// Paired direct sum for `g`; requires `Re(s) ≥ σ₀`.
pub fn g_direct(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<DirichletEvaluation> {
    direct_only(Series::G, s, ctx)
}

/// Paired direct sum for `f`; requires `Re(s) ≥ σ₀`.
pub fn f_direct(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<DirichletEvaluation> {
    direct_only(Series::F, s, ctx)
}

/// `g(s)` anywhere in the complex plane.
pub fn g(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<DirichletEvaluation> {
    evaluate(Series::G, s, ctx, DirichletOptions::for_context(ctx))
}

/// `f(s)` anywhere in the complex plane.
pub fn f(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<DirichletEvaluation> {
    evaluate(Series::F, s, ctx, DirichletOptions::for_context(ctx))
}

/// `Σ_{k≥1} sign(k) h(k) / (k 2^k)` with `h(k)` on the lattice `1 + ℕ`.
///
/// `|h(k)| < 2` for `k ≥ 2`, so the terms past `K` sum to at most
/// `2^(2-K) / (K+1)`.
fn derivative_series(series: Series, ctx: &PrecisionContext) -> ApproxReal {
    let wp = ctx.working_bits();
    let target = ctx.tail_target_log2();
    let k_max = (2u32..)
        .find(|&k| 2.0 - f64::from(k) - f64::from(k + 1).log2() <= target)
        .expect("geometric decay");
    let lattice = Lattice::new(series, ctx, DirichletOptions::for_context(ctx), Complex::with_val(wp, 1));
    let tops: Vec<u64> = (0..u64::from(k_max)).collect();
    let values = lattice.run(&tops);

    let mut sum = Float::new(wp);
    let mut radius = rad_zero();
    let mut abs = rad_zero();
    for k in 1..=k_max {
        let p = &values[&u64::from(k - 1)];
        let mut t = Float::with_val(wp, p.value.real() / k) >> k;
        if series == Series::G && k % 2 == 0 {
            t = -t;
        }
        abs = rad_add(&abs, &rad_up(t.abs_ref()));
        radius = rad_add(&radius, &(rad_up(&p.radius / k) >> k));
        sum += t;
    }
    let tail = rad_pow2(2 - i64::from(k_max));
    let slack = rad_mul(&abs, &rad_up(k_max + 8)) >> (wp as i32 - 1);
    let radius = rad_add(&rad_add(&radius, &tail), &slack);
    ApproxReal::new(sum, radius, Rigor::Rigorous)
}

/// `g'(0) = Σ_{k≥1} (-1)^(k+1) g(k) / (k 2^k)`, which equals `-log Q`.
pub fn g_prime0(ctx: &PrecisionContext) -> Result<ApproxReal> {
    Ok(derivative_series(Series::G, ctx))
}

/// `f'(0) = Σ_{k≥1} f(k) / (k 2^k)`.
pub fn f_prime0(ctx: &PrecisionContext) -> Result<ApproxReal> {
    Ok(derivative_series(Series::F, ctx))
}

/// `Q = Π_{n≥1} (2n/(2n+1))^ε_n = exp(-g'(0))`.
pub fn q_constant(ctx: &PrecisionContext) -> Result<ApproxReal> {
    Ok((-g_prime0(ctx)?).exp())
}

/// The Flajolet–Martin constant `φ = 2^(-1/2) e^γ / Q`.
pub fn fm_phi(ctx: &PrecisionContext) -> Result<ApproxReal> {
    phi_from(&g_prime0(ctx)?, ctx)
}

fn phi_from(g0: &ApproxReal, ctx: &PrecisionContext) -> Result<ApproxReal> {
    // log φ = -½ log 2 + γ + g'(0)
    let log_phi = &(&euler_gamma(ctx) + g0) - &ctx.ln2().div_int(2);
    Ok(log_phi.exp())
}

pub fn tm_constants(ctx: &PrecisionContext) -> Result<TMConstants> {
    let g_prime0 = g_prime0(ctx)?;
    let q = (-&g_prime0).exp();
    let phi = phi_from(&g_prime0, ctx)?;
    let f_prime0 = f_prime0(ctx)?;
    Ok(TMConstants {
        g_prime0,
        q,
        phi,
        f_prime0,
    })
}

fn half_zeta_pm_g(s: &ApproxComplex, ctx: &PrecisionContext, sign: i64) -> Result<ApproxComplex> {
    let prec = ctx.working_bits();
    let z = hurwitz_zeta(s, &ApproxReal::from_int(1, prec), ctx)?;
    let gv = g(s, ctx)?.value;
    let (re, im) = if sign < 0 {
        (&z.re - &gv.re, &z.im - &gv.im)
    } else {
        (&z.re + &gv.re, &z.im + &gv.im)
    };
    Ok(ApproxComplex::new(re.div_int(2), im.div_int(2)))
}

/// `ζ_O(s) = Σ_{n odious} n^-s = ½ ζ(s) - ½ g(s)`.
pub fn zeta_odious(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<ApproxComplex> {
    half_zeta_pm_g(s, ctx, -1)
}

/// `ζ_E(s) = Σ_{n evil} n^-s = ½ ζ(s) + ½ g(s)`.
pub fn zeta_evil(s: &ApproxComplex, ctx: &PrecisionContext) -> Result<ApproxComplex> {
    half_zeta_pm_g(s, ctx, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_at_zero_is_trivial() {
        let s = Complex::with_val(64, 0);
        assert_eq!(truncation(&s, -260.0), (1, f64::NEG_INFINITY));
    }

    #[test]
    fn truncation_reaches_target() {
        let s = Complex::with_val(64, (3.5, 2.0));
        let (k, tail) = truncation(&s, -200.0);
        assert!(tail <= -200.0);
        assert!(k > 150 && k < 400, "k = {k}");
    }

    #[test]
    fn shift_is_exact_for_tiny_real_parts() {
        let base = Complex::with_val(53, (Float::with_val(53, 1e-300), 0.0));
        let s = shift_exact(&base, 7);
        let back = Float::with_val(s.real().prec(), s.real() - 7u32);
        assert_eq!(back, *base.real());
    }

    #[test]
    fn direct_pairs_meets_tail() {
        let s = Complex::with_val(64, 16);
        let n = direct_pairs(&s, -260.0);
        let tail = (1.0f64).log2() - 16.0 * ((2 * n) as f64).log2();
        assert!(tail <= -260.0);
        assert!(n < 200_000);
    }
}
