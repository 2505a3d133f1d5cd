//! Explicit constants and inequalities: Bell numbers, falling factorials, the
//! injection-sum estimate, entry-moment bounds and the concentration bounds
//! for alternating products. Formulas are evaluated in exact arithmetic and
//! only converted to `f64` for reporting.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::TRACE_TOL;

pub const BELL_CAP: usize = 30;
pub const INJECTION_ARITY_CAP: usize = 6;
pub const INJECTION_DIM_CAP: usize = 9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("Bell number requested for m = {0}, cap is {BELL_CAP}")]
    BellCapExceeded(usize),
    #[error("falling factorial P({k}, {d}) needs d <= k")]
    DepthExceedsDimension { k: usize, d: usize },
    #[error("injection sum with {functions} functions at k = {k} exceeds the enumeration cap")]
    InjectionCapExceeded { functions: usize, k: usize },
    #[error("function has length {found}, expected k = {expected}")]
    FunctionLength { expected: usize, found: usize },
    #[error("zero-sum function {index} sums to {residual:e}")]
    NotZeroSum { index: usize, residual: f64 },
    #[error("{name} must be a positive finite number")]
    NotPositive { name: &'static str },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("expected {expected} norms, got {found}")]
    NormCount { expected: usize, found: usize },
}

/// `B(m)` from the Bell triangle.
pub fn bell(m: usize) -> Result<BigUint, BoundsError> {
    if m > BELL_CAP {
        return Err(BoundsError::BellCapExceeded(m));
    }
    Ok(bell_triangle(m).pop().expect("row 0 always present"))
}

/// `B(0), ..., B(m)`: each row starts with the last entry of the previous one
/// and every further entry adds its left neighbour to the entry above it.
pub fn bell_triangle(m: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("nonempty row").clone());
        for above in &row {
            let v = next.last().expect("seeded") + above;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Every set partition of `{0, .., m-1}` as a restricted growth string.
pub fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, m: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            extend(prefix, max.max(b), m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(m), 0, m, &mut out);
    out
}

/// `P(k, d) = k (k-1) ... (k-d+1)`.
pub fn falling_factorial(k: usize, d: usize) -> Result<BigUint, BoundsError> {
    if d > k {
        return Err(BoundsError::DepthExceedsDimension { k, d });
    }
    Ok((k - d + 1..=k).fold(BigUint::one(), |acc, x| acc * BigUint::from(x)))
}

/// Zero-sum functions `F` and unconstrained functions `G` on `{1..k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InjectionInstance {
    k: usize,
    zero_sum: Vec<Vec<Complex64>>,
    free: Vec<Vec<Complex64>>,
}

impl InjectionInstance {
    pub fn new(k: usize, zero_sum: Vec<Vec<Complex64>>, free: Vec<Vec<Complex64>>) -> Result<Self, BoundsError> {
        for f in zero_sum.iter().chain(&free) {
            if f.len() != k {
                return Err(BoundsError::FunctionLength { expected: k, found: f.len() });
            }
        }
        for (index, f) in zero_sum.iter().enumerate() {
            let residual = f.iter().sum::<Complex64>().norm();
            if residual > TRACE_TOL {
                return Err(BoundsError::NotZeroSum { index, residual });
            }
        }
        Ok(Self { k, zero_sum, free })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of zero-sum functions.
    pub fn n(&self) -> usize {
        self.zero_sum.len()
    }

    /// Number of unconstrained functions.
    pub fn m(&self) -> usize {
        self.free.len()
    }

    /// Sup norms, zero-sum functions first.
    pub fn norms(&self) -> Vec<f64> {
        self.zero_sum
            .iter()
            .chain(&self.free)
            .map(|f| f.iter().map(|z| z.norm()).fold(0.0, f64::max))
            .collect()
    }
}

/// Sum over injections `s` of `F ∪ G` into `{1..k}` of `prod f_i(s(i)) prod g_j(s(j))`.
pub fn brute_injection_sum(inst: &InjectionInstance) -> Result<Complex64, BoundsError> {
    let functions: Vec<&Vec<Complex64>> = inst.zero_sum.iter().chain(&inst.free).collect();
    if functions.len() > INJECTION_ARITY_CAP || inst.k > INJECTION_DIM_CAP {
        return Err(BoundsError::InjectionCapExceeded { functions: functions.len(), k: inst.k });
    }
    fn walk(depth: usize, fs: &[&Vec<Complex64>], used: &mut [bool], acc: Complex64, total: &mut Complex64) {
        if depth == fs.len() {
            *total += acc;
            return;
        }
        for a in 0..used.len() {
            if !used[a] {
                used[a] = true;
                walk(depth + 1, fs, used, acc * fs[depth][a], total);
                used[a] = false;
            }
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    walk(0, &functions, &mut vec![false; inst.k], Complex64::new(1.0, 0.0), &mut total);
    Ok(total)
}

/// `k^{m + n/2} (n + m)^n prod norms`, with `(n + m)^0 = 1`.
pub fn injection_sum_bound(n: usize, m: usize, k: usize, norms: &[f64]) -> Result<f64, BoundsError> {
    if norms.len() != n + m {
        return Err(BoundsError::NormCount { expected: n + m, found: norms.len() });
    }
    let kf = k as f64;
    let power = kf.powi(m as i32) * kf.sqrt().powi(n as i32);
    Ok(power * ((n + m) as f64).powi(n as i32) * norms.iter().product::<f64>())
}

/// The two entry-moment bounds at given `(m, d, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentBounds {
    /// `1 / P(k, d)`.
    pub falling: BigRational,
    /// `4^{m^2} / k^m`.
    pub power: BigRational,
}

pub fn moment_integral_bounds(m: usize, d: usize, k: usize) -> Result<MomentBounds, BoundsError> {
    if k < d || k < m {
        return Err(BoundsError::Hypothesis(format!("need k >= d and k >= m, got k = {k}, d = {d}, m = {m}")));
    }
    let falling = BigRational::new(BigInt::one(), BigInt::from(falling_factorial(k, d)?));
    let power = BigRational::new(pow_int(4, m * m), pow_int(k, m));
    Ok(MomentBounds { falling, power })
}

fn pow_int(base: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// The rational whose decimal expansion is the shortest string that round-trips
/// to `x`, so `0.1` becomes exactly `1/10`.
pub fn decimal_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let text = format!("{x}");
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let numer: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let q = BigRational::new(numer, pow_int(10, frac_part.len()));
    Some(if negative { -q } else { q })
}

fn positive_rational(x: f64, name: &'static str) -> Result<BigRational, BoundsError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(BoundsError::NotPositive { name });
    }
    decimal_rational(x).ok_or(BoundsError::NotPositive { name })
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::INFINITY)
}

/// Inputs and evaluated constants of the three concentration statements.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub m: usize,
    pub norm_bound: f64,
    pub w: usize,
    pub k: usize,
    pub eps: f64,
    /// `A = B(m) 2^{m^2} (Mw)^w`.
    pub first_constant: BigRational,
    /// `B = B(2m) 4^{m^2} (2Mw)^{2w}`.
    pub second_constant: BigRational,
    /// `A / k`.
    pub mean_bound: BigRational,
    /// `B / k^2`.
    pub second_moment_bound: BigRational,
    /// `4B / (k^2 eps^2)`; reported even when the hypothesis fails.
    pub tail_bound: BigRational,
    /// Whether `k > 2A / eps`.
    pub tail_valid: bool,
}

/// `f64` view of a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSummary {
    pub mean_bound: f64,
    pub second_bound: f64,
    pub tail_bound: f64,
    pub tail_valid: bool,
}

impl BoundReport {
    pub fn summary(&self) -> BoundSummary {
        BoundSummary {
            mean_bound: rational_to_f64(&self.mean_bound),
            second_bound: rational_to_f64(&self.second_moment_bound),
            tail_bound: rational_to_f64(&self.tail_bound),
            tail_valid: self.tail_valid,
        }
    }
}

fn first_constant(m: usize, norm: &BigRational, w: usize) -> Result<BigRational, BoundsError> {
    let mw = norm * BigRational::from_integer(BigInt::from(w));
    let b = BigInt::from(bell(m)?);
    Ok(BigRational::from_integer(b * pow_int(2, m * m)) * num_traits::pow(mw, w))
}

fn second_constant(m: usize, norm: &BigRational, w: usize) -> Result<BigRational, BoundsError> {
    let two_mw = norm * BigRational::from_integer(BigInt::from(2 * w));
    let b = BigInt::from(bell(2 * m)?);
    Ok(BigRational::from_integer(b * pow_int(4, m * m)) * num_traits::pow(two_mw, 2 * w))
}

pub fn theorem_bounds(m: usize, norm_bound: f64, w: usize, k: usize, eps: f64) -> Result<BoundReport, BoundsError> {
    for (v, name) in [(m, "m"), (w, "w"), (k, "k")] {
        if v == 0 {
            return Err(BoundsError::NotPositive { name });
        }
    }
    let norm = positive_rational(norm_bound, "M")?;
    let e = positive_rational(eps, "eps")?;
    let a = first_constant(m, &norm, w)?;
    let b = second_constant(m, &norm, w)?;
    let kq = BigRational::from_integer(BigInt::from(k));
    let k2 = &kq * &kq;
    let mean_bound = &a / &kq;
    let second_moment_bound = &b / &k2;
    let tail_bound = BigRational::from_integer(BigInt::from(4)) * &b / (&k2 * &e * &e);
    let tail_valid = kq > BigRational::from_integer(BigInt::from(2)) * &a / &e;
    Ok(BoundReport {
        m,
        norm_bound,
        w,
        k,
        eps,
        first_constant: a,
        second_constant: b,
        mean_bound,
        second_moment_bound,
        tail_bound,
        tail_valid,
    })
}

/// `max(0, 1 - card * 4B / (k^2 eps^2))`, the measure lower bound for the
/// intersection of `card` good sets. `m`, `w` and `M` are uniform caps over
/// the family.
pub fn corollary_intersection_bound(
    card: usize,
    m: usize,
    norm_bound: f64,
    w: usize,
    k: usize,
    eps: f64,
) -> Result<BigRational, BoundsError> {
    if card == 0 {
        return Ok(BigRational::one());
    }
    let report = theorem_bounds(m, norm_bound, w, k, eps)?;
    let value = BigRational::one() - BigRational::from_integer(BigInt::from(card)) * report.tail_bound;
    Ok(if value < BigRational::zero() { BigRational::zero() } else { value })
}

pub fn corollary_intersection_bound_f64(
    card: usize,
    m: usize,
    norm_bound: f64,
    w: usize,
    k: usize,
    eps: f64,
) -> Result<f64, BoundsError> {
    corollary_intersection_bound(card, m, norm_bound, w, k, eps).map(|q| rational_to_f64(&q))
}
