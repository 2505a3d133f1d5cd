//! Monte Carlo estimates over Haar-random unitaries: trace moments of
//! alternating products, tail frequencies, decay sweeps across `k`, and the
//! microstate fractions for free unitaries and conjugated families.
//!
//! Sample `i` always uses `SeededStream::new(seed, 0).substream(i)`. Per-sample
//! values are computed in parallel, collected in index order and reduced
//! sequentially, so results do not depend on the thread count.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{theorem_bounds, BoundReport, BoundsError};
use crate::freeness::{
    all_monomials, conjugated_free_moment, free_moment_capped, DiagonalFamily, FreenessError, Monomial, Symbol,
    XMoments, DEFAULT_DEGREE_CAP,
};
use crate::haar::sample_tuple;
use crate::matrix::{ComplexMatrix, DiagonalObservable, DiagonalPattern, MatrixError, UnitaryMatrix};
use crate::rng::SeededStream;
use crate::word::{AlternatingExpression, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Freeness(#[from] FreenessError),
    #[error("observable slot {slot} has no observable ({available} supplied)")]
    SlotOutOfRange { slot: usize, available: usize },
    #[error("observable {index} has dimension {found}, expected {expected}")]
    ObservableDimension { index: usize, expected: usize, found: usize },
    #[error("at least {min} samples are required, got {found}")]
    TooFewSamples { min: usize, found: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("norm cap must be positive and finite, got {0}")]
    BadNormCap(f64),
    #[error("observable {index} has norm {norm} above the cap {cap}")]
    NormAboveCap { index: usize, norm: f64, cap: f64 },
    #[error("no target moment for monomial {0}")]
    MissingTarget(String),
    #[error("monomial {monomial} has degree above the cap {cap}")]
    MonomialTooLong { monomial: String, cap: usize },
    #[error("monomial {0} refers to a symbol outside the experiment")]
    ForeignSymbol(String),
    #[error("empty list of dimensions")]
    NoDimensions,
}

/// Sample statistics of `z = tau_k(product)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    /// Mean of `|z|^2`.
    pub second_abs_moment: f64,
    /// Sample standard deviation of `z` over `sqrt(samples)`.
    pub std_error_mean: f64,
    /// Sample standard deviation of `|z|^2` over `sqrt(samples)`.
    pub std_error_second: f64,
    pub samples: usize,
    pub master_seed: u64,
}

impl McEstimate {
    /// Statistics of an ordered list of per-sample values.
    pub fn from_values(values: &[Complex64], master_seed: u64) -> Result<Self, ExperimentError> {
        let n = values.len();
        if n < 2 {
            return Err(ExperimentError::TooFewSamples { min: 2, found: n });
        }
        let nf = n as f64;
        let mean = values.iter().sum::<Complex64>() / nf;
        let second_abs_moment = values.iter().map(|z| z.norm_sqr()).sum::<f64>() / nf;
        let var_mean = values.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (nf - 1.0);
        let var_second = values.iter().map(|z| (z.norm_sqr() - second_abs_moment).powi(2)).sum::<f64>() / (nf - 1.0);
        Ok(Self {
            mean,
            second_abs_moment,
            std_error_mean: (var_mean / nf).sqrt(),
            std_error_second: (var_second / nf).sqrt(),
            samples: n,
            master_seed,
        })
    }
}

/// Fraction of samples satisfying a predicate, with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionEstimate {
    pub fraction: f64,
    pub std_error: f64,
    pub hits: usize,
    pub samples: usize,
    pub master_seed: u64,
}

impl FractionEstimate {
    fn from_flags(flags: &[bool], master_seed: u64) -> Self {
        let samples = flags.len();
        let hits = flags.iter().filter(|&&f| f).count();
        let fraction = if samples == 0 { 0.0 } else { hits as f64 / samples as f64 };
        let std_error = if samples == 0 { 0.0 } else { (fraction * (1.0 - fraction) / samples as f64).sqrt() };
        Self { fraction, std_error, hits, samples, master_seed }
    }
}

/// One factor of a product whose normalized trace is wanted.
#[derive(Clone, Copy)]
enum Factor<'a> {
    Unitary(&'a ComplexMatrix),
    Adjoint(&'a ComplexMatrix),
    Diagonal(&'a [Complex64]),
}

/// `tau_k(f_1 f_2 ... f_r)`; the last factor is folded into the trace in O(k^2).
fn trace_of_chain(factors: &[Factor<'_>], k: usize) -> Complex64 {
    let Some((last, init)) = factors.split_last() else {
        return Complex64::new(1.0, 0.0);
    };
    let mut acc: Option<ComplexMatrix> = None;
    for f in init {
        acc = Some(match (acc, f) {
            (None, Factor::Unitary(u)) => (*u).clone(),
            (None, Factor::Adjoint(u)) => u.adjoint(),
            (None, Factor::Diagonal(d)) => ComplexMatrix::from_diagonal(d),
            (Some(p), Factor::Unitary(u)) => p.mul(u),
            (Some(p), Factor::Adjoint(u)) => p.mul_adjoint(u),
            (Some(p), Factor::Diagonal(d)) => p.mul_diagonal(d),
        });
    }
    let kf = k as f64;
    match (acc, last) {
        (None, Factor::Unitary(u)) => u.trace() / kf,
        (None, Factor::Adjoint(u)) => u.trace().conj() / kf,
        (None, Factor::Diagonal(d)) => d.iter().sum::<Complex64>() / kf,
        (Some(p), Factor::Unitary(u)) => p.normalized_trace_of_product(u),
        (Some(p), Factor::Adjoint(u)) => p.normalized_trace_of_product_adjoint(u),
        (Some(p), Factor::Diagonal(d)) => (0..k).map(|i| p.get(i, i) * d[i]).sum::<Complex64>() / kf,
    }
}

fn check_observables(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    k: usize,
    n: usize,
) -> Result<(), ExperimentError> {
    if k == 0 {
        return Err(ExperimentError::ZeroDimension);
    }
    expr.validate(n, expr.m())?;
    if expr.max_slot() > observables.len() {
        return Err(ExperimentError::SlotOutOfRange { slot: expr.max_slot(), available: observables.len() });
    }
    for (i, o) in observables.iter().enumerate() {
        if o.dim() != k {
            return Err(ExperimentError::ObservableDimension { index: i + 1, expected: k, found: o.dim() });
        }
    }
    Ok(())
}

/// `tau_k(g_1(u) x_1 ... g_w(u) x_w)` for one tuple of unitaries.
pub fn trace_of_expression(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    us: &[UnitaryMatrix],
) -> Complex64 {
    let k = observables[0].dim();
    let mut factors = Vec::with_capacity(expr.m() + expr.w());
    for t in expr.terms() {
        for l in t.word.letters() {
            let u = us[l.generator() - 1].as_matrix();
            factors.push(if l.is_inverse() { Factor::Adjoint(u) } else { Factor::Unitary(u) });
        }
        factors.push(Factor::Diagonal(observables[t.slot - 1].diag()));
    }
    trace_of_chain(&factors, k)
}

fn sample_stream(seed: u64, i: usize) -> SeededStream {
    SeededStream::new(seed, 0).substream(i as u64)
}

/// Per-sample values `tau_k(product)`, in sample order.
pub fn sample_trace_values(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    k: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Complex64>, ExperimentError> {
    check_observables(expr, observables, k, n)?;
    Ok((0..samples)
        .into_par_iter()
        .map(|i| {
            let us = sample_tuple(k, n, &sample_stream(seed, i));
            trace_of_expression(expr, observables, &us)
        })
        .collect())
}

pub fn mc_trace_moment(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    k: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<McEstimate, ExperimentError> {
    if samples < 2 {
        return Err(ExperimentError::TooFewSamples { min: 2, found: samples });
    }
    let values = sample_trace_values(expr, observables, k, n, samples, seed)?;
    McEstimate::from_values(&values, seed)
}

/// Fraction of samples with `|tau_k(product)| >= eps`.
pub fn mc_tail_probability(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    k: usize,
    n: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<FractionEstimate, ExperimentError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ExperimentError::BadTolerance(eps));
    }
    if samples == 0 {
        return Err(ExperimentError::TooFewSamples { min: 1, found: 0 });
    }
    let values = sample_trace_values(expr, observables, k, n, samples, seed)?;
    Ok(tail_fraction(&values, eps, seed))
}

pub fn tail_fraction(values: &[Complex64], eps: f64, seed: u64) -> FractionEstimate {
    let flags: Vec<bool> = values.iter().map(|z| z.norm() >= eps).collect();
    FractionEstimate::from_flags(&flags, seed)
}

/// Recipe for one observable at any dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableRecipe {
    pub pattern: DiagonalPattern,
    pub norm_bound: f64,
}

impl ObservableRecipe {
    pub fn new(pattern: DiagonalPattern, norm_bound: f64) -> Self {
        Self { pattern, norm_bound }
    }

    pub fn at(&self, k: usize) -> Result<DiagonalObservable, MatrixError> {
        DiagonalObservable::new(k, self.pattern.clone(), self.norm_bound)
    }
}

/// One row of a decay sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub estimate: McEstimate,
    pub tail: FractionEstimate,
    pub bounds: BoundReport,
}

/// Estimates and the matching concentration bounds at each `k`. The bound
/// uses `M = max` of the recipes' norm bounds.
pub fn decay_sweep(
    expr: &AlternatingExpression,
    recipes: &[ObservableRecipe],
    n: usize,
    ks: &[usize],
    samples: usize,
    seed: u64,
    eps: f64,
) -> Result<Vec<SweepRow>, ExperimentError> {
    if ks.is_empty() {
        return Err(ExperimentError::NoDimensions);
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ExperimentError::BadTolerance(eps));
    }
    let norm = recipes.iter().map(|r| r.norm_bound).fold(0.0, f64::max);
    ks.iter()
        .map(|&k| {
            let observables = recipes.iter().map(|r| r.at(k)).collect::<Result<Vec<_>, _>>()?;
            if samples < 2 {
                return Err(ExperimentError::TooFewSamples { min: 2, found: samples });
            }
            let values = sample_trace_values(expr, &observables, k, n, samples, seed)?;
            Ok(SweepRow {
                k,
                estimate: McEstimate::from_values(&values, seed)?,
                tail: tail_fraction(&values, eps, seed),
                bounds: theorem_bounds(expr.m(), norm, expr.w(), k, eps)?,
            })
        })
        .collect()
}

/// Membership test data for the microstate set `Gamma_R(m, k, eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MicrostateSpec {
    pub norm_cap: f64,
    pub degree: usize,
    pub eps: f64,
    /// Keyed by the canonical rotation of each monomial.
    pub targets: BTreeMap<Monomial, Complex64>,
}

impl MicrostateSpec {
    pub fn new(
        norm_cap: f64,
        degree: usize,
        eps: f64,
        targets: BTreeMap<Monomial, Complex64>,
    ) -> Result<Self, ExperimentError> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(ExperimentError::BadTolerance(eps));
        }
        if !(norm_cap > 0.0 && norm_cap.is_finite()) {
            return Err(ExperimentError::BadNormCap(norm_cap));
        }
        let mut canonical = BTreeMap::new();
        for (m, v) in targets {
            if m.degree() > degree {
                return Err(ExperimentError::MonomialTooLong { monomial: m.to_string(), cap: degree });
            }
            canonical.insert(m.canonical(), v);
        }
        Ok(Self { norm_cap, degree, eps, targets: canonical })
    }

    /// Targets for `s` family members and `n` free Haar unitaries: every
    /// monomial of degree `<= degree`, evaluated by [`crate::freeness::free_moment`].
    pub fn free_unitary_targets(
        norm_cap: f64,
        degree: usize,
        eps: f64,
        s: usize,
        n: usize,
        family: &dyn XMoments,
    ) -> Result<Self, ExperimentError> {
        let cap = degree.max(DEFAULT_DEGREE_CAP);
        let targets = all_monomials(s, n, degree)
            .into_iter()
            .map(|m| free_moment_capped(&m, family, cap).map(|v| (m, v)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Self::new(norm_cap, degree, eps, targets)
    }

    /// Targets for `s` free copies `y_j = u_j^* x_j u_j` of the family members.
    pub fn conjugated_targets(
        norm_cap: f64,
        degree: usize,
        eps: f64,
        s: usize,
        family: &dyn XMoments,
    ) -> Result<Self, ExperimentError> {
        let cap = (3 * degree).max(DEFAULT_DEGREE_CAP);
        let targets = all_monomials(s, 0, degree)
            .into_iter()
            .map(|m| conjugated_free_moment(&m, family, cap).map(|v| (m, v)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Self::new(norm_cap, degree, eps, targets)
    }

    /// Targets ordered like `monomials`.
    fn lookup(&self, monomials: &[Monomial]) -> Result<Vec<Complex64>, ExperimentError> {
        monomials
            .iter()
            .map(|m| self.targets.get(m).copied().ok_or_else(|| ExperimentError::MissingTarget(m.to_string())))
            .collect()
    }
}

/// Family moments read off the fixed diagonal matrices themselves.
pub fn family_of(xs: &[DiagonalObservable]) -> DiagonalFamily {
    DiagonalFamily::new(xs.iter().map(|x| x.diag().to_vec()).collect())
}

fn check_norms(xs: &[DiagonalObservable], cap: f64, k: usize) -> Result<(), ExperimentError> {
    if k == 0 {
        return Err(ExperimentError::ZeroDimension);
    }
    for (i, x) in xs.iter().enumerate() {
        if x.dim() != k {
            return Err(ExperimentError::ObservableDimension { index: i + 1, expected: k, found: x.dim() });
        }
        if x.norm() > cap {
            return Err(ExperimentError::NormAboveCap { index: i + 1, norm: x.norm(), cap });
        }
    }
    Ok(())
}

/// Whether every monomial's trace is within `eps` of its target.
fn within_targets(monomials: &[Monomial], targets: &[Complex64], eps: f64, eval: impl Fn(&Monomial) -> Complex64) -> bool {
    monomials.iter().zip(targets).all(|(m, t)| (eval(m) - t).norm() < eps)
}

/// Fraction of sampled `v in U_k^n` with `(x_1, .., x_s, v_1, .., v_n)` in
/// `Gamma_R(m, k, eps)`.
pub fn microstate_fraction(
    k: usize,
    n: usize,
    spec: &MicrostateSpec,
    xs: &[DiagonalObservable],
    samples: usize,
    seed: u64,
) -> Result<FractionEstimate, ExperimentError> {
    check_norms(xs, spec.norm_cap, k)?;
    let s = xs.len();
    let monomials = all_monomials(s, n, spec.degree);
    let targets = spec.lookup(&monomials)?;
    let conj: Vec<Vec<Complex64>> = xs.iter().map(|x| x.diag().iter().map(|z| z.conj()).collect()).collect();
    let flags: Vec<bool> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let vs = sample_tuple(k, n, &sample_stream(seed, i));
            within_targets(&monomials, &targets, spec.eps, |m| {
                let factors: Vec<Factor<'_>> = m
                    .letters()
                    .iter()
                    .map(|l| match (l.symbol, l.adjoint) {
                        (Symbol::X(j), false) => Factor::Diagonal(xs[j - 1].diag()),
                        (Symbol::X(j), true) => Factor::Diagonal(&conj[j - 1]),
                        (Symbol::U(i), false) => Factor::Unitary(vs[i - 1].as_matrix()),
                        (Symbol::U(i), true) => Factor::Adjoint(vs[i - 1].as_matrix()),
                    })
                    .collect();
                trace_of_chain(&factors, k)
            })
        })
        .collect();
    Ok(FractionEstimate::from_flags(&flags, seed))
}

/// Fraction of sampled `v in U_k^s` for which `(v_1^* x_1 v_1, .., v_s^* x_s v_s)`
/// lies in `Gamma_R(m, k, eps)` with free-product targets.
pub fn conjugation_freeness_fraction(
    k: usize,
    spec: &MicrostateSpec,
    xs: &[DiagonalObservable],
    samples: usize,
    seed: u64,
) -> Result<FractionEstimate, ExperimentError> {
    check_norms(xs, spec.norm_cap, k)?;
    let s = xs.len();
    let monomials = all_monomials(s, 0, spec.degree);
    let targets = spec.lookup(&monomials)?;
    let flags: Vec<bool> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let vs = sample_tuple(k, s, &sample_stream(seed, i));
            let ys: Vec<ComplexMatrix> = vs
                .iter()
                .zip(xs)
                .map(|(v, x)| {
                    let v = v.as_matrix();
                    v.adjoint().mul_diagonal(x.diag()).mul(v)
                })
                .collect();
            let ys_adj: Vec<ComplexMatrix> = ys.iter().map(ComplexMatrix::adjoint).collect();
            within_targets(&monomials, &targets, spec.eps, |m| {
                let factors: Vec<Factor<'_>> = m
                    .letters()
                    .iter()
                    .map(|l| match (l.symbol, l.adjoint) {
                        (Symbol::X(j), false) => Factor::Unitary(&ys[j - 1]),
                        (Symbol::X(j), true) => Factor::Unitary(&ys_adj[j - 1]),
                        (Symbol::U(_), _) => unreachable!("conjugation monomials have no unitary letters"),
                    })
                    .collect();
                trace_of_chain(&factors, k)
            })
        })
        .collect();
    Ok(FractionEstimate::from_flags(&flags, seed))
}
