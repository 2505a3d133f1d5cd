//! Sampling from the normalized Haar measure on `U(k)` and its products.
//!
//! A Ginibre matrix is factored by Householder QR; column `j` of `Q` is then
//! multiplied by `r_jj / |r_jj|`, which makes the triangular factor's diagonal
//! positive and removes the phase bias of the raw factorization.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::{ComplexMatrix, UnitaryMatrix, DEFAULT_UNITARY_TOL};
use crate::rng::{SeededStream, StreamRng};

/// A projected column whose norm falls below this fraction of the original
/// column norm is treated as linearly dependent and redrawn.
const DEGENERATE_RATIO: f64 = 1e-12;

/// Draws one Haar unitary from `stream`.
pub fn sample_unitary(k: usize, stream: &SeededStream) -> UnitaryMatrix {
    assert!(k >= 1, "dimension must be positive");
    let mut rng = stream.generator();
    let mut ginibre: Vec<Complex64> = (0..k * k).map(|_| rng.complex_normal()).collect();
    loop {
        match haar_from_ginibre(k, &ginibre) {
            Ok(q) => return UnitaryMatrix::new_unchecked(q, DEFAULT_UNITARY_TOL),
            Err(col) => redraw_column(&mut ginibre, k, col, &mut rng),
        }
    }
}

fn redraw_column(ginibre: &mut [Complex64], k: usize, col: usize, rng: &mut StreamRng) {
    for z in &mut ginibre[col * k..(col + 1) * k] {
        *z = rng.complex_normal();
    }
}

/// Householder QR of a column-major matrix followed by the phase fix. Returns
/// the index of a degenerate column on failure.
fn haar_from_ginibre(k: usize, ginibre: &[Complex64]) -> Result<ComplexMatrix, usize> {
    let mut a = ginibre.to_vec();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    let mut phases: Vec<Complex64> = Vec::with_capacity(k);

    for j in 0..k {
        let original = ginibre[j * k..(j + 1) * k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let x = &a[j * k + j..(j + 1) * k];
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= DEGENERATE_RATIO * original {
            return Err(j);
        }
        let x0 = x[0];
        let unit = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -unit * norm;
        let mut v: Vec<Complex64> = x.to_vec();
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        // H = I - 2 v v^* / (v^* v) applied to the trailing columns.
        for c in j..k {
            let col = &mut a[c * k + j..(c + 1) * k];
            let dot: Complex64 = v.iter().zip(col.iter()).map(|(vi, ci)| vi.conj() * ci).sum();
            let s = dot * (2.0 / vnorm_sqr);
            for (ci, vi) in col.iter_mut().zip(&v) {
                *ci -= s * vi;
            }
        }
        reflectors.push(v);
        phases.push(alpha / alpha.norm());
    }

    // Q = H_0 H_1 ... H_{k-1}, accumulated onto the identity from the right end.
    let mut q = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        q[i * k + i] = Complex64::new(1.0, 0.0);
    }
    for j in (0..k).rev() {
        let v = &reflectors[j];
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        for c in 0..k {
            let col = &mut q[c * k + j..(c + 1) * k];
            let dot: Complex64 = v.iter().zip(col.iter()).map(|(vi, ci)| vi.conj() * ci).sum();
            let s = dot * (2.0 / vnorm_sqr);
            for (ci, vi) in col.iter_mut().zip(v) {
                *ci -= s * vi;
            }
        }
    }
    for (j, &ph) in phases.iter().enumerate() {
        for z in &mut q[j * k..(j + 1) * k] {
            *z *= ph;
        }
    }
    Ok(ComplexMatrix::from_columns(k, &q))
}

/// `n` independent Haar unitaries, element `j` drawn from `stream.substream(j)`.
pub fn sample_tuple(k: usize, n: usize, stream: &SeededStream) -> Vec<UnitaryMatrix> {
    (0..n).map(|j| sample_unitary(k, &stream.substream(j as u64))).collect()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvarianceError {
    #[error("translating unitary has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree must be 1 or 2, got {0}")]
    BadDegree(usize),
    #[error("sample count must be positive")]
    NoSamples,
}

/// Empirical entry-moment discrepancies between `{u}` and `{v u}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub k: usize,
    pub degree: usize,
    pub samples: usize,
    /// Largest `|mean(f_ij(u)) - mean(f_ij(vu))|`.
    pub max_first_discrepancy: f64,
    /// Largest discrepancy over all `f_ij conj(f_st)` means (0 when degree = 1).
    pub max_second_discrepancy: f64,
    /// Largest discrepancy over the `|f_ij|^2` means (0 when degree = 1).
    pub max_modulus_discrepancy: f64,
}

impl InvarianceReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.max_first_discrepancy.max(self.max_second_discrepancy)
    }
}

const CHUNK: usize = 256;

/// Compares entry moments up to `degree` of Haar samples `u` and their left
/// translates `v u`. Sample `i` is drawn from `SeededStream::new(seed, 0).substream(i)`.
pub fn invariance_report(
    k: usize,
    v: &UnitaryMatrix,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport, InvarianceError> {
    if v.dim() != k {
        return Err(InvarianceError::DimensionMismatch { expected: k, found: v.dim() });
    }
    if degree != 1 && degree != 2 {
        return Err(InvarianceError::BadDegree(degree));
    }
    if samples == 0 {
        return Err(InvarianceError::NoSamples);
    }
    let base = SeededStream::new(seed, 0);
    let k2 = k * k;
    let width = if degree == 2 { 2 * (k2 + k2 * k2) } else { 2 * k2 };

    let accumulate = |u: &ComplexMatrix, out: &mut [Complex64], offset: usize| {
        let e = u.entries();
        for a in 0..k2 {
            out[offset + a] += e[a];
        }
        if degree == 2 {
            let base = offset + k2;
            for a in 0..k2 {
                for b in 0..k2 {
                    out[base + a * k2 + b] += e[a] * e[b].conj();
                }
            }
        }
    };
    let half = width / 2;
    let chunks: Vec<Vec<Complex64>> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![Complex64::new(0.0, 0.0); width];
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let u = sample_unitary(k, &base.substream(i as u64));
                let vu = v.as_matrix().mul(u.as_matrix());
                accumulate(u.as_matrix(), &mut acc, 0);
                accumulate(&vu, &mut acc, half);
            }
            acc
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); width];
    for c in &chunks {
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    let n = samples as f64;
    let diff = |idx: usize| ((total[idx] - total[half + idx]) / n).norm();
    let max_first_discrepancy = (0..k2).map(diff).fold(0.0, f64::max);
    let (mut max_second_discrepancy, mut max_modulus_discrepancy) = (0.0, 0.0);
    if degree == 2 {
        for a in 0..k2 {
            for b in 0..k2 {
                let d = diff(k2 + a * k2 + b);
                max_second_discrepancy = f64::max(max_second_discrepancy, d);
                if a == b {
                    max_modulus_discrepancy = f64::max(max_modulus_discrepancy, d);
                }
            }
        }
    }
    Ok(InvarianceReport {
        k,
        degree,
        samples,
        max_first_discrepancy,
        max_second_discrepancy,
        max_modulus_discrepancy,
    })
}
