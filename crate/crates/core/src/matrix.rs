//! Dense complex matrices, the unitarity test on row/column conditions,
//! and trace-zero diagonal observables.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for [`check_unitary`] on sampled matrices.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-10;

/// Tolerance for the trace-zero check on explicit diagonal lists.
pub const TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix dimension must be positive")]
    ZeroDimension,
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is not unitary: {0}")]
    NotUnitary(UnitarityReport),
    #[error("alternating pattern requires even k, got k = {0}")]
    AlternatingOddK(usize),
    #[error("roots-of-unity pattern needs k >= 2; at k = 1 it is not traceless")]
    RootsOfUnityTooSmall,
    #[error("diagonal trace is {0}, not zero")]
    TraceNotZero(Complex64),
    #[error("diagonal entry of modulus {found} exceeds the norm bound {bound}")]
    NormExceeded { found: f64, bound: f64 },
    #[error("norm bound must be positive and finite")]
    InvalidNorm,
    #[error("cannot evaluate a word on an empty tuple")]
    EmptyTuple,
    #[error("malformed matrix document: {0}")]
    Format(String),
}

/// Square complex matrix stored row-major; `get(i, j)` is `f_{ij}` with
/// 0-based indices.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    k: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.k, self.k)?;
        for i in 0..self.k {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{:.4}", z)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(k: usize) -> Self {
        Self { k, data: vec![Complex64::new(0.0, 0.0); k * k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            m.data[i * k + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, MatrixError> {
        let k = rows.len();
        if k == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        let mut data = Vec::with_capacity(k * k);
        for r in rows {
            if r.len() != k {
                return Err(MatrixError::DimensionMismatch { expected: k, found: r.len() });
            }
            data.extend(r);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(Self { k, data })
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let k = diag.len();
        let mut m = Self::zeros(k);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * k + i] = d;
        }
        m
    }

    /// Builds from column-major storage, the natural layout for QR.
    pub(crate) fn from_columns(k: usize, cols: &[Complex64]) -> Self {
        let mut m = Self::zeros(k);
        for j in 0..k {
            for i in 0..k {
                m.data[i * k + j] = cols[j * k + i];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.k + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.k + j] = z;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    pub fn adjoint(&self) -> Self {
        let k = self.k;
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out.data[j * k + i] = self.data[i * k + j].conj();
            }
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.k, rhs.k, "dimension mismatch in product");
        let k = self.k;
        let mut out = Self::zeros(k);
        for i in 0..k {
            let out_row = &mut out.data[i * k..(i + 1) * k];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[l * k..(l + 1) * k];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self * rhs^*` without forming the adjoint.
    pub fn mul_adjoint(&self, rhs: &Self) -> Self {
        assert_eq!(self.k, rhs.k, "dimension mismatch in product");
        let k = self.k;
        let mut out = Self::zeros(k);
        for i in 0..k {
            let a_row = &self.data[i * k..(i + 1) * k];
            for j in 0..k {
                let b_row = &rhs.data[j * k..(j + 1) * k];
                let mut s = Complex64::new(0.0, 0.0);
                for (&a, &b) in a_row.iter().zip(b_row) {
                    s += a * b.conj();
                }
                out.data[i * k + j] = s;
            }
        }
        out
    }

    /// `self * diag(d)`: scales column `j` by `d[j]`.
    pub fn mul_diagonal(&self, d: &[Complex64]) -> Self {
        assert_eq!(self.k, d.len(), "dimension mismatch in diagonal product");
        let k = self.k;
        let mut out = self.clone();
        for i in 0..k {
            for (o, &dj) in out.data[i * k..(i + 1) * k].iter_mut().zip(d) {
                *o *= dj;
            }
        }
        out
    }

    /// `diag(d) * self`: scales row `i` by `d[i]`.
    pub fn diagonal_mul(d: &[Complex64], m: &Self) -> Self {
        assert_eq!(m.k, d.len(), "dimension mismatch in diagonal product");
        let k = m.k;
        let mut out = m.clone();
        for (i, &di) in d.iter().enumerate() {
            for o in &mut out.data[i * k..(i + 1) * k] {
                *o *= di;
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.k).map(|i| self.data[i * self.k + i]).sum()
    }

    /// `tau_k(self * rhs)` in O(k^2).
    pub fn normalized_trace_of_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.k, rhs.k, "dimension mismatch in product");
        let k = self.k;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..k {
            for l in 0..k {
                s += self.data[i * k + l] * rhs.data[l * k + i];
            }
        }
        s / k as f64
    }

    /// `tau_k(self * rhs^*)` in O(k^2).
    pub fn normalized_trace_of_product_adjoint(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.k, rhs.k, "dimension mismatch in product");
        let s: Complex64 = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a * b.conj()).sum();
        s / self.k as f64
    }

    /// `max_{ij} |self_ij - rhs_ij|`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            k: self.k,
            entries: (0..self.k).map(|i| self.row(i).iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }

    pub fn from_document(doc: &MatrixDocument) -> Result<Self, MatrixError> {
        if doc.entries.len() != doc.k {
            return Err(MatrixError::Format(format!(
                "k = {} but {} rows supplied",
                doc.k,
                doc.entries.len()
            )));
        }
        Self::from_rows(
            doc.entries
                .iter()
                .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect(),
        )
    }
}

/// `tau_k = (1/k) Tr`.
pub fn normalized_trace(a: &ComplexMatrix) -> Complex64 {
    a.trace() / a.dim() as f64
}

/// Which of the two unitarity conditions a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitarityCondition {
    /// A row or column whose squared moduli do not sum to 1.
    Normalization,
    /// Two distinct rows or columns that are not orthogonal.
    Orthogonality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
    Rows(usize, usize),
    Columns(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityReport {
    pub passed: bool,
    pub tol: f64,
    /// Largest violation over both conditions; 0 for an exact unitary.
    pub worst: f64,
    pub condition: UnitarityCondition,
    pub location: Line,
}

impl fmt::Display for UnitarityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "worst violation {:e} ({:?} at {:?}), tol {:e}", self.worst, self.condition, self.location, self.tol)
    }
}

/// Checks the two row/column conditions characterising unitary matrices:
/// every row and column has unit squared norm, and distinct rows (columns)
/// are orthogonal. Returns the largest violation and where it occurs.
pub fn check_unitary(a: &ComplexMatrix, tol: f64) -> UnitarityReport {
    let k = a.dim();
    let mut worst = 0.0;
    let mut condition = UnitarityCondition::Normalization;
    let mut location = Line::Row(0);
    let mut record = |v: f64, c: UnitarityCondition, l: Line| {
        if v > worst {
            worst = v;
            condition = c;
            location = l;
        }
    };
    for i in 0..k {
        let row: f64 = (0..k).map(|j| a.get(i, j).norm_sqr()).sum();
        record((row - 1.0).abs(), UnitarityCondition::Normalization, Line::Row(i));
        let col: f64 = (0..k).map(|j| a.get(j, i).norm_sqr()).sum();
        record((col - 1.0).abs(), UnitarityCondition::Normalization, Line::Column(i));
    }
    for i1 in 0..k {
        for i2 in (i1 + 1)..k {
            let rows: Complex64 = (0..k).map(|j| a.get(i1, j) * a.get(i2, j).conj()).sum();
            record(rows.norm(), UnitarityCondition::Orthogonality, Line::Rows(i1, i2));
            let cols: Complex64 = (0..k).map(|i| a.get(i, i1) * a.get(i, i2).conj()).sum();
            record(cols.norm(), UnitarityCondition::Orthogonality, Line::Columns(i1, i2));
        }
    }
    UnitarityReport { passed: worst <= tol, tol, worst, condition, location }
}

/// A matrix that passed [`check_unitary`] at the recorded tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    inner: ComplexMatrix,
    tol: f64,
}

impl UnitaryMatrix {
    pub fn new(a: ComplexMatrix, tol: f64) -> Result<Self, MatrixError> {
        let report = check_unitary(&a, tol);
        if !report.passed {
            return Err(MatrixError::NotUnitary(report));
        }
        Ok(Self { inner: a, tol })
    }

    /// Skips verification; callers guarantee unitarity (e.g. the sampler,
    /// whose output is verified in tests).
    pub(crate) fn new_unchecked(a: ComplexMatrix, tol: f64) -> Self {
        Self { inner: a, tol }
    }

    pub fn identity(k: usize) -> Self {
        Self { inner: ComplexMatrix::identity(k), tol: 0.0 }
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Self, MatrixError> {
        let k = perm.len();
        let mut a = ComplexMatrix::zeros(k);
        for (j, &i) in perm.iter().enumerate() {
            if i >= k {
                return Err(MatrixError::DimensionMismatch { expected: k, found: i + 1 });
            }
            a.set(i, j, Complex64::new(1.0, 0.0));
        }
        Self::new(a, DEFAULT_UNITARY_TOL)
    }

    /// `diag(e^{i theta_1}, ...)`.
    pub fn phases(thetas: &[f64]) -> Self {
        let d: Vec<Complex64> = thetas.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Self { inner: ComplexMatrix::from_diagonal(&d), tol: 0.0 }
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Diagonal pattern used to build trace-zero observables.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalPattern {
    /// `M (+1, -1, +1, ...)`, even `k` only.
    Alternating,
    /// Alternating with a trailing 0 when `k` is odd.
    Balanced,
    /// `M (1, w, ..., w^{k-1})` with `w` a primitive `k`-th root of unity.
    RootsOfUnity,
    Explicit(Vec<Complex64>),
}

/// `x = diag(gamma(1), ..., gamma(k))` with trace 0 and `max |gamma| <= M`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObservable {
    diag: Vec<Complex64>,
    norm_bound: f64,
    pattern: DiagonalPattern,
}

impl DiagonalObservable {
    pub fn new(k: usize, pattern: DiagonalPattern, norm_bound: f64) -> Result<Self, MatrixError> {
        if k == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        if !(norm_bound > 0.0 && norm_bound.is_finite()) {
            return Err(MatrixError::InvalidNorm);
        }
        let m = norm_bound;
        let alternating = |len: usize| -> Vec<Complex64> {
            (0..len).map(|a| Complex64::new(if a % 2 == 0 { m } else { -m }, 0.0)).collect()
        };
        let diag = match &pattern {
            DiagonalPattern::Alternating => {
                if k % 2 == 1 {
                    return Err(MatrixError::AlternatingOddK(k));
                }
                alternating(k)
            }
            DiagonalPattern::Balanced => {
                let mut d = alternating(k - k % 2);
                if k % 2 == 1 {
                    d.push(Complex64::new(0.0, 0.0));
                }
                d
            }
            DiagonalPattern::RootsOfUnity => {
                if k == 1 {
                    return Err(MatrixError::RootsOfUnityTooSmall);
                }
                roots_of_unity(k).into_iter().map(|z| z * m).collect()
            }
            DiagonalPattern::Explicit(values) => {
                if values.len() != k {
                    return Err(MatrixError::DimensionMismatch { expected: k, found: values.len() });
                }
                if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(MatrixError::NonFinite);
                }
                let trace: Complex64 = values.iter().sum();
                if trace.norm() > TRACE_TOL {
                    return Err(MatrixError::TraceNotZero(trace));
                }
                if let Some(found) = values.iter().map(|z| z.norm()).find(|&r| r > m) {
                    return Err(MatrixError::NormExceeded { found, bound: m });
                }
                values.clone()
            }
        };
        Ok(Self { diag, norm_bound, pattern })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Complex64] {
        &self.diag
    }

    /// The declared bound `M`.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    /// Operator norm `max |gamma(a)|`.
    pub fn norm(&self) -> f64 {
        self.diag.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn pattern(&self) -> &DiagonalPattern {
        &self.pattern
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.diag)
    }

    pub fn to_document(&self) -> ObservableDocument {
        ObservableDocument {
            k: self.dim(),
            diag: self.diag.iter().map(|z| [z.re, z.im]).collect(),
            m: self.norm_bound,
        }
    }

    pub fn from_document(doc: &ObservableDocument) -> Result<Self, MatrixError> {
        let values: Vec<Complex64> = doc.diag.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::new(doc.k, DiagonalPattern::Explicit(values), doc.m)
    }
}

/// `(1, w, ..., w^{k-1})` for `w = exp(2 pi i / k)`; entries on the real or
/// imaginary axis are snapped so that small cases are exact.
pub fn roots_of_unity(k: usize) -> Vec<Complex64> {
    (0..k)
        .map(|a| {
            // Exact values at quarter turns.
            if (4 * a) % k == 0 {
                match (4 * a / k) % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, 2.0 * PI * a as f64 / k as f64)
            }
        })
        .collect()
}

/// File form of a dense matrix: `{"k": .., "entries": [[[re, im], ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub k: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// File form of a diagonal observable: `{"k": .., "diag": [[re, im], ..], "M": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableDocument {
    pub k: usize,
    pub diag: Vec<[f64; 2]>,
    #[serde(rename = "M")]
    pub m: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trace_examples() {
        assert_eq!(normalized_trace(&ComplexMatrix::identity(4)), c(1.0, 0.0));
        assert_eq!(normalized_trace(&ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)])), c(0.0, 0.0));
        let g = [c(1.0, 2.0), c(3.0, -1.0), c(-0.5, 0.0)];
        let mean = g.iter().sum::<Complex64>() / 3.0;
        assert!((normalized_trace(&ComplexMatrix::from_diagonal(&g)) - mean).norm() < 1e-15);
    }

    #[test]
    fn unitary_examples() {
        assert!(check_unitary(&ComplexMatrix::identity(3), 1e-10).passed);

        let mut bad = ComplexMatrix::identity(2);
        bad.set(0, 0, c(2.0, 0.0));
        let r = check_unitary(&bad, 1e-10);
        assert!(!r.passed);
        assert_eq!(r.condition, UnitarityCondition::Normalization);
        assert_eq!(r.worst, 3.0);

        let s = 1.0 / 2f64.sqrt();
        let h = ComplexMatrix::from_rows(vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]).unwrap();
        assert!(check_unitary(&h, 1e-10).passed);
    }

    #[test]
    fn orthogonality_violation_located() {
        // Unit rows and columns that are not orthogonal.
        let s = 1.0 / 2f64.sqrt();
        let a = ComplexMatrix::from_rows(vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(s, 0.0)]]).unwrap();
        let r = check_unitary(&a, 1e-10);
        assert!(!r.passed);
        assert_eq!(r.condition, UnitarityCondition::Orthogonality);
        assert!((r.worst - 1.0).abs() < 1e-15);
    }

    #[test]
    fn patterns() {
        let a = DiagonalObservable::new(4, DiagonalPattern::Alternating, 1.0).unwrap();
        assert_eq!(a.diag(), &[c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let b = DiagonalObservable::new(3, DiagonalPattern::Balanced, 1.0).unwrap();
        assert_eq!(b.diag(), &[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        let r = DiagonalObservable::new(3, DiagonalPattern::RootsOfUnity, 1.0).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((r.diag()[1] - w).norm() < 1e-15);
        assert!((r.diag()[2] - w * w).norm() < 1e-15);
        assert!(r.diag().iter().sum::<Complex64>().norm() < 1e-12);
        assert_eq!(
            DiagonalObservable::new(1, DiagonalPattern::RootsOfUnity, 1.0),
            Err(MatrixError::RootsOfUnityTooSmall)
        );
        assert_eq!(
            DiagonalObservable::new(3, DiagonalPattern::Alternating, 1.0),
            Err(MatrixError::AlternatingOddK(3))
        );
    }

    #[test]
    fn explicit_validation() {
        let bad_trace = DiagonalObservable::new(2, DiagonalPattern::Explicit(vec![c(1.0, 0.0), c(0.5, 0.0)]), 1.0);
        assert!(matches!(bad_trace, Err(MatrixError::TraceNotZero(_))));
        let bad_norm = DiagonalObservable::new(2, DiagonalPattern::Explicit(vec![c(2.0, 0.0), c(-2.0, 0.0)]), 1.0);
        assert!(matches!(bad_norm, Err(MatrixError::NormExceeded { .. })));
        let ok = DiagonalObservable::new(2, DiagonalPattern::Explicit(vec![c(0.0, 0.5), c(0.0, -0.5)]), 1.0).unwrap();
        assert_eq!(ok.norm(), 0.5);
    }

    #[test]
    fn products_agree() {
        let a = ComplexMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.5, -1.0)], vec![c(-3.0, 0.0), c(0.0, 1.0)]]).unwrap();
        let b = ComplexMatrix::from_rows(vec![vec![c(0.0, 1.0), c(2.0, 0.0)], vec![c(1.0, 1.0), c(-1.0, 0.5)]]).unwrap();
        assert!(a.mul_adjoint(&b).max_abs_diff(&a.mul(&b.adjoint())) < 1e-14);
        let t = a.normalized_trace_of_product(&b);
        assert!((t - normalized_trace(&a.mul(&b))).norm() < 1e-14);
        let ta = a.normalized_trace_of_product_adjoint(&b);
        assert!((ta - normalized_trace(&a.mul(&b.adjoint()))).norm() < 1e-14);
        let d = [c(2.0, 0.0), c(0.0, -1.0)];
        assert!(a.mul_diagonal(&d).max_abs_diff(&a.mul(&ComplexMatrix::from_diagonal(&d))) < 1e-14);
        assert!(ComplexMatrix::diagonal_mul(&d, &a).max_abs_diff(&ComplexMatrix::from_diagonal(&d).mul(&a)) < 1e-14);
    }

    #[test]
    fn documents_roundtrip() {
        let x = DiagonalObservable::new(4, DiagonalPattern::RootsOfUnity, 2.0).unwrap();
        let json = serde_json::to_string(&x.to_document()).unwrap();
        assert!(json.contains("\"M\":2.0"));
        let back = DiagonalObservable::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.diag(), x.diag());

        let a = ComplexMatrix::identity(3);
        let doc: MatrixDocument = serde_json::from_str(&serde_json::to_string(&a.to_document()).unwrap()).unwrap();
        assert_eq!(ComplexMatrix::from_document(&doc).unwrap(), a);
    }
}
