//! Exact Haar-unitary entry moments via the unitary Weingarten function.
//!
//! `Wg(., k)` on `S_m` is the identity row of the inverse of the Gram matrix
//! `G[s, t] = k^{cycles(s t^-1)}`. Because `G` commutes with conjugation, the
//! solution is a class function and the system is solved on cycle types
//! (one unknown per partition of `m`) with fraction-free elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::matrix::{DiagonalObservable, DiagonalPattern};
use crate::word::{AlternatingExpression, WordError};

pub const DEFAULT_ORDER_CAP: usize = 5;
pub const MAX_ORDER_CAP: usize = 6;
/// Largest number of index maps `k^m` that [`exact_word_moment`] will enumerate.
pub const INDEX_MAP_CAP: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeingartenError {
    #[error("dimension k = {k} is smaller than the order m = {m}")]
    DimensionTooSmall { m: usize, k: usize },
    #[error("order {m} exceeds the configured cap {cap}")]
    OrderCapExceeded { m: usize, cap: usize },
    #[error("order cap {0} is above the supported maximum {MAX_ORDER_CAP}")]
    UnsupportedCap(usize),
    #[error("order must be positive")]
    ZeroOrder,
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("generator indices are 1-based")]
    ZeroGenerator,
    #[error("k^m = {count} index maps exceeds the cap {INDEX_MAP_CAP}")]
    IndexMapCapExceeded { count: u128 },
    #[error("observable slot {slot} has no observable ({available} supplied)")]
    SlotOutOfRange { slot: usize, available: usize },
    #[error("observable {slot} has dimension {found}, expected {expected}")]
    ObservableDimension { slot: usize, expected: usize, found: usize },
    #[error("observable {slot} is not exactly trace zero in exact arithmetic")]
    ObservableNotExact { slot: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A permutation of `{0, .., m-1}`; displayed 1-based in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    /// `None` unless `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Self { images: inv }
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn cycles(&self) -> usize {
        self.cycle_type().len()
    }

    /// All of `S_m` in lexicographic order; the identity comes first.
    pub fn all(m: usize) -> Vec<Self> {
        let mut current: Vec<usize> = (0..m).collect();
        let mut out = vec![Self { images: current.clone() }];
        while next_permutation(&mut current) {
            out.push(Self { images: current.clone() });
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `Wg(., k)` on `S_m`, stored per cycle type.
#[derive(Debug, Clone, PartialEq)]
pub struct WeingartenTable {
    m: usize,
    k: usize,
    by_cycle_type: BTreeMap<Vec<usize>, BigRational>,
}

impl WeingartenTable {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn by_cycle_type(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.by_cycle_type
    }

    pub fn value(&self, p: &Permutation) -> &BigRational {
        assert_eq!(p.degree(), self.m, "permutation degree differs from table order");
        &self.by_cycle_type[&p.cycle_type()]
    }

    pub fn value_of_type(&self, cycle_type: &[usize]) -> Option<&BigRational> {
        self.by_cycle_type.get(cycle_type)
    }

    /// The full table over `S_m`.
    pub fn expand(&self) -> Vec<(Permutation, BigRational)> {
        Permutation::all(self.m).into_iter().map(|p| {
            let v = self.value(&p).clone();
            (p, v)
        }).collect()
    }
}

fn integer_power(k: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(k), e)
}

fn build_table(m: usize, k: usize) -> WeingartenTable {
    let perms = Permutation::all(m);
    let types: Vec<Vec<usize>> = perms.iter().map(Permutation::cycle_type).collect();
    let mut classes: Vec<Vec<usize>> = types.clone();
    classes.sort();
    classes.dedup();
    let class_of = |t: &Vec<usize>| classes.binary_search(t).expect("cycle type listed");
    let representative: Vec<&Permutation> = classes
        .iter()
        .map(|c| &perms[types.iter().position(|t| t == c).expect("class is inhabited")])
        .collect();

    // A[d][c] = sum over t in class c of k^{cycles(s_d t^-1)}.
    let p = classes.len();
    let mut a = vec![vec![BigInt::zero(); p + 1]; p];
    for (d, s) in representative.iter().enumerate() {
        for (t, ty) in perms.iter().zip(&types) {
            let cycles = s.compose(&t.inverse()).cycles();
            a[d][class_of(ty)] += integer_power(k, cycles);
        }
    }
    let identity_class = class_of(&vec![1; m]);
    a[identity_class][p] = BigInt::one();
    let solution = bareiss_solve(a).expect("Gram system is nonsingular for k >= m");
    let by_cycle_type = classes.into_iter().zip(solution).collect();
    WeingartenTable { m, k, by_cycle_type }
}

/// Solves an augmented integer system `[A | b]` by fraction-free elimination.
fn bareiss_solve(mut a: Vec<Vec<BigInt>>) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut prev = BigInt::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        for r in col + 1..n {
            for c in col + 1..=n {
                let v = (&a[col][col] * &a[r][c] - &a[r][col] * &a[col][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[r][n].clone());
        for c in r + 1..n {
            acc -= BigRational::from_integer(a[r][c].clone()) * &x[c];
        }
        x[r] = acc / BigRational::from_integer(a[r][r].clone());
    }
    Some(x)
}

type TableCache = Mutex<HashMap<(usize, usize), Arc<WeingartenTable>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One factor `f_{row,col}(u_generator)`; all indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntryFactor {
    pub row: usize,
    pub col: usize,
    pub generator: usize,
}

impl EntryFactor {
    pub fn new(row: usize, col: usize, generator: usize) -> Self {
        Self { row, col, generator }
    }
}

/// `E[ prod_a f_{i_a j_a}(u_{g_a}) * prod_b conj(f_{s_b t_b}(u_{h_b})) ]` at dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntryMomentSpec {
    pub k: usize,
    pub plain: Vec<EntryFactor>,
    pub conjugated: Vec<EntryFactor>,
}

impl EntryMomentSpec {
    pub fn new(k: usize, plain: Vec<EntryFactor>, conjugated: Vec<EntryFactor>) -> Result<Self, WeingartenError> {
        if k == 0 {
            return Err(WeingartenError::ZeroDimension);
        }
        for f in plain.iter().chain(&conjugated) {
            if f.generator == 0 {
                return Err(WeingartenError::ZeroGenerator);
            }
            for index in [f.row, f.col] {
                if index == 0 || index > k {
                    return Err(WeingartenError::IndexOutOfRange { index, k });
                }
            }
        }
        Ok(Self { k, plain, conjugated })
    }

    /// All factors on generator 1, given as `(row, col)` pairs.
    pub fn single(k: usize, plain: &[(usize, usize)], conjugated: &[(usize, usize)]) -> Result<Self, WeingartenError> {
        let lift = |v: &[(usize, usize)]| v.iter().map(|&(i, j)| EntryFactor::new(i, j, 1)).collect();
        Self::new(k, lift(plain), lift(conjugated))
    }

    fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.plain.iter().chain(&self.conjugated).map(|f| f.generator).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    fn factors_of(&self, generator: usize) -> (Vec<EntryFactor>, Vec<EntryFactor>) {
        let pick = |v: &[EntryFactor]| v.iter().copied().filter(|f| f.generator == generator).collect();
        (pick(&self.plain), pick(&self.conjugated))
    }
}

/// Whether the moment is forced to vanish: for some generator the plain and
/// conjugated factors differ in count, in row multiset, or in column multiset.
pub fn entry_moment_vanishes(spec: &EntryMomentSpec) -> bool {
    spec.generators().into_iter().any(|g| {
        let (p, c) = spec.factors_of(g);
        if p.len() != c.len() {
            return true;
        }
        let sorted = |v: &[EntryFactor], pick: fn(&EntryFactor) -> usize| {
            let mut x: Vec<usize> = v.iter().map(pick).collect();
            x.sort_unstable();
            x
        };
        sorted(&p, |f| f.row) != sorted(&c, |f| f.row) || sorted(&p, |f| f.col) != sorted(&c, |f| f.col)
    })
}

/// Permutations `p` with `target[b] == source[p(b)]` for every `b`.
fn matchings(source: &[usize], target: &[usize]) -> Vec<Permutation> {
    fn extend(b: usize, source: &[usize], target: &[usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if b == target.len() {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for a in 0..source.len() {
            if !used[a] && source[a] == target[b] {
                used[a] = true;
                cur.push(a);
                extend(b + 1, source, target, used, cur, out);
                cur.pop();
                used[a] = false;
            }
        }
    }
    let mut out = Vec::new();
    if source.len() == target.len() {
        extend(0, source, target, &mut vec![false; source.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// Exact oracle with a configurable order cap and a shared table cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    order_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { order_cap: DEFAULT_ORDER_CAP }
    }
}

impl Oracle {
    pub fn new(order_cap: usize) -> Result<Self, WeingartenError> {
        if order_cap > MAX_ORDER_CAP {
            return Err(WeingartenError::UnsupportedCap(order_cap));
        }
        Ok(Self { order_cap })
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    pub fn table(&self, m: usize, k: usize) -> Result<Arc<WeingartenTable>, WeingartenError> {
        if m == 0 {
            return Err(WeingartenError::ZeroOrder);
        }
        if m > self.order_cap {
            return Err(WeingartenError::OrderCapExceeded { m, cap: self.order_cap });
        }
        if k < m {
            return Err(WeingartenError::DimensionTooSmall { m, k });
        }
        if let Some(t) = cache().lock().expect("table cache poisoned").get(&(m, k)) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(build_table(m, k));
        cache().lock().expect("table cache poisoned").insert((m, k), Arc::clone(&table));
        Ok(table)
    }

    /// The raw Weingarten sum for one generator. No vanishing shortcut is
    /// taken beyond the empty sum when no matching permutation exists.
    pub fn single_generator_sum(
        &self,
        k: usize,
        plain: &[(usize, usize)],
        conjugated: &[(usize, usize)],
    ) -> Result<BigRational, WeingartenError> {
        if plain.len() != conjugated.len() {
            return Ok(BigRational::zero());
        }
        let m = plain.len();
        if m == 0 {
            return Ok(BigRational::one());
        }
        let table = self.table(m, k)?;
        let rows: Vec<usize> = plain.iter().map(|f| f.0).collect();
        let cols: Vec<usize> = plain.iter().map(|f| f.1).collect();
        let crow: Vec<usize> = conjugated.iter().map(|f| f.0).collect();
        let ccol: Vec<usize> = conjugated.iter().map(|f| f.1).collect();
        let row_matches = matchings(&rows, &crow);
        let col_matches = matchings(&cols, &ccol);
        let mut total = BigRational::zero();
        for s in &row_matches {
            let s_inv = s.inverse();
            for t in &col_matches {
                total += table.value(&t.compose(&s_inv));
            }
        }
        Ok(total)
    }

    pub fn entry_moment(&self, spec: &EntryMomentSpec) -> Result<BigRational, WeingartenError> {
        let mut product = BigRational::one();
        for g in spec.generators() {
            let (p, c) = spec.factors_of(g);
            let pairs = |v: &[EntryFactor]| v.iter().map(|f| (f.row, f.col)).collect::<Vec<_>>();
            let value = self.single_generator_sum(spec.k, &pairs(&p), &pairs(&c))?;
            if value.is_zero() {
                return Ok(value);
            }
            product *= value;
        }
        Ok(product)
    }

    /// `E tau_k(g_1(u) x_1 ... g_w(u) x_w)` over `mu_k^n`, exactly.
    pub fn word_moment(
        &self,
        expr: &AlternatingExpression,
        observables: &[ExactObservable],
        k: usize,
        n: usize,
    ) -> Result<Cyclotomic, WeingartenError> {
        if k == 0 {
            return Err(WeingartenError::ZeroDimension);
        }
        expr.validate(n, expr.m())?;
        for (i, obs) in observables.iter().enumerate() {
            if obs.dim() != k {
                return Err(WeingartenError::ObservableDimension { slot: i + 1, expected: k, found: obs.dim() });
            }
        }
        if expr.max_slot() > observables.len() {
            return Err(WeingartenError::SlotOutOfRange { slot: expr.max_slot(), available: observables.len() });
        }
        let letters = expr.flat_letters();
        let m = letters.len();
        let count = (k as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if count > INDEX_MAP_CAP {
            return Err(WeingartenError::IndexMapCapExceeded { count });
        }

        // An unbalanced generator kills every term.
        let mut balance: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for l in &letters {
            let e = balance.entry(l.generator()).or_default();
            if l.is_inverse() { e.1 += 1 } else { e.0 += 1 }
        }
        if balance.values().any(|(p, c)| p != c) {
            return Ok(Cyclotomic::zero());
        }
        for &(p, _) in balance.values() {
            if p > self.order_cap {
                return Err(WeingartenError::OrderCapExceeded { m: p, cap: self.order_cap });
            }
            if k < p {
                return Err(WeingartenError::DimensionTooSmall { m: p, k });
            }
        }

        // Observable x_nu sits before letter index cum_nu (mod m).
        let weight_positions: Vec<usize> = expr.cumulative_lengths().iter().map(|c| c % m).collect();
        let slots: Vec<usize> = expr.terms().iter().map(|t| t.slot - 1).collect();

        let spec_for = |alpha: &[usize]| -> EntryMomentSpec {
            let mut plain = Vec::new();
            let mut conjugated = Vec::new();
            for (j, l) in letters.iter().enumerate() {
                let (a, b) = (alpha[j] + 1, alpha[(j + 1) % m] + 1);
                if l.is_inverse() {
                    conjugated.push(EntryFactor::new(b, a, l.generator()));
                } else {
                    plain.push(EntryFactor::new(a, b, l.generator()));
                }
            }
            EntryMomentSpec { k, plain, conjugated }
        };

        // The integral depends on alpha only through its pattern of equal
        // indices, so it is cached per restricted growth string. Weights depend
        // on the indices at the observable positions; both are tallied as
        // integer counts and combined once at the end.
        let mut pattern_values: HashMap<Vec<usize>, Option<BigRational>> = HashMap::new();
        let mut tallies: HashMap<(Vec<usize>, Vec<usize>), u64> = HashMap::new();
        let mut alpha = vec![0usize; m];
        loop {
            let pattern = restricted_growth(&alpha);
            let value = match pattern_values.get(&pattern) {
                Some(v) => v.clone(),
                None => {
                    let spec = spec_for(&pattern);
                    let v = self.entry_moment(&spec)?;
                    let v = if v.is_zero() { None } else { Some(v) };
                    pattern_values.insert(pattern.clone(), v.clone());
                    v
                }
            };
            if value.is_some() {
                let at: Vec<usize> = weight_positions.iter().map(|&p| alpha[p]).collect();
                *tallies.entry((pattern, at)).or_default() += 1;
            }
            if !odometer(&mut alpha, k) {
                break;
            }
        }

        let mut keys: Vec<&(Vec<usize>, Vec<usize>)> = tallies.keys().collect();
        keys.sort();
        let mut total = Cyclotomic::zero();
        for key in keys {
            let integral = pattern_values[&key.0].as_ref().expect("only nonzero patterns are tallied");
            let scale = integral * BigRational::from_integer(BigInt::from(tallies[key]));
            let mut w = Cyclotomic::from_rational(scale);
            for (&slot, &a) in slots.iter().zip(&key.1) {
                w = &w * &observables[slot].entries[a];
            }
            total = &total + &w;
        }
        Ok(total.scale(&BigRational::new(BigInt::one(), BigInt::from(k))))
    }
}

/// Relabels values by order of first appearance.
fn restricted_growth(alpha: &[usize]) -> Vec<usize> {
    let mut labels: Vec<(usize, usize)> = Vec::new();
    alpha
        .iter()
        .map(|&a| match labels.iter().find(|(v, _)| *v == a) {
            Some(&(_, l)) => l,
            None => {
                let l = labels.len();
                labels.push((a, l));
                l
            }
        })
        .collect()
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// A diagonal observable with exact cyclotomic entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactObservable {
    entries: Vec<Cyclotomic>,
}

impl ExactObservable {
    pub fn new(entries: Vec<Cyclotomic>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> Cyclotomic {
        self.entries.iter().fold(Cyclotomic::zero(), |acc, z| &acc + z)
    }

    /// Exact form of a numeric observable. Patterned observables are rebuilt
    /// symbolically; explicit entries are read as the dyadic rationals they
    /// store and must sum to zero exactly.
    pub fn from_observable(obs: &DiagonalObservable, slot: usize) -> Result<Self, WeingartenError> {
        let k = obs.dim();
        let bound = crate::bounds::decimal_rational(obs.norm_bound()).ok_or(WeingartenError::ObservableNotExact { slot })?;
        let scaled = |sign: i64| Cyclotomic::from_rational(&bound * BigRational::from_integer(BigInt::from(sign)));
        let alternating = |len: usize| (0..len).map(|a| scaled(if a % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>();
        let entries = match obs.pattern() {
            DiagonalPattern::Alternating => alternating(k),
            DiagonalPattern::Balanced => {
                let mut d = alternating(k - k % 2);
                if k % 2 == 1 {
                    d.push(Cyclotomic::zero());
                }
                d
            }
            DiagonalPattern::RootsOfUnity => {
                (0..k).map(|a| Cyclotomic::root_of_unity(k, a).scale(&bound)).collect()
            }
            DiagonalPattern::Explicit(values) => values
                .iter()
                .map(|z| Cyclotomic::from_f64_exact(z.re, z.im).ok_or(WeingartenError::ObservableNotExact { slot }))
                .collect::<Result<Vec<_>, _>>()?,
        };
        let exact = Self { entries };
        if !exact.trace().is_zero() {
            return Err(WeingartenError::ObservableNotExact { slot });
        }
        Ok(exact)
    }
}

pub fn weingarten_table(m: usize, k: usize) -> Result<Arc<WeingartenTable>, WeingartenError> {
    Oracle::default().table(m, k)
}

pub fn exact_entry_moment(spec: &EntryMomentSpec) -> Result<BigRational, WeingartenError> {
    Oracle::default().entry_moment(spec)
}

/// Exact expected normalized trace of the alternating product.
pub fn exact_word_moment(
    expr: &AlternatingExpression,
    observables: &[DiagonalObservable],
    k: usize,
    n: usize,
) -> Result<Cyclotomic, WeingartenError> {
    let exact = observables
        .iter()
        .enumerate()
        .map(|(i, o)| ExactObservable::from_observable(o, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    Oracle::default().word_moment(expr, &exact, k, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rk(num: &dyn Fn(i64) -> i64, den: &dyn Fn(i64) -> i64, k: i64) -> BigRational {
        r(num(k), den(k))
    }

    #[test]
    fn permutations() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], Permutation::identity(3));
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.cycle_type(), vec![3]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.to_string(), "[2 3 1]");
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn order_one_and_two_tables() {
        for k in 1..=6i64 {
            let t = weingarten_table(1, k as usize).unwrap();
            assert_eq!(t.value(&Permutation::identity(1)), &r(1, k));
        }
        for k in 2..=7i64 {
            let t = weingarten_table(2, k as usize).unwrap();
            assert_eq!(t.value_of_type(&[1, 1]).unwrap(), &r(1, k * k - 1));
            assert_eq!(t.value_of_type(&[2]).unwrap(), &r(-1, k * (k * k - 1)));
        }
        let t = weingarten_table(2, 2).unwrap();
        assert_eq!(t.value_of_type(&[1, 1]).unwrap(), &r(1, 3));
        assert_eq!(t.value_of_type(&[2]).unwrap(), &r(-1, 6));
    }

    #[test]
    fn order_three_closed_forms() {
        for k in 3..=8i64 {
            let t = weingarten_table(3, k as usize).unwrap();
            let d = |k: i64| k * (k * k - 1) * (k * k - 4);
            assert_eq!(t.value_of_type(&[1, 1, 1]).unwrap(), &rk(&|k| k * k - 2, &d, k));
            assert_eq!(t.value_of_type(&[2, 1]).unwrap(), &rk(&|_| -1, &|k| (k * k - 1) * (k * k - 4), k));
            assert_eq!(t.value_of_type(&[3]).unwrap(), &rk(&|_| 2, &d, k));
        }
    }

    #[test]
    fn full_gram_orthogonality() {
        for (m, k) in [(3, 3), (4, 4), (4, 6), (5, 5)] {
            let t = weingarten_table(m, k).unwrap();
            let perms = Permutation::all(m);
            for s in perms.iter().take(12) {
                let mut acc = BigRational::zero();
                for p in &perms {
                    let g = integer_power(k, s.compose(&p.inverse()).cycles());
                    acc += BigRational::from_integer(g) * t.value(p);
                }
                let expected = if *s == Permutation::identity(m) { BigRational::one() } else { BigRational::zero() };
                assert_eq!(acc, expected, "m = {m}, k = {k}, s = {s}");
            }
        }
    }

    #[test]
    fn table_errors() {
        assert_eq!(weingarten_table(3, 2).unwrap_err(), WeingartenError::DimensionTooSmall { m: 3, k: 2 });
        assert_eq!(weingarten_table(6, 8).unwrap_err(), WeingartenError::OrderCapExceeded { m: 6, cap: 5 });
        assert!(Oracle::new(7).is_err());
        assert!(Oracle::new(6).unwrap().table(6, 6).is_ok());
    }

    #[test]
    fn vanishing_predicate() {
        let s = EntryMomentSpec::single(3, &[(1, 1)], &[]).unwrap();
        assert!(entry_moment_vanishes(&s));
        let s = EntryMomentSpec::single(3, &[(1, 1)], &[(2, 1)]).unwrap();
        assert!(entry_moment_vanishes(&s));
        let s = EntryMomentSpec::single(3, &[(1, 1)], &[(1, 1)]).unwrap();
        assert!(!entry_moment_vanishes(&s));
        // Balanced overall but not per generator.
        let s = EntryMomentSpec::new(3, vec![EntryFactor::new(1, 1, 1)], vec![EntryFactor::new(1, 1, 2)]).unwrap();
        assert!(entry_moment_vanishes(&s));
        assert!(exact_entry_moment(&s).unwrap().is_zero());
    }

    #[test]
    fn entry_moment_examples() {
        let s = EntryMomentSpec::single(3, &[(1, 1)], &[(1, 1)]).unwrap();
        assert_eq!(exact_entry_moment(&s).unwrap(), r(1, 3));
        let s = EntryMomentSpec::single(2, &[(1, 1), (2, 2)], &[(1, 1), (2, 2)]).unwrap();
        assert_eq!(exact_entry_moment(&s).unwrap(), r(1, 3));
        let s = EntryMomentSpec::single(2, &[(1, 1), (2, 2)], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(exact_entry_moment(&s).unwrap(), r(-1, 6));
        // E|u11|^4 = 2 / (k (k + 1)).
        for k in 2..=6i64 {
            let s = EntryMomentSpec::single(k as usize, &[(1, 1), (1, 1)], &[(1, 1), (1, 1)]).unwrap();
            assert_eq!(exact_entry_moment(&s).unwrap(), r(2, k * (k + 1)));
        }
        // Independent generators factorize.
        let s = EntryMomentSpec::new(
            3,
            vec![EntryFactor::new(1, 1, 1), EntryFactor::new(2, 3, 2)],
            vec![EntryFactor::new(1, 1, 1), EntryFactor::new(2, 3, 2)],
        )
        .unwrap();
        assert_eq!(exact_entry_moment(&s).unwrap(), r(1, 9));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            EntryMomentSpec::single(2, &[(3, 1)], &[]).unwrap_err(),
            WeingartenError::IndexOutOfRange { index: 3, k: 2 }
        );
        assert_eq!(
            EntryMomentSpec::new(2, vec![EntryFactor::new(1, 1, 0)], vec![]).unwrap_err(),
            WeingartenError::ZeroGenerator
        );
    }

    fn expr(terms: Vec<(Vec<Letter>, usize)>) -> AlternatingExpression {
        AlternatingExpression::from_letters(terms).unwrap()
    }

    fn alternating(k: usize) -> DiagonalObservable {
        DiagonalObservable::new(k, DiagonalPattern::Alternating, 1.0).unwrap()
    }

    #[test]
    fn word_moments_that_vanish() {
        let x = DiagonalObservable::new(3, DiagonalPattern::Balanced, 1.0).unwrap();
        let e = expr(vec![(vec![Letter::gen(1)], 1)]);
        assert!(exact_word_moment(&e, &[x], 3, 1).unwrap().is_zero());

        let e = expr(vec![(vec![Letter::gen(1)], 1), (vec![Letter::inv(1)], 2)]);
        let xs = [alternating(4), DiagonalObservable::new(4, DiagonalPattern::RootsOfUnity, 1.0).unwrap()];
        assert!(exact_word_moment(&e, &xs, 4, 1).unwrap().is_zero());
    }

    #[test]
    fn word_moment_errors() {
        let e = expr(vec![(vec![Letter::gen(1)], 2)]);
        assert_eq!(
            exact_word_moment(&e, &[alternating(2)], 2, 1).unwrap_err(),
            WeingartenError::SlotOutOfRange { slot: 2, available: 1 }
        );
        let e = expr(vec![(vec![Letter::gen(2)], 1)]);
        assert!(matches!(exact_word_moment(&e, &[alternating(2)], 2, 1), Err(WeingartenError::Word(_))));
        let e = expr(vec![(vec![Letter::gen(1)], 1)]);
        assert!(matches!(
            exact_word_moment(&e, &[alternating(2)], 4, 1),
            Err(WeingartenError::ObservableDimension { .. })
        ));
        let long: Vec<Letter> = (0..10).map(|_| Letter::gen(1)).collect();
        let e = expr(vec![(long, 1)]);
        assert!(matches!(
            exact_word_moment(&e, &[alternating(6)], 6, 1),
            Err(WeingartenError::IndexMapCapExceeded { .. })
        ));
    }

    #[test]
    fn exact_observables() {
        let o = DiagonalObservable::new(5, DiagonalPattern::RootsOfUnity, 0.5).unwrap();
        let e = ExactObservable::from_observable(&o, 1).unwrap();
        assert!(e.trace().is_zero());
        assert!((e.entries()[2].to_complex() - o.diag()[2]).norm() < 1e-15);
        let explicit = DiagonalObservable::new(
            3,
            DiagonalPattern::Explicit(vec![
                num_complex::Complex64::new(0.1, 0.0),
                num_complex::Complex64::new(0.2, 0.0),
                num_complex::Complex64::new(-0.3, 0.0),
            ]),
            1.0,
        )
        .unwrap();
        // 0.1 + 0.2 - 0.3 is not zero for the stored doubles.
        assert_eq!(
            ExactObservable::from_observable(&explicit, 4).unwrap_err(),
            WeingartenError::ObservableNotExact { slot: 4 }
        );
    }
}
