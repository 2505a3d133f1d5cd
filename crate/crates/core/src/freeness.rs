//! Moments in a free product of Haar unitaries `U_1, .., U_n` and one
//! commuting normal family `X_1, .., X_s`.
//!
//! A monomial is cut into maximal blocks from a single algebra (`U_i` powers,
//! or products of `X`'s). With `c_j = tau(b_j)`, expanding
//! `tau(prod (b_j - c_j)) = 0` gives
//! `tau(b_1 .. b_r) = -sum_{T proper} (-1)^{r - |T|} prod_{j not in T} c_j tau(prod_T b_j)`,
//! and every term on the right is shorter.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FreenessError {
    #[error("monomial degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("no moment known for x{0}")]
    UnknownObservable(usize),
    #[error("moment tau({0}) is not available")]
    UnknownMoment(String),
    #[error("cannot parse monomial token {token:?} at position {position}")]
    Syntax { token: String, position: usize },
    #[error("indices are 1-based")]
    ZeroIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Member `j` of the commuting family.
    X(usize),
    /// Haar unitary `i`.
    U(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialLetter {
    pub symbol: Symbol,
    pub adjoint: bool,
}

impl MonomialLetter {
    pub fn x(j: usize, adjoint: bool) -> Self {
        Self { symbol: Symbol::X(j), adjoint }
    }

    pub fn u(i: usize, adjoint: bool) -> Self {
        Self { symbol: Symbol::U(i), adjoint }
    }
}

impl fmt::Display for MonomialLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.adjoint { "*" } else { "" };
        match self.symbol {
            Symbol::X(j) => write!(f, "x{j}{star}"),
            Symbol::U(i) => write!(f, "u{i}{star}"),
        }
    }
}

/// A noncommutative monomial over the `x`'s, the `u`'s and their adjoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    letters: Vec<MonomialLetter>,
}

impl Monomial {
    pub fn new(letters: Vec<MonomialLetter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[MonomialLetter] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Lexicographically least rotation; traces agree on all rotations.
    pub fn canonical(&self) -> Self {
        let n = self.letters.len();
        (0..n.max(1))
            .map(|r| {
                let mut v = self.letters.clone();
                v.rotate_left(r.min(n));
                v
            })
            .min()
            .map(Self::new)
            .unwrap_or_else(|| self.clone())
    }

    pub fn involves_unitaries(&self) -> bool {
        self.letters.iter().any(|l| matches!(l.symbol, Symbol::U(_)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Monomial {
    type Err = FreenessError;

    /// Whitespace-separated tokens `x<j>`, `u<i>`, each optionally followed by `*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        if s.trim() == "1" {
            return Ok(Self { letters });
        }
        for (position, token) in s.split_whitespace().enumerate() {
            let bad = || FreenessError::Syntax { token: token.to_string(), position };
            let (body, adjoint) = match token.strip_suffix('*') {
                Some(b) => (b, true),
                None => (token, false),
            };
            let (kind, index) = body.split_at(body.char_indices().nth(1).map_or(body.len(), |(i, _)| i));
            let index: usize = index.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(FreenessError::ZeroIndex);
            }
            letters.push(match kind {
                "x" => MonomialLetter::x(index, adjoint),
                "u" => MonomialLetter::u(index, adjoint),
                _ => return Err(bad()),
            });
        }
        Ok(Self { letters })
    }
}

/// Every monomial of degree `1..=max_degree` over `x_1..x_s`, `u_1..u_n` and
/// adjoints, one representative per rotation class, sorted.
pub fn all_monomials(s: usize, n: usize, max_degree: usize) -> Vec<Monomial> {
    let mut alphabet = Vec::new();
    for j in 1..=s {
        alphabet.push(MonomialLetter::x(j, false));
        alphabet.push(MonomialLetter::x(j, true));
    }
    for i in 1..=n {
        alphabet.push(MonomialLetter::u(i, false));
        alphabet.push(MonomialLetter::u(i, true));
    }
    let mut out = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<MonomialLetter>> = vec![Vec::new()];
    for _ in 0..max_degree {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for prefix in &frontier {
            for &l in &alphabet {
                let mut w = prefix.clone();
                w.push(l);
                out.insert(Monomial::new(w.clone()).canonical());
                next.push(w);
            }
        }
        frontier = next;
    }
    out.into_iter().collect()
}

/// Moments of the commuting family: `tau` of a product of `x_j` / `x_j^*`.
pub trait XMoments {
    fn moment(&self, letters: &[(usize, bool)]) -> Result<Complex64, FreenessError>;
}

/// A family given by simultaneous diagonals; `tau` is the mean over the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalFamily {
    diags: Vec<Vec<Complex64>>,
}

impl DiagonalFamily {
    pub fn new(diags: Vec<Vec<Complex64>>) -> Self {
        Self { diags }
    }
}

impl XMoments for DiagonalFamily {
    fn moment(&self, letters: &[(usize, bool)]) -> Result<Complex64, FreenessError> {
        for &(j, _) in letters {
            if j == 0 || j > self.diags.len() {
                return Err(FreenessError::UnknownObservable(j));
            }
        }
        let k = self.diags.first().map_or(0, Vec::len);
        if k == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for a in 0..k {
            let mut p = Complex64::new(1.0, 0.0);
            for &(j, adj) in letters {
                let g = self.diags[j - 1][a];
                p *= if adj { g.conj() } else { g };
            }
            total += p;
        }
        Ok(total / k as f64)
    }
}

/// A single normal element given by a table `(p, q) -> tau(X^p (X^*)^q)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerMoments {
    values: BTreeMap<(usize, usize), Complex64>,
}

impl PowerMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: usize, q: usize, value: Complex64) -> Self {
        self.values.insert((p, q), value);
        self
    }
}

impl XMoments for PowerMoments {
    fn moment(&self, letters: &[(usize, bool)]) -> Result<Complex64, FreenessError> {
        if let Some(&(j, _)) = letters.iter().find(|(j, _)| *j != 1) {
            return Err(FreenessError::UnknownObservable(j));
        }
        let q = letters.iter().filter(|(_, adj)| *adj).count();
        let p = letters.len() - q;
        if (p, q) == (0, 0) {
            return Ok(Complex64::new(1.0, 0.0));
        }
        self.values.get(&(p, q)).copied().ok_or_else(|| {
            let name = match (p, q) {
                (p, 0) => format!("X^{p}"),
                (0, q) => format!("X*^{q}"),
                (p, q) => format!("X^{p} X*^{q}"),
            };
            FreenessError::UnknownMoment(name)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Block {
    U { index: usize, power: i64 },
    /// Sorted, since the family commutes.
    X(Vec<(usize, bool)>),
}

impl Block {
    fn same_algebra(&self, other: &Self) -> bool {
        match (self, other) {
            (Block::U { index: a, .. }, Block::U { index: b, .. }) => a == b,
            (Block::X(_), Block::X(_)) => true,
            _ => false,
        }
    }

    fn merge(&mut self, other: &Self) {
        match (self, other) {
            (Block::U { power, .. }, Block::U { power: q, .. }) => *power += q,
            (Block::X(a), Block::X(b)) => {
                a.extend_from_slice(b);
                a.sort_unstable();
            }
            _ => unreachable!("merge across algebras"),
        }
    }

    fn is_unit(&self) -> bool {
        matches!(self, Block::U { power: 0, .. })
    }
}

fn normalize(blocks: Vec<Block>) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_unit() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.same_algebra(&b) => {
                last.merge(&b);
                if last.is_unit() {
                    out.pop();
                }
            }
            _ => out.push(b),
        }
    }
    // Cyclic merge of the ends.
    while out.len() >= 2 && out[0].same_algebra(out.last().expect("len >= 2")) {
        let last = out.pop().expect("len >= 2");
        out[0].merge(&last);
        if out[0].is_unit() {
            out.remove(0);
            return normalize(out);
        }
    }
    out
}

fn blocks_of(monomial: &Monomial) -> Vec<Block> {
    monomial
        .letters()
        .iter()
        .map(|l| match l.symbol {
            Symbol::U(i) => Block::U { index: i, power: if l.adjoint { -1 } else { 1 } },
            Symbol::X(j) => Block::X(vec![(j, l.adjoint)]),
        })
        .collect()
}

struct Evaluator<'a> {
    family: &'a dyn XMoments,
    memo: HashMap<Vec<Block>, Complex64>,
}

impl Evaluator<'_> {
    fn base(&self, b: &Block) -> Result<Complex64, FreenessError> {
        match b {
            Block::U { power, .. } => Ok(Complex64::new(if *power == 0 { 1.0 } else { 0.0 }, 0.0)),
            Block::X(letters) => self.family.moment(letters),
        }
    }

    fn tau(&mut self, blocks: Vec<Block>) -> Result<Complex64, FreenessError> {
        let blocks = normalize(blocks);
        match blocks.len() {
            0 => return Ok(Complex64::new(1.0, 0.0)),
            1 => return self.base(&blocks[0]),
            _ => {}
        }
        if let Some(v) = self.memo.get(&blocks) {
            return Ok(*v);
        }
        let r = blocks.len();
        let centers = blocks.iter().map(|b| self.base(b)).collect::<Result<Vec<_>, _>>()?;
        let mut total = Complex64::new(0.0, 0.0);
        for mask in 0..(1u32 << r) - 1 {
            let mut coefficient = Complex64::new(1.0, 0.0);
            for (j, c) in centers.iter().enumerate() {
                if mask & (1 << j) == 0 {
                    coefficient *= c;
                }
            }
            if coefficient == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dropped = r - mask.count_ones() as usize;
            let sign = if dropped.is_multiple_of(2) { -1.0 } else { 1.0 };
            let kept: Vec<Block> =
                blocks.iter().enumerate().filter(|(j, _)| mask & (1 << j) != 0).map(|(_, b)| b.clone()).collect();
            total += coefficient * sign * self.tau(kept)?;
        }
        self.memo.insert(blocks, total);
        Ok(total)
    }
}

/// `tau(monomial)` with the `U`'s free Haar unitaries, free from the family.
pub fn free_moment(monomial: &Monomial, family: &dyn XMoments) -> Result<Complex64, FreenessError> {
    free_moment_capped(monomial, family, DEFAULT_DEGREE_CAP)
}

pub fn free_moment_capped(monomial: &Monomial, family: &dyn XMoments, cap: usize) -> Result<Complex64, FreenessError> {
    if monomial.degree() > cap {
        return Err(FreenessError::DegreeCapExceeded { degree: monomial.degree(), cap });
    }
    Evaluator { family, memo: HashMap::new() }.tau(blocks_of(monomial))
}

/// Moment of a monomial in `y_j = u_j^* x_j u_j` with free Haar `u_j`; each
/// `x`-letter of `monomial` stands for the corresponding `y`.
pub fn conjugated_free_moment(monomial: &Monomial, family: &dyn XMoments, cap: usize) -> Result<Complex64, FreenessError> {
    if monomial.degree() > cap {
        return Err(FreenessError::DegreeCapExceeded { degree: monomial.degree(), cap });
    }
    let mut blocks = Vec::with_capacity(3 * monomial.degree());
    for l in monomial.letters() {
        match l.symbol {
            Symbol::X(j) => {
                blocks.push(Block::U { index: j, power: -1 });
                blocks.push(Block::X(vec![(j, l.adjoint)]));
                blocks.push(Block::U { index: j, power: 1 });
            }
            Symbol::U(_) => return Err(FreenessError::Syntax { token: l.to_string(), position: 0 }),
        }
    }
    Evaluator { family, memo: HashMap::new() }.tau(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn centered_alternating_product_vanishes() {
        let fam = PowerMoments::new().with(1, 0, c(0.0)).with(0, 1, c(0.0));
        assert_eq!(free_moment(&mono("u1 x1 u1* x1"), &fam).unwrap(), c(0.0));
    }

    #[test]
    fn uncentered_sandwich_is_product_of_traces() {
        let t = Complex64::new(0.3, -0.7);
        let fam = PowerMoments::new().with(1, 0, t);
        let v = free_moment(&mono("u1 x1 u1* x1"), &fam).unwrap();
        assert!((v - t * t).norm() < 1e-15);
    }

    #[test]
    fn unitary_powers() {
        let fam = PowerMoments::new();
        assert_eq!(free_moment(&mono("u1 u1"), &fam).unwrap(), c(0.0));
        assert_eq!(free_moment(&mono("u1 u1*"), &fam).unwrap(), c(1.0));
        assert_eq!(free_moment(&mono("u1 u2 u1* u2*"), &fam).unwrap(), c(0.0));
        assert_eq!(free_moment(&mono("u1 u2 u2* u1*"), &fam).unwrap(), c(1.0));
    }

    #[test]
    fn family_moments_pass_through() {
        let fam = DiagonalFamily::new(vec![vec![c(1.0), c(-1.0)], vec![c(2.0), c(0.0)]]);
        assert_eq!(free_moment(&mono("x1 x1"), &fam).unwrap(), c(1.0));
        assert_eq!(free_moment(&mono("x1 x2"), &fam).unwrap(), c(1.0));
        // x2 is not centered: tau(u x2 u* x2) = tau(x2)^2.
        assert_eq!(free_moment(&mono("u1 x2 u1* x2"), &fam).unwrap(), c(1.0));
        // tau(u a u* b) = tau(a) tau(b) for any a, b in the family algebra.
        let v = free_moment(&mono("u1 x1 x2 u1* x2 x2"), &fam).unwrap();
        assert!((v - c(1.0 * 2.0)).norm() < 1e-14);
    }

    #[test]
    fn second_order_free_moment() {
        // tau(u a u* b u a' u* b') = tau(aa') tau(b) tau(b') + tau(a) tau(a') tau(bb')
        //                            - tau(a) tau(a') tau(b) tau(b') for free {a,a'}, {b,b'}.
        let fam = DiagonalFamily::new(vec![vec![c(2.0), c(-1.0), c(0.5)]]);
        let t1: f64 = (2.0 - 1.0 + 0.5) / 3.0;
        let t2 = (4.0 + 1.0 + 0.25) / 3.0;
        let expected = t2 * t1 * t1 + t1 * t1 * t2 - t1.powi(4);
        let v = free_moment_capped(&mono("u1 x1 u1* x1 u1 x1 u1* x1"), &fam, 8).unwrap();
        assert!((v.re - expected).abs() < 1e-12 && v.im.abs() < 1e-12, "{v}");
    }

    #[test]
    fn errors() {
        let fam = PowerMoments::new();
        assert!(matches!(free_moment(&mono("x1"), &fam), Err(FreenessError::UnknownMoment(_))));
        assert!(matches!(free_moment(&mono("x2"), &fam), Err(FreenessError::UnknownObservable(2))));
        let long = mono("u1 u1 u1 u1 u1 u1 u1");
        assert_eq!(
            free_moment(&long, &fam).unwrap_err(),
            FreenessError::DegreeCapExceeded { degree: 7, cap: 6 }
        );
        assert!("y1".parse::<Monomial>().is_err());
        assert_eq!("x0".parse::<Monomial>().unwrap_err(), FreenessError::ZeroIndex);
    }

    #[test]
    fn monomial_text_and_rotation() {
        let m = mono("u1* x1 x2*");
        assert_eq!(m.to_string(), "u1* x1 x2*");
        assert_eq!(mono("x1 u1 x2").canonical(), mono("x1 u1 x2"));
        assert_eq!(mono("u1 x2 x1").canonical(), mono("x1 u1 x2"));
        // 4 letters, degree <= 2: 4 of degree 1 and 10 rotation classes of degree 2.
        assert_eq!(all_monomials(1, 1, 2).len(), 4 + 10);
    }

    #[test]
    fn conjugated_family() {
        let fam = DiagonalFamily::new(vec![vec![c(1.0), c(-1.0)], vec![c(1.0), c(-1.0)]]);
        // y1 and y2 are free copies of x: tau(y1 y2 y1 y2) = 0, tau(y1 y1) = 1.
        assert!(conjugated_free_moment(&mono("x1 x2 x1 x2"), &fam, 6).unwrap().norm() < 1e-15);
        assert_eq!(conjugated_free_moment(&mono("x1 x1"), &fam, 6).unwrap(), c(1.0));
        assert_eq!(conjugated_free_moment(&mono("x1 x1 x2 x2"), &fam, 6).unwrap(), c(1.0));
    }

    fn alternating_descriptor() -> impl Strategy<Value = Vec<MonomialLetter>> {
        // Alternate between the family and unitaries drawn from {u1, u2}; each
        // letter is centered and no two neighbours (cyclically) share an algebra.
        (1usize..=3, proptest::collection::vec((any::<bool>(), 1usize..=2, any::<bool>()), 6)).prop_map(
            |(pairs, picks)| {
                let mut v = Vec::new();
                for &(adj_x, u, adj_u) in picks.iter().take(pairs) {
                    v.push(MonomialLetter::x(1, adj_x));
                    v.push(MonomialLetter::u(u, adj_u));
                }
                v
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn alternating_centered_products_vanish(letters in alternating_descriptor()) {
            let fam = DiagonalFamily::new(vec![vec![c(1.0), c(-1.0), Complex64::new(0.0, 2.0), Complex64::new(0.0, -2.0)]]);
            let v = free_moment(&Monomial::new(letters), &fam).unwrap();
            prop_assert_eq!(v, c(0.0));
        }

        #[test]
        fn rotation_invariant(letters in proptest::collection::vec((0usize..4, any::<bool>()), 1..6), r in 0usize..6) {
            let fam = DiagonalFamily::new(vec![vec![c(1.0), c(-0.5), c(-0.5)], vec![c(0.25), c(1.0), c(-1.25)]]);
            let m = Monomial::new(letters.iter().map(|&(s, adj)| match s {
                0 => MonomialLetter::x(1, adj),
                1 => MonomialLetter::x(2, adj),
                2 => MonomialLetter::u(1, adj),
                _ => MonomialLetter::u(2, adj),
            }).collect());
            let mut rotated = m.letters().to_vec();
            let len = rotated.len();
            rotated.rotate_left(r % len);
            let a = free_moment(&m, &fam).unwrap();
            let b = free_moment(&Monomial::new(rotated), &fam).unwrap();
            prop_assert!((a - b).norm() < 1e-12);
        }
    }
}
