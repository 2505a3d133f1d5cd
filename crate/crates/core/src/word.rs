//! Reduced words in the free group `F_n` and the alternating word/observable
//! expressions `g_1 x_1 g_2 x_2 ... g_w x_w`.
//!
//! Generators are 1-based (`h1, h2, ...`). Words store individual letters, so
//! `length` is the letter count used by every bound in [`crate::bounds`].

use std::fmt;

use thiserror::Error;

use crate::matrix::{ComplexMatrix, MatrixError, UnitaryMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("generator index must be at least 1")]
    ZeroGenerator,
    #[error("term {term} has a word that reduces to the identity")]
    EmptyWord { term: usize },
    #[error("declared total length {declared} but words have total length {actual}")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("generator h{generator} is out of range for n = {n}")]
    GeneratorOutOfRange { generator: usize, n: usize },
    #[error("observable slot must be at least 1")]
    ZeroSlot,
    #[error("expression needs at least one term")]
    NoTerms,
    #[error("word in term {term} is not reduced")]
    NotReduced { term: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A generator or its inverse: `h_g` when `inverse` is false, `h_g^-1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Result<Self, WordError> {
        if generator == 0 {
            return Err(WordError::ZeroGenerator);
        }
        assert!(exponent == 1 || exponent == -1, "exponent must be +1 or -1");
        Ok(Self { generator, inverse: exponent == -1 })
    }

    /// `h_g`.
    pub fn gen(generator: usize) -> Self {
        Self::new(generator, 1).expect("generator index must be at least 1")
    }

    /// `h_g^-1`.
    pub fn inv(generator: usize) -> Self {
        Self::new(generator, -1).expect("generator index must be at least 1")
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn inverted(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Self) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "h{}^-1", self.generator)
        } else {
            write!(f, "h{}", self.generator)
        }
    }
}

/// A freely reduced word. The empty word is the identity `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Free reduction by iterated cancellation of adjacent inverse pairs.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Self { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &Self) -> Self {
        Self::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Evaluates the word at a tuple of unitaries, mapping `h_g^-1` to the
    /// conjugate transpose of `us[g - 1]`.
    pub fn evaluate(&self, us: &[UnitaryMatrix]) -> Result<ComplexMatrix, WordError> {
        let k = match us.first() {
            Some(u) => u.dim(),
            None if self.is_identity() => {
                return Err(WordError::Matrix(MatrixError::EmptyTuple));
            }
            None => {
                return Err(WordError::GeneratorOutOfRange { generator: self.max_generator(), n: 0 })
            }
        };
        if let Some(u) = us.iter().find(|u| u.dim() != k) {
            return Err(MatrixError::DimensionMismatch { expected: k, found: u.dim() }.into());
        }
        let mut acc = ComplexMatrix::identity(k);
        for letter in &self.letters {
            let u = us.get(letter.generator - 1).ok_or(WordError::GeneratorOutOfRange {
                generator: letter.generator,
                n: us.len(),
            })?;
            acc = if letter.inverse {
                acc.mul_adjoint(u.as_matrix())
            } else {
                acc.mul(u.as_matrix())
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// One factor `g_i x_i` of an alternating expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub word: ReducedWord,
    /// 1-based index into an externally supplied observable list.
    pub slot: usize,
}

/// `g_1 x_1 ... g_w x_w` with every `g_i != e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternatingExpression {
    terms: Vec<Term>,
    total_length: usize,
}

impl AlternatingExpression {
    pub fn new(terms: Vec<Term>) -> Result<Self, WordError> {
        if terms.is_empty() {
            return Err(WordError::NoTerms);
        }
        for (i, t) in terms.iter().enumerate() {
            if t.word.is_identity() {
                return Err(WordError::EmptyWord { term: i + 1 });
            }
            if ReducedWord::reduce(t.word.letters().iter().copied()) != t.word {
                return Err(WordError::NotReduced { term: i + 1 });
            }
            if t.slot == 0 {
                return Err(WordError::ZeroSlot);
            }
        }
        let total_length = terms.iter().map(|t| t.word.len()).sum();
        Ok(Self { terms, total_length })
    }

    /// Convenience constructor from `(letters, slot)` pairs; each letter list is
    /// reduced before validation.
    pub fn from_letters(terms: Vec<(Vec<Letter>, usize)>) -> Result<Self, WordError> {
        Self::new(
            terms
                .into_iter()
                .map(|(letters, slot)| Term { word: ReducedWord::reduce(letters), slot })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms `w`.
    pub fn w(&self) -> usize {
        self.terms.len()
    }

    /// Total letter count `m`.
    pub fn m(&self) -> usize {
        self.total_length
    }

    pub fn max_generator(&self) -> usize {
        self.terms.iter().map(|t| t.word.max_generator()).max().unwrap_or(0)
    }

    pub fn max_slot(&self) -> usize {
        self.terms.iter().map(|t| t.slot).max().unwrap_or(0)
    }

    /// Cumulative lengths `m_1 < m_2 < ... < m_w = m`.
    pub fn cumulative_lengths(&self) -> Vec<usize> {
        self.terms
            .iter()
            .scan(0, |acc, t| {
                *acc += t.word.len();
                Some(*acc)
            })
            .collect()
    }

    /// All letters of `g_1 g_2 ... g_w` in order (not reduced across terms).
    pub fn flat_letters(&self) -> Vec<Letter> {
        self.terms.iter().flat_map(|t| t.word.letters().iter().copied()).collect()
    }

    /// Checks the expression's hypotheses against `n` generators and a declared `m`.
    pub fn validate(&self, n: usize, declared_m: usize) -> Result<(), WordError> {
        if let Some(g) = self.flat_letters().iter().map(|l| l.generator).find(|&g| g > n) {
            return Err(WordError::GeneratorOutOfRange { generator: g, n });
        }
        if declared_m != self.total_length {
            return Err(WordError::LengthMismatch { declared: declared_m, actual: self.total_length });
        }
        Ok(())
    }
}

/// Validates `(words, slots)` as an alternating expression with `n` generators
/// and total length `declared_m`.
pub fn validate_expression(
    terms: Vec<Term>,
    n: usize,
    declared_m: usize,
) -> Result<AlternatingExpression, WordError> {
    let expr = AlternatingExpression::new(terms)?;
    expr.validate(n, declared_m)?;
    Ok(expr)
}

impl fmt::Display for AlternatingExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{} x{}", t.word, t.slot)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_cancellation() {
        let w = ReducedWord::reduce([Letter::gen(1), Letter::inv(1)]);
        assert!(w.is_identity());
    }

    #[test]
    fn inner_cancellation() {
        let w = ReducedWord::reduce([Letter::gen(1), Letter::gen(2), Letter::inv(2), Letter::gen(1)]);
        assert_eq!(w.letters(), &[Letter::gen(1), Letter::gen(1)]);
    }

    #[test]
    fn reduced_word_unchanged() {
        let w = ReducedWord::reduce([Letter::gen(1), Letter::gen(2)]);
        assert_eq!(w.letters(), &[Letter::gen(1), Letter::gen(2)]);
    }

    #[test]
    fn inverses() {
        let w = ReducedWord::reduce([Letter::gen(1), Letter::gen(2)]);
        assert_eq!(w.inverse().letters(), &[Letter::inv(2), Letter::inv(1)]);
        assert!(ReducedWord::identity().inverse().is_identity());
        let single = ReducedWord::reduce([Letter::inv(1)]);
        assert_eq!(single.inverse().letters(), &[Letter::gen(1)]);
        assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn zero_generator_rejected() {
        assert_eq!(Letter::new(0, 1), Err(WordError::ZeroGenerator));
    }

    #[test]
    fn validate_examples() {
        let ok = validate_expression(
            vec![
                Term { word: ReducedWord::reduce([Letter::gen(1)]), slot: 1 },
                Term { word: ReducedWord::reduce([Letter::inv(1)]), slot: 2 },
            ],
            1,
            2,
        )
        .unwrap();
        assert_eq!(ok.w(), 2);
        assert_eq!(ok.m(), 2);

        let empty = validate_expression(
            vec![
                Term { word: ReducedWord::reduce([Letter::gen(1)]), slot: 1 },
                Term { word: ReducedWord::identity(), slot: 2 },
            ],
            1,
            1,
        );
        assert_eq!(empty, Err(WordError::EmptyWord { term: 2 }));

        let mismatch = validate_expression(
            vec![Term { word: ReducedWord::reduce([Letter::gen(1), Letter::gen(2)]), slot: 1 }],
            2,
            1,
        );
        assert_eq!(mismatch, Err(WordError::LengthMismatch { declared: 1, actual: 2 }));

        let range = validate_expression(
            vec![Term { word: ReducedWord::reduce([Letter::gen(3)]), slot: 1 }],
            2,
            1,
        );
        assert_eq!(range, Err(WordError::GeneratorOutOfRange { generator: 3, n: 2 }));
    }

    #[test]
    fn unreduced_term_rejected() {
        let raw = ReducedWord { letters: vec![Letter::gen(1), Letter::inv(1), Letter::gen(2)] };
        let r = AlternatingExpression::new(vec![Term { word: raw, slot: 1 }]);
        assert_eq!(r, Err(WordError::NotReduced { term: 1 }));
    }

    #[test]
    fn cumulative_lengths() {
        let e = AlternatingExpression::from_letters(vec![
            (vec![Letter::gen(1), Letter::gen(2)], 1),
            (vec![Letter::inv(1)], 2),
            (vec![Letter::inv(2), Letter::inv(2)], 1),
        ])
        .unwrap();
        assert_eq!(e.cumulative_lengths(), vec![2, 3, 5]);
        assert_eq!(e.m(), 5);
        assert_eq!(e.to_string(), "h1 h2 x1 h1^-1 x2 h2^-1 h2^-1 x1");
    }
}
