//! Text form of alternating expressions.
//!
//! ```text
//! expression := (word_token+ obs_token)+
//! word_token := "h" INT [ "^-1" ]
//! obs_token  := "x" INT
//! ```
//!
//! Tokens are whitespace separated. Consecutive word tokens form one word,
//! which is reduced; a word that reduces to the identity is rejected.

use std::str::FromStr;

use thiserror::Error;

use crate::word::{AlternatingExpression, Letter, ReducedWord, Term, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at token {token_index} (byte {offset}): {message}")]
    Syntax { token_index: usize, offset: usize, message: String },
    #[error("word before observable x{slot} (term {term}) reduces to the identity")]
    EmptyWord { term: usize, slot: usize },
    #[error("word at byte {offset} is not followed by an observable")]
    TrailingWord { offset: usize },
    #[error("expression is empty")]
    Empty,
    #[error(transparent)]
    Word(#[from] WordError),
}

enum Token {
    Letter(Letter),
    Slot(usize),
}

fn positive_index(digits: &str) -> Option<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&v| v > 0)
}

fn lex(token: &str) -> Result<Token, String> {
    if let Some(rest) = token.strip_prefix('h') {
        let (digits, inverse) = match rest.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let g = positive_index(digits).ok_or_else(|| format!("expected h<positive integer>[^-1], found {token:?}"))?;
        return Ok(Token::Letter(if inverse { Letter::inv(g) } else { Letter::gen(g) }));
    }
    if let Some(rest) = token.strip_prefix('x') {
        let slot = positive_index(rest).ok_or_else(|| format!("expected x<positive integer>, found {token:?}"))?;
        return Ok(Token::Slot(slot));
    }
    Err(format!("unexpected token {token:?}"))
}

/// Byte offsets and contents of the whitespace-separated tokens.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

pub fn parse_expression(text: &str) -> Result<AlternatingExpression, ParseError> {
    let mut terms = Vec::new();
    let mut pending: Vec<Letter> = Vec::new();
    let mut word_start = 0;
    for (token_index, (offset, raw)) in tokens(text).into_iter().enumerate() {
        match lex(raw).map_err(|message| ParseError::Syntax { token_index, offset, message })? {
            Token::Letter(l) => {
                if pending.is_empty() {
                    word_start = offset;
                }
                pending.push(l);
            }
            Token::Slot(slot) => {
                if pending.is_empty() {
                    return Err(ParseError::Syntax {
                        token_index,
                        offset,
                        message: format!("observable x{slot} must follow a word"),
                    });
                }
                let word = ReducedWord::reduce(pending.drain(..));
                if word.is_identity() {
                    return Err(ParseError::EmptyWord { term: terms.len() + 1, slot });
                }
                terms.push(Term { word, slot });
            }
        }
    }
    if !pending.is_empty() {
        return Err(ParseError::TrailingWord { offset: word_start });
    }
    if terms.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(AlternatingExpression::new(terms)?)
}

impl FromStr for AlternatingExpression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expression(s)
    }
}
