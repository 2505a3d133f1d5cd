//! Exact Weingarten moments, explicit asymptotic-freeness bounds and
//! reproducible Monte Carlo over Haar-random unitaries.

pub mod bounds;
pub mod cyclotomic;
pub mod experiments;
pub mod freeness;
pub mod haar;
pub mod matrix;
pub mod parse;
pub mod rng;
pub mod verify;
pub mod weingarten;
pub mod word;
