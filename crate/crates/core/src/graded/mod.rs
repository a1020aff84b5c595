//! Exact scalars, graded bases, symmetric words and Koszul-sign bookkeeping.

mod element;
mod sign;
mod space;
mod word;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use element::{parse_scalar, Element, ElementRepr, Monomial, TermRepr};
pub use sign::{
    koszul_sign, koszul_sign_of_sequence, koszul_sign_parities, ordered_splits, permutations,
    set_partitions,
};
pub use space::{GradedSpace, Grading, Letter, LetterSpec};
pub use word::{comultiply, desymmetrize, sym_canonicalize, sym_words, SymWord, TensorWord};

/// Exact rational ground field.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("not a permutation")]
    NotAPermutation,
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("empty letter name")]
    EmptyName,
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` has different degrees in the two spaces")]
    DegreeMismatch(String),
    #[error("too many letters ({0})")]
    TooManyLetters(usize),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
}
