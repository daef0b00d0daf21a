//! Exact arithmetic in real number fields, automata of β-representations
//! of zero, greedy expansions, normalization, and spectra of power sums.

pub mod algebraic;
pub mod automata;
pub mod converter;
pub mod error;
pub mod expansion;
pub mod interval;
pub mod poly;
pub mod roots;
pub mod spectrum;
pub mod word;
pub mod zero;

pub use algebraic::{BetaContext, FieldElement};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/zero.md")]
    mod zero {}
    #[doc = include_str!("../../../book/src/normalization.md")]
    mod normalization {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
