//! Independent oracles for the test suites. Apart from `criteria`, nothing
//! here calls the engine, the standard-basis code or the certificate code;
//! the Weyl product is checked separately by `evaluator` before other
//! oracles rely on it. `criteria` runs the engine and judges its output
//! with the oracles.
// matrix and exponent loops read better indexed
#![allow(clippy::needless_range_loop)]

pub mod criteria;
pub mod evaluator;
pub mod linear;
pub mod monomial;
pub mod rees;
pub mod symbols;
pub mod syzygy;
