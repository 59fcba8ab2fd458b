//! Weyl algebra arithmetic, V-multifiltrations, L-standard bases, the
//! standard fan of a submodule of `D^r` and flatness certificates for its
//! Rees modules over toric rings.
// matrix and exponent loops read better indexed
#![allow(clippy::needless_range_loop)]

mod engine;
pub mod error;
pub mod fan;
pub mod filtration;
pub mod flatness;
pub mod grammar;
pub mod linalg;
pub mod rees;
pub mod sample;
pub mod standard_basis;
pub mod toric;
pub mod weights;
pub mod weyl;

pub use engine::Limits;
pub use error::{AlgebraError, ParseError, Result};
pub use fan::{standard_fan, Fan, FanCone, FanLimits};
pub use filtration::{ShiftMatrix, VNewtonDiagram};
pub use flatness::{
    flat_decompose, intersection_oracle, kernel_normalize, monomial_filtration, FlatCertificate,
    IntersectionVerdict, MonomialIdeal,
};
pub use rees::{
    fiber_v_zero_test, gamma_fiber_reduce, rees_mul, AElement, FiberVerdict, ReesElement,
};
pub use standard_basis::{
    divide, divide_by, member_hn, member_n, reduce_basis, BasisKey, DivisionResult,
    HomogenizedModule, Membership, StandardBasis,
};
pub use toric::{BasicCone, RaySet};
pub use weights::{GeneralForm, Grading, LinearForm, TermOrder};
pub use weyl::{Monomial, OpVec, Operator, Rational, RingDescriptor};
