//! Flatness of `R^Gamma(D^r / N)` over `C[W]`: monomial ideals and their
//! filtrations, normalization of relations over `C[W]`, decomposition
//! certificates along coordinate ideals, and a truncated oracle for the
//! intersection `W_J R^Gamma(D^r) ∩ R^Gamma(N)`.

pub mod certificate;
pub mod monomial;
pub mod oracle;
pub mod syzygy;

pub use certificate::{check_simultaneous, flat_decompose, AuditTrail, FlatCertificate};
pub use monomial::{
    format_w_monomial, monomial_filtration, offsets, ChainStep, FiltrationChain, MonomialIdeal,
};
pub use oracle::{intersection_oracle, IntersectionVerdict, Truncation};
pub use syzygy::{kernel_normalize, partition_index, KernelNormalization, WPoly};
