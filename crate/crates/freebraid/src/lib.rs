//! Exact-arithmetic computer algebra for free braided associative algebras.
//!
//! The crate models the free associative algebra `K<x1,...,xn>` over the
//! rationals or an odd prime field, diagonal braidings `x_i (x) x_s |->
//! q_is * x_s (x) x_i` together with their canonical extension to the whole
//! tensor algebra, tame decomposition of two-variable automorphisms into
//! elementary factors, and the decision procedures that classify and verify
//! automorphisms of the braided algebra. Everything is exact: no floats,
//! no tolerances, equality is equality.

pub mod autos;
pub mod braided_autos;
pub mod braiding;
pub mod cli;
pub mod freealg;
pub mod parse;
pub mod scalar;

pub use autos::{ElementaryAuto, Endomorphism, Group, TameDecomposition};
pub use braided_autos::{AutGroupKind, Bicharacter, CheckMethod, WitnessReport};
pub use braiding::{DiagonalBraiding, ExtensionMethod, MatrixBraiding, OperatorWord, TensorElement};
pub use freealg::{Degree, Grading, Multidegree, Parity, Polynomial, Word};
pub use scalar::{FieldSpec, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no inverse")]
    NonInvertible,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands have different generator counts")]
    ArityMismatch,
    #[error("index {pos} out of range 1..={len}")]
    IndexOutOfRange { pos: usize, len: usize },
    #[error("matrix of side {side} does not act on a tensor square (expected side {n}^2)")]
    DimensionMismatch { side: usize, n: usize },
    #[error("operator indices k={k}, r={r} invalid for ambient power {m}")]
    BadIndices { k: usize, r: usize, m: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("braiding is not involutive")]
    NotInvolutive,
    #[error("braiding parameters must be nonzero")]
    ZeroBraidingEntry,
    #[error("endomorphism is not an automorphism of the free algebra")]
    NotAnAutomorphism,
    #[error("endomorphism image is zero")]
    ZeroImage,
    #[error("fields of characteristic 2 are not supported")]
    CharTwoField,
    #[error("{p} is not an odd prime")]
    NotOddPrime { p: u64 },
    #[error("elementary addend must avoid the target generator")]
    AddendUsesTarget,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
