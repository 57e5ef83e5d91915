//! Exact construction of sign-invariant, locally cylindrical cells around a
//! rational sample point.
//!
//! Given a finite set of multivariate polynomials over the rationals and a
//! sample point, the engine computes a symbolic cell description (one section
//! or sector per variable level) on which every input polynomial keeps its
//! sign. Two construction strategies are provided: the classical projection
//! (discriminants plus leading coefficients) and a variant based on projective
//! delineability that omits leading coefficients where the cyclic structure of
//! the projective line makes them unnecessary. All arithmetic is exact; there
//! is no floating point anywhere in this crate.

pub mod arith;
pub mod cellmodel;
pub mod poly;
pub mod projline;
pub mod realroots;
pub mod scc;
pub mod scc_projective;
pub mod verify;

pub use arith::{Rat, RatInterval};
pub use cellmodel::{Cell, CounterSet, IndexedRoot, ProjectionTag, SymbolicInterval, TagKind};
pub use poly::{Polynomial, Var, VarOrder};
pub use realroots::{AlgebraicValue, RootList};
pub use scc::{construct_cell, ConstructError, Heuristic};
pub use scc_projective::construct_cell_pd;
pub use verify::{verify_sign_invariance, VerifyReport};

/// Errors raised by operations whose mathematical preconditions are violated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{op} requires positive degree in the given variable")]
    DegreeTooLow { op: &'static str },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("cyclic order requires pairwise distinct points")]
    NotDistinct,
    #[error("reference degree {d} is below the polynomial degree {deg}")]
    DegreeBound { d: u32, deg: u32 },
    #[error("interval endpoint is a root; perturb the endpoints")]
    EndpointIsRoot,
}

pub type Result<T> = std::result::Result<T, Error>;
