//! Topological rewriting with reduction operators.
//!
//! The crate works on truncated spans of monomials, either polynomials with
//! the discrete topology or power series with the adic metric
//! `δ(u, v) = 2^-n` (`n` the lowest degree of `u - v`). A reduction operator
//! is stored as its inter-reduced rule table; kernels, the lattice operations,
//! obstructions to confluence, standard bases of power series ideals and the
//! duality used to study syntactic algebras are all built on top of it.
//!
//! All algorithms are generic over an exact [`Scalar`]; [`Q`] and the aliases
//! below fix the coefficient field to arbitrary precision rationals.

pub mod confluence;
pub mod duality;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod operator;
pub mod parse;
pub mod scalar;
pub mod series;
pub mod standard_basis;
pub mod syntactic;

pub use confluence::{
    AdmissibleDecomposition, ConfluenceVerdict, FamilyMember, Granularity, JoinResult, ObstructionReport,
    OperatorFamily, PairResidual, RewriteStep, RewriteTrace, Strategy,
};
pub use duality::{LinearForm, Representation};
pub use error::Error;
pub use groebner::{GroebnerVerdict, QuotientAlgebra};

pub use monomial::{Mode, Monomial, MonomialContext, MonomialOrder, Setting};
pub use operator::{Comparison, ReductionOperator};
pub use scalar::Scalar;
pub use series::{Distance, Precision, Series};
pub use standard_basis::StandardBasisVerdict;
pub use syntactic::{SyntacticOptions, SyntacticReport, SyntacticVerdict};

/// Arbitrary precision rationals, the default coefficient field.
pub type Q = num_rational::BigRational;
/// Series with rational coefficients.
pub type QSeries = Series<Q>;
/// Reduction operators with rational coefficients.
pub type QOperator = ReductionOperator<Q>;
/// Operator families with rational coefficients.
pub type QFamily = OperatorFamily<Q>;
/// Linear forms with rational coefficients.
pub type QForm = LinearForm<Q>;
/// Finite-dimensional quotients with rational coefficients.
pub type QAlgebra = QuotientAlgebra<Q>;
