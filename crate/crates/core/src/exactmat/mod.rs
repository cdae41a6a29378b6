//! Exact integer linear algebra: determinants, characteristic polynomials,
//! Smith/Hermite normal forms and the roots-of-unity eigenvalue decision.

mod cyclotomic;
mod lattice;
mod matrix;
mod normal_form;
mod poly;

use thiserror::Error;

pub use cyclotomic::{
    cyclotomic_orders_up_to_degree, cyclotomic_poly, divisors, euler_phi, has_eigenvalue_one,
    power_is_unipotent, roots_of_unity_eigenvalues, split_cyclotomic, unipotence_exponent,
    CyclotomicSplit, EigenvalueVerdict,
};
pub use lattice::Sublattice;
pub use matrix::IntMatrix;
pub use normal_form::{column_echelon, hermite_normal_form, smith_normal_form, xgcd, SmithForm};
pub use poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("RANK_DEFICIENT: matrix does not have full column rank")]
    RankDeficient,
    #[error("NOT_UNIMODULAR: determinant is not ±1")]
    NotUnimodular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
}
