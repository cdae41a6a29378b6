//! The ambient groups ℤ³⋊ℤ, H(r)⋊ℤ and H(r)×ℤ: descriptors, element
//! arithmetic, structural subgroups and the type classification.

mod group;
mod structure;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmat::{split_cyclotomic, IntMatrix, MatError};
use crate::heis::HeisError;

pub use group::{Fiber, HeisAutomorphism, WangElement, WangGroup};
pub use structure::{psi_automorphism, Center, CommutatorLattice, InoueType, PsiAutomorphism, RadTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    BadShape,
    DetNotOne,
    DetNotUnimodular,
    EigenvalueOne,
    NotComplexPair,
    NoExpandingRoot,
    RootsOfUnity,
    NotRealSplit,
    NoExpandingEigenvalue,
    CenterExponentMismatch,
    BadR,
}

impl Diagnostic {
    pub fn code(self) -> &'static str {
        match self {
            Diagnostic::BadShape => "BAD_SHAPE",
            Diagnostic::DetNotOne => "DET_NOT_ONE",
            Diagnostic::DetNotUnimodular => "DET_NOT_UNIMODULAR",
            Diagnostic::EigenvalueOne => "EIGENVALUE_ONE",
            Diagnostic::NotComplexPair => "NOT_COMPLEX_PAIR",
            Diagnostic::NoExpandingRoot => "NO_EXPANDING_ROOT",
            Diagnostic::RootsOfUnity => "ROOTS_OF_UNITY",
            Diagnostic::NotRealSplit => "NOT_REAL_SPLIT",
            Diagnostic::NoExpandingEigenvalue => "NO_EXPANDING_EIGENVALUE",
            Diagnostic::CenterExponentMismatch => "CENTER_EXPONENT_MISMATCH",
            Diagnostic::BadR => "BAD_R",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WangError {
    #[error("invalid descriptor: {}", .0.iter().map(|d| d.code()).collect::<Vec<_>>().join(", "))]
    Invalid(Vec<Diagnostic>),
    #[error("AMBIENT_MISMATCH: element does not belong to this group")]
    AmbientMismatch,
    #[error("EIGENVALUE_ONE: M − Id is singular")]
    EigenvalueOne,
    #[error("NOT_KODAIRA: operation needs a KODAIRA descriptor")]
    NotKodaira,
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WangDescriptor {
    /// ℤ³ ⋊ ℤ, with `γ` acting by `m`.
    Sm { m: IntMatrix },
    /// H(r) ⋊ ℤ: `γδᵢγ⁻¹ = δ₁^m₁ᵢ δ₂^m₂ᵢ δ₃^pᵢ` for `i = 1, 2`. The optional
    /// `center_exponent` is a user-stated `e` in `γδ₃γ⁻¹ = δ₃^e`; it must equal `det m`.
    Spm { m: IntMatrix, r: BigInt, p: [BigInt; 2], center_exponent: Option<BigInt> },
    /// H(r) × ℤ.
    Kodaira { r: BigInt },
}

/// `b²c² − 4c³ − 4b³d − 27d² + 18bcd` for `x³ + bx² + cx + d`.
fn cubic_discriminant(b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d
}

impl WangDescriptor {
    pub fn sm(m: IntMatrix) -> Self {
        WangDescriptor::Sm { m }
    }

    pub fn spm(m: IntMatrix, r: i64, p: [i64; 2]) -> Self {
        WangDescriptor::Spm { m, r: r.into(), p: p.map(BigInt::from), center_exponent: None }
    }

    pub fn kodaira(r: i64) -> Self {
        WangDescriptor::Kodaira { r: r.into() }
    }

    pub fn shape_name(&self) -> &'static str {
        match self {
            WangDescriptor::Sm { .. } => "SM",
            WangDescriptor::Spm { .. } => "SPM",
            WangDescriptor::Kodaira { .. } => "KODAIRA",
        }
    }

    /// The matrix of the action on the abelianized fiber, if any.
    pub fn matrix(&self) -> Option<&IntMatrix> {
        match self {
            WangDescriptor::Sm { m } | WangDescriptor::Spm { m, .. } => Some(m),
            WangDescriptor::Kodaira { .. } => None,
        }
    }

    pub fn r(&self) -> Option<&BigInt> {
        match self {
            WangDescriptor::Spm { r, .. } | WangDescriptor::Kodaira { r } => Some(r),
            WangDescriptor::Sm { .. } => None,
        }
    }

    /// Every violated invariant, in a fixed order.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        match self {
            WangDescriptor::Sm { m } => {
                if m.nrows() != 3 || m.ncols() != 3 {
                    return vec![Diagnostic::BadShape];
                }
                if !m.det().is_one() {
                    out.push(Diagnostic::DetNotOne);
                }
                let p = m.char_poly();
                let at_one = p.eval(&BigInt::one());
                if at_one.is_zero() {
                    out.push(Diagnostic::EigenvalueOne);
                }
                if !cubic_discriminant(&p.coeff(2), &p.coeff(1), &p.coeff(0)).is_negative() {
                    out.push(Diagnostic::NotComplexPair);
                }
                // p(1) < 0 iff the single real root exceeds 1
                if at_one.is_positive() {
                    out.push(Diagnostic::NoExpandingRoot);
                }
            }
            WangDescriptor::Spm { m, r, center_exponent, .. } => {
                if m.nrows() != 2 || m.ncols() != 2 {
                    return vec![Diagnostic::BadShape];
                }
                if !r.is_positive() {
                    out.push(Diagnostic::BadR);
                }
                let det = m.det();
                let tr = m.trace();
                if !det.abs().is_one() {
                    out.push(Diagnostic::DetNotUnimodular);
                } else if split_cyclotomic(&m.char_poly()).is_complete() {
                    out.push(Diagnostic::RootsOfUnity);
                }
                let disc: BigInt = &tr * &tr - 4 * &det;
                if !disc.is_positive() {
                    out.push(Diagnostic::NotRealSplit);
                }
                // the larger root exceeds 1: tr ≥ 3 for det = 1, tr > 0 for det = −1
                let expanding = if det.is_one() { tr >= BigInt::from(3) } else { tr.is_positive() };
                if det.abs().is_one() && !expanding {
                    out.push(Diagnostic::NoExpandingEigenvalue);
                }
                if center_exponent.as_ref().is_some_and(|e| e != &det) {
                    out.push(Diagnostic::CenterExponentMismatch);
                }
            }
            WangDescriptor::Kodaira { r } => {
                if !r.is_positive() {
                    out.push(Diagnostic::BadR);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), WangError> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(WangError::Invalid(d))
        }
    }
}
