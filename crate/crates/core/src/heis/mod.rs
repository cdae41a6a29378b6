//! The discrete Heisenberg group H(r) and its finite-index subgroups.
//!
//! Elements are triples `(a, b, c)` standing for the matrix
//! `[[1, a, c/r], [0, 1, b], [0, 0, 1]]`, so that
//! `(a, b, c)·(a', b', c') = (a + a', b + b', c + c' + r·a·b')` and
//! `(a, b, c) = δ₁^a δ₂^b δ₃^(c − r·a·b)`.

mod subgroup;
mod word;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use subgroup::{infinite_index_subgroup_abelian_check, HeisSubgroupData, Membership};
pub use word::{parse_word, Generator, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisError {
    #[error("AMBIENT_MISMATCH: elements belong to groups with different parameters")]
    AmbientMismatch,
    #[error("BAD_WORD: {0}")]
    BadWord(String),
    #[error("BAD_R: r must be a positive integer")]
    BadR,
    #[error("NOT_SUBGROUP_CLOSED: c does not divide r·|a1·b2 − a2·b1|")]
    NotSubgroupClosed,
    #[error("FINITE_INDEX: the generated subgroup has finite index")]
    FiniteIndex,
    #[error("NOT_FINITE_INDEX: the projected vectors do not span a rank-2 lattice")]
    NotFiniteIndex,
    #[error("BAD_CENTRAL_STEP: c must be positive")]
    BadCentralStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HeisElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HeisElement {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        HeisElement { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        HeisElement::new(a.into(), b.into(), c.into())
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn d1() -> Self {
        Self::from_i64(1, 0, 0)
    }

    pub fn d2() -> Self {
        Self::from_i64(0, 1, 0)
    }

    pub fn d3() -> Self {
        Self::from_i64(0, 0, 1)
    }

    pub fn central(c: BigInt) -> Self {
        HeisElement::new(BigInt::zero(), BigInt::zero(), c)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exponents `(x, y, z)` with `self = δ₁^x δ₂^y δ₃^z`.
    pub fn word_exponents(&self, r: &BigInt) -> [BigInt; 3] {
        [self.a.clone(), self.b.clone(), &self.c - r * &self.a * &self.b]
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// H(r) for a fixed positive `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisGroup {
    r: BigInt,
}

impl HeisGroup {
    pub fn new(r: BigInt) -> Result<Self, HeisError> {
        if !r.is_positive() {
            return Err(HeisError::BadR);
        }
        Ok(HeisGroup { r })
    }

    pub fn with_r(r: i64) -> Self {
        Self::new(r.into()).expect("positive r")
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn mul(&self, x: &HeisElement, y: &HeisElement) -> HeisElement {
        HeisElement {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
            c: &x.c + &y.c + &self.r * &x.a * &y.b,
        }
    }

    pub fn inv(&self, x: &HeisElement) -> HeisElement {
        HeisElement { a: -&x.a, b: -&x.b, c: -&x.c + &self.r * &x.a * &x.b }
    }

    /// Square-and-multiply; negative `k` raises the inverse.
    pub fn pow(&self, x: &HeisElement, k: &BigInt) -> HeisElement {
        let mut base = if k.is_negative() { self.inv(x) } else { x.clone() };
        let mut e = k.abs();
        let mut acc = HeisElement::identity();
        while !e.is_zero() {
            if e.bit(0) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x·y·x⁻¹·y⁻¹`
    pub fn commutator(&self, x: &HeisElement, y: &HeisElement) -> HeisElement {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&xy, &self.inv(&yx))
    }

    /// `g·x·g⁻¹`
    pub fn conjugate(&self, g: &HeisElement, x: &HeisElement) -> HeisElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// `δ₁^x δ₂^y δ₃^z`
    pub fn from_exponents(&self, e: &[BigInt; 3]) -> HeisElement {
        HeisElement { a: e[0].clone(), b: e[1].clone(), c: &e[2] + &self.r * &e[0] * &e[1] }
    }

    /// The rational upper-unitriangular matrix of `x`.
    pub fn to_matrix(&self, x: &HeisElement) -> [[BigRational; 3]; 3] {
        let int = |v: &BigInt| BigRational::from_integer(v.clone());
        let (zero, one) = (BigRational::zero(), BigRational::one());
        [
            [one.clone(), int(&x.a), BigRational::new(x.c.clone(), self.r.clone())],
            [zero.clone(), one.clone(), int(&x.b)],
            [zero.clone(), zero, one],
        ]
    }

    /// `r` times [`Self::to_matrix`], which is integral.
    pub fn to_scaled_matrix(&self, x: &HeisElement) -> [[BigInt; 3]; 3] {
        let (zero, r) = (BigInt::zero(), self.r.clone());
        [[r.clone(), &r * &x.a, x.c.clone()], [zero.clone(), r.clone(), &r * &x.b], [zero.clone(), zero, r]]
    }

    /// Left-to-right product of a word over `d1`, `d2`, `d3`.
    pub fn eval_word(&self, word: &Word) -> Result<HeisElement, HeisError> {
        word.iter().try_fold(HeisElement::identity(), |acc, (g, e)| {
            let base = match g {
                Generator::D1 => HeisElement::d1(),
                Generator::D2 => HeisElement::d2(),
                Generator::D3 => HeisElement::d3(),
                Generator::G => return Err(HeisError::BadWord("generator g is not in H(r)".into())),
            };
            Ok(self.mul(&acc, &self.pow(&base, e)))
        })
    }

    pub fn eval_word_str(&self, text: &str) -> Result<HeisElement, HeisError> {
        self.eval_word(&parse_word(text)?)
    }
}

/// Product of two 3×3 rational matrices.
pub fn mat3_mul(x: &[[BigRational; 3]; 3], y: &[[BigRational; 3]; 3]) -> [[BigRational; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
    })
}

pub fn mat3_mul_int(x: &[[BigInt; 3]; 3], y: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(BigInt::zero(), |acc, k| acc + &x[i][k] * &y[k][j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(a: i64, b: i64, c: i64) -> HeisElement {
        HeisElement::from_i64(a, b, c)
    }

    #[test]
    fn law_examples() {
        let h = HeisGroup::with_r(2);
        assert_eq!(h.mul(&HeisElement::d1(), &HeisElement::d2()), el(1, 1, 2));
        assert_eq!(h.inv(&el(1, 1, 0)), el(-1, -1, 2));
        assert_eq!(h.inv(&el(0, 0, 5)), el(0, 0, -5));
        let h1 = HeisGroup::with_r(1);
        assert_eq!(h1.commutator(&HeisElement::d1(), &HeisElement::d2()), HeisElement::d3());
    }

    #[test]
    fn commutator_of_subgroup_generators() {
        let h = HeisGroup::with_r(3);
        let zeta = h.from_exponents(&[2.into(), 1.into(), 5.into()]);
        let xi = h.from_exponents(&[(-1).into(), 4.into(), 0.into()]);
        assert_eq!(h.commutator(&zeta, &xi), el(0, 0, 3 * (2 * 4 + 1)));
    }

    #[test]
    fn words() {
        let h = HeisGroup::with_r(2);
        assert_eq!(h.eval_word_str("d1^1 d2^1").unwrap(), el(1, 1, 2));
        assert_eq!(h.eval_word_str("d3^7").unwrap(), el(0, 0, 7));
        let h5 = HeisGroup::with_r(5);
        assert_eq!(h5.eval_word_str("d1 d2 d1^-1 d2^-1").unwrap(), el(0, 0, 5));
        assert!(matches!(h.eval_word_str("d1 g"), Err(HeisError::BadWord(_))));
        assert!(matches!(h.eval_word_str("d4"), Err(HeisError::BadWord(_))));
    }

    #[test]
    fn normal_form_exponents() {
        let h = HeisGroup::with_r(4);
        let x = el(3, -2, 11);
        assert_eq!(h.from_exponents(&x.word_exponents(h.r())), x);
        let w = format!("d1^{} d2^{} d3^{}", 3, -2, 11 + 4 * 3 * 2);
        assert_eq!(h.eval_word_str(&w).unwrap(), x);
    }

    fn element() -> impl Strategy<Value = HeisElement> {
        (-50i64..50, -50i64..50, -500i64..500).prop_map(|(a, b, c)| el(a, b, c))
    }

    proptest! {
        #[test]
        fn matrix_embedding_is_a_homomorphism(r in 1i64..=5, x in element(), y in element()) {
            let h = HeisGroup::with_r(r);
            prop_assert_eq!(h.to_matrix(&h.mul(&x, &y)), mat3_mul(&h.to_matrix(&x), &h.to_matrix(&y)));
        }

        #[test]
        fn scaled_matrix_is_r_times_the_matrix(r in 1i64..=5, x in element()) {
            let h = HeisGroup::with_r(r);
            let rq = BigRational::from_integer(r.into());
            let scaled = h.to_scaled_matrix(&x).map(|row| row.map(BigRational::from_integer));
            prop_assert_eq!(scaled, h.to_matrix(&x).map(|row| row.map(|e| e * &rq)));
        }

        #[test]
        fn group_axioms(r in 1i64..=5, x in element(), y in element(), z in element()) {
            let h = HeisGroup::with_r(r);
            prop_assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
            prop_assert!(h.mul(&x, &h.inv(&x)).is_identity());
            prop_assert_eq!(h.mul(&HeisElement::identity(), &x), x.clone());
            let central = HeisElement::central(z.c.clone());
            prop_assert_eq!(h.mul(&central, &x), h.mul(&x, &central));
            let expected = HeisElement::central(BigInt::from(r) * (&x.a * &y.b - &x.b * &y.a));
            prop_assert_eq!(h.commutator(&x, &y), expected);
        }

        #[test]
        fn pow_matches_repeated_mul(r in 1i64..=5, x in element(), k in -12i64..=12) {
            let h = HeisGroup::with_r(r);
            let base = if k < 0 { h.inv(&x) } else { x.clone() };
            let slow = (0..k.abs()).fold(HeisElement::identity(), |acc, _| h.mul(&acc, &base));
            prop_assert_eq!(h.pow(&x, &BigInt::from(k)), slow);
        }

        #[test]
        fn center_is_exactly_the_central_triples(r in 1i64..=5, x in element()) {
            let h = HeisGroup::with_r(r);
            let commutes = h.commutator(&x, &HeisElement::d1()).is_identity()
                && h.commutator(&x, &HeisElement::d2()).is_identity();
            prop_assert_eq!(commutes, x.is_central());
        }
    }
}
