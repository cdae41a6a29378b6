//! Effective bounds on eigenvalue moduli: the constant ε(n), the annulus
//! `[l_min, l_max]` of a unimodular matrix, and the largest root order
//! `k_max` compatible with it.

mod roots;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactmat::{split_cyclotomic, IntMatrix, IntPolynomial, MatError};
use crate::wang::{WangDescriptor, WangError};

pub use roots::{root_modulus_intervals, to_f64, RatInterval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("UNSUPPORTED_DEGREE: degree {0} is outside 1..=3")]
    UnsupportedDegree(usize),
    #[error("NOT_UNIMODULAR: determinant is not ±1")]
    NotUnimodular,
    #[error("NO_BOUND: every eigenvalue is a root of unity")]
    NoBound,
    #[error("BAD_EPSILON: epsilon must lie in (0, 1]")]
    BadEpsilon,
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Descriptor(#[from] WangError),
}

/// Digits after the decimal point at which ε is rounded down.
pub const EPSILON_DIGITS: u32 = 12;

/// Root-modulus radius used when enumerating candidate polynomials.
pub const ROOT_BOUND: u32 = 2;

/// Enclosure of the smallest and largest eigenvalue modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusBound {
    pub l_min: RatInterval,
    pub l_max: RatInterval,
    pub certified_digits: u32,
}

pub fn eigen_modulus_bounds(m: &IntMatrix, digits: u32) -> Result<AnnulusBound, NumthError> {
    if !m.is_square() {
        return Err(MatError::NotSquare.into());
    }
    if !m.det().abs().is_one() {
        return Err(NumthError::NotUnimodular);
    }
    let ivs = root_modulus_intervals(&m.char_poly(), digits)?;
    let l_min = ivs.iter().min_by(|a, b| a.lo.cmp(&b.lo)).cloned().expect("n >= 1");
    let l_max = ivs.iter().max_by(|a, b| a.hi.cmp(&b.hi)).cloned().expect("n >= 1");
    let certified_digits = l_min.certified_digits().min(l_max.certified_digits());
    Ok(AnnulusBound { l_min, l_max, certified_digits })
}

/// `C(n, i) · bound^i` for `i = 1..=n`: the bound on the coefficient of `x^(n−i)`.
pub fn coefficient_bounds(n: usize, root_bound: u32) -> Vec<u64> {
    (1..=n as u64).map(|i| binomial(n as u64, i) * (root_bound as u64).pow(i as u32)).collect()
}

/// Every monic integer polynomial of degree `n` whose coefficients obey the
/// elementary-symmetric bounds, in lexicographic order of `(a_{n−1}, …, a_0)`.
pub fn enumerate_candidate_polys(n: usize, root_bound: u32) -> Result<Vec<IntPolynomial>, NumthError> {
    if !(1..=3).contains(&n) {
        return Err(NumthError::UnsupportedDegree(n));
    }
    let bounds = coefficient_bounds(n, root_bound);
    let mut tails: Vec<Vec<i64>> = vec![Vec::new()];
    for &b in &bounds {
        let b = b as i64;
        tails = tails
            .into_iter()
            .flat_map(|t| {
                (-b..=b).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    Ok(tails
        .into_iter()
        .map(|t| {
            let mut desc = vec![1];
            desc.extend(t);
            IntPolynomial::from_i64(&desc)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCertificate {
    pub n: usize,
    /// `min(μ, 1)` rounded down to [`EPSILON_DIGITS`] decimals.
    pub epsilon: BigRational,
    /// Certified lower bound on `μ_Q` of the witness.
    pub mu: BigRational,
    pub witness_poly: IntPolynomial,
    pub coeff_bounds: Vec<u64>,
    pub poly_count: usize,
}

/// Lower bound on `max_α ||α| − 1|`, or `None` if `q` is filtered out
/// (a root of modulus ≥ 2, or every root on the unit circle).
fn mu_lower_bound(q: &IntPolynomial) -> Option<BigRational> {
    if split_cyclotomic(q).is_complete() {
        return None;
    }
    let two = BigRational::from_integer(BigInt::from(ROOT_BOUND));
    let ivs = root_modulus_intervals(q, EPSILON_DIGITS + 4).expect("degree <= 3");
    if ivs.iter().any(|iv| iv.lo >= two) {
        return None;
    }
    let one = BigRational::one();
    ivs.iter()
        .map(|iv| {
            if iv.lo > one {
                &iv.lo - &one
            } else if iv.hi < one {
                &one - &iv.hi
            } else {
                BigRational::zero()
            }
        })
        .max()
}

/// Rounds a nonnegative rational down to `digits` decimals.
pub fn floor_decimal(x: &BigRational, digits: u32) -> BigRational {
    let scale = BigInt::from(10).pow(digits);
    BigRational::new((x * BigRational::from_integer(scale.clone())).floor().to_integer(), scale)
}

/// Decimal rendering of `x` truncated to `digits` places.
pub fn format_decimal(x: &BigRational, digits: u32) -> String {
    let neg = x.is_negative();
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x.abs() * BigRational::from_integer(scale.clone())).floor().to_integer();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

/// Parses `"3"`, `"-0.41"` or `"2/7"` as an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n.trim().parse().ok()?, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let v = BigRational::new(num, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -v } else { v })
}

fn compute_epsilon(n: usize) -> Result<EpsilonCertificate, NumthError> {
    let polys = enumerate_candidate_polys(n, ROOT_BOUND)?;
    let best = polys
        .par_iter()
        .enumerate()
        .filter_map(|(i, q)| mu_lower_bound(q).map(|mu| (mu, i)))
        .min()
        .expect("x − 2 style candidates always survive the filters");
    let (mu, idx) = best;
    let capped = mu.clone().min(BigRational::one());
    Ok(EpsilonCertificate {
        n,
        epsilon: floor_decimal(&capped, EPSILON_DIGITS),
        mu,
        witness_poly: polys[idx].clone(),
        coeff_bounds: coefficient_bounds(n, ROOT_BOUND),
        poly_count: polys.len(),
    })
}

/// ε(n) with its certificate; computed once per process.
pub fn epsilon(n: usize) -> Result<&'static EpsilonCertificate, NumthError> {
    static CACHE: [OnceLock<EpsilonCertificate>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    if !(1..=3).contains(&n) {
        return Err(NumthError::UnsupportedDegree(n));
    }
    if let Some(c) = CACHE[n - 1].get() {
        return Ok(c);
    }
    let cert = compute_epsilon(n)?;
    Ok(CACHE[n - 1].get_or_init(|| cert))
}

/// Largest `k >= 1` with `l_max ≥ (1+eps)^k` or `l_min ≤ (1−eps)^k`, using
/// the outer ends of the certified enclosures; 0 if no `k` qualifies.
pub fn k_max(m: &IntMatrix, eps: &BigRational) -> Result<u64, NumthError> {
    if !eps.is_positive() || eps > &BigRational::one() {
        return Err(NumthError::BadEpsilon);
    }
    if !m.is_square() {
        return Err(MatError::NotSquare.into());
    }
    if !m.det().abs().is_one() {
        return Err(NumthError::NotUnimodular);
    }
    if split_cyclotomic(&m.char_poly()).is_complete() {
        return Err(NumthError::NoBound);
    }
    let annulus = eigen_modulus_bounds(m, EPSILON_DIGITS + 4)?;
    let (hi, lo) = (&annulus.l_max.hi, &annulus.l_min.lo);
    let up = BigRational::one() + eps;
    let down = BigRational::one() - eps;
    let (mut up_k, mut down_k) = (up.clone(), down.clone());
    let mut k = 0;
    while hi >= &up_k || lo <= &down_k {
        k += 1;
        up_k *= &up;
        down_k *= &down;
    }
    Ok(k)
}

/// Index bound for normal abelian subgroups of finite quotients of the group.
pub fn jordan_bound(descriptor: &WangDescriptor) -> Result<BigInt, NumthError> {
    descriptor.validate()?;
    Ok(match descriptor {
        WangDescriptor::Sm { m } => BigInt::from(k_max(m, &epsilon(3)?.epsilon)?),
        WangDescriptor::Spm { m, r, .. } => BigInt::from(k_max(m, &epsilon(2)?.epsilon)?) * r,
        WangDescriptor::Kodaira { r } => r.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(enumerate_candidate_polys(1, 2).unwrap().len(), 5);
        assert_eq!(enumerate_candidate_polys(2, 2).unwrap().len(), 81);
        assert_eq!(enumerate_candidate_polys(3, 2).unwrap().len(), 5525);
        assert_eq!(coefficient_bounds(3, 2), vec![6, 12, 8]);
        assert_eq!(enumerate_candidate_polys(4, 2), Err(NumthError::UnsupportedDegree(4)));
    }

    // frozen from an independent enumeration with 30-digit polynomial roots
    #[test]
    fn epsilon_regression_constants() {
        let e1 = epsilon(1).unwrap();
        assert_eq!(e1.epsilon, BigRational::one());
        let e2 = epsilon(2).unwrap();
        assert_eq!(e2.epsilon, q("0.414213562373"));
        assert_eq!(e2.poly_count, 81);
        let e3 = epsilon(3).unwrap();
        assert_eq!(e3.epsilon, q("0.245122333753"));
        // x³ + x² − 1 and its mirror x³ − x² + 1 share the same root moduli
        assert!([IntPolynomial::from_i64(&[1, 1, 0, -1]), IntPolynomial::from_i64(&[1, -1, 0, 1])]
            .contains(&e3.witness_poly));
        assert_eq!(e3.poly_count, 5525);
    }

    #[test]
    fn x_squared_minus_two_contributes_sqrt2_minus_1() {
        let mu = mu_lower_bound(&IntPolynomial::from_i64(&[1, 0, -2])).unwrap();
        assert_eq!(floor_decimal(&mu, 12), q("0.414213562373"));
        assert_eq!(mu_lower_bound(&IntPolynomial::from_i64(&[1, 0, 1])), None);
        assert_eq!(mu_lower_bound(&IntPolynomial::from_i64(&[1, -2])), None);
    }

    #[test]
    fn annulus_examples() {
        let a = eigen_modulus_bounds(&IntMatrix::identity(3), 12).unwrap();
        assert_eq!(a.l_min, RatInterval::point(BigRational::one()));
        assert_eq!(a.l_max, RatInterval::point(BigRational::one()));
        let a = eigen_modulus_bounds(&IntMatrix::from_i64([[2, 1], [1, 1]]), 12).unwrap();
        assert!((a.l_max.midpoint_f64() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((a.l_min.midpoint_f64() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let a = eigen_modulus_bounds(&IntMatrix::from_i64([[2, 1], [1, 0]]), 12).unwrap();
        assert!((a.l_max.midpoint_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((a.l_min.midpoint_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!(a.certified_digits >= 12);
    }

    #[test]
    fn k_max_examples() {
        let m = IntMatrix::from_i64([[2, 1], [1, 1]]);
        assert_eq!(k_max(&m, &q("0.41")).unwrap(), 2);
        // 2.618 ≥ 2 at k = 1 while 1.618 < 2 at k = 2
        assert_eq!(k_max(&m, &q("1")).unwrap(), 1);
        assert_eq!(k_max(&IntMatrix::identity(2), &q("0.5")), Err(NumthError::NoBound));
        assert_eq!(k_max(&m, &q("0")), Err(NumthError::BadEpsilon));
        // l_max ≥ (1+eps)^10
        let big = m.pow(10);
        assert!(k_max(&big, &q("0.618")).unwrap() >= 10);
    }

    #[test]
    fn decimal_round_trip() {
        assert_eq!(format_decimal(&q("0.41"), 3), "0.410");
        assert_eq!(format_decimal(&q("-7/2"), 1), "-3.5");
        assert_eq!(parse_rational("."), None);
        assert_eq!(parse_rational("1e3"), None);
    }

    fn unimodular_2x2() -> impl Strategy<Value = IntMatrix> {
        prop::array::uniform4(-3i64..=3)
            .prop_map(|[a, b, c, d]| IntMatrix::from_i64([[a, b], [c, d]]))
            .prop_filter("unimodular, not all roots of unity", |m| {
                m.det().abs().is_one() && !split_cyclotomic(&m.char_poly()).is_complete()
            })
    }

    proptest! {
        #[test]
        fn k_max_monotone(m in unimodular_2x2(), a in 1u32..100, b in 1u32..100) {
            let (lo, hi) = (a.min(b), a.max(b));
            let e_lo = BigRational::new(lo.into(), 100.into());
            let e_hi = BigRational::new(hi.into(), 100.into());
            prop_assert!(k_max(&m, &e_lo).unwrap() >= k_max(&m, &e_hi).unwrap());
            prop_assert!(k_max(&m.pow(2), &e_lo).unwrap() >= k_max(&m, &e_lo).unwrap());
        }

        #[test]
        fn roots_of_m_respect_k_max(r in unimodular_2x2(), k in 1u64..=6) {
            let eps = &epsilon(2).unwrap().epsilon;
            prop_assert!(k <= k_max(&r.pow(k), eps).unwrap());
        }
    }
}
