use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::poly::IntPolynomial;
use super::MatError;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `d`-th cyclotomic polynomial, by dividing `x^d - 1` by `Φ_e` for every
/// proper divisor `e` of `d`.
pub fn cyclotomic_poly(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut p = IntPolynomial::x_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        p = p.exact_div_monic(&cyclotomic_poly(e)).expect("Φ_e divides x^d - 1");
    }
    p
}

/// Every `d` with `φ(d) <= n`, ascending. `φ(d) >= sqrt(d/2)` bounds the search by `2n²`.
pub fn cyclotomic_orders_up_to_degree(n: usize) -> Vec<u64> {
    let n = n as u64;
    (1..=(2 * n * n).max(2)).filter(|&d| euler_phi(d) <= n).collect()
}

/// Outcome of matching a polynomial against cyclotomic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// Orders `d` of the extracted factors `Φ_d`, ascending, with multiplicity.
    pub orders: Vec<u64>,
    /// What remains after all cyclotomic factors are divided out.
    pub residual: IntPolynomial,
}

impl CyclotomicSplit {
    pub fn is_complete(&self) -> bool {
        self.residual.is_unit()
    }
}

/// Trial division of a monic polynomial by `Φ_d`, `φ(d) <= deg p`, ascending `d`.
pub fn split_cyclotomic(p: &IntPolynomial) -> CyclotomicSplit {
    assert!(p.is_monic(), "cyclotomic split needs a monic polynomial");
    let n = p.degree().unwrap_or(0);
    let mut residual = p.clone();
    let mut orders = Vec::new();
    for d in cyclotomic_orders_up_to_degree(n) {
        let phi = cyclotomic_poly(d);
        while residual.degree().unwrap_or(0) >= phi.degree().unwrap_or(0) {
            match residual.exact_div_monic(&phi) {
                Some(q) => {
                    orders.push(d);
                    residual = q;
                }
                None => break,
            }
        }
    }
    CyclotomicSplit { orders, residual }
}

/// Decision on whether every eigenvalue of a unimodular matrix is a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenvalueVerdict {
    /// The characteristic polynomial is `∏ Φ_d` over the listed orders.
    All { orders: Vec<u64> },
    /// A non-cyclotomic factor remains.
    NotAll { orders: Vec<u64>, residual: IntPolynomial },
}

impl EigenvalueVerdict {
    pub fn is_all(&self) -> bool {
        matches!(self, EigenvalueVerdict::All { .. })
    }
}

pub fn roots_of_unity_eigenvalues(m: &IntMatrix) -> Result<EigenvalueVerdict, MatError> {
    if !m.is_square() {
        return Err(MatError::NotSquare);
    }
    if !m.det().abs().is_one() {
        return Err(MatError::NotUnimodular);
    }
    let split = split_cyclotomic(&m.char_poly());
    Ok(if split.is_complete() {
        EigenvalueVerdict::All { orders: split.orders }
    } else {
        EigenvalueVerdict::NotAll { orders: split.orders, residual: split.residual }
    })
}

/// `lcm{d : φ(d) <= n}`: the exponent killing every root of unity of degree at most `n`.
pub fn unipotence_exponent(n: usize) -> u64 {
    cyclotomic_orders_up_to_degree(n).into_iter().fold(1, |acc, d| acc.lcm(&d))
}

/// Independent route: all eigenvalues are roots of unity iff `M^N` is unipotent,
/// i.e. `(M^N − Id)^n = 0`.
pub fn power_is_unipotent(m: &IntMatrix) -> Result<bool, MatError> {
    if !m.is_square() {
        return Err(MatError::NotSquare);
    }
    if !m.det().abs().is_one() {
        return Err(MatError::NotUnimodular);
    }
    let n = m.nrows();
    let nil = m.pow(unipotence_exponent(n)).minus_identity();
    Ok(nil.pow(n as u64).is_zero())
}

/// `det(M − Id) = 0`.
pub fn has_eigenvalue_one(m: &IntMatrix) -> bool {
    m.minus_identity().det().is_zero()
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), IntPolynomial::from_i64(&[1, -1]));
        assert_eq!(cyclotomic_poly(3), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        for d in 1..=40u64 {
            let prod = divisors(d)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, e| &acc * &cyclotomic_poly(e));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(d as usize), "d = {d}");
            assert_eq!(cyclotomic_poly(d).degree(), Some(euler_phi(d) as usize));
        }
    }

    #[test]
    fn orders_for_small_degrees() {
        assert_eq!(cyclotomic_orders_up_to_degree(1), vec![1, 2]);
        assert_eq!(cyclotomic_orders_up_to_degree(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(cyclotomic_orders_up_to_degree(4), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert_eq!(unipotence_exponent(2), 12);
        assert_eq!(unipotence_exponent(3), 12);
        assert_eq!(unipotence_exponent(4), 120);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(
            roots_of_unity_eigenvalues(&IntMatrix::identity(3)).unwrap(),
            EigenvalueVerdict::All { orders: vec![1, 1, 1] }
        );
        assert_eq!(
            roots_of_unity_eigenvalues(&IntMatrix::from_i64([[1, 1], [0, 1]])).unwrap(),
            EigenvalueVerdict::All { orders: vec![1, 1] }
        );
        assert_eq!(
            roots_of_unity_eigenvalues(&IntMatrix::from_i64([[2, 1], [1, 1]])).unwrap(),
            EigenvalueVerdict::NotAll { orders: vec![], residual: IntPolynomial::from_i64(&[1, -3, 1]) }
        );
        assert_eq!(
            roots_of_unity_eigenvalues(&IntMatrix::from_i64([[0, -1], [1, -1]])).unwrap(),
            EigenvalueVerdict::All { orders: vec![3] }
        );
        assert_eq!(
            roots_of_unity_eigenvalues(&IntMatrix::from_i64([[2, 0], [0, 1]])),
            Err(MatError::NotUnimodular)
        );
    }

    #[test]
    fn unipotence_route_agrees_on_fixtures() {
        for m in [
            IntMatrix::identity(3),
            IntMatrix::from_i64([[1, 1], [0, 1]]),
            IntMatrix::from_i64([[0, -1], [1, 0]]),
            IntMatrix::from_i64([[2, 1], [1, 1]]),
            IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]),
            IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        ] {
            assert_eq!(roots_of_unity_eigenvalues(&m).unwrap().is_all(), power_is_unipotent(&m).unwrap());
        }
    }

    #[test]
    fn eigenvalue_one_examples() {
        assert!(has_eigenvalue_one(&IntMatrix::identity(3)));
        assert!(!has_eigenvalue_one(&IntMatrix::from_i64([[2, 1], [1, 1]])));
        assert!(!has_eigenvalue_one(&IntMatrix::from_i64([[0, -1], [1, 0]])));
        assert_eq!(IntMatrix::from_i64([[0, -1], [1, 0]]).minus_identity().det(), BigInt::from(2));
    }
}
