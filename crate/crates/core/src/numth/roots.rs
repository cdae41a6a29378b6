//! Certified enclosures of root moduli for integer polynomials of degree ≤ 3.
//!
//! Real roots are isolated with a Sturm sequence and refined by bisection on
//! dyadic points, where every sign evaluation is an exact integer
//! computation. A complex-conjugate pair is reached through Vieta: its squared
//! modulus is `a₀/a₂` (quadratic) or `−a₀/(a₃·ρ)` with `ρ` the real root
//! (cubic).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmat::IntPolynomial;

use super::NumthError;

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    /// Number of decimal digits `d` with `width <= 10^-d`, capped at 30.
    pub fn certified_digits(&self) -> u32 {
        let w = self.width();
        let mut d = 0;
        let mut scale = BigRational::one();
        while d < 30 {
            scale *= BigRational::from_integer(10.into());
            if &w * &scale > BigRational::one() {
                break;
            }
            d += 1;
        }
        d
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.15}, {:.15}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `num / 2^exp`
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn int(n: BigInt) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp) + 1;
        Dyadic { num: (&a.num << (e - 1 - a.exp)) + (&b.num << (e - 1 - b.exp)), exp: e }
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }
}

/// Sign of `p(x)` at a dyadic point, exactly.
fn sign_at(p: &IntPolynomial, x: &Dyadic) -> i32 {
    let d = p.degree().unwrap_or(0) as u32;
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for (i, c) in p.coeffs().iter().enumerate() {
        let i = i as u32;
        acc += (c * &pow) << (x.exp * (d - i));
        pow *= &x.num;
    }
    sgn(&acc)
}

fn sgn(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `|lc(b)|^k · (a mod b)`: a positive multiple of the remainder.
fn positive_pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("nonzero divisor");
    let lc = b.leading().unwrap().clone();
    let lc_abs = lc.abs();
    let lc_sign = BigInt::from(sgn(&lc));
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let c = r.leading().unwrap() * &lc_sign;
        let mut shifted = vec![BigInt::zero(); dr - db];
        shifted.extend(b.coeffs().iter().map(|x| x * &c));
        let scaled = IntPolynomial::new(r.coeffs().iter().map(|x| x * &lc_abs).collect());
        r = &scaled - &IntPolynomial::new(shifted);
    }
    r
}

fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().is_none_or(|d| d == 0) {
            break;
        }
        let r = positive_pseudo_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_part());
    }
    seq
}

fn sign_changes(seq: &[IntPolynomial], x: &Dyadic) -> usize {
    let signs: Vec<i32> = seq.iter().map(|q| sign_at(q, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Each real root of a squarefree polynomial, as `(lo, hi)` dyadics with
/// `hi − lo <= 2^-bits`; an exact dyadic root comes back as `lo == hi`.
fn isolate_real_roots(p: &IntPolynomial, bits: u32) -> Vec<(Dyadic, Dyadic)> {
    let seq = sturm_sequence(p);
    let lc = p.leading().unwrap().abs();
    let max_ratio: BigInt = p.coeffs().iter().map(Signed::abs).max().unwrap() / &lc + 2;
    let bound = BigInt::one() << max_ratio.bits();
    let (lo, hi) = (Dyadic::int(-&bound), Dyadic::int(bound));

    // split (a, b] until each piece holds exactly one root
    let mut pending = vec![(lo, hi)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = Dyadic::mid(&a, &b);
                pending.push((m.clone(), b));
                pending.push((a, m));
            }
        }
    }
    isolated.sort_by_cached_key(|x| x.0.to_rational());

    isolated
        .into_iter()
        .map(|(mut a, mut b)| {
            if sign_at(p, &b) == 0 {
                return (b.clone(), b);
            }
            // move the open end off a root of p so that sign bisection applies
            while sign_at(p, &a) == 0 {
                let m = Dyadic::mid(&a, &b);
                if sign_changes(&seq, &m) - sign_changes(&seq, &b) == 1 {
                    a = m;
                } else {
                    return (m.clone(), m);
                }
            }
            let sb = sign_at(p, &b);
            while (&b.to_rational() - &a.to_rational()) > BigRational::new(BigInt::one(), BigInt::one() << bits) {
                let m = Dyadic::mid(&a, &b);
                match sign_at(p, &m) {
                    0 => return (m.clone(), m),
                    s if s == sb => b = m,
                    _ => a = m,
                }
            }
            (a, b)
        })
        .collect()
}

/// Lower and upper bounds on `sqrt(x)` at `bits` binary digits.
fn sqrt_interval(lo: &BigRational, hi: &BigRational, bits: u32) -> RatInterval {
    let scale = BigInt::one() << (2 * bits);
    let den = BigInt::one() << bits;
    let lo_scaled = (lo * BigRational::from_integer(scale.clone())).floor().to_integer();
    let hi_scaled = (hi * BigRational::from_integer(scale)).ceil().to_integer();
    let lo_root = if lo_scaled.is_positive() { lo_scaled.sqrt() } else { BigInt::zero() };
    let hi_root = hi_scaled.sqrt() + 1;
    RatInterval { lo: BigRational::new(lo_root, den.clone()), hi: BigRational::new(hi_root, den) }
}

fn abs_interval(lo: BigRational, hi: BigRational) -> RatInterval {
    if !lo.is_negative() {
        RatInterval { lo, hi }
    } else if !hi.is_positive() {
        RatInterval { lo: -hi, hi: -lo }
    } else {
        RatInterval { lo: BigRational::zero(), hi: (-lo).max(hi) }
    }
}

/// Enclosures for the moduli of all distinct roots of `p` (deg ≤ 3), each of
/// width at most `10^-digits`. Conjugate pairs contribute one entry per root.
pub fn root_modulus_intervals(p: &IntPolynomial, digits: u32) -> Result<Vec<RatInterval>, NumthError> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg > 3 {
        return Err(NumthError::UnsupportedDegree(deg));
    }
    let tolerance = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let mut bits = digits * 10 / 3 + 8;
    loop {
        let out = moduli_at(p, bits);
        if out.iter().all(|iv| iv.width() <= tolerance) {
            return Ok(out);
        }
        bits += 16;
    }
}

fn moduli_at(p: &IntPolynomial, bits: u32) -> Vec<RatInterval> {
    let mut out = Vec::new();
    // strip x^m
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(RatInterval::point(BigRational::zero()));
    }
    let stripped = IntPolynomial::new(p.coeffs()[zeros..].to_vec());
    if stripped.degree().unwrap_or(0) == 0 {
        return out;
    }
    let q = stripped.squarefree_part();
    let d = q.degree().unwrap();
    let real = isolate_real_roots(&q, bits + 4);
    for (a, b) in &real {
        out.push(abs_interval(a.to_rational(), b.to_rational()));
    }
    let complex = d - real.len();
    if complex == 2 {
        let q0 = BigRational::from_integer(q.coeff(0));
        let lead = BigRational::from_integer(q.leading().unwrap().clone());
        let (lo2, hi2) = if d == 2 {
            let m = q0 / lead;
            (m.clone(), m)
        } else {
            // d == 3: ρ·|β|² = −q₀/q₃
            let num = -q0 / lead;
            let (a, b) = (&real[0].0, &real[0].1);
            let x = &num / a.to_rational();
            let y = &num / b.to_rational();
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        };
        let m = sqrt_interval(&lo2, &hi2, bits);
        out.push(m.clone());
        out.push(m);
    }
    debug_assert!(complex == 0 || complex == 2);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    fn approx_contains(iv: &RatInterval, x: f64) -> bool {
        // enclosure check against a double-precision reference
        iv.lo <= rat(x + 1e-12) && rat(x - 1e-12) <= iv.hi
    }

    #[test]
    fn golden_ratio_squared() {
        let p = IntPolynomial::from_i64(&[1, -3, 1]);
        let ivs = root_modulus_intervals(&p, 13).unwrap();
        assert_eq!(ivs.len(), 2);
        let s5 = 5f64.sqrt();
        assert!(approx_contains(&ivs[0], (3.0 - s5) / 2.0));
        assert!(approx_contains(&ivs[1], (3.0 + s5) / 2.0));
        assert!(ivs.iter().all(|iv| iv.certified_digits() >= 13));
    }

    #[test]
    fn complex_pairs() {
        // x² − 2x + 2: roots 1 ± i
        let ivs = root_modulus_intervals(&IntPolynomial::from_i64(&[1, -2, 2]), 12).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(approx_contains(&ivs[0], 2f64.sqrt()));
        // x³ − x − 1: plastic number and a pair of modulus ρ^(-1/2)
        let ivs = root_modulus_intervals(&IntPolynomial::from_i64(&[1, 0, -1, -1]), 12).unwrap();
        let plastic = 1.324_717_957_244_746;
        assert_eq!(ivs.len(), 3);
        assert!(approx_contains(&ivs[0], plastic));
        assert!(approx_contains(&ivs[1], plastic.powf(-0.5)));
    }

    #[test]
    fn exact_and_repeated_roots() {
        // (x − 1)²(x + 2): distinct roots 1 and −2, both dyadic
        let p = IntPolynomial::from_i64(&[1, 0, -3, 2]);
        let ivs = root_modulus_intervals(&p, 12).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs.contains(&RatInterval::point(BigRational::from_integer(2.into()))));
        assert!(ivs.contains(&RatInterval::point(BigRational::one())));
        // x·(x² + 1)
        let ivs = root_modulus_intervals(&IntPolynomial::from_i64(&[1, 0, 1, 0]), 12).unwrap();
        assert_eq!(ivs[0], RatInterval::point(BigRational::zero()));
        assert!(ivs[1].contains(&BigRational::one()));
    }

    #[test]
    fn three_real_roots() {
        // x³ − 3x + 1 = 0 has roots 2cos(2π/9), 2cos(4π/9), 2cos(8π/9)
        let ivs = root_modulus_intervals(&IntPolynomial::from_i64(&[1, 0, -3, 1]), 12).unwrap();
        assert_eq!(ivs.len(), 3);
        for k in [1.0, 2.0, 4.0] {
            let r = (2.0 * (2.0 * std::f64::consts::PI * k / 9.0).cos()).abs();
            assert!(ivs.iter().any(|iv| approx_contains(iv, r)), "missing {r}");
        }
    }
}
