//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::MatError;

/// Extended Euclid: returns `(g, s, t)` with `g = s·a + t·b` and `g >= 0`.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Result of [`smith_normal_form`]: `u · a · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d₁ | d₂ | …`, zeros last.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Column echelon form `h = a · u` with `u` unimodular.
///
/// Pivots are positive, lie in strictly increasing rows, and the entries to
/// the left of each pivot are reduced into `[0, pivot)`. Zero columns come
/// last. Returns `(h, u, rank)`.
pub fn column_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let (m, n) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (x, y) = (h[(i, p)].clone(), h[(i, j)].clone());
            let (g, s, t) = xgcd(&x, &y);
            let (r, q) = (-(&y / &g), &x / &g);
            h.combine_cols(p, j, [&s, &t, &r, &q]);
            u.combine_cols(p, j, [&s, &t, &r, &q]);
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            h.negate_col(p);
            u.negate_col(p);
        }
        for j in 0..p {
            let q = h[(i, j)].div_floor(&h[(i, p)]);
            if !q.is_zero() {
                h.add_col_multiple(j, p, &-&q);
                u.add_col_multiple(j, p, &-&q);
            }
        }
        p += 1;
    }
    (h, u, p)
}

/// Column-style Hermite normal form `h = a · u` of a full-column-rank matrix.
pub fn hermite_normal_form(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix), MatError> {
    let (h, u, rank) = column_echelon(a);
    if rank < a.ncols() {
        return Err(MatError::RankDeficient);
    }
    Ok((h, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(xs: &[i64]) -> IntMatrix {
        IntMatrix::diagonal(&xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    fn check_smith(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check_smith(&diag(&[1, 1])).d, diag(&[1, 1]));
        assert_eq!(check_smith(&diag(&[2, 3])).d, diag(&[1, 6]));
        assert_eq!(check_smith(&IntMatrix::from_i64([[2, 4], [6, 8]])).d, diag(&[2, 4]));
    }

    #[test]
    fn smith_of_singular_and_zero() {
        assert_eq!(check_smith(&IntMatrix::zeros(3, 3)).d, IntMatrix::zeros(3, 3));
        let s = check_smith(&IntMatrix::from_i64([[2, 4, 6], [4, 8, 12], [1, 1, 1]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn hermite_examples() {
        let (h, _) = hermite_normal_form(&IntMatrix::identity(3)).unwrap();
        assert!(h.is_identity());
        let (h, _) = hermite_normal_form(&diag(&[2, 2])).unwrap();
        assert_eq!(h, diag(&[2, 2]));
    }

    /// Columns (2,0) and (1,1): the HNF must span the same lattice of index 2.
    #[test]
    fn hermite_preserves_lattice() {
        let a = IntMatrix::from_i64([[2, 1], [0, 1]]);
        let (h, u) = hermite_normal_form(&a).unwrap();
        assert_eq!(&a * &u, h);
        assert_eq!(h, IntMatrix::from_i64([[1, 0], [1, 2]]));
        assert_eq!(h.det().abs(), BigInt::from(2));
        // mutual solvability: h = a·u and a = h·u⁻¹ with both transforms integral
        let back = u.inverse_unimodular().unwrap();
        assert_eq!(&h * &back, a);
    }

    #[test]
    fn hermite_rejects_rank_deficient() {
        let a = IntMatrix::from_i64([[1, 2], [2, 4]]);
        assert_eq!(hermite_normal_form(&a), Err(MatError::RankDeficient));
    }

    #[test]
    fn echelon_of_wide_matrix() {
        let a = IntMatrix::from_i64([[4, 6, 2], [0, 3, 1]]);
        let (h, u, rank) = column_echelon(&a);
        assert_eq!(rank, 2);
        assert_eq!(&a * &u, h);
        assert!(h.column(2).iter().all(Zero::is_zero));
        assert!(h[(0, 1)].is_zero());
    }

    #[test]
    fn xgcd_signs() {
        for (a, b) in [(12, 18), (-12, 18), (0, -5), (7, 0), (-3, -9)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (g, s, t) = xgcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, a.gcd(&b));
        }
    }
}
