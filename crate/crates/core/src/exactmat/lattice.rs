use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{column_echelon, hermite_normal_form};
use super::MatError;

/// A full-rank sublattice of ℤⁿ, stored as the column HNF of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice spanned by the columns of `generators` (any number of them).
    pub fn span(generators: &IntMatrix) -> Result<Self, MatError> {
        let (h, _, rank) = column_echelon(generators);
        if rank < generators.nrows() {
            return Err(MatError::RankDeficient);
        }
        let cols: Vec<Vec<BigInt>> = (0..rank).map(|j| h.column(j)).collect();
        Ok(Sublattice { basis: IntMatrix::from_columns(generators.nrows(), &cols) })
    }

    pub fn from_vectors(dim: usize, vectors: &[Vec<BigInt>]) -> Result<Self, MatError> {
        Self::span(&IntMatrix::from_columns(dim, vectors))
    }

    pub fn whole(dim: usize) -> Self {
        Sublattice { basis: IntMatrix::identity(dim) }
    }

    pub fn scaled(dim: usize, m: &BigInt) -> Self {
        Sublattice { basis: IntMatrix::identity(dim).scale(&m.abs()) }
    }

    /// Image of `matrix`, which must be nonsingular.
    pub fn image(matrix: &IntMatrix) -> Result<Self, MatError> {
        let (h, _) = hermite_normal_form(matrix)?;
        Ok(Sublattice { basis: h })
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Lower-triangular HNF basis (columns).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn index(&self) -> BigInt {
        (0..self.dim()).map(|i| self.basis[(i, i)].clone()).product()
    }

    /// Canonical residue of `v` modulo the lattice: coordinate `i` lands in `[0, h_ii)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let q = v[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for (r, x) in v.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(r, i)];
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut coords = vec![BigInt::zero(); self.dim()];
        for i in 0..self.dim() {
            let (q, r) = v[i].div_rem(&self.basis[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            for (row, x) in v.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(row, i)];
            }
            coords[i] = q;
        }
        Some(coords)
    }

    pub fn is_invariant_under(&self, m: &IntMatrix) -> bool {
        self.basis_vectors().iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis_vectors().iter().all(|b| self.contains(b))
    }

    /// Sum of two lattices.
    pub fn join(&self, other: &Sublattice) -> Sublattice {
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        Self::from_vectors(self.dim(), &cols).expect("sum of full-rank lattices has full rank")
    }

    /// Matrix of `m` restricted to the lattice, in the HNF basis: `B⁻¹·m·B`.
    pub fn restricted_action(&self, m: &IntMatrix) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<BigInt>>> =
            self.basis_vectors().iter().map(|b| self.coordinates(&m.mul_vec(b))).collect();
        Some(IntMatrix::from_columns(self.dim(), &cols?))
    }

    /// All canonical residues, in lexicographic order of coordinates.
    pub fn residues(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for i in 0..self.dim() {
            let bound = self.basis[(i, i)].clone();
            let mut next = Vec::new();
            for prefix in &out {
                let mut x = BigInt::zero();
                while x < bound {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    next.push(p);
                    x += 1;
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn residues_count_matches_index() {
        let l = Sublattice::from_vectors(2, &[v(&[2, 1]), v(&[0, 3])]).unwrap();
        assert_eq!(l.index(), BigInt::from(6));
        let res = l.residues();
        assert_eq!(res.len(), 6);
        for r in &res {
            assert_eq!(&l.reduce(r), r);
        }
    }

    #[test]
    fn reduce_is_constant_on_cosets() {
        let l = Sublattice::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 2, 1]), v(&[1, 0, 3])]).unwrap();
        let x = v(&[5, -7, 4]);
        for b in l.basis_vectors() {
            let shifted: Vec<BigInt> = x.iter().zip(&b).map(|(p, q)| p + q * 3).collect();
            assert_eq!(l.reduce(&shifted), l.reduce(&x));
        }
        assert_eq!(l.coordinates(&l.basis_vectors()[1]), Some(v(&[0, 1, 0])));
    }

    #[test]
    fn rank_deficient_span_is_rejected() {
        assert_eq!(
            Sublattice::from_vectors(2, &[v(&[1, 2]), v(&[2, 4])]),
            Err(MatError::RankDeficient)
        );
    }
}
