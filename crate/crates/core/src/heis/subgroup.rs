use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmat::{column_echelon, hermite_normal_form, IntMatrix};

use super::{HeisElement, HeisError, HeisGroup};

/// `⟨ζ, ξ, δ₃^c⟩ ⊂ H(r)` with `ζ = δ₁^a₁ δ₂^a₂ δ₃^a₃` and `ξ = δ₁^b₁ δ₂^b₂ δ₃^b₃`.
///
/// `zeta` and `xi` hold word exponents, not triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisSubgroupData {
    pub zeta: [BigInt; 3],
    pub xi: [BigInt; 3],
    pub c: BigInt,
    pub r: BigInt,
}

/// Witness for `x = ζ^m ξ^n (δ₃^c)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub m: BigInt,
    pub n: BigInt,
    pub j: BigInt,
}

fn ints<const N: usize>(xs: [i64; N]) -> [BigInt; N] {
    xs.map(BigInt::from)
}

impl HeisSubgroupData {
    pub fn new(zeta: [BigInt; 3], xi: [BigInt; 3], c: BigInt, r: BigInt) -> Result<Self, HeisError> {
        if !r.is_positive() {
            return Err(HeisError::BadR);
        }
        if !c.is_positive() {
            return Err(HeisError::BadCentralStep);
        }
        let s = HeisSubgroupData { zeta, xi, c, r };
        if s.det().is_zero() {
            return Err(HeisError::NotFiniteIndex);
        }
        Ok(s)
    }

    pub fn from_i64(zeta: [i64; 3], xi: [i64; 3], c: i64, r: i64) -> Result<Self, HeisError> {
        Self::new(ints(zeta), ints(xi), c.into(), r.into())
    }

    /// The whole of H(r).
    pub fn whole(r: &BigInt) -> Self {
        Self::new(ints([1, 0, 0]), ints([0, 1, 0]), 1.into(), r.clone()).expect("valid data")
    }

    pub fn group(&self) -> HeisGroup {
        HeisGroup::new(self.r.clone()).expect("validated r")
    }

    pub fn zeta_element(&self) -> HeisElement {
        self.group().from_exponents(&self.zeta)
    }

    pub fn xi_element(&self) -> HeisElement {
        self.group().from_exponents(&self.xi)
    }

    pub fn central_generator(&self) -> HeisElement {
        HeisElement::central(self.c.clone())
    }

    pub fn generators(&self) -> [HeisElement; 3] {
        [self.zeta_element(), self.xi_element(), self.central_generator()]
    }

    /// `a₁b₂ − a₂b₁`
    pub fn det(&self) -> BigInt {
        &self.zeta[0] * &self.xi[1] - &self.zeta[1] * &self.xi[0]
    }

    /// Whether `[ζ, ξ] = δ₃^(r·det)` lies in `⟨δ₃^c⟩`.
    pub fn is_closed(&self) -> bool {
        (&self.r * self.det()).is_multiple_of(&self.c)
    }

    /// HNF of the projected block, with central exponents reduced mod `c`.
    pub fn canonical(&self) -> Self {
        let h = self.group();
        let block = IntMatrix::from_columns(2, &[self.zeta[..2].to_vec(), self.xi[..2].to_vec()]);
        let (_, u) = hermite_normal_form(&block).expect("finite index");
        let (zeta, xi) = (self.zeta_element(), self.xi_element());
        let combo = |p: &BigInt, q: &BigInt| h.mul(&h.pow(&zeta, p), &h.pow(&xi, q));
        let new_zeta = combo(&u[(0, 0)], &u[(1, 0)]);
        let new_xi = combo(&u[(0, 1)], &u[(1, 1)]);
        let reduce = |x: &HeisElement| {
            let [p, q, z] = x.word_exponents(&self.r);
            [p, q, z.mod_floor(&self.c)]
        };
        HeisSubgroupData { zeta: reduce(&new_zeta), xi: reduce(&new_xi), c: self.c.clone(), r: self.r.clone() }
    }

    /// Decides `x ∈ ⟨ζ, ξ, δ₃^c⟩` for closed data, with a witness.
    pub fn contains(&self, x: &HeisElement) -> Option<Membership> {
        let h = self.group();
        let d = self.det();
        let (a1, a2, b1, b2) = (&self.zeta[0], &self.zeta[1], &self.xi[0], &self.xi[1]);
        let (m, rm) = (&x.a * b2 - &x.b * b1).div_rem(&d);
        let (n, rn) = (a1 * &x.b - a2 * &x.a).div_rem(&d);
        if !rm.is_zero() || !rn.is_zero() {
            return None;
        }
        let part = h.mul(&h.pow(&self.zeta_element(), &m), &h.pow(&self.xi_element(), &n));
        let rest = h.mul(x, &h.inv(&part));
        debug_assert!(rest.is_central());
        let (j, rj) = rest.c.div_rem(&self.c);
        rj.is_zero().then_some(Membership { m, n, j })
    }

    /// Conjugates of the generators by `δ₁`, `δ₂`, `δ₃` stay inside.
    pub fn is_normal(&self) -> bool {
        let h = self.group();
        let gens = self.generators();
        let normal = [HeisElement::d1(), HeisElement::d2(), HeisElement::d3()]
            .iter()
            .all(|g| gens.iter().all(|s| self.contains(&h.conjugate(g, s)).is_some()));
        let g = [&self.zeta[0], &self.zeta[1], &self.xi[0], &self.xi[1]]
            .into_iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        assert!(!normal || (&self.r * g).is_multiple_of(&self.c), "normal subgroup with c ∤ r·gcd: {self:?}");
        normal
    }

    pub fn index(&self) -> BigInt {
        self.det().abs() * &self.c
    }

    /// `r' = r·|det|/c`, the parameter of the isomorphic Heisenberg group.
    pub fn iso_type(&self) -> Result<BigInt, HeisError> {
        if !self.is_closed() {
            return Err(HeisError::NotSubgroupClosed);
        }
        let rp = &self.r * self.det().abs() / &self.c;
        let h = self.group();
        let comm = h.commutator(&self.zeta_element(), &self.xi_element());
        debug_assert!(comm.is_central() && comm.c.abs() == &rp * &self.c);
        Ok(rp)
    }

    /// Canonical representative of the coset `x·S`; needs canonical, closed data.
    pub fn reduce(&self, x: &HeisElement) -> HeisElement {
        let h = self.group();
        debug_assert!(self.zeta[0].is_positive() && self.xi[0].is_zero() && self.xi[1].is_positive());
        let m = x.a.div_floor(&self.zeta[0]);
        let x = h.mul(x, &h.pow(&self.zeta_element(), &-m));
        let n = x.b.div_floor(&self.xi[1]);
        let mut x = h.mul(&x, &h.pow(&self.xi_element(), &-n));
        x.c = x.c.mod_floor(&self.c);
        x
    }

    /// The canonical coset representatives, `index()` of them.
    pub fn coset_representatives(&self) -> Vec<HeisElement> {
        let mut out = Vec::new();
        let mut a = BigInt::zero();
        while a < self.zeta[0] {
            let mut b = BigInt::zero();
            while b < self.xi[1] {
                let mut c = BigInt::zero();
                while c < self.c {
                    out.push(HeisElement::new(a.clone(), b.clone(), c.clone()));
                    c += 1;
                }
                b += 1;
            }
            a += 1;
        }
        out
    }

    /// Canonical data of the subgroup generated by `gens`.
    pub fn from_generators(r: &BigInt, gens: &[HeisElement]) -> Result<Self, HeisError> {
        let h = HeisGroup::new(r.clone())?;
        let proj: Vec<Vec<BigInt>> = gens.iter().map(|g| vec![g.a.clone(), g.b.clone()]).collect();
        let (e, u, rank) = column_echelon(&IntMatrix::from_columns(2, &proj));
        if rank < 2 {
            return Err(HeisError::NotFiniteIndex);
        }
        let ordered = |j: usize| {
            gens.iter().enumerate().fold(HeisElement::identity(), |acc, (i, g)| h.mul(&acc, &h.pow(g, &u[(i, j)])))
        };
        // relations among the projections lift to central elements
        let mut c = r * (&e[(0, 0)] * &e[(1, 1)]).abs();
        for j in 2..gens.len() {
            let z = ordered(j);
            debug_assert!(z.is_central());
            c = c.gcd(&z.c);
        }
        let (zeta, xi) = (ordered(0), ordered(1));
        Ok(HeisSubgroupData { zeta: zeta.word_exponents(r), xi: xi.word_exponents(r), c, r: r.clone() }.canonical())
    }
}

/// For a subgroup of infinite index: every pair of elements in the ball of
/// radius `bound` commutes.
pub fn infinite_index_subgroup_abelian_check(
    h: &HeisGroup,
    gens: &[HeisElement],
    bound: usize,
) -> Result<bool, HeisError> {
    let proj: Vec<Vec<BigInt>> = gens.iter().map(|g| vec![g.a.clone(), g.b.clone()]).collect();
    if !gens.is_empty() && column_echelon(&IntMatrix::from_columns(2, &proj)).2 >= 2 {
        return Err(HeisError::FiniteIndex);
    }
    let letters: Vec<HeisElement> = gens.iter().flat_map(|g| [g.clone(), h.inv(g)]).collect();
    let mut ball: BTreeSet<HeisElement> = BTreeSet::from([HeisElement::identity()]);
    let mut frontier = vec![HeisElement::identity()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let x = h.mul(w, l);
                if ball.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    let ball: Vec<HeisElement> = ball.into_iter().collect();
    Ok(ball.iter().all(|x| ball.iter().all(|y| h.commutator(x, y).is_identity())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn data(zeta: [i64; 3], xi: [i64; 3], c: i64, r: i64) -> HeisSubgroupData {
        HeisSubgroupData::from_i64(zeta, xi, c, r).unwrap()
    }

    fn el(a: i64, b: i64, c: i64) -> HeisElement {
        HeisElement::from_i64(a, b, c)
    }

    #[test]
    fn membership_examples() {
        let s = data([2, 0, 0], [0, 1, 0], 1, 1);
        assert_eq!(
            s.contains(&s.central_generator()),
            Some(Membership { m: 0.into(), n: 0.into(), j: 1.into() })
        );
        assert_eq!(s.contains(&el(1, 0, 0)), None);
        let x = el(2, 1, 0);
        let w = s.contains(&x).unwrap();
        let h = s.group();
        let rebuilt = h.mul(
            &h.mul(&h.pow(&s.zeta_element(), &w.m), &h.pow(&s.xi_element(), &w.n)),
            &h.pow(&s.central_generator(), &w.j),
        );
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn normality_examples() {
        assert!(data([2, 0, 0], [0, 2, 0], 2, 1).is_normal());
        assert!(!data([2, 0, 0], [0, 2, 0], 4, 1).is_normal());
        assert!(data([1, 0, 0], [0, 1, 0], 1, 1).is_normal());
    }

    #[test]
    fn index_and_type_examples() {
        assert_eq!(HeisSubgroupData::whole(&3.into()).index(), 1.into());
        assert_eq!(data([2, 0, 0], [0, 1, 0], 1, 1).index(), 2.into());
        assert_eq!(data([2, 0, 0], [0, 2, 0], 2, 1).index(), 8.into());
        // ⟨δ₁³, δ₂, δ₃²⟩ in H(2) is H(3)
        assert_eq!(data([3, 0, 0], [0, 1, 0], 2, 2).iso_type().unwrap(), 3.into());
        assert_eq!(HeisSubgroupData::whole(&4.into()).iso_type().unwrap(), 4.into());
        assert_eq!(data([2, 0, 0], [0, 2, 0], 2, 1).iso_type().unwrap(), 2.into());
        assert_eq!(data([1, 0, 0], [0, 1, 0], 2, 1).iso_type(), Err(HeisError::NotSubgroupClosed));
        assert_eq!(HeisSubgroupData::from_i64([1, 2, 0], [2, 4, 0], 1, 1), Err(HeisError::NotFiniteIndex));
    }

    #[test]
    fn generated_subgroup_matches_data() {
        let r = BigInt::from(2);
        let s = HeisSubgroupData::from_generators(&r, &[el(2, 0, 0), el(0, 3, 0), el(0, 0, 4)]).unwrap();
        // [δ₁², δ₂³] = δ₃^12 and δ₃^4 given
        assert_eq!(s, data([2, 0, 0], [0, 3, 0], 4, 2));
        let t = HeisSubgroupData::from_generators(&r, &[el(2, 0, 0), el(0, 3, 0), el(2, 3, 1)]).unwrap();
        // δ₁⁻²·δ₂⁻³·(2, 3, 1) = δ₃
        assert_eq!(t.c, BigInt::from(1));
    }

    #[test]
    fn coset_representatives_are_distinct_cosets() {
        let s = data([2, 1, 1], [0, 2, 0], 2, 2).canonical();
        assert!(s.is_normal());
        let reps = s.coset_representatives();
        assert_eq!(BigInt::from(reps.len()), s.index());
        for x in &reps {
            assert_eq!(&s.reduce(x), x);
        }
        let h = s.group();
        for x in &reps {
            for y in &reps {
                let same = s.contains(&h.mul(&h.inv(x), y)).is_some();
                assert_eq!(same, x == y);
            }
        }
    }

    #[test]
    fn infinite_index_subgroups_are_abelian() {
        let h = HeisGroup::with_r(1);
        assert!(infinite_index_subgroup_abelian_check(&h, &[HeisElement::d3()], 3).unwrap());
        assert!(infinite_index_subgroup_abelian_check(&h, &[el(1, 2, 0), el(0, 0, 1)], 3).unwrap());
        assert_eq!(
            infinite_index_subgroup_abelian_check(&h, &[el(1, 0, 0), el(0, 1, 0)], 3),
            Err(HeisError::FiniteIndex)
        );
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable_and_spans_same_group(
            r in 1i64..=3,
            z in prop::array::uniform3(-4i64..=4),
            x in prop::array::uniform3(-4i64..=4),
            c in 1i64..=6,
        ) {
            let Ok(s) = HeisSubgroupData::from_i64(z, x, c, r) else { return Ok(()) };
            prop_assume!(s.is_closed());
            let t = s.canonical();
            prop_assert_eq!(t.canonical(), t.clone());
            prop_assert_eq!(t.index(), s.index());
            for g in s.generators() {
                prop_assert!(t.contains(&g).is_some());
            }
            for g in t.generators() {
                prop_assert!(s.contains(&g).is_some());
            }
            prop_assert_eq!(HeisSubgroupData::from_generators(&s.r, &s.generators()).unwrap(), t);
        }

        #[test]
        fn normal_implies_divisibility(
            r in 1i64..=3,
            z in prop::array::uniform3(-4i64..=4),
            x in prop::array::uniform3(-4i64..=4),
            c in 1i64..=12,
        ) {
            let Ok(s) = HeisSubgroupData::from_i64(z, x, c, r) else { return Ok(()) };
            let g = z[0].gcd(&z[1]).gcd(&x[0]).gcd(&x[1]);
            if s.is_normal() {
                prop_assert_eq!((r * g) % c, 0);
                let rp = s.iso_type().unwrap();
                prop_assert!(rp >= BigInt::from(1));
            }
        }
    }
}
