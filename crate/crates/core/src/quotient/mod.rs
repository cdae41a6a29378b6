//! Finite quotients `Γ̂/Γ` of the ambient groups by normal subgroups of
//! finite index, as explicit tables, and brute-force checks of index bounds
//! for their normal abelian subgroups.

mod bounds;
mod grid;
mod table;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactmat::{column_echelon, xgcd, IntMatrix, MatError, Sublattice};
use crate::heis::{HeisElement, HeisError, HeisGroup, HeisSubgroupData};
use crate::numth::NumthError;
use crate::wang::{Fiber, WangDescriptor, WangElement, WangError, WangGroup};

pub use bounds::{heis_quotient, verify_bound, verify_heis_bound, BoundCheck, BoundReport};
pub use grid::{
    heis_grid, kodaira_grid, sm_grid, spm_grid, GridRecord, HeisGridLimits, KodairaGridLimits, SmGridLimits,
    SpmGridLimits,
};
pub use table::{fixtures, FiniteGroupTable, Subgroup, HARD_ORDER_CAP};

/// Default bound on the order of a quotient that will be tabulated.
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotError {
    #[error("ORDER_CAP_EXCEEDED: more than {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("NOT_NORMAL: {0}")]
    NotNormal(String),
    #[error("NOT_FINITE_INDEX: the subgroup has infinite index")]
    NotFiniteIndex,
    #[error("AMBIENT_MISMATCH: {0}")]
    AmbientMismatch(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

/// `Γ ∩ Γ̂₀`: a sublattice of ℤ³ or a subgroup of H(r).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gamma0Part {
    Lattice(Sublattice),
    Heis(HeisSubgroupData),
}

impl Gamma0Part {
    /// `[Γ̂₀ : Γ₀']`
    pub fn index(&self) -> BigInt {
        match self {
            Gamma0Part::Lattice(l) => l.index(),
            Gamma0Part::Heis(s) => s.index(),
        }
    }

    pub fn contains(&self, h: &Fiber) -> bool {
        match (self, h) {
            (Gamma0Part::Lattice(l), Fiber::Lattice(v)) => l.contains(v),
            (Gamma0Part::Heis(s), Fiber::Heis(x)) => s.contains(x).is_some(),
            _ => false,
        }
    }

    /// Canonical representative of `h·Γ₀'`.
    pub fn reduce(&self, h: &Fiber) -> Fiber {
        match (self, h) {
            (Gamma0Part::Lattice(l), Fiber::Lattice(v)) => Fiber::Lattice(l.reduce(v)),
            (Gamma0Part::Heis(s), Fiber::Heis(x)) => Fiber::Heis(s.reduce(x)),
            _ => panic!("mixed fiber kinds"),
        }
    }

    pub fn generators(&self) -> Vec<Fiber> {
        match self {
            Gamma0Part::Lattice(l) => l.basis_vectors().into_iter().map(Fiber::Lattice).collect(),
            Gamma0Part::Heis(s) => s.generators().into_iter().map(Fiber::Heis).collect(),
        }
    }

    fn canonical(&self) -> Self {
        match self {
            Gamma0Part::Lattice(l) => Gamma0Part::Lattice(l.clone()),
            Gamma0Part::Heis(s) => Gamma0Part::Heis(s.canonical()),
        }
    }
}

/// `Γ = Γ₀' ⋊ ⟨θ⟩` with `θ = δ'·γ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubgroupSpec {
    pub ambient: WangDescriptor,
    pub gamma0_part: Gamma0Part,
    pub k: BigInt,
    pub delta: Fiber,
}

/// A coset `h·γ^s·Γ` with `h` reduced modulo `Γ₀'` and `0 ≤ s < k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientKey {
    pub s: u64,
    pub h: Fiber,
}

impl fmt::Display for QuotientKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·γ^{}", self.h, self.s)
    }
}

/// The ambient group of a quotient. Only unimodularity and `r > 0` are
/// needed for the arithmetic, so larger groups than the surface groups are
/// allowed here.
pub fn ambient_group(d: &WangDescriptor) -> Result<WangGroup, QuotError> {
    match d {
        WangDescriptor::Sm { m } if m.nrows() == 3 && m.ncols() == 3 && m.is_unimodular() => {}
        WangDescriptor::Spm { m, r, .. } if m.nrows() == 2 && m.ncols() == 2 && m.is_unimodular() && r.is_positive() => {}
        WangDescriptor::Kodaira { r } if r.is_positive() => {}
        _ => return Err(QuotError::AmbientMismatch("ambient needs a unimodular matrix of the right size and r > 0".into())),
    }
    Ok(WangGroup::unchecked(d.clone()))
}

impl NormalSubgroupSpec {
    pub fn new(ambient: WangDescriptor, gamma0_part: Gamma0Part, k: BigInt, delta: Fiber) -> Result<Self, QuotError> {
        let s = NormalSubgroupSpec { ambient, gamma0_part, k, delta };
        s.check_shape()?;
        Ok(s)
    }

    fn check_shape(&self) -> Result<(), QuotError> {
        let g = ambient_group(&self.ambient)?;
        if !self.k.is_positive() {
            return Err(QuotError::AmbientMismatch("k must be positive".into()));
        }
        let ok = match (&self.gamma0_part, g.descriptor().r()) {
            (Gamma0Part::Lattice(l), None) => l.dim() == 3,
            (Gamma0Part::Heis(s), Some(r)) => &s.r == r && s.is_closed(),
            _ => false,
        };
        if !ok {
            return Err(QuotError::AmbientMismatch("Γ₀-part does not fit the ambient group".into()));
        }
        g.check(&g.fiber(self.delta.clone())).map_err(|_| QuotError::AmbientMismatch("δ' does not fit".into()))?;
        Ok(())
    }

    pub fn group(&self) -> WangGroup {
        ambient_group(&self.ambient).expect("checked on construction")
    }

    /// `θ = δ'·γ^k`
    pub fn theta(&self) -> WangElement {
        WangElement::new(self.delta.clone(), self.k.clone())
    }

    /// Generators of `Γ`: those of `Γ₀'`, then `θ`.
    pub fn generators(&self) -> Vec<WangElement> {
        let g = self.group();
        let mut out: Vec<WangElement> = self.gamma0_part.generators().into_iter().map(|h| g.fiber(h)).collect();
        out.push(self.theta());
        out
    }

    /// `|Γ̂/Γ| = [Γ̂₀ : Γ₀']·k`
    pub fn quotient_order(&self) -> BigInt {
        self.gamma0_part.index() * &self.k
    }

    /// Same subgroup, with canonical `Γ₀'` data and `δ'` reduced modulo `Γ₀'`.
    pub fn canonical(&self) -> Self {
        let part = self.gamma0_part.canonical();
        let delta = part.reduce(&self.delta);
        NormalSubgroupSpec { ambient: self.ambient.clone(), gamma0_part: part, k: self.k.clone(), delta }
    }

    /// `x ∈ Γ`: `k | t`, and `x·θ^(−t/k)` has its fiber in `Γ₀'`.
    pub fn membership(&self, x: &WangElement) -> bool {
        let g = self.group();
        if g.check(x).is_err() {
            return false;
        }
        let (q, rem) = x.t.div_rem(&self.k);
        if !rem.is_zero() {
            return false;
        }
        let y = g.mul(x, &g.pow(&self.theta(), &-q));
        debug_assert!(y.t.is_zero());
        self.gamma0_part.contains(&y.h)
    }

    /// `Γ₀'` is normal in `Γ̂`, and conjugating the generators of `Γ` by
    /// `δ₁, δ₂, δ₃, γ` and their inverses stays in `Γ`.
    pub fn check_normal(&self) -> Result<(), QuotError> {
        let g = self.group();
        let mut conjugators: Vec<WangElement> = g.generators().to_vec();
        conjugators.extend(g.generators().iter().map(|x| g.inv(x)));
        for c in &conjugators {
            for h in self.gamma0_part.generators() {
                let y = g.conjugate(c, &g.fiber(h.clone()));
                if !self.gamma0_part.contains(&y.h) {
                    return Err(QuotError::NotNormal(format!("{c} moves {h} out of Γ₀'")));
                }
            }
            let y = g.conjugate(c, &self.theta());
            if !self.membership(&y) {
                return Err(QuotError::NotNormal(format!("{c}·θ·{c}⁻¹ = {y} is not in Γ")));
            }
        }
        Ok(())
    }

    /// `γ·Γ₀'·γ⁻¹ = Γ₀'`; part of [`Self::check_normal`].
    pub fn is_action_invariant(&self) -> bool {
        let g = self.group();
        self.gamma0_part.generators().iter().all(|h| {
            self.gamma0_part.contains(&g.gamma_action(h)) && self.gamma0_part.contains(&g.act(&-BigInt::one(), h))
        })
    }

    /// Canonical key of the coset `x·Γ`.
    pub fn reduce(&self, g: &WangGroup, x: &WangElement) -> QuotientKey {
        let (q, s) = x.t.div_mod_floor(&self.k);
        let y = if q.is_zero() { x.clone() } else { g.mul(x, &g.pow(&self.theta(), &-q)) };
        QuotientKey { s: s.to_u64().expect("k fits in u64"), h: self.gamma0_part.reduce(&y.h) }
    }
}

/// A tabulated quotient with its coset keys, in label order.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: FiniteGroupTable,
    pub keys: Vec<QuotientKey>,
    pub spec: NormalSubgroupSpec,
}

impl Quotient {
    /// Image of `Γ̂₀`: the cosets with `s = 0`.
    pub fn gamma0_image(&self) -> Subgroup {
        let mut set = fixedbitset::FixedBitSet::with_capacity(self.table.order());
        for (i, key) in self.keys.iter().enumerate() {
            if key.s == 0 {
                set.insert(i);
            }
        }
        Subgroup { elements: set }
    }

    /// The image of `Γ̂₀` is a normal subgroup of index `k` with
    /// `[Γ̂₀ : Γ₀']` elements, and `|G| = [Γ̂₀ : Γ₀']·k`.
    pub fn structure_holds(&self) -> bool {
        let g0 = self.gamma0_image();
        let k = self.spec.k.to_usize().unwrap_or(0);
        let idx = self.spec.gamma0_part.index().to_usize().unwrap_or(0);
        BigInt::from(self.table.order()) == self.spec.quotient_order()
            && g0.order() == idx
            && g0.order() * k == self.table.order()
            && self.table.is_subgroup(&g0.elements)
            && self.table.is_normal(&g0)
    }
}

/// `Γ̂/Γ` as a table, with the default order cap.
pub fn build_quotient(spec: &NormalSubgroupSpec) -> Result<Quotient, QuotError> {
    build_quotient_capped(spec, DEFAULT_ORDER_CAP)
}

pub fn build_quotient_capped(spec: &NormalSubgroupSpec, cap: usize) -> Result<Quotient, QuotError> {
    let cap = cap.min(HARD_ORDER_CAP);
    spec.check_shape()?;
    if spec.quotient_order() > BigInt::from(cap) {
        return Err(QuotError::OrderCapExceeded { cap });
    }
    spec.check_normal()?;
    let spec = spec.canonical();
    let g = spec.group();
    let gens = g.generators();
    let start = spec.reduce(&g, &g.identity());
    let (table, keys) = FiniteGroupTable::from_generators(
        start,
        gens.len(),
        |key, i| {
            let x = WangElement::new(key.h.clone(), BigInt::from(key.s));
            spec.reduce(&g, &g.mul(&x, &gens[i]))
        },
        cap,
    )?;
    debug_assert_eq!(BigInt::from(table.order()), spec.quotient_order());
    Ok(Quotient { table, keys, spec })
}

/// Rank of the span of integer vectors of length `dim`.
fn rank_of(dim: usize, vs: &[Vec<BigInt>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    column_echelon(&IntMatrix::from_columns(dim, vs)).2
}

/// Splits the subgroup generated by `gens` as `Γ₀' ⋊ ⟨δ'·γ^k⟩`.
pub fn decompose_normal_subgroup(ambient: &WangDescriptor, gens: &[WangElement]) -> Result<NormalSubgroupSpec, QuotError> {
    let g = ambient_group(ambient)?;
    for x in gens {
        g.check(x)?;
    }
    // θ₀ = ∏ gᵢ^cᵢ with ∑ cᵢtᵢ = k = gcd(tᵢ)
    let mut k = BigInt::zero();
    let mut theta = g.identity();
    for x in gens {
        let (d, u, v) = xgcd(&k, &x.t);
        if d.is_zero() {
            continue;
        }
        theta = g.mul(&g.pow(&theta, &u), &g.pow(x, &v));
        k = d;
    }
    if k.is_zero() {
        return Err(QuotError::NotFiniteIndex);
    }
    if theta.t.is_negative() {
        theta = g.inv(&theta);
    }
    debug_assert_eq!(theta.t, k);
    let theta_inv = g.inv(&theta);
    // Γ ∩ Γ̂₀ is generated by the θ-conjugates of gᵢ·θ^(−tᵢ/k)
    let mut fibers: Vec<Fiber> = gens.iter().map(|x| g.mul(x, &g.pow(&theta, &-(&x.t / &k))).h).collect();
    let push = |fs: &[Fiber]| -> Vec<Fiber> {
        let mut out = fs.to_vec();
        for h in fs {
            out.push(g.conjugate(&theta, &g.fiber(h.clone())).h);
            out.push(g.conjugate(&theta_inv, &g.fiber(h.clone())).h);
        }
        out
    };
    let part = if g.is_lattice() {
        let vecs = |fs: &[Fiber]| -> Vec<Vec<BigInt>> {
            fs.iter()
                .map(|h| match h {
                    Fiber::Lattice(v) => v.clone(),
                    Fiber::Heis(_) => unreachable!("lattice fibers"),
                })
                .collect()
        };
        for _ in 0..3 {
            if rank_of(3, &vecs(&fibers)) == 3 {
                break;
            }
            fibers = push(&fibers);
        }
        if rank_of(3, &vecs(&fibers)) < 3 {
            return Err(QuotError::NotFiniteIndex);
        }
        let mut lat = Sublattice::from_vectors(3, &vecs(&fibers))?;
        loop {
            let next = Sublattice::from_vectors(3, &vecs(&push(&lat.basis_vectors().into_iter().map(Fiber::Lattice).collect::<Vec<_>>())))?;
            if next == lat {
                break Gamma0Part::Lattice(lat);
            }
            lat = next;
        }
    } else {
        let h = g.heis().expect("Heisenberg fiber").clone();
        let elems = |fs: &[Fiber]| -> Vec<HeisElement> {
            fs.iter()
                .map(|f| match f {
                    Fiber::Heis(x) => x.clone(),
                    Fiber::Lattice(_) => unreachable!("Heisenberg fibers"),
                })
                .collect()
        };
        let proj_rank = |es: &[HeisElement]| rank_of(2, &es.iter().map(|e| vec![e.a.clone(), e.b.clone()]).collect::<Vec<_>>());
        for _ in 0..2 {
            if proj_rank(&elems(&fibers)) == 2 {
                break;
            }
            fibers = push(&fibers);
        }
        if proj_rank(&elems(&fibers)) < 2 {
            return Err(QuotError::NotFiniteIndex);
        }
        let mut data = HeisSubgroupData::from_generators(h.r(), &elems(&fibers))?;
        loop {
            let fs: Vec<Fiber> = data.generators().into_iter().map(Fiber::Heis).collect();
            let next = HeisSubgroupData::from_generators(h.r(), &elems(&push(&fs)))?;
            if next == data {
                break Gamma0Part::Heis(data);
            }
            data = next;
        }
    };
    let spec = NormalSubgroupSpec { ambient: ambient.clone(), gamma0_part: part, k, delta: theta.h };
    spec.check_shape()?;
    Ok(spec.canonical())
}

/// The projection of `Γ₀'` to `Γ̂₀/z(Γ̂₀) ≅ ℤ²` (Heisenberg fibers only).
pub(crate) fn projected_lattice(s: &HeisSubgroupData) -> Sublattice {
    Sublattice::from_vectors(2, &[s.zeta[..2].to_vec(), s.xi[..2].to_vec()]).expect("finite index")
}

/// Canonical normal subgroups of H(r) with `[H(r) : S] ≤ max_index`, with
/// projected block in HNF `(a₁, a₂; 0, b₂)`.
pub fn normal_heis_subgroups(r: &BigInt, max_index: u64) -> Vec<HeisSubgroupData> {
    let h = HeisGroup::new(r.clone()).expect("positive r");
    let mut out = Vec::new();
    let max = max_index as i64;
    for a1 in 1..=max {
        for b2 in 1..=max / a1 {
            for a2 in 0..b2 {
                let g = a1.gcd(&a2).gcd(&b2);
                let rg = r * BigInt::from(g);
                let mut c = BigInt::one();
                while c <= rg {
                    if rg.is_multiple_of(&c) && BigInt::from(a1 * b2) * &c <= BigInt::from(max) {
                        let mut a3 = BigInt::zero();
                        while a3 < c {
                            let mut b3 = BigInt::zero();
                            while b3 < c {
                                let d = HeisSubgroupData::new(
                                    [a1.into(), a2.into(), a3.clone()],
                                    [0.into(), b2.into(), b3.clone()],
                                    c.clone(),
                                    h.r().clone(),
                                )
                                .expect("det ≠ 0")
                                .canonical();
                                if d.is_closed() && d.is_normal() {
                                    out.push(d);
                                }
                                b3 += 1;
                            }
                            a3 += 1;
                        }
                    }
                    c += 1;
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::HeisSubgroupData;

    pub(crate) fn kodaira_example() -> NormalSubgroupSpec {
        let part = HeisSubgroupData::from_i64([2, 0, 0], [0, 1, 0], 1, 1).unwrap();
        NormalSubgroupSpec::new(
            WangDescriptor::kodaira(1),
            Gamma0Part::Heis(part),
            BigInt::one(),
            Fiber::Heis(HeisElement::identity()),
        )
        .unwrap()
    }

    fn companion() -> IntMatrix {
        IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
    }

    #[test]
    fn kodaira_index_two() {
        let spec = kodaira_example();
        let q = build_quotient(&spec).unwrap();
        assert_eq!(q.table.order(), 2);
        assert!(q.table.is_abelian());
        assert!(q.structure_holds());
        for x in spec.generators() {
            assert!(spec.membership(&x));
        }
        let g = spec.group();
        assert!(!spec.membership(&g.deltas()[0]));
        assert!(spec.membership(&g.pow(&g.deltas()[0], &BigInt::from(-4))));
    }

    #[test]
    fn membership_needs_k_to_divide_t() {
        let mut spec = kodaira_example();
        spec.k = BigInt::from(2);
        assert!(!spec.membership(&WangElement::heis(0, 0, 0, 1)));
        assert!(spec.membership(&WangElement::heis(0, 0, 0, 2)));
        assert!(!spec.membership(&WangElement::lattice(&[0, 0, 0], 2)));
    }

    #[test]
    fn sm_commutator_quotient() {
        let m = IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 2]]);
        let d = WangDescriptor::sm(m.clone());
        d.validate().unwrap();
        let lat = Sublattice::image(&m.minus_identity()).unwrap();
        let det = m.minus_identity().det();
        let spec = NormalSubgroupSpec::new(d, Gamma0Part::Lattice(lat), BigInt::one(), Fiber::Lattice(vec![0.into(); 3]))
            .unwrap();
        let q = build_quotient(&spec).unwrap();
        assert_eq!(BigInt::from(q.table.order()), det.abs());
        assert!(q.structure_holds());
    }

    #[test]
    fn whole_group_gives_trivial_quotient() {
        let d = WangDescriptor::sm(companion());
        let spec = NormalSubgroupSpec::new(d, Gamma0Part::Lattice(Sublattice::whole(3)), BigInt::one(), Fiber::Lattice(vec![0.into(); 3]))
            .unwrap();
        assert_eq!(build_quotient(&spec).unwrap().table.order(), 1);
        let d = WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 2, [1, 1]);
        let spec = NormalSubgroupSpec::new(
            d,
            Gamma0Part::Heis(HeisSubgroupData::whole(&BigInt::from(2))),
            BigInt::one(),
            Fiber::Heis(HeisElement::from_i64(1, 0, 0)),
        )
        .unwrap();
        assert_eq!(build_quotient(&spec).unwrap().table.order(), 1);
    }

    #[test]
    fn not_normal_and_cap() {
        // ⟨δ₁, δ₃, γ⟩ in H(1) × ℤ: δ₂ conjugates δ₁ to δ₁δ₃^(−1), fine, but
        // the Γ₀-part must be normal in H(1); take ⟨δ₁², δ₂, δ₃²⟩ with r = 1
        let part = HeisSubgroupData::from_i64([2, 0, 0], [0, 1, 0], 2, 1).unwrap();
        assert!(part.is_closed() && !part.is_normal());
        let spec = NormalSubgroupSpec::new(WangDescriptor::kodaira(1), Gamma0Part::Heis(part), BigInt::one(), Fiber::Heis(HeisElement::identity()))
            .unwrap();
        assert!(matches!(build_quotient(&spec), Err(QuotError::NotNormal(_))));
        let big = NormalSubgroupSpec::new(
            WangDescriptor::kodaira(1),
            Gamma0Part::Heis(HeisSubgroupData::from_i64([8, 0, 0], [0, 8, 0], 1, 1).unwrap()),
            BigInt::from(9),
            Fiber::Heis(HeisElement::identity()),
        )
        .unwrap();
        assert!(matches!(build_quotient(&big), Err(QuotError::OrderCapExceeded { cap: 512 })));
    }

    #[test]
    fn theta_with_correction_is_normal_only_when_commutators_fit() {
        // Γ₀' = ⟨δ₁⁴, δ₂², δ₃²⟩ ⊂ H(1); [δ₂, δ₁^a γ] = δ₃^(−a) must lie in Γ₀'
        let part = HeisSubgroupData::from_i64([4, 0, 0], [0, 2, 0], 2, 1).unwrap();
        assert!(part.is_normal());
        let make = |a| {
            NormalSubgroupSpec::new(WangDescriptor::kodaira(1), Gamma0Part::Heis(part.clone()), BigInt::one(), Fiber::Heis(HeisElement::from_i64(a, 0, 0)))
                .unwrap()
        };
        assert!(matches!(make(1).check_normal(), Err(QuotError::NotNormal(_))));
        let spec = make(2);
        spec.check_normal().unwrap();
        let q = build_quotient(&spec).unwrap();
        assert_eq!(q.table.order(), 16);
        assert!(!q.table.is_abelian());
        assert!(q.structure_holds());
    }

    #[test]
    fn decompose_examples() {
        let g = WangGroup::new(WangDescriptor::kodaira(1)).unwrap();
        let [d1, d2, d3, gamma] = g.generators();
        let spec = decompose_normal_subgroup(g.descriptor(), &[g.pow(&d1, &2.into()), d2.clone(), d3.clone(), gamma.clone()]).unwrap();
        assert_eq!(spec.k, BigInt::one());
        assert_eq!(spec.gamma0_part.index(), BigInt::from(2));
        assert_eq!(spec, kodaira_example().canonical());

        let spec = decompose_normal_subgroup(g.descriptor(), &[d1.clone(), d2.clone(), d3, g.pow(&gamma, &3.into())]).unwrap();
        assert_eq!(spec.k, BigInt::from(3));
        assert_eq!(spec.gamma0_part.index(), BigInt::one());

        let sm = WangGroup::new(WangDescriptor::sm(companion())).unwrap();
        let x = sm.mul(&sm.pow(&sm.gamma(), &2.into()), &sm.deltas()[0]);
        assert_eq!(decompose_normal_subgroup(sm.descriptor(), &[x]), Err(QuotError::NotFiniteIndex));
        assert_eq!(decompose_normal_subgroup(g.descriptor(), &[d1, d2]), Err(QuotError::NotFiniteIndex));
    }

    #[test]
    fn decompose_round_trip() {
        let spec = NormalSubgroupSpec::new(
            WangDescriptor::kodaira(2),
            Gamma0Part::Heis(HeisSubgroupData::from_i64([2, 0, 1], [0, 2, 0], 2, 2).unwrap()),
            BigInt::from(2),
            Fiber::Heis(HeisElement::from_i64(1, 1, 0)),
        )
        .unwrap();
        spec.check_normal().unwrap();
        let back = decompose_normal_subgroup(&spec.ambient, &spec.generators()).unwrap();
        assert_eq!(back, spec.canonical());
        let q1 = build_quotient(&spec).unwrap();
        let q2 = build_quotient(&back).unwrap();
        assert_eq!(q1.table, q2.table);
    }

    #[test]
    fn small_normal_subgroups_of_h1() {
        let subs = normal_heis_subgroups(&BigInt::one(), 4);
        assert!(subs.contains(&HeisSubgroupData::whole(&BigInt::one())));
        assert!(subs.iter().all(|s| s.is_normal() && s.index() <= BigInt::from(4)));
        // index-2 normal subgroups of H(1) correspond to the three index-2 subgroups of ℤ²
        assert_eq!(subs.iter().filter(|s| s.index() == BigInt::from(2)).count(), 3);
    }
}
