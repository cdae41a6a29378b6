use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactmat::{has_eigenvalue_one, smith_normal_form, IntMatrix, Sublattice};
use crate::heis::{HeisElement, HeisSubgroupData};

use super::group::{Fiber, WangElement, WangGroup};
use super::{WangDescriptor, WangError};

/// `[Γ, Γ]` for a group whose action matrix has no eigenvalue 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorLattice {
    /// `M − Id`; its columns span `[Γ,Γ]` (SM) or its image in `Γ₀/z(Γ₀)` (SPM).
    pub generators: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    /// `|det(M − Id)|`
    pub abelian_index: BigInt,
    pub lattice: Option<Sublattice>,
    pub heis: Option<HeisSubgroupData>,
}

impl CommutatorLattice {
    pub fn contains(&self, h: &Fiber) -> bool {
        match (h, &self.lattice, &self.heis) {
            (Fiber::Lattice(v), Some(l), _) => l.contains(v),
            (Fiber::Heis(x), _, Some(s)) => s.contains(x).is_some(),
            _ => false,
        }
    }

    /// `[Γ₀ : [Γ, Γ]]`
    pub fn index_in_gamma0(&self) -> BigInt {
        match (&self.lattice, &self.heis) {
            (Some(l), _) => l.index(),
            (_, Some(s)) => s.index(),
            _ => unreachable!("one of the two parts is set"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Trivial,
    GeneratedBy(Vec<WangElement>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InoueType {
    SM,
    SPlus,
    SMinus,
    Kodaira,
}

impl InoueType {
    pub fn code(self) -> &'static str {
        match self {
            InoueType::SM => "S_M",
            InoueType::SPlus => "S_PLUS",
            InoueType::SMinus => "S_MINUS",
            InoueType::Kodaira => "KODAIRA",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadTarget {
    CommutatorSubgroup,
    Gamma0,
}

impl WangGroup {
    /// `[Γ, Γ]` as a sublattice of ℤ³ (SM) or a finite-index subgroup of H(r) (SPM).
    pub fn commutator_lattice(&self) -> Result<CommutatorLattice, WangError> {
        if matches!(self.descriptor(), WangDescriptor::Kodaira { .. }) {
            return Err(WangError::EigenvalueOne);
        }
        let m = self.action_matrix();
        if has_eigenvalue_one(&m) {
            return Err(WangError::EigenvalueOne);
        }
        let gens = m.minus_identity();
        let snf = smith_normal_form(&gens);
        let abelian_index = gens.det().magnitude().clone().into();
        let (lattice, heis) = if self.is_lattice() {
            (Some(Sublattice::span(&gens)?), None)
        } else {
            (None, Some(self.heis_commutator_subgroup()?))
        };
        Ok(CommutatorLattice { generators: gens, invariant_factors: snf.invariant_factors(), abelian_index, lattice, heis })
    }

    /// Normal closure of the commutators of the generators.
    fn heis_commutator_subgroup(&self) -> Result<HeisSubgroupData, WangError> {
        let h = self.heis().expect("Heisenberg fiber");
        let gens = self.generators();
        let fiber = |x: WangElement| match x.h {
            Fiber::Heis(e) => e,
            Fiber::Lattice(_) => unreachable!(),
        };
        let mut pool: Vec<HeisElement> = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                pool.push(fiber(self.commutator(&gens[i], &gens[j])));
            }
        }
        let gamma_inv = self.inv(&self.gamma());
        let conjugators: Vec<WangElement> = gens.iter().cloned().chain([gamma_inv]).collect();
        loop {
            let s = HeisSubgroupData::from_generators(h.r(), &pool)?;
            let missing: Vec<HeisElement> = s
                .generators()
                .iter()
                .flat_map(|x| conjugators.iter().map(move |g| (g, x)))
                .map(|(g, x)| fiber(self.conjugate(g, &self.fiber(Fiber::Heis(x.clone())))))
                .filter(|y| s.contains(y).is_none())
                .collect();
            if missing.is_empty() {
                return Ok(s);
            }
            pool.extend(missing);
        }
    }

    /// Whether `x ∈ [Γ, Γ]`.
    pub fn commutator_subgroup_contains(&self, x: &WangElement) -> Result<bool, WangError> {
        if !x.t.is_zero() {
            return Ok(false);
        }
        if let WangDescriptor::Kodaira { r } = self.descriptor() {
            // [Γ, Γ] = ⟨δ₃^r⟩
            return Ok(match &x.h {
                Fiber::Heis(e) => e.is_central() && e.c.is_multiple_of(r),
                Fiber::Lattice(_) => false,
            });
        }
        Ok(self.commutator_lattice()?.contains(&x.h))
    }

    pub fn center(&self) -> Center {
        let [_, _, d3] = self.deltas();
        match self.descriptor() {
            WangDescriptor::Sm { .. } => Center::Trivial,
            WangDescriptor::Spm { .. } => {
                // γδ₃γ⁻¹ = δ₃^(det M); δ₃ is central iff that exponent is 1
                if self.conjugate(&self.gamma(), &d3) == d3 {
                    Center::GeneratedBy(vec![d3])
                } else {
                    Center::Trivial
                }
            }
            WangDescriptor::Kodaira { .. } => Center::GeneratedBy(vec![d3, self.gamma()]),
        }
    }

    /// Whether `x` commutes with every generator.
    pub fn is_central(&self, x: &WangElement) -> bool {
        self.generators().iter().all(|g| self.commutator(g, x) == self.identity())
    }

    /// The three Inoue criteria: a characteristic ℤ³; no ℤ³ with nontrivial
    /// center; no ℤ³ with trivial center.
    pub fn inoue_criteria(&self) -> [bool; 3] {
        let m = self.action_matrix();
        let nondegenerate = !has_eigenvalue_one(&m);
        let center_nontrivial = self.center() != Center::Trivial;
        match self.descriptor() {
            WangDescriptor::Sm { .. } => [nondegenerate, false, false],
            WangDescriptor::Spm { .. } => [false, nondegenerate && center_nontrivial, nondegenerate && !center_nontrivial],
            WangDescriptor::Kodaira { .. } => [false, false, false],
        }
    }

    pub fn classify_type(&self) -> InoueType {
        if matches!(self.descriptor(), WangDescriptor::Kodaira { .. }) {
            return InoueType::Kodaira;
        }
        let c = self.inoue_criteria();
        assert_eq!(c.iter().filter(|&&b| b).count(), 1, "exactly one Inoue criterion must hold");
        let ty = match c {
            [true, _, _] => InoueType::SM,
            [_, true, _] => InoueType::SPlus,
            _ => InoueType::SMinus,
        };
        let by_shape = match self.descriptor() {
            WangDescriptor::Sm { .. } => InoueType::SM,
            WangDescriptor::Spm { m, .. } if m.det().is_one() => InoueType::SPlus,
            _ => InoueType::SMinus,
        };
        assert_eq!(ty, by_shape);
        ty
    }

    /// The least `k ≤ k_cap` with `x^k` in the target, if any.
    pub fn rad_membership(&self, x: &WangElement, target: RadTarget, k_cap: u64) -> Result<Option<u64>, WangError> {
        self.check(x)?;
        let comm = match target {
            RadTarget::CommutatorSubgroup if !matches!(self.descriptor(), WangDescriptor::Kodaira { .. }) => {
                Some(self.commutator_lattice()?)
            }
            _ => None,
        };
        let mut y = x.clone();
        for k in 1..=k_cap {
            let inside = match target {
                RadTarget::Gamma0 => y.t.is_zero(),
                RadTarget::CommutatorSubgroup => match &comm {
                    Some(c) => y.t.is_zero() && c.contains(&y.h),
                    None => self.commutator_subgroup_contains(&y)?,
                },
            };
            if inside {
                return Ok(Some(k));
            }
            y = self.mul(&y, x);
        }
        Ok(None)
    }
}

/// `ψ(δ₁) = δ₁γ`, `ψ(δ₂) = δ₂`, `ψ(δ₃) = δ₃`, `ψ(γ) = γ` on H(r) × ℤ.
#[derive(Clone, Debug)]
pub struct PsiAutomorphism {
    group: WangGroup,
}

pub fn psi_automorphism(r: &BigInt) -> Result<PsiAutomorphism, WangError> {
    let group = WangGroup::new(WangDescriptor::Kodaira { r: r.clone() })?;
    Ok(PsiAutomorphism { group })
}

impl PsiAutomorphism {
    pub fn group(&self) -> &WangGroup {
        &self.group
    }

    fn a_of(x: &WangElement) -> BigInt {
        match &x.h {
            Fiber::Heis(e) => e.a.clone(),
            Fiber::Lattice(_) => panic!("KODAIRA elements have Heisenberg fibers"),
        }
    }

    /// `ψ(h·γ^t) = h·γ^(t + a)`, since `γ` is central.
    pub fn apply(&self, x: &WangElement) -> WangElement {
        WangElement::new(x.h.clone(), &x.t + Self::a_of(x))
    }

    pub fn apply_inverse(&self, x: &WangElement) -> WangElement {
        WangElement::new(x.h.clone(), &x.t - Self::a_of(x))
    }

    /// Images of `δ₁, δ₂, δ₃, γ`.
    pub fn images(&self) -> [WangElement; 4] {
        self.group.generators().map(|g| self.apply(&g))
    }

    /// The defining relations hold for the images, `ψ` is multiplicative on
    /// a sample and `ψ⁻¹` undoes it.
    pub fn check_relations(&self) -> Result<(), String> {
        let g = &self.group;
        let [p1, p2, p3, pg] = self.images();
        let e = g.identity();
        let r = g.descriptor().r().expect("KODAIRA has r").clone();
        for (name, x, y) in [("δ₁,δ₃", &p1, &p3), ("δ₂,δ₃", &p2, &p3), ("δ₁,γ", &p1, &pg), ("δ₂,γ", &p2, &pg), ("δ₃,γ", &p3, &pg)] {
            if g.commutator(x, y) != e {
                return Err(format!("[ψ({name})] ≠ 1"));
            }
        }
        if g.commutator(&p1, &p2) != g.pow(&p3, &r) {
            return Err("[ψ(δ₁), ψ(δ₂)] ≠ ψ(δ₃)^r".into());
        }
        let sample: Vec<WangElement> = (-2i64..=2)
            .flat_map(|a| (-1i64..=1).map(move |t| WangElement::heis(a, 1 - a, a * t + 2, t)))
            .collect();
        for x in &sample {
            if self.apply_inverse(&self.apply(x)) != *x {
                return Err(format!("ψ⁻¹(ψ({x})) ≠ {x}"));
            }
            for y in &sample {
                if self.apply(&g.mul(x, y)) != g.mul(&self.apply(x), &self.apply(y)) {
                    return Err(format!("ψ({x}·{y}) ≠ ψ({x})·ψ({y})"));
                }
            }
        }
        Ok(())
    }

    /// An element of `Γ₀` whose image leaves `Γ₀`.
    pub fn gamma0_not_preserved_witness(&self) -> Option<(WangElement, WangElement)> {
        self.group
            .deltas()
            .into_iter()
            .map(|d| (self.apply(&d), d))
            .find(|(img, _)| !img.t.is_zero())
            .map(|(img, d)| (d, img))
    }

    /// `ψ^k(x)`
    pub fn iterate(&self, x: &WangElement, k: u32) -> WangElement {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(d: WangDescriptor) -> WangGroup {
        WangGroup::new(d).unwrap()
    }

    fn companion() -> IntMatrix {
        IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
    }

    #[test]
    fn commutator_lattice_examples() {
        let sm = group(WangDescriptor::sm(companion()));
        let c = sm.commutator_lattice().unwrap();
        assert_eq!(c.abelian_index, BigInt::one());
        assert_eq!(c.index_in_gamma0(), BigInt::one());
        let spm = group(WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 1, [0, 0]));
        let c = spm.commutator_lattice().unwrap();
        assert_eq!(c.abelian_index, BigInt::one());
        let s = c.heis.as_ref().unwrap();
        assert!(s.is_normal());
        assert!(s.iso_type().unwrap() >= BigInt::one());
        let bad = WangGroup::unchecked(WangDescriptor::sm(IntMatrix::identity(3)));
        assert_eq!(bad.commutator_lattice(), Err(WangError::EigenvalueOne));
    }

    #[test]
    fn heis_commutator_projects_onto_image_of_m_minus_id() {
        for (m, r, p) in [([[2, 1], [1, 1]], 2, [1, 0]), ([[3, 1], [2, 1]], 1, [0, 3]), ([[2, 1], [1, 0]], 3, [-1, 2])] {
            let g = group(WangDescriptor::spm(IntMatrix::from_i64(m), r, p));
            let c = g.commutator_lattice().unwrap();
            let s = c.heis.unwrap();
            let proj = IntMatrix::from_columns(2, &[s.zeta[..2].to_vec(), s.xi[..2].to_vec()]);
            assert_eq!(Sublattice::span(&proj).unwrap(), Sublattice::span(&c.generators).unwrap());
            // every commutator of generators lies inside
            let gens = g.generators();
            for x in &gens {
                for y in &gens {
                    assert!(g.commutator_subgroup_contains(&g.commutator(x, y)).unwrap());
                }
            }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(group(WangDescriptor::sm(companion())).center(), Center::Trivial);
        let minus = group(WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 0]]), 1, [0, 0]));
        assert_eq!(minus.center(), Center::Trivial);
        let plus = group(WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 1, [0, 0]));
        assert_eq!(plus.center(), Center::GeneratedBy(vec![WangElement::heis(0, 0, 1, 0)]));
        let k = group(WangDescriptor::kodaira(3));
        let Center::GeneratedBy(gens) = k.center() else { panic!() };
        assert_eq!(gens, vec![WangElement::heis(0, 0, 1, 0), WangElement::heis(0, 0, 0, 1)]);
        for g in [&plus, &k] {
            if let Center::GeneratedBy(zs) = g.center() {
                assert!(zs.iter().all(|z| g.is_central(z)));
            }
        }
        assert!(!minus.is_central(&WangElement::heis(0, 0, 1, 0)));
    }

    #[test]
    fn classification_fixtures() {
        assert_eq!(group(WangDescriptor::sm(companion())).classify_type(), InoueType::SM);
        let plus = WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 1, [0, 0]);
        assert_eq!(group(plus).classify_type(), InoueType::SPlus);
        let minus = WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 0]]), 1, [0, 0]);
        assert_eq!(group(minus).classify_type(), InoueType::SMinus);
        assert_eq!(group(WangDescriptor::kodaira(2)).classify_type(), InoueType::Kodaira);
    }

    #[test]
    fn radical_of_commutator_subgroup_is_gamma0() {
        let g = group(WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 1, [0, 0]));
        let [d1, _, d3] = g.deltas();
        assert!(g.rad_membership(&d1, RadTarget::CommutatorSubgroup, 16).unwrap().is_some());
        assert!(g.rad_membership(&d3, RadTarget::CommutatorSubgroup, 16).unwrap().is_some());
        assert_eq!(g.rad_membership(&g.gamma(), RadTarget::Gamma0, 50).unwrap(), None);
        let mixed = WangElement::heis(1, 0, 0, 2);
        assert_eq!(g.rad_membership(&mixed, RadTarget::CommutatorSubgroup, 50).unwrap(), None);
    }

    #[test]
    fn psi_examples() {
        for r in 1..=5 {
            let psi = psi_automorphism(&BigInt::from(r)).unwrap();
            assert_eq!(psi.check_relations(), Ok(()));
            let [p1, p2, p3, pg] = psi.images();
            assert_eq!(p1, WangElement::heis(1, 0, 0, 1));
            assert_eq!(p2, WangElement::heis(0, 1, 0, 0));
            assert_eq!(p3, WangElement::heis(0, 0, 1, 0));
            assert_eq!(pg, WangElement::heis(0, 0, 0, 1));
            let (d, img) = psi.gamma0_not_preserved_witness().unwrap();
            assert_eq!(d, WangElement::heis(1, 0, 0, 0));
            assert_eq!(img.t, BigInt::one());
            assert_eq!(psi.iterate(&d, 2), WangElement::heis(1, 0, 0, 2));
        }
    }
}
