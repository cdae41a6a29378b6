use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmat::IntMatrix;
use crate::heis::{HeisElement, HeisGroup};

use super::{WangDescriptor, WangError};

/// An automorphism of H(r) given by the images of `δ₁`, `δ₂` and the
/// exponent `e` in `δ₃ ↦ δ₃^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisAutomorphism {
    pub d1: HeisElement,
    pub d2: HeisElement,
    pub e: BigInt,
}

impl HeisAutomorphism {
    pub fn identity() -> Self {
        HeisAutomorphism { d1: HeisElement::d1(), d2: HeisElement::d2(), e: BigInt::one() }
    }

    /// `φ(δ₁)^a · φ(δ₂)^b · φ(δ₃)^(c − r·a·b)`
    pub fn apply(&self, h: &HeisGroup, x: &HeisElement) -> HeisElement {
        let [a, b, z] = x.word_exponents(h.r());
        let head = h.mul(&h.pow(&self.d1, &a), &h.pow(&self.d2, &b));
        h.mul(&head, &HeisElement::central(&self.e * z))
    }

    /// `self ∘ other`
    pub fn compose(&self, h: &HeisGroup, other: &HeisAutomorphism) -> HeisAutomorphism {
        HeisAutomorphism { d1: self.apply(h, &other.d1), d2: self.apply(h, &other.d2), e: &self.e * &other.e }
    }

    /// The induced matrix on `H(r)/z ≅ ℤ²`.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(2, &[vec![self.d1.a.clone(), self.d1.b.clone()], vec![self.d2.a.clone(), self.d2.b.clone()]])
    }

    /// The inverse, from the inverse matrix and a central correction.
    pub fn inverse(&self, h: &HeisGroup) -> HeisAutomorphism {
        let n = self.matrix().inverse_unimodular().expect("automorphism has unimodular matrix");
        let preimage = |col: usize, target: &HeisElement| {
            let guess = h.from_exponents(&[n[(0, col)].clone(), n[(1, col)].clone(), BigInt::zero()]);
            let got = self.apply(h, &guess);
            // φ(δ₃^z) = δ₃^(e·z) and e = ±1
            let z = (&target.c - &got.c) * &self.e;
            h.mul(&guess, &HeisElement::central(z))
        };
        let inv = HeisAutomorphism {
            d1: preimage(0, &HeisElement::d1()),
            d2: preimage(1, &HeisElement::d2()),
            e: self.e.clone(),
        };
        debug_assert_eq!(self.compose(h, &inv), HeisAutomorphism::identity());
        inv
    }

    pub fn pow(&self, h: &HeisGroup, t: &BigInt) -> HeisAutomorphism {
        let mut base = if t.is_negative() { self.inverse(h) } else { self.clone() };
        let mut k = t.abs();
        let mut acc = HeisAutomorphism::identity();
        while !k.is_zero() {
            if k.bit(0) {
                acc = acc.compose(h, &base);
            }
            base = base.compose(h, &base);
            k >>= 1;
        }
        acc
    }
}

/// The `Γ₀`-component of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fiber {
    Lattice(Vec<BigInt>),
    Heis(HeisElement),
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fiber::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
            Fiber::Heis(x) => write!(f, "{x}"),
        }
    }
}

/// `h·γ^t`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WangElement {
    pub h: Fiber,
    pub t: BigInt,
}

impl WangElement {
    pub fn new(h: Fiber, t: BigInt) -> Self {
        WangElement { h, t }
    }

    pub fn lattice(v: &[i64], t: i64) -> Self {
        WangElement::new(Fiber::Lattice(v.iter().map(|&x| x.into()).collect()), t.into())
    }

    pub fn heis(a: i64, b: i64, c: i64, t: i64) -> Self {
        WangElement::new(Fiber::Heis(HeisElement::from_i64(a, b, c)), t.into())
    }
}

impl fmt::Display for WangElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·γ^{}", self.h, self.t)
    }
}

#[derive(Clone, Debug)]
enum Action {
    Lattice { m: IntMatrix, m_inv: IntMatrix },
    Heis { heis: HeisGroup, phi: HeisAutomorphism, phi_inv: HeisAutomorphism },
    Trivial { heis: HeisGroup },
}

/// A validated descriptor together with its action, ready for arithmetic.
#[derive(Clone, Debug)]
pub struct WangGroup {
    descriptor: WangDescriptor,
    action: Action,
}

impl WangGroup {
    pub fn new(descriptor: WangDescriptor) -> Result<Self, WangError> {
        descriptor.validate()?;
        Ok(Self::unchecked(descriptor))
    }

    /// Skips the surface-specific validation; the action only needs a
    /// unimodular matrix and a positive `r`.
    pub fn unchecked(descriptor: WangDescriptor) -> Self {
        let action = match &descriptor {
            WangDescriptor::Sm { m } => Action::Lattice {
                m: m.clone(),
                m_inv: m.inverse_unimodular().expect("unimodular action"),
            },
            WangDescriptor::Spm { m, r, p, .. } => {
                let heis = HeisGroup::new(r.clone()).expect("positive r");
                let img = |i: usize| heis.from_exponents(&[m[(0, i)].clone(), m[(1, i)].clone(), p[i].clone()]);
                let phi = HeisAutomorphism { d1: img(0), d2: img(1), e: m.det() };
                let phi_inv = phi.inverse(&heis);
                Action::Heis { heis, phi, phi_inv }
            }
            WangDescriptor::Kodaira { r } => Action::Trivial { heis: HeisGroup::new(r.clone()).expect("positive r") },
        };
        WangGroup { descriptor, action }
    }

    pub fn descriptor(&self) -> &WangDescriptor {
        &self.descriptor
    }

    pub fn heis(&self) -> Option<&HeisGroup> {
        match &self.action {
            Action::Heis { heis, .. } | Action::Trivial { heis } => Some(heis),
            Action::Lattice { .. } => None,
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.action, Action::Lattice { .. })
    }

    /// The automorphism `φ` of H(r) induced by `γ` (identity for KODAIRA).
    pub fn heis_automorphism(&self) -> Option<HeisAutomorphism> {
        match &self.action {
            Action::Heis { phi, .. } => Some(phi.clone()),
            Action::Trivial { .. } => Some(HeisAutomorphism::identity()),
            Action::Lattice { .. } => None,
        }
    }

    /// Matrix of the action on `Γ₀` (SM) or on `Γ₀/z(Γ₀)` (SPM, KODAIRA).
    pub fn action_matrix(&self) -> IntMatrix {
        match &self.action {
            Action::Lattice { m, .. } => m.clone(),
            Action::Heis { phi, .. } => phi.matrix(),
            Action::Trivial { .. } => IntMatrix::identity(2),
        }
    }

    pub fn identity(&self) -> WangElement {
        WangElement::new(self.fiber_identity(), BigInt::zero())
    }

    pub fn fiber_identity(&self) -> Fiber {
        match &self.action {
            Action::Lattice { .. } => Fiber::Lattice(vec![BigInt::zero(); 3]),
            _ => Fiber::Heis(HeisElement::identity()),
        }
    }

    pub fn gamma(&self) -> WangElement {
        WangElement::new(self.fiber_identity(), BigInt::one())
    }

    /// `δ₁, δ₂, δ₃` as elements with `t = 0`.
    pub fn deltas(&self) -> [WangElement; 3] {
        let f = |i: usize| match &self.action {
            Action::Lattice { .. } => {
                let mut v = vec![BigInt::zero(); 3];
                v[i] = BigInt::one();
                Fiber::Lattice(v)
            }
            _ => Fiber::Heis([HeisElement::d1(), HeisElement::d2(), HeisElement::d3()][i].clone()),
        };
        [0, 1, 2].map(|i| WangElement::new(f(i), BigInt::zero()))
    }

    /// `δ₁, δ₂, δ₃, γ`
    pub fn generators(&self) -> [WangElement; 4] {
        let [d1, d2, d3] = self.deltas();
        [d1, d2, d3, self.gamma()]
    }

    pub fn fiber(&self, h: Fiber) -> WangElement {
        WangElement::new(h, BigInt::zero())
    }

    pub fn check(&self, x: &WangElement) -> Result<(), WangError> {
        match (&self.action, &x.h) {
            (Action::Lattice { .. }, Fiber::Lattice(v)) if v.len() == 3 => Ok(()),
            (Action::Heis { .. } | Action::Trivial { .. }, Fiber::Heis(_)) => Ok(()),
            _ => Err(WangError::AmbientMismatch),
        }
    }

    pub fn fiber_mul(&self, x: &Fiber, y: &Fiber) -> Fiber {
        match (x, y) {
            (Fiber::Lattice(u), Fiber::Lattice(v)) => Fiber::Lattice(u.iter().zip(v).map(|(p, q)| p + q).collect()),
            (Fiber::Heis(u), Fiber::Heis(v)) => Fiber::Heis(self.heis().expect("Heisenberg fiber").mul(u, v)),
            _ => panic!("mixed fiber kinds"),
        }
    }

    pub fn fiber_inv(&self, x: &Fiber) -> Fiber {
        match x {
            Fiber::Lattice(u) => Fiber::Lattice(u.iter().map(|p| -p).collect()),
            Fiber::Heis(u) => Fiber::Heis(self.heis().expect("Heisenberg fiber").inv(u)),
        }
    }

    pub fn fiber_pow(&self, x: &Fiber, k: &BigInt) -> Fiber {
        match x {
            Fiber::Lattice(u) => Fiber::Lattice(u.iter().map(|p| p * k).collect()),
            Fiber::Heis(u) => Fiber::Heis(self.heis().expect("Heisenberg fiber").pow(u, k)),
        }
    }

    /// `φ^t(h)`, the action of `γ^t` by conjugation.
    pub fn act(&self, t: &BigInt, h: &Fiber) -> Fiber {
        if t.is_zero() {
            return h.clone();
        }
        match (&self.action, h) {
            (Action::Lattice { m, m_inv }, Fiber::Lattice(v)) => {
                let base = if t.is_negative() { m_inv } else { m };
                let e = t.abs().to_u64().expect("γ-exponent fits in u64");
                Fiber::Lattice(base.pow(e).mul_vec(v))
            }
            (Action::Heis { heis, phi, phi_inv }, Fiber::Heis(x)) => {
                let base = if t.is_negative() { phi_inv } else { phi };
                Fiber::Heis(base.pow(heis, &t.abs()).apply(heis, x))
            }
            (Action::Trivial { .. }, Fiber::Heis(_)) => h.clone(),
            _ => panic!("mixed fiber kinds"),
        }
    }

    /// `gamma_action(h) = φ(h)`
    pub fn gamma_action(&self, h: &Fiber) -> Fiber {
        self.act(&BigInt::one(), h)
    }

    /// `(h, t)·(h', t') = (h·φ^t(h'), t + t')`
    pub fn mul(&self, x: &WangElement, y: &WangElement) -> WangElement {
        WangElement::new(self.fiber_mul(&x.h, &self.act(&x.t, &y.h)), &x.t + &y.t)
    }

    pub fn try_mul(&self, x: &WangElement, y: &WangElement) -> Result<WangElement, WangError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `(h, t)⁻¹ = (φ^(−t)(h⁻¹), −t)`
    pub fn inv(&self, x: &WangElement) -> WangElement {
        let t = -&x.t;
        WangElement::new(self.act(&t, &self.fiber_inv(&x.h)), t)
    }

    pub fn pow(&self, x: &WangElement, k: &BigInt) -> WangElement {
        let mut base = if k.is_negative() { self.inv(x) } else { x.clone() };
        let mut e = k.abs();
        let mut acc = self.identity();
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
    pub fn commutator(&self, x: &WangElement, y: &WangElement) -> WangElement {
        self.mul(&self.mul(x, y), &self.inv(&self.mul(y, x)))
    }

    /// `g·x·g⁻¹`
    pub fn conjugate(&self, g: &WangElement, x: &WangElement) -> WangElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Checks that `γ` acts by an automorphism: the defining relations are
    /// preserved and `φ∘φ⁻¹` fixes the generators. Returns a description of
    /// the first failure.
    pub fn action_is_automorphism(&self) -> Result<(), String> {
        match &self.action {
            Action::Lattice { m, m_inv } => {
                if !(m * m_inv).is_identity() {
                    return Err(format!("M·M⁻¹ ≠ Id for M = {m}"));
                }
                Ok(())
            }
            Action::Trivial { .. } => Ok(()),
            Action::Heis { heis, phi, phi_inv } => {
                let (p1, p2) = (&phi.d1, &phi.d2);
                let p3 = HeisElement::central(phi.e.clone());
                let lhs = heis.commutator(p1, p2);
                let rhs = heis.pow(&p3, heis.r());
                if lhs != rhs {
                    return Err(format!("[φ(δ₁), φ(δ₂)] = {lhs} but φ(δ₃)^r = {rhs}"));
                }
                for p in [p1, p2] {
                    if !heis.commutator(p, &p3).is_identity() {
                        return Err(format!("φ(δ₃) does not commute with {p}"));
                    }
                }
                let back = phi.compose(heis, phi_inv);
                if back != HeisAutomorphism::identity() {
                    return Err("φ∘φ⁻¹ is not the identity".into());
                }
                if !phi.e.abs().is_one() {
                    return Err(format!("φ(δ₃) = δ₃^{} is not a generator of the center", phi.e));
                }
                // homomorphism on a fixed sample of products
                let sample: Vec<HeisElement> = (-2i64..=2)
                    .flat_map(|a| (-2i64..=2).map(move |b| HeisElement::from_i64(a, b, a * 3 - b)))
                    .collect();
                for x in &sample {
                    for y in sample.iter().step_by(3) {
                        let lhs = phi.apply(heis, &heis.mul(x, y));
                        let rhs = heis.mul(&phi.apply(heis, x), &phi.apply(heis, y));
                        if lhs != rhs {
                            return Err(format!("φ({x}·{y}) ≠ φ({x})·φ({y})"));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spm(m: [[i64; 2]; 2], r: i64, p: [i64; 2]) -> WangGroup {
        WangGroup::new(WangDescriptor::spm(IntMatrix::from_i64(m), r, p)).unwrap()
    }

    fn sm() -> WangGroup {
        WangGroup::new(WangDescriptor::sm(IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]))).unwrap()
    }

    #[test]
    fn gamma_action_examples() {
        let g = spm([[2, 1], [1, 1]], 1, [0, 0]);
        let img = g.gamma_action(&Fiber::Heis(HeisElement::d1()));
        assert_eq!(img, Fiber::Heis(g.heis().unwrap().eval_word_str("d1^2 d2^1").unwrap()));
        assert_eq!(img, Fiber::Heis(HeisElement::from_i64(2, 1, 2)));
        assert_eq!(g.gamma_action(&Fiber::Heis(HeisElement::d3())), Fiber::Heis(HeisElement::d3()));
        let g = spm([[2, 1], [1, 0]], 2, [1, 1]);
        assert_eq!(g.gamma_action(&Fiber::Heis(HeisElement::d3())), Fiber::Heis(HeisElement::from_i64(0, 0, -1)));
        let k = WangGroup::new(WangDescriptor::kodaira(3)).unwrap();
        let h = Fiber::Heis(HeisElement::from_i64(4, -1, 7));
        assert_eq!(k.gamma_action(&h), h);
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(spm([[2, 1], [1, 1]], 1, [0, 0]).action_is_automorphism(), Ok(()));
        assert_eq!(spm([[2, 1], [1, 1]], 2, [1, 1]).action_is_automorphism(), Ok(()));
        assert_eq!(WangGroup::new(WangDescriptor::kodaira(4)).unwrap().action_is_automorphism(), Ok(()));
        assert_eq!(sm().action_is_automorphism(), Ok(()));
    }

    #[test]
    fn sm_conjugation_by_gamma() {
        let g = sm();
        let v = WangElement::lattice(&[1, -2, 5], 0);
        let got = g.conjugate(&g.gamma(), &v);
        let m = IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]);
        let expected: Vec<BigInt> = m.mul_vec(&[1, -2, 5].map(BigInt::from));
        assert_eq!(got, WangElement::new(Fiber::Lattice(expected), BigInt::zero()));
    }

    #[test]
    fn kodaira_commutator() {
        let g = WangGroup::new(WangDescriptor::kodaira(2)).unwrap();
        let x = WangElement::heis(1, 3, -4, 5);
        let y = WangElement::heis(-2, 1, 9, -3);
        let (hx, hy) = (HeisElement::from_i64(1, 3, -4), HeisElement::from_i64(-2, 1, 9));
        let expected = WangElement::new(Fiber::Heis(g.heis().unwrap().commutator(&hx, &hy)), BigInt::zero());
        assert_eq!(g.commutator(&x, &y), expected);
    }

    #[test]
    fn ambient_mismatch() {
        let g = sm();
        assert_eq!(
            g.try_mul(&WangElement::heis(1, 0, 0, 0), &g.gamma()),
            Err(WangError::AmbientMismatch)
        );
    }

    #[test]
    fn center_exponent_from_the_relation() {
        // δ₃^(r·e) = γ[δ₁, δ₂]γ⁻¹ = [φ(δ₁), φ(δ₂)]
        for (m, r) in [([[2, 1], [1, 1]], 3), ([[2, 1], [1, 0]], 2), ([[3, 2], [1, 1]], 1)] {
            let g = spm(m, r, [2, -1]);
            let [d1, d2, d3] = g.deltas();
            let lhs = g.conjugate(&g.gamma(), &g.commutator(&d1, &d2));
            let det = IntMatrix::from_i64(m).det();
            let expected = g.pow(&d3, &(BigInt::from(r) * &det));
            assert_eq!(lhs, expected);
            assert_eq!(g.conjugate(&g.gamma(), &d3), g.pow(&d3, &det));
        }
    }

    fn heis_el() -> impl Strategy<Value = WangElement> {
        (-6i64..6, -6i64..6, -20i64..20, -3i64..=3).prop_map(|(a, b, c, t)| WangElement::heis(a, b, c, t))
    }

    fn lat_el() -> impl Strategy<Value = WangElement> {
        (prop::array::uniform3(-6i64..6), -3i64..=3).prop_map(|(v, t)| WangElement::lattice(&v, t))
    }

    proptest! {
        #[test]
        fn spm_group_axioms(x in heis_el(), y in heis_el(), z in heis_el(), r in 1i64..=3, p in prop::array::uniform2(-3i64..=3)) {
            for m in [[[2, 1], [1, 1]], [[2, 1], [1, 0]]] {
                let g = spm(m, r, p);
                prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
                prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
                let h = WangElement::new(x.h.clone(), BigInt::zero());
                let conj = g.conjugate(&g.gamma(), &h);
                prop_assert_eq!(conj, WangElement::new(g.gamma_action(&x.h), BigInt::zero()));
            }
        }

        #[test]
        fn sm_group_axioms(x in lat_el(), y in lat_el(), z in lat_el()) {
            let g = sm();
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            prop_assert_eq!(g.mul(&g.inv(&x), &x), g.identity());
        }

        #[test]
        fn kodaira_group_axioms(x in heis_el(), y in heis_el(), z in heis_el(), r in 1i64..=4) {
            let g = WangGroup::new(WangDescriptor::kodaira(r)).unwrap();
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
            prop_assert_eq!(g.commutator(&g.gamma(), &x), g.identity());
        }

        #[test]
        fn pow_matches_repeated_mul(x in heis_el(), k in -6i64..=6) {
            let g = spm([[2, 1], [1, 1]], 2, [1, -1]);
            let base = if k < 0 { g.inv(&x) } else { x.clone() };
            let slow = (0..k.abs()).fold(g.identity(), |acc, _| g.mul(&acc, &base));
            prop_assert_eq!(g.pow(&x, &BigInt::from(k)), slow);
        }
    }
}
