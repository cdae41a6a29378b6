use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::heis::{HeisElement, HeisError, HeisSubgroupData};
use crate::numth::{epsilon, k_max};
use crate::wang::{Fiber, WangDescriptor};

use super::table::FiniteGroupTable;
use super::{build_quotient_capped, projected_lattice, Gamma0Part, NormalSubgroupSpec, QuotError, DEFAULT_ORDER_CAP};

/// One inequality `observed ≤ value` (or a side condition) and whether it held.
/// Informational checks are reported but do not decide [`BoundReport::pass`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub value: BigInt,
    pub holds: bool,
    pub informational: bool,
    /// The index compared against `value`; `None` for a side condition on `value` alone.
    pub observed: Option<usize>,
}

impl BoundCheck {
    fn at_most(name: &str, observed: usize, value: BigInt) -> Self {
        let holds = BigInt::from(observed) <= value;
        BoundCheck { name: name.into(), value, holds, informational: false, observed: Some(observed) }
    }

    fn side(name: &str, value: BigInt, holds: bool) -> Self {
        BoundCheck { name: name.into(), value, holds, informational: false, observed: None }
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub order: usize,
    pub observed_min_index: usize,
    /// The headline bound for the shape: `r₁`, `ν`, `k_max·r₁^k_max` or `r`.
    pub bound: BigInt,
    pub checks: Vec<BoundCheck>,
    /// `|G| = [Γ̂₀ : Γ₀']·k` and the image of `Γ̂₀` is normal of index `k`.
    pub structure_ok: bool,
    /// For KODAIRA ambients: the `r` with `Γ ≅ H(r) × ℤ`.
    pub gamma_r: Option<BigInt>,
}

impl BoundReport {
    pub fn pass(&self) -> bool {
        self.structure_ok && self.checks.iter().all(|c| c.holds || c.informational)
    }

    /// Informational checks that failed.
    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.informational && !c.holds)
    }
}

/// `H(r)/S` as a table, for closed normal data, with coset keys.
pub fn heis_quotient(data: &HeisSubgroupData, cap: usize) -> Result<(FiniteGroupTable, Vec<HeisElement>), QuotError> {
    if !data.is_closed() {
        return Err(HeisError::NotSubgroupClosed.into());
    }
    if data.index() > BigInt::from(cap) {
        return Err(QuotError::OrderCapExceeded { cap });
    }
    if !data.is_normal() {
        return Err(QuotError::NotNormal(format!("{data:?} is not normal in H(r)")));
    }
    let s = data.canonical();
    let h = s.group();
    let gens = [HeisElement::d1(), HeisElement::d2(), HeisElement::d3()];
    FiniteGroupTable::from_generators(HeisElement::identity(), 3, |x, i| s.reduce(&h.mul(x, &gens[i])), cap)
}

/// Checks for `H(r)/S`: index at most `gcd(a₁,b₁)` with the exponents as
/// given, at most `r₁ = r|a₁b₂ − a₂b₁|/c`, and each link of
/// `r|det|/c ≥ r·gcd(a₁,b₁)·gcd(a₂,b₂)/c ≥ r·gcd(a₁,a₂,b₁,b₂)·gcd(a₁,b₁)/c ≥ gcd(a₁,b₁)`.
pub fn heis_checks(data: &HeisSubgroupData, observed: usize) -> Result<Vec<BoundCheck>, QuotError> {
    let (a1, a2, b1, b2) = (&data.zeta[0], &data.zeta[1], &data.xi[0], &data.xi[1]);
    let g1 = a1.gcd(b1);
    let g2 = a2.gcd(b2);
    let g = g1.gcd(&g2);
    let r1 = data.iso_type()?;
    let (r, c, det) = (&data.r, &data.c, data.det().abs());
    // r|det|/c ≥ r·g₁g₂/c ≥ (r·g/c)·g₁ ≥ g₁, each link multiplied through by c
    Ok(vec![
        BoundCheck::at_most("gcd(a1,b1)", observed, g1.clone()),
        BoundCheck::at_most("r1", observed, r1.clone()),
        BoundCheck::side("chain: |det| >= g1*g2", det.clone(), det >= &g1 * &g2),
        BoundCheck::side("chain: g2 >= gcd(a1,a2,b1,b2)", g2.clone(), g2 >= g),
        BoundCheck::side("chain: r*gcd(a1,a2,b1,b2) >= c", r * &g, r * &g >= *c),
        BoundCheck::side("chain: r1 >= gcd(a1,b1)", r1.clone(), &r1 * c == r * &det && r1 >= g1),
    ])
}

/// Builds `H(r)/S` and checks the Heisenberg bounds.
pub fn verify_heis_bound(data: &HeisSubgroupData) -> Result<BoundReport, QuotError> {
    let (t, _) = heis_quotient(data, DEFAULT_ORDER_CAP)?;
    let observed = t.min_index_normal_abelian()?;
    heis_report(data, t.order(), observed)
}

pub(crate) fn heis_report(data: &HeisSubgroupData, order: usize, observed: usize) -> Result<BoundReport, QuotError> {
    Ok(BoundReport {
        order,
        observed_min_index: observed,
        bound: data.iso_type()?,
        checks: heis_checks(data, observed)?,
        structure_ok: BigInt::from(order) == data.index(),
        gamma_r: None,
    })
}

/// The matrix of `θ` acting on `Γ₀'` (SM) or on its image in `Γ̂₀/z ≅ ℤ²`.
fn theta_matrix(spec: &NormalSubgroupSpec) -> crate::exactmat::IntMatrix {
    let g = spec.group();
    let k = spec.k.to_u64().expect("small k");
    let rk = g.action_matrix().pow(k);
    let lat = match &spec.gamma0_part {
        Gamma0Part::Lattice(l) => l.clone(),
        Gamma0Part::Heis(s) => projected_lattice(s),
    };
    lat.restricted_action(&rk).expect("invariant lattice")
}

/// `r` with `Γ ≅ H(r) × ℤ` for `Γ ⊂ H(r̂) × ℤ`. Here `z(Γ) = Γ ∩ ⟨δ₃, γ⟩`
/// meets `⟨δ₃⟩` in `⟨δ₃^c⟩` and `[Γ,Γ] = ⟨δ₃^d⟩` with `d` the gcd over
/// commutators of generators, so the torsion of `z(Γ)/[Γ,Γ]` has order `d/c`.
pub fn kodaira_gamma_r(spec: &NormalSubgroupSpec) -> Option<BigInt> {
    let (Gamma0Part::Heis(s), Fiber::Heis(delta)) = (&spec.gamma0_part, &spec.delta) else { return None };
    let h = s.group();
    let mut gens: Vec<HeisElement> = s.generators().to_vec();
    gens.push(delta.clone());
    let d = gens
        .iter()
        .flat_map(|x| gens.iter().map(move |y| (x, y)))
        .fold(BigInt::zero(), |acc, (x, y)| acc.gcd(&h.commutator(x, y).c));
    debug_assert!(d.is_multiple_of(&s.c));
    Some(d / &s.c)
}

/// Builds `G = Γ̂/Γ` and checks the bound for the ambient shape.
pub fn verify_bound(spec: &NormalSubgroupSpec) -> Result<BoundReport, QuotError> {
    let q = build_quotient_capped(spec, DEFAULT_ORDER_CAP)?;
    let spec = &q.spec;
    let observed = q.table.min_index_normal_abelian()?;
    let k = spec.k.clone();
    let mut checks = Vec::new();
    let mut gamma_r = None;
    let bound = match (&spec.ambient, &spec.gamma0_part) {
        (WangDescriptor::Sm { .. }, Gamma0Part::Lattice(_)) => {
            let nu = BigInt::from(k_max(&theta_matrix(spec), &epsilon(3)?.epsilon)?);
            // the image of Γ̂₀ is abelian, normal, of index k
            checks.push(BoundCheck::at_most("k", observed, k.clone()));
            checks.push(BoundCheck::at_most("nu", observed, nu.clone()));
            checks.push(BoundCheck::side("k <= k_max", nu.clone(), k <= nu));
            nu
        }
        (WangDescriptor::Spm { .. }, Gamma0Part::Heis(s)) => {
            let r1 = s.iso_type()?;
            let km = k_max(&theta_matrix(spec), &epsilon(2)?.epsilon)?;
            let k_u = k.to_u64().expect("small k");
            checks.push(BoundCheck::side("k <= k_max", km.into(), k_u <= km));
            checks.extend(g0_checks(&q, s)?);
            // an abelian N ⊲ G₀ of index ≤ r₁ has at most k conjugates in G,
            // each normal in G₀, so their intersection has index ≤ k·r₁^k
            checks.push(BoundCheck::at_most("k*r1^k", observed, &k * r1.pow(k_u as u32)));
            checks.push(BoundCheck::at_most("k*r1", observed, &k * &r1).informational());
            checks.push(BoundCheck::at_most("k_max*r1", observed, BigInt::from(km) * &r1).informational());
            let nu = BigInt::from(km) * r1.pow(km as u32);
            checks.push(BoundCheck::at_most("nu", observed, nu.clone()));
            nu
        }
        (WangDescriptor::Kodaira { .. }, Gamma0Part::Heis(s)) => {
            let r1 = s.iso_type()?;
            checks.push(BoundCheck::at_most("r", observed, r1.clone()));
            checks.extend(g0_checks(&q, s)?);
            gamma_r = kodaira_gamma_r(spec);
            if let Some(g) = &gamma_r {
                checks.push(BoundCheck::at_most("r(Γ)", observed, g.clone()));
            }
            r1
        }
        _ => return Err(QuotError::AmbientMismatch("Γ₀-part does not fit the ambient group".into())),
    };
    Ok(BoundReport { order: q.table.order(), observed_min_index: observed, bound, checks, structure_ok: q.structure_holds(), gamma_r })
}

/// The Heisenberg bounds inside the image `G₀ ≅ Γ̂₀/Γ₀'`.
fn g0_checks(q: &super::Quotient, s: &HeisSubgroupData) -> Result<Vec<BoundCheck>, QuotError> {
    let g0 = q.table.subgroup_table(&q.gamma0_image());
    let observed = g0.min_index_normal_abelian()?;
    Ok(heis_checks(s, observed)?
        .into_iter()
        .map(|mut c| {
            c.name = format!("G0: {}", c.name);
            c
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::tests::kodaira_example;
    use crate::exactmat::Sublattice;
    use crate::quotient::build_quotient;
    use num_traits::One;

    fn data(zeta: [i64; 3], xi: [i64; 3], c: i64, r: i64) -> HeisSubgroupData {
        HeisSubgroupData::from_i64(zeta, xi, c, r).unwrap()
    }

    #[test]
    fn heisenberg_mod_two() {
        let d = data([2, 0, 0], [0, 2, 0], 2, 1);
        let rep = verify_heis_bound(&d).unwrap();
        assert_eq!(rep.order, 8);
        assert_eq!(rep.observed_min_index, 2);
        assert!(rep.pass());
        let (t, _) = heis_quotient(&d, 512).unwrap();
        assert!(t.is_associative(0));
        assert_eq!(t.center().order(), 2);
        assert_eq!(t.all_normal_abelian_subgroups().unwrap(), t.normal_abelian_by_filter().unwrap());
    }

    #[test]
    fn whole_heisenberg_group() {
        let rep = verify_heis_bound(&HeisSubgroupData::whole(&BigInt::from(3))).unwrap();
        assert_eq!(rep.order, 1);
        assert_eq!(rep.observed_min_index, 1);
    }

    #[test]
    fn non_normal_is_rejected() {
        assert!(matches!(verify_heis_bound(&data([2, 0, 0], [0, 1, 0], 2, 1)), Err(QuotError::NotNormal(_))));
    }

    #[test]
    fn kodaira_report() {
        let rep = verify_bound(&kodaira_example()).unwrap();
        assert_eq!(rep.order, 2);
        assert_eq!(rep.observed_min_index, 1);
        // ⟨δ₁², δ₂, δ₃⟩ ≅ H(2)
        assert_eq!(rep.bound, BigInt::from(2));
        assert!(rep.pass());
        assert_eq!(rep.gamma_r, Some(BigInt::from(2)));
    }

    #[test]
    fn correction_changes_the_heisenberg_part() {
        // Γ₀' = ⟨δ₁², δ₂², δ₃⟩ ≅ H(4) but Γ = ⟨δ₁γ, δ₂², δ₃⟩ × ⟨γ²⟩ ≅ H(2) × ℤ
        let part = data([2, 0, 0], [0, 2, 0], 1, 1);
        let spec = NormalSubgroupSpec::new(WangDescriptor::kodaira(1), Gamma0Part::Heis(part), BigInt::one(), Fiber::Heis(HeisElement::d1()))
            .unwrap();
        let rep = verify_bound(&spec).unwrap();
        assert_eq!(rep.order, 4);
        assert_eq!(rep.observed_min_index, 1);
        assert_eq!(rep.bound, BigInt::from(4));
        assert_eq!(rep.gamma_r, Some(BigInt::from(2)));
        assert!(rep.pass());
        assert!(build_quotient(&spec).unwrap().structure_holds());
    }

    #[test]
    fn spm_composition_needs_the_conjugates() {
        // H(1) mod 3 extended by R = [[2,1],[1,1]] of order 4 mod 3; R has no
        // invariant line mod 3, so only the centre of G₀ is normal abelian
        let m = crate::exactmat::IntMatrix::from_i64([[2, 1], [1, 1]]);
        let part = data([3, 0, 0], [0, 3, 0], 3, 1);
        let spec = NormalSubgroupSpec::new(WangDescriptor::spm(m, 1, [0, 0]), Gamma0Part::Heis(part), BigInt::from(4), Fiber::Heis(HeisElement::identity()))
            .unwrap();
        let rep = verify_bound(&spec).unwrap();
        assert_eq!((rep.order, rep.observed_min_index), (108, 36));
        let q = build_quotient(&spec).unwrap();
        let filtered = q.table.normal_abelian_by_filter().unwrap();
        assert_eq!(filtered.iter().map(|(_, i)| *i).min(), Some(36));
        assert!(rep.pass());
        let failed: Vec<&str> = rep.violations().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["k*r1", "k_max*r1"]);
    }

    #[test]
    fn sm_report() {
        let m = crate::exactmat::IntMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]);
        let mk = m.pow(2).minus_identity();
        let lat = Sublattice::image(&mk).unwrap().join(&Sublattice::scaled(3, &BigInt::from(2)));
        let spec = NormalSubgroupSpec::new(WangDescriptor::sm(m), Gamma0Part::Lattice(lat), BigInt::from(2), Fiber::Lattice(vec![0.into(); 3]))
            .unwrap();
        let rep = verify_bound(&spec).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert!(rep.observed_min_index <= 2);
    }
}
