use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::exactmat::{IntMatrix, Sublattice};
use crate::heis::{HeisElement, HeisSubgroupData};
use crate::wang::{Fiber, WangDescriptor, WangGroup};

use super::bounds::heis_report;
use super::{
    heis_quotient, normal_heis_subgroups, verify_bound, BoundReport, Gamma0Part, NormalSubgroupSpec, QuotError,
};

/// One grid instance with its report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRecord {
    pub key: String,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisGridLimits {
    pub r_max: i64,
    pub entry_max: i64,
    pub index_cap: usize,
}

impl Default for HeisGridLimits {
    fn default() -> Self {
        HeisGridLimits { r_max: 3, entry_max: 4, index_cap: 512 }
    }
}

/// Every `(r, a₁, a₂, b₁, b₂, c, a₃, b₃)` within the limits with
/// `a₁b₂ ≠ a₂b₁`, `c | r·gcd(a₁,a₂,b₁,b₂)`, `0 ≤ a₃, b₃ < c` and index at most
/// the cap. Quotients are built once per distinct subgroup.
pub fn heis_grid(limits: &HeisGridLimits) -> Result<Vec<GridRecord>, QuotError> {
    let e = limits.entry_max;
    let mut raw: Vec<HeisSubgroupData> = Vec::new();
    for r in 1..=limits.r_max {
        for a1 in -e..=e {
            for a2 in -e..=e {
                for b1 in -e..=e {
                    for b2 in -e..=e {
                        let det = a1 * b2 - a2 * b1;
                        if det == 0 {
                            continue;
                        }
                        let rg = r * a1.gcd(&a2).gcd(&b1).gcd(&b2);
                        for c in (1..=rg).filter(|c| rg % c == 0) {
                            if (det.unsigned_abs() as usize) * (c as usize) > limits.index_cap {
                                continue;
                            }
                            for a3 in 0..c {
                                for b3 in 0..c {
                                    raw.push(HeisSubgroupData::from_i64([a1, a2, a3], [b1, b2, b3], c, r)?);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let distinct: Vec<HeisSubgroupData> = raw.iter().map(|d| d.canonical()).collect::<BTreeSet<_>>().into_iter().collect();
    let observed: BTreeMap<HeisSubgroupData, (usize, usize)> = distinct
        .par_iter()
        .map(|d| {
            let (t, _) = heis_quotient(d, limits.index_cap)?;
            Ok((d.clone(), (t.order(), t.min_index_normal_abelian()?)))
        })
        .collect::<Result<_, QuotError>>()?;
    raw.iter()
        .map(|d| {
            let (order, obs) = observed[&d.canonical()];
            Ok(GridRecord { key: heis_key(d), report: heis_report(d, order, obs)? })
        })
        .collect()
}

fn heis_key(d: &HeisSubgroupData) -> String {
    let [a1, a2, a3] = &d.zeta;
    let [b1, b2, b3] = &d.xi;
    format!("r={} zeta=({a1},{a2},{a3}) xi=({b1},{b2},{b3}) c={}", d.r, d.c)
}

fn spec_key(s: &NormalSubgroupSpec) -> String {
    let amb = match &s.ambient {
        WangDescriptor::Sm { m } => format!("SM {m}"),
        WangDescriptor::Spm { m, r, p, .. } => format!("SPM {m} r={r} p=({},{})", p[0], p[1]),
        WangDescriptor::Kodaira { r } => format!("KODAIRA r={r}"),
    };
    let part = match &s.gamma0_part {
        Gamma0Part::Lattice(l) => format!("L={}", l.basis()),
        Gamma0Part::Heis(d) => heis_key(d),
    };
    format!("{amb} | {part} k={} delta={}", s.k, s.delta).replace('\n', " ")
}

/// Runs [`verify_bound`] on distinct specs in parallel, sorted by key.
fn run_specs(specs: Vec<NormalSubgroupSpec>) -> Result<Vec<GridRecord>, QuotError> {
    let distinct: BTreeMap<String, NormalSubgroupSpec> = specs.into_iter().map(|s| (spec_key(&s), s)).collect();
    let list: Vec<(String, NormalSubgroupSpec)> = distinct.into_iter().collect();
    list.par_iter()
        .map(|(key, s)| Ok(GridRecord { key: key.clone(), report: verify_bound(s)? }))
        .collect()
}

/// Small correction candidates `δ'`.
fn heis_deltas() -> Vec<HeisElement> {
    let mut out = Vec::new();
    for (a, b, c) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1)] {
        out.push(HeisElement::from_i64(a, b, c));
    }
    out
}

/// Keeps normal specs of order at most `max_order`, in canonical form.
fn admissible(specs: impl Iterator<Item = NormalSubgroupSpec>, max_order: u64) -> Vec<NormalSubgroupSpec> {
    let mut seen = BTreeSet::new();
    specs
        .filter(|s| s.quotient_order() <= BigInt::from(max_order))
        .filter(|s| s.check_normal().is_ok())
        .map(|s| s.canonical())
        .filter(|s| seen.insert(spec_key(s)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaGridLimits {
    pub r_hat_max: i64,
    pub k_max: u64,
    pub max_order: u64,
    /// Largest `[Γ̂₀ : Γ₀']` tried.
    pub max_index: u64,
}

impl Default for KodairaGridLimits {
    fn default() -> Self {
        KodairaGridLimits { r_hat_max: 2, k_max: 3, max_order: 256, max_index: 16 }
    }
}

/// `Γ = Γ₀' ⋊ ⟨δ'γ^k⟩ ⊂ H(r̂) × ℤ` over normal `Γ₀'` and small `δ'`.
pub fn kodaira_grid(limits: &KodairaGridLimits) -> Result<Vec<GridRecord>, QuotError> {
    let mut specs = Vec::new();
    for r in 1..=limits.r_hat_max {
        let rb = BigInt::from(r);
        let amb = WangDescriptor::kodaira(r);
        for s in normal_heis_subgroups(&rb, limits.max_index) {
            for k in 1..=limits.k_max {
                for d in heis_deltas() {
                    specs.push(NormalSubgroupSpec::new(amb.clone(), Gamma0Part::Heis(s.clone()), k.into(), Fiber::Heis(d))?);
                }
            }
        }
    }
    run_specs(admissible(specs.into_iter(), limits.max_order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmGridLimits {
    pub k_max: u64,
    pub max_order: u64,
    /// How many residues of `Γ₀'` to try as `δ'`.
    pub deltas: usize,
}

impl Default for SmGridLimits {
    fn default() -> Self {
        SmGridLimits { k_max: 6, max_order: 512, deltas: 8 }
    }
}

/// Companion matrices of `x³ − x − 1`, `x³ − x² − 1`, `x³ − 2x² + x − 1`.
pub fn sm_fixture_matrices() -> Vec<IntMatrix> {
    // (b, c, d) for x³ + bx² + cx + d
    [[0, -1, -1], [-1, 0, -1], [-2, 1, -1]]
        .iter()
        .map(|&[b, c, d]| IntMatrix::from_i64([[0, 0, -d], [1, 0, -c], [0, 1, -b]]))
        .collect()
}

/// Lattices containing `Im(M^k − Id)`: that image itself, and its joins with
/// `nℤ³` and `Im(M + Id)`.
pub fn sm_grid(limits: &SmGridLimits) -> Result<Vec<GridRecord>, QuotError> {
    let mut specs = Vec::new();
    for m in sm_fixture_matrices() {
        let amb = WangDescriptor::sm(m.clone());
        amb.validate()?;
        let plus = Sublattice::image(&m.add(&IntMatrix::identity(3))).ok();
        for k in 1..=limits.k_max {
            let base = Sublattice::image(&m.pow(k).minus_identity())?;
            let mut lats = vec![base.clone()];
            for n in 1..=4 {
                lats.push(base.join(&Sublattice::scaled(3, &BigInt::from(n))));
            }
            if let Some(p) = &plus {
                lats.push(base.join(p));
            }
            for l in lats {
                if l.index() * BigInt::from(k) > BigInt::from(limits.max_order) {
                    continue;
                }
                for d in l.residues().into_iter().take(limits.deltas) {
                    specs.push(NormalSubgroupSpec::new(amb.clone(), Gamma0Part::Lattice(l.clone()), k.into(), Fiber::Lattice(d))?);
                }
            }
        }
    }
    run_specs(admissible(specs.into_iter(), limits.max_order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpmGridLimits {
    pub k_max: u64,
    pub max_order: u64,
    pub max_index: u64,
}

impl Default for SpmGridLimits {
    fn default() -> Self {
        SpmGridLimits { k_max: 8, max_order: 512, max_index: 32 }
    }
}

pub fn spm_fixture_descriptors() -> Vec<WangDescriptor> {
    let plus = IntMatrix::from_i64([[2, 1], [1, 1]]);
    let minus = IntMatrix::from_i64([[2, 1], [1, 0]]);
    vec![
        WangDescriptor::spm(plus.clone(), 1, [0, 0]),
        WangDescriptor::spm(plus.clone(), 2, [1, 1]),
        WangDescriptor::spm(plus, 3, [0, 1]),
        WangDescriptor::spm(minus.clone(), 1, [0, 0]),
        WangDescriptor::spm(minus.clone(), 2, [1, -2]),
        WangDescriptor::spm(IntMatrix::from_i64([[3, 1], [2, 1]]), 1, [1, 0]),
    ]
}

/// `Γ₀'` over normal, `γ`-invariant subgroups of H(r), with small `k`, `δ'`.
pub fn spm_grid(limits: &SpmGridLimits) -> Result<Vec<GridRecord>, QuotError> {
    let mut specs = Vec::new();
    for amb in spm_fixture_descriptors() {
        amb.validate()?;
        let g = WangGroup::new(amb.clone())?;
        let r = amb.r().expect("SPM has r").clone();
        for s in normal_heis_subgroups(&r, limits.max_index) {
            let part = Gamma0Part::Heis(s);
            let invariant = part.generators().iter().all(|h| part.contains(&g.gamma_action(h)));
            if !invariant {
                continue;
            }
            for k in 1..=limits.k_max {
                for d in heis_deltas() {
                    specs.push(NormalSubgroupSpec::new(amb.clone(), part.clone(), k.into(), Fiber::Heis(d))?);
                }
            }
        }
    }
    run_specs(admissible(specs.into_iter(), limits.max_order))
}
