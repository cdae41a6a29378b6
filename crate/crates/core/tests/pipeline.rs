//! Descriptor → subgroup → quotient → bound, across module boundaries.

use jordan_core::exactmat::{IntMatrix, Sublattice};
use jordan_core::heis::{HeisElement, HeisSubgroupData};
use jordan_core::numth::{epsilon, k_max};
use jordan_core::quotient::{build_quotient, decompose_normal_subgroup, verify_bound, Gamma0Part, NormalSubgroupSpec};
use jordan_core::wang::{Fiber, InoueType, WangDescriptor, WangElement, WangGroup};
use jordan_core::wire;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn decompose_then_build_matches_direct_spec() {
    let amb = WangDescriptor::kodaira(1);
    let gens = [
        WangElement::heis(2, 0, 0, 0),
        WangElement::heis(0, 2, 0, 0),
        WangElement::heis(0, 0, 1, 0),
        WangElement::heis(0, 0, 0, 3),
    ];
    let spec = decompose_normal_subgroup(&amb, &gens).unwrap();
    assert_eq!(spec.k, int(3));
    let q = build_quotient(&spec).unwrap();
    assert_eq!(q.table.order(), 12);
    assert!(q.structure_holds());

    let direct = NormalSubgroupSpec::new(
        amb,
        Gamma0Part::Heis(HeisSubgroupData::from_i64([2, 0, 0], [0, 2, 0], 1, 1).unwrap()),
        int(3),
        Fiber::Heis(HeisElement::identity()),
    )
    .unwrap();
    assert_eq!(spec.canonical(), direct.canonical());
    assert_eq!(verify_bound(&spec).unwrap(), verify_bound(&direct).unwrap());
}

#[test]
fn sm_quotient_through_the_wire_format() {
    let m = IntMatrix::from_i64([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
    let g = WangGroup::new(WangDescriptor::sm(m.clone())).unwrap();
    assert_eq!(g.classify_type(), InoueType::SM);
    // Γ₀' = Im(M³ − I) is γ-invariant
    let lat = Sublattice::image(&m.pow(3).minus_identity()).unwrap();
    let spec = NormalSubgroupSpec::new(WangDescriptor::sm(m), Gamma0Part::Lattice(lat), int(3), Fiber::Lattice(vec![int(0); 3])).unwrap();
    let text = wire::spec(&spec).to_string();
    let back = wire::parse_spec(&wire::parse_text(&text).unwrap()).unwrap();
    assert_eq!(back, spec);
    let r = verify_bound(&back).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(BigInt::from(r.order), spec.quotient_order());
}

#[test]
fn sm_cap_is_k_max_of_the_theta_action() {
    let m = IntMatrix::from_i64([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
    let eps = &epsilon(3).unwrap().epsilon;
    for k in 1..=3u64 {
        let spec = NormalSubgroupSpec::new(
            WangDescriptor::sm(m.clone()),
            Gamma0Part::Lattice(Sublattice::whole(3)),
            int(k as i64),
            Fiber::Lattice(vec![int(0); 3]),
        )
        .unwrap();
        let r = verify_bound(&spec).unwrap();
        let cap = r.checks.iter().find(|c| c.name == "k <= k_max").expect("k <= k_max is reported");
        let direct = k_max(&m.pow(k), eps).unwrap();
        assert_eq!(cap.value, BigInt::from(direct));
        assert_eq!(cap.holds, k <= direct);
        // G is cyclic of order k
        assert_eq!((r.order, r.observed_min_index), (k as usize, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Quotients of `H(r) × ℤ` by `⟨δ₁^a, δ₂^b, δ₃^c, γ^k⟩` have order `a·b·c·k`
    /// when normal, and the bound holds.
    #[test]
    fn kodaira_box_quotients(r in 1i64..=2, a in 1i64..=3, b in 1i64..=3, k in 1i64..=2) {
        let c = r * a.gcd(&b);
        let data = HeisSubgroupData::from_i64([a, 0, 0], [0, b, 0], c, r).unwrap();
        prop_assume!(data.is_normal());
        let spec = NormalSubgroupSpec::new(WangDescriptor::kodaira(r), Gamma0Part::Heis(data), int(k), Fiber::Heis(HeisElement::identity())).unwrap();
        prop_assume!(spec.check_normal().is_ok());
        let rep = verify_bound(&spec).unwrap();
        prop_assert_eq!(rep.order as i64, a * b * c * k);
        prop_assert!(rep.pass());
    }
}
