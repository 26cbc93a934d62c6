use hydra_core::expr::parse_word;
use hydra_core::extensions::{
    amalgam_decide, hnn_decide, rf_witness, stored_witness, Verdict, WitnessKind,
};
use hydra_core::maps::{bks_pullback, commutator_witness, eta};
use hydra_core::membership::transport_witness;
use hydra_core::{Error, GroupPair, GroupSpec, SubgroupSpec, Word};

fn pair(w: &[&str], r: &[i64]) -> GroupPair {
    let words = w.iter().map(|s| parse_word(s).unwrap()).collect();
    let g = GroupSpec::new(w.len() as u32, words).unwrap();
    GroupPair::new(g, SubgroupSpec::new(r.to_vec()).unwrap()).unwrap()
}

#[test]
fn transport_on_generalized_g2() {
    let p = pair(&["1", "a1^2"], &[1, 1]);
    let (g, status) = transport_witness(&p).unwrap();
    assert!(status.is_non_member(), "{status}");
    assert!(!p.group().is_trivial(&g).unwrap());
}

#[test]
fn transport_zero_sum_is_unsupported() {
    let p = pair(&["1", "a1", "a2"], &[0, 1, 0]);
    assert!(matches!(transport_witness(&p), Err(Error::Unsupported(_))));
    let trivial = pair(&["1", "1"], &[1, 1]);
    assert!(matches!(
        transport_witness(&trivial),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn transport_on_hydra_g2_is_the_pullback() {
    let p = GroupPair::hydra(2).unwrap();
    let (g, status) = transport_witness(&p).unwrap();
    assert!(status.is_non_member());
    assert!(p.group().equal(&g, &bks_pullback()).unwrap());
}

#[test]
fn transport_on_larger_groups() {
    for p in [
        GroupPair::hydra(3).unwrap(),
        pair(&["1", "1", "a1 a2"], &[1, 1, 1]),
    ] {
        let (g, status) = transport_witness(&p).unwrap();
        assert!(!status.is_member(), "{}: {g} {status}", p.subgroup());
    }
}

#[test]
fn eta_carries_r1_generators_to_rs() {
    let g = GroupSpec::hydra(2).unwrap();
    for (r, s) in [(1, 2), (2, 3), (3, 1)] {
        let src = GroupPair::hydra2(r, 1).unwrap();
        let dst = GroupPair::hydra2(r, s).unwrap();
        for i in 1..=2 {
            let img = eta(s).apply(&src.expand(&Word::h(i)).unwrap()).unwrap();
            assert!(g.equal(&img, &dst.expand(&Word::h(i)).unwrap()).unwrap());
        }
    }
}

#[test]
fn stored_witnesses_lie_outside_h() {
    for (r1, r2) in [(1, 1), (1, 0), (2, 0), (3, 0)] {
        let p = GroupPair::hydra2(r1, r2).unwrap();
        let g = stored_witness(&p).unwrap();
        assert!(p.member(&g).unwrap().is_non_member(), "({r1},{r2})");
    }
    assert_eq!(
        stored_witness(&GroupPair::hydra2(2, 0).unwrap()).unwrap(),
        commutator_witness()
    );
}

#[test]
fn rf_witnesses_are_nontrivial_in_the_extensions() {
    for p in [
        GroupPair::hydra(2).unwrap(),
        GroupPair::hydra2(1, 0).unwrap(),
        pair(&["1", "a1^2"], &[1, 1]),
    ] {
        let hnn = rf_witness(WitnessKind::Hnn, &p).unwrap();
        assert_eq!(
            hnn_decide(&p, &hnn).unwrap(),
            Verdict::NonTrivial,
            "{}",
            p.subgroup()
        );
        let am = rf_witness(WitnessKind::Amalgam, &p).unwrap();
        assert_eq!(
            amalgam_decide(&p, &am).unwrap(),
            Verdict::NonTrivial,
            "{}",
            p.subgroup()
        );
    }
}
