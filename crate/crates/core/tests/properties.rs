mod support;

use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_matches_minors(a in small_matrix()) {
        prop_assert_eq!(check_snf(&a), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn corestriction_after_restriction_is_index(
        gi in 0usize..6, kind in 0usize..4, k in 2i64..5, sub in 0usize..8, h in 0usize..8,
        n in 0usize..4, coeffs in proptest::collection::vec(-3i64..=3, 1..4),
    ) {
        prop_assert_eq!(check_cores_res(gi, kind, k, sub, h, n, &coeffs), Ok(()));
    }

    #[test]
    fn sylow_restriction_detects_primary_parts(
        gi in 0usize..6, kind in 0usize..4, k in 2i64..7, sub in 0usize..8,
        n in 1usize..4, coeffs in proptest::collection::vec(-3i64..=3, 1..4),
    ) {
        prop_assert_eq!(check_sylow(gi, kind, k, sub, n, &coeffs), Ok(()));
    }
}

#[test]
fn free_orbit_leaves_invariants_unchanged() {
    for name in builtin_names() {
        check_blowup(&name, &[2, 3, 4]).unwrap();
    }
}

#[test]
fn klein_presentations_agree() {
    check_presentation_independence(&[2, 3, 4, 5, 6]).unwrap();
}

#[test]
fn split_units_give_zero() {
    for name in builtin_names() {
        check_split_zero(&name, &[2, 3, 4, 5]).unwrap();
    }
}

#[test]
fn connecting_map_is_cup_product() {
    for n in 2..=4 {
        check_partial_is_cup(n).unwrap();
    }
}

#[test]
fn blowup_fingerprints_are_nontrivial() {
    let (p, m) = amitsur::amitsur::builtin_presentation("klein-p1").unwrap();
    let (am, b) = fingerprint(&p, &m, &[2, 3, 4]).unwrap();
    assert_eq!(am.iter().map(|v| v.len()).collect::<Vec<_>>(), [1, 0, 2]);
    assert!(b);
}
