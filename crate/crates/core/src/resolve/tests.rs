use std::sync::Arc;

use super::*;
use crate::fingroup::{self, subgroup_from_generators};
use crate::intlat::{int, FgAbGroup};

fn group(g: fingroup::FinGroup) -> Arc<FinGroup> {
    Arc::new(g)
}

/// H^n(G, Z) from a resolution: the cochain differential is the transposed
/// coefficient-sum matrix.
fn trivial_cohomology(res: &FreeResolution, n: usize) -> FgAbGroup {
    let coef_sum = |k: usize| -> IntMatrix {
        let d = res.differential(k);
        let mut m = IntMatrix::zeros(d.rows(), d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                m[(i, j)] = d.get(i, j).iter().sum();
            }
        }
        m.transpose()
    };
    let into = if n == 0 { IntMatrix::zeros(res.rank(0), 0) } else { coef_sum(n) };
    let out = coef_sum(n + 1);
    let z_out = IntMatrix::zeros(out.rows(), 0);
    let h = Homology::compute(&into, &out, &IntMatrix::zeros(res.rank(n), 0), &z_out).unwrap();
    h.group().clone()
}

#[test]
fn periodic_c4_cohomology() {
    let g = group(fingroup::cyclic(4).unwrap());
    let p = periodic_resolution(&g, 5).unwrap();
    assert_eq!(trivial_cohomology(&p, 2).invariants(), vec![int(4)]);
    assert!(trivial_cohomology(&p, 3).is_trivial());
    assert_eq!(trivial_cohomology(&p, 4).invariants(), vec![int(4)]);
}

#[test]
fn klein_tensor_ranks_and_cohomology() {
    let g = group(fingroup::klein().unwrap());
    let p = auto_resolution(&g, 8).unwrap();
    assert_eq!(p.ranks(), &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(trivial_cohomology(&p, 2).invariants(), vec![int(2), int(2)]);
    assert_eq!(trivial_cohomology(&p, 3).invariants(), vec![int(2)]);
}

#[test]
fn bar_ranks_and_corruption() {
    let c2 = group(fingroup::cyclic(2).unwrap());
    assert_eq!(bar_resolution(&c2, 3).unwrap().ranks(), &[1, 1, 1, 1]);
    let k = group(fingroup::klein().unwrap());
    let b = bar_resolution(&k, 3).unwrap();
    assert_eq!(b.ranks(), &[1, 3, 9, 27]);
    assert_eq!(trivial_cohomology(&b, 2).invariants(), vec![int(2), int(2)]);
    let mut diffs: Vec<GroupRingMatrix> = (1..=3).map(|n| b.differential(n).clone()).collect();
    diffs[1].add_term(0, 0, 1, &int(1));
    let z = b.target().clone();
    let bad = FreeResolution::checked(&k, b.ranks().to_vec(), diffs, b.augmentation().clone(), &z, "bad");
    assert!(bad.is_err());
}

#[test]
fn m16_bundled_valid_and_sign_flip_rejected() {
    let r = crate::formats::bundled_m16_resolution().unwrap();
    assert_eq!(r.ranks(), &[1, 2, 2, 2, 3, 4]);
    let rep = r.validate().unwrap();
    assert_eq!(rep.homology, vec!["Z", "0", "0", "0", "0"]);
    assert_eq!(trivial_cohomology(&r, 2).invariants(), vec![int(2), int(4)]);

    let mut file = crate::formats::bundled_m16_file().unwrap();
    let entry = &mut file.differentials[2][0][0];
    entry[0].0 = -entry[0].0;
    assert!(file.build().is_err());
}

#[test]
fn m16_extension_degree_five_order_two() {
    let g = group(fingroup::modular16().unwrap());
    let r = auto_resolution(&g, 6).unwrap();
    assert_eq!(r.top_degree(), 6);
    assert_eq!(trivial_cohomology(&r, 5).order(), Some(int(2)));
}

#[test]
fn extend_periodic_and_noop() {
    let g = group(fingroup::cyclic(4).unwrap());
    let p = periodic_resolution(&g, 2).unwrap();
    let e = p.extend(5).unwrap();
    assert_eq!(e.ranks(), &[1, 1, 1, 1, 1, 1]);
    assert!(trivial_cohomology(&e, 3).is_trivial());
    assert_eq!(trivial_cohomology(&e, 4).invariants(), vec![int(4)]);
    let same = p.extend(2).unwrap();
    assert_eq!(same.ranks(), p.ranks());
    assert_eq!(same.differential(2), p.differential(2));
}

#[test]
fn generic_from_scratch_matches_periodic() {
    let g = fingroup::cyclic(3).unwrap();
    let table = (0..3).map(|a| (0..3).map(|b| g.mul(a, b)).collect()).collect();
    let plain = group(FinGroup::from_table("plain", table, vec![("s".into(), 1)]).unwrap());
    let r = auto_resolution(&plain, 4).unwrap();
    assert_eq!(trivial_cohomology(&r, 2).invariants(), vec![int(3)]);
    assert!(trivial_cohomology(&r, 3).is_trivial());
}

#[test]
fn chain_map_identity_and_restriction() {
    let k = group(fingroup::klein().unwrap());
    let p = Arc::new(auto_resolution(&k, 4).unwrap());
    let id = IntMatrix::identity(1);
    let cm = chain_map_lift(&p, &p, &id, 4).unwrap();
    assert!(cm.commutes(&p, &p));

    let sub = subgroup_from_generators(&k, &[1]).unwrap();
    let rr = p.restrict(&sub).unwrap();
    rr.res.validate().unwrap();
    let own = auto_resolution(sub.group(), 4).unwrap();
    let cm = chain_map_lift(&own, &rr.res, &id, 4).unwrap();
    assert!(cm.commutes(&own, &rr.res));
}

#[test]
fn diagonal_degree_zero_and_commutation() {
    let k = group(fingroup::klein().unwrap());
    let p = auto_resolution(&k, 3).unwrap();
    let d = diagonal_approximation(&p, 3).unwrap();
    assert_eq!(d.block_terms(0, 0, 0), vec![(0, 0, 0, 0, int(1))]);
    assert_eq!(d.top_degree(), 3);
}

#[test]
fn file_round_trip() {
    let g = group(fingroup::cyclic(4).unwrap());
    let p = periodic_resolution(&g, 3).unwrap();
    let f = crate::formats::ResolutionFile::from_resolution(&p, crate::formats::GroupRef::builtin("cyclic", &[4]));
    let text = serde_json::to_string(&f).unwrap();
    let back: crate::formats::ResolutionFile = serde_json::from_str(&text).unwrap();
    let q = back.build().unwrap();
    assert_eq!(q.differential(1), p.differential(1));
    assert_eq!(q.differential(2), p.differential(2));
}
