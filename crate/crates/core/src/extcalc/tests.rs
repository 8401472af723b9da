use std::sync::Arc;

use super::*;
use crate::fingroup::{self, FinGroup};
use crate::intlat::int;
use crate::resolve::{auto_resolution, periodic_resolution};

fn klein() -> Arc<FinGroup> {
    Arc::new(fingroup::klein().unwrap())
}

#[test]
fn split_splice_has_trivial_class() {
    let g = klein();
    let z = Arc::new(GModule::trivial_z(&g));
    let zz = Arc::new(z.direct_sum(&z).unwrap());
    let i = GMap::new(&z, &zz, IntMatrix::from_i64(&[vec![1], vec![0]])).unwrap();
    let p = GMap::new(&zz, &z, IntMatrix::from_i64(&[vec![0, 1]])).unwrap();
    let s = ShortExactSequence::new(i, p).unwrap();
    let e = splice(&s, &s).unwrap();
    let cls = ext2_class(&e).unwrap();
    assert!(cls.is_trivial());
    let res = auto_resolution(&g, 5).unwrap();
    for n in 2..=4 {
        let h = CohGroup::new(&Arc::new(res.clone()), &z, n - 2).unwrap();
        for gen in h.generators() {
            let out = e.double_connecting(&res, n, &gen.cocycle).unwrap();
            let hn = CohGroup::new(&Arc::new(res.clone()), &z, n).unwrap();
            assert!(hn.is_coboundary(&out).unwrap());
        }
    }
}

#[test]
fn syzygies_of_small_resolutions() {
    let c2 = Arc::new(fingroup::cyclic(2).unwrap());
    let p = periodic_resolution(&c2, 3).unwrap();
    assert_eq!(syzygy(&p, 2).unwrap().module.rank(), 1);
    let g = klein();
    let p = auto_resolution(&g, 3).unwrap();
    assert_eq!(syzygy(&p, 1).unwrap().module.rank(), 3);
    let s2 = syzygy(&p, 2).unwrap();
    assert_eq!(s2.module.rank(), 5);
    let e = syzygy_extension(&p, &s2).unwrap();
    // the class of 0→Ω²→P_1→P_0→Z→0 is nontrivial
    assert!(!ext2_class(&e).unwrap().is_trivial());
}

#[test]
fn ext2_of_syzygy_sequence_under_pushout_and_pullback() {
    let g = klein();
    let p = auto_resolution(&g, 3).unwrap();
    let s2 = syzygy(&p, 2).unwrap();
    let e = syzygy_extension(&p, &s2).unwrap();
    let id = GMap::identity(e.a());
    let same = pushout(&e, &id).unwrap();
    let f = resolve_module(e.d(), 3).unwrap();
    let c1 = ext2_class_on(&e, &f).unwrap();
    let c2 = ext2_class_on(&same, &f).unwrap();
    assert_eq!(c1.coords, c2.coords);
    let z = e.d().clone();
    let two = GMap::new(&z, &z, IntMatrix::from_i64(&[vec![2]])).unwrap();
    let pb = pullback(&e, &two).unwrap();
    let c3 = ext2_class_on(&pb, &f).unwrap();
    let doubled = c1.group.group().scale(&c1.group.group().from_canonical(&c1.coords), &int(2));
    assert_eq!(c3.coords, c1.group.group().canonical(&doubled));
}

#[test]
fn fan_rejects_trivial_lattice_and_realizes_regular() {
    let g = klein();
    let z = Arc::new(GModule::trivial_z(&g));
    assert!(fan_realization(&z, 3).is_err());
    let sign = Arc::new(
        GModule::new(&g, 2, IntMatrix::zeros(2, 0), &[IntMatrix::from_i64(&[vec![-1, 0], vec![0, 1]]), IntMatrix::from_i64(&[vec![1, 0], vec![0, -1]])])
            .unwrap(),
    );
    let fan = fan_realization(&sign, 4).unwrap();
    assert_eq!(fan.rays.len() % 4, 0);
    assert!(fan.pic.underlying().torsion_invariants().is_empty());
    assert!(fan.iota.is_injective().unwrap());
}

#[test]
fn klein_lattice_construction() {
    let g = klein();
    let out = separating_lattice(&g, &SeparatingOptions::default()).unwrap();
    let r = &out.report;
    assert!(r.c_nonzero, "{:?}", r);
    assert!(r.m_faithful);
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.extension_matches_twists);
}
