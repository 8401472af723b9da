use super::*;
use num_traits::Zero;

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn v(x: &[i64]) -> Vec<Int> {
    vec_from_i64(x)
}

#[test]
fn snf_small_examples() {
    let a = m(&[vec![2, 4], vec![6, 8]]);
    let s = smith_normal_form(&a);
    assert_eq!(s.diagonal(), v(&[2, 4]));
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);

    let z = IntMatrix::zeros(2, 3);
    let s = smith_normal_form(&z);
    assert!(s.d.is_zero());
    assert!(s.u.is_identity() && s.v.is_identity());

    let s = smith_normal_form(&IntMatrix::identity(3));
    assert!(s.d.is_identity());
}

#[test]
fn solve_examples() {
    let (x, k) = solve_integer(&m(&[vec![2]]), &v(&[3])).unwrap();
    assert!(x.is_none() && k.is_empty());
    let (x, k) = solve_integer(&m(&[vec![2]]), &v(&[4])).unwrap();
    assert_eq!(x, Some(v(&[2])));
    assert!(k.is_empty());
    let (x, k) = solve_integer(&m(&[vec![1, 1]]), &v(&[0])).unwrap();
    assert_eq!(x, Some(v(&[0, 0])));
    assert_eq!(k.len(), 1);
    assert!(k[0] == v(&[1, -1]) || k[0] == v(&[-1, 1]));
    assert!(solve_integer(&m(&[vec![1, 1]]), &v(&[0, 1])).is_err());
}

#[test]
fn groups_from_relations() {
    let g = group_from_relations(1, m(&[vec![4]])).unwrap();
    assert_eq!(g.describe(), "Z/4");
    let g = group_from_relations(2, m(&[vec![2, 0], vec![0, 0]])).unwrap();
    assert_eq!(g.describe(), "Z/2 ⊕ Z");
    let g = group_from_relations(2, m(&[vec![2], vec![4]])).unwrap();
    assert_eq!(g.describe(), "Z/2 ⊕ Z");
    assert_eq!(g.element_order(&v(&[1, 2])), Some(2.into()));
    assert_eq!(g.element_order(&v(&[0, 1])), None);
}

#[test]
fn homology_examples() {
    let z = FgAbGroup::free(1);
    let zero = AbHom::new(z.clone(), z.clone(), m(&[vec![0]])).unwrap();
    let two = AbHom::new(z.clone(), z.clone(), m(&[vec![2]])).unwrap();
    assert!(complex_homology_at(&zero, &two).unwrap().group().is_trivial());
    let h = complex_homology_at(&two, &zero).unwrap();
    assert_eq!(h.group().describe(), "Z/2");
    assert!(complex_homology_at(&two, &two).is_err());
    // representative/classify round trip
    let r = h.representative(&v(&[1]));
    assert_eq!(h.classify(&r), Some(v(&[1])));
}

#[test]
fn subgroups() {
    let z4 = FgAbGroup::cyclic(4);
    let s = subgroup_generated(&[v(&[2])], &z4).unwrap();
    assert_eq!(s.group().describe(), "Z/2");
    assert!(s.contains(&v(&[6])).unwrap());
    assert!(!s.contains(&v(&[1])).unwrap());
    let s = subgroup_generated(&[], &z4).unwrap();
    assert!(s.group().is_trivial());
    let g = group_from_relations(2, m(&[vec![2, 0], vec![0, 8]])).unwrap();
    let s = subgroup_generated(&[v(&[1, 1]), v(&[0, 2])], &g).unwrap();
    assert_eq!(s.order(), Some(8.into()));
    assert!(s.contains(&v(&[1, 3])).unwrap());
    assert!(!s.contains(&v(&[1, 0])).unwrap());
}

#[test]
fn hom_kernel() {
    let z = FgAbGroup::free(1);
    let z2 = FgAbGroup::cyclic(2);
    let f = AbHom::new(z, z2, m(&[vec![1]])).unwrap();
    let k = f.kernel().unwrap();
    assert!(k.contains(&v(&[2])).unwrap());
    assert!(!k.contains(&v(&[1])).unwrap());
    assert_eq!(k.group().describe(), "Z");
}

#[test]
fn lattice_builder_membership() {
    let mut b = LatticeBuilder::new(2);
    assert!(b.insert(&v(&[2, 0])));
    assert!(b.insert(&v(&[3, 1])));
    assert!(b.contains(&v(&[1, 1])));
    assert!(!b.contains(&v(&[0, 1])));
    assert!(!b.insert(&v(&[5, 1])));
    assert_eq!(b.rank(), 2);
}

#[test]
fn rational_solve() {
    let e = ColumnEchelon::new(&m(&[vec![2, 0], vec![0, 3]]));
    let (x, d) = e.solve_rational(&v(&[1, 1])).unwrap();
    assert_eq!(d, 6.into());
    assert_eq!(x, v(&[3, 2]));
    assert!(!x.iter().all(|c| c.is_zero()));
}

#[test]
fn determinant() {
    assert_eq!(m(&[vec![2, 1], vec![7, 4]]).determinant(), 1.into());
    assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant(), (-1).into());
}
