use super::*;
use crate::intlat::Int;

fn orders(p: &EquivariantPresentation, model: &UnitModel, degrees: &[usize]) -> Vec<Option<Int>> {
    let t = gm(&p.group);
    amitsur_groups(p, &t, model, degrees).unwrap().iter().map(|a| a.order()).collect()
}

#[test]
fn klein_p1_orders() {
    let (p, model) = builtin_presentation("klein-p1").unwrap();
    let got = orders(&p, &model, &[2, 3, 4, 5, 6, 7, 8]);
    let want: Vec<Option<Int>> = [2, 1, 4, 2, 8, 4, 16].iter().map(|&x| Some(Int::from(x))).collect();
    assert_eq!(got, want);
}

#[test]
fn enlarged_klein_matches() {
    let (p, model) = builtin_presentation("klein-p1-enlarged").unwrap();
    let got = orders(&p, &model, &[2, 3, 4, 5]);
    let want: Vec<Option<Int>> = [2, 1, 4, 2].iter().map(|&x| Some(Int::from(x))).collect();
    assert_eq!(got, want);
}

#[test]
fn cyclic_pattern() {
    for m in [2usize, 3, 4, 6] {
        let (p, model) = builtin_presentation(&format!("cyclic:m={},b=2", m)).unwrap();
        let got = orders(&p, &model, &[2, 3, 4, 5]);
        for (n, o) in [2, 3, 4, 5].iter().zip(got) {
            let want = if n % 2 == 0 { m } else { 1 };
            assert_eq!(o, Some(Int::from(want)), "m={} n={}", m, n);
        }
        assert!(beta(&p, &model).unwrap().nonzero, "m={}", m);
        let b = 1i64 << m;
        let (p, model) = builtin_presentation(&format!("cyclic:m={},b={}", m, b)).unwrap();
        for o in orders(&p, &model, &[2, 3, 4]) {
            assert_eq!(o, Some(Int::from(1)), "m={} b={}", m, b);
        }
        assert!(!beta(&p, &model).unwrap().nonzero, "m={} b={}", m, b);
    }
}

#[test]
fn toric_klein_invariants() {
    let tk = toric_klein().unwrap();
    let model = UnitModel::Divisible;
    for o in orders(&tk.presentation, &model, &[2, 3, 4, 5, 6]) {
        assert_eq!(o, Some(Int::from(1)));
    }
    assert!(beta(&tk.presentation, &model).unwrap().nonzero);
}

#[test]
fn dp2_dataset_checks() {
    let report = dp2_verify(&bundled_dp2().unwrap()).unwrap();
    for c in &report.checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    assert_eq!(report.checks.len(), 5);
}

#[test]
fn presentation_file_round_trip() {
    let p = klein_p1_enlarged().unwrap();
    let f = PresentationFile::from_presentation(&p, crate::formats::GroupRef::builtin("klein", &[]), None).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let back: PresentationFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f);
    let (q, _) = back.build().unwrap();
    assert_eq!(q.div_map, p.div_map);
    assert_eq!(q.twists, p.twists);
    assert_eq!(q.divisor_perms, p.divisor_perms);
}
