use amitsur::amitsur::{bundled_dp2, Dp2Dataset, DP2_DATASET_JSON};
use amitsur::formats::{bundled_m16_file, GroupRef, ResolutionFile, M16_RESOLUTION_JSON};

#[test]
fn dp2_dataset_round_trips() {
    let d = bundled_dp2().unwrap();
    d.validate().unwrap();
    let text = serde_json::to_string_pretty(&d).unwrap();
    let back: Dp2Dataset = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    let raw: serde_json::Value = serde_json::from_str(DP2_DATASET_JSON).unwrap();
    let again: serde_json::Value = serde_json::to_value(&back).unwrap();
    assert_eq!(raw["labels"], again["labels"]);
    assert_eq!(raw["coords"], again["coords"]);
}

#[test]
fn resolution_file_round_trips() {
    let f = bundled_m16_file().unwrap();
    let res = f.build().unwrap();
    res.validate().unwrap();
    let out = ResolutionFile::from_resolution(&res, GroupRef::builtin("m16", &[]));
    let text = serde_json::to_string(&out).unwrap();
    let back: ResolutionFile = serde_json::from_str(&text).unwrap();
    let rebuilt = back.build().unwrap();
    assert_eq!(rebuilt.ranks(), res.ranks());
    for n in 1..=res.top_degree() {
        assert_eq!(rebuilt.expanded(n), res.expanded(n), "degree {}", n);
    }
    assert!(M16_RESOLUTION_JSON.contains("\"right\""));
}

#[test]
fn corrupted_dp2_values_are_rejected() {
    let mut d = bundled_dp2().unwrap();
    let v = d.values.values_mut().next().unwrap();
    v.cyclotomic.coeffs[0] += 1;
    assert!(d.validate().is_err());

    let mut d = bundled_dp2().unwrap();
    d.coords[0][0] += 1;
    assert!(d.validate().is_err());

    let mut d = bundled_dp2().unwrap();
    d.cocycle[0].pop();
    let report = amitsur::amitsur::dp2_verify(&d);
    assert!(report.map(|r| !r.passed()).unwrap_or(true));
}
