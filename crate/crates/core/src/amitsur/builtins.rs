use std::sync::Arc;

use super::presentation::{EquivariantPresentation, Twist};
use super::units::{UnitModel, UnitValue};
use crate::error::{Error, Result};
use crate::extcalc::{fan_realization, separating_lattice, FanRealization, SeparatingOptions, SeparatingLattice};
use crate::fingroup::{self, FinGroup};
use crate::intlat::{Int, IntMatrix};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn klein_group() -> Result<Arc<FinGroup>> {
    Ok(Arc::new(fingroup::klein()?))
}

/// P¹ with σ(t) = t⁻¹, τ(t) = −t; boundary {0, ∞}.
pub fn klein_p1() -> Result<EquivariantPresentation> {
    let group = klein_group()?;
    let p = EquivariantPresentation {
        name: "klein-p1".into(),
        group,
        divisor_labels: labels(&["0", "inf"]),
        divisor_perms: vec![vec![1, 0], vec![0, 1]],
        unit_labels: labels(&["t"]),
        div_map: IntMatrix::from_i64(&[vec![1], vec![-1]]),
        twists: vec![
            vec![Twist::monomial(vec![-1])],
            vec![Twist::new(UnitValue::minus_one(), vec![1])],
        ],
    };
    p.validate()?;
    Ok(p)
}

/// The same action with boundary {0, ∞, 1, −1} and units t, t−1, t+1.
pub fn klein_p1_enlarged() -> Result<EquivariantPresentation> {
    let group = klein_group()?;
    let m1 = UnitValue::minus_one();
    let p = EquivariantPresentation {
        name: "klein-p1-enlarged".into(),
        group,
        divisor_labels: labels(&["0", "inf", "1", "-1"]),
        divisor_perms: vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]],
        unit_labels: labels(&["t", "t-1", "t+1"]),
        div_map: IntMatrix::from_i64(&[vec![1, 0, 0], vec![-1, -1, -1], vec![0, 1, 0], vec![0, 0, 1]]),
        twists: vec![
            vec![
                Twist::monomial(vec![-1, 0, 0]),
                // t⁻¹ − 1 = −(t−1)·t⁻¹
                Twist::new(m1.clone(), vec![-1, 1, 0]),
                // t⁻¹ + 1 = (t+1)·t⁻¹
                Twist::monomial(vec![-1, 0, 1]),
            ],
            vec![
                Twist::new(m1.clone(), vec![1, 0, 0]),
                Twist::new(m1.clone(), vec![0, 0, 1]),
                Twist::new(m1, vec![0, 1, 0]),
            ],
        ],
    };
    p.validate()?;
    Ok(p)
}

/// P^{m−1} with σ(x_i) = x_{i+1}, σ(x_{m−1}) = b·x_0; boundary the coordinate
/// hyperplanes, units u_i = x_i/x_{i+1} for i ≤ m−2.
pub fn cyclic_projective(m: usize, b: &UnitValue) -> Result<EquivariantPresentation> {
    if m < 2 {
        return Err(Error::InvalidPresentation("cyclic example needs m ≥ 2".into()));
    }
    let group = Arc::new(fingroup::cyclic(m)?);
    let r = m - 1;
    let mut div = IntMatrix::zeros(m, r);
    for i in 0..r {
        div[(i, i)] = Int::from(1);
        div[(i + 1, i)] = Int::from(-1);
    }
    let mut row = Vec::with_capacity(r);
    for i in 0..r {
        if i + 1 < r {
            let mut mono = vec![0; r];
            mono[i + 1] = 1;
            row.push(Twist::monomial(mono));
        } else {
            // x_{m−1}/(b x_0) = b⁻¹ (u_0 ⋯ u_{m−2})⁻¹
            row.push(Twist::new(b.inverse(), vec![-1; r]));
        }
    }
    let p = EquivariantPresentation {
        name: format!("cyclic-projective(m={},b={})", m, b),
        group,
        divisor_labels: (0..m).map(|i| format!("D{}", i)).collect(),
        divisor_perms: vec![(0..m).map(|i| (i + 1) % m).collect()],
        unit_labels: (0..r).map(|i| format!("u{}", i)).collect(),
        div_map: div,
        twists: vec![row],
    };
    p.validate()?;
    Ok(p)
}

/// A nonzero integer as `±1 · Π p^e` over its prime factors (labelled by the prime).
pub fn integer_unit(b: i64) -> Result<UnitValue> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let mut v = if b < 0 { UnitValue::minus_one() } else { UnitValue::one() };
    let mut n = b.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            v = v.mul(&UnitValue::generator(&p.to_string(), e));
        }
        p += 1;
    }
    if n > 1 {
        v = v.mul(&UnitValue::generator(&n.to_string(), 1));
    }
    Ok(v)
}

/// The units of Q: `μ₂` plus the primes occurring in `values`.
pub fn rational_model(values: &[&UnitValue]) -> UnitModel {
    let mut free: Vec<String> = values.iter().flat_map(|v| v.free_part().keys().cloned()).collect();
    free.sort_by_key(|s| (s.parse::<u64>().unwrap_or(u64::MAX), s.clone()));
    free.dedup();
    UnitModel::Fg { torsion: 2, free }
}

/// The Klein-group lattice M and its extension by constants, realized on a
/// fan with a G-free set of rays.
#[derive(Clone, Debug)]
pub struct ToricKlein {
    pub presentation: EquivariantPresentation,
    pub lattice: SeparatingLattice,
    pub fan: FanRealization,
}

pub fn toric_klein_with(opts: &SeparatingOptions, max_bound: i64) -> Result<ToricKlein> {
    let group = klein_group()?;
    let sep = separating_lattice(&group, opts)?;
    let fan = fan_realization(&sep.lattice, max_bound)?;
    let m = &sep.lattice;
    let r = m.rank();
    let level = i64::try_from(&sep.c.den).map_err(|_| Error::SizeGuard("torsion level".into()))?;
    let mut twists = Vec::new();
    let mut perms = Vec::new();
    for (s, &(_, g)) in group.generators().iter().enumerate() {
        let a = m.action(g);
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let c = i64::try_from(&sep.twists[s][k]).map_err(|_| Error::SizeGuard("twist".into()))?;
            let mono = (0..r)
                .map(|l| i64::try_from(&a[(l, k)]).map_err(|_| Error::SizeGuard("monomial".into())))
                .collect::<Result<Vec<_>>>()?;
            row.push(Twist::new(UnitValue::root_of_unity(c, level)?, mono));
        }
        twists.push(row);
        perms.push(fan.perms[g].clone());
    }
    let presentation = EquivariantPresentation {
        name: "toric-klein".into(),
        group: group.clone(),
        divisor_labels: (0..fan.rays.len()).map(|i| format!("v{}", i)).collect(),
        divisor_perms: perms,
        unit_labels: (0..r).map(|k| format!("m{}", k)).collect(),
        div_map: fan.iota.matrix.clone(),
        twists,
    };
    presentation.validate()?;
    Ok(ToricKlein { presentation, lattice: sep, fan })
}

pub fn toric_klein() -> Result<ToricKlein> {
    toric_klein_with(&SeparatingOptions::default(), 4)
}

/// A built-in presentation by name, with its natural unit model.
///
/// Names: `klein-p1`, `klein-p1-enlarged`, `toric-klein`, `cyclic:m=M,b=B`.
pub fn builtin_presentation(name: &str) -> Result<(EquivariantPresentation, UnitModel)> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    match name {
        "klein-p1" => Ok((klein_p1()?, UnitModel::Divisible)),
        "klein-p1-enlarged" => Ok((klein_p1_enlarged()?, UnitModel::Divisible)),
        "toric-klein" => Ok((toric_klein()?.presentation, UnitModel::Divisible)),
        _ => {
            let rest = name
                .strip_prefix("cyclic:")
                .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
            let (mut m, mut b) = (None, None);
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {:?}", part)))?;
                let v: i64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad number {:?}", v)))?;
                match k.trim() {
                    "m" => m = Some(v),
                    "b" => b = Some(v),
                    other => return Err(Error::Parse(format!("unknown parameter {:?}", other))),
                }
            }
            let m = m.ok_or_else(|| Error::Parse("cyclic example needs m".into()))?;
            let m = usize::try_from(m).map_err(|_| Error::Parse("m must be positive".into()))?;
            let b = integer_unit(b.unwrap_or(2))?;
            let model = rational_model(&[&b]);
            Ok((cyclic_projective(m, &b)?, model))
        }
    }
}
