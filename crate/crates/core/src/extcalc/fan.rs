use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gmod::{GMap, GModule};
use crate::intlat::{Int, IntMatrix, LatticeBuilder};

/// A G-free set of primitive vectors in the dual lattice and the induced
/// sequence `0 → M → Z[S] → Pic → 0`.
#[derive(Clone, Debug)]
pub struct FanRealization {
    /// Vectors of S in dual coordinates, listed orbit by orbit (`g·v` at offset g).
    pub rays: Vec<Vec<Int>>,
    /// `perms[g][s]` is the index of `g·v_s`.
    pub perms: Vec<Vec<usize>>,
    pub divisors: Arc<GModule>,
    /// `ι(m) = Σ⟨m, v⟩ δ_v`; row s is `v_s`.
    pub iota: GMap,
    pub pic: Arc<GModule>,
    pub projection: GMap,
}

fn box_shell(r: usize, bound: i64) -> Vec<Vec<i64>> {
    // all vectors with max |coordinate| exactly `bound`, lexicographic
    let mut out = Vec::new();
    let mut v = vec![-bound; r];
    loop {
        if v.iter().any(|x| x.abs() == bound) {
            out.push(v.clone());
        }
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

/// Finds free orbits of primitive dual vectors, by increasing box size, until
/// they generate the dual lattice over Z (so that Pic is torsion-free).
pub fn fan_realization(m: &Arc<GModule>, max_bound: i64) -> Result<FanRealization> {
    if m.has_relations() {
        return Err(Error::Torsion("fan realization needs a lattice".into()));
    }
    if !m.is_faithful() {
        return Err(Error::InvalidPresentation("lattice is not faithful".into()));
    }
    let group = m.group().clone();
    let n = group.order();
    let r = m.rank();
    let dual = m.dual()?;
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut span = LatticeBuilder::new(r);
    let units: Vec<Vec<Int>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let done = |span: &LatticeBuilder| units.iter().all(|u| span.contains(u));
    'outer: for bound in 1..=max_bound {
        for cand in box_shell(r, bound) {
            let v: Vec<Int> = cand.iter().map(|&x| Int::from(x)).collect();
            let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
            if !g.is_one() {
                continue;
            }
            if rays.contains(&v) {
                continue;
            }
            let orbit: Vec<Vec<Int>> = (0..n).map(|h| dual.act(h, &v)).collect();
            let distinct = (0..n).all(|i| (0..i).all(|j| orbit[i] != orbit[j]));
            if !distinct || orbit.iter().any(|o| rays.contains(o)) {
                continue;
            }
            let grows = orbit.iter().fold(false, |acc, o| span.clone().insert(o) || acc);
            if !grows {
                continue;
            }
            for o in &orbit {
                span.insert(o);
            }
            rays.extend(orbit);
            if done(&span) {
                break 'outer;
            }
        }
    }
    if !done(&span) {
        return Err(Error::SearchFailed(format!("no Z-spanning free set of rays within box {}", max_bound)));
    }
    let s = rays.len();
    let perms: Vec<Vec<usize>> = (0..n)
        .map(|h| {
            (0..s)
                .map(|i| {
                    let orbit = i / n;
                    let g = i % n;
                    orbit * n + group.mul(h, g)
                })
                .collect()
        })
        .collect();
    for (h, p) in perms.iter().enumerate() {
        for (i, &j) in p.iter().enumerate() {
            if dual.act(h, &rays[i]) != rays[j] {
                return Err(Error::Internal("orbit bookkeeping".into()));
            }
        }
    }
    let divisors = Arc::new(GModule::permutation(&group, &perms)?);
    let iota_m = IntMatrix::from_rows(rays.clone())?;
    let iota = GMap::new(m, &divisors, iota_m)?;
    if !iota.is_injective()? {
        return Err(Error::Internal("rays do not span".into()));
    }
    let (pic, projection) = iota.cokernel()?;
    Ok(FanRealization { rays, perms, divisors, iota, pic, projection })
}
