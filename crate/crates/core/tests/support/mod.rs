//! Test-only oracles and property checks shared by the property suite and the
//! acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use amitsur::amitsur::{
    alpha_class, amitsur_groups, beta, builtin_presentation, canonical_group, gm, klein_p1, toric_klein,
    EquivariantPresentation, UnitModel, UnitValue,
};
use amitsur::cohom::{corestrict_cochain, cup, restrict_cochain, CohGroup};
use amitsur::fingroup::{self, all_subgroups, direct_product, sylow};
use amitsur::intlat::{smith_normal_form, Int, IntMatrix};
use amitsur::resolve::{auto_resolution, diagonal_approximation};
use amitsur::{FinGroup, GModule};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub type Check = std::result::Result<(), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------- Smith normal form oracle: determinantal divisors ----------

pub fn det(m: &[Vec<Int>]) -> Int {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}` from gcds of k×k minors.
pub fn determinantal_invariants(a: &IntMatrix) -> Vec<Int> {
    let mut out = Vec::new();
    let mut prev = Int::one();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = Int::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor: Vec<Vec<Int>> = rs.iter().map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn check_snf(a: &IntMatrix) -> Check {
    let s = smith_normal_form(a);
    let square = |m: &IntMatrix| -> Vec<Vec<Int>> { m.row_vecs() };
    if s.u.mul(a).mul(&s.v) != s.d {
        return Err("U·A·V ≠ D".into());
    }
    for (name, m) in [("U", &s.u), ("V", &s.v)] {
        if !det(&square(m)).abs().is_one() {
            return Err(format!("{} is not unimodular", name));
        }
    }
    let diag: Vec<Int> = s.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
    for w in diag.windows(2) {
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return Err(format!("divisibility chain broken: {:?}", diag));
        }
    }
    let got: Vec<Int> = diag.iter().map(|x| x.abs()).collect();
    let want = determinantal_invariants(a);
    if got != want {
        return Err(format!("invariants {:?}, oracle {:?}", got, want));
    }
    Ok(())
}

pub fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

// ---------- groups and modules ----------

pub fn small_group(i: usize) -> Arc<FinGroup> {
    let g = match i % 6 {
        0 => fingroup::cyclic(2),
        1 => fingroup::cyclic(3),
        2 => fingroup::cyclic(4),
        3 => fingroup::klein(),
        4 => {
            let a = Arc::new(fingroup::cyclic(2).unwrap());
            let b = Arc::new(fingroup::cyclic_named(3, "tau").unwrap());
            direct_product(&a, &b)
        }
        _ => fingroup::cyclic(6),
    };
    Arc::new(g.unwrap())
}

/// Modules built from coset actions: trivial Z, trivial Z/k, permutation
/// modules on cosets, and sign characters of index-2 subgroups.
pub fn small_module(g: &Arc<FinGroup>, kind: usize, k: i64, sub_pick: usize) -> Arc<GModule> {
    let subs = all_subgroups(g).unwrap();
    match kind % 4 {
        0 => Arc::new(GModule::trivial_z(g)),
        1 => Arc::new(GModule::trivial_cyclic(g, k.max(2))),
        2 => {
            let h = &subs[sub_pick % subs.len()];
            let reps = h.right_coset_reps();
            // g acts on left cosets x H; use inverses of right coset reps
            let cosets: Vec<Vec<usize>> = reps
                .iter()
                .map(|&t| {
                    let x = g.inv(t);
                    let mut c: Vec<usize> = h.elements().iter().map(|&e| g.mul(x, e)).collect();
                    c.sort();
                    c
                })
                .collect();
            let find = |y: usize| cosets.iter().position(|c| c.contains(&y)).unwrap();
            let perms: Vec<Vec<usize>> =
                (0..g.order()).map(|a| (0..cosets.len()).map(|i| find(g.mul(a, cosets[i][0]))).collect()).collect();
            Arc::new(GModule::permutation(g, &perms).unwrap())
        }
        _ => {
            let idx2: Vec<_> = subs.iter().filter(|h| h.index() == 2).collect();
            if idx2.is_empty() {
                return Arc::new(GModule::trivial_z(g));
            }
            let h = idx2[sub_pick % idx2.len()];
            let acts = (0..g.order())
                .map(|a| IntMatrix::from_i64(&[vec![if h.contains(a) { 1 } else { -1 }]]))
                .collect();
            Arc::new(GModule::from_element_actions(g, 1, IntMatrix::zeros(1, 0), acts).unwrap())
        }
    }
}

fn combination(h: &CohGroup, coeffs: &[i64]) -> Vec<Int> {
    let gens = h.generators();
    let mut f = vec![Int::zero(); h.cochain_len()];
    for (g, c) in gens.iter().zip(coeffs.iter().cycle()) {
        for (x, y) in f.iter_mut().zip(&g.cocycle) {
            *x += y * Int::from(*c);
        }
    }
    f
}

/// `cores ∘ res = [G:H]` on a class built from `coeffs`.
pub fn check_cores_res(gi: usize, kind: usize, k: i64, sub_pick: usize, h_pick: usize, n: usize, coeffs: &[i64]) -> Check {
    let g = small_group(gi);
    let m = small_module(&g, kind, k, sub_pick);
    let res = Arc::new(auto_resolution(&g, n + 1).map_err(err)?);
    let h = CohGroup::new(&res, &m, n).map_err(err)?;
    let f = combination(&h, coeffs);
    let subs = all_subgroups(&g).map_err(err)?;
    let sub = &subs[h_pick % subs.len()];
    let rr = res.restrict(sub).map_err(err)?;
    let fr = restrict_cochain(&rr, &m, &f);
    let ms = Arc::new(m.restrict(sub).map_err(err)?);
    let hs = CohGroup::new(&rr.res, &ms, n).map_err(err)?;
    if !hs.is_cocycle(&fr) {
        return Err("restriction is not a cocycle".into());
    }
    let back = corestrict_cochain(&rr, &m, &fr);
    let idx = Int::from(sub.index() as u64);
    let scaled: Vec<Int> = f.iter().map(|x| x * &idx).collect();
    let diff: Vec<Int> = back.iter().zip(&scaled).map(|(a, b)| a - b).collect();
    if !h.is_coboundary(&diff).map_err(err)? {
        return Err(format!("cores∘res ≠ {} on {} in degree {}", idx, g.name(), n));
    }
    Ok(())
}

/// Restriction to a Sylow p-subgroup is injective on p-primary classes.
pub fn check_sylow(gi: usize, kind: usize, k: i64, sub_pick: usize, n: usize, coeffs: &[i64]) -> Check {
    let g = small_group(gi);
    let m = small_module(&g, kind, k, sub_pick);
    let res = Arc::new(auto_resolution(&g, n + 1).map_err(err)?);
    let h = CohGroup::new(&res, &m, n).map_err(err)?;
    let f = combination(&h, coeffs);
    for p in fingroup::prime_divisors(g.order()) {
        let mut q = g.order();
        while q.is_multiple_of(p) {
            q /= p;
        }
        let y: Vec<Int> = f.iter().map(|x| x * Int::from(q as u64)).collect();
        let zero = h.is_coboundary(&y).map_err(err)?;
        let s = sylow(&g, p).map_err(err)?;
        let rr = res.restrict(&s).map_err(err)?;
        let ms = Arc::new(m.restrict(&s).map_err(err)?);
        let hs = CohGroup::new(&rr.res, &ms, n).map_err(err)?;
        let res_zero = hs.is_coboundary(&restrict_cochain(&rr, &m, &y)).map_err(err)?;
        if res_zero != zero {
            return Err(format!("{}-primary class detection failed on {} in degree {}", p, g.name(), n));
        }
    }
    Ok(())
}

// ---------- presentations ----------

pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = ["klein-p1", "klein-p1-enlarged", "toric-klein"].iter().map(|s| s.to_string()).collect();
    for m in [2, 3, 4, 6] {
        v.push(format!("cyclic:m={},b=2", m));
        v.push(format!("cyclic:m={},b={}", m, 1i64 << m));
    }
    v
}

/// Invariant factors of `Amⁿ` for each degree and whether β vanishes.
pub fn fingerprint(p: &EquivariantPresentation, model: &UnitModel, degrees: &[usize]) -> std::result::Result<(Vec<Vec<Int>>, bool), String> {
    let t = gm(&p.group);
    let am = amitsur_groups(p, &t, model, degrees).map_err(err)?;
    let b = beta(p, model).map_err(err)?;
    Ok((am.iter().map(|a| a.invariants()).collect(), b.nonzero))
}

pub fn check_blowup(name: &str, degrees: &[usize]) -> Check {
    let (p, model) = builtin_presentation(name).map_err(err)?;
    let before = fingerprint(&p, &model, degrees)?;
    let q = p.adjoin_free_orbit("e").map_err(err)?;
    let after = fingerprint(&q, &model, degrees)?;
    if before != after {
        return Err(format!("{}: {:?} became {:?} after adding a free orbit", name, before, after));
    }
    Ok(())
}

pub fn check_presentation_independence(degrees: &[usize]) -> Check {
    let (p, m) = builtin_presentation("klein-p1").map_err(err)?;
    let (q, n) = builtin_presentation("klein-p1-enlarged").map_err(err)?;
    let a = fingerprint(&p, &m, degrees)?;
    let b = fingerprint(&q, &n, degrees)?;
    if a != b {
        return Err(format!("{:?} vs {:?}", a, b));
    }
    Ok(())
}

/// Replaces every twist constant by 1, so the unit sequence splits.
pub fn strip_constants(p: &EquivariantPresentation) -> EquivariantPresentation {
    let mut q = p.clone();
    for row in &mut q.twists {
        for t in row {
            t.constant = UnitValue::one();
        }
    }
    q
}

pub fn check_split_zero(name: &str, degrees: &[usize]) -> Check {
    let (p, model) = builtin_presentation(name).map_err(err)?;
    let q = strip_constants(&p);
    let (am, b) = fingerprint(&q, &model, degrees)?;
    if am.iter().any(|inv| !inv.is_empty()) || b {
        return Err(format!("{} without constants: Am {:?}, beta nonzero {}", name, am, b));
    }
    Ok(())
}

/// `∂ⁿ(x)` agrees up to one global sign with `x ∪ ∂²(Id)` contracted by evaluation.
pub fn check_partial_is_cup(n: usize) -> Check {
    let p = klein_p1().map_err(err)?;
    let model = UnitModel::Divisible;
    let mods = p.modules().map_err(err)?;
    let pic = mods.pic.clone();
    let r = pic.rank();
    let dual = Arc::new(pic.dual().map_err(err)?);
    let ax = alpha_class(&p, &gm(&p.group), &model).map_err(err)?;
    let ad = alpha_class(&p, &dual, &model).map_err(err)?;
    let res = Arc::new(auto_resolution(&p.group, n + 1).map_err(err)?);
    let diag = diagonal_approximation(&res, n).map_err(err)?;
    let mut id = vec![Int::zero(); r * r];
    for i in 0..r {
        id[i * r + i] = Int::one();
    }
    let a = ad.ext.double_connecting(&res, 2, &id).map_err(err)?;
    let k_mod = ax.ext.a().clone();
    let kk = k_mod.rank();
    let mut mu = IntMatrix::zeros(kk, r * kk * r);
    for i in 0..r {
        for k in 0..kk {
            mu[(k, i * kk * r + k * r + i)] = Int::one();
        }
    }
    let src = CohGroup::new(&res, ax.ext.d(), n - 2).map_err(err)?;
    let tgt = CohGroup::new(&res, &k_mod, n).map_err(err)?;
    let ambient = canonical_group(&tgt).map_err(err)?;
    let mut signs = [true, true];
    let mut seen_nonzero = false;
    for x in src.generators() {
        let y = tgt.classify(&ax.ext.double_connecting(&res, n, &x.cocycle).map_err(err)?).map_err(err)?;
        let z = cup(&res, &diag, ax.ext.d(), (n - 2, &x.cocycle), ad.ext.a(), (2, &a), &mu).map_err(err)?;
        let z = tgt.classify(&z).map_err(err)?;
        let neg: Vec<Int> = z.iter().map(|v| -v).collect();
        signs[0] &= ambient.equal(&y, &z);
        signs[1] &= ambient.equal(&y, &neg);
        seen_nonzero |= !ambient.is_zero(&y);
    }
    if n.is_multiple_of(2) && !seen_nonzero {
        return Err(format!("∂^{} vanished identically; the comparison is vacuous", n));
    }
    if !(signs[0] || signs[1]) {
        return Err(format!("∂^{} differs from the cup product with ∂²(Id)", n));
    }
    Ok(())
}

pub fn toric() -> amitsur::amitsur::ToricKlein {
    toric_klein().expect("toric example builds")
}
