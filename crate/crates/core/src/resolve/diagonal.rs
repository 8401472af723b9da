use num_traits::{One, Zero};

use super::FreeResolution;
use crate::error::{Error, Result};
use crate::intlat::{ColumnEchelon, Int, IntMatrix};
use crate::limits;

/// A diagonal approximation `Δ: P → P⊗P` with the diagonal G-action.
///
/// Degree-n coordinates of `P⊗P` are grouped in blocks `(i, n-i)`; inside a
/// block the basis vector `(g e_a) ⊗ (h e_b)` sits at `x·(r_{n-i}|G|) + y` with
/// `x = a|G| + g` and `y = b|G| + h`.
#[derive(Clone, Debug)]
pub struct DiagonalApprox {
    order: usize,
    ranks: Vec<usize>,
    /// `images[n][j]` is `Δ_n(e_j)` in the coordinates above.
    images: Vec<Vec<Vec<Int>>>,
}

impl DiagonalApprox {
    pub fn top_degree(&self) -> usize {
        self.images.len() - 1
    }

    fn block_offset(&self, n: usize, p: usize) -> usize {
        (0..p).map(|i| self.ranks[i] * self.ranks[n - i] * self.order * self.order).sum()
    }

    /// Terms `(a, g, b, h, c)` of the `(p, n-p)` block of `Δ_n(e_j)`, meaning `c·(g e_a)⊗(h e_b)`.
    pub fn block_terms(&self, n: usize, j: usize, p: usize) -> Vec<(usize, usize, usize, usize, Int)> {
        let o = self.order;
        let q = n - p;
        let off = self.block_offset(n, p);
        let wy = self.ranks[q] * o;
        let len = self.ranks[p] * o * wy;
        let v = &self.images[n][j];
        let mut out = Vec::new();
        for (k, c) in v[off..off + len].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (x, y) = (k / wy, k % wy);
            out.push((x / o, x % o, y / o, y % o, c.clone()));
        }
        out
    }
}

fn tensor_dim(res: &FreeResolution, n: usize) -> usize {
    let o = res.group().order();
    (0..=n).map(|i| res.rank(i) * res.rank(n - i) * o * o).sum()
}

/// Differential of `P⊗P` from degree n to n-1 on expanded coordinates.
fn tensor_differential(res: &FreeResolution, n: usize) -> IntMatrix {
    let o = res.group().order();
    let rows = tensor_dim(res, n - 1);
    let cols = tensor_dim(res, n);
    let mut m = IntMatrix::zeros(rows, cols);
    let off = |deg: usize, p: usize| -> usize { (0..p).map(|i| res.rank(i) * res.rank(deg - i) * o * o).sum() };
    for p in 0..=n {
        let q = n - p;
        let c0 = off(n, p);
        if p >= 1 {
            let b = res.expanded(p).kronecker(&IntMatrix::identity(res.rank(q) * o));
            m.set_block(off(n - 1, p - 1), c0, &b);
        }
        if q >= 1 {
            let mut b = IntMatrix::identity(res.rank(p) * o).kronecker(res.expanded(q));
            if p % 2 == 1 {
                b = b.neg();
            }
            m.set_block(off(n - 1, p), c0, &b);
        }
    }
    m
}

/// Acts by `k` diagonally on a degree-n element of `P⊗P`.
fn act_tensor(res: &FreeResolution, n: usize, k: usize, v: &[Int]) -> Vec<Int> {
    let group = res.group();
    let o = group.order();
    let mut out = vec![Int::zero(); v.len()];
    let mut off = 0;
    for p in 0..=n {
        let wy = res.rank(n - p) * o;
        let len = res.rank(p) * o * wy;
        for (idx, c) in v[off..off + len].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (x, y) = (idx / wy, idx % wy);
            let nx = (x / o) * o + group.mul(k, x % o);
            let ny = (y / o) * o + group.mul(k, y % o);
            out[off + nx * wy + ny] = c.clone();
        }
        off += len;
    }
    out
}

/// Builds `Δ` through degree `n_max` by solving against the differential of `P⊗P`.
/// Requires `P_0` of rank one (resolutions of trivial Z built here).
pub fn diagonal_approximation(res: &FreeResolution, n_max: usize) -> Result<DiagonalApprox> {
    res.require(n_max)?;
    if res.rank(0) != 1 {
        return Err(Error::Dimension("diagonal approximation needs P_0 of rank one".into()));
    }
    let group = res.group();
    let o = group.order();
    for n in 0..=n_max {
        limits::check("diagonal approximation", tensor_dim(res, n))?;
    }
    let mut e0 = vec![Int::zero(); o * o];
    e0[group.identity() * o + group.identity()] = Int::one();
    let mut images = vec![vec![e0]];
    for n in 1..=n_max {
        let dt = tensor_differential(res, n);
        let ech = ColumnEchelon::new(&dt);
        let mut imgs = Vec::with_capacity(res.rank(n));
        for j in 0..res.rank(n) {
            let col = res.differential(n).expanded_column(j);
            let mut t = vec![Int::zero(); tensor_dim(res, n - 1)];
            for (idx, c) in col.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a, g) = (idx / o, idx % o);
                let moved = act_tensor(res, n - 1, g, &images[n - 1][a]);
                for (tt, m) in t.iter_mut().zip(moved) {
                    *tt += c * m;
                }
            }
            let x = ech
                .solve(&t)
                .ok_or_else(|| Error::Internal(format!("diagonal approximation fails in degree {}", n)))?;
            imgs.push(x);
        }
        images.push(imgs);
    }
    Ok(DiagonalApprox { order: o, ranks: res.ranks()[..=n_max].to_vec(), images })
}
