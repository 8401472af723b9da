use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};
use crate::error::{Error, Result};

/// Quotient of `a / b` rounded to the nearest integer.
pub(crate) fn nearest_quotient(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    let two_r: Int = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Column echelon form `H = A V` with `V` unimodular.
///
/// Pivot rows increase strictly with the column index, pivots are positive and
/// entries left of a pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    rows: usize,
    cols: usize,
    h: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    v: Option<Vec<Vec<Int>>>,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        Self::build(a.rows(), a.columns(), true)
    }

    /// Echelon form of the span of `columns` without tracking the transform.
    pub fn span(rows: usize, columns: Vec<Vec<Int>>) -> Self {
        Self::build(rows, columns, false)
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<Int>>) -> Self {
        Self::build(rows, columns, true)
    }

    fn build(rows: usize, mut h: Vec<Vec<Int>>, track: bool) -> Self {
        let cols = h.len();
        let mut v: Option<Vec<Vec<Int>>> = if track {
            Some(
                (0..cols)
                    .map(|j| {
                        let mut e = vec![Int::zero(); cols];
                        e[j] = Int::one();
                        e
                    })
                    .collect(),
            )
        } else {
            None
        };
        let mut pivots = Vec::new();
        let mut k = 0usize;
        for i in 0..rows {
            if k == cols {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                let mut count = 0;
                for j in k..cols {
                    if !h[j][i].is_zero() {
                        count += 1;
                        best = match best {
                            None => Some(j),
                            Some(b) if h[j][i].abs() < h[b][i].abs() => Some(j),
                            other => other,
                        };
                    }
                }
                let Some(b) = best else { break };
                if b != k {
                    h.swap(b, k);
                    if let Some(v) = v.as_mut() {
                        v.swap(b, k);
                    }
                }
                if count == 1 {
                    break;
                }
                let piv = h[k][i].clone();
                for j in k + 1..cols {
                    if h[j][i].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&h[j][i], &piv);
                    if q.is_zero() {
                        continue;
                    }
                    let (lo, hi) = h.split_at_mut(j);
                    col_sub(&mut hi[0], &q, &lo[k]);
                    if let Some(v) = v.as_mut() {
                        let (lo, hi) = v.split_at_mut(j);
                        col_sub(&mut hi[0], &q, &lo[k]);
                    }
                }
            }
            if k < cols && !h[k][i].is_zero() {
                if h[k][i].is_negative() {
                    for x in h[k].iter_mut() {
                        *x = -&*x;
                    }
                    if let Some(v) = v.as_mut() {
                        for x in v[k].iter_mut() {
                            *x = -&*x;
                        }
                    }
                }
                let piv = h[k][i].clone();
                for l in 0..k {
                    if h[l][i].is_zero() {
                        continue;
                    }
                    let q = h[l][i].div_floor(&piv);
                    if q.is_zero() {
                        continue;
                    }
                    let (lo, hi) = h.split_at_mut(k);
                    col_sub(&mut lo[l], &q, &hi[0]);
                    if let Some(v) = v.as_mut() {
                        let (lo, hi) = v.split_at_mut(k);
                        col_sub(&mut lo[l], &q, &hi[0]);
                    }
                }
                pivots.push(i);
                k += 1;
            }
        }
        h.truncate(pivots.len());
        // columns beyond the rank are zero in H; keep only the echelon part
        ColumnEchelon { rows, cols, h, pivots, v }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of the column lattice (echelon columns).
    pub fn image_basis(&self) -> &[Vec<Int>] {
        &self.h
    }

    /// Coefficients `y` with `sum y_k h_k = b`, if `b` lies in the column lattice.
    pub fn image_coordinates(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut r = b.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let (q, rem) = r[p].div_rem(&self.h[k][p]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                col_sub(&mut r, &q, &self.h[k]);
            }
            y.push(q);
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(y)
        } else {
            None
        }
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.image_coordinates(b).is_some()
    }

    /// One integer solution of `A x = b`.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let y = self.image_coordinates(b)?;
        let v = self.v.as_ref().expect("solve requires a tracked transform");
        let mut x = vec![Int::zero(); self.cols];
        for (k, yk) in y.iter().enumerate() {
            if !yk.is_zero() {
                super::matrix::axpy(&mut x, yk, &v[k]);
            }
        }
        Some(x)
    }

    /// Rational solution of `A x = b` as (numerators, common denominator).
    pub fn solve_rational(&self, b: &[Int]) -> Option<(Vec<Int>, Int)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut r: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut y = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let q = &r[p] / BigRational::from_integer(self.h[k][p].clone());
            if !q.is_zero() {
                for (ri, hi) in r.iter_mut().zip(&self.h[k]) {
                    if !hi.is_zero() {
                        *ri -= &q * BigRational::from_integer(hi.clone());
                    }
                }
            }
            y.push(q);
        }
        if !r.iter().all(|x| x.is_zero()) {
            return None;
        }
        let v = self.v.as_ref().expect("solve requires a tracked transform");
        let mut den = Int::one();
        for q in &y {
            den = den.lcm(q.denom());
        }
        let mut x = vec![Int::zero(); self.cols];
        for (k, q) in y.iter().enumerate() {
            let s = q.numer() * (&den / q.denom());
            super::matrix::axpy(&mut x, &s, &v[k]);
        }
        Some((x, den))
    }

    /// Basis of the integer kernel of `A`, in echelon-reduced form.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let v = self.v.as_ref().expect("kernel requires a tracked transform");
        let raw: Vec<Vec<Int>> = v[self.rank()..].to_vec();
        if raw.is_empty() {
            return raw;
        }
        ColumnEchelon::span(self.cols, raw).h
    }
}

fn col_sub(target: &mut [Int], q: &Int, src: &[Int]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Integer solution of `A x = b` plus a kernel basis of `A`.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Result<(Option<Vec<Int>>, Vec<Vec<Int>>)> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows, right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let e = ColumnEchelon::new(a);
    Ok((e.solve(b), e.kernel_basis()))
}

/// Echelon basis of the lattice spanned by `vectors` in `Z^dim`.
pub fn lattice_basis(dim: usize, vectors: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    ColumnEchelon::span(dim, vectors).h
}

/// Incrementally maintained row-echelon basis of a sublattice, for span
/// membership tests while generators are being chosen.
#[derive(Clone, Debug, Default)]
pub struct LatticeBuilder {
    dim: usize,
    rows: Vec<(usize, Vec<Int>)>,
}

impl LatticeBuilder {
    pub fn new(dim: usize) -> Self {
        LatticeBuilder { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn position(&self, c: usize) -> std::result::Result<usize, usize> {
        self.rows.binary_search_by_key(&c, |r| r.0)
    }

    fn reduce(&self, v: &mut [Int]) -> Option<usize> {
        let mut start = 0;
        loop {
            let c = (start..self.dim).find(|&i| !v[i].is_zero())?;
            match self.position(c) {
                Ok(p) => {
                    let row = &self.rows[p].1;
                    let (q, rem) = v[c].div_rem(&row[c]);
                    if !rem.is_zero() {
                        return Some(c);
                    }
                    col_sub(v, &q, row);
                    start = c + 1;
                }
                Err(_) => return Some(c),
            }
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v`; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut w = v.to_vec();
        let mut grew = false;
        loop {
            let Some(c) = self.reduce(&mut w) else { return grew };
            grew = true;
            match self.position(c) {
                Err(p) => {
                    if w[c].is_negative() {
                        for x in w.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows.insert(p, (c, w));
                    return true;
                }
                Ok(p) => {
                    let row = self.rows[p].1.clone();
                    let eg = row[c].extended_gcd(&w[c]);
                    let g = eg.gcd.clone();
                    let new_row: Vec<Int> =
                        row.iter().zip(&w).map(|(r, x)| &eg.x * r + &eg.y * x).collect();
                    let a = &w[c] / &g;
                    let b = &row[c] / &g;
                    let new_w: Vec<Int> = row.iter().zip(&w).map(|(r, x)| &a * r - &b * x).collect();
                    let mut new_row = new_row;
                    if new_row[c].is_negative() {
                        for x in new_row.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[p].1 = new_row;
                    w = new_w;
                }
            }
        }
    }
}
