use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fingroup::FinGroup;
use crate::intlat::{Int, IntMatrix};

/// Matrix over the integral group ring; each entry is a coefficient vector
/// indexed by group elements.
///
/// A differential `d(e_j) = Σ_i D_ij e_i` acts on the left: `d(g e_j) = Σ_i g D_ij e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    order: usize,
    entries: Vec<Vec<Int>>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        GroupRingMatrix { rows, cols, order, entries: vec![vec![Int::zero(); order]; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &[Int] {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Vec<Int> {
        &mut self.entries[i * self.cols + j]
    }

    pub fn add_term(&mut self, i: usize, j: usize, g: usize, c: &Int) {
        self.entries[i * self.cols + j][g] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|c| c.is_zero()))
    }

    /// Integer matrix on the Z-basis `g·e_a` (coordinate `a·|G| + g`).
    pub fn expand(&self, group: &FinGroup) -> IntMatrix {
        let n = self.order;
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                for (h, c) in e.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for g in 0..n {
                        out[(i * n + group.mul(g, h), j * n + g)] += c;
                    }
                }
            }
        }
        out
    }

    /// Column j is the image of `e_j`, given in expanded coordinates.
    pub fn from_expanded_columns(order: usize, rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), order);
        for (j, x) in columns.iter().enumerate() {
            for i in 0..rows {
                for g in 0..order {
                    let c = &x[i * order + g];
                    if !c.is_zero() {
                        m.entries[i * m.cols + j][g] = c.clone();
                    }
                }
            }
        }
        m
    }

    /// Image of `e_j` in expanded coordinates.
    pub fn expanded_column(&self, j: usize) -> Vec<Int> {
        let n = self.order;
        let mut x = vec![Int::zero(); self.rows * n];
        for i in 0..self.rows {
            for (g, c) in self.get(i, j).iter().enumerate() {
                x[i * n + g] = c.clone();
            }
        }
        x
    }

    /// Applies `g ↦ g^{-1}` to every entry.
    pub fn involution(&self, group: &FinGroup) -> Self {
        let mut m = Self::zeros(self.rows, self.cols, self.order);
        for (k, e) in self.entries.iter().enumerate() {
            for (g, c) in e.iter().enumerate() {
                if !c.is_zero() {
                    m.entries[k][group.inv(g)] = c.clone();
                }
            }
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, order: usize, entries: Vec<Vec<Int>>) -> Result<Self> {
        if entries.len() != rows * cols || entries.iter().any(|e| e.len() != order) {
            return Err(Error::Dimension("group ring matrix entries".into()));
        }
        Ok(GroupRingMatrix { rows, cols, order, entries })
    }
}

/// Acts by `k` on expanded coordinates of a free module of rank `r`.
pub fn act_expanded(group: &FinGroup, k: usize, x: &[Int]) -> Vec<Int> {
    let n = group.order();
    let mut out = vec![Int::zero(); x.len()];
    for (idx, c) in x.iter().enumerate() {
        if !c.is_zero() {
            let (a, g) = (idx / n, idx % n);
            out[a * n + group.mul(k, g)] = c.clone();
        }
    }
    out
}
