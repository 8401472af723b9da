use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let r = snf_core(a, true, false, true);
    let n = a.rows().min(a.cols());
    let mut d = IntMatrix::zeros(a.rows(), a.cols());
    for i in 0..n {
        d[(i, i)] = r.diag[i].clone();
    }
    SmithDecomposition { u: r.u.unwrap(), v: r.v.unwrap(), d }
}

pub(crate) struct SnfParts {
    /// Diagonal of length `rows` (entries past `min(rows, cols)` are zero).
    pub diag: Vec<Int>,
    pub u: Option<IntMatrix>,
    pub uinv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::zero(); n];
            r[i] = Int::one();
            r
        })
        .collect()
}

fn to_matrix(rows: Vec<Vec<Int>>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows_with_cols(rows, cols).expect("rectangular")
}

/// Deterministic Smith reduction: smallest-magnitude pivot, ties broken by
/// lowest row then lowest column.
pub(crate) fn snf_core(a: &IntMatrix, track_u: bool, track_uinv: bool, track_v: bool) -> SnfParts {
    let m = a.rows();
    let n = a.cols();
    let mut x: Vec<Vec<Int>> = a.row_vecs();
    let mut u = track_u.then(|| identity_rows(m));
    // Uinv stored as rows as well; column operations act across rows.
    let mut uinv = track_uinv.then(|| identity_rows(m));
    // V stored transposed (rows of Vt are columns of V).
    let mut vt = track_v.then(|| identity_rows(n));

    // row_i += c * row_t
    let row_add = |x: &mut Vec<Vec<Int>>,
                   u: &mut Option<Vec<Vec<Int>>>,
                   uinv: &mut Option<Vec<Vec<Int>>>,
                   i: usize,
                   t: usize,
                   c: &Int| {
        if c.is_zero() {
            return;
        }
        let src = x[t].clone();
        for (a, b) in x[i].iter_mut().zip(&src) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
        if let Some(u) = u.as_mut() {
            let src = u[t].clone();
            for (a, b) in u[i].iter_mut().zip(&src) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        if let Some(w) = uinv.as_mut() {
            // inverse op on columns: col_t -= c * col_i
            for row in w.iter_mut() {
                if !row[i].is_zero() {
                    let d = c * &row[i];
                    row[t] -= d;
                }
            }
        }
    };
    // col_j += c * col_t
    let col_add = |x: &mut Vec<Vec<Int>>, vt: &mut Option<Vec<Vec<Int>>>, j: usize, t: usize, c: &Int| {
        if c.is_zero() {
            return;
        }
        for row in x.iter_mut() {
            if !row[t].is_zero() {
                let d = c * &row[t];
                row[j] += d;
            }
        }
        if let Some(vt) = vt.as_mut() {
            let src = vt[t].clone();
            for (a, b) in vt[j].iter_mut().zip(&src) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
    };

    let mut t = 0usize;
    while t < m.min(n) {
        // global pivot choice
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if x[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if x[i][j].abs() < x[bi][bj].abs() => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut x, &mut u, &mut uinv, t, pi);
        swap_cols(&mut x, &mut vt, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if x[i][t].is_zero() {
                    continue;
                }
                let q = x[i][t].div_floor(&x[t][t]);
                row_add(&mut x, &mut u, &mut uinv, i, t, &-q);
                if !x[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if x[t][j].is_zero() {
                    continue;
                }
                let q = x[t][j].div_floor(&x[t][t]);
                col_add(&mut x, &mut vt, j, t, &-q);
                if !x[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row t / column t to the pivot
                let mut best: Option<(usize, usize)> = None;
                let consider = |i: usize, j: usize, x: &Vec<Vec<Int>>, best: &mut Option<(usize, usize)>| {
                    if x[i][j].is_zero() {
                        return;
                    }
                    match *best {
                        None => *best = Some((i, j)),
                        Some((bi, bj)) if x[i][j].abs() < x[bi][bj].abs() => *best = Some((i, j)),
                        _ => {}
                    }
                };
                for i in t..m {
                    consider(i, t, &x, &mut best);
                }
                for j in t + 1..n {
                    consider(t, j, &x, &mut best);
                }
                let (bi, bj) = best.expect("nonzero pivot");
                swap_rows(&mut x, &mut u, &mut uinv, t, bi);
                swap_cols(&mut x, &mut vt, t, bj);
                continue;
            }
            // divisibility of the remaining block
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !x[i][j].is_zero() && !x[i][j].is_multiple_of(&x[t][t]) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => row_add(&mut x, &mut u, &mut uinv, t, i, &Int::one()),
                None => break,
            }
        }
        if x[t][t].is_negative() {
            for v in x[t].iter_mut() {
                *v = -&*v;
            }
            if let Some(u) = u.as_mut() {
                for v in u[t].iter_mut() {
                    *v = -&*v;
                }
            }
            if let Some(w) = uinv.as_mut() {
                for row in w.iter_mut() {
                    row[t] = -&row[t];
                }
            }
        }
        t += 1;
    }
    let diag = (0..m).map(|i| if i < n { x[i][i].clone() } else { Int::zero() }).collect();
    SnfParts {
        diag,
        u: u.map(|r| to_matrix(r, m)),
        uinv: uinv.map(|r| to_matrix(r, m)),
        v: vt.map(|r| to_matrix(r, n).transpose()),
    }
}

fn swap_rows(
    x: &mut [Vec<Int>],
    u: &mut Option<Vec<Vec<Int>>>,
    uinv: &mut Option<Vec<Vec<Int>>>,
    a: usize,
    b: usize,
) {
    if a == b {
        return;
    }
    x.swap(a, b);
    if let Some(u) = u.as_mut() {
        u.swap(a, b);
    }
    if let Some(w) = uinv.as_mut() {
        for row in w.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn swap_cols(x: &mut [Vec<Int>], vt: &mut Option<Vec<Vec<Int>>>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in x.iter_mut() {
        row.swap(a, b);
    }
    if let Some(vt) = vt.as_mut() {
        vt.swap(a, b);
    }
}
