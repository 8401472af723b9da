//! Fixtures shared by the benchmarks.

use amitsur::intlat::IntMatrix;

/// A dense `n × n` integer matrix with small, deterministic, non-degenerate entries.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5 + if i == j { 3 } else { 0 }).collect())
        .collect();
    IntMatrix::from_i64(&rows)
}

pub const CYCLIC_EXAMPLES: [&str; 3] = ["cyclic:m=2,b=2", "cyclic:m=4,b=2", "cyclic:m=6,b=2"];
