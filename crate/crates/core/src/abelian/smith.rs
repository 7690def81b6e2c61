use alloc::vec;
use alloc::vec::Vec;

use super::{factorize, CyclicFactor, FgAbelianGroup, FreeRing};

/// Dense integer matrix, row-major. Its cokernel is `Z^rows / image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Panics when the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + k * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + k * self.get(r, src);
            self.set(r, dst, v);
        }
    }
}

/// Diagonal of the Smith normal form (non-negative, each dividing the next),
/// one entry per index `< min(rows, cols)`.
pub fn invariant_factors(matrix: &IntMatrix) -> Vec<i128> {
    let (m, n) = (matrix.rows, matrix.cols);
    let mut a: Vec<Vec<i128>> = (0..m)
        .map(|r| (0..n).map(|c| matrix.get(r, c) as i128).collect())
        .collect();
    let k_max = m.min(n);
    let mut diag = Vec::with_capacity(k_max);

    for k in 0..k_max {
        // smallest nonzero magnitude in the trailing block
        let pivot = (k..m)
            .flat_map(|r| (k..n).map(move |c| (r, c)))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].unsigned_abs());
        let Some((pr, pc)) = pivot else {
            diag.extend(core::iter::repeat_n(0, k_max - k));
            break;
        };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }

        loop {
            let p = a[k][k];
            let mut dirty = false;
            for r in k + 1..m {
                let q = a[r][k] / p;
                if q != 0 {
                    for c in k..n {
                        a[r][c] -= q * a[k][c];
                    }
                }
                dirty |= a[r][k] != 0;
            }
            for c in k + 1..n {
                let q = a[k][c] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(k) {
                        row[c] -= q * row[k];
                    }
                }
                dirty |= a[k][c] != 0;
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (k + 1..m)
                    .flat_map(|r| (k + 1..n).map(move |c| (r, c)))
                    .find(|&(r, c)| a[r][c] % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in k..n {
                            a[k][c] += a[r][c];
                        }
                        continue;
                    }
                }
            }
            // move the new smallest remainder into the pivot slot
            let (br, bc) = (k..m)
                .map(|r| (r, k))
                .chain((k..n).map(|c| (k, c)))
                .filter(|&(r, c)| a[r][c] != 0)
                .min_by_key(|&(r, c)| a[r][c].unsigned_abs())
                .expect("pivot row or column is nonzero");
            a.swap(k, br);
            for row in a.iter_mut() {
                row.swap(k, bc);
            }
        }
        diag.push(a[k][k].abs());
    }
    diag
}

/// The cokernel of `matrix`, viewed as a map `Z^cols -> Z^rows`.
pub fn smith_normal_form(matrix: &IntMatrix) -> FgAbelianGroup {
    let diag = invariant_factors(matrix);
    let zero_diag = diag.iter().filter(|&&d| d == 0).count();
    let free = (matrix.rows - diag.len()) + zero_diag;
    let factors = diag
        .iter()
        .filter(|&&d| d > 1)
        .flat_map(|&d| factorize(d as u64))
        .map(|(p, e)| CyclicFactor::new(p, e).expect("factorize yields prime powers"));
    FgAbelianGroup::from_factors(free as u32, FreeRing::Integers, factors)
}
