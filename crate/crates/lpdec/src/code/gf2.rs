//! Dense GF(2) linear algebra on word-packed rows.
//!
//! Only what codeword sampling and rate computation need: reduction to
//! reduced row echelon form, rank, and a null-space basis.

/// A dense binary matrix, each row packed into `u64` words.
pub struct BitMatrix {
    rows: Vec<Vec<u64>>,
    cols: usize,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows: vec![vec![0u64; words]; rows],
            cols,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(c < self.cols);
        let (w, b) = (c / 64, c % 64);
        if v {
            self.rows[r][w] |= 1 << b;
        } else {
            self.rows[r][w] &= !(1 << b);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        let (w, b) = (c / 64, c % 64);
        (self.rows[r][w] >> b) & 1 == 1
    }

    /// Reduces to reduced row echelon form in place, pivoting by ascending
    /// column order. Returns the pivot column of each pivot row.
    pub fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (next_row..self.rows.len()).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.rows.swap(next_row, pivot_row);
            for r in 0..self.rows.len() {
                if r != next_row && self.get(r, col) {
                    let (src, dst) = if r < next_row {
                        let (lo, hi) = self.rows.split_at_mut(next_row);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = self.rows.split_at_mut(r);
                        (&lo[next_row], &mut hi[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows.len() {
                break;
            }
        }
        pivots
    }
}

/// Rank of a binary matrix given as per-row column index lists.
pub fn rank(rows: &[Vec<usize>], cols: usize) -> usize {
    from_rows(rows, cols).reduce().len()
}

/// Basis of the right null space `{x : Mx = 0}` of a binary matrix given as
/// per-row column index lists. Each basis vector is a dense 0/1 vector.
pub fn null_space_basis(rows: &[Vec<usize>], cols: usize) -> Vec<Vec<u8>> {
    let mut m = from_rows(rows, cols);
    let pivots = m.reduce();
    let is_pivot = {
        let mut mark = vec![false; cols];
        for &c in &pivots {
            mark[c] = true;
        }
        mark
    };
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u8; cols];
        v[free] = 1;
        // In RREF, pivot row r reads x[pivots[r]] = sum of x over its free columns.
        for (r, &pc) in pivots.iter().enumerate() {
            if m.get(r, free) {
                v[pc] = 1;
            }
        }
        basis.push(v);
    }
    basis
}

fn from_rows(rows: &[Vec<usize>], cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zero(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            m.set(r, c, true);
        }
    }
    m
}
