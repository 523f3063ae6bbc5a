//! Exact linear algebra over the two-element field.
//!
//! Rows are packed into `u64` words; elimination picks pivots by minimal row
//! population (a cheap fill-control heuristic), ties broken by lowest row
//! index, so every result is bit-reproducible regardless of thread count.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("dimension mismatch: {detail}")]
    DimMismatch { detail: String },
    #[error("maps do not compose to zero; not a chain complex")]
    NotAComplex,
}

#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<u64>>,
}

fn words(cols: usize) -> usize {
    cols.div_ceil(64).max(1)
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, bits: vec![vec![0; words(cols)]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for &(r, c) in entries {
            debug_assert!(r < rows && c < cols);
            m.bits[r][c / 64] ^= 1 << (c % 64);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let mask = 1 << (c % 64);
        if v {
            self.bits[r][c / 64] |= mask;
        } else {
            self.bits[r][c / 64] &= !mask;
        }
    }

    /// Sorted (row, col) positions of nonzero entries.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for (w, &word) in self.bits[r].iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    out.push((r, w * 64 + rest.trailing_zeros() as usize));
                    rest &= rest - 1;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|row| row.iter().all(|&w| w == 0))
    }

    /// One line per row: sorted column indices of nonzero entries,
    /// space-separated. Cross-validation format for external oracles.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut per_row = vec![Vec::new(); self.rows];
        for (r, c) in self.entries() {
            per_row[r].push(c.to_string());
        }
        for row in per_row {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = Self::zero(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    /// self ∘ other (apply `other` first): (r×k) · (k×c) → (r×c).
    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix, F2Error> {
        if self.cols != other.rows {
            return Err(F2Error::DimMismatch {
                detail: format!("{}x{} · {}x{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.bits[k].clone();
                    for (x, y) in out.bits[r].iter_mut().zip(&src) {
                        *x ^= y;
                    }
                }
            }
        }
        Ok(out)
    }

    fn popcount(row: &[u64]) -> u32 {
        row.iter().map(|w| w.count_ones()).sum()
    }

    /// Forward elimination in place; returns pivot (row, col) pairs.
    /// Pivot choice: among candidate rows, minimal popcount, then lowest index.
    fn eliminate(bits: &mut [Vec<u64>], cols: usize) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            let (w, b) = (c / 64, c % 64);
            let cand = (next..bits.len())
                .filter(|&r| bits[r][w] >> b & 1 == 1)
                .min_by_key(|&r| (Self::popcount(&bits[r]), r));
            let Some(p) = cand else { continue };
            bits.swap(next, p);
            let pivot = bits[next].clone();
            for (r, row) in bits.iter_mut().enumerate() {
                if r != next && row[w] >> b & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            pivots.push((next, c));
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut bits = self.bits.clone();
        Self::eliminate(&mut bits, self.cols).len()
    }

    /// Solve self · x = b for x, with b given as the sorted support of a
    /// row-indexed vector; returns the support of one solution, or None.
    /// Any returned solution is re-multiplied and checked against b.
    pub fn solve(&self, b: &[usize]) -> Result<Option<Vec<usize>>, F2Error> {
        if let Some(&bad) = b.iter().find(|&&r| r >= self.rows) {
            return Err(F2Error::DimMismatch {
                detail: format!("rhs index {bad} out of range for {} rows", self.rows),
            });
        }
        // Augment with b as an extra column and eliminate.
        let aug_cols = self.cols + 1;
        let mut bits: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut row = self.bits[r].clone();
                row.resize(words(aug_cols), 0);
                if b.binary_search(&r).is_ok() || b.contains(&r) {
                    row[self.cols / 64] |= 1 << (self.cols % 64);
                }
                row
            })
            .collect();
        let pivots = Self::eliminate(&mut bits, self.cols);
        // Inconsistent iff some remaining row is 0 = 1.
        let (aw, ab) = (self.cols / 64, self.cols % 64);
        for (r, row) in bits.iter().enumerate() {
            let zero_lhs = row[..aw].iter().all(|&w| w == 0) && row[aw] & ((1 << ab) - 1) == 0;
            let one_rhs = row[aw] >> ab & 1 == 1;
            if zero_lhs && one_rhs && r >= pivots.len() {
                return Ok(None);
            }
        }
        let mut x: Vec<usize> = pivots
            .iter()
            .filter(|&&(r, _)| bits[r][aw] >> ab & 1 == 1)
            .map(|&(_, c)| c)
            .collect();
        x.sort_unstable();
        // Verify A·x = b.
        let mut check = vec![0u64; words(self.rows)];
        for &c in &x {
            for r in 0..self.rows {
                if self.get(r, c) {
                    check[r / 64] ^= 1 << (r % 64);
                }
            }
        }
        let mut want = vec![0u64; words(self.rows)];
        for &r in b {
            want[r / 64] ^= 1 << (r % 64);
        }
        debug_assert_eq!(check, want, "solve verification failed");
        Ok(Some(x))
    }
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F2Matrix({}x{}, {} entries)", self.rows, self.cols, self.entries().len())
    }
}

/// dim ker(d_out) − rank(d_in) for consecutive maps C_prev →d_in→ C →d_out→ C_next,
/// where dim C = d_out.cols = d_in.rows.
pub fn homology_dims(d_in: &F2Matrix, d_out: &F2Matrix) -> Result<usize, F2Error> {
    if d_in.rows() != d_out.cols() {
        return Err(F2Error::DimMismatch {
            detail: format!("d_in is {}x{}, d_out is {}x{}", d_in.rows, d_in.cols, d_out.rows, d_out.cols),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(F2Error::NotAComplex);
    }
    Ok(d_out.cols() - d_out.rank() - d_in.rank())
}
