//! Abelianization via Smith normal form of the exponent-sum matrix.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::presentation::Presentation;

/// Integer matrix with one row per relator and one column per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    /// Exponent-sum matrix of a presentation.
    pub fn exponent_sums(p: &Presentation) -> Self {
        let rows: Vec<Vec<i64>> = p
            .relators()
            .iter()
            .map(|r| r.exponent_sums(p.ngens()))
            .collect();
        IntMatrix::from_rows(&rows, p.ngens())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            *self.at(dst, j) -= v;
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            *self.at(i, dst) -= v;
        }
    }

    /// Drops duplicate rows; the row lattice is unchanged.
    fn dedup_rows(&self) -> IntMatrix {
        let mut seen = std::collections::HashSet::new();
        let mut data = Vec::new();
        let mut rows = 0;
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            if seen.insert(row.to_vec()) {
                data.extend_from_slice(row);
                rows += 1;
            }
        }
        IntMatrix {
            rows,
            cols: self.cols,
            data,
        }
    }

    /// Diagonal of the Smith normal form: nonnegative entries `d_1 | d_2 | ...`
    /// of length `min(rows, cols)`.
    pub fn smith_diagonal(&self) -> Vec<BigUint> {
        let mut m = self.dedup_rows();
        let size = m.rows.min(m.cols);
        let mut diag = Vec::with_capacity(size);
        for t in 0..size {
            // pivot: smallest nonzero absolute value in the trailing block
            let Some((pi, pj)) = m.min_abs_entry(t) else {
                diag.extend(std::iter::repeat_n(BigUint::zero(), size - t));
                break;
            };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if m.get(i, t).is_zero() {
                        continue;
                    }
                    let q = m.get(i, t).div_floor(m.get(t, t));
                    m.row_sub(i, t, &q);
                    if !m.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..m.cols {
                    if m.get(t, j).is_zero() {
                        continue;
                    }
                    let q = m.get(t, j).div_floor(m.get(t, t));
                    m.col_sub(j, t, &q);
                    if !m.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    // divisibility: fold any offending row into the pivot row
                    let pivot = m.get(t, t).clone();
                    let bad = (t + 1..m.rows)
                        .find(|&i| (t + 1..m.cols).any(|j| !(m.get(i, j) % &pivot).is_zero()));
                    match bad {
                        Some(i) => {
                            let minus_one = BigInt::from(-1);
                            m.row_sub(t, i, &minus_one);
                        }
                        None => break,
                    }
                }
                // move the smallest entry of row t / column t to the pivot
                let mut best = (t, t);
                for i in t..m.rows {
                    if !m.get(i, t).is_zero() && m.get(i, t).abs() < m.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..m.cols {
                    if !m.get(t, j).is_zero() && m.get(t, j).abs() < m.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                m.swap_cols(t, best.1);
            }
            diag.push(m.get(t, t).abs().to_biguint().expect("nonnegative"));
        }
        diag
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Invariant factors of the abelianized group: nontrivial torsion
/// coefficients in divisibility order, then one `0` per free factor.
pub fn abelianization_invariants(p: &Presentation) -> Vec<BigUint> {
    let m = IntMatrix::exponent_sums(p);
    let diag = m.smith_diagonal();
    let mut torsion: Vec<BigUint> = diag
        .iter()
        .filter(|d| !d.is_zero() && **d != BigUint::from(1u32))
        .cloned()
        .collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    torsion.extend(std::iter::repeat_n(BigUint::zero(), p.ngens() - rank));
    torsion
}
