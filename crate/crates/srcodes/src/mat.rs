//! Small dense matrices over GF(4): just enough linear algebra for
//! generator/parity-check handling (row reduction, vector products).

use crate::gf::Gf4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Gf4>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Gf4::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<Gf4>]) -> Mat {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Mat {
            rows: rows.len(),
            cols: ncols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Gf4::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> Gf4 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Gf4) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Gf4] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Gf4]> {
        self.data.chunks_exact(self.cols.max(1))
    }

    /// In-place reduced row-echelon form. Returns the pivot columns; zero
    /// rows are dropped, so `rows()` equals the rank afterwards.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = self.at(r, j) * inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c);
                    for j in c..self.cols {
                        let v = self.at(i, j) + f * self.at(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * self.cols);
        self.rows = r;
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (va, vb) = (self.at(a, j), self.at(b, j));
            self.set(a, j, vb);
            self.set(b, j, va);
        }
    }

    /// Row vector times matrix: `v * M` with `|v| = rows`.
    pub fn left_mul(&self, v: &[Gf4]) -> Vec<Gf4> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Gf4::ZERO; self.cols];
        for (coef, row) in v.iter().zip(self.row_iter()) {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o += *coef * x;
            }
        }
        out
    }

    /// Matrix times column vector: `M * y` with `|y| = cols`.
    pub fn right_mul(&self, y: &[Gf4]) -> Vec<Gf4> {
        assert_eq!(y.len(), self.cols);
        self.row_iter()
            .map(|row| {
                row.iter()
                    .zip(y)
                    .fold(Gf4::ZERO, |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }
}
