//! Dense linear algebra over GF(2^m): row reduction, rank, kernels and a
//! factor-once solver.

use crate::gfield::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&row);
        }
        m
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, field: &Field, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += field.mul(a, rhs[(k, j)]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &x)| acc + field.mul(a, x))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, field: &Field, r: usize, s: Elem) {
        for j in 0..self.cols {
            let v = self[(r, j)];
            self[(r, j)] = field.mul(v, s);
        }
    }

    /// row[dst] += s * row[src]
    fn add_row(&mut self, field: &Field, dst: usize, src: usize, s: Elem) {
        for j in 0..self.cols {
            let v = field.mul(self[(src, j)], s);
            self[(dst, j)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form of `m`, with the row operations recorded in
/// `transform` so that `transform * m == reduced`.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub reduced: Matrix,
    pub transform: Matrix,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

impl RowReduction {
    pub fn new(field: &Field, m: &Matrix) -> RowReduction {
        let mut reduced = m.clone();
        let mut transform = Matrix::identity(m.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !reduced[(i, c)].is_zero()) else {
                continue;
            };
            reduced.swap_rows(r, p);
            transform.swap_rows(r, p);
            let s = field.inv_unit(reduced[(r, c)]);
            reduced.scale_row(field, r, s);
            transform.scale_row(field, r, s);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = reduced[(i, c)];
                if !f.is_zero() {
                    reduced.add_row(field, i, r, f);
                    transform.add_row(field, i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A solution of `m x = rhs` with every free variable set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, field: &Field, rhs: &[Elem]) -> Option<Vec<Elem>> {
        let t = self.transform.mul_vec(field, rhs);
        if t[self.rank()..].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.reduced.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = t[r];
        }
        Some(x)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let cols = self.reduced.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Elem::ZERO; cols];
                v[f] = Elem::ONE;
                for (r, &c) in self.pivots.iter().enumerate() {
                    // characteristic 2: -x = x
                    v[c] = self.reduced[(r, f)];
                }
                v
            })
            .collect()
    }
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    RowReduction::new(field, m).rank()
}
