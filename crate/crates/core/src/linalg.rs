//! Dense exact linear algebra over `Q(k)`.
//!
//! Elimination is Gauss-Jordan on canonical field elements. Pivots are chosen
//! by the smallest representation size, which keeps intermediate rational
//! functions small in practice.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::kfield::RatK;

pub type Vector = Vec<RatK>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatK>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RatK::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatK::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatK {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatK) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatK] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatK::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatK]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RatK::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &RatK) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &RatK) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[RatK] {
        &self.data
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| m.get(i, c).weight());
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let nv = v * &inv;
                    m.set(r, j, nv);
                }
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    if pv.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &(&f * pv);
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel. Each basis vector has a 1 in one free
    /// column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vector> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![RatK::zero(); self.cols];
            v[free] = RatK::one();
            for (row, &p) in pivots.iter().enumerate() {
                let e = matrix.get(row, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[RatK]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![RatK::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// A linearly independent subset, chosen greedily in order; returns indices.
pub fn independent_indices(vectors: &[Vector]) -> Vec<usize> {
    let Some(len) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let m = Matrix::from_cols(len, vectors);
    m.rref().pivots
}

/// Dimension of the span.
pub fn span_dim(vectors: &[Vector]) -> usize {
    independent_indices(vectors).len()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[RatK]) -> bool {
    if v.iter().all(RatK::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Matrix::from_cols(v.len(), basis).solve(v).is_some()
}

/// Reduced basis (rows of the RREF) of the span.
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let r = Matrix::from_rows(vectors.to_vec()).rref();
    (0..r.pivots.len())
        .map(|i| r.matrix.row(i).to_vec())
        .collect()
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersect(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a[0].len();
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let ns = Matrix::from_cols(len, &cols).nullspace();
    let vs: Vec<Vector> = ns
        .iter()
        .map(|c| {
            let mut acc = vec![RatK::zero(); len];
            for (coef, v) in c[..a.len()].iter().zip(a) {
                if coef.is_zero() {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(v) {
                    *x = &*x + &(coef * y);
                }
            }
            acc
        })
        .collect();
    span_basis(&vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RatK {
        s.parse().unwrap()
    }

    #[test]
    fn rank_and_nullspace_over_qk() {
        let m = Matrix::from_rows(vec![vec![q("1"), q("k")], vec![q("k"), q("k^2")]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(RatK::is_zero));
    }

    #[test]
    fn solve_roundtrip() {
        let m = Matrix::from_rows(vec![vec![q("1"), q("k")], vec![q("1"), q("-1")]]);
        let b = vec![q("1"), q("k+1")];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let singular = Matrix::from_rows(vec![vec![q("1"), q("1")], vec![q("1"), q("1")]]);
        assert!(singular.solve(&[q("0"), q("1")]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![vec![q("1"), q("0"), q("0")], vec![q("0"), q("1"), q("0")]];
        let b = vec![vec![q("0"), q("1"), q("0")], vec![q("0"), q("0"), q("1")]];
        let i = intersect(&a, &b);
        assert_eq!(i.len(), 1);
        assert!(in_span(&i, &[q("0"), q("k"), q("0")]));
    }
}
