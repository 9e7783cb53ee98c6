use std::ops::Mul;

use super::ratfn::ScalarFn;
use crate::error::{Error, Result};

/// Dense rectangular matrix of [`ScalarFn`] entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ScalarFn>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            entries: vec![ScalarFn::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = ScalarMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, ScalarFn::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarFn>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(ScalarMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &ScalarFn {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ScalarFn) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[ScalarFn] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        *self == ScalarMatrix::identity(self.rows)
    }

    /// Entrywise partial derivative with respect to `z^index`.
    pub fn partial(&self, index: usize) -> ScalarMatrix {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.partial(index)).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ScalarMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = ScalarFn::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> ScalarMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        ScalarMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self) -> Result<ScalarFn> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> ScalarFn {
        match self.rows {
            0 => ScalarFn::one(),
            1 => self.entries[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = ScalarFn::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_unchecked();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Classical adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Result<ScalarMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ScalarMatrix::zeros(0, 0));
        }
        if n == 1 {
            return Ok(ScalarMatrix::identity(1));
        }
        let mut adj = ScalarMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(i, j).det_unchecked();
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                adj.set(j, i, cof);
            }
        }
        Ok(adj)
    }

    /// `adj(M) / det(M)`; fails with `SingularMatrix` when the determinant
    /// is the zero function.
    pub fn inverse(&self) -> Result<ScalarMatrix> {
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv_det = det.recip()?;
        let adj = self.adjugate()?;
        Ok(ScalarMatrix {
            rows: adj.rows,
            cols: adj.cols,
            entries: adj.entries.iter().map(|e| e * &inv_det).collect(),
        })
    }
}

impl Mul for &ScalarMatrix {
    type Output = ScalarMatrix;

    /// Panics on shape mismatch; use [`ScalarMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: &ScalarMatrix) -> ScalarMatrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> ScalarFn {
        ScalarFn::coord(i)
    }

    #[test]
    fn identity_is_its_own_inverse() {
        let id = ScalarMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn one_by_one_inverse() {
        let m = ScalarMatrix::from_rows(vec![vec![z(0)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &z(0).recip().unwrap());
    }

    #[test]
    fn unipotent_two_by_two() {
        let m = ScalarMatrix::from_rows(vec![
            vec![ScalarFn::one(), z(0)],
            vec![ScalarFn::zero(), ScalarFn::one()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let expected = ScalarMatrix::from_rows(vec![
            vec![ScalarFn::one(), -z(0)],
            vec![ScalarFn::zero(), ScalarFn::one()],
        ])
        .unwrap();
        assert_eq!(inv, expected);
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = ScalarMatrix::from_rows(vec![vec![z(0), z(1)], vec![&z(0) * &z(1), &z(1) * &z(1)]])
            .unwrap();
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn three_by_three_rational_inverse() {
        let one = ScalarFn::one();
        let m = ScalarMatrix::from_rows(vec![
            vec![z(0), one.clone(), ScalarFn::zero()],
            vec![ScalarFn::integer(2), z(1), one.clone()],
            vec![one.clone(), ScalarFn::zero(), &z(0) + &z(1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }
}
