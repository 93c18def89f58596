//! Dense matrices and univariate polynomials over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.q()
        )?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; an empty row list gives a `0 x cols` matrix.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|e| !field.contains(**e)) {
                return Err(Error::InvalidElement {
                    enc: bad.0,
                    q: field.q(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from encodings.
    pub fn from_encs(field: &Field, rows: &[&[u32]]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&e| Elem(e)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Elem::ZERO;
                for i in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(r, i), other.get(i, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// `G * G^T`.
    pub fn gram(&self) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = f.dot(self.row(i), self.row(j));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(xr, g));
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Gauss-Jordan elimination, first nonzero entry as pivot.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(row, c, f.mul(inv, m.get(row, c)));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Matrix {
            field: self.field.clone(),
            rows: rank,
            cols: self.cols,
            data: matrix.data[..rank * self.cols].to_vec(),
        }
    }

    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    /// Basis (as rows) of `{x : M x^T = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elem::ONE);
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(i, pc, f.neg(matrix.get(r, fc)));
            }
        }
        out
    }

    /// Generator of the dual code; requires full row rank.
    pub fn dual_generator(&self) -> Result<Matrix> {
        if self.rank() != self.rows {
            return Err(Error::RankDeficient);
        }
        Ok(self.nullspace())
    }

    /// Whether `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let single = Matrix::from_rows(&self.field, self.cols, vec![v.to_vec()])?;
        Ok(self.stack(&single)?.rank() == self.rank())
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in col + 1..m.rows {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

/// A univariate polynomial, constant term first, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<u32> = self.coeffs.iter().map(|e| e.0).collect();
        write!(f, "Poly{c:?}")
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_encs(field: &Field, encs: &[u32]) -> Poly {
        Poly::new(field, encs.iter().map(|&e| Elem(e)).collect())
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear_root(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// `self(a x + b)`.
    pub fn compose_linear(&self, a: Elem, b: Elem) -> Poly {
        let f = &self.field;
        let lin = Poly::new(f, vec![b, a]);
        self.coeffs.iter().rev().fold(Poly::zero(f), |acc, &c| {
            acc.mul(&lin).add(&Poly::constant(f, c))
        })
    }

    /// Quotient and remainder of division by `x - a`.
    pub fn div_linear(&self, a: Elem) -> (Poly, Elem) {
        let f = &self.field;
        if self.is_zero() {
            return (Poly::zero(f), Elem::ZERO);
        }
        let n = self.coeffs.len();
        let mut q = vec![Elem::ZERO; n - 1];
        let mut carry = Elem::ZERO;
        for i in (0..n).rev() {
            let v = f.add(self.coeffs[i], f.mul(carry, a));
            if i == 0 {
                return (Poly::new(f, q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(field: &Field, points: &[(Elem, Elem)]) -> Result<Poly> {
        if points.is_empty() {
            return Err(Error::OutOfRange(
                "interpolation needs at least one point".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for &(x, _) in points {
            if !seen.insert(x) {
                return Err(Error::DuplicatePoint(x.0));
            }
        }
        let f = field;
        let master = points.iter().fold(Poly::one(f), |acc, &(x, _)| {
            acc.mul(&Poly::linear_root(f, x))
        });
        let mut out = Poly::zero(f);
        for &(x, y) in points {
            if y.is_zero() {
                continue;
            }
            let (basis, _) = master.div_linear(x);
            let denom = basis.eval(x);
            out = out.add(&basis.scale(f.div(y, denom)?));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(5);
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);

        let z = Matrix::zeros(&f, 2, 4);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().matrix, z);

        let m = Matrix::from_encs(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        let f3 = gf(3);
        assert_eq!(Matrix::identity(&f3, 4).nullspace().rows(), 0);
        assert_eq!(Matrix::zeros(&f3, 2, 5).nullspace().rows(), 5);
        let ones = Matrix::from_encs(&f3, &[&[1, 1, 1]]).unwrap();
        let ns = ones.nullspace();
        assert_eq!(ns.rows(), 2);
        for r in 0..ns.rows() {
            assert_eq!(f3.dot(ns.row(r), ones.row(0)), Elem::ZERO);
        }
    }

    #[test]
    fn dual_generator_examples() {
        let f5 = gf(5);
        let g = Matrix::from_encs(&f5, &[&[1, 1]]).unwrap();
        let h = g.dual_generator().unwrap();
        assert!(h.same_row_space(&Matrix::from_encs(&f5, &[&[1, 4]]).unwrap()));
        assert_eq!(Matrix::identity(&f5, 3).dual_generator().unwrap().rows(), 0);
        let deficient = Matrix::from_encs(&f5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(
            deficient.dual_generator().unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn poly_examples() {
        let f7 = gf(7);
        assert_eq!(Poly::zero(&f7).eval(Elem(3)), Elem::ZERO);
        assert_eq!(Poly::monomial(&f7, Elem::ONE, 2).eval(Elem(3)), Elem(2));
        for q in [5, 9, 16] {
            let f = gf(q);
            let prod =
                Poly::linear_root(&f, Elem::ONE).mul(&Poly::linear_root(&f, f.neg(Elem::ONE)));
            let expected = Poly::new(&f, vec![f.neg(Elem::ONE), Elem::ZERO, Elem::ONE]);
            assert_eq!(prod, expected);
        }
        assert_eq!(Poly::zero(&f7).degree(), None);
        assert_eq!(Poly::from_encs(&f7, &[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn compose_linear_matches_evaluation() {
        let f = gf(13);
        let p = Poly::from_encs(&f, &[3, 0, 5, 1]);
        let c = p.compose_linear(Elem(2), Elem(7));
        for x in f.elements() {
            let inner = f.add(f.mul(Elem(2), x), Elem(7));
            assert_eq!(c.eval(x), p.eval(inner));
        }
    }

    #[test]
    fn interpolation_examples() {
        let f = gf(13);
        let single = Poly::interpolate(&f, &[(Elem(4), Elem(9))]).unwrap();
        assert_eq!(single, Poly::constant(&f, Elem(9)));
        // y = 3x + 2
        let line: Vec<(Elem, Elem)> = [1u32, 5, 8]
            .iter()
            .map(|&x| (Elem(x), Elem((3 * x + 2) % 13)))
            .collect();
        let p = Poly::interpolate(&f, &line).unwrap();
        assert_eq!(p, Poly::from_encs(&f, &[2, 3]));
        assert_eq!(
            Poly::interpolate(&f, &[(Elem(1), Elem(1)), (Elem(1), Elem(2))]).unwrap_err(),
            Error::DuplicatePoint(1)
        );
    }

    #[test]
    fn determinant_small() {
        let f = gf(7);
        let m = Matrix::from_encs(&f, &[&[1, 2], &[3, 4]]).unwrap();
        // 4 - 6 = -2 = 5 mod 7
        assert_eq!(m.determinant().unwrap(), Elem(5));
        let s = Matrix::from_encs(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.determinant().unwrap(), Elem::ZERO);
    }
}
