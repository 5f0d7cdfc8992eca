//! Exact dense linear algebra over any [`FieldElement`] field: rank,
//! nullspace, determinant, products.
//!
//! Everything here is dense elimination. The configurations handled by this
//! crate stay below ~60 points and monomial bases below ~70 columns, so dense
//! exact elimination is fast and easy to audit. Nullspace bases are returned
//! in reduced echelon form so downstream form spaces are byte-reproducible.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(
        rows: usize,
        cols: usize,
        field: Field,
        entries: Vec<FieldElement>,
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::Shape("mixed fields in matrix".into()));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, field, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.field(), self.field, "field mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::Shape("stack shape mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix::new(self.rows + other.rows, self.cols, self.field, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Shape("product shape mismatch".into()));
        }
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form plus the pivot column list.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inverse().expect("pivot is nonzero");
            for cc in c..m.cols {
                let v = m.at(r, cc).mul(&inv);
                m.set(r, cc, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for cc in c..m.cols {
                        let v = m.at(i, cc).sub(&f.mul(m.at(r, cc)));
                        m.set(i, cc, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row rank by pivoted exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, size cols - rank, in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.at(ri, fc).neg();
            }
            basis.push(v);
        }
        echelonize(self.field, basis)
    }

    /// Unique exact solution of self * x = rhs; None when the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, rhs: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if rhs.len() != self.rows {
            return None;
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if pivots.len() != self.cols {
            return None; // underdetermined
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rref.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact determinant via Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = self.field.one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return Ok(self.field.zero());
                };
                m.swap_rows(k, pr);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j).mul(m.at(k, k)).sub(&m.at(i, k).mul(m.at(k, j)));
                    // exact by the Bareiss identity
                    let v = num.div(&prev).expect("Bareiss divisor is nonzero");
                    m.set(i, j, v);
                }
                m.set(i, k, self.field.zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }
}

/// Puts a list of row vectors into reduced echelon form, dropping zero rows.
pub fn echelonize(field: Field, rows: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    if rows.is_empty() {
        return rows;
    }
    let m = Matrix::from_rows(field, rows).expect("echelonize input is rectangular");
    let (rref, pivots) = m.rref();
    (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RandomSource;

    fn qmat(rows: Vec<Vec<i64>>) -> Matrix {
        let field = Field::Q;
        Matrix::from_rows(
            field,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn cofactor_det(m: &Matrix) -> FieldElement {
        let n = m.rows();
        if n == 0 {
            return m.field().one();
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = m.field().zero();
        for c in 0..n {
            let mut sub = Vec::new();
            for r in 1..n {
                let mut row = Vec::new();
                for cc in 0..n {
                    if cc != c {
                        row.push(m.at(r, cc).clone());
                    }
                }
                sub.push(row);
            }
            let minor = cofactor_det(&Matrix::from_rows(m.field(), sub).unwrap());
            let term = m.at(0, c).mul(&minor);
            acc = if c % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3, Field::Q).rank(), 3);
        assert_eq!(Matrix::zero(2, 5, Field::Q).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(4, Field::Q).nullspace().is_empty());
        let m = qmat(vec![vec![1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Field::Q.one(), Field::Q.one()]);
    }

    #[test]
    fn det_examples() {
        assert!(Matrix::identity(5, Field::Q).det().unwrap().is_one());
        let singular = qmat(vec![vec![2, 4], vec![1, 2]]);
        assert!(singular.det().unwrap().is_zero());
        assert!(qmat(vec![vec![1, 2], vec![3, 4]]).rank() == 2);
        assert!(Matrix::zero(2, 3, Field::Q).det().is_err());
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let field = Field::Q;
        let mut rs = RandomSource::with_bound(5, 9);
        for _ in 0..20 {
            let entries = rs.sample(&field, 25).unwrap();
            let m = Matrix::new(5, 5, field, entries).unwrap();
            assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn det_multiplicative_and_rank_transpose() {
        for field in [Field::Q, Field::prime(101).unwrap()] {
            let mut rs = RandomSource::with_bound(17, 7);
            for _ in 0..25 {
                let a = Matrix::new(4, 4, field, rs.sample(&field, 16).unwrap()).unwrap();
                let b = Matrix::new(4, 4, field, rs.sample(&field, 16).unwrap()).unwrap();
                assert_eq!(
                    a.mul(&b).unwrap().det().unwrap(),
                    a.det().unwrap().mul(&b.det().unwrap())
                );
                let r = Matrix::new(3, 6, field, rs.sample(&field, 18).unwrap()).unwrap();
                assert_eq!(r.rank(), r.transpose().rank());
            }
        }
    }

    #[test]
    fn nullspace_vectors_are_exact_kernel_members() {
        let field = Field::Q;
        let mut rs = RandomSource::with_bound(3, 20);
        for _ in 0..25 {
            let m = Matrix::new(3, 7, field, rs.sample(&field, 21).unwrap()).unwrap();
            let ns = m.nullspace();
            assert_eq!(ns.len(), 7 - m.rank());
            for v in &ns {
                assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn echelonized_nullspace_is_reproducible() {
        let m = qmat(vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let a = m.nullspace();
        let b = m.nullspace();
        assert_eq!(a, b);
        // leading entries are 1 and strictly to the right going down
        let mut last = None;
        for v in &a {
            let lead = v.iter().position(|x| !x.is_zero()).unwrap();
            assert!(v[lead].is_one());
            if let Some(prev) = last {
                assert!(lead > prev);
            }
            last = Some(lead);
        }
    }
}
