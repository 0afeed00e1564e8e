//! Dense exact linear algebra.
//!
//! Matrices act on column vectors. Row reduction pivots on the leftmost
//! nonzero column and, within it, the first nonzero row, so every basis this
//! module returns is reproducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{ArsError, Result};
use crate::field::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S> Mat<S> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub reduced: Mat<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArsError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix with explicit shape, so that `n x 0` and `0 x n` are
    /// representable.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(ArsError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn column_vector(entries: Vec<S>) -> Self {
        let n = entries.len();
        Mat {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self[(r, c)].is_one()
                    } else {
                        self[(r, c)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Mat<S>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(ArsError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Mat<S>) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Mat<S>) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    fn same_shape(&self, rhs: &Mat<S>) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(ArsError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Mat<S>) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(ArsError::DimensionMismatch("hstack row counts".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..rhs.cols {
                out[(r, self.cols + c)] = rhs[(r, c)].clone();
            }
        }
        Ok(out)
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Mat<S>) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(ArsError::DimensionMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack_all(rows: usize, blocks: &[Mat<S>]) -> Result<Self> {
        blocks
            .iter()
            .try_fold(Self::zeros(rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn vstack_all(cols: usize, blocks: &[Mat<S>]) -> Result<Self> {
        blocks
            .iter()
            .try_fold(Self::zeros(0, cols), |acc, b| acc.vstack(b))
    }

    pub fn block_diagonal(blocks: &[Mat<S>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat<S>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Row-major flattening, used when a matrix is an unknown in a linear
    /// system.
    pub fn flatten(&self) -> Vec<S> {
        self.data.clone()
    }

    pub fn echelon(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m[(row, c)].clone() * inv.clone();
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - factor.clone() * m[(row, c)].clone();
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Self {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out[(f, j)] = S::one();
            for (i, &p) in pivots.iter().enumerate() {
                out[(p, j)] = -reduced[(i, f)].clone();
            }
        }
        out
    }

    /// A column basis of the column space, chosen among the original columns.
    pub fn image_basis(&self) -> Self {
        let pivots = self.echelon().pivots;
        self.select_columns(&pivots)
    }

    /// Rows form a basis of `{y : y * self = 0}`.
    pub fn left_kernel_basis(&self) -> Self {
        self.transpose().kernel_basis().transpose()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &Mat<S>) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(ArsError::DimensionMismatch(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = reduced[(i, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Some `x` with `x * self = b`.
    pub fn solve_left(&self, b: &Mat<S>) -> Result<Option<Self>> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hstack(&Self::identity(n)).ok()?.echelon();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(ArsError::DimensionMismatch("power of non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Whether the column space of `self` contains that of `other`.
    pub fn column_space_contains(&self, other: &Mat<S>) -> bool {
        self.rows == other.rows
            && matches!(self.solve(other), Ok(Some(_)))
    }

    pub fn same_column_space(&self, other: &Mat<S>) -> bool {
        self.column_space_contains(other) && other.column_space_contains(self)
    }

    /// Basis of the intersection of the column spaces of `self` and `other`.
    pub fn intersect_columns(&self, other: &Mat<S>) -> Result<Self> {
        let joined = self.hstack(&other.scale(&-S::one()))?;
        let k = joined.kernel_basis();
        let coeffs = k.block(0, 0, self.cols, k.cols());
        Ok(self.try_mul(&coeffs)?.image_basis())
    }

    /// Evaluates the polynomial with coefficients `coeffs` (constant first)
    /// at this matrix.
    pub fn eval_poly(&self, coeffs: &[S]) -> Result<Self> {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.try_mul(self)?.try_add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Monic polynomial of least degree annihilating this matrix, constant
    /// coefficient first.
    pub fn minimal_polynomial(&self) -> Result<Vec<S>> {
        if !self.is_square() {
            return Err(ArsError::DimensionMismatch(
                "minimal polynomial of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut powers: Vec<Vec<S>> = vec![Self::identity(n).flatten()];
        let mut current = Self::identity(n);
        loop {
            current = current.try_mul(self)?;
            let d = powers.len();
            let basis = Self::from_vec(
                d,
                n * n,
                powers.iter().flat_map(|p| p.iter().cloned()).collect(),
            )?
            .transpose();
            let target = Self::column_vector(current.flatten());
            if let Some(c) = basis.solve(&target)? {
                let mut poly: Vec<S> = (0..d).map(|i| -c[(i, 0)].clone()).collect();
                poly.push(S::one());
                return Ok(poly);
            }
            powers.push(current.flatten());
        }
    }
}

impl<'a, S: Scalar> Mul<&'a Mat<S>> for &'a Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &'a Mat<S>) -> Mat<S> {
        self.try_mul(rhs).expect("matrix shapes must agree")
    }
}

impl<'a, S: Scalar> Add<&'a Mat<S>> for &'a Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &'a Mat<S>) -> Mat<S> {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl<'a, S: Scalar> Sub<&'a Mat<S>> for &'a Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &'a Mat<S>) -> Mat<S> {
        self.try_sub(rhs).expect("matrix shapes must agree")
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.scale(&-S::one())
    }
}

/// A subspace `U` of `k^n` together with a fixed complement, giving
/// coordinates on `k^n / U`.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    ambient: usize,
    sub: Mat<S>,
    complement: Mat<S>,
    change_of_basis: Mat<S>,
}

impl<S: Scalar> Quotient<S> {
    pub fn new(sub: &Mat<S>) -> Self {
        let n = sub.rows();
        let sub = sub.image_basis();
        let extended = sub.hstack(&Mat::identity(n)).expect("same row count");
        let pivots = extended.echelon().pivots;
        let complement_cols: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&p| p >= sub.cols())
            .collect();
        let complement = extended.select_columns(&complement_cols);
        let full = sub.hstack(&complement).expect("same row count");
        let change_of_basis = full.inverse().expect("extended basis is invertible");
        Quotient {
            ambient: n,
            sub,
            complement,
            change_of_basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn sub_basis(&self) -> &Mat<S> {
        &self.sub
    }

    /// Columns lifting the standard basis of the quotient.
    pub fn lifts(&self) -> &Mat<S> {
        &self.complement
    }

    /// The linear map `k^n -> k^n / U` in complement coordinates.
    pub fn projection(&self) -> Mat<S> {
        let s = self.sub.cols();
        self.change_of_basis.block(s, 0, self.dim(), self.ambient)
    }

    pub fn project(&self, v: &Mat<S>) -> Mat<S> {
        &self.projection() * v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F32003;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Mat<F32003>;

    #[test]
    fn solve_identity() {
        let a = M::identity(3);
        let b = M::from_i64(&[&[1], &[2], &[3]]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = M::zeros(2, 2);
        let b = M::from_i64(&[&[1], &[0]]);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_random_invertible_by_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        while found < 5 {
            let a = M::from_rows(
                (0..5)
                    .map(|_| (0..5).map(|_| F32003::from_i64(rng.gen_range(-50..50))).collect())
                    .collect(),
            )
            .unwrap();
            if !a.is_invertible() {
                continue;
            }
            let b = M::from_rows(
                (0..5)
                    .map(|_| vec![F32003::from_i64(rng.gen_range(-50..50))])
                    .collect(),
            )
            .unwrap();
            let x = a.solve(&b).unwrap().unwrap();
            assert_eq!(&a * &x, b);
            found += 1;
        }
    }

    #[test]
    fn solve_shape_error() {
        let a = M::identity(2);
        let b = M::zeros(3, 1);
        assert!(matches!(a.solve(&b), Err(ArsError::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(M::identity(2).kernel_basis().cols(), 0);
        assert_eq!(M::zeros(2, 3).kernel_basis().cols(), 3);
        let k = M::from_i64(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        // proportional to (1, -1)
        assert_eq!(k[(0, 0)], -k[(1, 0)].clone());
        assert!(!k[(0, 0)].is_zero());
    }

    #[test]
    fn rank_image_inverse() {
        assert_eq!(M::identity(4).rank(), 4);
        assert_eq!(M::zeros(3, 3).image_basis().cols(), 0);
        let a = M::from_i64(&[&[2, 0], &[0, 3]]);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, M::identity(2));
        assert_eq!(&b * &a, M::identity(2));
        assert_eq!(b[(0, 0)], F32003::from_i64(2).inv().unwrap());
        assert_eq!(b[(1, 1)], F32003::from_i64(3).inv().unwrap());
        assert!(M::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(M::zeros(2, 3).inverse().is_none());
    }

    #[test]
    fn minimal_polynomial_examples() {
        let one = F32003::one();
        let zero = F32003::zero();
        assert_eq!(M::identity(2).minimal_polynomial().unwrap(), vec![-one, one]);
        let nil = M::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(nil.minimal_polynomial().unwrap(), vec![zero, zero, one]);
        // diag(1,2): (x-1)(x-2) = x^2 - 3x + 2
        let d = M::from_i64(&[&[1, 0], &[0, 2]]);
        let m = d.minimal_polynomial().unwrap();
        assert_eq!(
            m,
            vec![F32003::from_i64(2), F32003::from_i64(-3), one]
        );
        assert!(d.eval_poly(&m).unwrap().is_zero());
        // Krylov span of (1,1) under d is 2-dimensional, so no degree-1 polynomial works.
        let v = M::from_i64(&[&[1], &[1]]);
        let krylov = v.hstack(&(&d * &v)).unwrap();
        assert_eq!(krylov.rank(), 2);
    }

    #[test]
    fn quotient_coordinates() {
        let u = M::from_i64(&[&[1], &[1], &[0]]);
        let q = Quotient::new(&u);
        assert_eq!(q.dim(), 2);
        assert!(q.project(&u).is_zero());
        let lifted = q.lifts().clone();
        assert_eq!(q.project(&lifted), M::identity(2));
    }
}
