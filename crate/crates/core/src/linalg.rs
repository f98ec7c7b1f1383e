//! Dense exact linear algebra over a [`Scalar`] field.
//!
//! Matrices are small (tens of rows), so everything is plain row reduction
//! on a row-major `Vec`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible (rank {rank} < {size})")]
    NotInvertible { rank: usize, size: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// Outcome of [`Mat::nilpotency_index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `N >= 1` with `m^N = 0`.
    Index(usize),
    NotNilpotent,
}

#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Column cokernel of a map `m: A^c -> A^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cokernel<F> {
    /// `(r - rank) x r` projection onto the quotient coordinates.
    pub proj: Mat<F>,
    /// Codomain coordinates whose unit vectors complement `im(m)`.
    pub basis: Vec<usize>,
}

impl<F: Scalar> Mat<F> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<F>) -> Self {
        let n = diag.len();
        let mut m = Mat::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
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

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Mat<F>) -> Result<Mat<F>, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out: Mat<F> = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Mat<F> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn select(&self, rs: &[usize], cs: &[usize]) -> Mat<F> {
        let mut out = Mat::zeros(rs.len(), cs.len());
        for (i, &r) in rs.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cs: &[usize]) -> Mat<F> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, cs)
    }

    pub fn hstack(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..rhs.cols {
                out[(r, self.cols + c)] = rhs[(r, c)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&Mat<F>]) -> Mat<F> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self[(row, col)].try_inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = std::mem::replace(&mut self[(row, c)], F::zero());
                self[(row, c)] = v * inv.clone();
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    if self.data[row * self.cols + c].is_zero() {
                        continue;
                    }
                    let pivot_val = self.data[row * self.cols + c].clone();
                    self.data[r * self.cols + c].sub_mul(&factor, &pivot_val);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact two-sided inverse.
    pub fn inverse(&self) -> Result<Mat<F>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let (red, pivots) = self.hstack(&Mat::identity(n)).rref();
        let rank = pivots.iter().filter(|&&p| p < n).count();
        if rank < n {
            return Err(AlgebraError::NotInvertible { rank, size: n });
        }
        let rs: Vec<usize> = (0..n).collect();
        let cs: Vec<usize> = (n..2 * n).collect();
        Ok(red.select(&rs, &cs))
    }

    /// Columns forming a basis of the null space.
    pub fn kernel(&self) -> Mat<F> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -red[(i, f)].clone();
            }
        }
        k
    }

    /// A basis of the column space, taken from the pivot columns of `self`.
    pub fn column_basis(&self) -> Mat<F> {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Some `x` with `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Mat<F>) -> Option<Mat<F>> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let (red, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = red[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    /// Quotient of the codomain by the image, with a coordinate section.
    ///
    /// The complement coordinates are the identity columns that survive when
    /// `[self | I]` is row reduced, so the choice is deterministic.
    pub fn cokernel_with_section(&self) -> Cokernel<F> {
        let r = self.rows;
        let (_, pivots) = self.hstack(&Mat::identity(r)).rref();
        let image_cols: Vec<usize> = pivots.iter().copied().filter(|&p| p < self.cols).collect();
        let basis: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= self.cols)
            .map(|&p| p - self.cols)
            .collect();
        let mut frame = self.select_cols(&image_cols);
        let mut units = Mat::zeros(r, basis.len());
        for (j, &b) in basis.iter().enumerate() {
            units[(b, j)] = F::one();
        }
        frame = frame.hstack(&units);
        let inv = frame
            .inverse()
            .expect("image basis plus complement spans the codomain");
        let rank = image_cols.len();
        let rs: Vec<usize> = (rank..r).collect();
        let cs: Vec<usize> = (0..r).collect();
        Cokernel {
            proj: inv.select(&rs, &cs),
            basis,
        }
    }

    /// Least `N >= 1` with `self^N = 0`; only powers up to the size are needed.
    pub fn nilpotency_index(&self) -> Result<Nilpotency, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut power = self.clone();
        for k in 1..=n.max(1) {
            if power.is_zero() {
                return Ok(Nilpotency::Index(k));
            }
            power = &power * self;
        }
        Ok(Nilpotency::NotNilpotent)
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<F: Scalar> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<F: Scalar> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Neg for &Mat<F> {
    type Output = Mat<F>;
    fn neg(self) -> Mat<F> {
        self.map(|v| -v.clone())
    }
}

/// Sparse linear system `A x = B` with several right-hand sides, solved by
/// incremental elimination. Used where the dense matrices would be mostly zero.
pub struct SparseSystem<F> {
    unknowns: usize,
    rhs_count: usize,
    // pivot column -> reduced row with a 1 at the pivot; rhs stored after `unknowns`
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
    inconsistent: bool,
}

impl<F: Scalar> SparseSystem<F> {
    pub fn new(unknowns: usize, rhs_count: usize) -> Self {
        SparseSystem {
            unknowns,
            rhs_count,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    /// Adds the equation `Σ coeffs[j] x_j = rhs`.
    pub fn add_equation(&mut self, coeffs: BTreeMap<usize, F>, rhs: &[F]) {
        assert_eq!(rhs.len(), self.rhs_count, "right-hand side count");
        let mut row = coeffs;
        row.retain(|_, c| !c.is_zero());
        debug_assert!(row.keys().all(|&j| j < self.unknowns));
        for (k, b) in rhs.iter().enumerate() {
            if !b.is_zero() {
                row.insert(self.unknowns + k, b.clone());
            }
        }
        loop {
            let Some((&col, lead)) = row.iter().next() else {
                return;
            };
            if col >= self.unknowns {
                self.inconsistent = true;
                return;
            }
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    for (j, v) in p {
                        let entry = row.entry(*j).or_insert_with(F::zero);
                        entry.sub_mul(&factor, v);
                        if entry.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = lead.try_inv().expect("nonzero pivot");
                    for v in row.values_mut() {
                        *v *= inv.clone();
                    }
                    self.pivots.insert(col, row);
                    return;
                }
            }
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// One solution per right-hand side (free unknowns set to zero), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<Vec<F>>> {
        if self.inconsistent {
            return None;
        }
        let mut sols = vec![vec![F::zero(); self.unknowns]; self.rhs_count];
        for (&col, row) in self.pivots.iter().rev() {
            for (k, sol) in sols.iter_mut().enumerate() {
                let mut v = row
                    .get(&(self.unknowns + k))
                    .cloned()
                    .unwrap_or_else(F::zero);
                for (&j, c) in row.range(col + 1..self.unknowns) {
                    v.sub_mul(c, &sol[j]);
                }
                sol[col] = v;
            }
        }
        Some(sols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Mat<Rational>;

    #[test]
    fn inverse_identity_and_involution() {
        assert_eq!(Q::identity(3).inverse().unwrap(), Q::identity(3));
        let swap = Q::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn inverse_of_rank_one_fails() {
        let m = Q::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            m.inverse(),
            Err(AlgebraError::NotInvertible { rank: 1, size: 2 })
        );
        assert!(matches!(
            Q::zeros(2, 3).inverse(),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn inverse_products_are_exact() {
        let m = Q::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&inv * &m).is_identity());
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn cokernel_of_zero_map() {
        let ck = Q::zeros(2, 2).cokernel_with_section();
        assert_eq!(ck.basis, vec![0, 1]);
        assert_eq!(ck.proj, Q::identity(2));
    }

    #[test]
    fn cokernel_of_first_axis_inclusion() {
        let m = Q::from_i64(&[&[1], &[0]]);
        let ck = m.cokernel_with_section();
        assert_eq!(ck.basis, vec![1]);
        assert_eq!(ck.proj, Q::from_i64(&[&[0, 1]]));
        assert!((&ck.proj * &m).is_zero());
    }

    #[test]
    fn cokernel_of_invertible_map_is_empty() {
        let m = Q::from_i64(&[&[1, 2], &[3, 4]]);
        let ck = m.cokernel_with_section();
        assert!(ck.basis.is_empty());
        assert_eq!(ck.proj.rows(), 0);
        assert_eq!(ck.proj.cols(), 2);
    }

    #[test]
    fn cokernel_section_restricts_to_identity() {
        let m = Q::from_i64(&[&[1, 2], &[2, 4], &[0, 1], &[1, 1]]);
        let ck = m.cokernel_with_section();
        assert_eq!(ck.proj.rows(), 4 - m.rank());
        assert!((&ck.proj * &m).is_zero());
        assert!(ck.proj.select_cols(&ck.basis).is_identity());
    }

    #[test]
    fn nilpotency_examples() {
        let jordan = Q::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(jordan.nilpotency_index(), Ok(Nilpotency::Index(3)));
        assert_eq!(Q::zeros(4, 4).nilpotency_index(), Ok(Nilpotency::Index(1)));
        assert_eq!(
            Q::identity(2).nilpotency_index(),
            Ok(Nilpotency::NotNilpotent)
        );
    }

    #[test]
    fn kernel_and_solve() {
        let m = Mat::<Fp>::from_rows(vec![
            vec![Fp::new(1, 5), Fp::new(2, 5), Fp::new(3, 5)],
            vec![Fp::new(2, 5), Fp::new(4, 5), Fp::new(2, 5)],
        ]);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        let b = Mat::from_rows(vec![vec![Fp::new(1, 5)], vec![Fp::new(0, 5)]]);
        let x = m.solve(&b).unwrap();
        assert_eq!(&m * &x, b);
    }

    #[test]
    fn sparse_system_matches_dense_solve() {
        let m = Mat::<Rational>::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let b = Mat::<Rational>::from_i64(&[&[1, 0], &[2, 1], &[0, 5]]);
        let mut sys = SparseSystem::new(3, 2);
        for r in 0..3 {
            let coeffs = (0..3).map(|c| (c, m[(r, c)].clone())).collect();
            sys.add_equation(coeffs, b.row(r));
        }
        let sols = sys.solve().unwrap();
        let x = m.solve(&b).unwrap();
        for k in 0..2 {
            assert_eq!(sols[k], x.column(k));
        }
        let mut bad = SparseSystem::<Rational>::new(1, 1);
        bad.add_equation([(0, Rational::from_i64(1))].into(), &[Rational::from_i64(1)]);
        bad.add_equation([(0, Rational::from_i64(2))].into(), &[Rational::from_i64(1)]);
        assert!(bad.solve().is_none());
    }
}
