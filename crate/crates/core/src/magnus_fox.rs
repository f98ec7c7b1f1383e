//! Truncated noncommutative power series, the Magnus–Fox embedding
//! `z_j ↦ 1 + x_j`, and inversion of group-ring matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::free_group::{Letter, Word};
use crate::group_ring::{GroupRingElem, GroupRingMatrix};
use crate::linalg::{Mat, SparseSystem};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("constant term is singular")]
    ConstantTermSingular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("augmentation is singular, no inverse exists over the group ring")]
    AugmentationSingular,
    #[error("no inverse with support in words of length <= {0}")]
    NoInverseUpTo(usize),
}

/// Element of `A<<x_1..x_mu>>` modulo monomials of degree above `degree`.
/// A monomial is its sequence of variable indices (1-based).
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<F> {
    mu: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Scalar> TruncSeries<F> {
    pub fn zero(mu: usize, degree: usize) -> Self {
        TruncSeries {
            mu,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(mu: usize, degree: usize, c: F) -> Self {
        let mut s = Self::zero(mu, degree);
        s.add_term(Vec::new(), c);
        s
    }

    pub fn one(mu: usize, degree: usize) -> Self {
        Self::constant(mu, degree, F::one())
    }

    /// The variable `x_j`.
    pub fn var(mu: usize, degree: usize, j: u32) -> Self {
        let mut s = Self::zero(mu, degree);
        s.add_term(vec![j], F::one());
        s
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, mono: &[u32]) -> F {
        self.terms.get(mono).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c * mono`; monomials above the degree bound are dropped.
    pub fn add_term(&mut self, mono: Vec<u32>, c: F) {
        if mono.len() > self.degree || c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.mu, self.degree);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    fn check_shape(&self, rhs: &Self) {
        assert_eq!(
            (self.mu, self.degree),
            (rhs.mu, rhs.degree),
            "series shape mismatch"
        );
    }

    /// Image of a word: `z_j ↦ 1 + x_j`, `z_j^{-1} ↦ Σ_k (-x_j)^k`.
    pub fn embed_word(mu: usize, degree: usize, w: &Word) -> Self {
        let mut out = Self::one(mu, degree);
        for &l in w.letters() {
            out = &out * &Self::embed_letter(mu, degree, l);
        }
        out
    }

    fn embed_letter(mu: usize, degree: usize, l: Letter) -> Self {
        let mut s = Self::one(mu, degree);
        if !l.inverse {
            s.add_term(vec![l.gen], F::one());
            return s;
        }
        let mut sign = F::one();
        for k in 1..=degree {
            sign = -sign;
            s.add_term(vec![l.gen; k], sign.clone());
        }
        s
    }
}

/// Magnus–Fox image of a group-ring element, truncated at `degree`.
pub fn embed<F: Scalar>(a: &GroupRingElem<F>, degree: usize) -> TruncSeries<F> {
    let mut out = TruncSeries::zero(a.mu(), degree);
    for (w, c) in a.terms() {
        let img = TruncSeries::<F>::embed_word(a.mu(), degree, w);
        for (m, x) in img.terms {
            out.add_term(m, x * c.clone());
        }
    }
    out
}

impl<F: Scalar> Add for &TruncSeries<F> {
    type Output = TruncSeries<F>;
    fn add(self, rhs: &TruncSeries<F>) -> TruncSeries<F> {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &TruncSeries<F> {
    type Output = TruncSeries<F>;
    fn sub(self, rhs: &TruncSeries<F>) -> TruncSeries<F> {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Scalar> Neg for &TruncSeries<F> {
    type Output = TruncSeries<F>;
    fn neg(self) -> TruncSeries<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Mul for &TruncSeries<F> {
    type Output = TruncSeries<F>;
    fn mul(self, rhs: &TruncSeries<F>) -> TruncSeries<F> {
        self.check_shape(rhs);
        let mut out = TruncSeries::zero(self.mu, self.degree);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                if a.len() + b.len() > self.degree {
                    continue;
                }
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, x.clone() * y.clone());
            }
        }
        out
    }
}

/// Matrix of truncated series with a common variable count and degree.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeriesMatrix<F> {
    mu: usize,
    degree: usize,
    rows: usize,
    cols: usize,
    entries: Vec<TruncSeries<F>>,
}

impl<F: Scalar> TruncSeriesMatrix<F> {
    pub fn zeros(mu: usize, degree: usize, rows: usize, cols: usize) -> Self {
        TruncSeriesMatrix {
            mu,
            degree,
            rows,
            cols,
            entries: vec![TruncSeries::zero(mu, degree); rows * cols],
        }
    }

    pub fn identity(mu: usize, degree: usize, n: usize) -> Self {
        let mut m = Self::zeros(mu, degree, n, n);
        for i in 0..n {
            m.entries[i * n + i] = TruncSeries::one(mu, degree);
        }
        m
    }

    pub fn from_scalar(mu: usize, degree: usize, a: &Mat<F>) -> Self {
        TruncSeriesMatrix {
            mu,
            degree,
            rows: a.rows(),
            cols: a.cols(),
            entries: a
                .entries()
                .iter()
                .map(|c| TruncSeries::constant(mu, degree, c.clone()))
                .collect(),
        }
    }

    /// Entrywise Magnus–Fox image.
    pub fn embed(m: &GroupRingMatrix<F>, degree: usize) -> Self {
        TruncSeriesMatrix {
            mu: m.mu(),
            degree,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|e| embed(e, degree)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, r: usize, c: usize) -> &TruncSeries<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: TruncSeries<F>) {
        assert_eq!((v.mu, v.degree), (self.mu, self.degree), "series shape");
        self.entries[r * self.cols + c] = v;
    }

    pub fn constant_term(&self) -> Mat<F> {
        Mat::from_vec(
            self.rows,
            self.cols,
            self.entries.iter().map(TruncSeries::constant_term).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl<F: Scalar> Mul for &TruncSeriesMatrix<F> {
    type Output = TruncSeriesMatrix<F>;
    fn mul(self, rhs: &TruncSeriesMatrix<F>) -> TruncSeriesMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "series matrix dimension mismatch");
        let mut out = TruncSeriesMatrix::zeros(self.mu, self.degree, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = TruncSeries::zero(self.mu, self.degree);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), rhs.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[r * rhs.cols + c] = acc;
            }
        }
        out
    }
}

impl<F: Scalar> Add for &TruncSeriesMatrix<F> {
    type Output = TruncSeriesMatrix<F>;
    fn add(self, rhs: &TruncSeriesMatrix<F>) -> TruncSeriesMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = &*o + b;
        }
        out
    }
}

impl<F: Scalar> Sub for &TruncSeriesMatrix<F> {
    type Output = TruncSeriesMatrix<F>;
    fn sub(self, rhs: &TruncSeriesMatrix<F>) -> TruncSeriesMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = &*o - b;
        }
        out
    }
}

/// Inverse modulo the truncation: with `m0` the constant term and
/// `g = 1 - m0^{-1} m`, returns `(1 + g + … + g^D) m0^{-1}`.
pub fn series_mat_inverse<F: Scalar>(
    m: &TruncSeriesMatrix<F>,
) -> Result<TruncSeriesMatrix<F>, SeriesError> {
    if m.rows != m.cols {
        return Err(SeriesError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let (mu, degree, n) = (m.mu, m.degree, m.rows);
    let inv0 = m
        .constant_term()
        .inverse()
        .map_err(|_| SeriesError::ConstantTermSingular)?;
    let inv0_s = TruncSeriesMatrix::from_scalar(mu, degree, &inv0);
    let id = TruncSeriesMatrix::identity(mu, degree, n);
    let g = &id - &(&inv0_s * m);
    let mut sum = id.clone();
    let mut power = id;
    // g has no constant term, so g^k vanishes for k > degree
    for _ in 0..degree {
        power = &power * &g;
        sum = &sum + &power;
    }
    Ok(&sum * &inv0_s)
}

/// Searches for a two-sided inverse of `d` whose entries are supported on
/// words of length at most `bound`, by equating coefficients exactly.
///
/// `d X = 1` splits into one sparse system per column of `X`, and `X d = 1`
/// into one per row; both are imposed. A returned matrix has been checked
/// against both product identities.
pub fn bounded_support_inverse<F: Scalar>(
    d: &GroupRingMatrix<F>,
    bound: usize,
) -> Result<GroupRingMatrix<F>, InverseError> {
    if !d.is_square() {
        return Err(InverseError::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    if d.augment().inverse().is_err() {
        return Err(InverseError::AugmentationSingular);
    }
    let mu = d.mu();
    let n = d.rows();
    let coeffs = d.coefficients();
    // growing the bound finds small inverses without building the large systems
    for l in 0..=bound {
        let words = Word::all_up_to(mu, l);
        let Some(right) = solve_side(&coeffs, &words, n, Side::Right) else {
            continue;
        };
        let Some(left) = solve_side(&coeffs, &words, n, Side::Left) else {
            continue;
        };
        let x = GroupRingMatrix::from_coefficients(mu, n, n, words.iter().zip(right.iter()));
        let y = GroupRingMatrix::from_coefficients(mu, n, n, words.iter().zip(left.iter()));
        // d is injective, so a right inverse that is also a left inverse is y
        if (d * &x).is_identity() && (&y * d).is_identity() && (&x * d).is_identity() {
            return Ok(x);
        }
    }
    Err(InverseError::NoInverseUpTo(bound))
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    /// `d X = 1`
    Right,
    /// `X d = 1`
    Left,
}

/// Solves for the coefficient matrices `X_w` (one per candidate word).
fn solve_side<F: Scalar>(
    coeffs: &BTreeMap<Word, Mat<F>>,
    words: &[Word],
    n: usize,
    side: Side,
) -> Option<Vec<Mat<F>>> {
    let nw = words.len();
    // equation (v, i) collects Σ_{u w = v} (A_u X_w)[i, ·] on the right side
    // and Σ_{w u = v} (X_w A_u)[·, i] on the left, transposed
    let mut targets: BTreeSet<Word> = BTreeSet::new();
    targets.insert(Word::identity());
    let mut rows: BTreeMap<(Word, usize), BTreeMap<usize, F>> = BTreeMap::new();
    for (wi, w) in words.iter().enumerate() {
        for (u, a) in coeffs {
            let v = match side {
                Side::Right => u.mul(w),
                Side::Left => w.mul(u),
            };
            targets.insert(v.clone());
            for i in 0..n {
                let row = rows.entry((v.clone(), i)).or_default();
                for k in 0..n {
                    let c = match side {
                        Side::Right => a[(i, k)].clone(),
                        Side::Left => a[(k, i)].clone(),
                    };
                    if c.is_zero() {
                        continue;
                    }
                    let entry = row.entry(wi * n + k).or_insert_with(F::zero);
                    *entry += c;
                }
            }
        }
    }
    let mut sys = SparseSystem::new(nw * n, n);
    for v in &targets {
        for i in 0..n {
            let row = rows.remove(&(v.clone(), i)).unwrap_or_default();
            let rhs: Vec<F> = (0..n)
                .map(|c| {
                    if v.is_identity() && c == i {
                        F::one()
                    } else {
                        F::zero()
                    }
                })
                .collect();
            sys.add_equation(row, &rhs);
            if !sys.is_consistent() {
                return None;
            }
        }
    }
    let sols = sys.solve()?;
    // sols[c] holds column c of every X_w on the right side, row c on the left
    Some(
        (0..nw)
            .map(|wi| {
                let mut x = Mat::zeros(n, n);
                for (c, sol) in sols.iter().enumerate() {
                    for k in 0..n {
                        let v = sol[wi * n + k].clone();
                        match side {
                            Side::Right => x[(k, c)] = v,
                            Side::Left => x[(c, k)] = v,
                        }
                    }
                }
                x
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type S = TruncSeries<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn series(mu: usize, degree: usize, terms: &[(&[u32], i64)]) -> S {
        let mut s = S::zero(mu, degree);
        for (m, c) in terms {
            s.add_term(m.to_vec(), q(*c));
        }
        s
    }

    #[test]
    fn embed_examples() {
        let z = GroupRingElem::generator(1, 1);
        assert_eq!(embed::<Rational>(&z, 2), series(1, 2, &[(&[], 1), (&[1], 1)]));
        let zi = GroupRingElem::generator_inv(1, 1);
        assert_eq!(
            embed::<Rational>(&zi, 2),
            series(1, 2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)])
        );
        assert!((&embed::<Rational>(&z, 4) * &embed(&zi, 4)).is_one());
        let a = GroupRingElem::<Rational>::monomial(2, w("z1 z2"), q(1));
        let b = GroupRingElem::<Rational>::monomial(2, w("z2 z1"), q(1));
        assert_ne!(embed(&a, 2), embed(&b, 2));
    }

    #[test]
    fn geometric_series_inverse() {
        let mut m = TruncSeriesMatrix::zeros(1, 3, 1, 1);
        m.set(0, 0, series(1, 3, &[(&[], 1), (&[1], 1)]));
        let x = series_mat_inverse(&m).unwrap();
        assert_eq!(
            x.get(0, 0),
            &series(1, 3, &[(&[], 1), (&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1)])
        );
        let sing = TruncSeriesMatrix::<Rational>::from_scalar(1, 3, &Mat::zeros(1, 1));
        assert_eq!(series_mat_inverse(&sing), Err(SeriesError::ConstantTermSingular));
    }

    #[test]
    fn bounded_inverse_of_units() {
        let id = GroupRingMatrix::<Rational>::identity(2, 3);
        assert_eq!(bounded_support_inverse(&id, 2).unwrap(), id);
        let z = GroupRingMatrix::from_rows(1, vec![vec![GroupRingElem::<Rational>::generator(1, 1)]]);
        let x = bounded_support_inverse(&z, 1).unwrap();
        assert_eq!(x.get(0, 0), &GroupRingElem::generator_inv(1, 1));
        let zero = GroupRingMatrix::<Rational>::zeros(1, 1, 1);
        assert_eq!(
            bounded_support_inverse(&zero, 2),
            Err(InverseError::AugmentationSingular)
        );
    }

    #[test]
    fn non_unit_has_no_bounded_inverse() {
        // 2 - z has augmentation 1 but is not a unit
        let d = GroupRingMatrix::from_rows(
            1,
            vec![vec![GroupRingElem::<Rational>::from_terms(
                1,
                [(Word::identity(), q(2)), (w("z1"), q(-1))],
            )]],
        );
        assert_eq!(bounded_support_inverse(&d, 4), Err(InverseError::NoInverseUpTo(4)));
    }
}
