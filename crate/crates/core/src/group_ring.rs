//! The group ring A[F_mu] and matrices over it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::free_group::{Letter, Word};
use crate::laurent::LaurentPoly;
use crate::linalg::{AlgebraError, Mat};
use crate::scalar::Scalar;

/// A finite sum `Σ a_w w` with nonzero coefficients, keyed by reduced word.
#[derive(Clone, PartialEq)]
pub struct GroupRingElem<F> {
    mu: usize,
    terms: BTreeMap<Word, F>,
}

impl<F: Scalar> GroupRingElem<F> {
    pub fn zero(mu: usize) -> Self {
        GroupRingElem {
            mu,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mu: usize) -> Self {
        Self::monomial(mu, Word::identity(), F::one())
    }

    pub fn constant(mu: usize, c: F) -> Self {
        Self::monomial(mu, Word::identity(), c)
    }

    pub fn monomial(mu: usize, w: Word, c: F) -> Self {
        debug_assert!(w.check_mu(mu).is_ok());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupRingElem { mu, terms }
    }

    pub fn generator(mu: usize, gen: u32) -> Self {
        Self::monomial(mu, Word::generator(gen), F::one())
    }

    pub fn generator_inv(mu: usize, gen: u32) -> Self {
        Self::monomial(mu, Word::generator_inv(gen), F::one())
    }

    pub fn from_terms(mu: usize, terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut e = GroupRingElem::zero(mu);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn terms(&self) -> &BTreeMap<Word, F> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Word::identity())
                .is_some_and(|c| c.is_one())
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        GroupRingElem::from_terms(
            self.mu,
            self.terms
                .iter()
                .map(|(w, a)| (w.clone(), a.clone() * c.clone())),
        )
    }

    /// Convolution product over reduced factorizations.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.mu, rhs.mu, "group ring rank mismatch");
        let mut out = GroupRingElem::zero(self.mu);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a.clone() * b.clone());
            }
        }
        out
    }

    /// Augmentation: every `z_i ↦ 1`.
    pub fn augment(&self) -> F {
        self.terms.values().fold(F::zero(), |acc, c| acc + c.clone())
    }

    /// Image in the commutative Laurent ring (exponent sums).
    pub fn abelianize(&self) -> LaurentPoly<F> {
        LaurentPoly::from_terms(
            self.mu,
            self.terms
                .iter()
                .map(|(w, c)| (w.exponent_sums(self.mu), c.clone())),
        )
    }

    /// Applies the anti-automorphism `w ↦ w^{-1}` termwise.
    pub fn conjugate(&self) -> Self {
        GroupRingElem::from_terms(
            self.mu,
            self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())),
        )
    }
}

impl<F: Scalar> Add for &GroupRingElem<F> {
    type Output = GroupRingElem<F>;
    fn add(self, rhs: &GroupRingElem<F>) -> GroupRingElem<F> {
        assert_eq!(self.mu, rhs.mu, "group ring rank mismatch");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &GroupRingElem<F> {
    type Output = GroupRingElem<F>;
    fn sub(self, rhs: &GroupRingElem<F>) -> GroupRingElem<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Neg for &GroupRingElem<F> {
    type Output = GroupRingElem<F>;
    fn neg(self) -> GroupRingElem<F> {
        GroupRingElem {
            mu: self.mu,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<F: Scalar> Mul for &GroupRingElem<F> {
    type Output = GroupRingElem<F>;
    fn mul(self, rhs: &GroupRingElem<F>) -> GroupRingElem<F> {
        GroupRingElem::mul(self, rhs)
    }
}

impl<F: Scalar> fmt::Display for GroupRingElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_identity() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for GroupRingElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Matrix with entries in A[F_mu].
#[derive(Clone, PartialEq)]
pub struct GroupRingMatrix<F> {
    mu: usize,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElem<F>>,
}

impl<F: Scalar> fmt::Debug for GroupRingMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GroupRingMatrix mu={} {}x{} [", self.mu, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Scalar> GroupRingMatrix<F> {
    pub fn zeros(mu: usize, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            mu,
            rows,
            cols,
            entries: vec![GroupRingElem::zero(mu); rows * cols],
        }
    }

    pub fn identity(mu: usize, n: usize) -> Self {
        let mut m = Self::zeros(mu, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElem::one(mu));
        }
        m
    }

    pub fn from_rows(mu: usize, rows: Vec<Vec<GroupRingElem<F>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for e in row {
                assert_eq!(e.mu(), mu, "entry rank mismatch");
                entries.push(e);
            }
        }
        GroupRingMatrix {
            mu,
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Scalar matrix viewed over the group ring.
    pub fn from_scalar(mu: usize, m: &Mat<F>) -> Self {
        GroupRingMatrix {
            mu,
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|c| GroupRingElem::constant(mu, c.clone()))
                .collect(),
        }
    }

    /// `Σ_w w · coeffs[w]`.
    pub fn from_coefficients<'a>(
        mu: usize,
        rows: usize,
        cols: usize,
        coeffs: impl IntoIterator<Item = (&'a Word, &'a Mat<F>)>,
    ) -> Self
    where
        F: 'a,
    {
        let mut m = Self::zeros(mu, rows, cols);
        for (w, a) in coeffs {
            assert_eq!((a.rows(), a.cols()), (rows, cols));
            for r in 0..rows {
                for c in 0..cols {
                    m.entries[r * cols + c].add_term(w.clone(), a[(r, c)].clone());
                }
            }
        }
        m
    }

    /// Diagonal matrix whose i-th entry is `z_{gens[i]}` (or 1 for gen 0).
    pub fn diagonal(mu: usize, diag: Vec<GroupRingElem<F>>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(mu, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn mu(&self) -> usize {
        self.mu
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

    pub fn get(&self, r: usize, c: usize) -> &GroupRingElem<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GroupRingElem<F>) {
        assert_eq!(v.mu(), self.mu, "entry rank mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[GroupRingElem<F>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
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

    /// Union of the entry supports.
    pub fn support(&self) -> BTreeSet<Word> {
        self.entries
            .iter()
            .flat_map(|e| e.support().cloned())
            .collect()
    }

    pub fn max_word_len(&self) -> usize {
        self.entries
            .iter()
            .map(GroupRingElem::max_word_len)
            .max()
            .unwrap_or(0)
    }

    /// The scalar matrix of coefficients of `w`.
    pub fn coefficient(&self, w: &Word) -> Mat<F> {
        Mat::from_vec(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e.coeff(w)).collect(),
        )
    }

    /// Decomposition `Σ_w w · A_w` over the support.
    pub fn coefficients(&self) -> BTreeMap<Word, Mat<F>> {
        self.support()
            .into_iter()
            .map(|w| {
                let a = self.coefficient(&w);
                (w, a)
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        assert_eq!(self.mu, rhs.mu, "group ring rank mismatch");
        let mut out = Self::zeros(self.mu, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GroupRingElem::zero(self.mu);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (u, x) in a.terms() {
                        for (v, y) in b.terms() {
                            acc.add_term(u.mul(v), x.clone() * y.clone());
                        }
                    }
                }
                out.entries[r * rhs.cols + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn augment(&self) -> Mat<F> {
        Mat::from_vec(
            self.rows,
            self.cols,
            self.entries.iter().map(GroupRingElem::augment).collect(),
        )
    }

    /// Entrywise image in the commutative Laurent ring, row-major.
    pub fn abelianize(&self) -> Vec<Vec<LaurentPoly<F>>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).abelianize()).collect())
            .collect()
    }

    /// Conjugates the scalar parts: `Σ w A_w ↦ Σ w P A_w Q`.
    pub fn sandwich(&self, left: &Mat<F>, right: &Mat<F>) -> Self {
        let coeffs = self.coefficients();
        let conj: Vec<(Word, Mat<F>)> = coeffs
            .into_iter()
            .map(|(w, a)| (w, &(left * &a) * right))
            .collect();
        Self::from_coefficients(
            self.mu,
            left.rows(),
            right.cols(),
            conj.iter().map(|(w, a)| (w, a)),
        )
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let mu = blocks.first().map_or(0, |b| b.mu);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(mu, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            assert_eq!(b.mu, mu, "group ring rank mismatch");
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Permutes rows and columns: entry `(i, j)` of the result is
    /// `self[perm[i], perm[j]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.mu, self.rows, self.cols);
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                out.set(i, j, self.get(pi, pj).clone());
            }
        }
        out
    }
}

impl<F: Scalar> Mul for &GroupRingMatrix<F> {
    type Output = GroupRingMatrix<F>;
    fn mul(self, rhs: &GroupRingMatrix<F>) -> GroupRingMatrix<F> {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<F: Scalar> Add for &GroupRingMatrix<F> {
    type Output = GroupRingMatrix<F>;
    fn add(self, rhs: &GroupRingMatrix<F>) -> GroupRingMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        GroupRingMatrix {
            mu: self.mu,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for &GroupRingMatrix<F> {
    type Output = GroupRingMatrix<F>;
    fn sub(self, rhs: &GroupRingMatrix<F>) -> GroupRingMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        GroupRingMatrix {
            mu: self.mu,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `z_{gen}^{±1}` as a group-ring element.
pub fn letter_elem<F: Scalar>(mu: usize, l: Letter) -> GroupRingElem<F> {
    GroupRingElem::monomial(mu, Word::from_letters([l]), F::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldKind, Rational};

    type E = GroupRingElem<Rational>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn elem(mu: usize, terms: &[(&str, i64)]) -> E {
        E::from_terms(mu, terms.iter().map(|(s, c)| (w(s), q(*c))))
    }

    #[test]
    fn product_examples() {
        assert!(elem(1, &[("z1", 1)]).mul(&elem(1, &[("z1^-1", 1)])).is_one());
        let a = elem(1, &[("", 1), ("z1", 1)]);
        let b = elem(1, &[("", 1), ("z1", -1)]);
        assert_eq!(a.mul(&b), elem(1, &[("", 1), ("z1 z1", -1)]));
        let c = elem(2, &[("z1", 1), ("", -1)]);
        let d = elem(2, &[("z2", 1), ("", -1)]);
        assert_eq!(
            c.mul(&d),
            elem(2, &[("z1 z2", 1), ("z1", -1), ("z2", -1), ("", 1)])
        );
    }

    #[test]
    fn augmentation_examples() {
        let m = GroupRingMatrix::from_rows(1, vec![vec![elem(1, &[("z1", 1), ("", -1)])]]);
        assert!(m.augment().is_zero());
        let m = GroupRingMatrix::from_rows(2, vec![vec![elem(2, &[("z1 z2^-1", 2)])]]);
        assert_eq!(m.augment(), Mat::from_i64(&[&[2]]));
    }

    #[test]
    fn abelianization_examples() {
        let a = elem(2, &[("z1 z2 z1^-1", 1)]).abelianize();
        assert_eq!(a, LaurentPoly::monomial(2, vec![0, 1], q(1)));
        let comm = elem(2, &[("z1 z2", 1), ("z2 z1", -1)]);
        assert!(comm.abelianize().is_zero());
    }

    #[test]
    fn matrix_products() {
        let z = GroupRingMatrix::from_rows(1, vec![vec![elem(1, &[("z1", 1)])]]);
        let zi = GroupRingMatrix::from_rows(1, vec![vec![elem(1, &[("z1^-1", 1)])]]);
        assert!((&z * &zi).is_identity());
        let a = GroupRingMatrix::from_rows(
            2,
            vec![
                vec![elem(2, &[("z1", 2)]), elem(2, &[("z2 z1", 1)])],
                vec![elem(2, &[]), elem(2, &[("", 3)])],
            ],
        );
        assert_eq!(&a * &GroupRingMatrix::identity(2, 2), a);
        let bad = GroupRingMatrix::<Rational>::zeros(2, 3, 1);
        assert!(a.try_mul(&bad).is_err());
        let _ = FieldKind::Rationals;
    }
}
