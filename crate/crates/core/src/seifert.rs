//! Seifert modules `(P, e, {π_i})`, their covering presentation
//! `1 - e + e z`, strong nilpotence, near-projection certificates and the
//! primitivity decision.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::free_group::{Letter, Word};
use crate::group_ring::{GroupRingElem, GroupRingMatrix};
use crate::linalg::{Mat, Nilpotency};
use crate::magnus_fox::{bounded_support_inverse, InverseError};
use crate::scalar::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldKind, FieldKind),
    #[error("invalid splitting: {0}")]
    InvalidSplit(String),
    #[error("not a near-projection")]
    NotNearProjection,
    #[error("certificate product identity failed")]
    CertificateCheckFailed,
    #[error("operation needs mu = 1, got mu = {0}")]
    RequiresMuOne(usize),
}

/// A finite-dimensional Seifert module. The projections `π_i` are the
/// coordinate projections onto consecutive blocks of sizes `dims`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeifertModule<F> {
    field: FieldKind,
    dims: Vec<usize>,
    e: Mat<F>,
}

impl<F: Scalar> SeifertModule<F> {
    pub fn new(field: FieldKind, dims: Vec<usize>, e: Mat<F>) -> Result<Self, SeifertError> {
        if !F::supports(field) {
            return Err(SeifertError::DimensionMismatch(format!(
                "scalar type cannot represent {field}"
            )));
        }
        if dims.is_empty() {
            return Err(SeifertError::DimensionMismatch("mu must be at least 1".into()));
        }
        let n: usize = dims.iter().sum();
        if e.rows() != n || e.cols() != n {
            return Err(SeifertError::DimensionMismatch(format!(
                "e is {}x{}, block sizes sum to {n}",
                e.rows(),
                e.cols()
            )));
        }
        Ok(SeifertModule { field, dims, e })
    }

    pub fn zero(field: FieldKind, dims: Vec<usize>) -> Self {
        let n = dims.iter().sum();
        Self::new(field, dims, Mat::zeros(n, n)).expect("zero module is well formed")
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn mu(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn e(&self) -> &Mat<F> {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.e.rows()
    }

    /// Coordinates of each block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        block_ranges(&self.dims)
    }

    /// Block index (0-based) of every coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        block_labels(&self.dims)
    }

    /// The `n x n` matrix `1 - e + e Z`, `Z` carrying `z_i` on block `i`.
    pub fn covering_presentation(&self) -> GroupRingMatrix<F> {
        let mu = self.mu();
        let n = self.n();
        let label = self.block_of();
        let mut m = GroupRingMatrix::zeros(mu, n, n);
        for j in 0..n {
            for k in 0..n {
                let c = self.e[(j, k)].clone();
                let mut entry = GroupRingElem::zero(mu);
                if j == k {
                    entry.add_term(Word::identity(), F::one());
                }
                if !c.is_zero() {
                    entry.add_term(Word::identity(), -c.clone());
                    entry.add_term(Word::generator(label[k] as u32 + 1), c);
                }
                m.set(j, k, entry);
            }
        }
        m
    }

    /// Least `N >= 1` such that every block path product
    /// `e π_{i_1} e π_{i_2} ⋯ e π_{i_N}` vanishes.
    pub fn strong_nilpotence(&self) -> Option<usize> {
        strong_nilpotence_index(&self.e, &self.blocks())
    }

    /// Interleaved direct sum: block `i` of the result is block `i` of
    /// `self` followed by block `i` of `other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, SeifertError> {
        if self.field != other.field {
            return Err(SeifertError::FieldMismatch(self.field, other.field));
        }
        if self.mu() != other.mu() {
            return Err(SeifertError::DimensionMismatch(format!(
                "mu {} vs {}",
                self.mu(),
                other.mu()
            )));
        }
        let (pa, pb) = direct_sum_positions(&self.dims, &other.dims);
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let n = self.n() + other.n();
        let mut e = Mat::zeros(n, n);
        for (r, &pr) in pa.iter().enumerate() {
            for (c, &pc) in pa.iter().enumerate() {
                e[(pr, pc)] = self.e[(r, c)].clone();
            }
        }
        for (r, &pr) in pb.iter().enumerate() {
            for (c, &pc) in pb.iter().enumerate() {
                e[(pr, pc)] = other.e[(r, c)].clone();
            }
        }
        Self::new(self.field, dims, e)
    }

    /// Same module in a new basis of each block: `e ↦ c^{-1} e c` for a
    /// block-diagonal invertible `c`.
    pub fn change_basis(&self, c: &Mat<F>) -> Result<Self, SeifertError> {
        if !is_block_diagonal(c, &self.dims, &self.dims) {
            return Err(SeifertError::InvalidSplit(
                "change of basis is not block diagonal".into(),
            ));
        }
        let inv = c
            .inverse()
            .map_err(|_| SeifertError::InvalidSplit("change of basis is singular".into()))?;
        Self::new(self.field, self.dims.clone(), &(&inv * &self.e) * c)
    }
}

/// Positions of the two summands' coordinates in the interleaved sum.
pub fn direct_sum_positions(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    let mut offset = 0;
    for (&x, &y) in a.iter().zip(b) {
        pa.extend(offset..offset + x);
        pb.extend(offset + x..offset + x + y);
        offset += x + y;
    }
    (pa, pb)
}

pub(crate) fn block_ranges(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(dims.len());
    let mut start = 0;
    for &d in dims {
        out.push((start..start + d).collect());
        start += d;
    }
    out
}

pub(crate) fn block_labels(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .flat_map(|(i, &d)| std::iter::repeat(i).take(d))
        .collect()
}

fn is_block_diagonal<F: Scalar>(g: &Mat<F>, row_dims: &[usize], col_dims: &[usize]) -> bool {
    let rl = block_labels(row_dims);
    let cl = block_labels(col_dims);
    g.rows() == rl.len()
        && g.cols() == cl.len()
        && (0..g.rows()).all(|r| (0..g.cols()).all(|c| rl[r] == cl[c] || g[(r, c)].is_zero()))
}

/// Descending flag `W_0 = P`, `W_{k+1} = Σ_B e π_B W_k` over the coordinate
/// sets `blocks`; returns the first `N >= 1` with `W_N = 0`.
pub fn strong_nilpotence_index<F: Scalar>(e: &Mat<F>, blocks: &[Vec<usize>]) -> Option<usize> {
    let n = e.rows();
    if n == 0 {
        return Some(1);
    }
    let mut w: Mat<F> = Mat::identity(n);
    for k in 1..=n {
        let mut next: Option<Mat<F>> = None;
        for block in blocks {
            let mut projected = Mat::zeros(n, w.cols());
            for &r in block {
                for c in 0..w.cols() {
                    projected[(r, c)] = w[(r, c)].clone();
                }
            }
            let img = e * &projected;
            next = Some(match next {
                None => img,
                Some(acc) => acc.hstack(&img),
            });
        }
        w = next.map(|m| m.column_basis()).unwrap_or_else(|| Mat::zeros(n, 0));
        if w.cols() == 0 {
            return Some(k);
        }
    }
    None
}

/// A basis of each block adapted to `P_i = P_i^+ ⊕ P_i^-`: within block `i`
/// the first `plus[i]` columns of `change_of_basis` span `P_i^+`.
#[derive(Clone, PartialEq, Debug)]
pub struct SplittingData<F> {
    pub plus: Vec<usize>,
    pub change_of_basis: Mat<F>,
}

impl<F: Scalar> SplittingData<F> {
    /// Identity basis with the given `+` counts.
    pub fn trivial(dims: &[usize], plus: Vec<usize>) -> Self {
        let n = dims.iter().sum();
        SplittingData {
            plus,
            change_of_basis: Mat::identity(n),
        }
    }

    /// Whether each new coordinate is a `+` coordinate.
    pub fn signs(&self, dims: &[usize]) -> Vec<bool> {
        dims.iter()
            .zip(&self.plus)
            .flat_map(|(&d, &p)| (0..d).map(move |k| k < p))
            .collect()
    }

    fn validate(&self, dims: &[usize]) -> Result<(), SeifertError> {
        if self.plus.len() != dims.len() {
            return Err(SeifertError::InvalidSplit(format!(
                "{} split sizes for {} blocks",
                self.plus.len(),
                dims.len()
            )));
        }
        if self.plus.iter().zip(dims).any(|(p, d)| p > d) {
            return Err(SeifertError::InvalidSplit("split larger than block".into()));
        }
        let c = &self.change_of_basis;
        if !is_block_diagonal(c, dims, dims) {
            return Err(SeifertError::InvalidSplit(
                "change of basis is not block diagonal".into(),
            ));
        }
        if c.rank() != c.rows() {
            return Err(SeifertError::InvalidSplit("change of basis is singular".into()));
        }
        Ok(())
    }
}

/// An explicit two-sided inverse of the covering presentation.
#[derive(Clone, PartialEq, Debug)]
pub struct PrimitivityCertificate<F: Scalar> {
    pub inverse: GroupRingMatrix<F>,
    pub split: Option<SplittingData<F>>,
}

impl<F: Scalar> PrimitivityCertificate<F> {
    /// Both exact product identities against `1 - e + e z`.
    pub fn verify(&self, s: &SeifertModule<F>) -> bool {
        let d = s.covering_presentation();
        let x = &self.inverse;
        if x.mu() != d.mu() || x.rows() != d.rows() || x.cols() != d.cols() {
            return false;
        }
        (&d * x).is_identity() && (x * &d).is_identity()
    }
}

/// The sign-twisted endomorphism `e'` of a split module, in the new basis,
/// together with its `2 mu` coordinate blocks (block `i`, sign `±`).
pub fn twisted_endomorphism<F: Scalar>(
    s: &SeifertModule<F>,
    split: &SplittingData<F>,
) -> Result<(Mat<F>, Vec<Vec<usize>>), SeifertError> {
    split.validate(s.dims())?;
    let e_new = s.change_basis(&split.change_of_basis)?.e;
    let n = s.n();
    let signs = split.signs(s.dims());
    let mut twisted = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            twisted[(j, k)] = if signs[k] {
                e_new[(j, k)].clone()
            } else {
                let d = if j == k { F::one() } else { F::zero() };
                d - e_new[(j, k)].clone()
            };
        }
    }
    let mut blocks = Vec::with_capacity(2 * s.mu());
    for (block, &p) in s.blocks().iter().zip(&split.plus) {
        blocks.push(block[..p].to_vec());
        blocks.push(block[p..].to_vec());
    }
    Ok((twisted, blocks))
}

/// Inverse of `1 - e + e z` built from a near-projection splitting.
///
/// In the adapted basis `1 - e + e z = (1 - e' W) S` with
/// `W = diag(1 - z_i on + coordinates, 1 - z_i^{-1} on -)` and
/// `S = diag(1 on +, z_i on -)`, so the inverse is
/// `S^{-1} Σ_{k<N} (e' W)^k`, conjugated back by the change of basis.
pub fn near_projection_certificate<F: Scalar>(
    s: &SeifertModule<F>,
    split: &SplittingData<F>,
) -> Result<PrimitivityCertificate<F>, SeifertError> {
    let (twisted, blocks) = twisted_endomorphism(s, split)?;
    let nil = strong_nilpotence_index(&twisted, &blocks).ok_or(SeifertError::NotNearProjection)?;
    let mu = s.mu();
    let n = s.n();
    let signs = split.signs(s.dims());
    let label = s.block_of();
    let one = GroupRingElem::one(mu);
    let mut w_diag = Vec::with_capacity(n);
    let mut shift_inv = Vec::with_capacity(n);
    for k in 0..n {
        let gen = label[k] as u32 + 1;
        if signs[k] {
            w_diag.push(&one - &GroupRingElem::generator(mu, gen));
            shift_inv.push(one.clone());
        } else {
            w_diag.push(&one - &GroupRingElem::generator_inv(mu, gen));
            shift_inv.push(GroupRingElem::generator_inv(mu, gen));
        }
    }
    let ew = &GroupRingMatrix::from_scalar(mu, &twisted) * &GroupRingMatrix::diagonal(mu, w_diag);
    let mut sum = GroupRingMatrix::identity(mu, n);
    let mut power = GroupRingMatrix::identity(mu, n);
    for _ in 1..nil {
        power = &power * &ew;
        sum = &sum + &power;
    }
    let x_new = &GroupRingMatrix::diagonal(mu, shift_inv) * &sum;
    let c = &split.change_of_basis;
    let c_inv = c.inverse().expect("validated invertible");
    let inverse = x_new.sandwich(c, &c_inv);
    let cert = PrimitivityCertificate {
        inverse,
        split: Some(split.clone()),
    };
    if !cert.verify(s) {
        return Err(SeifertError::CertificateCheckFailed);
    }
    Ok(cert)
}

/// Bass–Heller–Swan splitting for `mu = 1`: with `N` the nilpotency index
/// of `e(1-e)`, `e_ω = (e^N + (1-e)^N)^{-1} e^N`, `P^+ = (1-e_ω)P` and
/// `P^- = e_ω P`.
pub fn bhs_split<F: Scalar>(s: &SeifertModule<F>) -> Result<SplittingData<F>, SeifertError> {
    if s.mu() != 1 {
        return Err(SeifertError::RequiresMuOne(s.mu()));
    }
    let n = s.n();
    let id = Mat::identity(n);
    let e = s.e();
    let f = e * &(&id - e);
    let big_n = match f.nilpotency_index().expect("square") {
        Nilpotency::Index(k) => k,
        Nilpotency::NotNilpotent => return Err(SeifertError::NotNearProjection),
    };
    let a = e.pow(big_n);
    let b = (&id - e).pow(big_n);
    let sum_inv = (&a + &b)
        .inverse()
        .expect("e^N + (1-e)^N is invertible when e(1-e) is nilpotent");
    let e_omega = &sum_inv * &a;
    let plus = (&id - &e_omega).column_basis();
    let minus = e_omega.column_basis();
    let c = plus.hstack(&minus);
    debug_assert_eq!(c.rank(), n);
    Ok(SplittingData {
        plus: vec![plus.cols()],
        change_of_basis: c,
    })
}

/// Outcome of [`primitivity_decide`].
#[derive(Clone, PartialEq, Debug)]
pub enum Primitivity<F: Scalar> {
    Primitive(PrimitivityCertificate<F>),
    /// No inverse of the covering presentation with support up to the bound.
    NotPrimitiveUpTo(usize),
}

/// Decides primitivity: Bass–Heller–Swan for `mu = 1`, then the all-plus and
/// all-minus splittings, then a bounded-support search for the inverse.
pub fn primitivity_decide<F: Scalar>(s: &SeifertModule<F>, max_support: usize) -> Primitivity<F> {
    if s.mu() == 1 {
        if let Ok(split) = bhs_split(s) {
            if let Ok(cert) = near_projection_certificate(s, &split) {
                return Primitivity::Primitive(cert);
            }
        }
    }
    let all_plus = SplittingData::trivial(s.dims(), s.dims().to_vec());
    let all_minus = SplittingData::trivial(s.dims(), vec![0; s.mu()]);
    for split in [all_plus, all_minus] {
        if let Ok(cert) = near_projection_certificate(s, &split) {
            return Primitivity::Primitive(cert);
        }
    }
    let d = s.covering_presentation();
    match bounded_support_inverse(&d, max_support) {
        Ok(inverse) => {
            let split = split_from_inverse(s, &inverse)
                .filter(|sp| near_projection_certificate(s, sp).is_ok());
            Primitivity::Primitive(PrimitivityCertificate { inverse, split })
        }
        Err(InverseError::NoInverseUpTo(_)) => Primitivity::NotPrimitiveUpTo(max_support),
        Err(e) => unreachable!("covering presentation has identity augmentation: {e}"),
    }
}

/// Reads off `P_i^±` from an inverse `X = Σ_w w X_w` of `1 - e + e z`.
///
/// In the matrix convention used here, `x ∈ P_i` lies in `P_i^+` when
/// `X_w e x = 0` for every `w` ending in `z_i^{-1}` (so that `X e x z_i`
/// only involves words ending in `z_i`), and in `P_i^-` when
/// `X_w (1 - e) x = 0` for every `w` ending in `z_i` and the block-`i` part of
/// `X_1 (1 - e) x` vanishes.
pub fn split_from_inverse<F: Scalar>(
    s: &SeifertModule<F>,
    inverse: &GroupRingMatrix<F>,
) -> Option<SplittingData<F>> {
    let n = s.n();
    let coeffs: BTreeMap<Word, Mat<F>> = inverse.coefficients();
    let e = s.e();
    let one_minus_e = &Mat::identity(n) - e;
    let blocks = s.blocks();
    let mut plus_counts = Vec::with_capacity(s.mu());
    let mut c = Mat::zeros(n, n);
    for (i, block) in blocks.iter().enumerate() {
        let gen = i as u32 + 1;
        let ends_with = |w: &Word, l: Letter| w.letters().last() == Some(&l);
        let embed = Mat::identity(n).select_cols(block);
        let mut plus_cond = Mat::zeros(0, block.len());
        let mut minus_cond = Mat::zeros(0, block.len());
        for (w, xw) in &coeffs {
            if ends_with(w, Letter::new(gen, true)) {
                plus_cond = plus_cond.vstack(&(&(xw * e) * &embed));
            }
            if ends_with(w, Letter::new(gen, false)) {
                minus_cond = minus_cond.vstack(&(&(xw * &one_minus_e) * &embed));
            }
        }
        if let Some(x1) = coeffs.get(&Word::identity()) {
            let all: Vec<usize> = (0..n).collect();
            let rows = x1.select(block, &all);
            minus_cond = minus_cond.vstack(&(&(&rows * &one_minus_e) * &embed));
        }
        let plus = kernel_basis(&plus_cond, block.len());
        let minus = kernel_basis(&minus_cond, block.len());
        if plus.cols() + minus.cols() != block.len() {
            return None;
        }
        let local = plus.hstack(&minus);
        if local.rank() != block.len() {
            return None;
        }
        for (a, &r) in block.iter().enumerate() {
            for (b, &col) in block.iter().enumerate() {
                c[(r, col)] = local[(a, b)].clone();
            }
        }
        plus_counts.push(plus.cols());
    }
    Some(SplittingData {
        plus: plus_counts,
        change_of_basis: c,
    })
}

fn kernel_basis<F: Scalar>(conditions: &Mat<F>, width: usize) -> Mat<F> {
    if conditions.rows() == 0 {
        Mat::identity(width)
    } else {
        conditions.kernel()
    }
}

/// A morphism of Seifert modules, `g: P -> P'`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeifertMorphism<F> {
    pub source: SeifertModule<F>,
    pub target: SeifertModule<F>,
    pub g: Mat<F>,
}

impl<F: Scalar> SeifertMorphism<F> {
    pub fn identity(s: &SeifertModule<F>) -> Self {
        SeifertMorphism {
            source: s.clone(),
            target: s.clone(),
            g: Mat::identity(s.n()),
        }
    }

    /// First violated condition, if any.
    pub fn violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        if s.mu() != t.mu() {
            return Some(format!("mu {} vs {}", s.mu(), t.mu()));
        }
        if self.g.rows() != t.n() || self.g.cols() != s.n() {
            return Some(format!(
                "g is {}x{}, expected {}x{}",
                self.g.rows(),
                self.g.cols(),
                t.n(),
                s.n()
            ));
        }
        if !is_block_diagonal(&self.g, t.dims(), s.dims()) {
            return Some("g does not commute with the block projections".into());
        }
        if &self.g * s.e() != t.e() * &self.g {
            return Some("g e != e' g".into());
        }
        None
    }
}

/// Whether `m` is block-preserving and intertwines the endomorphisms.
pub fn morphism_check<F: Scalar>(m: &SeifertMorphism<F>) -> bool {
    m.violation().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    fn q_module(dims: &[usize], rows: &[&[i64]]) -> SeifertModule<Rational> {
        SeifertModule::new(FieldKind::Rationals, dims.to_vec(), Mat::from_i64(rows)).unwrap()
    }

    fn example() -> SeifertModule<Rational> {
        q_module(
            &[2, 2],
            &[&[0, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 0], &[1, 0, 0, 1]],
        )
    }

    fn elem(mu: usize, terms: &[(&str, i64)]) -> GroupRingElem<Rational> {
        GroupRingElem::from_terms(
            mu,
            terms
                .iter()
                .map(|(w, c)| (w.parse().unwrap(), Rational::from_i64(*c))),
        )
    }

    #[test]
    fn covering_presentation_of_example() {
        let d = example().covering_presentation();
        let zero = elem(2, &[]);
        let one = elem(2, &[("", 1)]);
        let expected = GroupRingMatrix::from_rows(
            2,
            vec![
                vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), elem(2, &[("z1", 1)]), elem(2, &[("z2", 1), ("", -1)]), zero.clone()],
                vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
                vec![elem(2, &[("z1", 1), ("", -1)]), zero.clone(), zero.clone(), elem(2, &[("z2", 1)])],
            ],
        );
        assert_eq!(d, expected);
        assert!(d.augment().is_identity());
    }

    #[test]
    fn strong_nilpotence_examples() {
        assert_eq!(SeifertModule::<Rational>::zero(FieldKind::Rationals, vec![2, 1]).strong_nilpotence(), Some(1));
        let twisted = q_module(
            &[1, 1, 1, 1],
            &[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[1, 0, 0, 0]],
        );
        assert_eq!(twisted.strong_nilpotence(), Some(2));
        assert_eq!(q_module(&[1], &[&[1]]).strong_nilpotence(), None);
        // nilpotent but not strongly nilpotent: e = [[0,1],[1,0]] on one block each
        let swap = q_module(&[1, 1], &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.strong_nilpotence(), None);
        assert_eq!(q_module(&[2], &[&[0, 1], &[0, 0]]).strong_nilpotence(), Some(2));
    }

    #[test]
    fn two_block_twisted_endomorphism() {
        let s = example();
        let split = SplittingData::trivial(s.dims(), vec![1, 1]);
        let (twisted, blocks) = twisted_endomorphism(&s, &split).unwrap();
        assert_eq!(
            twisted,
            Mat::from_i64(&[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[1, 0, 0, 0]])
        );
        assert_eq!(blocks, vec![vec![0], vec![1], vec![2], vec![3]]);
        let cert = near_projection_certificate(&s, &split).unwrap();
        assert!(cert.verify(&s));
        assert!(cert.inverse.max_word_len() <= 2);
    }

    #[test]
    fn one_by_one_certificates() {
        let s = q_module(&[1], &[&[1]]);
        let cert = near_projection_certificate(&s, &SplittingData::trivial(&[1], vec![0])).unwrap();
        assert_eq!(cert.inverse.get(0, 0), &elem(1, &[("z1^-1", 1)]));
        let zero = SeifertModule::<Rational>::zero(FieldKind::Rationals, vec![2, 1]);
        let cert = near_projection_certificate(&zero, &SplittingData::trivial(&[2, 1], vec![2, 1])).unwrap();
        assert!(cert.inverse.is_identity());
        assert_eq!(
            near_projection_certificate(&s, &SplittingData::trivial(&[1], vec![1])),
            Err(SeifertError::NotNearProjection)
        );
    }

    #[test]
    fn bhs_examples() {
        let zero = SeifertModule::<Rational>::zero(FieldKind::Rationals, vec![2]);
        assert_eq!(bhs_split(&zero).unwrap().plus, vec![2]);
        let idem = q_module(&[2], &[&[1, 0], &[0, 0]]);
        let split = bhs_split(&idem).unwrap();
        assert_eq!(split.plus, vec![1]);
        assert!(near_projection_certificate(&idem, &split).is_ok());
        let trefoil = q_module(&[2], &[&[0, -1], &[1, 1]]);
        assert_eq!(bhs_split(&trefoil), Err(SeifertError::NotNearProjection));
    }

    #[test]
    fn decide_examples() {
        assert!(matches!(primitivity_decide(&example(), 2), Primitivity::Primitive(_)));
        let trefoil = q_module(&[2], &[&[0, -1], &[1, 1]]);
        assert_eq!(primitivity_decide(&trefoil, 3), Primitivity::NotPrimitiveUpTo(3));
        let lower = q_module(&[1, 2], &[&[0, 0, 0], &[3, 0, 0], &[1, 2, 0]]);
        match primitivity_decide(&lower, 1) {
            Primitivity::Primitive(cert) => {
                assert_eq!(cert.split.unwrap().plus, vec![1, 2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn example_split_is_recovered_from_inverse() {
        let s = example();
        let x = bounded_support_inverse(&s.covering_presentation(), 2).unwrap();
        let split = split_from_inverse(&s, &x).expect("split reconstructs");
        assert_eq!(split.plus, vec![1, 1]);
        assert!(near_projection_certificate(&s, &split).is_ok());
    }

    #[test]
    fn direct_sums_and_morphisms() {
        let s = example();
        let z = SeifertModule::zero(FieldKind::Rationals, vec![0, 0]);
        assert_eq!(s.direct_sum(&z).unwrap(), s);
        let t = q_module(&[1, 1], &[&[2, 0], &[1, 1]]);
        let sum = s.direct_sum(&t).unwrap();
        assert_eq!(sum.dims(), &[3, 3]);
        assert!(morphism_check(&SeifertMorphism::identity(&sum)));
        let bad = SeifertMorphism {
            source: t.clone(),
            target: t.clone(),
            g: Mat::from_i64(&[&[0, 1], &[1, 0]]),
        };
        assert!(!morphism_check(&bad));
        let f = SeifertModule::new(FieldKind::prime(5).unwrap(), vec![1], Mat::from_rows(vec![vec![Fp::new(3, 5)]])).unwrap();
        assert_eq!(f.strong_nilpotence(), None);
    }
}
