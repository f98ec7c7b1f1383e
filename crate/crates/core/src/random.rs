//! Random instances for property tests and the self-test.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::free_group::{CayleySubtree, Letter, Word};
use crate::group_ring::{GroupRingElem, GroupRingMatrix};
use crate::linalg::Mat;
use crate::scalar::{FieldKind, Rational, Scalar};
use crate::seifert::SeifertModule;

/// Small field element; over Q numerators lie in -3..=3 and denominators in 1..=3.
pub fn scalar<F: Scalar, R: Rng + ?Sized>(rng: &mut R, field: FieldKind) -> F {
    let text = match field {
        FieldKind::Rationals => {
            let n: i64 = rng.gen_range(-3..=3);
            let d: i64 = rng.gen_range(1..=3);
            Rational::new(n.into(), d.into()).to_string()
        }
        FieldKind::Prime(p) => rng.gen_range(0..p).to_string(),
    };
    F::parse_in(&text, field).expect("generated text is canonical")
}

/// Nonzero with probability `density`, otherwise zero.
pub fn sparse_scalar<F: Scalar, R: Rng + ?Sized>(rng: &mut R, field: FieldKind, density: f64) -> F {
    if rng.gen_bool(density) {
        scalar(rng, field)
    } else {
        F::parse_in("0", field).expect("zero parses")
    }
}

pub fn mat<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldKind,
    rows: usize,
    cols: usize,
    density: f64,
) -> Mat<F> {
    let data = (0..rows * cols).map(|_| sparse_scalar(rng, field, density)).collect();
    Mat::from_vec(rows, cols, data)
}

/// Reduced word of length at most `max_len`.
pub fn word<R: Rng + ?Sized>(rng: &mut R, mu: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(1..=mu as u32), rng.gen_bool(0.5));
        if letters.last() != Some(&l.inv()) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

pub fn elem<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldKind,
    mu: usize,
    max_terms: usize,
    max_len: usize,
) -> GroupRingElem<F> {
    let k = rng.gen_range(0..=max_terms);
    GroupRingElem::from_terms(mu, (0..k).map(|_| (word(rng, mu, max_len), scalar(rng, field))))
}

pub fn group_ring_matrix<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldKind,
    mu: usize,
    rows: usize,
    cols: usize,
    max_terms: usize,
    max_len: usize,
) -> GroupRingMatrix<F> {
    let rows_v = (0..rows)
        .map(|_| (0..cols).map(|_| elem(rng, field, mu, max_terms, max_len)).collect())
        .collect();
    if rows == 0 || cols == 0 {
        return GroupRingMatrix::zeros(mu, rows, cols);
    }
    GroupRingMatrix::from_rows(mu, rows_v)
}

/// Block sizes summing to at most `max_n`, each possibly zero.
pub fn dims<R: Rng + ?Sized>(rng: &mut R, mu: usize, max_n: usize) -> Vec<usize> {
    let n = rng.gen_range(0..=max_n);
    let mut d = vec![0; mu];
    for _ in 0..n {
        d[rng.gen_range(0..mu)] += 1;
    }
    d
}

pub fn seifert<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldKind,
    dims: Vec<usize>,
    density: f64,
) -> SeifertModule<F> {
    let n = dims.iter().sum();
    let e = mat(rng, field, n, n, density);
    SeifertModule::new(field, dims, e).expect("dimensions agree")
}

/// Geodesic closure of a few random words, at most `max_vertices` vertices.
pub fn subtree<R: Rng + ?Sized>(rng: &mut R, mu: usize, max_vertices: usize) -> CayleySubtree {
    let mut t = CayleySubtree::trivial(mu);
    let mut candidates: Vec<Word> = (0..4).map(|_| word(rng, mu, 3)).collect();
    candidates.shuffle(rng);
    for w in candidates {
        let bigger = t.union_with([&w]);
        if bigger.vertex_count() <= max_vertices {
            t = bigger;
        }
    }
    t
}
