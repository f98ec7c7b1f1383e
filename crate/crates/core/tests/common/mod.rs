//! Brute-force oracles shared by the integration tests. None of them call the
//! library routine they are compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use linkring::{Fp, GroupRingElem, GroupRingMatrix, Mat, Rational, Scalar, Word};

/// Smallest `k >= 1` such that every product `e π_{b_k} ⋯ e π_{b_1}` vanishes,
/// by enumerating block sequences.
pub fn path_index<F: Scalar>(e: &Mat<F>, blocks: &[Vec<usize>]) -> Option<usize> {
    let n = e.rows();
    let steps: Vec<Vec<Vec<F>>> = blocks
        .iter()
        .map(|b| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| if b.contains(&c) { e[(r, c)].clone() } else { F::zero() })
                        .collect()
                })
                .collect()
        })
        .collect();
    let ident: Vec<Vec<F>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { F::one() } else { F::zero() }).collect())
        .collect();
    let mut layer = vec![ident];
    for k in 1..=n.max(1) {
        let mut next = Vec::new();
        for m in &layer {
            for s in &steps {
                let p = dense_mul(s, m);
                if p.iter().flatten().any(|x| !x.is_zero()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return Some(k);
        }
        layer = next;
    }
    None
}

pub fn dense_mul<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let mut acc = F::zero();
                    for (k, row) in b.iter().enumerate() {
                        acc += a[r][k].clone() * row[c].clone();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Product of group-ring matrices straight from the definition, one term
/// pair at a time.
pub fn naive_product<F: Scalar>(a: &GroupRingMatrix<F>, b: &GroupRingMatrix<F>) -> Vec<Vec<BTreeMap<Word, F>>> {
    let mut out = vec![vec![BTreeMap::new(); b.cols()]; a.rows()];
    for r in 0..a.rows() {
        for c in 0..b.cols() {
            let cell: &mut BTreeMap<Word, F> = &mut out[r][c];
            for k in 0..a.cols() {
                for (u, x) in a.get(r, k).terms() {
                    for (v, y) in b.get(k, c).terms() {
                        let w = u.mul(v);
                        let t = cell.entry(w).or_insert_with(F::zero);
                        *t += x.clone() * y.clone();
                    }
                }
            }
            cell.retain(|_, x| !x.is_zero());
        }
    }
    out
}

pub fn naive_is_identity<F: Scalar>(p: &[Vec<BTreeMap<Word, F>>]) -> bool {
    p.iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(c, cell)| {
            if r == c {
                cell.len() == 1 && cell.get(&Word::identity()).is_some_and(|x| x.is_one())
            } else {
                cell.is_empty()
            }
        })
    })
}

/// Sum of coefficients of every entry.
pub fn naive_augmentation<F: Scalar>(d: &GroupRingMatrix<F>) -> Vec<Vec<F>> {
    (0..d.rows())
        .map(|r| {
            (0..d.cols())
                .map(|c| d.get(r, c).terms().values().fold(F::zero(), |acc, x| acc + x.clone()))
                .collect()
        })
        .collect()
}

/// Laplace expansion along the first row.
pub fn laplace_det<F: Scalar>(m: &[Vec<F>]) -> F {
    let n = m.len();
    if n == 0 {
        return F::one();
    }
    let mut acc = F::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<F>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][c].clone() * laplace_det(&minor);
        if c % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `a^n == 0` for an `n x n` matrix over GF(p), in plain modular integers.
pub fn nilpotent_mod_p(a: &[Vec<u64>], p: u64) -> bool {
    let n = a.len();
    let mul = |x: &[Vec<u64>], y: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| x[r][k] * y[k][c] % p).sum::<u64>() % p).collect())
            .collect()
    };
    let mut power = a.to_vec();
    for _ in 1..n.max(1) {
        power = mul(&power, a);
    }
    power.iter().flatten().all(|&x| x == 0)
}

pub fn fp_values(m: &Mat<Fp>) -> Vec<Vec<u64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.value() as u64).collect()).collect()
}

pub fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn elem(mu: usize, terms: &[(&str, i64)]) -> GroupRingElem<Rational> {
    GroupRingElem::from_terms(mu, terms.iter().map(|&(s, c)| (w(s), q(c))))
}
