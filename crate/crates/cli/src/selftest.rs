//! Seeded randomized checks of the library laws, runnable from the binary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use linkring::blanchfield::{check_flk, refine_check, TreePair};
use linkring::invariants::abel_det_class;
use linkring::magnus_fox::{embed, series_mat_inverse, TruncSeriesMatrix};
use linkring::seifert::{primitivity_decide, strong_nilpotence_index, Primitivity};
use linkring::serial::{from_json, matrix_from_doc, matrix_to_doc, seifert_from_doc, seifert_to_doc, to_json, MatrixDoc, SeifertDoc};
use linkring::{random, FieldKind, Fp, Mat, Nilpotency, Rational, Scalar, Word};

const GF5: FieldKind = FieldKind::Prime(5);

struct Check {
    name: &'static str,
    passed: usize,
    failed: usize,
}

fn check(name: &'static str, cases: usize, rng: &mut ChaCha8Rng, mut case: impl FnMut(&mut ChaCha8Rng) -> bool) -> Check {
    let mut c = Check { name, passed: 0, failed: 0 };
    for _ in 0..cases {
        if case(rng) {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
    c
}

/// Whether every product `e π_{b_k} ⋯ e π_{b_1}` of length `k` vanishes.
fn all_paths_vanish<F: Scalar>(e: &Mat<F>, blocks: &[Vec<usize>], k: usize) -> bool {
    let n = e.rows();
    let proj = |b: &[usize]| {
        let mut p = Mat::zeros(n, n);
        for &i in b {
            p[(i, i)] = F::one();
        }
        p
    };
    let steps: Vec<Mat<F>> = blocks.iter().map(|b| e * &proj(b)).collect();
    let mut layer = vec![Mat::identity(n)];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|m| steps.iter().map(move |s| s * m))
            .filter(|m| !m.is_zero())
            .collect();
    }
    layer.is_empty()
}

fn path_index<F: Scalar>(e: &Mat<F>, blocks: &[Vec<usize>]) -> Option<usize> {
    (1..=e.rows().max(1)).find(|&k| all_paths_vanish(e, blocks, k))
}

fn json_round_trip<F: Scalar>(rng: &mut ChaCha8Rng, field: FieldKind) -> bool {
    let mu = rng.gen_range(1..=3);
    let (r, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let m = random::group_ring_matrix::<F, _>(rng, field, mu, r, c, 3, 3);
    let text = to_json(&matrix_to_doc(&m, field));
    let back = from_json::<MatrixDoc>(&text).and_then(|d| matrix_from_doc::<F>(&d));
    let dims = random::dims(rng, mu, 4);
    let s = random::seifert::<F, _>(rng, field, dims, 0.6);
    let stext = to_json(&seifert_to_doc(&s));
    let sback = from_json::<SeifertDoc>(&stext).and_then(|d| seifert_from_doc::<F>(&d));
    back.as_ref() == Ok(&m)
        && to_json(&matrix_to_doc(&back.unwrap(), field)) == text
        && sback.as_ref() == Ok(&s)
}

fn transversality<F: Scalar>(rng: &mut ChaCha8Rng, field: FieldKind) -> bool {
    let mu = rng.gen_range(1..=2);
    let dims = random::dims(rng, mu, 4);
    let s = random::seifert::<F, _>(rng, field, dims, 0.5);
    let d = s.covering_presentation();
    let Ok(flk) = check_flk(&d) else { return false };
    match refine_check(&s, &flk, &TreePair::minimal(&d)) {
        Ok(t) => abel_det_class(&t.module.covering_presentation()) == abel_det_class(&d),
        Err(_) => false,
    }
}

pub fn run(seed: u64, cases: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        check("word_laws", cases, &mut rng, |rng| {
            let mu = rng.gen_range(1..=3);
            let a = random::word(rng, mu, 6);
            let b = random::word(rng, mu, 6);
            a.to_string().parse::<Word>().as_ref() == Ok(&a)
                && a.mul(&b).inverse() == b.inverse().mul(&a.inverse())
                && a.mul(&a.inverse()).is_identity()
        }),
        check("json_round_trip", cases, &mut rng, |rng| {
            json_round_trip::<Rational>(rng, FieldKind::Rationals) && json_round_trip::<Fp>(rng, GF5)
        }),
        check("strong_nilpotence_vs_paths", cases, &mut rng, |rng| {
            let mu = rng.gen_range(1..=2);
            let dims = random::dims(rng, mu, 4);
            let s = random::seifert::<Fp, _>(rng, GF5, dims, 0.3);
            strong_nilpotence_index(s.e(), &s.blocks()) == path_index(s.e(), &s.blocks())
        }),
        check("transversality_round_trip", cases, &mut rng, |rng| {
            if rng.gen_bool(0.5) {
                transversality::<Fp>(rng, GF5)
            } else {
                transversality::<Rational>(rng, FieldKind::Rationals)
            }
        }),
        check("magnus_fox_morphism", cases, &mut rng, |rng| {
            let mu = rng.gen_range(1..=2);
            let a = random::elem::<Rational, _>(rng, FieldKind::Rationals, mu, 3, 3);
            let b = random::elem::<Rational, _>(rng, FieldKind::Rationals, mu, 3, 3);
            let n = rng.gen_range(1..=2);
            let m = random::group_ring_matrix::<Fp, _>(rng, GF5, mu, n, n, 2, 2);
            let series_ok = match series_mat_inverse(&TruncSeriesMatrix::embed(&m, 4)) {
                Ok(inv) => (&TruncSeriesMatrix::embed(&m, 4) * &inv).is_identity(),
                Err(_) => m.augment().rank() < n,
            };
            embed(&(&a * &b), 4) == &embed(&a, 4) * &embed(&b, 4) && series_ok
        }),
        check("bhs_completeness", cases, &mut rng, |rng| {
            let s = random::seifert::<Fp, _>(rng, GF5, vec![3], 0.5);
            let id = Mat::identity(3);
            let f = s.e() * &(&id - s.e());
            let nilpotent = matches!(f.nilpotency_index(), Ok(Nilpotency::Index(_)));
            match primitivity_decide(&s, 3) {
                Primitivity::Primitive(cert) => {
                    nilpotent
                        && cert.verify(&s)
                        && abel_det_class(&s.covering_presentation()).map(|p| p.is_one()) == Ok(true)
                }
                Primitivity::NotPrimitiveUpTo(_) => !nilpotent,
            }
        }),
    ];
    let ok = checks.iter().all(|c| c.failed == 0);
    json!({
        "seed": seed,
        "cases": cases,
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "failed": c.failed }))
            .collect::<Vec<_>>(),
        "ok": ok,
    })
}
