//! Presentations of link modules by square group-ring matrices with
//! invertible augmentation, their Mayer–Vietoris linearization over finite
//! Cayley subtrees, and the passage back to Seifert modules.
//!
//! A matrix `d = Σ_u u A_u` acts on `P[F] = ⊕_g gP` by sending the copy of
//! `P` at vertex `g` to the copies at `g u` through `A_u`. A type-`i` edge
//! joins `g` and `z_i g`, so this action carries edges to edges.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::free_group::{CayleySubtree, Word};
use crate::group_ring::GroupRingMatrix;
use crate::linalg::Mat;
use crate::scalar::{FieldKind, Scalar};
use crate::seifert::{morphism_check, SeifertModule, SeifertMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlanchfieldError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("augmentation has rank {rank} < {size}")]
    NotFlk {
        rank: usize,
        size: usize,
        augmentation: Vec<Vec<String>>,
    },
    #[error("tree pair is not admissible: {0}")]
    BadTreePair(String),
    #[error("restricted map is not injective")]
    RestrictionNotInjective,
    #[error("f+ - f- is not invertible")]
    GlueSingular,
}

/// A square matrix whose augmentation is invertible, so that it is injective
/// and its cokernel is a link module of homological dimension 1.
#[derive(Clone, PartialEq, Debug)]
pub struct FlkPresentation<F: Scalar> {
    d: GroupRingMatrix<F>,
    augmentation: Mat<F>,
    augmentation_inverse: Mat<F>,
}

impl<F: Scalar> FlkPresentation<F> {
    pub fn d(&self) -> &GroupRingMatrix<F> {
        &self.d
    }

    pub fn augmentation(&self) -> &Mat<F> {
        &self.augmentation
    }

    pub fn augmentation_inverse(&self) -> &Mat<F> {
        &self.augmentation_inverse
    }

    pub fn mu(&self) -> usize {
        self.d.mu()
    }

    pub fn n(&self) -> usize {
        self.d.rows()
    }
}

/// Accepts `d` exactly when its augmentation is invertible.
pub fn check_flk<F: Scalar>(d: &GroupRingMatrix<F>) -> Result<FlkPresentation<F>, BlanchfieldError> {
    if !d.is_square() {
        return Err(BlanchfieldError::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    let aug = d.augment();
    match aug.inverse() {
        Ok(inv) => Ok(FlkPresentation {
            d: d.clone(),
            augmentation: aug,
            augmentation_inverse: inv,
        }),
        Err(_) => Err(BlanchfieldError::NotFlk {
            rank: aug.rank(),
            size: aug.rows(),
            augmentation: aug
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }),
    }
}

/// Subtrees `(T_0, T_1)` with `T_1 · supp(d) ⊆ T_0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreePair {
    pub t0: CayleySubtree,
    pub t1: CayleySubtree,
}

impl TreePair {
    /// Checks admissibility for `d`.
    pub fn new<F: Scalar>(
        d: &GroupRingMatrix<F>,
        t0: CayleySubtree,
        t1: CayleySubtree,
    ) -> Result<Self, BlanchfieldError> {
        if t0.mu() != d.mu() || t1.mu() != d.mu() {
            return Err(BlanchfieldError::BadTreePair("rank mismatch".into()));
        }
        let needed = t1.pushforward(d.support().iter());
        if !needed.is_subtree_of(&t0) {
            return Err(BlanchfieldError::BadTreePair(
                "T_0 does not contain the image of T_1".into(),
            ));
        }
        Ok(TreePair { t0, t1 })
    }

    /// `T_1` given, `T_0` its image under `d`, enlarged by `extra` vertices.
    pub fn around<'a, F: Scalar>(
        d: &GroupRingMatrix<F>,
        t1: CayleySubtree,
        extra: impl IntoIterator<Item = &'a Word>,
    ) -> Self {
        let t0 = t1.pushforward(d.support().iter()).union_with(extra);
        TreePair { t0, t1 }
    }

    /// `T_1 = {1}` and `T_0` the closure of the support of `d`.
    pub fn minimal<F: Scalar>(d: &GroupRingMatrix<F>) -> Self {
        Self::around(d, CayleySubtree::trivial(d.mu()), [])
    }
}

/// Finite Mayer–Vietoris data: `D_j = P[T_j]`, `C_j^{(i)} = P[type-i edges
/// of T_j]`, the restrictions of `d`, and the endpoint maps of `T_0`.
#[derive(Clone, PartialEq, Debug)]
pub struct MvPresentation<F> {
    pub n: usize,
    pub vertices: [Vec<Word>; 2],
    /// `edges[j][i]` lists sources of type-`(i+1)` edges of `T_j`.
    pub edges: [Vec<Vec<Word>>; 2],
    /// `D_1 -> D_0`, block `(target vertex, source vertex)` of size `n`.
    pub d_d: Mat<F>,
    /// `C_1^{(i)} -> C_0^{(i)}` for each type.
    pub d_c: Vec<Mat<F>>,
    /// Index in `vertices[0]` of the source of each `T_0` edge.
    pub f_plus: Vec<Vec<usize>>,
    /// Index in `vertices[0]` of the target `z_i g` of each `T_0` edge.
    pub f_minus: Vec<Vec<usize>>,
}

fn index_of(words: &[Word]) -> BTreeMap<&Word, usize> {
    words.iter().enumerate().map(|(k, w)| (w, k)).collect()
}

impl<F: Scalar> MvPresentation<F> {
    pub fn build(d: &GroupRingMatrix<F>, trees: &TreePair) -> Self {
        let n = d.rows();
        let mu = d.mu();
        let coeffs = d.coefficients();
        let vertices = [
            trees.t0.vertices().iter().cloned().collect::<Vec<_>>(),
            trees.t1.vertices().iter().cloned().collect::<Vec<_>>(),
        ];
        let edges = [
            (1..=mu as u32).map(|i| trees.t0.edges_of_type(i)).collect::<Vec<_>>(),
            (1..=mu as u32).map(|i| trees.t1.edges_of_type(i)).collect::<Vec<_>>(),
        ];
        let v0 = index_of(&vertices[0]);
        let translate = |sources: &[Word], targets: &BTreeMap<&Word, usize>, count: usize| {
            let mut m = Mat::zeros(n * count, n * sources.len());
            for (a, g) in sources.iter().enumerate() {
                for (u, coeff) in &coeffs {
                    let b = targets[&g.mul(u)];
                    for r in 0..n {
                        for c in 0..n {
                            m[(b * n + r, a * n + c)] += coeff[(r, c)].clone();
                        }
                    }
                }
            }
            m
        };
        let d_d = translate(&vertices[1], &v0, vertices[0].len());
        let d_c = (0..mu)
            .map(|i| {
                let e0 = index_of(&edges[0][i]);
                translate(&edges[1][i], &e0, edges[0][i].len())
            })
            .collect();
        let f_plus = edges[0].iter().map(|es| es.iter().map(|g| v0[g]).collect()).collect();
        let f_minus = edges[0]
            .iter()
            .enumerate()
            .map(|(i, es)| {
                es.iter()
                    .map(|g| v0[&Word::generator(i as u32 + 1).mul(g)])
                    .collect()
            })
            .collect();
        MvPresentation {
            n,
            vertices,
            edges,
            d_d,
            d_c,
            f_plus,
            f_minus,
        }
    }

    /// `C_0^{(i)} -> D_0` placing each edge copy at one endpoint.
    pub fn endpoint_map(&self, i: usize, plus: bool) -> Mat<F> {
        let n = self.n;
        let targets = if plus { &self.f_plus[i] } else { &self.f_minus[i] };
        let mut m = Mat::zeros(n * self.vertices[0].len(), n * targets.len());
        for (a, &b) in targets.iter().enumerate() {
            for r in 0..n {
                m[(b * n + r, a * n + r)] = F::one();
            }
        }
        m
    }

    /// Endpoint map `C_1^{(i)} -> D_1`, used to check the grid commutes.
    fn endpoint_map_t1(&self, i: usize, plus: bool) -> Mat<F> {
        let n = self.n;
        let v1 = index_of(&self.vertices[1]);
        let sources = &self.edges[1][i];
        let mut m = Mat::zeros(n * self.vertices[1].len(), n * sources.len());
        for (a, g) in sources.iter().enumerate() {
            let target = if plus {
                g.clone()
            } else {
                Word::generator(i as u32 + 1).mul(g)
            };
            let b = v1[&target];
            for r in 0..n {
                m[(b * n + r, a * n + r)] = F::one();
            }
        }
        m
    }

    /// `d_D ∘ f^± = f^± ∘ d_C` for every edge type.
    pub fn check_commutes(&self) -> bool {
        (0..self.d_c.len()).all(|i| {
            [true, false].into_iter().all(|plus| {
                &self.d_d * &self.endpoint_map_t1(i, plus) == &self.endpoint_map(i, plus) * &self.d_c[i]
            })
        })
    }

    pub fn edge_counts(&self, j: usize) -> Vec<usize> {
        self.edges[j].iter().map(Vec::len).collect()
    }
}

/// Mayer–Vietoris presentation over `T_1` and its minimal `T_0`.
pub fn mayer_vietoris<F: Scalar>(d: &GroupRingMatrix<F>, t1: &CayleySubtree) -> MvPresentation<F> {
    MvPresentation::build(d, &TreePair::around(d, t1.clone(), []))
}

/// Seifert module of a tree pair together with the refinement map
/// `P -> P<T>` induced by the inclusion of `P` at the vertex 1.
#[derive(Clone, PartialEq, Debug)]
pub struct Transversal<F> {
    pub module: SeifertModule<F>,
    pub refine: Mat<F>,
}

/// `P_i<T> = coker(d_C^{(i)})`, `Q<T> = coker(d_D)`, and
/// `e<T> = (f^+ - f^-)^{-1} f^+` on `⊕ P_i<T>`.
pub fn transversalize<F: Scalar>(
    flk: &FlkPresentation<F>,
    trees: &TreePair,
    field: FieldKind,
) -> Result<Transversal<F>, BlanchfieldError> {
    let d = flk.d();
    let trees = TreePair::new(d, trees.t0.clone(), trees.t1.clone())?;
    let mv = MvPresentation::build(d, &trees);
    let injective = |m: &Mat<F>| m.rank() == m.cols();
    if !injective(&mv.d_d) || !mv.d_c.iter().all(injective) {
        return Err(BlanchfieldError::RestrictionNotInjective);
    }
    let q = mv.d_d.cokernel_with_section();
    let q_dim = q.proj.rows();
    let mut f_plus = Mat::zeros(q_dim, 0);
    let mut f_minus = Mat::zeros(q_dim, 0);
    let mut dims = Vec::with_capacity(d.mu());
    for (i, dc) in mv.d_c.iter().enumerate() {
        let p = dc.cokernel_with_section();
        // section: the complement basis columns of C_0^{(i)}
        let mut section = Mat::zeros(dc.rows(), p.basis.len());
        for (k, &b) in p.basis.iter().enumerate() {
            section[(b, k)] = F::one();
        }
        f_plus = f_plus.hstack(&(&(&q.proj * &mv.endpoint_map(i, true)) * &section));
        f_minus = f_minus.hstack(&(&(&q.proj * &mv.endpoint_map(i, false)) * &section));
        dims.push(p.basis.len());
    }
    if f_plus.cols() != q_dim {
        return Err(BlanchfieldError::GlueSingular);
    }
    let glue_inv = (&f_plus - &f_minus)
        .inverse()
        .map_err(|_| BlanchfieldError::GlueSingular)?;
    let e = &glue_inv * &f_plus;
    let n = flk.n();
    let v0 = index_of(&mv.vertices[0]);
    let at_one = v0[&Word::identity()];
    let mut include = Mat::zeros(mv.d_d.rows(), n);
    for r in 0..n {
        include[(at_one * n + r, r)] = F::one();
    }
    let refine = &(&glue_inv * &q.proj) * &include;
    let module = SeifertModule::new(field, dims, e)
        .map_err(|err| BlanchfieldError::BadTreePair(err.to_string()))?;
    Ok(Transversal { module, refine })
}

/// Transversalizes the covering presentation of `s` and checks that the
/// refinement map is a morphism of Seifert modules `s -> s<T>`.
pub fn refine_check<F: Scalar>(
    s: &SeifertModule<F>,
    flk: &FlkPresentation<F>,
    trees: &TreePair,
) -> Result<Transversal<F>, String> {
    if flk.d() != &s.covering_presentation() {
        return Err("presentation is not the covering of the module".into());
    }
    let t = transversalize(flk, trees, s.field()).map_err(|e| e.to_string())?;
    let m = SeifertMorphism {
        source: s.clone(),
        target: t.module.clone(),
        g: t.refine.clone(),
    };
    match m.violation() {
        None => {
            debug_assert!(morphism_check(&m));
            Ok(t)
        }
        Some(v) => Err(v),
    }
}
