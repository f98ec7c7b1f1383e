use serde_json::{json, Value};

use linkring::blanchfield::{check_flk, mayer_vietoris, transversalize, BlanchfieldError, TreePair};
use linkring::invariants::{abel_det, abel_det_class, alexander, torsion, InvariantError};
use linkring::magnus_fox::{bounded_support_inverse, series_mat_inverse, InverseError, TruncSeriesMatrix};
use linkring::seifert::{bhs_split, near_projection_certificate, primitivity_decide, twisted_endomorphism, Primitivity, SeifertError};
use linkring::serial::{
    certificate_from_doc, certificate_to_doc, mat_to_rows, matrix_from_doc, matrix_to_doc, seifert_from_doc,
    seifert_to_doc, tree_from_words, tree_to_words, ChainDoc, CertifiedModuleDoc, MatrixDoc, SeifertDoc, SerialError,
    SplitDoc,
};
use linkring::{FieldKind, Scalar};

/// A command that did not produce a result document.
#[derive(Debug)]
pub enum Failure {
    /// Well-formed input outside the domain of the operation; exit 1.
    Domain { code: &'static str, detail: Value },
    /// Unreadable or malformed input; exit 2.
    Malformed(String),
}

impl From<SerialError> for Failure {
    fn from(e: SerialError) -> Self {
        Failure::Malformed(e.to_string())
    }
}

fn domain(code: &'static str, detail: impl Into<Value>) -> Failure {
    Failure::Domain {
        code,
        detail: detail.into(),
    }
}

fn seifert_failure(e: SeifertError) -> Failure {
    match e {
        SeifertError::RequiresMuOne(mu) => domain("RequiresMuOne", json!({ "mu": mu })),
        SeifertError::NotNearProjection => domain("NotNearProjection", e.to_string()),
        SeifertError::CertificateCheckFailed => domain("CertificateCheckFailed", e.to_string()),
        other => Failure::Malformed(other.to_string()),
    }
}

fn invariant_failure(e: InvariantError) -> Failure {
    match e {
        InvariantError::NotSquare { rows, cols } => domain("NotSquare", json!({ "rows": rows, "cols": cols })),
        InvariantError::ZeroDeterminant => domain("ZeroDeterminant", e.to_string()),
        InvariantError::RequiresMuOne(mu) => domain("RequiresMuOne", json!({ "mu": mu })),
        InvariantError::EmptyChain | InvariantError::Inconsistent(_) => Failure::Malformed(e.to_string()),
    }
}

fn blanchfield_failure(e: BlanchfieldError) -> Failure {
    match e {
        BlanchfieldError::NotSquare { rows, cols } => domain("NotSquare", json!({ "rows": rows, "cols": cols })),
        BlanchfieldError::NotFlk {
            rank,
            size,
            augmentation,
        } => domain(
            "NotFlk",
            json!({ "rank": rank, "size": size, "augmentation": augmentation }),
        ),
        BlanchfieldError::BadTreePair(msg) => domain("BadTreePair", msg),
        BlanchfieldError::RestrictionNotInjective => domain("RestrictionNotInjective", e.to_string()),
        BlanchfieldError::GlueSingular => domain("GlueSingular", e.to_string()),
    }
}

fn to_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

pub fn cover<F: Scalar>(doc: &SeifertDoc) -> Result<Value, Failure> {
    let s = seifert_from_doc::<F>(doc)?;
    Ok(to_value(&matrix_to_doc(&s.covering_presentation(), s.field())))
}

pub fn primitive<F: Scalar>(doc: &SeifertDoc, bound: usize) -> Result<Value, Failure> {
    let s = seifert_from_doc::<F>(doc)?;
    match primitivity_decide(&s, bound) {
        Primitivity::Primitive(cert) => Ok(json!({
            "primitive": true,
            "certificate": to_value(&certificate_to_doc(&cert, s.field())),
        })),
        Primitivity::NotPrimitiveUpTo(l) => Err(domain("NotPrimitiveUpTo", json!({ "bound": l }))),
    }
}

pub fn split<F: Scalar>(doc: &SeifertDoc) -> Result<Value, Failure> {
    let s = seifert_from_doc::<F>(doc)?;
    let sp = bhs_split(&s).map_err(seifert_failure)?;
    let (twisted, _) = twisted_endomorphism(&s, &sp).map_err(seifert_failure)?;
    Ok(json!({
        "split": to_value(&SplitDoc {
            plus: sp.plus.clone(),
            change_of_basis: mat_to_rows(&sp.change_of_basis),
        }),
        "twisted": mat_to_rows(&twisted),
    }))
}

pub fn verify_certificate<F: Scalar>(doc: &CertifiedModuleDoc) -> Result<Value, Failure> {
    let s = seifert_from_doc::<F>(&doc.module)?;
    let cert = certificate_from_doc::<F>(&doc.certificate, s.field())?;
    if !cert.verify(&s) {
        return Err(domain("CertificateCheckFailed", "inverse does not satisfy both product identities"));
    }
    if let Some(sp) = &cert.split {
        near_projection_certificate(&s, sp).map_err(seifert_failure)?;
    }
    Ok(json!({ "valid": true, "split_checked": cert.split.is_some() }))
}

pub fn check_flk_cmd<F: Scalar>(doc: &MatrixDoc) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let flk = check_flk(&d).map_err(blanchfield_failure)?;
    Ok(json!({
        "flk": true,
        "augmentation_inverse": mat_to_rows(flk.augmentation_inverse()),
    }))
}

pub fn linearize<F: Scalar>(doc: &MatrixDoc, tree: &[String]) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let t1 = tree_from_words(d.mu(), tree)?;
    let mv = mayer_vietoris(&d, &t1);
    let words = |ws: &[linkring::Word]| ws.iter().map(ToString::to_string).collect::<Vec<_>>();
    let edges = |j: usize| mv.edges[j].iter().map(|es| words(es)).collect::<Vec<_>>();
    Ok(json!({
        "t0": words(&mv.vertices[0]),
        "t1": words(&mv.vertices[1]),
        "edges_t0": edges(0),
        "edges_t1": edges(1),
        "d_D": mat_to_rows(&mv.d_d),
        "d_C": mv.d_c.iter().map(mat_to_rows).collect::<Vec<_>>(),
        "f_plus": mv.f_plus,
        "f_minus": mv.f_minus,
        "commutes": mv.check_commutes(),
    }))
}

pub fn transversalize_cmd<F: Scalar>(doc: &MatrixDoc, tree: &[String]) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let field = linkring::serial::field_of_matrix(doc)?;
    let flk = check_flk(&d).map_err(blanchfield_failure)?;
    let t1 = tree_from_words(d.mu(), tree)?;
    let trees = TreePair::around(&d, t1, []);
    let t = transversalize(&flk, &trees, field).map_err(blanchfield_failure)?;
    Ok(json!({
        "t0": tree_to_words(&trees.t0),
        "t1": tree_to_words(&trees.t1),
        "module": to_value(&seifert_to_doc(&t.module)),
        "refine": mat_to_rows(&t.refine),
    }))
}

pub fn alexander_cmd<F: Scalar>(doc: &SeifertDoc) -> Result<Value, Failure> {
    let s = seifert_from_doc::<F>(doc)?;
    let p = alexander(&s).map_err(invariant_failure)?;
    Ok(json!({ "alexander": p.to_string() }))
}

pub fn abel_det_cmd<F: Scalar>(doc: &MatrixDoc) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let raw = abel_det(&d).map_err(invariant_failure)?;
    let class = abel_det_class(&d).map_err(invariant_failure)?;
    Ok(json!({ "abel_det": class.to_string(), "raw": raw.to_string() }))
}

pub fn torsion_cmd<F: Scalar>(doc: &ChainDoc) -> Result<Value, Failure> {
    let modules = doc
        .modules
        .iter()
        .map(seifert_from_doc::<F>)
        .collect::<Result<Vec<_>, _>>()?;
    let t = torsion(&modules).map_err(invariant_failure)?;
    Ok(json!({
        "torsion": {
            "numerator": t.numerator().to_string(),
            "denominator": t.denominator().to_string(),
        },
        "class": t.to_string(),
    }))
}

pub fn invert<F: Scalar>(doc: &MatrixDoc, bound: usize) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let field = linkring::serial::field_of_matrix(doc)?;
    match bounded_support_inverse(&d, bound) {
        Ok(x) => Ok(json!({ "inverse": to_value(&matrix_to_doc(&x, field)) })),
        Err(InverseError::NotSquare { rows, cols }) => Err(domain("NotSquare", json!({ "rows": rows, "cols": cols }))),
        Err(InverseError::AugmentationSingular) => Err(domain("AugmentationSingular", "augmentation is singular")),
        Err(InverseError::NoInverseUpTo(l)) => Err(domain("NoInverseUpTo", json!({ "bound": l }))),
    }
}

/// Monomials print as space-separated `x<k>`; the constant monomial is `""`.
pub fn series_inverse<F: Scalar>(doc: &MatrixDoc, degree: usize) -> Result<Value, Failure> {
    let d = matrix_from_doc::<F>(doc)?;
    let m = TruncSeriesMatrix::embed(&d, degree);
    let inv = series_mat_inverse(&m).map_err(|e| match e {
        linkring::magnus_fox::SeriesError::NotSquare { rows, cols } => {
            domain("NotSquare", json!({ "rows": rows, "cols": cols }))
        }
        linkring::magnus_fox::SeriesError::ConstantTermSingular => domain("ConstantTermSingular", e.to_string()),
    })?;
    let entries: Vec<Vec<Vec<Value>>> = (0..inv.rows())
        .map(|r| {
            (0..inv.cols())
                .map(|c| {
                    inv.get(r, c)
                        .terms()
                        .iter()
                        .map(|(mono, x)| {
                            let text: Vec<String> = mono.iter().map(|j| format!("x{j}")).collect();
                            json!({ "monomial": text.join(" "), "coeff": x.to_string() })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(json!({ "degree": degree, "inverse": entries }))
}

/// `Q` or `GF(p)` of a document, for dispatch on the scalar type.
pub fn seifert_field(doc: &SeifertDoc) -> Result<FieldKind, Failure> {
    Ok(linkring::serial::field_of_seifert(doc)?)
}
