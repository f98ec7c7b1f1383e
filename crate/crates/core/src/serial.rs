//! JSON documents for matrices, Seifert modules and certificates.
//!
//! Scalars are canonical strings (`"p/q"` or `"p"` over Q, `"0".."p-1"` over
//! GF(p)); words use the space-separated letter syntax. A group-ring matrix
//! lists, for every entry, its terms in canonical word order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::free_group::{CayleySubtree, Word, WordError};
use crate::group_ring::{GroupRingElem, GroupRingMatrix};
use crate::linalg::Mat;
use crate::scalar::{FieldKind, Scalar, ScalarError};
use crate::seifert::{PrimitivityCertificate, SeifertModule, SplittingData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerialError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("malformed document: {0}")]
    Shape(String),
}

impl From<serde_json::Error> for SerialError {
    fn from(e: serde_json::Error) -> Self {
        SerialError::Json(e.to_string())
    }
}

fn shape(msg: impl Into<String>) -> SerialError {
    SerialError::Shape(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub word: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    /// Omitted for Q.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub mu: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermDoc>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertDoc {
    pub field: String,
    pub mu: usize,
    pub dims: Vec<usize>,
    pub e: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDoc {
    pub plus: Vec<usize>,
    pub change_of_basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub inverse: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitDoc>,
}

/// Input of `verify-certificate`: a module and a claimed certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifiedModuleDoc {
    pub module: SeifertDoc,
    pub certificate: CertificateDoc,
}

/// Input of `torsion`: modules in degree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub modules: Vec<SeifertDoc>,
}

pub fn field_of_matrix(doc: &MatrixDoc) -> Result<FieldKind, SerialError> {
    match &doc.field {
        None => Ok(FieldKind::Rationals),
        Some(f) if f == "Q" => Err(shape("the field key is omitted for Q")),
        Some(f) => Ok(f.parse()?),
    }
}

pub fn field_of_seifert(doc: &SeifertDoc) -> Result<FieldKind, SerialError> {
    Ok(doc.field.parse()?)
}

fn check_supported<F: Scalar>(field: FieldKind) -> Result<(), SerialError> {
    if F::supports(field) {
        Ok(())
    } else {
        Err(shape(format!("scalar type cannot hold {field}")))
    }
}

pub fn mat_to_rows<F: Scalar>(m: &Mat<F>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn mat_from_rows<F: Scalar>(
    rows: &[Vec<String>],
    cols: usize,
    field: FieldKind,
) -> Result<Mat<F>, SerialError> {
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        if row.len() != cols {
            return Err(shape(format!("row of length {}, expected {cols}", row.len())));
        }
        for x in row {
            data.push(F::parse_in(x, field)?);
        }
    }
    Ok(Mat::from_vec(rows.len(), cols, data))
}

pub fn matrix_to_doc<F: Scalar>(m: &GroupRingMatrix<F>, field: FieldKind) -> MatrixDoc {
    let entries = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    m.get(r, c)
                        .terms()
                        .iter()
                        .map(|(w, x)| TermDoc {
                            word: w.to_string(),
                            coeff: x.to_string(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    MatrixDoc {
        field: match field {
            FieldKind::Rationals => None,
            f => Some(f.to_string()),
        },
        mu: m.mu(),
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

pub fn matrix_from_doc<F: Scalar>(doc: &MatrixDoc) -> Result<GroupRingMatrix<F>, SerialError> {
    let field = field_of_matrix(doc)?;
    check_supported::<F>(field)?;
    if doc.mu == 0 {
        return Err(shape("mu must be at least 1"));
    }
    if doc.entries.len() != doc.rows {
        return Err(shape(format!("{} rows listed, {} declared", doc.entries.len(), doc.rows)));
    }
    let mut m = GroupRingMatrix::zeros(doc.mu, doc.rows, doc.cols);
    for (r, row) in doc.entries.iter().enumerate() {
        if row.len() != doc.cols {
            return Err(shape(format!("row {r} has {} entries, {} declared", row.len(), doc.cols)));
        }
        for (c, terms) in row.iter().enumerate() {
            let mut elem = GroupRingElem::zero(doc.mu);
            for t in terms {
                let w: Word = t.word.parse()?;
                w.check_mu(doc.mu)?;
                let x = F::parse_in(&t.coeff, field)?;
                if x.is_zero() {
                    return Err(shape("zero coefficients are not stored"));
                }
                if elem.terms().contains_key(&w) {
                    return Err(shape(format!("word {:?} repeated in entry ({r},{c})", t.word)));
                }
                elem.add_term(w, x);
            }
            m.set(r, c, elem);
        }
    }
    Ok(m)
}

pub fn seifert_to_doc<F: Scalar>(s: &SeifertModule<F>) -> SeifertDoc {
    SeifertDoc {
        field: s.field().to_string(),
        mu: s.mu(),
        dims: s.dims().to_vec(),
        e: mat_to_rows(s.e()),
    }
}

pub fn seifert_from_doc<F: Scalar>(doc: &SeifertDoc) -> Result<SeifertModule<F>, SerialError> {
    let field = field_of_seifert(doc)?;
    check_supported::<F>(field)?;
    if doc.dims.len() != doc.mu {
        return Err(shape(format!("{} block sizes for mu = {}", doc.dims.len(), doc.mu)));
    }
    let n: usize = doc.dims.iter().sum();
    if doc.e.len() != n {
        return Err(shape(format!("e has {} rows, block sizes sum to {n}", doc.e.len())));
    }
    let e = mat_from_rows(&doc.e, n, field)?;
    SeifertModule::new(field, doc.dims.clone(), e).map_err(|err| shape(err.to_string()))
}

pub fn certificate_to_doc<F: Scalar>(
    cert: &PrimitivityCertificate<F>,
    field: FieldKind,
) -> CertificateDoc {
    CertificateDoc {
        inverse: matrix_to_doc(&cert.inverse, field),
        split: cert.split.as_ref().map(|s| SplitDoc {
            plus: s.plus.clone(),
            change_of_basis: mat_to_rows(&s.change_of_basis),
        }),
    }
}

pub fn certificate_from_doc<F: Scalar>(
    doc: &CertificateDoc,
    field: FieldKind,
) -> Result<PrimitivityCertificate<F>, SerialError> {
    if field_of_matrix(&doc.inverse)? != field {
        return Err(shape("certificate field differs from module field"));
    }
    let inverse = matrix_from_doc(&doc.inverse)?;
    let split = match &doc.split {
        None => None,
        Some(s) => {
            let n = s.change_of_basis.len();
            Some(SplittingData {
                plus: s.plus.clone(),
                change_of_basis: mat_from_rows(&s.change_of_basis, n, field)?,
            })
        }
    };
    Ok(PrimitivityCertificate { inverse, split })
}

/// Tree given as a list of words; the geodesic closure is taken.
pub fn tree_from_words(mu: usize, words: &[String]) -> Result<CayleySubtree, SerialError> {
    let mut parsed = Vec::with_capacity(words.len());
    for w in words {
        let w: Word = w.parse()?;
        w.check_mu(mu)?;
        parsed.push(w);
    }
    Ok(CayleySubtree::geodesic_closure(mu, parsed.iter()))
}

pub fn tree_to_words(t: &CayleySubtree) -> Vec<String> {
    t.vertices().iter().map(ToString::to_string).collect()
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, SerialError> {
    Ok(serde_json::from_str(text)?)
}
