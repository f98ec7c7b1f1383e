//! Commutative invariants: the Alexander polynomial for `mu = 1`,
//! abelianized determinant classes, and alternating torsion products.
//!
//! These are shadows of the noncommutative torsion: two presentations of
//! isomorphic modules have equal classes, but not conversely.

use std::fmt;

use thiserror::Error;

use crate::group_ring::GroupRingMatrix;
use crate::laurent::{determinant, LaurentPoly};
use crate::scalar::Scalar;
use crate::seifert::{SeifertError, SeifertModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("abelianized determinant is zero")]
    ZeroDeterminant,
    #[error("operation needs mu = 1, got mu = {0}")]
    RequiresMuOne(usize),
    #[error("chain is empty")]
    EmptyChain,
    #[error("chain modules disagree: {0}")]
    Inconsistent(String),
}

impl From<SeifertError> for InvariantError {
    fn from(e: SeifertError) -> Self {
        InvariantError::Inconsistent(e.to_string())
    }
}

/// Determinant of the abelianization, before normalization.
pub fn abel_det<F: Scalar>(d: &GroupRingMatrix<F>) -> Result<LaurentPoly<F>, InvariantError> {
    if !d.is_square() {
        return Err(InvariantError::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    Ok(determinant(d.mu(), &d.abelianize()))
}

/// Normalized determinant of the abelianization.
pub fn abel_det_class<F: Scalar>(d: &GroupRingMatrix<F>) -> Result<LaurentPoly<F>, InvariantError> {
    let det = abel_det(d)?;
    if det.is_zero() {
        return Err(InvariantError::ZeroDeterminant);
    }
    Ok(det.normalized())
}

/// Normalized `det(1 - e + e z)` of a module with one block.
pub fn alexander<F: Scalar>(s: &SeifertModule<F>) -> Result<LaurentPoly<F>, InvariantError> {
    if s.mu() != 1 {
        return Err(InvariantError::RequiresMuOne(s.mu()));
    }
    abel_det_class(&s.covering_presentation())
}

/// A quotient of normalized Laurent polynomials with no common factor.
#[derive(Clone, PartialEq, Debug)]
pub struct TorsionClass<F: Scalar> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

impl<F: Scalar> TorsionClass<F> {
    /// Reduces `num / den` and normalizes both parts.
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Result<Self, InvariantError> {
        if den.is_zero() || num.is_zero() {
            return Err(InvariantError::ZeroDeterminant);
        }
        let g = num.gcd(&den);
        let num = num.div_laurent(&g).expect("gcd divides");
        let den = den.div_laurent(&g).expect("gcd divides");
        Ok(TorsionClass {
            num: num.normalized(),
            den: den.normalized(),
        })
    }

    pub fn one(mu: usize) -> Self {
        TorsionClass {
            num: LaurentPoly::one(mu),
            den: LaurentPoly::one(mu),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero factors")
    }

    pub fn inverse(&self) -> Self {
        TorsionClass {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }
}

impl<F: Scalar> fmt::Display for TorsionClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `Π_r abel_det_class(cover(S_r))^{(-1)^r}`.
pub fn torsion<F: Scalar>(chain: &[SeifertModule<F>]) -> Result<TorsionClass<F>, InvariantError> {
    let first = chain.first().ok_or(InvariantError::EmptyChain)?;
    let (mu, field) = (first.mu(), first.field());
    let mut num = LaurentPoly::one(mu);
    let mut den = LaurentPoly::one(mu);
    for (r, s) in chain.iter().enumerate() {
        if s.mu() != mu || s.field() != field {
            return Err(InvariantError::Inconsistent(format!(
                "module {r} has mu {} over {}, expected mu {mu} over {field}",
                s.mu(),
                s.field()
            )));
        }
        let det = abel_det_class(&s.covering_presentation())?;
        if r % 2 == 0 {
            num = &num * &det;
        } else {
            den = &den * &det;
        }
    }
    TorsionClass::new(num, den)
}
