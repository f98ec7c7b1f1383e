//! Exact coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Scalar`], an exact field
//! built on the `num-traits` vocabulary. Two fields are provided: the
//! rationals (arbitrary precision, via `num-rational`) and prime fields
//! GF(p) with the modulus carried at runtime by [`Fp`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("unknown field descriptor {0:?} (expected \"Q\" or \"GF(p)\")")]
    UnknownField(String),
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse {text:?} as an element of {field}")]
    BadElement { text: String, field: FieldKind },
}

/// Which exact field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldKind::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(FieldKind::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::UnknownField(s.to_string()))?;
        if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) || inner.starts_with('0') {
            return Err(ScalarError::UnknownField(s.to_string()));
        }
        let p: u64 = inner
            .parse()
            .map_err(|_| ScalarError::UnknownField(s.to_string()))?;
        FieldKind::prime(p)
    }
}

/// Largest modulus accepted for GF(p); keeps every product inside `i128`.
pub const MAX_MODULUS: u64 = 1 << 62;

pub fn is_prime(p: u64) -> bool {
    if p < 2 || p > MAX_MODULUS {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
///
/// Arithmetic is by value; `sub_mul` exists so elimination loops can avoid
/// a clone per update where the implementation allows it.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Image of an integer. For prime fields the value stays unattached to
    /// a modulus until it meets an element that has one.
    fn from_i64(n: i64) -> Self;

    /// Parse the canonical text form of an element of `field`.
    fn parse_in(text: &str, field: FieldKind) -> Result<Self, ScalarError>;

    /// Whether this scalar type can represent elements of `field`.
    fn supports(field: FieldKind) -> bool;

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        let t = a.clone() * b.clone();
        *self -= t;
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let t = a.clone() * b.clone();
        *self += t;
    }

    /// Unit `u` such that `u * c` is the canonical representative of the
    /// associate class of a polynomial with coefficients `coeffs` whose
    /// leading coefficient is `leading`.
    ///
    /// Over the rationals this yields a primitive integral polynomial with a
    /// positive leading coefficient; over GF(p) a monic one.
    fn normalizing_unit(coeffs: &[&Self], leading: &Self) -> Self;
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_in(text: &str, field: FieldKind) -> Result<Self, ScalarError> {
        let bad = || ScalarError::BadElement {
            text: text.to_string(),
            field,
        };
        if field != FieldKind::Rationals {
            return Err(bad());
        }
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num = parse_int(num).ok_or_else(bad)?;
        let value = match den {
            None => BigRational::from_integer(num),
            Some(d) => {
                let d = parse_int(d).ok_or_else(bad)?;
                if !d.is_positive() {
                    return Err(bad());
                }
                if !num.gcd(&d).is_one() || d.is_one() {
                    return Err(bad());
                }
                BigRational::new_raw(num, d)
            }
        };
        Ok(value)
    }

    fn supports(field: FieldKind) -> bool {
        field == FieldKind::Rationals
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn normalizing_unit(coeffs: &[&Self], leading: &Self) -> Self {
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        let unit = BigRational::new(den_lcm, num_gcd);
        if leading.is_negative() {
            -unit
        } else {
            unit
        }
    }
}

/// Canonical decimal integer: optional '-', no leading zeros, no "-0".
fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if s.starts_with('-') && digits == "0" {
        return None;
    }
    s.parse().ok()
}

/// Element of GF(p) with the modulus stored alongside the value.
///
/// `modulus == 0` marks a bare integer constant (what `zero()`, `one()` and
/// `from_i64` produce); it adopts the modulus of the first element it is
/// combined with. Mixing two different nonzero moduli panics.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2 && modulus <= MAX_MODULUS, "bad modulus {modulus}");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    /// Canonical representative in `0..p` (or the raw integer when unattached).
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    fn joint_modulus(a: &Fp, b: &Fp) -> u64 {
        match (a.modulus, b.modulus) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixing GF({m}) and GF({n}) elements");
                m
            }
        }
    }

    fn combine(a: Fp, b: Fp, op: impl Fn(i128, i128) -> i128) -> Fp {
        let m = Fp::joint_modulus(&a, &b);
        let raw = op(a.value as i128, b.value as i128);
        if m == 0 {
            Fp {
                value: i64::try_from(raw).expect("unattached GF(p) constant overflow"),
                modulus: 0,
            }
        } else {
            Fp {
                value: raw.rem_euclid(m as i128) as i64,
                modulus: m,
            }
        }
    }

    fn reduced_in(&self, m: u64) -> i64 {
        self.value.rem_euclid(m as i64)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.value == other.value,
            (0, m) => self.reduced_in(m) == other.value,
            (m, 0) => self.value == other.reduced_in(m),
            (m, n) => m == n && self.value == other.value,
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "{}", self.value),
            m => write!(f, "{} (mod {m})", self.value),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a + b)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a - b)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a * b)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self.modulus {
            0 => Fp {
                value: -self.value,
                modulus: 0,
            },
            m => Fp::new(-self.value, m),
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Scalar for Fp {
    fn try_inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        if self.modulus == 0 {
            // only the integer units are invertible before a modulus is known
            return match self.value {
                1 | -1 => Some(*self),
                v => panic!("inverse of unattached GF(p) constant {v}"),
            };
        }
        let m = self.modulus as i128;
        let (mut r0, mut r1) = (m, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is not prime");
        Some(Fp {
            value: t0.rem_euclid(m) as i64,
            modulus: self.modulus,
        })
    }

    fn from_i64(n: i64) -> Self {
        Fp {
            value: n,
            modulus: 0,
        }
    }

    fn parse_in(text: &str, field: FieldKind) -> Result<Self, ScalarError> {
        let bad = || ScalarError::BadElement {
            text: text.to_string(),
            field,
        };
        let FieldKind::Prime(p) = field else {
            return Err(bad());
        };
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if text.len() > 1 && text.starts_with('0') {
            return Err(bad());
        }
        let v: u64 = text.parse().map_err(|_| bad())?;
        if v >= p {
            return Err(bad());
        }
        Ok(Fp::new(v as i64, p))
    }

    fn supports(field: FieldKind) -> bool {
        matches!(field, FieldKind::Prime(_))
    }

    fn normalizing_unit(_coeffs: &[&Self], leading: &Self) -> Self {
        leading.try_inv().unwrap_or_else(Fp::one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_descriptor_round_trip() {
        for s in ["Q", "GF(2)", "GF(5)", "GF(65537)"] {
            let k: FieldKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("GF(6)".parse::<FieldKind>().is_err());
        assert!("GF(05)".parse::<FieldKind>().is_err());
        assert!("R".parse::<FieldKind>().is_err());
    }

    #[test]
    fn rational_text_is_canonical() {
        let q = FieldKind::Rationals;
        let half = Rational::parse_in("-1/2", q).unwrap();
        assert_eq!(half.to_string(), "-1/2");
        assert_eq!(Rational::parse_in("7", q).unwrap().to_string(), "7");
        for bad in ["2/4", "1/-2", "3/1", "-0", "01", "1/0", "", "x"] {
            assert!(Rational::parse_in(bad, q).is_err(), "{bad}");
        }
    }

    #[test]
    fn fp_arithmetic() {
        let a = Fp::new(3, 5);
        let b = Fp::new(4, 5);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a * b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!(a.try_inv().unwrap().value(), 2);
        assert_eq!(Fp::one() - a, Fp::new(3, 5));
        assert_eq!(-Fp::one() * b, Fp::new(1, 5));
        assert!(Fp::zero().try_inv().is_none());
        assert_eq!(Fp::from_i64(5), Fp::new(0, 5));
    }

    #[test]
    fn fp_parse_rejects_noncanonical() {
        let f = FieldKind::Prime(5);
        assert_eq!(Fp::parse_in("4", f).unwrap().value(), 4);
        for bad in ["5", "-1", "01", "", "1/2"] {
            assert!(Fp::parse_in(bad, f).is_err(), "{bad}");
        }
    }

    #[test]
    fn rational_normalizing_unit_gives_primitive_integers() {
        let q = |s: &str| Rational::parse_in(s, FieldKind::Rationals).unwrap();
        let cs = [q("-1/2"), q("3/4")];
        let refs: Vec<&Rational> = cs.iter().collect();
        let u = Rational::normalizing_unit(&refs, &cs[0]);
        let scaled: Vec<String> = cs.iter().map(|c| (c * &u).to_string()).collect();
        assert_eq!(scaled, ["2", "-3"]);
    }
}
