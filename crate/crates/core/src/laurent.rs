//! Laurent polynomials in commuting variables `z_1..z_mu`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentParseError {
    #[error("malformed Laurent polynomial {0:?}")]
    Malformed(String),
    #[error("variable index out of range in {0:?}")]
    VariableOutOfRange(String),
}

/// Finite sum of monomials `c z^a`, keyed by exponent vector in lex order.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<F> {
    mu: usize,
    terms: BTreeMap<Vec<i64>, F>,
}

impl<F: Scalar> LaurentPoly<F> {
    pub fn zero(mu: usize) -> Self {
        LaurentPoly {
            mu,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mu: usize) -> Self {
        Self::constant(mu, F::one())
    }

    pub fn constant(mu: usize, c: F) -> Self {
        Self::monomial(mu, vec![0; mu], c)
    }

    pub fn monomial(mu: usize, exps: Vec<i64>, c: F) -> Self {
        assert_eq!(exps.len(), mu, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { mu, terms }
    }

    /// The variable `z_i` (1-based).
    pub fn var(mu: usize, i: usize) -> Self {
        let mut e = vec![0; mu];
        e[i - 1] = 1;
        Self::monomial(mu, e, F::one())
    }

    pub fn from_terms(mu: usize, terms: impl IntoIterator<Item = (Vec<i64>, F)>) -> Self {
        let mut p = Self::zero(mu);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn coeff(&self, exps: &[i64]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: F) {
        assert_eq!(exps.len(), self.mu, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    /// Lex-greatest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &F)> {
        self.terms.iter().next_back()
    }

    /// Single term `c z^a` with `c` nonzero.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(
            self.mu,
            self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())),
        )
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            mu: self.mu,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, shift), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.mu])
    }

    /// Value at `z_1 = … = z_mu = 1`.
    pub fn eval_one(&self) -> F {
        self.terms.values().fold(F::zero(), |acc, c| acc + c.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.mu);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Canonical associate: shifted so every variable has minimum exponent
    /// zero, then scaled so the lex-greatest coefficient is canonical
    /// (positive with integral primitive content over Q, 1 over GF(p)).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let neg: Vec<i64> = self.min_exponents().iter().map(|x| -x).collect();
        let shifted = self.shift(&neg);
        let coeffs: Vec<&F> = shifted.terms.values().collect();
        let lead = shifted.leading().map(|(_, c)| c.clone()).unwrap();
        let u = F::normalizing_unit(&coeffs, &lead);
        shifted.scale(&u)
    }

    /// Whether this is `c z^a` with `c` a nonzero scalar, i.e. a unit.
    pub fn is_unit(&self) -> bool {
        self.is_monomial()
    }

    fn max_exp(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn involves_at_or_after(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var..].iter().any(|&x| x != 0))
    }

    /// Coefficients as a polynomial in `z_{var+1}`; the returned
    /// polynomials have that exponent set to zero.
    fn coefficients_in(&self, var: usize) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut stripped = e.clone();
            stripped[var] = 0;
            out.entry(e[var])
                .or_insert_with(|| Self::zero(self.mu))
                .add_term(stripped, c.clone());
        }
        out
    }

    /// Exact quotient `self / d` for polynomials (nonnegative exponents),
    /// or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let dinv = dc.try_inv().expect("nonzero field element");
        let mut q = Self::zero(self.mu);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let t = Self::monomial(self.mu, qe, rc * dinv.clone());
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Greatest common divisor up to units; both arguments are first shifted
    /// into polynomials. The result is normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        let a = self.shift(&negate(&self.min_exponents()));
        let b = other.shift(&negate(&other.min_exponents()));
        gcd_from(&a, &b, 0).normalized()
    }

    /// Exact quotient of Laurent polynomials, `None` if not divisible.
    pub fn div_laurent(&self, d: &Self) -> Option<Self> {
        let sa = self.min_exponents();
        let sd = d.min_exponents();
        let a = self.shift(&negate(&sa));
        let b = d.shift(&negate(&sd));
        let q = a.div_exact(&b)?;
        let back: Vec<i64> = sa.iter().zip(&sd).map(|(x, y)| x - y).collect();
        Some(q.shift(&back))
    }

    /// Text form; `mu = 1` uses the bare variable `z`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (negative, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.monomial_text(e);
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    fn monomial_text(&self, e: &[i64]) -> String {
        let mut factors = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = if self.mu == 1 {
                "z".to_string()
            } else {
                format!("z{}", i + 1)
            };
            factors.push(if x == 1 {
                name
            } else {
                format!("{name}^{x}")
            });
        }
        factors.join("*")
    }

    /// Parses the output of [`to_text`](Self::to_text); anything that does not
    /// print back to the identical string is rejected.
    pub fn parse(text: &str, mu: usize, field: FieldKind) -> Result<Self, LaurentParseError> {
        let bad = || LaurentParseError::Malformed(text.to_string());
        if text == "0" {
            return Ok(Self::zero(mu));
        }
        let mut tokens = text.split(' ');
        let mut p = Self::zero(mu);
        let first = tokens.next().ok_or_else(bad)?;
        let (neg, body) = match first.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, first),
        };
        let (e, c) = parse_term::<F>(body, mu, field, text)?;
        p.add_term(e, if neg { -c } else { c });
        loop {
            let Some(op) = tokens.next() else { break };
            let body = tokens.next().ok_or_else(bad)?;
            let (e, c) = parse_term::<F>(body, mu, field, text)?;
            match op {
                "+" => p.add_term(e, c),
                "-" => p.add_term(e, -c),
                _ => return Err(bad()),
            }
        }
        if p.to_text() != text {
            return Err(bad());
        }
        Ok(p)
    }
}

fn parse_term<F: Scalar>(
    body: &str,
    mu: usize,
    field: FieldKind,
    whole: &str,
) -> Result<(Vec<i64>, F), LaurentParseError> {
    let bad = || LaurentParseError::Malformed(whole.to_string());
    let mut exps = vec![0i64; mu];
    let mut coeff = F::one();
    for (k, factor) in body.split('*').enumerate() {
        if let Some(rest) = factor.strip_prefix('z') {
            let (var, exp) = match rest.split_once('^') {
                Some((v, x)) => (v, x.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let idx = if mu == 1 && var.is_empty() {
                1
            } else {
                var.parse::<usize>().map_err(|_| bad())?
            };
            if idx == 0 || idx > mu {
                return Err(LaurentParseError::VariableOutOfRange(whole.to_string()));
            }
            exps[idx - 1] += exp;
        } else if k == 0 {
            coeff = F::parse_in(factor, field).map_err(|_| bad())?;
        } else {
            return Err(bad());
        }
    }
    Ok((exps, coeff))
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn negate(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Content with respect to variable `var`: gcd of the coefficient polynomials.
fn content<F: Scalar>(a: &LaurentPoly<F>, var: usize) -> LaurentPoly<F> {
    let mut g = LaurentPoly::zero(a.mu);
    for c in a.coefficients_in(var).into_values() {
        g = gcd_from(&g, &c, var + 1);
        if g.terms.len() == 1 && g.terms.keys().all(|e| e.iter().all(|&x| x == 0)) {
            break;
        }
    }
    g
}

/// Scalar-normalized so rational coefficients stay small.
fn tidy<F: Scalar>(a: LaurentPoly<F>) -> LaurentPoly<F> {
    if a.is_zero() {
        return a;
    }
    let coeffs: Vec<&F> = a.terms.values().collect();
    let lead = a.leading().map(|(_, c)| c.clone()).unwrap();
    let u = F::normalizing_unit(&coeffs, &lead);
    a.scale(&u)
}

fn primitive_part<F: Scalar>(a: &LaurentPoly<F>, var: usize) -> LaurentPoly<F> {
    let c = content(a, var);
    tidy(a.div_exact(&c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` as polynomials in `z_{var+1}`.
fn pseudo_rem<F: Scalar>(a: &LaurentPoly<F>, b: &LaurentPoly<F>, var: usize) -> LaurentPoly<F> {
    let db = b.max_exp(var);
    let cb = b.coefficients_in(var);
    let lb = cb[&db].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.max_exp(var) >= db {
        let dr = r.max_exp(var);
        let lr = r.coefficients_in(var).remove(&dr).unwrap();
        let mut x = vec![0; a.mu];
        x[var] = dr - db;
        let t = lr.shift(&x);
        r = &(&lb * &r) - &(&t * b);
    }
    r
}

/// gcd of polynomials involving only variables with index >= `var`.
fn gcd_from<F: Scalar>(a: &LaurentPoly<F>, b: &LaurentPoly<F>, var: usize) -> LaurentPoly<F> {
    if a.is_zero() {
        return tidy(b.clone());
    }
    if b.is_zero() {
        return tidy(a.clone());
    }
    let mu = a.mu;
    if var >= mu || (!a.involves_at_or_after(var) && !b.involves_at_or_after(var)) {
        return LaurentPoly::one(mu);
    }
    if a.max_exp(var) == 0 && b.max_exp(var) == 0 {
        return gcd_from(a, b, var + 1);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd_from(&ca, &cb, var + 1);
    let mut p = tidy(a.div_exact(&ca).expect("content divides"));
    let mut q = tidy(b.div_exact(&cb).expect("content divides"));
    if p.max_exp(var) < q.max_exp(var) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_zero() {
            break p;
        }
        if q.max_exp(var) == 0 {
            break LaurentPoly::one(mu);
        }
        let r = pseudo_rem(&p, &q, var);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, var) };
    };
    tidy(&c * &g)
}

/// Determinant of a square matrix of Laurent polynomials, by fraction-free
/// elimination after shifting every row into polynomials.
pub fn determinant<F: Scalar>(mu: usize, m: &[Vec<LaurentPoly<F>>]) -> LaurentPoly<F> {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(mu);
    }
    let mut total_shift = vec![0i64; mu];
    let mut a: Vec<Vec<LaurentPoly<F>>> = Vec::with_capacity(n);
    for row in m {
        assert_eq!(row.len(), n, "determinant of non-square matrix");
        let mut lo: Option<Vec<i64>> = None;
        for p in row.iter().filter(|p| !p.is_zero()) {
            let e = p.min_exponents();
            lo = Some(match lo {
                None => e,
                Some(l) => l.iter().zip(&e).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        let lo = lo.unwrap_or_else(|| vec![0; mu]);
        total_shift = add_exps(&total_shift, &lo);
        let neg = negate(&lo);
        a.push(row.iter().map(|p| p.shift(&neg)).collect());
    }
    let mut negate_result = false;
    let mut prev = LaurentPoly::one(mu);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return LaurentPoly::zero(mu);
        };
        if piv != k {
            a.swap(piv, k);
            negate_result = !negate_result;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero(mu);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].shift(&total_shift);
    if negate_result {
        -&det
    } else {
        det
    }
}

impl<F: Scalar> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        assert_eq!(self.mu, rhs.mu, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        assert_eq!(self.mu, rhs.mu, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Scalar> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly {
            mu: self.mu,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<F: Scalar> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        assert_eq!(self.mu, rhs.mu, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.mu);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(add_exps(a, b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<F: Scalar> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Scalar> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type P = LaurentPoly<Rational>;

    fn parse(s: &str, mu: usize) -> P {
        P::parse(s, mu, FieldKind::Rationals).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn laplace(m: &[Vec<P>], mu: usize) -> P {
        let n = m.len();
        if n == 0 {
            return P::one(mu);
        }
        let mut acc = P::zero(mu);
        for j in 0..n {
            let minor: Vec<Vec<P>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &laplace(&minor, mu);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn text_round_trip() {
        for (s, mu) in [
            ("z^2 - z + 1", 1),
            ("2/3 - z^-1", 1),
            ("z1*z2^2 - 3*z1 + z2^-1", 2),
            ("0", 2),
            ("z1 - 2", 2),
        ] {
            assert_eq!(parse(s, mu).to_text(), s);
        }
        assert!(P::parse("1 + z", 1, FieldKind::Rationals).is_err());
        assert!(P::parse("z  + 1", 1, FieldKind::Rationals).is_err());
        assert!(P::parse("z3", 2, FieldKind::Rationals).is_err());
    }

    #[test]
    fn trefoil_determinant() {
        let z = P::var(1, 1);
        let one = P::one(1);
        let m = vec![
            vec![one.clone(), &one - &z],
            vec![&z - &one, z.clone()],
        ];
        let d = determinant(1, &m);
        assert_eq!(d, parse("z^2 - z + 1", 1));
        assert_eq!(d, laplace(&m, 1));
    }

    #[test]
    fn determinant_with_negative_exponents() {
        let m = vec![
            vec![parse("z2 + z1^-1", 2), parse("3", 2)],
            vec![parse("z2^-2", 2), parse("z1 - z2^-1", 2)],
        ];
        assert_eq!(determinant(2, &m), laplace(&m, 2));
    }

    #[test]
    fn normalization() {
        assert_eq!(parse("-2*z^3 + 4*z^2", 1).normalized(), parse("z - 2", 1));
        assert_eq!(parse("z1 - 2", 2).normalized(), parse("z1 - 2", 2));
        assert!(parse("-3*z1^2*z2", 2).normalized().is_one());
        let f = LaurentPoly::<Fp>::from_terms(1, [(vec![2], Fp::new(3, 5)), (vec![0], Fp::new(1, 5))]);
        assert_eq!(f.normalized().leading().unwrap().1, &Fp::new(1, 5));
    }

    #[test]
    fn gcd_and_division() {
        let a = parse("z1*z2 - z1 + z2^2 - z2", 2);
        let b = parse("z1^2 - z2^2", 2);
        assert_eq!(a.gcd(&b), parse("z1 + z2", 2));
        let g = parse("z^2 - z + 1", 1);
        let h = parse("z + 3", 1);
        assert_eq!((&g * &h).gcd(&(&g * &g)), g);
        assert_eq!((&g * &h).div_laurent(&g), Some(h.clone()));
        assert_eq!(h.div_laurent(&g), None);
        let u = parse("z^-2", 1);
        assert_eq!((&g * &u).div_laurent(&g), Some(u));
    }
}
