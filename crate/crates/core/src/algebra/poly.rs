use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Exponent;
use crate::error::{check_nvars, Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial over the rationals in `x1..xn`.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), Q::one())
    }

    pub fn monomial(exp: Exponent, c: Q) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Greatest term under the graded order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Least term under the graded order.
    pub fn trailing_term(&self) -> Option<(&Exponent, &Q)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponent, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        check_nvars(self.nvars, point.len())?;
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `p(x1 + a1, ..., xn + an)`.
    pub fn shift(&self, alpha: &[Q]) -> Result<MultiPoly> {
        check_nvars(self.nvars, alpha.len())?;
        if alpha.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let n = self.nvars;
        let shifted_vars: Vec<MultiPoly> = (0..n)
            .map(|i| &MultiPoly::var(n, i) + &MultiPoly::constant(n, alpha[i].clone()))
            .collect();
        let mut out = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t = &t * &shifted_vars[i].pow(k);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                out.add_term(e.with(i, k - 1), c * Q::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// Degree in the variable of index `i` (`None` for zero).
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    /// True if some term depends on variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.get(i) > 0)
    }

    /// Coefficient of `x_i^d`, viewed as a polynomial free of `x_i`.
    pub fn coeff_in(&self, i: usize, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(i) == d)
                .map(|(e, c)| (e.with(i, 0), c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to variable `i`, indexed by degree.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(i) {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut out = vec![MultiPoly::zero(self.nvars); deg as usize + 1];
        for (e, c) in &self.terms {
            out[e.get(i) as usize].add_term(e.with(i, 0), c.clone());
        }
        out
    }

    /// Multiplies by `x_i^k`.
    pub fn mul_var_pow(&self, i: usize, k: u32) -> MultiPoly {
        let mut e = Exponent::zero(self.nvars);
        if k > 0 {
            e = e.with(i, k);
        }
        self.mul_monomial(&e, &Q::one())
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &MultiPoly) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero(self.nvars));
        }
        let (lead_e, lead_c) = other.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        if other.terms.len() == 1 {
            let mut out = MultiPoly::zero(self.nvars);
            for (e, c) in &self.terms {
                out.terms.insert(e.checked_sub(&lead_e)?, c / &lead_c);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = e.checked_sub(&lead_e)?;
            let qc = c / &lead_c;
            rem = &rem - &other.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Rational content: positive gcd of numerators over lcm of denominators,
    /// signed so that `self / content` has a positive leading coefficient.
    pub fn rational_content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        let content = Q::new(num, den);
        if self.leading_coeff().is_negative() {
            -content
        } else {
            content
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Terms of total degree at most `m`.
    pub fn truncate(&self, m: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if the two polynomials differ by a nonzero rational factor.
    pub fn is_associate(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

/// Splits a nonempty list of polynomials into content and primitive parts.
///
/// The content carries both the polynomial gcd and the rational content so
/// that the primitive parts have integer coefficients with gcd 1.
pub fn content_primitive(coeffs: &[MultiPoly]) -> Result<(MultiPoly, Vec<MultiPoly>)> {
    let first = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroInput("content"))?;
    let n = first.nvars();
    for c in coeffs {
        check_nvars(n, c.nvars())?;
    }
    let mut g = MultiPoly::zero(n);
    for c in coeffs {
        g = super::gcd::poly_gcd(&g, c).unwrap_or_else(|_| MultiPoly::zero(n));
        if g.is_one() {
            break;
        }
    }
    let parts: Vec<MultiPoly> = coeffs
        .iter()
        .map(|c| c.exact_div(&g).expect("gcd divides every entry"))
        .collect();
    // fold the rational content of the whole list into the polynomial content
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in &parts {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    let mut r = Q::new(num, den);
    let lead = parts
        .iter()
        .rev()
        .find(|p| !p.is_zero())
        .map(MultiPoly::leading_coeff)
        .unwrap_or_else(Q::one);
    if lead.is_negative() {
        r = -r;
    }
    let inv = r.recip();
    Ok((g.scale(&r), parts.iter().map(|p| p.scale(&inv)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        let expect = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn additive_identity() {
        let p = &x(0).pow(3) - &x(1);
        assert_eq!(&p + &MultiPoly::zero(2), p);
    }

    #[test]
    fn expand_product() {
        let one = MultiPoly::one(2);
        let lhs = &(&one + &x(0)) * &(&one + &x(1));
        let rhs = &(&(&one + &x(0)) + &x(1)) + &(&x(0) * &x(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::VariableMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn evaluation() {
        let p = &(&MultiPoly::one(2) - &x(0)) - &(&x(0) * &x(1));
        assert_eq!(p.eval(&[q(0), q(0)]).unwrap(), q(1));
        assert_eq!(MultiPoly::zero(2).eval(&[q(5), q(7)]).unwrap(), q(0));
        assert_eq!((&x(0) * &x(1)).eval(&[q(2), q(3)]).unwrap(), q(6));
    }

    #[test]
    fn shifting() {
        let one = MultiPoly::one(1);
        let x1 = MultiPoly::var(1, 0);
        assert_eq!(x1.shift(&[q(1)]).unwrap(), &x1 + &one);
        let p = &x(0).pow(2) - &x(1);
        assert_eq!(p.shift(&[q(0), q(0)]).unwrap(), p);
        let xy = &x(0) * &x(1);
        let expect = &(&(&xy + &x(0)) + &x(1)) + &MultiPoly::one(2);
        assert_eq!(xy.shift(&[q(1), q(1)]).unwrap(), expect);
    }

    #[test]
    fn content_and_primitive_parts() {
        let xy = &x(0) * &x(1);
        let (c, p) = content_primitive(&[xy.clone(), &xy * &x(0)]).unwrap();
        assert_eq!(c, xy);
        assert_eq!(p, vec![MultiPoly::one(2), x(0)]);

        let (c, p) = content_primitive(&[MultiPoly::one(2), x(1)]).unwrap();
        assert_eq!(c, MultiPoly::one(2));
        assert_eq!(p, vec![MultiPoly::one(2), x(1)]);

        let (c, p) = content_primitive(&[x(0).scale(&q(2)), x(0).scale(&q(4))]).unwrap();
        assert_eq!(c, x(0).scale(&q(2)));
        assert_eq!(p, vec![MultiPoly::one(2), MultiPoly::constant(2, q(2))]);

        assert!(content_primitive(&[MultiPoly::zero(2)]).is_err());
    }

    #[test]
    fn exact_division() {
        let a = &(&x(0) + &x(1)) * &(&x(0) - &MultiPoly::one(2));
        assert_eq!(a.exact_div(&(&x(0) + &x(1))).unwrap(), &x(0) - &MultiPoly::one(2));
        assert!(x(0).exact_div(&x(1)).is_none());
    }
}
