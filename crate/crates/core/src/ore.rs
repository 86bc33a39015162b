//! Differential operators in `Q(x)[d1..dn]` and their Euler-operator form.
//!
//! Terms are stored with the coefficient on the left of the derivation,
//! `a(x) * d^u`. Products follow `d_i a = a d_i + da/dx_i`, with the `d_i`
//! pairwise commuting.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{content_primitive, Exponent, MultiPoly, RatFunc, Q};
use crate::error::{check_nvars, Error, Result};
use crate::series::TruncatedSeries;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OreOperator {
    nvars: usize,
    terms: BTreeMap<Exponent, RatFunc>,
}

impl OreOperator {
    pub fn zero(nvars: usize) -> Self {
        OreOperator {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_coeff(RatFunc::one(nvars))
    }

    pub fn from_coeff(c: RatFunc) -> Self {
        let n = c.nvars();
        Self::term(Exponent::zero(n), c)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::from_coeff(RatFunc::from_poly(p))
    }

    /// `c * d^u`.
    pub fn term(u: Exponent, c: RatFunc) -> Self {
        let nvars = c.nvars();
        assert_eq!(u.len(), nvars, "exponent length must equal nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(u, c);
        }
        OreOperator { nvars, terms }
    }

    /// The derivation `d_{i+1}`.
    pub fn d(nvars: usize, i: usize) -> Self {
        Self::term(Exponent::unit(nvars, i), RatFunc::one(nvars))
    }

    /// `d^u` with unit coefficient.
    pub fn d_pow(u: Exponent) -> Self {
        let n = u.len();
        Self::term(u, RatFunc::one(n))
    }

    /// The multiplication operator `x_{i+1}`.
    pub fn x(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    /// Builds an operator from `(d-exponent, polynomial coefficient)` pairs.
    pub fn from_poly_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, MultiPoly)>) -> Self {
        let mut op = OreOperator::zero(nvars);
        for (u, c) in terms {
            op.add_term(u, RatFunc::from_poly(c));
        }
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, u: &Exponent) -> RatFunc {
        self.terms
            .get(u)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    /// Maximal total degree of a derivation term (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn head(&self) -> Option<(&Exponent, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn head_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    pub fn head_coeff(&self) -> Option<&RatFunc> {
        self.terms.values().next_back()
    }

    /// True if no term involves any `d_i`.
    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(Exponent::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RatFunc::is_polynomial)
    }

    /// Only `d_i` occurs among the derivations.
    pub fn involves_only(&self, i: usize) -> bool {
        self.terms
            .keys()
            .all(|u| u.as_slice().iter().enumerate().all(|(j, &e)| j == i || e == 0))
    }

    pub(crate) fn add_term(&mut self, u: Exponent, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn pop_head(&mut self) -> Option<(Exponent, RatFunc)> {
        self.terms.pop_last()
    }

    /// Left multiplication by a coefficient: `c * P`.
    pub fn left_mul_coeff(&self, c: &RatFunc) -> OreOperator {
        if c.is_zero() {
            return OreOperator::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        OreOperator {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, a)| (u.clone(), c * a)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> OreOperator {
        self.left_mul_coeff(&RatFunc::constant(self.nvars, c.clone()))
    }

    /// `d_i * P`.
    pub fn d_left(&self, i: usize) -> OreOperator {
        let mut out = OreOperator::zero(self.nvars);
        for (u, a) in &self.terms {
            out.add_term(u.increment(i), a.clone());
            out.add_term(u.clone(), a.derivative(i));
        }
        out
    }

    /// `d^w * P` by the Leibniz rule.
    pub fn d_pow_left(&self, w: &Exponent) -> OreOperator {
        if w.is_zero() {
            return self.clone();
        }
        let mut out = OreOperator::zero(self.nvars);
        for (v, b) in &self.terms {
            let mut derivs = DerivativeTable::new(b.clone());
            for k in sub_exponents(w) {
                let binom = multinomial_binomial(w, &k);
                let dk = derivs.get(&k);
                if dk.is_zero() {
                    continue;
                }
                let rest = w.checked_sub(&k).expect("k <= w").add(v);
                out.add_term(rest, dk.scale(&binom));
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &OreOperator) -> Result<OreOperator> {
        check_nvars(self.nvars, other.nvars)?;
        let mut tables: Vec<(Exponent, DerivativeTable)> = other
            .terms
            .iter()
            .map(|(v, b)| (v.clone(), DerivativeTable::new(b.clone())))
            .collect();
        let mut out = OreOperator::zero(self.nvars);
        for (u, a) in &self.terms {
            for (v, table) in tables.iter_mut() {
                for k in sub_exponents(u) {
                    let dk = table.get(&k);
                    if dk.is_zero() {
                        continue;
                    }
                    let binom = multinomial_binomial(u, &k);
                    let rest = u.checked_sub(&k).expect("k <= u").add(v);
                    out.add_term(rest, &dk.scale(&binom) * a);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &OreOperator) -> Result<OreOperator> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c.clone());
        }
        Ok(out)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> MultiPoly {
        let mut l = MultiPoly::one(self.nvars);
        for c in self.terms.values() {
            if c.den().is_one() {
                continue;
            }
            let g = crate::algebra::poly_gcd(&l, c.den()).expect("nonzero");
            l = &l * &c.den().exact_div(&g).expect("gcd divides");
        }
        l
    }

    /// Clears denominators and removes the polynomial content. The head
    /// coefficient of the result has a positive leading coefficient.
    pub fn primitive(&self) -> OreOperator {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.common_denominator();
        let polys: Vec<MultiPoly> = self
            .terms
            .values()
            .map(|c| {
                if c.den().is_one() {
                    c.num() * &l
                } else {
                    (c.num() * &l).exact_div(c.den()).expect("lcd is a multiple")
                }
            })
            .collect();
        let (_, mut parts) = content_primitive(&polys).expect("nonzero operator");
        if parts.last().is_some_and(|p| p.leading_coeff().is_negative()) {
            parts = parts.iter().map(|p| -p).collect();
        }
        OreOperator {
            nvars: self.nvars,
            terms: self
                .terms
                .keys()
                .cloned()
                .zip(parts.into_iter().map(RatFunc::from_poly))
                .collect(),
        }
    }

    /// Divides by the head coefficient.
    pub fn monic(&self) -> OreOperator {
        match self.head_coeff() {
            None => self.clone(),
            Some(h) if h.is_one() => self.clone(),
            Some(h) => self.left_mul_coeff(&h.inv().expect("head coefficient is nonzero")),
        }
    }

    /// Coefficients shifted by `x -> x + alpha`; the derivation part is unchanged.
    pub fn translate(&self, alpha: &[Q]) -> Result<OreOperator> {
        check_nvars(self.nvars, alpha.len())?;
        let mut out = OreOperator::zero(self.nvars);
        for (u, c) in &self.terms {
            out.add_term(u.clone(), c.shift(alpha)?);
        }
        Ok(out)
    }

    /// Action on a truncated power series. An operator of order `r` applied
    /// to a series valid up to degree `m` yields a series valid up to `m - r`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        check_nvars(self.nvars, f.nvars())?;
        let r = self.order();
        let m = f.trunc_degree();
        if m < r {
            return Err(Error::InsufficientTruncation { have: m, need: r });
        }
        let out_trunc = m - r;
        let mut out = TruncatedSeries::zero(self.nvars, out_trunc);
        for (u, a) in &self.terms {
            let df = f.derivative_pow(u).truncate(out_trunc);
            let term = if a.is_polynomial() {
                df.mul_poly(a.num())
            } else {
                let expanded = TruncatedSeries::expand_ratfunc(a, out_trunc)?;
                df.mul(&expanded)
            };
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Rewrites `x^(m,..,m) * P`, `m = order(P)`, as `sum_v x^v p_v(delta)`.
    pub fn euler_rewrite(&self) -> Result<EulerForm> {
        if self.is_zero() {
            return Err(Error::ZeroInput("Euler rewriting"));
        }
        if !self.is_polynomial() {
            return Err(Error::Structural(
                "Euler rewriting needs polynomial coefficients".into(),
            ));
        }
        let n = self.nvars;
        let m = self.order();
        let shift = Exponent::new(vec![m; n]);
        let mut falling: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut parts: BTreeMap<Exponent, MultiPoly> = BTreeMap::new();
        for (u, c) in &self.terms {
            let mut delta_part = MultiPoly::one(n);
            for (i, &k) in u.as_slice().iter().enumerate() {
                if k > 0 {
                    let f = falling
                        .entry((i, k))
                        .or_insert_with(|| falling_factorial(n, i, k));
                    delta_part = &delta_part * f;
                }
            }
            let x_shift = shift.checked_sub(u).expect("order bounds every exponent");
            for (a, coef) in c.num().terms() {
                let v = a.add(&x_shift);
                let entry = parts.entry(v).or_insert_with(|| MultiPoly::zero(n));
                *entry = &*entry + &delta_part.scale(coef);
            }
        }
        parts.retain(|_, p| !p.is_zero());
        Ok(EulerForm {
            nvars: n,
            order: m,
            parts,
        })
    }
}

/// `y_i (y_i - 1) ... (y_i - k + 1)` in the y-ring.
fn falling_factorial(n: usize, i: usize, k: u32) -> MultiPoly {
    let y = MultiPoly::var(n, i);
    let mut acc = MultiPoly::one(n);
    for j in 0..k {
        let factor = &y - &MultiPoly::constant(n, Q::from_integer(BigInt::from(j)));
        acc = &acc * &factor;
    }
    acc
}

/// All exponents k with k <= w componentwise.
fn sub_exponents(w: &Exponent) -> Vec<Exponent> {
    let mut out = vec![Vec::with_capacity(w.len())];
    for &e in w.as_slice() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for prefix in &out {
            for k in 0..=e {
                let mut p = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Exponent::new).collect()
}

fn multinomial_binomial(w: &Exponent, k: &Exponent) -> Q {
    let mut acc = BigInt::one();
    for (&a, &b) in w.as_slice().iter().zip(k.as_slice()) {
        acc *= binomial(a, b);
    }
    Q::from_integer(acc)
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Memoized partial derivatives of one coefficient.
struct DerivativeTable {
    cache: HashMap<Exponent, RatFunc>,
}

impl DerivativeTable {
    fn new(c: RatFunc) -> Self {
        let mut cache = HashMap::new();
        cache.insert(Exponent::zero(c.nvars()), c);
        DerivativeTable { cache }
    }

    fn get(&mut self, k: &Exponent) -> RatFunc {
        if let Some(v) = self.cache.get(k) {
            return v.clone();
        }
        let i = k.last_nonzero().expect("zero exponent is cached");
        let prev = self.get(&k.with(i, k.get(i) - 1));
        let d = prev.derivative(i);
        self.cache.insert(k.clone(), d.clone());
        d
    }
}

impl Add for &OreOperator {
    type Output = OreOperator;
    fn add(self, rhs: &OreOperator) -> OreOperator {
        self.checked_add(rhs).expect("operator addition")
    }
}

impl Neg for &OreOperator {
    type Output = OreOperator;
    fn neg(self) -> OreOperator {
        OreOperator {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, c)| (u.clone(), -c)).collect(),
        }
    }
}

impl Sub for &OreOperator {
    type Output = OreOperator;
    fn sub(self, rhs: &OreOperator) -> OreOperator {
        self + &(-rhs)
    }
}

impl Mul for &OreOperator {
    type Output = OreOperator;
    fn mul(self, rhs: &OreOperator) -> OreOperator {
        self.checked_mul(rhs).expect("operator multiplication")
    }
}

impl std::fmt::Debug for OreOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// `x^(m,..,m) P = sum_v x^v p_v(delta)` with `p_v` stored as polynomials in
/// fresh commuting indeterminates `y1..yn` standing for the Euler operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerForm {
    nvars: usize,
    order: u32,
    parts: BTreeMap<Exponent, MultiPoly>,
}

impl EulerForm {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn shift(&self) -> Exponent {
        Exponent::new(vec![self.order; self.nvars])
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Exponent, &MultiPoly)> {
        self.parts.iter()
    }

    /// Part attached to the least x-exponent.
    pub fn minimal_part(&self) -> Option<(&Exponent, &MultiPoly)> {
        self.parts.iter().next()
    }

    /// Image of the monomial `x^w`, as an x-polynomial: `sum_v p_v(w) x^(v+w)`.
    pub fn apply_monomial(&self, w: &Exponent) -> MultiPoly {
        let point: Vec<Q> = w
            .as_slice()
            .iter()
            .map(|&e| Q::from_integer(BigInt::from(e)))
            .collect();
        let mut out = MultiPoly::zero(self.nvars);
        for (v, p) in &self.parts {
            let c = p.eval(&point).expect("matching nvars");
            out = &out + &MultiPoly::monomial(v.add(w), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn x(n: usize, i: usize) -> OreOperator {
        OreOperator::x(n, i)
    }

    fn d(n: usize, i: usize) -> OreOperator {
        OreOperator::d(n, i)
    }

    #[test]
    fn leibniz_rule() {
        let lhs = &d(1, 0) * &x(1, 0);
        let rhs = &(&x(1, 0) * &d(1, 0)) + &OreOperator::one(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_commute() {
        let c = &(&d(2, 0) * &d(2, 1)) - &(&d(2, 1) * &d(2, 0));
        assert!(c.is_zero());
    }

    #[test]
    fn leibniz_twice() {
        let x2 = &x(1, 0) * &x(1, 0);
        let lhs = &d(1, 0) * &x2;
        let rhs = &(&x2 * &d(1, 0)) + &x(1, 0).scale(&q(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_left_matches_repeated_products() {
        let p = &(&x(2, 0) * &x(2, 1)) * &d(2, 1);
        let p = &p + &x(2, 0).scale(&q(3));
        let w = Exponent::from([2, 1]);
        let direct = p.d_pow_left(&w);
        let repeated = &(&(&d(2, 0) * &d(2, 0)) * &d(2, 1)) * &p;
        assert_eq!(direct, repeated);
    }

    #[test]
    fn translation() {
        let p = &x(1, 0) * &d(1, 0);
        let t = p.translate(&[q(1)]).unwrap();
        let expect = &(&x(1, 0) + &OreOperator::one(1)) * &d(1, 0);
        assert_eq!(t, expect);
        assert_eq!(p.translate(&[q(0)]).unwrap(), p);
    }

    #[test]
    fn euler_form_of_single_euler_operator() {
        let p = &x(1, 0) * &d(1, 0);
        let e = p.euler_rewrite().unwrap();
        let parts: Vec<_> = e.parts().collect();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, &Exponent::from([1]));
        assert_eq!(parts[0].1, &MultiPoly::var(1, 0));
    }

    #[test]
    fn euler_rewrite_of_zero_fails() {
        assert!(OreOperator::zero(2).euler_rewrite().is_err());
    }

    #[test]
    fn primitive_clears_denominators() {
        let n = 2;
        let inv = RatFunc::new(MultiPoly::one(n), MultiPoly::var(n, 1)).unwrap();
        let g = &(&(&x(n, 1) * &d(n, 1)) + &d(n, 0)) - &(&x(n, 1) + &OreOperator::one(n));
        let scaled = g.left_mul_coeff(&inv);
        assert_eq!(scaled.primitive(), g);
    }
}
