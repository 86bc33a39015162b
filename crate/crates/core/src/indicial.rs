//! Indicial polynomials, univariate elimination and candidate sets of initial
//! exponents at the origin.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{Exponent, MultiPoly, RatFunc, Q};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, NormalFormTable};
use crate::linalg::{Offer, PolyDependencyFinder};
use crate::ore::OreOperator;
use crate::syntax::format_poly_in;

/// Indicial polynomial in the indeterminates `y1..yn`.
#[derive(Clone, PartialEq, Eq)]
pub struct IndicialPoly {
    poly: MultiPoly,
}

impl IndicialPoly {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Value at a nonnegative integer point.
    pub fn eval_at(&self, v: &Exponent) -> Q {
        let point: Vec<Q> = v.as_slice().iter().map(|&k| Q::from_integer(k.into())).collect();
        self.poly.eval(&point).expect("matching nvars")
    }

    pub fn vanishes_at(&self, v: &Exponent) -> bool {
        self.eval_at(v).is_zero()
    }

    /// Equality up to a nonzero rational factor.
    pub fn is_associate(&self, other: &IndicialPoly) -> bool {
        self.poly.is_associate(&other.poly)
    }
}

impl fmt::Display for IndicialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly_in(&self.poly, "y"))
    }
}

impl fmt::Debug for IndicialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IndicialPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Candidate initial exponents together with the indicial polynomials used.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateSet {
    pub exponents: Vec<Exponent>,
    /// `ind(Q_i)` for the univariate eliminants, then `ind(g)` for `g` in G
    pub generators_used: Vec<IndicialPoly>,
    /// nonnegative integer roots of `ind(Q_i)`, per variable
    pub root_sets: Vec<Vec<u32>>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, v: &Exponent) -> bool {
        self.exponents.contains(v)
    }
}

pub fn is_ordinary_at(g: &GroebnerBasis, alpha: &[Q]) -> Result<bool> {
    g.is_ordinary_at(alpha)
}

/// The y-polynomial attached to the least x-exponent of the Euler form of
/// `x^m P`. Rational coefficients are cleared first.
pub fn indicial_polynomial(p: &OreOperator) -> Result<IndicialPoly> {
    let n = p.nvars();
    if p.is_zero() {
        return Ok(IndicialPoly {
            poly: MultiPoly::zero(n),
        });
    }
    let p = if p.is_polynomial() { p.clone() } else { p.primitive() };
    let form = p.euler_rewrite()?;
    let (_, part) = form
        .minimal_part()
        .ok_or_else(|| Error::Invariant("Euler form of a nonzero operator is empty".into()))?;
    Ok(IndicialPoly { poly: part.clone() })
}

/// A nonzero primitive operator of least order in `G`'s ideal involving
/// only `d_{i+1}`.
pub fn eliminate_univariate(g: &GroebnerBasis, i: usize) -> Result<OreOperator> {
    let n = g.nvars();
    if i >= n {
        return Err(Error::Structural(format!("variable index {} exceeds n = {n}", i + 1)));
    }
    let pe = g.parametric_exponents()?.to_vec();
    let mut table = NormalFormTable::new(g);
    let mut finder = PolyDependencyFinder::new(n);
    for k in 0..=pe.len() as u32 {
        let u = Exponent::unit(n, i).with(i, k);
        let nf = table.get(&u)?;
        let coords: Vec<RatFunc> = pe.iter().map(|w| nf.coeff(w)).collect();
        if let Offer::Dependent(c) = finder.offer(&coords)? {
            let mut q = OreOperator::d_pow(u);
            for (j, cj) in c.iter().enumerate() {
                let w = Exponent::zero(n).with(i, j as u32);
                q = &q - &OreOperator::term(w, cj.clone());
            }
            return Ok(q.primitive());
        }
    }
    Err(Error::Invariant(format!(
        "no dependence among d{}^k for k up to the rank",
        i + 1
    )))
}

/// All `k >= 0` with `p(k) = 0`, ascending, for a polynomial in at most one
/// variable.
pub fn nonneg_integer_roots(p: &MultiPoly) -> Result<Vec<u32>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("root extraction"));
    }
    let vars: Vec<usize> = (0..p.nvars()).filter(|&i| p.involves(i)).collect();
    if vars.len() > 1 {
        return Err(Error::Structural(format!("expected a univariate polynomial, got {p}")));
    }
    let Some(&var) = vars.first() else {
        return Ok(Vec::new());
    };
    let p = p.normalized();
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e.get(var) as usize] = c.to_integer();
    }
    let s = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let stripped = &coeffs[s..];
    let mut roots = BTreeSet::new();
    if s > 0 {
        roots.insert(0u32);
    }
    if stripped.len() > 1 {
        let lead = stripped.last().expect("nonempty").abs();
        let trailing = stripped[0].abs();
        // Cauchy bound 1 + max |a_j / a_lead|
        let max_ratio = stripped[..stripped.len() - 1]
            .iter()
            .map(|a| Q::new(a.abs(), lead.clone()))
            .max()
            .unwrap_or_else(Q::zero);
        let bound = (max_ratio + Q::one()).floor().to_integer();
        let limit = bound.min(trailing.clone());
        let mut k = BigInt::one();
        while k <= limit {
            if trailing.is_multiple_of(&k) && horner(stripped, &k).is_zero() {
                let r = u32::try_from(&k)
                    .map_err(|_| Error::Structural("indicial root does not fit in u32".into()))?;
                roots.insert(r);
            }
            k += 1;
        }
    }
    Ok(roots.into_iter().collect())
}

fn horner(coeffs: &[BigInt], k: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
}

/// Candidate set `S`: points of the grid of roots of `ind(Q_i)` at which every
/// `ind(g)`, `g` in G, vanishes.
pub fn candidate_exponents(g: &GroebnerBasis) -> Result<CandidateSet> {
    let n = g.nvars();
    let mut generators_used = Vec::new();
    let mut root_sets = Vec::with_capacity(n);
    for i in 0..n {
        let q = eliminate_univariate(g, i)?;
        let ind = indicial_polynomial(&q)?;
        root_sets.push(nonneg_integer_roots(ind.poly())?);
        generators_used.push(ind);
    }
    let inds: Vec<IndicialPoly> = g
        .elements()
        .iter()
        .map(indicial_polynomial)
        .collect::<Result<_>>()?;
    let mut exponents: Vec<Exponent> = grid(&root_sets)
        .into_iter()
        .filter(|v| inds.iter().all(|p| p.vanishes_at(v)))
        .collect();
    exponents.sort();
    generators_used.extend(inds);
    Ok(CandidateSet {
        exponents,
        generators_used,
        root_sets,
    })
}

fn grid(sets: &[Vec<u32>]) -> Vec<Exponent> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for set in sets {
        out = out
            .iter()
            .flat_map(|p| {
                set.iter().map(move |&k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Exponent::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::syntax::{parse_operator, parse_poly};

    fn op(s: &str) -> OreOperator {
        parse_operator(s, 2).unwrap()
    }

    fn y(s: &str) -> MultiPoly {
        parse_poly(&s.replace('y', "x"), 2).unwrap()
    }

    #[test]
    fn indicial_polynomials_of_fixtures() {
        let g1 = op("x1*x2*d2 - x1*x2*d1 + x2 - x1");
        let g2 = op("x1^2*d1^2 - 2*x1*d1 + 2 + x1^2");
        assert_eq!(indicial_polynomial(&g1).unwrap().poly(), &y("y2 - 1"));
        assert_eq!(indicial_polynomial(&g2).unwrap().poly(), &y("(y1 - 1)*(y1 - 2)"));
        let p = op("d2^2 - 2*d2 + 1");
        assert_eq!(indicial_polynomial(&p).unwrap().poly(), &y("y2*(y2 - 1)"));
        assert!(indicial_polynomial(&OreOperator::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn x_multiples_keep_the_indicial_polynomial() {
        let p = op("x1*d1^2 + x2*d2 - 3");
        let xp = &op("x1^2*x2") * &p;
        assert_eq!(indicial_polynomial(&xp).unwrap(), indicial_polynomial(&p).unwrap());
    }

    #[test]
    fn elimination() {
        let g = buchberger(&[op("x2*d2 + d1 - x2 - 1"), op("d1^2 - d1")]).unwrap();
        assert_eq!(eliminate_univariate(&g, 1).unwrap(), op("d2^2 - 2*d2 + 1"));
        assert_eq!(eliminate_univariate(&g, 0).unwrap(), op("d1^2 - d1"));
        let trivial = buchberger(&[op("d1"), op("d2")]).unwrap();
        assert_eq!(eliminate_univariate(&trivial, 0).unwrap(), op("d1"));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(nonneg_integer_roots(&y("(y1 - 1)*(y1 - 2)")).unwrap(), vec![1, 2]);
        assert_eq!(nonneg_integer_roots(&y("y2*(y2 - 1)")).unwrap(), vec![0, 1]);
        assert!(nonneg_integer_roots(&y("y1^2 + 1")).unwrap().is_empty());
        assert_eq!(nonneg_integer_roots(&y("(2*y1 - 1)*(y1 - 6)*(y1 + 3)")).unwrap(), vec![6]);
        assert!(nonneg_integer_roots(&MultiPoly::zero(2)).is_err());
        assert!(nonneg_integer_roots(&y("y1*y2")).is_err());
    }

    #[test]
    fn candidates_of_fixture() {
        let g = buchberger(&[op("x2*d2 + d1 - x2 - 1"), op("d1^2 - d1")]).unwrap();
        let s = candidate_exponents(&g).unwrap();
        assert_eq!(s.exponents, vec![Exponent::from([0, 0]), Exponent::from([0, 1])]);
    }
}
