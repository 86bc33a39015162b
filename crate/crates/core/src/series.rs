//! Truncated multivariate power series and solution bases at ordinary points.
//!
//! A series `f = sum_u (c_u / u!) x^u` is stored through its scaled
//! coefficients `c_u`, so that `c_u` is the constant term of `d^u f`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Exponent, MultiPoly, RatFunc, Q};
use crate::error::{check_nvars, Error, Result};
use crate::groebner::{GroebnerBasis, NormalFormTable};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    nvars: usize,
    trunc: u32,
    coeffs: BTreeMap<Exponent, Q>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, trunc: u32) -> Self {
        TruncatedSeries {
            nvars,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// Series with the given scaled coefficients `c_u`; entries above the
    /// truncation degree are dropped.
    pub fn from_scaled(nvars: usize, trunc: u32, coeffs: impl IntoIterator<Item = (Exponent, Q)>) -> Self {
        let mut s = TruncatedSeries::zero(nvars, trunc);
        for (u, c) in coeffs {
            if u.degree() <= trunc && !c.is_zero() {
                s.coeffs.insert(u, c);
            }
        }
        s
    }

    /// `(p)_m` for a polynomial given in ordinary (Taylor) form.
    pub fn from_poly(p: &MultiPoly, trunc: u32) -> Self {
        let coeffs = p
            .terms()
            .filter(|(u, _)| u.degree() <= trunc)
            .map(|(u, c)| (u.clone(), c * Q::from_integer(u.factorial())));
        TruncatedSeries::from_scaled(p.nvars(), trunc, coeffs)
    }

    /// Taylor polynomial `sum (c_u / u!) x^u`.
    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.coeffs
                .iter()
                .map(|(u, c)| (u.clone(), c / Q::from_integer(u.factorial()))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc_degree(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Scaled coefficient `c_u`.
    pub fn scaled_coeff(&self, u: &Exponent) -> Q {
        self.coeffs.get(u).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scaled_coeffs(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.coeffs.iter()
    }

    /// Constant term `c_0`.
    pub fn constant_term(&self) -> Q {
        self.scaled_coeff(&Exponent::zero(self.nvars))
    }

    /// Least exponent with nonzero coefficient.
    pub fn initial_exponent(&self) -> Result<Exponent> {
        self.coeffs
            .keys()
            .next()
            .cloned()
            .ok_or(Error::ZeroInput("initial exponent"))
    }

    pub fn truncate(&self, m: u32) -> TruncatedSeries {
        let m = m.min(self.trunc);
        TruncatedSeries {
            nvars: self.nvars,
            trunc: m,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(u, _)| u.degree() <= m)
                .map(|(u, c)| (u.clone(), c.clone()))
                .collect(),
        }
    }

    /// `d^w f`, valid up to degree `trunc - |w|`.
    pub fn derivative_pow(&self, w: &Exponent) -> TruncatedSeries {
        let k = w.degree();
        let trunc = self.trunc.saturating_sub(k);
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(u, c)| u.checked_sub(w).map(|v| (v, c.clone())));
        TruncatedSeries::from_scaled(self.nvars, trunc, coeffs)
    }

    /// Sum; the result is valid up to the smaller truncation degree.
    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (u, c) in &other.coeffs {
            if u.degree() > trunc {
                continue;
            }
            let s = out.scaled_coeff(u) + c;
            if s.is_zero() {
                out.coeffs.remove(u);
            } else {
                out.coeffs.insert(u.clone(), s);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> TruncatedSeries {
        TruncatedSeries::from_scaled(
            self.nvars,
            self.trunc,
            self.coeffs.iter().map(|(u, v)| (u.clone(), v * c)),
        )
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> TruncatedSeries {
        let prod = (&self.to_poly() * p).truncate(self.trunc);
        TruncatedSeries::from_poly(&prod, self.trunc)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let trunc = self.trunc.min(other.trunc);
        let prod = (&self.to_poly().truncate(trunc) * &other.to_poly().truncate(trunc)).truncate(trunc);
        TruncatedSeries::from_poly(&prod, trunc)
    }

    /// Expansion of a rational function whose denominator is nonzero at the origin.
    pub fn expand_ratfunc(r: &RatFunc, trunc: u32) -> Result<TruncatedSeries> {
        let n = r.nvars();
        let den = r.den();
        let d0 = den.constant_term();
        if d0.is_zero() {
            return Err(Error::Expansion(den.to_string()));
        }
        // inverse of den by degree-wise recursion on Taylor coefficients
        let inv_d0 = d0.recip();
        let mut inv: BTreeMap<Exponent, Q> = BTreeMap::new();
        for v in Exponent::up_to_degree(n, trunc) {
            let mut acc = if v.is_zero() { Q::one() } else { Q::zero() };
            for (a, c) in den.terms() {
                if a.is_zero() {
                    continue;
                }
                if let Some(rest) = v.checked_sub(a) {
                    if let Some(g) = inv.get(&rest) {
                        acc -= c * g;
                    }
                }
            }
            let g = acc * &inv_d0;
            if !g.is_zero() {
                inv.insert(v, g);
            }
        }
        let inv_poly = MultiPoly::from_terms(n, inv);
        let prod = (&inv_poly * r.num()).truncate(trunc);
        Ok(TruncatedSeries::from_poly(&prod, trunc))
    }

    /// True if every coefficient of degree at most `m` vanishes.
    pub fn vanishes_through(&self, m: u32) -> bool {
        self.coeffs.keys().all(|u| u.degree() > m)
    }
}

/// Power-series solution basis of a system at an ordinary origin.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionBasis {
    #[serde(serialize_with = "serialize_series")]
    pub basis: Vec<TruncatedSeries>,
    pub parametric_tags: Vec<Exponent>,
}

fn serialize_series<S: serde::Serializer>(v: &[TruncatedSeries], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for f in v {
        seq.serialize_element(&crate::syntax::format_series(f))?;
    }
    seq.end()
}

/// Scaled coefficients `c_v`, `|v| <= m`, of every solution of `G` as linear
/// forms in the parametric values: `c_v = sum_{u in PE} a_{u,v}(0) c_u`.
///
/// Row `v` holds the values `a_{u,v}(0)` over `PE(G)` in ascending order.
pub(crate) fn coefficient_forms(
    g: &GroebnerBasis,
    m: u32,
) -> Result<(Vec<Exponent>, BTreeMap<Exponent, Vec<Q>>)> {
    let pe = g.parametric_exponents()?.to_vec();
    let n = g.nvars();
    let origin = vec![Q::zero(); n];
    let mut table = NormalFormTable::new(g);
    let mut forms = BTreeMap::new();
    for v in Exponent::up_to_degree(n, m) {
        let nf = table.get(&v)?;
        let mut row = Vec::with_capacity(pe.len());
        for u in &pe {
            let a = nf.coeff(u);
            let value = a.eval(&origin).map_err(|_| {
                Error::Invariant(format!(
                    "denominator of the normal form of d^{v} vanishes at an ordinary origin"
                ))
            })?;
            row.push(value);
        }
        forms.insert(v, row);
    }
    Ok((pe, forms))
}

/// Truncated power-series basis at an ordinary origin, one series per
/// parametric exponent `u_j`, normalized by `c_{u_i}(f_j) = [i == j]`.
pub fn solutions_at_ordinary(g: &GroebnerBasis, trunc: u32) -> Result<SolutionBasis> {
    if !g.is_ordinary_at_origin() {
        return Err(Error::OrdinaryPointRequired);
    }
    let n = g.nvars();
    let (pe, forms) = coefficient_forms(g, trunc)?;
    let basis = (0..pe.len())
        .map(|j| {
            TruncatedSeries::from_scaled(
                n,
                trunc,
                forms.iter().map(|(v, row)| (v.clone(), row[j].clone())),
            )
        })
        .collect();
    Ok(SolutionBasis {
        basis,
        parametric_tags: pe,
    })
}

pub fn constant_term(f: &TruncatedSeries) -> Q {
    f.constant_term()
}

pub fn initial_exponent(f: &TruncatedSeries) -> Result<Exponent> {
    f.initial_exponent()
}

/// Checks that `op(f)` vanishes in every degree it is known to.
pub fn annihilates(op: &crate::ore::OreOperator, f: &TruncatedSeries) -> Result<bool> {
    check_nvars(op.nvars(), f.nvars())?;
    let image = op.apply(f)?;
    Ok(image.vanishes_through(image.trunc_degree()))
}
