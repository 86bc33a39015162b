//! Left Gröbner bases in `Q(x)[d]` under the graded lexicographic order with
//! `d_n > ... > d_1`.
//!
//! Reduction runs over the coefficient field `Q(x)` with monic reducers;
//! the primitive (polynomial, content-free) representatives are produced
//! only when a basis is finalized.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{Exponent, MultiPoly, Q};
use crate::error::{check_nvars, Error, Result};
use crate::ore::OreOperator;

/// The fixed term order: graded lexicographic with `d_n > d_{n-1} > ... > d_1`.
///
/// The same order is used on x-monomials when a least x-term is needed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        "graded lex, d_n > ... > d_1"
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> std::cmp::Ordering {
        a.cmp(b)
    }
}

/// Reduced primitive left Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    /// primitive representatives in K[x][d], ascending by head term
    elements: Vec<OreOperator>,
    /// the same elements divided by their head coefficients
    monic: Vec<OreOperator>,
    parametric: std::result::Result<Vec<Exponent>, usize>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    /// Wraps elements already known to form a reduced Gröbner basis.
    fn from_monic(nvars: usize, mut monic: Vec<OreOperator>) -> Self {
        monic.sort_by(|a, b| a.head_exponent().cmp(&b.head_exponent()));
        let elements: Vec<OreOperator> = monic.iter().map(OreOperator::primitive).collect();
        let parametric = compute_parametric(nvars, &monic);
        GroebnerBasis {
            nvars,
            order: MonomialOrder,
            elements,
            monic,
            parametric,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[OreOperator] {
        &self.elements
    }

    pub fn monic_elements(&self) -> &[OreOperator] {
        &self.monic
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the basis `{1}` of the whole ring.
    pub fn is_unit(&self) -> bool {
        self.monic
            .iter()
            .any(|g| g.head_exponent().is_some_and(Exponent::is_zero))
    }

    /// HT(G) as exponent vectors.
    pub fn head_exponents(&self) -> Vec<Exponent> {
        self.elements
            .iter()
            .map(|g| g.head_exponent().expect("nonzero element").clone())
            .collect()
    }

    /// HC(G), polynomials of the primitive representatives.
    pub fn head_coeffs(&self) -> Vec<MultiPoly> {
        self.elements
            .iter()
            .map(|g| {
                g.head_coeff()
                    .and_then(|c| c.as_poly())
                    .expect("primitive elements have polynomial coefficients")
                    .clone()
            })
            .collect()
    }

    /// HC(G) as a set: distinct normalized head coefficients.
    pub fn head_coeff_set(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for h in self.head_coeffs() {
            let h = h.normalized();
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    /// PE(G): exponents of terms not divisible by any head term, ascending.
    pub fn parametric_exponents(&self) -> Result<&[Exponent]> {
        match &self.parametric {
            Ok(v) => Ok(v),
            Err(i) => Err(Error::NotDFinite(*i + 1)),
        }
    }

    pub fn rank(&self) -> Result<usize> {
        self.parametric_exponents().map(<[Exponent]>::len)
    }

    pub fn is_d_finite(&self) -> bool {
        self.parametric.is_ok()
    }

    /// No head coefficient vanishes at `alpha`.
    pub fn is_ordinary_at(&self, alpha: &[Q]) -> Result<bool> {
        check_nvars(self.nvars, alpha.len())?;
        for h in self.head_coeffs() {
            if h.eval(alpha)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_ordinary_at_origin(&self) -> bool {
        self.head_coeffs().iter().all(|h| !h.constant_term().is_zero())
    }

    /// Normal form of `p`: no term is divisible by a head term.
    pub fn normal_form(&self, p: &OreOperator) -> Result<OreOperator> {
        check_nvars(self.nvars, p.nvars())?;
        Ok(Reducer::new(&self.monic).reduce(p))
    }

    pub fn contains(&self, p: &OreOperator) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Basis of the translated ideal, coefficients `c(x)` replaced by `c(x + alpha)`.
    pub fn translate(&self, alpha: &[Q]) -> Result<GroebnerBasis> {
        check_nvars(self.nvars, alpha.len())?;
        let monic = self
            .monic
            .iter()
            .map(|g| g.translate(alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroebnerBasis::from_monic(self.nvars, monic))
    }
}

fn compute_parametric(nvars: usize, monic: &[OreOperator]) -> std::result::Result<Vec<Exponent>, usize> {
    let heads: Vec<&Exponent> = monic.iter().filter_map(OreOperator::head_exponent).collect();
    if heads.iter().any(|h| h.is_zero()) {
        return Ok(Vec::new());
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let b = heads
            .iter()
            .filter(|h| h.pure_power_of() == Some(i))
            .map(|h| h.get(i))
            .min()
            .ok_or(i)?;
        bounds.push(b);
    }
    let mut out: Vec<Exponent> = box_exponents(&bounds)
        .into_iter()
        .filter(|u| !heads.iter().any(|h| h.divides(u)))
        .collect();
    out.sort();
    Ok(out)
}

/// All u with u_i < bounds_i.
fn box_exponents(bounds: &[u32]) -> Vec<Exponent> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..b {
                let mut q: Vec<u32> = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        out = next;
    }
    out.into_iter().map(Exponent::new).collect()
}

/// Full reduction by a list of monic operators, caching `d^w * g`.
pub(crate) struct Reducer<'a> {
    basis: &'a [OreOperator],
    order: Vec<usize>,
    cache: HashMap<(usize, Exponent), OreOperator>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(basis: &'a [OreOperator]) -> Self {
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| basis[a].head_exponent().cmp(&basis[b].head_exponent()));
        Reducer {
            basis,
            order,
            cache: HashMap::new(),
        }
    }

    fn reducer_for(&self, t: &Exponent) -> Option<usize> {
        // ascending by head: the first divisor has the smallest head term
        self.order.iter().copied().find(|&i| {
            self.basis[i]
                .head_exponent()
                .is_some_and(|h| h.divides(t))
        })
    }

    /// `d^w * g_i` without its head term.
    fn shifted_tail(&mut self, i: usize, w: Exponent) -> &OreOperator {
        let basis = self.basis;
        self.cache.entry((i, w)).or_insert_with_key(|(i, w)| {
            let mut s = basis[*i].d_pow_left(w);
            s.pop_head();
            s
        })
    }

    pub(crate) fn reduce(&mut self, p: &OreOperator) -> OreOperator {
        let mut p = p.clone();
        let mut rem = OreOperator::zero(p.nvars());
        while let Some((t, c)) = p.pop_head() {
            match self.reducer_for(&t) {
                Some(i) => {
                    let head = self.basis[i].head_exponent().expect("nonzero").clone();
                    let w = t.checked_sub(&head).expect("head divides t");
                    let tail = self.shifted_tail(i, w).left_mul_coeff(&c);
                    p = &p - &tail;
                }
                None => rem.add_term(t, c),
            }
        }
        rem
    }
}

/// Memoized normal forms of the pure terms `d^v`.
pub struct NormalFormTable<'a> {
    reducer: Reducer<'a>,
    nvars: usize,
    cache: HashMap<Exponent, OreOperator>,
}

impl<'a> NormalFormTable<'a> {
    pub fn new(g: &'a GroebnerBasis) -> Self {
        Self::from_monic(g.nvars, &g.monic)
    }

    pub(crate) fn from_monic(nvars: usize, monic: &'a [OreOperator]) -> Self {
        NormalFormTable {
            reducer: Reducer::new(monic),
            nvars,
            cache: HashMap::new(),
        }
    }

    /// Normal form of `d^v`, built from `d_i * NF(d^(v - e_i))`.
    pub fn get(&mut self, v: &Exponent) -> Result<OreOperator> {
        check_nvars(self.nvars, v.len())?;
        if let Some(nf) = self.cache.get(v) {
            return Ok(nf.clone());
        }
        let nf = match v.last_nonzero() {
            None => self.reducer.reduce(&OreOperator::one(self.nvars)),
            Some(i) => {
                let prev = self.get(&v.with(i, v.get(i) - 1))?;
                self.reducer.reduce(&prev.d_left(i))
            }
        };
        self.cache.insert(v.clone(), nf.clone());
        Ok(nf)
    }
}

/// Reduced primitive Gröbner basis of the left ideal generated by `gens`.
pub fn buchberger(gens: &[OreOperator]) -> Result<GroebnerBasis> {
    let first = gens
        .iter()
        .find(|g| !g.is_zero())
        .ok_or(Error::ZeroInput("Gröbner basis"))?;
    let n = first.nvars();
    for g in gens {
        check_nvars(n, g.nvars())?;
    }
    let monic = complete(n, gens);
    Ok(GroebnerBasis::from_monic(n, monic))
}

/// Treats `elements` as a reduced Gröbner basis over `Q(x)` and returns its
/// primitive normalization.
pub fn make_primitive(elements: &[OreOperator]) -> Result<GroebnerBasis> {
    let first = elements
        .iter()
        .find(|g| !g.is_zero())
        .ok_or(Error::ZeroInput("primitive basis"))?;
    let n = first.nvars();
    let monic = elements
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            check_nvars(n, g.nvars())?;
            Ok(g.monic())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis::from_monic(n, monic))
}

pub fn normal_form(p: &OreOperator, g: &GroebnerBasis) -> Result<OreOperator> {
    g.normal_form(p)
}

pub fn parametric_exponents(g: &GroebnerBasis) -> Result<(Vec<Exponent>, usize)> {
    let pe = g.parametric_exponents()?.to_vec();
    let r = pe.len();
    Ok((pe, r))
}

fn unit_basis(n: usize) -> Vec<OreOperator> {
    vec![OreOperator::one(n)]
}

/// Buchberger completion with the normal selection strategy, followed by
/// minimization and inter-reduction. Returns monic elements.
fn complete(n: usize, gens: &[OreOperator]) -> Vec<OreOperator> {
    let mut basis: Vec<OreOperator> = Vec::new();
    let mut pairs: Vec<(usize, usize, Exponent)> = Vec::new();

    let add = |basis: &mut Vec<OreOperator>, pairs: &mut Vec<(usize, usize, Exponent)>, h: OreOperator| {
        let hh = h.head_exponent().expect("nonzero").clone();
        let idx = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.head_exponent().expect("nonzero").lcm(&hh);
            pairs.push((i, idx, lcm));
        }
        basis.push(h);
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let r = Reducer::new(&basis).reduce(g);
        if r.is_zero() {
            continue;
        }
        if r.is_d_free() {
            return unit_basis(n);
        }
        add(&mut basis, &mut pairs, r.monic());
    }

    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .2.cmp(&b.1 .2))
            .expect("nonempty");
        let (i, j, lcm) = pairs.swap_remove(k);
        let (gi, gj) = (&basis[i], &basis[j]);
        let wi = lcm.checked_sub(gi.head_exponent().expect("nonzero")).expect("lcm");
        let wj = lcm.checked_sub(gj.head_exponent().expect("nonzero")).expect("lcm");
        let s = &gi.d_pow_left(&wi) - &gj.d_pow_left(&wj);
        let r = Reducer::new(&basis).reduce(&s);
        if r.is_zero() {
            continue;
        }
        if r.is_d_free() {
            return unit_basis(n);
        }
        add(&mut basis, &mut pairs, r.monic());
    }

    // minimize: drop elements whose head is divisible by another head
    let heads: Vec<Exponent> = basis
        .iter()
        .map(|g| g.head_exponent().expect("nonzero").clone())
        .collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i && heads[j].divides(&heads[i]) && (heads[j] != heads[i] || j < i)
            })
        })
        .collect();
    let minimal: Vec<OreOperator> = keep.iter().map(|&i| basis[i].clone()).collect();

    // inter-reduce the tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<OreOperator> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let mut g = g.clone();
        let (t, c) = g.pop_head().expect("nonzero");
        let tail = Reducer::new(&others).reduce(&g);
        let mut out = OreOperator::term(t, c);
        out = &out + &tail;
        reduced.push(out);
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_operator;

    fn op(s: &str) -> OreOperator {
        parse_operator(s, 2).unwrap()
    }

    fn basis(gens: &[&str]) -> GroebnerBasis {
        buchberger(&gens.iter().map(|s| op(s)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn elements_reduce_to_zero() {
        let g = basis(&["x2*d2 + d1 - x2 - 1", "d1^2 - d1"]);
        for e in g.elements() {
            assert!(g.normal_form(e).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_of_member_and_head() {
        let g = basis(&["x2*d2 + d1 - x2 - 1", "d1^2 - d1"]);
        assert!(g.normal_form(&op("d2^2 - 2*d2 + 1")).unwrap().is_zero());
        assert_eq!(g.normal_form(&op("d1^2")).unwrap(), op("d1"));
    }

    #[test]
    fn already_reduced_input_is_kept() {
        let g = basis(&["d2 - d1", "d1^2 + 1"]);
        assert_eq!(g.elements(), &[op("d2 - d1"), op("d1^2 + 1")]);
        let g = basis(&["x2*d2 + d1 - x2 - 1", "d1^2 - d1"]);
        assert_eq!(g.elements(), &[op("x2*d2 + d1 - x2 - 1"), op("d1^2 - d1")]);
    }

    #[test]
    fn unit_ideal() {
        let g = basis(&["d1", "x1*d1 - 1"]);
        assert!(g.is_unit());
        assert_eq!(g.elements(), &[OreOperator::one(2)]);
        assert_eq!(g.rank().unwrap(), 0);
    }

    #[test]
    fn parametric_exponents_of_fixtures() {
        let nop = basis(&["x1*d1^2 - (x1*x2 - 1)*d1 - x2", "x2*d2 - x1*d1"]);
        assert_eq!(
            nop.parametric_exponents().unwrap(),
            &[Exponent::from([0, 0]), Exponent::from([1, 0])]
        );
        let m = basis(&["d1^3", "d1^2*d2", "d1*d2^2", "d2^3"]);
        assert_eq!(m.rank().unwrap(), 6);
        assert_eq!(m.parametric_exponents().unwrap(), Exponent::up_to_degree(2, 2).as_slice());
    }

    #[test]
    fn not_d_finite() {
        let g = basis(&["d1"]);
        assert!(matches!(g.rank(), Err(Error::NotDFinite(2))));
    }

    #[test]
    fn primitive_normalization() {
        let g = make_primitive(&[op("d1^2 - d1")]).unwrap();
        assert_eq!(g.elements(), &[op("d1^2 - d1")]);
        let scaled = op("x2*d2 + d1 - x2 - 1").left_mul_coeff(
            &crate::algebra::RatFunc::new(MultiPoly::one(2), MultiPoly::var(2, 1)).unwrap(),
        );
        let g = make_primitive(&[scaled]).unwrap();
        assert_eq!(g.elements(), &[op("x2*d2 + d1 - x2 - 1")]);
        let g = make_primitive(&[op("2*x1*d1 + 4*x1")]).unwrap();
        assert_eq!(g.elements(), &[op("d1 + 2")]);
    }
}
