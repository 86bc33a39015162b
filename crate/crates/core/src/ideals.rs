//! Left ideals of `Q(x)[d]` given by reduced Gröbner bases, their sums and
//! intersections, and the rank-one ideals of monomials and exponentials.

use crate::algebra::{Exponent, MultiPoly, Q};
use crate::error::{check_nvars, Error, Result};
use crate::groebner::{buchberger, make_primitive, GroebnerBasis, NormalFormTable};
use crate::linalg::{Offer, PolyDependencyFinder};
use crate::ore::OreOperator;

/// A left ideal, represented by its reduced primitive Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIdeal {
    basis: GroebnerBasis,
}

impl LeftIdeal {
    pub fn from_generators(gens: &[OreOperator]) -> Result<Self> {
        Ok(LeftIdeal {
            basis: buchberger(gens)?,
        })
    }

    pub fn from_basis(basis: GroebnerBasis) -> Self {
        LeftIdeal { basis }
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn into_basis(self) -> GroebnerBasis {
        self.basis
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn rank(&self) -> Result<usize> {
        self.basis.rank()
    }

    pub fn contains(&self, p: &OreOperator) -> Result<bool> {
        self.basis.contains(p)
    }
}

/// `<x1 d1 - v1, ..., xn dn - vn>`, whose solutions are spanned by `x^v`.
pub fn point_ideal(v: &Exponent) -> Result<LeftIdeal> {
    let n = v.len();
    if n == 0 {
        return Err(Error::Structural("point ideal needs at least one variable".into()));
    }
    let gens: Vec<OreOperator> = (0..n)
        .map(|i| {
            let xd = &OreOperator::x(n, i) * &OreOperator::d(n, i);
            &xd - &OreOperator::from_poly(MultiPoly::constant(n, Q::from_integer(v.get(i).into())))
        })
        .collect();
    LeftIdeal::from_generators(&gens)
}

/// `<d1 - c1, ..., dn - cn>`, whose solutions are spanned by `exp(c . x)`.
pub fn exp_ideal(c: &[Q]) -> Result<LeftIdeal> {
    let n = c.len();
    if n == 0 {
        return Err(Error::Structural("exponential ideal needs at least one variable".into()));
    }
    let gens: Vec<OreOperator> = c
        .iter()
        .enumerate()
        .map(|(i, ci)| &OreOperator::d(n, i) - &OreOperator::from_poly(MultiPoly::constant(n, ci.clone())))
        .collect();
    LeftIdeal::from_generators(&gens)
}

/// `I + J`, the ideal generated by both bases.
pub fn sum(i: &LeftIdeal, j: &LeftIdeal) -> Result<LeftIdeal> {
    check_nvars(i.nvars(), j.nvars())?;
    let gens: Vec<OreOperator> = i
        .basis
        .elements()
        .iter()
        .chain(j.basis.elements())
        .cloned()
        .collect();
    LeftIdeal::from_generators(&gens)
}

pub fn intersect(i: &LeftIdeal, j: &LeftIdeal) -> Result<LeftIdeal> {
    intersect_all(&[i.clone(), j.clone()])
}

/// Intersection of finitely many D-finite left ideals.
///
/// The map `P -> (NF_1(P), ..., NF_k(P))` is left `Q(x)`-linear with kernel
/// the intersection. Terms `d^u` are visited in increasing order, skipping
/// multiples of heads already found; the first linear dependence on a term
/// gives the basis element with that head.
pub fn intersect_all(ideals: &[LeftIdeal]) -> Result<LeftIdeal> {
    let first = ideals
        .first()
        .ok_or_else(|| Error::Structural("intersection of an empty family".into()))?;
    let n = first.nvars();
    for id in ideals {
        check_nvars(n, id.nvars())?;
    }
    if ideals.len() == 1 {
        return Ok(first.clone());
    }
    let pes: Vec<Vec<Exponent>> = ideals
        .iter()
        .map(|id| id.basis.parametric_exponents().map(<[Exponent]>::to_vec))
        .collect::<Result<_>>()?;
    let mut tables: Vec<NormalFormTable> = ideals.iter().map(|id| NormalFormTable::new(&id.basis)).collect();

    let mut finder = PolyDependencyFinder::new(n);
    let mut staircase: Vec<Exponent> = Vec::new();
    let mut heads: Vec<Exponent> = Vec::new();
    let mut elements: Vec<OreOperator> = Vec::new();
    for d in 0.. {
        let mut grew = false;
        for u in Exponent::of_degree(n, d) {
            if heads.iter().any(|h| h.divides(&u)) {
                continue;
            }
            let mut coords = Vec::new();
            for (table, pe) in tables.iter_mut().zip(&pes) {
                let nf = table.get(&u)?;
                coords.extend(pe.iter().map(|w| nf.coeff(w)));
            }
            match finder.offer(&coords)? {
                Offer::Independent(_) => {
                    staircase.push(u);
                    grew = true;
                }
                Offer::Dependent(c) => {
                    let mut g = OreOperator::d_pow(u.clone());
                    for (w, cw) in staircase.iter().zip(&c) {
                        g = &g - &OreOperator::term(w.clone(), cw.clone());
                    }
                    heads.push(u);
                    elements.push(g);
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(LeftIdeal {
        basis: make_primitive(&elements)?,
    })
}

/// True iff every element of `m` lies in the ideal of `g`.
pub fn is_left_multiple(m: &GroebnerBasis, g: &GroebnerBasis) -> Result<bool> {
    check_nvars(g.nvars(), m.nvars())?;
    for e in m.elements() {
        if !g.contains(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}
