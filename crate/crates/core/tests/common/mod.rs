#![allow(dead_code)]

use dfinite::algebra::{Exponent, MultiPoly, Q};
use dfinite::groebner::{buchberger, GroebnerBasis};
use dfinite::ore::OreOperator;
use dfinite::syntax::parse_operator;
use num_bigint::BigInt;
use num_traits::One;

pub fn ops(gens: &[&str]) -> Vec<OreOperator> {
    gens.iter().map(|s| parse_operator(s, 2).unwrap()).collect()
}

pub fn gb(gens: &[&str]) -> GroebnerBasis {
    buchberger(&ops(gens)).unwrap()
}

pub const OP: &[&str] = &["d2 - d1", "d1^2 + 1"];
pub const NOP: &[&str] = &["x1*d1^2 - (x1*x2 - 1)*d1 - x2", "x2*d2 - x1*d1"];
pub const APPSIN1: &[&str] = &["x2*d2 + d1 - x2 - 1", "d1^2 - d1"];
pub const APPSIN2: &[&str] = &["x2^2*d2 - x1^2*d1 + x1 - x2", "d1^2"];
pub const INDPOL: &[&str] = &["x1*x2*d2 - x1*x2*d1 + x2 - x1", "x1^2*d1^2 - 2*x1*d1 + 2 + x1^2"];
pub const NOT_APPARENT: &[&str] = &[
    "x1*x2*d2 + (-x1^2 + 2*x1*x2)*d1 - 2*x2",
    "(x1^3 - x1^2*x2)*d1^2 + 2*x1*x2*d1 - 2*x2",
];
pub const APPARENT3: &[&str] = &[
    "(x1 - x2)*d1^2 - x1*x2*d2 + x1*x2*d1 + x1 - x2",
    "(x1 - x2)*d1*d2 + (-1 - x1*x2)*d2 + (1 + x1*x2)*d1 + x1 - x2",
    "(x1 - x2)*d2^2 - x1*x2*d2 + x1*x2*d1 + x1 - x2",
];

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn e(v: [u32; 2]) -> Exponent {
    Exponent::from(v)
}

fn fact(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn frac(num: BigInt, den: BigInt) -> Q {
    Q::new(num, den)
}

/// Taylor polynomial of `exp(a*x1 + b*x2)` up to total degree `m`.
pub fn exp_linear(a: i64, b: i64, m: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let num = BigInt::from(a).pow(i) * BigInt::from(b).pow(j);
            terms.push((e([i, j]), frac(num, fact(i) * fact(j))));
        }
    }
    MultiPoly::from_terms(2, terms)
}

/// Taylor polynomial of `x2 * exp(x2)` up to total degree `m`.
pub fn x2_exp_x2(m: u32) -> MultiPoly {
    let terms = (1..=m).map(|k| (e([0, k]), frac(BigInt::one(), fact(k - 1))));
    MultiPoly::from_terms(2, terms)
}

/// Taylor polynomials of `sin(x1 + x2)` and `cos(x1 + x2)` up to degree `m`.
pub fn sin_cos_sum(m: u32) -> (MultiPoly, MultiPoly) {
    let mut sin = Vec::new();
    let mut cos = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let k = i + j;
            // (x1 + x2)^k / k! contributes x1^i x2^j / (i! j!)
            let c = frac(BigInt::one(), fact(i) * fact(j));
            let sign = if (k / 2) % 2 == 0 { c.clone() } else { -c };
            if k % 2 == 1 {
                sin.push((e([i, j]), sign));
            } else {
                cos.push((e([i, j]), sign));
            }
        }
    }
    (MultiPoly::from_terms(2, sin), MultiPoly::from_terms(2, cos))
}

/// Coefficient matrix of polynomials over the monomials of degree `<= m`.
pub fn coefficient_rows(polys: &[MultiPoly], m: u32) -> Vec<Vec<Q>> {
    let monomials = Exponent::up_to_degree(2, m);
    polys
        .iter()
        .map(|p| monomials.iter().map(|u| p.coeff(u)).collect())
        .collect()
}

/// True if both lists span the same rational vector space.
pub fn same_span(a: &[MultiPoly], b: &[MultiPoly], m: u32) -> bool {
    use dfinite::linalg::rank;
    let ra = rank(&coefficient_rows(a, m));
    let rb = rank(&coefficient_rows(b, m));
    let both: Vec<MultiPoly> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&coefficient_rows(&both, m)) == ra
}
