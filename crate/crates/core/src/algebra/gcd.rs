//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content / primitive-part decomposition with respect to the
//! highest-indexed variable present, and a subresultant remainder sequence
//! for the primitive parts. Univariate problems fall back to the monic
//! Euclidean algorithm over Q.

use num_traits::Zero;

use super::monomial::Exponent;
use super::poly::{MultiPoly, Q};
use crate::error::{check_nvars, Error, Result};

/// Greatest common divisor, normalized to integer coefficients with gcd 1 and
/// positive leading coefficient. `gcd(0, p)` is the normalization of `p`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    check_nvars(a.nvars(), b.nvars())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd"));
    }
    Ok(gcd_rec(a, b))
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    if a == b {
        return a.normalized();
    }
    let (ma, mb) = (min_exponent(a), min_exponent(b));
    if !ma.is_zero() || !mb.is_zero() {
        let common: Vec<u32> = (0..n).map(|i| ma.get(i).min(mb.get(i))).collect();
        let a = strip_monomial(a, &ma);
        let b = strip_monomial(b, &mb);
        let g = gcd_rec(&a, &b);
        return g.mul_monomial(&Exponent::new(common), &Q::from_integer(1.into()));
    }
    let main = (0..n)
        .rev()
        .find(|&i| a.involves(i) || b.involves(i))
        .expect("non-constant polynomial involves some variable");
    let (a_has, b_has) = (a.involves(main), b.involves(main));
    if !a_has {
        return gcd_rec(a, &content_in(b, main));
    }
    if !b_has {
        return gcd_rec(&content_in(a, main), b);
    }
    let lower_free = (0..main).all(|i| !a.involves(i) && !b.involves(i));
    if lower_free {
        return univariate_gcd(a, b, main);
    }
    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    if coprime_by_specialization(&pa, &pb, main) {
        return c.normalized();
    }
    let g = subresultant_gcd(&pa, &pb, main);
    let g = primitive_in(&g, main);
    (&c * &g).normalized()
}

/// True when some evaluation of the variables other than `var` keeps both
/// leading coefficients nonzero and leaves coprime images. A `false` answer
/// is inconclusive.
fn coprime_by_specialization(a: &MultiPoly, b: &MultiPoly, var: usize) -> bool {
    let n = a.nvars();
    let (la, lb) = (lead_in(a, var), lead_in(b, var));
    for attempt in 0..3i64 {
        let point: Vec<Q> = (0..n).map(|i| Q::from_integer((7 + 13 * attempt + 5 * i as i64).into())).collect();
        let nonzero = |p: &MultiPoly| p.eval(&point).map(|v| !v.is_zero()).unwrap_or(false);
        if !nonzero(&la) || !nonzero(&lb) {
            continue;
        }
        let sa = specialize(a, var, &point);
        let sb = specialize(b, var, &point);
        return univariate_gcd(&sa, &sb, var).is_constant();
    }
    false
}

/// Substitutes `point[i]` for every variable except `var`.
fn specialize(p: &MultiPoly, var: usize, point: &[Q]) -> MultiPoly {
    let n = p.nvars();
    let mut out = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        let mut c = c.clone();
        for (i, v) in point.iter().enumerate() {
            if i != var && e.get(i) > 0 {
                c *= v.pow(e.get(i) as i32);
            }
        }
        let mono = Exponent::zero(n).with(var, e.get(var));
        out = &out + &MultiPoly::monomial(mono, c);
    }
    out
}

fn min_exponent(p: &MultiPoly) -> Exponent {
    let n = p.nvars();
    let mut m: Option<Vec<u32>> = None;
    for (e, _) in p.terms() {
        let v = m.get_or_insert_with(|| e.as_slice().to_vec());
        for (i, x) in v.iter_mut().enumerate() {
            *x = (*x).min(e.get(i));
        }
    }
    Exponent::new(m.unwrap_or_else(|| vec![0; n]))
}

fn strip_monomial(p: &MultiPoly, m: &Exponent) -> MultiPoly {
    if m.is_zero() {
        return p.clone();
    }
    MultiPoly::from_terms(
        p.nvars(),
        p.terms().map(|(e, c)| (e.checked_sub(m).expect("minimal exponent divides"), c.clone())),
    )
}

/// Gcd of the coefficients with respect to `var`.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.nvars());
    for c in p.coeffs_in(var).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

fn lead_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let d = p.degree_in(var).unwrap_or(0);
    p.coeff_in(var, d)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `var`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var).unwrap_or(0);
    let lb = lead_in(b, var);
    let mut r = a.clone();
    let mut e = a.degree_in(var).unwrap_or(0) as i64 - db as i64 + 1;
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = lead_in(&r, var);
        let shifted = (&lr * b).mul_var_pow(var, dr - db);
        r = &(&lb * &r) - &shifted;
        e -= 1;
    }
    if e > 0 {
        r = &r * &lb.pow(e as u32);
    }
    r
}

fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let n = a.nvars();
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut gg = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let df = f.degree_in(var).unwrap_or(0);
        let dg = g.degree_in(var).unwrap_or(0);
        let delta = df - dg;
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(var) == Some(0) {
            return MultiPoly::one(n);
        }
        let divisor = &gg * &h.pow(delta);
        f = g;
        g = r.exact_div(&divisor).expect("subresultant division is exact");
        gg = lead_in(&f, var);
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let monic = |p: &MultiPoly| p.scale(&lead_in(p, var).constant_term().recip());
    let mut f = monic(a);
    let mut g = monic(b);
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let dg = g.degree_in(var).unwrap_or(0);
        let lg = lead_in(&g, var).constant_term();
        let mut r = f;
        while !r.is_zero() {
            let dr = r.degree_in(var).unwrap_or(0);
            if dr < dg {
                break;
            }
            let c = lead_in(&r, var).constant_term() / &lg;
            r = &r - &g.mul_var_pow(var, dr - dg).scale(&c);
        }
        f = g;
        g = if r.is_zero() { r } else { monic(&r) };
    }
    if f.is_zero() || f.is_constant() {
        return MultiPoly::one(a.nvars());
    }
    f.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::q;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn common_linear_factor() {
        let a = &x(0).pow(2) - &x(1).pow(2);
        let b = &x(0) - &x(1);
        assert!(poly_gcd(&a, &b).unwrap().is_associate(&b));
    }

    #[test]
    fn gcd_with_one() {
        let p = &x(0).pow(3) + &x(2);
        assert_eq!(poly_gcd(&p, &MultiPoly::one(3)).unwrap(), MultiPoly::one(3));
    }

    #[test]
    fn monomial_factor() {
        let xy = &x(0) * &x(1);
        let a = &(&x(0).pow(2) * &x(1)) + &(&x(0) * &x(1).pow(2));
        assert_eq!(poly_gcd(&a, &xy).unwrap(), xy);
    }

    #[test]
    fn both_zero_is_an_error() {
        assert!(matches!(
            poly_gcd(&MultiPoly::zero(2), &MultiPoly::zero(2)),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn trivariate_factor() {
        let one = MultiPoly::one(3);
        let f = &(&(&x(0) * &x(2)) - &x(1)) + &one;
        let g1 = &(&x(0) + &x(2).pow(2)) - &x(1).scale(&q(3));
        let g2 = &(&x(1) * &x(2)) + &x(0).pow(2);
        let a = &f * &g1;
        let b = &f * &g2;
        assert!(poly_gcd(&a, &b).unwrap().is_associate(&f));
    }

    #[test]
    fn rational_coefficients() {
        let a = (&x(0) - &x(1)).scale(&crate::algebra::poly::q_frac(1, 3));
        let b = (&x(0) - &x(1)).scale(&q(6));
        assert_eq!(poly_gcd(&a, &b).unwrap(), (&x(1) - &x(0)).normalized());
    }
}
