mod common;

use common::*;
use dfinite::algebra::{content_primitive, poly_gcd, MultiPoly, RatFunc};
use dfinite::syntax::parse_poly;

fn p(s: &str) -> MultiPoly {
    parse_poly(s, 2).unwrap()
}

#[test]
fn product_expands() {
    // oracle: coefficients of (1 + x1)(1 + x2) listed by hand
    let expected = MultiPoly::from_terms(2, [(e([0, 0]), q(1)), (e([1, 0]), q(1)), (e([0, 1]), q(1)), (e([1, 1]), q(1))]);
    assert_eq!(&p("1 + x1") * &p("1 + x2"), expected);
}

#[test]
fn gcd_of_shared_monomial() {
    assert_eq!(poly_gcd(&p("x1^2*x2 + x1*x2^2"), &p("x1*x2")).unwrap(), p("x1*x2"));
}

#[test]
fn evaluation() {
    assert_eq!(p("1 - x1 - x1*x2").eval(&[q(0), q(0)]).unwrap(), q(1));
    assert_eq!(p("x1*x2").eval(&[q(2), q(3)]).unwrap(), q(6));
}

#[test]
fn shifting() {
    assert_eq!(p("x1*x2").shift(&[q(1), q(1)]).unwrap(), p("x1*x2 + x1 + x2 + 1"));
}

#[test]
fn contents() {
    let (c, prim) = content_primitive(&[p("x1*x2"), p("x1^2*x2")]).unwrap();
    assert_eq!(c, p("x1*x2"));
    assert_eq!(prim, vec![p("1"), p("x1")]);
    let (c, prim) = content_primitive(&[p("2*x1"), p("4*x1")]).unwrap();
    assert_eq!(c, p("2*x1"));
    assert_eq!(prim, vec![p("1"), p("2")]);
}

#[test]
fn rational_function_normal_form() {
    let r = RatFunc::new(p("x1^2 - x2^2"), p("2*x1 - 2*x2")).unwrap();
    assert_eq!(r.den(), &p("1"));
    assert_eq!(r.num(), &p("1/2*x1 + 1/2*x2"));
    assert!(RatFunc::new(p("x1"), MultiPoly::zero(2)).is_err());
}
