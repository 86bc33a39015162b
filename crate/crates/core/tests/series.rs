mod common;

use common::*;
use dfinite::desing::desingularize;
use dfinite::series::{initial_exponent, solutions_at_ordinary, TruncatedSeries};
use dfinite::syntax::parse_poly;

#[test]
fn scaled_coefficients() {
    // c_u is the u-th derivative at the origin: x1 has c_(1,0) = 1
    let f = TruncatedSeries::from_poly(&parse_poly("5*x1 + 3*x1^2*x2", 2).unwrap(), 4);
    assert_eq!(f.derivative_pow(&e([1, 0])).constant_term(), q(5));
    assert_eq!(f.scaled_coeff(&e([2, 1])), q(6));
}

#[test]
fn ordinary_basis_is_cos_and_sin() {
    let b = solutions_at_ordinary(&gb(OP), 3).unwrap();
    assert_eq!(b.parametric_tags, vec![e([0, 0]), e([1, 0])]);
    let (sin, cos) = sin_cos_sum(3);
    assert_eq!(b.basis[0].to_poly(), cos);
    assert_eq!(b.basis[1].to_poly(), sin);
}

#[test]
fn desingularized_basis_matches_known_solutions() {
    let m = desingularize(&gb(APPSIN1)).unwrap().basis;
    let b = solutions_at_ordinary(&m, 4).unwrap();
    assert_eq!(b.parametric_tags, vec![e([0, 0]), e([1, 0]), e([0, 1])]);
    let x1 = parse_poly("x1", 2).unwrap();
    let h1 = &(&exp_linear(1, 1, 4) - &x1) - &x2_exp_x2(4);
    let expected = [h1, x1, x2_exp_x2(4)];
    for (f, h) in b.basis.iter().zip(&expected) {
        assert_eq!(&f.to_poly(), h);
    }
}

#[test]
fn initial_exponents() {
    let f = TruncatedSeries::from_poly(&parse_poly("x1*x2 + x1^2*x2", 2).unwrap(), 4);
    assert_eq!(initial_exponent(&f).unwrap(), e([1, 1]));
    let (sin, _) = sin_cos_sum(4);
    let f = TruncatedSeries::from_poly(&(&parse_poly("x1*x2", 2).unwrap() * &sin).truncate(4), 4);
    assert_eq!(initial_exponent(&f).unwrap(), e([2, 1]));
    assert!(initial_exponent(&TruncatedSeries::zero(2, 3)).is_err());
}

#[test]
fn ordinary_series_require_an_ordinary_origin() {
    assert!(solutions_at_ordinary(&gb(NOP), 2).is_err());
    let b = solutions_at_ordinary(&gb(NOP).translate(&[q(1), q(1)]).unwrap(), 2).unwrap();
    assert_eq!(b.basis.len(), 2);
    for f in &b.basis {
        for g in gb(NOP).translate(&[q(1), q(1)]).unwrap().elements() {
            assert!(g.apply(f).unwrap().is_zero());
        }
    }
}
