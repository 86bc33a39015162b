mod common;

use common::*;
use dfinite::algebra::MultiPoly;
use dfinite::desing::{
    classify_origin, desingularize, desingularize_random, truncated_solutions_apparent, truncated_solutions_apparent_with_cap, wronskian_matrix,
    Verdict,
};
use dfinite::error::Error;
use dfinite::ideals::is_left_multiple;
use dfinite::indicial::{candidate_exponents, eliminate_univariate, indicial_polynomial, nonneg_integer_roots};
use dfinite::series::TruncatedSeries;
use dfinite::syntax::{parse_operator, parse_poly};

fn y(s: &str) -> MultiPoly {
    parse_poly(&s.replace('y', "x"), 2).unwrap()
}

#[test]
fn ordinary_points() {
    let g = gb(OP);
    for p in [[0, 0], [1, -4], [9, 2]] {
        assert!(g.is_ordinary_at(&[q(p[0]), q(p[1])]).unwrap());
    }
    assert!(!gb(NOP).is_ordinary_at_origin());
    let m = desingularize(&gb(APPSIN1)).unwrap().basis;
    assert!(m.is_ordinary_at_origin());
}

#[test]
fn indicial_polynomials() {
    let p = |s| indicial_polynomial(&parse_operator(s, 2).unwrap()).unwrap();
    assert_eq!(p("x1*x2*d2 - x1*x2*d1 + x2 - x1").poly(), &y("y2 - 1"));
    assert_eq!(p("d2^2 - 2*d2 + 1").poly(), &y("y2*(y2 - 1)"));
    assert!(p("0").is_zero());
}

#[test]
fn univariate_eliminants() {
    let g = gb(APPSIN1);
    let q2 = eliminate_univariate(&g, 1).unwrap();
    assert_eq!(q2, parse_operator("d2^2 - 2*d2 + 1", 2).unwrap());
    assert_eq!(eliminate_univariate(&g, 0).unwrap(), parse_operator("d1^2 - d1", 2).unwrap());
    assert!(g.contains(&q2).unwrap());
}

#[test]
fn integer_roots() {
    assert_eq!(nonneg_integer_roots(&y("(y1 - 1)*(y1 - 2)")).unwrap(), vec![1, 2]);
    assert_eq!(nonneg_integer_roots(&y("y2*(y2 - 1)")).unwrap(), vec![0, 1]);
}

#[test]
fn candidate_sets() {
    assert_eq!(candidate_exponents(&gb(APPSIN1)).unwrap().exponents, vec![e([0, 0]), e([0, 1])]);
    assert_eq!(candidate_exponents(&gb(NOT_APPARENT)).unwrap().exponents, vec![e([0, 0]), e([1, 1])]);
    assert_eq!(
        candidate_exponents(&gb(APPARENT3)).unwrap().exponents,
        vec![e([0, 0]), e([1, 0]), e([1, 1])]
    );
}

#[test]
fn deterministic_desingularization() {
    let g = gb(APPSIN1);
    let m = desingularize(&g).unwrap();
    assert_eq!(m.basis.rank().unwrap(), 3);
    assert!(m.basis.head_coeff_set()[0].is_associate(&parse_poly("1 - x1 - x1*x2", 2).unwrap()));
    let m = desingularize(&gb(APPSIN2)).unwrap();
    assert_eq!(m.basis.elements(), &ops(&["d1^3", "d1^2*d2", "d1*d2^2", "d2^3"])[..]);
    let g = gb(APPARENT3);
    let m = desingularize(&g).unwrap().basis;
    assert!(is_left_multiple(&m, &g).unwrap() && m.is_ordinary_at_origin());
    assert!(matches!(desingularize(&gb(NOT_APPARENT)), Err(Error::NotApparent)));
}

#[test]
fn verdicts() {
    assert_eq!(classify_origin(&gb(OP)).unwrap().verdict, Verdict::Ordinary);
    assert_eq!(classify_origin(&gb(APPARENT3)).unwrap().verdict, Verdict::Apparent);
    assert_eq!(classify_origin(&gb(NOT_APPARENT)).unwrap().verdict, Verdict::NotApparent);
    for gens in [OP, NOP, APPSIN1, APPSIN2] {
        let g = gb(gens);
        let c = classify_origin(&g).unwrap();
        assert_eq!(c.verdict == Verdict::Ordinary, g.is_ordinary_at_origin());
        assert_eq!(c.witness.is_some(), c.verdict == Verdict::Apparent);
    }
}

#[test]
fn random_desingularization() {
    let g = gb(APPSIN1);
    let r = desingularize_random(&g, Some(&[vec![q(19), q(23)]]), 0).unwrap();
    let m = r.result.unwrap().basis;
    assert!(m.head_coeff_set()[0].is_associate(&parse_poly("9 + 11*x2", 2).unwrap()));
    assert_eq!(r.points[0], vec![vec![q(19), q(23)]]);

    let g = gb(APPSIN2);
    let pts: Vec<Vec<_>> = [[1, 2], [3, 5], [7, 11], [13, 17]].iter().map(|p| vec![q(p[0]), q(p[1])]).collect();
    let m = desingularize_random(&g, Some(&pts), 0).unwrap().result.unwrap().basis;
    assert!(is_left_multiple(&m, &g).unwrap() && m.is_ordinary_at_origin());

    assert!(desingularize_random(&g, Some(&[vec![q(1)]]), 0).is_err());
}

#[test]
fn wronskian_of_exponential_solutions() {
    let f1 = TruncatedSeries::from_poly(&exp_linear(1, 1, 2), 2);
    let f2 = TruncatedSeries::from_poly(&x2_exp_x2(2), 2);
    let w = wronskian_matrix(&[f1.clone(), f2.clone()], &[e([0, 0]), e([0, 1])]).unwrap();
    assert_eq!(w.entries, vec![vec![q(1), q(0)], vec![q(1), q(1)]]);
    assert_eq!(w.determinant(), q(1));
    assert!(wronskian_matrix(&[f1, f2], &[e([0, 0])]).is_err());
}

#[test]
fn apparent_series_of_first_fixture() {
    let a = truncated_solutions_apparent(&gb(APPSIN1), 2).unwrap();
    assert_eq!(a.kernel, vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]]);
    assert_eq!(dfinite::linalg::rank(&a.matrix), 1);
    let expected = [&exp_linear(1, 1, 2) - &x2_exp_x2(2), x2_exp_x2(2)];
    assert!(same_span(&a.polys, &expected, 2));
}

#[test]
fn apparent_series_satisfy_the_system() {
    for (gens, m) in [(APPSIN1, 4), (APPSIN2, 3), (APPARENT3, 3)] {
        let g = gb(gens);
        let a = truncated_solutions_apparent(&g, m).unwrap();
        assert_eq!(a.kernel.len(), g.rank().unwrap());
        for p in &a.polys {
            let f = TruncatedSeries::from_poly(p, m);
            for op in g.elements() {
                let r = op.apply(&f).unwrap();
                assert!(r.vanishes_through(m.saturating_sub(op.order())), "{op}");
            }
        }
    }
    assert!(matches!(truncated_solutions_apparent(&gb(NOT_APPARENT), 2), Err(Error::NotApparent)));
}

#[test]
fn loop_cap_is_reported() {
    let g = gb(APPSIN1);
    assert_eq!(truncated_solutions_apparent_with_cap(&g, 1, Some(1)).unwrap().s, 1);
    let e = truncated_solutions_apparent_with_cap(&g, 1, Some(0)).unwrap_err();
    assert_eq!(e, Error::ConvergenceCap { cap: 0 });
    assert_eq!(e.exit_code(), 5);
}
