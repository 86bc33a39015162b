mod common;

use common::*;
use dfinite::cli::{parse_points, parse_system, render_error, run, Command, RunOptions};
use dfinite::error::Error;
use proptest::prelude::*;

fn system(gens: &[&str]) -> String {
    format!("n=2\n{}\n", gens.join("\n"))
}

fn report(command: &str, text: &str, opts: &RunOptions) -> String {
    let sys = parse_system(text).unwrap();
    run(command.parse().unwrap(), &sys, opts).unwrap().render(false)
}

#[test]
fn one_line_systems() {
    let sys = parse_system("n=2; x2*d2 + d1 - x2 - 1; d1^2 - d1").unwrap();
    assert_eq!(sys.nvars, 2);
    assert_eq!(sys.generators, ops(APPSIN1));
    let sys = parse_system("n=2; d2 - d1; d1^2 + 1").unwrap();
    assert_eq!(sys.generators, ops(OP));
}

#[test]
fn comments_and_directives() {
    let text = "n=2  # two variables\n# no operator here\npoint=1/2,-3\norder=4\nseed=9\npoints=19,23;1,2\nd2 - d1\nd1^2 + 1 # tail\n";
    let sys = parse_system(text).unwrap();
    assert_eq!(sys.generators.len(), 2);
    assert_eq!(sys.order, Some(4));
    assert_eq!(sys.seed, Some(9));
    assert_eq!(sys.points, Some(parse_points("19,23;1,2").unwrap()));
    assert_eq!(parse_system(&sys.to_string()).unwrap(), sys);
}

#[test]
fn parse_errors_carry_positions() {
    assert!(matches!(parse_system("n=2"), Err(Error::Structural(_))));
    assert!(matches!(parse_system("d1"), Err(Error::Parse { line: 1, .. })));
    match parse_system("n=2\nd1 + \nd2") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    match parse_system("n=2\nd1; x3*d2") {
        Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_system("n=2\nd1 - d1"), Err(Error::Parse { .. })));
    assert!(matches!(parse_system("n=2\npoint=1\nd1"), Err(Error::Parse { .. })));
    assert!(matches!(parse_system("n=2\ncolor=red\nd1"), Err(Error::Parse { .. })));
}

#[test]
fn commands_round_trip_through_names() {
    for c in Command::ALL {
        assert_eq!(c.name().parse::<Command>().unwrap(), c);
    }
    assert!("solve".parse::<Command>().is_err());
}

#[test]
fn classify_singular_origin() {
    let out = report("classify", &system(NOP), &RunOptions::default());
    assert!(out.contains("status: singular\n"), "{out}");
    assert!(out.contains("head coefficients: {x1, x2}\n"), "{out}");
}

#[test]
fn classify_apparent_with_witness() {
    let out = report("classify", &system(APPARENT3), &RunOptions::default());
    assert!(out.contains("verdict: apparent\n"), "{out}");
    assert!(out.contains("witness subset: {(0,0), (1,0), (1,1)}\n"), "{out}");
    assert!(out.contains("witness rank: 6\n"), "{out}");
}

#[test]
fn classify_away_from_the_origin() {
    // singular locus of this system is x1*x2 = 0
    let on = RunOptions {
        point: Some(vec![q(0), q(5)]),
        ..Default::default()
    };
    let off = RunOptions {
        point: Some(vec![q(2), q(5)]),
        ..Default::default()
    };
    assert!(report("classify", &system(NOP), &on).contains("status: singular"));
    assert!(report("classify", &system(NOP), &off).contains("status: ordinary"));
}

#[test]
fn series_at_ordinary_point() {
    let opts = RunOptions {
        order: Some(2),
        ..Default::default()
    };
    let out = report("series", &system(OP), &opts);
    assert!(out.contains("f(0,0) = 1 - 1/2*x1^2 - x1*x2 - 1/2*x2^2 + O(x^3)"), "{out}");
    assert!(out.contains("f(1,0) = x1 + x2 + O(x^3)"), "{out}");
}

#[test]
fn apparent_series() {
    let opts = RunOptions {
        order: Some(2),
        ..Default::default()
    };
    let out = report("series-apparent", &system(APPSIN1), &opts);
    assert!(out.contains("p1 = 1 + x1 + 1/2*x1^2 + x1*x2 - 1/2*x2^2 + O(x^3)"), "{out}");
    assert!(out.contains("p2 = x2 + x2^2 + O(x^3)"), "{out}");
}

#[test]
fn random_desingularization_reports_points() {
    let opts = RunOptions {
        points: Some(vec![vec![q(19), q(23)]]),
        seed: Some(3),
        ..Default::default()
    };
    let out = report("desingularize-random", &system(APPSIN1), &opts);
    assert!(out.contains("seed: 3\n"), "{out}");
    assert!(out.contains("(19, 23)"), "{out}");
    assert!(out.contains("head coefficients: {11*x2 + 9}"), "{out}");
}

#[test]
fn errors_map_to_distinct_statuses() {
    let sys = parse_system(&system(NOP)).unwrap();
    let e = run(Command::Series, &sys, &RunOptions::default()).unwrap_err();
    assert_eq!(e.exit_code(), 4);
    let json: serde_json::Value = serde_json::from_str(&render_error(&e, true)).unwrap();
    assert_eq!(json["error"], "ordinary_point_required");
    let e = run(Command::Desingularize, &parse_system(&system(NOT_APPARENT)).unwrap(), &RunOptions::default())
        .unwrap_err();
    assert_eq!(e.exit_code(), 6);
    let e = run(Command::Classify, &parse_system("n=2\nd1").unwrap(), &RunOptions::default()).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    let gb = run(Command::Gb, &parse_system("n=2\nd1").unwrap(), &RunOptions::default()).unwrap();
    assert!(gb.text.contains("rank: infinite"));
}

#[test]
fn json_reports() {
    let sys = parse_system(&system(APPSIN1)).unwrap();
    let r = run(Command::Classify, &sys, &RunOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.render(true)).unwrap();
    assert_eq!(v["verdict"], "apparent");
    assert_eq!(v["witness_rank"], 3);
    assert_eq!(v["candidate_exponents"], serde_json::json!(["(0,0)", "(0,1)"]));
}

#[test]
fn reports_are_deterministic() {
    let sys = parse_system(&system(APPSIN2)).unwrap();
    let opts = RunOptions {
        seed: Some(11),
        ..Default::default()
    };
    let a = run(Command::DesingularizeRandom, &sys, &opts).unwrap().render(true);
    let b = run(Command::DesingularizeRandom, &sys, &opts).unwrap().render(true);
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn printed_systems_reparse(seed in 0u64..1000, order in 0u32..9, k in 0usize..3) {
        let mut sys = parse_system(&system([OP, APPSIN1, INDPOL][k])).unwrap();
        sys.seed = Some(seed);
        sys.order = Some(order);
        sys.points = Some(vec![vec![q(seed as i64), q(-3)]]);
        prop_assert_eq!(parse_system(&sys.to_string()).unwrap(), sys);
    }
}
