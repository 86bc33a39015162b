//! Browser bindings. Every export takes the system file text and returns a
//! JSON report, or a JSON object with an `error` field.

use dfinite::cli::{parse_points, parse_system, render_error, run, Command, RunOptions};
use dfinite::error::Result;
use dfinite::syntax::parse_rationals;
use wasm_bindgen::prelude::*;

fn optional(text: &str) -> Option<&str> {
    let t = text.trim();
    (!t.is_empty()).then_some(t)
}

fn report(command: Command, system: &str, opts: Result<RunOptions>) -> String {
    let out = opts.and_then(|opts| {
        let sys = parse_system(system)?;
        run(command, &sys, &opts)
    });
    match out {
        Ok(r) => r.render(true),
        Err(e) => render_error(&e, true),
    }
}

fn at_point(point: &str) -> Result<RunOptions> {
    Ok(RunOptions {
        point: optional(point).map(parse_rationals).transpose()?,
        ..Default::default()
    })
}

/// Classifies `point` (comma-separated rationals, empty for the origin).
#[wasm_bindgen]
pub fn classify(system: &str, point: &str) -> String {
    report(Command::Classify, system, at_point(point))
}

/// Truncated series at `point`: `series` at an ordinary point, otherwise the
/// apparent-singularity method.
#[wasm_bindgen]
pub fn series(system: &str, point: &str, order: u32) -> String {
    let opts = at_point(point).map(|o| RunOptions {
        order: Some(order),
        ..o
    });
    let ordinary = report(Command::Series, system, opts.clone());
    if ordinary.contains("\"ordinary_point_required\"") {
        report(Command::SeriesApparent, system, opts)
    } else {
        ordinary
    }
}

/// Left multiple with an ordinary `point`: random exponential points when
/// `random` is set (explicit `points` like `19,23;1,2` come first), otherwise
/// the deterministic method.
#[wasm_bindgen]
pub fn desingularize(system: &str, point: &str, random: bool, seed: u32, points: &str) -> String {
    if !random {
        return report(Command::Desingularize, system, at_point(point));
    }
    let opts = at_point(point).and_then(|o| {
        Ok(RunOptions {
            seed: Some(seed.into()),
            points: optional(points).map(parse_points).transpose()?,
            ..o
        })
    });
    report(Command::DesingularizeRandom, system, opts)
}
