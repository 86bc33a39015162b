//! Front end shared by the command-line tool and the browser demo: system
//! files, command dispatch and report rendering.
//!
//! A system file starts with `n=<int>`, followed by one operator per line.
//! `;` also separates statements and `#` starts a comment. Optional
//! directives `point=`, `order=`, `seed=` and `points=` set defaults that
//! command-line flags override; `points=` occupies a line of its own.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{MultiPoly, Q};
use crate::desing::{
    classify_origin, desingularize, desingularize_random, truncated_solutions_apparent, Desingularization, Verdict,
};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::indicial::{candidate_exponents, eliminate_univariate, indicial_polynomial, CandidateSet};
use crate::ore::OreOperator;
use crate::series::{solutions_at_ordinary, TruncatedSeries};
use crate::syntax::{format_series, parse_operator_at, parse_rationals};

/// Truncation order used by `series` when none is given.
pub const DEFAULT_ORDER: u32 = 3;

/// A parsed system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub nvars: usize,
    pub generators: Vec<OreOperator>,
    pub point: Option<Vec<Q>>,
    pub order: Option<u32>,
    pub seed: Option<u64>,
    pub points: Option<Vec<Vec<Q>>>,
}

impl fmt::Display for SystemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.nvars)?;
        if let Some(p) = &self.point {
            writeln!(f, "point={}", join(p, ","))?;
        }
        if let Some(m) = self.order {
            writeln!(f, "order={m}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed={s}")?;
        }
        if let Some(ps) = &self.points {
            writeln!(f, "points={}", format_points(ps))?;
        }
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `;`-separated statements with their 1-based columns,
/// dropping comments and blank statements. A `points=` directive, whose value
/// uses `;` itself, extends to the end of the line.
fn statements(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let trimmed = code.trim_start();
    if trimmed.strip_prefix("points").is_some_and(|r| r.trim_start().starts_with('=')) {
        out.push((code.len() - trimmed.len() + 1, code.trim()));
        return out;
    }
    let mut offset = 0;
    for part in code.split(';') {
        let lead = part.len() - part.trim_start().len();
        let text = part.trim();
        if !text.is_empty() {
            out.push((offset + lead + 1, text));
        }
        offset += part.len() + 1;
    }
    out
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut nvars: Option<usize> = None;
    let mut sys = SystemFile {
        nvars: 0,
        generators: Vec::new(),
        point: None,
        order: None,
        seed: None,
        points: None,
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        for (col, stmt) in statements(line) {
            let Some((key, value)) = stmt.split_once('=') else {
                let n = nvars.ok_or_else(|| parse_err(lineno, col, "expected 'n=<int>' first"))?;
                let op = parse_operator_at(stmt, n, lineno, col)?;
                if op.is_zero() {
                    return Err(parse_err(lineno, col, "generator is zero"));
                }
                sys.generators.push(op);
                continue;
            };
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| parse_err(lineno, col, format!("invalid {what} '{value}'"));
            match (key, nvars) {
                ("n", None) => {
                    let n: usize = value.parse().map_err(|_| bad("variable count"))?;
                    if n == 0 {
                        return Err(bad("variable count"));
                    }
                    nvars = Some(n);
                    sys.nvars = n;
                }
                ("n", Some(_)) => return Err(parse_err(lineno, col, "variable count given twice")),
                (_, None) => return Err(parse_err(lineno, col, "expected 'n=<int>' first")),
                ("point", Some(n)) => {
                    let p = parse_rationals(value).map_err(|_| bad("point"))?;
                    if p.len() != n {
                        return Err(bad("point"));
                    }
                    sys.point = Some(p);
                }
                ("order", Some(_)) => sys.order = Some(value.parse().map_err(|_| bad("order"))?),
                ("seed", Some(_)) => sys.seed = Some(value.parse().map_err(|_| bad("seed"))?),
                ("points", Some(n)) => {
                    let ps = parse_points(value).map_err(|_| bad("points"))?;
                    if ps.iter().any(|p| p.len() != n) {
                        return Err(bad("points"));
                    }
                    sys.points = Some(ps);
                }
                (other, Some(_)) => return Err(parse_err(lineno, col, format!("unknown directive '{other}'"))),
            }
        }
    }
    if nvars.is_none() {
        return Err(parse_err(1, 1, "expected 'n=<int>' first"));
    }
    if sys.generators.is_empty() {
        return Err(Error::Structural("system has no generators".into()));
    }
    Ok(sys)
}

/// Parses `c11,c21;c12,c22;...`, one point per `;`.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Q>>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rationals)
        .collect()
}

fn format_points(ps: &[Vec<Q>]) -> String {
    ps.iter().map(|p| join(p, ",")).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Classify,
    Desingularize,
    DesingularizeRandom,
    Indicial,
    Series,
    SeriesApparent,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Gb,
        Command::Classify,
        Command::Desingularize,
        Command::DesingularizeRandom,
        Command::Indicial,
        Command::Series,
        Command::SeriesApparent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Classify => "classify",
            Command::Desingularize => "desingularize",
            Command::DesingularizeRandom => "desingularize-random",
            Command::Indicial => "indicial",
            Command::Series => "series",
            Command::SeriesApparent => "series-apparent",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Structural(format!("unknown command '{s}'")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Settings from the command line; each one overrides the system file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub point: Option<Vec<Q>>,
    pub order: Option<u32>,
    pub seed: Option<u64>,
    pub points: Option<Vec<Vec<Q>>>,
}

/// A rendered report in both output formats.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).expect("values serialize"))
        } else {
            self.text.clone()
        }
    }
}

/// Error report in the requested format.
pub fn render_error(e: &Error, json: bool) -> String {
    if json {
        let v = json!({
            "error": e.kind(),
            "message": e.to_string(),
            "exit_code": e.exit_code(),
        });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
    } else {
        format!("error ({}): {e}\n", e.kind())
    }
}

struct Context {
    point: Vec<Q>,
    order: Option<u32>,
    seed: u64,
    points: Option<Vec<Vec<Q>>>,
    /// basis of the system translated so that the point sits at the origin
    g: GroebnerBasis,
}

pub fn run(command: Command, sys: &SystemFile, opts: &RunOptions) -> Result<Report> {
    let n = sys.nvars;
    let point = opts
        .point
        .clone()
        .or_else(|| sys.point.clone())
        .unwrap_or_else(|| vec![Q::zero(); n]);
    if point.len() != n {
        return Err(Error::Structural(format!(
            "point has {} coordinates, expected {n}",
            point.len()
        )));
    }
    let g = buchberger(&sys.generators)?;
    let g = if point.iter().all(Zero::is_zero) {
        g
    } else {
        g.translate(&point)?
    };
    let ctx = Context {
        point,
        order: opts.order.or(sys.order),
        seed: opts.seed.or(sys.seed).unwrap_or(0),
        points: opts.points.clone().or_else(|| sys.points.clone()),
        g,
    };
    let mut out = Out::new(command, &ctx.point);
    match command {
        Command::Gb => gb_report(&ctx, &mut out),
        Command::Classify => classify_report(&ctx, &mut out)?,
        Command::Desingularize => {
            let w = desingularize(&ctx.g)?;
            witness_report(&w, "", &mut out)?;
        }
        Command::DesingularizeRandom => random_report(&ctx, &mut out)?,
        Command::Indicial => indicial_report(&ctx, &mut out)?,
        Command::Series => series_report(&ctx, &mut out)?,
        Command::SeriesApparent => apparent_report(&ctx, &mut out)?,
    }
    Ok(out.finish())
}

/// Accumulates the text lines and JSON fields of a report.
struct Out {
    text: String,
    json: serde_json::Map<String, Value>,
}

impl Out {
    fn new(command: Command, point: &[Q]) -> Self {
        let mut out = Out {
            text: String::new(),
            json: serde_json::Map::new(),
        };
        out.field("command", command.name(), json!(command.name()));
        let p = join(point, ", ");
        out.field("point", &format!("({p})"), json!(strings(point)));
        out
    }

    fn line(&mut self, key: &str, text: &str) {
        writeln!(self.text, "{key}: {text}").expect("writing to a string");
    }

    fn field(&mut self, key: &str, text: &str, value: Value) {
        self.line(key, text);
        self.json.insert(key.replace(' ', "_"), value);
    }

    fn block(&mut self, key: &str, lines: &[String]) {
        writeln!(self.text, "{key}:").expect("writing to a string");
        for l in lines {
            writeln!(self.text, "  {l}").expect("writing to a string");
        }
        self.json.insert(key.replace(' ', "_"), json!(lines));
    }

    fn finish(self) -> Report {
        Report {
            text: self.text,
            json: Value::Object(self.json),
        }
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn strings<T: fmt::Display>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn set_text<T: fmt::Display>(items: &[T]) -> String {
    format!("{{{}}}", join(items, ", "))
}

fn operators(g: &GroebnerBasis) -> Vec<String> {
    strings(g.elements())
}

fn head_coeffs(out: &mut Out, key: &str, g: &GroebnerBasis) {
    let mut hc = strings(&g.head_coeff_set());
    hc.sort();
    out.field(key, &set_text(&hc), json!(hc));
}

fn candidates(out: &mut Out, s: &CandidateSet) {
    out.field("candidate exponents", &set_text(&s.exponents), json!(strings(&s.exponents)));
}

fn gb_report(ctx: &Context, out: &mut Out) {
    let g = &ctx.g;
    out.block("basis", &operators(g));
    let heads = g.head_exponents();
    out.field("head terms", &set_text(&heads), json!(strings(&heads)));
    head_coeffs(out, "head coefficients", g);
    match g.parametric_exponents() {
        Ok(pe) => {
            out.field("rank", &pe.len().to_string(), json!(pe.len()));
            out.field("parametric exponents", &set_text(pe), json!(strings(pe)));
        }
        Err(_) => out.field("rank", "infinite", Value::Null),
    }
}

fn classify_report(ctx: &Context, out: &mut Out) -> Result<()> {
    let c = classify_origin(&ctx.g)?;
    out.field("rank", &c.rank.to_string(), json!(c.rank));
    let status = if c.verdict == Verdict::Ordinary { "ordinary" } else { "singular" };
    out.field("status", status, json!(status));
    head_coeffs(out, "head coefficients", &ctx.g);
    out.field("verdict", &c.verdict.to_string(), json!(c.verdict));
    if let Some(s) = &c.candidates {
        candidates(out, s);
    }
    if let Some(w) = &c.witness {
        witness_report(w, "witness ", out)?;
    }
    Ok(())
}

fn witness_report(w: &Desingularization, prefix: &str, out: &mut Out) -> Result<()> {
    if prefix.is_empty() {
        candidates(out, &w.candidates);
    }
    out.field(&format!("{prefix}subset"), &set_text(&w.subset), json!(strings(&w.subset)));
    out.field(&format!("{prefix}m"), &w.m.to_string(), json!(w.m));
    out.field(&format!("{prefix}trials"), &w.trials.to_string(), json!(w.trials));
    let rank = w.basis.rank()?;
    out.field(&format!("{prefix}rank"), &rank.to_string(), json!(rank));
    out.block(&format!("{prefix}basis"), &operators(&w.basis));
    head_coeffs(out, &format!("{prefix}head coefficients"), &w.basis);
    Ok(())
}

fn random_report(ctx: &Context, out: &mut Out) -> Result<()> {
    let r = desingularize_random(&ctx.g, ctx.points.as_deref(), ctx.seed)?;
    out.field("seed", &r.seed.to_string(), json!(r.seed));
    candidates(out, &r.candidates);
    let trials: Vec<String> = r
        .points
        .iter()
        .map(|pts| pts.iter().map(|p| format!("({})", join(p, ", "))).collect::<Vec<_>>().join(" "))
        .collect();
    out.block("trial points", &trials);
    match &r.result {
        Some(w) => {
            out.field("outcome", "success", json!("success"));
            out.field("subset", &set_text(&w.subset), json!(strings(&w.subset)));
            out.field("m", &w.m.to_string(), json!(w.m));
            out.field("trials", &w.trials.to_string(), json!(w.trials));
            let rank = w.basis.rank()?;
            out.field("rank", &rank.to_string(), json!(rank));
            out.block("basis", &operators(&w.basis));
            head_coeffs(out, "head coefficients", &w.basis);
        }
        None => out.field("outcome", "failure", json!("failure")),
    }
    Ok(())
}

fn indicial_report(ctx: &Context, out: &mut Out) -> Result<()> {
    let g = &ctx.g;
    let mut lines = Vec::new();
    for (k, e) in g.elements().iter().enumerate() {
        lines.push(format!("ind(g{}) = {}    g{} = {e}", k + 1, indicial_polynomial(e)?, k + 1));
    }
    out.block("generators", &lines);
    let s = candidate_exponents(g)?;
    let mut elim = Vec::new();
    for i in 0..g.nvars() {
        let q = eliminate_univariate(g, i)?;
        elim.push(format!(
            "ind(Q{}) = {}    roots {}    Q{} = {q}",
            i + 1,
            s.generators_used[i],
            set_text(&s.root_sets[i]),
            i + 1
        ));
    }
    out.block("eliminants", &elim);
    candidates(out, &s);
    Ok(())
}

fn series_report(ctx: &Context, out: &mut Out) -> Result<()> {
    let m = ctx.order.unwrap_or(DEFAULT_ORDER);
    let b = solutions_at_ordinary(&ctx.g, m)?;
    out.field("order", &m.to_string(), json!(m));
    local_variables(ctx, out);
    out.field("parametric exponents", &set_text(&b.parametric_tags), json!(strings(&b.parametric_tags)));
    let lines: Vec<String> = b
        .parametric_tags
        .iter()
        .zip(&b.basis)
        .map(|(u, f)| format!("f{u} = {} + O(x^{})", format_series(f), m + 1))
        .collect();
    out.block("series", &lines);
    Ok(())
}

fn apparent_report(ctx: &Context, out: &mut Out) -> Result<()> {
    let m = ctx.order.unwrap_or(DEFAULT_ORDER);
    let a = truncated_solutions_apparent(&ctx.g, m)?;
    out.field("order", &m.to_string(), json!(m));
    local_variables(ctx, out);
    out.field("subset", &set_text(&a.witness.subset), json!(strings(&a.witness.subset)));
    out.field("s", &a.s.to_string(), json!(a.s));
    let lines: Vec<String> = a
        .polys
        .iter()
        .enumerate()
        .map(|(j, p)| format!("p{} = {} + O(x^{})", j + 1, poly_ascending(p), m + 1))
        .collect();
    out.block("series", &lines);
    Ok(())
}

/// Series at a point other than the origin are in powers of `x - point`.
fn local_variables(ctx: &Context, out: &mut Out) {
    if ctx.point.iter().any(|c| !c.is_zero()) {
        let text = "xi stands for xi - point_i";
        out.field("variables", text, json!(text));
    }
}

fn poly_ascending(p: &MultiPoly) -> String {
    format_series(&TruncatedSeries::from_poly(p, p.total_degree().unwrap_or(0)))
}
