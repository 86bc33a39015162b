//! Text syntax for polynomials, operators and truncated series.
//!
//! Expressions use integers, the variables `x1..xn` and `d1..dn`, the
//! operators `+ - * / ^` and parentheses. Products are operator products,
//! so `d1*x1` denotes `x1*d1 + 1`. Division is only defined between
//! `d`-free operands. Printing is canonical and re-parses to the same value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{Exponent, MultiPoly, Q};
use crate::error::{Error, Result};
use crate::ore::OreOperator;
use crate::series::TruncatedSeries;

/// Parses an operator in `n` variables.
pub fn parse_operator(text: &str, nvars: usize) -> Result<OreOperator> {
    parse_operator_at(text, nvars, 1, 1)
}

/// Parses a polynomial in `x1..xn`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly> {
    let op = parse_operator(text, nvars)?;
    if !op.is_d_free() {
        return Err(parse_err(1, 1, "expected a polynomial, found a derivation"));
    }
    match op.coeff(&Exponent::zero(nvars)).as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(parse_err(1, 1, "expected a polynomial, found a rational function")),
    }
}

/// Parses an operator whose first character sits at `line:column`.
pub(crate) fn parse_operator_at(text: &str, nvars: usize, line: usize, column: usize) -> Result<OreOperator> {
    let tokens = tokenize(text, line, column)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        nvars,
        end: (line, column + text.chars().count()),
    };
    let op = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(parse_err(t.line, t.column, "unexpected trailing input"));
    }
    Ok(op)
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X(usize),
    D(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = column + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line, column: col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: BigInt = s.parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                line,
                column: col,
            });
            continue;
        }
        if c == 'x' || c == 'd' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(parse_err(line, col, &format!("expected an index after '{c}'")));
            }
            let s: String = chars[start..j].iter().collect();
            let k: usize = s
                .parse()
                .map_err(|_| parse_err(line, col, "variable index out of range"))?;
            if k == 0 {
                return Err(parse_err(line, col, "variable indices start at 1"));
            }
            let tok = if c == 'x' { Tok::X(k) } else { Tok::D(k) };
            out.push(Token { tok, line, column: col });
            i = j;
            continue;
        }
        return Err(parse_err(line, col, &format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<OreOperator> {
        let mut acc = if self.eat(&Tok::Minus) {
            -&self.term()?
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OreOperator> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.peek().is_some_and(|t| t.tok == Tok::Slash) {
                let (line, column) = self.here();
                self.pos += 1;
                let rhs = self.unary()?;
                acc = divide(&acc, &rhs).map_err(|m| parse_err(line, column, m))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<OreOperator> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<OreOperator> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let (line, column) = self.here();
        let k = match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                u32::try_from(k).map_err(|_| parse_err(line, column, "exponent too large"))?
            }
            _ => return Err(parse_err(line, column, "expected a nonnegative integer exponent")),
        };
        let mut acc = OreOperator::one(self.nvars);
        for _ in 0..k {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<OreOperator> {
        let (line, column) = self.here();
        let Some(t) = self.peek().cloned() else {
            return Err(parse_err(line, column, "unexpected end of input"));
        };
        self.pos += 1;
        let n = self.nvars;
        let check = |k: usize| {
            if k > n {
                Err(parse_err(line, column, &format!("variable index {k} exceeds n = {n}")))
            } else {
                Ok(k - 1)
            }
        };
        match t.tok {
            Tok::Int(v) => Ok(OreOperator::from_poly(MultiPoly::constant(n, Q::from_integer(v)))),
            Tok::X(k) => Ok(OreOperator::x(n, check(k)?)),
            Tok::D(k) => Ok(OreOperator::d(n, check(k)?)),
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    let (l, c) = self.here();
                    return Err(parse_err(l, c, "expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(parse_err(line, column, "expected a number, variable or '('")),
        }
    }
}

fn divide(a: &OreOperator, b: &OreOperator) -> std::result::Result<OreOperator, &'static str> {
    if !b.is_d_free() {
        return Err("division by an expression containing a derivation");
    }
    if b.is_zero() {
        return Err("division by zero");
    }
    let c = b.coeff(&Exponent::zero(b.nvars()));
    let inv = c.inv().map_err(|_| "division by zero")?;
    if a.is_d_free() {
        return Ok(OreOperator::from_coeff(&a.coeff(&Exponent::zero(a.nvars())) * &inv));
    }
    if c.is_constant() {
        return Ok(a.left_mul_coeff(&inv));
    }
    Err("only d-free expressions can be divided by a non-constant")
}

/// One printed term: its coefficient and the monomial text (empty for 1).
fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Q, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    Ok(())
}

/// `x1^2*x2`-style text for a monomial; empty for the unit monomial.
pub fn monomial_text(e: &Exponent, var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.as_slice().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("{var}{}", i + 1)),
            _ => parts.push(format!("{var}{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

fn poly_terms(p: &MultiPoly, var: &str, descending: bool) -> Vec<(Q, String)> {
    let mut out: Vec<(Q, String)> = p
        .terms()
        .map(|(e, c)| (c.clone(), monomial_text(e, var)))
        .collect();
    if descending {
        out.reverse();
    }
    out
}

struct PolyIn<'a>(&'a MultiPoly, &'a str, bool);

impl fmt::Display for PolyIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &poly_terms(self.0, self.1, self.2))
    }
}

/// A polynomial printed with variables named `var1..varn`, highest term first.
pub fn format_poly_in(p: &MultiPoly, var: &str) -> String {
    PolyIn(p, var, true).to_string()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyIn(self, "x", true))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (u, c) in self.terms().rev() {
            let d = monomial_text(u, "d");
            if let Some(p) = c.as_poly() {
                let mut terms = poly_terms(p, "x", true);
                for (_, mono) in terms.iter_mut() {
                    *mono = match (mono.is_empty(), d.is_empty()) {
                        (true, _) => d.clone(),
                        (false, true) => mono.clone(),
                        (false, false) => format!("{mono}*{d}"),
                    };
                }
                for t in terms {
                    if !first {
                        write!(f, "{}", if t.0.is_negative() { " - " } else { " + " })?;
                    } else if t.0.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                    write_abs_term(f, &t.0, &t.1)?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({})/({})", c.num(), c.den())?;
                if !d.is_empty() {
                    write!(f, "*{d}")?;
                }
            }
        }
        Ok(())
    }
}

fn write_abs_term(f: &mut fmt::Formatter<'_>, c: &Q, mono: &str) -> fmt::Result {
    let a = c.abs();
    if mono.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}*{mono}")
    }
}

/// Taylor polynomial of a truncated series, lowest degree first.
pub fn format_series(s: &TruncatedSeries) -> String {
    PolyIn(&s.to_poly(), "x", false).to_string()
}

/// Parses a comma-separated list of rationals such as `1,-2/3`.
pub fn parse_rationals(text: &str) -> Result<Vec<Q>> {
    text.split(',')
        .enumerate()
        .map(|(k, s)| {
            let s = s.trim();
            s.parse::<Q>().map_err(|_| Error::Parse {
                line: 1,
                column: k + 1,
                message: format!("'{s}' is not a rational number"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, q_frac};

    #[test]
    fn poly_printing() {
        let p = parse_poly("x1^2*x2 - 3/2*x1", 2).unwrap();
        assert_eq!(p.to_string(), "x1^2*x2 - 3/2*x1");
        assert_eq!(parse_poly("-1 + x2", 2).unwrap().to_string(), "x2 - 1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(parse_poly("(x1 + 1)^2", 1).unwrap().to_string(), "x1^2 + 2*x1 + 1");
    }

    #[test]
    fn operator_printing() {
        let g = parse_operator("x2*d2 + d1 - x2 - 1", 2).unwrap();
        assert_eq!(g.to_string(), "x2*d2 + d1 - x2 - 1");
        let h = parse_operator("d1*x1", 1).unwrap();
        assert_eq!(h.to_string(), "x1*d1 + 1");
        let r = parse_operator("(x1 + 1)/(2*x2)*d1 - 1", 2).unwrap();
        assert_eq!(r.to_string(), "(1/2*x1 + 1/2)/(x2)*d1 - 1");
        assert_eq!(parse_operator(&r.to_string(), 2).unwrap(), r);
    }

    #[test]
    fn coefficient_arithmetic() {
        let p = parse_poly("3/2*x1 - 1/3", 1).unwrap();
        assert_eq!(p.coeff(&Exponent::from([1])), q_frac(3, 2));
        assert_eq!(p.constant_term(), q_frac(-1, 3));
        assert_eq!(parse_poly("2^3", 1).unwrap().constant_term(), q(8));
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_operator("x1 + * d1", 2) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_operator("x3", 2), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_operator("x1 / d1", 2), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_operator("(x1", 2), Err(Error::Parse { column: 4, .. })));
        assert!(parse_operator("x1 ?", 2).is_err());
        assert!(parse_operator("x1/0", 2).is_err());
    }

    #[test]
    fn series_printing() {
        let p = parse_poly("x1^2 + 1 + 2*x1", 1).unwrap();
        let s = TruncatedSeries::from_poly(&p, 3);
        assert_eq!(format_series(&s), "1 + 2*x1 + x1^2");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rationals("19, 23").unwrap(), vec![q(19), q(23)]);
        assert_eq!(parse_rationals("-1/2").unwrap(), vec![q_frac(-1, 2)]);
        assert!(parse_rationals("a").is_err());
    }
}
