//! Parser for univariate polynomials and curve equations.
//!
//! ```text
//! curve := 'y' '^' uint '=' expr 'mod' uint
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := uint ['*'] ['x' ['^' uint]]  |  'x' ['^' uint]
//! ```
//!
//! Whitespace between tokens is ignored. Exponents above 10^6 are rejected.
//! Coefficients are reduced into `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::curve::{CurveError, SuperellipticCurve};
use crate::ff::{make_field, Field, FieldError};
use crate::poly::Poly;

pub const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { found: Option<char>, expected: Vec<&'static str> },
    ExponentTooLarge(String),
    Field(FieldError),
    InvalidCurve(String),
}

/// Error with the byte offset into the source where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                match found {
                    Some(c) => write!(f, "unexpected `{c}` at offset {}", self.offset)?,
                    None => write!(f, "unexpected end of input at offset {}", self.offset)?,
                }
                write!(f, ", expected one of: {}", expected.join(", "))
            }
            ParseErrorKind::ExponentTooLarge(v) => {
                write!(f, "exponent {v} at offset {} exceeds {MAX_EXPONENT}", self.offset)
            }
            ParseErrorKind::Field(e) => write!(f, "at offset {}: {e}", self.offset),
            ParseErrorKind::InvalidCurve(msg) => write!(f, "invalid curve: {msg}"),
        }
    }
}

/// One signed term `coef * x^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: BigInt,
    pub exp: u64,
}

/// A sum of terms in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExprAst {
    pub terms: Vec<Term>,
}

impl ExprAst {
    pub fn to_poly(&self, field: &Field) -> Poly {
        let p = BigInt::from(field.p());
        let deg = self.terms.iter().map(|t| t.exp).max().unwrap_or(0) as usize;
        let mut coeffs = vec![0i64; deg + 1];
        for t in &self.terms {
            let r = ((&t.coef % &p) + &p) % &p;
            let slot = &mut coeffs[t.exp as usize];
            *slot = (*slot + r.to_i64().unwrap_or(0)) % field.p() as i64;
        }
        Poly::from_ints(field, &coeffs)
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        let found = self.peek();
        ParseError { offset: self.pos, kind: ParseErrorKind::Unexpected { found, expected: expected.to_vec() } }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(&[kw]))
        }
    }

    /// Digits starting at the current position, with their offset.
    fn uint(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error(&["unsigned integer"]));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn small_uint(&mut self) -> Result<(usize, u64), ParseError> {
        let (at, digits) = self.uint()?;
        match digits.parse::<u64>() {
            Ok(v) if v <= MAX_EXPONENT => Ok((at, v)),
            _ => Err(ParseError { offset: at, kind: ParseErrorKind::ExponentTooLarge(digits.to_string()) }),
        }
    }

    fn term(&mut self, sign: i32) -> Result<Term, ParseError> {
        let mut coef = BigInt::from(sign);
        let mut saw_coef = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let (_, digits) = self.uint()?;
            coef *= digits.parse::<BigInt>().expect("ascii digits");
            saw_coef = true;
            if self.peek() == Some('*') {
                self.bump();
                if self.peek() != Some('x') {
                    return Err(self.error(&["`x`"]));
                }
            }
        }
        let mut exp = 0;
        if self.peek() == Some('x') {
            self.bump();
            exp = 1;
            if self.peek() == Some('^') {
                self.bump();
                exp = self.small_uint()?.1;
            }
        } else if !saw_coef {
            return Err(self.error(&["unsigned integer", "`x`"]));
        }
        Ok(Term { coef, exp })
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                self.bump();
                sign = -1;
            }
            Some('+') => self.bump(),
            _ => {}
        }
        let mut terms = vec![self.term(sign)?];
        loop {
            let sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => break,
            };
            self.bump();
            terms.push(self.term(sign)?);
        }
        Ok(ExprAst { terms })
    }

    fn end(&mut self, expected: &[&'static str]) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.error(expected))
        } else {
            Ok(())
        }
    }
}

/// Parses a polynomial expression into its term list.
pub fn parse_ast(src: &str) -> Result<ExprAst, ParseError> {
    let mut lx = Lexer::new(src);
    let ast = lx.expr()?;
    lx.end(&["`+`", "`-`", "end of input"])?;
    Ok(ast)
}

pub fn parse_poly(src: &str, field: &Field) -> Result<Poly, ParseError> {
    Ok(parse_ast(src)?.to_poly(field))
}

/// Parsed form of `y^m = f(x) mod p` before the curve is validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSource {
    pub m: u64,
    pub p: u64,
    pub rhs: ExprAst,
}

pub fn parse_curve_source(src: &str) -> Result<CurveSource, ParseError> {
    let mut lx = Lexer::new(src);
    lx.expect('y', "`y`")?;
    lx.expect('^', "`^`")?;
    let (_, m) = lx.small_uint()?;
    lx.expect('=', "`=`")?;
    let rhs = lx.expr()?;
    lx.keyword("mod").map_err(|mut e| {
        if let ParseErrorKind::Unexpected { expected, .. } = &mut e.kind {
            expected.splice(0..0, ["`+`", "`-`"]);
        }
        e
    })?;
    let (at, digits) = lx.uint()?;
    lx.end(&["end of input"])?;
    let p = digits
        .parse::<u64>()
        .map_err(|_| ParseError { offset: at, kind: ParseErrorKind::InvalidCurve(format!("modulus {digits} out of range")) })?;
    if let Err(e) = make_field(p, 1) {
        return Err(ParseError { offset: at, kind: ParseErrorKind::Field(e) });
    }
    Ok(CurveSource { m, p, rhs })
}

/// Parses and validates `y^m = f(x) mod p`, inferring the curve kind.
pub fn parse_curve(src: &str) -> Result<SuperellipticCurve, ParseError> {
    let cs = parse_curve_source(src)?;
    let field = make_field(cs.p, 1).expect("checked while parsing");
    let f = cs.rhs.to_poly(&field);
    SuperellipticCurve::new(cs.m, f).map_err(|e| {
        let msg = match e {
            CurveError::Invalid(msg) => msg,
            other => other.to_string(),
        };
        ParseError { offset: 0, kind: ParseErrorKind::InvalidCurve(msg) }
    })
}

/// Text form of a prime-field polynomial that [`parse_poly`] reads back,
/// highest degree first, e.g. `x^5 + 4*x`.
pub fn render(poly: &Poly) -> String {
    let codes = poly.codes();
    let mut parts = Vec::new();
    for (i, &c) in codes.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}*x^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// `y^m = f mod p` for a curve.
pub fn render_curve(curve: &SuperellipticCurve) -> String {
    format!("y^{} = {} mod {}", curve.m(), render(curve.f()), curve.p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveKind;
    use proptest::prelude::*;

    fn f(p: u64) -> Field {
        make_field(p, 1).unwrap()
    }

    #[test]
    fn poly_examples() {
        assert_eq!(parse_poly("x^5 - x", &f(5)).unwrap().codes(), &[0, 4, 0, 0, 0, 1]);
        assert_eq!(parse_poly("3x^2+7", &f(7)).unwrap().codes(), &[0, 0, 3]);
        assert_eq!(parse_poly("-1", &f(7)).unwrap().codes(), &[6]);
        assert_eq!(parse_poly("2*x + x + 4*x^0", &f(5)).unwrap().codes(), &[4, 3]);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse_poly("x^^2", &f(5)).unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { found: Some('^'), .. }));
        assert_eq!(parse_poly("", &f(5)).unwrap_err().offset, 0);
        assert_eq!(parse_poly("x +", &f(5)).unwrap_err().offset, 3);
        assert_eq!(parse_poly("3*", &f(5)).unwrap_err().offset, 2);
        assert_eq!(parse_poly("x y", &f(5)).unwrap_err().offset, 2);
        let e = parse_poly("x^1000001", &f(5)).unwrap_err();
        assert_eq!(e, ParseError { offset: 2, kind: ParseErrorKind::ExponentTooLarge("1000001".into()) });
        assert!(parse_poly("x^1000000", &f(5)).is_ok());
    }

    #[test]
    fn curve_examples() {
        let c = parse_curve("y^2 = x^5 - x mod 5").unwrap();
        assert_eq!(c.kind(), CurveKind::Hyperelliptic);
        let c = parse_curve("y^6 = x^5 - x mod 5").unwrap();
        assert_eq!(c.kind(), CurveKind::ArtinSchreierQuotient);
        let e = parse_curve("y^3 = x^3 - x mod 3").unwrap_err();
        assert!(matches!(&e.kind, ParseErrorKind::InvalidCurve(m) if m.contains("gcd")), "{e}");
        let e = parse_curve("y^2 = x^5 - x mod 4").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Field(FieldError::NotPrime(4)));
        assert_eq!(e.offset, 18);
        let c = parse_curve("y^3 = x^4 + 1 mod 7").unwrap();
        assert_eq!(c.kind(), CurveKind::General);
    }

    #[test]
    fn render_examples() {
        let p = parse_poly("x^5 - x", &f(5)).unwrap();
        assert_eq!(render(&p), "x^5 + 4*x");
        assert_eq!(render(&Poly::zero(&f(5))), "0");
        let c = parse_curve("y^2=x^5-x mod 3").unwrap();
        assert_eq!(render_curve(&c), "y^2 = x^5 + 2*x mod 3");
    }

    fn expr_strategy() -> impl Strategy<Value = String> {
        let term = (proptest::option::of(0u64..1000), proptest::option::of(0u64..40), any::<bool>())
            .prop_map(|(c, e, star)| {
                let x = match e {
                    None => String::new(),
                    Some(1) => "x".to_string(),
                    Some(e) => format!("x^{e}"),
                };
                match (c, x.is_empty()) {
                    (None, true) => "1".to_string(),
                    (None, false) => x,
                    (Some(c), true) => c.to_string(),
                    (Some(c), false) if star => format!("{c}*{x}"),
                    (Some(c), false) => format!("{c}{x}"),
                }
            });
        (any::<bool>(), proptest::collection::vec((term, any::<bool>()), 1..8)).prop_map(|(lead, terms)| {
            let mut s = if lead { "-".to_string() } else { String::new() };
            for (i, (t, plus)) in terms.into_iter().enumerate() {
                if i > 0 {
                    s.push_str(if plus { " + " } else { " - " });
                }
                s.push_str(&t);
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn render_round_trips(src in expr_strategy(), pi in 0usize..4) {
            let field = f([2, 3, 5, 7][pi]);
            let poly = parse_poly(&src, &field).unwrap();
            let again = parse_poly(&render(&poly), &field).unwrap();
            prop_assert_eq!(again, poly);
        }

        #[test]
        fn whitespace_is_insignificant(src in expr_strategy(), pad in 0usize..3) {
            let field = f(7);
            let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
            let spaced: String = compact
                .chars()
                .flat_map(|c| {
                    let sep = if c.is_ascii_digit() { String::new() } else { " ".repeat(pad) };
                    std::iter::once(sep.clone()).chain(std::iter::once(c.to_string())).chain(std::iter::once(sep))
                })
                .collect();
            prop_assert_eq!(parse_poly(&compact, &field).unwrap(), parse_poly(&spaced, &field).unwrap());
        }
    }
}
