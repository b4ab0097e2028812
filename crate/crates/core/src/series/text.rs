//! Text form of bivariate polynomials.
//!
//! Grammar (whitespace ignored, juxtaposition multiplies):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*'? unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'i' | 'z1' | 'z2' | '(' expr ')'
//! ```
//!
//! Products and powers are expanded, so the result is the canonical
//! coefficient map. [`BivarPoly`]'s `Display` prints a form that parses
//! back to the identical polynomial.

use alloc::string::String;
use core::fmt::{self, Write as _};

use num_complex::Complex64;

use super::{BivarPoly, MultiIndex};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    BadNumber(String),
    BadExponent(String),
}

/// Parse failure at byte offset `pos` of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            Self::UnexpectedToken(t) => write!(f, "unexpected {t}"),
            Self::UnexpectedEnd => f.write_str("unexpected end of input"),
            Self::UnknownVariable(v) => write!(f, "unknown variable {v:?} (expected z1, z2 or i)"),
            Self::BadNumber(s) => write!(f, "malformed number {s:?}"),
            Self::BadExponent(s) => write!(f, "exponent must be an integer in 0..={MAX_EXPONENT}, got {s:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        let mut s = String::new();
        let _ = match self {
            Token::Num(_, text) => write!(s, "number {text}"),
            Token::Ident(name) => write!(s, "identifier {name}"),
            Token::Plus => write!(s, "'+'"),
            Token::Minus => write!(s, "'-'"),
            Token::Star => write!(s, "'*'"),
            Token::Caret => write!(s, "'^'"),
            Token::LParen => write!(s, "'('"),
            Token::RParen => write!(s, "')'"),
        };
        s
    }
}

fn lex(input: &str) -> Result<alloc::vec::Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = alloc::vec::Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Token::Plus, start)),
            b'-' => out.push((Token::Minus, start)),
            b'*' => out.push((Token::Star, start)),
            b'^' => out.push((Token::Caret, start)),
            b'(' => out.push((Token::LParen, start)),
            b')' => out.push((Token::RParen, start)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // Optional exponent, only if followed by digits.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &input[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError { kind: ParseErrorKind::BadNumber(text.into()), pos: start })?;
                out.push((Token::Num(value, text.into()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(input[start..i].into()), start));
                continue;
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(ch), pos: start });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: alloc::vec::Vec<(Token, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { kind, pos: self.pos() })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<BivarPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Num(..) | Token::Ident(_) | Token::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivarPoly, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Token::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivarPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let exponent = match self.peek() {
            Some(Token::Num(v, text)) => {
                let ok = libm::trunc(*v) == *v && *v >= 0.0 && *v <= MAX_EXPONENT as f64 && !text.contains('.');
                if !ok {
                    return self.err(ParseErrorKind::BadExponent(text.clone()));
                }
                *v as u32
            }
            Some(t) => return self.err(ParseErrorKind::BadExponent(t.describe())),
            None => return self.err(ParseErrorKind::UnexpectedEnd),
        };
        self.at += 1;
        Ok(pow(&base, exponent))
    }

    fn atom(&mut self) -> Result<BivarPoly, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err(ParseErrorKind::UnexpectedEnd);
        };
        match tok {
            Token::Num(v, _) => {
                self.at += 1;
                Ok(BivarPoly::constant(Complex64::new(v, 0.0)))
            }
            Token::Ident(name) => {
                let value = match name.as_str() {
                    "i" => BivarPoly::constant(Complex64::new(0.0, 1.0)),
                    "z1" => BivarPoly::monomial(MultiIndex::new(1, 0), Complex64::new(1.0, 0.0)),
                    "z2" => BivarPoly::monomial(MultiIndex::new(0, 1), Complex64::new(1.0, 0.0)),
                    _ => return self.err(ParseErrorKind::UnknownVariable(name)),
                };
                self.at += 1;
                Ok(value)
            }
            Token::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.unexpected();
                }
                self.at += 1;
                Ok(inner)
            }
            _ => self.unexpected(),
        }
    }
}

fn pow(base: &BivarPoly, mut e: u32) -> BivarPoly {
    let mut result = BivarPoly::one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// Parses polynomial text such as `"1 - 2*z1*z2"` or `"(1-z1)^3 (1+i z2)"`.
pub fn parse_poly(text: &str) -> Result<BivarPoly, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, at: 0, end: text.len() };
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return parser.unexpected();
    }
    Ok(poly)
}

fn write_monomial(out: &mut String, idx: MultiIndex) {
    let mut first = true;
    for (name, e) in [("z1", idx.k), ("z2", idx.l)] {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, (idx, c)) in self.terms().enumerate() {
            let mut mono = String::new();
            write_monomial(&mut mono, idx);
            let (negative, coef) = if c.im == 0.0 {
                let mag = c.re.abs();
                let text = if mag == 1.0 && !mono.is_empty() { String::new() } else { alloc::format!("{mag}") };
                (c.re < 0.0, text)
            } else if c.re == 0.0 {
                let mag = c.im.abs();
                let text = if mag == 1.0 { String::from("i") } else { alloc::format!("{mag}i") };
                (c.im < 0.0, text)
            } else {
                let sign = if c.im < 0.0 { '-' } else { '+' };
                let mag = c.im.abs();
                let text = if mag == 1.0 {
                    alloc::format!("({}{sign}i)", c.re)
                } else {
                    alloc::format!("({}{sign}{mag}i)", c.re)
                };
                (false, text)
            };
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&coef);
            if !coef.is_empty() && !mono.is_empty() {
                out.push('*');
            }
            out.push_str(&mono);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_poly("1 - 2*z1*z2").unwrap(), BivarPoly::from_real([((0, 0), 1.0), ((1, 1), -2.0)]));
        assert_eq!(
            parse_poly("(1-z1)*(1-z2)").unwrap(),
            BivarPoly::from_real([((0, 0), 1.0), ((1, 0), -1.0), ((0, 1), -1.0), ((1, 1), 1.0)])
        );
    }

    #[test]
    fn unknown_variable() {
        let err = parse_poly("z3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("z3".into()));
        assert_eq!(err.pos, 0);
        assert!(err.to_string().contains("unknown variable"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_poly("1 + * z1").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = parse_poly("(1 - z1").unwrap_err();
        assert_eq!((err.kind, err.pos), (ParseErrorKind::UnexpectedEnd, 7));
        let err = parse_poly("z1 $ z2").unwrap_err();
        assert_eq!((err.kind, err.pos), (ParseErrorKind::UnexpectedChar('$'), 3));
        let err = parse_poly("z1^1.5").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::BadExponent(_)));
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1 2 )").is_err());
    }

    #[test]
    fn powers_and_juxtaposition() {
        let cube = parse_poly("(1-z1)^3").unwrap();
        assert_eq!(cube, BivarPoly::from_real([((0, 0), 1.0), ((1, 0), -3.0), ((2, 0), 3.0), ((3, 0), -1.0)]));
        assert_eq!(parse_poly("2z1 z2").unwrap(), parse_poly("2*z1*z2").unwrap());
        assert_eq!(parse_poly("-z1^2").unwrap(), BivarPoly::from_real([((2, 0), -1.0)]));
        assert_eq!(parse_poly("z2^0").unwrap(), BivarPoly::one());
        let c = parse_poly("(1+2i) z1").unwrap();
        assert_eq!(c.coeff(MultiIndex::new(1, 0)), Complex64::new(1.0, 2.0));
    }

    #[test]
    fn prints_canonical_forms() {
        for text in ["1 - 2*z1*z2", "1 - z1^2 + z2^2", "0", "-z1 + 0.5*z2", "2i*z1*z2^3", "(1-i)*z1 + (0.25+3i)*z2", "-i"] {
            assert_eq!(parse_poly(text).unwrap().to_string(), text);
        }
    }

    fn coeff() -> impl Strategy<Value = Complex64> {
        prop_oneof![
            (-1e3f64..1e3).prop_map(|r| Complex64::new(r, 0.0)),
            (-1e3f64..1e3).prop_map(|i| Complex64::new(0.0, i)),
            (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(r, i)| Complex64::new(r, i)),
            Just(Complex64::new(-1.0, 0.0)),
            Just(Complex64::new(0.0, 1.0)),
        ]
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(terms in prop::collection::vec(((0u32..6, 0u32..6), coeff()), 0..8)) {
            let f: BivarPoly = terms.into_iter().map(|((k, l), c)| (MultiIndex::new(k, l), c)).collect();
            let text = f.to_string();
            prop_assert_eq!(parse_poly(&text).unwrap(), f, "{}", text);
        }
    }
}
