//! Text grammars for polynomials in `F_q[T]` and curves in `F_q[T][X, Y]`.
//!
//! Polynomials: a signed sum of terms `c*T^e`, `c*T`, `T^e`, `T` or `c`,
//! with decimal coefficients reduced mod p. Over an extension field a
//! polynomial may also be a JSON array of coordinate arrays, one per
//! coefficient, lowest degree first.
//!
//! Curves: a signed sum of products of factors, each an integer, `T`,
//! `X`, `Y` (optionally raised to `^e`) or a parenthesised polynomial.

use polybox::{BivarPoly, Field, Poly};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        self.err_at(self.pos, message)
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset: self.base + pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos == self.src.len()
    }

    fn integer(&mut self) -> PResult<u64> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err_at(start, "integer out of range"),
        }
    }

    fn exponent(&mut self) -> PResult<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.ws();
        let start = self.pos;
        let e = self.integer()?;
        u32::try_from(e).or_else(|_| self.err_at(start, "exponent out of range"))
    }
}

fn reduce(field: &Field, c: u64) -> Poly {
    Poly::constant(field, (c % field.p() as u64) as u32)
}

/// Parse a polynomial in `F_q[T]`.
pub fn parse_poly(text: &str, field: &Field) -> PResult<Poly> {
    parse_poly_at(text, 0, field)
}

fn parse_poly_at(text: &str, base: usize, field: &Field) -> PResult<Poly> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return parse_poly_json(text, base + text.len() - trimmed.len(), field);
    }
    let mut c = Cursor::new(text, base);
    let mut neg = c.eat(b'-');
    if !neg {
        c.eat(b'+');
    }
    let mut acc = Poly::zero(field);
    loop {
        let term = poly_term(&mut c, field)?;
        acc = if neg { &acc - &term } else { &acc + &term };
        if c.eat(b'+') {
            neg = false;
        } else if c.eat(b'-') {
            neg = true;
        } else {
            break;
        }
    }
    if !c.at_end() {
        return c.err("unexpected character");
    }
    Ok(acc)
}

fn poly_term(c: &mut Cursor, field: &Field) -> PResult<Poly> {
    c.ws();
    match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let k = reduce(field, c.integer()?);
            if c.eat(b'*') {
                if !c.eat(b'T') {
                    return c.err("expected T");
                }
                Ok(&k * &Poly::t(field).pow(c.exponent()?))
            } else {
                Ok(k)
            }
        }
        Some(b'T') => {
            c.pos += 1;
            Ok(Poly::t(field).pow(c.exponent()?))
        }
        _ => c.err("expected a term"),
    }
}

fn parse_poly_json(text: &str, base: usize, field: &Field) -> PResult<Poly> {
    let bad = |message: String| ParseError { offset: base, message };
    let coeffs: Vec<Vec<u32>> = serde_json::from_str(text.trim()).map_err(|e| bad(format!("invalid JSON polynomial: {e}")))?;
    let codes = coeffs
        .iter()
        .map(|c| field.from_coords(c))
        .collect::<polybox::Result<Vec<u32>>>()
        .map_err(|e| bad(e.to_string()))?;
    Poly::from_coeffs(field, codes).map_err(|e| bad(e.to_string()))
}

/// Parse a curve in `F_q[T][X, Y]`.
pub fn parse_curve(text: &str, field: &Field) -> PResult<BivarPoly> {
    let mut c = Cursor::new(text, 0);
    let mut neg = c.eat(b'-');
    if !neg {
        c.eat(b'+');
    }
    let mut acc = BivarPoly::zero(field);
    loop {
        let term = curve_term(&mut c, field)?;
        acc = if neg { &acc - &term } else { &acc + &term };
        if c.eat(b'+') {
            neg = false;
        } else if c.eat(b'-') {
            neg = true;
        } else {
            break;
        }
    }
    if !c.at_end() {
        return c.err("unexpected character");
    }
    Ok(acc)
}

fn curve_term(c: &mut Cursor, field: &Field) -> PResult<BivarPoly> {
    let mut coeff = Poly::one(field);
    let (mut i, mut j) = (0u32, 0u32);
    loop {
        c.ws();
        match c.peek() {
            Some(d) if d.is_ascii_digit() => coeff = &coeff * &reduce(field, c.integer()?),
            Some(b'T') => {
                c.pos += 1;
                coeff = &coeff * &Poly::t(field).pow(c.exponent()?);
            }
            Some(b'X') => {
                c.pos += 1;
                let e = c.exponent()?;
                i = add_exp(c, i, e)?;
            }
            Some(b'Y') => {
                c.pos += 1;
                let e = c.exponent()?;
                j = add_exp(c, j, e)?;
            }
            Some(b'(') => {
                let open = c.pos;
                let Some(len) = c.src[open..].iter().position(|&b| b == b')') else {
                    return c.err("unclosed parenthesis");
                };
                let inner = std::str::from_utf8(&c.src[open + 1..open + len]).expect("ascii slice");
                let p = parse_poly_at(inner, c.base + open + 1, field)?;
                coeff = &coeff * &p;
                c.pos = open + len + 1;
            }
            _ => return c.err("expected a factor"),
        }
        if !c.eat(b'*') {
            break;
        }
    }
    Ok(BivarPoly::monomial(i, j, coeff))
}

fn add_exp(c: &Cursor, a: u32, b: u32) -> PResult<u32> {
    a.checked_add(b).map_or_else(|| c.err("exponent out of range"), Ok)
}
