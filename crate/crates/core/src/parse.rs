//! Text grammar for polynomials.
//!
//! A polynomial is a `+`/`-` separated list of terms; a term is a `*`-separated
//! product of rational numbers (`2`, `-3/4` after a sign) and powers such as
//! `X1^2` or `U2^3`. `X,Y,Z` alias `X1,X2,X3` and `U,V,W` alias `U1,U2,U3`.
//! Whitespace is ignored. Several generators are separated by `,`, `;` or newlines.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::multipoly::{CoefficientRing, NestedPolynomial};
use crate::poly::{Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarKind {
    X,
    U,
}

#[derive(Clone, Debug)]
struct RawTerm {
    coeff: BigRational,
    x: BTreeMap<usize, u32>,
    u: BTreeMap<usize, u32>,
    /// position of the term, for range errors
    at: (usize, usize),
    /// first position of each variable occurrence
    vars: Vec<(VarKind, usize, (usize, usize))>,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, column: self.col, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ' ' || c == '\t' || c == '\r' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.bump();
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        let n = self.digits()?;
        match u32::try_from(&n) {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("{what} {n} is too large")),
        }
    }

    fn generators(&mut self) -> Result<Vec<Vec<RawTerm>>, ParseError> {
        let mut out = Vec::new();
        loop {
            // skip blank separators
            while let Some(c) = self.peek() {
                if c == '\n' || c == ',' || c == ';' {
                    if c != '\n' && out.is_empty() {
                        return self.err("expected a polynomial before separator");
                    }
                    self.bump();
                } else {
                    break;
                }
            }
            if self.peek().is_none() {
                break;
            }
            out.push(self.sum()?);
            match self.peek() {
                None => break,
                Some('\n' | ',' | ';') => {}
                Some(c) => return self.err(format!("unexpected character '{c}'")),
            }
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.peek() {
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        self.skip_ws();
        let mut t = RawTerm {
            coeff: BigRational::one(),
            x: BTreeMap::new(),
            u: BTreeMap::new(),
            at: self.here(),
            vars: Vec::new(),
        };
        loop {
            self.factor(&mut t)?;
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn factor(&mut self, t: &mut RawTerm) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.bump();
                    let den = self.digits()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= BigRational::from_integer(den);
                }
                t.coeff *= value;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.here();
                self.bump();
                let (kind, alias) = match c {
                    'X' | 'x' => (VarKind::X, 0),
                    'Y' | 'y' => (VarKind::X, 1),
                    'Z' | 'z' => (VarKind::X, 2),
                    'U' | 'u' => (VarKind::U, 0),
                    'V' | 'v' => (VarKind::U, 1),
                    'W' | 'w' => (VarKind::U, 2),
                    _ => {
                        return Err(ParseError { line: at.0, column: at.1, message: format!("unknown variable '{c}'") })
                    }
                };
                let index = if self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    if alias != 0 {
                        return self.err("only X and U take an index");
                    }
                    let i = self.small_int("variable index")?;
                    if i == 0 {
                        return self.err("variable indices start at 1");
                    }
                    i as usize - 1
                } else {
                    alias
                };
                let mut power = 1;
                if self.peek() == Some('^') {
                    self.bump();
                    power = self.small_int("exponent")?;
                }
                let map = match kind {
                    VarKind::X => &mut t.x,
                    VarKind::U => &mut t.u,
                };
                *map.entry(index).or_insert(0) += power;
                t.vars.push((kind, index, at));
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn range_error(at: (usize, usize), message: String) -> ParseError {
    ParseError { line: at.0, column: at.1, message }
}

fn build(terms: &[RawTerm], ring: CoefficientRing, s: usize) -> Result<NestedPolynomial, ParseError> {
    let mut f = NestedPolynomial::zero(ring, s);
    for t in terms {
        for &(kind, index, at) in &t.vars {
            let (limit, name) = match kind {
                VarKind::X => (ring.x_vars, "X"),
                VarKind::U => (s, "U"),
            };
            if index >= limit {
                return Err(range_error(
                    at,
                    format!("{name}{} is outside the ring ({limit} {name}-variables)", index + 1),
                ));
            }
        }
        let coeff = ring.base.normalize(&t.coeff).map_err(|e| range_error(t.at, e.to_string()))?;
        let mut xe = vec![0; ring.x_vars];
        for (&i, &e) in &t.x {
            xe[i] = e;
        }
        let mut ue = vec![0; s];
        for (&i, &e) in &t.u {
            ue[i] = e;
        }
        f.add_term(Monomial::new(ue), Poly::term(ring.base, Monomial::new(xe), coeff));
    }
    Ok(f)
}

/// Parses one polynomial of `R_0[U_1..U_s]`.
pub fn parse_nested(text: &str, ring: CoefficientRing, s: usize) -> Result<NestedPolynomial, ParseError> {
    let mut gens = parse_generators(text, ring, s)?;
    match gens.len() {
        0 => Ok(NestedPolynomial::zero(ring, s)),
        1 => Ok(gens.pop().unwrap()),
        n => Err(ParseError { line: 1, column: 1, message: format!("expected one polynomial, found {n}") }),
    }
}

/// Parses a list of generators separated by `,`, `;` or newlines.
pub fn parse_generators(text: &str, ring: CoefficientRing, s: usize) -> Result<Vec<NestedPolynomial>, ParseError> {
    let raw = Parser::new(text).generators()?;
    raw.iter().map(|terms| build(terms, ring, s)).collect()
}

/// Parses an element of `R_0` (no U-variables allowed).
pub fn parse_coefficient(text: &str, ring: CoefficientRing) -> Result<Poly, ParseError> {
    let f = parse_nested(text, ring, 0)?;
    Ok(f.coefficient(&Monomial::new(vec![])).cloned().unwrap_or_else(|| ring.zero()))
}

/// Smallest `(m, s)` such that every variable in `text` fits.
pub fn infer_arity(text: &str) -> Result<(usize, usize), ParseError> {
    let raw = Parser::new(text).generators()?;
    let mut m = 0;
    let mut s = 0;
    for t in raw.iter().flatten() {
        for &(kind, index, _) in &t.vars {
            match kind {
                VarKind::X => m = m.max(index + 1),
                VarKind::U => s = s.max(index + 1),
            }
        }
    }
    Ok((m, s))
}
