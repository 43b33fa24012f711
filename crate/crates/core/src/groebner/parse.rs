//! Plain-text polynomials: one per line, terms such as `3*x1^2*x2 - x3^3`.
//! Blank lines and lines starting with `#` are skipped.

use std::iter::Peekable;
use std::str::CharIndices;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, TermOrder};

use super::Polynomial;

struct Cursor<'a> {
    line: usize,
    chars: Peekable<CharIndices<'a>>,
    len: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn column(&mut self) -> usize {
        self.chars.peek().map_or(self.len, |(i, _)| *i) + 1
    }

    fn error(&mut self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column(), message: message.into() }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|(_, c)| *c)
    }

    fn number(&mut self) -> Result<u128> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        digits.parse().map_err(|_| self.error("number too large"))
    }
}

/// Parsed terms with 0-based variable indices and integer coefficients.
type RawTerm = (i128, Vec<(usize, u32)>);

fn parse_line(cur: &mut Cursor<'_>) -> Result<Vec<RawTerm>> {
    let mut terms = Vec::new();
    let mut sign: i128 = 1;
    match cur.peek() {
        Some('-') => {
            cur.chars.next();
            sign = -1;
        }
        Some('+') => {
            cur.chars.next();
        }
        _ => {}
    }
    loop {
        let mut coeff: i128 = 1;
        let mut vars = Vec::new();
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = cur.number()?;
                    coeff = coeff.checked_mul(v as i128).ok_or_else(|| cur.error("coefficient overflow"))?;
                }
                Some('x') => {
                    cur.chars.next();
                    let idx = cur.number()? as usize;
                    if idx == 0 {
                        return Err(cur.error("variables are numbered from x1"));
                    }
                    let mut exp = 1u32;
                    if cur.peek() == Some('^') {
                        cur.chars.next();
                        exp = u32::try_from(cur.number()?).map_err(|_| cur.error("exponent too large"))?;
                    }
                    vars.push((idx - 1, exp));
                }
                _ => return Err(cur.error("expected a coefficient or a variable")),
            }
            if cur.peek() == Some('*') {
                cur.chars.next();
            } else {
                break;
            }
        }
        terms.push((sign * coeff, vars));
        match cur.peek() {
            None => return Ok(terms),
            Some('+') => sign = 1,
            Some('-') => sign = -1,
            Some(c) => return Err(cur.error(format!("unexpected character {c:?}"))),
        }
        cur.chars.next();
    }
}

/// Parse polynomials in `n` variables, or in as many variables as the
/// largest index used when `n` is `None`. Coefficients are reduced mod `q`.
pub fn parse_polynomials(text: &str, n: Option<usize>, field: PrimeField, order: TermOrder) -> Result<Vec<Polynomial>> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cur = Cursor { line: lineno + 1, chars: line.char_indices().peekable(), len: line.len() };
        raw.push((lineno + 1, parse_line(&mut cur)?));
    }
    let used = raw.iter().flat_map(|(_, t)| t.iter().flat_map(|(_, v)| v.iter().map(|(i, _)| i + 1))).max().unwrap_or(0);
    let n = match n {
        Some(n) if used > n => {
            let line = raw.iter().find(|(_, t)| t.iter().any(|(_, v)| v.iter().any(|(i, _)| *i >= n))).map_or(0, |r| r.0);
            return Err(Error::Parse { line, column: 0, message: format!("variable x{used} exceeds n = {n}") });
        }
        Some(n) => n,
        None => used.max(1),
    };
    let q = field.modulus() as i128;
    raw.into_iter()
        .map(|(_, terms)| {
            Polynomial::from_terms(
                n,
                field,
                order,
                terms.into_iter().map(|(c, vars)| {
                    let mut e = vec![0u32; n];
                    for (i, x) in vars {
                        e[i] += x;
                    }
                    (Monomial::new(e), c.rem_euclid(q) as u64)
                }),
            )
        })
        .collect()
}
