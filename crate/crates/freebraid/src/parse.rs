//! Text forms for scalars, polynomials, braidings, and endomorphisms.
//!
//! Recursive descent over ASCII input, whitespace-insensitive. Every
//! `Display` printer in the crate round-trips through these parsers.
//!
//! Grammar sketch:
//!
//! ```text
//! scalar    := ['+'|'-'] digits ['/' digits]
//! factor    := 'x' digits ['^' digits]
//! term      := scalar ['*' factor ('*'? factor)*] | factor ('*'? factor)*
//! poly      := ['+'|'-'] term (('+'|'-') term)*
//! braiding  := ['tau' '='] '(' scalar {',' scalar} ')' | rows
//! endo      := ['phi' '='] '(' poly ';' poly ')'
//! rows      := '[' '[' scalar {',' scalar} ']' {',' '[' ... ']'} ']'
//! ```

use crate::autos::Endomorphism;
use crate::braiding::{DiagonalBraiding, MatrixBraiding};
use crate::freealg::{Polynomial, Word};
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

const MAX_EXPONENT: usize = 1000;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn literal(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".into()))
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }
}

fn to_i64(cur: &Cursor, digits: &str) -> Result<i64> {
    digits
        .parse::<i64>()
        .map_err(|_| cur.error("number too large".into()))
}

fn fold_mod(digits: &str, p: u64) -> u64 {
    digits
        .bytes()
        .fold(0u64, |acc, b| {
            let d = (b - b'0') as u128;
            ((acc as u128 * 10 + d) % p as u128) as u64
        })
}

fn scalar(cur: &mut Cursor, field: FieldSpec) -> Result<Scalar> {
    let neg = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let num_digits = cur.digits()?;
    let den_digits = if cur.eat(b'/') { Some(cur.digits()?) } else { None };
    let value = match field {
        FieldSpec::Rationals => {
            let num = to_i64(cur, num_digits)?;
            match den_digits {
                None => Scalar::from_i64(num, field),
                Some(d) => {
                    let den = to_i64(cur, d)?;
                    Scalar::rational(num, den)
                        .map_err(|_| cur.error("zero denominator".into()))?
                }
            }
        }
        FieldSpec::PrimeField(p) => {
            let num = Scalar::from_i64(fold_mod(num_digits, p) as i64, field);
            match den_digits {
                None => num,
                Some(d) => {
                    let den = Scalar::from_i64(fold_mod(d, p) as i64, field);
                    num.div(&den)
                        .map_err(|_| cur.error(format!("denominator is zero in {field}")))?
                }
            }
        }
    };
    Ok(if neg { value.neg() } else { value })
}

fn factor(cur: &mut Cursor, n_vars: usize, letters: &mut Vec<u8>) -> Result<()> {
    cur.expect(b'x')?;
    let at = cur.pos;
    let idx_digits = cur.digits()?;
    let idx = to_i64(cur, idx_digits)?;
    if idx < 1 || idx as usize > n_vars {
        return Err(Error::Parse {
            pos: at,
            msg: format!("generator index {idx} out of range 1..={n_vars}"),
        });
    }
    let exp = if cur.eat(b'^') {
        let at = cur.pos;
        let exp_digits = cur.digits()?;
        let e = to_i64(cur, exp_digits)? as usize;
        if e > MAX_EXPONENT {
            return Err(Error::Parse { pos: at, msg: format!("exponent exceeds {MAX_EXPONENT}") });
        }
        e
    } else {
        1
    };
    letters.extend(std::iter::repeat_n(idx as u8, exp));
    Ok(())
}

fn term(cur: &mut Cursor, n_vars: usize, field: FieldSpec) -> Result<Polynomial> {
    let mut coeff = Scalar::one(field);
    let mut have = false;
    if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        coeff = scalar(cur, field)?;
        have = true;
    }
    let mut letters = Vec::new();
    loop {
        if cur.eat(b'*') {
            factor(cur, n_vars, &mut letters)?;
        } else if cur.peek() == Some(b'x') {
            factor(cur, n_vars, &mut letters)?;
        } else {
            break;
        }
        have = true;
    }
    if !have {
        return Err(cur.error("expected a term".into()));
    }
    Ok(Polynomial::monomial(Word::from_letters(letters), coeff, n_vars))
}

fn poly(cur: &mut Cursor, n_vars: usize, field: FieldSpec) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(n_vars, field);
    let mut negate = cur.eat(b'-');
    if !negate {
        cur.eat(b'+');
    }
    loop {
        let t = term(cur, n_vars, field)?;
        acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        if cur.eat(b'+') {
            negate = false;
        } else if cur.eat(b'-') {
            negate = true;
        } else {
            break;
        }
    }
    Ok(acc)
}

fn scalar_list(cur: &mut Cursor, field: FieldSpec) -> Result<Vec<Scalar>> {
    let mut out = vec![scalar(cur, field)?];
    while cur.eat(b',') {
        out.push(scalar(cur, field)?);
    }
    Ok(out)
}

fn rows(cur: &mut Cursor, field: FieldSpec) -> Result<Vec<Vec<Scalar>>> {
    cur.expect(b'[')?;
    let mut out = Vec::new();
    loop {
        cur.expect(b'[')?;
        out.push(scalar_list(cur, field)?);
        cur.expect(b']')?;
        if !cur.eat(b',') {
            break;
        }
    }
    cur.expect(b']')?;
    Ok(out)
}

pub fn parse_scalar(input: &str, field: FieldSpec) -> Result<Scalar> {
    let mut cur = Cursor::new(input);
    let s = scalar(&mut cur, field)?;
    cur.expect_end()?;
    Ok(s)
}

pub fn parse_poly(input: &str, n_vars: usize, field: FieldSpec) -> Result<Polynomial> {
    let mut cur = Cursor::new(input);
    let p = poly(&mut cur, n_vars, field)?;
    cur.expect_end()?;
    Ok(p)
}

/// Accepts `(a,b,c,d)` for two generators or an `[[..],..]` entry matrix,
/// optionally prefixed with `tau=`.
pub fn parse_braiding(input: &str, field: FieldSpec) -> Result<DiagonalBraiding> {
    let mut cur = Cursor::new(input);
    if cur.literal("tau") {
        cur.expect(b'=')?;
    }
    match cur.peek() {
        Some(b'(') => {
            cur.expect(b'(')?;
            let entries = scalar_list(&mut cur, field)?;
            cur.expect(b')')?;
            cur.expect_end()?;
            if entries.len() != 4 {
                return Err(cur.error(format!(
                    "expected 4 entries for two generators, got {}",
                    entries.len()
                )));
            }
            let mut it = entries.into_iter();
            DiagonalBraiding::two_var([
                it.next().expect("len 4"),
                it.next().expect("len 4"),
                it.next().expect("len 4"),
                it.next().expect("len 4"),
            ])
        }
        Some(b'[') => {
            let r = rows(&mut cur, field)?;
            cur.expect_end()?;
            DiagonalBraiding::new(r)
        }
        _ => Err(cur.error("expected '(' or '['".into())),
    }
}

/// Accepts `(f1 ; f2)`, optionally prefixed with `phi=`; always two
/// generators.
pub fn parse_endomorphism(input: &str, field: FieldSpec) -> Result<Endomorphism> {
    let mut cur = Cursor::new(input);
    if cur.literal("phi") {
        cur.expect(b'=')?;
    }
    cur.expect(b'(')?;
    let f1 = poly(&mut cur, 2, field)?;
    cur.expect(b';')?;
    let f2 = poly(&mut cur, 2, field)?;
    cur.expect(b')')?;
    cur.expect_end()?;
    Endomorphism::new(f1, f2)
}

/// An `[[..],..]` matrix acting on the tensor-square basis; the side
/// length must be a perfect square.
pub fn parse_matrix(input: &str, field: FieldSpec) -> Result<MatrixBraiding> {
    let mut cur = Cursor::new(input);
    let r = rows(&mut cur, field)?;
    cur.expect_end()?;
    MatrixBraiding::new(r)
}
