//! Literal grammar for scalars and polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := atom ([*] atom)*
//! atom   := '(' scalar ')' | number | var ['^' digits]
//! scalar := [sign] number (sign number)*
//! number := digits ['/' digits] ['i'] | 'i'
//! ```
//! Variables are `z1..zn`, `zb1..zbn` on complex charts and `x1..xn`,
//! `y1..yn` on real charts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::chart::Chart;
use super::gq::GQ;
use super::poly::{Mono, PolyGQ};
use crate::error::{HpError, HpResult};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { s: src.as_bytes(), pos: 0, src }
    }

    fn err(&self, msg: &str) -> HpError {
        HpError::Parse(format!("{} at offset {} in '{}'", msg, self.pos, self.src))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn sign(&mut self) -> Option<i64> {
        self.ws();
        if self.eat(b'+') {
            Some(1)
        } else if self.eat(b'-') {
            Some(-1)
        } else {
            None
        }
    }

    fn number(&mut self) -> HpResult<GQ> {
        if self.peek() == Some(b'i') && !self.next_is_ident_char(1) {
            self.pos += 1;
            return Ok(GQ::i());
        }
        let num = self.digits().ok_or_else(|| self.err("expected number"))?;
        let mut r = BigRational::from_integer(num);
        if self.eat(b'/') {
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            r = BigRational::new(r.numer().clone(), den);
        }
        if self.peek() == Some(b'i') && !self.next_is_ident_char(1) {
            self.pos += 1;
            return Ok(GQ::new(BigRational::zero(), r));
        }
        Ok(GQ::new(r, BigRational::zero()))
    }

    fn next_is_ident_char(&self, off: usize) -> bool {
        self.s.get(self.pos + off).is_some_and(|c| c.is_ascii_alphanumeric())
    }

    fn scalar(&mut self) -> HpResult<GQ> {
        let mut acc = GQ::zero();
        let mut sign = self.sign().unwrap_or(1);
        loop {
            self.ws();
            let v = self.number()?;
            acc = if sign < 0 { &acc - &v } else { &acc + &v };
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        self.ws();
        Ok(acc)
    }
}

/// Parse a Gaussian rational such as `-3/2`, `2i`, `(1/2-3i)`.
pub fn parse_gq(src: &str) -> HpResult<GQ> {
    let mut c = Cursor::new(src);
    c.ws();
    let v = if c.eat(b'(') {
        let v = c.scalar()?;
        if !c.eat(b')') {
            return Err(c.err("expected ')'"));
        }
        v
    } else {
        c.scalar()?
    };
    c.ws();
    if c.pos != c.s.len() {
        return Err(c.err("trailing input"));
    }
    Ok(v)
}

/// Parse a polynomial literal on the given chart.
pub fn parse_poly(chart: Chart, src: &str) -> HpResult<PolyGQ> {
    let mut c = Cursor::new(src);
    let nv = chart.nvars();
    let mut out = PolyGQ::zero(chart);
    let mut sign = c.sign().unwrap_or(1);
    loop {
        c.ws();
        let mut coeff = GQ::int(sign);
        let mut exps = vec![0u16; nv];
        let mut atoms = 0;
        loop {
            c.ws();
            if atoms > 0 {
                c.eat(b'*');
                c.ws();
            }
            match c.peek() {
                Some(b'(') => {
                    c.pos += 1;
                    let v = c.scalar()?;
                    if !c.eat(b')') {
                        return Err(c.err("expected ')'"));
                    }
                    coeff = &coeff * &v;
                }
                Some(ch) if ch.is_ascii_digit() || (ch == b'i' && !c.next_is_ident_char(1)) => {
                    let v = c.number()?;
                    coeff = &coeff * &v;
                }
                Some(ch) if ch.is_ascii_alphabetic() => {
                    let start = c.pos;
                    while c.pos < c.s.len() && c.s[c.pos].is_ascii_alphanumeric() {
                        c.pos += 1;
                    }
                    let name = &src[start..c.pos];
                    let v = chart.var_index(name).map_err(|_| c.err(&format!("unknown variable '{}'", name)))?;
                    let mut e: u16 = 1;
                    if c.eat(b'^') {
                        let d = c.digits().ok_or_else(|| c.err("expected exponent"))?;
                        e = u16::try_from(d).map_err(|_| c.err("exponent too large"))?;
                    }
                    exps[v] += e;
                }
                _ => {
                    if atoms == 0 {
                        return Err(c.err("expected term"));
                    }
                    break;
                }
            }
            atoms += 1;
            c.ws();
            if matches!(c.peek(), None | Some(b'+') | Some(b'-')) {
                break;
            }
        }
        out.add_term(Mono::from_exps(exps), &coeff);
        match c.sign() {
            Some(s) => sign = s,
            None => break,
        }
    }
    c.ws();
    if c.pos != c.s.len() {
        return Err(c.err("trailing input"));
    }
    Ok(out)
}
