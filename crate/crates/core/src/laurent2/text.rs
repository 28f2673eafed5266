//! Text round-trip for polynomials: terms like `-3*L^2*M^-4` joined by `+`
//! and `-`, variables exactly `L` and `M`.

use super::LPoly2;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

/// Terms sorted by `(expL, expM)` descending for diff-stable output.
pub(super) fn format_poly(p: &LPoly2, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut terms: Vec<(&(i64, i64), &BigInt)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    for (i, (&(a, b), c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let abs = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || (a == 0 && b == 0) {
            parts.push(abs.to_string());
        }
        if a != 0 {
            parts.push(if a == 1 { "L".into() } else { format!("L^{a}") });
        }
        if b != 0 {
            parts.push(if b == 1 { "M".into() } else { format!("M^{b}") });
        }
        write!(f, "{}", parts.join("*"))?;
    }
    Ok(())
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "bad integer".into(),
        })
    }
}

pub(super) fn parse_poly(src: &str) -> Result<LPoly2> {
    let mut cur = Cursor {
        src: src.as_bytes(),
        pos: 0,
    };
    let mut poly = LPoly2::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.pos >= cur.src.len() {
            if first {
                return cur.err("empty polynomial");
            }
            return Ok(poly);
        }
        let mut sign = BigInt::one();
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
            }
            Some(b'-') => {
                cur.bump();
                sign = -sign;
            }
            _ if first => {}
            _ => return cur.err("expected + or - between terms"),
        }
        let (coeff, exps) = parse_term(&mut cur)?;
        poly.add_term(exps, sign * coeff);
        first = false;
    }
}

fn parse_term(cur: &mut Cursor) -> Result<(BigInt, (i64, i64))> {
    let mut coeff = BigInt::one();
    let mut exp_l = 0i64;
    let mut exp_m = 0i64;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff *= cur.integer()?;
            }
            Some(b'L') | Some(b'M') => {
                let var = cur.bump().unwrap();
                let e = if cur.peek() == Some(b'^') {
                    cur.bump();
                    let e = cur.integer()?;
                    i64::try_from(&e).map_err(|_| Error::Parse {
                        pos: cur.pos,
                        msg: "exponent out of range".into(),
                    })?
                } else {
                    1
                };
                if var == b'L' {
                    exp_l += e;
                } else {
                    exp_m += e;
                }
            }
            _ => return cur.err("expected coefficient or variable"),
        }
        if cur.peek() == Some(b'*') {
            cur.bump();
            continue;
        }
        break;
    }
    Ok((coeff, (exp_l, exp_m)))
}
