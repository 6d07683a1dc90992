//! Parser for ASCII polynomial expressions such as `3*L^2 + 2*L*K - c2T/2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*" factor) | ("/" number))*
//! factor := atom ["^" integer]
//! atom   := number | ident | "(" expr ")"
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Identifiers are resolved by a caller-supplied function, so one grammar serves
//! germs (`x^2+y^3`), Chern-class expressions and aliases.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{GradedPoly, Rational, VarSet};
use crate::error::{Error, Result};

struct Parser<'a, F> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarSet>,
    resolve: F,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a, F: Fn(&str) -> Option<GradedPoly>> Parser<'a, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
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

    fn expr(&mut self) -> Result<GradedPoly> {
        let mut acc = GradedPoly::zero(self.vars);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.number()?;
                if d.is_zero() {
                    return err(at, "division by zero");
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / Rational::from_integer(d)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<GradedPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let k = self.number()?;
            let k: u32 = u32::try_from(k).or_else(|_| err(at, "exponent must be a small nonnegative integer"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn atom(&mut self) -> Result<GradedPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(GradedPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                match (self.resolve)(name) {
                    Some(p) => Ok(p),
                    None => err(start, format!("unknown symbol `{name}`")),
                }
            }
            Some(c) => err(self.pos, format!("unexpected character `{}`", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses `src` over `vars`, resolving identifiers with `resolve`.
pub fn parse_with(
    src: &str,
    vars: &Arc<VarSet>,
    resolve: impl Fn(&str) -> Option<GradedPoly>,
) -> Result<GradedPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars, resolve };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return err(p.pos, "trailing input");
    }
    Ok(out)
}

/// Parses `src` where identifiers must be variable names of `vars`.
pub fn parse_poly(src: &str, vars: &Arc<VarSet>) -> Result<GradedPoly> {
    parse_with(src, vars, |name| vars.index_of(name).map(|i| GradedPoly::var(vars, i)))
}

/// Distinct identifiers of `src` in order of first appearance.
pub fn identifiers(src: &str) -> alloc::vec::Vec<String> {
    let mut out: alloc::vec::Vec<String> = alloc::vec::Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() || b[i] == b'_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let name = src[s..i].to_string();
            if !out.contains(&name) {
                out.push(name);
            }
        } else {
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_germ() {
        let v = VarSet::unweighted(["x", "y"]);
        let p = parse_poly("x^2 + y^3", &v).unwrap();
        assert_eq!(p.to_string(), "y^3 + x^2");
        let q = parse_poly("-(x - 2*y)^2/4", &v).unwrap();
        assert_eq!(q.to_string(), "-1/4*x^2 + x*y - y^2");
    }

    #[test]
    fn reports_positions() {
        let v = VarSet::unweighted(["x"]);
        assert!(matches!(parse_poly("x + z", &v), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x +", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/0", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x", &v), Err(Error::Parse { .. })));
    }

    #[test]
    fn collects_identifiers() {
        assert_eq!(identifiers("x^2 + y*x - z1"), ["x", "y", "z1"]);
    }
}
