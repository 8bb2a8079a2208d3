//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`,
//! `term := unary (('*'|'/') unary)*`, `unary := '-' unary | power`,
//! `power := atom ('^' integer)?`, `atom := number | name | '(' expr ')'`.
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;

use super::poly::{Poly, VarNames};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    names: &'a dyn VarNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if c != Rational::from_integer(0.into()) => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(Error::Parse("division by zero".into())),
                    None => return Err(Error::Parse("division by a non-constant".into())),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, Rational::from_integer(n)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let v = self
                    .names
                    .var_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                if v >= self.nvars {
                    return Err(Error::ChartMismatch(format!(
                        "variable '{name}' outside chart of dimension {}",
                        self.nvars
                    )));
                }
                Ok(Poly::var(self.nvars, v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub(crate) fn parse_poly(text: &str, nvars: usize, names: &dyn VarNames) -> Result<Poly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, nvars, names };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Coords;
    use crate::algebra::rational::ratio;

    #[test]
    fn precedence_and_signs() {
        let p = parse_poly("-3/2*x1 + x2^2*(x3 - 1)", 3, &Coords(3)).unwrap();
        assert_eq!(p.to_string(), "x2^2*x3 - x2^2 - 3/2*x1");
        let q = parse_poly("x1/2", 1, &Coords(1)).unwrap();
        assert_eq!(q, Poly::var(1, 0).scale(&ratio(1, 2)));
    }

    #[test]
    fn errors() {
        assert!(parse_poly("x1/x2", 2, &Coords(2)).is_err());
        assert!(parse_poly("x1 +", 2, &Coords(2)).is_err());
        assert!(parse_poly("y1", 2, &Coords(2)).is_err());
        assert!(parse_poly("x3", 2, &Coords(2)).is_err());
        assert!(parse_poly("(x1", 2, &Coords(2)).is_err());
        assert!(parse_poly("x1/0", 2, &Coords(2)).is_err());
    }
}
