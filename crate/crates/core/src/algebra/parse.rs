//! Text form of polynomials: `x0^2 + (1/2+i)*x1*x2 - 3`, with `i` the imaginary unit.
//!
//! Juxtaposition multiplies (`2i`, `3x0`); `/` is allowed by nonzero constants only.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::GaussRat;
use super::poly::SparsePoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = cs[start..k].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < cs.len() && (cs[k].is_alphanumeric() || cs[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(cs[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = if self.eat('-') { -self.term()? } else { self.eat('+'); self.term()? };
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

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = if d.is_constant() { d.constant_term().inv() } else { None };
                let c = c.ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c);
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        let n = self.n();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(n, GaussRat::from_rational(BigRational::from_integer(v))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(j) = self.names.iter().position(|s| *s == name) {
                    Ok(SparsePoly::var(n, j))
                } else if name == "i" {
                    Ok(SparsePoly::constant(n, GaussRat::i()))
                } else {
                    Err(Error::Parse(format!("unknown symbol `{name}` (variables: {})", self.names.join(", "))))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            t => Err(Error::Parse(format!("unexpected {t:?}"))),
        }
    }
}

/// Parses `s` as a polynomial in the named variables.
pub fn parse_poly(s: &str, names: &[&str]) -> Result<SparsePoly> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, names };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// `x0, ..., x{n-1}`.
pub fn parse_projective(s: &str, n: usize) -> Result<SparsePoly> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_poly(s, &refs)
}

/// A univariate polynomial in `z`.
pub fn parse_univariate(s: &str) -> Result<SparsePoly> {
    parse_poly(s, &["z"])
}

/// An exact Gaussian rational such as `-1/2`, `3i` or `1/2 - i/3`.
pub fn parse_gauss(s: &str) -> Result<GaussRat> {
    let p = parse_poly(s, &[])?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    #[test]
    fn quadric() {
        let x = vars(3);
        let g = &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2]);
        assert_eq!(parse_projective("x0^2 + x1^2 + x2^2", 3).unwrap(), g);
        assert_eq!(parse_projective("(x0+x1)(x0-x1)", 3).unwrap(), &(&x[0] * &x[0]) - &(&x[1] * &x[1]));
    }

    #[test]
    fn coefficients() {
        assert_eq!(parse_gauss("1/2 + 3i").unwrap(), GaussRat::complex((1, 2), (3, 1)));
        assert_eq!(parse_gauss("-i/3").unwrap(), GaussRat::complex((0, 1), (-1, 3)));
        assert_eq!(parse_gauss("2^3").unwrap(), GaussRat::from_int(8));
        assert!(parse_gauss("1/0").is_err());
    }

    #[test]
    fn display_round_trip() {
        let p = parse_projective("(1/2 - 2i) x0 x1^2 - x2^3 + 7", 3).unwrap();
        assert_eq!(parse_projective(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn errors() {
        assert!(parse_univariate("z^").is_err());
        assert!(parse_univariate("w + 1").is_err());
        assert!(parse_univariate("1/z").is_err());
        assert!(parse_univariate("(z+1").is_err());
    }
}
