//! Entry syntax for matrices in problem documents: polynomials in z with
//! coefficients in R, e.g. `z - eps`, `(1+u)*z^2 + w`.
//!
//! Identifiers are the single-symbol basis names of R, `z` (series only)
//! and `w`, the generator of F_q when q is not prime.

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::zseries::ZSeries;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[start..i].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|_| Error::Invalid(format!("number too large in {s:?}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Invalid(format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a FdAlgebra,
    n: usize,
    allow_z: bool,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!("{msg} in {:?}", self.src))
    }

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

    fn sum(&mut self) -> Result<ZSeries> {
        let alg = self.alg;
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg(alg);
        }
        loop {
            if self.eat('+') {
                acc = acc.add(alg, &self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(alg, &self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<ZSeries> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.alg, &self.power()?);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // Juxtaposition: 2z, (1+u)z.
                acc = acc.mul(self.alg, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<ZSeries> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let Some(Tok::Num(e)) = self.peek().cloned() else {
            return Err(self.err("expected an exponent"));
        };
        self.pos += 1;
        let mut acc = ZSeries::one(self.alg, self.n);
        for _ in 0..e {
            acc = acc.mul(self.alg, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ZSeries> {
        let alg = self.alg;
        let n = self.n;
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(ZSeries::constant(alg, &alg.from_int(v), n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "z" {
                    if !self.allow_z {
                        return Err(self.err("z is not allowed here"));
                    }
                    return Ok(ZSeries::z(alg, n));
                }
                if let Some(i) = alg.names().iter().position(|b| *b == name) {
                    return Ok(ZSeries::constant(alg, &alg.basis(i), n));
                }
                let f = alg.field();
                if name == "w" && f.e() > 1 {
                    return Ok(ZSeries::constant(alg, &alg.from_fq(f.from_coeffs(&[0, 1])), n));
                }
                Err(self.err(&format!("unknown symbol {name:?}")))
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse(alg: &FdAlgebra, s: &str, n: usize, allow_z: bool) -> Result<ZSeries> {
    let mut p = Parser { toks: lex(s)?, pos: 0, alg, n, allow_z, src: s };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// A power series known to precision n.
pub fn parse_series(alg: &FdAlgebra, s: &str, n: usize) -> Result<ZSeries> {
    parse(alg, s, n, true)
}

/// A polynomial in z, with enough precision to hold every term.
pub fn parse_poly(alg: &FdAlgebra, s: &str, max_degree: usize) -> Result<ZSeries> {
    parse(alg, s, max_degree + 1, true)
}

pub fn parse_element(alg: &FdAlgebra, s: &str) -> Result<crate::algebra::AlgElem> {
    Ok(parse(alg, s, 1, false)?.coeffs[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    #[test]
    fn expressions() {
        let f = FqField::new(2).unwrap();
        let r = FdAlgebra::truncated(&f, 2, "eps").unwrap();
        let s = parse_series(&r, "z - eps", 4).unwrap();
        assert_eq!(s.format(&r), "eps + z + O(z^4)");
        let s = parse_series(&r, "(1+eps)z^2", 4).unwrap();
        assert_eq!(s.format(&r), "(1 + eps)*z^2 + O(z^4)");
        assert!(parse_element(&r, "z").is_err());
        assert!(parse_element(&r, "u").is_err());
        assert_eq!(parse_element(&r, "3").unwrap(), r.one());
        let f4 = FdAlgebra::base_field(&FqField::new(4).unwrap()).unwrap();
        assert_eq!(parse_element(&f4, "w*w").unwrap(), parse_element(&f4, "w + 1").unwrap());
    }
}
