//! Parser for coefficient expressions.
//!
//! Accepted forms: signed integer and rational literals, `i`, declared
//! parameter names, `conj(...)`, `+ - * ^`, parentheses, and division by a
//! subexpression that evaluates to a nonzero constant (`(x+1)/2` is fine,
//! `1/x` is not). A literal like `2i` is read as `2*i`.

use super::gauss::GaussianRational;
use super::params::ParamSet;
use super::poly::Scalar;
use super::ScalarError;
use num::{BigInt, BigRational};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    I,
    Ident(String),
    Conj,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>, ScalarError> {
    let bytes: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' => {
                toks.push(Tok::Plus);
                k += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                k += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                k += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                k += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                k += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                k += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let lit: String = bytes[start..k].iter().collect();
                let n: BigInt = lit.parse().expect("digit run");
                toks.push(Tok::Num(n));
                let next_is_bare_i = k < bytes.len()
                    && bytes[k] == 'i'
                    && bytes
                        .get(k + 1)
                        .is_none_or(|c| !c.is_ascii_alphanumeric() && *c != '_');
                if next_is_bare_i {
                    toks.push(Tok::Star);
                    toks.push(Tok::I);
                    k += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == '_') {
                    k += 1;
                }
                let name: String = bytes[start..k].iter().collect();
                match name.as_str() {
                    "i" => toks.push(Tok::I),
                    "conj" => toks.push(Tok::Conj),
                    _ => toks.push(Tok::Ident(name)),
                }
            }
            other => {
                return Err(ScalarError::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    params: &'a Arc<ParamSet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ScalarError> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(ScalarError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.try_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let divisor = self.unary()?;
                    let c = divisor
                        .as_constant()
                        .ok_or_else(|| ScalarError::NonConstantDivisor(divisor.render_plain()))?;
                    acc = acc.div_constant(&c)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let exp: u32 = n
                        .try_into()
                        .map_err(|_| ScalarError::Parse("exponent out of range".into()))?;
                    return Ok(base.pow(exp));
                }
                got => return Err(ScalarError::Parse(format!("expected exponent, found {got:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Scalar::constant(
                self.params,
                GaussianRational::from_rational(BigRational::from_integer(n)),
            )),
            Some(Tok::I) => Ok(Scalar::constant(self.params, GaussianRational::i())),
            Some(Tok::Ident(name)) => Scalar::param(self.params, &name),
            Some(Tok::Conj) => {
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner.conjugate())
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            got => Err(ScalarError::Parse(format!("expected a value, found {got:?}"))),
        }
    }
}

/// Parses an expression over the given parameter set.
pub fn parse_scalar(params: &Arc<ParamSet>, input: &str) -> Result<Scalar, ScalarError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, params };
    let s = p.expr()?;
    match p.peek() {
        None => Ok(s),
        Some(t) => Err(ScalarError::Parse(format!("trailing input at {t:?}"))),
    }
}

/// Parses a constant, e.g. `2`, `-1/3`, `1+2i`.
pub fn parse_gaussian(input: &str) -> Result<GaussianRational, ScalarError> {
    let set = ParamSet::empty();
    let s = parse_scalar(&set, input)?;
    s.as_constant()
        .ok_or_else(|| ScalarError::Parse(format!("'{input}' is not a constant")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::params::Parameter;

    fn set() -> Arc<ParamSet> {
        ParamSet::new(vec![
            Parameter::real("t2"),
            Parameter::real("lambda"),
            Parameter::real("rho"),
            Parameter::complex("D"),
        ])
        .unwrap()
    }

    #[test]
    fn parses_the_reference_coefficient() {
        let s = set();
        let p = parse_scalar(&s, "(1/2)*t2*(lambda^2 + rho^2 - D - conj(D))").unwrap();
        let t2 = Scalar::param(&s, "t2").unwrap();
        let lam = Scalar::param(&s, "lambda").unwrap();
        let rho = Scalar::param(&s, "rho").unwrap();
        let d = Scalar::param(&s, "D").unwrap();
        let expected = t2
            .try_mul(
                &lam.pow(2)
                    .try_add(&rho.pow(2))
                    .unwrap()
                    .try_sub(&d.try_add(&d.conjugate()).unwrap())
                    .unwrap(),
            )
            .unwrap()
            .scale(&GaussianRational::ratio(1, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_gaussian_literals() {
        assert_eq!(parse_gaussian("2").unwrap(), GaussianRational::from_int(2));
        assert_eq!(parse_gaussian("-1/3").unwrap(), GaussianRational::ratio(-1, 3));
        let v = parse_gaussian("1+2i").unwrap();
        assert_eq!(v, parse_gaussian("1 + 2*i").unwrap());
        assert_eq!(parse_gaussian("(1/2-3/4*i)").unwrap().conj(), parse_gaussian("1/2+3/4i").unwrap());
    }

    #[test]
    fn division_by_nonconstants_is_rejected() {
        let s = set();
        assert!(matches!(
            parse_scalar(&s, "1/lambda"),
            Err(ScalarError::NonConstantDivisor(_))
        ));
        assert!(matches!(parse_scalar(&s, "lambda/0"), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn roundtrips_through_plain_rendering() {
        let s = set();
        for src in [
            "(1/2)*t2*(lambda^2 + rho^2 - D - conj(D))",
            "i*D - conj(D)*t2^3 + 5/7",
            "-lambda",
            "0",
        ] {
            let p = parse_scalar(&s, src).unwrap();
            let q = parse_scalar(&s, &p.render_plain()).unwrap();
            assert_eq!(p, q, "rendering of {src} did not roundtrip");
        }
    }
}
