//! Canonical text, LaTeX and JSON forms of [`Poly`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Poly, Rational, Var, VarSet};
use crate::error::{Error, Result};

/// `num/den`, or `num` when the denominator is 1.
pub fn rational_text(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn monomial_factors(vars: &VarSet, m: &Monomial, latex: bool) -> Vec<String> {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = vars.name(i);
            if latex {
                let base = latex_name(name);
                if e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            } else if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect()
}

fn latex_name(name: &str) -> String {
    let split = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    match split {
        Some(i) if i > 0 => format!("{}_{{{}}}", &name[..i], &name[i..]),
        _ => name.to_string(),
    }
}

impl Poly {
    pub(crate) fn monomial_text(&self, m: &Monomial) -> String {
        let f = monomial_factors(&self.vars, m, false);
        if f.is_empty() {
            "1".into()
        } else {
            f.join("*")
        }
    }

    /// Parses the canonical text form, e.g. `16/25*q1^3 - 24/5*q1*q3 + 3*q2^2`.
    pub fn parse(s: &str, vars: &Arc<VarSet>) -> Result<Poly> {
        Parser::new(s, vars).parse()
    }

    /// LaTeX rendering with terms in canonical order.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors = monomial_factors(&self.vars, m, true);
            let coeff = if a.denom().is_one() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if factors.is_empty() {
                out.push_str(&coeff);
            } else {
                if !a.is_one() {
                    out.push_str(&coeff);
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }
}

pub(super) fn poly_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors = monomial_factors(&p.vars, m, false);
        if factors.is_empty() {
            out.push_str(&rational_text(&a));
        } else {
            if !a.is_one() {
                out.push_str(&rational_text(&a));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a Arc<VarSet>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a Arc<VarSet>) -> Self {
        Parser { src, pos: 0, vars }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => self.pos += c.len_utf8(),
            _ => return None,
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        Some(&self.src[start..self.pos])
    }

    fn parse(mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.vars);
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                if first {
                    return Err(self.err("empty input"));
                }
                break;
            }
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                return Err(self.err("expected `+` or `-`"));
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, if sign < 0 { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = Rational::one();
        loop {
            if let Some(d) = self.digits() {
                let mut c: Rational = Rational::from_integer(d.parse().unwrap());
                if self.eat('/') {
                    let den = self
                        .digits()
                        .ok_or_else(|| self.err("expected denominator"))?;
                    let den: BigInt = den.parse().unwrap();
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    c /= Rational::from_integer(den);
                }
                coeff *= c;
            } else if let Some(name) = self.ident() {
                let i = self
                    .vars
                    .index_of(name)
                    .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                let e = if self.eat('^') {
                    let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                    d.parse::<u32>().map_err(|_| self.err("bad exponent"))?
                } else {
                    1
                };
                exps[i] += e;
            } else {
                return Err(self.err("expected number or variable"));
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// Wire form: `{"vars":[{"name":..,"weight":..}],"terms":[{"coeff":"n/d","exps":[..]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<Var>,
    pub terms: Vec<TermJson>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            vars: p.vars.vars().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: format!("{}/{}", c.numer(), c.denom()),
                    exps: m.exps().to_vec(),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn into_poly(self, vars: Option<&Arc<VarSet>>) -> Result<Poly> {
        let vs = match vars {
            Some(v) if v.vars() == self.vars.as_slice() => v.clone(),
            _ => VarSet::new(self.vars),
        };
        let mut p = Poly::zero(&vs);
        for t in self.terms {
            if t.exps.len() != vs.len() {
                return Err(Error::Parse(format!(
                    "term has {} exponents, expected {}",
                    t.exps.len(),
                    vs.len()
                )));
            }
            p.add_term(Monomial::new(t.exps), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        j.into_poly(None).map_err(serde::de::Error::custom)
    }
}
