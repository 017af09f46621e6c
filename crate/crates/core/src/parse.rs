//! Canonical text and JSON formats for polynomials.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::coeff::{fmt_rational, Coeff, Rational};
use crate::error::{Error, Result};
use crate::mpoly::{Monomial, MPoly, QPoly, Vars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(s[st..i].parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[st..i].to_string()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Vars,
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

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let k = d
                    .constant_value()
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                if k.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&(Rational::one() / k));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(QPoly::constant(self.vars.clone(), Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                QPoly::var(self.vars.clone(), &name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses infix text over a fixed variable list.
pub fn parse_q(s: &str, vars: &Vars) -> Result<QPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Identifiers appearing in `s`, in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for t in lex(s)? {
        if let Tok::Ident(n) = t {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

fn write_monomial(out: &mut String, vars: &[String], m: &Monomial) {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&vars[i]);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical text: terms in descending order, ` + ` / ` - ` separators.
pub fn to_text<C: Coeff>(p: &MPoly<C>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let q = c.to_rational();
        let neg = q.is_negative();
        let a = q.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&fmt_rational(&a));
        } else {
            if !a.is_one() {
                out.push_str(&fmt_rational(&a));
                out.push('*');
            }
            write_monomial(&mut out, p.vars(), m);
        }
    }
    out
}

impl<C: Coeff> std::fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&to_text(self))
    }
}

/// Canonical JSON: `{"vars":[...],"terms":[[num,den,[e...]],...]}`.
pub fn to_json<C: Coeff>(p: &MPoly<C>) -> String {
    let mut out = String::from("{\"vars\":[");
    for (i, v) in p.vars().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&serde_json::to_string(v).expect("string serialises"));
    }
    out.push_str("],\"terms\":[");
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let q = c.to_rational();
        let _ = write!(out, "[{},{},[", q.numer(), q.denom());
        for (i, e) in m.exps().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{e}");
        }
        out.push_str("]]");
    }
    out.push_str("]}");
    out
}

fn json_int(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Parse(format!("expected integer, got {v}"))),
    };
    s.parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

pub fn from_json_value(v: &Value) -> Result<QPoly> {
    let bad = |m: &str| Error::Parse(m.to_string());
    let vars: Vec<String> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `vars`"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
        .collect::<Result<_>>()?;
    let vars: Vars = vars.into();
    let mut terms = Vec::new();
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))? {
        let t = t.as_array().ok_or_else(|| bad("term must be an array"))?;
        if t.len() != 3 {
            return Err(bad("term must be [num, den, exponents]"));
        }
        let num = json_int(&t[0])?;
        let den = json_int(&t[1])?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        let exps = t[2].as_array().ok_or_else(|| bad("exponents must be an array"))?;
        if exps.len() != vars.len() {
            return Err(Error::PointArity { expected: vars.len(), got: exps.len() });
        }
        let mut m = Monomial::one(vars.len());
        for (i, e) in exps.iter().enumerate() {
            m.0[i] = e
                .as_u64()
                .and_then(|x| u16::try_from(x).ok())
                .ok_or_else(|| bad("exponent out of range"))?;
        }
        terms.push((m, Rational::new(num, den)));
    }
    Ok(QPoly::from_terms(vars, terms))
}

pub fn from_json(s: &str) -> Result<QPoly> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_json_value(&v)
}

/// Accepts either format; text input needs a variable list.
pub fn parse_any(s: &str, vars: Option<&Vars>) -> Result<QPoly> {
    if s.trim_start().starts_with('{') {
        return from_json(s);
    }
    match vars {
        Some(v) => parse_q(s, v),
        None => {
            let v: Vars = identifiers(s)?.into();
            parse_q(s, &v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars_from;

    #[test]
    fn text_round_trip() {
        let v = vars_from(&["x0", "x1", "x2"]);
        for s in [
            "27*x0^2 + 4*x1^3",
            "-x0*x1 + 3/4*x2 - 5",
            "0",
            "-1",
            "x0^3 - 2*x0*x1^2*x2 + x2^10",
        ] {
            let p = parse_q(s, &v).unwrap();
            assert_eq!(to_text(&p), s);
            assert_eq!(parse_q(&to_text(&p), &v).unwrap(), p);
        }
    }

    #[test]
    fn parser_normalises() {
        let v = vars_from(&["x", "y"]);
        let p = parse_q("(x + y)^2 - 2*x*y - y^2 / 2", &v).unwrap();
        assert_eq!(to_text(&p), "x^2 + 1/2*y^2");
        assert!(parse_q("x / y", &v).is_err());
        assert!(parse_q("z", &v).is_err());
        assert!(parse_q("x +", &v).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = vars_from(&["x0", "x1"]);
        let p = parse_q("27*x0^2 - 4/3*x1^3 + 123456789012345678901234567890", &v).unwrap();
        let j = to_json(&p);
        assert_eq!(
            j,
            "{\"vars\":[\"x0\",\"x1\"],\"terms\":[[27,1,[2,0]],[-4,3,[0,3]],[123456789012345678901234567890,1,[0,0]]]}"
        );
        assert_eq!(from_json(&j).unwrap(), p);
        let quoted = "{\"vars\":[\"x0\",\"x1\"],\"terms\":[[\"27\",\"1\",[2,0]]]}";
        assert_eq!(to_text(&from_json(quoted).unwrap()), "27*x0^2");
    }
}
