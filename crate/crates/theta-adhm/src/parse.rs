//! Expression grammar for elements and forms.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor factor*                 juxtaposition is the product
//! factor := atom ('^' ['-'] int)?
//! atom   := generator | scalar | '(' expr ')' | 'd(' expr ')' | 'star(' expr ')'
//! scalar := int | int '/' int | 'i' | 'mu' | 'lambda'
//! ```
//!
//! Generator names are those of the algebra (`z1`, `z1'`, `M[1,2,1]`, ...)
//! together with its named elements (`alpha`, `x`, `t1`, ...); a trailing
//! apostrophe on a named element means its adjoint.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::adhm::{self, Mode, MonadConfig};
use crate::dga::{Calculus, Form};
use crate::geom::{self, Geometry};
use crate::qsym;
use crate::reduce::IdealSpec;
use crate::scalar::{Rat, Scalar};
use crate::twistalg::{AlgebraSpec, Element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {name} at {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("unknown algebra {0}")]
    UnknownAlgebra(String),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

/// An algebra the parser and the reducer can work in.
pub struct ParseContext {
    pub name: String,
    pub spec: Arc<AlgebraSpec>,
    pub ideal: IdealSpec,
    pub named: BTreeMap<String, Element>,
    pub calc: Calculus,
}

impl ParseContext {
    pub fn plain(name: &str, spec: &Arc<AlgebraSpec>) -> ParseContext {
        ParseContext {
            name: name.into(),
            spec: spec.clone(),
            ideal: IdealSpec::new(spec, vec![]).expect("empty ideal"),
            named: BTreeMap::new(),
            calc: Calculus::standard(spec),
        }
    }

    /// Resolves `C4 | S7 | S4 | CP3 | SL2H | Sp2 | monad(k)`.
    pub fn named_algebra(name: &str, theta_zero: bool) -> Result<ParseContext, ParseError> {
        let from_geom = |pick: fn(&Geometry) -> &geom::NamedAlgebra, calc: fn(&Geometry) -> Calculus| {
            let g = Geometry::new(theta_zero);
            let a = pick(&g);
            ParseContext {
                name: a.name.clone(),
                spec: a.spec.clone(),
                ideal: a.ideal.clone(),
                    named: a.elements.clone(),
                calc: calc(&g),
            }
        };
        let twin = |s: Arc<AlgebraSpec>| if theta_zero { s.classical_twin() } else { s };
        Ok(match name {
            "C4" => from_geom(|g| &g.c4, |g| Calculus::standard(g.c4())),
            "S7" => from_geom(|g| &g.s7, |g| g.s7_calc.clone()),
            "CP3" => from_geom(|g| &g.cp3, |g| g.s7_calc.clone()),
            "S4" => from_geom(|g| &g.s4, |g| Calculus::full(&g.s4.spec)),
            "SL2H" | "Sp2" => {
                let spec = twin(Arc::new(qsym::quantum_group_spec()));
                let mut c = ParseContext::plain(name, &spec);
                c.calc = Calculus::full(&spec);
                if name == "Sp2" {
                    c.ideal = qsym::sp_ideal(&spec);
                }
                c
            }
            _ => {
                let k = name
                    .strip_prefix("monad(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.trim().parse::<usize>().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| ParseError::UnknownAlgebra(name.into()))?;
                let md = adhm::build_monad(&MonadConfig { theta_zero, ..MonadConfig::new(k, Mode::Symbolic) })
                    .map_err(|e| ParseError::UnknownAlgebra(e.to_string()))?;
                let mut c = ParseContext::plain(name, &md.spec);
                c.ideal = md.ideal();
                c.named = geom::distinguished(&md.spec);
                c
            }
        })
    }

    pub fn parse(&self, text: &str) -> Result<Value, ParseError> {
        let toks = lex(text)?;
        let mut p = Parser { ctx: self, toks, at: 0, end: text.len() };
        let v = p.expr()?;
        if let Some(t) = p.toks.get(p.at) {
            return Err(syntax(t.pos, format!("unexpected {}", t.kind)));
        }
        Ok(v)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element, ParseError> {
        match self.parse(text)? {
            Value::Elem(e) => Ok(e),
            Value::Form(_) => Err(syntax(0, "expected an element, found a form")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Elem(Element),
    Form(Form),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(e) => write!(f, "{e}"),
            Value::Form(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Num(String),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Num(s) | Kind::Ident(s) => write!(f, "'{s}'"),
            Kind::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn lex(s: &str) -> Result<Vec<Token>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() || c == '*' {
            // '*' is accepted as an explicit product sign
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token { kind: Kind::Num(s[st..i].into()), pos: st });
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            if i < b.len() && b[i] == b'[' {
                let close = s[i..].find(']').ok_or_else(|| syntax(i, "unclosed '['"))?;
                i += close + 1;
            }
            while i < b.len() && b[i] == b'\'' {
                i += 1;
            }
            out.push(Token { kind: Kind::Ident(s[st..i].into()), pos: st });
        } else if "+-^()".contains(c) {
            out.push(Token { kind: Kind::Sym(c), pos: i });
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a ParseContext,
    toks: Vec<Token>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Kind> {
        self.toks.get(self.at).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Kind::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = negate(acc);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.add(acc, t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.add(acc, negate(t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Kind::Num(_)) | Some(Kind::Ident(_)) | Some(Kind::Sym('(')))
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        if !self.starts_factor() {
            return Err(syntax(self.pos(), "expected a factor"));
        }
        let mut acc = self.factor()?;
        while self.starts_factor() {
            let f = self.factor()?;
            acc = self.mul(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let neg = self.eat('-');
        let n: u32 = match self.peek() {
            Some(Kind::Num(s)) if !s.contains('/') => s.parse().map_err(|_| syntax(pos, "exponent too large"))?,
            _ => return Err(syntax(pos, "expected an integer exponent")),
        };
        self.at += 1;
        let e = match base {
            Value::Elem(e) => e,
            Value::Form(_) => return Err(syntax(pos, "powers of forms are not defined")),
        };
        if !neg {
            return Ok(Value::Elem(e.pow(n)));
        }
        let inv = e
            .as_constant()
            .and_then(|s| s.unit_inverse())
            .ok_or_else(|| syntax(pos, "negative powers need an invertible scalar"))?;
        Ok(Value::Elem(Element::constant(&self.ctx.spec, inv.pow(n))))
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        let spec = &self.ctx.spec;
        let kind = self.peek().cloned().ok_or_else(|| syntax(pos, "unexpected end of input"))?;
        self.at += 1;
        match kind {
            Kind::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Kind::Num(s) => {
                let r = match s.split_once('/') {
                    Some((n, d)) => {
                        let (n, d): (i64, i64) = (n.parse().map_err(|_| syntax(pos, "numerator too large"))?, d.parse().map_err(|_| syntax(pos, "denominator too large"))?);
                        if d == 0 {
                            return Err(syntax(pos, "zero denominator"));
                        }
                        Scalar::rat(n, d)
                    }
                    None => Scalar::int(s.parse().map_err(|_| syntax(pos, "integer too large"))?),
                };
                Ok(Value::Elem(Element::constant(spec, r)))
            }
            Kind::Ident(name) if (name == "d" || name == "star") && self.peek() == Some(&Kind::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(if name == "d" {
                    Value::Form(match v {
                        Value::Elem(e) => self.ctx.calc.d_elem(&e),
                        Value::Form(f) => self.ctx.calc.d(&f),
                    })
                } else {
                    match v {
                        Value::Elem(e) => Value::Elem(e.star()),
                        Value::Form(f) => Value::Form(f.star()),
                    }
                })
            }
            Kind::Ident(name) => self.ident(&name, pos).map(Value::Elem),
            Kind::Sym(c) => Err(syntax(pos, format!("unexpected '{c}'"))),
        }
    }

    fn ident(&self, name: &str, pos: usize) -> Result<Element, ParseError> {
        let spec = &self.ctx.spec;
        if let Some(g) = spec.lookup(name) {
            return Ok(Element::generator(spec, g));
        }
        if let Some(e) = self.ctx.named.get(name) {
            return Ok(e.clone());
        }
        match name {
            "i" => return Ok(Element::constant(spec, Scalar::i())),
            "mu" => return Ok(Element::constant(spec, Scalar::mu())),
            "lambda" => return Ok(Element::constant(spec, Scalar::lambda())),
            _ => {}
        }
        if let Some(base) = name.strip_suffix('\'') {
            if let Ok(e) = self.ident(base, pos) {
                return Ok(e.star());
            }
        }
        Err(ParseError::UnknownGenerator { pos, name: name.into() })
    }

    fn form(&self, v: Value) -> Form {
        match v {
            Value::Elem(e) => self.ctx.calc.form(&e),
            Value::Form(f) => f,
        }
    }

    fn add(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(&x + &y),
            (x, y) => Value::Form(self.form(x).add(&self.form(y))),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(&x * &y),
            (Value::Elem(x), Value::Form(f)) => Value::Form(f.lmul(&x)),
            (Value::Form(f), Value::Elem(y)) => Value::Form(f.rmul(&y)),
            (Value::Form(f), Value::Form(g)) => Value::Form(f.wedge(&g)),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Elem(e) => Value::Elem(e.neg()),
        Value::Form(f) => Value::Form(f.neg()),
    }
}

/// Rational parsed from `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| Rat::new(n, d))
        }
        None => s.trim().parse().ok().map(Rat::int),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> ParseContext {
        ParseContext::named_algebra("C4", false).unwrap()
    }

    #[test]
    fn reordering_uses_the_phase() {
        let c = c4();
        assert!(c.parse_element("z3 z1 - mu z1 z3").unwrap().is_zero());
        assert!(!c.parse_element("z3 z1 - z1 z3").unwrap().is_zero());
    }

    #[test]
    fn differentials_and_wedges() {
        let c = c4();
        let Value::Form(f) = c.parse("d(z1) d(z2')").unwrap() else { panic!("expected a form") };
        let parts = f.bidegree_split();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn four_sphere_phase() {
        let c = ParseContext::named_algebra("S4", false).unwrap();
        assert!(c.parse_element("alpha beta - lambda beta alpha").unwrap().is_zero());
    }

    #[test]
    fn named_elements_and_stars() {
        let c = c4();
        let a = c.parse_element("alpha'").unwrap();
        assert_eq!(a, c.parse_element("star(alpha)").unwrap());
        assert_eq!(c.parse_element("z1'").unwrap(), c.parse_element("star(z1)").unwrap());
    }

    #[test]
    fn scalars_and_powers() {
        let c = c4();
        assert!(c.parse_element("mu^-1 mu - 1").unwrap().is_zero());
        assert!(c.parse_element("lambda - mu^2").unwrap().is_zero());
        assert!(c.parse_element("1/2 z1 + 1/2 z1 - z1").unwrap().is_zero());
        assert!(c.parse_element("(z1 + z2)^2 - z1^2 - z1 z2 - z2 z1 - z2^2").unwrap().is_zero());
        assert!(c.parse_element("i i + 1").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let c = c4();
        assert_eq!(c.parse("z1 + q7").unwrap_err(), ParseError::UnknownGenerator { pos: 5, name: "q7".into() });
        assert!(matches!(c.parse("z1 + "), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(c.parse("(z1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(c.parse("z1^-1"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(ParseContext::named_algebra("T5", false), Err(ParseError::UnknownAlgebra(_))));
    }

    #[test]
    fn bracketed_generators() {
        let c = ParseContext::named_algebra("monad(1)", false).unwrap();
        let m = c.parse_element("M[1,2,1] M[1,2,1]'").unwrap();
        assert_eq!(m, c.parse_element("star(M[1,2,1]') star(M[1,2,1])").unwrap());
    }

    #[test]
    fn printing_round_trips() {
        let c = c4();
        for s in ["alpha beta' - 3/2 mu^-1 x", "(1 - mu) z1 z3' + i z2^2", "d(z1) z2 - z3 d(z4')"] {
            let v = c.parse(s).unwrap();
            assert_eq!(c.parse(&v.to_string()).unwrap(), v, "{s}");
        }
    }
}
