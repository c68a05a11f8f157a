//! Text syntax for field elements, polynomials and tower elements.
//!
//! `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | atom ('^' '-'? INT)?`, `atom := INT | IDENT | '(' expr ')'`.
//! Multiplication is always explicit.

use crate::error::{Error, Result};
use crate::funcfield::{BivarPoly, Poly, RatFunc};
use crate::gf::{Fq, FqElem};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(u64),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[st..i].parse::<u64>().or_else(|_| err(st, "integer too large"))?;
            out.push((Tok::Int(n), st));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].to_string()), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return err(i, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Result<Expr> {
        let mut a = self.term()?;
        loop {
            if self.eat('+') {
                a = Expr::Add(Box::new(a), Box::new(self.term()?));
            } else if self.eat('-') {
                a = Expr::Sub(Box::new(a), Box::new(self.term()?));
            } else {
                return Ok(a);
            }
        }
    }
    fn term(&mut self) -> Result<Expr> {
        let mut a = self.unary()?;
        loop {
            if self.eat('*') {
                a = Expr::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.eat('/') {
                a = Expr::Div(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }
    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let a = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = i64::try_from(*n).or_else(|_| err(pos, "exponent too large"))?;
                    self.i += 1;
                    return Ok(Expr::Pow(Box::new(a), if neg { -n } else { n }));
                }
                _ => return err(pos, "expected integer exponent"),
            }
        }
        Ok(a)
    }
    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Var(s, pos))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return err(self.pos(), "expected ')'");
                }
                Ok(e)
            }
            _ => err(pos, "expected a number, a name or '('"),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { toks, i: 0, end: s.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return err(p.pos(), "trailing input");
    }
    Ok(e)
}

/// Interpretation of the syntax in a concrete ring.
pub trait Evaluator {
    type V: Clone;
    fn int(&self, n: u64) -> Result<Self::V>;
    fn var(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Result<Self::V>;
    fn pow(&self, a: &Self::V, e: i64) -> Result<Self::V>;
}

pub fn eval<E: Evaluator>(e: &Expr, ev: &E) -> Result<E::V> {
    match e {
        Expr::Int(n) => ev.int(*n),
        Expr::Var(s, pos) => ev.var(s, *pos),
        Expr::Add(a, b) => ev.add(&eval(a, ev)?, &eval(b, ev)?),
        Expr::Sub(a, b) => ev.sub(&eval(a, ev)?, &eval(b, ev)?),
        Expr::Mul(a, b) => ev.mul(&eval(a, ev)?, &eval(b, ev)?),
        Expr::Div(a, b) => ev.div(&eval(a, ev)?, &eval(b, ev)?),
        Expr::Neg(a) => ev.neg(&eval(a, ev)?),
        Expr::Pow(a, n) => ev.pow(&eval(a, ev)?, *n),
    }
}

pub(crate) fn int_in(ctx: &Fq, n: u64) -> u64 {
    n % ctx.p()
}

/// The field generator `z`, rejected over prime fields.
pub(crate) fn field_gen(ctx: &Fq, pos: usize) -> Result<FqElem> {
    FqElem::gen(ctx).ok_or(Error::Parse { pos, msg: "prime field has no generator z".into() })
}

pub(crate) fn unknown<T>(name: &str, pos: usize) -> Result<T> {
    err(pos, format!("unknown name '{name}'"))
}

/// Elements of `F_q`.
pub struct FqEval(pub Fq);

impl Evaluator for FqEval {
    type V = FqElem;
    fn int(&self, n: u64) -> Result<FqElem> {
        Ok(FqElem::from_raw(&self.0, int_in(&self.0, n)))
    }
    fn var(&self, name: &str, pos: usize) -> Result<FqElem> {
        match name {
            "z" => field_gen(&self.0, pos),
            _ => unknown(name, pos),
        }
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        a.add(b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        a.sub(b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        a.mul(b)
    }
    fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        a.div(b)
    }
    fn neg(&self, a: &FqElem) -> Result<FqElem> {
        Ok(a.neg())
    }
    fn pow(&self, a: &FqElem, e: i64) -> Result<FqElem> {
        a.pow(e)
    }
}

/// Elements of `F_q(x)`.
pub struct RatFuncEval(pub Fq);

impl Evaluator for RatFuncEval {
    type V = RatFunc;
    fn int(&self, n: u64) -> Result<RatFunc> {
        Ok(RatFunc::from_int(&self.0, int_in(&self.0, n) as i64))
    }
    fn var(&self, name: &str, pos: usize) -> Result<RatFunc> {
        match name {
            "x" => Ok(RatFunc::x(&self.0)),
            "z" => Ok(RatFunc::constant(&field_gen(&self.0, pos)?)),
            _ => unknown(name, pos),
        }
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a + b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a - b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a * b)
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        a.div(b)
    }
    fn neg(&self, a: &RatFunc) -> Result<RatFunc> {
        Ok(-a)
    }
    fn pow(&self, a: &RatFunc, e: i64) -> Result<RatFunc> {
        a.pow(e)
    }
}

/// Polynomials of `F_q(x, y)`; division must be exact.
pub struct BivarEval(pub Fq);

impl Evaluator for BivarEval {
    type V = BivarPoly;
    fn int(&self, n: u64) -> Result<BivarPoly> {
        Ok(BivarPoly::from_int(&self.0, int_in(&self.0, n) as i64))
    }
    fn var(&self, name: &str, pos: usize) -> Result<BivarPoly> {
        match name {
            "x" => Ok(BivarPoly::x(&self.0)),
            "y" => Ok(BivarPoly::y(&self.0)),
            "z" => Ok(BivarPoly::constant(&field_gen(&self.0, pos)?)),
            _ => unknown(name, pos),
        }
    }
    fn add(&self, a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
        Ok(a + b)
    }
    fn sub(&self, a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
        Ok(a - b)
    }
    fn mul(&self, a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
        Ok(a * b)
    }
    fn div(&self, a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
        a.div_exact(b)
    }
    fn neg(&self, a: &BivarPoly) -> Result<BivarPoly> {
        Ok(-a)
    }
    fn pow(&self, a: &BivarPoly, e: i64) -> Result<BivarPoly> {
        if e < 0 {
            return Err(Error::Invalid("negative power of a polynomial".into()));
        }
        Ok(a.pow(e as u64))
    }
}

pub fn parse_fq(ctx: &Fq, s: &str) -> Result<FqElem> {
    eval(&parse(s)?, &FqEval(ctx.clone()))
}

pub fn parse_ratfunc(ctx: &Fq, s: &str) -> Result<RatFunc> {
    eval(&parse(s)?, &RatFuncEval(ctx.clone()))
}

/// A polynomial in `x`; errors when the text denotes a proper fraction.
pub fn parse_poly(ctx: &Fq, s: &str) -> Result<Poly> {
    let r = parse_ratfunc(ctx, s)?;
    r.as_poly().cloned().ok_or_else(|| Error::Invalid(format!("'{s}' is not a polynomial")))
}

pub fn parse_bivar(ctx: &Fq, s: &str) -> Result<BivarPoly> {
    eval(&parse(s)?, &BivarEval(ctx.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn round_trips_canonical_text() {
        let f4 = FqCtx::builtin(2, 2).unwrap();
        for s in ["(z+1)*x^2+z*x+1", "x^3+z", "0", "(x+1)/x^2"] {
            let r = parse_ratfunc(&f4, s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        let f7 = FqCtx::prime(7).unwrap();
        assert_eq!(parse_fq(&f7, "3/2").unwrap().to_string(), "5");
        assert!(parse_fq(&f7, "z").is_err());
        assert_eq!(parse_bivar(&f7, "(x^2-y^2)/(x-y)").unwrap().to_string(), "x+y");
    }

    #[test]
    fn reports_positions() {
        let f2 = FqCtx::prime(2).unwrap();
        match parse_ratfunc(&f2, "x + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_ratfunc(&f2, "x^").is_err());
        assert!(parse_ratfunc(&f2, "x)").is_err());
    }
}
