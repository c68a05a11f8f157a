//! Sparse polynomials in two variables over `F_q`, with the swap `x <-> y`
//! and decomposition into elementary symmetric polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Fq, FqElem};

/// Polynomial in `x, y`. Keys are `(deg_x, deg_y)`; lexicographic key order
/// is the monomial order with `x > y`, so the last key is the leading term.
///
/// Invariant: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    ctx: Fq,
    terms: BTreeMap<(u32, u32), u64>,
}

impl BivarPoly {
    pub fn zero(ctx: &Fq) -> Self {
        BivarPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }
    pub fn one(ctx: &Fq) -> Self {
        Self::monomial(ctx, 1, 0, 0)
    }
    pub fn x(ctx: &Fq) -> Self {
        Self::monomial(ctx, 1, 1, 0)
    }
    pub fn y(ctx: &Fq) -> Self {
        Self::monomial(ctx, 1, 0, 1)
    }
    pub fn constant(a: &FqElem) -> Self {
        Self::monomial(a.ctx(), a.raw(), 0, 0)
    }
    pub fn from_int(ctx: &Fq, n: i64) -> Self {
        Self::monomial(ctx, ctx.from_int_raw(n), 0, 0)
    }
    /// `c * x^a * y^b` for a packed coefficient.
    pub fn monomial(ctx: &Fq, c: u64, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((a, b), c);
        }
        BivarPoly { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Fq {
        &self.ctx
    }
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }
    /// Constant value, when constant.
    pub fn as_constant(&self) -> Option<FqElem> {
        self.is_constant().then(|| FqElem::from_raw(&self.ctx, self.terms.get(&(0, 0)).copied().unwrap_or(0)))
    }
    pub fn leading(&self) -> Option<((u32, u32), u64)> {
        self.terms.iter().next_back().map(|(&k, &v)| (k, v))
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    fn add_term(&mut self, k: (u32, u32), c: u64) {
        if c == 0 {
            return;
        }
        let f = &self.ctx;
        let e = self.terms.entry(k).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn scale_raw(&self, c: u64) -> Self {
        if c == 0 {
            return Self::zero(&self.ctx);
        }
        let f = &self.ctx;
        BivarPoly { ctx: f.clone(), terms: self.terms.iter().map(|(&k, &v)| (k, f.mul(v, c))).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under `x <-> y`.
    pub fn swap(&self) -> Self {
        BivarPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(&(a, b), &v)| ((b, a), v)).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(a, b), &v)| self.terms.get(&(b, a)) == Some(&v))
    }

    /// Exact quotient by `d`; errors when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let Some(((da, db), dc)) = d.leading() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.ctx;
        let inv = f.inv(dc)?;
        let mut r = self.clone();
        let mut q = Self::zero(f);
        while let Some(((ra, rb), rc)) = r.leading() {
            if ra < da || rb < db {
                return Err(Error::InexactDivision);
            }
            let c = f.mul(rc, inv);
            let (sa, sb) = (ra - da, rb - db);
            q.add_term((sa, sb), c);
            for (&(a, b), &v) in &d.terms {
                r.add_term((a + sa, b + sb), f.neg(f.mul(v, c)));
            }
        }
        Ok(q)
    }

    /// `g` with `g(x+y, xy) = self`, read with `x -> e1`, `y -> e2`;
    /// `None` when `self` is not symmetric.
    pub fn sym_decompose(&self) -> Option<Self> {
        if !self.is_symmetric() {
            return None;
        }
        let f = &self.ctx;
        let e1 = &Self::x(f) + &Self::y(f);
        let e2 = &Self::x(f) * &Self::y(f);
        let mut r = self.clone();
        let mut g = Self::zero(f);
        while let Some(((a, b), c)) = r.leading() {
            if a < b {
                return None;
            }
            g.add_term((a - b, b), c);
            let sub = (&e1.pow((a - b) as u64) * &e2.pow(b as u64)).scale_raw(c);
            r = &r - &sub;
        }
        Some(g)
    }

    /// `self(x+y, xy)`.
    pub fn compose_elementary(&self) -> Self {
        let f = &self.ctx;
        let e1 = &Self::x(f) + &Self::y(f);
        let e2 = &Self::x(f) * &Self::y(f);
        let mut acc = Self::zero(f);
        for (&(a, b), &c) in &self.terms {
            acc = &acc + &(&e1.pow(a as u64) * &e2.pow(b as u64)).scale_raw(c);
        }
        acc
    }

    /// Coordinates over `L^p` in the monomial basis `x^a y^b`, `a, b < p`:
    /// `self = sum c_{a,b}^p x^a y^b`, keyed by `(a, b)`.
    pub fn pth_power_decompose(&self) -> BTreeMap<(u32, u32), BivarPoly> {
        let f = &self.ctx;
        let p = f.p() as u32;
        let mut out: BTreeMap<(u32, u32), BivarPoly> = BTreeMap::new();
        for (&(a, b), &v) in &self.terms {
            out.entry((a % p, b % p)).or_insert_with(|| Self::zero(f)).add_term((a / p, b / p), f.pth_root_raw(v));
        }
        out
    }

    pub fn fmt_vars(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.ctx;
        let mono = |a: u32, v: &str| match a {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{a}")),
        };
        let mut terms = Vec::new();
        for (&(a, b), &c) in self.terms.iter().rev() {
            let m: Vec<String> = [mono(a, vx), mono(b, vy)].into_iter().flatten().collect();
            let cs = f.format_raw(c);
            terms.push(if m.is_empty() {
                cs
            } else if c == 1 {
                m.join("*")
            } else if f.term_count(c) == 1 {
                format!("{cs}*{}", m.join("*"))
            } else {
                format!("({cs})*{}", m.join("*"))
            });
        }
        terms.join("+")
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, o: &BivarPoly) -> BivarPoly {
        assert!(*self.ctx == *o.ctx, "polynomials over different fields");
        let mut r = self.clone();
        for (&k, &v) in &o.terms {
            r.add_term(k, v);
        }
        r
    }
}
impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        let f = &self.ctx;
        BivarPoly { ctx: f.clone(), terms: self.terms.iter().map(|(&k, &v)| (k, f.neg(v))).collect() }
    }
}
impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, o: &BivarPoly) -> BivarPoly {
        self + &(-o)
    }
}
impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, o: &BivarPoly) -> BivarPoly {
        assert!(*self.ctx == *o.ctx, "polynomials over different fields");
        let f = &self.ctx;
        let mut r = BivarPoly::zero(f);
        for (&(a, b), &u) in &self.terms {
            for (&(c, d), &v) in &o.terms {
                r.add_term((a + c, b + d), f.mul(u, v));
            }
        }
        r
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}
impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn power_sums_over_f7() {
        let f7 = FqCtx::prime(7).unwrap();
        let (x, y) = (BivarPoly::x(&f7), BivarPoly::y(&f7));
        let p2 = &x.pow(2) + &y.pow(2);
        assert_eq!(p2.sym_decompose().unwrap().fmt_vars("e1", "e2"), "e1^2+5*e2");
        let p3 = &x.pow(3) + &y.pow(3);
        assert_eq!(p3.sym_decompose().unwrap().fmt_vars("e1", "e2"), "e1^3+4*e1*e2");
        assert!(x.sym_decompose().is_none());
    }

    #[test]
    fn exact_division() {
        let f7 = FqCtx::prime(7).unwrap();
        let (x, y) = (BivarPoly::x(&f7), BivarPoly::y(&f7));
        let num = &x.pow(5) - &y.pow(5);
        let q = num.div_exact(&(&x - &y)).unwrap();
        assert_eq!(&q * &(&x - &y), num);
        assert_eq!(num.div_exact(&(&x + &y)), Err(Error::InexactDivision));
    }

    #[test]
    fn pth_power_coordinates() {
        let f7 = FqCtx::prime(7).unwrap();
        let (x, y) = (BivarPoly::x(&f7), BivarPoly::y(&f7));
        let a = &(&x.pow(8) * &y) + &y.pow(14);
        let d = a.pth_power_decompose();
        assert_eq!(d[&(1, 1)], x);
        assert_eq!(d[&(0, 0)], y.pow(2));
    }
}
