use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::gf2;
use crate::error::{Error, Result};
use crate::gf::{Fq, FqElem};

/// Dense univariate polynomial over `F_q`, little-endian packed coefficients.
///
/// Invariant: no trailing zero coefficient, so the zero polynomial has an
/// empty coefficient vector and `degree() == None`.
#[derive(Clone)]
pub struct Poly {
    ctx: Fq,
    c: Vec<u64>,
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl Poly {
    pub fn zero(ctx: &Fq) -> Self {
        Poly { ctx: ctx.clone(), c: Vec::new() }
    }
    pub fn one(ctx: &Fq) -> Self {
        Poly { ctx: ctx.clone(), c: vec![1] }
    }
    pub fn x(ctx: &Fq) -> Self {
        Poly { ctx: ctx.clone(), c: vec![0, 1] }
    }
    /// `c * x^d` for a packed coefficient.
    pub fn monomial(ctx: &Fq, c: u64, d: usize) -> Self {
        if c == 0 {
            return Self::zero(ctx);
        }
        let mut v = vec![0; d + 1];
        v[d] = c;
        Poly { ctx: ctx.clone(), c: v }
    }
    pub fn constant(a: &FqElem) -> Self {
        Self::from_coeffs(a.ctx(), vec![a.raw()])
    }
    pub fn from_int(ctx: &Fq, n: i64) -> Self {
        Self::from_coeffs(ctx, vec![ctx.from_int_raw(n)])
    }
    /// From packed coefficients; each must be below `q`.
    pub fn from_coeffs(ctx: &Fq, mut c: Vec<u64>) -> Self {
        debug_assert!(c.iter().all(|&v| v < ctx.q()));
        trim(&mut c);
        Poly { ctx: ctx.clone(), c }
    }
    pub fn from_elems(ctx: &Fq, c: &[FqElem]) -> Result<Self> {
        if c.iter().any(|e| **e.ctx() != **ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_coeffs(ctx, c.iter().map(|e| e.raw()).collect()))
    }

    pub fn ctx(&self) -> &Fq {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
    pub fn coeff_raw(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn coeff(&self, i: usize) -> FqElem {
        FqElem::from_raw(&self.ctx, self.coeff_raw(i))
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with `-1` standing in for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    pub fn lc_raw(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn lc(&self) -> FqElem {
        FqElem::from_raw(&self.ctx, self.lc_raw())
    }
    pub fn is_monic(&self) -> bool {
        self.lc_raw() == 1
    }
    pub fn term_count(&self) -> usize {
        self.c.iter().filter(|&&v| v != 0).count()
    }

    fn is_gf2(&self) -> bool {
        self.ctx.p() == 2 && self.ctx.k() == 1
    }

    fn check(&self, o: &Poly) {
        assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx, "polynomials over different fields");
    }

    pub fn same_field(&self, o: &Poly) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx
    }

    pub fn scale_raw(&self, a: u64) -> Poly {
        if a == 0 {
            return Poly::zero(&self.ctx);
        }
        if a == 1 {
            return self.clone();
        }
        let c = self.c.iter().map(|&v| self.ctx.mul(v, a)).collect();
        Poly { ctx: self.ctx.clone(), c }
    }
    pub fn scale(&self, a: &FqElem) -> Poly {
        self.scale_raw(a.raw())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lc_raw() {
            0 | 1 => self.clone(),
            l => self.scale_raw(self.ctx.inv(l).expect("nonzero")),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { ctx: self.ctx.clone(), c }
    }

    fn add_impl(&self, o: &Poly, negate: bool) -> Poly {
        self.check(o);
        let f = &self.ctx;
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff_raw(i);
            let b = o.coeff_raw(i);
            c.push(if negate { f.sub(a, b) } else { f.add(a, b) });
        }
        trim(&mut c);
        Poly { ctx: f.clone(), c }
    }

    pub fn mul_ref(&self, o: &Poly) -> Poly {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let f = &self.ctx;
        if self.c.len() == 1 {
            return o.scale_raw(self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale_raw(o.c[0]);
        }
        if self.is_gf2() && self.c.len() + o.c.len() > 48 {
            let w = gf2::mul(&gf2::pack(&self.c), &gf2::pack(&o.c));
            return Poly { ctx: f.clone(), c: gf2::unpack(&w) };
        }
        let n = self.c.len() + o.c.len() - 1;
        let mut c = vec![0u64; n];
        if f.k() == 1 {
            let p = f.p();
            // p <= 2^16 keeps each product below 2^32; flush well before overflow.
            let mut acc = vec![0u64; n];
            let mut pending = 0u64;
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    acc[i + j] += a * b;
                }
                pending += 1;
                if pending == 1 << 30 {
                    for v in acc.iter_mut() {
                        *v %= p;
                    }
                    pending = 0;
                }
            }
            for (ci, a) in c.iter_mut().zip(acc) {
                *ci = a % p;
            }
        } else {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    c[i + j] = f.add(c[i + j], f.mul(a, b));
                }
            }
        }
        trim(&mut c);
        Poly { ctx: f.clone(), c }
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.ctx;
        if self.c.len() < d.c.len() {
            return Ok((Poly::zero(f), self.clone()));
        }
        if self.is_gf2() && self.c.len() > 64 {
            let (q, r) = gf2::divrem(&gf2::pack(&self.c), &gf2::pack(&d.c));
            return Ok((Poly { ctx: f.clone(), c: gf2::unpack(&q) }, Poly { ctx: f.clone(), c: gf2::unpack(&r) }));
        }
        let dl = d.c.len();
        let inv = f.inv(d.lc_raw())?;
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = r[i + dl - 1];
            if top == 0 {
                continue;
            }
            let t = f.mul(top, inv);
            q[i] = t;
            for j in 0..dl {
                r[i + j] = f.sub(r[i + j], f.mul(t, d.c[j]));
            }
        }
        r.truncate(dl - 1);
        trim(&mut r);
        trim(&mut q);
        Ok((Poly { ctx: f.clone(), c: q }, Poly { ctx: f.clone(), c: r }))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn divides(&self, o: &Poly) -> bool {
        !self.is_zero() && o.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        match r0.lc_raw() {
            0 | 1 => (r0, s0, t0),
            l => {
                let i = f.inv(l).expect("nonzero");
                (r0.scale_raw(i), s0.scale_raw(i), t0.scale_raw(i))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
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

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.ctx).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).expect("nonzero modulus");
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m).expect("nonzero modulus");
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.ctx;
        let mut c: Vec<u64> = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_int_raw((i as u64 % f.p()) as i64)))
            .collect();
        trim(&mut c);
        Poly { ctx: f.clone(), c }
    }

    pub fn eval_raw(&self, a: u64) -> u64 {
        let f = &self.ctx;
        self.c.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }
    pub fn eval(&self, a: &FqElem) -> FqElem {
        FqElem::from_raw(&self.ctx, self.eval_raw(a.raw()))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.ctx);
        for &c in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::from_coeffs(&self.ctx, vec![c]);
        }
        acc
    }

    /// `self^p`, computed coefficientwise.
    pub fn frobenius(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.ctx;
        let p = f.p() as usize;
        let mut c = vec![0u64; (self.c.len() - 1) * p + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * p] = f.frob(a, 1);
        }
        Poly { ctx: f.clone(), c }
    }

    /// `g` with `g^p = self`, when every exponent is divisible by `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.ctx;
        let p = f.p() as usize;
        if self.c.iter().enumerate().any(|(i, &a)| a != 0 && i % p != 0) {
            return None;
        }
        let c = self.c.iter().step_by(p).map(|&a| f.pth_root_raw(a)).collect();
        Some(Poly { ctx: f.clone(), c })
    }

    /// Multiplicity of `x` as a factor; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.c.iter().position(|&a| a != 0)
    }

    /// Image under a coefficient map into another field.
    pub fn map_coeffs(&self, to: &Fq, f: impl Fn(u64) -> u64) -> Poly {
        Poly::from_coeffs(to, self.c.iter().map(|&a| f(a)).collect())
    }

    /// Canonical text in the variable `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.ctx;
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = f.format_raw(a);
            terms.push(if mono.is_empty() {
                cs
            } else if a == 1 {
                mono
            } else if f.term_count(a) == 1 {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            });
        }
        terms.join("+")
    }
}

impl PartialEq for Poly {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && self.same_field(o)
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.c.hash(h);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}
impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.add_impl(o, false)
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.add_impl(o, true)
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_ref(o)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.ctx;
        Poly { ctx: f.clone(), c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }
}
