//! Finite fields `F_q`, `q = p^k`, as `F_p[z]/(m(z))`.
//!
//! Elements are packed into a `u64` as `sum c_i p^i` where `c_i` is the
//! coefficient of `z^i`. Hot loops elsewhere work on packed values through
//! the raw methods on [`FqCtx`]; [`FqElem`] is the checked public wrapper.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHAR: u64 = 1 << 16;

/// Shared handle to a field context.
pub type Fq = Arc<FqCtx>;

/// Conventional moduli for the small fields the examples use.
const BUILTIN: &[(u64, u32, &[u64])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 2, &[2, 2, 1]),
    (7, 1, &[0, 1]),
    (7, 2, &[3, 6, 1]),
];

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct FqCtx {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    ppow: Vec<u64>,
    tables: Option<Tables>,
}

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FqCtx {}

impl Hash for FqCtx {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.p.hash(h);
        self.modulus.hash(h);
    }
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{}]", self.p, self.k, self.modulus_string())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FqCtx {
    /// `F_p`.
    pub fn prime(p: u64) -> Result<Fq> {
        Self::build(p, 1, vec![0, 1], false)
    }

    /// The conventional field of order `p^k`; falls back to the
    /// lexicographically first irreducible modulus outside the built-in table.
    pub fn builtin(p: u64, k: u32) -> Result<Fq> {
        if let Some((_, _, m)) = BUILTIN.iter().find(|(bp, bk, _)| *bp == p && *bk == k) {
            return Self::build(p, k, m.to_vec(), false);
        }
        if k == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let fp = Self::prime(p)?;
        let m = crate::funcfield::find_irreducible(&fp, k as usize);
        Self::build(p, k, m.coeffs().to_vec(), false)
    }

    /// Field with an explicit modulus given by little-endian residues;
    /// the modulus must be monic of degree `k` and irreducible over `F_p`.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Fq> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        let k = (modulus.len() - 1) as u32;
        Self::build(p, k, modulus, true)
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>, check: bool) -> Result<Fq> {
        if !is_prime(p) || p > MAX_CHAR {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        if k == 0 || modulus.len() != k as usize + 1 {
            return Err(Error::InvalidField("modulus degree mismatch".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be residues".into()));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let q = p.checked_pow(k).ok_or_else(|| Error::InvalidField("field order exceeds 64 bits".into()))?;
        if q == u64::MAX {
            return Err(Error::InvalidField("field order exceeds 64 bits".into()));
        }
        if check && k > 1 {
            let fp = Self::prime(p)?;
            let m = crate::funcfield::Poly::from_coeffs(&fp, modulus.clone());
            if !crate::funcfield::is_irreducible(&m) {
                return Err(Error::NotIrreducible(format!("modulus over F_{p}")));
            }
        }
        let ppow = (0..=k).map(|i| p.pow(i)).collect();
        let mut ctx = FqCtx { p, k, q, modulus, ppow, tables: None };
        if k > 1 && q <= 1 << 16 {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    fn build_tables(&self) -> Tables {
        let g = self.primitive_element_slow();
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u64;
        for i in 0..n {
            exp[i] = cur as u32;
            exp[i + n] = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.mul_digits(cur, g);
        }
        Tables { exp, log }
    }

    fn primitive_element_slow(&self) -> u64 {
        let n = self.q - 1;
        let fs = prime_factors(n);
        (1..self.q)
            .find(|&g| fs.iter().all(|&r| self.pow_digits(g, n / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    fn pow_digits(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    // Raw packed arithmetic. Inputs are assumed to be valid packed values.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b, mut out) = (a, b, 0);
        for i in 0..self.k as usize {
            let s = a % self.p + b % self.p;
            out += if s >= self.p { s - self.p } else { s } * self.ppow[i];
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let (mut a, mut out) = (a, 0);
        for i in 0..self.k as usize {
            let d = a % self.p;
            out += if d == 0 { 0 } else { self.p - d } * self.ppow[i];
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return if a >= b { a - b } else { a + self.p - b };
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64;
        }
        self.mul_digits(a, b)
    }

    fn unpack(&self, mut a: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let (da, db) = (self.unpack(a), self.unpack(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = c * self.modulus[j] % self.p;
                prod[i - k + j] = (prod[i - k + j] + self.p - t) % self.p;
            }
            prod[i] = 0;
        }
        self.pack(&prod[..k])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if let Some(t) = &self.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let n = self.q - 1;
            let l = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[l] as u64;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as usize;
            return Ok(t.exp[(n - t.log[a as usize] as usize) % n] as u64);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `a^(p^e)`.
    pub fn frob(&self, a: u64, e: u32) -> u64 {
        if self.k == 1 {
            return a;
        }
        let mut r = a;
        for _ in 0..(e % self.k) {
            r = self.pow(r, self.p);
        }
        r
    }

    /// Unique `b` with `b^p = a`.
    pub fn pth_root_raw(&self, a: u64) -> u64 {
        self.frob(a, self.k - 1)
    }

    /// Image of an integer.
    pub fn from_int_raw(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// The generator class `z`.
    pub fn gen_raw(&self) -> Option<u64> {
        if self.k == 1 {
            None
        } else {
            Some(self.p)
        }
    }

    /// A generator of `F_q^*`.
    pub fn primitive_raw(&self) -> u64 {
        if let Some(t) = &self.tables {
            return t.exp[1] as u64;
        }
        if self.k == 1 {
            let fs = prime_factors(self.p - 1);
            return (1..self.p).find(|&g| fs.iter().all(|&r| self.pow(g, (self.p - 1) / r) != 1)).unwrap_or(1);
        }
        self.primitive_element_slow()
    }

    /// Discrete logarithm base [`FqCtx::primitive_raw`].
    pub fn dlog_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[a as usize] as u64);
        }
        let g = self.primitive_raw();
        let mut cur = 1;
        for i in 0..self.q - 1 {
            if cur == a {
                return Ok(i);
            }
            cur = self.mul(cur, g);
        }
        Err(Error::Invalid("element outside the multiplicative group".into()))
    }

    /// Little-endian coordinates of a packed value over `F_p`.
    pub fn digits(&self, a: u64) -> Vec<u64> {
        self.unpack(a)
    }

    pub fn from_digits(&self, d: &[u64]) -> Result<u64> {
        if d.len() > self.k as usize || d.iter().any(|&c| c >= self.p) {
            return Err(Error::Invalid("digits out of range".into()));
        }
        Ok(self.pack(d))
    }

    /// Number of nonzero `z`-terms, used to decide parenthesization.
    pub(crate) fn term_count(&self, a: u64) -> usize {
        self.unpack(a).iter().filter(|&&c| c != 0).count()
    }

    pub fn format_raw(&self, a: u64) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        if a == 0 {
            return "0".into();
        }
        let d = self.unpack(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }
}

/// An element of `F_q` bound to its context.
#[derive(Clone)]
pub struct FqElem {
    ctx: Fq,
    v: u64,
}

impl FqElem {
    pub fn zero(ctx: &Fq) -> Self {
        FqElem { ctx: ctx.clone(), v: 0 }
    }
    pub fn one(ctx: &Fq) -> Self {
        FqElem { ctx: ctx.clone(), v: 1 }
    }
    pub fn from_int(ctx: &Fq, n: i64) -> Self {
        FqElem { ctx: ctx.clone(), v: ctx.from_int_raw(n) }
    }
    /// The generator `z`; `None` over a prime field.
    pub fn gen(ctx: &Fq) -> Option<Self> {
        ctx.gen_raw().map(|v| FqElem { ctx: ctx.clone(), v })
    }
    /// From little-endian coordinates over `F_p`.
    pub fn from_coeffs(ctx: &Fq, d: &[u64]) -> Result<Self> {
        Ok(FqElem { ctx: ctx.clone(), v: ctx.from_digits(d)? })
    }
    pub(crate) fn from_raw(ctx: &Fq, v: u64) -> Self {
        debug_assert!(v < ctx.q);
        FqElem { ctx: ctx.clone(), v }
    }
    pub fn raw(&self) -> u64 {
        self.v
    }
    pub fn ctx(&self) -> &Fq {
        &self.ctx
    }
    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.digits(self.v)
    }
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }
    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.add(self.v, o.v)))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.sub(self.v, o.v)))
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.mul(self.v, o.v)))
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let i = self.ctx.inv(o.v)?;
        Ok(Self::from_raw(&self.ctx, self.ctx.mul(self.v, i)))
    }
    pub fn neg(&self) -> Self {
        Self::from_raw(&self.ctx, self.ctx.neg(self.v))
    }
    pub fn inv(&self) -> Result<Self> {
        Ok(Self::from_raw(&self.ctx, self.ctx.inv(self.v)?))
    }
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(Self::from_raw(&self.ctx, self.ctx.pow(self.v, e as u64)))
        } else {
            let i = self.ctx.inv(self.v)?;
            Ok(Self::from_raw(&self.ctx, self.ctx.pow(i, e.unsigned_abs())))
        }
    }
    /// `a^(p^e)`.
    pub fn frobenius(&self, e: u32) -> Self {
        Self::from_raw(&self.ctx, self.ctx.frob(self.v, e))
    }
    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self) -> Self {
        Self::from_raw(&self.ctx, self.ctx.pth_root_raw(self.v))
    }
}

impl PartialEq for FqElem {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && (Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx)
    }
}
impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.v.hash(h);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for FqElem {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.v.cmp(&o.v)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format_raw(self.v))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_squares() {
        let f4 = FqCtx::builtin(2, 2).unwrap();
        let z = FqElem::gen(&f4).unwrap();
        let zz = z.mul(&z).unwrap();
        assert_eq!(zz.to_string(), "z+1");
        assert_eq!(z.frobenius(1), zz);
        assert_eq!(zz.pth_root(), z);
    }

    #[test]
    fn f7_division() {
        let f7 = FqCtx::prime(7).unwrap();
        let r = FqElem::from_int(&f7, 3).div(&FqElem::from_int(&f7, 2)).unwrap();
        assert_eq!(r.to_string(), "5");
        assert_eq!(FqElem::zero(&f7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FqCtx::new(2, vec![1, 0, 1]).is_err());
        assert!(FqCtx::new(4, vec![1, 1]).is_err());
        assert!(FqCtx::new(3, vec![1, 0, 2]).is_err());
        assert!(FqCtx::new(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = FqElem::one(&FqCtx::prime(3).unwrap());
        let b = FqElem::one(&FqCtx::prime(5).unwrap());
        assert_eq!(a.add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn table_and_digit_arithmetic_agree() {
        for (p, k) in [(2u64, 4u32), (3, 2), (7, 2), (5, 3)] {
            let f = FqCtx::builtin(p, k).unwrap();
            for a in 0..f.q() {
                for b in (0..f.q()).step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul_digits(a, b));
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        let f9 = FqCtx::builtin(3, 2).unwrap();
        let z = FqElem::gen(&f9).unwrap();
        let a = z.mul(&FqElem::from_int(&f9, 2)).unwrap().add(&FqElem::one(&f9)).unwrap();
        assert_eq!(a.to_string(), "2*z+1");
        assert_eq!(f9.modulus_string(), "z^2+2*z+2");
    }
}
