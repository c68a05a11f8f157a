use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::{Fq, FqElem};

/// Element of `F_q(x)`.
///
/// Invariant: `den` is monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.ctx()), num };
        }
        if den.is_constant() {
            let inv = num.ctx().inv(den.lc_raw()).expect("nonzero");
            return RatFunc { num: num.scale_raw(inv), den: Poly::one(den.ctx()) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd")) };
        let l = d.lc_raw();
        if l != 1 {
            let inv = n.ctx().inv(l).expect("nonzero");
            n = n.scale_raw(inv);
            d = d.scale_raw(inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ctx());
        RatFunc { num: p, den }
    }
    pub fn zero(ctx: &Fq) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }
    pub fn one(ctx: &Fq) -> Self {
        Self::from_poly(Poly::one(ctx))
    }
    pub fn x(ctx: &Fq) -> Self {
        Self::from_poly(Poly::x(ctx))
    }
    pub fn from_int(ctx: &Fq, n: i64) -> Self {
        Self::from_poly(Poly::from_int(ctx, n))
    }
    pub fn constant(a: &FqElem) -> Self {
        Self::from_poly(Poly::constant(a))
    }

    pub fn ctx(&self) -> &Fq {
        self.num.ctx()
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }
    /// The value as a polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }
    /// The value as a constant of `F_q`, when it is one.
    pub fn as_constant(&self) -> Option<FqElem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u64;
        // Coprimality survives powering.
        Ok(RatFunc { num: self.num.pow(e), den: self.den.pow(e) })
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Self {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    pub fn scale(&self, a: &FqElem) -> Self {
        if a.is_zero() {
            return Self::zero(self.ctx());
        }
        RatFunc { num: self.num.scale(a), den: self.den.clone() }
    }

    /// Degree `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    fn term_like(p: &Poly) -> bool {
        p.term_count() <= 1 && (p.lc_raw() == 1 || p.is_constant() || p.ctx().term_count(p.lc_raw()) <= 1)
    }

    /// True when the canonical text is a single factor and needs no
    /// parentheses inside a product.
    pub fn is_atomic(&self) -> bool {
        self.is_poly() && Self::term_like(&self.num)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_poly() {
            return self.num.fmt_var(var);
        }
        let wrap = |p: &Poly| {
            let s = p.fmt_var(var);
            if Self::term_like(p) {
                s
            } else {
                format!("({s})")
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, o: &Self) -> Ordering {
        self.den.cmp(&o.den).then_with(|| self.num.cmp(&o.num))
    }
}
impl PartialOrd for RatFunc {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatFunc::normalize(n, &self.den * &o.den);
        }
        let a = self.den.div_exact(&g).expect("gcd");
        let b = o.den.div_exact(&g).expect("gcd");
        let n = &(&self.num * &b) + &(&o.num * &a);
        RatFunc::normalize(n, &(&a * &b) * &g)
    }
}
impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.ctx());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        let g1 = if o.den.is_one() { Poly::one(self.ctx()) } else { self.num.gcd(&o.den) };
        let g2 = if self.den.is_one() { Poly::one(self.ctx()) } else { o.num.gcd(&self.den) };
        let n1 = self.num.div_exact(&g1).expect("gcd");
        let d2 = o.den.div_exact(&g1).expect("gcd");
        let n2 = o.num.div_exact(&g2).expect("gcd");
        let d1 = self.den.div_exact(&g2).expect("gcd");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        // Both denominators were monic, so the product is monic.
        RatFunc { num, den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}
impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn normal_form() {
        let f3 = FqCtx::prime(3).unwrap();
        let num = Poly::from_coeffs(&f3, vec![2, 0, 2]);
        let den = Poly::from_coeffs(&f3, vec![0, 2]);
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.den().is_monic());
        assert_eq!(r.to_string(), "(x^2+1)/x");
        assert_eq!(RatFunc::new(Poly::one(&f3), Poly::zero(&f3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_cancels() {
        let f2 = FqCtx::prime(2).unwrap();
        let x = RatFunc::x(&f2);
        let one = RatFunc::one(&f2);
        let a = (&x + &one).inv().unwrap();
        let b = &(&a * &(&x + &one)) - &one;
        assert!(b.is_zero());
    }
}
