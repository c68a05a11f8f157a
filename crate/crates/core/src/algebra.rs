//! Field-generic univariate polynomials and linear algebra, instantiated over
//! `F_q`, `K = F_q(x)` and tower levels.

use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::gf::FqElem;

/// Exact field arithmetic needed by the generic routines.
pub trait FieldElement: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Result<Self>;
    fn int_like(&self, n: i64) -> Self;

    fn fpow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.fmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.fmul(&base);
            }
        }
        acc
    }
}

impl FieldElement for FqElem {
    fn zero_like(&self) -> Self {
        FqElem::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        FqElem::one(self.ctx())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o).expect("same field")
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o).expect("same field")
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o).expect("same field")
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Result<Self> {
        self.inv()
    }
    fn int_like(&self, n: i64) -> Self {
        FqElem::from_int(self.ctx(), n)
    }
}

impl FieldElement for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.ctx())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Result<Self> {
        self.inv()
    }
    fn int_like(&self, n: i64) -> Self {
        RatFunc::from_int(self.ctx(), n)
    }
}

/// Dense univariate polynomial over a field.
///
/// Invariant: no trailing zero coefficient; `zero` is a template for the
/// coefficient zero.
#[derive(Clone, PartialEq)]
pub struct UniPoly<T: FieldElement> {
    coeffs: Vec<T>,
    zero: T,
}

impl<T: FieldElement> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>, zero: T) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UniPoly { coeffs, zero }
    }
    pub fn zero(zero: T) -> Self {
        UniPoly { coeffs: Vec::new(), zero }
    }
    pub fn constant(c: T) -> Self {
        let z = c.zero_like();
        Self::new(vec![c], z)
    }
    /// The variable itself.
    pub fn var(zero: T) -> Self {
        let one = zero.one_like();
        Self::new(vec![zero.clone(), one], zero)
    }
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn zero_elem(&self) -> &T {
        &self.zero
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == self.zero.one_like()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).fadd(&o.coeff(i))).collect(), self.zero.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).fsub(&o.coeff(i))).collect(), self.zero.clone())
    }
    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.fmul(c)).collect(), self.zero.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.zero.clone());
        }
        let mut c = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].fadd(&a.fmul(b));
            }
        }
        Self::new(c, self.zero.clone())
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.zero.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return Ok((Self::zero(self.zero.clone()), self.clone()));
        }
        let inv = d.lc().finv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = r[i + dl - 1].clone();
            if top.is_zero_elem() {
                continue;
            }
            let t = top.fmul(&inv);
            for j in 0..dl {
                r[i + j] = r[i + j].fsub(&t.fmul(&d.coeffs[j]));
            }
            q[i] = t;
        }
        r.truncate(dl - 1);
        Ok((Self::new(q, self.zero.clone()), Self::new(r, self.zero.clone())))
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(&self.lc().finv()?))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a.fmul(&a.int_like(i as i64))).collect(),
            self.zero.clone(),
        )
    }

    pub fn eval(&self, a: &T) -> T {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.fmul(a).fadd(c))
    }

    /// Resultant by the Euclidean recursion over the coefficient field.
    pub fn resultant(&self, o: &Self) -> Result<T> {
        let mut acc = self.zero.one_like();
        let (mut a, mut b) = (self.clone(), o.clone());
        loop {
            let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
                return Ok(self.zero.clone());
            };
            if n == 0 {
                return Ok(acc.fmul(&b.lc().fpow(m as u64)));
            }
            if m == 0 {
                return Ok(acc.fmul(&a.lc().fpow(n as u64)));
            }
            let r = a.divrem(&b)?.1;
            let Some(k) = r.degree() else {
                return Ok(self.zero.clone());
            };
            if (m * n) % 2 == 1 {
                acc = acc.fneg();
            }
            acc = acc.fmul(&b.lc().fpow((m - k) as u64));
            a = b;
            b = r;
        }
    }

    /// Resultant as the determinant of the Sylvester matrix.
    pub fn sylvester_resultant(&self, o: &Self) -> Result<T> {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return Ok(self.zero.clone());
        };
        let size = m + n;
        if size == 0 {
            return Ok(self.zero.one_like());
        }
        let mut mat = vec![vec![self.zero.clone(); size]; size];
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in o.coeffs.iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        determinant(mat)
    }

    /// `(-1)^(d(d-1)/2) Res(f, f')` for monic `f` of degree `d`.
    pub fn discriminant(&self) -> Result<T> {
        let d = self.degree().ok_or(Error::ZeroInput)?;
        let r = self.resultant(&self.derivative())?;
        Ok(if (d * (d.saturating_sub(1)) / 2) % 2 == 1 { r.fneg() } else { r })
    }

    pub fn map<U: FieldElement>(&self, zero: U, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

impl<T: FieldElement> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

/// Polynomials over `K = F_q(x)`.
pub type KPoly = UniPoly<RatFunc>;

impl KPoly {
    /// Canonical text in the variable `var`, descending.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.is_atomic() {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            });
        }
        terms.join("+")
    }

    /// Every coefficient lies in `F_q[x]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_poly())
    }
}

/// Determinant by Gaussian elimination.
pub fn determinant<T: FieldElement>(mut m: Vec<Vec<T>>) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Invalid("empty matrix".into()));
    }
    let mut det = m[0][0].one_like();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero_elem()) else {
            return Ok(det.zero_like());
        };
        if piv != col {
            m.swap(piv, col);
            det = det.fneg();
        }
        let inv = m[col][col].finv()?;
        det = det.fmul(&m[col][col]);
        for r in col + 1..n {
            if m[r][col].is_zero_elem() {
                continue;
            }
            let f = m[r][col].fmul(&inv);
            let (top, rest) = m.split_at_mut(r);
            for (a, b) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *a = a.fsub(&f.fmul(b));
            }
        }
    }
    Ok(det)
}

struct Row<T> {
    v: Vec<T>,
    combo: Vec<T>,
    pivot: usize,
}

/// Echelon basis of inserted vectors that tracks how each basis row is
/// built from the accepted inputs, so that dependencies come out as explicit
/// relations.
pub struct IncrementalBasis<T: FieldElement> {
    dim: usize,
    zero: T,
    rows: Vec<Row<T>>,
}

impl<T: FieldElement> IncrementalBasis<T> {
    pub fn new(dim: usize, zero: T) -> Self {
        IncrementalBasis { dim, zero, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Residual and the combination of accepted inputs removed from `v`.
    fn reduce_full(&self, v: &[T]) -> (Vec<T>, Vec<T>) {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut w = v.to_vec();
        let mut lam = vec![self.zero.clone(); self.rows.len()];
        for row in &self.rows {
            let c = w[row.pivot].clone();
            if c.is_zero_elem() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(&row.v) {
                if !rj.is_zero_elem() {
                    *wj = wj.fsub(&c.fmul(rj));
                }
            }
            for (j, cj) in row.combo.iter().enumerate() {
                if !cj.is_zero_elem() {
                    lam[j] = lam[j].fadd(&c.fmul(cj));
                }
            }
        }
        (w, lam)
    }

    /// Coordinates of `v` over the accepted inputs, when `v` is in their span.
    pub fn express(&self, v: &[T]) -> Option<Vec<T>> {
        let (w, lam) = self.reduce_full(v);
        w.iter().all(|c| c.is_zero_elem()).then_some(lam)
    }

    /// Accepts `v` when independent; otherwise returns its coordinates over
    /// the accepted inputs.
    pub fn insert(&mut self, v: &[T]) -> std::result::Result<(), Vec<T>> {
        let (w, lam) = self.reduce_full(v);
        let Some(pivot) = w.iter().position(|c| !c.is_zero_elem()) else {
            return Err(lam);
        };
        let inv = w[pivot].finv().expect("nonzero pivot");
        let n = self.rows.len();
        let mut combo: Vec<T> = lam.iter().map(|c| c.fneg().fmul(&inv)).collect();
        combo.push(inv.clone());
        for row in &mut self.rows {
            row.combo.push(self.zero.clone());
        }
        let v = w.iter().map(|c| c.fmul(&inv)).collect();
        self.rows.push(Row { v, combo, pivot });
        debug_assert_eq!(self.rows[n].combo.len(), n + 1);
        Ok(())
    }
}

/// Solves `sum x_j cols[j] = target` for independent `cols`.
pub fn solve_columns<T: FieldElement>(cols: &[Vec<T>], target: &[T], zero: &T) -> Option<Vec<T>> {
    let mut b = IncrementalBasis::new(target.len(), zero.clone());
    for c in cols {
        b.insert(c).ok()?;
    }
    b.express(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;
    use crate::gf::FqCtx;

    #[test]
    fn resultant_routes_agree() {
        let f3 = FqCtx::prime(3).unwrap();
        let x = RatFunc::x(&f3);
        let z = RatFunc::zero(&f3);
        let one = RatFunc::one(&f3);
        // Y^2 - x
        let g = KPoly::new(vec![-&x, z.clone(), one.clone()], z.clone());
        let disc = g.discriminant().unwrap();
        assert_eq!(disc, x);
        let r1 = g.resultant(&g.derivative()).unwrap();
        let r2 = g.sylvester_resultant(&g.derivative()).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn incremental_relation() {
        let f5 = FqCtx::prime(5).unwrap();
        let e = |v: i64| FqElem::from_int(&f5, v);
        let mut b = IncrementalBasis::new(2, e(0));
        b.insert(&[e(1), e(2)]).unwrap();
        b.insert(&[e(0), e(1)]).unwrap();
        let rel = b.insert(&[e(3), e(1)]).unwrap_err();
        // (3,1) = 3*(1,2) + c*(0,1) with c = 1 - 6 = 0 mod 5
        assert_eq!(rel, vec![e(3), e(0)]);
        let _ = Poly::zero(&f5);
    }
}
