//! Finite separable towers `L = K(y_1, ..., y_r)` over `K = F_q(x)`.
//!
//! Level `l` adjoins a root `y_l` of a monic separable polynomial over the
//! previous level. Elements carry coordinates over `K` in the product power
//! basis `y_1^{e_1} ... y_r^{e_r}`, `0 <= e_l < deg f_l`, indexed in mixed
//! radix with `y_1` varying fastest; an element of level `l` is therefore a
//! prefix of length `D_l = deg f_1 * ... * deg f_l`.

mod certify;
mod galois;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{FieldElement, IncrementalBasis, KPoly, UniPoly};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::gf::{Fq, FqElem};
use crate::parse::{self, Evaluator};

pub use certify::{certify_irreducible, Irreducibility};
pub use galois::{conjugate_difference_unit, conjugates, ConjugateSet, GaloisMap};

/// Maximum total degree `[L:K]`.
pub const MAX_DEGREE: usize = 64;

#[derive(Clone)]
struct Level {
    label: String,
    degree: usize,
    /// `a_0 .. a_{n-1}` of `Y^n + sum a_i Y^i`, each of length `D_{l-1}`.
    coeffs: Vec<Vec<RatFunc>>,
}

pub struct Tower {
    field: Fq,
    levels: Vec<Level>,
    dims: Vec<usize>,
    status: Irreducibility,
    frob: OnceLock<Vec<Vec<RatFunc>>>,
}

impl PartialEq for Tower {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field
            && self.levels.len() == o.levels.len()
            && self.levels.iter().zip(&o.levels).all(|(a, b)| a.label == b.label && a.coeffs == b.coeffs)
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower[")?;
        for l in 0..self.levels.len() {
            write!(f, "{}: {}; ", self.levels[l].label, self.defining_text(l))?;
        }
        write!(f, "{:?}]", self.status)
    }
}

const RESERVED: &[&str] = &["x", "z"];

impl Tower {
    /// The trivial tower `L = K`.
    pub fn base(field: &Fq) -> Arc<Tower> {
        Arc::new(Tower {
            field: field.clone(),
            levels: Vec::new(),
            dims: vec![1],
            status: Irreducibility::Certified { witness: "trivial".into() },
            frob: OnceLock::new(),
        })
    }

    /// Tower from `(label, defining polynomial text)` pairs; the text of
    /// level `l` is a polynomial in its own label with coefficients in `x`,
    /// `z` and the earlier labels.
    pub fn from_text(field: &Fq, levels: &[(&str, &str)]) -> Result<Arc<Tower>> {
        let mut t = Tower::base(field);
        for (label, text) in levels {
            let ev = LevelPolyEval { lower: t.clone(), label: label.to_string() };
            let f = parse::eval(&parse::parse(text)?, &ev)?;
            t = t.extend(label, &f)?;
        }
        Ok(t)
    }

    /// Adjoins a root of monic separable `f` over this tower.
    pub fn extend(self: &Arc<Self>, label: &str, f: &UniPoly<AlgElem>) -> Result<Arc<Tower>> {
        if label.is_empty()
            || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || !label.starts_with(|c: char| c.is_ascii_alphabetic())
            || RESERVED.contains(&label)
            || self.levels.iter().any(|l| l.label == label)
        {
            return Err(Error::Invalid(format!("bad or duplicate level label '{label}'")));
        }
        let n = f
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Invalid(format!("defining polynomial of '{label}' must have positive degree")))?;
        if !f.lc().is_one() {
            return Err(Error::NotMonic(format!("defining polynomial of '{label}'")));
        }
        if f.coeffs().iter().any(|c| !Arc::ptr_eq(&c.tower, self) && *c.tower != **self) {
            return Err(Error::ContextMismatch);
        }
        let total = self.degree() * n;
        if total > MAX_DEGREE {
            return Err(Error::Invalid(format!("tower degree {total} exceeds {MAX_DEGREE}")));
        }
        let g = f.gcd(&f.derivative())?;
        if g.degree() != Some(0) {
            return Err(Error::Inseparable(format!("defining polynomial of '{label}'")));
        }
        if self.levels.is_empty() {
            let k = f.map(RatFunc::zero(&self.field), |c| c.c[0].clone());
            if let Some(r) = certify::find_rational_root(&k) {
                return Err(Error::NotIrreducible(format!("defining polynomial of '{label}' has the root {r}")));
            }
        }
        let mut levels = self.levels.clone();
        levels.push(Level { label: label.to_string(), degree: n, coeffs: (0..n).map(|i| f.coeff(i).c).collect() });
        let mut dims = self.dims.clone();
        dims.push(total);
        let t = Arc::new(Tower {
            field: self.field.clone(),
            levels,
            dims,
            status: Irreducibility::Assumed,
            frob: OnceLock::new(),
        });
        let status = certify::certify_tower(&t, &self.status);
        let mut t = t.clone_shallow();
        t.status = status;
        Ok(Arc::new(t))
    }

    fn clone_shallow(&self) -> Tower {
        Tower {
            field: self.field.clone(),
            levels: self.levels.clone(),
            dims: self.dims.clone(),
            status: self.status.clone(),
            frob: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    /// `[L:K]`.
    pub fn degree(&self) -> usize {
        *self.dims.last().expect("dims nonempty")
    }
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }
    pub fn labels(&self) -> Vec<&str> {
        self.levels.iter().map(|l| l.label.as_str()).collect()
    }
    pub fn level_degree(&self, l: usize) -> usize {
        self.levels[l].degree
    }
    pub fn status(&self) -> &Irreducibility {
        &self.status
    }
    pub fn is_certified(&self) -> bool {
        matches!(self.status, Irreducibility::Certified { .. })
    }

    /// Defining polynomial of level `l` (0-based) as text in its label.
    pub fn defining_text(&self, l: usize) -> String {
        let lower = self.truncated(l);
        let f = self.defining_poly_in(l, &lower);
        fmt_level_poly(&f, &self.levels[l].label)
    }

    /// The first `l` levels; a certified tower has certified prefixes.
    pub fn truncated(&self, l: usize) -> Arc<Tower> {
        let mut t = self.clone_shallow();
        t.levels.truncate(l);
        t.dims.truncate(l + 1);
        Arc::new(t)
    }

    fn defining_poly_in(&self, l: usize, lower: &Arc<Tower>) -> UniPoly<AlgElem> {
        let lev = &self.levels[l];
        let mut c: Vec<AlgElem> = lev.coeffs.iter().map(|v| AlgElem { tower: lower.clone(), c: v.clone() }).collect();
        c.push(AlgElem::one(lower));
        UniPoly::new(c, AlgElem::zero(lower))
    }

    /// Defining polynomial of the first level as a polynomial over `K`.
    pub fn first_level_poly(&self) -> Option<KPoly> {
        let lev = self.levels.first()?;
        let mut c: Vec<RatFunc> = lev.coeffs.iter().map(|v| v[0].clone()).collect();
        c.push(RatFunc::one(&self.field));
        Some(KPoly::new(c, RatFunc::zero(&self.field)))
    }

    /// Exponent of each level in the basis monomial `idx`.
    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        self.levels.iter().enumerate().map(|(l, lev)| idx / self.dims[l] % lev.degree).collect()
    }

    fn zero_vec(&self) -> Vec<RatFunc> {
        vec![RatFunc::zero(&self.field); self.degree()]
    }

    fn mul_raw(&self, l: usize, a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
        if l == 0 {
            return vec![&a[0] * &b[0]];
        }
        let lev = &self.levels[l - 1];
        let (n, c) = (lev.degree, self.dims[l - 1]);
        let zero = RatFunc::zero(&self.field);
        let nz = |s: &[RatFunc]| s.iter().any(|v| !v.is_zero());
        let mut prod = vec![vec![zero; c]; 2 * n - 1];
        for i in 0..n {
            let ai = &a[i * c..(i + 1) * c];
            if !nz(ai) {
                continue;
            }
            for j in 0..n {
                let bj = &b[j * c..(j + 1) * c];
                if !nz(bj) {
                    continue;
                }
                let t = self.mul_raw(l - 1, ai, bj);
                for (d, s) in prod[i + j].iter_mut().zip(&t) {
                    if !s.is_zero() {
                        *d = &*d + s;
                    }
                }
            }
        }
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::take(&mut prod[k]);
            if !nz(&top) {
                continue;
            }
            for (i, ai) in lev.coeffs.iter().enumerate() {
                if !nz(ai) {
                    continue;
                }
                let t = self.mul_raw(l - 1, &top, ai);
                for (d, s) in prod[k - n + i].iter_mut().zip(&t) {
                    if !s.is_zero() {
                        *d = &*d - s;
                    }
                }
            }
        }
        prod.truncate(n);
        prod.concat()
    }

    /// `b_i^p` for each basis monomial `b_i`.
    fn frobenius_images(self: &Arc<Self>) -> &Vec<Vec<RatFunc>> {
        self.frob.get_or_init(|| {
            let p = self.field.p();
            (0..self.degree())
                .map(|i| {
                    let mut e = self.zero_vec();
                    e[i] = RatFunc::one(&self.field);
                    AlgElem { tower: self.clone(), c: e }.pow(p).c
                })
                .collect()
        })
    }
}

fn fmt_level_poly(f: &UniPoly<AlgElem>, var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = c.to_string();
        terms.push(if mono.is_empty() {
            cs
        } else if c.is_one() {
            mono
        } else if c.is_atomic() {
            format!("{cs}*{mono}")
        } else {
            format!("({cs})*{mono}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Element of a tower.
#[derive(Clone)]
pub struct AlgElem {
    tower: Arc<Tower>,
    c: Vec<RatFunc>,
}

impl PartialEq for AlgElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.tower, &o.tower) || *self.tower == *o.tower)
    }
}

impl AlgElem {
    pub fn zero(t: &Arc<Tower>) -> Self {
        AlgElem { tower: t.clone(), c: t.zero_vec() }
    }
    pub fn one(t: &Arc<Tower>) -> Self {
        Self::from_k(t, RatFunc::one(&t.field))
    }
    pub fn from_k(t: &Arc<Tower>, a: RatFunc) -> Self {
        let mut c = t.zero_vec();
        c[0] = a;
        AlgElem { tower: t.clone(), c }
    }
    pub fn x(t: &Arc<Tower>) -> Self {
        Self::from_k(t, RatFunc::x(&t.field))
    }
    /// Generator of level `l` (0-based).
    pub fn gen(t: &Arc<Tower>, l: usize) -> Self {
        let mut c = t.zero_vec();
        if t.levels[l].degree == 1 {
            // y = -a_0 when the level is trivial
            let a0 = &t.levels[l].coeffs[0];
            for (i, v) in a0.iter().enumerate() {
                c[i] = -v;
            }
        } else {
            c[t.dims[l]] = RatFunc::one(&t.field);
        }
        AlgElem { tower: t.clone(), c }
    }
    pub fn gen_by_label(t: &Arc<Tower>, label: &str) -> Option<Self> {
        t.levels.iter().position(|l| l.label == label).map(|l| Self::gen(t, l))
    }
    /// From coordinates in the tower basis.
    pub fn from_coords(t: &Arc<Tower>, c: Vec<RatFunc>) -> Result<Self> {
        if c.len() != t.degree() {
            return Err(Error::Invalid("coordinate vector length".into()));
        }
        Ok(AlgElem { tower: t.clone(), c })
    }
    pub fn parse(t: &Arc<Tower>, s: &str) -> Result<Self> {
        parse::eval(&parse::parse(s)?, &AlgEval(t.clone()))
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }
    pub fn coords(&self) -> &[RatFunc] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|v| v.is_zero())
    }
    /// The value as an element of `K`, when it lies there.
    pub fn as_k(&self) -> Option<&RatFunc> {
        self.c[1..].iter().all(|v| v.is_zero()).then_some(&self.c[0])
    }
    /// The value as a constant of `F_q`, when it is one.
    pub fn as_constant(&self) -> Option<FqElem> {
        self.as_k().and_then(|a| a.as_constant())
    }
    /// Least common denominator of the coordinates.
    pub fn common_denominator(&self) -> crate::funcfield::Poly {
        let mut d = crate::funcfield::Poly::one(&self.tower.field);
        for v in &self.c {
            let g = d.gcd(v.den());
            d = (&d * v.den()).div_exact(&g).expect("gcd divides");
        }
        d
    }
    /// Coordinates all in `F_q[x]`.
    pub fn has_poly_coords(&self) -> bool {
        self.c.iter().all(|v| v.is_poly())
    }

    fn check(&self, o: &Self) {
        assert!(Arc::ptr_eq(&self.tower, &o.tower) || *self.tower == *o.tower, "elements of different towers");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        AlgElem { tower: self.tower.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        AlgElem { tower: self.tower.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    pub fn neg(&self) -> Self {
        AlgElem { tower: self.tower.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let t = &self.tower;
        AlgElem { tower: t.clone(), c: t.mul_raw(t.levels.len(), &self.c, &o.c) }
    }
    pub fn scale(&self, a: &RatFunc) -> Self {
        AlgElem { tower: self.tower.clone(), c: self.c.iter().map(|v| v * a).collect() }
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tower);
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

    /// `self^(p^e)`.
    pub fn frobenius_power(&self, e: u32) -> Self {
        let t = &self.tower;
        let imgs = t.frobenius_images();
        let mut cur = self.c.clone();
        for _ in 0..e {
            let mut next = t.zero_vec();
            for (i, ci) in cur.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let cp = ci.frobenius();
                for (d, s) in next.iter_mut().zip(&imgs[i]) {
                    if !s.is_zero() {
                        *d = &*d + &(&cp * s);
                    }
                }
            }
            cur = next;
        }
        AlgElem { tower: t.clone(), c: cur }
    }

    /// Columns `self * b_i` of the multiplication map.
    fn mult_columns(&self) -> Vec<Vec<RatFunc>> {
        let t = &self.tower;
        (0..t.degree())
            .map(|i| {
                let mut e = t.zero_vec();
                e[i] = RatFunc::one(&t.field);
                self.mul(&AlgElem { tower: t.clone(), c: e }).c
            })
            .collect()
    }

    /// Inverse; errors on zero and on zero divisors of a non-field tower.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &self.tower;
        if let Some(a) = self.as_k() {
            return Ok(Self::from_k(t, a.inv()?));
        }
        let cols = self.mult_columns();
        let target = Self::one(t).c;
        let c = crate::algebra::solve_columns(&cols, &target, &RatFunc::zero(&t.field))
            .ok_or_else(|| Error::NotIrreducible("zero divisor in tower".into()))?;
        Ok(AlgElem { tower: t.clone(), c })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// `N_{L/K}(self)`, the determinant of multiplication by `self`.
    pub fn norm(&self) -> Result<RatFunc> {
        let cols = self.mult_columns();
        crate::algebra::determinant(cols)
    }

    /// Trace `Tr_{L/K}(self)`.
    pub fn trace(&self) -> RatFunc {
        let cols = self.mult_columns();
        let mut acc = RatFunc::zero(&self.tower.field);
        for (i, c) in cols.iter().enumerate() {
            acc = &acc + &c[i];
        }
        acc
    }

    /// Minimal polynomial over `K`, monic.
    pub fn minimal_polynomial(&self) -> KPoly {
        let t = &self.tower;
        let zero = RatFunc::zero(&t.field);
        let mut basis = IncrementalBasis::new(t.degree(), zero.clone());
        let mut pw = Self::one(t);
        loop {
            match basis.insert(&pw.c) {
                Ok(()) => pw = pw.mul(self),
                Err(rel) => {
                    let mut c: Vec<RatFunc> = rel.iter().map(|v| -v).collect();
                    c.push(RatFunc::one(&t.field));
                    return KPoly::new(c, zero);
                }
            }
        }
    }

    /// `[K(self):K]`.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial().degree().expect("nonzero minimal polynomial")
    }

    /// `disc_K(self) = (-1)^(d(d-1)/2) Res(g, g')` for the minimal polynomial `g`.
    pub fn discriminant(&self) -> Result<RatFunc> {
        self.minimal_polynomial().discriminant()
    }

    /// Same value via `N_{K(t)/K}(g'(t))`; requires `K(t) = L`.
    pub fn discriminant_by_norm(&self) -> Result<RatFunc> {
        let g = self.minimal_polynomial();
        let d = g.degree().expect("nonzero");
        if d != self.tower.degree() {
            return Err(Error::Invalid("element does not generate the tower".into()));
        }
        let gp = g.derivative();
        let mut val = Self::zero(&self.tower);
        for c in gp.coeffs().iter().rev() {
            val = val.mul(self).add(&Self::from_k(&self.tower, c.clone()));
        }
        let n = val.norm()?;
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -&n } else { n })
    }

    /// Same element in a tower that extends this one.
    pub fn lift(&self, to: &Arc<Tower>) -> Result<Self> {
        let l = self.tower.levels.len();
        if to.levels.len() < l || *to.truncated(l) != *self.tower {
            return Err(Error::ContextMismatch);
        }
        let mut c = to.zero_vec();
        c[..self.c.len()].clone_from_slice(&self.c);
        Ok(AlgElem { tower: to.clone(), c })
    }

    /// True when the canonical text is a single factor.
    pub fn is_atomic(&self) -> bool {
        let nz: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect();
        match nz.as_slice() {
            [] => true,
            [0] => self.c[0].is_atomic(),
            [i] => self.c[*i].is_one() || self.c[*i].is_atomic(),
            _ => false,
        }
    }

    fn monomial_text(&self, idx: usize) -> String {
        let t = &self.tower;
        let e = t.exponents(idx);
        let mut parts = Vec::new();
        for l in (0..e.len()).rev() {
            match e[l] {
                0 => {}
                1 => parts.push(t.levels[l].label.clone()),
                k => parts.push(format!("{}^{}", t.levels[l].label, k)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in (0..self.c.len()).rev() {
            let c = &self.c[i];
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                terms.push(c.to_string());
                continue;
            }
            let m = self.monomial_text(i);
            terms.push(if c.is_one() {
                m
            } else if c.is_atomic() {
                format!("{c}*{m}")
            } else {
                format!("({c})*{m}")
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({self})")
    }
}

impl FieldElement for AlgElem {
    fn zero_like(&self) -> Self {
        AlgElem::zero(&self.tower)
    }
    fn one_like(&self) -> Self {
        AlgElem::one(&self.tower)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Result<Self> {
        self.inv()
    }
    fn int_like(&self, n: i64) -> Self {
        AlgElem::from_k(&self.tower, RatFunc::from_int(&self.tower.field, n))
    }
}

/// Parses tower elements: `x`, `z` and level labels.
pub struct AlgEval(pub Arc<Tower>);

impl Evaluator for AlgEval {
    type V = AlgElem;
    fn int(&self, n: u64) -> Result<AlgElem> {
        let f = &self.0.field;
        Ok(AlgElem::from_k(&self.0, RatFunc::from_int(f, parse::int_in(f, n) as i64)))
    }
    fn var(&self, name: &str, pos: usize) -> Result<AlgElem> {
        match name {
            "x" => Ok(AlgElem::x(&self.0)),
            "z" => Ok(AlgElem::from_k(&self.0, RatFunc::constant(&parse::field_gen(&self.0.field, pos)?))),
            _ => AlgElem::gen_by_label(&self.0, name).map_or_else(|| parse::unknown(name, pos), Ok),
        }
    }
    fn add(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        Ok(a.mul(b))
    }
    fn div(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        a.div(b)
    }
    fn neg(&self, a: &AlgElem) -> Result<AlgElem> {
        Ok(a.neg())
    }
    fn pow(&self, a: &AlgElem, e: i64) -> Result<AlgElem> {
        if e >= 0 {
            Ok(a.pow(e as u64))
        } else {
            Ok(a.inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// Parses a polynomial in a new level label over an existing tower.
struct LevelPolyEval {
    lower: Arc<Tower>,
    label: String,
}

impl Evaluator for LevelPolyEval {
    type V = UniPoly<AlgElem>;
    fn int(&self, n: u64) -> Result<Self::V> {
        Ok(UniPoly::constant(AlgEval(self.lower.clone()).int(n)?))
    }
    fn var(&self, name: &str, pos: usize) -> Result<Self::V> {
        if name == self.label {
            return Ok(UniPoly::var(AlgElem::zero(&self.lower)));
        }
        Ok(UniPoly::constant(AlgEval(self.lower.clone()).var(name, pos)?))
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        Ok(a.mul(b))
    }
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        if b.degree() != Some(0) {
            return Err(Error::Invalid(format!("division by a polynomial in '{}'", self.label)));
        }
        Ok(a.scale(&b.lc().inv()?))
    }
    fn neg(&self, a: &Self::V) -> Result<Self::V> {
        Ok(UniPoly::zero(a.zero_elem().clone()).sub(a))
    }
    fn pow(&self, a: &Self::V, e: i64) -> Result<Self::V> {
        if e >= 0 {
            return Ok(a.pow(e as u64));
        }
        if a.degree() != Some(0) {
            return Err(Error::Invalid("negative power of a polynomial".into()));
        }
        Ok(UniPoly::constant(a.lc().inv()?.pow(e.unsigned_abs())))
    }
}

#[cfg(test)]
mod tests;
