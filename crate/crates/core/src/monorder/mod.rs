//! Monogenic orders `O[s]` for `O = F_q[x]` or `O = O_{K,T}`, membership,
//! equality, and relations `t = a t_i^q + b` between generators.

pub mod sym;

use std::fmt;

use crate::algebra::{IncrementalBasis, KPoly};
use crate::error::{Error, Result};
use crate::funcfield::{PlaceSet, RatFunc};
use crate::tower::AlgElem;

/// Default search horizon for [`fit_generator_relation`].
pub const DEFAULT_MAX_E: u32 = 8;

#[derive(Clone, Debug, PartialEq)]
pub enum BaseRing {
    /// `F_q[x]`.
    Poly,
    /// `O_{K,T}`.
    TIntegers(PlaceSet),
}

impl BaseRing {
    pub fn contains(&self, a: &RatFunc) -> bool {
        match self {
            BaseRing::Poly => a.is_poly(),
            BaseRing::TIntegers(t) => t.is_t_integer(a),
        }
    }
    pub fn is_unit(&self, a: &RatFunc) -> bool {
        match self {
            BaseRing::Poly => a.is_constant() && !a.is_zero(),
            BaseRing::TIntegers(t) => t.is_t_unit(a),
        }
    }
    pub fn contains_poly(&self, g: &KPoly) -> bool {
        g.coeffs().iter().all(|c| self.contains(c))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Poly => f.write_str("F_q[x]"),
            BaseRing::TIntegers(t) => write!(f, "O_T, T={t}"),
        }
    }
}

/// `O[s] = O + O s + ... + O s^{d-1}`.
pub struct MonOrder {
    gen: AlgElem,
    ring: BaseRing,
    minpoly: KPoly,
    basis: IncrementalBasis<RatFunc>,
}

impl MonOrder {
    /// Errors with `NotIntegral` when the minimal polynomial of `s` has a
    /// coefficient outside the ring.
    pub fn new(s: &AlgElem, ring: BaseRing) -> Result<Self> {
        let g = s.minimal_polynomial();
        if !ring.contains_poly(&g) {
            return Err(Error::NotIntegral(format!("minimal polynomial {} of {s} is not over {ring}", g.fmt_var("Y"))));
        }
        let d = g.degree().expect("nonzero");
        let t = s.tower();
        let mut basis = IncrementalBasis::new(t.degree(), RatFunc::zero(t.field()));
        let mut pw = AlgElem::one(t);
        for _ in 0..d {
            basis.insert(pw.coords()).expect("powers below the degree are independent");
            pw = pw.mul(s);
        }
        Ok(MonOrder { gen: s.clone(), ring, minpoly: g, basis })
    }

    pub fn generator(&self) -> &AlgElem {
        &self.gen
    }
    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }
    pub fn minimal_polynomial(&self) -> &KPoly {
        &self.minpoly
    }
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates `c_i` with `t = sum c_i s^i`; `None` when `t` is not in `K(s)`.
    pub fn express(&self, t: &AlgElem) -> Option<Vec<RatFunc>> {
        self.basis.express(t.coords())
    }

    pub fn contains(&self, t: &AlgElem) -> bool {
        self.express(t).is_some_and(|c| c.iter().all(|a| self.ring.contains(a)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrderRelation {
    Equal,
    Different {
        reason: String,
    },
    /// One generator is not integral; equality is not decided.
    NotIntegral {
        detail: String,
    },
}

impl OrderRelation {
    pub fn is_equal(&self) -> bool {
        *self == OrderRelation::Equal
    }
}

/// Decides `O[s] = O[t]`.
pub fn orders_equal(s: &AlgElem, t: &AlgElem, ring: &BaseRing) -> OrderRelation {
    let os = match MonOrder::new(s, ring.clone()) {
        Ok(o) => o,
        Err(e) => return OrderRelation::NotIntegral { detail: e.to_string() },
    };
    orders_equal_with(&os, t)
}

/// As [`orders_equal`] with a prebuilt order for `s`.
pub fn orders_equal_with(os: &MonOrder, t: &AlgElem) -> OrderRelation {
    let g = t.minimal_polynomial();
    if !os.ring.contains_poly(&g) {
        return OrderRelation::NotIntegral {
            detail: format!("minimal polynomial {} of {t} is not over {}", g.fmt_var("Y"), os.ring),
        };
    }
    if g.degree() != Some(os.degree()) {
        return OrderRelation::Different { reason: format!("degrees {} and {}", os.degree(), g.degree().unwrap_or(0)) };
    }
    if !os.contains(t) {
        return OrderRelation::Different { reason: "t is not in O[s]".into() };
    }
    let ot = MonOrder::new(t, os.ring.clone()).expect("integrality checked");
    if !ot.contains(&os.gen) {
        return OrderRelation::Different { reason: "s is not in O[t]".into() };
    }
    OrderRelation::Equal
}

/// `t` integral over `O_{K,T}` with `disc(t)` a `T`-unit.
pub fn disc_form_predicate(t: &AlgElem, places: &PlaceSet) -> Result<bool> {
    let g = t.minimal_polynomial();
    let ring = BaseRing::TIntegers(places.clone());
    if !ring.contains_poly(&g) {
        return Ok(false);
    }
    let d = g.discriminant()?;
    if d.is_zero() {
        return Err(Error::Inseparable(format!("{t}")));
    }
    Ok(places.is_t_unit(&d))
}

/// `t = a t_i^q + b` with `q = p^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorRelation {
    pub a: RatFunc,
    pub b: RatFunc,
    pub e: u32,
    pub q: u64,
    /// `a^{d(d-1)} disc(t_i)^{q-1}`, equal to `disc(t)/disc(t_i)`.
    pub disc_factor: RatFunc,
    pub disc_factor_is_unit: bool,
    pub b_in_ring: bool,
}

/// Smallest `e <= max_e` with `t = a t_i^{p^e} + b`, `a, b in K`.
pub fn fit_generator_relation(
    t: &AlgElem,
    ti: &AlgElem,
    max_e: u32,
    ring: &BaseRing,
) -> Result<Option<GeneratorRelation>> {
    let tw = t.tower();
    let f = tw.field().clone();
    let p = f.p();
    let gi = ti.minimal_polynomial();
    let d = gi.degree().expect("nonzero") as i64;
    if d < 2 {
        return Err(Error::Hypothesis("reference generator has degree < 2".into()));
    }
    let disc_i = gi.discriminant()?;
    let one = AlgElem::one(tw);
    let mut u = ti.clone();
    for e in 0..=max_e {
        if e > 0 {
            u = u.frobenius_power(1);
        }
        let Some(q) = p.checked_pow(e) else { break };
        let mut basis = IncrementalBasis::new(tw.degree(), RatFunc::zero(&f));
        basis.insert(one.coords()).expect("one is nonzero");
        if basis.insert(u.coords()).is_err() {
            continue;
        }
        let Some(c) = basis.express(t.coords()) else { continue };
        let (b, a) = (c[0].clone(), c[1].clone());
        if a.is_zero() {
            continue;
        }
        let disc_factor = &a.pow(d * (d - 1))? * &disc_i.pow(q as i64 - 1)?;
        return Ok(Some(GeneratorRelation {
            disc_factor_is_unit: ring.is_unit(&disc_factor),
            b_in_ring: ring.contains(&b),
            a,
            b,
            e,
            q,
            disc_factor,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Place, Poly};
    use crate::gf::FqCtx;
    use crate::tower::Tower;

    #[test]
    fn counterexample_membership() {
        let f2 = FqCtx::prime(2).unwrap();
        let t = Tower::from_text(&f2, &[("s", "s^4+x^4*s^2+x^3*s+x+1")]).unwrap();
        let s = AlgElem::gen(&t, 0);
        let o = MonOrder::new(&s, BaseRing::Poly).unwrap();
        let z1 = AlgElem::parse(&t, "(s^4+x+1)/x^3").unwrap();
        let x = RatFunc::x(&f2);
        let (zero, one) = (RatFunc::zero(&f2), RatFunc::one(&f2));
        assert_eq!(o.express(&z1).unwrap(), vec![zero.clone(), one.clone(), x.clone(), zero.clone()]);
        assert!(o.contains(&z1));
        let sx = AlgElem::parse(&t, "s/x").unwrap();
        assert!(!o.contains(&sx));
        assert!(orders_equal(&s, &z1, &BaseRing::Poly).is_equal());
        let xs = Place::finite(Poly::x(&f2)).unwrap();
        let tx = PlaceSet::new(&f2, [xs]);
        assert!(disc_form_predicate(&s, &tx).unwrap());
        assert!(!disc_form_predicate(&s, &PlaceSet::infinity_only(&f2)).unwrap());
        assert!(matches!(orders_equal(&s, &sx, &BaseRing::Poly), OrderRelation::NotIntegral { .. }));
    }

    #[test]
    fn first_example_relation() {
        let f2 = FqCtx::prime(2).unwrap();
        let t = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
        let s = AlgElem::parse(&t, "x*y").unwrap();
        let s1 = AlgElem::parse(&t, "x*y^4").unwrap();
        assert!(orders_equal(&s, &s1, &BaseRing::Poly).is_equal());
        let r = fit_generator_relation(&s1, &s, 8, &BaseRing::Poly).unwrap().unwrap();
        assert_eq!((r.e, r.q), (2, 4));
        assert_eq!(r.a, RatFunc::x(&f2).pow(-3).unwrap());
        assert!(r.b.is_zero());
        assert!(r.disc_factor_is_unit);
        assert_eq!(s1.discriminant().unwrap(), &r.disc_factor * &s.discriminant().unwrap());
        let same = fit_generator_relation(&s, &s, 8, &BaseRing::Poly).unwrap().unwrap();
        assert_eq!((same.e, same.a.is_one(), same.b.is_zero()), (0, true, true));
    }
}
