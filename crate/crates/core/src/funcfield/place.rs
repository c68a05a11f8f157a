use std::collections::BTreeSet;
use std::fmt;

use super::{factor, is_irreducible, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::gf::Fq;

/// A place of `F_q(x)`: a monic irreducible polynomial or infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Self> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::NotIrreducible(format!("place {pi}")));
        }
        Ok(Place::Finite(pi))
    }

    /// Residue degree `n_v`.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.deg() as u64,
        }
    }

    /// `v(a)`; zero has infinite valuation and is rejected.
    pub fn valuation(&self, a: &RatFunc) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            Place::Infinity => a.den().deg() - a.num().deg(),
            Place::Finite(pi) => poly_valuation(a.num(), pi) - poly_valuation(a.den(), pi),
        })
    }
}

/// Multiplicity of `pi` in nonzero `f`.
pub fn poly_valuation(f: &Poly, pi: &Poly) -> i64 {
    let mut f = f.clone();
    let mut v = 0;
    loop {
        let (q, r) = f.divrem(pi).expect("nonzero place");
        if !r.is_zero() {
            return v;
        }
        f = q;
        v += 1;
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}
impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

/// Finite set of places, always containing infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaceSet {
    ctx: Fq,
    places: BTreeSet<Place>,
}

impl PlaceSet {
    /// `{inf}`.
    pub fn infinity_only(ctx: &Fq) -> Self {
        PlaceSet { ctx: ctx.clone(), places: BTreeSet::from([Place::Infinity]) }
    }

    pub fn new(ctx: &Fq, places: impl IntoIterator<Item = Place>) -> Self {
        let mut s = Self::infinity_only(ctx);
        s.places.extend(places);
        s
    }

    pub fn insert(&mut self, p: Place) {
        self.places.insert(p);
    }
    pub fn contains(&self, p: &Place) -> bool {
        self.places.contains(p)
    }
    pub fn iter(&self) -> impl Iterator<Item = &Place> {
        self.places.iter()
    }
    pub fn len(&self) -> usize {
        self.places.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn ctx(&self) -> &Fq {
        &self.ctx
    }
    pub fn finite(&self) -> impl Iterator<Item = &Poly> {
        self.places.iter().filter_map(|p| match p {
            Place::Finite(f) => Some(f),
            Place::Infinity => None,
        })
    }

    /// Valuation `>= 0` at every finite place outside the set.
    pub fn is_t_integer(&self, a: &RatFunc) -> bool {
        if a.is_zero() {
            return true;
        }
        self.den_outside(a.den()).is_constant()
    }

    /// Valuation `= 0` at every finite place outside the set.
    pub fn is_t_unit(&self, a: &RatFunc) -> bool {
        !a.is_zero() && self.den_outside(a.den()).is_constant() && self.den_outside(a.num()).is_constant()
    }

    /// Part of `f` coprime to every finite place in the set.
    fn den_outside(&self, f: &Poly) -> Poly {
        let mut f = f.clone();
        for pi in self.finite() {
            while !f.is_constant() {
                let (q, r) = f.divrem(pi).expect("nonzero");
                if !r.is_zero() {
                    break;
                }
                f = q;
            }
        }
        f
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Places where `a` has nonzero valuation, with those valuations.
pub fn support(a: &RatFunc) -> Result<Vec<(Place, i64)>> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    let vinf = Place::Infinity.valuation(a)?;
    if vinf != 0 {
        out.push((Place::Infinity, vinf));
    }
    let mut fin: Vec<(Place, i64)> = Vec::new();
    for (f, sign) in [(a.num(), 1i64), (a.den(), -1)] {
        if f.is_constant() {
            continue;
        }
        for (g, e) in factor(f)?.factors {
            fin.push((Place::Finite(g), sign * e as i64));
        }
    }
    fin.sort();
    out.extend(fin);
    Ok(out)
}

/// `sum_v n_v v(a)`, which vanishes for every nonzero `a`.
pub fn product_formula_sum(a: &RatFunc) -> Result<i64> {
    Ok(support(a)?.iter().map(|(p, v)| p.degree() as i64 * v).sum())
}

/// Rank of `O_{K,T}^*` and generators of its free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRank {
    pub rank: usize,
    pub generators: Vec<Poly>,
}

/// `rank O_{K,T}^* = |T| - 1`, generated modulo `F_q^*` by the finite places.
pub fn unit_group_rank(t: &PlaceSet) -> UnitRank {
    let generators: Vec<Poly> = t.finite().cloned().collect();
    UnitRank { rank: t.len() - 1, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn valuations_of_an_example() {
        let f3 = FqCtx::prime(3).unwrap();
        let x = Poly::x(&f3);
        let xp1 = Poly::from_coeffs(&f3, vec![1, 1]);
        let a = RatFunc::new(x.pow(2), xp1.clone()).unwrap();
        assert_eq!(Place::finite(x.clone()).unwrap().valuation(&a).unwrap(), 2);
        assert_eq!(Place::finite(xp1).unwrap().valuation(&a).unwrap(), -1);
        assert_eq!(Place::Infinity.valuation(&a).unwrap(), -1);
        assert_eq!(product_formula_sum(&a).unwrap(), 0);
        assert_eq!(Place::Infinity.valuation(&RatFunc::zero(&f3)), Err(Error::ZeroInput));
    }

    #[test]
    fn t_integers_and_units() {
        let f2 = FqCtx::prime(2).unwrap();
        let x = Poly::x(&f2);
        let t = PlaceSet::new(&f2, [Place::finite(x.clone()).unwrap()]);
        let inv_x = RatFunc::new(Poly::one(&f2), x.clone()).unwrap();
        assert!(t.is_t_integer(&inv_x));
        assert!(t.is_t_unit(&inv_x));
        let xp1 = RatFunc::from_poly(Poly::from_coeffs(&f2, vec![1, 1]));
        assert!(t.is_t_integer(&xp1));
        assert!(!t.is_t_unit(&xp1));
        assert_eq!(unit_group_rank(&t).rank, 1);
    }
}
