//! Finitely generated subgroups `G` of `K^*`, `K = F_q(x)`, and the unit
//! equations `x + y = 1` and `x + y + z = 1` over them.
//!
//! Elements are stored as a constant times a product of powers of monic
//! irreducibles (the coprime basis). `G` is the lattice of vectors
//! `(dlog c, e_1, ..., e_B)` in `Z/(q-1) x Z^B`; its radical `H` is the
//! saturation of the free part together with all of `F_q^*`.

pub mod bounds;
pub mod lattice;
mod solve;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::funcfield::{factor, poly_valuation, Poly, RatFunc};
use crate::gf::{Fq, FqElem};
use lattice::{echelon, saturation, to_big, Echelon, IVec};

pub use crate::funcfield::pth_power_decompose;
pub use bounds::{c1_brute_force, delta_set, ess_bound_log10, lemma_c1, C1Check, DeltaReport};
pub use solve::{
    brute_force_xy1, brute_force_xyz1, solve_xy1, SolutionFamily, Xy1Report, Xyz1Solution, MAX_SOLVER_RANK,
};

/// `torsion * prod basis_i^{exps_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub exps: Vec<i64>,
    pub torsion: FqElem,
}

impl GroupElem {
    pub fn is_torsion(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
    pub fn max_abs_exponent(&self) -> i64 {
        self.exps.iter().map(|e| e.abs()).max().unwrap_or(0)
    }
    pub fn mul(&self, o: &Self) -> Self {
        GroupElem {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.mul(&o.torsion).expect("same field"),
        }
    }
    pub fn pow(&self, k: i64) -> Self {
        GroupElem {
            exps: self.exps.iter().map(|a| a * k).collect(),
            torsion: self.torsion.pow(k).expect("nonzero torsion"),
        }
    }
    /// `self^(p^e)`.
    pub fn frobenius(&self, e: u32) -> Self {
        let p = self.torsion.ctx().p() as i64;
        GroupElem { exps: self.exps.iter().map(|a| a * p.pow(e)).collect(), torsion: self.torsion.frobenius(e) }
    }
}

pub struct GroupCtx {
    field: Fq,
    basis: Vec<Poly>,
    generators: Vec<RatFunc>,
    gen_elems: Vec<GroupElem>,
    lattice: Echelon,
    free_rank: usize,
    radical: Vec<IVec>,
    radical_ech: Echelon,
    torsion_step: u64,
}

impl fmt::Debug for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "GroupCtx[basis {{{}}}, rank {}, torsion order {}]",
            b.join(", "),
            self.free_rank,
            self.torsion_order()
        )
    }
}

/// `G = <generators>`.
pub fn build_group(field: &Fq, generators: &[RatFunc]) -> Result<GroupCtx> {
    if generators.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroInput);
    }
    if generators.iter().any(|g| g.ctx() != field) {
        return Err(Error::ContextMismatch);
    }
    let mut primes = BTreeSet::new();
    for g in generators {
        for p in [g.num(), g.den()] {
            if !p.is_constant() {
                for (f, _) in factor(p)?.factors {
                    primes.insert(f);
                }
            }
        }
    }
    let basis: Vec<Poly> = primes.into_iter().collect();
    let nb = basis.len();
    let mut ctx = GroupCtx {
        field: field.clone(),
        basis,
        generators: generators.to_vec(),
        gen_elems: Vec::new(),
        lattice: echelon(&[], 0),
        free_rank: 0,
        radical: Vec::new(),
        radical_ech: echelon(&[], 0),
        torsion_step: 1,
    };
    ctx.gen_elems = generators.iter().map(|g| ctx.factor_elem(g).expect("basis covers the generators")).collect();
    let q1 = field.q() - 1;
    let mut rows: Vec<IVec> = ctx.gen_elems.iter().map(|e| ctx.lattice_vector(e)).collect();
    let mut tors = vec![BigInt::from(q1)];
    tors.extend(std::iter::repeat_n(BigInt::from(0), nb));
    rows.push(tors);
    ctx.lattice = echelon(&rows, nb + 1);
    let free: Vec<IVec> = ctx.gen_elems.iter().map(|e| to_big(&e.exps)).collect();
    ctx.free_rank = echelon(&free, nb).rank();
    ctx.radical = saturation(&free, nb);
    ctx.radical_ech = echelon(&ctx.radical, nb);
    debug_assert_eq!(ctx.radical.len(), ctx.free_rank);
    ctx.torsion_step = (1..=q1)
        .filter(|d| q1.is_multiple_of(*d))
        .find(|&d| {
            let mut v = vec![BigInt::from(d)];
            v.extend(std::iter::repeat_n(BigInt::from(0), nb));
            ctx.lattice.contains(&v)
        })
        .expect("q-1 is in the lattice");
    Ok(ctx)
}

impl GroupCtx {
    pub fn field(&self) -> &Fq {
        &self.field
    }
    /// Monic irreducibles dividing some generator, ascending.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }
    pub fn generators(&self) -> &[RatFunc] {
        &self.generators
    }
    pub fn generator_elems(&self) -> &[GroupElem] {
        &self.gen_elems
    }
    /// Rank `r` of `G`.
    pub fn rank(&self) -> usize {
        self.free_rank
    }
    /// `|G cap F_q^*|`.
    pub fn torsion_order(&self) -> u64 {
        (self.field.q() - 1) / self.torsion_step
    }
    /// Basis of the free part of the radical `H`, as exponent vectors.
    pub fn radical_basis(&self) -> Vec<GroupElem> {
        self.radical
            .iter()
            .map(|v| GroupElem {
                exps: lattice::to_i64(v).expect("small exponents"),
                torsion: FqElem::one(&self.field),
            })
            .collect()
    }

    fn lattice_vector(&self, e: &GroupElem) -> IVec {
        let dl = if e.torsion.is_one() { 0 } else { self.field.dlog_raw(e.torsion.raw()).expect("nonzero") };
        let mut v = vec![BigInt::from(dl)];
        v.extend(e.exps.iter().map(|&a| BigInt::from(a)));
        v
    }

    pub fn one(&self) -> GroupElem {
        GroupElem { exps: vec![0; self.basis.len()], torsion: FqElem::one(&self.field) }
    }

    pub fn constant(&self, c: &FqElem) -> GroupElem {
        GroupElem { exps: vec![0; self.basis.len()], torsion: c.clone() }
    }

    /// Factorization of `a` over the basis; `None` if another prime divides it.
    pub fn factor_elem(&self, a: &RatFunc) -> Option<GroupElem> {
        if a.is_zero() || a.ctx() != &self.field {
            return None;
        }
        let mut num = a.num().clone();
        let mut den = a.den().clone();
        let mut exps = Vec::with_capacity(self.basis.len());
        for p in &self.basis {
            let vn = poly_valuation(&num, p);
            let vd = poly_valuation(&den, p);
            if vn > 0 {
                num = num.div_exact(&p.pow(vn as u64)).expect("valuation");
            }
            if vd > 0 {
                den = den.div_exact(&p.pow(vd as u64)).expect("valuation");
            }
            exps.push(vn - vd);
        }
        if !num.is_constant() || !den.is_constant() {
            return None;
        }
        Some(GroupElem { exps, torsion: num.coeff(0).div(&den.coeff(0)).expect("nonzero") })
    }

    pub fn value(&self, e: &GroupElem) -> RatFunc {
        let mut num = Poly::constant(&e.torsion);
        let mut den = Poly::one(&self.field);
        for (p, &k) in self.basis.iter().zip(&e.exps) {
            if k > 0 {
                num = &num * &p.pow(k as u64);
            } else if k < 0 {
                den = &den * &p.pow(k.unsigned_abs());
            }
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn contains(&self, e: &GroupElem) -> bool {
        self.lattice.contains(&self.lattice_vector(e))
    }

    /// Membership in the radical `H`.
    pub fn in_radical(&self, e: &GroupElem) -> bool {
        self.radical_ech.contains(&to_big(&e.exps))
    }

    pub fn format(&self, e: &GroupElem) -> String {
        self.value(e).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;
    use crate::parse::parse_ratfunc;

    fn k(f: &Fq, s: &str) -> RatFunc {
        parse_ratfunc(f, s).unwrap()
    }

    #[test]
    fn coprime_bases() {
        let f2 = FqCtx::prime(2).unwrap();
        let g = build_group(&f2, &[k(&f2, "x"), k(&f2, "1-x")]).unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x", "x+1"]);
        let g = build_group(&f2, &[k(&f2, "x^2*(x+1)"), k(&f2, "x")]).unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.basis().len(), 2);
        let f7 = FqCtx::prime(7).unwrap();
        let g = build_group(&f7, &[k(&f7, "3"), k(&f7, "x")]).unwrap();
        assert_eq!((g.rank(), g.torsion_order()), (1, 6));
        assert!(g.contains(&g.constant(&FqElem::from_int(&f7, 3))));
        let g = build_group(&f7, &[k(&f7, "2*x^2")]).unwrap();
        assert_eq!(g.torsion_order(), 1);
        assert!(!g.contains(&g.factor_elem(&k(&f7, "x")).unwrap()));
        assert!(g.in_radical(&g.factor_elem(&k(&f7, "x")).unwrap()));
        assert!(g.contains(&g.factor_elem(&k(&f7, "4*x^4")).unwrap()));
        assert!(!g.contains(&g.factor_elem(&k(&f7, "x^4")).unwrap()));
        assert!(build_group(&f7, &[k(&f7, "0")]).is_err());
    }

    #[test]
    fn factor_round_trip() {
        let f3 = FqCtx::prime(3).unwrap();
        let g = build_group(&f3, &[k(&f3, "x/(x+1)"), k(&f3, "2*(x^2+1)")]).unwrap();
        let a = k(&f3, "2*(x^2+1)^3/(x^2*(x+1))");
        let e = g.factor_elem(&a).unwrap();
        assert_eq!(g.value(&e), a);
        assert!(g.factor_elem(&k(&f3, "x+2")).is_none());
    }
}
