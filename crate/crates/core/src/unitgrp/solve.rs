//! `x + y = 1` over `G` by coset descent through `H/H^p`, plus exhaustive
//! oracles for `x + y = 1` and `x + y + z = 1` in exponent boxes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{pth_power_decompose, GroupCtx, GroupElem};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::gf::FqElem;

/// Largest rank accepted by [`solve_xy1`].
pub const MAX_SOLVER_RANK: usize = 6;
/// Largest number of candidate elements enumerated by the oracles.
const ORACLE_BUDGET: u64 = 5_000_000;

/// The orbit `{(x0^(p^k), y0^(p^k)) : k >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionFamily {
    /// Constant solutions; the orbit is finite.
    pub torsion: bool,
    pub x0: GroupElem,
    pub y0: GroupElem,
    /// `k` with `(x0, y0)` the `p^k`-th power of a solution in `H` outside `H^p`.
    pub depth: u32,
}

impl SolutionFamily {
    /// Orbit members whose exponent vectors have max-norm at most `bound`.
    pub fn members_within(&self, bound: i64) -> Vec<(GroupElem, GroupElem)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let (mut x, mut y) = (self.x0.clone(), self.y0.clone());
        while x.max_abs_exponent() <= bound && y.max_abs_exponent() <= bound {
            if !seen.insert((x.clone(), y.clone())) {
                break;
            }
            out.push((x.clone(), y.clone()));
            x = x.frobenius(1);
            y = y.frobenius(1);
        }
        out
    }

    pub fn describe(&self, ctx: &GroupCtx) -> String {
        format!("({}, {}) ^ p^k, k>=0", ctx.format(&self.x0), ctx.format(&self.y0))
    }
}

#[derive(Clone, Debug)]
pub struct Xy1Report {
    pub families: Vec<SolutionFamily>,
    /// Solutions in `H^2` outside `(H^p)^2`.
    pub primitive_in_radical: usize,
    /// Primitive solutions whose orbit did not enter `G^2` within the height bound.
    pub unreached: Vec<(GroupElem, GroupElem)>,
    /// Coset pairs examined.
    pub pairs_examined: usize,
}

/// Sum `sum a_j h_j` of radical basis vectors.
fn coset_rep(ctx: &GroupCtx, basis: &[GroupElem], a: &[u64]) -> GroupElem {
    let mut e = ctx.one();
    for (h, &k) in basis.iter().zip(a) {
        if k > 0 {
            e = e.mul(&h.pow(k as i64));
        }
    }
    e
}

/// The unique `(x, y) in (H^p eps_i) x (H^p eps_j)` with `x + y = 1`, if any.
fn solve_pair(ctx: &GroupCtx, ei: &RatFunc, ej: &RatFunc) -> Option<(GroupElem, GroupElem)> {
    let p = ctx.field().p() as usize;
    let d = pth_power_decompose(ei);
    let c = pth_power_decompose(ej);
    // eps_j = a^p + b^p eps_i; eps_i is not a p-th power, so some d_m != 0, m >= 1
    let m = (1..p).find(|&m| !d[m].is_zero())?;
    let b = c[m].div(&d[m]).ok()?;
    if (1..p).any(|m| c[m] != &b * &d[m]) {
        return None;
    }
    let a = &c[0] - &(&b * &d[0]);
    if a.is_zero() {
        return None;
    }
    // x_1 = -b/a, y_1 = 1/a
    let ai = a.inv().ok()?;
    let x1 = -&(&b * &ai);
    if x1.is_zero() {
        return None;
    }
    let x = &x1.frobenius() * ei;
    let y = &ai.frobenius() * ej;
    if !(&x + &y).is_one() {
        return None;
    }
    let (gx, gy) = (ctx.factor_elem(&x)?, ctx.factor_elem(&y)?);
    (ctx.in_radical(&gx) && ctx.in_radical(&gy)).then_some((gx, gy))
}

/// All solutions of `x + y = 1` in `G^2`, as Frobenius orbits.
pub fn solve_xy1(ctx: &GroupCtx, height_bound: u32) -> Result<Xy1Report> {
    let r = ctx.rank();
    if r > MAX_SOLVER_RANK {
        return Err(Error::Budget(format!("rank {r} exceeds {MAX_SOLVER_RANK}")));
    }
    let f = ctx.field().clone();
    let p = f.p();
    let hb = ctx.radical_basis();
    let n = p.pow(r as u32);
    let reps: Vec<(GroupElem, RatFunc)> = (1..n)
        .map(|mut idx| {
            let mut a = Vec::with_capacity(r);
            for _ in 0..r {
                a.push(idx % p);
                idx /= p;
            }
            let e = coset_rep(ctx, &hb, &a);
            let v = ctx.value(&e);
            (e, v)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len()).flat_map(|i| (0..reps.len()).map(move |j| (i, j))).collect();
    let mut primitive: Vec<(GroupElem, GroupElem)> =
        pairs.par_iter().filter_map(|&(i, j)| solve_pair(ctx, &reps[i].1, &reps[j].1)).collect();
    primitive.sort();
    primitive.dedup();

    let mut families = Vec::new();
    let mut unreached = Vec::new();
    for (x, y) in &primitive {
        match (0..=height_bound).find(|&k| ctx.contains(&x.frobenius(k)) && ctx.contains(&y.frobenius(k))) {
            Some(k) => {
                families.push(SolutionFamily { torsion: false, x0: x.frobenius(k), y0: y.frobenius(k), depth: k })
            }
            None => unreached.push((x.clone(), y.clone())),
        }
    }

    // constant solutions, one family per Frobenius orbit
    let mut seen = BTreeSet::new();
    for c in 2..f.q() {
        let cx = FqElem::from_coeffs(&f, &f.digits(c)).expect("in range");
        let cy = FqElem::one(&f).sub(&cx).expect("same field");
        let (gx, gy) = (ctx.constant(&cx), ctx.constant(&cy));
        if seen.contains(&cx) || !ctx.contains(&gx) || !ctx.contains(&gy) {
            continue;
        }
        let mut orbit = vec![cx.clone()];
        let mut cur = cx.frobenius(1);
        while cur != cx {
            orbit.push(cur.clone());
            cur = cur.frobenius(1);
        }
        let rep = orbit.iter().min().expect("nonempty").clone();
        seen.extend(orbit);
        let ry = FqElem::one(&f).sub(&rep).expect("same field");
        families.push(SolutionFamily { torsion: true, x0: ctx.constant(&rep), y0: ctx.constant(&ry), depth: 0 });
    }
    families.sort();
    Ok(Xy1Report { families, primitive_in_radical: primitive.len(), unreached, pairs_examined: pairs.len() })
}

/// Elements of `G` with exponent max-norm at most `bound`, sorted.
fn box_elements(ctx: &GroupCtx, bound: i64) -> Result<Vec<GroupElem>> {
    let f = ctx.field();
    let nb = ctx.basis().len();
    let side = (2 * bound + 1) as u64;
    let count = side.checked_pow(nb as u32).and_then(|c| c.checked_mul(f.q() - 1));
    if count.is_none_or(|c| c > ORACLE_BUDGET) {
        return Err(Error::Budget(format!("exponent box {bound} over {nb} primes is too large")));
    }
    let consts: Vec<FqElem> = (1..f.q()).map(|c| FqElem::from_coeffs(f, &f.digits(c)).expect("in range")).collect();
    let mut out = Vec::new();
    let mut v = vec![-bound; nb];
    loop {
        for c in &consts {
            let e = GroupElem { exps: v.clone(), torsion: c.clone() };
            if ctx.contains(&e) {
                out.push(e);
            }
        }
        let mut i = 0;
        while i < nb && v[i] == bound {
            v[i] = -bound;
            i += 1;
        }
        if i == nb {
            break;
        }
        v[i] += 1;
    }
    out.sort();
    Ok(out)
}

/// All `(x, y) in G^2` with `x + y = 1` and exponent max-norm at most `bound`,
/// by exhaustive enumeration.
pub fn brute_force_xy1(ctx: &GroupCtx, bound: i64) -> Result<Vec<(GroupElem, GroupElem)>> {
    let one = RatFunc::one(ctx.field());
    let elems = box_elements(ctx, bound)?;
    let mut out: Vec<(GroupElem, GroupElem)> = elems
        .par_iter()
        .filter_map(|x| {
            let y = &one - &ctx.value(x);
            let gy = ctx.factor_elem(&y)?;
            (gy.max_abs_exponent() <= bound && ctx.contains(&gy)).then(|| (x.clone(), gy))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Xyz1Solution {
    pub x: GroupElem,
    pub y: GroupElem,
    pub z: GroupElem,
    /// Some two-term subsum vanishes.
    pub degenerate: bool,
}

/// All `(x, y, z) in G^3` with `x + y + z = 1` and exponent max-norm at
/// most `bound`.
pub fn brute_force_xyz1(ctx: &GroupCtx, bound: i64) -> Result<Vec<Xyz1Solution>> {
    let one = RatFunc::one(ctx.field());
    let elems = box_elements(ctx, bound)?;
    let vals: Vec<RatFunc> = elems.iter().map(|e| ctx.value(e)).collect();
    let n = elems.len() as u64;
    if n.saturating_mul(n) > ORACLE_BUDGET {
        return Err(Error::Budget(format!("{n} box elements give too many pairs")));
    }
    let mut out: Vec<Xyz1Solution> = (0..elems.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (elems, vals, one) = (&elems, &vals, &one);
            (0..elems.len()).filter_map(move |j| {
                let z = &(one - &vals[i]) - &vals[j];
                let gz = ctx.factor_elem(&z)?;
                if gz.max_abs_exponent() > bound || !ctx.contains(&gz) {
                    return None;
                }
                let degenerate =
                    (&vals[i] + &vals[j]).is_zero() || (&vals[i] + &z).is_zero() || (&vals[j] + &z).is_zero();
                Some(Xyz1Solution { x: elems[i].clone(), y: elems[j].clone(), z: gz, degenerate })
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::build_group;
    use super::*;
    use crate::gf::FqCtx;
    use crate::parse::parse_ratfunc;

    fn union_within(fams: &[SolutionFamily], bound: i64) -> Vec<(GroupElem, GroupElem)> {
        let mut v: Vec<_> = fams.iter().flat_map(|f| f.members_within(bound)).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn two_generator_group_matches_oracle() {
        let f2 = FqCtx::prime(2).unwrap();
        let g = build_group(&f2, &[parse_ratfunc(&f2, "x").unwrap(), parse_ratfunc(&f2, "1-x").unwrap()]).unwrap();
        let rep = solve_xy1(&g, 8).unwrap();
        // the cross-ratio orbit of x
        assert_eq!(rep.families.len(), 6);
        let d: Vec<String> = rep.families.iter().map(|f| f.describe(&g)).collect();
        assert!(d.contains(&"(x, x+1) ^ p^k, k>=0".to_string()), "{d:?}");
        assert_eq!(union_within(&rep.families, 6), brute_force_xy1(&g, 6).unwrap());
    }

    #[test]
    fn torsion_only() {
        let f4 = FqCtx::builtin(2, 2).unwrap();
        let gamma = RatFunc::constant(&FqElem::gen(&f4).unwrap());
        let g = build_group(&f4, &[gamma]).unwrap();
        let rep = solve_xy1(&g, 4).unwrap();
        assert_eq!(rep.families.len(), 1);
        assert!(rep.families[0].torsion);
        assert_eq!(union_within(&rep.families, 0).len(), 2);
        assert_eq!(brute_force_xy1(&g, 0).unwrap().len(), 2);
        let f2 = FqCtx::prime(2).unwrap();
        let g = build_group(&f2, &[RatFunc::x(&f2)]).unwrap();
        assert!(solve_xy1(&g, 8).unwrap().families.is_empty());
        assert!(brute_force_xy1(&g, 12).unwrap().is_empty());
    }

    #[test]
    fn three_term_oracle() {
        let f2 = FqCtx::prime(2).unwrap();
        let g = build_group(&f2, &[RatFunc::x(&f2), parse_ratfunc(&f2, "x+1").unwrap()]).unwrap();
        let sols = brute_force_xyz1(&g, 2).unwrap();
        // x + (x+1) + 0 is not allowed; x^2 + x + (x^2+x+1) needs a third prime
        let one = RatFunc::one(&f2);
        for s in &sols {
            assert_eq!(&(&g.value(&s.x) + &g.value(&s.y)) + &g.value(&s.z), one);
        }
        assert!(sols.iter().any(|s| !s.degenerate));
    }
}
