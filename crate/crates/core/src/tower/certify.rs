//! Irreducibility certificates by specialization.
//!
//! A factor of degree `a` over the field below a level survives reduction
//! at any unramified degree-one place, so every specialized factorization
//! contains a sub-multiset of degrees summing to `a`. A degree `a` with
//! `0 < a < n` that no specialization can realise proves irreducibility.

use std::sync::Arc;

use super::Tower;
use crate::algebra::KPoly;
use crate::funcfield::{degree_pattern, factor, roots, Poly, RatFunc};
use crate::gf::{Fq, FqCtx};

/// Specializations tried before giving up.
const MAX_SPECIALIZATIONS: usize = 256;
/// Largest residue field used for specialization.
const MAX_RESIDUE_FIELD: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Certified {
        witness: String,
    },
    /// No certificate was found; irreducibility is an assumption.
    Assumed,
}

/// Maps packed elements of `from` into `to`, a field containing it.
fn embedding(from: &Fq, to: &Fq) -> Option<Box<dyn Fn(u64) -> u64>> {
    if from.k() == 1 {
        return Some(Box::new(|a| a));
    }
    let m = Poly::from_coeffs(to, from.modulus().to_vec());
    let rho = roots(&m).into_iter().next()?.raw();
    let (from, to) = (from.clone(), to.clone());
    Some(Box::new(move |a| {
        let mut acc = 0;
        for &d in from.digits(a).iter().rev() {
            acc = to.add(to.mul(acc, rho), d);
        }
        acc
    }))
}

fn subset_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in pattern {
        for v in (d..=n).rev() {
            if s[v - d] {
                s[v] = true;
            }
        }
    }
    s
}

/// A defining polynomial with coordinates reduced into a residue field.
struct MappedLevel {
    /// Per coefficient, per lower basis index: `(num, den)`.
    coeffs: Vec<Vec<(Poly, Poly)>>,
}

struct Specializer<'a> {
    lower: &'a Tower,
    big: Fq,
    levels: Vec<MappedLevel>,
}

impl Specializer<'_> {
    fn map_level(big: &Fq, emb: &dyn Fn(u64) -> u64, coeffs: &[Vec<RatFunc>]) -> MappedLevel {
        MappedLevel {
            coeffs: coeffs
                .iter()
                .map(|v| v.iter().map(|r| (r.num().map_coeffs(big, emb), r.den().map_coeffs(big, emb))).collect())
                .collect(),
        }
    }

    fn integral_at(&self, c: u64) -> bool {
        self.levels.iter().all(|l| l.coeffs.iter().flatten().all(|(_, d)| d.eval_raw(c) != 0))
    }

    /// Specialization of level `l` at `x = c`, `y_i = r_i`.
    fn eval(&self, l: usize, c: u64, r: &[u64]) -> Poly {
        let f = &self.big;
        let mut out: Vec<u64> = self.levels[l]
            .coeffs
            .iter()
            .map(|v| {
                let mut acc = 0;
                for (idx, (n, d)) in v.iter().enumerate() {
                    if n.is_zero() {
                        continue;
                    }
                    let mut term = f.mul(n.eval_raw(c), f.inv(d.eval_raw(c)).expect("integral"));
                    for (i, &e) in self.lower.exponents(idx).iter().enumerate().take(l) {
                        term = f.mul(term, f.pow(r[i], e as u64));
                    }
                    acc = f.add(acc, term);
                }
                acc
            })
            .collect();
        out.push(1);
        Poly::from_coeffs(f, out)
    }

    /// Degree-one places of the lower levels above `x = c`, as simple
    /// residue roots `(r_0, ..., r_{l-1})`.
    fn chains(&self, l: usize, c: u64, cap: usize) -> Vec<Vec<u64>> {
        let mut cur = vec![Vec::new()];
        for i in 0..l {
            let mut next = Vec::new();
            for r in &cur {
                let g = self.eval(i, c, r);
                let dg = g.derivative();
                for root in roots(&g) {
                    if dg.eval_raw(root.raw()) != 0 && next.len() < cap {
                        let mut r2 = r.clone();
                        r2.push(root.raw());
                        next.push(r2);
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

/// Tries to prove that the monic polynomial with the given coefficients
/// (flat coordinates over `lower`) is irreducible over `lower`, which is
/// assumed to be a field.
///
/// A degree-one place `P` of `lower` whose residue roots are simple is
/// unramified with residue field `F_Q`; a factorization over `lower`
/// reduces modulo `P` to one over `F_Q`.
fn certify_over(lower: &Tower, coeffs: &[Vec<RatFunc>]) -> Option<String> {
    let n = coeffs.len();
    if n == 1 {
        return Some("linear".into());
    }
    let base = lower.field().clone();
    let l = lower.num_levels();
    let mut possible: Vec<bool> = (0..=n).map(|a| a > 0 && a < n).collect();
    let mut seen = Vec::new();
    let mut tried = 0;
    let mut j = 1u32;
    while base.q().checked_pow(j).is_some_and(|v| v <= MAX_RESIDUE_FIELD) && tried < MAX_SPECIALIZATIONS {
        let Ok(big) = FqCtx::builtin(base.p(), base.k() * j) else { break };
        let Some(emb) = embedding(&base, &big) else { break };
        let mut levels: Vec<MappedLevel> =
            lower.levels.iter().map(|lev| Specializer::map_level(&big, &*emb, &lev.coeffs)).collect();
        levels.push(Specializer::map_level(&big, &*emb, coeffs));
        let sp = Specializer { lower, big: big.clone(), levels };
        let lo = if j == 1 { 0 } else { base.q() };
        for c in lo..big.q() {
            if tried >= MAX_SPECIALIZATIONS {
                break;
            }
            if !sp.integral_at(c) {
                continue;
            }
            for r in sp.chains(l, c, 16) {
                tried += 1;
                let spec = sp.eval(l, c, &r);
                let Ok(pat) = degree_pattern(&spec) else { continue };
                let at = if r.is_empty() {
                    format!("x={} over F_{}", big.format_raw(c), big.q())
                } else {
                    let rs: Vec<String> = r.iter().map(|&v| big.format_raw(v)).collect();
                    format!("x={}, ({}) over F_{}", big.format_raw(c), rs.join(","), big.q())
                };
                if pat.len() == 1 {
                    return Some(format!("irreducible at {at}"));
                }
                let sums = subset_sums(&pat, n);
                let mut changed = false;
                for a in 1..n {
                    if possible[a] && !sums[a] {
                        possible[a] = false;
                        changed = true;
                    }
                }
                if changed {
                    seen.push(format!("{pat:?} at {at}"));
                }
                if !possible.iter().any(|&b| b) {
                    return Some(format!("incompatible degree patterns {}", seen.join("; ")));
                }
            }
        }
        j += 1;
    }
    None
}

/// Tries to prove `g` irreducible over `K`.
pub fn certify_irreducible(g: &KPoly) -> Irreducibility {
    let Some(n) = g.degree() else { return Irreducibility::Assumed };
    let f = g.coeffs()[0].ctx().clone();
    let lc = g.lc();
    let Ok(li) = lc.inv() else { return Irreducibility::Assumed };
    let coeffs: Vec<Vec<RatFunc>> = g.coeffs()[..n].iter().map(|c| vec![c * &li]).collect();
    match certify_over(&Tower::base(&f), &coeffs) {
        Some(witness) => Irreducibility::Certified { witness },
        None => Irreducibility::Assumed,
    }
}

/// Certifies the newest level of `t`, given the status of the lower levels.
pub(crate) fn certify_tower(t: &Arc<Tower>, lower: &Irreducibility) -> Irreducibility {
    let Irreducibility::Certified { witness: prev } = lower else {
        return Irreducibility::Assumed;
    };
    let Some(top) = t.num_levels().checked_sub(1) else {
        return Irreducibility::Certified { witness: "trivial".into() };
    };
    let lower_t = t.truncated(top);
    let lev = &t.levels[top];
    match certify_over(&lower_t, &lev.coeffs) {
        Some(w) => {
            let w = format!("{}: {w}", lev.label);
            Irreducibility::Certified { witness: if top == 0 { w } else { format!("{prev}; {w}") } }
        }
        None => Irreducibility::Assumed,
    }
}

/// A root in `F_q[x]` of monic integral `g`, searched among divisors of
/// the constant term; `None` when none exists or the search is too large.
pub(crate) fn find_rational_root(g: &KPoly) -> Option<RatFunc> {
    let ctx = g.coeffs()[0].ctx().clone();
    let cs: Vec<&Poly> = g.coeffs().iter().map(|c| c.as_poly()).collect::<Option<_>>()?;
    if g.degree()? < 2 {
        return None;
    }
    if cs[0].is_zero() {
        return Some(RatFunc::zero(&ctx));
    }
    if cs[0].deg() > 200 || ctx.q() > 256 {
        return None;
    }
    let fa = factor(cs[0]).ok()?;
    let count: usize = fa.factors.iter().map(|(_, e)| *e as usize + 1).product();
    if count * (ctx.q() as usize - 1) > 4096 {
        return None;
    }
    let mut divisors = vec![Poly::one(&ctx)];
    for (p, e) in &fa.factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    for d in &divisors {
        for u in 1..ctx.q() {
            let r = d.scale_raw(u);
            let mut acc = Poly::zero(&ctx);
            for c in cs.iter().rev() {
                acc = &(&acc * &r) + *c;
            }
            if acc.is_zero() {
                return Some(RatFunc::from_poly(r));
            }
        }
    }
    None
}
