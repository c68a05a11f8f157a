//! Bounded search for `M(O, s, t) = {(m, n) : O[s^m] = O[t^n]}`, the
//! degenerate families inside it, the exponents `e`, `f`, pattern fitting,
//! the case where a power of `s` or `t` lies in `O`, and the size bounds.
//!
//! Two backends share one interface: [`TowerPair`] for elements of a tower
//! over `F_q(x)`, and [`SymPair`] for `F_q[x, y]` over `F_q[x+y, xy]`.

mod addendum;
mod bounds;
mod ef;
mod patterns;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcfield::BivarPoly;
use crate::monorder::sym::sym_orders_equal;
use crate::monorder::{BaseRing, MonOrder};
use crate::tower::AlgElem;

pub use addendum::{addendum_predicates, AddendumReport, AddendumVerdict};
pub use bounds::{precise_bound_log10, theorem_bound_log10, BoundValue};
pub use ef::{compute_ef, EfResult};
pub use patterns::{fit_patterns, generate, validate, FittedPattern, FrobPattern};

/// Grid cells allowed in one enumeration.
pub const MAX_CELLS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    S,
    T,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegenerateFlags {
    pub in_a: bool,
    pub in_b: bool,
    pub in_c: bool,
}

impl DegenerateFlags {
    pub fn any(&self) -> bool {
        self.in_a || self.in_b || self.in_c
    }
}

/// Precomputed powers `s^1..s^M`, `t^1..t^N` and the order tests between them.
pub trait PairBackend: Sync {
    fn characteristic(&self) -> u64;
    /// Largest available exponents `(M, N)`.
    fn capacity(&self) -> (u64, u64);
    /// `O[s^m] = O[t^n]`.
    fn orders_equal(&self, m: u64, n: u64) -> bool;
    fn classify(&self, m: u64, n: u64) -> DegenerateFlags;
    /// `[K(w^n) : K]`.
    fn power_degree(&self, side: Side, n: u64) -> usize;
    /// `w^a in K(w^b)`.
    fn power_in_field_of(&self, side: Side, a: u64, b: u64) -> bool;
    /// `w^n in O`.
    fn power_in_ring(&self, side: Side, n: u64) -> bool;
}

fn check_index(cap: u64, k: u64) {
    assert!(k >= 1 && k <= cap, "exponent {k} outside 1..={cap}");
}

struct TowerPower {
    elem: AlgElem,
    order: MonOrder,
}

/// Backend over a tower; `O` is `F_q[x]` or `O_{K,T}`.
pub struct TowerPair {
    ring: BaseRing,
    s: Vec<TowerPower>,
    t: Vec<TowerPower>,
    /// `t^{-n}` and, when `[K(t^n):K] = 2`, `sigma(t^n)^{-1}`.
    t_inv: Vec<(AlgElem, Option<AlgElem>)>,
}

fn tower_powers(w: &AlgElem, cap: u64, ring: &BaseRing) -> Result<Vec<TowerPower>> {
    let mut elems = Vec::with_capacity(cap as usize);
    let mut cur = w.clone();
    for _ in 0..cap {
        elems.push(cur.clone());
        cur = cur.mul(w);
    }
    elems
        .into_par_iter()
        .map(|elem| MonOrder::new(&elem, ring.clone()).map(|order| TowerPower { elem, order }))
        .collect()
}

impl TowerPair {
    /// Errors when `s` or `t` is zero, not integral, or the towers differ.
    pub fn new(s: &AlgElem, t: &AlgElem, ring: BaseRing, m_cap: u64, n_cap: u64) -> Result<Self> {
        if s.tower() != t.tower() {
            return Err(Error::ContextMismatch);
        }
        if s.is_zero() || t.is_zero() {
            return Err(Error::ZeroInput);
        }
        let sp = tower_powers(s, m_cap.max(1), &ring)?;
        let tp = tower_powers(t, n_cap.max(1), &ring)?;
        let t_inv = tp
            .par_iter()
            .map(|w| {
                let inv = w.elem.inv().expect("nonzero");
                let g = w.order.minimal_polynomial();
                let sigma = (g.degree() == Some(2)).then(|| {
                    let tr = -&g.coeff(1);
                    AlgElem::from_k(w.elem.tower(), tr).sub(&w.elem).inv().expect("nonzero conjugate")
                });
                (inv, sigma)
            })
            .collect();
        Ok(TowerPair { ring, s: sp, t: tp, t_inv })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn power(&self, side: Side, n: u64) -> &AlgElem {
        &self.side(side, n).elem
    }

    fn side(&self, side: Side, n: u64) -> &TowerPower {
        let v = match side {
            Side::S => &self.s,
            Side::T => &self.t,
        };
        check_index(v.len() as u64, n);
        &v[n as usize - 1]
    }

    fn is_unit(&self, a: &AlgElem) -> bool {
        a.as_k().is_some_and(|c| self.ring.is_unit(c))
    }
}

impl PairBackend for TowerPair {
    fn characteristic(&self) -> u64 {
        self.s[0].elem.tower().field().p()
    }
    fn capacity(&self) -> (u64, u64) {
        (self.s.len() as u64, self.t.len() as u64)
    }
    fn orders_equal(&self, m: u64, n: u64) -> bool {
        let (a, b) = (self.side(Side::S, m), self.side(Side::T, n));
        a.order.degree() == b.order.degree() && a.order.contains(&b.elem) && b.order.contains(&a.elem)
    }
    fn classify(&self, m: u64, n: u64) -> DegenerateFlags {
        let sm = &self.side(Side::S, m).elem;
        let (tinv, sinv) = &self.t_inv[n as usize - 1];
        DegenerateFlags {
            in_a: self.is_unit(&sm.mul(tinv)),
            in_b: sinv.as_ref().is_some_and(|si| self.is_unit(&sm.mul(si))),
            in_c: self.is_unit(&sm.mul(&self.side(Side::T, n).elem)),
        }
    }
    fn power_degree(&self, side: Side, n: u64) -> usize {
        self.side(side, n).order.degree()
    }
    fn power_in_field_of(&self, side: Side, a: u64, b: u64) -> bool {
        self.side(side, b).order.express(&self.side(side, a).elem).is_some()
    }
    fn power_in_ring(&self, side: Side, n: u64) -> bool {
        self.side(side, n).elem.as_k().is_some_and(|c| self.ring.contains(c))
    }
}

/// Backend for `s, t in F_q[x, y]` over `O = F_q[x+y, xy]`.
pub struct SymPair {
    p: u64,
    s: Vec<BivarPoly>,
    t: Vec<BivarPoly>,
}

fn bivar_powers(w: &BivarPoly, cap: u64) -> Vec<BivarPoly> {
    let mut v = Vec::with_capacity(cap as usize);
    let mut cur = w.clone();
    for _ in 0..cap {
        v.push(cur.clone());
        cur = &cur * w;
    }
    v
}

/// `a = c b` for a nonzero constant `c`.
fn constant_multiple(a: &BivarPoly, b: &BivarPoly) -> bool {
    match (a.leading(), b.leading()) {
        (Some((ka, ca)), Some((kb, cb))) if ka == kb => {
            let f = a.ctx();
            let c = f.mul(ca, f.inv(cb).expect("nonzero"));
            *a == b.scale_raw(c)
        }
        _ => false,
    }
}

impl SymPair {
    pub fn new(s: &BivarPoly, t: &BivarPoly, m_cap: u64, n_cap: u64) -> Result<Self> {
        if s.ctx() != t.ctx() {
            return Err(Error::ContextMismatch);
        }
        if s.is_zero() || t.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(SymPair { p: s.ctx().p(), s: bivar_powers(s, m_cap.max(1)), t: bivar_powers(t, n_cap.max(1)) })
    }

    pub fn power(&self, side: Side, n: u64) -> &BivarPoly {
        let v = match side {
            Side::S => &self.s,
            Side::T => &self.t,
        };
        check_index(v.len() as u64, n);
        &v[n as usize - 1]
    }
}

impl PairBackend for SymPair {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn capacity(&self) -> (u64, u64) {
        (self.s.len() as u64, self.t.len() as u64)
    }
    fn orders_equal(&self, m: u64, n: u64) -> bool {
        sym_orders_equal(self.power(Side::S, m), self.power(Side::T, n))
    }
    fn classify(&self, m: u64, n: u64) -> DegenerateFlags {
        let (sm, tn) = (self.power(Side::S, m), self.power(Side::T, n));
        DegenerateFlags {
            in_a: constant_multiple(sm, tn),
            in_b: !tn.is_symmetric() && constant_multiple(sm, &tn.swap()),
            in_c: sm.is_constant() && tn.is_constant(),
        }
    }
    fn power_degree(&self, side: Side, n: u64) -> usize {
        if self.power(side, n).is_symmetric() {
            1
        } else {
            2
        }
    }
    fn power_in_field_of(&self, side: Side, a: u64, b: u64) -> bool {
        self.power_degree(side, b) == 2 || self.power(side, a).is_symmetric()
    }
    fn power_in_ring(&self, side: Side, n: u64) -> bool {
        self.power(side, n).is_symmetric()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub m: u64,
    pub n: u64,
    #[serde(flatten)]
    pub flags: DegenerateFlags,
}

impl PairRecord {
    /// In `M` but in none of `A`, `B`, `C`.
    pub fn nondegenerate(&self) -> bool {
        !self.flags.any()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MSearchResult {
    pub p: u64,
    pub m_max: u64,
    pub n_max: u64,
    /// Pairs of `M` in the box, row-major.
    pub pairs: Vec<PairRecord>,
    /// Degenerate cells not in `M`; empty unless something is wrong.
    pub degenerate_outside: Vec<(u64, u64)>,
    /// `(m, n)` in `M` with `(pm, pn)` in the box but not in `M`.
    pub closure_violations: Vec<(u64, u64)>,
}

impl MSearchResult {
    pub fn pair_set(&self) -> BTreeSet<(u64, u64)> {
        self.pairs.iter().map(|r| (r.m, r.n)).collect()
    }
    pub fn contains(&self, m: u64, n: u64) -> bool {
        self.pairs.binary_search_by(|r| (r.m, r.n).cmp(&(m, n))).is_ok()
    }
}

/// Exact membership of every cell of `[1, m_max] x [1, n_max]`.
pub fn enumerate_m<B: PairBackend>(b: &B, m_max: u64, n_max: u64) -> Result<MSearchResult> {
    let (mc, nc) = b.capacity();
    if m_max == 0 || n_max == 0 || m_max > mc || n_max > nc {
        return Err(Error::Invalid(format!("box {m_max}x{n_max} outside the precomputed {mc}x{nc}")));
    }
    if m_max * n_max > MAX_CELLS {
        return Err(Error::Budget(format!("{} grid cells", m_max * n_max)));
    }
    let cells: Vec<(u64, u64, bool, DegenerateFlags)> = (0..m_max * n_max)
        .into_par_iter()
        .map(|i| {
            let (m, n) = (i / n_max + 1, i % n_max + 1);
            (m, n, b.orders_equal(m, n), b.classify(m, n))
        })
        .collect();
    let p = b.characteristic();
    let mut res = MSearchResult {
        p,
        m_max,
        n_max,
        pairs: Vec::new(),
        degenerate_outside: Vec::new(),
        closure_violations: Vec::new(),
    };
    for &(m, n, eq, flags) in &cells {
        if eq {
            res.pairs.push(PairRecord { m, n, flags });
        } else if flags.any() {
            res.degenerate_outside.push((m, n));
        }
    }
    res.closure_violations = res
        .pairs
        .iter()
        .filter(|r| r.m * p <= m_max && r.n * p <= n_max && !res.contains(r.m * p, r.n * p))
        .map(|r| (r.m, r.n))
        .collect();
    Ok(res)
}
