//! Pairs when some power of `s` or `t` already lies in `O`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::{compute_ef, EfResult, Side, TowerPair};
use crate::error::{Error, Result};
use crate::funcfield::{support, Place, RatFunc};
use crate::monorder::BaseRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AddendumVerdict {
    /// Exactly one of `s^e`, `t^f` lies in `O`, on `side`. If that power
    /// is not a unit the pairs form a finite union of Frobenius sets,
    /// otherwise each fibre is a progression.
    OneSideInRing { side: Side, unit: bool },
    /// Both powers are units: each `W(k, l)` is empty or a translate of
    /// `eN x fN`.
    BothUnits,
    /// Exactly one power is a unit: `W(k, l)` is empty.
    OneUnit { unit_side: Side },
    /// Neither is a unit and `s^{eM} / t^{fN} in O^*` for this minimal pair.
    MinimalPair { m: u64, n: u64 },
    /// Neither is a unit and no power ratio is a unit: `W(k, l)` is empty.
    NoUnitRatio,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AddendumReport {
    pub e: EfResult,
    pub f: EfResult,
    pub s_power_in_ring: bool,
    pub t_power_in_ring: bool,
    pub s_power_unit: bool,
    pub t_power_unit: bool,
    #[serde(flatten)]
    pub verdict: AddendumVerdict,
}

/// Valuations of `a` at the places where `O` is not already inverted.
fn divisor(a: &RatFunc, ring: &BaseRing) -> Result<BTreeMap<Place, i64>> {
    Ok(support(a)?
        .into_iter()
        .filter(|(pl, _)| match ring {
            BaseRing::Poly => *pl != Place::Infinity,
            BaseRing::TIntegers(t) => !t.contains(pl),
        })
        .collect())
}

/// Least `(M, N)` with `M div(a) = N div(b)`, for nonzero divisors.
fn minimal_proportion(a: &BTreeMap<Place, i64>, b: &BTreeMap<Place, i64>) -> Option<(u64, u64)> {
    if a.is_empty() || b.is_empty() || a.keys().ne(b.keys()) {
        return None;
    }
    let (pl, &va) = a.iter().next().expect("nonempty");
    let vb = b[pl];
    let g = va.gcd(&vb);
    let (m, n) = (vb / g, va / g);
    if m <= 0 || n <= 0 {
        return None;
    }
    a.iter().all(|(pl, &v)| m * v == n * b[pl]).then_some((m as u64, n as u64))
}

/// Requires `s^e in O` or `t^f in O` for `e`, `f` found within `bound`.
pub fn addendum_predicates(b: &TowerPair, bound: u64) -> Result<AddendumReport> {
    let e = compute_ef(b, Side::S, bound)?;
    let f = compute_ef(b, Side::T, bound)?;
    let (s_in, t_in) = (e.power_in_ring, f.power_in_ring);
    if !s_in && !t_in {
        return Err(Error::Hypothesis("no power s^e or t^f lies in O; use the grid search".into()));
    }
    let ring = b.ring();
    let value =
        |side: Side, r: &EfResult| -> Option<RatFunc> { r.exponent.and_then(|k| b.power(side, k).as_k().cloned()) };
    let unit = |v: &Option<RatFunc>| v.as_ref().is_some_and(|a| ring.is_unit(a));
    let (sv, tv) = (value(Side::S, &e), value(Side::T, &f));
    let (su, tu) = (s_in && unit(&sv), t_in && unit(&tv));
    let verdict = if !(s_in && t_in) {
        if s_in {
            AddendumVerdict::OneSideInRing { side: Side::S, unit: su }
        } else {
            AddendumVerdict::OneSideInRing { side: Side::T, unit: tu }
        }
    } else if su && tu {
        AddendumVerdict::BothUnits
    } else if su || tu {
        AddendumVerdict::OneUnit { unit_side: if su { Side::S } else { Side::T } }
    } else {
        let da = divisor(sv.as_ref().expect("in ring"), ring)?;
        let db = divisor(tv.as_ref().expect("in ring"), ring)?;
        match minimal_proportion(&da, &db) {
            Some((m, n)) => AddendumVerdict::MinimalPair { m, n },
            None => AddendumVerdict::NoUnitRatio,
        }
    };
    Ok(AddendumReport {
        e,
        f,
        s_power_in_ring: s_in,
        t_power_in_ring: t_in,
        s_power_unit: su,
        t_power_unit: tu,
        verdict,
    })
}
