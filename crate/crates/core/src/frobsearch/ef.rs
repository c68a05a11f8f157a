use serde::Serialize;

use super::{PairBackend, Side};
use crate::error::{Error, Result};

/// The exponent `e` (or `f`) relative to `n <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfResult {
    pub side: Side,
    pub bound: u64,
    /// Least `e` with `K(w^e) in K(w^n)` for all `n <= bound`.
    pub exponent: Option<u64>,
    /// `exponent` found with `2 e <= bound`.
    pub verified: bool,
    /// `gcd(e, p) = 1`; vacuously true when no exponent was found.
    pub coprime_to_p: bool,
    /// `w^e in O`: the case handled by [`super::addendum_predicates`].
    pub power_in_ring: bool,
    /// `[K(w^n) : K]` for `n = 1..=bound`.
    pub degrees: Vec<usize>,
    pub certificates: Vec<String>,
}

pub fn compute_ef<B: PairBackend>(b: &B, side: Side, bound: u64) -> Result<EfResult> {
    let cap = match side {
        Side::S => b.capacity().0,
        Side::T => b.capacity().1,
    };
    if bound == 0 || bound > cap {
        return Err(Error::Invalid(format!("bound {bound} outside 1..={cap}")));
    }
    let w = match side {
        Side::S => "s",
        Side::T => "t",
    };
    let degrees: Vec<usize> = (1..=bound).map(|n| b.power_degree(side, n)).collect();
    let mut certificates = Vec::new();
    let mut exponent = None;
    for e in 1..=bound {
        // [K(w^e):K] divides every [K(w^n):K] it embeds in
        let de = degrees[e as usize - 1];
        let failing = (1..=bound).find(|&n| {
            let dn = degrees[n as usize - 1];
            !dn.is_multiple_of(de) || (n != e && !b.power_in_field_of(side, e, n))
        });
        match failing {
            Some(n) => certificates.push(format!("{w}^{e} not in K({w}^{n})")),
            None => {
                certificates.push(format!("{w}^{e} in K({w}^n) for all n <= {bound}"));
                exponent = Some(e);
                break;
            }
        }
    }
    let p = b.characteristic();
    Ok(EfResult {
        side,
        bound,
        exponent,
        verified: exponent.is_some_and(|e| 2 * e <= bound),
        coprime_to_p: exponent.is_none_or(|e| e % p != 0),
        power_in_ring: exponent.is_some_and(|e| b.power_in_ring(side, e)),
        degrees,
        certificates,
    })
}
