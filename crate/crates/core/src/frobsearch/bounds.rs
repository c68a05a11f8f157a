//! `log10` of the bounds on the number of essentially distinct generators.

use dashu_float::DBig;
use serde::Serialize;

use crate::error::{Error, Result};

/// Working precision in decimal digits.
const PREC: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub log10: f64,
    /// `log10` rounded to 30 significant digits.
    pub digits: String,
}

fn big(n: u64) -> DBig {
    DBig::from(n).with_precision(PREC).value()
}

fn ln10() -> DBig {
    big(10).ln()
}

fn log10(n: u64) -> DBig {
    big(n).ln() / ln10()
}

/// `log10(10^a + 10^b)`.
fn log10_sum(a: DBig, b: DBig) -> DBig {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let gap = &hi - &lo;
    if gap > big(2 * PREC as u64) {
        return hi;
    }
    let tail = (-(gap * ln10())).exp();
    hi + (big(1) + tail).ln() / ln10()
}

fn finish(v: DBig) -> BoundValue {
    let r = v.with_precision(30).value();
    BoundValue { log10: r.to_f64().value(), digits: r.to_string() }
}

fn check(d: u64, p: u64, k: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::Invalid(format!("degree {d} < 2")));
    }
    if !crate::gf::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::Invalid("q(K) = p^0".into()));
    }
    Ok(())
}

/// `log10` of `q_K^{d^6} + (exp(18^10) p^{3 d^4 |S|} log_p q_K)^{d^3}`
/// for `q_K = p^k`.
pub fn theorem_bound_log10(d: u64, p: u64, k: u64, s_size: u64) -> Result<BoundValue> {
    check(d, p, k)?;
    let lp = log10(p);
    let first = big(d.pow(6) * k) * lp.clone();
    let e = big(18u64.pow(10)) / ln10();
    let second = big(d.pow(3)) * (e + big(3 * d.pow(4) * s_size) * lp + log10(k));
    Ok(finish(log10_sum(first, second)))
}

/// `log10` of `min(q_L, q_K^{d^3})^{d^3} + (exp(18^10) p^{2r} d^8 lambda)^{d^3}`
/// for `q_K = p^k`, `q_L = p^lambda`.
pub fn precise_bound_log10(d: u64, p: u64, k: u64, lambda: u64, r: u64) -> Result<BoundValue> {
    check(d, p, k)?;
    if lambda == 0 {
        return Err(Error::Invalid("q(L) = p^0".into()));
    }
    let (first, second) = precise_terms(d, p, k, lambda, r);
    Ok(finish(log10_sum(first, second)))
}

fn precise_terms(d: u64, p: u64, k: u64, lambda: u64, r: u64) -> (DBig, DBig) {
    let lp = log10(p);
    let first = big(d.pow(3) * lambda.min(d.pow(3) * k)) * lp.clone();
    let e = big(18u64.pow(10)) / ln10();
    let second = big(d.pow(3)) * (e + big(2 * r) * lp + big(8) * log10(d) + log10(lambda));
    (first, second)
}
