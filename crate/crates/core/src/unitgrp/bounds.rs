//! Integer-exponent bounds for sums `sum e_i p^{u_i}` and the observed
//! difference sets of `A p^X1 - A p^X2 + B p^X3 - B p^X4 = 0`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

const BRUTE_BUDGET: u64 = 4_000_000;

fn ord_p(mut a: i64, p: u64) -> u64 {
    let p = p as i64;
    let mut k = 0;
    while a != 0 && a % p == 0 {
        a /= p;
        k += 1;
    }
    k
}

/// Least `c >= 0` with `p^c >= n`.
fn ceil_log(n: u64, p: u64) -> u64 {
    let (mut c, mut v) = (0, 1u128);
    while v < n as u128 {
        v *= p as u128;
        c += 1;
    }
    c
}

/// `C_1` such that every `u` with `sum e_i p^{u_i}` a nonzero integer and
/// no vanishing proper subsum has `u_i + C_1 >= 0`. Zero entries give 0.
pub fn lemma_c1(e: &[i64], p: u64) -> Result<u64> {
    if e.is_empty() {
        return Err(Error::Invalid("empty coefficient list".into()));
    }
    if crate::gf::is_prime(p) && e.iter().all(|&a| a != 0) {
        let mut memo = HashMap::new();
        Ok(c1_rec(e, p, &mut memo))
    } else if e.contains(&0) {
        Ok(0)
    } else {
        Err(Error::InvalidField(format!("{p} is not prime")))
    }
}

fn c1_rec(e: &[i64], p: u64, memo: &mut HashMap<Vec<i64>, u64>) -> u64 {
    if e.len() == 1 {
        return ord_p(e[0], p);
    }
    let mut key = e.to_vec();
    key.sort();
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // max u >= -C_2 from |sum| >= 1; the others are bounded after
    // rescaling by p^{C_2}
    let c2 = ceil_log(e.iter().map(|a| a.unsigned_abs()).sum(), p);
    let rest = (0..e.len())
        .map(|k| {
            let sub: Vec<i64> = e.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &a)| a).collect();
            c1_rec(&sub, p, memo)
        })
        .max()
        .expect("len >= 2");
    let v = c2 + rest;
    memo.insert(key, v);
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct C1Check {
    /// Exponent vectors meeting both hypotheses.
    pub instances: u64,
    /// Smallest `u_i` among them.
    pub min_u: Option<i64>,
    /// Instances with some `u_i + C_1 < 0`.
    pub violations: Vec<Vec<i64>>,
}

/// Exhaustive check of a claimed `C_1` over `u in [-bound, bound]^N`.
pub fn c1_brute_force(e: &[i64], p: u64, c1: u64, bound: i64) -> Result<C1Check> {
    let n = e.len();
    let side = (2 * bound + 1) as u64;
    if side.checked_pow(n as u32).is_none_or(|c| c > BRUTE_BUDGET) {
        return Err(Error::Budget(format!("box {bound} in {n} dimensions")));
    }
    let pb = BigInt::from(p);
    let pows: Vec<BigInt> = (0..=2 * bound as u32).map(|k| pb.pow(k)).collect();
    let scale = &pows[bound as usize];
    let mut check = C1Check { instances: 0, min_u: None, violations: Vec::new() };
    let mut u = vec![-bound; n];
    loop {
        let terms: Vec<BigInt> = (0..n).map(|i| BigInt::from(e[i]) * &pows[(u[i] + bound) as usize]).collect();
        let s: BigInt = terms.iter().sum();
        let ok = !s.is_zero()
            && s.is_multiple_of(scale)
            && (1..(1u32 << n) - 1).all(|mask| {
                let sub: BigInt = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &terms[i]).sum();
                !sub.is_zero()
            });
        if ok {
            check.instances += 1;
            let m = *u.iter().min().expect("nonempty");
            check.min_u = Some(check.min_u.map_or(m, |v: i64| v.min(m)));
            if m + (c1 as i64) < 0 {
                check.violations.push(u.clone());
            }
        }
        let mut i = 0;
        while i < n && u[i] == bound {
            u[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    Ok(check)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaReport {
    /// Observed `(x3 - x4) - (x1 - x2)`; a lower bound for the full set.
    pub deltas: BTreeSet<i64>,
    pub solutions: u64,
}

/// Solutions of `A p^X1 - A p^X2 + B p^X3 - B p^X4 = 0` with `0 <= X_i <= bound`.
pub fn delta_set(p: u64, a: i64, b: i64, bound: u32) -> Result<DeltaReport> {
    if !crate::gf::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if a == b || a == 0 || b == 0 {
        return Err(Error::Hypothesis("A and B must be distinct and nonzero".into()));
    }
    if a % p as i64 == 0 || b % p as i64 == 0 {
        return Err(Error::Hypothesis(format!("{p} divides A or B")));
    }
    let pw: Vec<BigInt> = (0..=bound).map(|k| BigInt::from(p).pow(k)).collect();
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let ta: Vec<BigInt> = pw.iter().map(|v| &ab * v).collect();
    let tb: Vec<BigInt> = pw.iter().map(|v| &bb * v).collect();
    let n = bound as usize + 1;
    if (n as u64).pow(4) > BRUTE_BUDGET * 4 {
        return Err(Error::Budget(format!("box {bound}")));
    }
    // index B p^X3 - B p^X4 by value
    let mut by_value: HashMap<BigInt, Vec<(i64, i64)>> = HashMap::new();
    for x3 in 0..n {
        for x4 in 0..n {
            by_value.entry(&tb[x3] - &tb[x4]).or_default().push((x3 as i64, x4 as i64));
        }
    }
    let mut rep = DeltaReport { deltas: BTreeSet::new(), solutions: 0 };
    for x1 in 0..n {
        for x2 in 0..n {
            let need = &ta[x2] - &ta[x1];
            if let Some(v) = by_value.get(&need) {
                for &(x3, x4) in v {
                    rep.solutions += 1;
                    rep.deltas.insert((x3 - x4) - (x1 as i64 - x2 as i64));
                }
            }
        }
    }
    Ok(rep)
}

/// `log10 exp((6n)^{3n} (n r + 1))`, the solution-count bound for
/// non-degenerate `x_1 + ... + x_n = 1` in a group of rank `r`.
pub fn ess_bound_log10(n: u32, r: u32) -> f64 {
    let six_n = 6.0 * n as f64;
    six_n.powf(3.0 * n as f64) * (n as f64 * r as f64 + 1.0) / std::f64::consts::LN_10
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_examples() {
        assert_eq!(lemma_c1(&[9], 3).unwrap(), 2);
        assert_eq!(lemma_c1(&[1, 0, 5], 3).unwrap(), 0);
        assert!(lemma_c1(&[], 3).is_err());
        let c = lemma_c1(&[1, 1], 2).unwrap();
        assert!(c >= 1);
        let chk = c1_brute_force(&[1, 1], 2, c, 6).unwrap();
        assert!(chk.violations.is_empty());
        assert_eq!(chk.min_u, Some(-1));
    }

    #[test]
    fn delta_examples() {
        let r = delta_set(2, 1, 3, 6).unwrap();
        assert!([0, 3, -3].iter().all(|d| r.deltas.contains(d)), "{:?}", r.deltas);
        assert!(delta_set(2, 3, 3, 6).is_err());
        assert!(delta_set(3, 3, 1, 6).is_err());
        let a = delta_set(2, 1, 5, 5).unwrap().deltas;
        let b = delta_set(2, 1, 5, 6).unwrap().deltas;
        assert_eq!(a, b);
    }
}
