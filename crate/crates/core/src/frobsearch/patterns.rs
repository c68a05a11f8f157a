//! Greedy description of a finite set of pairs by Frobenius-type pieces.
//!
//! Patterns are box-relative: a pattern claims exactly the in-box points it
//! generates, and every claimed point lies in the data.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

type Q = Ratio<i64>;
type Pair = (u64, u64);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrobPattern {
    /// `{q^k x : k >= 0}`.
    F1 {
        q: u64,
        x: Pair,
    },
    /// `{(q^i a, q^j b) : i, j >= 0}`.
    F2 {
        q: u64,
        a: u64,
        b: u64,
    },
    /// `{(c1 q^i + c2 q^j, c3 q^i + c4 q^j) : i, j >= 0}`.
    F {
        q: u64,
        c: [Q; 4],
    },
    /// `{start + k step : k >= 0}`.
    Progression {
        start: Pair,
        step: Pair,
    },
    Finite {
        pairs: Vec<Pair>,
    },
}

impl FrobPattern {
    fn rank(&self) -> u8 {
        match self {
            FrobPattern::F1 { .. } => 0,
            FrobPattern::F2 { .. } => 1,
            FrobPattern::F { .. } => 2,
            FrobPattern::Progression { .. } => 3,
            FrobPattern::Finite { .. } => 4,
        }
    }

    /// Size of the rational parameters; breaks ties between equal covers.
    fn height(&self) -> i64 {
        match self {
            FrobPattern::F { c, .. } => c.iter().map(|a| a.numer().abs() + a.denom()).sum(),
            _ => 0,
        }
    }
}

impl fmt::Display for FrobPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobPattern::F1 { q, x } => write!(f, "F1({q}; ({}, {}))", x.0, x.1),
            FrobPattern::F2 { q, a, b } => write!(f, "F2({q}; {a}, {b})"),
            FrobPattern::F { q, c } => write!(f, "F({q}; {}, {}, {}, {})", c[0], c[1], c[2], c[3]),
            FrobPattern::Progression { start, step } => {
                write!(f, "A(({}, {}), ({}, {}))", step.0, step.1, start.0, start.1)
            }
            FrobPattern::Finite { pairs } => {
                let v: Vec<String> = pairs.iter().map(|(m, n)| format!("({m}, {n})")).collect();
                write!(f, "finite {{{}}}", v.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittedPattern {
    pub pattern: FrobPattern,
    pub text: String,
    /// In-box points generated by the pattern.
    pub claimed: Vec<Pair>,
}

fn in_box(m: i128, n: i128, bx: Pair) -> Option<Pair> {
    (m >= 1 && n >= 1 && m <= bx.0 as i128 && n <= bx.1 as i128).then_some((m as u64, n as u64))
}

fn q_value(c: &Q, qk: i128) -> Option<Q> {
    let v = (*c.numer() as i128).checked_mul(qk)?;
    Some(Ratio::new(v.to_i64()?, *c.denom()))
}

/// Points of `pat` inside `[1, bx.0] x [1, bx.1]`.
pub fn generate(pat: &FrobPattern, bx: Pair) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    let lim = bx.0.max(bx.1) as i128;
    match pat {
        FrobPattern::F1 { q, x } => {
            let (mut m, mut n) = (x.0 as i128, x.1 as i128);
            while m <= lim && n <= lim && (m, n) != (0, 0) {
                if let Some(p) = in_box(m, n, bx) {
                    out.insert(p);
                }
                m *= *q as i128;
                n *= *q as i128;
            }
        }
        FrobPattern::F2 { q, a, b } => {
            let mut m = *a as i128;
            while m <= bx.0 as i128 && m > 0 {
                let mut n = *b as i128;
                while n <= bx.1 as i128 && n > 0 {
                    out.insert((m as u64, n as u64));
                    n *= *q as i128;
                }
                m *= *q as i128;
            }
        }
        FrobPattern::F { q, c } => {
            // |c1 q^i + c2 q^j| >= q^min(i,j) / den unless it vanishes, so
            // exponents beyond log_q(lim den^2 (1 + max|c|)) leave the box
            let den = c.iter().map(|a| *a.denom() as i128).max().unwrap_or(1);
            let cm = c.iter().map(|a| (a.numer().abs() as i128).max(1)).max().unwrap_or(1);
            let cap = lim * den * den * (1 + cm);
            let q = *q as i128;
            let mut l = 0u32;
            let mut v: i128 = 1;
            while v <= cap {
                v = v.saturating_mul(q);
                l += 1;
            }
            let pw: Vec<i128> = (0..=l + 1).map(|k| q.pow(k)).collect();
            for &qi in &pw {
                for &qj in &pw {
                    let coord = |a: &Q, b: &Q| -> Option<Q> { Some(q_value(a, qi)? + q_value(b, qj)?) };
                    let (Some(m), Some(n)) = (coord(&c[0], &c[1]), coord(&c[2], &c[3])) else { continue };
                    if m.is_integer() && n.is_integer() {
                        if let Some(p) = in_box(*m.numer() as i128, *n.numer() as i128, bx) {
                            out.insert(p);
                        }
                    }
                }
            }
        }
        FrobPattern::Progression { start, step } => {
            let (mut m, mut n) = (start.0 as i128, start.1 as i128);
            while let Some(p) = in_box(m, n, bx) {
                out.insert(p);
                if *step == (0, 0) {
                    break;
                }
                m += step.0 as i128;
                n += step.1 as i128;
            }
        }
        FrobPattern::Finite { pairs } => {
            out.extend(pairs.iter().filter(|p| in_box(p.0 as i128, p.1 as i128, bx).is_some()))
        }
    }
    out
}

fn p_powers(p: u64, lim: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut q = p;
    while q <= lim.max(p) {
        v.push(q);
        q *= p;
    }
    v
}

fn candidates(data: &BTreeSet<Pair>, p: u64, bx: Pair) -> BTreeSet<FrobPattern> {
    let qs = p_powers(p, bx.0.max(bx.1));
    let mut out = BTreeSet::new();
    let has = |m: u64, n: u64| data.contains(&(m, n));
    for &(m, n) in data {
        for &q in &qs {
            // only orbit roots
            if !(m % q == 0 && n % q == 0 && has(m / q, n / q)) {
                out.insert(FrobPattern::F1 { q, x: (m, n) });
            }
            if !(m % q == 0 && has(m / q, n)) && !(n % q == 0 && has(m, n / q)) {
                out.insert(FrobPattern::F2 { q, a: m, b: n });
            }
        }
    }
    let pts: Vec<Pair> = data.iter().copied().collect();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if b.1 >= a.1 && b != a {
                let step = (b.0 - a.0, b.1 - a.1);
                let mut start = a;
                while start.0 > step.0 && start.1 > step.1 && has(start.0 - step.0, start.1 - step.1) {
                    start = (start.0 - step.0, start.1 - step.1);
                }
                out.insert(FrobPattern::Progression { start, step });
            }
            for &q in &qs {
                for (p00, p10) in [(a, b), (b, a)] {
                    let d = (q - 1) as i64;
                    let c1 = Ratio::new(p10.0 as i64 - p00.0 as i64, d);
                    let c3 = Ratio::new(p10.1 as i64 - p00.1 as i64, d);
                    let c2 = Ratio::from_integer(p00.0 as i64) - c1;
                    let c4 = Ratio::from_integer(p00.1 as i64) - c3;
                    let degenerate = (c1.is_zero() && c3.is_zero()) || (c2.is_zero() && c4.is_zero());
                    if !degenerate {
                        out.insert(FrobPattern::F { q, c: [c1, c2, c3, c4] });
                    }
                }
            }
        }
    }
    out
}

/// Greedy cover of the pairs found in a box of size `bx`: at each step the
/// valid candidate claiming the most uncovered pairs wins, ties going to the
/// simpler kind and then to smaller parameters. Candidates claiming fewer than two new pairs are dropped
/// and the remainder is reported as one finite piece.
pub fn fit_patterns(data: &BTreeSet<Pair>, p: u64, bx: Pair) -> Vec<FittedPattern> {
    let valid: Vec<(FrobPattern, BTreeSet<Pair>)> = candidates(data, p, bx)
        .into_iter()
        .filter_map(|c| {
            let g = generate(&c, bx);
            let min = if c.rank() == 0 { 2 } else { 3 };
            (g.len() >= min && g.is_subset(data)).then_some((c, g))
        })
        .collect();
    let mut uncovered = data.clone();
    let mut out = Vec::new();
    loop {
        let best =
            valid.iter().map(|(c, g)| (g.intersection(&uncovered).count(), c, g)).filter(|(k, _, _)| *k >= 2).max_by(
                |a, b| {
                    a.0.cmp(&b.0)
                        .then_with(|| b.1.rank().cmp(&a.1.rank()))
                        .then_with(|| b.1.height().cmp(&a.1.height()))
                        .then_with(|| b.1.cmp(a.1))
                },
            );
        let Some((_, c, g)) = best else { break };
        uncovered.retain(|x| !g.contains(x));
        out.push(FittedPattern { text: c.to_string(), pattern: c.clone(), claimed: g.iter().copied().collect() });
    }
    if !uncovered.is_empty() {
        let pattern = FrobPattern::Finite { pairs: uncovered.iter().copied().collect() };
        out.push(FittedPattern { text: pattern.to_string(), claimed: uncovered.into_iter().collect(), pattern });
    }
    out
}

/// Each pattern regenerates exactly its claimed pairs, all inside `data`,
/// and together they cover `data`.
pub fn validate(fitted: &[FittedPattern], data: &BTreeSet<Pair>, bx: Pair) -> bool {
    let mut covered = BTreeSet::new();
    for f in fitted {
        let g = generate(&f.pattern, bx);
        if g.iter().copied().collect::<Vec<_>>() != f.claimed || !g.is_subset(data) {
            return false;
        }
        covered.extend(g);
    }
    covered == *data
}
