use rayon::prelude::*;

use super::{fmt_coords, Check, VerificationReport};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::monorder::{orders_equal, BaseRing, MonOrder};
use crate::tower::{AlgElem, Tower};

/// `y^4 + x^2 y^2 + y + 1 = 0` over `F_2(x)`, `s = x y`, `s_m = x y^{4^m}`,
/// for `0 <= m <= m_max`. The claim that `s_i != s_j^{2^k} + b` with
/// `b in O` is checked for `k <= 2 m_max + 1`.
pub fn verify_example_a1(m_max: u32) -> Result<VerificationReport> {
    if m_max > 4 {
        return Err(Error::Invalid(format!("m_max = {m_max} > 4")));
    }
    let f2 = crate::gf::FqCtx::prime(2)?;
    let tw = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")])?;
    let k_box = 2 * m_max + 1;
    let mut rep = VerificationReport::new("a1", &[("m_max", m_max.to_string()), ("k_box", k_box.to_string())]);
    let ring = BaseRing::Poly;
    let x = AlgElem::x(&tw);
    let y = AlgElem::gen(&tw, 0);
    let s = x.mul(&y);
    let disc = s.discriminant()?;
    let x12 = RatFunc::from_poly(crate::funcfield::Poly::x(&f2).pow(12));
    rep.push(Check::new("disc(s)", disc == x12, format!("disc_K(s) = {disc}"), None));
    let sm: Vec<AlgElem> = (0..=m_max).map(|m| x.mul(&y.frobenius_power(2 * m))).collect();

    let per_m: Vec<Vec<Check>> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let mut out = Vec::new();
            let cur = &sm[m as usize];
            match cur.discriminant() {
                Ok(d) => out.push(Check::new(format!("disc(s_{m}) = disc(s)"), d == disc, format!("{d}"), None)),
                Err(e) => out.push(Check::new(format!("disc(s_{m}) = disc(s)"), false, e.to_string(), None)),
            }
            let rel = orders_equal(cur, &s, &ring);
            out.push(Check::new(format!("O[s_{m}] = O[s]"), rel.is_equal(), format!("{rel:?}"), None));
            let u = RatFunc::x(&f2).pow(1 - 4i64.pow(m)).expect("x is nonzero");
            let twist = s.frobenius_power(2 * m).scale(&u);
            out.push(Check::new(
                format!("s_{m} = x^(1-4^{m}) s^(4^{m})"),
                twist == *cur,
                "exact identity",
                (twist != *cur).then(|| format!("difference {}", twist.sub(cur))),
            ));
            if m < m_max {
                out.push(next_in_order(cur, &sm[m as usize + 1], m, &ring));
            }
            out
        })
        .collect();
    for c in per_m.into_iter().flatten() {
        rep.push(c);
    }

    let pairs: Vec<(u32, u32)> =
        (0..=m_max).flat_map(|i| (0..=m_max).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let forms: Vec<Check> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let mut w = sm[j as usize].clone();
            let mut hit = None;
            for k in 0..=k_box {
                if k > 0 {
                    w = w.frobenius_power(1);
                }
                let b = sm[i as usize].sub(&w);
                if b.as_k().is_some_and(|c| ring.contains(c)) {
                    hit = Some(format!("s_{i} - s_{j}^(2^{k}) = {b}"));
                    break;
                }
            }
            Check::new(
                format!("s_{i} != s_{j}^(2^k) + b"),
                hit.is_none(),
                format!("no b in O for 0 <= k <= {k_box}"),
                hit,
            )
        })
        .collect();
    for c in forms {
        rep.push(c);
    }
    Ok(rep)
}

/// `s_{m+1} in O[s_m]`, with the coordinates multiplied back out as an
/// independent check of the solver.
fn next_in_order(cur: &AlgElem, next: &AlgElem, m: u32, ring: &BaseRing) -> Check {
    let name = format!("s_{} in O[s_{m}]", m + 1);
    let o = match MonOrder::new(cur, ring.clone()) {
        Ok(o) => o,
        Err(e) => return Check::new(name, false, e.to_string(), None),
    };
    let Some(c) = o.express(next) else {
        return Check::new(name, false, "not in K(s_m)", None);
    };
    let mut acc = AlgElem::zero(cur.tower());
    let mut pw = AlgElem::one(cur.tower());
    for a in &c {
        acc = acc.add(&pw.scale(a));
        pw = pw.mul(cur);
    }
    let integral = c.iter().all(|a| ring.contains(a));
    let rebuilt = acc == *next;
    Check::new(
        name,
        integral && rebuilt,
        format!("coordinates {}", fmt_coords(&c)),
        (!rebuilt).then(|| "coordinates do not reproduce s_{m+1}".to_string()),
    )
}
