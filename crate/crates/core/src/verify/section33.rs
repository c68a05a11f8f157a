use std::sync::Arc;

use rayon::prelude::*;

use super::{fmt_coords, Check, VerificationReport};
use crate::error::{Error, Result};
use crate::funcfield::{poly_valuation, Poly, RatFunc};
use crate::monorder::{fit_generator_relation, orders_equal, BaseRing, MonOrder};
use crate::tower::{AlgElem, Tower};

/// `eta_1 = eta`, `eta_{m+1} = eta^{4^m} + x^{3 4^m} eta_m + x^{4^{m+1}} eta_m^2`
/// over `F_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaSequence {
    pub eta: Poly,
    terms: Vec<Poly>,
}

impl EtaSequence {
    pub fn new(eta: &Poly, count: usize) -> Result<Self> {
        if eta.ctx().q() != 2 {
            return Err(Error::InvalidField("the recursion is over F_2".into()));
        }
        let x = Poly::x(eta.ctx());
        let mut terms = vec![eta.clone()];
        for m in 1..count as u32 {
            let e = &terms[m as usize - 1];
            let q = 4u64.pow(m);
            let next = &(&eta.pow(q) + &(&x.pow(3 * q) * e)) + &(&x.pow(4 * q) * &e.pow(2));
            terms.push(next);
        }
        Ok(EtaSequence { eta: eta.clone(), terms })
    }

    /// `eta_m`, `m >= 1`.
    pub fn term(&self, m: usize) -> &Poly {
        &self.terms[m - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `(w + eta_m) / x^{4^m - 1}` with `w = s^{4^m}`.
fn z_from(w: &AlgElem, eta_m: &Poly, m: u32) -> AlgElem {
    let t = w.tower();
    let f = t.field();
    let scale = RatFunc::x(f).pow(1 - 4i64.pow(m)).expect("x is nonzero");
    w.add(&AlgElem::from_k(t, RatFunc::from_poly(eta_m.clone()))).scale(&scale)
}

/// The tower `s^4 + x^4 s^2 + x^3 s + eta` over `F_2(x)`.
pub fn counterexample_tower(eta: &Poly) -> Result<Arc<Tower>> {
    if eta.is_constant() || eta.coeff_raw(0) == 0 {
        return Err(Error::Hypothesis(format!("eta = {eta} must be nonconstant and prime to x")));
    }
    let t = Tower::from_text(eta.ctx(), &[("s", &format!("s^4+x^4*s^2+x^3*s+{eta}"))])?;
    if !t.is_certified() {
        return Err(Error::Hypothesis(format!("irreducibility of s^4+x^4*s^2+x^3*s+{eta} not certified")));
    }
    Ok(t)
}

/// Checks for `1 <= m <= m_max` with seed `eta`.
pub fn verify_section_3_3(eta: &Poly, m_max: u32) -> Result<VerificationReport> {
    if m_max == 0 || m_max > 5 {
        return Err(Error::Invalid(format!("m_max = {m_max} outside 1..=5")));
    }
    let tw = counterexample_tower(eta)?;
    let f = tw.field().clone();
    let x = Poly::x(&f);
    let etas = EtaSequence::new(eta, m_max as usize + 1)?;
    let mut rep = VerificationReport::new("counterexample", &[("eta", eta.to_string()), ("m_max", m_max.to_string())]);
    let ring = BaseRing::Poly;
    let s = AlgElem::gen(&tw, 0);
    let x12 = RatFunc::from_poly(x.pow(12));
    let disc = s.discriminant()?;
    rep.push(Check::new("disc(s)", disc == x12, format!("disc_K(s) = {disc}"), None));

    // s^{4^m}, z_m for m = 1..=m_max
    let pows: Vec<AlgElem> = (1..=m_max).map(|m| s.frobenius_power(2 * m)).collect();
    let zs: Vec<AlgElem> = (1..=m_max).map(|m| z_from(&pows[m as usize - 1], etas.term(m as usize), m)).collect();
    let os = MonOrder::new(&s, ring.clone())?;

    let per_m: Vec<Vec<Check>> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let z = &zs[m as usize - 1];
            let mut out = Vec::new();
            let coords = os.express(z);
            let integral = coords.as_ref().is_some_and(|c| c.iter().all(|a| ring.contains(a)));
            let text = coords.as_deref().map(fmt_coords).unwrap_or_else(|| "not in K(s)".into());
            out.push(Check::new(format!("z_{m} in O[s]"), integral, format!("coordinates {text}"), None));
            let rel = orders_equal(z, &s, &ring);
            out.push(Check::new(format!("O[z_{m}] = O[s]"), rel.is_equal(), format!("{rel:?}"), None));
            let (e1, e0) = (etas.term(m as usize + 1), etas.term(m as usize));
            let v = poly_valuation(&(e1 - &e0.pow(4)), &x);
            let want = 4i64.pow(m + 1) - 4;
            out.push(Check::new(
                format!("v(eta_{} - eta_{m}^4)", m + 1),
                v == want,
                format!("{v}, expected {want}"),
                None,
            ));
            match z.discriminant() {
                Ok(d) => out.push(Check::new(format!("disc(z_{m})"), d == x12, format!("{d}"), None)),
                Err(e) => out.push(Check::new(format!("disc(z_{m})"), false, e.to_string(), None)),
            }
            if m < m_max {
                let w = pows[m as usize - 1].add(&AlgElem::from_k(&tw, RatFunc::from_poly(e0.clone())));
                let rhs = AlgElem::from_k(&tw, RatFunc::x(&f)).mul(&w.mul(&w)).add(z);
                let ok = rhs == zs[m as usize];
                out.push(Check::new(
                    format!("z_{} = x (s^{{4^{m}}} + eta_{m})^2 + z_{m}", m + 1),
                    ok,
                    "chained identity",
                    (!ok).then(|| format!("difference {}", rhs.sub(&zs[m as usize]))),
                ));
            }
            out
        })
        .collect();
    for c in per_m.into_iter().flatten() {
        rep.push(c);
    }

    // z_m = a z_j^q + b forces q = 4^{m-j} and b = (eta_m - eta_j^{4^{m-j}}) / x^{4^m-1};
    // telescoping the valuation identity gives v(eta_m - eta_j^{4^{m-j}}) = 4^m - 4^{m-j}
    let pairs: Vec<(u32, u32)> = (1..=m_max).flat_map(|m| (1..m).map(move |j| (j, m))).collect();
    let escapes: Vec<Vec<Check>> = pairs
        .into_par_iter()
        .map(|(j, m)| {
            let gap = 4i64.pow(m) - 4i64.pow(m - j);
            let step = 4i64.pow(j + 1) - 4;
            let diff = etas.term(m as usize) - &etas.term(j as usize).pow(4u64.pow(m - j));
            let vd = poly_valuation(&diff, &x);
            let mut out = vec![Check::new(
                format!("v(eta_{m} - eta_{j}^(4^{})) = 4^{m} - 4^{}", m - j, m - j),
                vd == gap,
                format!("{vd}, expected {gap}"),
                None,
            )];
            let cmp = if vd == step { "equals" } else { "differs from" };
            out.push(
                Check::new(
                    format!("single-step value 4^{} - 4 at (j, m) = ({j}, {m})", j + 1),
                    vd == step,
                    format!("observed {vd} {cmp} {step}; the two agree exactly when m = j + 1"),
                    None,
                )
                .probe(),
            );
            let name = format!("z_{m} = a z_{j}^q + b has b outside O");
            let r = fit_generator_relation(&zs[m as usize - 1], &zs[j as usize - 1], 2 * (m - j), &ring);
            let rel = match r {
                Ok(Some(rel)) => rel,
                Ok(None) => {
                    out.push(Check::new(name, false, "no relation with q <= 4^(m-j)", None));
                    return out;
                }
                Err(e) => {
                    out.push(Check::new(name, false, e.to_string(), None));
                    return out;
                }
            };
            let vb = (!rel.b.is_zero()).then(|| poly_valuation(rel.b.num(), &x) - poly_valuation(rel.b.den(), &x));
            let want_vb = gap - (4i64.pow(m) - 1);
            let ok = rel.q == 4u64.pow(m - j) && !rel.b_in_ring && vb == Some(want_vb);
            out.push(Check::new(
                name,
                ok,
                format!("q = {}, v(b) = {vb:?}, expected {want_vb} = 1 - 4^{}", rel.q, m - j),
                None,
            ));
            out
        })
        .collect();
    for c in escapes.into_iter().flatten() {
        rep.push(c);
    }
    Ok(rep)
}
