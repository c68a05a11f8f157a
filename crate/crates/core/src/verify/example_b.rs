use rayon::prelude::*;

use super::{Check, VerificationReport};
use crate::error::{Error, Result};
use crate::frobsearch::{PairBackend, Side, SymPair};
use crate::monorder::sym::{sym_express, sym_in_order};
use crate::parse::parse_bivar;

/// `s = x`, `t = 3x + 2y` in `F_7[x, y]` over `O = F_7[x+y, xy]`, at
/// `m = n = 7^i + 7^j` for `i <= i_max`, `j <= j_max`. Pairs with `i = 0`
/// or `j = 0` are recorded as probes.
pub fn verify_example_b(i_max: u32, j_max: u32) -> Result<VerificationReport> {
    if i_max > 2 || j_max > 2 {
        return Err(Error::Invalid(format!("(i_max, j_max) = ({i_max}, {j_max}) exceeds (2, 2)")));
    }
    let f7 = crate::gf::FqCtx::prime(7)?;
    let s = parse_bivar(&f7, "x")?;
    let t = parse_bivar(&f7, "3*x+2*y")?;
    let mut rep = VerificationReport::new("b", &[("i_max", i_max.to_string()), ("j_max", j_max.to_string())]);
    rep.push(Check::new("t in O[t]", sym_in_order(&t, &t), "sanity", None));
    let top = 7u64.pow(i_max) + 7u64.pow(j_max);
    let backend = SymPair::new(&s, &t, top, top)?;
    let cells: Vec<(u32, u32)> = (0..=i_max).flat_map(|i| (0..=j_max).map(move |j| (i, j))).collect();
    let checks: Vec<Vec<Check>> = cells
        .into_par_iter()
        .map(|(i, j)| {
            let m = 7u64.pow(i) + 7u64.pow(j);
            let (sm, tn) = (backend.power(Side::S, m), backend.power(Side::T, m));
            let mut out = Vec::new();
            for (name, u, w) in [
                (format!("s^{m} in O[t^{m}] at (i, j) = ({i}, {j})"), sm, tn),
                (format!("t^{m} in O[s^{m}] at (i, j) = ({i}, {j})"), tn, sm),
            ] {
                let c = match sym_express(u, w) {
                    Some(wit) => {
                        let (a, b) = wit.elementary_text();
                        let b = if b.len() > 80 { format!("{}...", &b[..80]) } else { b };
                        let a = if a.len() > 80 { format!("{}...", &a[..80]) } else { a };
                        Check::new(name, true, format!("A = {a}, B = {b}"), None)
                    }
                    None => Check::new(name, false, "B is not a symmetric polynomial", None),
                };
                out.push(c);
            }
            let fl = backend.classify(m, m);
            out.push(Check::new(
                format!("({m}, {m}) not in A, B, C at (i, j) = ({i}, {j})"),
                !fl.any(),
                format!("flags {fl:?}"),
                None,
            ));
            if i == 0 || j == 0 {
                out.into_iter().map(Check::probe).collect()
            } else {
                out
            }
        })
        .collect();
    for c in checks.into_iter().flatten() {
        rep.push(c);
    }
    Ok(rep)
}
