//! Orders over `O = F_q[x+y, xy]` inside `F_q[x, y]`, where `L = F_q(x, y)`
//! is quadratic over `K = Frac(O)` with automorphism `x <-> y`.
//!
//! For `s` with `s != sigma(s)`, `O[s] = O + O s`, and `u = A + B s` forces
//! `B = (u - sigma u)/(s - sigma s)` and `A = u - B s`.

use crate::funcfield::BivarPoly;

/// `u = a + b s` with symmetric polynomial `a`, `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymWitness {
    pub a: BivarPoly,
    pub b: BivarPoly,
}

impl SymWitness {
    /// `(A, B)` as polynomials in `e1 = x+y`, `e2 = xy`.
    pub fn elementary_text(&self) -> (String, String) {
        let f = |p: &BivarPoly| p.sym_decompose().expect("symmetric").fmt_vars("e1", "e2");
        (f(&self.a), f(&self.b))
    }
}

/// Witness for `u in O[s]`, or `None` when `u` is not in `O[s]`.
pub fn sym_express(u: &BivarPoly, s: &BivarPoly) -> Option<SymWitness> {
    let zero = BivarPoly::zero(u.ctx());
    let ds = s - &s.swap();
    if ds.is_zero() {
        return u.is_symmetric().then(|| SymWitness { a: u.clone(), b: zero });
    }
    let b = (u - &u.swap()).div_exact(&ds).ok()?;
    let a = u - &(&b * s);
    (a.is_symmetric() && b.is_symmetric()).then_some(SymWitness { a, b })
}

pub fn sym_in_order(u: &BivarPoly, s: &BivarPoly) -> bool {
    sym_express(u, s).is_some()
}

/// `O[s] = O[t]`.
pub fn sym_orders_equal(s: &BivarPoly, t: &BivarPoly) -> bool {
    sym_in_order(t, s) && sym_in_order(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;
    use crate::parse::parse_bivar;

    #[test]
    fn frobenius_type_pair() {
        let f7 = FqCtx::prime(7).unwrap();
        let s = parse_bivar(&f7, "x").unwrap();
        let t = parse_bivar(&f7, "3*x+2*y").unwrap();
        let w = sym_express(&t, &s).unwrap();
        // t = 2(x+y) + 1*x
        assert_eq!(w.elementary_text(), ("2*e1".to_string(), "1".to_string()));
        assert!(sym_orders_equal(&s, &t));
        let (sm, tn) = (s.pow(14), t.pow(14));
        let w = sym_express(&sm, &tn).unwrap();
        assert_eq!(w.b.as_constant().map(|c| c.raw()), Some(3));
        assert!(sym_orders_equal(&sm, &tn));
        assert!(!sym_orders_equal(&s.pow(2), &t.pow(3)));
        assert!(!sym_in_order(&parse_bivar(&f7, "x^2").unwrap(), &parse_bivar(&f7, "x+y").unwrap()));
    }
}
