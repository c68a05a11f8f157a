//! Factorization over `F_q`: square-free decomposition, distinct-degree and
//! equal-degree splitting. Randomness is seeded deterministically, so the
//! output is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::{prime_factors, Fq, FqElem};

/// `lc * prod f_i^{e_i}` with monic irreducible `f_i`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(&self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u64);
        }
        acc
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// pairwise coprime square-free `g` and `prod g^m = f`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let ctx = f.ctx().clone();
    let f = f.monic();
    if f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        let p = ctx.p() as u32;
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let ctx = f.ctx().clone();
    let q = ctx.q();
    let x = Poly::x(&ctx);
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = x.rem(&f).unwrap_or_else(|_| Poly::zero(&ctx));
    let mut i = 0;
    while f.deg() >= 2 * (i as i64 + 1) {
        i += 1;
        h = h.powmod(q, &f);
        let g = (&h - &x).gcd(&f);
        if !g.is_one() {
            f = f.div_exact(&g).expect("gcd divides");
            h = h.rem(&f).expect("nonzero");
            out.push((g, i));
        }
    }
    if f.deg() > 0 {
        let d = f.deg() as usize;
        out.push((f, d));
    }
    out
}

fn random_poly(ctx: &Fq, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let c = (0..deg).map(|_| rng.gen_range(0..ctx.q())).collect();
    Poly::from_coeffs(ctx, c)
}

/// Splits a monic square-free product of degree-`d` irreducibles.
pub fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_6e6f ^ f.deg() as u64);
    let mut out = Vec::new();
    edf_rec(&f.monic(), d, &mut rng, &mut out);
    out.sort();
    out
}

fn edf_rec(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.deg() as usize;
    if n == d {
        out.push(f.clone());
        return;
    }
    let ctx = f.ctx().clone();
    let q = ctx.q();
    loop {
        let a = random_poly(&ctx, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if ctx.p() == 2 {
            // Trace of a over F_2 from F_{q^d}.
            let steps = d * ctx.k() as usize;
            let mut t = a.rem(f).expect("nonzero");
            let mut cur = t.clone();
            for _ in 1..steps {
                cur = (&cur * &cur).rem(f).expect("nonzero");
                t = &t + &cur;
            }
            t
        } else {
            // a^((q^d-1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
            let mut norm = a.rem(f).expect("nonzero");
            let mut cur = norm.clone();
            for _ in 1..d {
                cur = cur.powmod(q, f);
                norm = (&norm * &cur).rem(f).expect("nonzero");
            }
            &norm.powmod((q - 1) / 2, f) - &Poly::one(&ctx)
        };
        let g = b.gcd(f);
        if !g.is_one() && g.deg() < f.deg() {
            let h = f.div_exact(&g).expect("gcd divides");
            edf_rec(&g, d, rng, out);
            edf_rec(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization; errors on the zero polynomial.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.lc();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                factors.push((irr, m));
            }
        }
    }
    factors.sort();
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

/// Rabin's test.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let ctx = f.ctx().clone();
    let f = f.monic();
    let x = Poly::x(&ctx);
    let q = ctx.q();
    let frob_iter = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.powmod(q, &f);
        }
        h
    };
    if frob_iter(n) != x.rem(&f).expect("nonzero") {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = frob_iter(n / r as usize);
        if !(&h - &x).gcd(&f).is_one() {
            return false;
        }
    }
    true
}

/// Degree pattern of the factorization, with multiplicity, ascending.
pub fn degree_pattern(f: &Poly) -> Result<Vec<usize>> {
    let fa = factor(f)?;
    let mut d: Vec<usize> =
        fa.factors.iter().flat_map(|(g, e)| std::iter::repeat_n(g.deg() as usize, *e as usize)).collect();
    d.sort();
    Ok(d)
}

/// Lexicographically first monic irreducible of degree `n`.
pub fn find_irreducible(ctx: &Fq, n: usize) -> Poly {
    let q = ctx.q();
    let mut digits = vec![0u64; n];
    loop {
        let mut c = digits.clone();
        c.push(1);
        let f = Poly::from_coeffs(ctx, c);
        if is_irreducible(&f) {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < n, "irreducible polynomials exist in every degree");
        }
    }
}

/// Distinct roots in `F_q`, ascending.
pub fn roots(f: &Poly) -> Vec<FqElem> {
    let ctx = f.ctx().clone();
    if f.is_zero() || f.is_constant() {
        return Vec::new();
    }
    let fm = f.monic();
    let x = Poly::x(&ctx);
    let g = (&x.powmod(ctx.q(), &fm) - &x).gcd(&fm);
    if g.is_constant() {
        return Vec::new();
    }
    let mut r: Vec<FqElem> = equal_degree(&g, 1).into_iter().map(|l| l.coeff(0).neg()).collect();
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn factors_x4_minus_1_over_f5() {
        let f5 = FqCtx::prime(5).unwrap();
        let f = Poly::from_coeffs(&f5, vec![4, 0, 0, 0, 1]);
        let fa = factor(&f).unwrap();
        assert_eq!(fa.factors.len(), 4);
        assert_eq!(fa.expand(), f);
    }

    #[test]
    fn inseparable_input_descends() {
        let f2 = FqCtx::prime(2).unwrap();
        // (x^2+x+1)^2 * x^4 = x^8 + x^6 + x^4 (char 2)
        let f = Poly::from_coeffs(&f2, vec![0, 0, 0, 0, 1, 0, 1, 0, 1]);
        let fa = factor(&f).unwrap();
        assert_eq!(fa.factors.len(), 2);
        assert_eq!(fa.factors[0].1, 4);
        assert_eq!(fa.factors[1].1, 2);
        assert_eq!(fa.expand(), f);
    }

    #[test]
    fn counts_irreducibles() {
        // 2^4 - 2^2 over 4 = 3 quartics over F_2; 8 cubics over F_3.
        for (p, n, want) in [(2u64, 4usize, 3usize), (3, 3, 8)] {
            let f = FqCtx::prime(p).unwrap();
            let mut count = 0;
            let total = p.pow(n as u32);
            for v in 0..total {
                let mut c: Vec<u64> = (0..n).map(|i| v / p.pow(i as u32) % p).collect();
                c.push(1);
                if is_irreducible(&Poly::from_coeffs(&f, c)) {
                    count += 1;
                }
            }
            assert_eq!(count, want);
        }
    }

    #[test]
    fn roots_over_f4() {
        let f4 = FqCtx::builtin(2, 2).unwrap();
        let m = Poly::from_coeffs(&f4, vec![1, 1, 1]);
        let r = roots(&m);
        assert_eq!(r.len(), 2);
        for a in r {
            assert!(m.eval(&a).is_zero());
        }
    }
}
