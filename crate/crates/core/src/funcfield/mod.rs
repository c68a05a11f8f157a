//! The rational function field `K = F_q(x)`, its places and its
//! polynomial rings, plus the bivariate backend for `F_q(x, y)`.

mod bivar;
mod factor;
mod gf2;
mod place;
mod poly;
mod ratfunc;

pub use bivar::BivarPoly;
pub use factor::{
    degree_pattern, distinct_degree, equal_degree, factor, find_irreducible, is_irreducible, roots,
    squarefree_decomposition, Factorization,
};
pub use place::{poly_valuation, product_formula_sum, support, unit_group_rank, Place, PlaceSet, UnitRank};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Coordinates of `a` over `K^p` in the basis `1, x, ..., x^(p-1)`:
/// `a = sum_r c_r^p x^r`.
pub fn pth_power_decompose(a: &RatFunc) -> Vec<RatFunc> {
    let ctx = a.ctx();
    let p = ctx.p() as usize;
    // a = N D^(p-1) / D^p
    let m = a.num() * &a.den().pow(ctx.p() - 1);
    let mut parts = vec![Vec::new(); p];
    for (j, &c) in m.coeffs().iter().enumerate() {
        let part = &mut parts[j % p];
        if part.len() <= j / p {
            part.resize(j / p + 1, 0);
        }
        part[j / p] = ctx.pth_root_raw(c);
    }
    parts.into_iter().map(|c| RatFunc::new(Poly::from_coeffs(ctx, c), a.den().clone()).expect("nonzero")).collect()
}

/// Inverse of [`pth_power_decompose`].
pub fn pth_power_recompose(c: &[RatFunc]) -> RatFunc {
    let ctx = c[0].ctx();
    let x = RatFunc::x(ctx);
    let mut acc = RatFunc::zero(ctx);
    for (r, cr) in c.iter().enumerate() {
        acc = &acc + &(&cr.frobenius() * &x.pow(r as i64).expect("nonnegative"));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqCtx;

    #[test]
    fn pth_decomposition_example() {
        let f2 = FqCtx::prime(2).unwrap();
        let a = RatFunc::from_poly(Poly::from_coeffs(&f2, vec![0, 1, 0, 1]));
        let c = pth_power_decompose(&a);
        assert!(c[0].is_zero());
        assert_eq!(c[1].to_string(), "x+1");
        assert_eq!(pth_power_recompose(&c), a);
    }
}
