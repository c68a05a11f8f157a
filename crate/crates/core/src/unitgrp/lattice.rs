//! Integer row lattices: echelon forms, membership, kernels, saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IVec = Vec<BigInt>;

pub fn to_big(v: &[i64]) -> IVec {
    v.iter().map(|&a| BigInt::from(a)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|a| a.to_i64()).collect()
}

fn axpy(dst: &mut [BigInt], k: &BigInt, src: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += k * s;
        }
    }
}

/// Row echelon form `U A = E` with `U` unimodular; rows of `E` with pivots
/// come first, in strictly increasing pivot columns, with positive pivots.
pub struct Echelon {
    pub rows: Vec<IVec>,
    pub transform: Vec<IVec>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

pub fn echelon(a: &[IVec], ncols: usize) -> Echelon {
    let m = a.len();
    let mut e: Vec<IVec> = a.to_vec();
    let mut u: Vec<IVec> =
        (0..m).map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !e[i][c].is_zero() && best.is_none_or(|b| e[i][c].abs() < e[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            e.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if e[i][c].is_zero() {
                    continue;
                }
                let k = -e[i][c].div_floor(&e[r][c]);
                let (er, ur) = (e[r].clone(), u[r].clone());
                axpy(&mut e[i], &k, &er);
                axpy(&mut u[i], &k, &ur);
                if !e[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !e[r][c].is_zero() {
            if e[r][c].is_negative() {
                e[r].iter_mut().for_each(|v| *v = -&*v);
                u[r].iter_mut().for_each(|v| *v = -&*v);
            }
            pivots.push(c);
            r += 1;
        }
    }
    Echelon { rows: e, transform: u, pivots }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer coefficients over the input rows expressing `v`, when `v`
    /// lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<IVec> {
        let mut w = v.to_vec();
        let mut coef = vec![BigInt::zero(); self.transform.len()];
        for (r, &c) in self.pivots.iter().enumerate() {
            if w[..c].iter().any(|a| !a.is_zero()) {
                return None;
            }
            let (k, rem) = w[c].div_rem(&self.rows[r][c]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut w, &-&k, &self.rows[r]);
            axpy(&mut coef, &k, &self.transform[r]);
        }
        w.iter().all(|a| a.is_zero()).then_some(coef)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// A basis of the lattice (the nonzero echelon rows).
    pub fn basis(&self) -> Vec<IVec> {
        self.rows[..self.rank()].to_vec()
    }
}

/// Z-basis of `{w : A w = 0}` for `A` with `ncols` columns.
pub fn right_kernel(a: &[IVec], ncols: usize) -> Vec<IVec> {
    let at: Vec<IVec> = (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    let e = echelon(&at, a.len());
    e.transform[e.rank()..].to_vec()
}

/// Z-basis of `(Lambda tensor Q) cap Z^n`.
pub fn saturation(gens: &[IVec], n: usize) -> Vec<IVec> {
    let perp = right_kernel(gens, n);
    if perp.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    }
    let sat = right_kernel(&perp, n);
    echelon(&sat, n).basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_divides_content() {
        let g = vec![to_big(&[2, 4]), to_big(&[0, 6])];
        let e = echelon(&g, 2);
        assert!(e.contains(&to_big(&[2, 10])));
        assert!(!e.contains(&to_big(&[1, 2])));
        let s = saturation(&g, 2);
        assert_eq!(s.len(), 2);
        let es = echelon(&s, 2);
        assert!(es.contains(&to_big(&[1, 0])) && es.contains(&to_big(&[0, 1])));
        let s = saturation(&[to_big(&[2, -4, 6])], 3);
        assert_eq!(s.len(), 1);
        assert!(echelon(&s, 3).contains(&to_big(&[1, -2, 3])));
        let k = right_kernel(&[to_big(&[1, 1, 0])], 3);
        assert_eq!(k.len(), 2);
    }
}
