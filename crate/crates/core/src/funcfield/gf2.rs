//! Bit-packed kernels for `F_2[x]`. Bit `i` of the word array is the
//! coefficient of `x^i`.

pub(crate) fn pack(c: &[u64]) -> Vec<u64> {
    let mut w = vec![0u64; c.len().div_ceil(64)];
    for (i, &b) in c.iter().enumerate() {
        if b != 0 {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

pub(crate) fn unpack(w: &[u64]) -> Vec<u64> {
    let Some(d) = degree(w) else { return Vec::new() };
    (0..=d).map(|i| (w[i / 64] >> (i % 64)) & 1).collect()
}

pub(crate) fn degree(w: &[u64]) -> Option<usize> {
    w.iter().enumerate().rev().find(|(_, &x)| x != 0).map(|(i, &x)| i * 64 + 63 - x.leading_zeros() as usize)
}

#[inline]
fn xor_shifted(acc: &mut [u64], b: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    if bs == 0 {
        for (j, &x) in b.iter().enumerate() {
            acc[ws + j] ^= x;
        }
    } else {
        for (j, &x) in b.iter().enumerate() {
            acc[ws + j] ^= x << bs;
            acc[ws + j + 1] ^= x >> (64 - bs);
        }
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() + 1];
    for (i, &wa) in a.iter().enumerate() {
        let mut bits = wa;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            xor_shifted(&mut out, b, i * 64 + t);
            bits &= bits - 1;
        }
    }
    out
}

/// Remainder and quotient of `a` by nonzero `b`.
pub(crate) fn divrem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    r.push(0);
    let Some(da) = degree(a) else { return (Vec::new(), Vec::new()) };
    if da < db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; (da - db) / 64 + 1];
    let mut d = da;
    loop {
        if (r[d / 64] >> (d % 64)) & 1 == 1 {
            let s = d - db;
            q[s / 64] |= 1 << (s % 64);
            xor_shifted(&mut r, b, s);
        }
        if d == db {
            break;
        }
        d -= 1;
    }
    (q, r)
}
