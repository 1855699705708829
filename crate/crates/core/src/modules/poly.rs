//! Univariate polynomials over `F_p`, constant term first, no trailing zeros.

use crate::ff::{self, Mat};

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&x| x != 0)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| ff::sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p))
            .collect(),
    )
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ff::add(out[i + j], ff::mul(x, y, p), p);
        }
    }
    trim(out)
}

/// Quotient and remainder; `m` must be nonzero.
pub(crate) fn divrem(a: &[u32], m: &[u32], p: u32) -> (Poly, Poly) {
    let dm = degree(m).expect("division by zero polynomial");
    let il = ff::inv(m[dm], p);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = ff::mul(r[dr], il, p);
        let shift = dr - dm;
        q[shift] = c;
        for (j, &y) in m.iter().enumerate() {
            r[shift + j] = ff::sub(r[shift + j], ff::mul(c, y, p), p);
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(a: Poly, p: u32) -> Poly {
    match degree(&a) {
        Some(d) => {
            let il = ff::inv(a[d], p);
            a.into_iter().map(|x| ff::mul(x, il, p)).collect()
        }
        None => a,
    }
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(a, p)
}

fn derivative(a: &[u32], p: u32) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| ff::mul(x, (i as u64 % p as u64) as u32, p))
            .collect(),
    )
}

fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut result = vec![1u32];
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(&mul(&result, &b, p), m, p).1;
        }
        b = divrem(&mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Distinct-degree factorisation of a monic polynomial: pairs `(i, g_i)` with
/// `g_i` the product of the irreducible factors of degree `i` of its
/// square-free part. Returns nothing when the square-free part is not
/// computable by `gcd(f, f′)` (that is, `f′ = 0`).
pub(crate) fn distinct_degree(f: &[u32], p: u32) -> Vec<(usize, Poly)> {
    let f = trim(f.to_vec());
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = derivative(&f, p);
    if df.is_empty() {
        return Vec::new();
    }
    let mut rest = divrem(&f, &gcd(&f, &df, p), p).0;
    let x = vec![0u32, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&rest).unwrap_or(0) >= 2 * i {
        h = powmod(&h, p as u64, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(&rest, &g, p).0;
            h = divrem(&h, &rest, p).1;
            out.push((i, g));
        }
        i += 1;
    }
    if let Some(d) = degree(&rest) {
        if d > 0 {
            out.push((d, monic(rest, p)));
        }
    }
    out
}

/// `f(a)` by Horner's rule.
pub(crate) fn eval_at(f: &[u32], a: &Mat) -> Mat {
    let n = a.rows();
    let p = a.prime();
    let mut acc = Mat::zeros(n, n, p);
    for &c in f.iter().rev() {
        acc = acc.mul(a);
        for i in 0..n {
            acc.set(i, i, ff::add(acc.get(i, i), c, p));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degrees() {
        let p = 3;
        // (x^2 + 1)(x - 1)(x - 2) over F_3; x^2+1 is irreducible there
        let f = mul(&mul(&[1, 0, 1], &[2, 1], p), &[1, 1], p);
        let d = distinct_degree(&f, p);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, 1);
        assert_eq!(degree(&d[0].1), Some(2));
        assert_eq!(d[1], (2, vec![1, 0, 1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let p = 5;
        let a = vec![3, 1, 4, 1, 2];
        let m = vec![2, 0, 1];
        let (q, r) = divrem(&a, &m, p);
        let back = mul(&q, &m, p);
        let n = back.len().max(r.len());
        let sum: Poly = trim(
            (0..n)
                .map(|i| ff::add(back.get(i).copied().unwrap_or(0), r.get(i).copied().unwrap_or(0), p))
                .collect(),
        );
        assert_eq!(sum, a);
    }
}
