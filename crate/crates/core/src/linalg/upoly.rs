//! Dense univariate polynomials over the rationals (coefficients low to high),
//! used for characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{common_denominator, Scalar};

pub type UPoly = Vec<Scalar>;

pub fn trim(p: &mut UPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree, with the zero polynomial given degree 0.
pub fn degree(p: &UPoly) -> usize {
    let mut q = p.clone();
    trim(&mut q);
    q.len().saturating_sub(1)
}

pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![Scalar::zero()];
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Scalar::zero);
            let y = b.get(i).cloned().unwrap_or_else(Scalar::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &UPoly, s: &Scalar) -> UPoly {
    a.iter().map(|x| x * s).collect()
}

pub fn eval(p: &UPoly, t: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
}

/// Quotient of `p` by `(t - r)`; assumes `r` is a root.
fn deflate(p: &UPoly, r: &Scalar) -> UPoly {
    let n = p.len();
    if n <= 1 {
        return vec![Scalar::zero()];
    }
    let mut q = vec![Scalar::zero(); n - 1];
    let mut carry = Scalar::zero();
    for i in (1..n).rev() {
        carry = &p[i] + carry * r;
        q[i - 1] = carry.clone();
    }
    q
}

/// Positive divisors of `n`. Trial division up to 10^6; a cofactor left
/// above that bound is treated as prime, which can only miss divisors that
/// are products of two primes above 10^6.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= n && p <= limit {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &q;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Peels off every rational root (with multiplicity). Returns the roots and
/// the residual factor, which has no rational roots.
pub fn rational_roots(p: &UPoly) -> (Vec<Scalar>, UPoly) {
    let mut p = p.clone();
    trim(&mut p);
    let mut roots = Vec::new();
    // zero roots
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        roots.push(Scalar::zero());
    }
    if p.len() <= 1 {
        return (roots, p);
    }
    let den = Scalar::from_integer(common_denominator(p.iter()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    let lead = ints.last().unwrap().clone();
    let trail = ints[0].clone();
    let mut cands: Vec<Scalar> = Vec::new();
    for a in divisors(&trail) {
        for b in divisors(&lead) {
            let r = Scalar::new(a.clone(), b.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    // avoid blowing up on enormous candidate lists
    if cands.len() > 200_000 {
        cands.retain(|c| c.to_integer().to_i64().is_some());
    }
    for r in cands {
        while p.len() > 1 && eval(&p, &r).is_zero() {
            p = deflate(&p, &r);
            trim(&mut p);
            roots.push(r.clone());
        }
        if p.len() <= 1 {
            break;
        }
    }
    (roots, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};

    #[test]
    fn roots_with_multiplicity() {
        // (t - 1)^2 (2t + 3) t = 2t^4 - t^3 - 4t^2 + 3t
        let p = vec![int(0), int(3), int(-4), int(-1), int(2)];
        let (mut r, rest) = rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![frac(-3, 2), int(0), int(1), int(1)]);
        assert_eq!(degree(&rest), 0);
    }

    #[test]
    fn irreducible_quadratic_stays() {
        let p = vec![int(-2), int(0), int(1)];
        let (r, rest) = rational_roots(&p);
        assert!(r.is_empty());
        assert_eq!(rest, p);
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
