//! Greatest common divisors of multivariate polynomials.
//!
//! Recursive primitive pseudo-remainder sequences: a polynomial is viewed as
//! univariate in its highest-index variable with coefficients in the other
//! variables, contents are split off recursively, and the primitive parts are
//! reduced by pseudo-division. Results are normalized to be monic.

use super::poly::MultiPoly;

/// Monic gcd of `a` and `b`. `gcd(0, 0) = 0`.
pub fn multi_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    let v = match (0..n).rev().find(|&v| a.uses_var(v) || b.uses_var(v)) {
        Some(v) => v,
        None => return MultiPoly::one(n),
    };
    match (a.uses_var(v), b.uses_var(v)) {
        (true, false) => multi_gcd(&content(a, v), b),
        (false, true) => multi_gcd(a, &content(b, v)),
        _ => {
            let ca = content(a, v);
            let cb = content(b, v);
            let c = multi_gcd(&ca, &cb);
            let mut p = a.div_exact(&ca).expect("content divides");
            let mut q = b.div_exact(&cb).expect("content divides");
            if p.degree_in(v) < q.degree_in(v) {
                std::mem::swap(&mut p, &mut q);
            }
            loop {
                let r = pseudo_remainder(&p, &q, v);
                if r.is_zero() {
                    break;
                }
                if !r.uses_var(v) {
                    q = MultiPoly::one(n);
                    break;
                }
                p = q;
                q = primitive_part(&r, v);
            }
            (&c * &q).monic()
        }
    }
}

/// Monic gcd of a list; the empty list gives 0.
pub fn multi_gcd_all<'a>(ps: impl IntoIterator<Item = &'a MultiPoly>, nvars: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(nvars);
    for p in ps {
        g = multi_gcd(&g, p);
        if !g.is_zero() && g.is_constant() {
            break;
        }
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &MultiPoly, v: usize) -> MultiPoly {
    multi_gcd_all(p.coefficients_in(v).iter().filter(|c| !c.is_zero()), p.nvars())
}

pub fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.div_exact(&content(p, v)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
pub fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = a.nvars();
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.uses_var(v) && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let mut e = vec![0u32; n];
        e[v] = dr - db;
        let shift = MultiPoly::from_terms(n, [(e, num_traits::One::one())]);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn common_factor_recovered() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let one = MultiPoly::one(3);
        let g = &(&x * &y) + &z;
        let a = &g * &(&x + &one);
        let b = &g * &(&(&y * &y) - &z);
        assert_eq!(multi_gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_gives_one() {
        let (x, y) = (v(2, 0), v(2, 1));
        let a = &(&x * &x) + &(&y * &y);
        let b = &x - &y;
        assert_eq!(multi_gcd(&a, &b), MultiPoly::one(2));
    }

    #[test]
    fn monomial_gcd() {
        let (s, t) = (v(2, 0), v(2, 1));
        let list = [&t * &t, (&s * &t).scale(&int(-2)), &(&t * &t) * &s];
        assert_eq!(multi_gcd_all(list.iter(), 2), t);
        let strict = [&s * &s, &s * &t, &t * &t];
        assert_eq!(multi_gcd_all(strict.iter(), 2), MultiPoly::one(2));
    }
}
