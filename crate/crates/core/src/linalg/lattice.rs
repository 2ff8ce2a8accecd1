//! Integer lattice membership via Hermite-style echelon forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::scalar::{common_denominator, Scalar};

/// Integer row echelon form of the rows of `gens` (extended-gcd row operations).
pub fn integer_echelon(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    let mut out = Vec::new();
    for col in 0..dim {
        // gcd-reduce the column among remaining rows
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pv = rows[p][col].clone();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = rows[i][col].div_floor(&pv);
                let sub: Vec<BigInt> = rows[p].iter().map(|x| x * &q).collect();
                for (a, b) in rows[i].iter_mut().zip(sub) {
                    *a -= b;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.remove(i);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(r);
        }
    }
    out
}

/// Whether `target` lies in the integer span of `gens`. All inputs are
/// rational; they are cleared to a common denominator first.
pub fn in_integer_span(gens: &[Vec<Scalar>], target: &[Scalar], dim: usize) -> bool {
    let den = common_denominator(gens.iter().flatten().chain(target.iter()));
    let den = Scalar::from_integer(den);
    let to_int = |v: &[Scalar]| -> Vec<BigInt> { v.iter().map(|x| (x * &den).to_integer()).collect() };
    let ech = integer_echelon(&gens.iter().map(|g| to_int(g)).collect::<Vec<_>>(), dim);
    let mut t = to_int(target);
    for row in &ech {
        let col = match row.iter().position(|x| !x.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        if t[col].is_zero() {
            continue;
        }
        let (q, r) = t[col].div_rem(&row[col]);
        if !r.is_zero() {
            return false;
        }
        for (a, b) in t.iter_mut().zip(row) {
            *a -= b * &q;
        }
    }
    t.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn membership() {
        let gens = vec![v(&[2, 0]), v(&[1, 1])];
        assert!(in_integer_span(&gens, &v(&[3, 1]), 2));
        assert!(in_integer_span(&gens, &v(&[0, 2]), 2));
        assert!(!in_integer_span(&gens, &v(&[1, 0]), 2));
        assert!(!in_integer_span(&gens, &v(&[0, 1]), 2));
    }

    #[test]
    fn gcd_in_one_dimension() {
        let gens = vec![v(&[6]), v(&[10])];
        assert!(in_integer_span(&gens, &v(&[2]), 1));
        assert!(!in_integer_span(&gens, &v(&[3]), 1));
    }
}
