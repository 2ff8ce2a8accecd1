//! Fraction-free elimination over polynomial matrices.

use super::poly::MultiPoly;

pub type PolyMatrix = Vec<Vec<MultiPoly>>;

fn pivot_cost(p: &MultiPoly) -> (u32, usize) {
    (p.total_degree(), p.num_terms())
}

/// Rank over the field of rational functions, by Bareiss elimination with
/// full pivoting on the entry of lowest total degree.
pub fn symbolic_rank(m: &PolyMatrix, nvars: usize) -> usize {
    let mut a: PolyMatrix = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = MultiPoly::one(nvars);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| pivot_cost(&a[i][j]) < pivot_cost(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    rank
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn symbolic_determinant(m: &PolyMatrix, nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut a = m.clone();
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| pivot_cost(&a[i][k]));
        let Some(pi) = pivot else {
            return MultiPoly::zero(nvars);
        };
        if pi != k {
            a.swap(k, pi);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn rank_of_generic_skew_matrix() {
        // [[0, a, b], [-a, 0, c], [-b, -c, 0]] has generic rank 2
        let n = 3;
        let (a, b, c) = (MultiPoly::var(n, 0), MultiPoly::var(n, 1), MultiPoly::var(n, 2));
        let z = MultiPoly::zero(n);
        let m = vec![vec![z.clone(), a.clone(), b.clone()], vec![-&a, z.clone(), c.clone()], vec![-&b, -&c, z.clone()]];
        assert_eq!(symbolic_rank(&m, n), 2);
        assert!(symbolic_determinant(&m, n).is_zero());
    }

    #[test]
    fn determinant_matches_expansion() {
        let n = 2;
        let (x, y) = (MultiPoly::var(n, 0), MultiPoly::var(n, 1));
        let one = MultiPoly::one(n);
        let m = vec![vec![x.clone(), y.clone()], vec![one.clone(), x.clone()]];
        let expected = &(&x * &x) - &y;
        assert_eq!(symbolic_determinant(&m, n), expected);
        let c = vec![vec![MultiPoly::zero(n), MultiPoly::constant(n, int(2))], vec![MultiPoly::constant(n, int(3)), one]];
        assert_eq!(symbolic_determinant(&c, n), MultiPoly::constant(n, int(-6)));
    }
}
