use adapted_core::linalg::{in_integer_span, int, multi_gcd, rank_of, symbolic_rank, Matrix, Monomial, MultiPoly, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let rows_v: Vec<&[i64]> = v.chunks(cols).collect();
        Matrix::from_i64(&rows_v)
    })
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..=5).prop_flat_map(|n| small_matrix(n, n))
}

fn rect() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| small_matrix(r, c))
}

/// Laplace expansion, independent of elimination.
fn laplace(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut acc = Scalar::zero();
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * laplace(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), -3i64..=3), 0..4).prop_map(move |terms| {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            p = &p + &MultiPoly::monomial(Monomial(e), int(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in rect()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_laplace(m in square()) {
        let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        prop_assert_eq!(m.determinant(), laplace(&rows));
    }

    #[test]
    fn determinant_multiplicative(a in (1usize..=4).prop_flat_map(|n| (small_matrix(n, n), small_matrix(n, n)))) {
        let (x, y) = a;
        prop_assert_eq!((&x * &y).determinant(), x.determinant() * y.determinant());
    }

    #[test]
    fn char_poly_trace_and_det(m in square()) {
        let n = m.rows();
        let p = m.char_poly();
        // monic of degree n; coefficient of t^{n-1} is -trace, constant is (-1)^n det
        prop_assert_eq!(p.len(), n + 1);
        prop_assert_eq!(p[n].clone(), int(1));
        prop_assert_eq!(p[n - 1].clone(), -m.trace());
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(p[0].clone(), sign * m.determinant());
    }

    #[test]
    fn triangular_eigenvalues(diag in prop::collection::vec(-5i64..=5, 1..=5), upper in prop::collection::vec(-3i64..=3, 25)) {
        let n = diag.len();
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = diag[i];
            for j in i + 1..n {
                rows[i][j] = upper[i * 5 + j];
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_i64(&refs);
        let ev = m.rational_eigenvalues().unwrap();
        let mut want: Vec<Scalar> = diag.iter().map(|&d| int(d)).collect();
        want.sort();
        let sum = ev.iter().fold(Scalar::zero(), |a, b| a + b);
        prop_assert_eq!(&ev, &want);
        prop_assert_eq!(sum, m.trace());
    }

    #[test]
    fn gcd_divides(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        let x = &a * &c;
        let y = &b * &c;
        let g = multi_gcd(&x, &y);
        if !g.is_zero() {
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c.monic()).is_some());
            }
        }
    }

    #[test]
    fn division_roundtrip(a in poly_strategy(2), b in poly_strategy(2)) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
        let (q, r) = p.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, p);
    }

    #[test]
    fn symbolic_rank_bounds_sampled(m in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| prop::collection::vec(poly_strategy(2), r * c).prop_map(move |v| (r, c, v)))) {
        let (r, c, v) = m;
        let pm: Vec<Vec<MultiPoly>> = v.chunks(c).map(<[MultiPoly]>::to_vec).collect();
        let s = symbolic_rank(&pm, 2);
        prop_assert!(s <= r.min(c));
        for pt in [[int(1), int(2)], [int(-3), int(5)], [int(7), int(-1)]] {
            let rows: Vec<Vec<Scalar>> = pm.iter().map(|row| row.iter().map(|p| p.eval(&pt)).collect()).collect();
            prop_assert!(rank_of(&rows, c) <= s);
        }
    }

    #[test]
    fn integer_span_contains_generators(g in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..4), k in prop::collection::vec(-3i64..=3, 4)) {
        let gens: Vec<Vec<Scalar>> = g.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        let mut target = vec![Scalar::zero(); 3];
        for (v, c) in gens.iter().zip(&k) {
            for (t, x) in target.iter_mut().zip(v) {
                *t += x * int(*c);
            }
        }
        prop_assert!(in_integer_span(&gens, &target, 3));
    }
}

#[test]
fn half_lattice_point_excluded() {
    let gens = vec![vec![int(2), int(0)], vec![int(0), int(1)]];
    assert!(!in_integer_span(&gens, &[int(1), int(0)], 2));
    assert!(in_integer_span(&gens, &[int(4), int(-3)], 2));
}
