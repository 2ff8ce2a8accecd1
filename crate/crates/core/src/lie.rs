//! Finite-dimensional Lie algebras over the rationals given by structure
//! constants, and their coadjoint machinery.
//!
//! Coadjoint convention: `(x·ξ)(z) = -ξ([x, z])`. In coordinates the action
//! of `x` on 𝔞* is the matrix `-(ad x)ᵀ`. The skew form is
//! `B_ξ[i][j] = ξ([x_i, x_j])`; its row space is 𝔞.ξ.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, ViolationKind};
use crate::linalg::{symbolic_rank, Matrix, MultiPoly, PolyMatrix, Scalar};

/// Sparse vector of `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Scalar)>;

#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    dual_names: Vec<String>,
    table: Vec<Sparse>,
    cartan: Vec<usize>,
    weights: Option<Vec<Vec<Scalar>>>,
    generic_rank: OnceLock<usize>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra").field("name", &self.name).field("names", &self.names).finish()
    }
}

fn dense_to_sparse(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn sparse_to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, c) in v {
        out[*i] += c;
    }
    out
}

impl LieAlgebra {
    /// Builds an algebra from brackets `[x_i, x_j] = Σ c_k x_k`. A pair that is
    /// listed in only one order is completed by antisymmetry; pairs listed in
    /// both orders are stored as given so that `validate` can check them.
    pub fn from_brackets(
        name: impl Into<String>,
        names: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Sparse)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut given = vec![false; n * n];
        let mut table: Vec<Sparse> = vec![Vec::new(); n * n];
        for ((i, j), v) in brackets {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Dimension(format!("bracket index out of range for dimension {n}")));
            }
            let dense = sparse_to_dense(&v, n);
            table[i * n + j] = dense_to_sparse(&dense);
            given[i * n + j] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if given[i * n + j] && !given[j * n + i] && i != j {
                    table[j * n + i] = table[i * n + j].iter().map(|(k, c)| (*k, -c.clone())).collect();
                }
            }
        }
        let dual_names = names.iter().map(|s| format!("{s}*")).collect();
        Ok(LieAlgebra {
            name: name.into(),
            names,
            dual_names,
            table,
            cartan: Vec::new(),
            weights: None,
            generic_rank: OnceLock::new(),
        })
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Self::from_brackets(format!("abelian{n}"), names, []).expect("valid")
    }

    pub fn with_dual_names(mut self, dual: Vec<String>) -> Result<Self> {
        if dual.len() != self.dim() {
            return Err(Error::Dimension("dual name count differs from dimension".into()));
        }
        self.dual_names = dual;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Declares the given basis elements to span a toral subalgebra acting
    /// diagonally on the basis; records the resulting weight of each basis
    /// vector as its eigenvalues under these elements.
    pub fn with_cartan(mut self, cartan: Vec<usize>) -> Result<Self> {
        let n = self.dim();
        let mut weights = vec![vec![Scalar::zero(); cartan.len()]; n];
        for (a, &u) in cartan.iter().enumerate() {
            for k in 0..n {
                let v = self.bracket_basis(u, k);
                match v.as_slice() {
                    [] => {}
                    [(idx, c)] if *idx == k => weights[k][a] = c.clone(),
                    _ => {
                        return Err(Error::Precondition(format!(
                            "{} does not act diagonally on {}",
                            self.names[u], self.names[k]
                        )))
                    }
                }
            }
        }
        for &u in &cartan {
            if !weights[u].iter().all(Zero::is_zero) {
                return Err(Error::Precondition("Cartan elements must commute".into()));
            }
        }
        self.cartan = cartan;
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dual_names(&self) -> &[String] {
        &self.dual_names
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dual_index(&self, name: &str) -> Option<usize> {
        self.dual_names.iter().position(|n| n == name)
    }

    /// Indices of the declared toral basis elements.
    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    /// Per basis vector, its eigenvalues under the declared toral elements.
    pub fn weights(&self) -> Option<&[Vec<Scalar>]> {
        self.weights.as_deref()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero structure constants as `((i, j), [x_i, x_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<((usize, usize), Sparse)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if !v.is_empty() {
                    out.push(((i, j), v.clone()));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn bracket_sparse(&self, x: &Sparse, y: &Sparse) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.bracket_basis(*i, *j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad x`: column `j` holds `[x, x_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// Matrix of the coadjoint action of `x` on 𝔞*, i.e. `-(ad x)ᵀ`.
    pub fn coadjoint_matrix(&self, x: &[Scalar]) -> Matrix {
        self.ad_matrix(x).transpose().scale(&-Scalar::one())
    }

    pub fn coadjoint_action(&self, x: &[Scalar], xi: &DualVector) -> DualVector {
        DualVector::new(self.coadjoint_matrix(x).mul_vec(&xi.coords))
    }

    /// Checks antisymmetry, the Jacobi identity on all basis triples and,
    /// when weights are declared, weight additivity. Reports the first
    /// violating triple.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let a = sparse_to_dense(self.bracket_basis(i, j), n);
                let b = sparse_to_dense(self.bracket_basis(j, i), n);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(Error::Violation { kind: ViolationKind::Antisymmetry, i, j, k: j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobi_holds(i, j, k) {
                        return Err(Error::Violation { kind: ViolationKind::Jacobi, i, j, k });
                    }
                }
            }
        }
        if let Some(w) = &self.weights {
            for i in 0..n {
                for j in 0..n {
                    for (k, _) in self.bracket_basis(i, j) {
                        let sum: Vec<Scalar> = w[i].iter().zip(&w[j]).map(|(a, b)| a + b).collect();
                        if sum != w[*k] {
                            return Err(Error::Violation { kind: ViolationKind::WeightAdditivity, i, j, k: *k });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim();
        let unit = |a: usize| vec![(a, Scalar::one())];
        let mut total = vec![Scalar::zero(); n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket_basis(b, c).clone();
            let t = self.bracket_sparse(&unit(a), &inner);
            for (x, y) in total.iter_mut().zip(t) {
                *x += y;
            }
        }
        total.iter().all(Zero::is_zero)
    }

    /// `B_ξ[i][j] = ξ([x_i, x_j])`.
    pub fn coadjoint_form(&self, xi: &DualVector) -> CoadjointForm {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for (k, c) in self.bracket_basis(i, j) {
                    acc += c * &xi.coords[*k];
                }
                m[(i, j)] = acc;
            }
        }
        CoadjointForm { base: xi.clone(), matrix: m }
    }

    /// `B` over indeterminate coordinates `ξ_1, ..., ξ_n`.
    pub fn symbolic_form(&self) -> PolyMatrix {
        let n = self.dim();
        let vars: Vec<MultiPoly> = (0..n).map(|k| MultiPoly::var(n, k)).collect();
        self.form_over(&vars)
    }

    /// `B` evaluated at a polynomial point `ξ(t)`.
    pub fn form_over(&self, xi: &[MultiPoly]) -> PolyMatrix {
        let n = self.dim();
        let nv = xi.first().map_or(0, MultiPoly::nvars);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = MultiPoly::zero(nv);
                        for (k, c) in self.bracket_basis(i, j) {
                            acc = &acc + &xi[*k].scale(c);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Ranks of `B_ξ` at `count` seeded random integer points with
    /// coordinates in `[-1000, 1000]`.
    pub fn sampled_ranks(&self, seed: u64, count: usize) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let xi = DualVector::new(
                    (0..self.dim()).map(|_| Scalar::from_integer(rng.gen_range(-1000i64..=1000).into())).collect(),
                );
                self.coadjoint_form(&xi).rank()
            })
            .collect()
    }

    /// Rank of `B` over the field of rational functions in the coordinates of
    /// ξ. A sampled point reaching the maximal possible even rank certifies the
    /// value directly; otherwise symbolic elimination decides.
    pub fn generic_rank(&self) -> usize {
        *self.generic_rank.get_or_init(|| {
            let n = self.dim();
            let ceiling = n - n % 2;
            let sampled = self.sampled_ranks(0x5eed, 4).into_iter().max().unwrap_or(0);
            if sampled == ceiling {
                return sampled;
            }
            let r = symbolic_rank(&self.symbolic_form(), n);
            debug_assert!(r >= sampled);
            r
        })
    }

    /// Generic rank computed by symbolic elimination only.
    pub fn generic_rank_symbolic(&self) -> usize {
        symbolic_rank(&self.symbolic_form(), self.dim())
    }

    /// `ℓ(𝔞) = dim 𝔞 - generic rank of B`.
    pub fn index(&self) -> usize {
        self.dim() - self.generic_rank()
    }

    pub fn is_regular(&self, xi: &DualVector) -> bool {
        self.coadjoint_form(xi).rank() == self.generic_rank()
    }

    /// Basis of `𝔞^ξ = {x : ξ([x, ·]) = 0}`.
    pub fn stabilizer(&self, xi: &DualVector) -> Vec<Vec<Scalar>> {
        self.coadjoint_form(xi).matrix.kernel()
    }

    /// Basis of the centre.
    pub fn centre(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        // x ↦ ([x, x_j])_j as an (n·n) × n matrix
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(j * n + k, i)] += c;
                }
            }
        }
        m.kernel()
    }

    /// Basis of `[𝔞, 𝔞]`.
    pub fn derived_algebra(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| sparse_to_dense(self.bracket_basis(i, j), n))
            .collect();
        if rows.is_empty() {
            return Vec::new();
        }
        Matrix::from_rows_with_cols(rows, n).row_space()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Checks `(ad x)^dim = 0`.
    pub fn is_ad_nilpotent(&self, x: &[Scalar]) -> bool {
        self.ad_matrix(x).pow(self.dim() as u32).is_zero()
    }

    /// `exp(x)·ξ` for ad-nilpotent `x`, as a finite series.
    pub fn coadjoint_exp(&self, x: &[Scalar], xi: &DualVector) -> Result<DualVector> {
        if !self.is_ad_nilpotent(x) {
            return Err(Error::NotNilpotent);
        }
        let m = self.coadjoint_matrix(x);
        let mut term = xi.coords.clone();
        let mut acc = term.clone();
        for k in 1..=self.dim() {
            term = m.mul_vec(&term);
            let inv = Scalar::one() / Scalar::from_integer(k.into());
            term.iter_mut().for_each(|t| *t *= &inv);
            if term.iter().all(Zero::is_zero) {
                break;
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
        }
        Ok(DualVector::new(acc))
    }

    /// Symbolic version of [`coadjoint_exp`](Self::coadjoint_exp): the
    /// coefficients of `x` and the coordinates of `ξ` are polynomials in a
    /// common ring.
    pub fn coadjoint_exp_symbolic(&self, x: &[MultiPoly], xi: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        let n = self.dim();
        let nv = xi.first().map_or(0, MultiPoly::nvars);
        // coadjoint matrix entries: M[j][k] = -[x, x_j]_k
        let mut m = vec![vec![MultiPoly::zero(nv); n]; n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[j][*k] = &m[j][*k] - &a.scale(c);
                }
            }
        }
        let apply = |v: &[MultiPoly]| -> Vec<MultiPoly> {
            (0..n)
                .map(|j| {
                    let mut acc = MultiPoly::zero(nv);
                    for k in 0..n {
                        if !m[j][k].is_zero() && !v[k].is_zero() {
                            acc = &acc + &(&m[j][k] * &v[k]);
                        }
                    }
                    acc
                })
                .collect()
        };
        // nilpotency: M^n applied to every basis vector vanishes
        for b in 0..n {
            let mut v: Vec<MultiPoly> = (0..n).map(|k| if k == b { MultiPoly::one(nv) } else { MultiPoly::zero(nv) }).collect();
            for _ in 0..n {
                v = apply(&v);
            }
            if v.iter().any(|p| !p.is_zero()) {
                return Err(Error::NotNilpotent);
            }
        }
        let mut term = xi.to_vec();
        let mut acc = term.clone();
        for k in 1..=n {
            term = apply(&term);
            let inv = Scalar::one() / Scalar::from_integer(k.into());
            term = term.iter().map(|t| t.scale(&inv)).collect();
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = &*a + t;
            }
        }
        Ok(acc)
    }
}

/// Element of 𝔞* in coordinates of the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVector {
    pub coords: Vec<Scalar>,
    /// Optional presentation as a combination of dual basis elements.
    pub support: Option<Sparse>,
}

impl DualVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        DualVector { coords, support: None }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Scalar::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[i] = Scalar::one();
        v
    }

    pub fn from_support(n: usize, support: Sparse) -> Self {
        let coords = sparse_to_dense(&support, n);
        DualVector { coords, support: Some(support) }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Whether the support presentation, when present, expands to the coordinates.
    pub fn support_consistent(&self) -> bool {
        match &self.support {
            None => true,
            Some(s) => sparse_to_dense(s, self.dim()) == self.coords,
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        format_vector(&self.coords, names)
    }
}

/// Renders a coordinate vector as a linear combination of named basis elements.
pub fn format_vector(v: &[Scalar], names: &[String]) -> String {
    let n = names.len();
    let p = MultiPoly::linear(&v[..n.min(v.len())], Scalar::zero());
    p.display_with(names)
}

/// The skew form `B_ξ` at a base point.
#[derive(Clone, Debug)]
pub struct CoadjointForm {
    pub base: DualVector,
    pub matrix: Matrix,
}

impl CoadjointForm {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn s(i: usize, c: i64) -> (usize, Scalar) {
        (i, int(c))
    }

    fn filiform() -> LieAlgebra {
        let names = (1..=5).map(|i| format!("x{i}")).collect();
        LieAlgebra::from_brackets("filiform5", names, [((0, 1), vec![s(2, 1)]), ((0, 2), vec![s(3, 1)]), ((0, 3), vec![s(4, 1)])])
            .unwrap()
    }

    fn heisenberg(hz: bool) -> LieAlgebra {
        let names = ["h", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let mut b = vec![((0, 1), vec![s(1, 2)]), ((0, 2), vec![s(2, -1)]), ((1, 2), vec![s(3, 1)])];
        if hz {
            b.push(((0, 3), vec![s(3, 1)]));
        }
        LieAlgebra::from_brackets("heisenberg_ext", names, b).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LieAlgebra::abelian(3).validate().is_ok());
        assert!(heisenberg(true).validate().is_ok());
        assert_eq!(heisenberg(false).validate(), Err(Error::Violation { kind: ViolationKind::Jacobi, i: 0, j: 1, k: 2 }));
        let bad =
            LieAlgebra::from_brackets("bad", vec!["a".into(), "b".into()], [((0, 1), vec![s(0, 1)]), ((1, 0), vec![s(0, 1)])])
                .unwrap();
        assert!(matches!(bad.validate(), Err(Error::Violation { kind: ViolationKind::Antisymmetry, .. })));
    }

    #[test]
    fn filiform_form_and_stabilizer() {
        let a = filiform();
        let xi = DualVector::new(vec![int(0), int(0), int(1), int(0), int(1)]);
        let b = a.coadjoint_form(&xi);
        assert_eq!(b.matrix[(0, 1)], int(1));
        assert_eq!(b.matrix[(0, 3)], int(1));
        assert_eq!(b.rank(), 2);
        assert_eq!(a.stabilizer(&xi).len(), 3);
        assert_eq!(a.index(), 3);
        assert_eq!(a.generic_rank_symbolic(), 2);
        assert!(a.is_regular(&xi));
        assert!(!a.is_regular(&DualVector::basis(5, 1)));
        assert_eq!(a.centre(), vec![vec![int(0), int(0), int(0), int(0), int(1)]]);
    }

    #[test]
    fn heisenberg_is_frobenius() {
        let a = heisenberg(true);
        let zeta = DualVector::basis(4, 3);
        assert_eq!(a.coadjoint_form(&zeta).rank(), 4);
        assert_eq!(a.index(), 0);
        assert!(a.centre().is_empty());
        assert!(a.stabilizer(&zeta).is_empty());
    }

    #[test]
    fn coadjoint_signs() {
        let a = filiform();
        // (ad x1)(y3) = -y2, (ad x2)(y3) = y1
        let y3 = DualVector::basis(5, 2);
        let x1 = DualVector::basis(5, 0).coords;
        let x2 = DualVector::basis(5, 1).coords;
        assert_eq!(a.coadjoint_action(&x1, &y3).coords, vec![int(0), int(-1), int(0), int(0), int(0)]);
        assert_eq!(a.coadjoint_action(&x2, &y3).coords, vec![int(1), int(0), int(0), int(0), int(0)]);
        assert!(a.coadjoint_exp(&x1, &y3).is_ok());
        let h = heisenberg(true);
        assert_eq!(h.coadjoint_exp(&[int(1), int(0), int(0), int(0)], &DualVector::basis(4, 3)), Err(Error::NotNilpotent));
    }

    #[test]
    fn cartan_weights() {
        let a = heisenberg(true).with_cartan(vec![0]).unwrap();
        let w: Vec<Scalar> = a.weights().unwrap().iter().map(|v| v[0].clone()).collect();
        assert_eq!(w, vec![int(0), int(2), int(-1), int(1)]);
        assert!(a.validate().is_ok());
        assert!(filiform().with_cartan(vec![0]).is_err());
    }
}
