//! Standard biparabolic subalgebras of simple Lie algebras and their
//! canonical truncations.
//!
//! `q_{π⁻,π⁺}` is spanned by 𝔥 and the root vectors `e_β` with
//! `β ∈ R⁻ = (ℕπ⁻ ∪ -ℕπ⁺) ∩ Δ`. The truncation replaces 𝔥 by the common kernel
//! `𝔥_Λ` of the weights of the semi-invariants. The dual basis vector of
//! `e_β` has weight `-β`; it is the root vector `x_α` of 𝔮* with
//! `α = -β ∈ R = -R⁻`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::semi_invariants;
use crate::lie::{LieAlgebra, Sparse};
use crate::linalg::scalar::primitive_integer_vector;
use crate::linalg::{Matrix, Scalar};
use crate::roots::{ChevalleyConstants, Root, RootSystem};

/// Name of the root vector of root `r`: `e` for positive and `f` for
/// negative roots, followed by the coefficients of `±r`.
pub fn root_vector_name(r: &[i64]) -> String {
    let positive = r.iter().any(|&c| c > 0);
    let abs: Vec<String> = r.iter().map(|c| c.abs().to_string()).collect();
    let wide = r.len() >= 10 || r.iter().any(|c| c.abs() >= 10);
    let digits = if wide { abs.join("_") } else { abs.concat() };
    format!("{}{}", if positive { "e" } else { "f" }, digits)
}

/// Realizes the span of the Cartan elements `cartan` (coroot coordinates)
/// and the root vectors of `roots` (root indices) as a Lie algebra with a
/// Chevalley basis. The span must be closed under brackets.
pub fn realize(
    rs: &RootSystem,
    consts: &ChevalleyConstants,
    cartan: &[Vec<Scalar>],
    cartan_names: Vec<String>,
    roots: &[usize],
    name: &str,
) -> Result<LieAlgebra> {
    let m = cartan.len();
    let position = |r: usize| roots.iter().position(|&x| x == r).map(|p| p + m);
    let mut names = cartan_names;
    names.extend(roots.iter().map(|&r| root_vector_name(&rs.roots()[r])));
    let as_scalars = |r: &Root| -> Vec<Scalar> { r.iter().map(|&c| Scalar::from_integer(c.into())).collect() };
    let cartan_mat = if m > 0 { Some(Matrix::from_columns(cartan, rs.rank())) } else { None };
    let mut brackets: Vec<((usize, usize), Sparse)> = Vec::new();
    for (a, u) in cartan.iter().enumerate() {
        for (p, &r) in roots.iter().enumerate() {
            let v = rs.evaluate_on_coroots(&as_scalars(&rs.roots()[r]), u);
            if !v.is_zero() {
                brackets.push(((a, m + p), vec![(m + p, v)]));
            }
        }
    }
    for (p, &r) in roots.iter().enumerate() {
        for (q, &s) in roots.iter().enumerate().skip(p + 1) {
            let rr = &rs.roots()[r];
            let ss = &rs.roots()[s];
            let sum: Root = rr.iter().zip(ss).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&c| c == 0) {
                let hr = rs.coroot(rr);
                let coords = cartan_mat.as_ref().and_then(|cm| cm.solve(&hr)).ok_or_else(|| {
                    Error::BadTruncation(format!(
                        "[{}, {}] is a coroot outside the chosen Cartan part",
                        root_vector_name(rr),
                        root_vector_name(ss)
                    ))
                })?;
                let v: Sparse = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                brackets.push(((m + p, m + q), v));
            } else if rs.is_root(&sum) {
                let t = rs.index_of(&sum).unwrap();
                let k = position(t)
                    .ok_or_else(|| Error::Precondition(format!("root set not closed: {} missing", root_vector_name(&sum))))?;
                let c = consts.get(r, s);
                brackets.push(((m + p, m + q), vec![(k, Scalar::from_integer(c.into()))]));
            }
        }
    }
    let dual_names: Vec<String> = names.iter().map(|s| format!("{s}*")).collect();
    LieAlgebra::from_brackets(name, names, brackets)?.with_dual_names(dual_names)?.with_cartan((0..m).collect())
}

/// The full simple Lie algebra with basis `h_1..h_n` followed by all root
/// vectors in root order.
pub fn simple_lie_algebra(rs: &RootSystem) -> Result<LieAlgebra> {
    let n = rs.rank();
    let consts = ChevalleyConstants::new(rs);
    let cartan: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
    let roots: Vec<usize> = (0..rs.roots().len()).collect();
    realize(rs, &consts, &cartan, cartan_names(n, true), &roots, &rs.name())
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn cartan_names(k: usize, full: bool) -> Vec<String> {
    let p = if full { "h" } else { "u" };
    (1..=k).map(|i| format!("{p}{i}")).collect()
}

#[derive(Clone, Debug)]
pub struct BiparabolicSpec {
    pub rs: RootSystem,
    pub pi_plus: Vec<usize>,
    pub pi_minus: Vec<usize>,
    /// Root indices of `R⁻`, in root order.
    pub r_minus: Vec<usize>,
    /// Root indices of `R = -R⁻`, in root order.
    pub r: Vec<usize>,
}

impl BiparabolicSpec {
    /// Builds `q_{π⁻,π⁺}` after checking `π⁺ ∪ π⁻ = π` and `π⁺ ∩ π⁻ ≠ π`.
    pub fn new(rs: RootSystem, pi_plus: &[usize], pi_minus: &[usize]) -> Result<Self> {
        let n = rs.rank();
        if pi_plus.iter().chain(pi_minus).any(|&i| i >= n) {
            return Err(Error::StandingHypothesis(format!("simple root index out of range for rank {n}")));
        }
        let mut pi_plus = pi_plus.to_vec();
        let mut pi_minus = pi_minus.to_vec();
        pi_plus.sort_unstable();
        pi_plus.dedup();
        pi_minus.sort_unstable();
        pi_minus.dedup();
        if !(0..n).all(|i| pi_plus.contains(&i) || pi_minus.contains(&i)) {
            return Err(Error::StandingHypothesis("π⁺ ∪ π⁻ must be all of π".into()));
        }
        if (0..n).all(|i| pi_plus.contains(&i) && pi_minus.contains(&i)) {
            return Err(Error::StandingHypothesis("π⁺ ∩ π⁻ = π gives a reductive algebra, which is excluded".into()));
        }
        let supported_in = |r: &Root, set: &[usize]| r.iter().enumerate().all(|(i, &c)| c == 0 || set.contains(&i));
        let r_minus: Vec<usize> = (0..rs.roots().len())
            .filter(|&k| {
                let r = &rs.roots()[k];
                if rs.is_positive(k) {
                    supported_in(r, &pi_minus)
                } else {
                    supported_in(r, &pi_plus)
                }
            })
            .collect();
        for &a in &r_minus {
            for &b in &r_minus {
                let sum: Root = rs.roots()[a].iter().zip(&rs.roots()[b]).map(|(x, y)| x + y).collect();
                if let Some(t) = rs.index_of(&sum) {
                    if !r_minus.contains(&t) {
                        return Err(Error::Precondition("R⁻ is not additively closed".into()));
                    }
                }
            }
        }
        let mut r: Vec<usize> = r_minus.iter().map(|&k| rs.negative_index(k)).collect();
        r.sort_unstable();
        Ok(BiparabolicSpec { rs, pi_plus, pi_minus, r_minus, r })
    }

    /// Simple roots of the Levi factor, `π⁺ ∩ π⁻`.
    pub fn levi(&self) -> Vec<usize> {
        self.pi_plus.iter().copied().filter(|i| self.pi_minus.contains(i)).collect()
    }

    pub fn name(&self) -> String {
        let fmt = |s: &[usize]| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        format!("q_{}(+{{{}}},-{{{}}})", self.rs.name(), fmt(&self.pi_plus), fmt(&self.pi_minus))
    }

    /// `q` itself, with the full Cartan subalgebra.
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let n = self.rs.rank();
        let consts = ChevalleyConstants::new(&self.rs);
        let cartan: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
        realize(&self.rs, &consts, &cartan, cartan_names(n, true), &self.r_minus, &self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruncationMode {
    /// Characters given in simple-root coordinates.
    Explicit(Vec<Vec<Scalar>>),
    /// Weights of the semi-invariants of `q` up to the given degree.
    BruteForce(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Explicit,
    BruteForce {
        degree_bound: u32,
        /// `dim 𝔥_Λ` unchanged between the last two degrees.
        stabilized: bool,
        /// `dim 𝔥_Λ` after degrees `0..=degree_bound`.
        dims_by_degree: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationData {
    /// Characters in simple-root coordinates.
    pub lambda_generators: Vec<Vec<Scalar>>,
    /// Basis of `𝔥_Λ` in simple-coroot coordinates.
    pub h_lambda_basis: Vec<Vec<Scalar>>,
    pub provenance: Provenance,
}

impl TruncationData {
    pub fn is_certified(&self) -> bool {
        match &self.provenance {
            Provenance::Explicit => true,
            Provenance::BruteForce { stabilized, .. } => *stabilized,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedBiparabolic {
    pub spec: BiparabolicSpec,
    pub truncation: TruncationData,
    /// `q_Λ`: basis of `𝔥_Λ` followed by `e_β`, `β ∈ R⁻`.
    pub algebra: LieAlgebra,
    /// `q` with the full Cartan subalgebra.
    pub untruncated: LieAlgebra,
}

/// `λ(h_i) = Σ_j λ_j a_ij`.
fn values_on_coroots(rs: &RootSystem, lambda: &[Scalar]) -> Vec<Scalar> {
    (0..rs.rank()).map(|i| rs.evaluate_on_coroots(lambda, &unit(rs.rank(), i))).collect()
}

fn common_kernel(rs: &RootSystem, lambdas: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = rs.rank();
    if lambdas.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let rows: Vec<Vec<Scalar>> = lambdas.iter().map(|l| values_on_coroots(rs, l)).collect();
    Matrix::from_rows_with_cols(rows, n)
        .kernel()
        .into_iter()
        .map(|v| primitive_integer_vector(&v).into_iter().map(Scalar::from_integer).collect())
        .collect()
}

/// Computes `𝔥_Λ` and realizes `q_Λ`.
pub fn compute_truncation(spec: &BiparabolicSpec, mode: &TruncationMode) -> Result<TruncatedBiparabolic> {
    let rs = &spec.rs;
    let n = rs.rank();
    let q = spec.algebra()?;
    let (lambdas, provenance) = match mode {
        TruncationMode::Explicit(ls) => {
            if ls.iter().any(|l| l.len() != n) {
                return Err(Error::Dimension(format!("characters must have {n} coordinates")));
            }
            (ls.clone(), Provenance::Explicit)
        }
        TruncationMode::BruteForce(bound) => {
            let report = semi_invariants(&q, *bound)?;
            let cartan_mat = Matrix::from_rows(
                rs.cartan_matrix().iter().map(|row| row.iter().map(|&c| Scalar::from_integer(c.into())).collect()).collect(),
            );
            let mut lambdas: Vec<Vec<Scalar>> = Vec::new();
            let mut dims = vec![n];
            for d in 1..=*bound {
                for ch in report.proper_characters_up_to(d) {
                    let values: Vec<Scalar> = q.cartan().iter().map(|&i| ch[i].clone()).collect();
                    let lambda = cartan_mat.solve(&values).expect("Cartan matrix is invertible");
                    if !lambdas.contains(&lambda) {
                        lambdas.push(lambda);
                    }
                }
                dims.push(common_kernel(rs, &lambdas).len());
            }
            let stabilized = dims.len() >= 2 && dims[dims.len() - 1] == dims[dims.len() - 2];
            (lambdas, Provenance::BruteForce { degree_bound: *bound, stabilized, dims_by_degree: dims })
        }
    };
    let h_lambda = common_kernel(rs, &lambdas);
    let full = h_lambda.len() == n;
    let basis = if full { (0..n).map(|i| unit(n, i)).collect() } else { h_lambda.clone() };
    let consts = ChevalleyConstants::new(rs);
    let algebra =
        realize(rs, &consts, &basis, cartan_names(basis.len(), full), &spec.r_minus, &format!("{}_trunc", spec.name()))?;
    Ok(TruncatedBiparabolic {
        spec: spec.clone(),
        truncation: TruncationData { lambda_generators: lambdas, h_lambda_basis: basis, provenance },
        algebra,
        untruncated: q,
    })
}

impl TruncatedBiparabolic {
    pub fn h_lambda_dim(&self) -> usize {
        self.truncation.h_lambda_basis.len()
    }

    /// Index in the algebra basis of `e_β` for the root index `β`.
    pub fn basis_of_root(&self, beta: usize) -> Option<usize> {
        self.spec.r_minus.iter().position(|&r| r == beta).map(|p| p + self.h_lambda_dim())
    }

    /// Index of the dual basis vector `x_α` for `α ∈ R` (root index).
    pub fn dual_of_root(&self, alpha: usize) -> Option<usize> {
        self.basis_of_root(self.spec.rs.negative_index(alpha))
    }

    /// Root `α ∈ R` carried by dual basis vector `k`, if any.
    pub fn root_of_dual(&self, k: usize) -> Option<usize> {
        let m = self.h_lambda_dim();
        (k >= m).then(|| self.spec.rs.negative_index(self.spec.r_minus[k - m]))
    }

    /// `α(u)` for a root index `α` and `u ∈ 𝔥_Λ` in coordinates of the
    /// `𝔥_Λ` basis.
    pub fn root_on_h(&self, alpha: usize, u: &[Scalar]) -> Scalar {
        let h = self.to_coroot_coords(u);
        let r: Vec<Scalar> = self.spec.rs.roots()[alpha].iter().map(|&c| Scalar::from_integer(c.into())).collect();
        self.spec.rs.evaluate_on_coroots(&r, &h)
    }

    /// Coroot coordinates of `Σ u_a b_a` with `b_a` the `𝔥_Λ` basis.
    pub fn to_coroot_coords(&self, u: &[Scalar]) -> Vec<Scalar> {
        let n = self.spec.rs.rank();
        let mut h = vec![Scalar::zero(); n];
        for (c, b) in u.iter().zip(&self.truncation.h_lambda_basis) {
            for (x, y) in h.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        h
    }

    /// Coordinates in the `𝔥_Λ` basis of an element of 𝔥 given in coroot
    /// coordinates, if it lies in `𝔥_Λ`.
    pub fn from_coroot_coords(&self, h: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.h_lambda_dim() == 0 {
            return h.iter().all(Zero::is_zero).then(Vec::new);
        }
        Matrix::from_columns(&self.truncation.h_lambda_basis, self.spec.rs.rank()).solve(h)
    }

    /// Embeds `u ∈ 𝔥_Λ` into the algebra basis.
    pub fn cartan_element(&self, u: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.algebra.dim()];
        for (i, c) in u.iter().enumerate() {
            v[i] = c.clone();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub dim_q: usize,
    pub index_q: usize,
    pub dim_truncated: usize,
    pub index_truncated: usize,
    pub holds: bool,
}

/// `dim q + ℓ(q) = dim q_Λ + ℓ(q_Λ)`.
pub fn truncation_identity_check(q: &LieAlgebra, q_lambda: &LieAlgebra) -> IdentityCheck {
    let (dq, iq) = (q.dim(), q.index());
    let (dt, it) = (q_lambda.dim(), q_lambda.index());
    IdentityCheck { dim_q: dq, index_q: iq, dim_truncated: dt, index_truncated: it, holds: dq + iq == dt + it }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn spec(t: char, n: usize, plus: &[usize], minus: &[usize]) -> BiparabolicSpec {
        BiparabolicSpec::new(RootSystem::new(t, n).unwrap(), plus, minus).unwrap()
    }

    #[test]
    fn simple_algebras_satisfy_jacobi() {
        for (t, n) in [('A', 1), ('A', 3), ('B', 2), ('B', 3), ('C', 3), ('D', 4), ('G', 2)] {
            let rs = RootSystem::new(t, n).unwrap();
            let g = simple_lie_algebra(&rs).unwrap();
            assert_eq!(g.validate(), Ok(()), "{t}{n}");
        }
    }

    #[test]
    fn root_sets() {
        let a1 = spec('A', 1, &[0], &[]);
        assert_eq!(a1.r_minus.len(), 1);
        assert_eq!(a1.rs.roots()[a1.r_minus[0]], vec![-1]);
        let c2 = spec('C', 2, &[0, 1], &[]);
        assert_eq!(c2.r_minus.len(), 4);
        assert!(c2.r_minus.iter().all(|&r| !c2.rs.is_positive(r)));
        let a2 = spec('A', 2, &[0, 1], &[0]);
        let mut roots: Vec<Root> = a2.r_minus.iter().map(|&r| a2.rs.roots()[r].clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![vec![-1, -1], vec![-1, 0], vec![0, -1], vec![1, 0]]);
        assert_eq!(a2.levi(), vec![0]);
    }

    #[test]
    fn hypothesis_enforced() {
        let rs = RootSystem::new('A', 2).unwrap();
        assert!(matches!(BiparabolicSpec::new(rs.clone(), &[0], &[]), Err(Error::StandingHypothesis(_))));
        assert!(matches!(BiparabolicSpec::new(rs, &[0, 1], &[0, 1]), Err(Error::StandingHypothesis(_))));
    }

    #[test]
    fn a1_borel_truncation() {
        let s = spec('A', 1, &[0], &[]);
        let t = compute_truncation(&s, &TruncationMode::BruteForce(2)).unwrap();
        // weights of f1 and f1^2
        assert_eq!(t.truncation.lambda_generators, vec![vec![int(-1)], vec![int(-2)]]);
        assert!(t.truncation.is_certified());
        assert_eq!(t.h_lambda_dim(), 0);
        assert!(t.algebra.is_abelian());
        assert_eq!(t.algebra.dim(), 1);
        let id = truncation_identity_check(&t.untruncated, &t.algebra);
        assert_eq!((id.dim_q, id.index_q, id.dim_truncated, id.index_truncated), (2, 0, 1, 1));
        assert!(id.holds);
    }

    #[test]
    fn explicit_truncation() {
        let s = spec('A', 2, &[0, 1], &[0]);
        let t = compute_truncation(&s, &TruncationMode::Explicit(Vec::new())).unwrap();
        assert_eq!(t.h_lambda_dim(), 2);
        assert_eq!(t.algebra.names()[0], "h1");
        // killing the Levi coroot is not a valid truncation
        let bad = TruncationMode::Explicit(vec![vec![int(1), int(0)]]);
        assert!(matches!(compute_truncation(&s, &bad), Err(Error::BadTruncation(_))));
    }
}
