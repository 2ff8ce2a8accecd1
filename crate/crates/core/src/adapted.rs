//! Adapted pairs: verification, support presentations, root-vector
//! complements, structural checks, equivalence and search.
//!
//! An adapted pair is `(h, η)` with `η` regular and `h·η = -η` under the
//! coadjoint action. For truncated biparabolics, `h ∈ 𝔥_Λ` is given in
//! coordinates of the `𝔥_Λ` basis and `η = Σ_{α∈S} c_α x_α` with `S ⊂ R`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::biparabolic::TruncatedBiparabolic;
use crate::error::{Error, Result};
use crate::invariants::GradedSolveReport;
use crate::lie::{DualVector, LieAlgebra};
use crate::linalg::matrix::SplitFailure;
use crate::linalg::{greedy_extension, in_integer_span, intersect_spans, rank_of, Matrix, MultiPoly, Scalar};
use crate::roots::{height, weyl_orbit, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedPairCandidate {
    /// `h` in algebra basis coordinates.
    pub h: Vec<Scalar>,
    pub eta: DualVector,
}

/// Outcome of the regularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub rank: usize,
    pub generic_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilfiberVerdict {
    /// Every positive-degree invariant found up to the bound vanishes at η.
    Vanishes { degree_bound: u32, checked: usize },
    /// An invariant not vanishing at η.
    Fails { invariant: MultiPoly, value: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedPairReport {
    pub is_adapted: bool,
    /// `h·η = -η` under the coadjoint convention.
    pub eigen_equation: bool,
    pub regularity: Regularity,
    /// Eigenvalues of `ad h` on 𝔞, ascending.
    pub eigenvalues: Result<Vec<Scalar>, SplitFailure>,
    /// `ad h` diagonalizable over the rationals.
    pub ad_semisimple: bool,
    /// Eigenvalues of `h` on an `h`-stable complement of 𝔞.η, ascending.
    pub exponents: Option<Vec<Scalar>>,
    pub index: usize,
    /// `d(𝔞) = dim 𝔞 - ℓ(𝔞)`.
    pub expected_orbit_dim: usize,
    /// `dim 𝔞.η`.
    pub orbit_dim: usize,
    /// Stabilizer of η has no Cartan component (biparabolic only).
    pub stabilizer_in_root_span: Option<bool>,
    /// `S` restricted to `𝔥_Λ` spans `𝔥_Λ*` (support-presented only).
    pub support_spans_h_lambda: Option<bool>,
    pub nilfiber: Option<NilfiberVerdict>,
}

/// Eigenvalues of a matrix together with a diagonalizability flag.
fn eigen_data(m: &Matrix) -> (Result<Vec<Scalar>, SplitFailure>, bool) {
    let ev = m.rational_eigenvalues();
    let semisimple = match &ev {
        Err(_) => false,
        Ok(vals) => {
            let mut distinct = vals.clone();
            distinct.dedup();
            let n = m.rows();
            let total: usize = distinct.iter().map(|mu| n - m.sub(&Matrix::identity(n).scale(mu)).rank()).sum();
            total == n
        }
    };
    (ev, semisimple)
}

/// Eigenspaces of the coadjoint action of `h` on 𝔞*, keyed by eigenvalue.
fn coadjoint_eigenspaces(a: &LieAlgebra, h: &[Scalar]) -> Option<BTreeMap<Scalar, Vec<Vec<Scalar>>>> {
    let m = a.coadjoint_matrix(h);
    let (ev, semisimple) = eigen_data(&m);
    if !semisimple {
        return None;
    }
    let n = a.dim();
    let mut out = BTreeMap::new();
    let mut vals = ev.ok()?;
    vals.dedup();
    for mu in vals {
        out.insert(mu.clone(), m.sub(&Matrix::identity(n).scale(&mu)).kernel());
    }
    Some(out)
}

/// An `h`-stable complement of 𝔞.η built eigenspace by eigenspace, as
/// `(eigenvalue, basis vector)` pairs. `None` when `h` is not diagonalizable
/// over the rationals or 𝔞.η is not `h`-stable.
pub fn generic_h_complement(a: &LieAlgebra, h: &[Scalar], eta: &DualVector) -> Option<Vec<(Scalar, DualVector)>> {
    let n = a.dim();
    let spaces = coadjoint_eigenspaces(a, h)?;
    let orbit = a.coadjoint_form(eta).matrix.row_space();
    let mut out = Vec::new();
    let mut covered = 0;
    for (mu, space) in spaces {
        let inside = intersect_spans(&orbit, &space, n);
        covered += inside.len();
        for k in greedy_extension(&inside, &space, n) {
            out.push((mu.clone(), DualVector::new(space[k].clone())));
        }
    }
    if covered != orbit.len() {
        return None;
    }
    Some(out)
}

/// Verifies a candidate pair on an arbitrary algebra. Support-based checks
/// are filled in by [`verify_biparabolic_pair`].
pub fn verify_adapted_pair(
    a: &LieAlgebra,
    cand: &AdaptedPairCandidate,
    invariants: Option<&GradedSolveReport>,
) -> AdaptedPairReport {
    let image = a.coadjoint_action(&cand.h, &cand.eta);
    let eigen_equation = image.coords.iter().zip(&cand.eta.coords).all(|(x, y)| (x + y).is_zero());
    let rank = a.coadjoint_form(&cand.eta).rank();
    let generic_rank = a.generic_rank();
    let regularity = Regularity { regular: rank == generic_rank, rank, generic_rank };
    let (eigenvalues, ad_semisimple) = eigen_data(&a.ad_matrix(&cand.h));
    let exponents = if eigen_equation {
        generic_h_complement(a, &cand.h, &cand.eta).map(|v| v.into_iter().map(|(mu, _)| mu).collect())
    } else {
        None
    };
    let nilfiber = invariants.map(|r| nilfiber_check(r, &cand.eta));
    let index = a.index();
    AdaptedPairReport {
        is_adapted: eigen_equation && regularity.regular,
        eigen_equation,
        regularity,
        eigenvalues,
        ad_semisimple,
        exponents,
        index,
        expected_orbit_dim: a.dim() - index,
        orbit_dim: rank,
        stabilizer_in_root_span: None,
        support_spans_h_lambda: None,
        nilfiber,
    }
}

/// Whether every positive-degree invariant in the report vanishes at η.
pub fn nilfiber_check(report: &GradedSolveReport, eta: &DualVector) -> NilfiberVerdict {
    let invs = report.invariants();
    for p in &invs {
        let v = p.evaluate(eta);
        if !v.is_zero() {
            return NilfiberVerdict::Fails { invariant: p.poly.clone(), value: v };
        }
    }
    NilfiberVerdict::Vanishes { degree_bound: report.degree_bound, checked: invs.len() }
}

/// `η = Σ c_α x_α` for `α ∈ S`.
pub fn eta_from_support(t: &TruncatedBiparabolic, support: &[usize], coeffs: &[Scalar]) -> Result<DualVector> {
    let n = t.algebra.dim();
    let mut sparse = Vec::new();
    for (&alpha, c) in support.iter().zip(coeffs) {
        let k = t
            .dual_of_root(alpha)
            .ok_or_else(|| Error::Precondition(format!("root {:?} is not in R", t.spec.rs.roots()[alpha])))?;
        sparse.push((k, c.clone()));
    }
    Ok(DualVector::from_support(n, sparse))
}

/// Matrix with rows `α|_{𝔥_Λ}` in coordinates dual to the `𝔥_Λ` basis.
fn restricted_roots(t: &TruncatedBiparabolic, support: &[usize]) -> Vec<Vec<Scalar>> {
    let k = t.h_lambda_dim();
    support
        .iter()
        .map(|&alpha| {
            (0..k)
                .map(|a| {
                    let mut u = vec![Scalar::zero(); k];
                    u[a] = Scalar::one();
                    t.root_on_h(alpha, &u)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HSolution {
    Unique(Vec<Scalar>),
    /// `particular + span(directions)`.
    Affine {
        particular: Vec<Scalar>,
        directions: Vec<Vec<Scalar>>,
    },
    Infeasible,
}

/// Solves `α(h) = -1` for all `α ∈ S` with `h ∈ 𝔥_Λ`.
pub fn solve_h_from_support(t: &TruncatedBiparabolic, support: &[usize]) -> HSolution {
    let k = t.h_lambda_dim();
    if k == 0 {
        return if support.is_empty() { HSolution::Unique(Vec::new()) } else { HSolution::Infeasible };
    }
    if support.is_empty() {
        return HSolution::Affine { particular: vec![Scalar::zero(); k], directions: Matrix::identity(k).row_vecs() };
    }
    let m = Matrix::from_rows_with_cols(restricted_roots(t, support), k);
    let rhs = vec![-Scalar::one(); support.len()];
    match m.solve(&rhs) {
        None => HSolution::Infeasible,
        Some(p) => {
            let dirs = m.kernel();
            if dirs.is_empty() {
                HSolution::Unique(p)
            } else {
                HSolution::Affine { particular: p, directions: dirs }
            }
        }
    }
}

/// Given vectors `v_i = Σ_r v_{i,r}` forming a basis of their span, picks one
/// summand per vector so that the picks are again independent.
pub fn basis_refinement(summands: &[Vec<Vec<Scalar>>], dim: usize) -> Result<Vec<usize>> {
    let sums: Vec<Vec<Scalar>> = summands
        .iter()
        .map(|parts| {
            let mut s = vec![Scalar::zero(); dim];
            for p in parts {
                for (x, y) in s.iter_mut().zip(p) {
                    *x += y;
                }
            }
            s
        })
        .collect();
    if rank_of(&sums, dim) != sums.len() {
        return Err(Error::Precondition("input vectors are not linearly independent".into()));
    }
    fn rec(summands: &[Vec<Vec<Scalar>>], dim: usize, chosen: &mut Vec<usize>, picked: &mut Vec<Vec<Scalar>>) -> bool {
        let i = chosen.len();
        if i == summands.len() {
            return true;
        }
        for (r, part) in summands[i].iter().enumerate() {
            picked.push(part.clone());
            if rank_of(picked, dim) == picked.len() {
                chosen.push(r);
                if rec(summands, dim, chosen, picked) {
                    return true;
                }
                chosen.pop();
            }
            picked.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if rec(summands, dim, &mut chosen, &mut Vec::new()) {
        Ok(chosen)
    } else {
        Err(Error::Precondition("no independent refinement exists".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSpec {
    /// Root indices `T ⊂ R`.
    pub t: Vec<usize>,
    pub v_basis: Vec<DualVector>,
    /// `α(h)` for `α ∈ T`, in the order of `t`.
    pub eigenvalues: Vec<Scalar>,
    /// `𝔞.η ⊕ V = 𝔞*`.
    pub complete: bool,
}

impl ComplementSpec {
    pub fn exponents(&self) -> Vec<Scalar> {
        let mut e = self.eigenvalues.clone();
        e.sort();
        e
    }
}

/// Roots of `R` in the canonical candidate order: height, then lexicographic.
pub fn canonical_root_order(t: &TruncatedBiparabolic) -> Vec<usize> {
    let rs = &t.spec.rs;
    let mut r = t.spec.r.clone();
    r.sort_by(|&a, &b| {
        let (ra, rb) = (&rs.roots()[a], &rs.roots()[b]);
        height(ra).cmp(&height(rb)).then_with(|| ra.cmp(rb))
    });
    r
}

/// Completes the row space of `B_η` to 𝔞* by dual root vectors `x_α`,
/// `α ∈ R`, taken greedily in the given candidate order (the canonical order
/// when `order` is `None`).
pub fn root_complement(t: &TruncatedBiparabolic, h: &[Scalar], eta: &DualVector, order: Option<&[usize]>) -> ComplementSpec {
    let a = &t.algebra;
    let n = a.dim();
    let order: Vec<usize> = order.map(<[usize]>::to_vec).unwrap_or_else(|| canonical_root_order(t));
    let base = a.coadjoint_form(eta).matrix.row_space();
    let cands: Vec<Vec<Scalar>> =
        order.iter().map(|&alpha| DualVector::basis(n, t.dual_of_root(alpha).expect("root in R")).coords).collect();
    let picks = greedy_extension(&base, &cands, n);
    let roots: Vec<usize> = picks.iter().map(|&i| order[i]).collect();
    let hu: Vec<Scalar> = h.to_vec();
    ComplementSpec {
        eigenvalues: roots.iter().map(|&alpha| t.root_on_h(alpha, &hu)).collect(),
        v_basis: picks.iter().map(|&i| DualVector::new(cands[i].clone())).collect(),
        complete: base.len() + picks.len() == n,
        t: roots,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// A non-integral eigenvalue, when one exists.
    pub witness: Option<Scalar>,
}

pub fn integrality(eigenvalues: &Result<Vec<Scalar>, SplitFailure>) -> IntegralityVerdict {
    match eigenvalues {
        Ok(v) => {
            let w = v.iter().find(|x| !x.is_integer()).cloned();
            IntegralityVerdict { integral: w.is_none(), witness: w }
        }
        Err(_) => IntegralityVerdict { integral: false, witness: None },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralVerdicts {
    /// `S ∪ T` spans 𝔥*.
    pub spans_h_dual: bool,
    /// `ℤS + ℤT` contains every root; lists simple roots outside it.
    pub lattice_contains_roots: bool,
    pub missing_simple_roots: Vec<usize>,
    pub integrality: IntegralityVerdict,
    /// `S|_{𝔥_Λ}` is a basis of `𝔥_Λ*`.
    pub minimal: bool,
}

pub fn structural_checks(t: &TruncatedBiparabolic, h: &[Scalar], support: &[usize], complement: &[usize]) -> StructuralVerdicts {
    let rs = &t.spec.rs;
    let n = rs.rank();
    let as_vec = |i: usize| -> Vec<Scalar> { rs.roots()[i].iter().map(|&c| Scalar::from_integer(c.into())).collect() };
    let gens: Vec<Vec<Scalar>> = support.iter().chain(complement).map(|&i| as_vec(i)).collect();
    let spans = rank_of(&gens, n) == n;
    let missing: Vec<usize> = (0..n)
        .filter(|&i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            !in_integer_span(&gens, &e, n)
        })
        .collect();
    let hv = t.cartan_element(h);
    let (ev, _) = eigen_data(&t.algebra.ad_matrix(&hv));
    let k = t.h_lambda_dim();
    let minimal = support.len() == k && rank_of(&restricted_roots(t, support), k) == k;
    StructuralVerdicts {
        spans_h_dual: spans,
        lattice_contains_roots: missing.is_empty(),
        missing_simple_roots: missing,
        integrality: integrality(&ev),
        minimal,
    }
}

/// A pair on a truncated biparabolic with its support presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiparabolicPair {
    /// `h` in `𝔥_Λ` basis coordinates.
    pub h: Vec<Scalar>,
    pub support: Vec<usize>,
    pub coefficients: Vec<Scalar>,
    pub eta: DualVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiparabolicPairReport {
    pub pair: BiparabolicPair,
    pub report: AdaptedPairReport,
    /// `α(h) = -1` for every `α ∈ S`.
    pub support_condition: bool,
    pub complement: ComplementSpec,
    pub structural: StructuralVerdicts,
}

pub fn verify_biparabolic_pair(
    t: &TruncatedBiparabolic,
    pair: &BiparabolicPair,
    invariants: Option<&GradedSolveReport>,
) -> BiparabolicPairReport {
    let a = &t.algebra;
    let cand = AdaptedPairCandidate { h: t.cartan_element(&pair.h), eta: pair.eta.clone() };
    let mut report = verify_adapted_pair(a, &cand, invariants);
    let k = t.h_lambda_dim();
    let stab = a.stabilizer(&pair.eta);
    report.stabilizer_in_root_span = Some(stab.iter().all(|v| v[..k].iter().all(Zero::is_zero)));
    report.support_spans_h_lambda = Some(rank_of(&restricted_roots(t, &pair.support), k) == k);
    let support_condition = pair.support.iter().all(|&alpha| t.root_on_h(alpha, &pair.h) == -Scalar::one());
    let complement = root_complement(t, &pair.h, &pair.eta, None);
    let structural = structural_checks(t, &pair.h, &pair.support, &complement.t);
    BiparabolicPairReport { pair: pair.clone(), report, support_condition, complement, structural }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `w(h₂) = h₁` for the returned Levi Weyl group element.
    Equivalent(WeylElement),
    NotEquivalent(String),
    Undecided(String),
}

/// Decides equivalence of two adapted pairs with `h ∈ 𝔥_Λ` by conjugacy of
/// the `h` under the Levi Weyl group `W_M`.
pub fn equivalence_check(
    t: &TruncatedBiparabolic,
    first: (&[Scalar], &DualVector),
    second: (&[Scalar], &DualVector),
    orbit_cap: usize,
) -> Result<Equivalence> {
    let a = &t.algebra;
    for (h, eta) in [first, second] {
        let hv = t.cartan_element(h);
        let img = a.coadjoint_action(&hv, eta);
        let eigen = img.coords.iter().zip(&eta.coords).all(|(x, y)| (x + y).is_zero());
        if !eigen || !a.is_regular(eta) {
            return Ok(Equivalence::Undecided("both second elements must be regular in the (-1)-eigenspace of their h".into()));
        }
    }
    let ev = |h: &[Scalar]| a.ad_matrix(&t.cartan_element(h)).rational_eigenvalues();
    let (e1, e2) = (ev(first.0), ev(second.0));
    match (&e1, &e2) {
        (Ok(x), Ok(y)) if x != y => {
            return Ok(Equivalence::NotEquivalent("ad h eigenvalue multisets differ".into()));
        }
        (Err(_), _) | (_, Err(_)) => {
            return Ok(Equivalence::Undecided("ad h is not split over the rationals".into()));
        }
        _ => {}
    }
    let rs = &t.spec.rs;
    let h1 = t.to_coroot_coords(first.0);
    let h2 = t.to_coroot_coords(second.0);
    let orbit = weyl_orbit(rs, &t.spec.levi(), &h2, orbit_cap)?;
    match orbit.get(&h1) {
        Some(word) => Ok(Equivalence::Equivalent(WeylElement::from_word(rs, word))),
        None => Ok(Equivalence::NotEquivalent("h₁ is not in the W_M-orbit of h₂".into())),
    }
}

/// Applies the simple reflection `s_i` of the Levi factor to a pair:
/// `h ↦ s_i(h)`, `S ↦ s_i(S)`, coefficients kept.
pub fn reflect_pair(t: &TruncatedBiparabolic, pair: &BiparabolicPair, i: usize) -> Result<BiparabolicPair> {
    if !t.spec.levi().contains(&i) {
        return Err(Error::Precondition(format!("s_{} is not a Levi reflection", i + 1)));
    }
    let rs = &t.spec.rs;
    let h = t
        .from_coroot_coords(&rs.reflect_coweight(i, &t.to_coroot_coords(&pair.h)))
        .ok_or_else(|| Error::Precondition("reflected h leaves 𝔥_Λ".into()))?;
    let support = pair
        .support
        .iter()
        .map(|&alpha| {
            rs.index_of(&rs.reflect(i, &rs.roots()[alpha]))
                .filter(|r| t.spec.r.contains(r))
                .ok_or_else(|| Error::Precondition("reflected support leaves R".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let eta = eta_from_support(t, &support, &pair.coefficients)?;
    Ok(BiparabolicPair { h, support, coefficients: pair.coefficients.clone(), eta })
}

/// Support and coefficients of η when η lies in the span of `x_α`, `α ∈ R`.
pub fn support_of(t: &TruncatedBiparabolic, eta: &DualVector) -> Option<(Vec<usize>, Vec<Scalar>)> {
    let mut s = Vec::new();
    let mut c = Vec::new();
    for (k, x) in eta.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        s.push(t.root_of_dual(k)?);
        c.push(x.clone());
    }
    Some((s, c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// One representative per equivalence class, in support order.
    pub pairs: Vec<BiparabolicPairReport>,
    /// Supports examined.
    pub examined: usize,
    /// Supports passing the rank filter and the `h` solve.
    pub feasible: usize,
    /// Budget exhausted before the enumeration finished.
    pub partial: bool,
    /// Explanation attached to an empty result.
    pub certificate: Option<String>,
    pub seed: u64,
}

/// Default number of random coefficient vectors tried per support.
pub const RANDOM_RETRIES: usize = 8;
pub const DEFAULT_ORBIT_CAP: usize = 100_000;

fn k_subsets(n: usize, k: usize, limit: usize) -> (Vec<Vec<usize>>, bool) {
    let mut out = Vec::new();
    if k > n {
        return (out, false);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if out.len() == limit {
            return (out, true);
        }
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return (out, false);
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return (out, false);
            }
        }
        if idx[i] == i + n - k {
            return (out, false);
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Searches minimal presentations: supports `S ⊂ R` with `|S| = dim 𝔥_Λ`
/// whose restriction to `𝔥_Λ` is a basis. For each, `h` is solved, and
/// `η = Σ x_α` is tried with unit coefficients, then with up to
/// [`RANDOM_RETRIES`] seeded random coefficient vectors. At most `budget`
/// supports are examined.
pub fn search_adapted_pairs(
    t: &TruncatedBiparabolic,
    budget: usize,
    seed: u64,
    invariants: Option<&GradedSolveReport>,
) -> Result<SearchReport> {
    let a = &t.algebra;
    let k = t.h_lambda_dim();
    let order = canonical_root_order(t);
    if k == 0 {
        let eta = DualVector::zero(a.dim());
        let regular = a.is_regular(&eta);
        let mut pairs = Vec::new();
        let mut certificate = None;
        if regular {
            let pair = BiparabolicPair { h: Vec::new(), support: Vec::new(), coefficients: Vec::new(), eta };
            pairs.push(verify_biparabolic_pair(t, &pair, invariants));
        } else {
            certificate = Some("𝔥_Λ = 0 forces S = ∅ and η = 0, and η = 0 is not regular since q_Λ is not abelian".into());
        }
        return Ok(SearchReport { pairs, examined: 1, feasible: 1, partial: false, certificate, seed });
    }
    let (subsets, partial) = k_subsets(order.len(), k, budget);
    let candidates: Vec<Option<BiparabolicPair>> = subsets
        .par_iter()
        .enumerate()
        .map(|(pos, idx)| {
            let support: Vec<usize> = idx.iter().map(|&i| order[i]).collect();
            let h = match solve_h_from_support(t, &support) {
                HSolution::Unique(h) => h,
                _ => return None,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (pos as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for attempt in 0..=RANDOM_RETRIES {
                let coeffs: Vec<Scalar> = if attempt == 0 {
                    vec![Scalar::one(); k]
                } else {
                    (0..k)
                        .map(|_| {
                            let v: i64 = rng.gen_range(1..=20);
                            let s = if rng.gen_bool(0.5) { -v } else { v };
                            Scalar::from_integer(s.into())
                        })
                        .collect()
                };
                let eta = eta_from_support(t, &support, &coeffs).ok()?;
                if a.is_regular(&eta) {
                    return Some(BiparabolicPair { h: h.clone(), support: support.clone(), coefficients: coeffs, eta });
                }
            }
            None
        })
        .collect();
    let feasible = subsets
        .iter()
        .filter(|idx| {
            let support: Vec<usize> = idx.iter().map(|&i| order[i]).collect();
            matches!(solve_h_from_support(t, &support), HSolution::Unique(_))
        })
        .count();
    let mut reps: Vec<BiparabolicPairReport> = Vec::new();
    for pair in candidates.into_iter().flatten() {
        let mut duplicate = false;
        for r in &reps {
            if let Equivalence::Equivalent(_) =
                equivalence_check(t, (&r.pair.h, &r.pair.eta), (&pair.h, &pair.eta), DEFAULT_ORBIT_CAP)?
            {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            reps.push(verify_biparabolic_pair(t, &pair, invariants));
        }
    }
    let certificate = reps.is_empty().then(|| format!("no regular η among {} minimal supports", feasible));
    Ok(SearchReport { pairs: reps, examined: subsets.len(), feasible, partial, certificate, seed })
}

/// Non-integral eigenvalues of `ad h` over sampled parameter values of a
/// family: returns the first `(parameter, eigenvalue)` with a non-integer
/// eigenvalue.
pub fn family_integrality<F>(params: &[Scalar], mut instance: F) -> Option<(Scalar, Scalar)>
where
    F: FnMut(&Scalar) -> Option<(LieAlgebra, Vec<Scalar>)>,
{
    for c in params {
        let Some((a, h)) = instance(c) else { continue };
        if let Ok(ev) = a.ad_matrix(&h).rational_eigenvalues() {
            if let Some(w) = ev.iter().find(|x| !x.is_integer()) {
                return Some((c.clone(), w.clone()));
            }
        }
    }
    None
}
