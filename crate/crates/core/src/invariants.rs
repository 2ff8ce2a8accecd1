//! Degree-bounded invariants and semi-invariants of the symmetric algebra.
//!
//! Polynomials live in `S(𝔞)`, with variable `k` the basis vector `x_k` viewed
//! as a function on 𝔞*. A basis vector acts by the derivation extending
//! `ad`. Every character vanishes on `[𝔞, 𝔞]`, so semi-invariants of degree
//! `d` are found inside the common kernel of the derived algebra and then
//! split into joint rational eigenspaces of a complement of `[𝔞, 𝔞]`. When
//! toral elements are declared the computation runs weight space by weight
//! space.
//!
//! Results are complete for each degree up to the bound and say nothing about
//! higher degrees.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{DualVector, LieAlgebra};
use crate::linalg::{greedy_extension, Matrix, Monomial, MultiPoly, Scalar};

pub const MAX_DIM: usize = 12;
pub const MAX_DEGREE: u32 = 6;

/// A homogeneous semi-invariant together with its character.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    pub poly: MultiPoly,
    pub degree: u32,
    /// Value of the character on every basis vector.
    pub character: Vec<Scalar>,
}

impl InvariantPoly {
    pub fn is_invariant(&self) -> bool {
        self.character.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, xi: &DualVector) -> Scalar {
        self.poly.eval(&xi.coords)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpace {
    pub character: Vec<Scalar>,
    /// Character restricted to the declared toral elements, if any.
    pub weight: Option<Vec<Scalar>>,
    pub basis: Vec<MultiPoly>,
}

impl WeightSpace {
    pub fn is_invariant(&self) -> bool {
        self.character.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSolve {
    pub degree: u32,
    pub invariant_dim: usize,
    /// Invariant space first (when nonzero), then proper weight spaces.
    pub spaces: Vec<WeightSpace>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedSolveReport {
    pub degree_bound: u32,
    pub degrees: Vec<DegreeSolve>,
}

impl GradedSolveReport {
    pub fn invariants_of_degree(&self, d: u32) -> Vec<MultiPoly> {
        self.degrees
            .iter()
            .filter(|s| s.degree == d)
            .flat_map(|s| s.spaces.iter().filter(|w| w.is_invariant()).flat_map(|w| w.basis.clone()))
            .collect()
    }

    /// All invariants of positive degree, by degree.
    pub fn invariants(&self) -> Vec<InvariantPoly> {
        self.semi_invariants().into_iter().filter(InvariantPoly::is_invariant).collect()
    }

    pub fn semi_invariants(&self) -> Vec<InvariantPoly> {
        let mut out = Vec::new();
        for s in &self.degrees {
            for w in &s.spaces {
                for p in &w.basis {
                    out.push(InvariantPoly { poly: p.clone(), degree: s.degree, character: w.character.clone() });
                }
            }
        }
        out
    }

    /// Distinct nonzero characters seen up to degree `d`.
    pub fn proper_characters_up_to(&self, d: u32) -> Vec<Vec<Scalar>> {
        let mut out: Vec<Vec<Scalar>> = Vec::new();
        for s in self.degrees.iter().filter(|s| s.degree <= d) {
            for w in s.spaces.iter().filter(|w| !w.is_invariant()) {
                if !out.contains(&w.character) {
                    out.push(w.character.clone());
                }
            }
        }
        out
    }

    pub fn notes(&self) -> Vec<String> {
        self.degrees.iter().flat_map(|d| d.notes.clone()).collect()
    }
}

/// Monomials of degree `d` in `n` variables, in graded-lex order.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Derivation action of the basis vector `x_i` on a polynomial.
pub fn act(a: &LieAlgebra, i: usize, p: &MultiPoly) -> MultiPoly {
    let n = a.dim();
    let mut out = MultiPoly::zero(n);
    for j in 0..n {
        let br = a.bracket_basis(i, j);
        if br.is_empty() || !p.uses_var(j) {
            continue;
        }
        let mut lin = MultiPoly::zero(n);
        for (k, c) in br {
            lin = &lin + &MultiPoly::var(n, *k).scale(c);
        }
        out = &out + &(&p.derivative(j) * &lin);
    }
    out
}

/// Action of an algebra element (basis coordinates) on a polynomial.
pub fn act_element(a: &LieAlgebra, x: &[Scalar], p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(a.dim());
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &act(a, i, p).scale(c);
        }
    }
    out
}

/// Re-verifies `x_i · p = χ(x_i) p` for every basis vector.
pub fn verify_semi_invariant(a: &LieAlgebra, p: &MultiPoly, character: &[Scalar]) -> bool {
    (0..a.dim()).all(|i| act(a, i, p) == p.scale(&character[i]))
}

struct DegreeContext<'a> {
    a: &'a LieAlgebra,
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl DegreeContext<'_> {
    /// Image of monomial `m` under `Σ y_i x_i`, as a sparse column.
    fn apply(&self, y: &[Scalar], m: usize) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        let e = &self.monos[m];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                for (k, c) in self.a.bracket_basis(i, j) {
                    let mut f = e.clone();
                    f[j] -= 1;
                    f[*k] += 1;
                    let idx = self.index[&f];
                    *out.entry(idx).or_insert_with(Scalar::zero) += yi * c * Scalar::from_integer(ej.into());
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Stacked matrix of the given operators restricted to the block.
    fn stacked(&self, ops: &[Vec<Scalar>], block: &[usize]) -> Matrix {
        let mut rows: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (oi, y) in ops.iter().enumerate() {
            for (col, &m) in block.iter().enumerate() {
                for (r, v) in self.apply(y, m) {
                    rows.entry((oi, r)).or_insert_with(|| vec![Scalar::zero(); block.len()])[col] += v;
                }
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(0, block.len());
        }
        Matrix::from_rows_with_cols(rows.into_values().collect(), block.len())
    }

    fn to_poly(&self, block: &[usize], v: &[Scalar]) -> MultiPoly {
        let n = self.a.dim();
        let mut p = MultiPoly::zero(n);
        for (c, &m) in v.iter().zip(block) {
            p.add_term(Monomial(self.monos[m].clone()), c.clone());
        }
        p
    }
}

fn weight_is_zero(w: Option<&Vec<Scalar>>) -> bool {
    w.is_none_or(|w| w.iter().all(Zero::is_zero))
}

/// Joint rational eigenspaces of commuting operators on the span of `basis`
/// (columns in block coordinates). Returns `(eigenvalues, subspace)` pairs.
fn joint_eigenspaces(
    ctx: &DegreeContext<'_>,
    block: &[usize],
    basis: Vec<Vec<Scalar>>,
    ops: &[Vec<Scalar>],
    notes: &mut Vec<String>,
) -> Vec<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    if basis.is_empty() {
        return Vec::new();
    }
    let Some((first, rest)) = ops.split_first() else {
        return vec![(Vec::new(), basis)];
    };
    // matrix of `first` on span(basis)
    let k = basis.len();
    let basis_mat = Matrix::from_columns(&basis, block.len());
    let local: HashMap<usize, usize> = block.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut cols = Vec::with_capacity(k);
    for b in &basis {
        let mut img = vec![Scalar::zero(); block.len()];
        for (col, c) in b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, v) in ctx.apply(first, block[col]) {
                let li = local[&r];
                img[li] += c * v;
            }
        }
        let coords = basis_mat.solve(&img).expect("subspace is stable under commuting operators");
        cols.push(coords);
    }
    let m = Matrix::from_columns(&cols, k);
    let eigen = match m.rational_eigenvalues() {
        Ok(v) => v,
        Err(f) => {
            notes.push(format!("characteristic polynomial does not split over the rationals: {f}"));
            f.roots.clone()
        }
    };
    let mut distinct = eigen;
    distinct.dedup();
    let mut out = Vec::new();
    for mu in distinct {
        let shifted = m.sub(&Matrix::identity(k).scale(&mu));
        let ker = shifted.kernel();
        let sub: Vec<Vec<Scalar>> = ker.iter().map(|c| basis_mat.mul_vec(c)).collect();
        for (mut vals, space) in joint_eigenspaces(ctx, block, sub, rest, notes) {
            vals.insert(0, mu.clone());
            out.push((vals, space));
        }
    }
    out
}

/// All semi-invariants of degrees `1..=bound`.
pub fn semi_invariants(a: &LieAlgebra, bound: u32) -> Result<GradedSolveReport> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::Resource { what: "algebra dimension for invariant solve".into(), limit: MAX_DIM, requested: n });
    }
    if bound > MAX_DEGREE {
        return Err(Error::Resource {
            what: "degree bound for invariant solve".into(),
            limit: MAX_DEGREE as usize,
            requested: bound as usize,
        });
    }
    let unit = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    // derived algebra spanned by brackets of basis vectors (weight vectors)
    let brackets: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| a.bracket(&unit(i), &unit(j)))
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let derived: Vec<Vec<Scalar>> = greedy_extension(&[], &brackets, n).into_iter().map(|i| brackets[i].clone()).collect();
    // complement: toral elements first, then the rest of the basis
    let mut order: Vec<usize> = a.cartan().to_vec();
    order.extend((0..n).filter(|i| !a.cartan().contains(i)));
    let cands: Vec<Vec<Scalar>> = order.iter().map(|&i| unit(i)).collect();
    let complement: Vec<usize> = greedy_extension(&derived, &cands, n).into_iter().map(|k| order[k]).collect();
    // coordinates of each basis vector in the basis derived ∪ complement
    let mut rows = derived.clone();
    rows.extend(complement.iter().map(|&i| unit(i)));
    let change = Matrix::from_columns(&rows, n);
    let coords: Vec<Vec<Scalar>> = (0..n).map(|i| change.solve(&unit(i)).expect("basis")).collect();
    let weights = a.weights();
    let weight_of = |i: usize| weights.map(|w| &w[i]);
    let nonzero_weight: Vec<usize> = complement.iter().copied().filter(|&c| !weight_is_zero(weight_of(c))).collect();
    let zero_weight: Vec<usize> = complement.iter().copied().filter(|&c| weight_is_zero(weight_of(c))).collect();
    let mut killers = derived.clone();
    killers.extend(nonzero_weight.iter().map(|&i| unit(i)));
    let eigen_ops: Vec<Vec<Scalar>> = zero_weight.iter().map(|&i| unit(i)).collect();

    let degrees: Vec<DegreeSolve> = (1..=bound)
        .into_par_iter()
        .map(|d| {
            let monos = monomials(n, d);
            let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let ctx = DegreeContext { a, monos, index };
            // split monomials by weight
            let mut blocks: BTreeMap<Vec<Scalar>, Vec<usize>> = BTreeMap::new();
            for (m, e) in ctx.monos.iter().enumerate() {
                let key = match weights {
                    None => Vec::new(),
                    Some(w) => {
                        let mut acc = vec![Scalar::zero(); a.cartan().len()];
                        for (k, &ek) in e.iter().enumerate() {
                            for (x, y) in acc.iter_mut().zip(&w[k]) {
                                *x += y * Scalar::from_integer(ek.into());
                            }
                        }
                        acc
                    }
                };
                blocks.entry(key).or_default().push(m);
            }
            let mut notes = Vec::new();
            let mut spaces: Vec<WeightSpace> = Vec::new();
            for (weight, block) in &blocks {
                let kernel = ctx.stacked(&killers, block).kernel();
                for (vals, space) in joint_eigenspaces(&ctx, block, kernel, &eigen_ops, &mut notes) {
                    let mut at_complement: HashMap<usize, Scalar> = HashMap::new();
                    for (&c, v) in zero_weight.iter().zip(&vals) {
                        at_complement.insert(c, v.clone());
                    }
                    let dlen = derived.len();
                    let character: Vec<Scalar> = (0..n)
                        .map(|i| {
                            let mut acc = Scalar::zero();
                            for (pos, &c) in complement.iter().enumerate() {
                                if let Some(v) = at_complement.get(&c) {
                                    acc += &coords[i][dlen + pos] * v;
                                }
                            }
                            acc
                        })
                        .collect();
                    let basis: Vec<MultiPoly> = space.iter().map(|v| ctx.to_poly(block, v)).collect();
                    spaces.push(WeightSpace { character, weight: weights.map(|_| weight.clone()), basis });
                }
            }
            spaces.sort_by(|x, y| y.is_invariant().cmp(&x.is_invariant()).then_with(|| x.character.cmp(&y.character)));
            let invariant_dim = spaces.iter().filter(|s| s.is_invariant()).map(|s| s.basis.len()).sum();
            DegreeSolve { degree: d, invariant_dim, spaces, notes }
        })
        .collect();
    Ok(GradedSolveReport { degree_bound: bound, degrees })
}

/// Degrees of a minimal homogeneous generating set of the invariants found
/// up to the bound: at each degree, the invariants not in the span of
/// products of lower-degree invariants.
pub fn generator_degrees(report: &GradedSolveReport, nvars: usize) -> Vec<u32> {
    let mut by_degree: BTreeMap<u32, Vec<MultiPoly>> = BTreeMap::new();
    for d in 1..=report.degree_bound {
        by_degree.insert(d, report.invariants_of_degree(d));
    }
    let mut out = Vec::new();
    for d in 1..=report.degree_bound {
        let all = &by_degree[&d];
        if all.is_empty() {
            continue;
        }
        // products of invariants of degrees e and d - e
        let mut products: Vec<MultiPoly> = Vec::new();
        for e in 1..d {
            if e > d - e {
                break;
            }
            for p in &by_degree[&e] {
                for q in &by_degree[&(d - e)] {
                    products.push(p * q);
                }
            }
        }
        let span_dim = |ps: &[MultiPoly]| -> usize {
            let monos = monomials(nvars, d);
            let rows: Vec<Vec<Scalar>> =
                ps.iter().map(|p| monos.iter().map(|m| p.coefficient(&Monomial(m.clone()))).collect()).collect();
            crate::linalg::rank_of(&rows, monos.len())
        };
        let lower = span_dim(&products);
        let total = span_dim(all);
        for _ in lower..total {
            out.push(d);
        }
    }
    out
}

/// Polynomial ξ ↦ p(ξ) restricted to `η + Σ t_i v_i` (or `s η + Σ t_i v_i`
/// with `s` the first variable when `cone` is set).
pub fn restrict_to_section(p: &MultiPoly, eta: &DualVector, v_basis: &[DualVector], cone: bool) -> MultiPoly {
    let n = eta.dim();
    let offset = usize::from(cone);
    let nv = v_basis.len() + offset;
    let images: Vec<MultiPoly> = (0..n)
        .map(|k| {
            let mut coeffs = vec![Scalar::zero(); nv];
            let mut c0 = Scalar::zero();
            if cone {
                coeffs[0] = eta.coords[k].clone();
            } else {
                c0 = eta.coords[k].clone();
            }
            for (i, v) in v_basis.iter().enumerate() {
                coeffs[i + offset] = v.coords[k].clone();
            }
            MultiPoly::linear(&coeffs, c0)
        })
        .collect();
    if n == 0 {
        return MultiPoly::constant(nv, p.constant_term());
    }
    p.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn filiform() -> LieAlgebra {
        let names = (1..=5).map(|i| format!("x{i}")).collect();
        let b = [(1usize, 2usize), (2, 3), (3, 4)].map(|(j, k)| ((0, j), vec![(k, int(1))]));
        LieAlgebra::from_brackets("f", names, b).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(5, 3).len(), 35);
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn filiform_invariant_dimensions() {
        let a = filiform();
        let r = semi_invariants(&a, 3).unwrap();
        let dims: Vec<usize> = r.degrees.iter().map(|d| d.invariant_dim).collect();
        // x5; x5^2, x4^2 - 2x3x5; x5^3, x5(x4^2 - 2x3x5), cubic
        assert_eq!(dims, vec![1, 2, 3]);
        for p in r.invariants() {
            assert!(verify_semi_invariant(&a, &p.poly, &p.character));
        }
        assert_eq!(generator_degrees(&r, 5), vec![1, 2, 3]);
    }

    #[test]
    fn abelian_everything_invariant() {
        let a = LieAlgebra::abelian(2);
        let r = semi_invariants(&a, 2).unwrap();
        assert_eq!(r.degrees[0].invariant_dim, 2);
        assert_eq!(r.degrees[1].invariant_dim, 3);
    }

    #[test]
    fn guards() {
        assert!(matches!(semi_invariants(&LieAlgebra::abelian(13), 1), Err(Error::Resource { .. })));
        assert!(matches!(semi_invariants(&LieAlgebra::abelian(2), 7), Err(Error::Resource { .. })));
    }

    #[test]
    fn restriction() {
        // x4^2 - 2 x3 x5 on span{y2, y3, y5}
        let n = 5;
        let x = |i| MultiPoly::var(n, i);
        let p = &(&x(3) * &x(3)) - &(&x(2) * &x(4)).scale(&int(2));
        let v: Vec<DualVector> = [1, 2, 4].iter().map(|&i| DualVector::basis(n, i)).collect();
        let r = restrict_to_section(&p, &DualVector::zero(n), &v, false);
        let t = |i| MultiPoly::var(3, i);
        assert_eq!(r, (&t(1) * &t(2)).scale(&int(-2)));
    }
}
