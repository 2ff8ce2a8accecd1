//! Diagnostics for linear subvarieties `η + V` of 𝔞*: transversality,
//! density, rank stratification, codimension of the non-regular locus and
//! degree-bounded restriction checks against computed invariants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{restrict_to_section, GradedSolveReport};
use crate::lie::{DualVector, LieAlgebra};
use crate::linalg::{
    intersect_spans, multi_gcd, rank_of, symbolic_determinant, symbolic_rank, Matrix, Monomial, MultiPoly, PolyMatrix, Scalar,
};

/// Variable cap for exact codimension computations.
pub const EXACT_MAX_VARS: usize = 4;
/// Cap on the number of minors examined per matrix.
pub const MAX_MINORS: usize = 20_000;
/// Grids larger than this fall back to points with at most two nonzero coordinates.
const MAX_GRID: usize = 3125;

/// The linear subvariety `η + span(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpec {
    pub eta: DualVector,
    pub v_basis: Vec<DualVector>,
    /// Optional `h` whose coadjoint action has each `V` basis vector as an eigenvector.
    pub h: Option<Vec<Scalar>>,
}

impl SectionSpec {
    pub fn new(a: &LieAlgebra, eta: DualVector, v_basis: Vec<DualVector>, h: Option<Vec<Scalar>>) -> Result<Self> {
        let n = a.dim();
        if eta.dim() != n || v_basis.iter().any(|v| v.dim() != n) {
            return Err(Error::Dimension(format!("section vectors must have length {n}")));
        }
        let rows: Vec<Vec<Scalar>> = v_basis.iter().map(|v| v.coords.clone()).collect();
        if rank_of(&rows, n) != rows.len() {
            return Err(Error::Precondition("V basis is not linearly independent".into()));
        }
        if let Some(h) = &h {
            if h.len() != n {
                return Err(Error::Dimension(format!("h must have length {n}")));
            }
            for v in &v_basis {
                let hv = a.coadjoint_action(h, v);
                if rank_of(&[v.coords.clone(), hv.coords.clone()], n) > 1 {
                    return Err(Error::Precondition("V basis vector is not an h-eigenvector".into()));
                }
            }
        }
        Ok(SectionSpec { eta, v_basis, h })
    }

    pub fn dim(&self) -> usize {
        self.v_basis.len()
    }

    pub fn point(&self, t: &[Scalar]) -> DualVector {
        let mut c = self.eta.coords.clone();
        for (ti, v) in t.iter().zip(&self.v_basis) {
            for (x, y) in c.iter_mut().zip(&v.coords) {
                *x += ti * y;
            }
        }
        DualVector::new(c)
    }

    /// `ξ(t) = η + Σ t_i v_i` with polynomial coordinates in `t`.
    pub fn polynomial_point(&self) -> Vec<MultiPoly> {
        let k = self.dim();
        (0..self.eta.dim())
            .map(|j| {
                let coeffs: Vec<Scalar> = self.v_basis.iter().map(|v| v.coords[j].clone()).collect();
                MultiPoly::linear(&coeffs, self.eta.coords[j].clone())
            })
            .map(|p| if k == 0 { MultiPoly::constant(0, p.constant_term()) } else { p })
            .collect()
    }

    /// Names for the coordinates `t_i`: the algebra element `x_k` when
    /// `v_i = x_k*`, otherwise `t{i+1}`.
    pub fn coordinate_names(&self, a: &LieAlgebra) -> Vec<String> {
        self.v_basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let nz: Vec<usize> = (0..v.dim()).filter(|&k| !v.coords[k].is_zero()).collect();
                if nz.len() == 1 && v.coords[nz[0]].is_one() {
                    a.names()[nz[0]].clone()
                } else {
                    format!("t{}", i + 1)
                }
            })
            .collect()
    }

    fn v_rows(&self) -> Vec<Vec<Scalar>> {
        self.v_basis.iter().map(|v| v.coords.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    /// Number of random points added to the grid.
    pub random: usize,
    /// Grid `{-radius..radius}^dim V`.
    pub radius: i64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 0, random: 50, radius: 2 }
    }
}

impl SampleSpec {
    /// Deterministic grid followed by seeded random rational points.
    pub fn points(&self, k: usize) -> Vec<Vec<Scalar>> {
        let side = (2 * self.radius + 1) as usize;
        let full = side.checked_pow(k as u32).filter(|&s| s <= MAX_GRID);
        let mut out: Vec<Vec<Scalar>> = Vec::new();
        let mut cur = vec![-self.radius; k];
        loop {
            let keep = full.is_some() || cur.iter().filter(|&&x| x != 0).count() <= 2;
            if keep {
                out.push(cur.iter().map(|&x| Scalar::from_integer(x.into())).collect());
            }
            let mut i = 0;
            while i < k && cur[i] == self.radius {
                cur[i] = -self.radius;
                i += 1;
            }
            if i == k {
                break;
            }
            cur[i] += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random {
            out.push(
                (0..k)
                    .map(|_| {
                        let num: i64 = rng.gen_range(-10..=10);
                        let den: i64 = rng.gen_range(1..=4);
                        Scalar::new(num.into(), den.into())
                    })
                    .collect(),
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalitySample {
    pub t: Vec<Scalar>,
    pub point: DualVector,
    pub transversal: bool,
    /// A nonzero vector of `𝔞.ξ ∩ V` when transversality fails.
    pub witness: Option<DualVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    pub samples: Vec<TransversalitySample>,
    pub seed: u64,
}

impl TransversalityReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.transversal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TransversalitySample> {
        self.samples.iter().filter(|s| !s.transversal)
    }
}

/// `𝔞.ξ ∩ V` at a single point.
pub fn orbit_tangent_meet(a: &LieAlgebra, section: &SectionSpec, xi: &DualVector) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let tangent = a.coadjoint_form(xi).matrix.row_space();
    intersect_spans(&tangent, &section.v_rows(), n)
}

fn transversality_at(a: &LieAlgebra, section: &SectionSpec, t: &[Scalar]) -> TransversalitySample {
    let point = section.point(t);
    let meet = orbit_tangent_meet(a, section, &point);
    let witness = meet.first().map(|w| {
        DualVector::new(crate::linalg::scalar::primitive_integer_vector(w).into_iter().map(Scalar::from_integer).collect())
    });
    TransversalitySample { t: t.to_vec(), transversal: witness.is_none(), witness, point }
}

pub fn transversality_check(a: &LieAlgebra, section: &SectionSpec, spec: &SampleSpec) -> TransversalityReport {
    let pts = spec.points(section.dim());
    let samples = pts.par_iter().map(|t| transversality_at(a, section, t)).collect();
    TransversalityReport { samples, seed: spec.seed }
}

/// Transversality at explicitly given section coordinates.
pub fn transversality_at_points(a: &LieAlgebra, section: &SectionSpec, points: &[Vec<Scalar>]) -> Vec<TransversalitySample> {
    points.iter().map(|t| transversality_at(a, section, t)).collect()
}

/// Independent re-check of a failure witness: nonzero, in `V`, in `𝔞.ξ`.
pub fn verify_transversality_witness(a: &LieAlgebra, section: &SectionSpec, xi: &DualVector, w: &DualVector) -> bool {
    let n = a.dim();
    if w.is_zero() {
        return false;
    }
    let mut v = section.v_rows();
    let dv = rank_of(&v, n);
    v.push(w.coords.clone());
    if rank_of(&v, n) != dv {
        return false;
    }
    let mut rows = a.coadjoint_form(xi).matrix.row_vecs();
    let rb = rank_of(&rows, n);
    rows.push(w.coords.clone());
    rank_of(&rows, n) == rb
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityVerdict {
    /// `𝔞.s + V = 𝔞*` at the witness point.
    Dense { t: Vec<Scalar>, point: DualVector },
    /// No sample satisfied the tangent criterion.
    Inconclusive { samples: usize },
}

fn tangent_fills(a: &LieAlgebra, section: &SectionSpec, xi: &DualVector) -> bool {
    let n = a.dim();
    let mut rows = a.coadjoint_form(xi).matrix.row_vecs();
    rows.extend(section.v_rows());
    rank_of(&rows, n) == n
}

pub fn density_check(a: &LieAlgebra, section: &SectionSpec, spec: &SampleSpec) -> DensityVerdict {
    let pts = spec.points(section.dim());
    let hit = pts.par_iter().position_first(|t| tangent_fills(a, section, &section.point(t)));
    match hit {
        Some(i) => DensityVerdict::Dense { t: pts[i].clone(), point: section.point(&pts[i]) },
        None => DensityVerdict::Inconclusive { samples: pts.len() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub count: usize,
    /// First sample in the stratum.
    pub example: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    /// `dim 𝔞.t ↦ stratum data`.
    pub strata: BTreeMap<usize, Stratum>,
    pub top: usize,
    /// Random perturbations of the top-stratum example staying in the top stratum.
    pub perturbations_stayed: usize,
    pub perturbations_tried: usize,
    pub seed: u64,
}

pub fn stratify(a: &LieAlgebra, section: &SectionSpec, spec: &SampleSpec) -> Stratification {
    let pts = spec.points(section.dim());
    let ranks: Vec<usize> = pts.par_iter().map(|t| a.coadjoint_form(&section.point(t)).rank()).collect();
    let mut strata: BTreeMap<usize, Stratum> = BTreeMap::new();
    for (t, d) in pts.iter().zip(&ranks) {
        strata.entry(*d).and_modify(|s| s.count += 1).or_insert_with(|| Stratum { count: 1, example: t.clone() });
    }
    let top = strata.keys().next_back().copied().unwrap_or(0);
    let mut stayed = 0;
    let tried = if section.dim() == 0 { 0 } else { 10 };
    if let Some(s) = strata.get(&top) {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x57a7);
        for _ in 0..tried {
            let t: Vec<Scalar> = s.example.iter().map(|x| x + Scalar::new(rng.gen_range(-3i64..=3).into(), 100.into())).collect();
            if a.coadjoint_form(&section.point(&t)).rank() == top {
                stayed += 1;
            }
        }
    }
    Stratification { strata, top, perturbations_stayed: stayed, perturbations_tried: tried, seed: spec.seed }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodimMode {
    Exact,
    Sampled { lines: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusVerdict {
    /// The locus is empty or has codimension at least 2.
    CodimAtLeastTwo { minors_examined: usize },
    /// The locus contains the hypersurface `certificate = 0`.
    CodimOne { certificate: MultiPoly },
    /// The condition fails at every point of the section.
    Everywhere,
    /// Sampled estimate: random lines meeting the locus.
    Sampled { lines: usize, lines_meeting: usize, likely_codim_one: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularLocusReport {
    /// Points where `rank B_ξ` drops below the generic rank of 𝔞.
    pub non_regular: LocusVerdict,
    /// Points where `𝔞.ξ + V ≠ 𝔞*`.
    pub non_slice: LocusVerdict,
    /// Names of the section coordinates.
    pub variables: Vec<String>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `r × r` minors of `m`.
pub fn maximal_minors(m: &PolyMatrix, r: usize, nvars: usize) -> Result<Vec<MultiPoly>> {
    let rows: Vec<usize> = (0..m.len()).filter(|&i| m[i].iter().any(|p| !p.is_zero())).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let cols: Vec<usize> = (0..ncols).filter(|&j| m.iter().any(|row| !row[j].is_zero())).collect();
    let rs = subsets(rows.len(), r);
    let cs = subsets(cols.len(), r);
    let count = rs.len().saturating_mul(cs.len());
    if count > MAX_MINORS {
        return Err(Error::Resource { what: "maximal minors".into(), limit: MAX_MINORS, requested: count });
    }
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rs.iter().flat_map(|a| cs.iter().map(move |b| (a, b))).collect();
    let minors: Vec<MultiPoly> = pairs
        .par_iter()
        .map(|(ri, ci)| {
            let sub: PolyMatrix = ri.iter().map(|&i| ci.iter().map(|&j| m[rows[i]][cols[j]].clone()).collect()).collect();
            symbolic_determinant(&sub, nvars)
        })
        .collect();
    Ok(minors.into_iter().filter(|p| !p.is_zero()).collect())
}

/// Decides whether the common zero locus of the `target`-minors of `m` has
/// a codimension-one component, by the gcd of the minors.
fn minor_locus(m: &PolyMatrix, target: usize, nvars: usize) -> Result<LocusVerdict> {
    if symbolic_rank(m, nvars) < target {
        return Ok(LocusVerdict::Everywhere);
    }
    let minors = maximal_minors(m, target, nvars)?;
    let mut g = MultiPoly::zero(nvars);
    for p in &minors {
        g = multi_gcd(&g, p);
        if g.is_constant() {
            return Ok(LocusVerdict::CodimAtLeastTwo { minors_examined: minors.len() });
        }
    }
    if g.is_constant() || g.is_zero() {
        Ok(LocusVerdict::CodimAtLeastTwo { minors_examined: minors.len() })
    } else {
        Ok(LocusVerdict::CodimOne { certificate: g })
    }
}

fn stacked(a: &LieAlgebra, section: &SectionSpec, xi: &[MultiPoly], nvars: usize) -> PolyMatrix {
    let mut m = a.form_over(xi);
    for v in &section.v_basis {
        m.push(v.coords.iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect());
    }
    m
}

pub fn regular_locus_codim(a: &LieAlgebra, section: &SectionSpec, mode: &CodimMode) -> Result<RegularLocusReport> {
    let n = a.dim();
    let r = a.generic_rank();
    let variables = section.coordinate_names(a);
    match mode {
        CodimMode::Exact => {
            let k = section.dim();
            if k > EXACT_MAX_VARS {
                return Err(Error::Resource {
                    what: "exact codimension variables (use --mode sampled)".into(),
                    limit: EXACT_MAX_VARS,
                    requested: k,
                });
            }
            let xi = section.polynomial_point();
            let b = a.form_over(&xi);
            let non_regular = minor_locus(&b, r, k)?;
            let non_slice = minor_locus(&stacked(a, section, &xi, k), n, k)?;
            Ok(RegularLocusReport { non_regular, non_slice, variables })
        }
        CodimMode::Sampled { lines, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let k = section.dim();
            let mut hits = (0usize, 0usize);
            for _ in 0..*lines {
                let p: Vec<Scalar> = (0..k).map(|_| Scalar::from_integer(rng.gen_range(-20i64..=20).into())).collect();
                let q: Vec<Scalar> = (0..k).map(|_| Scalar::from_integer(rng.gen_range(-20i64..=20).into())).collect();
                let xi: Vec<MultiPoly> = section
                    .polynomial_point()
                    .iter()
                    .map(|f| {
                        let images: Vec<MultiPoly> = (0..k).map(|i| MultiPoly::linear(&[q[i].clone()], p[i].clone())).collect();
                        if k == 0 {
                            MultiPoly::constant(1, f.constant_term())
                        } else {
                            f.substitute(&images)
                        }
                    })
                    .collect();
                let meets = |v: LocusVerdict| !matches!(v, LocusVerdict::CodimAtLeastTwo { .. });
                if meets(minor_locus(&a.form_over(&xi), r, 1)?) {
                    hits.0 += 1;
                }
                if meets(minor_locus(&stacked(a, section, &xi, 1), n, 1)?) {
                    hits.1 += 1;
                }
            }
            let verdict = |h: usize| LocusVerdict::Sampled { lines: *lines, lines_meeting: h, likely_codim_one: h > 0 };
            Ok(RegularLocusReport { non_regular: verdict(hits.0), non_slice: verdict(hits.1), variables })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeierstrassVerdict {
    /// A nonzero invariant of degree `≤ D` restricting to zero.
    NotInjectiveUpTo { degree: u32, kernel: MultiPoly },
    /// Section coordinates provably outside the image (graded case only).
    NotSurjectiveUpTo { degree: u32, missing: Vec<String> },
    /// Injective up to `D` and every coordinate is a restriction.
    IsomorphismUpTo(u32),
    /// No obstruction found up to `D`.
    ConsistentUpTo(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub verdict: WeierstrassVerdict,
    pub degree: u32,
    /// Section coordinates realized as restrictions of invariants of degree `≤ D`.
    pub realized: Vec<String>,
    /// Restrictions of the invariant basis, by degree.
    pub restrictions: Vec<(u32, MultiPoly)>,
}

fn coefficient_rows(polys: &[MultiPoly]) -> (Vec<Vec<Scalar>>, usize) {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    (rows, monos.len())
}

pub fn weierstrass_check(
    a: &LieAlgebra,
    section: &SectionSpec,
    report: &GradedSolveReport,
    degree: u32,
) -> Result<WeierstrassReport> {
    if degree > report.degree_bound {
        return Err(Error::Precondition(format!("invariants computed to degree {} only", report.degree_bound)));
    }
    let n = a.dim();
    let k = section.dim();
    let names = section.coordinate_names(a);
    let mut sources: Vec<(u32, MultiPoly)> = vec![(0, MultiPoly::one(n))];
    for d in 1..=degree {
        for p in report.invariants_of_degree(d) {
            sources.push((d, p));
        }
    }
    let restrictions: Vec<(u32, MultiPoly)> =
        sources.iter().map(|(d, p)| (*d, restrict_to_section(p, &section.eta, &section.v_basis, false))).collect();
    let images: Vec<MultiPoly> = restrictions.iter().map(|(_, p)| p.clone()).collect();
    let (rows, width) = coefficient_rows(&images);
    let rank = rank_of(&rows, width);
    let mut verdict = None;
    if rank < rows.len() {
        let m = Matrix::from_rows_with_cols(rows.clone(), width);
        let rel = m.transpose().kernel().into_iter().next().expect("dependent rows");
        let mut kernel = MultiPoly::zero(n);
        for (c, (_, p)) in rel.iter().zip(&sources) {
            kernel = &kernel + &p.scale(c);
        }
        verdict = Some(WeierstrassVerdict::NotInjectiveUpTo { degree, kernel });
    }
    let mut realized = Vec::new();
    let mut missing = Vec::new();
    for i in 0..k {
        let coord = MultiPoly::var(k, i);
        let mut all = images.clone();
        all.push(coord);
        let (r2, w2) = coefficient_rows(&all);
        if rank_of(&r2, w2) == rank {
            realized.push(names[i].clone());
        } else {
            missing.push(names[i].clone());
        }
    }
    let verdict = verdict.unwrap_or_else(|| {
        if missing.is_empty() {
            WeierstrassVerdict::IsomorphismUpTo(degree)
        } else if section.eta.is_zero() && degree >= 1 {
            WeierstrassVerdict::NotSurjectiveUpTo { degree, missing }
        } else {
            WeierstrassVerdict::ConsistentUpTo(degree)
        }
    });
    Ok(WeierstrassReport { verdict, degree, realized, restrictions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemStatus {
    Pass,
    Fail(String),
    Inconclusive(String),
    Unverified,
    /// Not examined because an earlier item failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecklistItem {
    pub label: &'static str,
    pub status: ItemStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConverseChecklist {
    pub items: Vec<ChecklistItem>,
    pub short_circuited: bool,
}

impl ConverseChecklist {
    pub fn unverified(&self) -> Vec<&'static str> {
        self.items.iter().filter(|i| i.status == ItemStatus::Unverified).map(|i| i.label).collect()
    }
}

pub const CHECKLIST_LABELS: [&str; 5] = [
    "(i) A.(eta+V) dense in a*",
    "(ii) eta+V meets orbits at most once and transversally",
    "(iii) orbit-closure strata S_i smooth",
    "(iv) R[eta+V]/phi(Y) finitely generated over Y",
    "(v) semi-invariants on each S_i are restrictions",
];

/// Hypotheses of the converse from affine slice to Weierstrass section.
/// Items (i) and (ii) are computed on samples; the rest are never computed.
pub fn converse_checklist(a: &LieAlgebra, section: &SectionSpec, spec: &SampleSpec) -> ConverseChecklist {
    let density = density_check(a, section, spec);
    let first = match &density {
        DensityVerdict::Dense { .. } => ItemStatus::Pass,
        DensityVerdict::Inconclusive { samples } => ItemStatus::Inconclusive(format!("no dense witness among {samples} samples")),
    };
    let mut short = first != ItemStatus::Pass;
    let second = if short {
        ItemStatus::Skipped
    } else {
        let tr = transversality_check(a, section, spec);
        let failure = tr.failures().next().cloned();
        match failure {
            None => ItemStatus::Pass,
            Some(f) => {
                short = true;
                ItemStatus::Fail(format!(
                    "at {} the vector {} lies in a.xi and V",
                    f.point.display_with(a.dual_names()),
                    f.witness.as_ref().expect("witness").display_with(a.dual_names())
                ))
            }
        }
    };
    let mut items = vec![
        ChecklistItem { label: CHECKLIST_LABELS[0], status: first },
        ChecklistItem { label: CHECKLIST_LABELS[1], status: second },
    ];
    for label in &CHECKLIST_LABELS[2..] {
        items.push(ChecklistItem { label, status: if short { ItemStatus::Skipped } else { ItemStatus::Unverified } });
    }
    ConverseChecklist { items, short_circuited: short }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::semi_invariants;
    use crate::linalg::int;

    fn filiform() -> LieAlgebra {
        let names = (1..=5).map(|i| format!("x{i}")).collect();
        let b = [(1usize, 2usize), (2, 3), (3, 4)].map(|(j, k)| ((0, j), vec![(k, int(1))]));
        LieAlgebra::from_brackets("f", names, b).unwrap()
    }

    fn filiform_section(a: &LieAlgebra) -> SectionSpec {
        let v = [1, 2, 4].iter().map(|&i| DualVector::basis(5, i)).collect();
        SectionSpec::new(a, DualVector::zero(5), v, None).unwrap()
    }

    #[test]
    fn grid_size() {
        let s = SampleSpec::default();
        assert_eq!(s.points(3).len(), 125 + 50);
        assert_eq!(s.points(0).len(), 1 + 50);
    }

    #[test]
    fn filiform_transversality_fails_on_y3() {
        let a = filiform();
        let s = filiform_section(&a);
        let r = transversality_check(&a, &s, &SampleSpec::default());
        let f = r
            .failures()
            .find(|f| f.t[0].is_zero() && !f.t[1].is_zero() && f.t[2].is_zero())
            .expect("failure at a multiple of y3");
        let w = f.witness.as_ref().unwrap();
        assert!(verify_transversality_witness(&a, &s, &f.point, w));
        assert_eq!(rank_of(&[w.coords.clone(), DualVector::basis(5, 1).coords], 5), 1);
    }

    #[test]
    fn filiform_codimension() {
        let a = filiform();
        let s = filiform_section(&a);
        let r = regular_locus_codim(&a, &s, &CodimMode::Exact).unwrap();
        assert!(matches!(r.non_regular, LocusVerdict::CodimAtLeastTwo { .. }));
        match r.non_slice {
            LocusVerdict::CodimOne { certificate } => assert_eq!(certificate, MultiPoly::var(3, 2)),
            other => panic!("{other:?}"),
        }
        assert_eq!(r.variables, vec!["x2", "x3", "x5"]);
    }

    #[test]
    fn filiform_not_surjective() {
        let a = filiform();
        let s = filiform_section(&a);
        let inv = semi_invariants(&a, 3).unwrap();
        let w = weierstrass_check(&a, &s, &inv, 3).unwrap();
        assert_eq!(w.verdict, WeierstrassVerdict::NotSurjectiveUpTo { degree: 3, missing: vec!["x2".into(), "x3".into()] });
        assert_eq!(w.realized, vec!["x5"]);
    }

    #[test]
    fn filiform_checklist_short_circuits() {
        let a = filiform();
        let c = converse_checklist(&a, &filiform_section(&a), &SampleSpec::default());
        assert_eq!(c.items[0].status, ItemStatus::Pass);
        assert!(matches!(c.items[1].status, ItemStatus::Fail(_)));
        assert!(c.short_circuited);
    }

    #[test]
    fn filiform_strata() {
        let a = filiform();
        let all = (0..5).map(|i| DualVector::basis(5, i)).collect();
        let s = SectionSpec::new(&a, DualVector::zero(5), all, None).unwrap();
        let st = stratify(&a, &s, &SampleSpec::default());
        assert_eq!(st.strata.keys().copied().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn abelian_section_is_isomorphism() {
        let a = LieAlgebra::abelian(1);
        let s = SectionSpec::new(&a, DualVector::zero(1), vec![DualVector::basis(1, 0)], None).unwrap();
        let inv = semi_invariants(&a, 3).unwrap();
        assert_eq!(weierstrass_check(&a, &s, &inv, 3).unwrap().verdict, WeierstrassVerdict::IsomorphismUpTo(3));
        let c = converse_checklist(&a, &s, &SampleSpec::default());
        assert_eq!(c.unverified().len(), 3);
    }

    #[test]
    fn empty_v_density_inconclusive() {
        let a = LieAlgebra::abelian(2);
        let s = SectionSpec::new(&a, DualVector::zero(2), vec![], None).unwrap();
        assert!(matches!(density_check(&a, &s, &SampleSpec::default()), DensityVerdict::Inconclusive { .. }));
        let r = regular_locus_codim(&a, &s, &CodimMode::Exact).unwrap();
        assert!(matches!(r.non_regular, LocusVerdict::CodimAtLeastTwo { .. }));
    }
}
