//! JSON rendering of core results. Object keys are sorted, so equal inputs
//! give byte-identical documents.

use adapted_core::adapted::{
    AdaptedPairReport, BiparabolicPairReport, ComplementSpec, Equivalence, IntegralityVerdict, NilfiberVerdict, SearchReport,
    StructuralVerdicts,
};
use adapted_core::biparabolic::{IdentityCheck, Provenance, TruncatedBiparabolic};
use adapted_core::invariants::GradedSolveReport;
use adapted_core::lie::format_vector;
use adapted_core::linalg::format_scalar;
use adapted_core::roots::WeylElement;
use adapted_core::slices::{
    ConverseChecklist, DensityVerdict, ItemStatus, LocusVerdict, RegularLocusReport, Stratification, TransversalityReport,
    WeierstrassReport, WeierstrassVerdict,
};
use adapted_core::{DualVector, LieAlgebra, MultiPoly, Scalar};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub algebra: String,
    pub input_hash: String,
    pub seed: u64,
    pub degree_bound: Option<u32>,
    pub verdicts: Value,
    pub unverified: Vec<String>,
    pub summary: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(self).expect("report serializes")).expect("json");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn dual(a: &LieAlgebra, v: &DualVector) -> Value {
    json!({"coords": scalars(&v.coords), "display": v.display_with(a.dual_names())})
}

pub fn element(a: &LieAlgebra, v: &[Scalar]) -> Value {
    json!({"coords": scalars(v), "display": format_vector(v, a.names())})
}

pub fn poly(a: &LieAlgebra, p: &MultiPoly) -> Value {
    Value::String(p.display_with(a.names()))
}

pub fn root_label(t: &TruncatedBiparabolic, alpha: usize) -> Value {
    let r = &t.spec.rs.roots()[alpha];
    json!(r)
}

pub fn eigenvalues(ev: &Result<Vec<Scalar>, adapted_core::linalg::SplitFailure>) -> Value {
    match ev {
        Ok(v) => json!({"split": true, "values": scalars(v)}),
        Err(f) => json!({
            "split": false,
            "rational_roots": scalars(&f.roots),
            "unsplit_factor_coefficients": scalars(&f.factor),
        }),
    }
}

pub fn integrality(v: &IntegralityVerdict) -> Value {
    json!({"integral": v.integral, "witness": v.witness.as_ref().map(scalar)})
}

pub fn nilfiber(a: &LieAlgebra, v: &NilfiberVerdict) -> Value {
    match v {
        NilfiberVerdict::Vanishes { degree_bound, checked } => {
            json!({"verdict": "vanishes", "degree_bound": degree_bound, "invariants_checked": checked})
        }
        NilfiberVerdict::Fails { invariant, value } => {
            json!({"verdict": "fails", "invariant": poly(a, invariant), "value": scalar(value)})
        }
    }
}

pub fn pair_report(a: &LieAlgebra, r: &AdaptedPairReport) -> Value {
    json!({
        "is_adapted": r.is_adapted,
        "eigen_equation": r.eigen_equation,
        "regular": r.regularity.regular,
        "rank_at_eta": r.regularity.rank,
        "generic_rank": r.regularity.generic_rank,
        "ad_h_eigenvalues": eigenvalues(&r.eigenvalues),
        "ad_h_semisimple": r.ad_semisimple,
        "integrality": integrality(&adapted_core::adapted::integrality(&r.eigenvalues)),
        "exponents": r.exponents.as_ref().map(|e| scalars(e)),
        "index": r.index,
        "expected_orbit_dim": r.expected_orbit_dim,
        "orbit_dim": r.orbit_dim,
        "stabilizer_in_root_span": r.stabilizer_in_root_span,
        "support_spans_h_lambda": r.support_spans_h_lambda,
        "nilfiber": r.nilfiber.as_ref().map(|n| nilfiber(a, n)),
    })
}

pub fn complement(t: &TruncatedBiparabolic, c: &ComplementSpec) -> Value {
    json!({
        "roots": c.t.iter().map(|&r| root_label(t, r)).collect::<Vec<_>>(),
        "basis": c.v_basis.iter().map(|v| dual(&t.algebra, v)).collect::<Vec<_>>(),
        "exponents": scalars(&c.exponents()),
        "complete": c.complete,
    })
}

pub fn structural(t: &TruncatedBiparabolic, s: &StructuralVerdicts) -> Value {
    json!({
        "spans_h_dual": s.spans_h_dual,
        "lattice_contains_roots": s.lattice_contains_roots,
        "missing_simple_roots": s.missing_simple_roots.iter().map(|&i| root_label(t, i_simple(t, i))).collect::<Vec<_>>(),
        "integrality": integrality(&s.integrality),
        "minimal": s.minimal,
    })
}

fn i_simple(t: &TruncatedBiparabolic, i: usize) -> usize {
    t.spec.rs.index_of(&t.spec.rs.simple_root(i)).expect("simple root")
}

pub fn biparabolic_pair(t: &TruncatedBiparabolic, r: &BiparabolicPairReport) -> Value {
    let a = &t.algebra;
    json!({
        "h": element(a, &t.cartan_element(&r.pair.h)),
        "h_coroot_coords": scalars(&t.to_coroot_coords(&r.pair.h)),
        "support": r.pair.support.iter().map(|&s| root_label(t, s)).collect::<Vec<_>>(),
        "coefficients": scalars(&r.pair.coefficients),
        "eta": dual(a, &r.pair.eta),
        "support_condition": r.support_condition,
        "report": pair_report(a, &r.report),
        "complement": complement(t, &r.complement),
        "structural": structural(t, &r.structural),
    })
}

pub fn search(t: &TruncatedBiparabolic, s: &SearchReport) -> Value {
    json!({
        "pairs": s.pairs.iter().map(|p| biparabolic_pair(t, p)).collect::<Vec<_>>(),
        "classes": s.pairs.len(),
        "examined": s.examined,
        "feasible_supports": s.feasible,
        "partial": s.partial,
        "certificate": s.certificate,
        "labeling": "minimal presentations, one representative per W_M class",
    })
}

pub fn weyl(w: &WeylElement) -> Value {
    json!({
        "word": w.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "display": if w.word.is_empty() { "1".to_string() } else { w.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ") },
    })
}

pub fn equivalence(e: &Equivalence) -> Value {
    match e {
        Equivalence::Equivalent(w) => json!({"verdict": "equivalent", "weyl_element": weyl(w)}),
        Equivalence::NotEquivalent(r) => json!({"verdict": "not_equivalent", "reason": r}),
        Equivalence::Undecided(r) => json!({"verdict": "undecided", "reason": r}),
    }
}

pub fn identity(c: &IdentityCheck) -> Value {
    json!({
        "dim_q": c.dim_q,
        "index_q": c.index_q,
        "dim_truncated": c.dim_truncated,
        "index_truncated": c.index_truncated,
        "holds": c.holds,
    })
}

pub fn truncation(t: &TruncatedBiparabolic) -> Value {
    let prov = match &t.truncation.provenance {
        Provenance::Explicit => json!({"mode": "explicit"}),
        Provenance::BruteForce { degree_bound, stabilized, dims_by_degree } => json!({
            "mode": "bruteforce",
            "degree_bound": degree_bound,
            "stabilized": stabilized,
            "semi_invariant_dims_by_degree": dims_by_degree,
        }),
    };
    json!({
        "root_system": t.spec.rs.name(),
        "pi_plus": t.spec.pi_plus.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "pi_minus": t.spec.pi_minus.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "lambda": t.truncation.lambda_generators.iter().map(|w| scalars(w)).collect::<Vec<_>>(),
        "h_lambda_basis_coroot_coords": t.truncation.h_lambda_basis.iter().map(|w| scalars(w)).collect::<Vec<_>>(),
        "h_lambda_dim": t.h_lambda_dim(),
        "provenance": prov,
        "certified": t.truncation.is_certified(),
    })
}

pub fn invariants(a: &LieAlgebra, r: &GradedSolveReport) -> Value {
    json!({
        "degree_bound": r.degree_bound,
        "degrees": r.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "invariant_dim": d.invariant_dim,
            "weight_spaces": d.spaces.iter().map(|s| json!({
                "character": scalars(&s.character),
                "weight": s.weight.as_ref().map(|w| scalars(w)),
                "basis": s.basis.iter().map(|p| poly(a, p)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "generator_degrees": adapted_core::invariants::generator_degrees(r, a.dim()),
        "notes": r.notes(),
    })
}

pub fn transversality(a: &LieAlgebra, r: &TransversalityReport, section: &adapted_core::SectionSpec) -> Value {
    let failures: Vec<Value> = r
        .failures()
        .map(|f| {
            let w = f.witness.as_ref().expect("failure witness");
            json!({
                "t": scalars(&f.t),
                "point": dual(a, &f.point),
                "witness": dual(a, w),
                "witness_reverified": adapted_core::slices::verify_transversality_witness(a, section, &f.point, w),
            })
        })
        .collect();
    json!({
        "samples": r.samples.len(),
        "passed": r.samples.iter().filter(|s| s.transversal).count(),
        "all_pass": r.all_pass(),
        "failures": failures,
    })
}

pub fn density(a: &LieAlgebra, d: &DensityVerdict) -> Value {
    match d {
        DensityVerdict::Dense { t, point } => json!({"verdict": "dense", "t": scalars(t), "witness": dual(a, point)}),
        DensityVerdict::Inconclusive { samples } => json!({"verdict": "inconclusive", "samples": samples}),
    }
}

fn locus(v: &LocusVerdict, names: &[String]) -> Value {
    match v {
        LocusVerdict::CodimAtLeastTwo { minors_examined } => {
            json!({"verdict": "codim_at_least_2", "minors_examined": minors_examined})
        }
        LocusVerdict::CodimOne { certificate } => {
            json!({"verdict": "codim_1", "certificate": certificate.display_with(names)})
        }
        LocusVerdict::Everywhere => json!({"verdict": "everywhere"}),
        LocusVerdict::Sampled { lines, lines_meeting, likely_codim_one } => json!({
            "verdict": "sampled_estimate",
            "lines": lines,
            "lines_meeting": lines_meeting,
            "likely_codim_1": likely_codim_one,
        }),
    }
}

pub fn regular_locus(r: &RegularLocusReport) -> Value {
    json!({
        "variables": r.variables,
        "non_regular_locus": locus(&r.non_regular, &r.variables),
        "non_slice_locus": locus(&r.non_slice, &r.variables),
    })
}

pub fn weierstrass(r: &WeierstrassReport, vars: &[String], a: &LieAlgebra) -> Value {
    let verdict = match &r.verdict {
        WeierstrassVerdict::NotInjectiveUpTo { degree, kernel } => {
            json!({"verdict": "NotInjectiveUpTo", "degree": degree, "kernel": poly(a, kernel)})
        }
        WeierstrassVerdict::NotSurjectiveUpTo { degree, missing } => {
            json!({"verdict": "NotSurjectiveUpTo", "degree": degree, "missing_coordinates": missing})
        }
        WeierstrassVerdict::IsomorphismUpTo(d) => json!({"verdict": "IsomorphismUpTo", "degree": d}),
        WeierstrassVerdict::ConsistentUpTo(d) => json!({"verdict": "ConsistentUpTo", "degree": d}),
    };
    json!({
        "result": verdict,
        "realized_coordinates": r.realized,
        "restrictions": r.restrictions.iter().map(|(d, p)| json!({"degree": d, "image": p.display_with(vars)})).collect::<Vec<_>>(),
    })
}

pub fn checklist(c: &ConverseChecklist) -> Value {
    json!({
        "short_circuited": c.short_circuited,
        "items": c.items.iter().map(|i| {
            let (status, detail) = match &i.status {
                ItemStatus::Pass => ("pass", None),
                ItemStatus::Fail(d) => ("fail", Some(d.clone())),
                ItemStatus::Inconclusive(d) => ("inconclusive", Some(d.clone())),
                ItemStatus::Unverified => ("UNVERIFIED", None),
                ItemStatus::Skipped => ("skipped", None),
            };
            json!({"condition": i.label, "status": status, "detail": detail})
        }).collect::<Vec<_>>(),
    })
}

pub fn strata(s: &Stratification) -> Value {
    json!({
        "strata": s.strata.iter().map(|(d, st)| json!({
            "orbit_dim": d,
            "count": st.count,
            "example": scalars(&st.example),
        })).collect::<Vec<_>>(),
        "top": s.top,
        "top_perturbations_stayed": s.perturbations_stayed,
        "top_perturbations_tried": s.perturbations_tried,
        "openness": "not claimed",
    })
}
