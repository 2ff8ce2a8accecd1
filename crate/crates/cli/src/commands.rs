//! Command dispatch.

use std::fmt;
use std::str::FromStr;

use adapted_core::adapted::{
    equivalence_check, family_integrality, search_adapted_pairs, support_of, verify_adapted_pair, verify_biparabolic_pair,
    AdaptedPairCandidate, BiparabolicPair, Equivalence, DEFAULT_ORBIT_CAP,
};
use adapted_core::biparabolic::{truncation_identity_check, TruncatedBiparabolic};
use adapted_core::catalog::{heisenberg_ext, heisenberg_family_samples};
use adapted_core::invariants::{self, GradedSolveReport};
use adapted_core::lie::format_vector;
use adapted_core::linalg::format_scalar;
use adapted_core::slices::{
    converse_checklist, density_check, regular_locus_codim, stratify, transversality_check, weierstrass_check, CodimMode,
    DensityVerdict, LocusVerdict, WeierstrassVerdict,
};
use adapted_core::{DualVector, LieAlgebra, SampleSpec, Scalar, SectionSpec};
use anyhow::{anyhow, bail, Result};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::descriptor::{resolve, AlgebraDescriptor, Resolved};
use crate::expr::{parse_linear, parse_list};
use crate::report::{self, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Index,
    Invariants,
    VerifyPair,
    SearchPairs,
    Equivalence,
    SectionCheck,
    Stratify,
    ReportAll,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Validate,
        Command::Index,
        Command::Invariants,
        Command::VerifyPair,
        Command::SearchPairs,
        Command::Equivalence,
        Command::SectionCheck,
        Command::Stratify,
        Command::ReportAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Index => "index",
            Command::Invariants => "invariants",
            Command::VerifyPair => "verify-pair",
            Command::SearchPairs => "search-pairs",
            Command::Equivalence => "equivalence",
            Command::SectionCheck => "section-check",
            Command::Stratify => "stratify",
            Command::ReportAll => "report-all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| anyhow!("unknown command '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Sampled,
}

impl FromStr for Mode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            _ => bail!("mode must be 'exact' or 'sampled'"),
        }
    }
}

/// Flags shared by all commands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    pub degree_bound: Option<u32>,
    pub seed: u64,
    pub samples: usize,
    pub budget: usize,
    pub mode: Mode,
    pub h: Option<String>,
    pub eta: Option<String>,
    pub v: Option<String>,
    pub h2: Option<String>,
    pub eta2: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_bound: None,
            seed: 0,
            samples: 50,
            budget: 100_000,
            mode: Mode::Exact,
            h: None,
            eta: None,
            v: None,
            h2: None,
            eta2: None,
        }
    }
}

pub const DEFAULT_DEGREE_BOUND: u32 = 3;

struct Ctx {
    r: Resolved,
    opts: Options,
    unverified: Vec<String>,
    summary: Vec<String>,
}

impl Ctx {
    fn a(&self) -> &LieAlgebra {
        &self.r.algebra
    }

    fn degree(&self) -> u32 {
        self.opts.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND)
    }

    fn truncated(&self, cmd: Command) -> Result<&TruncatedBiparabolic> {
        self.r.biparabolic.as_ref().ok_or_else(|| anyhow!("{cmd} requires a truncated biparabolic algebra"))
    }

    fn element(&self, flag: &str, s: &Option<String>) -> Result<Vec<Scalar>> {
        let s = s.as_deref().ok_or_else(|| anyhow!("missing --{flag}"))?;
        parse_linear(s, self.a().names())
    }

    fn dual(&self, flag: &str, s: &Option<String>, default_zero: bool) -> Result<DualVector> {
        match s.as_deref() {
            None if default_zero => Ok(DualVector::zero(self.a().dim())),
            None => bail!("missing --{flag}"),
            Some(s) => Ok(DualVector::new(parse_linear(s, self.a().dual_names())?)),
        }
    }

    fn invariants_if_small(&self) -> Result<Option<GradedSolveReport>> {
        if self.a().dim() > invariants::MAX_DIM {
            return Ok(None);
        }
        Ok(Some(invariants::semi_invariants(self.a(), self.degree())?))
    }

    /// `h` in `𝔥_Λ` coordinates when it lies in the Cartan part.
    fn h_lambda_coords(&self, t: &TruncatedBiparabolic, h: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = t.h_lambda_dim();
        h[k..].iter().all(Zero::is_zero).then(|| h[..k].to_vec())
    }
}

/// Runs one command on a descriptor.
pub fn run_command(cmd: Command, descriptor: &AlgebraDescriptor, opts: &Options) -> Result<RunReport> {
    let input = json!({"command": cmd, "descriptor": descriptor, "options": opts});
    let input_hash = report::sha256_hex(serde_json::to_string(&input)?.as_bytes());
    let r = resolve(descriptor)?;
    let mut ctx = Ctx { r, opts: opts.clone(), unverified: Vec::new(), summary: Vec::new() };
    let verdicts = dispatch(cmd, &mut ctx)?;
    let degree_bound = match cmd {
        Command::Index | Command::Validate | Command::Equivalence | Command::Stratify => None,
        _ => Some(ctx.degree()),
    };
    Ok(RunReport {
        command: cmd.name().to_string(),
        algebra: ctx.r.label.clone(),
        input_hash,
        seed: opts.seed,
        degree_bound,
        verdicts,
        unverified: ctx.unverified,
        summary: ctx.summary,
    })
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<Value> {
    match cmd {
        Command::Validate => validate(ctx),
        Command::Index => index(ctx),
        Command::Invariants => invariants_cmd(ctx),
        Command::VerifyPair => verify_pair(ctx),
        Command::SearchPairs => search_pairs(ctx),
        Command::Equivalence => equivalence(ctx),
        Command::SectionCheck => section_check(ctx),
        Command::Stratify => stratify_cmd(ctx),
        Command::ReportAll => {
            let mut m = Map::new();
            m.insert("validate".into(), validate(ctx)?);
            m.insert("index".into(), index(ctx)?);
            if ctx.a().dim() <= invariants::MAX_DIM {
                m.insert("invariants".into(), invariants_cmd(ctx)?);
            }
            if ctx.r.biparabolic.is_some() {
                m.insert("search_pairs".into(), search_pairs(ctx)?);
            }
            Ok(Value::Object(m))
        }
    }
}

fn validate(ctx: &mut Ctx) -> Result<Value> {
    let a = ctx.a();
    a.validate()?;
    let mut v = json!({
        "dim": a.dim(),
        "names": a.names(),
        "dual_names": a.dual_names(),
        "jacobi": "pass",
        "nonzero_brackets": a.nonzero_brackets().iter().filter(|((i, j), _)| i < j).count(),
        "cartan": a.cartan().iter().map(|&i| a.names()[i].clone()).collect::<Vec<_>>(),
    });
    ctx.summary.push(format!("{}: dimension {}, Jacobi identity holds", a.name(), a.dim()));
    if let Some(t) = &ctx.r.biparabolic {
        let check = truncation_identity_check(&t.untruncated, &t.algebra);
        v["truncation"] = report::truncation(t);
        v["truncation_identity"] = report::identity(&check);
        ctx.summary.push(format!(
            "truncation identity {} + 0 = {} + {}: {}",
            check.dim_q,
            check.dim_truncated,
            check.index_truncated,
            if check.holds { "holds" } else { "fails" }
        ));
        if !t.truncation.is_certified() {
            ctx.unverified.push("truncation: brute-force Λ not certified at this degree bound".into());
        }
    }
    Ok(v)
}

fn index(ctx: &mut Ctx) -> Result<Value> {
    let a = ctx.a();
    let ranks = a.sampled_ranks(ctx.opts.seed, 4);
    let v = json!({
        "dim": a.dim(),
        "generic_rank": a.generic_rank(),
        "index": a.index(),
        "frobenius": a.index() == 0,
        "centre": a.centre().iter().map(|c| format_vector(c, a.names())).collect::<Vec<_>>(),
        "sampled_ranks": ranks,
    });
    ctx.summary.push(format!("index = {}", a.index()));
    Ok(v)
}

fn invariants_cmd(ctx: &mut Ctx) -> Result<Value> {
    let r = invariants::semi_invariants(ctx.a(), ctx.degree())?;
    let dims: Vec<usize> = r.degrees.iter().map(|d| d.invariant_dim).collect();
    ctx.summary.push(format!("invariant dimensions by degree 1..={}: {:?}", ctx.degree(), dims));
    Ok(report::invariants(ctx.a(), &r))
}

fn heisenberg_family(ctx: &Ctx) -> Option<Value> {
    if !ctx.r.label.starts_with("heisenberg_ext") {
        return None;
    }
    let params = heisenberg_family_samples();
    let found = family_integrality(&params, |c| {
        heisenberg_ext(c).ok().map(|a| (a, vec![Scalar::from_integer(1.into()), Scalar::zero(), Scalar::zero(), Scalar::zero()]))
    });
    Some(match found {
        None => json!({"integral": true, "parameters": report::scalars(&params)}),
        Some((c, e)) => json!({
            "integral": false,
            "parameters": report::scalars(&params),
            "counterexample_parameter": report::scalar(&c),
            "eigenvalue": report::scalar(&e),
            "witness": if e == c { "c".to_string() } else { format_scalar(&e) },
        }),
    })
}

fn verify_pair(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.element("h", &ctx.opts.h.clone())?;
    let eta = ctx.dual("eta", &ctx.opts.eta.clone(), false)?;
    let inv = ctx.invariants_if_small()?;
    let a = ctx.r.algebra.clone();
    let a = &a;
    let mut v = if let Some(t) = ctx.r.biparabolic.as_ref() {
        match (ctx.h_lambda_coords(t, &h), support_of(t, &eta)) {
            (Some(u), Some((support, coefficients))) => {
                let pair = BiparabolicPair { h: u, support, coefficients, eta: eta.clone() };
                let r = verify_biparabolic_pair(t, &pair, inv.as_ref());
                let mut out = report::pair_report(a, &r.report);
                out["biparabolic"] = report::biparabolic_pair(t, &r);
                out
            }
            _ => report::pair_report(
                a,
                &verify_adapted_pair(a, &AdaptedPairCandidate { h: h.clone(), eta: eta.clone() }, inv.as_ref()),
            ),
        }
    } else {
        report::pair_report(a, &verify_adapted_pair(a, &AdaptedPairCandidate { h: h.clone(), eta: eta.clone() }, inv.as_ref()))
    };
    if let Some(f) = heisenberg_family(ctx) {
        v["family_integrality"] = f;
    }
    if inv.is_none() {
        ctx.unverified.push(format!("nilfiber: invariants not computed for dimension {} > {}", a.dim(), invariants::MAX_DIM));
    }
    ctx.summary.push(format!(
        "({}, {}) adapted: {}",
        format_vector(&h, a.names()),
        eta.display_with(a.dual_names()),
        v["is_adapted"]
    ));
    Ok(v)
}

fn search_pairs(ctx: &mut Ctx) -> Result<Value> {
    let t = ctx.truncated(Command::SearchPairs)?;
    let inv =
        if t.algebra.dim() <= invariants::MAX_DIM { Some(invariants::semi_invariants(&t.algebra, ctx.degree())?) } else { None };
    let s = search_adapted_pairs(t, ctx.opts.budget, ctx.opts.seed, inv.as_ref())?;
    let v = report::search(t, &s);
    ctx.summary.push(format!("{} adapted pair class(es) found over {} supports", s.pairs.len(), s.examined));
    if let Some(c) = &s.certificate {
        ctx.summary.push(format!("certificate: {c}"));
    }
    if s.partial {
        ctx.unverified.push("search-pairs: budget exhausted, result is partial".into());
    }
    Ok(v)
}

fn equivalence(ctx: &mut Ctx) -> Result<Value> {
    let t = ctx.truncated(Command::Equivalence)?.clone();
    let h1 = ctx.element("h", &ctx.opts.h.clone())?;
    let h2 = ctx.element("h2", &ctx.opts.h2.clone())?;
    let e1 = ctx.dual("eta", &ctx.opts.eta.clone(), false)?;
    let e2 = ctx.dual("eta2", &ctx.opts.eta2.clone(), false)?;
    let u1 = ctx.h_lambda_coords(&t, &h1).ok_or_else(|| anyhow!("--h must lie in h_Λ"))?;
    let u2 = ctx.h_lambda_coords(&t, &h2).ok_or_else(|| anyhow!("--h2 must lie in h_Λ"))?;
    let e = equivalence_check(&t, (&u1, &e1), (&u2, &e2), DEFAULT_ORBIT_CAP)?;
    ctx.summary.push(match &e {
        Equivalence::Equivalent(w) => format!("equivalent via word {:?}", w.word.iter().map(|i| i + 1).collect::<Vec<_>>()),
        Equivalence::NotEquivalent(r) => format!("not equivalent: {r}"),
        Equivalence::Undecided(r) => format!("undecided: {r}"),
    });
    Ok(report::equivalence(&e))
}

fn section(ctx: &Ctx, default_full: bool) -> Result<SectionSpec> {
    let a = ctx.a();
    let eta = ctx.dual("eta", &ctx.opts.eta, true)?;
    let v = match ctx.opts.v.as_deref() {
        Some(s) => parse_list(s, a.dual_names())?,
        None if default_full => (0..a.dim()).map(|i| DualVector::basis(a.dim(), i).coords).collect(),
        None => Vec::new(),
    };
    let h = match &ctx.opts.h {
        Some(s) => Some(parse_linear(s, a.names())?),
        None => None,
    };
    Ok(SectionSpec::new(a, eta, v.into_iter().map(DualVector::new).collect(), h)?)
}

fn samples(ctx: &Ctx) -> SampleSpec {
    SampleSpec { seed: ctx.opts.seed, random: ctx.opts.samples, radius: 2 }
}

fn section_check(ctx: &mut Ctx) -> Result<Value> {
    let s = section(ctx, false)?;
    let spec = samples(ctx);
    let a = ctx.a().clone();
    let tr = transversality_check(&a, &s, &spec);
    let dens = density_check(&a, &s, &spec);
    let mode = match ctx.opts.mode {
        Mode::Exact => CodimMode::Exact,
        Mode::Sampled => CodimMode::Sampled { lines: ctx.opts.samples.max(1), seed: ctx.opts.seed },
    };
    let codim = regular_locus_codim(&a, &s, &mode)?;
    let vars = s.coordinate_names(&a);
    let inv = invariants::semi_invariants(&a, ctx.degree())?;
    let w = weierstrass_check(&a, &s, &inv, ctx.degree())?;
    let check = converse_checklist(&a, &s, &spec);
    for item in check.unverified() {
        ctx.unverified.push(format!("converse hypothesis {item}"));
    }
    ctx.summary.push(format!(
        "transversality: {} of {} samples pass",
        tr.samples.iter().filter(|x| x.transversal).count(),
        tr.samples.len()
    ));
    ctx.summary.push(format!(
        "density: {}",
        match &dens {
            DensityVerdict::Dense { .. } => "dense",
            DensityVerdict::Inconclusive { .. } => "inconclusive",
        }
    ));
    let describe = |l: &LocusVerdict| match l {
        LocusVerdict::CodimOne { certificate } => format!("codimension 1, certificate {}", certificate.display_with(&vars)),
        LocusVerdict::CodimAtLeastTwo { .. } => "codimension >= 2".into(),
        LocusVerdict::Everywhere => "whole section".into(),
        LocusVerdict::Sampled { likely_codim_one, .. } => format!("sampled, codimension 1 likely: {likely_codim_one}"),
    };
    ctx.summary.push(format!("non-regular locus: {}", describe(&codim.non_regular)));
    ctx.summary.push(format!("non-slice locus: {}", describe(&codim.non_slice)));
    ctx.summary.push(format!(
        "restriction: {}",
        match &w.verdict {
            WeierstrassVerdict::NotInjectiveUpTo { degree, .. } => format!("NotInjectiveUpTo({degree})"),
            WeierstrassVerdict::NotSurjectiveUpTo { degree, .. } => format!("NotSurjectiveUpTo({degree})"),
            WeierstrassVerdict::IsomorphismUpTo(d) => format!("IsomorphismUpTo({d})"),
            WeierstrassVerdict::ConsistentUpTo(d) => format!("ConsistentUpTo({d})"),
        }
    ));
    Ok(json!({
        "section": {
            "eta": report::dual(&a, &s.eta),
            "v_basis": s.v_basis.iter().map(|v| report::dual(&a, v)).collect::<Vec<_>>(),
            "coordinates": vars,
        },
        "transversality": report::transversality(&a, &tr, &s),
        "density": report::density(&a, &dens),
        "regular_locus": report::regular_locus(&codim),
        "weierstrass": report::weierstrass(&w, &vars, &a),
        "converse_checklist": report::checklist(&check),
    }))
}

fn stratify_cmd(ctx: &mut Ctx) -> Result<Value> {
    let s = section(ctx, true)?;
    let st = stratify(ctx.a(), &s, &samples(ctx));
    ctx.summary.push(format!("observed orbit dimensions: {:?}", st.strata.keys().collect::<Vec<_>>()));
    Ok(report::strata(&st))
}
