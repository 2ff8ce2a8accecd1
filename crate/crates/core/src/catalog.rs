//! Named example algebras.
//!
//! Names: `filiform5`, `heisenberg_ext?c=<rational>`, `borel_A1`,
//! `borel_C2_truncated`, `parabolic_A2`, `abelian?n=<int>`.

use num_traits::{One, Zero};

use crate::biparabolic::{compute_truncation, BiparabolicSpec, TruncatedBiparabolic, TruncationMode};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{format_scalar, int, parse_scalar, MultiPoly, Scalar};
use crate::roots::RootSystem;

pub const CATALOG_NAMES: [&str; 6] =
    ["filiform5", "heisenberg_ext?c=2", "borel_A1", "borel_C2_truncated", "parabolic_A2", "abelian?n=2"];

/// A resolved catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    /// Present for truncated biparabolic entries.
    pub biparabolic: Option<TruncatedBiparabolic>,
}

/// Sampled parameter values used for family-level verdicts on `heisenberg_ext`.
pub fn heisenberg_family_samples() -> Vec<Scalar> {
    vec![int(2), Scalar::new(1.into(), 2.into()), Scalar::new((-1).into(), 3.into()), Scalar::new(3.into(), 2.into())]
}

/// Standard filiform algebra of dimension 5: `[x1, x_i] = x_{i+1}` for `i = 2, 3, 4`.
pub fn filiform5() -> LieAlgebra {
    let names = (1..=5).map(|i| format!("x{i}")).collect();
    let b = [(1usize, 2usize), (2, 3), (3, 4)].map(|(j, k)| ((0, j), vec![(k, Scalar::one())]));
    LieAlgebra::from_brackets("filiform5", names, b)
        .and_then(|a| a.with_dual_names((1..=5).map(|i| format!("y{i}")).collect()))
        .expect("filiform structure constants")
}

/// Heisenberg algebra `[x, y] = z` extended by `h` with `[h, x] = c x`,
/// `[h, y] = (1 - c) y`, `[h, z] = z`. Requires `c ∉ {0, 1}`.
pub fn heisenberg_ext(c: &Scalar) -> Result<LieAlgebra> {
    if c.is_zero() || c.is_one() {
        return Err(Error::Precondition("heisenberg_ext requires c not in {0, 1}".into()));
    }
    let names = ["h", "x", "y", "z"].map(String::from).to_vec();
    let one = Scalar::one();
    let brackets = vec![
        ((0, 1), vec![(1, c.clone())]),
        ((0, 2), vec![(2, &one - c)]),
        ((0, 3), vec![(3, one.clone())]),
        ((1, 2), vec![(3, one)]),
    ];
    LieAlgebra::from_brackets(format!("heisenberg_ext?c={}", format_scalar(c)), names, brackets)?.with_cartan(vec![0])
}

fn truncated(label: char, rank: usize, plus: &[usize], minus: &[usize], degree: u32) -> Result<TruncatedBiparabolic> {
    let spec = BiparabolicSpec::new(RootSystem::new(label, rank)?, plus, minus)?;
    compute_truncation(&spec, &TruncationMode::BruteForce(degree))
}

/// `𝔟⁻` of `sl2`, truncated.
pub fn borel_a1() -> Result<TruncatedBiparabolic> {
    truncated('A', 1, &[0], &[], 3)
}

/// `𝔟⁻` of `sp4`, truncated.
pub fn borel_c2_truncated() -> Result<TruncatedBiparabolic> {
    truncated('C', 2, &[0, 1], &[], 3)
}

/// Parabolic of `sl3` with Levi simple root `α₁`, truncated. Semi-invariant
/// degrees stabilize only at 4, so the brute-force bound is 4.
pub fn parabolic_a2() -> Result<TruncatedBiparabolic> {
    truncated('A', 2, &[0, 1], &[0], 4)
}

fn param<'a>(name: &'a str, key: &str) -> Result<Option<&'a str>> {
    match name.split_once('?') {
        None => Ok(None),
        Some((_, q)) => {
            let (k, v) = q.split_once('=').ok_or_else(|| Error::Parse(format!("malformed catalog parameter in '{name}'")))?;
            if k != key {
                return Err(Error::Parse(format!("unknown catalog parameter '{k}' in '{name}'")));
            }
            Ok(Some(v))
        }
    }
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let base = name.split('?').next().unwrap_or(name);
    let bip = |t: TruncatedBiparabolic| CatalogEntry { name: name.to_string(), algebra: t.algebra.clone(), biparabolic: Some(t) };
    let plain = |a: LieAlgebra| CatalogEntry { name: name.to_string(), algebra: a, biparabolic: None };
    match base {
        "filiform5" => Ok(plain(filiform5())),
        "heisenberg_ext" => {
            let c = param(name, "c")?.map(parse_scalar).transpose()?.unwrap_or_else(|| int(2));
            Ok(plain(heisenberg_ext(&c)?))
        }
        "borel_A1" => Ok(bip(borel_a1()?)),
        "borel_C2_truncated" => Ok(bip(borel_c2_truncated()?)),
        "parabolic_A2" => Ok(bip(parabolic_a2()?)),
        "abelian" => {
            let n = param(name, "n")?
                .map(|v| v.parse::<usize>().map_err(|e| Error::Parse(format!("abelian n: {e}"))))
                .transpose()?
                .unwrap_or(2);
            Ok(plain(LieAlgebra::abelian(n).with_name(format!("abelian?n={n}"))))
        }
        _ => Err(Error::Parse(format!("unknown catalog entry '{name}'"))),
    }
}

/// Symbolic orbit computation on `filiform5` in variables `(a, b, c, d)`:
/// `e^{d ad x2} e^{c ad x1} (a y3 + b y2)`, with the closed form
/// `a y3 + (b - ac) y2 + ad y1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitIdentity {
    pub computed: Vec<MultiPoly>,
    pub expected: Vec<MultiPoly>,
}

impl OrbitIdentity {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

pub fn filiform_orbit_identity() -> Result<OrbitIdentity> {
    let a = filiform5();
    let nv = 4;
    let v = |i| MultiPoly::var(nv, i);
    let (pa, pb, pc, pd) = (v(0), v(1), v(2), v(3));
    let z = MultiPoly::zero(nv);
    let xi = vec![z.clone(), pb.clone(), pa.clone(), z.clone(), z.clone()];
    let x1 = vec![pc.clone(), z.clone(), z.clone(), z.clone(), z.clone()];
    let x2 = vec![z.clone(), pd.clone(), z.clone(), z.clone(), z.clone()];
    let step = a.coadjoint_exp_symbolic(&x1, &xi)?;
    let computed = a.coadjoint_exp_symbolic(&x2, &step)?;
    let expected = vec![&pa * &pd, &pb - &(&pa * &pc), pa, z.clone(), z];
    Ok(OrbitIdentity { computed, expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for n in CATALOG_NAMES {
            let e = lookup(n).unwrap();
            e.algebra.validate().unwrap();
        }
        assert!(lookup("heisenberg_ext?c=1").is_err());
        assert!(lookup("nope").is_err());
        assert_eq!(lookup("abelian?n=3").unwrap().algebra.dim(), 3);
    }

    #[test]
    fn orbit_identity() {
        assert!(filiform_orbit_identity().unwrap().holds());
    }

    #[test]
    fn heisenberg_is_frobenius() {
        let a = heisenberg_ext(&int(2)).unwrap();
        assert_eq!(a.index(), 0);
    }
}
