//! Algebra descriptor documents (JSON, exact rationals as strings).

use std::collections::BTreeMap;
use std::path::Path;

use adapted_core::biparabolic::{compute_truncation, BiparabolicSpec, TruncatedBiparabolic, TruncationMode};
use adapted_core::catalog;
use adapted_core::linalg::{format_scalar, parse_scalar};
use adapted_core::{LieAlgebra, RootSystem, Scalar};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    /// Basis name to coefficient.
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDescriptor {
    StructureConstants {
        dim: usize,
        names: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dual_names: Option<Vec<String>>,
        brackets: Vec<BracketEntry>,
        /// Basis names spanning a toral subalgebra acting diagonally.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cartan: Option<Vec<String>>,
    },
    Biparabolic {
        #[serde(rename = "type")]
        root_type: String,
        rank: usize,
        /// 1-based simple root labels.
        pi_plus: Vec<usize>,
        pi_minus: Vec<usize>,
        /// `bruteforce:<D>` or `explicit:<w1>;<w2>;...` with each weight a
        /// comma-separated list of simple-root coordinates.
        truncation: String,
    },
    Catalog {
        name: String,
    },
}

/// A descriptor resolved to an algebra.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub label: String,
    pub algebra: LieAlgebra,
    pub biparabolic: Option<TruncatedBiparabolic>,
}

pub fn parse_descriptor(text: &str) -> Result<AlgebraDescriptor> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = if e.line() > 0 { (e.line(), e.column()) } else { locate(text, &e.to_string()) };
        if line > 0 {
            anyhow!("descriptor line {line} column {column}: {e}")
        } else {
            anyhow!("descriptor: {e}")
        }
    })
}

/// Position of the first backquoted name in `msg` as a JSON key or string in
/// `text`; tagged enums are buffered, so serde reports no position itself.
fn locate(text: &str, msg: &str) -> (usize, usize) {
    let Some(name) = msg.split('`').nth(1) else { return (0, 0) };
    let Some(offset) = text.find(&format!("\"{name}\"")) else { return (0, 0) };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

pub fn serialize_descriptor(d: &AlgebraDescriptor) -> String {
    serde_json::to_string_pretty(d).expect("descriptor serializes")
}

/// A catalog name, or a path to a descriptor document.
pub fn load(arg: &str) -> Result<AlgebraDescriptor> {
    let p = Path::new(arg);
    if arg.ends_with(".json") || p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {arg}"))?;
        parse_descriptor(&text)
    } else {
        Ok(AlgebraDescriptor::Catalog { name: arg.to_string() })
    }
}

pub fn parse_truncation(s: &str) -> Result<TruncationMode> {
    let (kind, rest) =
        s.split_once(':').ok_or_else(|| anyhow!("truncation: expected 'bruteforce:<D>' or 'explicit:<weights>'"))?;
    match kind {
        "bruteforce" => Ok(TruncationMode::BruteForce(rest.trim().parse().context("truncation degree bound")?)),
        "explicit" => {
            let weights = rest
                .split(';')
                .filter(|w| !w.trim().is_empty())
                .map(|w| w.split(',').map(|c| parse_scalar(c).map_err(anyhow::Error::from)).collect::<Result<Vec<Scalar>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(TruncationMode::Explicit(weights))
        }
        other => bail!("truncation: unknown mode '{other}'"),
    }
}

pub fn format_truncation(m: &TruncationMode) -> String {
    match m {
        TruncationMode::BruteForce(d) => format!("bruteforce:{d}"),
        TruncationMode::Explicit(ws) => format!(
            "explicit:{}",
            ws.iter().map(|w| w.iter().map(format_scalar).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
        ),
    }
}

fn simple_labels(field: &str, xs: &[usize], rank: usize) -> Result<Vec<usize>> {
    xs.iter()
        .map(|&i| {
            if i == 0 || i > rank {
                bail!("{field}: simple root label {i} outside 1..={rank}")
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn resolve(d: &AlgebraDescriptor) -> Result<Resolved> {
    match d {
        AlgebraDescriptor::Catalog { name } => {
            let e = catalog::lookup(name)?;
            Ok(Resolved { label: e.name, algebra: e.algebra, biparabolic: e.biparabolic })
        }
        AlgebraDescriptor::Biparabolic { root_type, rank, pi_plus, pi_minus, truncation } => {
            let mut chars = root_type.chars();
            let label = match (chars.next(), chars.next()) {
                (Some(c), None) => c.to_ascii_uppercase(),
                _ => bail!("type: expected a single letter, got '{root_type}'"),
            };
            let rs = RootSystem::new(label, *rank)?;
            let spec = BiparabolicSpec::new(
                rs,
                &simple_labels("pi_plus", pi_plus, *rank)?,
                &simple_labels("pi_minus", pi_minus, *rank)?,
            )?;
            let t = compute_truncation(&spec, &parse_truncation(truncation)?)?;
            Ok(Resolved { label: t.algebra.name().to_string(), algebra: t.algebra.clone(), biparabolic: Some(t) })
        }
        AlgebraDescriptor::StructureConstants { dim, names, dual_names, brackets, cartan } => {
            if names.len() != *dim {
                bail!("names: expected {dim} entries, got {}", names.len());
            }
            let index = |field: &str, n: &str| -> Result<usize> {
                names.iter().position(|x| x == n).ok_or_else(|| anyhow!("{field}: unknown basis element '{n}'"))
            };
            let mut list = Vec::new();
            for (k, b) in brackets.iter().enumerate() {
                let field = format!("brackets[{k}]");
                let i = index(&field, &b.left)?;
                let j = index(&field, &b.right)?;
                let value = b
                    .value
                    .iter()
                    .map(|(n, c)| Ok((index(&field, n)?, parse_scalar(c).with_context(|| field.clone())?)))
                    .collect::<Result<Vec<_>>>()?;
                list.push(((i, j), value));
            }
            let mut a = LieAlgebra::from_brackets("structure_constants", names.clone(), list)?;
            if let Some(dn) = dual_names {
                a = a.with_dual_names(dn.clone())?;
            }
            if let Some(c) = cartan {
                let idx = c.iter().map(|n| index("cartan", n)).collect::<Result<Vec<_>>>()?;
                a = a.with_cartan(idx)?;
            }
            a.validate()?;
            Ok(Resolved { label: "structure_constants".into(), algebra: a, biparabolic: None })
        }
    }
}

/// Descriptor reproducing an algebra from its structure constants.
pub fn describe(a: &LieAlgebra) -> AlgebraDescriptor {
    let brackets = a
        .nonzero_brackets()
        .into_iter()
        .filter(|((i, j), _)| i < j)
        .map(|((i, j), v)| BracketEntry {
            left: a.names()[i].clone(),
            right: a.names()[j].clone(),
            value: v.iter().map(|(k, c)| (a.names()[*k].clone(), format_scalar(c))).collect(),
        })
        .collect();
    AlgebraDescriptor::StructureConstants {
        dim: a.dim(),
        names: a.names().to_vec(),
        dual_names: Some(a.dual_names().to_vec()),
        brackets,
        cartan: (!a.cartan().is_empty()).then(|| a.cartan().iter().map(|&i| a.names()[i].clone()).collect()),
    }
}
