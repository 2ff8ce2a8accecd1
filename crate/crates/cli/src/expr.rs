//! Linear expressions over named basis vectors, e.g. `h`, `2*x - 1/2*z*`,
//! `y2+y3`, `0`.

use adapted_core::linalg::parse_scalar;
use adapted_core::Scalar;
use anyhow::{anyhow, bail, Result};
use num_traits::{One, Zero};

fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '+' | '-' if !cur.is_empty() => {
                out.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            }
            '+' => {}
            '-' => negative = !negative,
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        bail!("empty term in expression '{s}'");
    }
    out.push((negative, cur));
    Ok(out)
}

/// Coordinates of a linear combination of the given names.
pub fn parse_linear(s: &str, names: &[String]) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); names.len()];
    let lookup = |n: &str| names.iter().position(|x| x == n);
    for (negative, term) in split_terms(s)? {
        let (coef, idx) = if let Some(i) = lookup(&term) {
            (Scalar::one(), Some(i))
        } else if let Ok(c) = parse_scalar(&term) {
            if !c.is_zero() {
                bail!("nonzero constant '{term}' in a vector expression");
            }
            (c, None)
        } else {
            let (c, n) =
                term.split_once('*').ok_or_else(|| anyhow!("unknown name '{term}'; expected one of {}", names.join(", ")))?;
            let i = lookup(n).ok_or_else(|| anyhow!("unknown name '{n}'; expected one of {}", names.join(", ")))?;
            (parse_scalar(c)?, Some(i))
        };
        if let Some(i) = idx {
            if negative {
                v[i] -= coef;
            } else {
                v[i] += coef;
            }
        }
    }
    Ok(v)
}

/// Comma-separated list of expressions; the empty string gives no vectors.
pub fn parse_list(s: &str, names: &[String]) -> Result<Vec<Vec<Scalar>>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| parse_linear(t, names)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use adapted_core::linalg::{frac, int};

    fn names() -> Vec<String> {
        ["h", "x", "z*", "y2"].map(String::from).to_vec()
    }

    #[test]
    fn parses_combinations() {
        assert_eq!(parse_linear("h", &names()).unwrap(), vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(parse_linear("2*x - 1/2*z*", &names()).unwrap(), vec![int(0), int(2), frac(-1, 2), int(0)]);
        assert_eq!(parse_linear("-y2+h", &names()).unwrap(), vec![int(1), int(0), int(0), int(-1)]);
        assert_eq!(parse_linear("0", &names()).unwrap(), vec![int(0); 4]);
        assert!(parse_linear("w", &names()).is_err());
        assert!(parse_linear("3", &names()).is_err());
        assert_eq!(parse_list("h, y2", &names()).unwrap().len(), 2);
        assert!(parse_list("", &names()).unwrap().is_empty());
    }
}
