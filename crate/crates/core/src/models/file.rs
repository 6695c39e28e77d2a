//! Model files.
//!
//! ```text
//! model truncated_binomial_bialgebra(2)
//! dim 3
//! basis 1 a a^2
//! flags assoc coassoc comm cocomm
//! grading 0 1 2
//! waiver 1
//! unit (0, 1)
//! counit (0, 1)
//! mul (0, 0, 0, 1)
//! comul (1, 0, 1, 1)
//! ```
//!
//! `mul (i, j, k, c)`: the product `e_i e_j` has coefficient `c` on `e_k`.
//! `comul (i, j, k, c)`: `Δ(e_i)` has coefficient `c` on `e_j ⊗ e_k`.
//! Entries are written in index order, one per line.

use std::collections::BTreeSet;

use super::{FiniteBialgebraModel, ModelData, ModelError, Waiver};
use crate::linalg::{LinMap, SparseVec};
use crate::scalar::{fmt_scalar, parse_scalar, Scalar};
use crate::theories::Flag;

pub(crate) fn fmt_quad(i: usize, j: usize, k: usize, c: &Scalar) -> String {
    format!("({i}, {j}, {k}, {})", fmt_scalar(c))
}

/// Parses `(i, j, …, c)` with `n` indices.
pub(crate) fn parse_quad(text: &str, n: usize) -> Option<(Vec<usize>, Scalar)> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != n + 1 {
        return None;
    }
    let idx = parts[..n].iter().map(|p| p.parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some((idx, parse_scalar(parts[n])?))
}

pub fn write_model_file(m: &FiniteBialgebraModel) -> String {
    let d = m.data();
    let n = m.dim();
    let mut out = format!("model {}\ndim {n}\nbasis {}\n", d.name, d.basis.join(" "));
    let flags: Vec<&str> = d.flags.iter().map(|f| f.name()).collect();
    out.push_str(&format!("flags {}\n", flags.join(" ")));
    if let Some(g) = &d.grading {
        let g: Vec<String> = g.iter().map(usize::to_string).collect();
        out.push_str(&format!("grading {}\n", g.join(" ")));
    }
    if let Some(w) = d.waiver {
        out.push_str(&format!("waiver {}\n", w.max_input_degree));
    }
    for (key, v) in [("unit", &d.unit), ("counit", &d.counit)] {
        let entries: Vec<String> = v.iter().map(|(i, c)| format!("({i}, {})", fmt_scalar(c))).collect();
        out.push_str(&format!("{key} {}\n", entries.join(" ")));
    }
    for c in 0..n * n {
        for (k, x) in d.mul.column(c).iter() {
            out.push_str(&format!("mul {}\n", fmt_quad(c / n, c % n, k, x)));
        }
    }
    for i in 0..n {
        for (jk, x) in d.comul.column(i).iter() {
            out.push_str(&format!("comul {}\n", fmt_quad(i, jk / n, jk % n, x)));
        }
    }
    out
}

/// Parses and registers a model.
pub fn parse_model_file(text: &str) -> Result<FiniteBialgebraModel, ModelError> {
    let mut name = None;
    let mut dim: Option<usize> = None;
    let mut basis = None;
    let mut flags = BTreeSet::new();
    let mut grading = None;
    let mut waiver = None;
    let mut unit = SparseVec::new();
    let mut counit = SparseVec::new();
    let mut mul_entries = Vec::new();
    let mut comul_entries = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| ModelError::File { line: ln + 1, message };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "model" => name = Some(rest.to_string()),
            "dim" => dim = Some(rest.parse().map_err(|_| bad(format!("bad dim `{rest}`")))?),
            "basis" => basis = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>()),
            "flags" => {
                for f in rest.split_whitespace() {
                    flags.insert(f.parse::<Flag>().map_err(|e| bad(e.to_string()))?);
                }
            }
            "grading" => {
                let g = rest.split_whitespace().map(str::parse).collect::<Result<Vec<usize>, _>>();
                grading = Some(g.map_err(|_| bad("bad grading".into()))?);
            }
            "waiver" => {
                let w = rest.parse().map_err(|_| bad("bad waiver".into()))?;
                waiver = Some(Waiver { max_input_degree: w });
            }
            "unit" | "counit" => {
                let target = if key == "unit" { &mut unit } else { &mut counit };
                for group in split_groups(rest).map_err(bad)? {
                    let (idx, c) = parse_quad(group, 1).ok_or_else(|| bad(format!("bad entry `{group}`")))?;
                    target.add_at(idx[0], &c);
                }
            }
            "mul" | "comul" => {
                let (idx, c) = parse_quad(rest, 3).ok_or_else(|| bad(format!("bad entry `{rest}`")))?;
                if key == "mul" {
                    mul_entries.push((ln + 1, idx, c));
                } else {
                    comul_entries.push((ln + 1, idx, c));
                }
            }
            other => return Err(bad(format!("unknown directive `{other}`"))),
        }
    }
    let missing = |what: &str| ModelError::File { line: 0, message: format!("missing `{what}`") };
    let name = name.ok_or_else(|| missing("model"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let basis = basis.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
    if basis.len() != dim {
        return Err(ModelError::File { line: 0, message: format!("{} basis labels for dim {dim}", basis.len()) });
    }
    let range = |line: usize, idx: &[usize]| {
        if idx.iter().any(|&i| i >= dim) {
            Err(ModelError::File { line, message: "index out of range".into() })
        } else {
            Ok(())
        }
    };
    let mut mul_cols = vec![SparseVec::new(); dim * dim];
    for (line, idx, c) in &mul_entries {
        range(*line, idx)?;
        mul_cols[idx[0] * dim + idx[1]].add_at(idx[2], c);
    }
    let mut comul_cols = vec![SparseVec::new(); dim];
    for (line, idx, c) in &comul_entries {
        range(*line, idx)?;
        comul_cols[idx[0]].add_at(idx[1] * dim + idx[2], c);
    }
    FiniteBialgebraModel::register(ModelData {
        name,
        basis,
        mul: LinMap::from_columns(dim, mul_cols),
        comul: LinMap::from_columns(dim * dim, comul_cols),
        unit,
        counit,
        flags,
        grading,
        waiver,
    })
}

/// Splits `(a, b) (c, d)` into its parenthesized groups.
fn split_groups(text: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(format!("expected `(` at `{rest}`"));
        }
        let end = rest.find(')').ok_or("missing `)`")?;
        out.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{function_bialgebra, truncated_binomial_bialgebra, MoufangLoop};

    #[test]
    fn round_trip_is_exact() {
        for m in [truncated_binomial_bialgebra(3), function_bialgebra(&MoufangLoop::cyclic(3))] {
            let text = write_model_file(&m);
            let back = parse_model_file(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(write_model_file(&back), text);
        }
    }

    #[test]
    fn fractional_coefficients_survive() {
        let text = "model half\ndim 1\nbasis 1\nflags assoc\nunit (0, 1)\ncounit (0, 1)\nmul (0, 0, 0, 1)\ncomul (0, 0, 0, 1)\n";
        let m = parse_model_file(text).unwrap();
        assert_eq!(write_model_file(&m), text);
        let broken = text.replace("comul (0, 0, 0, 1)", "comul (0, 0, 0, 1/2)");
        assert!(matches!(parse_model_file(&broken), Err(ModelError::Registration { .. })));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_model_file("model x\ndim 1\nmul (0, 0)\n").unwrap_err();
        assert_eq!(err, ModelError::File { line: 3, message: "bad entry `(0, 0)`".into() });
        assert!(parse_model_file("model x\ndim 1\nmul (0, 0, 3, 1)\n").is_err());
    }
}
