//! Deformation files.
//!
//! ```text
//! deformation NAME
//! base MODEL-NAME
//! order N
//! comul n (i, j, k, c)     # Δ_n(e_i) has coefficient c on e_j⊗e_k
//! mul n (i, j, k, c)       # p_n(e_i⊗e_j) has coefficient c on e_k
//! ```
//! Only components with `n ≥ 1` are listed; the `h^0` layer is the base.

use super::{DeformError, TruncatedDeformation, TruncatedSeriesMap};
use crate::linalg::LinMap;
use crate::models::{fmt_quad, parse_quad, FiniteBialgebraModel};

pub fn write_deformation_file(def: &TruncatedDeformation) -> String {
    let n = def.dim();
    let mut out = format!("deformation {}\nbase {}\norder {}\n", def.name(), def.base().name(), def.order());
    let maps = def.maps();
    for (deg, m) in maps.comul.iter().enumerate().skip(1) {
        for i in 0..n {
            for (jk, x) in m.column(i).iter() {
                out.push_str(&format!("comul {deg} {}\n", fmt_quad(i, jk / n, jk % n, x)));
            }
        }
    }
    for (deg, m) in maps.mul.iter().enumerate().skip(1) {
        for c in 0..n * n {
            for (k, x) in m.column(c).iter() {
                out.push_str(&format!("mul {deg} {}\n", fmt_quad(c / n, c % n, k, x)));
            }
        }
    }
    out
}

/// Parses a deformation over one of `models` (matched by name) and registers it.
pub fn parse_deformation_file(text: &str, models: &[FiniteBialgebraModel]) -> Result<TruncatedDeformation, DeformError> {
    let mut name = None;
    let mut base = None;
    let mut order: Option<usize> = None;
    let mut entries = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| DeformError::File { line: ln + 1, message };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "deformation" => name = Some(rest.to_string()),
            "base" => {
                let m = models.iter().find(|m| m.name() == rest).ok_or_else(|| DeformError::UnknownBase(rest.into()))?;
                base = Some(m.clone());
            }
            "order" => order = Some(rest.parse().map_err(|_| bad(format!("bad order `{rest}`")))?),
            "comul" | "mul" => {
                let (deg, quad) = rest.split_once(char::is_whitespace).ok_or_else(|| bad("expected `n (…)`".into()))?;
                let deg: usize = deg.parse().map_err(|_| bad(format!("bad degree `{deg}`")))?;
                if deg == 0 {
                    return Err(bad("degree 0 comes from the base model".into()));
                }
                let (idx, c) = parse_quad(quad, 3).ok_or_else(|| bad(format!("bad entry `{quad}`")))?;
                entries.push((ln + 1, key == "comul", deg, idx, c));
            }
            other => return Err(bad(format!("unknown directive `{other}`"))),
        }
    }
    let missing = |what: &str| DeformError::File { line: 0, message: format!("missing `{what}`") };
    let name = name.ok_or_else(|| missing("deformation"))?;
    let base = base.ok_or_else(|| missing("base"))?;
    let order = order.ok_or_else(|| missing("order"))?;
    let n = base.dim();
    let bm = base.maps();
    let mut comul: Vec<LinMap> = vec![bm.comul[0].clone()];
    let mut mul: Vec<LinMap> = vec![bm.mul[0].clone()];
    comul.resize(order + 1, LinMap::zero(n, n * n));
    mul.resize(order + 1, LinMap::zero(n * n, n));
    for (line, is_comul, deg, idx, c) in entries {
        if deg > order || idx.iter().any(|&i| i >= n) {
            return Err(DeformError::File { line, message: "degree or index out of range".into() });
        }
        let (map, col, row) = if is_comul {
            (&mut comul[deg], idx[0], idx[1] * n + idx[2])
        } else {
            (&mut mul[deg], idx[0] * n + idx[1], idx[2])
        };
        let mut v = map.column(col).clone();
        v.add_at(row, &c);
        map.set_column(col, v);
    }
    TruncatedDeformation::register(name, base, TruncatedSeriesMap::new(comul), TruncatedSeriesMap::new(mul))
}
