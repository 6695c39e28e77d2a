//! Finite Moufang loops given by Cayley tables.
//!
//! Text form:
//! ```text
//! loop C2
//! elements 1 g
//! 0 1
//! 1 0
//! ```

use super::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoufangSide {
    Left,
    Middle,
    Right,
}

impl MoufangSide {
    pub const ALL: [MoufangSide; 3] = [MoufangSide::Left, MoufangSide::Middle, MoufangSide::Right];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoufangLoop {
    pub name: String,
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl MoufangLoop {
    /// Validates the table: Latin square, two-sided identity, and all three
    /// Moufang laws over every triple.
    pub fn new(name: impl Into<String>, labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let n = labels.len();
        let bad = |m: String| Err(ModelError::Loop(m));
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return bad(format!("table must be {n}×{n}"));
        }
        for (i, r) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in r {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return bad(format!("row {i} is not a permutation"));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for r in &rows {
                if std::mem::replace(&mut seen[r[j]], true) {
                    return bad(format!("column {j} is not a permutation"));
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x)) else {
            return bad("no two-sided identity".into());
        };
        let l = MoufangLoop { name: name.into(), labels, table: rows.concat(), identity };
        for side in MoufangSide::ALL {
            if let Some((a, x, y)) = l.moufang_witness(side) {
                return bad(format!("{side:?} Moufang law fails at ({a}, {x}, {y})"));
            }
        }
        Ok(l)
    }

    /// Doubles a signed table on `units` into a plain loop: index `k` is `+u_k`,
    /// index `k + n` is `-u_k`. `signed[i][j] = (k, negative)` gives `u_i u_j`.
    pub fn from_signed(name: &str, units: &[String], signed: &[Vec<(usize, bool)>]) -> Result<Self, ModelError> {
        let n = units.len();
        let mut labels: Vec<String> = units.to_vec();
        labels.extend(units.iter().map(|u| format!("-{u}")));
        let rows = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (k, neg) = signed[a % n][b % n];
                        let flip = (a >= n) ^ (b >= n) ^ neg;
                        k + if flip { n } else { 0 }
                    })
                    .collect()
            })
            .collect();
        MoufangLoop::new(name, labels, rows)
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| if k == 0 { "1".into() } else { format!("g{k}") }).collect();
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        MoufangLoop::new(format!("C{n}"), labels, rows).expect("cyclic groups are loops")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    fn moufang_holds(&self, side: MoufangSide, a: usize, x: usize, y: usize) -> bool {
        let m = |p, q| self.mul(p, q);
        match side {
            MoufangSide::Left => m(a, m(x, m(a, y))) == m(m(m(a, x), a), y),
            MoufangSide::Middle => m(m(a, x), m(y, a)) == m(m(a, m(x, y)), a),
            MoufangSide::Right => m(m(m(x, a), y), a) == m(x, m(a, m(y, a))),
        }
    }

    pub fn moufang_witness(&self, side: MoufangSide) -> Option<(usize, usize, usize)> {
        let n = self.order();
        (0..n * n * n).map(|t| (t / (n * n), t / n % n, t % n)).find(|&(a, x, y)| !self.moufang_holds(side, a, x, y))
    }

    /// First triple with `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        (0..n * n * n)
            .map(|t| (t / (n * n), t / n % n, t % n))
            .find(|&(a, b, c)| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("loop {}\nelements {}\n", self.name, self.labels.join(" "));
        for row in self.table.chunks(self.order()) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |m: &str| ModelError::Loop(m.to_string());
        let name = lines.next().and_then(|l| l.strip_prefix("loop ")).ok_or_else(|| bad("expected `loop NAME`"))?;
        let labels: Vec<String> = lines
            .next()
            .and_then(|l| l.strip_prefix("elements "))
            .ok_or_else(|| bad("expected `elements …`"))?
            .split_whitespace()
            .map(String::from)
            .collect();
        let rows = lines
            .map(|l| l.split_whitespace().map(|c| c.parse::<usize>().map_err(|_| bad("bad table entry"))).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        MoufangLoop::new(name.trim(), labels, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_is_associative() {
        let c = MoufangLoop::cyclic(3);
        assert_eq!(c.associativity_witness(), None);
        assert!(c.is_commutative());
        assert_eq!(MoufangLoop::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_non_loops() {
        assert!(MoufangLoop::new("x", vec!["a".into(), "b".into()], vec![vec![0, 0], vec![1, 1]]).is_err());
        // Latin square without identity
        let rows = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        let err = MoufangLoop::new("x", ["a", "b", "c"].map(String::from).to_vec(), rows).unwrap_err();
        assert_eq!(err, ModelError::Loop("no two-sided identity".into()));
    }

    #[test]
    fn quaternion_group_from_signed_table() {
        // units 1, i, j, k
        let t = |k: usize, neg: bool| (k, neg);
        let signed = vec![
            vec![t(0, false), t(1, false), t(2, false), t(3, false)],
            vec![t(1, false), t(0, true), t(3, false), t(2, true)],
            vec![t(2, false), t(3, true), t(0, true), t(1, false)],
            vec![t(3, false), t(2, false), t(1, true), t(0, true)],
        ];
        let units: Vec<String> = ["1", "i", "j", "k"].map(String::from).to_vec();
        let q8 = MoufangLoop::from_signed("Q8", &units, &signed).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.associativity_witness(), None);
        assert!(!q8.is_commutative());
        assert_eq!(q8.mul(1, 2), 3);
        assert_eq!(q8.mul(2, 1), 7);
    }
}
