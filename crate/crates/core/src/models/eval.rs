//! Diagram evaluation by live-wire propagation.
//!
//! The state is a sparse map from (h-degree, values on the currently live
//! wires) to a coefficient. Each node consumes its input wires and appends
//! its output wires; the boundary outputs are read off at the end.

use std::collections::HashMap;

use num_traits::Zero;

use super::{ModelError, Tensor};
use crate::diagram::canon::topological_order;
use crate::diagram::{Diagram, Kind, Label, Src};
use crate::linalg::{LinMap, SparseVec};
use crate::rewrite::LinComb;
use crate::scalar::Scalar;

/// Structure maps of a (possibly deformed) bialgebra. `mul[n]` and
/// `comul[n]` are the h^n components; unit and counit are undeformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    pub dim: usize,
    pub mul: Vec<LinMap>,
    pub comul: Vec<LinMap>,
    pub unit: SparseVec,
    pub counit: SparseVec,
}

impl StructureMaps {
    pub fn check_shapes(&self) -> Result<(), ModelError> {
        let d = self.dim;
        let bad = |what: &str| Err(ModelError::Shape(what.to_string()));
        if self.mul.is_empty() || self.comul.is_empty() {
            return bad("missing h^0 component");
        }
        if self.mul.iter().any(|m| m.dom() != d * d || m.cod() != d) {
            return bad("mul component must map dim² → dim");
        }
        if self.comul.iter().any(|m| m.dom() != d || m.cod() != d * d) {
            return bad("comul component must map dim → dim²");
        }
        if self.unit.iter().chain(self.counit.iter()).any(|(i, _)| i >= d) {
            return bad("unit/counit index out of range");
        }
        Ok(())
    }

    /// Largest h-degree carried by a component.
    pub fn order(&self) -> usize {
        self.mul.len().max(self.comul.len()) - 1
    }
}

type State = HashMap<(u32, Vec<u16>), Scalar>;

fn add(state: &mut State, key: (u32, Vec<u16>), x: Scalar) {
    if x.is_zero() {
        return;
    }
    let e = state.entry(key).or_insert_with(Scalar::zero);
    *e += x;
}

fn components(label: Label, len: usize, order: usize) -> std::ops::Range<usize> {
    let top = len.min(order + 1);
    match label {
        Label::Plain => 0..top,
        Label::Zero => 0..top.min(1),
        Label::Plus => 1.min(top)..top,
    }
}

/// Evaluates `d` on `input`, returning the coefficients of h^0 … h^order.
pub fn evaluate_series(d: &Diagram, maps: &StructureMaps, order: usize, input: &Tensor) -> Result<Vec<Tensor>, ModelError> {
    if input.rank() != d.inputs() {
        return Err(ModelError::Rank { expected: d.inputs(), got: input.rank() });
    }
    if input.dim() != maps.dim {
        return Err(ModelError::Dimension { expected: maps.dim, got: input.dim() });
    }
    let dim = maps.dim;
    let mut live: Vec<Src> = (0..d.inputs() as u16).map(Src::Input).collect();
    let mut state: State = HashMap::new();
    for (k, x) in input.entries() {
        add(&mut state, (0, k.iter().map(|&i| i as u16).collect()), x.clone());
    }
    let topo = topological_order(d).expect("diagrams are acyclic");
    for v in topo {
        let node = &d.nodes[v];
        let gen = node.gen;
        let mut pos: Vec<usize> =
            node.inputs().iter().map(|s| live.iter().position(|l| l == s).expect("input is live")).collect();
        let outs: Vec<Src> = (0..gen.arity_out() as u8).map(|p| Src::Node(v as u16, p)).collect();
        let mut next: State = HashMap::with_capacity(state.len());
        for ((h, vals), x) in state {
            let args: Vec<usize> = pos.iter().map(|&p| vals[p] as usize).collect();
            let mut rest = vals;
            let mut sorted = pos.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            for p in sorted {
                rest.remove(p);
            }
            match gen.kind() {
                Kind::Mul | Kind::Comul => {
                    let (series, col) = if gen.kind() == Kind::Mul {
                        (&maps.mul, args[0] * dim + args[1])
                    } else {
                        (&maps.comul, args[0])
                    };
                    for c in components(gen.label(), series.len(), order) {
                        let hh = h + c as u32;
                        if hh as usize > order {
                            continue;
                        }
                        for (k, y) in series[c].column(col).iter() {
                            let mut key = rest.clone();
                            if gen.kind() == Kind::Mul {
                                key.push(k as u16);
                            } else {
                                key.push((k / dim) as u16);
                                key.push((k % dim) as u16);
                            }
                            add(&mut next, (hh, key), &x * y);
                        }
                    }
                }
                Kind::Unit => {
                    for (k, y) in maps.unit.iter() {
                        let mut key = rest.clone();
                        key.push(k as u16);
                        add(&mut next, (h, key), &x * y);
                    }
                }
                Kind::Counit => {
                    let y = maps.counit.get(args[0]);
                    add(&mut next, (h, rest), &x * &y);
                }
                Kind::Swap | Kind::Id => unreachable!("wiring is not a node"),
            }
        }
        state = next;
        pos.sort_unstable_by(|a, b| b.cmp(a));
        for p in pos {
            live.remove(p);
        }
        live.extend(outs);
    }
    let pick: Vec<usize> = d.outs.iter().map(|s| live.iter().position(|l| l == s).expect("output is live")).collect();
    let mut out = vec![Tensor::zero(dim, d.outputs()); order + 1];
    for ((h, vals), x) in state {
        let key: Vec<usize> = pick.iter().map(|&p| vals[p] as usize).collect();
        out[h as usize].add_at(key, &x);
    }
    Ok(out)
}

/// Evaluates a combination: each term contributes `coeff · h^hdeg · d(input)`.
pub fn evaluate_comb_series(comb: &LinComb, maps: &StructureMaps, order: usize, input: &Tensor) -> Result<Vec<Tensor>, ModelError> {
    let mut out = vec![Tensor::zero(maps.dim, comb.arity().1); order + 1];
    if input.rank() != comb.arity().0 {
        return Err(ModelError::Rank { expected: comb.arity().0, got: input.rank() });
    }
    for t in comb.terms() {
        let shift = t.hdeg as usize;
        if shift > order {
            continue;
        }
        let vals = evaluate_series(&t.diagram, maps, order - shift, input)?;
        let c = Scalar::from_integer(t.coeff.into());
        for (n, v) in vals.iter().enumerate() {
            out[n + shift].add_scaled(v, &c);
        }
    }
    Ok(out)
}
