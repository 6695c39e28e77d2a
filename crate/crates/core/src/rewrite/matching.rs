//! Occurrences of a pattern diagram inside a target, and their replacement.
//!
//! An occurrence maps every pattern node to a distinct target node with the
//! same generator so that internal wires agree, and assigns a target wire to
//! each pattern input. Pattern wires running straight from an input to an
//! output pick any free target wire. The occurrence must be convex: after
//! contracting it to a single vertex the target stays acyclic, which is
//! exactly the condition for the pattern to sit in a slice of the target up
//! to interchange and wire crossings.

use std::collections::VecDeque;

use crate::diagram::canon::{consumer_table, Consumers};
use crate::diagram::{Diagram, Dst, Node, Src};

/// Pattern occurrence: target node per pattern node, target wire per pattern input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub nodes: Vec<u16>,
    pub ins: Vec<Src>,
}

/// All occurrences of `pattern` in `target`, sorted.
pub fn find_occurrences(pattern: &Diagram, target: &Diagram) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let tc = consumer_table(target);
    find_with(pattern, target, &tc, &mut out);
    out.sort();
    out
}

pub(crate) fn find_with(pattern: &Diagram, target: &Diagram, tc: &Consumers, out: &mut Vec<Occurrence>) {
    if pattern.nodes.len() > target.nodes.len() {
        return;
    }
    for g in pattern.generators() {
        if pattern.generators().filter(|&h| h == g).count() > target.generators().filter(|&h| h == g).count() {
            return;
        }
    }
    let pc = consumer_table(pattern);
    let order = connected_order(pattern, &pc);
    let mut assign = vec![u16::MAX; pattern.nodes.len()];
    let mut used = vec![false; target.nodes.len()];
    let mut search = Search { pattern, target, pc: &pc, tc, order: &order, out };
    search.extend(0, &mut assign, &mut used);
}

/// Pattern nodes ordered so that each one after the first of its component
/// is adjacent to an earlier one.
fn connected_order(p: &Diagram, pc: &Consumers) -> Vec<usize> {
    let n = p.nodes.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            let mut nbrs = Vec::new();
            for s in p.nodes[v].inputs() {
                if let Src::Node(u, _) = s {
                    nbrs.push(*u as usize);
                }
            }
            for port in 0..p.nodes[v].gen.arity_out() {
                if let Dst::Node(u, _) = pc.node[v][port] {
                    nbrs.push(u as usize);
                }
            }
            for u in nbrs {
                if !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    pattern: &'a Diagram,
    target: &'a Diagram,
    pc: &'a Consumers,
    tc: &'a Consumers,
    order: &'a [usize],
    out: &'a mut Vec<Occurrence>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize, assign: &mut [u16], used: &mut [bool]) {
        if k == self.order.len() {
            self.finish(assign);
            return;
        }
        let u = self.order[k];
        let gen = self.pattern.nodes[u].gen;
        match self.forced(u, assign) {
            Some(Some(t)) => {
                if !used[t] && self.target.nodes[t].gen == gen && self.consistent(u, t, assign) {
                    assign[u] = t as u16;
                    used[t] = true;
                    self.extend(k + 1, assign, used);
                    used[t] = false;
                    assign[u] = u16::MAX;
                }
            }
            Some(None) => {}
            None => {
                for t in 0..self.target.nodes.len() {
                    if !used[t] && self.target.nodes[t].gen == gen && self.consistent(u, t, assign) {
                        assign[u] = t as u16;
                        used[t] = true;
                        self.extend(k + 1, assign, used);
                        used[t] = false;
                        assign[u] = u16::MAX;
                    }
                }
            }
        }
    }

    /// Candidate dictated by an already assigned neighbour: `Some(None)` when
    /// the neighbour rules out every candidate, `None` when unconstrained.
    fn forced(&self, u: usize, assign: &[u16]) -> Option<Option<usize>> {
        for (q, s) in self.pattern.nodes[u].inputs().iter().enumerate() {
            if let Src::Node(w, p) = *s {
                if assign[w as usize] != u16::MAX {
                    return Some(match self.tc.of(Src::Node(assign[w as usize], p)) {
                        Dst::Node(t, tq) if tq as usize == q => Some(t as usize),
                        _ => None,
                    });
                }
            }
        }
        for p in 0..self.pattern.nodes[u].gen.arity_out() {
            if let Dst::Node(w, q) = self.pc.node[u][p] {
                if assign[w as usize] != u16::MAX {
                    return Some(match self.target.nodes[assign[w as usize] as usize].ins[q as usize] {
                        Src::Node(t, tp) if tp as usize == p => Some(t as usize),
                        _ => None,
                    });
                }
            }
        }
        None
    }

    fn consistent(&self, u: usize, t: usize, assign: &[u16]) -> bool {
        for (q, s) in self.pattern.nodes[u].inputs().iter().enumerate() {
            if let Src::Node(w, p) = *s {
                let aw = assign[w as usize];
                if aw != u16::MAX && self.target.nodes[t].ins[q] != Src::Node(aw, p) {
                    return false;
                }
            }
        }
        for p in 0..self.pattern.nodes[u].gen.arity_out() {
            if let Dst::Node(w, q) = self.pc.node[u][p] {
                let aw = assign[w as usize];
                if aw != u16::MAX && self.target.nodes[aw as usize].ins[q as usize] != Src::Node(t as u16, p as u8) {
                    return false;
                }
            }
        }
        true
    }

    fn finish(&mut self, assign: &[u16]) {
        let (pattern, target) = (self.pattern, self.target);
        let mut in_region = vec![false; target.nodes.len()];
        for &t in assign {
            in_region[t as usize] = true;
        }
        let inside = |s: Src| matches!(s, Src::Node(v, _) if in_region[v as usize]);
        let mut ins = vec![None; pattern.n_in];
        let mut through = Vec::new();
        for i in 0..pattern.n_in {
            match self.pc.input[i] {
                Dst::Node(u, q) => {
                    let s = target.nodes[assign[u as usize] as usize].ins[q as usize];
                    if inside(s) {
                        return;
                    }
                    ins[i] = Some(s);
                }
                Dst::Output(_) => through.push(i),
            }
        }
        for s in &pattern.outs {
            if let Src::Node(u, p) = *s {
                if let Dst::Node(v, _) = self.tc.of(Src::Node(assign[u as usize], p)) {
                    if in_region[v as usize] {
                        return;
                    }
                }
            }
        }
        // wires free for pass-through use
        let mut free: Vec<Src> = Vec::new();
        if !through.is_empty() {
            let all = (0..target.n_in as u16)
                .map(Src::Input)
                .chain(target.nodes.iter().enumerate().flat_map(|(v, n)| {
                    (0..n.gen.arity_out() as u8).map(move |p| Src::Node(v as u16, p))
                }));
            for s in all {
                let consumed_inside = matches!(self.tc.of(s), Dst::Node(v, _) if in_region[v as usize]);
                if !inside(s) && !consumed_inside {
                    free.push(s);
                }
            }
        }
        let mut picked = Vec::with_capacity(through.len());
        self.pick_through(assign, &in_region, &mut ins, &through, &free, &mut picked);
    }

    fn pick_through(
        &mut self,
        assign: &[u16],
        in_region: &[bool],
        ins: &mut Vec<Option<Src>>,
        through: &[usize],
        free: &[Src],
        picked: &mut Vec<Src>,
    ) {
        if picked.len() == through.len() {
            for (k, &i) in through.iter().enumerate() {
                ins[i] = Some(picked[k]);
            }
            let ins: Vec<Src> = ins.iter().map(|s| s.expect("assigned")).collect();
            if convex(self.target, self.tc, in_region, &ins, through) {
                self.out.push(Occurrence { nodes: assign.to_vec(), ins });
            }
            return;
        }
        for &w in free {
            if !picked.contains(&w) {
                picked.push(w);
                self.pick_through(assign, in_region, ins, through, free, picked);
                picked.pop();
            }
        }
    }
}

/// Contracts the occurrence (nodes plus pass-through wires) to one vertex and
/// tests the result for cycles.
fn convex(target: &Diagram, tc: &Consumers, in_region: &[bool], ins: &[Src], through: &[usize]) -> bool {
    let n = target.nodes.len();
    let region = n;
    let c = |v: usize| if in_region[v] { region } else { v };
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (v, node) in target.nodes.iter().enumerate() {
        for s in node.inputs() {
            if let Src::Node(u, _) = s {
                let (a, b) = (c(*u as usize), c(v));
                if a != b {
                    succ[a].push(b);
                }
            }
        }
    }
    for &i in through {
        let w = ins[i];
        if let Src::Node(u, _) = w {
            succ[c(u as usize)].push(region);
        }
        if let Dst::Node(v, _) = tc.of(w) {
            succ[region].push(c(v as usize));
        }
    }
    let mut indeg = vec![0usize; n + 1];
    for list in &succ {
        for &b in list {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..=n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &b in &succ[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    seen == n + 1
}

/// Replaces an occurrence of `pattern` by `replacement` (same arity). Returns
/// the canonical result and the occurrence of `replacement` inside it.
pub fn replace(target: &Diagram, pattern: &Diagram, occ: &Occurrence, replacement: &Diagram) -> (Diagram, Occurrence) {
    debug_assert_eq!(pattern.arity(), replacement.arity());
    let tc = consumer_table(target);
    let mut in_region = vec![false; target.nodes.len()];
    for &t in &occ.nodes {
        in_region[t as usize] = true;
    }
    let mut keep = vec![u16::MAX; target.nodes.len()];
    let mut next = 0u16;
    for v in 0..target.nodes.len() {
        if !in_region[v] {
            keep[v] = next;
            next += 1;
        }
    }
    let base = next;
    let resolve = |s: Src| match s {
        Src::Input(i) => Src::Input(i),
        Src::Node(v, p) => {
            debug_assert!(!in_region[v as usize]);
            Src::Node(keep[v as usize], p)
        }
    };
    let rhs_src = |s: Src| match s {
        Src::Input(i) => resolve(occ.ins[i as usize]),
        Src::Node(u, p) => Src::Node(base + u, p),
    };
    // consumers of the occurrence's outputs get fed by the replacement's outputs
    let mut redirect: Vec<(Dst, Src)> = Vec::with_capacity(pattern.outs.len());
    for (j, s) in pattern.outs.iter().enumerate() {
        let dst = match *s {
            Src::Node(u, p) => tc.of(Src::Node(occ.nodes[u as usize], p)),
            Src::Input(i) => tc.of(occ.ins[i as usize]),
        };
        redirect.push((dst, rhs_src(replacement.outs[j])));
    }
    let feed = |dst: Dst, orig: Src| -> Src {
        redirect.iter().find(|(d, _)| *d == dst).map_or_else(|| resolve(orig), |(_, s)| *s)
    };
    let mut nodes = Vec::with_capacity(target.nodes.len() - occ.nodes.len() + replacement.nodes.len());
    for (v, node) in target.nodes.iter().enumerate() {
        if in_region[v] {
            continue;
        }
        let ins: Vec<Src> =
            node.inputs().iter().enumerate().map(|(q, &s)| feed(Dst::Node(v as u16, q as u8), s)).collect();
        nodes.push(Node::new(node.gen, &ins));
    }
    for node in &replacement.nodes {
        let ins: Vec<Src> = node.inputs().iter().map(|&s| rhs_src(s)).collect();
        nodes.push(Node::new(node.gen, &ins));
    }
    let outs = target.outs.iter().enumerate().map(|(j, &s)| feed(Dst::Output(j as u16), s)).collect();
    let raw = Diagram { n_in: target.n_in, nodes, outs };
    debug_assert!(raw.validate().is_ok(), "replacement produced a malformed diagram");
    let (result, map) = raw.canonicalize_tracked();
    let remap = |s: Src| match s {
        Src::Input(i) => Src::Input(i),
        Src::Node(v, p) => Src::Node(map[v as usize] as u16, p),
    };
    let inverse = Occurrence {
        nodes: (0..replacement.nodes.len()).map(|u| map[base as usize + u] as u16).collect(),
        ins: occ.ins.iter().map(|&s| remap(resolve(s))).collect(),
    };
    (result, inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn d(s: &str) -> Diagram {
        parse(s).unwrap()
    }

    #[test]
    fn counit_pattern_found_once() {
        let pat = d("comul ; counit * id(1)");
        let occ = find_occurrences(&pat, &pat);
        assert_eq!(occ.len(), 1);
        let (res, inv) = replace(&pat, &pat, &occ[0], &Diagram::id(1));
        assert_eq!(res, Diagram::id(1));
        assert_eq!(inv, Occurrence { nodes: vec![], ins: vec![Src::Input(0)] });
    }

    #[test]
    fn identity_pattern_matches_every_wire() {
        let q = d("comul ; mul");
        // the input, the two legs and the output
        assert_eq!(find_occurrences(&Diagram::id(1), &q).len(), 4);
    }

    #[test]
    fn cocommutativity_inside_q() {
        let q = d("comul ; mul");
        let pat = Diagram::comul();
        let occ = find_occurrences(&pat, &q);
        assert_eq!(occ.len(), 1);
        let (res, _) = replace(&q, &pat, &occ[0], &d("comul ; swap"));
        assert_eq!(res, d("comul ; swap ; mul"));
        assert_eq!(res.to_string(), "comul ; swap ; mul");
    }

    #[test]
    fn non_convex_occurrence_rejected() {
        // mul ; comul with the pattern comul ⊗ id ... ; a path leaves and re-enters
        let target = d("comul ; mul");
        // pattern: comul and mul side by side, both consumed/produced at the boundary
        let pattern = d("comul * mul");
        assert!(find_occurrences(&pattern, &target).is_empty());
    }

    #[test]
    fn swapped_inputs_match_commutativity() {
        let target = d("swap ; mul");
        let occ = find_occurrences(&d("swap ; mul"), &target);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].ins, vec![Src::Input(0), Src::Input(1)]);
        let occ2 = find_occurrences(&Diagram::mul(), &target);
        assert_eq!(occ2[0].ins, vec![Src::Input(1), Src::Input(0)]);
        let (res, _) = replace(&target, &d("swap ; mul"), &occ[0], &Diagram::mul());
        assert_eq!(res, Diagram::mul());
    }

    #[test]
    fn replacement_then_inverse_round_trips() {
        let target = d("comul ; id(1) * comul ; mul * id(1)");
        let pat = Diagram::comul();
        for occ in find_occurrences(&pat, &target) {
            let rhs = d("comul ; swap");
            let (res, inv) = replace(&target, &pat, &occ, &rhs);
            assert!(find_occurrences(&rhs, &res).contains(&inv));
            let (back, _) = replace(&res, &rhs, &inv, &pat);
            assert_eq!(back, target);
        }
    }
}
