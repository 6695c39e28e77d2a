//! Canonical node numbering.
//!
//! Nodes reachable from the boundary are ranked by a breadth-first walk that
//! starts at the input wires (in order) and then the output wires (in order),
//! visiting neighbours in port order. Closed components get the rank order of
//! their lexicographically least encoding. The final node order is the
//! topological order that always picks the lowest-ranked ready node, so the
//! result is both a valid evaluation order and invariant under renumbering.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Diagram, Dst, Node, Src};

/// Returns the canonical diagram and, for each old node index, its new index.
pub(super) fn canonicalize(d: &Diagram) -> (Diagram, Vec<usize>) {
    let n = d.nodes.len();
    if n == 0 {
        return (d.clone(), Vec::new());
    }
    let consumers = consumer_table(d);
    let mut rank = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut queue = VecDeque::new();
    for i in 0..d.n_in {
        if let Dst::Node(v, _) = consumers.input[i] {
            queue.push_back(v as usize);
        }
    }
    for s in &d.outs {
        if let Src::Node(v, _) = s {
            queue.push_back(*v as usize);
        }
    }
    bfs(d, &consumers, &mut queue, &mut rank, &mut next);

    if rank.contains(&usize::MAX) {
        rank_closed_components(d, &consumers, &mut rank, &mut next);
    }

    let order = prioritized_topo(d, &rank);
    let mut new_index = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let remap = |s: Src| match s {
        Src::Input(i) => Src::Input(i),
        Src::Node(v, p) => Src::Node(new_index[v as usize] as u16, p),
    };
    let nodes = order
        .iter()
        .map(|&old| {
            let node = &d.nodes[old];
            let ins: Vec<Src> = node.inputs().iter().map(|&s| remap(s)).collect();
            Node::new(node.gen, &ins)
        })
        .collect();
    let outs = d.outs.iter().map(|&s| remap(s)).collect();
    (Diagram { n_in: d.n_in, nodes, outs }, new_index)
}

pub(crate) struct Consumers {
    pub(crate) input: Vec<Dst>,
    pub(crate) node: Vec<[Dst; 2]>,
}

impl Consumers {
    pub(crate) fn of(&self, s: Src) -> Dst {
        match s {
            Src::Input(i) => self.input[i as usize],
            Src::Node(v, p) => self.node[v as usize][p as usize],
        }
    }
}

pub(crate) fn consumer_table(d: &Diagram) -> Consumers {
    let mut input = vec![Dst::Output(u16::MAX); d.n_in];
    let mut node = vec![[Dst::Output(u16::MAX); 2]; d.nodes.len()];
    let mut record = |s: Src, dst: Dst| match s {
        Src::Input(i) => input[i as usize] = dst,
        Src::Node(v, p) => node[v as usize][p as usize] = dst,
    };
    for (v, nd) in d.nodes.iter().enumerate() {
        for (p, &s) in nd.inputs().iter().enumerate() {
            record(s, Dst::Node(v as u16, p as u8));
        }
    }
    for (j, &s) in d.outs.iter().enumerate() {
        record(s, Dst::Output(j as u16));
    }
    Consumers { input, node }
}

fn bfs(d: &Diagram, cons: &Consumers, queue: &mut VecDeque<usize>, rank: &mut [usize], next: &mut usize) {
    while let Some(v) = queue.pop_front() {
        if rank[v] != usize::MAX {
            continue;
        }
        rank[v] = *next;
        *next += 1;
        let node = &d.nodes[v];
        for s in node.inputs() {
            if let Src::Node(u, _) = s {
                if rank[*u as usize] == usize::MAX {
                    queue.push_back(*u as usize);
                }
            }
        }
        for p in 0..node.gen.arity_out() {
            if let Dst::Node(u, _) = cons.node[v][p] {
                if rank[u as usize] == usize::MAX {
                    queue.push_back(u as usize);
                }
            }
        }
    }
}

/// Encodes a component under a given visiting order: per node, its generator
/// and the (rank, port) of each input.
fn encode(d: &Diagram, order: &[usize], local: &[usize]) -> Vec<u32> {
    let mut code = Vec::with_capacity(order.len() * 5);
    for &v in order {
        let node = &d.nodes[v];
        code.push(node.gen.kind() as u32 * 4 + node.gen.label() as u32);
        for s in node.inputs() {
            match s {
                Src::Node(u, p) => {
                    code.push(local[*u as usize] as u32);
                    code.push(*p as u32);
                }
                Src::Input(_) => unreachable!("closed component touches the boundary"),
            }
        }
    }
    code
}

fn rank_closed_components(d: &Diagram, cons: &Consumers, rank: &mut [usize], next: &mut usize) {
    let n = d.nodes.len();
    let mut seen = vec![false; n];
    let mut components: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for start in 0..n {
        if rank[start] != usize::MAX || seen[start] {
            continue;
        }
        // collect component
        let mut comp_rank = vec![usize::MAX; n];
        let mut counter = 0;
        let mut q = VecDeque::from([start]);
        bfs(d, cons, &mut q, &mut comp_rank, &mut counter);
        let members: Vec<usize> = (0..n).filter(|&v| comp_rank[v] != usize::MAX).collect();
        for &v in &members {
            seen[v] = true;
        }
        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        for &s in &members {
            let mut local = vec![usize::MAX; n];
            let mut c = 0;
            let mut q = VecDeque::from([s]);
            bfs(d, cons, &mut q, &mut local, &mut c);
            let mut order = members.clone();
            order.sort_by_key(|&v| local[v]);
            let code = encode(d, &order, &local);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, order));
            }
        }
        components.push(best.expect("nonempty component"));
    }
    components.sort();
    for (_, order) in components {
        for v in order {
            rank[v] = *next;
            *next += 1;
        }
    }
}

fn prioritized_topo(d: &Diagram, rank: &[usize]) -> Vec<usize> {
    let n = d.nodes.len();
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, node) in d.nodes.iter().enumerate() {
        for s in node.inputs() {
            if let Src::Node(u, _) = s {
                indegree[v] += 1;
                succ[*u as usize].push(v);
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).filter(|&v| indegree[v] == 0).map(|v| Reverse((rank[v], v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, v))) = heap.pop() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                heap.push(Reverse((rank[w], w)));
            }
        }
    }
    assert_eq!(order.len(), n, "canonicalize called on a cyclic diagram");
    order
}

/// Plain topological order, or `None` when the node graph has a cycle.
pub(crate) fn topological_order(d: &Diagram) -> Option<Vec<usize>> {
    let n = d.nodes.len();
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, node) in d.nodes.iter().enumerate() {
        for s in node.inputs() {
            if let Src::Node(u, _) = s {
                if (*u as usize) < n {
                    indegree[v] += 1;
                    succ[*u as usize].push(v);
                }
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                stack.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use crate::diagram::{Diagram, Generator, Kind, Node, Src};

    #[test]
    fn renumbering_does_not_change_canonical_form() {
        // comul feeding a mul, listed in both orders
        let a = Diagram {
            n_in: 1,
            nodes: vec![
                Node::new(Generator::plain(Kind::Comul), &[Src::Input(0)]),
                Node::new(Generator::plain(Kind::Mul), &[Src::Node(0, 0), Src::Node(0, 1)]),
            ],
            outs: vec![Src::Node(1, 0)],
        };
        let b = Diagram {
            n_in: 1,
            nodes: vec![
                Node::new(Generator::plain(Kind::Mul), &[Src::Node(1, 0), Src::Node(1, 1)]),
                Node::new(Generator::plain(Kind::Comul), &[Src::Input(0)]),
            ],
            outs: vec![Src::Node(0, 0)],
        };
        assert_eq!(a.canonicalize(), b.canonicalize());
    }

    #[test]
    fn closed_components_are_ordered_canonically() {
        let scalar = Diagram::unit().compose(&Diagram::counit()).unwrap();
        let loop_scalar = Diagram::unit()
            .compose(&Diagram::comul())
            .unwrap()
            .compose(&Diagram::mul())
            .unwrap()
            .compose(&Diagram::counit())
            .unwrap();
        let ab = scalar.tensor(&loop_scalar);
        let ba = loop_scalar.tensor(&scalar);
        assert_eq!(ab, ba);
        assert_eq!(ab.canonicalize(), ab);
    }
}
