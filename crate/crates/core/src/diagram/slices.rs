//! Staircase slicing and canonical printing.

use super::{Diagram, Generator, Kind, Src};

/// One layer of a staircase slicing: `id(left) ⊗ gen ⊗ id(right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    pub left: usize,
    pub gen: Generator,
    pub right: usize,
}

impl Slice {
    pub fn inputs(&self) -> usize {
        self.left + self.gen.arity_in() + self.right
    }

    pub fn outputs(&self) -> usize {
        self.left + self.gen.arity_out() + self.right
    }
}

/// Wire routing produced while slicing; `on_node` receives the node index and
/// the wire position at which it is placed.
fn walk(d: &Diagram, mut on_slice: impl FnMut(Slice, Option<usize>)) {
    let swap = Generator::plain(Kind::Swap);
    let mut wires: Vec<Src> = (0..d.n_in as u16).map(Src::Input).collect();
    let bubble = |wires: &mut Vec<Src>, from: usize, to: usize, on_slice: &mut dyn FnMut(Slice, Option<usize>)| {
        // move wires[from] to index `to` by adjacent swaps
        let mut k = from;
        while k > to {
            wires.swap(k - 1, k);
            on_slice(Slice { left: k - 1, gen: swap, right: wires.len() - k - 1 }, None);
            k -= 1;
        }
        while k < to {
            wires.swap(k, k + 1);
            on_slice(Slice { left: k, gen: swap, right: wires.len() - k - 2 }, None);
            k += 1;
        }
    };
    for (v, node) in d.nodes.iter().enumerate() {
        let ins = node.inputs();
        let pos = |wires: &Vec<Src>, s: Src| wires.iter().position(|&w| w == s).expect("live wire");
        let at = match ins.len() {
            0 => wires.len(),
            1 => pos(&wires, ins[0]),
            _ => {
                let a = pos(&wires, ins[0]);
                let b = pos(&wires, ins[1]);
                if b > a {
                    bubble(&mut wires, b, a + 1, &mut on_slice);
                    a
                } else {
                    bubble(&mut wires, b, a, &mut on_slice);
                    a - 1
                }
            }
        };
        let right = wires.len() - at - ins.len();
        on_slice(Slice { left: at, gen: node.gen, right }, Some(v));
        let outs: Vec<Src> = (0..node.gen.arity_out() as u8).map(|p| Src::Node(v as u16, p)).collect();
        wires.splice(at..at + ins.len(), outs);
    }
    for j in 0..d.outs.len() {
        let k = wires.iter().position(|&w| w == d.outs[j]).expect("output wire");
        bubble(&mut wires, k, j, &mut on_slice);
    }
}

pub(super) fn staircase(d: &Diagram) -> Vec<Slice> {
    let mut out = Vec::new();
    walk(d, |s, _| out.push(s));
    out
}

pub(super) fn width(d: &Diagram) -> usize {
    let mut w = d.n_in.max(d.outs.len());
    walk(d, |s, _| w = w.max(s.inputs()).max(s.outputs()));
    w
}

fn print_slice(s: &Slice) -> String {
    let mut parts = Vec::with_capacity(3);
    if s.left > 0 {
        parts.push(format!("id({})", s.left));
    }
    parts.push(s.gen.to_string());
    if s.right > 0 {
        parts.push(format!("id({})", s.right));
    }
    parts.join(" * ")
}

/// Canonical text: slices joined by ` ; `, or `id(n)` for a bare identity.
pub(super) fn print(d: &Diagram) -> String {
    let slices = staircase(d);
    if slices.is_empty() {
        return format!("id({})", d.n_in);
    }
    slices.iter().map(print_slice).collect::<Vec<_>>().join(" ; ")
}
