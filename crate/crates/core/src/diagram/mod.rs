//! String diagrams over the bialgebra signature.
//!
//! A [`Diagram`] is stored as an open port graph: a list of generator nodes
//! (`mul`, `comul`, `unit`, `counit`), each input port pointing at the wire
//! that feeds it, plus an ordered list of output wires. Swaps and identities
//! never become nodes; they are absorbed into the wiring. This makes the
//! interchange law, `swap ; swap = id(2)` and naturality of the swap hold by
//! construction, and reduces equality of morphisms to equality of canonically
//! numbered graphs.
//!
//! Diagrams read top to bottom: `compose(f, g)` stacks `f` above `g`.

pub(crate) mod canon;
mod slices;

use std::fmt;

use thiserror::Error;

pub use slices::Slice;

/// Default upper bound on the number of parallel wires.
pub const DEFAULT_MAX_WIRES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("arity mismatch: upper diagram has {upper} outputs, lower diagram has {lower} inputs")]
    ArityMismatch { upper: usize, lower: usize },
    #[error("label {label} is only allowed on mul or comul, not {kind}")]
    BadLabel { kind: Kind, label: Label },
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("diagram needs {width} parallel wires, limit is {limit}")]
    TooWide { width: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Mul,
    Comul,
    Unit,
    Counit,
    Swap,
    Id,
}

impl Kind {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Kind::Mul => (2, 1),
            Kind::Comul => (1, 2),
            Kind::Unit => (0, 1),
            Kind::Counit => (1, 0),
            Kind::Swap => (2, 2),
            Kind::Id => (1, 1),
        }
    }

    /// The upside-down generator.
    pub fn dual(self) -> Kind {
        match self {
            Kind::Mul => Kind::Comul,
            Kind::Comul => Kind::Mul,
            Kind::Unit => Kind::Counit,
            Kind::Counit => Kind::Unit,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Mul => "mul",
            Kind::Comul => "comul",
            Kind::Unit => "unit",
            Kind::Counit => "counit",
            Kind::Swap => "swap",
            Kind::Id => "id",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decoration splitting a structure map into its h⁰ part and its h-positive part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    #[default]
    Plain,
    Zero,
    Plus,
}

impl Label {
    pub fn suffix(self) -> &'static str {
        match self {
            Label::Plain => "",
            Label::Zero => "%0",
            Label::Plus => "%+",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Plain => f.write_str("plain"),
            Label::Zero => f.write_str("zero"),
            Label::Plus => f.write_str("plus"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    kind: Kind,
    label: Label,
}

impl Generator {
    pub fn new(kind: Kind, label: Label) -> Result<Self, DiagramError> {
        if label != Label::Plain && !matches!(kind, Kind::Mul | Kind::Comul) {
            return Err(DiagramError::BadLabel { kind, label });
        }
        Ok(Generator { kind, label })
    }

    pub const fn plain(kind: Kind) -> Self {
        Generator { kind, label: Label::Plain }
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn label(self) -> Label {
        self.label
    }

    pub fn arity_in(self) -> usize {
        self.kind.arity().0
    }

    pub fn arity_out(self) -> usize {
        self.kind.arity().1
    }

    pub fn dual(self) -> Generator {
        Generator { kind: self.kind.dual(), label: self.label }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.name(), self.label.suffix())
    }
}

/// Producer end of a wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Src {
    /// Input boundary wire.
    Input(u16),
    /// Output port of a node.
    Node(u16, u8),
}

/// Consumer end of a wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dst {
    Output(u16),
    Node(u16, u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Node {
    pub(crate) gen: Generator,
    pub(crate) ins: [Src; 2],
}

impl Node {
    pub(crate) fn new(gen: Generator, inputs: &[Src]) -> Self {
        let mut ins = [Src::Input(0); 2];
        ins[..inputs.len()].copy_from_slice(inputs);
        Node { gen, ins }
    }

    pub(crate) fn inputs(&self) -> &[Src] {
        &self.ins[..self.gen.arity_in()]
    }
}

/// An immutable string diagram with `inputs()` wires on top and `outputs()` below.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub(crate) n_in: usize,
    pub(crate) nodes: Vec<Node>,
    pub(crate) outs: Vec<Src>,
}

impl Diagram {
    pub fn id(n: usize) -> Diagram {
        Diagram { n_in: n, nodes: Vec::new(), outs: (0..n as u16).map(Src::Input).collect() }
    }

    pub fn swap() -> Diagram {
        Diagram { n_in: 2, nodes: Vec::new(), outs: vec![Src::Input(1), Src::Input(0)] }
    }

    /// Single-generator diagram.
    pub fn generator(gen: Generator) -> Diagram {
        match gen.kind() {
            Kind::Id => Diagram::id(1),
            Kind::Swap => Diagram::swap(),
            _ => {
                let (a_in, a_out) = (gen.arity_in(), gen.arity_out());
                let ins: Vec<Src> = (0..a_in as u16).map(Src::Input).collect();
                Diagram {
                    n_in: a_in,
                    nodes: vec![Node::new(gen, &ins)],
                    outs: (0..a_out as u8).map(|p| Src::Node(0, p)).collect(),
                }
            }
        }
    }

    pub fn mul() -> Diagram {
        Self::generator(Generator::plain(Kind::Mul))
    }

    pub fn comul() -> Diagram {
        Self::generator(Generator::plain(Kind::Comul))
    }

    pub fn unit() -> Diagram {
        Self::generator(Generator::plain(Kind::Unit))
    }

    pub fn counit() -> Diagram {
        Self::generator(Generator::plain(Kind::Counit))
    }

    /// Wire permutation diagram: input `i` is routed to output `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Result<Diagram, DiagramError> {
        let n = perm.len();
        let mut outs = vec![None; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || outs[p].is_some() {
                return Err(DiagramError::Malformed(format!("not a permutation: {perm:?}")));
            }
            outs[p] = Some(Src::Input(i as u16));
        }
        Ok(Diagram { n_in: n, nodes: Vec::new(), outs: outs.into_iter().map(Option::unwrap).collect() })
    }

    /// Builds a diagram from raw parts, validating and canonicalizing it.
    pub(crate) fn from_parts(n_in: usize, nodes: Vec<Node>, outs: Vec<Src>) -> Result<Diagram, DiagramError> {
        let d = Diagram { n_in, nodes, outs };
        d.validate()?;
        Ok(canon::canonicalize(&d).0)
    }

    pub fn inputs(&self) -> usize {
        self.n_in
    }

    pub fn outputs(&self) -> usize {
        self.outs.len()
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.n_in, self.outs.len())
    }

    /// Number of generator nodes (swaps and identities excluded).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nodes.is_empty() && self.outs.iter().enumerate().all(|(i, s)| *s == Src::Input(i as u16))
    }

    /// Generators in canonical order.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.nodes.iter().map(|n| n.gen)
    }

    pub fn count_kind(&self, kind: Kind) -> usize {
        self.nodes.iter().filter(|n| n.gen.kind() == kind).count()
    }

    pub fn count_label(&self, label: Label) -> usize {
        self.nodes.iter().filter(|n| n.gen.label() == label).count()
    }

    /// Vertical stack: `self` on top, `lower` below.
    pub fn compose(&self, lower: &Diagram) -> Result<Diagram, DiagramError> {
        if self.outputs() != lower.inputs() {
            return Err(DiagramError::ArityMismatch { upper: self.outputs(), lower: lower.inputs() });
        }
        let shift = self.nodes.len() as u16;
        let remap = |s: Src| match s {
            Src::Input(i) => self.outs[i as usize],
            Src::Node(n, p) => Src::Node(n + shift, p),
        };
        let mut nodes = self.nodes.clone();
        for node in &lower.nodes {
            let ins: Vec<Src> = node.inputs().iter().map(|&s| remap(s)).collect();
            nodes.push(Node::new(node.gen, &ins));
        }
        let outs = lower.outs.iter().map(|&s| remap(s)).collect();
        Ok(canon::canonicalize(&Diagram { n_in: self.n_in, nodes, outs }).0)
    }

    /// Horizontal juxtaposition: `self`'s wires to the left of `right`'s.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let shift = self.nodes.len() as u16;
        let in_shift = self.n_in as u16;
        let remap = |s: Src| match s {
            Src::Input(i) => Src::Input(i + in_shift),
            Src::Node(n, p) => Src::Node(n + shift, p),
        };
        let mut nodes = self.nodes.clone();
        for node in &right.nodes {
            let ins: Vec<Src> = node.inputs().iter().map(|&s| remap(s)).collect();
            nodes.push(Node::new(node.gen, &ins));
        }
        let mut outs = self.outs.clone();
        outs.extend(right.outs.iter().map(|&s| remap(s)));
        canon::canonicalize(&Diagram { n_in: self.n_in + right.n_in, nodes, outs }).0
    }

    /// Canonical representative modulo the symmetric monoidal axioms.
    ///
    /// Every constructor already returns canonical diagrams, so this is
    /// idempotent; it is exposed for diagrams assembled from raw parts.
    pub fn canonicalize(&self) -> Diagram {
        canon::canonicalize(self).0
    }

    /// Canonical form together with the old-to-new node index map.
    pub(crate) fn canonicalize_tracked(&self) -> (Diagram, Vec<usize>) {
        canon::canonicalize(self)
    }

    /// Upside-down diagram: mul↔comul, unit↔counit, inputs↔outputs.
    pub fn flip(&self) -> Diagram {
        let consumers = self.consumers();
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(v, node)| {
                let ins: Vec<Src> = (0..node.gen.arity_out())
                    .map(|k| match consumers[&Src::Node(v as u16, k as u8)] {
                        Dst::Node(u, q) => Src::Node(u, q),
                        Dst::Output(j) => Src::Input(j),
                    })
                    .collect();
                Node::new(node.gen.dual(), &ins)
            })
            .collect();
        let outs = (0..self.n_in)
            .map(|i| match consumers[&Src::Input(i as u16)] {
                Dst::Node(u, q) => Src::Node(u, q),
                Dst::Output(j) => Src::Input(j),
            })
            .collect();
        canon::canonicalize(&Diagram { n_in: self.outs.len(), nodes, outs }).0
    }

    /// Replaces every labeled generator by its plain version.
    pub fn erase_labels(&self) -> Diagram {
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node { gen: Generator::plain(n.gen.kind()), ins: n.ins })
            .collect();
        canon::canonicalize(&Diagram { n_in: self.n_in, nodes, outs: self.outs.clone() }).0
    }

    /// Map from each wire's producer to its consumer.
    pub(crate) fn consumers(&self) -> std::collections::HashMap<Src, Dst> {
        let mut map = std::collections::HashMap::with_capacity(self.nodes.len() * 2 + self.n_in);
        for (v, node) in self.nodes.iter().enumerate() {
            for (p, &s) in node.inputs().iter().enumerate() {
                map.insert(s, Dst::Node(v as u16, p as u8));
            }
        }
        for (j, &s) in self.outs.iter().enumerate() {
            map.insert(s, Dst::Output(j as u16));
        }
        map
    }

    /// Checks linearity (every wire has one producer and one consumer) and acyclicity.
    pub fn validate(&self) -> Result<(), DiagramError> {
        use std::collections::HashSet;
        let n = self.nodes.len();
        let mut used: HashSet<Src> = HashSet::new();
        let mut check = |s: Src| -> Result<(), DiagramError> {
            match s {
                Src::Input(i) if (i as usize) >= self.n_in => {
                    return Err(DiagramError::Malformed(format!("input wire {i} out of range")))
                }
                Src::Node(v, p) => {
                    if (v as usize) >= n {
                        return Err(DiagramError::Malformed(format!("node {v} out of range")));
                    }
                    if (p as usize) >= self.nodes[v as usize].gen.arity_out() {
                        return Err(DiagramError::Malformed(format!("port {p} out of range on node {v}")));
                    }
                }
                _ => {}
            }
            if !used.insert(s) {
                return Err(DiagramError::Malformed(format!("wire {s:?} consumed twice")));
            }
            Ok(())
        };
        for node in &self.nodes {
            if matches!(node.gen.kind(), Kind::Swap | Kind::Id) {
                return Err(DiagramError::Malformed("swap/id cannot be a node".into()));
            }
            for &s in node.inputs() {
                check(s)?;
            }
        }
        for &s in &self.outs {
            check(s)?;
        }
        let produced = self.n_in + self.nodes.iter().map(|n| n.gen.arity_out()).sum::<usize>();
        if used.len() != produced {
            return Err(DiagramError::Malformed("dangling wire".into()));
        }
        if canon::topological_order(self).is_none() {
            return Err(DiagramError::Malformed("cycle".into()));
        }
        Ok(())
    }

    /// Staircase slicing: one generator (including swaps) per slice.
    pub fn slices(&self) -> Vec<Slice> {
        slices::staircase(self)
    }

    /// Maximum number of parallel wires in the staircase slicing.
    pub fn width(&self) -> usize {
        slices::width(self)
    }

    pub fn check_width(&self, limit: usize) -> Result<(), DiagramError> {
        let width = self.width();
        if width > limit {
            return Err(DiagramError::TooWide { width, limit });
        }
        Ok(())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&slices::print(self))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", slices::print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comul() -> Diagram {
        Diagram::comul()
    }

    #[test]
    fn identity_composition() {
        assert_eq!(Diagram::id(1).compose(&Diagram::id(1)).unwrap(), Diagram::id(1));
        assert_eq!(Diagram::id(1).tensor(&Diagram::id(1)), Diagram::id(2));
    }

    #[test]
    fn arity_mismatch_names_both_counts() {
        let err = comul().compose(&comul()).unwrap_err();
        assert_eq!(err, DiagramError::ArityMismatch { upper: 2, lower: 1 });
        assert!(err.to_string().contains('2') && err.to_string().contains('1'));
    }

    #[test]
    fn q_operator_shape() {
        let q = comul().compose(&Diagram::mul()).unwrap();
        assert_eq!(q.arity(), (1, 1));
        assert_eq!(q.node_count(), 2);
        assert_eq!(q.slices().len(), 2);
    }

    #[test]
    fn double_coproduct_arity() {
        let d = comul().compose(&Diagram::id(1).tensor(&comul())).unwrap();
        assert_eq!(d.arity(), (1, 3));
    }

    #[test]
    fn tensor_arities_add() {
        let d = Diagram::mul().tensor(&comul());
        assert_eq!(d.arity(), (3, 3));
    }

    #[test]
    fn swap_is_involutive() {
        let ss = Diagram::swap().compose(&Diagram::swap()).unwrap();
        assert_eq!(ss, Diagram::id(2));
    }

    #[test]
    fn swap_naturality() {
        // (comul ⊗ id) ; swap-through == swap ; (id ⊗ comul) up to wire routing
        let lhs = comul()
            .tensor(&Diagram::id(1))
            .compose(&Diagram::permutation(&[1, 2, 0]).unwrap())
            .unwrap();
        let rhs = Diagram::swap().compose(&Diagram::id(1).tensor(&comul())).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn interchange_law() {
        let a = Diagram::mul().tensor(&Diagram::id(1)).compose(&Diagram::id(1).tensor(&comul())).unwrap();
        let b = Diagram::id(2)
            .tensor(&comul())
            .compose(&Diagram::mul().tensor(&Diagram::id(2)))
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn labels_only_on_mul_and_comul() {
        assert!(Generator::new(Kind::Comul, Label::Plus).is_ok());
        assert!(matches!(Generator::new(Kind::Unit, Label::Zero), Err(DiagramError::BadLabel { .. })));
    }

    #[test]
    fn flip_is_involutive_and_swaps_arity() {
        let d = comul().compose(&Diagram::id(1).tensor(&comul())).unwrap();
        let f = d.flip();
        assert_eq!(f.arity(), (3, 1));
        assert_eq!(f.count_kind(Kind::Mul), 2);
        assert_eq!(f.flip(), d);
    }

    #[test]
    fn validate_rejects_cycles_and_double_use() {
        let cyc = Diagram {
            n_in: 1,
            nodes: vec![
                Node::new(Generator::plain(Kind::Mul), &[Src::Input(0), Src::Node(1, 1)]),
                Node::new(Generator::plain(Kind::Comul), &[Src::Node(0, 0)]),
            ],
            outs: vec![Src::Node(1, 0)],
        };
        assert!(cyc.validate().is_err());
        let dup = Diagram { n_in: 1, nodes: vec![], outs: vec![Src::Input(0), Src::Input(0)] };
        assert!(dup.validate().is_err());
        let dangling = Diagram { n_in: 2, nodes: vec![], outs: vec![Src::Input(0)] };
        assert!(dangling.validate().is_err());
    }
}
