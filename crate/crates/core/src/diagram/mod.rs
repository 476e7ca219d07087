//! Closed planar strand diagrams built from cups, caps, crossings and
//! straight strands, with two independent evaluators.
//!
//! Every port is either a *top* port (the strand leaves the node upwards) or
//! a *bottom* port (the strand enters from below), and every wire joins a top
//! port to a bottom port. Port order per node kind:
//!
//! | kind       | ports                                             |
//! |------------|---------------------------------------------------|
//! | `Cup`      | `[left, right]`, both top                         |
//! | `Cap`      | `[left, right]`, both bottom                      |
//! | `Crossing` | `[bottom_left, bottom_right, top_left, top_right]` |
//! | `Through`  | `[bottom, top]`                                   |
//!
//! [`StrandDiagram::contract`] sums the tensor network with a cap reading
//! `[[0,1],[-1,0]]` and a cup reading `[[0,-1],[1,0]]`; crossings are bare
//! index transpositions. [`StrandDiagram::loop_value`] instead counts loops
//! and the crossings each loop touches. The two agree on every diagram that
//! is actually drawn in the plane (for example anything produced by
//! [`MorseDiagram`]); wirings that cannot be drawn without extra crossings
//! only have a meaningful `contract`.

mod contract;
mod morse;

pub use morse::{MorseDiagram, MorseStep};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::numerics::Rational;

pub type PortId = usize;
pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Cup,
    Cap,
    Crossing,
    Through,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
}

impl NodeKind {
    pub fn arity(self) -> usize {
        match self {
            NodeKind::Crossing => 4,
            _ => 2,
        }
    }

    pub fn side(self, slot: usize) -> Side {
        match (self, slot) {
            (NodeKind::Cup, _) => Side::Top,
            (NodeKind::Cap, _) => Side::Bottom,
            (NodeKind::Crossing, 0 | 1) => Side::Bottom,
            (NodeKind::Crossing, _) => Side::Top,
            (NodeKind::Through, 0) => Side::Bottom,
            (NodeKind::Through, _) => Side::Top,
        }
    }

    /// The slot a strand leaves through after entering at `slot`.
    pub fn follow(self, slot: usize) -> usize {
        match self {
            NodeKind::Crossing => 3 - slot,
            _ => 1 - slot,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub ports: Vec<PortId>,
}

/// A closed, fully wired strand diagram. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandDiagram {
    nodes: Vec<Node>,
    partner: Vec<PortId>,
    owner: Vec<(NodeId, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    /// Ports visited in walking order, starting from the smallest.
    pub ports: Vec<PortId>,
    /// Times the loop runs through a crossing (a self-crossing counts twice).
    pub crossing_passes: usize,
    /// Distinct crossings the loop touches (a self-crossing counts once).
    pub crossing_incidence: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDecomposition {
    pub loops: Vec<Loop>,
}

/// Incremental construction of a [`StrandDiagram`].
#[derive(Default, Debug, Clone)]
pub struct DiagramBuilder {
    nodes: Vec<Node>,
    wires: Vec<(PortId, PortId)>,
    next_port: PortId,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node and returns its freshly allocated ports in slot order.
    pub fn node(&mut self, kind: NodeKind) -> Vec<PortId> {
        let ports: Vec<PortId> = (self.next_port..self.next_port + kind.arity()).collect();
        self.next_port += kind.arity();
        self.nodes.push(Node { kind, ports: ports.clone() });
        ports
    }

    pub fn cup(&mut self) -> [PortId; 2] {
        let p = self.node(NodeKind::Cup);
        [p[0], p[1]]
    }

    pub fn cap(&mut self) -> [PortId; 2] {
        let p = self.node(NodeKind::Cap);
        [p[0], p[1]]
    }

    pub fn crossing(&mut self) -> [PortId; 4] {
        let p = self.node(NodeKind::Crossing);
        [p[0], p[1], p[2], p[3]]
    }

    pub fn through(&mut self) -> [PortId; 2] {
        let p = self.node(NodeKind::Through);
        [p[0], p[1]]
    }

    pub fn wire(&mut self, a: PortId, b: PortId) -> &mut Self {
        self.wires.push((a, b));
        self
    }

    pub fn build(self) -> Result<StrandDiagram> {
        StrandDiagram::from_parts(self.nodes, self.next_port, &self.wires)
    }
}

impl StrandDiagram {
    /// Assembles a diagram from nodes over ports `0..port_count` and a list
    /// of wires. Every port must be wired exactly once, top to bottom.
    pub fn from_parts(
        nodes: Vec<Node>,
        port_count: usize,
        wires: &[(PortId, PortId)],
    ) -> Result<Self> {
        let mut owner = vec![None; port_count];
        for (n, node) in nodes.iter().enumerate() {
            if node.ports.len() != node.kind.arity() {
                return Err(Error::Structural(format!(
                    "node {n} ({:?}) has {} ports, expected {}",
                    node.kind,
                    node.ports.len(),
                    node.kind.arity()
                )));
            }
            for (slot, &p) in node.ports.iter().enumerate() {
                let cell = owner
                    .get_mut(p)
                    .ok_or_else(|| Error::Structural(format!("port {p} out of range")))?;
                if cell.is_some() {
                    return Err(Error::Structural(format!("port {p} used by two nodes")));
                }
                *cell = Some((n, slot));
            }
        }
        let owner: Vec<(NodeId, usize)> = owner
            .into_iter()
            .enumerate()
            .map(|(p, o)| o.ok_or_else(|| Error::Structural(format!("port {p} has no node"))))
            .collect::<Result<_>>()?;

        let mut partner = vec![usize::MAX; port_count];
        for &(a, b) in wires {
            if a >= port_count || b >= port_count {
                return Err(Error::Structural(format!("wire ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::Structural(format!("port {a} wired to itself")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Structural(format!("port wired twice in ({a}, {b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(p) = partner.iter().position(|&q| q == usize::MAX) {
            return Err(Error::Structural(format!("diagram is open: port {p} is unwired")));
        }

        let d = StrandDiagram { nodes, partner, owner };
        for &(a, b) in wires {
            if d.side(a) == d.side(b) {
                return Err(Error::Structural(format!(
                    "wire ({a}, {b}) joins two {:?} ports",
                    d.side(a)
                )));
            }
        }
        Ok(d)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn port_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, p: PortId) -> PortId {
        self.partner[p]
    }

    /// Each wire once, as `(smaller, larger)` port pairs.
    pub fn wires(&self) -> Vec<(PortId, PortId)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    pub fn side(&self, p: PortId) -> Side {
        let (n, slot) = self.owner[p];
        self.nodes[n].kind.side(slot)
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Crossing).count()
    }

    fn inner(&self, p: PortId) -> PortId {
        let (n, slot) = self.owner[p];
        let node = &self.nodes[n];
        node.ports[node.kind.follow(slot)]
    }

    pub fn loop_decomposition(&self) -> LoopDecomposition {
        let mut seen = vec![false; self.partner.len()];
        let mut loops = Vec::new();
        for start in 0..self.partner.len() {
            if seen[start] {
                continue;
            }
            let mut ports = Vec::new();
            let mut crossings = BTreeSet::new();
            let mut passes = 0;
            let mut p = start;
            loop {
                // enter the node at p, leave through its inner partner
                let q = self.inner(p);
                seen[p] = true;
                seen[q] = true;
                ports.push(p);
                ports.push(q);
                let (n, _) = self.owner[p];
                if self.nodes[n].kind == NodeKind::Crossing {
                    passes += 1;
                    crossings.insert(n);
                }
                p = self.partner[q];
                if p == start {
                    break;
                }
            }
            loops.push(Loop {
                ports,
                crossing_passes: passes,
                crossing_incidence: crossings.len(),
            });
        }
        LoopDecomposition { loops }
    }

    /// Exact tensor-network value.
    pub fn contract(&self) -> Result<Rational> {
        contract::contract(self).map(Rational::from_integer)
    }

    /// Loop-sign rule: a loop touching an even number of distinct crossings
    /// contributes `-2`, an odd number `+2`.
    pub fn loop_value(&self) -> Rational {
        let dec = self.loop_decomposition();
        let even = dec
            .loops
            .iter()
            .filter(|l| l.crossing_incidence % 2 == 0)
            .count();
        let magnitude = num_bigint::BigInt::from(1) << dec.loops.len();
        let v = Rational::from_integer(magnitude);
        if even % 2 == 0 {
            v
        } else {
            -v
        }
    }

    /// Replaces every crossing by the sum of its two smoothings, both with
    /// coefficient `+1`. The result contains no crossings.
    pub fn skein_resolve(&self) -> Vec<(Rational, StrandDiagram)> {
        let mut terms = vec![(Rational::one(), self.clone())];
        loop {
            let Some(target) = terms[0]
                .1
                .nodes
                .iter()
                .position(|n| n.kind == NodeKind::Crossing)
            else {
                return terms;
            };
            // Every term shares the node layout of its siblings up to the
            // crossing being resolved, so the same index is a crossing in all.
            terms = terms
                .into_iter()
                .flat_map(|(c, d)| {
                    [
                        (c.clone(), d.smooth(target, Smoothing::Vertical)),
                        (c, d.smooth(target, Smoothing::Horizontal)),
                    ]
                })
                .collect();
        }
    }

    fn smooth(&self, node: NodeId, how: Smoothing) -> StrandDiagram {
        let x = &self.nodes[node];
        debug_assert_eq!(x.kind, NodeKind::Crossing);
        let (bl, br, tl, tr) = (x.ports[0], x.ports[1], x.ports[2], x.ports[3]);
        let replacement = match how {
            Smoothing::Vertical => [
                Node { kind: NodeKind::Through, ports: vec![bl, tl] },
                Node { kind: NodeKind::Through, ports: vec![br, tr] },
            ],
            Smoothing::Horizontal => [
                Node { kind: NodeKind::Cap, ports: vec![bl, br] },
                Node { kind: NodeKind::Cup, ports: vec![tl, tr] },
            ],
        };
        let mut nodes = self.nodes.clone();
        let [first, second] = replacement;
        nodes[node] = first;
        nodes.insert(node + 1, second);
        self.with_nodes(nodes)
    }

    fn with_nodes(&self, nodes: Vec<Node>) -> StrandDiagram {
        let mut owner = vec![(0, 0); self.partner.len()];
        for (n, node) in nodes.iter().enumerate() {
            for (slot, &p) in node.ports.iter().enumerate() {
                owner[p] = (n, slot);
            }
        }
        StrandDiagram { nodes, partner: self.partner.clone(), owner }
    }

    /// Inserts a one-crossing kink on the given loop, flipping the sign of
    /// the diagram's value.
    pub fn apply_twist(&self, loop_id: usize) -> Result<StrandDiagram> {
        let dec = self.loop_decomposition();
        let lp = dec
            .loops
            .get(loop_id)
            .ok_or_else(|| Error::Domain(format!("no loop with id {loop_id}")))?;
        // ports alternate (enter, leave); the leave port is wired to the next enter
        let leave = lp.ports[1];
        let (low, high) = match self.side(leave) {
            Side::Top => (leave, self.partner[leave]),
            Side::Bottom => (self.partner[leave], leave),
        };

        let mut nodes = self.nodes.clone();
        let base = self.partner.len();
        let x = [base, base + 1, base + 2, base + 3];
        let cup = [base + 4, base + 5];
        let cap = [base + 6, base + 7];
        nodes.push(Node { kind: NodeKind::Crossing, ports: x.to_vec() });
        nodes.push(Node { kind: NodeKind::Cup, ports: cup.to_vec() });
        nodes.push(Node { kind: NodeKind::Cap, ports: cap.to_vec() });

        let mut wires: Vec<(PortId, PortId)> = self
            .wires()
            .into_iter()
            .filter(|&(a, b)| !((a == low && b == high) || (a == high && b == low)))
            .collect();
        wires.extend([
            (low, x[0]),
            (x[3], cap[0]),
            (cup[1], cap[1]),
            (cup[0], x[1]),
            (x[2], high),
        ]);
        StrandDiagram::from_parts(nodes, base + 8, &wires)
    }
}

#[derive(Clone, Copy)]
enum Smoothing {
    Vertical,
    Horizontal,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> StrandDiagram {
        let mut b = DiagramBuilder::new();
        let cup = b.cup();
        let cap = b.cap();
        b.wire(cup[0], cap[0]).wire(cup[1], cap[1]);
        b.build().unwrap()
    }

    pub(crate) fn figure_eight() -> StrandDiagram {
        let mut b = DiagramBuilder::new();
        let cup = b.cup();
        let x = b.crossing();
        let cap = b.cap();
        b.wire(cup[0], x[0])
            .wire(cup[1], x[1])
            .wire(x[2], cap[0])
            .wire(x[3], cap[1]);
        b.build().unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn circle_and_figure_eight() {
        assert_eq!(circle().contract().unwrap(), r(-2));
        assert_eq!(circle().loop_value(), r(-2));
        assert_eq!(figure_eight().contract().unwrap(), r(2));
        assert_eq!(figure_eight().loop_value(), r(2));
    }

    #[test]
    fn two_circles_crossing_twice() {
        let d = MorseDiagram::new(vec![
            MorseStep::Cup(0),
            MorseStep::Cup(2),
            MorseStep::Cross(1),
            MorseStep::Cross(1),
            MorseStep::Cap(0),
            MorseStep::Cap(0),
        ])
        .unwrap()
        .to_diagram();
        let dec = d.loop_decomposition();
        assert_eq!(dec.loops.len(), 2);
        assert!(dec.loops.iter().all(|l| l.crossing_incidence == 2));
        assert_eq!(d.contract().unwrap(), r(4));
        assert_eq!(d.loop_value(), r(4));
    }

    #[test]
    fn wavy_circle_straightens() {
        let d = MorseDiagram::new(vec![
            MorseStep::Cup(0),
            MorseStep::Cup(2),
            MorseStep::Cap(1),
            MorseStep::Cup(1),
            MorseStep::Cap(0),
            MorseStep::Cap(0),
        ])
        .unwrap()
        .to_diagram();
        assert_eq!(d.loop_decomposition().loops.len(), 1);
        assert_eq!(d.contract().unwrap(), r(-2));
    }

    #[test]
    fn three_disjoint_circles() {
        let d = MorseDiagram::new(vec![
            MorseStep::Cup(0),
            MorseStep::Cup(2),
            MorseStep::Cup(4),
            MorseStep::Cap(0),
            MorseStep::Cap(0),
            MorseStep::Cap(0),
        ])
        .unwrap()
        .to_diagram();
        assert_eq!(d.loop_value(), r(-8));
        assert_eq!(d.contract().unwrap(), r(-8));
    }

    #[test]
    fn incidence_sums_to_twice_crossings() {
        let d = figure_eight();
        let dec = d.loop_decomposition();
        let passes: usize = dec.loops.iter().map(|l| l.crossing_passes).sum();
        assert_eq!(passes, 2 * d.crossing_count());
        assert_eq!(dec.loops[0].crossing_incidence, 1);
    }

    #[test]
    fn open_diagram_is_rejected() {
        let mut b = DiagramBuilder::new();
        let cup = b.cup();
        let cap = b.cap();
        b.wire(cup[0], cap[0]);
        assert!(matches!(b.build(), Err(Error::Structural(_))));
    }

    #[test]
    fn same_side_wire_is_rejected() {
        let mut b = DiagramBuilder::new();
        let c1 = b.cup();
        let c2 = b.cup();
        b.wire(c1[0], c2[0]).wire(c1[1], c2[1]);
        assert!(matches!(b.build(), Err(Error::Structural(_))));
    }

    #[test]
    fn skein_of_crossingless_is_identity() {
        let terms = circle().skein_resolve();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, Rational::one());
        assert_eq!(terms[0].1, circle());
    }

    #[test]
    fn skein_of_figure_eight() {
        let terms = figure_eight().skein_resolve();
        assert_eq!(terms.len(), 2);
        let values: Vec<Rational> = terms.iter().map(|(_, d)| d.contract().unwrap()).collect();
        assert_eq!(values, vec![r(-2), r(4)]);
        assert!(terms.iter().all(|(_, d)| d.crossing_count() == 0));
    }

    #[test]
    fn twists_flip_sign() {
        let c = circle();
        let once = c.apply_twist(0).unwrap();
        assert_eq!(once.contract().unwrap(), r(2));
        assert_eq!(once.loop_value(), r(2));
        let f8 = figure_eight().apply_twist(0).unwrap();
        assert_eq!(f8.contract().unwrap(), r(-2));
        assert_eq!(f8.loop_value(), r(-2));
        let twice = once.apply_twist(0).unwrap();
        assert_eq!(twice.contract().unwrap(), r(-2));
        assert!(matches!(c.apply_twist(3), Err(Error::Domain(_))));
    }
}
