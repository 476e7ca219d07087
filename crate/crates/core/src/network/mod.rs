//! Spin networks: trivalent graphs with integer edge labels and a rotation
//! system fixing the planar embedding.
//!
//! Two evaluators are provided. [`SpinNetwork::evaluate_brute`] expands
//! every edge into a symmetrized bundle of strands and averages the loop
//! values over all permutation states. [`SpinNetwork::evaluate_recoupling`]
//! reduces the graph with bubble, triangle and recoupling moves down to
//! closed-form pieces.

mod brute;
mod morse;
mod reduce;

pub use brute::State;
pub use morse::{MorseNetwork, NetStep};

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::numerics::{factorial, Rational};
use crate::recoupling::{check_triple, EdgeLabel, Violation};

/// Default cap on the number of states the brute-force evaluator enumerates.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_STATE_BUDGET`].
pub const STATE_BUDGET_ENV: &str = "SKEINLAB_STATE_BUDGET";

/// Default number of recoupling moves before the reducer gives up.
pub const DEFAULT_MOVE_BUDGET: usize = 1_000;

pub fn state_budget_from_env() -> u64 {
    std::env::var(STATE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub label: EdgeLabel,
    /// A vertex-free closed loop.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// Incident edge indices in counter-clockwise order. A loop edge appears
    /// twice.
    pub ends: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinNetwork {
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    /// `(vertex, slot)` of both ends of each non-closed edge.
    edge_ends: Vec<[(usize, usize); 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexViolation {
    pub vertex: String,
    pub labels: [EdgeLabel; 3],
    pub kind: Violation,
}

impl std::fmt::Display for VertexViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.labels;
        let what = match self.kind {
            Violation::Parity => "parity violation",
            Violation::Inequality => "inequality violation",
        };
        write!(f, "{what} at vertex {} with labels ({a}, {b}, {c})", self.vertex)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Recoupling,
}

/// `(i, j, k)` strands between legs `(a, c)`, `(a, b)` and `(b, c)`.
pub fn vertex_strand_counts(a: EdgeLabel, b: EdgeLabel, c: EdgeLabel) -> Result<(u32, u32, u32)> {
    let t = crate::recoupling::require(a, b, c)?;
    Ok((t.i, t.j, t.k))
}

impl SpinNetwork {
    /// Checks that every non-closed edge has exactly two ends and that closed
    /// edges have none. Admissibility is not checked here; see
    /// [`SpinNetwork::validate`].
    pub fn new(edges: Vec<Edge>, vertices: Vec<Vertex>) -> Result<Self> {
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges.len()];
        for (v, vert) in vertices.iter().enumerate() {
            for (slot, &e) in vert.ends.iter().enumerate() {
                let list = ends.get_mut(e).ok_or_else(|| {
                    Error::Structural(format!("vertex {} references unknown edge {e}", vert.id))
                })?;
                list.push((v, slot));
            }
        }
        let mut edge_ends = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            match (edge.closed, ends[e].as_slice()) {
                (true, []) => edge_ends.push([(usize::MAX, 0); 2]),
                (false, [a, b]) => edge_ends.push([*a, *b]),
                (true, _) => {
                    return Err(Error::Structural(format!(
                        "closed edge {} must not touch a vertex",
                        edge.id
                    )))
                }
                (false, found) => {
                    return Err(Error::Structural(format!(
                        "edge {} has {} ends, expected 2",
                        edge.id,
                        found.len()
                    )))
                }
            }
        }
        Ok(SpinNetwork { edges, vertices, edge_ends })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub(crate) fn edge_ends(&self, e: usize) -> [(usize, usize); 2] {
        self.edge_ends[e]
    }

    pub fn labels_at(&self, v: usize) -> [EdgeLabel; 3] {
        self.vertices[v].ends.map(|e| self.edges[e].label)
    }

    /// Every parity or triangle-inequality violation, by vertex.
    pub fn validate(&self) -> Vec<VertexViolation> {
        (0..self.vertices.len())
            .filter_map(|v| {
                let labels = self.labels_at(v);
                check_triple(labels[0], labels[1], labels[2])
                    .err()
                    .map(|kind| VertexViolation {
                        vertex: self.vertices[v].id.clone(),
                        labels,
                        kind,
                    })
            })
            .collect()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        if let Some(v) = self.validate().into_iter().next() {
            let [a, b, c] = v.labels;
            return Err(Error::Admissibility(a, b, c, v.kind.describe()));
        }
        if !self.is_planar() {
            return Err(Error::Unsupported(
                "rotation system is not planar; vertex routings would need extra crossings".into(),
            ));
        }
        Ok(())
    }

    /// The same network with every cyclic order reversed.
    pub fn reflected(&self) -> SpinNetwork {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { id: v.id.clone(), ends: [v.ends[0], v.ends[2], v.ends[1]] })
            .collect();
        SpinNetwork::new(self.edges.clone(), vertices).expect("same incidences")
    }

    fn twin(&self, v: usize, slot: usize) -> (usize, usize) {
        let e = self.vertices[v].ends[slot];
        let [a, b] = self.edge_ends[e];
        if a == (v, slot) {
            b
        } else {
            a
        }
    }

    /// Number of faces of the embedding fixed by the rotation system.
    pub fn face_count(&self) -> usize {
        let n = self.vertices.len();
        let mut seen = vec![[false; 3]; n];
        let mut faces = 0;
        for v in 0..n {
            for s in 0..3 {
                if seen[v][s] {
                    continue;
                }
                faces += 1;
                let (mut cv, mut cs) = (v, s);
                while !seen[cv][cs] {
                    seen[cv][cs] = true;
                    let (tv, ts) = self.twin(cv, cs);
                    cv = tv;
                    cs = (ts + 1) % 3;
                }
            }
        }
        faces
    }

    fn vertex_components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.closed {
                continue;
            }
            let [(a, _), (b, _)] = self.edge_ends[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Whether the rotation system describes an embedding in the plane
    /// (genus zero on every component).
    pub fn is_planar(&self) -> bool {
        let v = self.vertices.len() as i64;
        let e = self.edges.iter().filter(|e| !e.closed).count() as i64;
        let f = self.face_count() as i64;
        let c = self.vertex_components() as i64;
        v - e + f == 2 * c
    }

    /// `prod(label!)`, the number of states in the resolution.
    pub fn state_count(&self) -> BigUint {
        self.edges
            .iter()
            .map(|e| factorial(e.label).to_biguint().expect("positive"))
            .product()
    }

    pub fn evaluate_brute(&self, budget: u64) -> Result<Rational> {
        brute::evaluate(self, budget)
    }

    pub fn evaluate_recoupling(&self) -> Result<Rational> {
        self.evaluate_recoupling_with_budget(DEFAULT_MOVE_BUDGET)
    }

    pub fn evaluate_recoupling_with_budget(&self, move_budget: usize) -> Result<Rational> {
        reduce::evaluate(self, move_budget)
    }

    /// Recoupling first, brute force when the reducer gives up.
    pub fn evaluate_auto(&self, budget: u64) -> Result<(Rational, Method)> {
        match self.evaluate_recoupling() {
            Ok(v) => Ok((v, Method::Recoupling)),
            Err(Error::ReductionFailure(_)) => {
                self.evaluate_brute(budget).map(|v| (v, Method::Brute))
            }
            Err(e) => Err(e),
        }
    }
}

/// Small builder keyed by string ids, handy for hand-written networks.
#[derive(Default, Debug, Clone)]
pub struct NetworkBuilder {
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    vertices: Vec<(String, [String; 3])>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge(mut self, id: &str, label: EdgeLabel) -> Self {
        self.index.insert(id.to_string(), self.edges.len());
        self.edges.push(Edge { id: id.to_string(), label, closed: false });
        self
    }

    pub fn closed_edge(mut self, id: &str, label: EdgeLabel) -> Self {
        self.index.insert(id.to_string(), self.edges.len());
        self.edges.push(Edge { id: id.to_string(), label, closed: true });
        self
    }

    /// A vertex with edge ends in counter-clockwise order.
    pub fn vertex(mut self, id: &str, ends: [&str; 3]) -> Self {
        self.vertices.push((id.to_string(), ends.map(str::to_string)));
        self
    }

    pub fn build(self) -> Result<SpinNetwork> {
        let vertices = self
            .vertices
            .into_iter()
            .map(|(id, ends)| {
                let mut idx = [0; 3];
                for (slot, name) in ends.iter().enumerate() {
                    idx[slot] = *self
                        .index
                        .get(name)
                        .ok_or_else(|| Error::Structural(format!("unknown edge {name:?}")))?;
                }
                Ok(Vertex { id, ends: idx })
            })
            .collect::<Result<_>>()?;
        SpinNetwork::new(self.edges, vertices)
    }
}

/// Standard small networks.
pub mod library {
    use super::*;

    /// A single closed loop carrying `n` strands.
    pub fn loop_net(n: EdgeLabel) -> SpinNetwork {
        NetworkBuilder::new().closed_edge("o", n).build().unwrap()
    }

    /// Two vertices joined by edges `p`, `q`, `r`.
    pub fn theta_net(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> SpinNetwork {
        NetworkBuilder::new()
            .edge("p", p)
            .edge("q", q)
            .edge("r", r)
            .vertex("u", ["p", "q", "r"])
            .vertex("v", ["p", "r", "q"])
            .build()
            .unwrap()
    }

    /// The tetrahedron `[P Q R; p q r]`: vertices `(p,q,r)`, `(P,Q,r)`,
    /// `(P,q,R)`, `(p,Q,R)`.
    pub fn tet_net(t: &crate::recoupling::TetLabels) -> SpinNetwork {
        let [bp, bq, br] = t.upper;
        let [p, q, r] = t.lower;
        // vertex 0 = (p,q,r) is joined to the other three by p, q, r;
        // vertex 1 = (P,Q,r), vertex 2 = (P,q,R), vertex 3 = (p,Q,R).
        NetworkBuilder::new()
            .edge("p", p) // 0-3
            .edge("q", q) // 0-2
            .edge("r", r) // 0-1
            .edge("P", bp) // 1-2
            .edge("Q", bq) // 1-3
            .edge("R", br) // 2-3
            .vertex("v0", ["r", "q", "p"])
            .vertex("v1", ["r", "Q", "P"])
            .vertex("v2", ["q", "P", "R"])
            .vertex("v3", ["p", "R", "Q"])
            .build()
            .unwrap()
    }

    /// Two triangles `(a1,a2,a3)` and `(b1,b2,b3)` joined by rungs
    /// `c1,c2,c3`.
    pub fn prism_net(a: [EdgeLabel; 3], b: [EdgeLabel; 3], c: [EdgeLabel; 3]) -> SpinNetwork {
        // top triangle u0,u1,u2 with a_k on u_k--u_{k+1}; bottom w0,w1,w2
        // likewise with b_k; rung c_k joins u_k and w_k.
        NetworkBuilder::new()
            .edge("a0", a[0])
            .edge("a1", a[1])
            .edge("a2", a[2])
            .edge("b0", b[0])
            .edge("b1", b[1])
            .edge("b2", b[2])
            .edge("c0", c[0])
            .edge("c1", c[1])
            .edge("c2", c[2])
            .vertex("u0", ["a0", "a2", "c0"])
            .vertex("u1", ["a1", "a0", "c1"])
            .vertex("u2", ["a2", "a1", "c2"])
            .vertex("w0", ["b2", "b0", "c0"])
            .vertex("w1", ["b0", "b1", "c1"])
            .vertex("w2", ["b1", "b2", "c2"])
            .build()
            .unwrap()
    }
}
