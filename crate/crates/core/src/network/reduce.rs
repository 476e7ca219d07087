//! Graphical reduction of planar networks. The graph is kept as darts with a
//! counter-clockwise rotation at each vertex; faces are orbits of
//! `d -> next(twin(d))`.
//!
//! Each pass applies the first rule that fits:
//! zero edges are erased, closed loops and theta components are evaluated,
//! a labelled bridge makes the value vanish, bubbles and triangles collapse
//! with a scalar, and otherwise one edge of the smallest face is recoupled.

use super::SpinNetwork;
use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::recoupling::{admissible, delta, sixj, tet, theta, EdgeLabel, TetLabels};

#[derive(Clone, Debug)]
struct Graph {
    /// Vertex of each dart; `usize::MAX` once removed.
    dart_vertex: Vec<usize>,
    dart_edge: Vec<usize>,
    /// `(label, [d0, d1])`, `None` once removed.
    edges: Vec<Option<(EdgeLabel, [usize; 2])>>,
    /// Counter-clockwise darts, `None` once removed.
    rot: Vec<Option<Vec<usize>>>,
    /// Labels of loops that lost their vertices.
    closed: Vec<EdgeLabel>,
}

impl Graph {
    fn from_network(net: &SpinNetwork) -> Graph {
        let nv = net.vertices().len();
        let mut dart_vertex = Vec::with_capacity(3 * nv);
        let mut dart_edge = Vec::with_capacity(3 * nv);
        let mut rot = Vec::with_capacity(nv);
        let mut edges: Vec<Option<(EdgeLabel, [usize; 2])>> = vec![None; net.edges().len()];
        let mut closed = Vec::new();
        for (v, vert) in net.vertices().iter().enumerate() {
            rot.push(Some((3 * v..3 * v + 3).collect()));
            for &e in &vert.ends {
                dart_vertex.push(v);
                dart_edge.push(e);
            }
        }
        for (e, edge) in net.edges().iter().enumerate() {
            if edge.closed {
                closed.push(edge.label);
                continue;
            }
            let [(v0, s0), (v1, s1)] = net.edge_ends(e);
            edges[e] = Some((edge.label, [3 * v0 + s0, 3 * v1 + s1]));
        }
        Graph { dart_vertex, dart_edge, edges, rot, closed }
    }

    fn label(&self, d: usize) -> EdgeLabel {
        self.edges[self.dart_edge[d]].expect("live edge").0
    }

    fn twin(&self, d: usize) -> usize {
        let [a, b] = self.edges[self.dart_edge[d]].expect("live edge").1;
        if a == d {
            b
        } else {
            a
        }
    }

    fn next(&self, d: usize) -> usize {
        let r = self.rot[self.dart_vertex[d]].as_ref().expect("live vertex");
        let i = r.iter().position(|&x| x == d).expect("dart at its vertex");
        r[(i + 1) % r.len()]
    }

    fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rot.len()).filter(|&v| self.rot[v].is_some())
    }

    fn live_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].is_some())
    }

    fn remove_dart(&mut self, d: usize) {
        let v = self.dart_vertex[d];
        if let Some(r) = self.rot[v].as_mut() {
            r.retain(|&x| x != d);
        }
        self.dart_vertex[d] = usize::MAX;
    }

    /// Erases zero edges and splices the resulting two-valent vertices.
    fn normalize(&mut self) {
        let zeros: Vec<usize> = self.live_edges().filter(|&e| self.edges[e].unwrap().0 == 0).collect();
        for e in zeros {
            let [a, b] = self.edges[e].take().unwrap().1;
            self.remove_dart(a);
            self.remove_dart(b);
        }
        for v in 0..self.rot.len() {
            let Some(r) = self.rot[v].clone() else { continue };
            match r.len() {
                3 => {}
                0 => self.rot[v] = None,
                2 => {
                    let (d1, d2) = (r[0], r[1]);
                    let (e1, e2) = (self.dart_edge[d1], self.dart_edge[d2]);
                    self.rot[v] = None;
                    self.dart_vertex[d1] = usize::MAX;
                    self.dart_vertex[d2] = usize::MAX;
                    if e1 == e2 {
                        let (label, _) = self.edges[e1].take().unwrap();
                        self.closed.push(label);
                        continue;
                    }
                    let (f1, f2) = (self.twin(d1), self.twin(d2));
                    let label = self.edges[e1].unwrap().0;
                    self.edges[e2] = None;
                    self.edges[e1] = Some((label, [f1, f2]));
                    self.dart_edge[f2] = e1;
                }
                _ => unreachable!("a vertex keeps one edge only when it is zero"),
            }
        }
    }

    /// Vertex sets of connected components.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.rot.len()];
        let mut out = Vec::new();
        for s in self.live_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &d in self.rot[v].as_ref().unwrap() {
                    let w = self.dart_vertex[self.twin(d)];
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Copy keeping only the given vertices and the edges between them.
    fn restricted(&self, keep: &[usize]) -> Graph {
        let mut g = self.clone();
        g.closed.clear();
        let mut inside = vec![false; self.rot.len()];
        for &v in keep {
            inside[v] = true;
        }
        for (r, &kept) in g.rot.iter_mut().zip(&inside) {
            if !kept {
                *r = None;
            }
        }
        for e in 0..g.edges.len() {
            if let Some((_, [a, _])) = g.edges[e] {
                if !inside[g.dart_vertex[a]] {
                    g.edges[e] = None;
                }
            }
        }
        g
    }

    fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_vertex.len()];
        let mut faces = Vec::new();
        for v in self.live_vertices() {
            for &d in self.rot[v].as_ref().unwrap() {
                if seen[d] {
                    continue;
                }
                let mut face = Vec::new();
                let mut c = d;
                while !seen[c] {
                    seen[c] = true;
                    face.push(c);
                    c = self.next(self.twin(c));
                }
                faces.push(face);
            }
        }
        faces
    }

    fn third(&self, v: usize, not: [usize; 2]) -> usize {
        *self.rot[v]
            .as_ref()
            .unwrap()
            .iter()
            .find(|d| !not.contains(d))
            .expect("trivalent vertex")
    }

    /// Collapses the 2-gon whose face darts are `d1` (u to v) and `d2`
    /// (v to u). Returns the scalar, zero when the legs disagree.
    fn collapse_bubble(&mut self, d1: usize, d2: usize) -> Result<Rational> {
        let (u, v) = (self.dart_vertex[d1], self.dart_vertex[d2]);
        let cu = self.third(u, [d1, self.twin(d2)]);
        let cv = self.third(v, [d2, self.twin(d1)]);
        let (a, b) = (self.label(d1), self.label(d2));
        let (c, d) = (self.label(cu), self.label(cv));
        if c != d {
            return Ok(Rational::zero());
        }
        let factor = theta(a, b, c)?.checked_div(&delta(c))?;
        let (fu, fv) = (self.twin(cu), self.twin(cv));
        let (ecu, ecv) = (self.dart_edge[cu], self.dart_edge[cv]);
        self.edges[self.dart_edge[d1]] = None;
        self.edges[self.dart_edge[d2]] = None;
        self.edges[ecv] = None;
        self.edges[ecu] = Some((c, [fu, fv]));
        self.dart_edge[fv] = ecu;
        self.rot[u] = None;
        self.rot[v] = None;
        Ok(factor)
    }

    /// Collapses the triangle with face darts `d1` (u to v), `d2` (v to w),
    /// `d3` (w to u) to a single vertex.
    fn collapse_triangle(&mut self, d1: usize, d2: usize, d3: usize) -> Result<Rational> {
        let (u, v, w) = (self.dart_vertex[d1], self.dart_vertex[d2], self.dart_vertex[d3]);
        let lu = self.third(u, [d1, self.twin(d3)]);
        let lv = self.third(v, [d2, self.twin(d1)]);
        let lw = self.third(w, [d3, self.twin(d2)]);
        let (a, b, c) = (self.label(lu), self.label(lv), self.label(lw));
        let (x, y, z) = (self.label(d1), self.label(d2), self.label(d3));
        if admissible(a, b, c).is_none() {
            return Ok(Rational::zero());
        }
        let t = TetLabels::new(y, z, x, a, b, c);
        let factor = tet(&t)?.checked_div(&theta(a, b, c)?)?;
        for d in [d1, d2, d3] {
            self.edges[self.dart_edge[d]] = None;
        }
        self.rot[v] = None;
        self.rot[w] = None;
        self.rot[u] = Some(vec![lu, lw, lv]);
        for d in [lu, lv, lw] {
            self.dart_vertex[d] = u;
        }
        Ok(factor)
    }

    /// Whitehead move on the edge of dart `du`. Returns the new label
    /// range with coefficients; `self` is left with the new rotations and the
    /// edge label must be set per branch.
    fn recouple(&mut self, du: usize) -> Result<Vec<(EdgeLabel, Rational)>> {
        let dv = self.twin(du);
        let (u, v) = (self.dart_vertex[du], self.dart_vertex[dv]);
        let x1 = self.next(du);
        let x2 = self.next(x1);
        let y1 = self.next(dv);
        let y2 = self.next(y1);
        let (a, b, c, d) = (self.label(x1), self.label(x2), self.label(y1), self.label(y2));
        let j = self.label(du);
        let mut branches = Vec::new();
        let lo = b.abs_diff(c).max(a.abs_diff(d));
        let hi = (b + c).min(a + d);
        let mut i = lo;
        while i <= hi {
            if admissible(b, c, i).is_some() && admissible(a, d, i).is_some() {
                let coef = sixj(a, b, i, c, d, j)?;
                if !coef.is_zero() {
                    branches.push((i, coef));
                }
            }
            i += 1;
        }
        self.rot[u] = Some(vec![du, x2, y1]);
        self.rot[v] = Some(vec![dv, y2, x1]);
        self.dart_vertex[y1] = u;
        self.dart_vertex[x1] = v;
        Ok(branches)
    }

    fn set_label(&mut self, d: usize, label: EdgeLabel) {
        let e = self.dart_edge[d];
        if let Some((l, _)) = self.edges[e].as_mut() {
            *l = label;
        }
    }
}

pub(super) fn evaluate(net: &SpinNetwork, move_budget: usize) -> Result<Rational> {
    net.require_valid()?;
    let mut moves = 0usize;
    eval(Graph::from_network(net), move_budget, &mut moves)
}

fn eval(mut g: Graph, budget: usize, moves: &mut usize) -> Result<Rational> {
    let mut factor = Rational::one();
    loop {
        g.normalize();
        for l in g.closed.drain(..) {
            factor = factor * delta(l);
        }
        let comps = g.components();
        match comps.len() {
            0 => return Ok(factor),
            1 => {}
            _ => {
                for c in comps {
                    let sub = g.restricted(&c);
                    factor = factor * eval(sub, budget, moves)?;
                    if factor.is_zero() {
                        return Ok(factor);
                    }
                }
                return Ok(factor);
            }
        }
        if factor.is_zero() {
            return Ok(factor);
        }

        let faces = g.faces();
        let mut face_of = vec![usize::MAX; g.dart_vertex.len()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = i;
            }
        }
        // labelled bridge: both sides of an edge lie on one face
        for e in g.live_edges() {
            let (label, [a, b]) = g.edges[e].unwrap();
            if label > 0 && face_of[a] == face_of[b] {
                return Ok(Rational::zero());
            }
        }

        let verts: Vec<usize> = g.live_vertices().collect();
        if verts.len() == 2 {
            // three parallel edges, since bridges are gone
            let labels: Vec<EdgeLabel> =
                g.rot[verts[0]].as_ref().unwrap().iter().map(|&d| g.label(d)).collect();
            return Ok(factor * theta(labels[0], labels[1], labels[2])?);
        }

        if let Some(f) = faces.iter().find(|f| {
            f.len() == 2 && g.dart_vertex[f[0]] != g.dart_vertex[f[1]]
        }) {
            let (d1, d2) = (f[0], f[1]);
            factor = factor * g.collapse_bubble(d1, d2)?;
            if factor.is_zero() {
                return Ok(factor);
            }
            continue;
        }

        let triangle = faces.iter().find(|f| {
            if f.len() != 3 {
                return false;
            }
            let vs = [g.dart_vertex[f[0]], g.dart_vertex[f[1]], g.dart_vertex[f[2]]];
            if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
                return false;
            }
            let legs = [
                g.third(vs[0], [f[0], g.twin(f[2])]),
                g.third(vs[1], [f[1], g.twin(f[0])]),
                g.third(vs[2], [f[2], g.twin(f[1])]),
            ];
            let mut es: Vec<usize> =
                f.iter().chain(legs.iter()).map(|&d| g.dart_edge[d]).collect();
            es.sort_unstable();
            es.dedup();
            es.len() == 6
        });
        if let Some(f) = triangle {
            let (d1, d2, d3) = (f[0], f[1], f[2]);
            factor = factor * g.collapse_triangle(d1, d2, d3)?;
            if factor.is_zero() {
                return Ok(factor);
            }
            continue;
        }

        // recouple an edge of the smallest face with at least four sides
        let target = faces
            .iter()
            .filter(|f| f.len() >= 3)
            .min_by_key(|f| f.len())
            .and_then(|f| {
                f.iter().copied().find(|&d| {
                    let t = g.twin(d);
                    g.dart_vertex[d] != g.dart_vertex[t]
                })
            })
            .ok_or_else(|| Error::ReductionFailure("no face admits a recoupling move".into()))?;
        *moves += 1;
        if *moves > budget {
            return Err(Error::ReductionFailure(format!(
                "move budget of {budget} recouplings exhausted"
            )));
        }
        let mut next = g.clone();
        let branches = next.recouple(target)?;
        let mut total = Rational::zero();
        for (label, coef) in branches {
            let mut branch = next.clone();
            branch.set_label(target, label);
            total += coef * eval(branch, budget, moves)?;
        }
        return Ok(factor * total);
    }
}
