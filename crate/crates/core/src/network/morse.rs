//! Networks drawn bottom to top as a sequence of elementary steps on a row of
//! labelled segments. Such a drawing is planar by construction and can be
//! exploded into a strand diagram for any state.

use super::{brute::State, Edge, SpinNetwork, Vertex};
use crate::diagram::{MorseDiagram, MorseStep, StrandDiagram};
use crate::error::{Error, Result};
use crate::recoupling::{require, EdgeLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetStep {
    /// A new edge bent upward, occupying positions `at` and `at + 1`.
    Cup { at: usize, label: EdgeLabel },
    /// Joins the segments at `at` and `at + 1`, which must carry equal labels.
    Cap { at: usize },
    /// Trivalent vertex joining the segments at `at` and `at + 1` into one.
    Merge { at: usize, label: EdgeLabel },
    /// Trivalent vertex splitting the segment at `at` into two.
    Split { at: usize, left: EdgeLabel, right: EdgeLabel },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseNetwork {
    steps: Vec<NetStep>,
    /// Edge index of every segment, in creation order.
    seg_edge: Vec<usize>,
    labels: Vec<EdgeLabel>,
    /// Segment ids at each vertex, counter-clockwise.
    vertices: Vec<[usize; 3]>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    p[x] = r;
    r
}

impl MorseNetwork {
    pub fn new(steps: Vec<NetStep>) -> Result<Self> {
        // row of segment ids
        let mut row: Vec<usize> = Vec::new();
        let mut seg_label: Vec<EdgeLabel> = Vec::new();
        let mut parent: Vec<usize> = Vec::new();
        let mut vertices = Vec::new();
        let fresh = |label: EdgeLabel, seg_label: &mut Vec<EdgeLabel>, parent: &mut Vec<usize>| {
            let id = seg_label.len();
            seg_label.push(label);
            parent.push(id);
            id
        };
        for (k, step) in steps.iter().enumerate() {
            let bad = || Error::Structural(format!("step {k} ({step:?}) out of range"));
            match *step {
                NetStep::Cup { at, label } => {
                    if at > row.len() {
                        return Err(bad());
                    }
                    let a = fresh(label, &mut seg_label, &mut parent);
                    let b = fresh(label, &mut seg_label, &mut parent);
                    parent[b] = a;
                    row.splice(at..at, [a, b]);
                }
                NetStep::Cap { at } => {
                    if at + 1 >= row.len() {
                        return Err(bad());
                    }
                    let (a, b) = (row[at], row[at + 1]);
                    if seg_label[a] != seg_label[b] {
                        return Err(Error::Structural(format!(
                            "step {k} caps labels {} and {}",
                            seg_label[a], seg_label[b]
                        )));
                    }
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                    row.drain(at..at + 2);
                }
                NetStep::Merge { at, label } => {
                    if at + 1 >= row.len() {
                        return Err(bad());
                    }
                    let (l, r) = (row[at], row[at + 1]);
                    require(label, seg_label[l], seg_label[r])?;
                    let u = fresh(label, &mut seg_label, &mut parent);
                    vertices.push([u, l, r]);
                    row.splice(at..at + 2, [u]);
                }
                NetStep::Split { at, left, right } => {
                    if at >= row.len() {
                        return Err(bad());
                    }
                    let d = row[at];
                    require(seg_label[d], left, right)?;
                    let l = fresh(left, &mut seg_label, &mut parent);
                    let r = fresh(right, &mut seg_label, &mut parent);
                    vertices.push([d, r, l]);
                    row.splice(at..at + 1, [l, r]);
                }
            }
        }
        if !row.is_empty() {
            return Err(Error::Structural(format!("{} segments left open", row.len())));
        }
        // edges numbered by their first segment
        let n = seg_label.len();
        let mut edge_of_root = vec![usize::MAX; n];
        let mut seg_edge = vec![0; n];
        let mut labels = Vec::new();
        for s in 0..n {
            let r = find(&mut parent, s);
            if edge_of_root[r] == usize::MAX {
                edge_of_root[r] = labels.len();
                labels.push(seg_label[s]);
            }
            seg_edge[s] = edge_of_root[r];
        }
        Ok(MorseNetwork { steps, seg_edge, labels, vertices })
    }

    pub fn steps(&self) -> &[NetStep] {
        &self.steps
    }

    pub fn to_network(&self) -> SpinNetwork {
        let mut touched = vec![false; self.labels.len()];
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, segs)| {
                let ends = segs.map(|s| self.seg_edge[s]);
                for &e in &ends {
                    touched[e] = true;
                }
                Vertex { id: format!("v{k}"), ends }
            })
            .collect();
        let edges = self
            .labels
            .iter()
            .enumerate()
            .map(|(e, &label)| Edge { id: format!("e{e}"), label, closed: !touched[e] })
            .collect();
        SpinNetwork::new(edges, vertices).expect("a closed drawing has two ends per edge")
    }

    /// The strand diagram of one state: every edge becomes parallel strands
    /// with the state's permutation drawn as crossings right after the edge
    /// first appears.
    pub fn explode(&self, state: &State) -> Result<StrandDiagram> {
        if state.perms.len() != self.labels.len() {
            return Err(Error::Domain("state has the wrong number of permutations".into()));
        }
        let mut steps = Vec::new();
        let mut row: Vec<(usize, usize)> = Vec::new(); // (segment, width)
        let mut next_seg = 0;
        let mut placed = vec![false; self.labels.len()];
        let start = |row: &[(usize, usize)], at: usize| row[..at].iter().map(|s| s.1).sum::<usize>();
        let mut permute = |seg: usize, p: usize, steps: &mut Vec<MorseStep>| {
            let e = self.seg_edge[seg];
            if placed[e] {
                return;
            }
            placed[e] = true;
            let mut arr = state.perms[e].clone();
            for i in 0..arr.len() {
                for k in 0..arr.len().saturating_sub(1 + i) {
                    if arr[k] > arr[k + 1] {
                        arr.swap(k, k + 1);
                        steps.push(MorseStep::Cross(p + k));
                    }
                }
            }
        };
        for step in &self.steps {
            match *step {
                NetStep::Cup { at, label } => {
                    let p = start(&row, at);
                    let n = label as usize;
                    for k in 0..n {
                        steps.push(MorseStep::Cup(p + k));
                    }
                    permute(next_seg, p, &mut steps);
                    row.splice(at..at, [(next_seg, n), (next_seg + 1, n)]);
                    next_seg += 2;
                }
                NetStep::Cap { at } => {
                    let p = start(&row, at);
                    let n = row[at].1;
                    for k in 0..n {
                        steps.push(MorseStep::Cap(p + n - 1 - k));
                    }
                    row.drain(at..at + 2);
                }
                NetStep::Merge { at, label } => {
                    let p = start(&row, at);
                    let (a, b) = (row[at].1, row[at + 1].1);
                    let j = (a + b - label as usize) / 2;
                    for t in 0..j {
                        steps.push(MorseStep::Cap(p + a - 1 - t));
                    }
                    permute(next_seg, p, &mut steps);
                    row.splice(at..at + 2, [(next_seg, label as usize)]);
                    next_seg += 1;
                }
                NetStep::Split { at, left, right } => {
                    let p = start(&row, at);
                    let c = row[at].1;
                    let (a, b) = (left as usize, right as usize);
                    let j = (a + b - c) / 2;
                    for k in 0..j {
                        steps.push(MorseStep::Cup(p + a - j + k));
                    }
                    permute(next_seg, p, &mut steps);
                    permute(next_seg + 1, p + a, &mut steps);
                    row.splice(at..at + 1, [(next_seg, a), (next_seg + 1, b)]);
                    next_seg += 2;
                }
            }
        }
        Ok(MorseDiagram::new(steps)?.to_diagram())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use crate::recoupling::theta;
    use NetStep::*;

    fn theta_drawing(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> MorseNetwork {
        // a cup of p split into (q, r) and merged back
        MorseNetwork::new(vec![
            Cup { at: 0, label: p },
            Split { at: 1, left: q, right: r },
            Merge { at: 1, label: p },
            Cap { at: 0 },
        ])
        .unwrap()
    }

    #[test]
    fn converts_to_a_planar_theta() {
        let net = theta_drawing(2, 1, 1).to_network();
        assert_eq!(net.vertices().len(), 2);
        assert_eq!(net.edges().len(), 3);
        assert!(net.is_planar());
        assert_eq!(net.evaluate_brute(100).unwrap(), theta(2, 1, 1).unwrap());
    }

    #[test]
    fn exploded_states_average_to_the_network_value() {
        let m = theta_drawing(2, 2, 2);
        let net = m.to_network();
        let states: Vec<State> = net.resolve(1000).unwrap().collect();
        let sum: Rational = states.iter().map(|s| m.explode(s).unwrap().contract().unwrap()).sum();
        let avg = sum / Rational::from(states.len() as i64);
        assert_eq!(avg, net.evaluate_brute(1000).unwrap());
        for s in &states {
            assert_eq!(m.explode(s).unwrap().contract().unwrap(), net.state_value(s).unwrap());
        }
    }

    #[test]
    fn rejects_bad_drawings() {
        assert!(MorseNetwork::new(vec![Cup { at: 0, label: 1 }]).is_err());
        assert!(MorseNetwork::new(vec![
            Cup { at: 0, label: 1 },
            Cup { at: 2, label: 2 },
            Cap { at: 1 },
        ])
        .is_err());
        assert!(MorseNetwork::new(vec![
            Cup { at: 0, label: 1 },
            Split { at: 0, left: 1, right: 1 },
        ])
        .is_err());
    }
}
