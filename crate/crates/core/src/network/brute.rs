//! Brute-force state sum. Each edge labelled `n` becomes `n` parallel strands
//! joined through a permutation; each vertex routes its strands without
//! crossings. The value is the average over all permutation states of the
//! product of loop values.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::SpinNetwork;
use crate::error::{Error, Result};
use crate::numerics::{factorial, Rational};

/// One permutation per edge, in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub perms: Vec<Vec<u32>>,
}

fn all_perms(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn inversions(p: &[u32]) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                v.push((a as u32, b as u32));
            }
        }
    }
    v
}

/// Precomputed strand layout. Points are strand ends at edge ends: point
/// `base[e][side] + t` is strand `t` of edge `e` at end `side`. A closed edge
/// only has side 0.
pub(crate) struct Layout {
    base: Vec<[usize; 2]>,
    labels: Vec<usize>,
    closed: Vec<bool>,
    /// Fixed partner of each point through its vertex (closed edges: unused).
    vertex_partner: Vec<usize>,
    owner: Vec<usize>,
    points: usize,
}

impl Layout {
    pub(crate) fn new(net: &SpinNetwork) -> Layout {
        let mut base = Vec::with_capacity(net.edges().len());
        let mut points = 0;
        for e in net.edges() {
            let n = e.label as usize;
            if e.closed {
                base.push([points, points]);
                points += n;
            } else {
                base.push([points, points + n]);
                points += 2 * n;
            }
        }
        let labels: Vec<usize> = net.edges().iter().map(|e| e.label as usize).collect();
        let closed: Vec<bool> = net.edges().iter().map(|e| e.closed).collect();

        // point of strand t at the end of edge e sitting on (vertex, slot)
        let point_at = |v: usize, slot: usize, t: usize| {
            let e = net.vertices()[v].ends[slot];
            let ends = net.edge_ends(e);
            let side = if ends[0] == (v, slot) { 0 } else { 1 };
            base[e][side] + t
        };

        let mut owner = Vec::with_capacity(points);
        for (e, &n) in labels.iter().enumerate() {
            let w = if closed[e] { n } else { 2 * n };
            owner.extend(std::iter::repeat_n(e, w));
        }
        let mut vertex_partner = vec![usize::MAX; points];
        for v in 0..net.vertices().len() {
            let n = net.labels_at(v).map(|x| x as usize);
            for s in 0..3 {
                let (a, b, c) = (s, (s + 1) % 3, (s + 2) % 3);
                // strands shared by consecutive slots a and b
                let shared = (n[a] + n[b] - n[c]) / 2;
                for t in 0..shared {
                    let p = point_at(v, a, n[a] - 1 - t);
                    let q = point_at(v, b, t);
                    vertex_partner[p] = q;
                    vertex_partner[q] = p;
                }
            }
        }
        Layout { base, labels, closed, vertex_partner, owner, points }
    }

    /// Loop count and, per loop, the number of distinct crossings it touches.
    fn loops(&self, perms: &[&[u32]], inv: &[&[(u32, u32)]], scratch: &mut Vec<usize>) -> (usize, Vec<usize>) {
        let edge_partner = |p: usize| -> usize {
            // locate the edge owning p
            let e = self.owner(p);
            let n = self.labels[e];
            let [b0, b1] = self.base[e];
            let sigma = perms[e];
            if self.closed[e] {
                b0 + sigma[p - b0] as usize
            } else if p < b1 {
                b1 + (n - 1 - sigma[p - b0] as usize)
            } else {
                // inverse: end1 strand u came from t with n-1-sigma(t) = u
                let u = p - b1;
                let target = (n - 1 - u) as u32;
                b0 + sigma.iter().position(|&x| x == target).unwrap()
            }
        };

        scratch.clear();
        scratch.resize(self.points, usize::MAX);
        let mut count = 0;
        for start in 0..self.points {
            if scratch[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let e = self.owner(start);
            if self.closed[e] {
                let mut p = start;
                while scratch[p] == usize::MAX {
                    scratch[p] = id;
                    p = edge_partner(p);
                }
                continue;
            }
            let mut p = start;
            loop {
                scratch[p] = id;
                let q = edge_partner(p);
                scratch[q] = id;
                let r = self.vertex_partner[q];
                if scratch[r] != usize::MAX {
                    break;
                }
                p = r;
            }
        }

        let mut incidence = vec![0usize; count];
        for (e, pairs) in inv.iter().enumerate() {
            let b0 = self.base[e][0];
            for &(s, t) in pairs.iter() {
                let la = scratch[b0 + s as usize];
                let lb = scratch[b0 + t as usize];
                incidence[la] += 1;
                if lb != la {
                    incidence[lb] += 1;
                }
            }
        }
        (count, incidence)
    }

    fn owner(&self, p: usize) -> usize {
        self.owner[p]
    }
}

/// Signed `2^loops` product of one state.
fn state_term(incidence: &[usize]) -> (bool, usize) {
    let negatives = incidence.iter().filter(|&&c| c % 2 == 0).count();
    (negatives % 2 == 1, incidence.len())
}

pub(crate) fn check_budget(net: &SpinNetwork, budget: u64) -> Result<u64> {
    let states = net.state_count();
    match states.to_u64() {
        Some(s) if s <= budget => Ok(s),
        _ => Err(Error::Budget { states, budget }),
    }
}

impl SpinNetwork {
    /// All states, after checking the count against `budget`.
    pub fn resolve(&self, budget: u64) -> Result<impl Iterator<Item = State> + '_> {
        self.require_valid()?;
        let total = check_budget(self, budget)?;
        let tables: Vec<Vec<Vec<u32>>> =
            self.edges().iter().map(|e| all_perms(e.label as usize)).collect();
        Ok((0..total).map(move |idx| State { perms: decode(&tables, idx) }))
    }

    /// Product of loop values of a single state (before averaging).
    pub fn state_value(&self, state: &State) -> Result<Rational> {
        self.require_valid()?;
        if state.perms.len() != self.edges().len() {
            return Err(Error::Domain("state has the wrong number of permutations".into()));
        }
        for (p, e) in state.perms.iter().zip(self.edges()) {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..e.label).collect::<Vec<_>>() {
                return Err(Error::Domain(format!("not a permutation of {} strands: {p:?}", e.label)));
            }
        }
        let layout = Layout::new(self);
        let perms: Vec<&[u32]> = state.perms.iter().map(|p| p.as_slice()).collect();
        let inv_owned: Vec<Vec<(u32, u32)>> = state.perms.iter().map(|p| inversions(p)).collect();
        let inv: Vec<&[(u32, u32)]> = inv_owned.iter().map(|v| v.as_slice()).collect();
        let (_, incidence) = layout.loops(&perms, &inv, &mut Vec::new());
        let (neg, loops) = state_term(&incidence);
        let mag = BigInt::from(1) << loops;
        Ok(Rational::from(if neg { -mag } else { mag }))
    }
}

fn decode(tables: &[Vec<Vec<u32>>], mut idx: u64) -> Vec<Vec<u32>> {
    tables
        .iter()
        .map(|t| {
            let n = t.len() as u64;
            let d = idx % n;
            idx /= n;
            t[d as usize].clone()
        })
        .collect()
}

const CHUNK: u64 = 4096;

pub(super) fn evaluate(net: &SpinNetwork, budget: u64) -> Result<Rational> {
    net.require_valid()?;
    let total = check_budget(net, budget)?;
    let layout = Layout::new(net);
    let tables: Vec<Vec<Vec<u32>>> =
        net.edges().iter().map(|e| all_perms(e.label as usize)).collect();
    let inv_tables: Vec<Vec<Vec<(u32, u32)>>> = tables
        .iter()
        .map(|t| t.iter().map(|p| inversions(p)).collect())
        .collect();
    let radices: Vec<usize> = tables.iter().map(|t| t.len()).collect();

    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<BigInt> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            // odometer digits of `start`
            let mut digits = Vec::with_capacity(radices.len());
            let mut rest = start;
            for &r in &radices {
                digits.push((rest % r as u64) as usize);
                rest /= r as u64;
            }
            let mut scratch = Vec::new();
            let mut acc = BigInt::from(0);
            let mut small: i128 = 0;
            for _ in start..end {
                let perms: Vec<&[u32]> =
                    digits.iter().zip(&tables).map(|(&d, t)| t[d].as_slice()).collect();
                let inv: Vec<&[(u32, u32)]> =
                    digits.iter().zip(&inv_tables).map(|(&d, t)| t[d].as_slice()).collect();
                let (_, incidence) = layout.loops(&perms, &inv, &mut scratch);
                let (neg, loops) = state_term(&incidence);
                if loops < 100 {
                    let mag = 1i128 << loops;
                    small += if neg { -mag } else { mag };
                    if small.abs() > (1i128 << 120) {
                        acc += BigInt::from(small);
                        small = 0;
                    }
                } else {
                    let mag = BigInt::from(1) << loops;
                    acc += if neg { -mag } else { mag };
                }
                for (d, &r) in digits.iter_mut().zip(&radices) {
                    *d += 1;
                    if *d < r {
                        break;
                    }
                    *d = 0;
                }
            }
            acc + BigInt::from(small)
        })
        .collect();
    let sum: BigInt = partials.into_iter().sum();
    let norm: BigInt = net.edges().iter().map(|e| factorial(e.label)).product();
    Rational::from(sum).checked_div(&Rational::from(norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::library::theta_net;

    #[test]
    fn permutations_are_enumerated() {
        assert_eq!(all_perms(0), vec![Vec::<u32>::new()]);
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(inversions(&[2, 0, 1]).len(), 2);
    }

    #[test]
    fn resolve_streams_all_states() {
        let net = theta_net(1, 2, 3);
        let states: Vec<State> = net.resolve(100).unwrap().collect();
        assert_eq!(states.len(), 12);
        let sum: Rational = states.iter().map(|s| net.state_value(s).unwrap()).sum();
        assert_eq!(sum / Rational::from(12), net.evaluate_brute(100).unwrap());
    }

    #[test]
    fn identity_state_of_a_theta() {
        // all strands parallel: a theta(2,2,2) splits into 3 loops, no crossings
        let net = theta_net(2, 2, 2);
        let s = State { perms: vec![vec![0, 1]; 3] };
        assert_eq!(net.state_value(&s).unwrap(), Rational::from(-8));
    }
}
