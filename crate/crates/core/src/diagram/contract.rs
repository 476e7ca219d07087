//! Sparse tensor-network contraction over index values `{0, 1}`.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{NodeKind, StrandDiagram};
use crate::error::{Error, Result};

const MAX_RANK: usize = 60;

/// Sparse tensor: `legs[k]` is a wire id, bit `k` of an entry key is that
/// leg's index value.
#[derive(Debug, Clone)]
struct Tensor {
    legs: Vec<usize>,
    entries: Vec<(u64, i128)>,
}

// index 0 stands for basis vector e1, index 1 for e2
const CAP: [[i128; 2]; 2] = [[0, 1], [-1, 0]];
const CUP: [[i128; 2]; 2] = [[0, -1], [1, 0]];

fn node_tensor(kind: NodeKind, legs: Vec<usize>) -> Tensor {
    let mut entries = Vec::new();
    match kind {
        NodeKind::Cap | NodeKind::Cup => {
            let m = if kind == NodeKind::Cap { CAP } else { CUP };
            for (a, row) in m.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    if v != 0 {
                        entries.push(((a | (b << 1)) as u64, v));
                    }
                }
            }
        }
        NodeKind::Through => {
            entries.push((0b00, 1));
            entries.push((0b11, 1));
        }
        NodeKind::Crossing => {
            // ports (bl, br, tl, tr): tl = br, tr = bl
            for bl in 0..2u64 {
                for br in 0..2u64 {
                    let key = bl | (br << 1) | (br << 2) | (bl << 3);
                    entries.push((key, 1));
                }
            }
        }
    }
    Tensor { legs, entries }
}

fn bit(key: u64, k: usize) -> u64 {
    (key >> k) & 1
}

impl Tensor {
    /// Sums over legs that occur twice on this tensor.
    fn trace_repeated(self) -> Tensor {
        let mut pairs = Vec::new();
        for i in 0..self.legs.len() {
            for j in i + 1..self.legs.len() {
                if self.legs[i] == self.legs[j] {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            return self;
        }
        let drop: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        let keep: Vec<usize> = (0..self.legs.len()).filter(|k| !drop.contains(k)).collect();
        let mut acc: HashMap<u64, i128> = HashMap::new();
        for &(key, v) in &self.entries {
            if pairs.iter().all(|&(i, j)| bit(key, i) == bit(key, j)) {
                let out = keep
                    .iter()
                    .enumerate()
                    .fold(0u64, |o, (n, &k)| o | (bit(key, k) << n));
                *acc.entry(out).or_insert(0) += v;
            }
        }
        Tensor {
            legs: keep.iter().map(|&k| self.legs[k]).collect(),
            entries: sorted_nonzero(acc),
        }
    }
}

fn sorted_nonzero(acc: HashMap<u64, i128>) -> Vec<(u64, i128)> {
    let mut v: Vec<(u64, i128)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
    v.sort_unstable();
    v
}

fn contract_pair(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let shared: Vec<(usize, usize)> = a
        .legs
        .iter()
        .enumerate()
        .filter_map(|(i, w)| b.legs.iter().position(|x| x == w).map(|j| (i, j)))
        .collect();
    let a_free: Vec<usize> = (0..a.legs.len())
        .filter(|i| !shared.iter().any(|s| s.0 == *i))
        .collect();
    let b_free: Vec<usize> = (0..b.legs.len())
        .filter(|j| !shared.iter().any(|s| s.1 == *j))
        .collect();
    let rank = a_free.len() + b_free.len();
    if rank > MAX_RANK {
        return Err(Error::Unsupported(format!(
            "intermediate tensor rank {rank} exceeds {MAX_RANK}"
        )));
    }

    let shared_key_a = |key: u64| {
        shared
            .iter()
            .enumerate()
            .fold(0u64, |o, (n, &(i, _))| o | (bit(key, i) << n))
    };
    let shared_key_b = |key: u64| {
        shared
            .iter()
            .enumerate()
            .fold(0u64, |o, (n, &(_, j))| o | (bit(key, j) << n))
    };

    let mut groups: HashMap<u64, Vec<(u64, i128)>> = HashMap::new();
    for &(key, v) in &b.entries {
        let free = b_free
            .iter()
            .enumerate()
            .fold(0u64, |o, (n, &j)| o | (bit(key, j) << (n + a_free.len())));
        groups.entry(shared_key_b(key)).or_default().push((free, v));
    }

    let mut acc: HashMap<u64, i128> = HashMap::new();
    for &(key, v) in &a.entries {
        let Some(partners) = groups.get(&shared_key_a(key)) else {
            continue;
        };
        let free_a = a_free
            .iter()
            .enumerate()
            .fold(0u64, |o, (n, &i)| o | (bit(key, i) << n));
        for &(free_b, w) in partners {
            let term = v
                .checked_mul(w)
                .ok_or_else(|| Error::Internal("contraction overflow".into()))?;
            let slot = acc.entry(free_a | free_b).or_insert(0);
            *slot = slot
                .checked_add(term)
                .ok_or_else(|| Error::Internal("contraction overflow".into()))?;
        }
    }

    let legs = a_free
        .iter()
        .map(|&i| a.legs[i])
        .chain(b_free.iter().map(|&j| b.legs[j]))
        .collect();
    Ok(Tensor { legs, entries: sorted_nonzero(acc) })
}

fn scalar(t: &Tensor) -> i128 {
    debug_assert!(t.legs.is_empty());
    t.entries.first().map(|&(_, v)| v).unwrap_or(0)
}

pub(super) fn contract(d: &StrandDiagram) -> Result<BigInt> {
    // wire id = smaller port of the wire
    let wire_of = |p: usize| p.min(d.partner(p));
    let mut tensors: Vec<Option<Tensor>> = d
        .nodes()
        .iter()
        .map(|n| {
            let legs = n.ports.iter().map(|&p| wire_of(p)).collect();
            Some(node_tensor(n.kind, legs).trace_repeated())
        })
        .collect();

    let mut result = BigInt::from(1);
    loop {
        // absorb finished scalars
        for slot in tensors.iter_mut() {
            if slot.as_ref().is_some_and(|t| t.legs.is_empty()) {
                let t = slot.take().unwrap();
                result *= BigInt::from(scalar(&t));
            }
        }
        if result == BigInt::from(0) {
            return Ok(result);
        }

        let mut owners: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, t) in tensors.iter().enumerate() {
            if let Some(t) = t {
                for &w in &t.legs {
                    owners.entry(w).or_default().push(i);
                }
            }
        }
        if owners.is_empty() {
            return Ok(result);
        }

        // greedy: the pair whose product has the smallest rank
        let mut best: Option<(usize, usize, usize)> = None;
        let mut wires: Vec<_> = owners.iter().collect();
        wires.sort_unstable_by_key(|(w, _)| **w);
        for (_, own) in wires {
            let (i, j) = (own[0], own[1]);
            let (ti, tj) = (tensors[i].as_ref().unwrap(), tensors[j].as_ref().unwrap());
            let shared = ti.legs.iter().filter(|w| tj.legs.contains(w)).count();
            let rank = ti.legs.len() + tj.legs.len() - 2 * shared;
            if best.is_none_or(|(_, _, r)| rank < r) {
                best = Some((i.min(j), i.max(j), rank));
            }
        }
        let (i, j, _) = best.expect("some wire remains");
        let tj = tensors[j].take().unwrap();
        let ti = tensors[i].take().unwrap();
        tensors[i] = Some(contract_pair(&ti, &tj)?);
    }
}
