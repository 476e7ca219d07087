//! Seeded generators of planar test inputs.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skeinlab::diagram::{MorseDiagram, MorseStep};
use skeinlab::network::{MorseNetwork, NetStep};
use skeinlab::recoupling::admissible;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A closed diagram with at most `max_crossings` crossings and row width at
/// most `max_width`.
pub fn random_morse_diagram(rng: &mut impl Rng, max_crossings: usize, max_width: usize) -> MorseDiagram {
    let mut steps = Vec::new();
    let mut width = 0usize;
    let mut crossings = 0;
    let len = rng.gen_range(2..12);
    for _ in 0..len {
        let mut options = Vec::new();
        if width + 2 <= max_width {
            options.extend((0..=width).map(MorseStep::Cup));
        }
        if width >= 2 {
            options.extend((0..width - 1).map(MorseStep::Cap));
            if crossings < max_crossings {
                options.extend((0..width - 1).map(MorseStep::Cross));
            }
        }
        let s = *options.choose(rng).expect("a cup always fits");
        if matches!(s, MorseStep::Cross(_)) {
            crossings += 1;
        }
        width = match s {
            MorseStep::Cup(_) => width + 2,
            MorseStep::Cap(_) => width - 2,
            MorseStep::Cross(_) => width,
        };
        steps.push(s);
    }
    while width > 0 {
        steps.push(MorseStep::Cap(rng.gen_range(0..width - 1)));
        width -= 2;
    }
    MorseDiagram::new(steps).expect("generator keeps the row valid")
}

/// A closed planar network with labels in `1..=max_label` and at most
/// `max_vertices` vertices, drawn as a step sequence.
pub fn random_morse_network(rng: &mut impl Rng, max_label: u32, max_vertices: usize) -> MorseNetwork {
    loop {
        if let Some(m) = try_network(rng, max_label, max_vertices) {
            return m;
        }
    }
}

fn try_network(rng: &mut impl Rng, max_label: u32, max_vertices: usize) -> Option<MorseNetwork> {
    let mut steps = Vec::new();
    let mut row: Vec<u32> = Vec::new();
    let mut vertices = 0;
    let len = rng.gen_range(2..14);
    for _ in 0..len {
        let mut options = Vec::new();
        if row.len() < 5 {
            for at in 0..=row.len() {
                options.push(NetStep::Cup { at, label: rng.gen_range(1..=max_label) });
            }
        }
        for at in 0..row.len().saturating_sub(1) {
            if row[at] == row[at + 1] {
                options.push(NetStep::Cap { at });
            }
            if vertices < max_vertices {
                let fits: Vec<u32> =
                    (1..=max_label).filter(|&c| admissible(row[at], row[at + 1], c).is_some()).collect();
                if let Some(&label) = fits.choose(rng) {
                    options.push(NetStep::Merge { at, label });
                }
            }
        }
        if vertices < max_vertices && row.len() < 5 {
            for (at, &c) in row.iter().enumerate() {
                let l = rng.gen_range(1..=max_label);
                let fits: Vec<u32> =
                    (1..=max_label).filter(|&r| admissible(c, l, r).is_some()).collect();
                if let Some(&right) = fits.choose(rng) {
                    options.push(NetStep::Split { at, left: l, right });
                }
            }
        }
        let s = *options.choose(rng)?;
        apply(&mut row, s);
        if matches!(s, NetStep::Merge { .. } | NetStep::Split { .. }) {
            vertices += 1;
        }
        steps.push(s);
    }
    // close: cap equal neighbours, otherwise merge the first pair
    while !row.is_empty() {
        let s = if let Some(at) = (0..row.len().saturating_sub(1)).find(|&k| row[k] == row[k + 1]) {
            NetStep::Cap { at }
        } else if row.len() >= 2 && vertices < max_vertices {
            let label = (1..=max_label).find(|&c| admissible(row[0], row[1], c).is_some())?;
            vertices += 1;
            NetStep::Merge { at: 0, label }
        } else {
            return None;
        };
        apply(&mut row, s);
        steps.push(s);
    }
    MorseNetwork::new(steps).ok()
}

fn apply(row: &mut Vec<u32>, s: NetStep) {
    match s {
        NetStep::Cup { at, label } => {
            row.splice(at..at, [label, label]);
        }
        NetStep::Cap { at } => {
            row.drain(at..at + 2);
        }
        NetStep::Merge { at, label } => {
            row.splice(at..at + 2, [label]);
        }
        NetStep::Split { at, left, right } => {
            row.splice(at..at + 1, [left, right]);
        }
    }
}

/// Total strand count of a drawn network: the sum of its edge labels.
pub fn strand_count(m: &MorseNetwork) -> u32 {
    m.to_network().edges().iter().map(|e| e.label).sum()
}
