//! Circle packings: Apollonian packings grown from a Descartes quadruple,
//! Ford circles, and the small configurations of two, three and four
//! mutually tangent disks. A packing becomes a spin network by turning each
//! ideal triangle into a vertex and each tangency into an edge labelled with
//! the sum of the two curvatures.

mod formulas;
mod render;

pub use formulas::{
    eval_four, eval_three, eval_three_unsigned, eval_two, insertion_ratio, three_over_two,
};
pub use render::render_svg;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{Edge, SpinNetwork, Vertex};
use crate::numerics::Rational;

/// Tolerance for tangency checks on packings with approximated positions.
pub const APPROX_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Circle { center: [Rational; 2], radius: Rational },
    /// The half-plane `{x : normal . x >= offset}` seen from the packing; the
    /// unit `normal` points away from the packing.
    Line { normal: [Rational; 2], offset: Rational },
    /// Only the curvature and the combinatorics are known.
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    /// Curvature used for labels; negative for an enclosing disk, 0 for a line.
    pub curvature: Rational,
    pub shape: Shape,
    #[serde(default)]
    pub generation: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclePacking {
    pub disks: Vec<Disk>,
    /// Unordered pairs, stored with the smaller index first.
    pub tangencies: Vec<[usize; 2]>,
    /// Ideal triangles as disk triples in counter-clockwise order around the
    /// region. The same triple may appear twice (inside and outside).
    pub regions: Vec<[usize; 3]>,
    /// False when some positions are floating-point approximations.
    #[serde(default = "yes")]
    pub exact: bool,
}

fn yes() -> bool {
    true
}

/// Both solutions `b1+b2+b3 +- 2 sqrt(b1 b2 + b2 b3 + b3 b1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescartesSolutions {
    pub plus: Rational,
    pub minus: Rational,
    /// False when the square root was irrational and rounded.
    pub exact: bool,
}

pub fn descartes_fourth(b1: &Rational, b2: &Rational, b3: &Rational) -> Result<DescartesSolutions> {
    let disc = b1 * b2 + b2 * b3 + b3 * b1;
    if disc.is_negative() {
        return Err(Error::Geometry(format!(
            "curvatures ({b1}, {b2}, {b3}) admit no fourth tangent disk"
        )));
    }
    let (root, exact) = match disc.sqrt_exact() {
        Some(r) => (r, true),
        None => (Rational::from_f64(disc.to_f64().sqrt())?, false),
    };
    let sum = b1 + b2 + b3;
    let two = Rational::from(2);
    Ok(DescartesSolutions {
        plus: &sum + &(&two * &root),
        minus: &sum - &(&two * &root),
        exact,
    })
}

pub fn descartes_holds(b: &[Rational; 4]) -> bool {
    let sum: Rational = b.iter().cloned().sum();
    let squares: Rational = b.iter().map(|x| x * x).sum();
    &sum * &sum == Rational::from(2) * squares
}

type Point = [Rational; 2];

fn sub(p: &Point, q: &Point) -> Point {
    [&p[0] - &q[0], &p[1] - &q[1]]
}

fn dist2(p: &Point, q: &Point) -> Rational {
    let d = sub(p, q);
    &d[0] * &d[0] + &d[1] * &d[1]
}

fn cross_f64(o: &Point, a: &Point, b: &Point) -> f64 {
    let (ox, oy) = (o[0].to_f64(), o[1].to_f64());
    (a[0].to_f64() - ox) * (b[1].to_f64() - oy) - (a[1].to_f64() - oy) * (b[0].to_f64() - ox)
}

/// A point at distances `da`, `db` from `a = (0,0)` and `b = (dab, 0)`.
fn trilaterate(dab: &Rational, da: &Rational, db: &Rational, upper: bool) -> Result<(Point, bool)> {
    let two = Rational::from(2);
    let x = (da * da - db * db + dab * dab).checked_div(&(&two * dab))?;
    let y2 = da * da - &x * &x;
    if y2.is_negative() && y2.to_f64() < -APPROX_TOLERANCE {
        return Err(Error::Geometry("root disks cannot be mutually tangent".into()));
    }
    let (y, exact) = match y2.sqrt_exact() {
        Some(y) => (y, true),
        None => (Rational::from_f64(y2.to_f64().max(0.0).sqrt())?, false),
    };
    Ok(([x, if upper { y } else { -y }], exact))
}

impl Disk {
    fn circle(curvature: Rational, center: Point, generation: u32) -> Disk {
        let radius = curvature.abs().recip().expect("nonzero curvature");
        Disk { curvature, shape: Shape::Circle { center, radius }, generation }
    }

    fn center(&self) -> Option<&Point> {
        match &self.shape {
            Shape::Circle { center, .. } => Some(center),
            _ => None,
        }
    }

    /// Curvature times center.
    fn bz(&self) -> Point {
        let c = self.center().expect("circle");
        [&self.curvature * &c[0], &self.curvature * &c[1]]
    }
}

impl CirclePacking {
    fn add_tangency(&mut self, a: usize, b: usize) {
        self.tangencies.push([a.min(b), a.max(b)]);
    }

    /// Geometric tangency of two disks: `Some(true/false)` when both shapes
    /// are known, `None` otherwise.
    pub fn tangent(&self, i: usize, j: usize) -> Option<bool> {
        let close = |lhs: &Rational, rhs: &Rational| {
            if self.exact {
                lhs == rhs
            } else {
                (lhs.to_f64() - rhs.to_f64()).abs() <= APPROX_TOLERANCE * (1.0 + rhs.to_f64().abs())
            }
        };
        match (&self.disks[i].shape, &self.disks[j].shape) {
            (Shape::Circle { center: c1, radius: r1 }, Shape::Circle { center: c2, radius: r2 }) => {
                // internal tangency when one disk encloses the other
                let internal =
                    self.disks[i].curvature.is_negative() || self.disks[j].curvature.is_negative();
                let r = if internal { r1 - r2 } else { r1 + r2 };
                Some(close(&dist2(c1, c2), &(&r * &r)))
            }
            (Shape::Circle { center, radius }, Shape::Line { normal, offset })
            | (Shape::Line { normal, offset }, Shape::Circle { center, radius }) => {
                let signed = &(&normal[0] * &center[0] + &normal[1] * &center[1]) - offset;
                Some(close(&(-signed), radius))
            }
            _ => None,
        }
    }

    /// Checks that every recorded tangency is geometric and that every
    /// region is bounded by recorded tangencies.
    pub fn validate(&self) -> Result<()> {
        for &[i, j] in &self.tangencies {
            if i >= self.disks.len() || j >= self.disks.len() {
                return Err(Error::Structural(format!("tangency ({i}, {j}) out of range")));
            }
            if self.tangent(i, j) == Some(false) {
                return Err(Error::Geometry(format!("disks {i} and {j} are not tangent")));
            }
        }
        for r in &self.regions {
            for k in 0..3 {
                let (a, b) = (r[k], r[(k + 1) % 3]);
                if !self.tangencies.contains(&[a.min(b), a.max(b)]) {
                    return Err(Error::Structural(format!(
                        "region {r:?} uses the missing tangency ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Two tangent disks with no ideal triangles.
    pub fn two_disks(a: u32, b: u32) -> CirclePacking {
        CirclePacking {
            disks: vec![abstract_disk(a), abstract_disk(b)],
            tangencies: vec![[0, 1]],
            regions: vec![],
            exact: true,
        }
    }

    /// Three mutually tangent disks bounding an inner and an outer region.
    pub fn three_disks(a: u32, b: u32, c: u32) -> CirclePacking {
        CirclePacking {
            disks: vec![abstract_disk(a), abstract_disk(b), abstract_disk(c)],
            tangencies: vec![[0, 1], [1, 2], [0, 2]],
            regions: vec![[0, 1, 2], [0, 2, 1]],
            exact: true,
        }
    }

    /// Disks `a, b, c` around a disk `d` tangent to all three.
    pub fn four_disks(a: u32, b: u32, c: u32, d: u32) -> CirclePacking {
        CirclePacking {
            disks: vec![abstract_disk(a), abstract_disk(b), abstract_disk(c), abstract_disk(d)],
            tangencies: vec![[0, 1], [1, 2], [0, 2], [0, 3], [1, 3], [2, 3]],
            regions: vec![[0, 1, 3], [1, 2, 3], [2, 0, 3], [0, 2, 1]],
            exact: true,
        }
    }
}

fn abstract_disk(curvature: u32) -> Disk {
    Disk { curvature: Rational::from(curvature as i64), shape: Shape::Abstract, generation: 0 }
}

/// Grows an Apollonian packing from a Descartes quadruple of nonzero
/// curvatures by filling every ideal triangle `depth` times.
pub fn generate_apollonian(root: [Rational; 4], depth: u32) -> Result<CirclePacking> {
    if !descartes_holds(&root) {
        return Err(Error::Domain(format!(
            "({}, {}, {}, {}) does not satisfy the Descartes relation",
            root[0], root[1], root[2], root[3]
        )));
    }
    if root.iter().any(Rational::is_zero) {
        return Err(Error::Unsupported("root quadruples containing a line".into()));
    }
    if root.iter().filter(|b| b.is_negative()).count() > 1 {
        return Err(Error::Domain("at most one root disk may enclose the others".into()));
    }
    let mut b = root;
    b.sort();

    // disk 0 at the origin, disk 1 on the positive x axis, disk 2 above
    let d = |i: usize, j: usize| (b[i].recip().unwrap() + b[j].recip().unwrap()).abs();
    let origin: Point = [Rational::zero(), Rational::zero()];
    let c1: Point = [d(0, 1), Rational::zero()];
    let (c2, e2) = trilaterate(&d(0, 1), &d(0, 2), &d(1, 2), true)?;
    let (up, e3) = trilaterate(&d(0, 1), &d(0, 3), &d(1, 3), true)?;
    let down: Point = [up[0].clone(), -&up[1]];
    let target = d(2, 3).to_f64().powi(2);
    let c3 = if (dist2(&up, &c2).to_f64() - target).abs() <= (dist2(&down, &c2).to_f64() - target).abs() {
        up
    } else {
        down
    };

    let mut p = CirclePacking {
        disks: vec![
            Disk::circle(b[0].clone(), origin, 0),
            Disk::circle(b[1].clone(), c1, 0),
            Disk::circle(b[2].clone(), c2, 0),
            Disk::circle(b[3].clone(), c3, 0),
        ],
        tangencies: vec![],
        regions: vec![],
        exact: e2 && e3,
    };
    for i in 0..4 {
        for j in i + 1..4 {
            p.add_tangency(i, j);
        }
    }

    // the gap among disks 1, 2, 3 is bounded in both the enclosed and the
    // all-positive case, so its orientation is that of the centers
    let ccw = cross_f64(
        p.disks[1].center().unwrap(),
        p.disks[2].center().unwrap(),
        p.disks[3].center().unwrap(),
    ) > 0.0;
    let mut open: Vec<([usize; 3], usize)> = vec![
        ([1, 2, 3], 0),
        ([0, 3, 2], 1),
        ([0, 1, 3], 2),
        ([0, 2, 1], 3),
    ];
    if !ccw {
        for (t, _) in open.iter_mut() {
            t.swap(1, 2);
        }
    }

    let two = Rational::from(2);
    for generation in 1..=depth {
        let mut next = Vec::with_capacity(open.len() * 3);
        for ([i, j, k], o) in open {
            let (di, dj, dk, dopp) = (&p.disks[i], &p.disks[j], &p.disks[k], &p.disks[o]);
            let cur = &two * &(&(&di.curvature + &dj.curvature) + &dk.curvature) - &dopp.curvature;
            if cur.is_zero() {
                return Err(Error::Geometry(format!("region ({i}, {j}, {k}) fills with curvature {cur}")));
            }
            let (bi, bj, bk, bo) = (di.bz(), dj.bz(), dk.bz(), dopp.bz());
            let bz: Point = [0, 1].map(|t| {
                &two * &(&(&bi[t] + &bj[t]) + &bk[t]) - &bo[t]
            });
            let center = [bz[0].checked_div(&cur)?, bz[1].checked_div(&cur)?];
            let n = p.disks.len();
            p.disks.push(Disk::circle(cur, center, generation));
            for x in [i, j, k] {
                p.add_tangency(x, n);
            }
            next.push(([i, j, n], k));
            next.push(([j, k, n], i));
            next.push(([k, i, n], j));
        }
        open = next;
    }
    p.regions = open.into_iter().map(|(t, _)| t).collect();
    Ok(p)
}

/// Ford circles at every `p/q` in `[0, 1]` with `q <= q_max`, tangent to a
/// baseline. Labels use curvature `q^2`; the drawn radius is `1/(2 q^2)` so
/// that the circles are geometrically tangent.
pub fn generate_ford(q_max: u32) -> Result<CirclePacking> {
    if q_max == 0 {
        return Err(Error::Domain("q_max must be at least 1".into()));
    }
    let ford = |p: u64, q: u64| {
        let q2 = (q * q) as i64;
        let r = Rational::new(1, 2 * q2).unwrap();
        Disk {
            curvature: Rational::from(q2),
            shape: Shape::Circle { center: [Rational::new(p as i64, q as i64).unwrap(), r.clone()], radius: r },
            generation: q as u32,
        }
    };
    let baseline = Disk {
        curvature: Rational::zero(),
        shape: Shape::Line {
            normal: [Rational::zero(), Rational::from(-1)],
            offset: Rational::zero(),
        },
        generation: 0,
    };
    let mut pk = CirclePacking {
        disks: vec![baseline, ford(0, 1), ford(1, 1)],
        tangencies: vec![],
        regions: vec![],
        exact: true,
    };
    pk.add_tangency(0, 1);
    pk.add_tangency(0, 2);
    pk.add_tangency(1, 2);
    // the unbounded region outside 0/1, 1/1 and the baseline
    pk.regions.push([1, 2, 0]);

    fn fill(pk: &mut CirclePacking, l: (usize, u64, u64), r: (usize, u64, u64), q_max: u64, ford: &dyn Fn(u64, u64) -> Disk) {
        let (mp, mq) = (l.1 + r.1, l.2 + r.2);
        if mq > q_max {
            pk.regions.push([l.0, 0, r.0]);
            return;
        }
        let m = pk.disks.len();
        pk.disks.push(ford(mp, mq));
        pk.add_tangency(l.0, m);
        pk.add_tangency(m, r.0);
        pk.add_tangency(0, m);
        pk.regions.push([l.0, m, r.0]);
        fill(pk, l, (m, mp, mq), q_max, ford);
        fill(pk, (m, mp, mq), r, q_max, ford);
    }
    fill(&mut pk, (1, 0, 1), (2, 1, 1), q_max as u64, &ford);
    Ok(pk)
}

/// The spin network of a packing, or the tangencies that are not shared by
/// two regions.
#[derive(Clone, Debug)]
pub struct PackingNetwork {
    pub network: Option<SpinNetwork>,
    pub open_ends: Vec<[usize; 2]>,
    /// Disk pair of every network edge, in edge order.
    pub edge_disks: Vec<[usize; 2]>,
}

impl PackingNetwork {
    pub fn closed(self) -> Result<SpinNetwork> {
        match self.network {
            Some(n) => Ok(n),
            None => Err(Error::Structural(format!(
                "packing network has {} open ends, first at disks {:?}",
                self.open_ends.len(),
                self.open_ends[0]
            ))),
        }
    }
}

pub fn packing_to_network(p: &CirclePacking) -> Result<PackingNetwork> {
    let label_of = |[i, j]: [usize; 2]| -> Result<u32> {
        let s = &p.disks[i].curvature + &p.disks[j].curvature;
        match s.to_i64() {
            Some(v) if (0..=u32::MAX as i64).contains(&v) => Ok(v as u32),
            _ => Err(Error::Labeling(format!(
                "tangency ({i}, {j}) has label {s}, not a nonnegative integer"
            ))),
        }
    };

    let mut uses: HashMap<[usize; 2], usize> = HashMap::new();
    for r in &p.regions {
        for k in 0..3 {
            let (a, b) = (r[k], r[(k + 1) % 3]);
            *uses.entry([a.min(b), a.max(b)]).or_insert(0) += 1;
        }
    }
    let mut degree = vec![0usize; p.disks.len()];
    for &[i, j] in &p.tangencies {
        degree[i] += 1;
        degree[j] += 1;
    }

    let mut edges = Vec::new();
    let mut edge_disks = Vec::new();
    let mut index: HashMap<[usize; 2], usize> = HashMap::new();
    let mut open_ends = Vec::new();
    for &t in &p.tangencies {
        let n = uses.get(&t).copied().unwrap_or(0);
        // an isolated tangent pair is a closed loop
        let closed = n == 0 && degree[t[0]] == 1 && degree[t[1]] == 1;
        if n == 2 || closed {
            index.insert(t, edges.len());
            edges.push(Edge { id: format!("t{}-{}", t[0], t[1]), label: label_of(t)?, closed });
            edge_disks.push(t);
        } else {
            open_ends.push(t);
        }
    }
    if !open_ends.is_empty() {
        return Ok(PackingNetwork { network: None, open_ends, edge_disks });
    }
    let vertices = p
        .regions
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let ends = [0, 1, 2].map(|s| {
                let (a, b) = (r[s], r[(s + 1) % 3]);
                index[&[a.min(b), a.max(b)]]
            });
            Vertex { id: format!("r{k}"), ends }
        })
        .collect();
    Ok(PackingNetwork {
        network: Some(SpinNetwork::new(edges, vertices)?),
        open_ends,
        edge_disks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn descartes_examples() {
        let s = descartes_fourth(&r(-1), &r(2), &r(2)).unwrap();
        assert_eq!((s.plus, s.minus), (r(3), r(3)));
        let s = descartes_fourth(&r(2), &r(2), &r(3)).unwrap();
        assert_eq!((s.plus, s.minus), (r(15), r(-1)));
        let s = descartes_fourth(&r(0), &r(0), &r(1)).unwrap();
        assert_eq!((s.plus, s.minus), (r(1), r(1)));
        assert!(s.exact);
        assert!(descartes_fourth(&r(-1), &r(-1), &r(1)).is_err());
        assert!(!descartes_fourth(&r(1), &r(1), &r(1)).unwrap().exact);
    }

    #[test]
    fn apollonian_depths() {
        let root = [r(-1), r(2), r(2), r(3)];
        let p0 = generate_apollonian(root.clone(), 0).unwrap();
        assert_eq!(p0.tangencies.len(), 6);
        assert_eq!(p0.regions.len(), 4);
        assert!(p0.exact);
        p0.validate().unwrap();

        let p1 = generate_apollonian(root, 1).unwrap();
        let mut added: Vec<i64> =
            p1.disks[4..].iter().map(|d| d.curvature.to_i64().unwrap()).collect();
        added.sort();
        assert_eq!(added, vec![3, 6, 6, 15]);
        assert_eq!(p1.regions.len(), 12);
        p1.validate().unwrap();
        assert!(generate_apollonian([r(1), r(1), r(1), r(1)], 1).is_err());
    }

    #[test]
    fn generated_quadruples_satisfy_descartes() {
        let p = generate_apollonian([r(-1), r(2), r(2), r(3)], 3).unwrap();
        p.validate().unwrap();
        // every filled disk with its three neighbours at birth
        let mut checked = 0;
        for (n, d) in p.disks.iter().enumerate().skip(4) {
            let nbrs: Vec<usize> = p
                .tangencies
                .iter()
                .filter(|t| t[1] == n && t[0] < n)
                .map(|t| t[0])
                .collect();
            assert_eq!(nbrs.len(), 3, "disk {n} ({})", d.curvature);
            let q = [
                p.disks[nbrs[0]].curvature.clone(),
                p.disks[nbrs[1]].curvature.clone(),
                p.disks[nbrs[2]].curvature.clone(),
                d.curvature.clone(),
            ];
            assert!(descartes_holds(&q));
            checked += 1;
        }
        assert!(checked > 20);
    }

    #[test]
    fn apollonian_network_is_planar_and_admissible() {
        let p = generate_apollonian([r(-1), r(2), r(2), r(3)], 1).unwrap();
        let net = packing_to_network(&p).unwrap().closed().unwrap();
        assert!(net.is_planar());
        assert_eq!(net.vertices().len(), 12);
        assert_eq!(net.edges().len(), 18);
        // a negative curvature c breaks a+b <= (b+c)+(c+a) at its regions
        let bad = net.validate();
        let touching = p.regions.iter().filter(|r| r.contains(&0)).count();
        assert!(!bad.is_empty() && bad.len() <= touching);

        let positive = generate_apollonian([r(2), r(2), r(3), r(15)], 0).unwrap();
        let net = packing_to_network(&positive).unwrap().closed().unwrap();
        assert!(net.is_planar());
        assert!(net.validate().is_empty());

        // growing the outer region adds the enclosing disk; only its regions fail
        let grown = generate_apollonian([r(2), r(2), r(3), r(15)], 2).unwrap();
        grown.validate().unwrap();
        let net = packing_to_network(&grown).unwrap().closed().unwrap();
        assert!(net.is_planar());
        for v in net.validate() {
            let k: usize = v.vertex[1..].parse().unwrap();
            assert!(grown.regions[k].iter().any(|&d| grown.disks[d].curvature.is_negative()));
        }
    }

    #[test]
    fn ford_small() {
        let p = generate_ford(2).unwrap();
        let mut curv: Vec<i64> = p.disks.iter().map(|d| d.curvature.to_i64().unwrap()).collect();
        curv.sort();
        assert_eq!(curv, vec![0, 1, 1, 4]);
        p.validate().unwrap();
        let net = packing_to_network(&p).unwrap().closed().unwrap();
        assert!(net.is_planar());
    }

    #[test]
    fn ford_tangency_is_the_determinant_rule() {
        let p = generate_ford(7).unwrap();
        p.validate().unwrap();
        let frac = |i: usize| match &p.disks[i].shape {
            Shape::Circle { center, .. } => {
                (center[0].numer().clone(), center[0].denom().clone())
            }
            _ => unreachable!(),
        };
        for i in 1..p.disks.len() {
            for j in i + 1..p.disks.len() {
                let ((a, b), (c, d)) = (frac(i), frac(j));
                let det = (&a * &d - &c * &b).magnitude().clone();
                let unit = det == num_bigint::BigUint::from(1u32);
                assert_eq!(p.tangent(i, j), Some(unit));
            }
        }
    }

    #[test]
    fn basic_configurations() {
        let two = packing_to_network(&CirclePacking::two_disks(1, 2)).unwrap().closed().unwrap();
        assert_eq!(two.edges().len(), 1);
        assert_eq!(two.evaluate_brute(100).unwrap(), eval_two(1, 2));
        let three = packing_to_network(&CirclePacking::three_disks(1, 2, 1)).unwrap().closed().unwrap();
        assert_eq!(three.evaluate_recoupling().unwrap(), eval_three(1, 2, 1));
        let four = packing_to_network(&CirclePacking::four_disks(1, 1, 1, 1)).unwrap().closed().unwrap();
        assert_eq!(four.vertices().len(), 4);
        assert_eq!(four.edges().len(), 6);
        assert_eq!(four.evaluate_recoupling().unwrap(), eval_four(1, 1, 1, 1));
    }

    #[test]
    fn open_ends_and_labels() {
        let mut p = CirclePacking::three_disks(1, 1, 1);
        p.regions.pop();
        let out = packing_to_network(&p).unwrap();
        assert!(out.network.is_none());
        assert_eq!(out.open_ends.len(), 3);
        let neg = generate_apollonian([r(-1), r(2), r(2), r(3)], 0).unwrap();
        assert!(packing_to_network(&neg).is_ok());
        let mut bad = CirclePacking::two_disks(1, 1);
        bad.disks[0].curvature = Rational::new(1, 2).unwrap();
        assert!(matches!(packing_to_network(&bad), Err(Error::Labeling(_))));
    }
}
