//! Closed forms for the loop, theta and tetrahedral networks and the
//! recoupling (6j) coefficients assembled from them.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{factorial, Rational};

/// Number of strands carried by an edge.
pub type EdgeLabel = u32;

/// An admissible vertex `(p, q, r)` with its internal strand counts:
/// `p = i + j`, `q = j + k`, `r = k + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    pub p: EdgeLabel,
    pub q: EdgeLabel,
    pub r: EdgeLabel,
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    Parity,
    Inequality,
}

impl Violation {
    pub fn describe(self) -> &'static str {
        match self {
            Violation::Parity => "parity violation, label sum is odd",
            Violation::Inequality => "triangle inequality violated, a label exceeds the sum of the other two",
        }
    }
}

pub fn check_triple(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> Result<AdmissibleTriple, Violation> {
    let (a, b, c) = (p as u64, q as u64, r as u64);
    if a > b + c || b > a + c || c > a + b {
        return Err(Violation::Inequality);
    }
    let sum = a + b + c;
    if sum % 2 == 1 {
        return Err(Violation::Parity);
    }
    let half = sum / 2;
    Ok(AdmissibleTriple {
        p,
        q,
        r,
        i: (half - q as u64) as u32,
        j: (half - r as u64) as u32,
        k: (half - p as u64) as u32,
    })
}

/// `Some` with the internal counts when `(p, q, r)` may meet at a vertex.
pub fn admissible(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> Option<AdmissibleTriple> {
    check_triple(p, q, r).ok()
}

pub(crate) fn require(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> Result<AdmissibleTriple> {
    check_triple(p, q, r).map_err(|v| Error::Admissibility(p, q, r, v.describe()))
}

/// Loop value `(-1)^n (n + 1)`.
pub fn delta(n: EdgeLabel) -> Rational {
    Rational::sign_power(n as u64) * Rational::from(n as i64 + 1)
}

/// Theta network value.
pub fn theta(p: EdgeLabel, q: EdgeLabel, r: EdgeLabel) -> Result<Rational> {
    let t = require(p, q, r)?;
    let (i, j, k) = (t.i, t.j, t.k);
    let num = factorial(i) * factorial(j) * factorial(k) * factorial(i + j + k + 1);
    let den = factorial(p) * factorial(q) * factorial(r);
    let v = Rational::new(num, den)?;
    Ok(Rational::sign_power((i + j + k) as u64) * v)
}

/// Labels of a tetrahedral network written as two rows
/// `[P Q R; p q r]`; the two entries of a column sit on opposite edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TetLabels {
    pub upper: [EdgeLabel; 3],
    pub lower: [EdgeLabel; 3],
}

impl TetLabels {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        big_p: EdgeLabel,
        big_q: EdgeLabel,
        big_r: EdgeLabel,
        p: EdgeLabel,
        q: EdgeLabel,
        r: EdgeLabel,
    ) -> Self {
        TetLabels { upper: [big_p, big_q, big_r], lower: [p, q, r] }
    }

    /// The four vertex triples `(p,q,r)`, `(P,Q,r)`, `(P,q,R)`, `(p,Q,R)`.
    pub fn vertices(&self) -> [[EdgeLabel; 3]; 4] {
        let [bp, bq, br] = self.upper;
        let [p, q, r] = self.lower;
        [[p, q, r], [bp, bq, r], [bp, q, br], [p, bq, br]]
    }

    /// Half vertex sums `a_1..a_4`, checking admissibility on the way.
    pub fn vertex_sums(&self) -> Result<[u32; 4]> {
        let mut out = [0; 4];
        for (slot, [x, y, z]) in out.iter_mut().zip(self.vertices()) {
            require(x, y, z)?;
            *slot = (x + y + z) / 2;
        }
        Ok(out)
    }

    /// Half sums around the three quadrilaterals `b_1..b_3`.
    pub fn quad_sums(&self) -> [u32; 3] {
        let [bp, bq, br] = self.upper;
        let [p, q, r] = self.lower;
        [(p + bp + q + bq) / 2, (p + bp + r + br) / 2, (q + bq + r + br) / 2]
    }

    fn permute_columns(&self, perm: [usize; 3]) -> TetLabels {
        TetLabels {
            upper: perm.map(|c| self.upper[c]),
            lower: perm.map(|c| self.lower[c]),
        }
    }

    fn flip_columns(&self, a: usize, b: usize) -> TetLabels {
        let mut t = *self;
        for c in [a, b] {
            std::mem::swap(&mut t.upper[c], &mut t.lower[c]);
        }
        t
    }
}

/// Tetrahedral network value.
pub fn tet(labels: &TetLabels) -> Result<Rational> {
    let a = labels.vertex_sums()?;
    let b = labels.quad_sums();
    let lo = *a.iter().max().unwrap();
    let hi = *b.iter().min().unwrap();
    if lo > hi {
        return Err(Error::Internal(format!(
            "tetrahedron {labels:?} has max vertex sum {lo} above min quadrilateral sum {hi}"
        )));
    }

    let mut num = BigInt::from(1);
    for &bi in &b {
        for &aj in &a {
            num *= factorial(bi - aj);
        }
    }
    let den: BigInt = labels
        .upper
        .iter()
        .chain(labels.lower.iter())
        .map(|&x| factorial(x))
        .product();
    let prefactor = Rational::new(num, den)?;

    let mut sum = Rational::zero();
    for s in lo..=hi {
        let mut d = BigInt::from(1);
        for &ai in &a {
            d *= factorial(s - ai);
        }
        for &bj in &b {
            d *= factorial(bj - s);
        }
        let term = Rational::new(factorial(s + 1), d)?;
        sum += Rational::sign_power(s as u64) * term;
    }
    Ok(prefactor * sum)
}

/// All labelings reachable by permuting columns and flipping two columns at
/// once; `tet` is constant on this set.
pub fn tet_symmetry_orbit(labels: &TetLabels) -> BTreeSet<TetLabels> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut orbit = BTreeSet::new();
    for perm in PERMS {
        let t = labels.permute_columns(perm);
        orbit.insert(t);
        orbit.insert(t.flip_columns(0, 1));
        orbit.insert(t.flip_columns(0, 2));
        orbit.insert(t.flip_columns(1, 2));
    }
    orbit
}

/// Recoupling coefficient
/// `{p q i; x y j} = Tet[p q i; x y j] * delta(i) / (theta(p,y,i) * theta(q,x,i))`.
///
/// It expands a network fragment where `j` joins vertices `(p, q, j)` and
/// `(x, y, j)` into fragments where `i` joins `(q, x, i)` and `(y, p, i)`.
pub fn sixj(
    p: EdgeLabel,
    q: EdgeLabel,
    i: EdgeLabel,
    x: EdgeLabel,
    y: EdgeLabel,
    j: EdgeLabel,
) -> Result<Rational> {
    let labels = TetLabels::new(p, q, i, x, y, j);
    let t = tet(&labels)?;
    let t1 = theta(p, y, i)?;
    let t2 = theta(q, x, i)?;
    let den = &t1 * &t2;
    if den.is_zero() {
        return Err(Error::Degenerate(format!("theta({p},{y},{i}) * theta({q},{x},{i}) is zero")));
    }
    (t * delta(i)).checked_div(&den)
}
