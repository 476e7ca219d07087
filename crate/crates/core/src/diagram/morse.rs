//! Diagrams described as a bottom-to-top sequence of elementary steps acting
//! on a row of strand positions. Anything written this way is a genuine
//! planar drawing, which makes it the natural source of test diagrams and the
//! place where Reidemeister-style rewrites are expressed.

use super::{DiagramBuilder, PortId, StrandDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorseStep {
    /// New strands at positions `i` and `i + 1`.
    Cup(usize),
    /// Joins the strands at positions `i` and `i + 1`.
    Cap(usize),
    /// Swaps the strands at positions `i` and `i + 1`.
    Cross(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseDiagram {
    steps: Vec<MorseStep>,
}

impl MorseDiagram {
    /// Checks that every step is in range and that the row is empty at the
    /// end.
    pub fn new(steps: Vec<MorseStep>) -> Result<Self> {
        let mut width = 0usize;
        for (k, s) in steps.iter().enumerate() {
            width = Self::apply_width(width, *s).ok_or_else(|| {
                Error::Structural(format!("step {k} ({s:?}) out of range at width {width}"))
            })?;
        }
        if width != 0 {
            return Err(Error::Structural(format!("{width} strands left open")));
        }
        Ok(MorseDiagram { steps })
    }

    fn apply_width(width: usize, step: MorseStep) -> Option<usize> {
        match step {
            MorseStep::Cup(i) if i <= width => Some(width + 2),
            MorseStep::Cap(i) if i + 1 < width => Some(width - 2),
            MorseStep::Cross(i) if i + 1 < width => Some(width),
            _ => None,
        }
    }

    pub fn steps(&self) -> &[MorseStep] {
        &self.steps
    }

    /// Row width just before step `at` (or at the end when `at == len`).
    pub fn width_before(&self, at: usize) -> usize {
        self.steps[..at]
            .iter()
            .fold(0, |w, s| Self::apply_width(w, *s).expect("validated"))
    }

    pub fn crossing_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, MorseStep::Cross(_)))
            .count()
    }

    fn insert(&self, at: usize, extra: &[MorseStep]) -> Result<Self> {
        if at > self.steps.len() {
            return Err(Error::Domain(format!("no step position {at}")));
        }
        let mut steps = self.steps[..at].to_vec();
        steps.extend_from_slice(extra);
        steps.extend_from_slice(&self.steps[at..]);
        MorseDiagram::new(steps)
    }

    /// A one-crossing curl on the strand at position `pos` before step `at`.
    pub fn with_twist(&self, at: usize, pos: usize) -> Result<Self> {
        self.insert(
            at,
            &[MorseStep::Cup(pos + 1), MorseStep::Cross(pos), MorseStep::Cap(pos + 1)],
        )
    }

    /// A cup-cap indentation on the strand at position `pos`.
    pub fn with_zigzag(&self, at: usize, pos: usize) -> Result<Self> {
        self.insert(at, &[MorseStep::Cup(pos + 1), MorseStep::Cap(pos)])
    }

    /// Two cancelling crossings between strands `pos` and `pos + 1`.
    pub fn with_double_crossing(&self, at: usize, pos: usize) -> Result<Self> {
        self.insert(at, &[MorseStep::Cross(pos), MorseStep::Cross(pos)])
    }

    /// The triple of crossings `X_pos X_pos+1 X_pos`.
    pub fn with_triangle_left(&self, at: usize, pos: usize) -> Result<Self> {
        self.insert(
            at,
            &[MorseStep::Cross(pos), MorseStep::Cross(pos + 1), MorseStep::Cross(pos)],
        )
    }

    /// The triple of crossings `X_pos+1 X_pos X_pos+1`.
    pub fn with_triangle_right(&self, at: usize, pos: usize) -> Result<Self> {
        self.insert(
            at,
            &[MorseStep::Cross(pos + 1), MorseStep::Cross(pos), MorseStep::Cross(pos + 1)],
        )
    }

    pub fn to_diagram(&self) -> StrandDiagram {
        let mut b = DiagramBuilder::new();
        // open top ports, left to right
        let mut row: Vec<PortId> = Vec::new();
        for step in &self.steps {
            match *step {
                MorseStep::Cup(i) => {
                    let c = b.cup();
                    row.splice(i..i, c);
                }
                MorseStep::Cap(i) => {
                    let c = b.cap();
                    b.wire(row[i], c[0]).wire(row[i + 1], c[1]);
                    row.drain(i..i + 2);
                }
                MorseStep::Cross(i) => {
                    let x = b.crossing();
                    b.wire(row[i], x[0]).wire(row[i + 1], x[1]);
                    row[i] = x[2];
                    row[i + 1] = x[3];
                }
            }
        }
        b.build().expect("validated step sequence yields a closed diagram")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use MorseStep::*;

    #[test]
    fn rejects_unbalanced_steps() {
        assert!(MorseDiagram::new(vec![Cup(0)]).is_err());
        assert!(MorseDiagram::new(vec![Cap(0)]).is_err());
        assert!(MorseDiagram::new(vec![Cup(0), Cross(0), Cross(1), Cap(0)]).is_err());
    }

    #[test]
    fn width_tracking() {
        let d = MorseDiagram::new(vec![Cup(0), Cup(1), Cross(0), Cap(1), Cap(0)]).unwrap();
        assert_eq!(d.width_before(0), 0);
        assert_eq!(d.width_before(2), 4);
        assert_eq!(d.width_before(5), 0);
    }

    #[test]
    fn moves_preserve_or_flip_values() {
        let base = MorseDiagram::new(vec![Cup(0), Cup(2), Cross(1), Cap(0), Cap(0)]).unwrap();
        let v = base.to_diagram().contract().unwrap();
        let twisted = base.with_twist(2, 0).unwrap().to_diagram();
        assert_eq!(twisted.contract().unwrap(), -v.clone());
        let zig = base.with_zigzag(3, 2).unwrap().to_diagram();
        assert_eq!(zig.contract().unwrap(), v);
    }
}
