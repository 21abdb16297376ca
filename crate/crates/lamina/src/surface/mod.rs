//! Marked surfaces, ideal and tagged triangulations, flips and arcs tracked
//! as curves on a fixed reference triangulation.

mod ideal;
mod load;
mod route;
mod tagged;
mod tracked;

pub use ideal::{corner, slot, Corner, IdealTriangulation, Point, PointKind, Rot, SelfFolded, Side, Slot};
pub use load::{load_surface, load_surface_str, SurfaceFile};
pub use route::{compatible, rotation, CornerPath, Route, Tag, TaggedArc};
pub use tagged::{FlipInfo, TaggedTriangulation};
pub use tracked::{flip_bfs, FlipBfsNode, RotateToward, TrackedTriangulation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: usize,
    pub boundary: Vec<usize>,
    pub punctures: usize,
}

impl MarkedSurface {
    pub fn new(genus: usize, boundary: Vec<usize>, punctures: usize) -> Result<Self> {
        let s = MarkedSurface { genus, boundary, punctures };
        s.validate()?;
        Ok(s)
    }

    pub fn marked_on_boundary(&self) -> usize {
        self.boundary.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundary.contains(&0) {
            return Err(Error::BadSurface("boundary component without marked points".into()));
        }
        if self.marked_on_boundary() + self.punctures == 0 {
            return Err(Error::BadSurface("no marked points".into()));
        }
        let (g, b, p) = (self.genus, self.boundary.as_slice(), self.punctures);
        let bad = match (g, b) {
            (0, [1]) => p <= 1,
            (0, [2]) | (0, [3]) => p == 0,
            (0, []) => p <= 3,
            _ => false,
        };
        if bad {
            return Err(Error::BadSurface(format!(
                "excluded surface (genus {g}, boundary {b:?}, {p} punctures)"
            )));
        }
        Ok(())
    }

    /// Number of arcs in any triangulation.
    pub fn arc_count(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.boundary.len() as i64 + 3 * self.punctures as i64
            + self.marked_on_boundary() as i64
            - 6
    }

    /// Checks that a triangulation realizes this surface.
    pub fn check(&self, t: &IdealTriangulation) -> Result<()> {
        let expected = self.arc_count();
        if expected != t.n_arcs() as i64 {
            return Err(Error::WrongArcCount { expected, found: t.n_arcs() });
        }
        let mut want = self.boundary.clone();
        want.sort_unstable();
        let mut got: Vec<usize> = t.components().iter().map(|c| c.len()).collect();
        got.sort_unstable();
        if want != got {
            return Err(Error::BadSurface(format!("boundary components {got:?} do not match {want:?}")));
        }
        if t.punctures().len() != self.punctures {
            return Err(Error::BadSurface(format!(
                "gluing has {} punctures, expected {}",
                t.punctures().len(),
                self.punctures
            )));
        }
        if t.genus() != self.genus as i64 {
            return Err(Error::BadSurface(format!("gluing has genus {}, expected {}", t.genus(), self.genus)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_surfaces() {
        assert!(MarkedSurface::new(0, vec![1], 1).is_err());
        assert!(MarkedSurface::new(0, vec![2], 0).is_err());
        assert!(MarkedSurface::new(0, vec![3], 0).is_err());
        assert!(MarkedSurface::new(0, vec![], 3).is_err());
        assert!(MarkedSurface::new(0, vec![2], 1).is_ok());
        assert!(MarkedSurface::new(1, vec![], 1).is_ok());
    }

    #[test]
    fn arc_counts() {
        assert_eq!(MarkedSurface::new(1, vec![], 1).unwrap().arc_count(), 3);
        assert_eq!(MarkedSurface::new(0, vec![5], 0).unwrap().arc_count(), 2);
        assert_eq!(MarkedSurface::new(0, vec![1, 1], 0).unwrap().arc_count(), 2);
        assert_eq!(MarkedSurface::new(0, vec![2], 1).unwrap().arc_count(), 2);
    }
}
