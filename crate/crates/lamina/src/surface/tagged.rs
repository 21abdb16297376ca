//! Tagged triangulations in normal form: an ideal base triangulation plus the
//! set of punctures at which every tag is inverted. No puncture of a
//! self-folded triangle is ever in the inverted set; such a pair is rewritten
//! by swapping the positions of the loop and its inner arc.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ideal::{IdealTriangulation, Side};
use super::route::Tag;
use crate::cluster::Quiver;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedTriangulation {
    base: IdealTriangulation,
    flipped: BTreeSet<usize>,
    /// Base arc carried by each position.
    pos_base: Vec<usize>,
    names: Vec<String>,
    parents: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipInfo {
    pub position: usize,
    pub old_name: String,
    pub new_name: String,
    /// Base arc replaced by the ideal flip underneath.
    pub base_arc: usize,
}

impl TaggedTriangulation {
    /// Positions start out as the base arcs in index order.
    pub fn new(base: IdealTriangulation, flipped: BTreeSet<usize>) -> Result<Self> {
        for &p in &flipped {
            if p >= base.points().len() || !base.is_puncture(p) {
                return Err(Error::IllegalTag(format!("tags can only be inverted at punctures (point {p})")));
            }
        }
        let names = base.arc_names().to_vec();
        let n = names.len();
        let mut t = TaggedTriangulation {
            base,
            flipped,
            pos_base: (0..n).collect(),
            parents: vec![None; n],
            names,
        };
        t.normalize();
        Ok(t)
    }

    fn normalize(&mut self) {
        for sf in self.base.self_folded() {
            if self.flipped.remove(&sf.puncture) {
                let i = self.position_of_base(sf.loop_arc);
                let j = self.position_of_base(sf.inner_arc);
                self.pos_base.swap(i, j);
            }
        }
    }

    pub fn base(&self) -> &IdealTriangulation {
        &self.base
    }

    pub fn flipped(&self) -> &BTreeSet<usize> {
        &self.flipped
    }

    pub fn size(&self) -> usize {
        self.pos_base.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parent(&self, pos: usize) -> Option<&str> {
        self.parents[pos].as_deref()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or(Error::ArcNotInTriangulation(usize::MAX))
    }

    pub fn base_arc(&self, pos: usize) -> usize {
        self.pos_base[pos]
    }

    pub fn position_of_base(&self, arc: usize) -> usize {
        self.pos_base.iter().position(|&b| b == arc).expect("every base arc has a position")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    /// The underlying ideal arc of a position (the inner arc for a loop) and
    /// its tags, ordered along the arc's first side.
    pub fn tagged_ends(&self, pos: usize) -> (usize, [usize; 2], [Tag; 2]) {
        let b = self.pos_base[pos];
        let (arc, ends, mut tags) = match self.base.self_folded_of_loop(b) {
            Some(sf) => (sf.inner_arc, [sf.base_point, sf.puncture], [Tag::Plain, Tag::Notched]),
            None => {
                let s = self.base.arc_slots(b)[0];
                (b, [self.base.slot_start(s), self.base.slot_end(s)], [Tag::Plain, Tag::Plain])
            }
        };
        for k in 0..2 {
            if self.flipped.contains(&ends[k]) {
                tags[k] = tags[k].toggle();
            }
        }
        (arc, ends, tags)
    }

    /// Signed adjacency over positions: every non-self-folded triangle adds
    /// an arrow from each side to the next one counterclockwise, with an
    /// inner arc standing in for its loop as well.
    pub fn quiver(&self) -> Quiver {
        let n = self.base.n_arcs();
        let mut carriers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 0..n {
            carriers[a].push(a);
        }
        for sf in self.base.self_folded() {
            carriers[sf.loop_arc].push(sf.inner_arc);
        }
        let mut bb = vec![vec![0i64; n]; n];
        for tri in self.base.triangles() {
            let is_self_folded = (0..3).any(|k| tri[k] == tri[(k + 1) % 3]);
            if is_self_folded {
                continue;
            }
            for k in 0..3 {
                if let (Side::Arc(x), Side::Arc(y)) = (tri[k], tri[(k + 1) % 3]) {
                    for &i in &carriers[x] {
                        for &j in &carriers[y] {
                            bb[i][j] += 1;
                            bb[j][i] -= 1;
                        }
                    }
                }
            }
        }
        let m = self.size();
        let mut b = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                b[i][j] = bb[self.pos_base[i]][self.pos_base[j]];
            }
        }
        Quiver::new(b).expect("signed adjacency is skew-symmetric")
    }

    /// Flips the tagged arc at a position. The flipped arc gets a fresh name
    /// with its old name recorded as parent.
    pub fn flip(&self, pos: usize) -> Result<(TaggedTriangulation, FlipInfo)> {
        if pos >= self.size() {
            return Err(Error::ArcNotInTriangulation(pos));
        }
        let b = self.pos_base[pos];
        let mut next = self.clone();
        let base_arc = match self.base.self_folded_of_inner(b) {
            None => {
                let (t, _) = self.base.flip_arc(b)?;
                next.base = t;
                b
            }
            Some(sf) => {
                // read against the tag change at the puncture, this is a
                // flip of the loop
                let k2 = self.position_of_base(sf.loop_arc);
                let (t, _) = self.base.flip_arc(sf.loop_arc)?;
                next.base = t;
                next.pos_base[pos] = sf.loop_arc;
                next.pos_base[k2] = sf.inner_arc;
                next.flipped.insert(sf.puncture);
                sf.loop_arc
            }
        };
        next.normalize();
        let old_name = self.names[pos].clone();
        let new_name = fresh_name(&old_name, &self.names);
        next.names[pos] = new_name.clone();
        next.parents[pos] = Some(old_name.clone());
        Ok((next, FlipInfo { position: pos, old_name, new_name, base_arc }))
    }

    /// Key identifying the triangulation up to renumbering of triangles and
    /// rotation of each triangle. Depends on base arc indices, so it is only
    /// meaningful between triangulations related by a known flip sequence.
    pub fn layout_key(&self) -> (Vec<[(Side, usize); 3]>, Vec<usize>, Vec<usize>) {
        let mut tris: Vec<[(Side, usize); 3]> = self
            .base
            .triangles()
            .iter()
            .zip(self.base.corner_vertices())
            .map(|(t, v)| {
                (0..3)
                    .map(|r| [(t[r], v[r]), (t[(r + 1) % 3], v[(r + 1) % 3]), (t[(r + 2) % 3], v[(r + 2) % 3])])
                    .min()
                    .unwrap()
            })
            .collect();
        tris.sort();
        (tris, self.flipped.iter().copied().collect(), self.pos_base.clone())
    }
}

fn fresh_name(old: &str, taken: &[String]) -> String {
    let mut name = format!("{old}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}
