//! Tagged triangulations whose arcs are followed as routes on the reference
//! triangulation they started from, so triangulations reached along
//! different flip sequences can be compared.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::ideal::{IdealTriangulation, Rot};
use super::route::{rotation, CornerPath, Route, TaggedArc};
use super::tagged::{FlipInfo, TaggedTriangulation};
use crate::error::Result;
use crate::exec::{self, Exec};

/// Which boundary neighbour an endpoint moves to under tagged rotation.
pub type RotateToward = Rot;

#[derive(Clone, Debug)]
pub struct TrackedTriangulation {
    reference: Arc<IdealTriangulation>,
    tagged: TaggedTriangulation,
    /// Route of each side of each current base triangle, oriented ccw.
    routes: Vec<[Route; 3]>,
}

impl TrackedTriangulation {
    /// The base of `tagged` becomes the reference triangulation.
    pub fn new(tagged: TaggedTriangulation) -> Self {
        let reference = Arc::new(tagged.base().clone());
        let routes = (0..reference.triangles().len())
            .map(|t| [0, 1, 2].map(|k| Route::side(&reference, super::ideal::slot(t, k))))
            .collect();
        TrackedTriangulation { reference, tagged, routes }
    }

    pub fn reference(&self) -> &IdealTriangulation {
        &self.reference
    }

    pub fn tagged(&self) -> &TaggedTriangulation {
        &self.tagged
    }

    pub fn size(&self) -> usize {
        self.tagged.size()
    }

    /// Route of a base arc along its first side.
    pub fn base_route(&self, arc: usize) -> &Route {
        let s = self.tagged.base().arc_slots(arc)[0];
        &self.routes[s.tri][s.pos]
    }

    pub fn tagged_arc(&self, pos: usize) -> TaggedArc {
        let (arc, ends, tags) = self.tagged.tagged_ends(pos);
        let base = self.tagged.base();
        let s = base
            .arc_slots(arc)
            .into_iter()
            .find(|&s| base.slot_start(s) == ends[0])
            .expect("arc starts at its first end");
        let route = self.routes[s.tri][s.pos].clone();
        TaggedArc { route, ends, tags }
    }

    pub fn tagged_arcs(&self) -> Vec<TaggedArc> {
        (0..self.size()).map(|i| self.tagged_arc(i)).collect()
    }

    /// Canonical description as a set of tagged arcs.
    pub fn key(&self) -> Vec<TaggedArc> {
        let mut k: Vec<TaggedArc> = self.tagged_arcs().iter().map(|a| a.canonical(&self.reference)).collect();
        k.sort();
        k
    }

    /// Underlying arcs of the current base, canonicalized. Pairwise
    /// non-crossing, so they serve as context for compatibility checks.
    pub fn underlying_routes(&self) -> Vec<Route> {
        let base = self.tagged.base();
        let mut out: Vec<Route> = (0..base.n_arcs()).map(|a| self.base_route(a).canonical(&self.reference)).collect();
        out.sort();
        out
    }

    pub fn flip(&self, pos: usize) -> Result<(TrackedTriangulation, FlipInfo)> {
        let (next, info) = self.tagged.flip(pos)?;
        let old = self.tagged.base();
        let [s1, s2] = old.arc_slots(info.base_arc);
        let at = |s: super::ideal::Slot, k: usize| self.routes[s.tri][(s.pos + k) % 3].clone();
        let (a, b, c, d) = (at(s1, 1), at(s1, 2), at(s2, 1), at(s2, 2));
        let nu = self.diagonal(&a, &d)?;
        let nu_rev = nu.reverse(&self.reference);
        let mut routes = self.routes.clone();
        routes[s1.tri] = [d, a, nu];
        routes[s2.tri] = [b, c, nu_rev];
        Ok((TrackedTriangulation { reference: self.reference.clone(), tagged: next, routes }, info))
    }

    /// The new diagonal of a flipped quadrilateral: back along `a`, around
    /// their common point counterclockwise, then back along `d`.
    fn diagonal(&self, a: &Route, d: &Route) -> Result<Route> {
        let r = &*self.reference;
        let into = a.reverse(r).to_corner_path(r);
        let out = d.reverse(r).to_corner_path(r);
        let full = if into.end != out.start || a.is_side() || d.is_side() {
            false
        } else {
            let sa = a.to_corner_path(r).away_signature(r);
            let sd = out.away_signature(r);
            sd <= sa
        };
        let steps = rotation(r, into.end, out.start, Rot::Ccw, full)?;
        let mut xs = into.xs;
        xs.extend(steps);
        xs.extend(out.xs);
        CornerPath { start: into.start, xs, end: out.end }.reduce(r)
    }

    /// Tagged rotation of every arc.
    pub fn rotated(&self, toward: RotateToward) -> Result<Vec<TaggedArc>> {
        self.tagged_arcs().iter().map(|a| a.rotate(&self.reference, toward)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FlipBfsNode {
    pub id: usize,
    pub depth: usize,
    pub path: Vec<usize>,
    pub tri: TrackedTriangulation,
}

/// Breadth-first search over flips, deduplicated by tagged-arc sets. Within a
/// level, nodes are ordered by (parent, flipped position).
pub fn flip_bfs(start: &TrackedTriangulation, depth: usize, exec: Exec) -> Result<Vec<FlipBfsNode>> {
    let mut seen: BTreeSet<Vec<TaggedArc>> = BTreeSet::new();
    seen.insert(start.key());
    let mut nodes = vec![FlipBfsNode { id: 0, depth: 0, path: vec![], tri: start.clone() }];
    let mut frontier = vec![0usize];
    for level in 1..=depth {
        let parents: Vec<&FlipBfsNode> = frontier.iter().map(|&i| &nodes[i]).collect();
        let children: Vec<Result<Vec<(Vec<usize>, TrackedTriangulation, Vec<TaggedArc>)>>> =
            exec::map(exec, &parents, |p| {
                (0..p.tri.size())
                    .map(|k| {
                        let (t, _) = p.tri.flip(k)?;
                        let key = t.key();
                        let mut path = p.path.clone();
                        path.push(k);
                        Ok((path, t, key))
                    })
                    .collect()
            });
        let mut next = Vec::new();
        for batch in children {
            for (path, tri, key) in batch? {
                if seen.insert(key) {
                    let id = nodes.len();
                    nodes.push(FlipBfsNode { id, depth: level, path, tri });
                    next.push(id);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(nodes)
}
