//! Ideal triangulations as lists of ccw triangles. Side k of a triangle runs
//! from its corner k to corner k+1; an internal arc occupies two sides, glued
//! with opposite orientations. Corner k sits between sides k and k−1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Arc(usize),
    Bdry(usize),
}

/// A side position (triangle, side index). Used both for "the side" and, when
/// a curve crosses it, for "leave this triangle through that side".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub tri: usize,
    pub pos: usize,
}

/// A corner (triangle, corner index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub tri: usize,
    pub pos: usize,
}

pub fn slot(tri: usize, pos: usize) -> Slot {
    Slot { tri, pos: pos % 3 }
}

pub fn corner(tri: usize, pos: usize) -> Corner {
    Corner { tri, pos: pos % 3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rot {
    Cw,
    Ccw,
}

impl Rot {
    pub fn flip(self) -> Rot {
        match self {
            Rot::Cw => Rot::Ccw,
            Rot::Ccw => Rot::Cw,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PointKind {
    Puncture,
    Boundary { component: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Point {
    pub name: String,
    pub kind: PointKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelfFolded {
    pub tri: usize,
    pub loop_arc: usize,
    pub inner_arc: usize,
    pub puncture: usize,
    /// Boundary-facing vertex of the loop.
    pub base_point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    triangles: Vec<[Side; 3]>,
    corner_vertex: Vec<[usize; 3]>,
    points: Vec<Point>,
    arc_names: Vec<String>,
    bdry_names: Vec<String>,
    arc_slots: Vec<[Slot; 2]>,
    bdry_slot: Vec<Slot>,
    components: Vec<Vec<usize>>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn side_slots(triangles: &[[Side; 3]], n_arcs: usize, n_bdry: usize) -> Result<(Vec<[Slot; 2]>, Vec<Slot>)> {
    let mut arcs: Vec<Vec<Slot>> = vec![Vec::new(); n_arcs];
    let mut bd: Vec<Vec<Slot>> = vec![Vec::new(); n_bdry];
    for (t, tri) in triangles.iter().enumerate() {
        for (k, s) in tri.iter().enumerate() {
            match *s {
                Side::Arc(a) if a < n_arcs => arcs[a].push(slot(t, k)),
                Side::Bdry(b) if b < n_bdry => bd[b].push(slot(t, k)),
                _ => return Err(Error::NonManifoldGluing(format!("side index out of range in triangle {t}"))),
            }
        }
    }
    let mut arc_slots = Vec::with_capacity(n_arcs);
    for (a, v) in arcs.iter().enumerate() {
        if v.len() != 2 {
            return Err(Error::NonManifoldGluing(format!("arc {a} occupies {} sides", v.len())));
        }
        arc_slots.push([v[0], v[1]]);
    }
    let mut bdry_slot = Vec::with_capacity(n_bdry);
    for (b, v) in bd.iter().enumerate() {
        if v.len() != 1 {
            return Err(Error::NonManifoldGluing(format!("boundary segment {b} occupies {} sides", v.len())));
        }
        bdry_slot.push(v[0]);
    }
    Ok((arc_slots, bdry_slot))
}

impl IdealTriangulation {
    /// Builds the triangulation, deriving marked points from the gluing.
    /// Punctures are named p0, p1, ... and boundary points m0, m1, ... in
    /// order of first appearance (triangle by triangle, corner by corner).
    pub fn new(triangles: Vec<[Side; 3]>, arc_names: Vec<String>, bdry_names: Vec<String>) -> Result<Self> {
        let (arc_slots, _) = side_slots(&triangles, arc_names.len(), bdry_names.len())?;
        let f = triangles.len();
        let mut dsu = Dsu((0..3 * f).collect());
        for s in &arc_slots {
            let (a, b) = (s[0], s[1]);
            dsu.union(3 * a.tri + a.pos, 3 * b.tri + (b.pos + 1) % 3);
            dsu.union(3 * a.tri + (a.pos + 1) % 3, 3 * b.tri + b.pos);
        }
        let mut on_boundary = vec![false; 3 * f];
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                if matches!(tri[k], Side::Bdry(_)) {
                    on_boundary[3 * t + k] = true;
                    on_boundary[3 * t + (k + 1) % 3] = true;
                }
            }
        }
        let mut class_bdry: BTreeMap<usize, bool> = BTreeMap::new();
        for c in 0..3 * f {
            let r = dsu.find(c);
            *class_bdry.entry(r).or_insert(false) |= on_boundary[c];
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut points = Vec::new();
        let (mut np, mut nm) = (0, 0);
        let mut corner_vertex = vec![[0usize; 3]; f];
        for c in 0..3 * f {
            let r = dsu.find(c);
            let id = *ids.entry(r).or_insert_with(|| {
                let bd = class_bdry[&r];
                let name = if bd {
                    nm += 1;
                    format!("m{}", nm - 1)
                } else {
                    np += 1;
                    format!("p{}", np - 1)
                };
                points.push(Point {
                    name,
                    kind: if bd { PointKind::Boundary { component: usize::MAX } } else { PointKind::Puncture },
                });
                points.len() - 1
            });
            corner_vertex[c / 3][c % 3] = id;
        }
        Self::from_parts(triangles, corner_vertex, points, arc_names, bdry_names)
    }

    /// Builds from explicit corner vertices (used after flips so point
    /// identities survive).
    pub fn from_parts(
        triangles: Vec<[Side; 3]>,
        corner_vertex: Vec<[usize; 3]>,
        mut points: Vec<Point>,
        arc_names: Vec<String>,
        bdry_names: Vec<String>,
    ) -> Result<Self> {
        let (arc_slots, bdry_slot) = side_slots(&triangles, arc_names.len(), bdry_names.len())?;
        for s in &arc_slots {
            let (a, b) = (s[0], s[1]);
            if corner_vertex[a.tri][a.pos] != corner_vertex[b.tri][(b.pos + 1) % 3]
                || corner_vertex[a.tri][(a.pos + 1) % 3] != corner_vertex[b.tri][b.pos]
            {
                return Err(Error::NonManifoldGluing("glued corners carry different points".into()));
            }
        }
        // boundary components: follow segments head to tail
        let mut starting_at: BTreeMap<usize, usize> = BTreeMap::new();
        for (b, s) in bdry_slot.iter().enumerate() {
            let v = corner_vertex[s.tri][s.pos];
            if starting_at.insert(v, b).is_some() {
                return Err(Error::NonManifoldGluing(format!("two boundary segments start at {}", points[v].name)));
            }
        }
        let mut comp_of = vec![usize::MAX; bdry_slot.len()];
        let mut components = Vec::new();
        for b0 in 0..bdry_slot.len() {
            if comp_of[b0] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut b = b0;
            loop {
                comp_of[b] = components.len();
                cyc.push(b);
                let s = bdry_slot[b];
                let head = corner_vertex[s.tri][(s.pos + 1) % 3];
                b = *starting_at
                    .get(&head)
                    .ok_or_else(|| Error::NonManifoldGluing("boundary does not close up".into()))?;
                if b == b0 {
                    break;
                }
                if comp_of[b] != usize::MAX {
                    return Err(Error::NonManifoldGluing("boundary segments branch".into()));
                }
            }
            components.push(cyc);
        }
        for (b, s) in bdry_slot.iter().enumerate() {
            let v = corner_vertex[s.tri][s.pos];
            points[v].kind = PointKind::Boundary { component: comp_of[b] };
        }
        let t = IdealTriangulation {
            triangles,
            corner_vertex,
            points,
            arc_names,
            bdry_names,
            arc_slots,
            bdry_slot,
            components,
        };
        t.check_fans()?;
        Ok(t)
    }

    /// Every puncture's corners must form a single cycle and every boundary
    /// point's corners a single chain.
    fn check_fans(&self) -> Result<()> {
        let mut count = vec![0usize; self.points.len()];
        for cv in &self.corner_vertex {
            for &v in cv {
                count[v] += 1;
            }
        }
        for (v, p) in self.points.iter().enumerate() {
            let fan = self.fan(v);
            if fan.len() != count[v] {
                return Err(Error::NonManifoldGluing(format!(
                    "corners at {} do not form a single fan ({} of {})",
                    p.name,
                    fan.len(),
                    count[v]
                )));
            }
        }
        Ok(())
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn n_arcs(&self) -> usize {
        self.arc_names.len()
    }

    pub fn n_bdry(&self) -> usize {
        self.bdry_names.len()
    }

    pub fn arc_names(&self) -> &[String] {
        &self.arc_names
    }

    pub fn bdry_names(&self) -> &[String] {
        &self.bdry_names
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn corner_vertices(&self) -> &[[usize; 3]] {
        &self.corner_vertex
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_puncture(&self, v: usize) -> bool {
        self.points[v].kind == PointKind::Puncture
    }

    pub fn punctures(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&v| self.is_puncture(v)).collect()
    }

    pub fn point_by_name(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    pub fn arc_by_name(&self, name: &str) -> Option<usize> {
        self.arc_names.iter().position(|p| p == name)
    }

    pub fn bdry_by_name(&self, name: &str) -> Option<usize> {
        self.bdry_names.iter().position(|p| p == name)
    }

    pub fn side(&self, s: Slot) -> Side {
        self.triangles[s.tri][s.pos]
    }

    pub fn arc_slots(&self, a: usize) -> [Slot; 2] {
        self.arc_slots[a]
    }

    pub fn bdry_slot(&self, b: usize) -> Slot {
        self.bdry_slot[b]
    }

    /// The other side of an arc; None for boundary segments.
    pub fn partner(&self, s: Slot) -> Option<Slot> {
        match self.side(s) {
            Side::Arc(a) => {
                let [x, y] = self.arc_slots[a];
                Some(if x == s { y } else { x })
            }
            Side::Bdry(_) => None,
        }
    }

    pub fn vertex(&self, c: Corner) -> usize {
        self.corner_vertex[c.tri][c.pos]
    }

    /// Tail point of the side in its triangle's orientation.
    pub fn slot_start(&self, s: Slot) -> usize {
        self.corner_vertex[s.tri][s.pos]
    }

    pub fn slot_end(&self, s: Slot) -> usize {
        self.corner_vertex[s.tri][(s.pos + 1) % 3]
    }

    /// The side a rotation leaves the corner through.
    pub fn rot_exit(&self, c: Corner, dir: Rot) -> Slot {
        match dir {
            Rot::Cw => slot(c.tri, c.pos),
            Rot::Ccw => slot(c.tri, c.pos + 2),
        }
    }

    /// One rotation step around the corner's point: the side crossed and the
    /// corner reached. None when the side is a boundary segment.
    pub fn rotate(&self, c: Corner, dir: Rot) -> Option<(Slot, Corner)> {
        let exit = self.rot_exit(c, dir);
        let p = self.partner(exit)?;
        let next = match dir {
            Rot::Cw => corner(p.tri, p.pos + 1),
            Rot::Ccw => corner(p.tri, p.pos),
        };
        Some((exit, next))
    }

    /// Corners around a point in clockwise order. For a boundary point the
    /// list starts at the corner whose counterclockwise side is a boundary
    /// segment.
    pub fn fan(&self, v: usize) -> Vec<Corner> {
        let Some(start) = self.any_corner(v) else { return Vec::new() };
        let mut first = start;
        // walk counterclockwise to the boundary if there is one
        let mut guard = 0;
        while let Some((_, c)) = self.rotate(first, Rot::Ccw) {
            if c == start || guard > 3 * self.triangles.len() {
                break;
            }
            first = c;
            guard += 1;
        }
        let is_cycle = self.rotate(first, Rot::Ccw).is_some();
        if is_cycle {
            first = start;
        }
        let mut out = vec![first];
        let mut cur = first;
        while let Some((_, c)) = self.rotate(cur, Rot::Cw) {
            if c == first || out.len() > 3 * self.triangles.len() {
                break;
            }
            out.push(c);
            cur = c;
        }
        out
    }

    fn any_corner(&self, v: usize) -> Option<Corner> {
        for (t, cv) in self.corner_vertex.iter().enumerate() {
            for k in 0..3 {
                if cv[k] == v {
                    return Some(corner(t, k));
                }
            }
        }
        None
    }

    /// Number of corners at a point.
    pub fn degree(&self, v: usize) -> usize {
        self.corner_vertex.iter().flatten().filter(|&&x| x == v).count()
    }

    pub fn self_folded(&self) -> Vec<SelfFolded> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if let (Side::Arc(a), Side::Arc(b), Side::Arc(l)) = (tri[(k + 1) % 3], tri[(k + 2) % 3], tri[k]) {
                    if a == b {
                        out.push(SelfFolded {
                            tri: t,
                            loop_arc: l,
                            inner_arc: a,
                            puncture: self.corner_vertex[t][(k + 2) % 3],
                            base_point: self.corner_vertex[t][k],
                        });
                    }
                }
            }
        }
        out
    }

    pub fn self_folded_of_inner(&self, arc: usize) -> Option<SelfFolded> {
        self.self_folded().into_iter().find(|s| s.inner_arc == arc)
    }

    pub fn self_folded_of_loop(&self, arc: usize) -> Option<SelfFolded> {
        self.self_folded().into_iter().find(|s| s.loop_arc == arc)
    }

    /// Euler characteristic V − E + F.
    pub fn euler(&self) -> i64 {
        self.points.len() as i64 - (self.n_arcs() + self.n_bdry()) as i64 + self.triangles.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.components.len() as i64 - self.euler()) / 2
    }

    /// Replaces an arc that is not the inner arc of a self-folded triangle by
    /// the other diagonal of its quadrilateral. The new arc keeps the index
    /// and name of the old one; returns the two rewritten triangles.
    pub fn flip_arc(&self, arc: usize) -> Result<(IdealTriangulation, [usize; 2])> {
        let [s1, s2] = self.arc_slots[arc];
        if s1.tri == s2.tri {
            return Err(Error::Input(format!("arc {} is the inner arc of a self-folded triangle", self.arc_names[arc])));
        }
        let at = |s: Slot, k: usize| self.triangles[s.tri][(s.pos + k) % 3];
        let vt = |s: Slot, k: usize| self.corner_vertex[s.tri][(s.pos + k) % 3];
        let (a, b) = (at(s1, 1), at(s1, 2));
        let (c, d) = (at(s2, 1), at(s2, 2));
        let (v0, v1, w1) = (vt(s1, 0), vt(s1, 1), vt(s1, 2));
        let w2 = vt(s2, 2);
        let mut tris = self.triangles.clone();
        let mut cv = self.corner_vertex.clone();
        tris[s1.tri] = [d, a, Side::Arc(arc)];
        cv[s1.tri] = [w2, v1, w1];
        tris[s2.tri] = [b, c, Side::Arc(arc)];
        cv[s2.tri] = [w1, v0, w2];
        let t = IdealTriangulation::from_parts(tris, cv, self.points.clone(), self.arc_names.clone(), self.bdry_names.clone())?;
        Ok((t, [s1.tri, s2.tri]))
    }
}
