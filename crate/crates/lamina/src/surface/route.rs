//! Arcs drawn on the reference triangulation. A route is either one of the
//! reference sides or a nonempty sequence of crossings (exit slots); its
//! endpoints sit in the corners opposite the first and last crossing.

use serde::{Deserialize, Serialize};

use super::ideal::{corner, Corner, IdealTriangulation, Rot, Slot};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    pub fn toggle(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Route {
    /// A reference side; `forward` follows the ccw orientation of its
    /// triangle. Only boundary sides are ever stored backwards.
    Side { slot: Slot, forward: bool },
    Path(Vec<Slot>),
}

/// A curve between two corners (possibly unreduced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerPath {
    pub start: Corner,
    pub xs: Vec<Slot>,
    pub end: Corner,
}

impl Route {
    pub fn side(r: &IdealTriangulation, s: Slot) -> Route {
        let _ = r;
        Route::Side { slot: s, forward: true }
    }

    pub fn is_side(&self) -> bool {
        matches!(self, Route::Side { .. })
    }

    pub fn crossings(&self) -> &[Slot] {
        match self {
            Route::Side { .. } => &[],
            Route::Path(xs) => xs,
        }
    }

    pub fn reverse(&self, r: &IdealTriangulation) -> Route {
        match self {
            Route::Side { slot, forward } => match r.partner(*slot) {
                Some(p) => Route::Side { slot: p, forward: true },
                None => Route::Side { slot: *slot, forward: !forward },
            },
            Route::Path(xs) => Route::Path(xs.iter().rev().map(|&x| r.partner(x).expect("crossed side is an arc")).collect()),
        }
    }

    pub fn canonical(&self, r: &IdealTriangulation) -> Route {
        let rev = self.reverse(r);
        if rev < *self {
            rev
        } else {
            self.clone()
        }
    }

    pub fn to_corner_path(&self, r: &IdealTriangulation) -> CornerPath {
        match self {
            Route::Side { slot, forward } => match (r.partner(*slot), forward) {
                // run alongside, just to the right
                (Some(p), true) => CornerPath { start: corner(p.tri, p.pos + 1), xs: vec![], end: corner(p.tri, p.pos) },
                (Some(_), false) => Route::Side { slot: *slot, forward: false }.reverse(r).to_corner_path(r).reverse(r),
                (None, true) => CornerPath { start: corner(slot.tri, slot.pos), xs: vec![], end: corner(slot.tri, slot.pos + 1) },
                (None, false) => CornerPath { start: corner(slot.tri, slot.pos + 1), xs: vec![], end: corner(slot.tri, slot.pos) },
            },
            Route::Path(xs) => {
                let first = xs[0];
                let last = r.partner(*xs.last().unwrap()).expect("crossed side is an arc");
                CornerPath {
                    start: corner(first.tri, first.pos + 2),
                    xs: xs.clone(),
                    end: corner(last.tri, last.pos + 2),
                }
            }
        }
    }

    pub fn start_point(&self, r: &IdealTriangulation) -> usize {
        match self {
            Route::Side { slot, forward: true } => r.slot_start(*slot),
            Route::Side { slot, forward: false } => r.slot_end(*slot),
            Route::Path(xs) => r.vertex(corner(xs[0].tri, xs[0].pos + 2)),
        }
    }

    pub fn end_point(&self, r: &IdealTriangulation) -> usize {
        self.reverse(r).start_point(r)
    }
}

impl CornerPath {
    pub fn reverse(&self, r: &IdealTriangulation) -> CornerPath {
        CornerPath {
            start: self.end,
            xs: self.xs.iter().rev().map(|&x| r.partner(x).expect("crossed side is an arc")).collect(),
            end: self.start,
        }
    }

    pub fn check(&self, r: &IdealTriangulation) -> Result<()> {
        let mut tri = self.start.tri;
        for &x in &self.xs {
            if x.tri != tri {
                return Err(Error::NotATraversal(format!("crossing {x:?} does not leave triangle {tri}")));
            }
            tri = r.partner(x).ok_or_else(|| Error::NotATraversal("crossing a boundary segment".into()))?.tri;
        }
        if tri != self.end.tri {
            return Err(Error::NotATraversal("path does not arrive in its end corner".into()));
        }
        Ok(())
    }

    /// Drops crossings that merely rotate around the starting point.
    fn absorb_start(&mut self, r: &IdealTriangulation) -> bool {
        let mut k = 0;
        while k < self.xs.len() {
            let x = self.xs[k];
            let c0 = self.start.pos;
            let p = r.partner(x).expect("crossed side is an arc");
            if x.pos == c0 {
                self.start = corner(p.tri, p.pos + 1);
            } else if x.pos == (c0 + 2) % 3 {
                self.start = corner(p.tri, p.pos);
            } else {
                break;
            }
            k += 1;
        }
        self.xs.drain(..k);
        k > 0
    }

    /// Cancels backtracks and corner rotations at both ends.
    pub fn reduce(&self, r: &IdealTriangulation) -> Result<Route> {
        self.check(r)?;
        let mut out: Vec<Slot> = Vec::with_capacity(self.xs.len());
        for &x in &self.xs {
            if let Some(&last) = out.last() {
                if r.partner(last) == Some(x) {
                    out.pop();
                    continue;
                }
            }
            out.push(x);
        }
        let mut cp = CornerPath { start: self.start, xs: out, end: self.end };
        loop {
            let a = cp.absorb_start(r);
            let mut rev = cp.reverse(r);
            let b = rev.absorb_start(r);
            cp = rev.reverse(r);
            if !a && !b {
                break;
            }
        }
        if !cp.xs.is_empty() {
            return Ok(Route::Path(cp.xs));
        }
        let (t, c0, e) = (cp.start.tri, cp.start.pos, cp.end.pos);
        if e == (c0 + 1) % 3 {
            Ok(Route::Side { slot: Slot { tri: t, pos: c0 }, forward: true })
        } else if e == (c0 + 2) % 3 {
            let s = Slot { tri: t, pos: (c0 + 2) % 3 };
            Ok(match r.partner(s) {
                Some(p) => Route::Side { slot: p, forward: true },
                None => Route::Side { slot: s, forward: false },
            })
        } else {
            Err(Error::Input("curve contracts into a marked point".into()))
        }
    }

    /// Orders curves leaving the same corner: compares greater when further
    /// counterclockwise.
    pub fn away_signature(&self, r: &IdealTriangulation) -> Vec<i8> {
        let c = self.start.pos;
        if self.xs.is_empty() {
            return vec![if self.end.pos == (c + 1) % 3 { -1 } else { 1 }];
        }
        let mut sig = vec![0];
        for w in self.xs.windows(2) {
            let k = r.partner(w[0]).unwrap().pos;
            sig.push(if w[1].pos == (k + 2) % 3 { 1 } else { -1 });
        }
        sig.push(0);
        sig
    }
}

/// Crossings made by rotating around a point from one corner to another.
/// With `full` set and equal corners, goes once around.
pub fn rotation(r: &IdealTriangulation, from: Corner, to: Corner, dir: Rot, full: bool) -> Result<Vec<Slot>> {
    let mut xs = Vec::new();
    let mut c = from;
    if c == to && !full {
        return Ok(xs);
    }
    let limit = 3 * r.triangles().len() + 1;
    loop {
        let (x, next) = r
            .rotate(c, dir)
            .ok_or_else(|| Error::Input("rotation runs into the boundary".into()))?;
        xs.push(x);
        c = next;
        if c == to {
            return Ok(xs);
        }
        if xs.len() > limit {
            return Err(Error::Input("rotation does not reach its target corner".into()));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TaggedArc {
    pub route: Route,
    pub ends: [usize; 2],
    pub tags: [Tag; 2],
}

impl TaggedArc {
    pub fn new(r: &IdealTriangulation, route: Route, tags: [Tag; 2]) -> Result<Self> {
        let ends = [route.start_point(r), route.end_point(r)];
        for k in 0..2 {
            if tags[k] == Tag::Notched && !r.is_puncture(ends[k]) {
                return Err(Error::IllegalTag(format!("notched end at boundary point {}", r.points()[ends[k]].name)));
            }
        }
        if ends[0] == ends[1] && tags[0] != tags[1] {
            return Err(Error::IllegalTag("loop with different tags at its ends".into()));
        }
        Ok(TaggedArc { route, ends, tags })
    }

    pub fn reverse(&self, r: &IdealTriangulation) -> TaggedArc {
        TaggedArc {
            route: self.route.reverse(r),
            ends: [self.ends[1], self.ends[0]],
            tags: [self.tags[1], self.tags[0]],
        }
    }

    pub fn canonical(&self, r: &IdealTriangulation) -> TaggedArc {
        let rev = self.reverse(r);
        if rev < *self {
            rev
        } else {
            self.clone()
        }
    }

    pub fn toggle_at(&self, p: usize) -> TaggedArc {
        let mut out = self.clone();
        for k in 0..2 {
            if out.ends[k] == p {
                out.tags[k] = out.tags[k].toggle();
            }
        }
        out
    }

    /// Tagged rotation: each boundary endpoint slides to the neighbouring
    /// marked point on its boundary component, each puncture tag inverts.
    /// `toward` names the boundary segment at the endpoint that is followed:
    /// `Rot::Cw` takes the clockwise-most one of the fan.
    pub fn rotate(&self, r: &IdealTriangulation, toward: Rot) -> Result<TaggedArc> {
        let mut cp = self.route.to_corner_path(r);
        let mut tags = self.tags;
        for k in 0..2 {
            if r.is_puncture(self.ends[k]) {
                tags[k] = tags[k].toggle();
            }
        }
        for k in 0..2 {
            if !r.is_puncture(self.ends[k]) {
                cp = drag_start(r, &cp, toward)?;
            }
            cp = cp.reverse(r);
        }
        let route = cp.reduce(r)?;
        TaggedArc::new(r, route, tags)
    }
}

fn drag_start(r: &IdealTriangulation, cp: &CornerPath, toward: Rot) -> Result<CornerPath> {
    let c = cp.start;
    let fan = r.fan(r.vertex(c));
    let (start, steps) = match toward {
        Rot::Ccw => {
            let f0 = fan[0];
            (corner(f0.tri, f0.pos + 2), rotation(r, f0, c, Rot::Cw, false)?)
        }
        Rot::Cw => {
            let fl = *fan.last().unwrap();
            (corner(fl.tri, fl.pos + 1), rotation(r, fl, c, Rot::Ccw, false)?)
        }
    };
    let mut xs = steps;
    xs.extend_from_slice(&cp.xs);
    Ok(CornerPath { start, xs, end: cp.end })
}

/// Compatibility of tagged arcs whose underlying arcs belong to a known set
/// of pairwise non-crossing arcs.
pub fn compatible(r: &IdealTriangulation, a: &TaggedArc, b: &TaggedArc, context: &[Route]) -> Result<bool> {
    let ua = a.route.canonical(r);
    let ub = b.route.canonical(r);
    let known = |u: &Route| context.iter().any(|c| c.canonical(r) == *u);
    if !known(&ua) || !known(&ub) {
        return Err(Error::UnknownIntersectionData);
    }
    if ua == ub {
        let b = if a.route == b.route { b.clone() } else { b.reverse(r) };
        return Ok(a.tags[0] == b.tags[0] || a.tags[1] == b.tags[1]);
    }
    for i in 0..2 {
        for j in 0..2 {
            if a.ends[i] == b.ends[j] && a.tags[i] != b.tags[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
