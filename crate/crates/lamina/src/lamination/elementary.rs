//! Elementary laminates of tagged arcs, their inverse, and the splitting of
//! exceptional laminates into conjugate elementary pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{corner, rotation, Corner, CornerPath, IdealTriangulation, Rot, Route, Slot, Tag, TaggedArc};

use super::laminate::{End, Laminate};

fn spiral_dir(tag: Tag) -> Rot {
    match tag {
        Tag::Plain => Rot::Cw,
        Tag::Notched => Rot::Ccw,
    }
}

/// Clockwise walk around a boundary point from a corner until the boundary:
/// the crossings made and the boundary side reached.
fn to_boundary_cw(r: &IdealTriangulation, from: Corner) -> (Vec<Slot>, Slot) {
    let mut xs = Vec::new();
    let mut c = from;
    while let Some((x, next)) = r.rotate(c, Rot::Cw) {
        xs.push(x);
        c = next;
    }
    (xs, r.rot_exit(c, Rot::Cw))
}

/// The laminate running along a tagged arc: near a boundary endpoint it is
/// pushed clockwise onto the boundary, at a puncture it spirals clockwise if
/// the tag is plain and counterclockwise if notched.
pub fn elementary(r: &IdealTriangulation, d: &TaggedArc) -> Result<Laminate> {
    let (start, mut xs, end) = match &d.route {
        // a side of the reference: cross it once
        Route::Side { slot, forward: true } if r.partner(*slot).is_some() => {
            let p = r.partner(*slot).unwrap();
            (corner(p.tri, p.pos + 1), vec![p], corner(slot.tri, slot.pos + 1))
        }
        Route::Side { .. } => return Err(Error::Input("boundary segments have no elementary laminate".into())),
        route => {
            let cp = route.to_corner_path(r);
            (cp.start, cp.xs, cp.end)
        }
    };
    let start_end = if r.is_puncture(d.ends[0]) {
        End::Spiral { puncture: d.ends[0], dir: spiral_dir(d.tags[0]), corner: start }
    } else {
        let (steps, b) = to_boundary_cw(r, start);
        let mut pre: Vec<Slot> = steps.iter().rev().map(|&x| r.partner(x).unwrap()).collect();
        pre.append(&mut xs);
        xs = pre;
        End::Boundary(b)
    };
    let end_end = if r.is_puncture(d.ends[1]) {
        End::Spiral { puncture: d.ends[1], dir: spiral_dir(d.tags[1]), corner: end }
    } else {
        let (steps, b) = to_boundary_cw(r, end);
        xs.extend(steps);
        End::Boundary(b)
    };
    Laminate::open(r, start_end, xs, end_end)
}

fn end_corner(e: &End) -> (Corner, Tag) {
    match *e {
        End::Boundary(s) => (corner(s.tri, s.pos), Tag::Plain),
        End::Spiral { dir, corner, .. } => (corner, if dir == Rot::Cw { Tag::Plain } else { Tag::Notched }),
    }
}

/// The tagged arc whose elementary laminate is `l`, if there is one.
pub fn elementary_inverse(r: &IdealTriangulation, l: &Laminate) -> Option<TaggedArc> {
    // these shadow loops around a single puncture, which are not tagged arcs
    if split_exceptional(r, l).is_some() {
        return None;
    }
    let (start, end) = l.ends()?;
    let (c0, t0) = end_corner(&start);
    let (c1, t1) = end_corner(&end);
    let cp = CornerPath { start: c0, xs: l.crossings().to_vec(), end: c1 };
    let route = cp.reduce(r).ok()?;
    let d = TaggedArc::new(r, route, [t0, t1]).ok()?;
    let back = elementary(r, &d).ok()?;
    (back == *l).then_some(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classified {
    Elementary(TaggedArc),
    /// The clockwise and the counterclockwise member of the split.
    Exceptional(Laminate, Laminate),
    Closed,
}

/// Splits `P · (once around a puncture) · P⁻¹` into `P` followed by a
/// clockwise and by a counterclockwise spiral.
pub fn split_exceptional(r: &IdealTriangulation, l: &Laminate) -> Option<(Laminate, Laminate)> {
    let Laminate::Open { start, xs, end } = l else { return None };
    let same_ends = match (start, end) {
        (End::Boundary(a), End::Boundary(b)) => a == b,
        (End::Spiral { puncture: p, dir: d, .. }, End::Spiral { puncture: q, dir: e, .. }) => p == q && d == e,
        _ => false,
    };
    if !same_ends || xs.is_empty() {
        return None;
    }
    let n = xs.len();
    let mut k = 0;
    while 2 * (k + 1) < n && r.partner(xs[k]) == Some(xs[n - 1 - k]) {
        k += 1;
    }
    let middle = &xs[k..n - k];
    let (tri, entry) = if k == 0 {
        (start.tri(), match start {
            End::Boundary(s) => *s,
            _ => return None,
        })
    } else {
        let y = r.partner(xs[k - 1]).unwrap();
        (y.tri, y)
    };
    let c = corner(tri, entry.pos + 2);
    let p = r.vertex(c);
    if !r.is_puncture(p) || middle.len() != r.degree(p) {
        return None;
    }
    let around = [Rot::Cw, Rot::Ccw]
        .into_iter()
        .any(|dir| rotation(r, c, c, dir, true).map(|s| s == middle).unwrap_or(false));
    if !around {
        return None;
    }
    let prefix = xs[..k].to_vec();
    let make = |dir| Laminate::open(r, *start, prefix.clone(), End::Spiral { puncture: p, dir, corner: c });
    Some((make(Rot::Cw).ok()?, make(Rot::Ccw).ok()?))
}

/// Inverse of the split: an elementary laminate ending in a spiral becomes
/// the curve that goes once around the puncture and comes back.
pub fn merge(r: &IdealTriangulation, l: &Laminate) -> Result<Laminate> {
    let try_end = |l: &Laminate| -> Option<Result<Laminate>> {
        let Laminate::Open { start, xs, end: End::Spiral { puncture, corner: c, .. } } = l else { return None };
        if matches!(start, End::Spiral { puncture: q, .. } if q == puncture) {
            return None;
        }
        let mut path = xs.clone();
        let around = rotation(r, *c, *c, Rot::Cw, true).ok()?;
        path.extend(around);
        path.extend(xs.iter().rev().map(|&x| r.partner(x).unwrap()));
        Some(Laminate::open(r, *start, path, *start))
    };
    try_end(l)
        .or_else(|| try_end(&l.reverse(r)))
        .unwrap_or_else(|| Err(Error::Input("laminate has no spiral end to merge".into())))
}

pub fn classify(r: &IdealTriangulation, l: &Laminate) -> Result<Classified> {
    if l.is_closed() {
        return Ok(Classified::Closed);
    }
    if let Some(d) = elementary_inverse(r, l) {
        return Ok(Classified::Elementary(d));
    }
    if let Some((p, q)) = split_exceptional(r, l) {
        return Ok(Classified::Exceptional(p, q));
    }
    Err(Error::Input("laminate is neither elementary nor exceptional".into()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub elementary: Vec<Laminate>,
    pub exceptional: Vec<Laminate>,
    pub closed: Vec<Laminate>,
}

impl Decomposition {
    /// Elementary laminates with every exceptional one replaced by its pair.
    pub fn split(&self, r: &IdealTriangulation) -> Result<Vec<Laminate>> {
        let mut out = self.elementary.clone();
        for l in &self.exceptional {
            let (p, q) = split_exceptional(r, l).ok_or_else(|| Error::Input("not exceptional".into()))?;
            out.push(p);
            out.push(q);
        }
        Ok(out)
    }
}

pub fn decompose(r: &IdealTriangulation, ls: &[Laminate]) -> Result<Decomposition> {
    let mut d = Decomposition::default();
    for l in ls {
        match classify(r, l)? {
            Classified::Elementary(_) => d.elementary.push(l.clone()),
            Classified::Exceptional(..) => d.exceptional.push(l.clone()),
            Classified::Closed => d.closed.push(l.clone()),
        }
    }
    Ok(d)
}
