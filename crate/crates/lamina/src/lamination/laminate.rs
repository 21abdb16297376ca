//! Laminates as crossing sequences on the reference triangulation. A crossing
//! is the slot through which the curve leaves a triangle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{corner, Corner, IdealTriangulation, Rot, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    /// Ends on this boundary side.
    Boundary(Slot),
    /// Spirals into a puncture. `dir` is the sense of rotation while moving
    /// into the puncture; `corner` is the corner at which the spiral begins.
    Spiral { puncture: usize, dir: Rot, corner: Corner },
}

impl End {
    pub fn tri(&self) -> usize {
        match self {
            End::Boundary(s) => s.tri,
            End::Spiral { corner, .. } => corner.tri,
        }
    }

    pub fn is_spiral(&self) -> bool {
        matches!(self, End::Spiral { .. })
    }

    pub fn flip_at(&self, p: usize) -> End {
        match *self {
            End::Spiral { puncture, dir, corner } if puncture == p => End::Spiral { puncture, dir: dir.flip(), corner },
            e => e,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Laminate {
    Open { start: End, xs: Vec<Slot>, end: End },
    Closed { xs: Vec<Slot> },
}

fn partner(r: &IdealTriangulation, x: Slot) -> Slot {
    r.partner(x).expect("crossed side is an arc")
}

fn free_reduce(r: &IdealTriangulation, xs: &[Slot]) -> Vec<Slot> {
    let mut out: Vec<Slot> = Vec::with_capacity(xs.len());
    for &x in xs {
        if let Some(&last) = out.last() {
            if r.partner(last) == Some(x) {
                out.pop();
                continue;
            }
        }
        out.push(x);
    }
    out
}

impl Laminate {
    pub fn open(r: &IdealTriangulation, start: End, xs: Vec<Slot>, end: End) -> Result<Laminate> {
        let l = Laminate::Open { start, xs, end };
        l.check(r)?;
        l.normalize(r)
    }

    pub fn closed(r: &IdealTriangulation, xs: Vec<Slot>) -> Result<Laminate> {
        let l = Laminate::Closed { xs };
        l.check(r)?;
        l.normalize(r)
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Laminate::Closed { .. })
    }

    pub fn crossings(&self) -> &[Slot] {
        match self {
            Laminate::Open { xs, .. } | Laminate::Closed { xs } => xs,
        }
    }

    pub fn ends(&self) -> Option<(End, End)> {
        match self {
            Laminate::Open { start, end, .. } => Some((*start, *end)),
            Laminate::Closed { .. } => None,
        }
    }

    /// Checks that consecutive crossings leave the triangle just entered and
    /// that the ends sit in the right triangles.
    pub fn check(&self, r: &IdealTriangulation) -> Result<()> {
        let bad = |m: String| Err(Error::NotATraversal(m));
        let xs = self.crossings();
        for x in xs {
            if x.tri >= r.triangles().len() || r.partner(*x).is_none() {
                return bad(format!("{x:?} is not an arc side"));
            }
        }
        for w in xs.windows(2) {
            if partner(r, w[0]).tri != w[1].tri {
                return bad(format!("{:?} does not follow {:?}", w[1], w[0]));
            }
        }
        match self {
            Laminate::Closed { xs } => {
                if let (Some(&first), Some(&last)) = (xs.first(), xs.last()) {
                    if partner(r, last).tri != first.tri {
                        return bad("closed word does not close up".into());
                    }
                }
            }
            Laminate::Open { start, xs, end } => {
                for (e, which) in [(start, "start"), (end, "end")] {
                    match *e {
                        End::Boundary(s) => {
                            if r.partner(s).is_some() {
                                return bad(format!("{which} is not on the boundary"));
                            }
                        }
                        End::Spiral { puncture, corner, .. } => {
                            if !r.is_puncture(puncture) || r.vertex(corner) != puncture {
                                return bad(format!("{which} spiral corner is not at its puncture"));
                            }
                        }
                    }
                }
                let first_tri = xs.first().map(|x| x.tri).unwrap_or(end.tri());
                if start.tri() != first_tri {
                    return bad("start is not in the first triangle".into());
                }
                let last_tri = xs.last().map(|&x| partner(r, x).tri).unwrap_or(start.tri());
                if end.tri() != last_tri {
                    return bad("end is not in the last triangle".into());
                }
            }
        }
        Ok(())
    }

    pub fn reverse(&self, r: &IdealTriangulation) -> Laminate {
        let rev = |xs: &[Slot]| xs.iter().rev().map(|&x| partner(r, x)).collect::<Vec<_>>();
        match self {
            Laminate::Open { start, xs, end } => Laminate::Open { start: *end, xs: rev(xs), end: *start },
            Laminate::Closed { xs } => Laminate::Closed { xs: rev(xs) },
        }
    }

    /// Moves a spiral's starting corner across the last crossing while that
    /// corner touches the side just crossed.
    fn settle_end(&mut self, r: &IdealTriangulation) -> bool {
        let Laminate::Open { xs, end, .. } = self else { return false };
        let mut changed = false;
        while let (Some(&x), End::Spiral { puncture, dir, corner: k }) = (xs.last(), *end) {
            let y = partner(r, x);
            let moved = if k.pos == y.pos {
                corner(x.tri, x.pos + 1)
            } else if k.pos == (y.pos + 1) % 3 {
                corner(x.tri, x.pos)
            } else {
                break;
            };
            xs.pop();
            *end = End::Spiral { puncture, dir, corner: moved };
            changed = true;
        }
        changed
    }

    /// Cancels backtracks, settles spiral corners, rejects forbidden curves
    /// and picks the canonical orientation (and rotation, for closed curves).
    pub fn normalize(&self, r: &IdealTriangulation) -> Result<Laminate> {
        match self {
            Laminate::Open { start, xs, end } => {
                let mut l = Laminate::Open { start: *start, xs: free_reduce(r, xs), end: *end };
                loop {
                    let a = l.settle_end(r);
                    let mut rev = l.reverse(r);
                    let b = rev.settle_end(r);
                    l = rev.reverse(r);
                    if !a && !b {
                        break;
                    }
                }
                l.check_allowed(r)?;
                let rev = l.reverse(r);
                Ok(if rev < l { rev } else { l })
            }
            Laminate::Closed { xs } => {
                let mut xs = free_reduce(r, xs);
                while xs.len() >= 2 && r.partner(*xs.last().unwrap()) == Some(xs[0]) {
                    xs.pop();
                    xs.remove(0);
                }
                let l = Laminate::Closed { xs };
                l.check_allowed(r)?;
                Ok(l.canonical_rotation(r))
            }
        }
    }

    fn canonical_rotation(&self, r: &IdealTriangulation) -> Laminate {
        let Laminate::Closed { xs } = self else { return self.clone() };
        let mut best = xs.clone();
        let Laminate::Closed { xs: rev } = self.reverse(r) else { unreachable!() };
        for seq in [xs, &rev] {
            for k in 0..seq.len() {
                let mut c = seq[k..].to_vec();
                c.extend_from_slice(&seq[..k]);
                if c < best {
                    best = c;
                }
            }
        }
        Laminate::Closed { xs: best }
    }

    /// Turn in each triangle passed between two crossings (true = right).
    pub fn turns(&self, r: &IdealTriangulation) -> Vec<bool> {
        let turn = |entry: Slot, exit: Slot| exit.pos == (entry.pos + 1) % 3;
        match self {
            Laminate::Closed { xs } => (0..xs.len()).map(|i| turn(partner(r, xs[i]), xs[(i + 1) % xs.len()])).collect(),
            Laminate::Open { start, xs, end } => {
                let mut entries: Vec<Option<Slot>> = vec![match start {
                    End::Boundary(s) => Some(*s),
                    _ => None,
                }];
                entries.extend(xs.iter().map(|&x| Some(partner(r, x))));
                let mut exits: Vec<Option<Slot>> = xs.iter().map(|&x| Some(x)).collect();
                exits.push(match end {
                    End::Boundary(s) => Some(*s),
                    _ => None,
                });
                entries
                    .into_iter()
                    .zip(exits)
                    .filter_map(|(a, b)| Some(turn(a?, b?)))
                    .collect()
            }
        }
    }

    fn check_allowed(&self, r: &IdealTriangulation) -> Result<()> {
        let forbid = |m: &str| Err(Error::ForbiddenCurve(m.into()));
        match self {
            Laminate::Closed { xs } => {
                if xs.is_empty() {
                    return forbid("closed curve is contractible");
                }
                let t = self.turns(r);
                if t.iter().all(|&x| x) || t.iter().all(|&x| !x) {
                    return forbid("closed curve encloses a single puncture");
                }
            }
            Laminate::Open { start, xs, end } => match (start, end) {
                (End::Boundary(a), End::Boundary(b)) => {
                    if xs.is_empty() && a == b {
                        return forbid("curve is contractible");
                    }
                    let t = self.turns(r);
                    if t.iter().all(|&x| x) || t.iter().all(|&x| !x) {
                        return forbid("curve cuts off a single marked point");
                    }
                }
                (End::Spiral { corner: a, .. }, End::Spiral { corner: b, .. }) if xs.is_empty() && a == b => {
                    return forbid("curve is contractible into a puncture");
                }
                _ => {}
            },
        }
        Ok(())
    }

    /// Reverses the direction of every spiral into the given puncture.
    pub fn spiral_flip(&self, p: usize) -> Laminate {
        match self {
            Laminate::Open { start, xs, end } => Laminate::Open { start: start.flip_at(p), xs: xs.clone(), end: end.flip_at(p) },
            l => l.clone(),
        }
    }

    /// Spiral ends unrolled into explicit rotation steps around their
    /// punctures. Returns (entry side before the first crossing, crossings,
    /// exit side after the last crossing); None where a spiral is cut off.
    pub fn unroll(&self, r: &IdealTriangulation, wraps: usize) -> (Option<Slot>, Vec<Slot>, Option<Slot>, bool) {
        match self {
            Laminate::Closed { xs } => (None, xs.clone(), None, true),
            Laminate::Open { start, xs, end } => {
                let tail = |e: &End| -> (Vec<Slot>, Option<Slot>) {
                    match *e {
                        End::Boundary(s) => (vec![], Some(s)),
                        End::Spiral { puncture, dir, corner: k } => {
                            let steps = wraps * r.degree(puncture);
                            let mut c = k;
                            let mut out = Vec::with_capacity(steps);
                            for _ in 0..steps {
                                let (x, next) = r.rotate(c, dir).expect("punctures are surrounded by arcs");
                                out.push(x);
                                c = next;
                            }
                            (out, None)
                        }
                    }
                };
                let (head_steps, head) = tail(start);
                let (end_steps, last) = tail(end);
                let mut all: Vec<Slot> = head_steps.iter().rev().map(|&x| partner(r, x)).collect();
                all.extend_from_slice(xs);
                all.extend(end_steps);
                (head, all, last, false)
            }
        }
    }
}
