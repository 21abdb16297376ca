//! Dehn twists along closed laminates. The triangles crossed by the core
//! curve, one copy per visit, glue up to an annulus (the corridor); each
//! time a laminate runs across the corridor from one side to the other, a
//! full lap around the corridor is spliced in.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::surface::{Corner, IdealTriangulation, Slot, TaggedTriangulation};

use super::laminate::{End, Laminate};
use super::shear::shear;

#[derive(Clone, Copy, Debug)]
struct Copy {
    tri: usize,
    s_in: usize,
    s_out: usize,
    third: usize,
    /// Which bank of the corridor the third side lies on.
    third_left: bool,
}

impl Copy {
    /// Bank of the corridor a corner of this copy lies on.
    fn corner_left(&self, c: Corner) -> bool {
        let turn = if self.third_left { self.s_out } else { self.s_in };
        if c.pos == turn {
            !self.third_left
        } else {
            self.third_left
        }
    }
}

#[derive(Clone, Debug)]
pub struct Corridor {
    copies: Vec<Copy>,
}

impl Corridor {
    pub fn new(r: &IdealTriangulation, core: &Laminate) -> Result<Self> {
        let Laminate::Closed { xs } = core else { return Err(Error::NotClosed) };
        let n = xs.len();
        let copies = (0..n)
            .map(|i| {
                let s_in = r.partner(xs[(i + n - 1) % n]).unwrap().pos;
                let s_out = xs[i].pos;
                Copy { tri: xs[i].tri, s_in, s_out, third: 3 - s_in - s_out, third_left: s_out == (s_in + 1) % 3 }
            })
            .collect();
        Ok(Corridor { copies })
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    fn unique(&self, found: Vec<usize>) -> Result<Option<usize>> {
        match found.len() {
            0 => Ok(None),
            1 => Ok(Some(found[0])),
            _ => Err(Error::CorridorAmbiguous("curve enters several copies at once".into())),
        }
    }

    fn entered_through(&self, y: Slot) -> Result<Option<usize>> {
        self.unique((0..self.len()).filter(|&i| self.copies[i].tri == y.tri && self.copies[i].third == y.pos).collect())
    }

    fn entered_at(&self, c: Corner) -> Result<Option<usize>> {
        self.unique((0..self.len()).filter(|&i| self.copies[i].tri == c.tri).collect())
    }

    /// One lap starting and ending in copy `i`.
    fn lap(&self, i: usize, forward: bool) -> Vec<Slot> {
        let n = self.len();
        (0..n)
            .map(|k| {
                if forward {
                    let c = &self.copies[(i + k) % n];
                    Slot { tri: c.tri, pos: c.s_out }
                } else {
                    let c = &self.copies[(i + n - k) % n];
                    Slot { tri: c.tri, pos: c.s_in }
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Gate {
    Side(Slot),
    Corner(Corner),
}

struct Inside {
    copy: usize,
    entry_copy: usize,
    entry_left: bool,
    insert_at: usize,
    turns: Vec<bool>,
}

/// A crossing of the corridor: where to splice, from which copy, and
/// whether the curve runs from the left bank to the right.
struct Traversal {
    insert_at: usize,
    copy: usize,
    left_to_right: bool,
}

fn traverse(cor: &Corridor, visits: &[(Gate, Gate)], closed: bool) -> Result<(Vec<Slot>, Vec<Traversal>)> {
    let mut out = Vec::new();
    let mut found = Vec::new();
    let mut state: Option<Inside> = None;
    for (k, &(entry, exit)) in visits.iter().enumerate() {
        if state.is_none() {
            let hit = match entry {
                Gate::Side(y) => cor.entered_through(y)?.map(|i| (i, cor.copies[i].third_left)),
                Gate::Corner(c) => cor.entered_at(c)?.map(|i| (i, cor.copies[i].corner_left(c))),
            };
            if let Some((i, left)) = hit {
                state = Some(Inside { copy: i, entry_copy: i, entry_left: left, insert_at: out.len(), turns: vec![] });
            }
        }
        if let Some(st) = state.as_mut() {
            if let (Gate::Side(e), Gate::Side(x)) = (entry, exit) {
                st.turns.push(x.pos == (e.pos + 1) % 3);
            }
            let c = cor.copies[st.copy];
            let leave = match exit {
                Gate::Side(x) if x.pos == c.s_out => {
                    st.copy = (st.copy + 1) % cor.len();
                    None
                }
                Gate::Side(x) if x.pos == c.s_in => {
                    st.copy = (st.copy + cor.len() - 1) % cor.len();
                    None
                }
                Gate::Side(_) => Some(c.third_left),
                Gate::Corner(q) => Some(c.corner_left(q)),
            };
            if let Some(exit_left) = leave {
                let st = state.take().unwrap();
                if exit_left != st.entry_left {
                    found.push(Traversal { insert_at: st.insert_at, copy: st.entry_copy, left_to_right: st.entry_left });
                } else if !(st.turns.iter().all(|&t| t) || st.turns.iter().all(|&t| !t)) {
                    return Err(Error::CorridorAmbiguous("curve turns both ways on one bank".into()));
                }
            }
        }
        if let Gate::Side(x) = exit {
            if closed || k + 1 < visits.len() {
                out.push(x);
            }
        }
    }
    Ok((out, found))
}

/// Triangle visits of a laminate; for a closed curve, starting right after a
/// crossing that is not part of a lap around the corridor.
fn visits(r: &IdealTriangulation, cor: &Corridor, l: &Laminate) -> Option<Vec<(Gate, Gate)>> {
    match l {
        Laminate::Open { start, xs, end } => {
            let gate = |e: &End| match *e {
                End::Boundary(s) => Gate::Side(s),
                End::Spiral { corner, .. } => Gate::Corner(corner),
            };
            let mut entries = vec![gate(start)];
            entries.extend(xs.iter().map(|&x| Gate::Side(r.partner(x).unwrap())));
            let mut exits: Vec<Gate> = xs.iter().map(|&x| Gate::Side(x)).collect();
            exits.push(gate(end));
            Some(entries.into_iter().zip(exits).collect())
        }
        Laminate::Closed { xs } => {
            let n = xs.len();
            let along = |x: Slot| cor.copies.iter().any(|c| c.tri == x.tri && (c.s_in == x.pos || c.s_out == x.pos));
            let i0 = (0..n).find(|&i| !along(xs[i]) && !along(r.partner(xs[i]).unwrap()))?;
            Some(
                (0..n)
                    .map(|k| {
                        let a = xs[(i0 + k) % n];
                        let b = xs[(i0 + k + 1) % n];
                        (Gate::Side(r.partner(a).unwrap()), Gate::Side(b))
                    })
                    .collect(),
            )
        }
    }
}

/// Number of times `l` runs across the corridor of `core`.
pub fn intersection_count(r: &IdealTriangulation, core: &Laminate, l: &Laminate) -> Result<usize> {
    let cor = Corridor::new(r, core)?;
    match visits(r, &cor, l) {
        None => Ok(0),
        Some(v) => Ok(traverse(&cor, &v, l.is_closed())?.1.len()),
    }
}

/// The m-th power of the Dehn twist along `core` applied to `l` (negative m
/// twists the other way).
pub fn dehn_twist(r: &IdealTriangulation, core: &Laminate, l: &Laminate, m: i64) -> Result<Laminate> {
    let cor = Corridor::new(r, core)?;
    let Some(v) = visits(r, &cor, l) else { return Ok(l.clone()) };
    let (mut xs, found) = traverse(&cor, &v, l.is_closed())?;
    if found.is_empty() || m == 0 {
        return Ok(l.clone());
    }
    for t in found.iter().rev() {
        let forward = t.left_to_right == (m > 0);
        let lap = cor.lap(t.copy, forward);
        let mut ins = Vec::with_capacity(lap.len() * m.unsigned_abs() as usize);
        for _ in 0..m.unsigned_abs() {
            ins.extend_from_slice(&lap);
        }
        xs.splice(t.insert_at..t.insert_at, ins);
    }
    match l {
        Laminate::Open { start, end, .. } => Laminate::open(r, *start, xs, *end),
        Laminate::Closed { .. } => Laminate::closed(r, xs),
    }
}

/// Shear coordinates of the twisted laminates for each exponent.
pub fn twist_orbit(
    t: &TaggedTriangulation,
    core: &Laminate,
    l: &Laminate,
    ms: &[i64],
    exec: Exec,
) -> Result<Vec<(i64, Vec<i64>)>> {
    exec::map(exec, ms, |&m| Ok((m, shear(t, &dehn_twist(t.base(), core, l, m)?)?))).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// First exponent from which consecutive differences stay constant.
    pub m_prime: usize,
    pub slope: Vec<i64>,
    pub crossings: usize,
}

/// Finds where consecutive differences of the orbit settle on the crossing
/// number times the core's shear vector.
pub fn twist_stabilization(t: &TaggedTriangulation, core: &Laminate, l: &Laminate, m_max: usize) -> Result<Stabilization> {
    let r = t.base();
    let crossings = intersection_count(r, core, l)?;
    if crossings == 0 {
        return Err(Error::Input("laminate does not cross the twisting curve".into()));
    }
    let core_b = shear(t, core)?;
    let slope: Vec<i64> = core_b.iter().map(|&b| b * crossings as i64).collect();
    let ms: Vec<i64> = (0..=m_max as i64).collect();
    let orbit = twist_orbit(t, core, l, &ms, Exec::default())?;
    let diff = |m: usize| -> Vec<i64> { orbit[m + 1].1.iter().zip(&orbit[m].1).map(|(a, b)| a - b).collect() };
    if m_max == 0 || diff(m_max - 1) != slope {
        return Err(Error::NoStabilization(m_max as i64));
    }
    let mut m_prime = m_max - 1;
    while m_prime > 0 && diff(m_prime - 1) == slope {
        m_prime -= 1;
    }
    Ok(Stabilization { m_prime, slope, crossings })
}
