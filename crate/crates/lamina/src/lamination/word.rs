//! Laminates given as words of arc names. A word fixes the curve only up to
//! the choice of sides where an arc occurs twice in a triangle or across
//! several triangles; every reading is tried and all must agree.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{corner, Corner, IdealTriangulation, Rot, Side, Slot};

use super::laminate::{End, Laminate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndSpec {
    Boundary(String),
    Spiral { puncture: String, dir: Rot },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminateFile {
    pub kind: Kind,
    pub word: Vec<String>,
    #[serde(default)]
    pub ends: Vec<EndSpec>,
}

pub fn load_laminate(r: &IdealTriangulation, path: &Path) -> Result<Laminate> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))?;
    let file: LaminateFile = serde_json::from_str(&text).map_err(|e| Error::Input(e.to_string()))?;
    file.resolve(r)
}

pub fn open_word(r: &IdealTriangulation, word: &[&str], start: EndSpec, end: EndSpec) -> Result<Laminate> {
    LaminateFile { kind: Kind::Open, word: word.iter().map(|s| s.to_string()).collect(), ends: vec![start, end] }.resolve(r)
}

pub fn closed_word(r: &IdealTriangulation, word: &[&str]) -> Result<Laminate> {
    LaminateFile { kind: Kind::Closed, word: word.iter().map(|s| s.to_string()).collect(), ends: vec![] }.resolve(r)
}

pub fn boundary(name: &str) -> EndSpec {
    EndSpec::Boundary(name.to_string())
}

pub fn spiral(puncture: &str, dir: Rot) -> EndSpec {
    EndSpec::Spiral { puncture: puncture.to_string(), dir }
}

enum EndRes {
    Boundary(Slot),
    Spiral(usize, Rot),
}

/// Corner where a spiral entered through `entry` begins: the corner across
/// from the entry side if it lies at the puncture, otherwise the adjacent
/// corner at the puncture that the spiral turns into first.
fn landing(r: &IdealTriangulation, tri: usize, entry: usize, p: usize, dir: Rot) -> Option<Corner> {
    let opposite = corner(tri, entry + 2);
    if r.vertex(opposite) == p {
        return Some(opposite);
    }
    let adjacent = match dir {
        Rot::Cw => corner(tri, entry + 1),
        Rot::Ccw => corner(tri, entry),
    };
    (r.vertex(adjacent) == p).then_some(adjacent)
}

impl LaminateFile {
    pub fn resolve(&self, r: &IdealTriangulation) -> Result<Laminate> {
        let letters: Vec<usize> = self
            .word
            .iter()
            .map(|w| r.arc_by_name(w).ok_or_else(|| Error::UnknownId(w.clone())))
            .collect::<Result<_>>()?;
        let mut found: BTreeSet<Laminate> = BTreeSet::new();
        let mut last_err = None;
        match self.kind {
            Kind::Closed => {
                if letters.is_empty() {
                    return Err(Error::ForbiddenCurve("empty closed word".into()));
                }
                for s in arc_slots(r, letters[0]) {
                    let mut paths = Vec::new();
                    walk(r, &letters[1..], s, &mut vec![s], &mut paths);
                    for xs in paths {
                        let y = r.partner(*xs.last().unwrap()).unwrap();
                        let closes = y.tri == s.tri && (y != s || slots_in(r, s.tri, letters[0], Some(s)).is_empty());
                        if closes {
                            match Laminate::closed(r, xs) {
                                Ok(l) => {
                                    found.insert(l);
                                }
                                Err(e) => last_err = Some(e),
                            }
                        }
                    }
                }
            }
            Kind::Open => {
                let [a, b] = self.ends.as_slice() else {
                    return Err(Error::Input("open laminate needs two ends".into()));
                };
                let (a, b) = (self.end(r, a)?, self.end(r, b)?);
                let flipped = matches!(a, EndRes::Spiral(..)) && matches!(b, EndRes::Boundary(_));
                let (a, b, letters) = if flipped {
                    (b, a, letters.iter().rev().copied().collect())
                } else {
                    (a, b, letters)
                };
                for l in self.open_readings(r, &a, &b, &letters) {
                    match l {
                        Ok(l) => {
                            found.insert(l);
                        }
                        Err(e) => last_err = Some(e),
                    }
                }
            }
        }
        match found.len() {
            0 => Err(last_err.unwrap_or_else(|| Error::NotATraversal(format!("word {:?} cannot be drawn", self.word)))),
            1 => Ok(found.into_iter().next().unwrap()),
            _ => Err(Error::AmbiguousWord(format!("word {:?} has {} readings", self.word, found.len()))),
        }
    }

    fn end(&self, r: &IdealTriangulation, e: &EndSpec) -> Result<EndRes> {
        Ok(match e {
            EndSpec::Boundary(name) => EndRes::Boundary(r.bdry_slot(r.bdry_by_name(name).ok_or_else(|| Error::UnknownId(name.clone()))?)),
            EndSpec::Spiral { puncture, dir } => {
                let p = r.point_by_name(puncture).ok_or_else(|| Error::UnknownId(puncture.clone()))?;
                if !r.is_puncture(p) {
                    return Err(Error::Input(format!("{puncture} is not a puncture")));
                }
                EndRes::Spiral(p, *dir)
            }
        })
    }

    fn open_readings(&self, r: &IdealTriangulation, a: &EndRes, b: &EndRes, letters: &[usize]) -> Vec<Result<Laminate>> {
        // (start end, first crossing) candidates
        let mut starts: Vec<(End, Option<Slot>)> = Vec::new();
        match *a {
            EndRes::Boundary(s) => starts.push((End::Boundary(s), None)),
            EndRes::Spiral(p, dir) => {
                let Some(&first) = letters.first() else { return vec![] };
                for x in arc_slots(r, first) {
                    if let Some(k) = landing(r, x.tri, x.pos, p, dir) {
                        starts.push((End::Spiral { puncture: p, dir, corner: k }, Some(x)));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (start, first) in starts {
            let mut paths = Vec::new();
            match (start, first) {
                (_, Some(x)) => walk(r, &letters[1..], x, &mut vec![x], &mut paths),
                (End::Boundary(s), None) => {
                    if letters.is_empty() {
                        paths.push(vec![]);
                    } else {
                        for x in slots_in(r, s.tri, letters[0], Some(s)) {
                            walk(r, &letters[1..], x, &mut vec![x], &mut paths);
                        }
                    }
                }
                _ => unreachable!(),
            }
            for xs in paths {
                let (tri, entry) = match xs.last() {
                    Some(&x) => {
                        let y = r.partner(x).unwrap();
                        (y.tri, y)
                    }
                    None => (start.tri(), match start {
                        End::Boundary(s) => s,
                        _ => unreachable!(),
                    }),
                };
                let end = match *b {
                    EndRes::Boundary(s) => {
                        if s.tri != tri || s == entry {
                            continue;
                        }
                        End::Boundary(s)
                    }
                    EndRes::Spiral(p, dir) => match landing(r, tri, entry.pos, p, dir) {
                        Some(k) => End::Spiral { puncture: p, dir, corner: k },
                        None => continue,
                    },
                };
                out.push(Laminate::open(r, start, xs, end));
            }
        }
        out
    }
}

fn arc_slots(r: &IdealTriangulation, arc: usize) -> Vec<Slot> {
    r.arc_slots(arc).to_vec()
}

fn slots_in(r: &IdealTriangulation, tri: usize, arc: usize, entry: Option<Slot>) -> Vec<Slot> {
    (0..3)
        .map(|k| Slot { tri, pos: k })
        .filter(|&s| r.side(s) == Side::Arc(arc) && Some(s) != entry)
        .collect()
}

/// All ways of continuing a crossing sequence through the remaining letters.
fn walk(r: &IdealTriangulation, letters: &[usize], last: Slot, acc: &mut Vec<Slot>, out: &mut Vec<Vec<Slot>>) {
    let Some((&next, rest)) = letters.split_first() else {
        out.push(acc.clone());
        return;
    };
    let y = r.partner(last).unwrap();
    let mut xs = slots_in(r, y.tri, next, Some(y));
    // repeated letter with nowhere else to go: a backtrack, cancelled later
    if xs.is_empty() && r.side(y) == Side::Arc(next) {
        xs.push(y);
    }
    for x in xs {
        acc.push(x);
        walk(r, rest, x, acc, out);
        acc.pop();
    }
}
