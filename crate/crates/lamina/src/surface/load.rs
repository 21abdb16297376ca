//! JSON surface files. Side names used twice are arcs, names used once are
//! boundary segments; both get indices in lexicographic order.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ideal::{IdealTriangulation, Side};
use super::route::Tag;
use super::tagged::TaggedTriangulation;
use super::MarkedSurface;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub genus: usize,
    pub boundary: Vec<usize>,
    pub punctures: usize,
    pub triangles: Vec<[String; 3]>,
    /// arc name -> point name -> tag, overriding the tags the arc gets as a
    /// plain arc (or as the notched arc standing for a self-folded loop).
    #[serde(default)]
    pub tags: BTreeMap<String, BTreeMap<String, Tag>>,
}

pub fn load_surface(path: &Path) -> Result<(MarkedSurface, TaggedTriangulation)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))?;
    load_surface_str(&text)
}

pub fn load_surface_str(text: &str) -> Result<(MarkedSurface, TaggedTriangulation)> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    file.build()
}

impl SurfaceFile {
    pub fn build(&self) -> Result<(MarkedSurface, TaggedTriangulation)> {
        let surface = MarkedSurface::new(self.genus, self.boundary.clone(), self.punctures)?;
        let mut uses: BTreeMap<&str, usize> = BTreeMap::new();
        for t in &self.triangles {
            for s in t {
                *uses.entry(s.as_str()).or_insert(0) += 1;
            }
        }
        let mut arcs = Vec::new();
        let mut bdry = Vec::new();
        for (name, n) in &uses {
            match n {
                1 => bdry.push(name.to_string()),
                2 => arcs.push(name.to_string()),
                _ => return Err(Error::NonManifoldGluing(format!("side {name} used {n} times"))),
            }
        }
        let side_of = |name: &str| match arcs.binary_search_by(|a| a.as_str().cmp(name)) {
            Ok(i) => Side::Arc(i),
            Err(_) => Side::Bdry(bdry.binary_search_by(|b| b.as_str().cmp(name)).unwrap()),
        };
        let triangles: Vec<[Side; 3]> = self.triangles.iter().map(|t| [0, 1, 2].map(|k| side_of(&t[k]))).collect();
        let base = IdealTriangulation::new(triangles, arcs.clone(), bdry)?;
        surface.check(&base)?;
        let plain = TaggedTriangulation::new(base.clone(), BTreeSet::new())?;
        // which arc ends ask for inverted tags
        let mut inverted: BTreeMap<usize, BTreeSet<bool>> = BTreeMap::new();
        for pos in 0..plain.size() {
            let (_, ends, default) = plain.tagged_ends(pos);
            let wanted = self.tags.get(&arcs[pos]);
            for k in 0..2 {
                let name = &base.points()[ends[k]].name;
                let tag = wanted.and_then(|w| w.get(name)).copied().unwrap_or(default[k]);
                if !base.is_puncture(ends[k]) {
                    if tag == Tag::Notched {
                        return Err(Error::IllegalTag(format!("arc {} notched at boundary point {name}", arcs[pos])));
                    }
                    continue;
                }
                inverted.entry(ends[k]).or_default().insert(tag != default[k]);
            }
        }
        for (arc, ends) in &self.tags {
            let pos = base.arc_by_name(arc).ok_or_else(|| Error::UnknownId(arc.clone()))?;
            let (_, e, _) = plain.tagged_ends(pos);
            for p in ends.keys() {
                let id = base.point_by_name(p).ok_or_else(|| Error::UnknownId(p.clone()))?;
                if !e.contains(&id) {
                    return Err(Error::UnknownId(format!("{p} is not an end of arc {arc}")));
                }
            }
        }
        let mut flipped = BTreeSet::new();
        for (p, flags) in inverted {
            if flags.len() > 1 {
                return Err(Error::IllegalTag(format!(
                    "tags at {} are neither all default nor all inverted",
                    base.points()[p].name
                )));
            }
            if flags.contains(&true) {
                flipped.insert(p);
            }
        }
        Ok((surface, TaggedTriangulation::new(base, flipped)?))
    }
}
