//! Built-in surfaces shipped with the crate.

use crate::error::{Error, Result};
use crate::surface::{load_surface_str, MarkedSurface, TaggedTriangulation};

pub const DIGON: &str = include_str!("../fixtures/digon.json");
pub const ANNULUS: &str = include_str!("../fixtures/annulus.json");
pub const TORUS: &str = include_str!("../fixtures/torus.json");
pub const PENTAGON: &str = include_str!("../fixtures/pentagon.json");
pub const PUNCTURED_ANNULUS: &str = include_str!("../fixtures/punctured_annulus.json");

pub const SURFACES: [(&str, &str); 4] = [("digon", DIGON), ("annulus", ANNULUS), ("torus", TORUS), ("pentagon", PENTAGON)];

/// Further surfaces used by tests but outside the seed corpus.
pub const EXTRA: [(&str, &str); 1] = [("punctured-annulus", PUNCTURED_ANNULUS)];

pub fn surface(name: &str) -> Result<(MarkedSurface, TaggedTriangulation)> {
    let text = SURFACES
        .iter()
        .chain(EXTRA.iter())
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    load_surface_str(text)
}
