//! Approximating the shear vector of an arbitrary lamination by cones of
//! elementary laminates of twisted triangulations.

use serde::Serialize;

use crate::cones::RationalCone;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::surface::{IdealTriangulation, TaggedArc, TaggedTriangulation};

use super::dehn::{dehn_twist, intersection_count};
use super::elementary::{decompose, elementary, elementary_inverse};
use super::laminate::Laminate;
use super::shear::shear;

#[derive(Clone, Debug, Serialize)]
pub struct ClosedPart {
    pub core: Laminate,
    pub multiplicity: usize,
    /// Crossings with the elementary laminates of the completion.
    pub crossings: usize,
    /// Exponent of this twist inside one step of the composite twist.
    pub exponent: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DriverStep {
    pub m: usize,
    pub generators: Vec<Vec<i64>>,
    pub contains: bool,
    /// Exact squared distance from the target to the cone.
    pub sq_distance: String,
    /// Smallest angle between the target and a generator (diagnostic only).
    pub angle: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DriverReport {
    pub target: Vec<i64>,
    pub fixed: Vec<Vec<i64>>,
    pub closed: Vec<ClosedPart>,
    pub steps: Vec<DriverStep>,
}

fn angle(a: &[i64], b: &[i64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| (*x as f64) * (*y as f64)).sum();
    let na: f64 = a.iter().map(|x| (*x as f64).powi(2)).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| (*x as f64).powi(2)).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na * nb)).clamp(-1.0, 1.0).acos()
}

fn twist_all(r: &IdealTriangulation, closed: &[ClosedPart], l: &Laminate, m: usize) -> Result<Laminate> {
    let mut cur = l.clone();
    for c in closed {
        cur = dehn_twist(r, &c.core, &cur, c.exponent * m as i64)?;
    }
    Ok(cur)
}

/// For m = 0..=m_max, the cone spanned by the split non-closed part of the
/// lamination together with the completion arcs twisted m times along every
/// closed member, and how far the lamination's shear vector is from it.
pub fn allcase_driver(
    t: &TaggedTriangulation,
    lamination: &[Laminate],
    completion: &[TaggedArc],
    m_max: usize,
    exec: Exec,
) -> Result<DriverReport> {
    let r = t.base();
    let n = t.size();
    let mut target = vec![0i64; n];
    for l in lamination {
        for (s, v) in target.iter_mut().zip(shear(t, l)?) {
            *s += v;
        }
    }
    let parts = decompose(r, lamination)?;
    let mut pq = parts.split(r)?;
    pq.sort();
    pq.dedup();
    for l in &pq {
        elementary_inverse(r, l).ok_or_else(|| Error::Input("split laminate is not elementary".into()))?;
    }
    if pq.len() + completion.len() != n {
        return Err(Error::Input(format!(
            "{} arcs from the lamination and {} completion arcs do not make a triangulation of {n} arcs",
            pq.len(),
            completion.len()
        )));
    }
    let fixed: Vec<Vec<i64>> = pq.iter().map(|l| shear(t, l)).collect::<Result<_>>()?;
    let free: Vec<Laminate> = completion.iter().map(|d| elementary(r, d)).collect::<Result<_>>()?;

    let mut closed: Vec<ClosedPart> = Vec::new();
    for l in &parts.closed {
        match closed.iter_mut().find(|c| c.core == *l) {
            Some(c) => c.multiplicity += 1,
            None => closed.push(ClosedPart { core: l.clone(), multiplicity: 1, crossings: 0, exponent: 0 }),
        }
    }
    for c in closed.iter_mut() {
        for e in &free {
            c.crossings += intersection_count(r, &c.core, e)?;
        }
        if c.crossings == 0 {
            return Err(Error::Input("a closed laminate misses every completion arc".into()));
        }
    }
    let product: i64 = closed.iter().map(|c| c.crossings as i64).product();
    for c in closed.iter_mut() {
        c.exponent = product / c.crossings as i64 * c.multiplicity as i64;
    }

    let ms: Vec<usize> = (0..=m_max).collect();
    let steps = exec::map(exec, &ms, |&m| -> Result<DriverStep> {
        let mut generators = fixed.clone();
        for e in &free {
            generators.push(shear(t, &twist_all(r, &closed, e, m)?)?);
        }
        let cone = RationalCone::new(n, generators.clone())?;
        let angle = generators.iter().map(|g| angle(&target, g)).fold(f64::INFINITY, f64::min);
        Ok(DriverStep {
            m,
            contains: cone.contains(&target)?,
            sq_distance: cone.sq_distance(&target)?.to_string(),
            angle,
            generators,
        })
    });
    Ok(DriverReport { target, fixed, closed, steps: steps.into_iter().collect::<Result<_>>()? })
}
