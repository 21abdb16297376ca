//! Exact rational polyhedral cones: membership, squared distance, half-space
//! residuals, lattice coverage and a pairwise face check for small dimension.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalCone {
    gens: Vec<Vec<i64>>,
    dim: usize,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Row-reduces `m` in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let n = vectors[0].len();
    row_reduce(&mut m, n).len()
}

/// Solves Σ a_i s_i = v for linearly independent columns s_i. None if v is
/// outside their span.
fn solve_in_span(cols: &[&Vec<i64>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let n = v.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| q(c[r])).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let piv = row_reduce(&mut m, k + 1);
    if piv.contains(&k) {
        return None;
    }
    let mut a = vec![BigRational::zero(); k];
    for (row, &c) in piv.iter().enumerate() {
        a[c] = m[row][k].clone();
    }
    Some(a)
}

fn subsets(m: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, max, cur, out);
            cur.pop();
        }
    }
    rec(0, m, max, &mut cur, &mut out);
    out
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl RationalCone {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(dim, g.len()));
            }
            if g.iter().all(|&x| x == 0) || out.contains(&g) {
                continue;
            }
            out.push(g);
        }
        Ok(RationalCone { gens: out, dim })
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        rank(&self.gens) == self.dim
    }

    fn independent_subsets(&self) -> Vec<Vec<usize>> {
        subsets(self.gens.len(), self.dim)
            .into_iter()
            .filter(|s| rank(&s.iter().map(|&i| self.gens[i].clone()).collect::<Vec<_>>()) == s.len())
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        if v.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        let vq: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
        for s in self.independent_subsets() {
            let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &self.gens[i]).collect();
            if let Some(a) = solve_in_span(&cols, &vq) {
                if a.iter().all(|x| !x.is_negative()) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Exact squared Euclidean distance from `v` to the cone.
    pub fn sq_distance(&self, v: &[i64]) -> Result<BigRational> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        let vq: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
        let mut best = dot(&vq, &vq);
        for s in self.independent_subsets() {
            let cols: Vec<Vec<BigRational>> = s.iter().map(|&i| self.gens[i].iter().map(|&x| q(x)).collect()).collect();
            let k = cols.len();
            // normal equations (SᵀS) a = Sᵀv
            let mut m: Vec<Vec<BigRational>> = (0..k)
                .map(|r| {
                    let mut row: Vec<BigRational> = (0..k).map(|c| dot(&cols[r], &cols[c])).collect();
                    row.push(dot(&cols[r], &vq));
                    row
                })
                .collect();
            row_reduce(&mut m, k);
            let a: Vec<BigRational> = (0..k).map(|r| m[r][k].clone()).collect();
            if a.iter().any(|x| x.is_negative()) {
                continue;
            }
            let mut resid = vq.clone();
            for (ai, c) in a.iter().zip(&cols) {
                for (x, y) in resid.iter_mut().zip(c) {
                    *x = &*x - ai * y;
                }
            }
            let d = dot(&resid, &resid);
            if d < best {
                best = d;
            }
        }
        Ok(best)
    }
}

/// Minimum of ⟨w, g⟩ over every generator of every cone.
pub fn halfspace_residual(cones: &[RationalCone], w: &[i64]) -> Option<i64> {
    cones
        .iter()
        .flat_map(|c| c.gens.iter())
        .map(|g| g.iter().zip(w).map(|(a, b)| a * b).sum::<i64>())
        .min()
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub point: Vec<i64>,
    pub covered: bool,
    /// Index of the first cone containing the point.
    pub witness: Option<usize>,
    /// Exact squared distance to the nearest cone, for uncovered points.
    pub sq_distance: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub radius: i64,
    pub total: usize,
    pub covered: usize,
    pub points: Vec<PointReport>,
}

impl Coverage {
    pub fn uncovered(&self) -> Vec<&PointReport> {
        self.points.iter().filter(|p| !p.covered).collect()
    }

    pub fn fraction(&self) -> BigRational {
        if self.total == 0 {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(self.covered), BigInt::from(self.total))
    }
}

pub fn lattice_ball(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Coverage of the max-norm lattice ball by the union of `cones`. The seed
/// only shuffles evaluation order; the report is sorted by point.
pub fn coverage(cones: &[RationalCone], dim: usize, radius: i64, exec: Exec, seed: u64) -> Result<Coverage> {
    let mut pts = lattice_ball(dim, radius);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    pts.shuffle(&mut rng);
    let results: Vec<Result<PointReport>> = exec::map(exec, &pts, |p| {
        for (i, c) in cones.iter().enumerate() {
            if c.contains(p)? {
                return Ok(PointReport { point: p.clone(), covered: true, witness: Some(i), sq_distance: None });
            }
        }
        let mut best: Option<BigRational> = None;
        for c in cones {
            let d = c.sq_distance(p)?;
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        Ok(PointReport { point: p.clone(), covered: false, witness: None, sq_distance: best.map(|d| d.to_string()) })
    });
    let mut points = results.into_iter().collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.point.cmp(&b.point));
    let covered = points.iter().filter(|p| p.covered).count();
    Ok(Coverage { radius, total: points.len(), covered, points })
}

fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn cone_of(dim: usize, gens: &[Vec<i64>]) -> RationalCone {
    RationalCone::new(dim, gens.to_vec()).expect("dimension checked")
}

fn meets_in_face(a: &RationalCone, b: &RationalCone) -> Result<bool> {
    let n = a.dim;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for g in &a.gens {
        if b.contains(g)? {
            rays.push(g.clone());
        }
    }
    for g in &b.gens {
        if a.contains(g)? {
            rays.push(g.clone());
        }
    }
    if n == 3 {
        let pairs = |c: &RationalCone| -> Vec<(Vec<i64>, Vec<i64>)> {
            let mut v = Vec::new();
            for i in 0..c.gens.len() {
                for j in i + 1..c.gens.len() {
                    v.push((c.gens[i].clone(), c.gens[j].clone()));
                }
            }
            v
        };
        for (p, r) in pairs(a) {
            for (s, t) in pairs(b) {
                let line = cross(&cross(&p, &r), &cross(&s, &t));
                if line.iter().all(|&x| x == 0) {
                    continue;
                }
                for dir in [line.clone(), line.iter().map(|x| -x).collect()] {
                    if a.contains(&dir)? && b.contains(&dir)? {
                        rays.push(dir);
                    }
                }
            }
        }
    }
    let face_a = cone_of(n, &a.gens.iter().filter(|g| b.contains(g).unwrap_or(false)).cloned().collect::<Vec<_>>());
    let face_b = cone_of(n, &b.gens.iter().filter(|g| a.contains(g).unwrap_or(false)).cloned().collect::<Vec<_>>());
    for r in &rays {
        if !face_a.contains(r)? || !face_b.contains(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every pair of cones meets in a common face. Cones must be
/// simplicial and of dimension 2 or 3.
pub fn pairwise_face_check(cones: &[RationalCone]) -> Result<bool> {
    for c in cones {
        if c.dim > 3 {
            return Err(Error::UnsupportedDimension(c.dim));
        }
        if rank(&c.gens) != c.gens.len() {
            return Err(Error::NotSimplicial);
        }
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            if cones[i].dim != cones[j].dim {
                return Err(Error::DimensionMismatch(cones[i].dim, cones[j].dim));
            }
            if !meets_in_face(&cones[i], &cones[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
