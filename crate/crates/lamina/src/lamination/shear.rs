//! Shear coordinates. Each crossing of an arc counts +1 when the curve turns
//! left-then-right across the arc's quadrilateral and −1 for right-then-left
//! (the S and Z shapes); segments cutting a corner count 0.

use crate::error::{Error, Result};
use crate::surface::{IdealTriangulation, Side, Slot, TaggedTriangulation};

use super::laminate::Laminate;

/// Unrolled wraps used for spirals, and the wider unrolling used to confirm.
pub const WRAPS: usize = 2;
pub const CHECK_WRAPS: usize = 3;

fn crossing_sign(r: &IdealTriangulation, entry: Option<Slot>, x: Slot, exit: Option<Slot>) -> i64 {
    let (Some(e), Some(f)) = (entry, exit) else { return 0 };
    let y = r.partner(x).expect("crossed side is an arc");
    let i = (e.pos + 3 - x.pos) % 3;
    let j = (f.pos + 3 - y.pos) % 3;
    match (i, j) {
        (2, 2) => 1,
        (1, 1) => -1,
        _ => 0,
    }
}

/// Signed crossing counts per arc of the reference triangulation, with no
/// special treatment of self-folded triangles.
pub fn raw_counts(r: &IdealTriangulation, l: &Laminate, wraps: usize) -> Vec<i64> {
    let mut b = vec![0i64; r.n_arcs()];
    let (head, xs, last, closed) = l.unroll(r, wraps);
    let n = xs.len();
    for i in 0..n {
        let entry = if i > 0 {
            r.partner(xs[i - 1])
        } else if closed {
            r.partner(xs[n - 1])
        } else {
            head
        };
        let exit = if i + 1 < n {
            Some(xs[i + 1])
        } else if closed {
            Some(xs[0])
        } else {
            last
        };
        if let Side::Arc(a) = r.side(xs[i]) {
            b[a] += crossing_sign(r, entry, xs[i], exit);
        }
    }
    b
}

/// Shear coordinates against the ideal reference triangulation. An inner arc
/// of a self-folded triangle takes the loop's value on the laminate with its
/// spirals at the enclosed puncture reversed.
pub fn shear_ideal_with(r: &IdealTriangulation, l: &Laminate, wraps: usize) -> Vec<i64> {
    let mut b = raw_counts(r, l, wraps);
    for sf in r.self_folded() {
        b[sf.inner_arc] = raw_counts(r, &l.spiral_flip(sf.puncture), wraps)[sf.loop_arc];
    }
    b
}

pub fn shear_ideal(r: &IdealTriangulation, l: &Laminate) -> Result<Vec<i64>> {
    let b = shear_ideal_with(r, l, WRAPS);
    if b != shear_ideal_with(r, l, CHECK_WRAPS) {
        return Err(Error::UnstableSpiral);
    }
    Ok(b)
}

/// Shear coordinates indexed by the positions of a tagged triangulation whose
/// base is the reference triangulation the laminate is drawn on.
pub fn shear(t: &TaggedTriangulation, l: &Laminate) -> Result<Vec<i64>> {
    let mut l = l.clone();
    for &p in t.flipped() {
        l = l.spiral_flip(p);
    }
    let b = shear_ideal(t.base(), &l)?;
    Ok((0..t.size()).map(|i| b[t.base_arc(i)]).collect())
}

/// Shear of a multiset of laminates.
pub fn shear_sum(t: &TaggedTriangulation, ls: &[Laminate]) -> Result<Vec<i64>> {
    let mut acc = vec![0i64; t.size()];
    for l in ls {
        for (a, b) in acc.iter_mut().zip(shear(t, l)?) {
            *a += b;
        }
    }
    Ok(acc)
}

/// Coordinate sum on a triangulation without self-folded triangles.
pub fn sum_shear(r: &IdealTriangulation, l: &Laminate) -> Result<i64> {
    if !r.self_folded().is_empty() {
        return Err(Error::SelfFoldedPresent);
    }
    Ok(shear_ideal(r, l)?.iter().sum())
}
