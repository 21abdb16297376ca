use super::laurent::LaurentPoly;
use super::quiver::Quiver;
use crate::error::{Error, Result};

/// Largest number of monomials a cluster variable may carry before the
/// Laurent engine gives up on a branch.
pub const SIZE_GUARD: usize = 200_000;

pub type GVector = Vec<i64>;

/// Seed with principal coefficients: framed quiver on 2n vertices plus the
/// cluster of n Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub cluster: Vec<LaurentPoly>,
    pub path: Vec<usize>,
}

impl Seed {
    pub fn initial(q: &Quiver) -> Seed {
        let n = q.size();
        Seed {
            quiver: q.framed(),
            cluster: (0..n).map(|i| LaurentPoly::x(n, i)).collect(),
            path: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    fn variable(&self, j: usize) -> LaurentPoly {
        let n = self.rank();
        if j < n {
            self.cluster[j].clone()
        } else {
            LaurentPoly::y(n, j - n)
        }
    }

    /// Exchange at `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(Error::FrozenVertex(k + 1));
        }
        let b = &self.quiver.b;
        let mut incoming = LaurentPoly::one(n);
        let mut outgoing = LaurentPoly::one(n);
        for j in 0..2 * n {
            let v = b[j][k];
            if v > 0 {
                incoming = incoming.mul(&self.variable(j).pow(v as u32));
            } else if v < 0 {
                outgoing = outgoing.mul(&self.variable(j).pow((-v) as u32));
            }
        }
        let fresh = incoming.add(&outgoing).div_exact(&self.cluster[k])?;
        if fresh.len() > SIZE_GUARD {
            return Err(Error::SizeGuardExceeded(SIZE_GUARD));
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        let mut path = self.path.clone();
        path.push(k);
        Ok(Seed { quiver: self.quiver.mutate(k)?, cluster, path })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// Degrees of x_1..x_n, y_1..y_n: deg x_i = e_i and deg y_j is the j-th
/// column of the unframed exchange matrix.
pub fn grading(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.size();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        out.push(e);
    }
    for j in 0..n {
        out.push((0..n).map(|i| q.b[i][j]).collect());
    }
    out
}

pub fn g_vector_grading(x: &LaurentPoly, q: &Quiver) -> Result<GVector> {
    x.degree(&grading(q))
}

/// Degree bookkeeping without polynomials: carries the framed matrix and the
/// current g-vectors, updated by the same rule the exchange relation imposes
/// on degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalSeed {
    pub quiver: Quiver,
    pub g: Vec<GVector>,
    pub path: Vec<usize>,
    initial: Vec<Vec<i64>>,
}

impl TropicalSeed {
    pub fn initial(q: &Quiver) -> Self {
        let n = q.size();
        TropicalSeed {
            quiver: q.framed(),
            g: (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    e
                })
                .collect(),
            path: Vec::new(),
            initial: q.b.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::FrozenVertex(k + 1));
        }
        let b = &self.quiver.b;
        let mut gk: Vec<i64> = self.g[k].iter().map(|v| -v).collect();
        for i in 0..n {
            let w = (-b[i][k]).max(0);
            if w > 0 {
                for (s, v) in gk.iter_mut().zip(&self.g[i]) {
                    *s += w * v;
                }
            }
        }
        for j in 0..n {
            let w = (-b[n + j][k]).max(0);
            if w > 0 {
                for (r, s) in gk.iter_mut().enumerate() {
                    *s += w * self.initial[r][j];
                }
            }
        }
        let mut g = self.g.clone();
        g[k] = gk;
        let mut path = self.path.clone();
        path.push(k);
        Ok(TropicalSeed { quiver: self.quiver.mutate(k)?, g, path, initial: self.initial.clone() })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Self> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The c-vectors: bottom half of the framed matrix, column by column.
    pub fn c_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|k| (0..n).map(|j| self.quiver.b[n + j][k]).collect()).collect()
    }
}

/// g-vectors of the cluster reached by `path` (0-based indices).
pub fn g_vector_tropical(path: &[usize], q: &Quiver) -> Result<Vec<GVector>> {
    Ok(TropicalSeed::initial(q).mutate_path(path)?.g)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(2, s).unwrap()
    }

    #[test]
    fn kronecker_first_exchanges() {
        let s = Seed::initial(&Quiver::kronecker());
        assert_eq!(s.mutate(0).unwrap().cluster[0], p("(x2^2 + y1)/x1"));
        assert_eq!(s.mutate(1).unwrap().cluster[1], p("(y2*x1^2 + 1)/x2"));
    }

    #[test]
    fn kronecker_tropical_path() {
        let g = g_vector_tropical(&[0, 1], &Quiver::kronecker()).unwrap();
        assert_eq!(g, vec![vec![-1, 2], vec![-2, 3]]);
    }
}
