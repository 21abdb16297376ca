use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Skew-symmetric exchange matrix: `b[i][j]` = #(i→j) − #(i←j). The first
/// `mutable` vertices may be mutated; the rest are frozen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quiver {
    pub b: Vec<Vec<i64>>,
    pub mutable: usize,
}

impl Quiver {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input("exchange matrix is not square".into()));
            }
            if row[i] != 0 {
                return Err(Error::Input(format!("loop at vertex {}", i + 1)));
            }
            for j in 0..n {
                if b[j][i] != -row[j] {
                    return Err(Error::Input("exchange matrix is not skew-symmetric".into()));
                }
            }
        }
        Ok(Quiver { b, mutable: n })
    }

    pub fn empty(n: usize) -> Self {
        Quiver { b: vec![vec![0; n]; n], mutable: n }
    }

    /// Quiver from 1-based arrow list; repeated arrows add up, opposite ones cancel.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut b = vec![vec![0; n]; n];
        for &(i, j) in arrows {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::Input(format!("bad arrow {i}->{j}")));
            }
            b[i - 1][j - 1] += 1;
            b[j - 1][i - 1] -= 1;
        }
        Ok(Quiver { b, mutable: n })
    }

    pub fn kronecker() -> Self {
        Self::from_arrows(2, &[(2, 1), (2, 1)]).unwrap()
    }

    pub fn markov() -> Self {
        Self::from_arrows(3, &[(1, 2), (1, 2), (2, 3), (2, 3), (3, 1), (3, 1)]).unwrap()
    }

    pub fn size(&self) -> usize {
        self.b.len()
    }

    /// Adds a frozen copy i′ of every vertex and an arrow i → i′.
    pub fn framed(&self) -> Quiver {
        let n = self.size();
        let mut b = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b[i][j];
            }
            b[i][n + i] = 1;
            b[n + i][i] = -1;
        }
        Quiver { b, mutable: n }
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            b: self.b.iter().map(|r| r.iter().map(|v| -v).collect()).collect(),
            mutable: self.mutable,
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        if k >= self.mutable {
            return Err(Error::FrozenVertex(k + 1));
        }
        let n = self.size();
        let b = &self.b;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(Quiver { b: out, mutable: self.mutable })
    }

    /// Total number of arrows after cancellation.
    pub fn arrow_count(&self) -> i64 {
        let n = self.size();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.b[i][j].max(0)).sum()
    }
}

/// JSON forms accepted for quivers: an exchange matrix, or a 1-based arrow list.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum QuiverSpec {
    Matrix { matrix: Vec<Vec<i64>> },
    Arrows { n: usize, arrows: Vec<(usize, usize)> },
}

impl QuiverSpec {
    pub fn build(&self) -> Result<Quiver> {
        match self {
            QuiverSpec::Matrix { matrix } => Quiver::new(matrix.clone()),
            QuiverSpec::Arrows { n, arrows } => Quiver::from_arrows(*n, arrows),
        }
    }
}
