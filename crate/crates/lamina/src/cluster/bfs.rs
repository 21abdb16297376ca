//! Breadth-first enumeration of clusters. Clusters are identified by their
//! sorted list of g-vectors; the frontier of each level is expanded with
//! `exec::map` and merged back in a fixed order.

use std::collections::BTreeMap;

use serde::Serialize;

use super::laurent::LaurentPoly;
use super::quiver::Quiver;
use super::seed::{GVector, Seed, TropicalSeed};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Laurent,
    Tropical,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterRecord {
    pub id: usize,
    pub depth: usize,
    /// 0-based mutation indices from the initial seed.
    pub path: Vec<usize>,
    /// g-vectors in the seed's positional order.
    pub gvectors: Vec<GVector>,
    #[serde(skip)]
    pub variables: Option<Vec<LaurentPoly>>,
}

impl ClusterRecord {
    pub fn key(&self) -> Vec<GVector> {
        let mut k = self.gvectors.clone();
        k.sort();
        k
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BfsResult {
    pub clusters: Vec<ClusterRecord>,
    /// Branches dropped by the size guard (Laurent engine only).
    pub aborted: usize,
}

#[derive(Clone)]
enum Node {
    L(Seed, Vec<GVector>),
    T(TropicalSeed),
}

impl Node {
    fn g(&self) -> &[GVector] {
        match self {
            Node::L(_, g) => g,
            Node::T(t) => &t.g,
        }
    }

    fn path(&self) -> &[usize] {
        match self {
            Node::L(s, _) => &s.path,
            Node::T(t) => &t.path,
        }
    }
}

fn grade(seed: &Seed, q: &Quiver) -> Result<Vec<GVector>> {
    seed.cluster.iter().map(|x| super::seed::g_vector_grading(x, q)).collect()
}

pub fn exchange_bfs(q: &Quiver, depth: usize, engine: Engine) -> Result<BfsResult> {
    exchange_bfs_with(q, depth, engine, Exec::default())
}

pub fn exchange_bfs_with(q: &Quiver, depth: usize, engine: Engine, exec: Exec) -> Result<BfsResult> {
    let n = q.size();
    let root = match engine {
        Engine::Laurent => {
            let s = Seed::initial(q);
            let g = grade(&s, q)?;
            Node::L(s, g)
        }
        Engine::Tropical => Node::T(TropicalSeed::initial(q)),
    };
    let mut seen: BTreeMap<Vec<GVector>, usize> = BTreeMap::new();
    let mut clusters = Vec::new();
    let record = |node: &Node, d: usize, clusters: &mut Vec<ClusterRecord>| {
        let id = clusters.len();
        clusters.push(ClusterRecord {
            id,
            depth: d,
            path: node.path().to_vec(),
            gvectors: node.g().to_vec(),
            variables: match node {
                Node::L(s, _) => Some(s.cluster.clone()),
                Node::T(_) => None,
            },
        });
    };
    let mut key = root.g().to_vec();
    key.sort();
    seen.insert(key, 0);
    record(&root, 0, &mut clusters);
    let mut frontier = vec![root];
    let mut aborted = 0;
    for d in 1..=depth {
        let jobs: Vec<(usize, usize)> = (0..frontier.len()).flat_map(|i| (0..n).map(move |k| (i, k))).collect();
        let children: Vec<Result<Node>> = exec::map(exec, &jobs, |&(i, k)| match &frontier[i] {
            Node::L(s, _) => {
                let m = s.mutate(k)?;
                let g = grade(&m, q)?;
                Ok(Node::L(m, g))
            }
            Node::T(t) => Ok(Node::T(t.mutate(k)?)),
        });
        let mut next = Vec::new();
        for c in children {
            let node = match c {
                Ok(node) => node,
                Err(Error::SizeGuardExceeded(_)) => {
                    aborted += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut key = node.g().to_vec();
            key.sort();
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, clusters.len());
            record(&node, d, &mut clusters);
            next.push(node);
        }
        frontier = next;
    }
    Ok(BfsResult { clusters, aborted })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_depth_three_has_seven_clusters() {
        let r = exchange_bfs(&Quiver::kronecker(), 3, Engine::Tropical).unwrap();
        assert_eq!(r.clusters.len(), 7);
    }

    #[test]
    fn a1_times_a1_has_four_clusters() {
        let r = exchange_bfs(&Quiver::empty(2), 2, Engine::Laurent).unwrap();
        let mut keys: Vec<_> = r.clusters.iter().map(|c| c.key()).collect();
        keys.sort();
        assert_eq!(
            keys,
            vec![
                vec![vec![-1, 0], vec![0, -1]],
                vec![vec![-1, 0], vec![0, 1]],
                vec![vec![0, -1], vec![1, 0]],
                vec![vec![0, 1], vec![1, 0]],
            ]
        );
    }
}
