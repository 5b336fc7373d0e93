//! Agglomerative centroid-linkage clustering of machines.
//!
//! Works directly on similarities: the most similar pair of active clusters
//! is merged, and the similarity of the merged cluster to every other cluster
//! follows the centroid (Lance-Williams) recurrence. Merge levels may go
//! negative and are never clamped.

use std::fmt::Write as _;

use serde::Serialize;

use crate::similarity::SimilarityMatrix;
use crate::Error;

/// Two merge levels closer than this are treated as tied.
pub const LEVEL_TOLERANCE: f64 = 1e-12;

/// One agglomeration step. Node ids are 1-based: leaves are `1..=m`, the
/// node created by merge `t` (1-based) is `m + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub level: f64,
    /// Number of machines under the new node.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkageTree {
    leaf_count: usize,
    merges: Vec<Merge>,
}

/// Similarity between cluster r∪q and a third cluster k, given the
/// similarities s(r,k), s(q,k), s(r,q) and the sizes of r and q.
pub fn merge_level_update(
    s_rk: f64,
    s_qk: f64,
    s_rq: f64,
    n_r: usize,
    n_q: usize,
) -> Result<f64, Error> {
    if n_r == 0 || n_q == 0 {
        return Err(Error::Domain(format!(
            "cluster sizes must be positive, got {n_r} and {n_q}"
        )));
    }
    let n_r = n_r as f64;
    let n_q = n_q as f64;
    let n = n_r + n_q;
    Ok((n_r * s_rk + n_q * s_qk) / n - (n_r * n_q) / (n * n) * s_rq)
}

pub fn build_dendrogram(sim: &SimilarityMatrix) -> LinkageTree {
    let m = sim.size();
    let nodes = 2 * m;
    // table[a][b] for node ids a, b (index 0 unused)
    let mut table = vec![vec![0.0f64; nodes]; nodes];
    for i in 0..m {
        for j in 0..m {
            table[i + 1][j + 1] = sim.get(i, j);
        }
    }
    let mut size = vec![0usize; nodes];
    size[1..=m].fill(1);
    let mut active: Vec<usize> = (1..=m).collect();
    let mut merges = Vec::with_capacity(m.saturating_sub(1));

    while active.len() > 1 {
        let mut best: Option<(usize, usize, f64)> = None;
        for (x, &a) in active.iter().enumerate() {
            for &b in &active[x + 1..] {
                let v = table[a][b];
                if best.is_none_or(|(_, _, bv)| v > bv + LEVEL_TOLERANCE) {
                    best = Some((a, b, v));
                }
            }
        }
        let (r, q, level) = best.expect("at least two active clusters");
        let node = m + merges.len() + 1;
        let (n_r, n_q) = (size[r], size[q]);
        for &k in &active {
            if k == r || k == q {
                continue;
            }
            let v = merge_level_update(table[r][k], table[q][k], level, n_r, n_q)
                .expect("active clusters are non-empty");
            table[node][k] = v;
            table[k][node] = v;
        }
        size[node] = n_r + n_q;
        active.retain(|&k| k != r && k != q);
        active.push(node);
        merges.push(Merge {
            left: r,
            right: q,
            level,
            size: n_r + n_q,
        });
    }

    LinkageTree {
        leaf_count: m,
        merges,
    }
}

impl LinkageTree {
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// The `k` clusters that existed before the last `k - 1` merges. Each
    /// cluster is a sorted list of 0-based machine indices; clusters are
    /// ordered by their smallest member.
    pub fn cut(&self, k: usize) -> Result<Vec<Vec<usize>>, Error> {
        let m = self.leaf_count;
        if k == 0 || k > m {
            return Err(Error::Domain(format!("cut size {k} outside 1..={m}")));
        }
        let mut groups: Vec<Option<Vec<usize>>> = vec![None; 2 * m];
        for i in 0..m {
            groups[i + 1] = Some(vec![i]);
        }
        for (t, merge) in self.merges[..m - k].iter().enumerate() {
            let mut members = groups[merge.left].take().expect("left child is active");
            members.extend(groups[merge.right].take().expect("right child is active"));
            groups[m + t + 1] = Some(members);
        }
        let mut cells: Vec<Vec<usize>> = groups
            .into_iter()
            .flatten()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        cells.sort_unstable_by_key(|g| g[0]);
        Ok(cells)
    }

    /// Plain-text `(m-1) x 3` linkage table, one `left right level` row per
    /// merge, levels printed with `precision` decimals.
    pub fn to_table(&self, precision: usize) -> String {
        let mut out = String::new();
        for merge in &self.merges {
            let _ = writeln!(
                out,
                "{} {} {:.*}",
                merge.left, merge.right, precision, merge.level
            );
        }
        out
    }
}
