use std::collections::{BTreeMap, BTreeSet};

use super::matrix::DistanceMatrix;
use crate::error::{Error, Result};

/// Tree without a root. Leaves carry labels, internal nodes do not.
#[derive(Debug, Clone, PartialEq)]
pub struct UnrootedTree {
    pub nodes: Vec<Option<String>>,
    /// `(a, b, length)` with non-negative lengths.
    pub edges: Vec<(usize, usize, f64)>,
}

impl UnrootedTree {
    /// Checks labels, lengths and that the edges form a spanning tree.
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(Error::validation("tree has no nodes"));
        }
        if self.edges.len() + 1 != n {
            return Err(Error::validation(format!(
                "a tree on {n} nodes needs {} edges, found {}",
                n - 1,
                self.edges.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in self.nodes.iter().flatten() {
            if !seen.insert(l.as_str()) {
                return Err(Error::validation(format!("duplicate leaf label '{l}'")));
            }
        }
        for &(a, b, len) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::validation(format!("edge ({a}, {b}) is malformed")));
            }
            if !(len.is_finite() && len >= 0.0) {
                return Err(Error::validation(format!("edge ({a}, {b}) has invalid length {len}")));
            }
        }
        let adj = self.adjacency();
        for (v, label) in self.nodes.iter().enumerate() {
            if adj[v].len() <= 1 && label.is_none() && n > 1 {
                return Err(Error::validation(format!("leaf node {v} has no label")));
            }
        }
        let mut visited = vec![false; n];
        let mut stack = vec![0];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::validation("tree is not connected"));
        }
        Ok(())
    }

    /// Neighbor lists `(node, edge length)`, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b, len) in &self.edges {
            adj[a].push((b, len));
            adj[b].push((a, len));
        }
        adj
    }

    pub fn leaf_labels(&self) -> Vec<&str> {
        let mut l: Vec<&str> = self.nodes.iter().flatten().map(String::as_str).collect();
        l.sort_unstable();
        l
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().flatten().count()
    }

    /// Leaf-to-leaf path lengths, labels sorted.
    pub fn path_lengths(&self) -> (Vec<String>, Vec<Vec<f64>>) {
        let adj = self.adjacency();
        let mut leaves: Vec<(&str, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.as_deref().map(|l| (l, i)))
            .collect();
        leaves.sort_unstable();
        let mut d = vec![vec![0.0; leaves.len()]; leaves.len()];
        for (i, &(_, src)) in leaves.iter().enumerate() {
            let dist = distances_from(&adj, src);
            for (j, &(_, dst)) in leaves.iter().enumerate().skip(i + 1) {
                d[i][j] = dist[dst];
                d[j][i] = dist[dst];
            }
        }
        (leaves.into_iter().map(|(l, _)| l.to_string()).collect(), d)
    }

    /// Non-trivial splits, each written as the side without the smallest
    /// label. Two trees on the same leaves share a topology iff their split
    /// sets are equal.
    pub fn splits(&self) -> BTreeSet<BTreeSet<String>> {
        let adj = self.adjacency();
        let all = self.leaf_labels();
        let Some(&smallest) = all.first() else {
            return BTreeSet::new();
        };
        let total = all.len();
        let mut out = BTreeSet::new();
        for &(a, b, _) in &self.edges {
            let side = self.leaves_beyond(&adj, a, b);
            if side.len() < 2 || side.len() > total - 2 {
                continue;
            }
            let side: BTreeSet<String> = if side.contains(smallest) {
                all.iter().filter(|l| !side.contains(**l)).map(|l| l.to_string()).collect()
            } else {
                side.into_iter().map(str::to_string).collect()
            };
            out.insert(side);
        }
        out
    }

    /// Leaves reached from `to` without crossing back over `from`.
    fn leaves_beyond<'a>(&'a self, adj: &[Vec<(usize, f64)>], from: usize, to: usize) -> BTreeSet<&'a str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(to, from)];
        while let Some((v, parent)) = stack.pop() {
            if let Some(l) = &self.nodes[v] {
                out.insert(l.as_str());
            }
            for &(w, _) in &adj[v] {
                if w != parent {
                    stack.push((w, v));
                }
            }
        }
        out
    }
}

pub(crate) fn distances_from(adj: &[Vec<(usize, f64)>], src: usize) -> Vec<f64> {
    let mut dist = vec![f64::NAN; adj.len()];
    dist[src] = 0.0;
    let mut stack = vec![src];
    while let Some(v) = stack.pop() {
        for &(w, len) in &adj[v] {
            if dist[w].is_nan() {
                dist[w] = dist[v] + len;
                stack.push(w);
            }
        }
    }
    dist
}

fn clamp_length(len: f64, what: &str) -> f64 {
    if len < 0.0 {
        log::warn!("negative branch length {len:.6} for {what} clamped to 0");
        0.0
    } else {
        len
    }
}

/// Neighbor-joining tree of a distance matrix with at least three labels.
///
/// Each step joins the pair minimizing
/// `Q(i,j) = (r−2)·d(i,j) − R_i − R_j`, ties going to the lowest index pair
/// in current matrix order. Negative branch lengths are clamped to zero with
/// a warning.
pub fn neighbor_joining(m: &DistanceMatrix) -> Result<UnrootedTree> {
    m.validate()?;
    neighbor_joining_unchecked(&m.labels, &m.d)
}

/// Same as [`neighbor_joining`] for a matrix not bounded by 1, such as the
/// path lengths of an arbitrary tree.
pub fn neighbor_joining_raw(labels: &[String], d: &[Vec<f64>]) -> Result<UnrootedTree> {
    let n = labels.len();
    if d.len() != n || d.iter().any(|r| r.len() != n) {
        return Err(Error::validation(format!("distance matrix must be {n} x {n}")));
    }
    for i in 0..n {
        for j in 0..n {
            if !d[i][j].is_finite() || d[i][j] < 0.0 || d[i][j] != d[j][i] || (i == j && d[i][j] != 0.0) {
                return Err(Error::validation(format!(
                    "invalid distance between '{}' and '{}'",
                    labels[i], labels[j]
                )));
            }
        }
    }
    neighbor_joining_unchecked(labels, d)
}

fn neighbor_joining_unchecked(labels: &[String], d: &[Vec<f64>]) -> Result<UnrootedTree> {
    let n = labels.len();
    if n < 3 {
        return Err(Error::validation(format!("neighbor joining needs at least 3 labels, found {n}")));
    }
    let mut nodes: Vec<Option<String>> = labels.iter().cloned().map(Some).collect();
    let mut edges = Vec::with_capacity(2 * n - 3);
    let mut active: Vec<usize> = (0..n).collect();
    let mut dist: Vec<Vec<f64>> = d.to_vec();

    while active.len() > 3 {
        let r = active.len();
        let sums: Vec<f64> = dist.iter().map(|row| row.iter().sum()).collect();
        let (mut bi, mut bj, mut best) = (0, 1, f64::INFINITY);
        for i in 0..r {
            for j in i + 1..r {
                let q = (r as f64 - 2.0) * dist[i][j] - sums[i] - sums[j];
                if q < best {
                    (bi, bj, best) = (i, j, q);
                }
            }
        }
        let dij = dist[bi][bj];
        let li = 0.5 * dij + (sums[bi] - sums[bj]) / (2.0 * (r as f64 - 2.0));
        let lj = dij - li;
        let u = nodes.len();
        nodes.push(None);
        edges.push((active[bi], u, clamp_length(li, "a joined node")));
        edges.push((active[bj], u, clamp_length(lj, "a joined node")));

        let new_row: Vec<f64> = (0..r)
            .filter(|&k| k != bi && k != bj)
            .map(|k| 0.5 * (dist[bi][k] + dist[bj][k] - dij))
            .collect();
        let keep: Vec<usize> = (0..r).filter(|&k| k != bi && k != bj).collect();
        let mut next: Vec<Vec<f64>> = keep
            .iter()
            .zip(&new_row)
            .map(|(&k, &nu)| {
                let mut row: Vec<f64> = keep.iter().map(|&l| dist[k][l]).collect();
                row.push(nu);
                row
            })
            .collect();
        let mut last = new_row;
        last.push(0.0);
        next.push(last);
        dist = next;
        active = keep.iter().map(|&k| active[k]).chain(std::iter::once(u)).collect();
    }

    let c = nodes.len();
    nodes.push(None);
    let (d01, d02, d12) = (dist[0][1], dist[0][2], dist[1][2]);
    let lengths = [
        0.5 * (d01 + d02 - d12),
        0.5 * (d01 + d12 - d02),
        0.5 * (d02 + d12 - d01),
    ];
    for (k, len) in lengths.into_iter().enumerate() {
        edges.push((active[k], c, clamp_length(len, "the final join")));
    }
    let tree = UnrootedTree { nodes, edges };
    debug_assert!(tree.validate().is_ok());
    Ok(tree)
}

/// Path-length map keyed by sorted label pairs; handy for comparisons.
pub fn path_length_map(t: &UnrootedTree) -> BTreeMap<(String, String), f64> {
    let (labels, d) = t.path_lengths();
    let mut out = BTreeMap::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            out.insert((labels[i].clone(), labels[j].clone()), d[i][j]);
        }
    }
    out
}
