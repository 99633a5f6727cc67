//! Shortest-path distances and the resolving / locating-dominating predicates.
//!
//! Vertices are labelled `1..=n` throughout the crate. Every predicate here is
//! phrased against a [`DistanceTable`] or a plain adjacency view so that the
//! same checks serve the maximal outerplanar graphs and the auxiliary paths.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentinel for "no path"; never produced on connected inputs.
pub const UNREACHABLE: u32 = u32::MAX;

/// Read-only adjacency view over a simple undirected graph labelled `1..=n`.
pub trait Graph {
    fn order(&self) -> usize;

    /// Neighbours of `v`. The order is implementation-defined.
    fn neighbors(&self, v: u32) -> &[u32];

    fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }
}

/// Plain adjacency-list graph, used for paths and other non-MOP inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

impl SimpleGraph {
    /// Builds a graph on `1..=n`; loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(Error::BadLabel { label: x, n });
                }
            }
            if a == b || adj[a as usize - 1].contains(&b) {
                return Err(Error::DuplicateOrBoundary((a, b)));
            }
            adj[a as usize - 1].push(b);
            adj[b as usize - 1].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj })
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let adj = (1..=n as u32)
            .map(|v| {
                let mut list = Vec::with_capacity(2);
                if v > 1 {
                    list.push(v - 1);
                }
                if (v as usize) < n {
                    list.push(v + 1);
                }
                list
            })
            .collect();
        Self { adj }
    }
}

impl Graph for SimpleGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize - 1]
    }
}

/// Breadth-first distances from `src` to every vertex (index `v - 1`).
pub fn bfs<G: Graph + ?Sized>(g: &G, src: u32) -> Vec<u32> {
    let n = g.order();
    let mut dist = vec![UNREACHABLE; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[src as usize - 1] = 0;
    queue.push_back(src);
    while let Some(x) = queue.pop_front() {
        let next = dist[x as usize - 1] + 1;
        for &y in g.neighbors(x) {
            let slot = &mut dist[y as usize - 1];
            if *slot == UNREACHABLE {
                *slot = next;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// All-pairs hop distances stored as a dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    /// Wraps a precomputed row-major matrix. Panics if the length is not `n * n`.
    pub fn from_matrix(n: usize, dist: Vec<u32>) -> Self {
        assert_eq!(dist.len(), n * n, "distance matrix must be n x n");
        Self { n, dist }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.dist[(u as usize - 1) * self.n + (v as usize - 1)]
    }

    /// Distances from `u` to all vertices.
    pub fn row(&self, u: u32) -> &[u32] {
        let start = (u as usize - 1) * self.n;
        &self.dist[start..start + self.n]
    }

    /// Largest finite entry.
    pub fn diameter(&self) -> u32 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

/// Rows above this size are filled in parallel.
const PARALLEL_ROWS: usize = 256;

/// One BFS per source vertex.
pub fn distance_table<G: Graph + Sync + ?Sized>(g: &G) -> DistanceTable {
    let n = g.order();
    let mut dist = vec![0u32; n * n];
    if n == 0 {
        return DistanceTable { n, dist };
    }
    if n >= PARALLEL_ROWS {
        dist.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            row.copy_from_slice(&bfs(g, i as u32 + 1));
        });
    } else {
        for (i, row) in dist.chunks_mut(n).enumerate() {
            row.copy_from_slice(&bfs(g, i as u32 + 1));
        }
    }
    DistanceTable { n, dist }
}

/// A strictly increasing list of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Validates labels against `1..=n` and rejects duplicates; input order is irrelevant.
    pub fn new(members: impl IntoIterator<Item = u32>, n: usize) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateOrBoundary((w[0], w[1])));
            }
        }
        if let Some(&bad) = members.iter().find(|&&x| x == 0 || x as usize > n) {
            return Err(Error::BadLabel { label: bad, n });
        }
        Ok(Self(members))
    }

    /// Sorts and deduplicates without range validation.
    pub fn from_labels(members: impl IntoIterator<Item = u32>) -> Self {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl std::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `r(u|S)`: distances from `u` to the members of `s`, in member order.
pub fn metric_vector(table: &DistanceTable, u: u32, s: &VertexSet) -> Vec<u32> {
    s.members().iter().map(|&x| table.get(u, x)).collect()
}

/// Whether `v` tells `x` and `y` apart.
#[inline]
pub fn resolves(table: &DistanceTable, v: u32, x: u32, y: u32) -> bool {
    table.get(x, v) != table.get(y, v)
}

/// Outcome of a resolving-set check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// The lexicographically first pair `(u, v)`, `u < v`, sharing a metric vector.
    Collision(u32, u32),
}

impl Resolution {
    pub fn is_resolving(self) -> bool {
        matches!(self, Resolution::Resolving)
    }
}

/// Checks whether all metric vectors with respect to `s` are distinct.
pub fn is_resolving(table: &DistanceTable, s: &VertexSet) -> Resolution {
    let rows: Vec<&[u32]> = s.members().iter().map(|&x| table.row(x)).collect();
    first_collision(table.order(), &rows)
}

/// Same check from BFS rows of the members only, without an all-pairs table.
pub fn is_resolving_bfs<G: Graph + ?Sized>(g: &G, s: &VertexSet) -> Resolution {
    let rows: Vec<Vec<u32>> = s.members().iter().map(|&x| bfs(g, x)).collect();
    let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
    first_collision(g.order(), &refs)
}

/// Finds the lexicographically first pair of vertices whose columns in `rows` agree.
pub(crate) fn first_collision(n: usize, rows: &[&[u32]]) -> Resolution {
    let mut order: Vec<u32> = (1..=n as u32).collect();
    let key = |v: u32| rows.iter().map(move |row| row[v as usize - 1]);
    order.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
    let mut best: Option<(u32, u32)> = None;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && key(order[start]).eq(key(order[end])) {
            end += 1;
        }
        if end - start >= 2 {
            // Within a group labels are ascending, so the first two are the group's minimum pair.
            let pair = (order[start], order[start + 1]);
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        }
        start = end;
    }
    match best {
        Some((u, v)) => Resolution::Collision(u, v),
        None => Resolution::Resolving,
    }
}

/// `s` dominates and every vertex outside `s` has a distinct trace `N(v) ∩ s`.
pub fn is_locating_dominating<G: Graph + ?Sized>(g: &G, s: &VertexSet) -> bool {
    let mut traces: Vec<Vec<u32>> = Vec::new();
    for v in 1..=g.order() as u32 {
        if s.contains(v) {
            continue;
        }
        let mut trace: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| s.contains(w))
            .collect();
        if trace.is_empty() {
            return false;
        }
        trace.sort_unstable();
        traces.push(trace);
    }
    traces.sort_unstable();
    traces.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimpleGraph {
        SimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn triangle_distances_are_one() {
        let t = distance_table(&triangle());
        for u in 1..=3 {
            for v in 1..=3 {
                assert_eq!(t.get(u, v), u32::from(u != v));
            }
        }
        assert_eq!(t.diameter(), 1);
    }

    #[test]
    fn metric_vector_of_self_is_zero() {
        let t = distance_table(&triangle());
        let s = VertexSet::new([2], 3).unwrap();
        assert_eq!(metric_vector(&t, 2, &s), vec![0]);
        let s = VertexSet::new([1, 2], 3).unwrap();
        assert_eq!(metric_vector(&t, 3, &s), vec![1, 1]);
    }

    #[test]
    fn resolves_identical_pair_is_false() {
        let t = distance_table(&triangle());
        assert!(!resolves(&t, 1, 2, 2));
        assert!(resolves(&t, 1, 1, 2));
    }

    #[test]
    fn collision_witness_is_lexicographically_first() {
        // Path 1-2-3-4-5 with S = {3}: pairs (2,4) and (1,5) collide.
        let p = SimpleGraph::path(5);
        let t = distance_table(&p);
        let s = VertexSet::new([3], 5).unwrap();
        assert_eq!(is_resolving(&t, &s), Resolution::Collision(1, 5));
        assert_eq!(is_resolving_bfs(&p, &s), Resolution::Collision(1, 5));
        let s = VertexSet::new([1], 5).unwrap();
        assert!(is_resolving(&t, &s).is_resolving());
    }

    #[test]
    fn locating_domination_on_short_paths() {
        let p2 = SimpleGraph::path(2);
        assert!(is_locating_dominating(
            &p2,
            &VertexSet::new([1], 2).unwrap()
        ));
        let p5 = SimpleGraph::path(5);
        assert!(is_locating_dominating(
            &p5,
            &VertexSet::new([2, 4], 5).unwrap()
        ));
        assert!(!is_locating_dominating(
            &p5,
            &VertexSet::new([1], 5).unwrap()
        ));
        // 1 and 3 both see exactly {2}.
        assert!(!is_locating_dominating(
            &p5,
            &VertexSet::new([2, 5], 5).unwrap()
        ));
    }

    #[test]
    fn vertex_set_validation() {
        assert!(VertexSet::new([1, 1], 3).is_err());
        assert!(VertexSet::new([0], 3).is_err());
        assert!(VertexSet::new([4], 3).is_err());
        assert_eq!(VertexSet::new([3, 1], 3).unwrap().members(), &[1, 3]);
    }

    #[test]
    fn simple_graph_rejects_bad_edges() {
        assert!(SimpleGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(SimpleGraph::from_edges(3, &[(1, 2), (2, 1)]).is_err());
        assert!(SimpleGraph::from_edges(3, &[(1, 4)]).is_err());
    }
}
