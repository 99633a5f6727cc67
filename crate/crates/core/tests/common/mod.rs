#![allow(dead_code)]

use mopdim_core::{MopGraph, VertexSet};

/// Adjacency matrix over labels `1..=n` (row/column 0 unused).
pub fn adjacency(g: &MopGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for (u, v) in g.edges() {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    adj
}

/// All-pairs distances by Floyd–Warshall, indexed by label.
pub fn floyd_warshall(g: &MopGraph) -> Vec<Vec<u32>> {
    let n = g.n();
    let adj = adjacency(g);
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n + 1]; n + 1];
    for u in 1..=n {
        for v in 1..=n {
            if u == v {
                d[u][v] = 0;
            } else if adj[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 1..=n {
        for u in 1..=n {
            for v in 1..=n {
                let via = d[u][k] + d[k][v];
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    d
}

/// Resolving test by pairwise comparison of metric vectors.
pub fn resolves_all(d: &[Vec<u32>], s: &VertexSet) -> bool {
    let n = d.len() - 1;
    (1..=n).all(|x| {
        (x + 1..=n).all(|y| {
            s.members()
                .iter()
                .any(|&b| d[x][b as usize] != d[y][b as usize])
        })
    })
}
