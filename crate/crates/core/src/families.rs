//! Generators (fans, zigzags, exhaustive and uniform random triangulations)
//! and the brute-force oracles used to check the fast algorithms.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{distance_table, SimpleGraph, VertexSet};
use crate::mop::MopGraph;

/// Largest order accepted by [`brute_force_beta`].
pub const BETA_LIMIT: usize = 16;
/// Largest path order accepted by [`brute_force_lambda`].
pub const LAMBDA_LIMIT: usize = 18;

/// Fan of order `n`: vertex `n` is adjacent to every other vertex.
pub fn fan(n: usize) -> MopGraph {
    let n32 = n as u32;
    let diagonals: Vec<(u32, u32)> = (2..n32.saturating_sub(1)).map(|j| (n32, j)).collect();
    MopGraph::from_diagonals(n, &diagonals).expect("fan diagonals are valid")
}

/// Closed-form resolving set of the fan of order `n >= 8`.
pub fn fan_basis(n: usize) -> Result<VertexSet> {
    if n < 8 {
        return Err(Error::UnsupportedOrder(n));
    }
    let q = (n / 5) as u32;
    let mut members: Vec<u32> = (0..q).flat_map(|r| [2 + 5 * r, 4 + 5 * r]).collect();
    if n % 5 >= 3 {
        members.push(n as u32 - 1);
    }
    VertexSet::new(members, n)
}

/// Metric dimension of the fan of order `n >= 3`.
pub fn fan_dimension(n: usize) -> usize {
    match n {
        0..=6 => 2,
        7 => 3,
        _ => (2 * (n - 2)).div_ceil(5),
    }
}

/// The zigzag of order `n`: the square of a path laid alternately along both sides.
pub fn zigzag(n: usize) -> MopGraph {
    let x = |m: usize| -> u32 {
        if m.is_multiple_of(2) {
            1 + (m / 2) as u32
        } else {
            (n - m / 2) as u32
        }
    };
    let diagonals: Vec<(u32, u32)> = (1..n.saturating_sub(2)).map(|m| (x(m), x(m + 1))).collect();
    MopGraph::from_diagonals(n, &diagonals).expect("zigzag diagonals are valid")
}

/// Every triangulation of the convex `n`-gon, each exactly once.
///
/// Triangles are chosen in preorder from the root edge `(1, n)`; the sequence of
/// apex choices works like an odometer, so memory stays `O(n)`.
pub fn enumerate_mops(n: usize) -> MopEnumerator {
    assert!(n >= 3, "a triangulated polygon needs at least 3 vertices");
    let steps = n - 2;
    let mut it = MopEnumerator {
        n,
        segs: vec![(0, 0); steps],
        choices: vec![0; steps],
        started: false,
        done: false,
    };
    it.replay(None);
    it
}

/// Iterator returned by [`enumerate_mops`].
pub struct MopEnumerator {
    n: usize,
    segs: Vec<(u32, u32)>,
    choices: Vec<u32>,
    started: bool,
    done: bool,
}

impl MopEnumerator {
    /// Keeps choices `0..=keep` and fills the rest with the smallest apex.
    fn replay(&mut self, keep: Option<usize>) {
        let mut stack = vec![(1u32, self.n as u32)];
        for s in 0..self.segs.len() {
            let (a, b) = stack.pop().expect("one pending polygon per step");
            let k = match keep {
                Some(p) if s <= p => self.choices[s],
                _ => a + 1,
            };
            self.segs[s] = (a, b);
            self.choices[s] = k;
            if b - k >= 2 {
                stack.push((k, b));
            }
            if k - a >= 2 {
                stack.push((a, k));
            }
        }
    }

    fn current(&self) -> MopGraph {
        let mut diagonals = Vec::with_capacity(self.n - 3);
        for (&(a, b), &k) in self.segs.iter().zip(&self.choices) {
            if k - a >= 2 {
                diagonals.push((a, k));
            }
            if b - k >= 2 {
                diagonals.push((k, b));
            }
        }
        MopGraph::from_diagonals(self.n, &diagonals).expect("enumerated triangulation is valid")
    }
}

impl Iterator for MopEnumerator {
    type Item = MopGraph;

    fn next(&mut self) -> Option<MopGraph> {
        if self.done {
            return None;
        }
        if self.started {
            let p = (0..self.segs.len())
                .rev()
                .find(|&s| self.choices[s] + 1 < self.segs[s].1);
            match p {
                Some(p) => {
                    self.choices[p] += 1;
                    self.replay(Some(p));
                }
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
        self.started = true;
        Some(self.current())
    }
}

/// Uniformly random triangulation of the `n`-gon, deterministic per seed.
///
/// A uniform full binary tree with `n - 2` internal nodes is drawn through the
/// cycle lemma and mapped to the polygon: an internal node on edge `(a, b)`
/// places its apex at `a + leaves(left subtree)`.
pub fn random_mop(n: usize, seed: u64) -> MopGraph {
    assert!(n >= 3, "a triangulated polygon needs at least 3 vertices");
    let internal = n - 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<bool> = (0..2 * internal + 1).map(|k| k < internal).collect();
    word.shuffle(&mut rng);

    // Rotate so the walk (+1 internal, -1 leaf) first hits -1 at its last step.
    let mut height = 0i64;
    let mut lowest = 0i64;
    let mut cut = 0;
    for (k, &is_internal) in word.iter().enumerate() {
        height += if is_internal { 1 } else { -1 };
        if height < lowest {
            lowest = height;
            cut = k + 1;
        }
    }
    let len = word.len();
    word.rotate_left(cut % len);

    // Decode the preorder word into child links.
    let total = word.len();
    let mut left = vec![usize::MAX; total];
    let mut right = vec![usize::MAX; total];
    let mut open: Vec<usize> = Vec::new();
    for (v, &is_internal) in word.iter().enumerate() {
        if let Some(&parent) = open.last() {
            if left[parent] == usize::MAX {
                left[parent] = v;
            } else {
                right[parent] = v;
                open.pop();
            }
        }
        if is_internal {
            open.push(v);
        }
    }
    let mut leaves = vec![1u32; total];
    for v in (0..total).rev() {
        if word[v] {
            leaves[v] = leaves[left[v]] + leaves[right[v]];
        }
    }

    let mut seg = vec![(0u32, 0u32); total];
    seg[0] = (1, n as u32);
    let mut diagonals = Vec::with_capacity(n - 3);
    for v in 0..total {
        if !word[v] {
            continue;
        }
        let (a, b) = seg[v];
        let c = a + leaves[left[v]];
        seg[left[v]] = (a, c);
        seg[right[v]] = (c, b);
        if c - a >= 2 {
            diagonals.push((a, c));
        }
        if b - c >= 2 {
            diagonals.push((c, b));
        }
    }
    MopGraph::from_diagonals(n, &diagonals).expect("decoded triangulation is valid")
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it returns true.
fn first_combination(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        let p = (0..k).rev().find(|&p| idx[p] != p + n - k)?;
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Minimum resolving set by exhaustive search: the size and the lexicographically first basis.
pub fn brute_force_beta(g: &MopGraph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > BETA_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BETA_LIMIT,
        });
    }
    let table = distance_table(g);
    // Distances are below 16, so one nibble per coordinate packs a vector into a u64.
    let mut keys = vec![0u64; n];
    for k in 1..=n {
        let hit = first_combination(n, k, |idx| {
            for (u, key) in keys.iter_mut().enumerate() {
                *key = idx.iter().fold(0u64, |acc, &x| {
                    (acc << 4) | table.get(u as u32 + 1, x as u32 + 1) as u64
                });
            }
            keys.sort_unstable();
            keys.windows(2).all(|w| w[0] != w[1])
        });
        if let Some(idx) = hit {
            let set = VertexSet::new(idx.iter().map(|&x| x as u32 + 1), n)?;
            return Ok((k, set));
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// Location-domination number of the path on `n` vertices.
pub fn brute_force_lambda(n: usize) -> Result<usize> {
    if n > LAMBDA_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: LAMBDA_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let path = SimpleGraph::path(n);
    let closed: Vec<u32> = (0..n)
        .map(|v| {
            let mut m = 0u32;
            if v > 0 {
                m |= 1 << (v - 1);
            }
            if v + 1 < n {
                m |= 1 << (v + 1);
            }
            m
        })
        .collect();
    for k in 1..=n {
        let hit = first_combination(n, k, |idx| {
            let s: u32 = idx.iter().fold(0, |acc, &x| acc | 1 << x);
            let mut traces: Vec<u32> = Vec::with_capacity(n);
            for (v, &nb) in closed.iter().enumerate() {
                if s >> v & 1 == 1 {
                    continue;
                }
                let t = nb & s;
                if t == 0 || traces.contains(&t) {
                    return false;
                }
                traces.push(t);
            }
            true
        });
        if let Some(idx) = hit {
            debug_assert!(crate::graph::is_locating_dominating(
                &path,
                &VertexSet::from_labels(idx.iter().map(|&x| x as u32 + 1))
            ));
            return Ok(k);
        }
    }
    unreachable!("the full vertex set always locates")
}
