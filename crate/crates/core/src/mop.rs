//! Maximal outerplanar graphs in boundary-labelled form.
//!
//! The boundary cycle `1 - 2 - ... - n - 1` is implicit; only the `n - 3`
//! diagonals are stored. Each adjacency list is kept in clockwise order
//! starting from the successor, so consecutive neighbours of a vertex span a
//! triangular face and the list always begins with `v + 1` and ends with `v - 1`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `v + k` on the circle `1..=n`.
#[inline]
pub fn cw(n: usize, v: u32, k: i64) -> u32 {
    let n = n as i64;
    ((v as i64 - 1 + k).rem_euclid(n) + 1) as u32
}

/// Number of clockwise steps from `from` to `to`.
#[inline]
pub fn offset(n: usize, from: u32, to: u32) -> usize {
    (to as i64 - from as i64).rem_euclid(n as i64) as usize
}

/// A circular interval `[start, end]` of boundary labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: u32,
    pub end: u32,
    pub n: usize,
}

impl Interval {
    pub fn new(start: u32, end: u32, n: usize) -> Self {
        Self { start, end, n }
    }

    pub fn len(&self) -> usize {
        offset(self.n, self.start, self.end) + 1
    }

    /// Never true: an interval holds at least its start vertex.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: u32) -> bool {
        offset(self.n, self.start, v) <= offset(self.n, self.start, self.end)
    }

    /// Labels in clockwise order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as i64).map(move |k| cw(self.n, self.start, k))
    }
}

/// A maximal zigzag around a degree-2 vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zigzag {
    pub vertices: Interval,
    /// The interval endpoints; always an edge of the graph.
    pub base_edge: (u32, u32),
}

/// Validated maximal outerplanar graph on boundary labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MopGraph {
    n: usize,
    diagonals: Vec<(u32, u32)>,
    start: Vec<usize>,
    targets: Vec<u32>,
}

fn is_boundary_pair(n: usize, a: u32, b: u32) -> bool {
    let o = offset(n, a, b);
    o == 1 || o == n - 1
}

impl MopGraph {
    /// Validates a diagonal list; the input order and orientation are kept for round-trips.
    pub fn from_diagonals(n: usize, diagonals: &[(u32, u32)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for &(a, b) in diagonals {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(Error::BadLabel { label: x, n });
                }
            }
        }
        if diagonals.len() != n - 3 {
            return Err(Error::WrongDiagonalCount {
                n,
                expected: n - 3,
                found: diagonals.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            if a == b || is_boundary_pair(n, a, b) || !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateOrBoundary((a, b)));
            }
        }
        check_noncrossing(n, diagonals)?;

        let mut deg = vec![2usize; n];
        for &(a, b) in diagonals {
            deg[a as usize - 1] += 1;
            deg[b as usize - 1] += 1;
        }
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for d in &deg {
            start.push(start.last().unwrap() + d);
        }
        let mut targets = vec![0u32; start[n]];
        let mut fill: Vec<usize> = start[..n].to_vec();
        let mut put = |v: u32, w: u32| {
            targets[fill[v as usize - 1]] = w;
            fill[v as usize - 1] += 1;
        };
        for v in 1..=n as u32 {
            put(v, cw(n, v, 1));
            put(v, cw(n, v, -1));
        }
        for &(a, b) in diagonals {
            put(a, b);
            put(b, a);
        }
        for v in 1..=n as u32 {
            let (s, e) = (start[v as usize - 1], start[v as usize]);
            targets[s..e].sort_unstable_by_key(|&w| offset(n, v, w));
        }
        Ok(Self {
            n,
            diagonals: diagonals.to_vec(),
            start,
            targets,
        })
    }

    /// Canonicalises an arbitrary edge list, returning the graph and the old-to-new label map.
    ///
    /// Boundary edges are the ones whose endpoints share exactly one neighbour.
    /// Labelling starts at the smallest original label and proceeds towards its
    /// smaller boundary neighbour.
    pub fn recognize(edges: &[(u32, u32)]) -> Result<(Self, BTreeMap<u32, u32>)> {
        let not_mop = |why: &str| Error::NotMop(why.to_string());
        let mut index: BTreeMap<u32, u32> = BTreeMap::new();
        for &(a, b) in edges {
            index.insert(a, 0);
            index.insert(b, 0);
        }
        let n = index.len();
        if n < 3 {
            return Err(not_mop("fewer than 3 vertices"));
        }
        if edges.len() != 2 * n - 3 {
            return Err(Error::NotMop(format!(
                "{} edges on {} vertices, expected {}",
                edges.len(),
                n,
                2 * n - 3
            )));
        }
        let originals: Vec<u32> = index.keys().copied().collect();
        for (k, slot) in index.values_mut().enumerate() {
            *slot = k as u32;
        }
        let dense: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (index[&a], index[&b])).collect();

        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut edge_id: HashMap<(u32, u32), usize> = HashMap::with_capacity(dense.len());
        for (k, &(a, b)) in dense.iter().enumerate() {
            if a == b || edge_id.insert((a.min(b), a.max(b)), k).is_some() {
                return Err(not_mop("loop or repeated edge"));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }

        // Per-edge triangle counts via degeneracy-oriented enumeration.
        let rank = |v: u32| (adj[v as usize].len(), v);
        let out: Vec<Vec<u32>> = (0..n as u32)
            .map(|v| {
                adj[v as usize]
                    .iter()
                    .copied()
                    .filter(|&w| rank(w) > rank(v))
                    .collect()
            })
            .collect();
        let mut common = vec![0u32; dense.len()];
        let mut mark = vec![false; n];
        let key = |a: u32, b: u32| (a.min(b), a.max(b));
        for u in 0..n as u32 {
            for &w in &out[u as usize] {
                mark[w as usize] = true;
            }
            for &v in &out[u as usize] {
                for &w in &out[v as usize] {
                    if mark[w as usize] {
                        for e in [key(u, v), key(v, w), key(u, w)] {
                            common[edge_id[&e]] += 1;
                        }
                    }
                }
            }
            for &w in &out[u as usize] {
                mark[w as usize] = false;
            }
        }

        let mut ring: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut chords = Vec::with_capacity(n - 3);
        for (k, &(a, b)) in dense.iter().enumerate() {
            match common[k] {
                1 => {
                    ring[a as usize].push(b);
                    ring[b as usize].push(a);
                }
                2 => chords.push((a, b)),
                c => {
                    return Err(Error::NotMop(format!(
                        "edge ({}, {}) lies in {} triangles",
                        originals[a as usize], originals[b as usize], c
                    )))
                }
            }
        }
        if ring.iter().any(|r| r.len() != 2) {
            return Err(not_mop("boundary edges do not form a Hamiltonian cycle"));
        }
        let mut new_label = vec![0u32; n];
        let mut prev = 0u32;
        let mut cur = ring[0].iter().copied().min().unwrap();
        new_label[0] = 1;
        let mut next_label = 2;
        while cur != 0 {
            if new_label[cur as usize] != 0 {
                return Err(not_mop("boundary edges do not form a Hamiltonian cycle"));
            }
            new_label[cur as usize] = next_label;
            next_label += 1;
            let r = &ring[cur as usize];
            let nxt = if r[0] == prev { r[1] } else { r[0] };
            prev = cur;
            cur = nxt;
        }
        if next_label as usize != n + 1 {
            return Err(not_mop("boundary edges do not form a Hamiltonian cycle"));
        }
        let diagonals: Vec<(u32, u32)> = chords
            .iter()
            .map(|&(a, b)| (new_label[a as usize], new_label[b as usize]))
            .collect();
        let g = Self::from_diagonals(n, &diagonals).map_err(|e| match e {
            Error::CrossingDiagonals(..) => not_mop("diagonals cross the boundary cycle"),
            other => Error::NotMop(other.to_string()),
        })?;
        let map = originals
            .iter()
            .enumerate()
            .map(|(k, &old)| (old, new_label[k]))
            .collect();
        Ok((g, map))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonals as supplied to the constructor.
    pub fn diagonals(&self) -> &[(u32, u32)] {
        &self.diagonals
    }

    /// Neighbours of `v` in clockwise order, starting at `v + 1` and ending at `v - 1`.
    #[inline]
    pub fn neighbors_cw(&self, v: u32) -> &[u32] {
        &self.targets[self.start[v as usize - 1]..self.start[v as usize]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.start[v as usize] - self.start[v as usize - 1]
    }

    #[inline]
    pub fn cw(&self, v: u32, k: i64) -> u32 {
        cw(self.n, v, k)
    }

    #[inline]
    pub fn offset(&self, from: u32, to: u32) -> usize {
        offset(self.n, from, to)
    }

    /// Position of `w` in the clockwise list of `v`.
    #[inline]
    pub fn index_cw(&self, v: u32, w: u32) -> Option<usize> {
        if v == w {
            return None;
        }
        let target = self.offset(v, w);
        self.neighbors_cw(v)
            .binary_search_by_key(&target, |&x| self.offset(v, x))
            .ok()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.index_cw(u, v).is_some()
    }

    pub fn is_boundary_edge(&self, u: u32, v: u32) -> bool {
        is_boundary_pair(self.n, u, v)
    }

    /// Third vertex of the triangle on boundary edge `(a, a + 1)`.
    #[inline]
    pub fn boundary_apex(&self, a: u32) -> u32 {
        self.neighbors_cw(a)[1]
    }

    /// Third vertex of the triangle on edge `(b, a)` lying inside the clockwise interval `[b, a]`.
    ///
    /// Returns `None` when `a` is the successor of `b`, in which case that side is the outer face.
    pub fn apex_inside(&self, b: u32, a: u32) -> Option<u32> {
        let k = self.index_cw(b, a)?;
        (k > 0).then(|| self.neighbors_cw(b)[k - 1])
    }

    /// All edges `(u, v)` with `u < v`, boundary first.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.n as u32;
        let mut out: Vec<(u32, u32)> = (1..n).map(|v| (v, v + 1)).collect();
        out.push((1, n));
        out.extend(self.diagonals.iter().map(|&(a, b)| (a.min(b), a.max(b))));
        out
    }

    /// The `n - 2` triangular faces, each sorted ascending.
    pub fn triangles(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::with_capacity(self.n - 2);
        for v in 1..=self.n as u32 {
            for w in self.neighbors_cw(v).windows(2) {
                let (a, b) = (w[0], w[1]);
                if v < a && v < b {
                    out.push((v, a.min(b), a.max(b)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices of degree 2, ascending.
    pub fn ears(&self) -> Vec<u32> {
        (1..=self.n as u32)
            .filter(|&v| self.degree(v) == 2)
            .collect()
    }

    /// Degree of `x` inside the sub-polygon on the clockwise interval `[a, b]`, where `(a, b)` is an edge.
    fn interval_degree(&self, a: u32, b: u32, x: u32) -> usize {
        if x == a {
            self.index_cw(a, b)
                .expect("interval must be closed by an edge")
                + 1
        } else if x == b {
            self.degree(b)
                - self
                    .index_cw(b, a)
                    .expect("interval must be closed by an edge")
        } else {
            self.degree(x)
        }
    }

    /// Zigzag test for the sub-polygon on `[a, b]`; `(a, b)` must be an edge or `b + 1 = a`.
    pub fn is_zigzag_interval(&self, a: u32, b: u32) -> bool {
        let m = self.offset(a, b) + 1;
        if m <= 4 {
            return true;
        }
        let mut low: Vec<(u32, usize)> = Vec::with_capacity(4);
        for x in Interval::new(a, b, self.n).iter() {
            let d = if m == self.n {
                self.degree(x)
            } else {
                self.interval_degree(a, b, x)
            };
            match d {
                4 => {}
                2 | 3 if low.len() < 4 => low.push((x, d)),
                _ => return false,
            }
        }
        zigzag_profile(&low, |x, y| self.has_edge(x, y))
    }

    /// Whether the whole graph is a zigzag (always true for `n <= 4`).
    pub fn is_mop_zigzag(&self) -> bool {
        self.is_zigzag_interval(1, self.n as u32)
    }

    /// The maximal zigzag around the degree-2 vertex `v`, grown one triangle at a time.
    pub fn maximal_zigzag_around(&self, v: u32) -> Zigzag {
        let (zz, _) = self.grow_zigzag(v, false);
        zz
    }

    /// Same, also returning the closing chord of every intermediate zigzag, innermost first.
    pub fn zigzag_growth(&self, v: u32) -> (Zigzag, Vec<(u32, u32)>) {
        self.grow_zigzag(v, true)
    }

    fn grow_zigzag(&self, v: u32, record: bool) -> (Zigzag, Vec<(u32, u32)>) {
        assert_eq!(self.degree(v), 2, "vertex {v} does not have degree 2");
        let n = self.n;
        let mut a = self.cw(v, -1);
        let mut b = self.cw(v, 1);
        let mut chords = Vec::new();
        if record {
            chords.push((a, b));
        }
        // Vertices of the current sub-polygon whose degree there is below 4.
        let mut low: Vec<(u32, usize)> = vec![(a, 2), (v, 2), (b, 2)];
        let mut m = 3;
        while m < n {
            let Some(c) = self.apex_inside(b, a) else {
                break;
            };
            let (na, nb) = if c == self.cw(a, -1) {
                (c, b)
            } else if c == self.cw(b, 1) {
                (a, c)
            } else {
                break;
            };
            let mut next = low.clone();
            let mut ok = true;
            for x in [a, b] {
                match next.iter_mut().find(|(y, _)| *y == x) {
                    Some(slot) => slot.1 += 1,
                    None => ok = false,
                }
            }
            next.retain(|&(_, d)| d < 4);
            next.push((c, 2));
            let m_next = m + 1;
            if !ok || (m_next >= 5 && !self.profile_ok(&next)) {
                break;
            }
            low = next;
            a = na;
            b = nb;
            m = m_next;
            if record && m < n {
                chords.push((a, b));
            }
        }
        let zz = Zigzag {
            vertices: Interval::new(a, b, n),
            base_edge: (a, b),
        };
        (zz, chords)
    }

    fn profile_ok(&self, low: &[(u32, usize)]) -> bool {
        low.len() == 4 && zigzag_profile(low, |x, y| self.has_edge(x, y))
    }
}

/// Two vertices of degree 2 and two of degree 3, each degree-3 vertex adjacent to a different degree-2 vertex.
fn zigzag_profile(low: &[(u32, usize)], adjacent: impl Fn(u32, u32) -> bool) -> bool {
    let twos: Vec<u32> = low.iter().filter(|e| e.1 == 2).map(|e| e.0).collect();
    let threes: Vec<u32> = low.iter().filter(|e| e.1 == 3).map(|e| e.0).collect();
    if twos.len() != 2 || threes.len() != 2 {
        return false;
    }
    let fits = |p: u32, q: u32| adjacent(threes[0], p) && adjacent(threes[1], q);
    fits(twos[0], twos[1]) || fits(twos[1], twos[0])
}

/// Stack scan over the cut circle; the first mismatch yields a crossing pair.
fn check_noncrossing(n: usize, diagonals: &[(u32, u32)]) -> Result<()> {
    let norm: Vec<(u32, u32)> = diagonals
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    let mut opening: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    let mut closing: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for &(a, b) in &norm {
        opening[a as usize].push(b);
        closing[b as usize].push(a);
    }
    let mut stack: Vec<(u32, u32)> = Vec::new();
    for p in 1..=n {
        let ends = &mut closing[p];
        ends.sort_unstable_by(|x, y| y.cmp(x));
        for &a in ends.iter() {
            match stack.pop() {
                Some(top) if top == (a, p as u32) => {}
                Some(top) => return Err(Error::CrossingDiagonals((a, p as u32), top)),
                None => unreachable!("closing a chord that was never opened"),
            }
        }
        let starts = &mut opening[p];
        starts.sort_unstable_by(|x, y| y.cmp(x));
        for &b in starts.iter() {
            stack.push((p as u32, b));
        }
    }
    Ok(())
}

impl Graph for MopGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: u32) -> &[u32] {
        self.neighbors_cw(v)
    }

    fn degree(&self, v: u32) -> usize {
        MopGraph::degree(self, v)
    }
}
