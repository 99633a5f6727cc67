//! Metric dimension 2: the linear-time decider, the quadratic reference
//! decider, and the embedding into the strong product of two paths together
//! with an independent checker of its structure.
//!
//! For a basis `{u, v}` at distance `d`, a vertex `x` sits at grid point
//! `(d(x, u), d(x, v))`. The boundary path from `u` clockwise to `v` is the
//! layer `i + j = d`, the apexes over its edges form the layer `d + 1`, and
//! everything else hangs off that base as horizontal or vertical zigzags.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{is_resolving, is_resolving_bfs, DistanceTable, Resolution, VertexSet};
use crate::mop::MopGraph;

/// Grid coordinates of every vertex with respect to a two-vertex resolving set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEmbedding {
    /// Distance between the two basis vertices.
    pub d: u32,
    /// `coords[v - 1] = (d(v, basis[0]), d(v, basis[1]))`.
    pub coords: Vec<(u32, u32)>,
    pub basis: VertexSet,
}

impl GridEmbedding {
    pub fn coord(&self, v: u32) -> (u32, u32) {
        self.coords[v as usize - 1]
    }

    /// Membership in `A_d = {i + j >= d, |i - j| <= d}`.
    pub fn in_region(&self, (i, j): (u32, u32)) -> bool {
        i + j >= self.d && i.abs_diff(j) <= self.d
    }
}

/// Places every vertex at its metric coordinates; fails if the pair does not resolve the graph.
pub fn embed(g: &MopGraph, basis: &VertexSet, table: &DistanceTable) -> Result<GridEmbedding> {
    assert_eq!(
        basis.len(),
        2,
        "a grid embedding needs exactly two basis vertices"
    );
    if let Resolution::Collision(x, y) = is_resolving(table, basis) {
        return Err(Error::NotResolving(x, y));
    }
    let (u, v) = (basis.members()[0], basis.members()[1]);
    let coords = (1..=g.n() as u32)
        .map(|x| (table.get(x, u), table.get(x, v)))
        .collect();
    Ok(GridEmbedding {
        d: table.get(u, v),
        coords,
        basis: basis.clone(),
    })
}

/// Which part of the base-plus-zigzags structure an embedding violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex outside `A_d`, a non-grid edge, or a collision of coordinates.
    Placement(String),
    /// The layer `i + j = d` is incomplete or is not a path.
    BaseLayer(String),
    /// A point of layer `d + 1` is missing or lacks one of its two edges down.
    UpperLayer(String),
    /// Two neighbouring points of layer `d + 1` are closed neither by their
    /// cross edge nor by the three edges of the unit square above.
    SquarePair(String),
    /// Some vertex or edge is not covered by an admissible zigzag, or two zigzags share an edge.
    Zigzags(String),
    /// Three pairwise adjacent vertices outside a unit square.
    Triangle(String),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (tag, msg) = match self {
            Violation::Placement(m) => ("placement", m),
            Violation::BaseLayer(m) => ("base layer", m),
            Violation::UpperLayer(m) => ("upper layer", m),
            Violation::SquarePair(m) => ("square pair", m),
            Violation::Zigzags(m) => ("zigzags", m),
            Violation::Triangle(m) => ("triangle", m),
        };
        write!(f, "{tag}: {msg}")
    }
}

type Point = (u32, u32);

/// The forced part of an embedding: the two lowest layers, the square tops
/// between them, and the edges on which zigzags may be attached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BaseGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<(Point, Point)>,
    pub attachments: Vec<(Point, Point)>,
}

fn norm(p: Point, q: Point) -> (Point, Point) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

struct GridView {
    at: HashMap<Point, u32>,
    edges: HashSet<(Point, Point)>,
}

impl GridView {
    fn new(g: &MopGraph, emb: &GridEmbedding) -> std::result::Result<Self, Violation> {
        let mut at = HashMap::with_capacity(g.n());
        for v in 1..=g.n() as u32 {
            let p = emb.coord(v);
            if !emb.in_region(p) {
                return Err(Violation::Placement(format!(
                    "vertex {v} at {p:?} lies outside A_d"
                )));
            }
            if let Some(w) = at.insert(p, v) {
                return Err(Violation::Placement(format!(
                    "vertices {w} and {v} share {p:?}"
                )));
            }
        }
        let mut edges = HashSet::with_capacity(2 * g.n());
        for (a, b) in g.edges() {
            let (p, q) = (emb.coord(a), emb.coord(b));
            if p.0.abs_diff(q.0) > 1 || p.1.abs_diff(q.1) > 1 {
                return Err(Violation::Placement(format!(
                    "edge ({a}, {b}) is not a grid edge"
                )));
            }
            edges.insert(norm(p, q));
        }
        Ok(Self { at, edges })
    }

    fn has(&self, p: Point) -> bool {
        self.at.contains_key(&p)
    }

    fn edge(&self, p: Point, q: Point) -> bool {
        self.edges.contains(&norm(p, q))
    }

    fn common_neighbors(&self, p: Point, q: Point) -> usize {
        let (lo0, hi0) = (p.0.min(q.0).saturating_sub(1), p.0.max(q.0) + 1);
        let (lo1, hi1) = (p.1.min(q.1).saturating_sub(1), p.1.max(q.1) + 1);
        let mut count = 0;
        for i in lo0..=hi0 {
            for j in lo1..=hi1 {
                let r = (i, j);
                if r != p && r != q && self.has(r) && self.edge(p, r) && self.edge(q, r) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Builds the forced base structure, checking the layer conditions along the way.
pub fn base_graph(g: &MopGraph, emb: &GridEmbedding) -> std::result::Result<BaseGraph, Violation> {
    let grid = GridView::new(g, emb)?;
    build_base(&grid, emb.d)
}

fn build_base(grid: &GridView, d: u32) -> std::result::Result<BaseGraph, Violation> {
    let mut base = BaseGraph::default();
    let add_edge = |base: &mut BaseGraph, p: Point, q: Point| base.edges.push(norm(p, q));

    for i in 0..=d {
        let p = (i, d - i);
        if !grid.has(p) {
            return Err(Violation::BaseLayer(format!("{p:?} is empty")));
        }
        base.vertices.push(p);
        if i > 0 {
            let q = (i - 1, d - i + 1);
            if !grid.edge(p, q) {
                return Err(Violation::BaseLayer(format!("missing edge {q:?}-{p:?}")));
            }
            add_edge(&mut base, p, q);
        }
    }
    for i in 1..=d {
        let p = (i, d + 1 - i);
        if !grid.has(p) {
            return Err(Violation::UpperLayer(format!("{p:?} is empty")));
        }
        base.vertices.push(p);
        for q in [(i - 1, d + 1 - i), (i, d - i)] {
            if !grid.edge(p, q) {
                return Err(Violation::UpperLayer(format!("missing edge {p:?}-{q:?}")));
            }
            add_edge(&mut base, p, q);
        }
    }
    for i in 1..d {
        let a = (i, d + 1 - i);
        let b = (i + 1, d - i);
        let top = (i + 1, d + 1 - i);
        let low = (i, d - i);
        let top_full = grid.has(top) && grid.edge(a, top) && grid.edge(b, top);
        if grid.edge(a, b) {
            add_edge(&mut base, a, b);
            if grid.common_neighbors(a, b) == 2 {
                if !top_full {
                    return Err(Violation::SquarePair(format!(
                        "cross edge {a:?}-{b:?} lies in two triangles without the square top"
                    )));
                }
                base.vertices.push(top);
                add_edge(&mut base, a, top);
                add_edge(&mut base, b, top);
                base.attachments.push(norm(a, top));
                base.attachments.push(norm(b, top));
            }
        } else if top_full && grid.edge(low, top) {
            base.vertices.push(top);
            add_edge(&mut base, a, top);
            add_edge(&mut base, b, top);
            add_edge(&mut base, low, top);
            base.attachments.push(norm(a, top));
            base.attachments.push(norm(b, top));
        } else {
            return Err(Violation::SquarePair(format!(
                "{a:?} and {b:?} are not closed"
            )));
        }
    }
    base.attachments.push(norm((0, d), (1, d)));
    base.attachments.push(norm((d, 0), (d, 1)));
    Ok(base)
}

/// Checks that the embedding is a base graph with zigzags attached, as required for dimension 2.
pub fn verify_characterization(
    g: &MopGraph,
    emb: &GridEmbedding,
) -> std::result::Result<(), Violation> {
    let grid = GridView::new(g, emb)?;
    for (a, b, c) in g.triangles() {
        let pts = [emb.coord(a), emb.coord(b), emb.coord(c)];
        let spread = |f: fn(&Point) -> u32| {
            let vals = pts.iter().map(f);
            vals.clone().max().unwrap() - vals.min().unwrap()
        };
        if spread(|p| p.0) > 1 || spread(|p| p.1) > 1 {
            return Err(Violation::Triangle(format!(
                "({a}, {b}, {c}) spans more than a unit square"
            )));
        }
    }
    let base = build_base(&grid, emb.d)?;

    let mut covered_vertices: HashSet<Point> = base.vertices.iter().copied().collect();
    let mut covered_edges: HashSet<(Point, Point)> = base.edges.iter().copied().collect();
    let base_edges: HashSet<(Point, Point)> = covered_edges.clone();
    for &(p, q) in &base.attachments {
        // Order the base so that the zigzag grows along +(1, 1) from both ends.
        let (p0, p1) = if p.0 == q.0 || p.1 == q.1 {
            (p, q)
        } else {
            return Err(Violation::Zigzags(format!(
                "attachment {p:?}-{q:?} is not axis-parallel"
            )));
        };
        let mut trail = vec![p0, p1];
        loop {
            let t = trail.len();
            let prev2 = trail[t - 2];
            let prev1 = trail[t - 1];
            let next = (prev2.0 + 1, prev2.1 + 1);
            if !(grid.has(next) && grid.edge(next, prev1) && grid.edge(next, prev2)) {
                break;
            }
            for e in [norm(next, prev1), norm(next, prev2)] {
                if base_edges.contains(&e) || !covered_edges.insert(e) {
                    return Err(Violation::Zigzags(format!(
                        "edge {:?}-{:?} belongs to two zigzags",
                        e.0, e.1
                    )));
                }
            }
            covered_vertices.insert(next);
            trail.push(next);
        }
    }
    for v in 1..=g.n() as u32 {
        let p = emb.coord(v);
        if !covered_vertices.contains(&p) {
            return Err(Violation::Zigzags(format!(
                "vertex {v} at {p:?} is not covered"
            )));
        }
    }
    for e in &grid.edges {
        if !covered_edges.contains(e) {
            return Err(Violation::Zigzags(format!(
                "edge {:?}-{:?} is not covered",
                e.0, e.1
            )));
        }
    }
    Ok(())
}

/// Consecutive pairs, in clockwise order and including the wrap pair, of the vertices of degree at most 3.
pub fn candidate_pairs(g: &MopGraph) -> Vec<(u32, u32)> {
    let low: Vec<u32> = (1..=g.n() as u32).filter(|&v| g.degree(v) <= 3).collect();
    let k = low.len();
    (0..k).map(|i| (low[i], low[(i + 1) % k])).collect()
}

/// Quadratic reference: the first candidate pair that resolves the graph.
pub fn decide_dim_two_simple(g: &MopGraph, table: &DistanceTable) -> Option<VertexSet> {
    candidate_pairs(g).into_iter().find_map(|(a, b)| {
        let s = VertexSet::from_labels([a, b]);
        is_resolving(table, &s).is_resolving().then_some(s)
    })
}

/// Decides whether the metric dimension is 2 and returns a verified basis if so.
pub fn decide_dim_two(g: &MopGraph) -> Option<VertexSet> {
    let verified = |a: u32, b: u32| {
        let s = VertexSet::from_labels([a, b]);
        is_resolving_bfs(g, &s).is_resolving().then_some(s)
    };
    if g.n() == 3 {
        return verified(1, 2);
    }
    if g.is_mop_zigzag() {
        return candidate_pairs(g)
            .into_iter()
            .find_map(|(a, b)| verified(a, b));
    }

    // Closing chords of every zigzag grown around a degree-2 vertex.
    let mut zigzag_chords: HashSet<(u32, u32)> = HashSet::new();
    for v in g.ears() {
        let (_, chords) = g.zigzag_growth(v);
        zigzag_chords.extend(chords);
    }
    candidate_pairs(g)
        .into_iter()
        .filter(|&(u, v)| base_fits(g, &zigzag_chords, u, v))
        .find_map(|(u, v)| verified(u, v))
}

/// Structural test for the candidate basis `u`, `v`, walking clockwise from `u` to `v`.
fn base_fits(g: &MopGraph, zigzag_chords: &HashSet<(u32, u32)>, u: u32, v: u32) -> bool {
    let d = g.offset(u, v);
    if d == 0 {
        return false;
    }
    let w = |k: usize| g.cw(u, k as i64);
    // z[k] is the apex over the base edge (w_{k-1}, w_k); index 0 is unused.
    let z: Vec<u32> = (0..=d)
        .map(|k| if k == 0 { 0 } else { g.boundary_apex(w(k - 1)) })
        .collect();

    #[derive(Clone, Copy)]
    enum Link {
        /// The zigzag hanging here starts its degree-2 end at this chain vertex.
        Hang(u32),
        Closed,
    }
    // Chain from v back to u, clockwise, with the rule for the gap after each vertex.
    let mut chain: Vec<(u32, Link)> = Vec::with_capacity(2 * d + 2);
    chain.push((v, Link::Hang(v)));
    for k in (1..d).rev() {
        let wk = w(k);
        let nb = g.neighbors_cw(wk);
        let y = match nb.len() {
            5 => Some(nb[2]),
            4 => g.apex_inside(z[k + 1], z[k]),
            _ => return false,
        };
        match y {
            Some(y) => {
                chain.push((z[k + 1], Link::Hang(z[k + 1])));
                chain.push((y, Link::Hang(z[k])));
            }
            None => chain.push((z[k + 1], Link::Closed)),
        }
    }
    chain.push((z[1], Link::Hang(u)));
    chain.push((u, Link::Closed));

    let mut last = 0;
    let steps = chain.len() - 1;
    for (idx, pair) in chain.windows(2).enumerate() {
        let ((p, link), (q, _)) = (pair[0], pair[1]);
        let off = g.offset(v, q);
        if off <= last || (idx + 1 < steps && off >= g.n() - d) {
            return false;
        }
        last = off;
        let gap = g.offset(p, q);
        if gap == 0 {
            return false;
        }
        if gap == 1 {
            continue;
        }
        let Link::Hang(x0) = link else { return false };
        if !zigzag_chords.contains(&(p, q)) {
            return false;
        }
        let inner_degree = |x: u32| {
            if x == p {
                g.index_cw(p, q).map(|k| k + 1)
            } else {
                g.index_cw(q, p).map(|k| g.degree(q) - k)
            }
        };
        let x1 = if x0 == p { q } else { p };
        if inner_degree(x0) != Some(2) || (gap >= 3 && inner_degree(x1) != Some(3)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fan, zigzag};
    use crate::graph::distance_table;

    #[test]
    fn triangle_embedding() {
        let g = MopGraph::from_diagonals(3, &[]).unwrap();
        let t = distance_table(&g);
        let e = embed(&g, &VertexSet::new([1, 2], 3).unwrap(), &t).unwrap();
        assert_eq!(e.d, 1);
        assert_eq!(e.coords, vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(verify_characterization(&g, &e), Ok(()));
    }

    #[test]
    fn fan7_has_no_dimension_two_basis() {
        let g = fan(7);
        assert_eq!(decide_dim_two(&g), None);
        let t = distance_table(&g);
        assert_eq!(decide_dim_two_simple(&g, &t), None);
        assert!(matches!(
            embed(&g, &VertexSet::new([1, 2], 7).unwrap(), &t),
            Err(Error::NotResolving(..))
        ));
    }

    #[test]
    fn small_fans_have_dimension_two() {
        for n in 3..=6 {
            let g = fan(n);
            let b = decide_dim_two(&g).unwrap_or_else(|| panic!("fan({n})"));
            let t = distance_table(&g);
            let e = embed(&g, &b, &t).unwrap();
            assert_eq!(verify_characterization(&g, &e), Ok(()), "fan({n})");
        }
    }

    #[test]
    fn zigzag_candidates_and_embedding() {
        let g = zigzag(7);
        assert_eq!(candidate_pairs(&g).len(), 4);
        let b = decide_dim_two(&g).unwrap();
        let e = embed(&g, &b, &distance_table(&g)).unwrap();
        assert_eq!(verify_characterization(&g, &e), Ok(()));
    }

    #[test]
    fn triangle_has_three_pairs() {
        let g = MopGraph::from_diagonals(3, &[]).unwrap();
        assert_eq!(candidate_pairs(&g), vec![(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn large_fan_is_rejected() {
        let g = fan(20);
        assert_eq!(decide_dim_two(&g), None);
        assert_eq!(decide_dim_two_simple(&g, &distance_table(&g)), None);
    }
}
