//! Resolving sets of size `⌈2n/5⌉` in linear time.
//!
//! Vertices in the set are black, the rest white. The scan starts from a
//! fixed periodic colouring whose white runs alternate between sizes 1 and 2,
//! walks the white runs clockwise, and whenever a run is involved in one of
//! the eight local configurations that leave two white vertices with equal
//! metric vectors, swaps a couple of colours nearby. Every swap keeps the
//! number of black vertices unchanged.

use crate::error::{Error, Result};
use crate::graph::{distance_table, is_resolving_bfs, DistanceTable, Resolution, VertexSet};
use crate::mop::{cw, MopGraph};

/// Number of black vertices used for order `n`.
pub fn target_size(n: usize) -> usize {
    (2 * n).div_ceil(5)
}

/// Black/white colouring plus the scan frontier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorState {
    n: usize,
    black: Vec<bool>,
    /// First unexplored label; everything in `[1, frontier - 1]` is explored.
    pub frontier: u32,
}

impl ColorState {
    fn from_set(n: usize, members: impl IntoIterator<Item = u32>, frontier: u32) -> Self {
        let mut black = vec![false; n + 1];
        for x in members {
            black[x as usize] = true;
        }
        Self { n, black, frontier }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Colour of a label taken modulo `n`.
    #[inline]
    pub fn is_black(&self, x: i64) -> bool {
        self.black[cw(self.n, 1, x - 1) as usize]
    }

    pub fn black_count(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }

    pub fn black_set(&self) -> VertexSet {
        VertexSet::from_labels((1..=self.n as u32).filter(|&x| self.black[x as usize]))
    }

    fn swap(&mut self, x: i64, y: i64) {
        let (a, b) = (cw(self.n, 1, x - 1) as usize, cw(self.n, 1, y - 1) as usize);
        self.black.swap(a, b);
    }
}

/// The periodic starting colouring, before any rotation.
///
/// For `n = 5k + t` with `t < 4` the black labels are those congruent to 1 or 3
/// mod 5; for `t = 4` they are `1` together with the labels congruent to 3 or 0 mod 5.
pub fn base_coloring(n: usize) -> ColorState {
    let members: Vec<u32> = if n % 5 == 4 {
        (1..=n as u32)
            .filter(|&x| x == 1 || x % 5 == 3 || x % 5 == 0)
            .collect()
    } else {
        (1..=n as u32)
            .filter(|&x| x % 5 == 1 || x % 5 == 3)
            .collect()
    };
    ColorState::from_set(n, members, 4)
}

/// The eight unresolved configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

/// Follow-up for cases whose first swap may leave `i + 3` with a partner at `i + 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// The first swap arranges the run.
    Done,
    /// Case c: the hub `i + 4` also sees `i + 6` and `i + 7`.
    Partner,
    /// Cases g/h: `i + 2` is adjacent to `i + 4` through `i + 7`.
    Middle,
    /// Cases g/h: `i + 2` sees `i + 5` through `i + 7` and `i + 3` sees `i + 5`.
    Bottom,
}

/// A detected configuration anchored at the frontier `i`, with partner `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CasePattern {
    pub case: CaseId,
    pub i: u32,
    pub j: u32,
    pub tail: Tail,
}

/// Outcome of inspecting the run at the frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detection {
    /// The run is arranged; holds the run size.
    Arranged(u32),
    Pattern(CasePattern),
}

/// How much checking runs alongside the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Audit {
    Off,
    /// Compare every structural detection against a distance-based oracle.
    Detection,
    /// Also check the scan invariants after every step.
    Full,
}

/// Options for [`build_resolving_set_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Confirm the final set with one BFS per member.
    pub verify: bool,
    pub audit: Audit,
}

/// Orders up to which debug builds audit detections by default.
pub const DEFAULT_AUDIT_LIMIT: usize = 64;

impl BuildOptions {
    pub fn for_order(n: usize) -> Self {
        let audit = if cfg!(debug_assertions) && n <= DEFAULT_AUDIT_LIMIT {
            Audit::Detection
        } else {
            Audit::Off
        };
        Self {
            verify: true,
            audit,
        }
    }
}

/// Statistics from one scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanReport {
    /// Labels were shifted by this many places before the scan.
    pub rotation: u32,
    pub steps: usize,
    pub cases: Vec<CasePattern>,
}

/// Local view of the graph in scan coordinates: label `x` is vertex `x + rotation`.
struct View<'a> {
    g: &'a MopGraph,
    n: usize,
    rot: i64,
}

impl View<'_> {
    #[inline]
    fn actual(&self, x: i64) -> u32 {
        cw(self.n, 1, x - 1 + self.rot)
    }

    #[inline]
    fn edge(&self, x: i64, y: i64) -> bool {
        self.g.has_edge(self.actual(x), self.actual(y))
    }

    /// Scan label of an actual vertex, in `1..=n`.
    fn label(&self, v: u32) -> i64 {
        (v as i64 - 1 - self.rot).rem_euclid(self.n as i64) + 1
    }

    fn distinct(&self, labels: &[i64]) -> bool {
        let mut seen: Vec<u32> = labels.iter().map(|&x| self.actual(x)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

fn all(view: &View, pairs: &[(i64, i64)]) -> bool {
    pairs.iter().all(|&(x, y)| view.edge(x, y))
}

/// Cases a/b: white singleton `{i}` against the pair `{i+2, i+3}`.
fn detect_single(view: &View, s: &ColorState, i: i64) -> Option<CaseId> {
    let n = view.n as i64;
    if i + 3 > n || s.is_black(i + 2) || s.is_black(i + 3) || !s.is_black(i + 4) {
        return None;
    }
    if !view.distinct(&[i - 1, i, i + 1, i + 2, i + 3, i + 4]) {
        return None;
    }
    if !all(view, &[(i - 1, i + 2), (i - 1, i + 3), (i - 1, i + 4)]) {
        return None;
    }
    if view.edge(i - 1, i + 1) {
        Some(CaseId::A)
    } else if view.edge(i, i + 2) {
        Some(CaseId::B)
    } else {
        None
    }
}

/// Cases c/d: pair `{i, i+1}` followed by the singleton `{i+3}`.
fn detect_pair_single(view: &View, s: &ColorState, i: i64) -> Option<CaseId> {
    if i + 3 > view.n as i64 {
        return None;
    }
    pair_single_pattern(view, s, i)
}

/// Cases c/d without the requirement that the singleton lies before `n`.
fn pair_single_pattern(view: &View, s: &ColorState, i: i64) -> Option<CaseId> {
    if s.is_black(i + 3) || !s.is_black(i + 4) {
        return None;
    }
    if !view.distinct(&[i - 1, i, i + 1, i + 2, i + 3, i + 4]) {
        return None;
    }
    if !all(view, &[(i + 4, i - 1), (i + 4, i), (i + 4, i + 1)]) {
        return None;
    }
    if view.edge(i + 4, i + 2) {
        Some(CaseId::C)
    } else if view.edge(i + 3, i + 1) {
        Some(CaseId::D)
    } else {
        None
    }
}

/// Whether `{j, j+1}` is a later white pair run with black `j - 1` and `j + 2`.
fn later_pair(view: &View, s: &ColorState, i: i64, j: i64) -> bool {
    let n = view.n as i64;
    j >= i + 3
        && j < n
        && s.is_black(j - 1)
        && !s.is_black(j)
        && !s.is_black(j + 1)
        && s.is_black(j + 2)
}

/// The middle clockwise neighbour of a degree-3 vertex.
fn middle_neighbor(view: &View, x: i64) -> Option<i64> {
    let nb = view.g.neighbors_cw(view.actual(x));
    (nb.len() == 3).then(|| view.label(nb[1]))
}

/// Cases e/f: pairs `{i, i+1}` and `{j, j+1}` with `i` and `j` unresolved.
fn detect_pair_pair_first(view: &View, s: &ColorState, i: i64) -> Option<(CaseId, i64)> {
    let j = view.label(view.actual(middle_neighbor(view, i + 1)? + 1));
    if !later_pair(view, s, i, j)
        || !view.distinct(&[i - 1, i, i + 1, i + 2, j - 1, j, j + 1, j + 2])
    {
        return None;
    }
    let core = [
        (i, j - 1),
        (i - 1, j),
        (i - 1, j + 1),
        (i - 1, j + 2),
        (j - 1, i + 1),
        (j - 1, i + 2),
    ];
    if !all(view, &core) {
        return None;
    }
    if view.edge(i, j) {
        Some((CaseId::E, j))
    } else if view.edge(i - 1, j - 1) {
        Some((CaseId::F, j))
    } else {
        None
    }
}

/// Cases g/h: pairs `{i, i+1}` and `{j, j+1}` with `i + 1` and `j + 1` unresolved.
fn detect_pair_pair_second(view: &View, s: &ColorState, i: i64) -> Option<(CaseId, i64)> {
    let j = view.label(view.actual(middle_neighbor(view, i)? - 2));
    if !later_pair(view, s, i, j)
        || !view.distinct(&[i - 1, i, i + 1, i + 2, j - 1, j, j + 1, j + 2])
    {
        return None;
    }
    let core = [
        (i + 1, j + 2),
        (j + 1, i + 2),
        (i + 2, j),
        (i + 2, j - 1),
        (j + 2, i),
        (j + 2, i - 1),
    ];
    if !all(view, &core) {
        return None;
    }
    if view.edge(i + 1, j + 1) {
        Some((CaseId::G, j))
    } else if view.edge(i + 2, j + 2) {
        Some((CaseId::H, j))
    } else {
        None
    }
}

/// Whether the pair run `{i+5, i+6}` closed by black `i+7` exists after the singleton at `i+3`.
fn tail_run(view: &View, s: &ColorState, i: i64) -> bool {
    let n = view.n as i64;
    i + 6 <= n
        && s.is_black(i + 4)
        && !s.is_black(i + 5)
        && !s.is_black(i + 6)
        && s.is_black(i + 7)
        && view.distinct(&[i - 1, i, i + 1, i + 2, i + 3, i + 4, i + 5, i + 6, i + 7])
}

fn tail_c(view: &View, s: &ColorState, i: i64) -> Tail {
    if tail_run(view, s, i) && all(view, &[(i + 4, i + 6), (i + 4, i + 7)]) {
        Tail::Partner
    } else {
        Tail::Done
    }
}

fn tail_gh(view: &View, s: &ColorState, i: i64) -> Tail {
    if !(tail_run(view, s, i) && all(view, &[(i + 2, i + 5), (i + 2, i + 6), (i + 2, i + 7)])) {
        return Tail::Done;
    }
    if view.edge(i + 2, i + 4) {
        Tail::Middle
    } else if view.edge(i + 3, i + 5) {
        Tail::Bottom
    } else {
        Tail::Done
    }
}

fn detect(view: &View, s: &ColorState) -> Detection {
    let n = view.n as i64;
    let i = s.frontier as i64;
    let size = if i < n && !s.is_black(i + 1) { 2 } else { 1 };
    let pattern = |case, j: i64, tail| {
        Detection::Pattern(CasePattern {
            case,
            i: i as u32,
            j: j as u32,
            tail,
        })
    };
    if size == 1 {
        return match detect_single(view, s, i) {
            Some(case) => pattern(case, i + 2, Tail::Done),
            None => Detection::Arranged(1),
        };
    }
    if let Some(case) = detect_pair_single(view, s, i) {
        let tail = if case == CaseId::C {
            tail_c(view, s, i)
        } else {
            Tail::Done
        };
        return pattern(case, i + 3, tail);
    }
    if let Some((case, j)) = detect_pair_pair_second(view, s, i) {
        return pattern(case, j, tail_gh(view, s, i));
    }
    if let Some((case, j)) = detect_pair_pair_first(view, s, i) {
        return pattern(case, j, Tail::Done);
    }
    Detection::Arranged(2)
}

/// Applies the recolouring for `pat` and returns the new frontier.
fn apply(s: &mut ColorState, pat: &CasePattern) -> u32 {
    let i = pat.i as i64;
    let next = match pat.case {
        CaseId::A => {
            s.swap(i - 1, i);
            s.swap(i + 1, i + 2);
            i + 5
        }
        CaseId::B | CaseId::D => {
            s.swap(i + 1, i + 2);
            i + 5
        }
        CaseId::C => {
            s.swap(i + 1, i + 2);
            if pat.tail == Tail::Partner {
                s.swap(i + 3, i + 4);
                i + 8
            } else {
                i + 5
            }
        }
        CaseId::E | CaseId::F => {
            s.swap(i - 1, i);
            i + 3
        }
        CaseId::G | CaseId::H => {
            s.swap(i + 1, i + 2);
            if matches!(pat.tail, Tail::Middle | Tail::Bottom) {
                s.swap(i + 4, i + 5);
                i + 8
            } else {
                i + 5
            }
        }
    };
    next as u32
}

/// Inspects the white run at the frontier of `state` on `g`.
pub fn detect_unarranged(g: &MopGraph, state: &ColorState) -> Detection {
    detect(
        &View {
            g,
            n: g.n(),
            rot: 0,
        },
        state,
    )
}

/// Applies the recolouring of `pat`, moving the frontier past the affected vertices.
pub fn apply_case(state: &ColorState, pat: &CasePattern) -> ColorState {
    let mut next = state.clone();
    next.frontier = apply(&mut next, pat);
    next
}

/// Whether the singleton run `{2}` of the starting colouring sits in one of cases a–d.
fn start_is_unarranged(view: &View, s: &ColorState) -> bool {
    let n = view.n as i64;
    // As the singleton of a/b, or as the singleton following the pair {n-1, n} in c/d.
    detect_single(view, s, 2).is_some()
        || (!s.is_black(n - 1) && !s.is_black(n) && pair_single_pattern(view, s, n - 1).is_some())
}

/// Orders below which the starting rotation is chosen by trying every shift.
const SMALL_ORDER: usize = 8;

/// Starting colouring in scan coordinates and its rotation.
pub fn initial_coloring(g: &MopGraph) -> (ColorState, u32) {
    let n = g.n();
    let s = base_coloring(n);
    if n % 5 == 4 || n < 6 {
        return (s, 0);
    }
    for rot in [0u32, 1, n as u32 - 1] {
        if !start_is_unarranged(
            &View {
                g,
                n,
                rot: rot as i64,
            },
            &s,
        ) {
            return (s, rot);
        }
    }
    (s, 0)
}

/// Distance-based checks used by the audit modes.
struct Oracle {
    table: DistanceTable,
    rot: i64,
    n: usize,
}

impl Oracle {
    fn actual(&self, x: i64) -> u32 {
        cw(self.n, 1, x - 1 + self.rot)
    }

    fn dist(&self, x: i64, y: i64) -> u32 {
        self.table.get(self.actual(x), self.actual(y))
    }

    fn blacks(&self, s: &ColorState) -> Vec<i64> {
        (1..=self.n as i64).filter(|&x| s.is_black(x)).collect()
    }

    /// Whether every vertex other than `x` differs from `x` on some black vertex.
    fn arranged(&self, s: &ColorState, x: i64) -> bool {
        let blacks = self.blacks(s);
        (1..=self.n as i64)
            .filter(|&y| y != x)
            .all(|y| blacks.iter().any(|&b| self.dist(x, b) != self.dist(y, b)))
    }

    fn check_detection(&self, s: &ColorState, det: &Detection) -> Result<()> {
        let i = s.frontier as i64;
        let size = match det {
            Detection::Arranged(k) => *k as i64,
            Detection::Pattern(_) => {
                if i < self.n as i64 && !s.is_black(i + 1) {
                    2
                } else {
                    1
                }
            }
        };
        let ok = (i..i + size).all(|x| self.arranged(s, x));
        let found = matches!(det, Detection::Pattern(_));
        if ok == found {
            return Err(Error::InvariantViolation(format!(
                "run at {} (size {size}): structural detection {det:?} but distance oracle says {}",
                self.actual(i),
                if ok { "arranged" } else { "unarranged" }
            )));
        }
        Ok(())
    }

    fn check_invariant(&self, s: &ColorState, target: usize) -> Result<()> {
        let n = self.n as i64;
        let i = s.frontier as i64;
        let fail = |what: String| Err(Error::InvariantViolation(what));
        if s.black_count() != target {
            return fail(format!(
                "{} black vertices, expected {target}",
                s.black_count()
            ));
        }
        for w in (1..i.min(n + 1)).filter(|&x| !s.is_black(x)) {
            if !self.arranged(s, w) {
                return fail(format!(
                    "explored white vertex {} is not arranged",
                    self.actual(w)
                ));
            }
        }
        if !s.is_black(1) {
            return fail("vertex 1 is white".into());
        }
        if i <= n {
            if s.is_black(i) || !s.is_black(i - 1) {
                return fail(format!(
                    "frontier {} is not white after a black vertex",
                    self.actual(i)
                ));
            }
            if !alternating(s, i, n) {
                return fail(format!(
                    "unexplored part from {} is not (1,2)-alternating",
                    self.actual(i)
                ));
            }
        }
        let blacks: Vec<i64> = self.blacks(s).into_iter().filter(|&b| b < i - 1).collect();
        for l in (i..=n).filter(|&l| is_special(self, s, l)) {
            for w in (1..i.min(n + 1)).filter(|&w| !s.is_black(w) && w != i - 2) {
                if !blacks.iter().any(|&b| self.dist(w, b) != self.dist(l, b)) {
                    return fail(format!(
                        "special vertex {} and explored vertex {} are not told apart",
                        self.actual(l),
                        self.actual(w)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// White `l` playing the degree-2 role of case c with respect to the current colours.
fn is_special(o: &Oracle, s: &ColorState, l: i64) -> bool {
    let n = o.n as i64;
    if l < 4 || l > n || s.is_black(l) {
        return false;
    }
    let colors = s.is_black(l - 1)
        && s.is_black(l + 1)
        && !s.is_black(l - 2)
        && !s.is_black(l - 3)
        && s.is_black(l - 4);
    let labels: Vec<u32> = (l - 4..=l + 1).map(|x| o.actual(x)).collect();
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    sorted.dedup();
    colors && sorted.len() == 6 && (l - 4..l).all(|x| o.dist(l + 1, x) == 1)
}

/// White runs of size 1 or 2 that alternate, black runs of size 1, within `[i, n]`.
fn alternating(s: &ColorState, i: i64, n: i64) -> bool {
    let mut last_white = 0;
    let mut x = i;
    while x <= n {
        if s.is_black(x) {
            if x > i && s.is_black(x - 1) {
                return false;
            }
            x += 1;
            continue;
        }
        let mut len = 0;
        while x <= n && !s.is_black(x) {
            len += 1;
            x += 1;
        }
        if len > 2 || len == last_white {
            return false;
        }
        last_white = len;
    }
    true
}

/// Resolving set of size `⌈2n/5⌉`, verified, with debug-build auditing on small orders.
pub fn build_resolving_set(g: &MopGraph) -> Result<VertexSet> {
    build_resolving_set_with(g, BuildOptions::for_order(g.n())).map(|(s, _)| s)
}

/// Resolving set of size `⌈2n/5⌉` with explicit verification and audit settings.
pub fn build_resolving_set_with(
    g: &MopGraph,
    opts: BuildOptions,
) -> Result<(VertexSet, ScanReport)> {
    let n = g.n();
    if n < SMALL_ORDER {
        return small_order(g, opts);
    }
    let (state, rot) = initial_coloring(g);
    let (set, report) = scan(g, state, rot, opts.audit)?;
    if opts.verify {
        if let Resolution::Collision(x, y) = is_resolving_bfs(g, &set) {
            return Err(Error::ConstructionFailed(x, y));
        }
    }
    Ok((set, report))
}

/// Tiny orders: the periodic start is tried under every rotation, keeping the first that resolves.
fn small_order(g: &MopGraph, opts: BuildOptions) -> Result<(VertexSet, ScanReport)> {
    let n = g.n();
    let table = distance_table(g);
    let mut first_err = None;
    let (base, preferred) = initial_coloring(g);
    let order = std::iter::once(preferred).chain((0..n as u32).filter(|&r| r != preferred));
    for rot in order {
        match scan(g, base.clone(), rot, opts.audit) {
            Ok((set, report)) => {
                if crate::graph::is_resolving(&table, &set).is_resolving() {
                    return Ok((set, report));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    // The square with one diagonal: no pair of opposite corners resolves it,
    // but a degree-2 corner together with its clockwise neighbour does.
    if let Some(v) = (1..=n as u32).find(|&v| g.degree(v) == 2) {
        let set = VertexSet::from_labels([v, g.cw(v, 1)]);
        if crate::graph::is_resolving(&table, &set).is_resolving() {
            return Ok((set, ScanReport::default()));
        }
    }
    Err(first_err.unwrap_or(Error::ConstructionFailed(1, 2)))
}

fn scan(
    g: &MopGraph,
    mut state: ColorState,
    rot: u32,
    audit: Audit,
) -> Result<(VertexSet, ScanReport)> {
    let n = g.n();
    let target = target_size(n);
    let view = View {
        g,
        n,
        rot: rot as i64,
    };
    let oracle = (audit != Audit::Off).then(|| Oracle {
        table: distance_table(g),
        rot: rot as i64,
        n,
    });
    if let (Some(o), Audit::Full) = (&oracle, audit) {
        o.check_invariant(&state, target)?;
    }
    let mut report = ScanReport {
        rotation: rot,
        ..ScanReport::default()
    };
    while (state.frontier as usize) <= n {
        let det = detect(&view, &state);
        if let Some(o) = &oracle {
            o.check_detection(&state, &det)?;
        }
        let before = state.frontier;
        state.frontier = match det {
            Detection::Arranged(size) => state.frontier + size + 1,
            Detection::Pattern(pat) => {
                report.cases.push(pat);
                apply(&mut state, &pat)
            }
        };
        debug_assert!(state.frontier >= before + 2);
        report.steps += 1;
        if let (Some(o), Audit::Full) = (&oracle, audit) {
            o.check_invariant(&state, target)?;
        }
    }
    let set = VertexSet::from_labels(
        (1..=n as i64)
            .filter(|&x| state.is_black(x))
            .map(|x| view.actual(x)),
    );
    Ok((set, report))
}
