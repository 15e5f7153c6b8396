//! The segment crossing relation and exhaustive enumeration of graph
//! families: plane graphs, triangulations (edge-maximal plane graphs),
//! min-degree / max-edge filtered subfamilies, and k-quasi-plane graphs
//! for k in {3, 4} (k = 2 doubles as a debug alias for the plane class).
//!
//! Edge subsets are fixed-width index sets over the catalog's segment list
//! (128 bits, so at most 16 points); the catalog index order is the single
//! source of determinism for streams, counts, and cache keys.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use num::BigUint;
use thiserror::Error;

use crate::geom::{proper_cross, GeomError, PointSet, Segment};

/// Hard cap imposed by the 128-bit segment sets: 16*15/2 = 120 <= 128.
pub const MAX_POINTS: usize = 16;

/// Default enumeration budget (tree nodes).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CensusError {
    #[error("point set rejected: {0}")]
    RejectedPointSet(#[from] GeomError),
    #[error("point set has {0} points; the segment-set representation caps at {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("enumeration budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("unsupported quasi-planarity order k={0} (supported: 2, 3, 4)")]
    UnsupportedK(u8),
}

/// A set of segment indices, packed into a `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SegSet(u128);

impl SegSet {
    pub const EMPTY: SegSet = SegSet(0);

    pub fn singleton(i: usize) -> SegSet {
        SegSet(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u128 << i) != 0
    }

    pub fn with(self, i: usize) -> SegSet {
        SegSet(self.0 | (1u128 << i))
    }

    pub fn without(self, i: usize) -> SegSet {
        SegSet(self.0 & !(1u128 << i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn lowest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending iterator over member indices.
    pub fn iter(self) -> SegSetIter {
        SegSetIter(self.0)
    }

    pub fn raw(self) -> u128 {
        self.0
    }

    pub fn from_raw(raw: u128) -> SegSet {
        SegSet(raw)
    }
}

impl BitAnd for SegSet {
    type Output = SegSet;
    fn bitand(self, rhs: SegSet) -> SegSet {
        SegSet(self.0 & rhs.0)
    }
}

impl BitOr for SegSet {
    type Output = SegSet;
    fn bitor(self, rhs: SegSet) -> SegSet {
        SegSet(self.0 | rhs.0)
    }
}

impl Not for SegSet {
    type Output = SegSet;
    fn not(self) -> SegSet {
        SegSet(!self.0)
    }
}

impl fmt::Debug for SegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SegSetIter(u128);

impl Iterator for SegSetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Graph family selector. `Qp(2)` is the plane class under a different name,
/// kept as a debug mode.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphClass {
    Plane,
    Triangulation,
    Qp(u8),
}

impl GraphClass {
    pub fn validate(self) -> Result<(), CensusError> {
        match self {
            GraphClass::Qp(k) if !(2..=4).contains(&k) => Err(CensusError::UnsupportedK(k)),
            _ => Ok(()),
        }
    }

    pub fn name(self) -> String {
        match self {
            GraphClass::Plane => "plane".into(),
            GraphClass::Triangulation => "tri".into(),
            GraphClass::Qp(k) => format!("qp{k}"),
        }
    }
}

/// Census restriction: minimum vertex degree and/or a cap on edge count.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct CensusFilter {
    pub min_degree: u32,
    pub max_edges: Option<usize>,
}

impl CensusFilter {
    pub const NONE: CensusFilter = CensusFilter {
        min_degree: 0,
        max_edges: None,
    };

    pub fn is_trivial(&self) -> bool {
        self.min_degree == 0 && self.max_edges.is_none()
    }
}

/// All candidate segments over a point set plus the pairwise proper-crossing
/// relation. Plane graphs are exactly the independent sets of that relation.
pub struct EdgeCatalog {
    points: PointSet,
    segments: Vec<Segment>,
    pair_index: Vec<Vec<usize>>,
    crossing: Vec<SegSet>,
    incident: Vec<SegSet>,
}

impl EdgeCatalog {
    /// Classifies every segment pair. Segment order is lexicographic by
    /// `(a, b)`, which fixes all downstream enumeration orders.
    pub fn build(points: PointSet) -> Result<EdgeCatalog, CensusError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(CensusError::TooManyPoints(n));
        }
        let mut segments = Vec::with_capacity(n * (n - 1) / 2);
        let mut pair_index = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                pair_index[a][b] = segments.len();
                pair_index[b][a] = segments.len();
                segments.push(Segment::new(a, b));
            }
        }
        let m = segments.len();
        let mut crossing = vec![SegSet::EMPTY; m];
        for i in 0..m {
            for j in i + 1..m {
                if proper_cross(segments[i], segments[j], &points) {
                    crossing[i].insert(j);
                    crossing[j].insert(i);
                }
            }
        }
        let mut incident = vec![SegSet::EMPTY; n];
        for (i, s) in segments.iter().enumerate() {
            incident[s.a].insert(i);
            incident[s.b].insert(i);
        }
        Ok(EdgeCatalog {
            points,
            segments,
            pair_index,
            crossing,
            incident,
        })
    }

    pub fn from_points(points: Vec<crate::geom::Point>) -> Result<EdgeCatalog, CensusError> {
        Ok(EdgeCatalog::build(PointSet::new(points)?)?)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn seg_count(&self) -> usize {
        self.segments.len()
    }

    pub fn segment(&self, i: usize) -> Segment {
        self.segments[i]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn seg_id(&self, a: usize, b: usize) -> usize {
        self.pair_index[a][b]
    }

    pub fn crossing_row(&self, i: usize) -> SegSet {
        self.crossing[i]
    }

    pub fn incident_row(&self, v: usize) -> SegSet {
        self.incident[v]
    }

    pub fn crossing_pair_count(&self) -> usize {
        self.crossing.iter().map(|r| r.len() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, edges: SegSet, v: usize) -> u32 {
        (edges & self.incident[v]).len()
    }

    pub fn edge_list(&self, edges: SegSet) -> Vec<Segment> {
        edges.iter().map(|i| self.segments[i]).collect()
    }

    /// Fault injection for suite mutation tests: toggles one crossing bit.
    #[doc(hidden)]
    pub fn toggle_crossing(&mut self, i: usize, j: usize) {
        assert_ne!(i, j);
        if self.crossing[i].contains(j) {
            self.crossing[i].remove(j);
            self.crossing[j].remove(i);
        } else {
            self.crossing[i].insert(j);
            self.crossing[j].insert(i);
        }
    }
}

/// A point set plus a subset of catalog segments.
#[derive(Clone, Copy)]
pub struct GeoGraph<'a> {
    pub catalog: &'a EdgeCatalog,
    pub edges: SegSet,
}

impl<'a> GeoGraph<'a> {
    pub fn m(&self) -> usize {
        self.edges.len() as usize
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.catalog.degree(self.edges, v)
    }

    /// Full-scan check that no two chosen segments cross.
    pub fn is_plane(&self) -> bool {
        self.edges
            .iter()
            .all(|s| (self.catalog.crossing_row(s) & self.edges).is_empty())
    }

    /// Brute-force check that no k chosen segments pairwise cross.
    pub fn is_k_quasi_plane(&self, k: u8) -> bool {
        if k == 2 {
            return self.is_plane();
        }
        let ids: Vec<usize> = self.edges.iter().collect();
        subsets_pairwise_crossing(self.catalog, &ids, k as usize).is_none()
    }
}

fn subsets_pairwise_crossing(cat: &EdgeCatalog, ids: &[usize], k: usize) -> Option<Vec<usize>> {
    fn rec(
        cat: &EdgeCatalog,
        ids: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
    ) -> bool {
        if cur.len() == k {
            return true;
        }
        for idx in start..ids.len() {
            let s = ids[idx];
            if cur.iter().all(|&t| cat.crossing_row(t).contains(s)) {
                cur.push(s);
                if rec(cat, ids, k, idx + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    if rec(cat, ids, k, 0, &mut cur) {
        Some(cur)
    } else {
        None
    }
}

fn has_crossing_pair_within(cat: &EdgeCatalog, set: SegSet) -> bool {
    set.iter().any(|s| !(cat.crossing_row(s) & set).is_empty())
}

fn has_crossing_triangle_within(cat: &EdgeCatalog, set: SegSet) -> bool {
    for s in set.iter() {
        let nb = cat.crossing_row(s) & set;
        for t in nb.iter() {
            if t <= s {
                continue;
            }
            if !(cat.crossing_row(t) & nb).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Can segment `s` be added to `edges` while staying inside `class`?
///
/// For the quasi-plane classes this is the incremental clique test: a
/// violating k-set must contain `s`, so it suffices to look for a
/// (k-1)-clique of the crossing relation among the chosen edges crossing `s`.
pub fn class_compatible(cat: &EdgeCatalog, class: GraphClass, edges: SegSet, s: usize) -> bool {
    let crossers = cat.crossing_row(s) & edges;
    match class {
        GraphClass::Plane | GraphClass::Triangulation | GraphClass::Qp(2) => crossers.is_empty(),
        GraphClass::Qp(3) => !has_crossing_pair_within(cat, crossers),
        GraphClass::Qp(4) => !has_crossing_triangle_within(cat, crossers),
        GraphClass::Qp(_) => unreachable!("class validated at entry"),
    }
}

/// True iff no catalog segment can be added to `edges` without a crossing.
pub fn is_edge_maximal_plane(cat: &EdgeCatalog, edges: SegSet) -> bool {
    (0..cat.seg_count())
        .filter(|&s| !edges.contains(s))
        .all(|s| !(cat.crossing_row(s) & edges).is_empty())
}

fn leaf_accepted(cat: &EdgeCatalog, class: GraphClass, filter: &CensusFilter, edges: SegSet) -> bool {
    if let Some(max) = filter.max_edges {
        if edges.len() as usize > max {
            return false;
        }
    }
    if filter.min_degree > 0 {
        for v in 0..cat.n() {
            if cat.degree(edges, v) < filter.min_degree {
                return false;
            }
        }
    }
    match class {
        GraphClass::Triangulation => is_edge_maximal_plane(cat, edges),
        _ => true,
    }
}

// Core traversal. Segments are decided in catalog index order, exclude branch
// first, so leaves appear in lexicographic order of the membership string
// (segment 0 most significant, absent < present). Every node costs one unit
// of budget.
struct Walker<'a> {
    cat: &'a EdgeCatalog,
    class: GraphClass,
    filter: CensusFilter,
    budget: u64,
    nodes: u64,
}

impl<'a> Walker<'a> {
    fn may_add(&self, edges: SegSet, s: usize) -> bool {
        if let Some(max) = self.filter.max_edges {
            if edges.len() as usize >= max {
                return false;
            }
        }
        class_compatible(self.cat, self.class, edges, s)
    }

    fn walk<F: FnMut(SegSet)>(
        &mut self,
        idx: usize,
        edges: SegSet,
        f: &mut F,
    ) -> Result<(), CensusError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CensusError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if idx == self.cat.seg_count() {
            if leaf_accepted(self.cat, self.class, &self.filter, edges) {
                f(edges);
            }
            return Ok(());
        }
        self.walk(idx + 1, edges, f)?;
        if self.may_add(edges, idx) {
            self.walk(idx + 1, edges.with(idx), f)?;
        }
        Ok(())
    }
}

/// Sequential census stream in the canonical (lexicographic) order.
///
/// Budget exhaustion surfaces as one `Err` item, after which the stream ends.
pub struct CensusIter<'a> {
    cat: &'a EdgeCatalog,
    class: GraphClass,
    filter: CensusFilter,
    budget: u64,
    nodes: u64,
    stack: Vec<(usize, SegSet)>,
    dead: bool,
}

impl<'a> CensusIter<'a> {
    fn new(cat: &'a EdgeCatalog, class: GraphClass, filter: CensusFilter, budget: u64) -> Self {
        CensusIter {
            cat,
            class,
            filter,
            budget,
            nodes: 0,
            stack: vec![(0, SegSet::EMPTY)],
            dead: false,
        }
    }

    pub fn nodes_visited(&self) -> u64 {
        self.nodes
    }
}

impl<'a> Iterator for CensusIter<'a> {
    type Item = Result<SegSet, CensusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.dead {
            return None;
        }
        while let Some((idx, edges)) = self.stack.pop() {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.dead = true;
                return Some(Err(CensusError::BudgetExceeded {
                    budget: self.budget,
                }));
            }
            if idx == self.cat.seg_count() {
                if leaf_accepted(self.cat, self.class, &self.filter, edges) {
                    return Some(Ok(edges));
                }
                continue;
            }
            // LIFO: push include branch first so the exclude subtree runs first
            let may_add = {
                let cap_ok = self
                    .filter
                    .max_edges
                    .map_or(true, |max| (edges.len() as usize) < max);
                cap_ok && class_compatible(self.cat, self.class, edges, idx)
            };
            if may_add {
                self.stack.push((idx + 1, edges.with(idx)));
            }
            self.stack.push((idx + 1, edges));
        }
        None
    }
}

/// Stream of plane graphs (crossing-free edge subsets) satisfying the filter.
pub fn enumerate_plane<'a>(
    cat: &'a EdgeCatalog,
    filter: CensusFilter,
    budget: u64,
) -> CensusIter<'a> {
    CensusIter::new(cat, GraphClass::Plane, filter, budget)
}

/// Stream of edge-maximal plane graphs (triangulations of the point set).
pub fn enumerate_triangulations<'a>(cat: &'a EdgeCatalog, budget: u64) -> CensusIter<'a> {
    CensusIter::new(cat, GraphClass::Triangulation, CensusFilter::NONE, budget)
}

/// Stream of k-quasi-plane graphs; `k = 2` reduces to the plane stream.
pub fn enumerate_qp<'a>(
    cat: &'a EdgeCatalog,
    k: u8,
    filter: CensusFilter,
    budget: u64,
) -> Result<CensusIter<'a>, CensusError> {
    GraphClass::Qp(k).validate()?;
    Ok(CensusIter::new(cat, GraphClass::Qp(k), filter, budget))
}

/// Deterministic parallel fold over a census.
///
/// The decision tree is split into a worker-independent list of subtree
/// tasks; tasks run in parallel but are merged in task order, so the result
/// and the total node count are identical for any worker count.
pub fn fold_census<A, I, V, M>(
    cat: &EdgeCatalog,
    class: GraphClass,
    filter: CensusFilter,
    budget: u64,
    workers: usize,
    init: I,
    visit: V,
    merge: M,
) -> Result<A, CensusError>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, SegSet) + Sync + Send,
    M: Fn(A, A) -> A,
{
    class.validate()?;
    if workers <= 1 {
        let mut walker = Walker {
            cat,
            class,
            filter,
            budget,
            nodes: 0,
        };
        let mut acc = init();
        walker.walk(0, SegSet::EMPTY, &mut |edges| visit(&mut acc, edges))?;
        return Ok(acc);
    }

    // Split phase: breadth-first expansion to a fixed task list. The split
    // depth depends only on the instance, never on the worker count.
    let target_tasks = 256usize;
    let mut frontier: Vec<(usize, SegSet)> = vec![(0, SegSet::EMPTY)];
    let mut split_nodes: u64 = 0;
    let mut leaves_acc = init();
    while frontier.len() < target_tasks {
        if frontier.iter().all(|&(idx, _)| idx >= cat.seg_count()) {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (idx, edges) in frontier {
            split_nodes += 1;
            if split_nodes > budget {
                return Err(CensusError::BudgetExceeded { budget });
            }
            if idx == cat.seg_count() {
                if leaf_accepted(cat, class, &filter, edges) {
                    visit(&mut leaves_acc, edges);
                }
                continue;
            }
            next.push((idx + 1, edges));
            let cap_ok = filter
                .max_edges
                .map_or(true, |max| (edges.len() as usize) < max);
            if cap_ok && class_compatible(cat, class, edges, idx) {
                next.push((idx + 1, edges.with(idx)));
            }
        }
        frontier = next;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let results: Vec<Result<(A, u64), CensusError>> = pool.install(|| {
        use rayon::prelude::*;
        frontier
            .par_iter()
            .map(|&(idx, edges)| {
                let mut walker = Walker {
                    cat,
                    class,
                    filter,
                    budget,
                    nodes: 0,
                };
                let mut acc = init();
                walker.walk(idx, edges, &mut |e| visit(&mut acc, e))?;
                Ok((acc, walker.nodes))
            })
            .collect()
    });

    let mut acc = leaves_acc;
    let mut total_nodes = split_nodes;
    for r in results {
        let (a, nodes) = r?;
        total_nodes += nodes;
        if total_nodes > budget {
            return Err(CensusError::BudgetExceeded { budget });
        }
        acc = merge(acc, a);
    }
    Ok(acc)
}

/// Exact count of graphs in a class under a filter.
///
/// Unfiltered plane counts use the memoized independent-set recurrence with
/// connected-component splitting; everything else enumerates.
pub fn count_class(
    cat: &EdgeCatalog,
    class: GraphClass,
    filter: CensusFilter,
    budget: u64,
    workers: usize,
) -> Result<BigUint, CensusError> {
    class.validate()?;
    if matches!(class, GraphClass::Plane | GraphClass::Qp(2)) && filter.is_trivial() {
        return count_independent_sets(cat, budget);
    }
    let count = fold_census(
        cat,
        class,
        filter,
        budget,
        workers,
        || 0u64,
        |acc, _| *acc += 1,
        |a, b| a + b,
    )?;
    Ok(BigUint::from(count))
}

/// Exact plane-graph count (the independent-set count of the crossing
/// relation) with the branching recurrence
/// `count(G) = count(G - v) + count(G - N[v])`, memoized, with component
/// splitting and an isolated-vertex shortcut.
pub fn count_independent_sets(cat: &EdgeCatalog, budget: u64) -> Result<BigUint, CensusError> {
    struct Ctx<'a> {
        cat: &'a EdgeCatalog,
        memo: HashMap<u128, BigUint>,
        nodes: u64,
        budget: u64,
    }

    fn component_of(cat: &EdgeCatalog, start: usize, avail: SegSet) -> SegSet {
        let mut comp = SegSet::singleton(start);
        let mut queue = vec![start];
        while let Some(s) = queue.pop() {
            let nb = cat.crossing_row(s) & avail;
            for t in nb.iter() {
                if !comp.contains(t) {
                    comp.insert(t);
                    queue.push(t);
                }
            }
        }
        comp
    }

    fn count(ctx: &mut Ctx, avail: SegSet) -> Result<BigUint, CensusError> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return Err(CensusError::BudgetExceeded { budget: ctx.budget });
        }
        if avail.is_empty() {
            return Ok(BigUint::from(1u32));
        }
        if let Some(v) = ctx.memo.get(&avail.raw()) {
            return Ok(v.clone());
        }

        // strip segments crossing nothing else in `avail`: each doubles
        let mut isolated = 0u32;
        let mut active = SegSet::EMPTY;
        for s in avail.iter() {
            if (ctx.cat.crossing_row(s) & avail).is_empty() {
                isolated += 1;
            } else {
                active.insert(s);
            }
        }
        let result = if active.is_empty() {
            BigUint::from(1u32) << isolated
        } else {
            let comp = component_of(ctx.cat, active.lowest().unwrap(), active);
            let inner = if comp == active {
                let v = comp
                    .iter()
                    .max_by_key(|&s| ((ctx.cat.crossing_row(s) & comp).len(), std::cmp::Reverse(s)))
                    .unwrap();
                let without_v = count(ctx, comp.without(v))?;
                let without_nv = count(ctx, comp & !(ctx.cat.crossing_row(v).with(v)))?;
                without_v + without_nv
            } else {
                count(ctx, comp)? * count(ctx, active & !comp)?
            };
            inner << isolated
        };
        ctx.memo.insert(avail.raw(), result.clone());
        Ok(result)
    }

    let all = if cat.seg_count() == 0 {
        SegSet::EMPTY
    } else {
        SegSet::from_raw((!0u128) >> (128 - cat.seg_count()))
    };
    let mut ctx = Ctx {
        cat,
        memo: HashMap::new(),
        nodes: 0,
        budget,
    };
    count(&mut ctx, all)
}

/// Report of [`max_edges_in_class`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxEdgesReport {
    pub observed_max: usize,
    /// Paper-side cap for the class, as (numerator, denominator) of a linear
    /// bound evaluated at this N; `None` for the plane class beyond Euler.
    pub class_bound: Option<(i64, i64)>,
    /// True when the class bound is at least N(N-1)/2 and thus constrains
    /// nothing at this size.
    pub bound_vacuous: bool,
    /// True when the bound is below N(N-1)/2 (it actually constrains).
    pub bound_binding: bool,
}

/// Maximum edge count over a class, with the class's linear edge bound
/// evaluated at this `N` for comparison. At desk scale the quasi-plane
/// bounds usually exceed N(N-1)/2 and are flagged vacuous.
pub fn max_edges_in_class(
    cat: &EdgeCatalog,
    class: GraphClass,
    budget: u64,
    workers: usize,
) -> Result<MaxEdgesReport, CensusError> {
    let observed_max = fold_census(
        cat,
        class,
        CensusFilter::NONE,
        budget,
        workers,
        || 0usize,
        |acc, edges| *acc = (*acc).max(edges.len() as usize),
        |a, b| a.max(b),
    )?;
    let n = cat.n() as i64;
    let class_bound = match class {
        GraphClass::Plane | GraphClass::Triangulation | GraphClass::Qp(2) => {
            if n >= 3 {
                Some((3 * n - 6, 1))
            } else {
                None
            }
        }
        GraphClass::Qp(3) => Some((13 * n - 40, 2)), // 6.5N - 20
        GraphClass::Qp(4) => Some((36 * n - 72, 1)),
        GraphClass::Qp(_) => None,
    };
    let complete = n * (n - 1) / 2;
    let (bound_vacuous, bound_binding) = match class_bound {
        Some((num, den)) => {
            let vacuous = num >= complete * den;
            (vacuous, !vacuous)
        }
        None => (true, false),
    };
    Ok(MaxEdgesReport {
        observed_max,
        class_bound,
        bound_vacuous,
        bound_binding,
    })
}
