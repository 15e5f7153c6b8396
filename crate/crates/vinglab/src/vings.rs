//! Ving analytics: degrees, x-ving detection (plane and quasi-plane modes),
//! the completion map between arbitrary vings and x-vings, the bijection
//! between 0-vings and x-vings, and the degree reductions that concentrate
//! charge on low-degree x-vings.
//!
//! A ving is a (vertex, graph) pair over a fixed catalog. All operations are
//! pure functions over immutable graphs and are safe under parallel census
//! traversal.

use thiserror::Error;

use crate::census::{class_compatible, EdgeCatalog, GraphClass, SegSet};
use crate::geom::{
    angular_order, orient, point_in_triangle_strict, point_on_triangle_boundary, proper_cross,
    Segment,
};

/// A vertex inside one specific graph of a census.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct Ving {
    pub vertex: usize,
    pub edges: SegSet,
}

impl Ving {
    pub fn new(vertex: usize, edges: SegSet) -> Ving {
        Ving { vertex, edges }
    }

    pub fn degree(&self, cat: &EdgeCatalog) -> u32 {
        cat.degree(self.edges, self.vertex)
    }

    pub fn neighbors(&self, cat: &EdgeCatalog) -> Vec<usize> {
        (self.edges & cat.incident_row(self.vertex))
            .iter()
            .map(|s| {
                let seg = cat.segment(s);
                if seg.a == self.vertex {
                    seg.b
                } else {
                    seg.a
                }
            })
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum VingError {
    #[error("operation needs degree >= {need}, ving has degree {got}")]
    DegreeTooLow { need: u32, got: u32 },
    #[error("the ving is not an x-ving in the requested mode")]
    NotAnXVing,
    #[error("every ear order leaves the vertex on a triangulation diagonal")]
    DegenerateDiagonal,
    #[error("no valid reduction target exists for this ving")]
    NoReduction,
    #[error("supplied x3-ving is not the reduction of the supplied source")]
    ReductionMismatch,
}

/// Segments at `p` that can be inserted without leaving the class,
/// each evaluated against the unmodified graph.
pub fn addable_segments(cat: &EdgeCatalog, edges: SegSet, p: usize, mode: GraphClass) -> SegSet {
    let mut out = SegSet::EMPTY;
    for s in (cat.incident_row(p) & !edges).iter() {
        if class_compatible(cat, mode, edges, s) {
            out.insert(s);
        }
    }
    out
}

/// True iff the degree of `v.vertex` cannot be increased while staying in
/// the class.
pub fn is_x_ving(cat: &EdgeCatalog, v: &Ving, mode: GraphClass) -> bool {
    addable_segments(cat, v.edges, v.vertex, mode).is_empty()
}

/// The unique corresponding x-ving: all addable edges at the vertex are
/// computed once against the input graph and inserted simultaneously. The
/// new edges share the vertex, so they never cross one another, and a
/// violating k-set can contain at most one of them; simultaneous insertion
/// is therefore safe in every mode. Idempotent.
pub fn x_completion(cat: &EdgeCatalog, v: &Ving, mode: GraphClass) -> Ving {
    let addable = addable_segments(cat, v.edges, v.vertex, mode);
    Ving::new(v.vertex, v.edges | addable)
}

/// Removes every edge at the vertex, yielding the corresponding 0-ving.
/// Together with [`x_completion`] this is the bijection between 0-vings and
/// x-vings at a fixed vertex.
pub fn strip_vertex(cat: &EdgeCatalog, v: &Ving) -> Ving {
    Ving::new(v.vertex, v.edges & !cat.incident_row(v.vertex))
}

/// The 2^d vings obtained by deleting each subset of the vertex's incident
/// edges. Exactly C(d, i) of them have degree i, and each maps back to `x`
/// under x-completion when `x` is an x-ving.
pub fn predecessors(cat: &EdgeCatalog, x: &Ving) -> Vec<Ving> {
    let incident: Vec<usize> = (x.edges & cat.incident_row(x.vertex)).iter().collect();
    let d = incident.len();
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0u32..(1u32 << d) {
        let mut edges = x.edges;
        for (bit, &s) in incident.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                edges.remove(s);
            }
        }
        out.push(Ving::new(x.vertex, edges));
    }
    out
}

/// Per-degree ving counts and the x-ving count of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VingHistogram {
    /// v[i] = number of vertices of degree i.
    pub v: Vec<u64>,
    pub v_x: u64,
}

pub fn histogram(cat: &EdgeCatalog, edges: SegSet, mode: GraphClass) -> VingHistogram {
    let n = cat.n();
    let mut v = vec![0u64; n.max(1)];
    let mut v_x = 0;
    for p in 0..n {
        let d = cat.degree(edges, p) as usize;
        v[d] += 1;
        if addable_segments(cat, edges, p, mode).is_empty() {
            v_x += 1;
        }
    }
    VingHistogram { v, v_x }
}

/// Star polygon data behind a degree reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub result: Ving,
    /// The three vertices the reduced ving is connected to.
    pub triangle: [usize; 3],
    /// Neighbors of the source vertex in counterclockwise angular order.
    pub ring: Vec<usize>,
    /// Canonical triangulation of the star polygon; empty for the fallback
    /// path where the vertex lies outside its neighbor polygon.
    pub triangulation: Vec<[usize; 3]>,
    /// True when the source vertex is strictly inside the star polygon; the
    /// construction then follows the containing triangle.
    pub p_inside: bool,
}

// True iff p is strictly inside the star polygon on `ring`, i.e. every
// consecutive angular gap around p is below half a turn. Under general
// position a gap of exactly half a turn cannot occur.
fn vertex_inside_ring(cat: &EdgeCatalog, p: usize, ring: &[usize]) -> bool {
    let ps = cat.points();
    let origin = ps.point(p);
    (0..ring.len()).all(|i| {
        let a = ps.point(ring[i]);
        let b = ps.point(ring[(i + 1) % ring.len()]);
        orient(origin, a, b) == 1
    })
}

// Deterministic ear clipping over a counterclockwise simple polygon. Ears are
// attempted in increasing order of apex label; the first complete
// triangulation wins. `reject` lets the caller veto a finished triangulation
// (used to retry when p lands on a diagonal), in which case the next ear
// order is tried.
fn ear_triangulations<F: FnMut(&[[usize; 3]]) -> bool>(
    cat: &EdgeCatalog,
    ring: &[usize],
    accept: &mut F,
) -> Option<Vec<[usize; 3]>> {
    fn is_ear(cat: &EdgeCatalog, poly: &[usize], i: usize) -> bool {
        let ps = cat.points();
        let n = poly.len();
        let prev = poly[(i + n - 1) % n];
        let apex = poly[i];
        let next = poly[(i + 1) % n];
        if orient(ps.point(prev), ps.point(apex), ps.point(next)) != 1 {
            return false;
        }
        poly.iter().all(|&w| {
            w == prev
                || w == apex
                || w == next
                || !point_in_triangle_strict(ps.point(w), ps.point(prev), ps.point(apex), ps.point(next))
        })
    }

    fn rec<F: FnMut(&[[usize; 3]]) -> bool>(
        cat: &EdgeCatalog,
        poly: &mut Vec<usize>,
        acc: &mut Vec<[usize; 3]>,
        accept: &mut F,
    ) -> bool {
        if poly.len() == 3 {
            acc.push([poly[0], poly[1], poly[2]]);
            let ok = accept(acc);
            if !ok {
                acc.pop();
            }
            return ok;
        }
        // candidate apexes in increasing label order
        let mut order: Vec<usize> = (0..poly.len()).collect();
        order.sort_by_key(|&i| poly[i]);
        for i in order {
            if !is_ear(cat, poly, i) {
                continue;
            }
            let n = poly.len();
            let prev = poly[(i + n - 1) % n];
            let apex = poly[i];
            let next = poly[(i + 1) % n];
            acc.push([prev, apex, next]);
            let removed = poly.remove(i);
            if rec(cat, poly, acc, accept) {
                return true;
            }
            poly.insert(i, removed);
            acc.pop();
        }
        false
    }

    let mut poly = ring.to_vec();
    let mut acc = Vec::new();
    if rec(cat, &mut poly, &mut acc, accept) {
        Some(acc)
    } else {
        None
    }
}

/// Canonical triangulation of the star polygon of an interior-type x-ving,
/// together with the triangle strictly containing the vertex.
///
/// Ear orders are retried if the vertex lands on a triangulation diagonal;
/// under general position that never happens (the vertex, being a point of
/// the set, cannot be collinear with two polygon corners), but the policy is
/// verified rather than assumed.
fn canonical_star_triangulation(
    cat: &EdgeCatalog,
    p: usize,
    ring: &[usize],
) -> Result<(Vec<[usize; 3]>, [usize; 3]), VingError> {
    let ps = cat.points();
    let pt = ps.point(p);
    let mut containing: Option<[usize; 3]> = None;
    let tri = ear_triangulations(cat, ring, &mut |tris| {
        let mut strict = None;
        for t in tris {
            let (a, b, c) = (ps.point(t[0]), ps.point(t[1]), ps.point(t[2]));
            if point_on_triangle_boundary(pt, a, b, c) {
                return false; // p on a diagonal: retry with another ear order
            }
            if point_in_triangle_strict(pt, a, b, c) {
                if strict.is_some() {
                    return false;
                }
                strict = Some(*t);
            }
        }
        match strict {
            Some(t) => {
                containing = Some(t);
                true
            }
            None => false,
        }
    });
    match (tri, containing) {
        (Some(tris), Some(t)) => Ok((tris, t)),
        _ => Err(VingError::DegenerateDiagonal),
    }
}

// All edges of the candidate graph must be pairwise crossing-free; `added`
// lists the segment ids inserted on top of an already-plane base.
fn added_edges_stay_plane(cat: &EdgeCatalog, edges: SegSet, added: &[usize]) -> bool {
    added
        .iter()
        .all(|&s| (cat.crossing_row(s) & edges).is_empty())
}

fn build_x3_candidate(
    cat: &EdgeCatalog,
    p: usize,
    base_without_p: SegSet,
    tri: [usize; 3],
) -> Option<Ving> {
    let mut edges = base_without_p;
    let mut added = Vec::new();
    let tri_edges = [
        cat.seg_id(tri[0], tri[1]),
        cat.seg_id(tri[1], tri[2]),
        cat.seg_id(tri[2], tri[0]),
    ];
    for s in tri_edges {
        if !edges.contains(s) {
            added.push(s);
            edges.insert(s);
        }
    }
    for &q in &tri {
        let s = cat.seg_id(p, q);
        added.push(s);
        edges.insert(s);
    }
    if !added_edges_stay_plane(cat, edges, &added) {
        return None;
    }
    let v = Ving::new(p, edges);
    if is_x_ving(cat, &v, GraphClass::Plane) {
        Some(v)
    } else {
        None
    }
}

/// Reduce a plane x-ving of degree >= 4 to an x3-ving.
///
/// The star polygon is the angular cycle of the vertex's neighbors. When the
/// vertex is strictly inside it (always the case away from the hull), the
/// polygon is simple: it is triangulated canonically, the vertex's edges are
/// removed, and the edges of the triangle containing the vertex plus the
/// three spokes are inserted. Missing polygon edges outside that triangle
/// are never added.
///
/// When the vertex lies outside its neighbor polygon (hull-type vings) the
/// angular cycle may be non-simple and no triangle contains the vertex, so
/// the containing-triangle rule is undefined; the policy then scans neighbor
/// triples in lexicographic order and takes the first one that yields a
/// valid x3-ving. For some hull configurations no triple works at all, in
/// which case [`VingError::NoReduction`] is returned.
pub fn reduce_to_x3(cat: &EdgeCatalog, x: &Ving) -> Result<Reduction, VingError> {
    if !is_x_ving(cat, x, GraphClass::Plane) {
        return Err(VingError::NotAnXVing);
    }
    let d = x.degree(cat);
    if d < 4 {
        return Err(VingError::DegreeTooLow { need: 4, got: d });
    }
    let p = x.vertex;
    let neighbors = x.neighbors(cat);
    let ring = angular_order(p, &neighbors, cat.points());
    let base = x.edges & !cat.incident_row(p);
    let p_inside = vertex_inside_ring(cat, p, &ring);

    if p_inside {
        let (tris, delta) = canonical_star_triangulation(cat, p, &ring)?;
        let result = build_x3_candidate(cat, p, base, delta).ok_or(VingError::NoReduction)?;
        return Ok(Reduction {
            result,
            triangle: delta,
            ring,
            triangulation: tris,
            p_inside: true,
        });
    }

    // Hull-type fallback: first neighbor triple (lexicographic) that yields a
    // valid x3-ving.
    let mut sorted = neighbors.clone();
    sorted.sort_unstable();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            for k in j + 1..sorted.len() {
                let tri = [sorted[i], sorted[j], sorted[k]];
                if let Some(result) = build_x3_candidate(cat, p, base, tri) {
                    return Ok(Reduction {
                        result,
                        triangle: tri,
                        ring,
                        triangulation: Vec::new(),
                        p_inside: false,
                    });
                }
            }
        }
    }
    Err(VingError::NoReduction)
}

// Shared edge of two triangles, if any.
fn shared_edge(a: [usize; 3], b: [usize; 3]) -> Option<(usize, usize)> {
    let common: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if common.len() == 2 {
        Some((common[0], common[1]))
    } else {
        None
    }
}

/// The degree-4 x-ving reached from an x3-ving by opening one side of its
/// triangle toward an adjacent triangle of the source's star polygon.
///
/// For an interior-type source the adjacent triangle with the smallest
/// opposite label is chosen from the canonical triangulation, the shared edge
/// is removed, the other edges of the adjacent triangle are inserted, and the
/// vertex is connected to the fourth corner of the resulting quadrilateral.
/// For a hull-type source (no star triangulation) the deterministic successor
/// search of [`x4_successor`] is used instead.
pub fn reduce_to_x4(cat: &EdgeCatalog, x3: &Ving, source: &Ving) -> Result<Ving, VingError> {
    let red = reduce_to_x3(cat, source)?;
    if red.result != *x3 {
        return Err(VingError::ReductionMismatch);
    }
    if !red.p_inside {
        return x4_successor(cat, x3);
    }
    let p = x3.vertex;
    let delta = red.triangle;
    // adjacent triangle with the smallest opposite label
    let mut best: Option<(usize, (usize, usize))> = None;
    for t in &red.triangulation {
        if *t == delta {
            continue;
        }
        if let Some(shared) = shared_edge(*t, delta) {
            let opposite = t
                .iter()
                .copied()
                .find(|v| *v != shared.0 && *v != shared.1)
                .expect("triangle has a vertex outside its shared edge");
            if best.map_or(true, |(z, _)| opposite < z) {
                best = Some((opposite, shared));
            }
        }
    }
    let (z, (r, s)) = best.ok_or(VingError::NoReduction)?;
    let mut edges = x3.edges;
    edges.remove(cat.seg_id(r, s));
    let mut added = Vec::new();
    for s_id in [cat.seg_id(r, z), cat.seg_id(s, z), cat.seg_id(p, z)] {
        if !edges.contains(s_id) {
            added.push(s_id);
            edges.insert(s_id);
        }
    }
    debug_assert!(added_edges_stay_plane(cat, edges, &added));
    let out = Ving::new(p, edges);
    debug_assert!(is_x_ving(cat, &out, GraphClass::Plane));
    debug_assert_eq!(out.degree(cat), 4);
    Ok(out)
}

/// Deterministic standalone search for a degree-4 x-ving reachable from an
/// x3-ving: open one triangle side toward a fourth vertex so that the spoke
/// to the fourth vertex crosses the removed side. The first valid candidate
/// in (side, vertex-label) order wins.
pub fn x4_successor(cat: &EdgeCatalog, x3: &Ving) -> Result<Ving, VingError> {
    if !is_x_ving(cat, x3, GraphClass::Plane) {
        return Err(VingError::NotAnXVing);
    }
    if x3.degree(cat) != 3 {
        return Err(VingError::DegreeTooLow {
            need: 3,
            got: x3.degree(cat),
        });
    }
    let p = x3.vertex;
    let mut tri = x3.neighbors(cat);
    tri.sort_unstable();
    let tri_full = [
        cat.seg_id(tri[0], tri[1]),
        cat.seg_id(tri[1], tri[2]),
        cat.seg_id(tri[2], tri[0]),
    ];
    if tri_full.iter().any(|s| !x3.edges.contains(*s)) {
        return Err(VingError::NoReduction);
    }
    let sides = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])];
    for (r, s) in sides {
        let d_id = cat.seg_id(r, s);
        for z in 0..cat.n() {
            if z == p || tri.contains(&z) {
                continue;
            }
            // the new spoke must cross the removed side
            if !proper_cross(Segment::new(p, z), Segment::new(r, s), cat.points()) {
                continue;
            }
            let mut edges = x3.edges;
            edges.remove(d_id);
            let mut added = Vec::new();
            for s_id in [cat.seg_id(r, z), cat.seg_id(s, z), cat.seg_id(p, z)] {
                if !edges.contains(s_id) {
                    added.push(s_id);
                    edges.insert(s_id);
                }
            }
            if !added_edges_stay_plane(cat, edges, &added) {
                continue;
            }
            let out = Ving::new(p, edges);
            if out.degree(cat) == 4 && is_x_ving(cat, &out, GraphClass::Plane) {
                return Ok(out);
            }
        }
    }
    Err(VingError::NoReduction)
}

/// The x3-vings that can lead to a degree-4 plane x-ving via the
/// quadrilateral-opening mechanism, enumerated exhaustively.
///
/// For each of the two diagonals of the neighbor quadrilateral, the diagonal
/// must cross exactly one edge of the graph and that edge must be a spoke of
/// the vertex; the far triangle's two non-diagonal edges may then each be
/// kept or dropped. That gives at most 2 x 4 = 8 candidates; each one is
/// validated (plane, triangle edges present, x-ving of degree 3).
pub fn x4_predecessors(cat: &EdgeCatalog, x4: &Ving) -> Result<Vec<Ving>, VingError> {
    if !is_x_ving(cat, x4, GraphClass::Plane) {
        return Err(VingError::NotAnXVing);
    }
    let d = x4.degree(cat);
    if d != 4 {
        return Err(VingError::DegreeTooLow { need: 4, got: d });
    }
    let p = x4.vertex;
    let ring = angular_order(p, &x4.neighbors(cat), cat.points());
    debug_assert_eq!(ring.len(), 4);
    let mut out = Vec::new();
    for (i, j) in [(0usize, 2usize), (1, 3)] {
        let (q0, q2) = (ring[i], ring[j]);
        let d_id = cat.seg_id(q0, q2);
        if x4.edges.contains(d_id) {
            continue; // a chord edge already present: mechanism inapplicable
        }
        let crossers = cat.crossing_row(d_id) & x4.edges;
        if crossers.len() != 1 {
            continue;
        }
        let crossed = crossers.lowest().unwrap();
        if !cat.incident_row(p).contains(crossed) {
            continue; // the diagonal cuts a non-spoke edge
        }
        let seg = cat.segment(crossed);
        let far = if seg.a == p { seg.b } else { seg.a };
        // `far` is one of the two off-diagonal corners; `near` is the other
        let others = [ring[(i + 1) % 4], ring[(j + 1) % 4]];
        let near = if others[0] == far {
            others[1]
        } else {
            debug_assert_eq!(others[1], far);
            others[0]
        };
        // triangle around p after the swap must have its edges present
        let delta_sides = [cat.seg_id(q0, near), cat.seg_id(near, q2)];
        if delta_sides.iter().any(|s| !x4.edges.contains(*s)) {
            continue;
        }
        // the mechanism presupposes p inside the near triangle
        let ps = cat.points();
        if !point_in_triangle_strict(ps.point(p), ps.point(q0), ps.point(near), ps.point(q2)) {
            continue;
        }
        let e = cat.seg_id(q0, far);
        let e2 = cat.seg_id(far, q2);
        if !x4.edges.contains(e) || !x4.edges.contains(e2) {
            continue; // the forward step would have inserted these
        }
        let base = x4.edges.without(cat.seg_id(p, far)).with(d_id);
        if !(cat.crossing_row(d_id) & base).is_empty() {
            continue;
        }
        for drop_mask in 0u8..4 {
            let mut edges = base;
            if drop_mask & 1 != 0 {
                edges.remove(e);
            }
            if drop_mask & 2 != 0 {
                edges.remove(e2);
            }
            let cand = Ving::new(p, edges);
            if cand.degree(cat) == 3 && is_x_ving(cat, &cand, GraphClass::Plane) {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// Number of x3-vings that can lead to the given degree-4 x-ving; always at
/// most eight.
pub fn x4_predecessor_count(cat: &EdgeCatalog, x4: &Ving) -> Result<usize, VingError> {
    Ok(x4_predecessors(cat, x4)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumerate_plane, CensusFilter, EdgeCatalog, DEFAULT_BUDGET};
    use crate::geom::Point;

    fn catalog(coords: &[(i64, i64)]) -> EdgeCatalog {
        EdgeCatalog::from_points(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn convex(n: usize) -> EdgeCatalog {
        let coords: Vec<(i64, i64)> = match n {
            3 => vec![(0, 0), (10, 1), (4, 9)],
            4 => vec![(0, 0), (10, 0), (13, 8), (2, 10)],
            5 => vec![(0, 0), (10, 0), (14, 6), (7, 12), (-2, 7)],
            6 => vec![(0, 0), (8, -2), (15, 3), (14, 11), (5, 14), (-3, 7)],
            _ => panic!("convex fixture only defined for 3..=6"),
        };
        catalog(&coords)
    }

    fn full_graph(cat: &EdgeCatalog) -> SegSet {
        let mut s = SegSet::EMPTY;
        for i in 0..cat.seg_count() {
            s.insert(i);
        }
        s
    }

    // Convex hull by orientation scan; oracle for the degree-2 x-ving shape.
    fn hull_vertices(cat: &EdgeCatalog) -> Vec<usize> {
        let ps = cat.points();
        let n = cat.n();
        let mut hull = Vec::new();
        for i in 0..n {
            let mut extreme = true;
            'outer: for j in 0..n {
                for k in 0..n {
                    if j == i || k == i || j == k {
                        continue;
                    }
                    for l in 0..n {
                        if l == i || l == j || l == k {
                            continue;
                        }
                        if point_in_triangle_strict(
                            ps.point(i),
                            ps.point(j),
                            ps.point(k),
                            ps.point(l),
                        ) {
                            extreme = false;
                            break 'outer;
                        }
                    }
                }
            }
            if extreme {
                hull.push(i);
            }
        }
        hull
    }

    #[test]
    fn x_ving_examples() {
        let tri = convex(3);
        let full = full_graph(&tri);
        for p in 0..3 {
            assert!(is_x_ving(&tri, &Ving::new(p, full), GraphClass::Plane));
            assert!(!is_x_ving(&tri, &Ving::new(p, SegSet::EMPTY), GraphClass::Plane));
        }

        // convex 4 with hull edges only: each hull vertex still sees the
        // opposite one across the empty interior
        let quad = convex(4);
        let mut hull_only = SegSet::EMPTY;
        for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            hull_only.insert(quad.seg_id(a, b));
        }
        for p in 0..4 {
            assert!(!is_x_ving(&quad, &Ving::new(p, hull_only), GraphClass::Plane));
        }
    }

    #[test]
    fn completion_examples_and_idempotence() {
        let tri = convex(3);
        let v = Ving::new(0, SegSet::EMPTY);
        let x = x_completion(&tri, &v, GraphClass::Plane);
        assert_eq!(x.degree(&tri), 2);
        assert_eq!(x_completion(&tri, &x, GraphClass::Plane), x);
    }

    #[test]
    fn completion_matches_one_at_a_time_insertion_orders() {
        // simultaneous insertion must equal greedy insertion in any order
        let cat = convex(5);
        let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
            .collect::<Result<_, _>>()
            .unwrap();
        for &edges in &census {
            for p in 0..cat.n() {
                let v = Ving::new(p, edges);
                let fast = x_completion(&cat, &v, GraphClass::Plane);
                // greedy: repeatedly add the lowest addable segment
                let mut cur = edges;
                loop {
                    let add = addable_segments(&cat, cur, p, GraphClass::Plane);
                    match add.lowest() {
                        Some(s) => cur.insert(s),
                        None => break,
                    }
                }
                assert_eq!(fast.edges, cur);
                // and the highest-first order
                let mut cur = edges;
                loop {
                    let add = addable_segments(&cat, cur, p, GraphClass::Plane);
                    match add.iter().last() {
                        Some(s) => cur.insert(s),
                        None => break,
                    }
                }
                assert_eq!(fast.edges, cur);
            }
        }
    }

    #[test]
    fn strip_and_complete_are_mutually_inverse() {
        let cat = convex(5);
        let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
            .collect::<Result<_, _>>()
            .unwrap();
        for &edges in &census {
            for p in 0..cat.n() {
                let v = Ving::new(p, edges);
                if is_x_ving(&cat, &v, GraphClass::Plane) {
                    let zero = strip_vertex(&cat, &v);
                    assert_eq!(zero.degree(&cat), 0);
                    assert_eq!(x_completion(&cat, &zero, GraphClass::Plane), v);
                }
                if v.degree(&cat) == 0 {
                    let x = x_completion(&cat, &v, GraphClass::Plane);
                    assert_eq!(strip_vertex(&cat, &x), v);
                }
            }
        }
    }

    #[test]
    fn predecessor_counts_and_profile() {
        let cat = convex(4);
        let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
            .collect::<Result<_, _>>()
            .unwrap();
        for &edges in &census {
            for p in 0..cat.n() {
                let v = Ving::new(p, edges);
                if !is_x_ving(&cat, &v, GraphClass::Plane) {
                    continue;
                }
                let d = v.degree(&cat) as usize;
                let preds = predecessors(&cat, &v);
                assert_eq!(preds.len(), 1 << d);
                // binomial degree profile
                let mut by_degree = vec![0usize; d + 1];
                for u in &preds {
                    by_degree[u.degree(&cat) as usize] += 1;
                    assert_eq!(x_completion(&cat, u, GraphClass::Plane), v);
                }
                for (i, &cnt) in by_degree.iter().enumerate() {
                    assert_eq!(cnt, binomial(d, i));
                }
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    // q is hull-adjacent to p iff every other point lies strictly on one
    // side of the line pq.
    fn hull_adjacent(cat: &EdgeCatalog, p: usize) -> Vec<usize> {
        let ps = cat.points();
        (0..cat.n())
            .filter(|&q| {
                q != p && {
                    let signs: Vec<i32> = (0..cat.n())
                        .filter(|&r| r != p && r != q)
                        .map(|r| orient(ps.point(p), ps.point(q), ps.point(r)))
                        .collect();
                    signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1)
                }
            })
            .collect()
    }

    #[test]
    fn plane_x_vings_have_degree_at_least_two_and_x2_on_hull() {
        // a vertex always sees its hull-adjacent vertices (nothing can cross
        // a hull edge), so a degree-2 x-ving sits on the hull and its two
        // neighbors are exactly its hull-adjacent vertices
        for n in 3..=6 {
            let cat = convex(n);
            let hull = hull_vertices(&cat);
            let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
                .collect::<Result<_, _>>()
                .unwrap();
            for &edges in &census {
                for p in 0..cat.n() {
                    let v = Ving::new(p, edges);
                    if !is_x_ving(&cat, &v, GraphClass::Plane) {
                        continue;
                    }
                    let d = v.degree(&cat);
                    assert!(d >= 2, "x-vings of degree < 2 cannot exist");
                    if d == 2 {
                        assert!(hull.contains(&p), "degree-2 x-ving away from the hull");
                        let mut nb = v.neighbors(&cat);
                        nb.sort_unstable();
                        let mut ha = hull_adjacent(&cat, p);
                        ha.sort_unstable();
                        assert_eq!(nb, ha, "x2-ving neighbors must be the hull neighbors");
                    }
                }
            }
        }
    }

    #[test]
    fn histogram_examples() {
        let tri = convex(3);
        let h = histogram(&tri, SegSet::EMPTY, GraphClass::Plane);
        assert_eq!(h.v[0], 3);
        assert_eq!(h.v_x, 0);
        let h = histogram(&tri, full_graph(&tri), GraphClass::Plane);
        assert_eq!(h.v[2], 3);
        assert_eq!(h.v_x, 3);
    }

    #[test]
    fn histogram_sums_match_vertex_and_edge_counts() {
        let cat = convex(5);
        for g in enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET) {
            let edges = g.unwrap();
            let h = histogram(&cat, edges, GraphClass::Plane);
            assert_eq!(h.v.iter().sum::<u64>(), 5);
            let weighted: u64 = h.v.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
            assert_eq!(weighted, 2 * edges.len() as u64);
        }
    }

    #[test]
    fn reduce_interior_x4_on_five_points() {
        // p strictly inside a convex quadrilateral, connected to all corners
        let cat = catalog(&[(0, 0), (20, 0), (22, 19), (-2, 18), (9, 8)]);
        let p = 4;
        let mut edges = SegSet::EMPTY;
        for q in 0..4 {
            edges.insert(cat.seg_id(p, q));
        }
        let v = x_completion(&cat, &Ving::new(p, edges), GraphClass::Plane);
        assert_eq!(v.degree(&cat), 4);
        let red = reduce_to_x3(&cat, &v).unwrap();
        assert!(red.p_inside);
        assert_eq!(red.result.degree(&cat), 3);
        assert!(is_x_ving(&cat, &red.result, GraphClass::Plane));
        // the triangle contains p
        let ps = cat.points();
        assert!(point_in_triangle_strict(
            ps.point(p),
            ps.point(red.triangle[0]),
            ps.point(red.triangle[1]),
            ps.point(red.triangle[2]),
        ));
        // no star-polygon edge outside the triangle was added
        for w in 0..red.ring.len() {
            let (a, b) = (red.ring[w], red.ring[(w + 1) % red.ring.len()]);
            let in_delta = red.triangle.contains(&a) && red.triangle.contains(&b);
            if !in_delta && !v.edges.contains(cat.seg_id(a, b)) {
                assert!(!red.result.edges.contains(cat.seg_id(a, b)));
            }
        }

        // degree-4 interior source: quadrilateral of the x4 result is the
        // star polygon itself minus one diagonal
        let x4 = reduce_to_x4(&cat, &red.result, &v).unwrap();
        assert_eq!(x4.degree(&cat), 4);
        assert!(is_x_ving(&cat, &x4, GraphClass::Plane));
        let mut corners = x4.neighbors(&cat);
        corners.sort_unstable();
        assert_eq!(corners, vec![0, 1, 2, 3]);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            assert!(x4.edges.contains(cat.seg_id(a, b)));
        }
    }

    #[test]
    fn reduce_rejects_low_degree() {
        let cat = convex(3);
        let v = x_completion(&cat, &Ving::new(0, SegSet::EMPTY), GraphClass::Plane);
        assert!(matches!(
            reduce_to_x3(&cat, &v),
            Err(VingError::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn exhaustive_reductions_up_to_six() {
        // Every interior-type x-ving of degree >= 4 must reduce to a valid
        // x3-ving whose triangle edges are all present; hull-type vings may
        // reduce via the fallback or be genuinely irreducible.
        for n in 5..=6 {
            let cat = convex(n);
            let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
                .collect::<Result<_, _>>()
                .unwrap();
            let mut interior_seen = 0u32;
            for &edges in &census {
                for p in 0..cat.n() {
                    let v = Ving::new(p, edges);
                    if !is_x_ving(&cat, &v, GraphClass::Plane) || v.degree(&cat) < 4 {
                        continue;
                    }
                    match reduce_to_x3(&cat, &v) {
                        Ok(red) => {
                            if red.p_inside {
                                interior_seen += 1;
                            }
                            assert_eq!(red.result.degree(&cat), 3);
                            assert!(is_x_ving(&cat, &red.result, GraphClass::Plane));
                            let t = red.triangle;
                            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                                assert!(red.result.edges.contains(cat.seg_id(a, b)));
                            }
                            // follow through to the x4 step
                            let x4 = reduce_to_x4(&cat, &red.result, &v);
                            if red.p_inside {
                                let x4 = x4.unwrap();
                                assert_eq!(x4.degree(&cat), 4);
                                assert!(is_x_ving(&cat, &x4, GraphClass::Plane));
                            } else if let Ok(x4) = x4 {
                                assert_eq!(x4.degree(&cat), 4);
                                assert!(is_x_ving(&cat, &x4, GraphClass::Plane));
                            }
                        }
                        Err(VingError::NoReduction) => {
                            // only hull-type vings may be irreducible
                            let ring = angular_order(p, &v.neighbors(&cat), cat.points());
                            assert!(!vertex_inside_ring(&cat, p, &ring));
                        }
                        Err(e) => panic!("unexpected reduction error: {e}"),
                    }
                }
            }
            assert!(interior_seen == 0 || n >= 5);
        }
    }

    #[test]
    fn hull_configuration_without_any_x3_reduction() {
        // A hull-type degree-4 x-ving for which no neighbor triple blocks the
        // remaining neighbor: every candidate triangle leaves some vertex
        // visible, so the reduction must report NoReduction.
        let cat = catalog(&[(0, 0), (-64, 77), (-2, 10), (2, 10), (64, 77)]);
        let p = 0;
        let mut edges = SegSet::EMPTY;
        for q in 1..5 {
            edges.insert(cat.seg_id(p, q));
        }
        let v = Ving::new(p, edges);
        assert!(is_x_ving(&cat, &v, GraphClass::Plane));
        assert_eq!(v.degree(&cat), 4);
        let ring = angular_order(p, &v.neighbors(&cat), cat.points());
        assert!(!vertex_inside_ring(&cat, p, &ring));
        assert!(matches!(reduce_to_x3(&cat, &v), Err(VingError::NoReduction)));
    }

    #[test]
    fn x4_predecessors_exhaustive_bound() {
        for n in 5..=6 {
            let cat = convex(n);
            let census: Vec<SegSet> = enumerate_plane(&cat, CensusFilter::NONE, DEFAULT_BUDGET)
                .collect::<Result<_, _>>()
                .unwrap();
            for &edges in &census {
                for p in 0..cat.n() {
                    let v = Ving::new(p, edges);
                    if is_x_ving(&cat, &v, GraphClass::Plane) && v.degree(&cat) == 4 {
                        let preds = x4_predecessors(&cat, &v).unwrap();
                        assert!(preds.len() <= 8);
                        for u in &preds {
                            assert_eq!(u.degree(&cat), 3);
                            assert!(is_x_ving(&cat, u, GraphClass::Plane));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn qp_modes_complete_consistently() {
        use crate::census::{enumerate_qp, GeoGraph};
        let cat = convex(5);
        for k in [3u8, 4] {
            let census: Vec<SegSet> =
                enumerate_qp(&cat, k, CensusFilter::NONE, DEFAULT_BUDGET)
                    .unwrap()
                    .collect::<Result<_, _>>()
                    .unwrap();
            for &edges in &census {
                for p in 0..cat.n() {
                    let v = Ving::new(p, edges);
                    let x = x_completion(&cat, &v, GraphClass::Qp(k));
                    // the completed graph stays in class
                    let g = GeoGraph {
                        catalog: &cat,
                        edges: x.edges,
                    };
                    assert!(g.is_k_quasi_plane(k));
                    assert!(is_x_ving(&cat, &x, GraphClass::Qp(k)));
                    assert_eq!(x_completion(&cat, &x, GraphClass::Qp(k)), x);
                }
            }
        }
    }
}
