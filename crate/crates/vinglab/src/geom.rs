//! Exact integer geometric predicates.
//!
//! Everything here is computed with exact integer arithmetic; coordinates are
//! capped at `|x|, |y| <= 2^20` so that every 3x3 orientation determinant fits
//! comfortably in an `i64`. There is no floating-point fallback and degenerate
//! inputs (duplicate points, collinear triples) are rejected at ingestion, not
//! perturbed.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Coordinate cap that keeps orientation determinants exactly representable.
pub const COORD_BOUND: i64 = 1 << 20;

/// A labeled point with exact integer coordinates. The label is the point's
/// index inside its owning [`PointSet`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Point {
        Point { x, y }
    }

    pub fn in_bounds(&self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GeomError {
    #[error("point {0} has a coordinate outside +/-2^20")]
    CoordOutOfRange(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("point lies in no triangle of the triangulation")]
    NotInside,
}

/// Sign of the determinant of `(q - p, r - p)`.
///
/// `+1` means `p, q, r` make a counterclockwise turn, `-1` clockwise,
/// `0` collinear. Exact: with the coordinate cap the products stay below
/// 2^43, far inside `i64`.
#[inline]
pub fn orient(p: Point, q: Point, r: Point) -> i32 {
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    match det.cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// True iff `p` lies on the closed segment `ab` (requires collinearity).
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True iff `p` lies strictly inside triangle `abc` (any vertex order).
pub fn point_in_triangle_strict(p: Point, a: Point, b: Point, c: Point) -> bool {
    let o1 = orient(a, b, p);
    let o2 = orient(b, c, p);
    let o3 = orient(c, a, p);
    o1 != 0 && o1 == o2 && o2 == o3
}

/// True iff `p` lies on the boundary of triangle `abc`.
pub fn point_on_triangle_boundary(p: Point, a: Point, b: Point, c: Point) -> bool {
    on_segment(p, a, b) || on_segment(p, b, c) || on_segment(p, c, a)
}

/// An undirected candidate edge, stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
}

impl Segment {
    pub fn new(a: usize, b: usize) -> Segment {
        assert_ne!(a, b, "segment endpoints must differ");
        if a < b {
            Segment { a, b }
        } else {
            Segment { a: b, b: a }
        }
    }

    pub fn shares_endpoint(&self, other: &Segment) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// A labeled point set in general position.
///
/// Construction validates the invariants (bounded coordinates, pairwise
/// distinct, no three collinear); an invalid set is rejected, never repaired.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<PointSet, GeomError> {
        if let Some(err) = general_position_violation(&points) {
            return Err(err);
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The set with point `q` deleted; labels above `q` shift down by one.
    pub fn remove(&self, q: usize) -> PointSet {
        let mut points = self.points.clone();
        points.remove(q);
        PointSet { points }
    }
}

/// Detailed general-position check; `None` means the set is valid.
pub fn general_position_violation(points: &[Point]) -> Option<GeomError> {
    for (i, p) in points.iter().enumerate() {
        if !p.in_bounds() {
            return Some(GeomError::CoordOutOfRange(i));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Some(GeomError::DuplicatePoint(i, j));
            }
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if orient(points[i], points[j], points[k]) == 0 {
                    return Some(GeomError::CollinearTriple(i, j, k));
                }
            }
        }
    }
    None
}

/// True iff all points are distinct and every triple has nonzero orientation.
pub fn validate_general_position(points: &[Point]) -> bool {
    general_position_violation(points).is_none()
}

/// True iff the open segments `s1` and `s2` intersect.
///
/// Segments sharing an endpoint never properly cross. Under general position
/// no endpoint lies in the other segment's relative interior, so the strict
/// orientation test below is exact.
pub fn proper_cross(s1: Segment, s2: Segment, ps: &PointSet) -> bool {
    if s1.shares_endpoint(&s2) {
        return false;
    }
    let a = ps.point(s1.a);
    let b = ps.point(s1.b);
    let c = ps.point(s2.a);
    let d = ps.point(s2.b);
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

/// True iff vertex `p` sees vertex `q` across the given edges: the straight
/// segment `pq` properly crosses none of them. Edges incident to `p` or `q`
/// share an endpoint with `pq` and can never block.
pub fn sees<I>(p: usize, q: usize, edges: I, ps: &PointSet) -> bool
where
    I: IntoIterator<Item = Segment>,
{
    let pq = Segment::new(p, q);
    edges.into_iter().all(|e| !proper_cross(pq, e, ps))
}

// Angular comparison around an origin by half-plane split plus cross product;
// no transcendental functions. Half 0 is the open upper half-plane together
// with the positive x-axis, half 1 the rest.
fn half_plane(origin: Point, a: Point) -> u8 {
    if a.y > origin.y || (a.y == origin.y && a.x > origin.x) {
        0
    } else {
        1
    }
}

/// Compare directions `origin->a` and `origin->b` counterclockwise starting
/// from the positive x-axis.
pub fn compare_ccw(origin: Point, a: Point, b: Point) -> Ordering {
    let (ha, hb) = (half_plane(origin, a), half_plane(origin, b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    match orient(origin, a, b) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Vertices of `targets` in counterclockwise cyclic order around point `p`,
/// rotated so the smallest label comes first.
///
/// Under general position no two targets are angularly equal, so the order is
/// a strict cycle.
pub fn angular_order(p: usize, targets: &[usize], ps: &PointSet) -> Vec<usize> {
    debug_assert!(!targets.contains(&p));
    let origin = ps.point(p);
    let mut v: Vec<usize> = targets.to_vec();
    v.sort_unstable();
    v.sort_by(|&i, &j| compare_ccw(origin, ps.point(i), ps.point(j)));
    if let Some(pos) = v
        .iter()
        .enumerate()
        .min_by_key(|&(_, &label)| label)
        .map(|(pos, _)| pos)
    {
        v.rotate_left(pos);
    }
    v
}

/// The unique triangle of `tris` whose closed interior contains point `p`.
///
/// Under general position a vertex of the owning set is never on a triangle
/// boundary, so closed and open containment coincide. Returns
/// [`GeomError::NotInside`] when no triangle contains `p`, which signals an
/// upstream reduction bug.
pub fn triangle_containing(
    p: usize,
    tris: &[[usize; 3]],
    ps: &PointSet,
) -> Result<[usize; 3], GeomError> {
    let pt = ps.point(p);
    for t in tris {
        let (a, b, c) = (ps.point(t[0]), ps.point(t[1]), ps.point(t[2]));
        if point_in_triangle_strict(pt, a, b, c) || point_on_triangle_boundary(pt, a, b, c) {
            return Ok(*t);
        }
    }
    Err(GeomError::NotInside)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn orient_examples() {
        let a = Point::new(0, 0);
        assert_eq!(orient(a, Point::new(1, 0), Point::new(0, 1)), 1);
        assert_eq!(orient(a, Point::new(1, 1), Point::new(2, 2)), 0);
        assert_eq!(orient(a, Point::new(0, 1), Point::new(1, 0)), -1);
    }

    #[test]
    fn orient_antisymmetry_and_cyclic_shift() {
        let pts = [
            Point::new(3, 7),
            Point::new(-2, 5),
            Point::new(11, -4),
            Point::new(0, 0),
        ];
        for &p in &pts {
            for &q in &pts {
                for &r in &pts {
                    assert_eq!(orient(p, q, r), -orient(p, r, q));
                    assert_eq!(orient(p, q, r), orient(q, r, p));
                }
            }
        }
    }

    #[test]
    fn validate_general_position_examples() {
        assert!(validate_general_position(&[
            Point::new(0, 0),
            Point::new(1, 0),
            Point::new(0, 1)
        ]));
        assert!(!validate_general_position(&[
            Point::new(0, 0),
            Point::new(1, 0),
            Point::new(2, 0)
        ]));
        assert!(!validate_general_position(&[
            Point::new(0, 0),
            Point::new(0, 0),
            Point::new(1, 1)
        ]));
        assert_eq!(
            general_position_violation(&[Point::new(COORD_BOUND + 1, 0)]),
            Some(GeomError::CoordOutOfRange(0))
        );
    }

    #[test]
    fn proper_cross_examples() {
        // unit square, then two far-apart horizontals
        let s = ps(&[(0, 0), (1, 1), (1, 0), (0, 1), (50, 40), (60, 40)]);
        assert!(proper_cross(Segment::new(0, 1), Segment::new(2, 3), &s));
        assert!(!proper_cross(Segment::new(0, 1), Segment::new(0, 2), &s));
        assert!(!proper_cross(Segment::new(0, 2), Segment::new(4, 5), &s));
        // symmetry over all pairs
        for a in 0..6 {
            for b in a + 1..6 {
                for c in 0..6 {
                    for d in c + 1..6 {
                        let s1 = Segment::new(a, b);
                        let s2 = Segment::new(c, d);
                        assert_eq!(proper_cross(s1, s2, &s), proper_cross(s2, s1, &s));
                    }
                }
            }
        }
    }

    #[test]
    fn sees_empty_graph_and_square() {
        let sq = ps(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        // empty graph: everyone sees everyone
        for p in 0..4 {
            for q in 0..4 {
                if p != q {
                    assert!(sees(p, q, Vec::new(), &sq));
                }
            }
        }
        // diagonal 0-2 present blocks 1 from 3
        assert!(!sees(1, 3, vec![Segment::new(0, 2)], &sq));
        // a single side does not block the other diagonal
        assert!(sees(1, 3, vec![Segment::new(0, 1)], &sq));
    }

    #[test]
    fn sees_monotone_under_edge_insertion() {
        let s = ps(&[(0, 0), (10, 1), (7, 9), (-3, 8), (2, 4)]);
        let all: Vec<Segment> = (0..5)
            .flat_map(|a| ((a + 1)..5).map(move |b| Segment::new(a, b)))
            .collect();
        // adding one more edge never creates visibility
        for p in 0..5 {
            for q in 0..5 {
                if p == q {
                    continue;
                }
                for k in 0..all.len() {
                    let base: Vec<Segment> = all[..k].to_vec();
                    let mut bigger = base.clone();
                    bigger.push(all[k]);
                    let before = sees(p, q, base, &s);
                    let after = sees(p, q, bigger, &s);
                    assert!(before || !after);
                }
            }
        }
    }

    #[test]
    fn angular_order_examples() {
        // quadrant walk: right, up, left (collinear-free stand-ins for the
        // unit directions, since opposite axis points would break general
        // position of the owning set)
        let s = ps(&[(0, 0), (5, 1), (1, 5), (-5, 1)]);
        assert_eq!(angular_order(0, &[1, 2, 3], &s), vec![1, 2, 3]);

        // skewed square corners, counterclockwise cycle
        let sq = ps(&[(0, 0), (3, 2), (-3, 3), (-1, -3), (2, -3)]);
        assert_eq!(angular_order(0, &[1, 2, 3, 4], &sq), vec![1, 2, 3, 4]);
    }

    #[test]
    fn angular_order_matches_float_oracle() {
        // deterministic pseudo-random star around p; exact comparator must
        // agree with plain atan2 sorting on tie-free input
        let coords = [(13, 5), (-7, 11), (-12, -3), (4, -9), (9, 14), (-2, -14)];
        let mut all = vec![(0i64, 0i64)];
        all.extend_from_slice(&coords);
        let s = ps(&all);
        let targets: Vec<usize> = (1..=6).collect();
        let got = angular_order(0, &targets, &s);

        let mut oracle: Vec<usize> = targets.clone();
        oracle.sort_by(|&i, &j| {
            let ai = (s.point(i).y as f64)
                .atan2(s.point(i).x as f64)
                .rem_euclid(std::f64::consts::TAU);
            let aj = (s.point(j).y as f64)
                .atan2(s.point(j).x as f64)
                .rem_euclid(std::f64::consts::TAU);
            ai.partial_cmp(&aj).unwrap()
        });
        let min = *oracle.iter().min().unwrap();
        let pos = oracle.iter().position(|&v| v == min).unwrap();
        oracle.rotate_left(pos);
        assert_eq!(got, oracle);
    }

    #[test]
    fn triangle_containing_examples() {
        // single triangle containing an interior point
        let s = ps(&[(0, 0), (9, 0), (0, 9), (3, 3)]);
        assert_eq!(triangle_containing(3, &[[0, 1, 2]], &s).unwrap(), [0, 1, 2]);

        // square fanned from corner 0; point near the far corner
        let sq = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (8, 9)]);
        let fan = [[0, 1, 2], [0, 2, 3]];
        assert_eq!(triangle_containing(4, &fan, &sq).unwrap(), [0, 2, 3]);

        // point outside the polygon
        let out = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (31, 29)]);
        assert_eq!(triangle_containing(4, &fan, &out), Err(GeomError::NotInside));
    }

    #[test]
    fn orient_never_zero_on_valid_sets() {
        let s = ps(&[(0, 0), (10, 1), (7, 9), (-3, 8), (2, 4)]);
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    if i != j && j != k && i != k {
                        assert_ne!(orient(s.point(i), s.point(j), s.point(k)), 0);
                    }
                }
            }
        }
    }
}
