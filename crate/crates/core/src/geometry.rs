//! Planar primitives shared by every algorithm in the crate.
//!
//! Coordinates are plain `f64` map units. Coincidence and degeneracy tests use
//! a single library-wide tolerance, see [`epsilon`] and [`set_epsilon`].

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

/// Default coincidence tolerance in map units.
pub const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current coincidence tolerance.
pub fn epsilon() -> f64 {
    f64::from_bits(EPSILON_BITS.load(Ordering::Relaxed))
}

/// Replaces the library-wide coincidence tolerance.
///
/// Non-finite or negative values are ignored.
pub fn set_epsilon(eps: f64) {
    if eps.is_finite() && eps >= 0.0 {
        EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("coordinate is not finite: ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("polyline needs at least 2 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex coincides with a neighbour; turn angle is undefined")]
    DegenerateVertex,
    #[error("segments overlap along a collinear stretch")]
    CollinearOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeometryError::NonFinite(x, y))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub(crate) fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub(crate) fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub(crate) fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub(crate) fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: Point, b: Point) -> f64 {
    a.x * b.x + a.y * b.y
}

/// An ordered vertex sequence with at least two vertices and no consecutive
/// near-duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    /// Validates and normalizes a vertex list.
    ///
    /// Consecutive vertices closer than [`epsilon`] are collapsed to the first
    /// of the run; the result must still have two vertices.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite(p.x, p.y));
        }
        let eps = epsilon();
        let mut out: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            match out.last() {
                Some(last) if last.distance(p) < eps => {}
                _ => out.push(p),
            }
        }
        if out.len() < 2 {
            return Err(GeometryError::TooFewVertices(out.len()));
        }
        Ok(Polyline { vertices: out })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; a polyline holds at least two vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    /// The sub-polyline made of the given vertex indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Polyline, GeometryError> {
        Polyline::new(indices.iter().map(|&i| self.vertices[i]).collect())
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }
}

/// Distance from `p` to the infinite line through the chord.
///
/// A chord shorter than [`epsilon`] degrades to the Euclidean distance to
/// `chord_a`.
pub fn perpendicular_distance(p: Point, chord_a: Point, chord_b: Point) -> f64 {
    let d = chord_b.sub(chord_a);
    let len = d.norm();
    if len < epsilon() {
        return p.distance(chord_a);
    }
    cross(d, p.sub(chord_a)).abs() / len
}

/// Unsigned area of the triangle `abc`.
pub fn triangle_area(a: Point, b: Point, c: Point) -> f64 {
    cross(b.sub(a), c.sub(a)).abs() / 2.0
}

/// Deviation from straight continuation at `b`, in degrees within `[0, 180]`.
pub fn turn_angle(a: Point, b: Point, c: Point) -> Result<f64, GeometryError> {
    let u = b.sub(a);
    let v = c.sub(b);
    let eps = epsilon();
    if u.norm() < eps || v.norm() < eps {
        return Err(GeometryError::DegenerateVertex);
    }
    Ok(cross(u, v).atan2(dot(u, v)).abs().to_degrees())
}

/// Interior crossing point of two closed segments.
///
/// Touching at an endpoint (including T-shaped contact) is not a crossing.
/// Collinear segments that share more than a single point yield
/// [`GeometryError::CollinearOverlap`].
pub fn segments_intersect(s1: Segment, s2: Segment) -> Result<Option<Point>, GeometryError> {
    let eps = epsilon();
    let r = s1.b.sub(s1.a);
    let s = s2.b.sub(s2.a);
    let qp = s2.a.sub(s1.a);
    let r_len = r.norm();
    let s_len = s.norm();
    if r_len < eps || s_len < eps {
        return Ok(None);
    }
    let denom = cross(r, s);
    // Sine of the angle between the segments.
    if (denom / (r_len * s_len)).abs() < 1e-12 {
        // Parallel: collinear if s2.a lies on the line of s1.
        if cross(r, qp).abs() / r_len >= eps {
            return Ok(None);
        }
        let t0 = dot(qp, r) / (r_len * r_len);
        let t1 = dot(s2.b.sub(s1.a), r) / (r_len * r_len);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let overlap = (hi.min(1.0) - lo.max(0.0)) * r_len;
        if overlap > eps {
            return Err(GeometryError::CollinearOverlap);
        }
        return Ok(None);
    }
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    let t_tol = eps / r_len;
    let u_tol = eps / s_len;
    if t > t_tol && t < 1.0 - t_tol && u > u_tol && u < 1.0 - u_tol {
        Ok(Some(s1.a.add(r.scale(t))))
    } else {
        Ok(None)
    }
}

/// Sum of segment lengths.
pub fn polyline_length(line: &Polyline) -> f64 {
    line.segments().map(|s| s.length()).sum()
}
