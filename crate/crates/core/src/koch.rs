//! Koch curve construction and triangle bookkeeping.
//!
//! Every iteration rewrites each segment `p -> q` into four segments through
//! the two division points `p + ratio * (q - p)`, `q - ratio * (q - p)` and an
//! apex raised on the left of the segment. With the default parameters the
//! apex forms an equilateral triangle whose side is one third of the parent.

use thiserror::Error;

use crate::geometry::{Point, Polyline};

/// Largest vertex count [`koch_curve`] builds unless told otherwise.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KochError {
    #[error("ratio must lie in (0, 0.5], got {0}")]
    InvalidRatio(f64),
    #[error("height factor must be positive and finite, got {0}")]
    InvalidHeightFactor(f64),
    #[error("{iterations} iterations need more than {budget} vertices")]
    IterationTooLarge { iterations: u32, budget: usize },
    #[error("cannot drop {k} levels from a curve of {n} iterations")]
    LevelOutOfRange { n: u32, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KochSpec {
    pub iterations: u32,
    /// Length of the first and last child segment relative to the parent.
    pub ratio: f64,
    /// Apex height relative to an equilateral apex of side `ratio * parent`.
    pub height_factor: f64,
}

impl Default for KochSpec {
    fn default() -> Self {
        KochSpec {
            iterations: 0,
            ratio: 1.0 / 3.0,
            height_factor: 1.0,
        }
    }
}

impl KochSpec {
    pub fn new(iterations: u32) -> Self {
        KochSpec {
            iterations,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), KochError> {
        if !(self.ratio > 0.0 && self.ratio <= 0.5) {
            return Err(KochError::InvalidRatio(self.ratio));
        }
        if !(self.height_factor > 0.0 && self.height_factor.is_finite()) {
            return Err(KochError::InvalidHeightFactor(self.height_factor));
        }
        Ok(())
    }

    /// `4^n + 1`, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<usize> {
        4usize
            .checked_pow(self.iterations)
            .and_then(|v| v.checked_add(1))
    }
}

/// Builds the Koch curve from `(0, 0)` to `(1, 0)` with the default vertex budget.
pub fn koch_curve(spec: &KochSpec) -> Result<Polyline, KochError> {
    koch_curve_with_budget(spec, DEFAULT_VERTEX_BUDGET)
}

pub fn koch_curve_with_budget(spec: &KochSpec, budget: usize) -> Result<Polyline, KochError> {
    spec.validate()?;
    match spec.vertex_count() {
        Some(count) if count <= budget => {}
        _ => {
            return Err(KochError::IterationTooLarge {
                iterations: spec.iterations,
                budget,
            })
        }
    }
    let vertices = koch_vertices(spec);
    // Steep generators can fold vertices onto each other; normalization keeps
    // the polyline invariant in that case.
    Ok(Polyline::new(vertices).expect("Koch vertices are finite and span (0,0)-(1,0)"))
}

fn koch_vertices(spec: &KochSpec) -> Vec<Point> {
    let apex_height = spec.height_factor * spec.ratio * 3f64.sqrt() / 2.0;
    let mut points = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
    for _ in 0..spec.iterations {
        let mut next = Vec::with_capacity(points.len() * 4 - 3);
        for w in points.windows(2) {
            let (p, q) = (w[0], w[1]);
            let d = q.sub(p);
            // left normal of the parent segment, same length as the parent
            let normal = Point::new(-d.y, d.x);
            next.push(p);
            next.push(p.add(d.scale(spec.ratio)));
            next.push(p.add(d.scale(0.5)).add(normal.scale(apex_height)));
            next.push(q.sub(d.scale(spec.ratio)));
        }
        next.push(*points.last().unwrap());
        points = next;
    }
    points
}

/// One row of a [`TriangleInventory`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleScale {
    /// Triangle side length.
    pub scale: f64,
    pub count: u64,
    /// 1 for the largest triangles.
    pub level: u32,
}

/// Triangles of a default Koch curve grouped by size, largest first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleInventory {
    pub entries: Vec<TriangleScale>,
}

impl TriangleInventory {
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// One size value per triangle, in descending order.
    pub fn sizes(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.scale, e.count as usize))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Triangle counts of the default Koch curve after `n` iterations:
/// `4^(k-1)` triangles of side `3^-k` for `k = 1..=n`.
pub fn triangle_inventory(n: u32) -> TriangleInventory {
    let entries = (1..=n)
        .map(|k| TriangleScale {
            scale: 3f64.powi(-(k as i32)),
            count: 4u64.pow(k - 1),
            level: k,
        })
        .collect();
    TriangleInventory { entries }
}

/// Removes the triangles of the `k` smallest sizes from the default curve of
/// `n` iterations.
///
/// Each removed triangle takes its two division points and its apex with it,
/// so the surviving vertices are exactly those of `koch_curve(n - k)`: vertex
/// `j` of iteration `n` was introduced no later than iteration `n - k`
/// precisely when `4^k` divides `j`.
pub fn koch_drop_levels(n: u32, k: u32) -> Result<Polyline, KochError> {
    if k > n {
        return Err(KochError::LevelOutOfRange { n, k });
    }
    let full = koch_curve(&KochSpec::new(n))?;
    let stride = 4usize.pow(k);
    let kept = full
        .into_vertices()
        .into_iter()
        .step_by(stride)
        .collect::<Vec<_>>();
    Ok(Polyline::new(kept).expect("subset of a valid Koch curve"))
}
