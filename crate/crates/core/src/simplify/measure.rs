use crate::geometry::{epsilon, perpendicular_distance, turn_angle, Polyline};

use super::{require_vertices, MeasureKind, SimplifyError};

/// One step of the recursive chord splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    /// Span endpoints (vertex indices); the chord runs between them.
    pub start: usize,
    pub end: usize,
    /// Interior vertex farthest from the chord.
    pub vertex: usize,
    /// Chord length `d`.
    pub chord_length: f64,
    /// Perpendicular distance `x` of `vertex` from the chord.
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeasureOptions {
    /// Cap each value at the value of the split that created its span, so
    /// values never grow going down the hierarchy.
    pub clamp_monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTree {
    pub kind: MeasureKind,
    /// One value per vertex; `None` for the two endpoints.
    pub values: Vec<Option<f64>>,
    /// Splits in pre-order (parent before its left then right sub-span).
    /// Empty for [`MeasureKind::TurnAngle`].
    pub splits: Vec<Split>,
}

impl MeasureTree {
    /// Values of the interior vertices, in vertex order.
    pub fn interior_values(&self) -> Vec<f64> {
        self.values.iter().filter_map(|v| *v).collect()
    }

    pub fn value(&self, vertex: usize) -> Option<f64> {
        self.values.get(vertex).copied().flatten()
    }
}

/// Assigns a measure to every interior vertex of `line`.
pub fn measure_tree(line: &Polyline, kind: MeasureKind) -> Result<MeasureTree, SimplifyError> {
    measure_tree_with(line, kind, MeasureOptions::default())
}

/// Recursive kinds split span `(i, j)` at the interior vertex with the
/// largest distance `x` to chord `(i, j)` (lowest index on ties), record the
/// measure for that vertex, and continue into `(i, k)` and `(k, j)`.
pub fn measure_tree_with(
    line: &Polyline,
    kind: MeasureKind,
    options: MeasureOptions,
) -> Result<MeasureTree, SimplifyError> {
    require_vertices(line, 3)?;
    let pts = line.vertices();
    let n = pts.len();
    let mut values = vec![None; n];

    if kind == MeasureKind::TurnAngle {
        for k in 1..n - 1 {
            values[k] = Some(turn_angle(pts[k - 1], pts[k], pts[k + 1])?);
        }
        return Ok(MeasureTree {
            kind,
            values,
            splits: Vec::new(),
        });
    }

    let eps = epsilon();
    let mut splits = Vec::with_capacity(n - 2);
    let mut stack = vec![(0usize, n - 1, f64::INFINITY)];
    while let Some((i, j, cap)) = stack.pop() {
        if j <= i + 1 {
            continue;
        }
        let (a, b) = (pts[i], pts[j]);
        let mut best = i + 1;
        let mut best_x = perpendicular_distance(pts[best], a, b);
        for (k, &p) in pts.iter().enumerate().take(j).skip(i + 2) {
            let x = perpendicular_distance(p, a, b);
            if x > best_x {
                best = k;
                best_x = x;
            }
        }
        let d = a.distance(b);
        let raw = match kind {
            MeasureKind::PerpDistance => best_x,
            MeasureKind::Ratio => {
                if d < eps {
                    return Err(SimplifyError::RatioUndefined(i, j));
                }
                best_x / d
            }
            MeasureKind::TriangleArea => d * best_x / 2.0,
            MeasureKind::TurnAngle => unreachable!(),
        };
        let value = if options.clamp_monotone {
            raw.min(cap)
        } else {
            raw
        };
        values[best] = Some(value);
        splits.push(Split {
            start: i,
            end: j,
            vertex: best,
            chord_length: d,
            distance: best_x,
        });
        // right pushed first so the left span is processed next
        stack.push((best, j, value));
        stack.push((i, best, value));
    }
    Ok(MeasureTree {
        kind,
        values,
        splits,
    })
}
