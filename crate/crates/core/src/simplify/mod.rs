//! Polyline simplification.
//!
//! Three algorithms share one result type:
//!
//! * [`simplify_ht`] classifies recursive vertex measures with head/tail breaks
//!   and keeps the upper levels,
//! * [`simplify_dp`] is the Douglas-Peucker top-down splitter,
//! * [`simplify_vw`] and [`simplify_vw_count`] eliminate the smallest
//!   effective areas bottom-up (Visvalingam-Whyatt).
//!
//! Ties are broken towards the lowest vertex index everywhere.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{GeometryError, Polyline};
use crate::scaling::ScalingError;

mod assess;
mod crossings;
mod dp;
mod ht;
mod measure;
mod vw;

pub use assess::{assess_scaling_retention, assess_values, ScalingReport, ScalingSummary};
pub use crossings::{
    detect_self_intersections, detect_self_intersections_naive, repair_crossings, Crossing,
};
pub use dp::{dp_tolerance_for_budget, simplify_dp};
pub use ht::{ht_level_for_budget, simplify_ht, simplify_ht_with};
pub use measure::{measure_tree, measure_tree_with, MeasureOptions, MeasureTree, Split};
pub use vw::{simplify_vw, simplify_vw_count, vw_elimination_order, Elimination};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplifyError {
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("chord ({0}, {1}) is degenerate; x/d is undefined")]
    RatioUndefined(usize, usize),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),
    #[error("target count {target} outside 2..={len}")]
    TargetOutOfRange { target: usize, len: usize },
    #[error("keep level must be at least 1")]
    InvalidKeepLevel,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Scaling(#[from] ScalingError),
}

/// Geometric quantity assigned to each interior vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MeasureKind {
    /// Distance `x` of the vertex from the chord of its span.
    #[default]
    PerpDistance,
    /// `x / d`, with `d` the chord length.
    Ratio,
    /// `d * x / 2`.
    TriangleArea,
    /// Local deviation from straight continuation, in degrees.
    TurnAngle,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::PerpDistance,
        MeasureKind::Ratio,
        MeasureKind::TriangleArea,
        MeasureKind::TurnAngle,
    ];

    /// Whether values come from recursive chord splitting.
    pub fn is_recursive(self) -> bool {
        !matches!(self, MeasureKind::TurnAngle)
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::PerpDistance => "x",
            MeasureKind::Ratio => "ratio",
            MeasureKind::TriangleArea => "area",
            MeasureKind::TurnAngle => "angle",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "distance" | "perp" | "perp_distance" => Ok(MeasureKind::PerpDistance),
            "ratio" | "x/d" => Ok(MeasureKind::Ratio),
            "area" | "triangle_area" | "d*x/2" => Ok(MeasureKind::TriangleArea),
            "angle" | "alpha" | "turn_angle" => Ok(MeasureKind::TurnAngle),
            other => Err(format!(
                "unknown measure '{other}' (expected x, ratio, area or angle)"
            )),
        }
    }
}

/// Which algorithm produced a result, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    HeadTail {
        kind: MeasureKind,
        keep_level: usize,
        head_limit: f64,
    },
    DouglasPeucker {
        tolerance: f64,
    },
    VisvalingamArea {
        min_area: f64,
    },
    VisvalingamCount {
        target: usize,
    },
}

impl Algorithm {
    pub fn short_name(&self) -> &'static str {
        match self {
            Algorithm::HeadTail { .. } => "ht",
            Algorithm::DouglasPeucker { .. } => "dp",
            Algorithm::VisvalingamArea { .. } | Algorithm::VisvalingamCount { .. } => "vw",
        }
    }

    /// Measure used to rank candidate vertices during crossing repair.
    pub fn repair_measure(&self) -> MeasureKind {
        match self {
            Algorithm::HeadTail { kind, .. } if kind.is_recursive() => *kind,
            _ => MeasureKind::PerpDistance,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::HeadTail {
                kind,
                keep_level,
                head_limit,
            } => write!(
                f,
                "ht(measure={kind},level={keep_level},head_limit={head_limit})"
            ),
            Algorithm::DouglasPeucker { tolerance } => write!(f, "dp(tolerance={tolerance})"),
            Algorithm::VisvalingamArea { min_area } => write!(f, "vw(min_area={min_area})"),
            Algorithm::VisvalingamCount { target } => write!(f, "vw(count={target})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplificationResult {
    /// Retained vertex indices into the original line, strictly increasing,
    /// always including both endpoints.
    pub retained: Vec<usize>,
    /// Head/tail level per original vertex; all zero for DP and VW.
    pub levels: Vec<usize>,
    pub algorithm: Algorithm,
    /// Vertices added back by [`repair_crossings`], in insertion order.
    pub reinserted: Vec<usize>,
    /// Set when crossing repair ran out of candidates.
    pub residual_crossings: bool,
}

impl SimplificationResult {
    pub(crate) fn new(retained: Vec<usize>, levels: Vec<usize>, algorithm: Algorithm) -> Self {
        SimplificationResult {
            retained,
            levels,
            algorithm,
            reinserted: Vec::new(),
            residual_crossings: false,
        }
    }

    pub fn retained_count(&self) -> usize {
        self.retained.len()
    }

    /// The simplified polyline.
    ///
    /// Fails only when the retained vertices collapse to a single point, as
    /// happens when a closed ring keeps just its endpoints.
    pub fn apply(&self, original: &Polyline) -> Result<Polyline, GeometryError> {
        original.select(&self.retained)
    }
}

pub(crate) fn require_vertices(line: &Polyline, needed: usize) -> Result<(), SimplifyError> {
    if line.len() < needed {
        return Err(SimplifyError::TooFewVertices {
            needed,
            got: line.len(),
        });
    }
    Ok(())
}
