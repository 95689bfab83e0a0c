//! Line simplification driven by the scaling hierarchy of a curve.
//!
//! The crate measures every interior vertex of a polyline through recursive
//! chord splitting, classifies the measures with head/tail breaks, and keeps
//! the vertices in the upper levels. Douglas-Peucker and Visvalingam-Whyatt
//! are provided alongside, together with an exact Koch curve generator whose
//! triangle hierarchy is known in closed form.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod geometry;
pub mod io;
pub mod koch;
pub mod scaling;
pub mod simplify;

pub use geometry::{Point, Polyline, Segment};
pub use koch::{koch_curve, koch_drop_levels, triangle_inventory, KochSpec, TriangleInventory};
pub use scaling::{head_tail_breaks, ht_index, rank_size, HeadTailClassification, RankSize};
pub use simplify::{MeasureKind, SimplificationResult};
