use crate::geometry::Polyline;
use crate::scaling::{head_tail_breaks, rank_size, RankSize, DEFAULT_HEAD_LIMIT};

use super::measure::measure_tree;
use super::{MeasureKind, SimplifyError};

/// Head/tail statistics of one value set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSummary {
    pub ht_index: usize,
    pub means: Vec<f64>,
    pub head_fractions: Vec<f64>,
    pub rank_size: RankSize,
}

impl ScalingSummary {
    pub fn of(values: &[f64], head_limit: f64) -> Result<Self, SimplifyError> {
        let classes = head_tail_breaks(values, head_limit)?;
        Ok(ScalingSummary {
            ht_index: classes.ht_index,
            means: classes.means,
            head_fractions: classes.head_fractions,
            rank_size: rank_size(values)?,
        })
    }
}

/// Before/after comparison of the scaling hierarchy.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    /// `None` when the report was built from raw value sets.
    pub kind: Option<MeasureKind>,
    pub before: ScalingSummary,
    pub after: ScalingSummary,
}

impl ScalingReport {
    pub fn ht_before(&self) -> usize {
        self.before.ht_index
    }

    pub fn ht_after(&self) -> usize {
        self.after.ht_index
    }

    /// True when every split of the simplified values still has a minority
    /// head.
    pub fn heads_remain_minorities(&self) -> bool {
        self.after.head_fractions.iter().all(|&f| f < 0.5)
    }
}

/// Compares two raw value sets, such as triangle inventories.
pub fn assess_values(
    before: &[f64],
    after: &[f64],
    head_limit: f64,
) -> Result<ScalingReport, SimplifyError> {
    Ok(ScalingReport {
        kind: None,
        before: ScalingSummary::of(before, head_limit)?,
        after: ScalingSummary::of(after, head_limit)?,
    })
}

/// Measures both lines with `kind` and compares their head/tail statistics
/// under the default head limit.
pub fn assess_scaling_retention(
    original: &Polyline,
    simplified: &Polyline,
    kind: MeasureKind,
) -> Result<ScalingReport, SimplifyError> {
    let before = measure_tree(original, kind)?.interior_values();
    let after = measure_tree(simplified, kind)?.interior_values();
    let mut report = assess_values(&before, &after, DEFAULT_HEAD_LIMIT)?;
    report.kind = Some(kind);
    Ok(report)
}
