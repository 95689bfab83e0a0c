use crate::geometry::{epsilon, Polyline};
use crate::scaling::head_tail_breaks;

use super::measure::{measure_tree_with, MeasureOptions};
use super::{Algorithm, MeasureKind, SimplificationResult, SimplifyError};

/// Keeps the endpoints plus every vertex whose head/tail level is at least
/// `keep_level`.
///
/// Level 1 is the whole line. A `keep_level` above the ht-index keeps the top
/// level only. From level 2 upward, vertices with a zero measure (lying on
/// their chord) are dropped even when the data has no hierarchy at all.
pub fn simplify_ht(
    line: &Polyline,
    kind: MeasureKind,
    keep_level: usize,
    head_limit: f64,
) -> Result<SimplificationResult, SimplifyError> {
    simplify_ht_with(
        line,
        kind,
        keep_level,
        head_limit,
        MeasureOptions::default(),
    )
}

pub fn simplify_ht_with(
    line: &Polyline,
    kind: MeasureKind,
    keep_level: usize,
    head_limit: f64,
    options: MeasureOptions,
) -> Result<SimplificationResult, SimplifyError> {
    if keep_level == 0 {
        return Err(SimplifyError::InvalidKeepLevel);
    }
    let tree = measure_tree_with(line, kind, options)?;
    let n = line.len();
    let interior: Vec<f64> = (1..n - 1).map(|k| tree.values[k].unwrap_or(0.0)).collect();
    let classes = head_tail_breaks(&interior, head_limit)?;
    let ht = classes.ht_index;

    let mut levels = vec![ht; n];
    levels[1..n - 1].copy_from_slice(&classes.levels);

    let threshold = keep_level.min(ht);
    let eps = epsilon();
    let retained = (0..n)
        .filter(|&k| {
            k == 0
                || k == n - 1
                || keep_level == 1
                || (levels[k] >= threshold && interior[k - 1] > eps)
        })
        .collect();
    Ok(SimplificationResult::new(
        retained,
        levels,
        Algorithm::HeadTail {
            kind,
            keep_level,
            head_limit,
        },
    ))
}

/// Smallest keep level whose result holds at most `budget` vertices, or the
/// top level when none does.
pub fn ht_level_for_budget(
    line: &Polyline,
    kind: MeasureKind,
    head_limit: f64,
    budget: usize,
) -> Result<SimplificationResult, SimplifyError> {
    let mut level = 1;
    loop {
        let result = simplify_ht(line, kind, level, head_limit)?;
        let top = result.levels[0];
        if result.retained_count() <= budget || level > top {
            return Ok(result);
        }
        level += 1;
    }
}
