//! Heavy-tailed statistics: head/tail breaks, ht-index, rank-size series, and
//! divider-walk fractal dimension.

use thiserror::Error;

use crate::geometry::{epsilon, Point, Polyline};

/// Largest accepted head share when none is given.
pub const DEFAULT_HEAD_LIMIT: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalingError {
    #[error("input is empty")]
    EmptyInput,
    #[error("value at index {index} is negative: {value}")]
    NegativeValue { index: usize, value: f64 },
    #[error("value at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("head limit must lie in (0, 1), got {0}")]
    InvalidHeadLimit(f64),
    #[error("ruler {0} is not positive")]
    RulerNotPositive(f64),
    #[error("ruler {ruler} exceeds the reach {reach} of the line from its start")]
    RulerTooLarge { ruler: f64, reach: f64 },
    #[error("rulers must be strictly decreasing")]
    RulersNotDecreasing,
    #[error("need at least 2 samples with distinct rulers, got {0}")]
    InsufficientSamples(usize),
}

/// Outcome of recursive mean splitting.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadTailClassification {
    /// Accepted split means, in computation order (strictly increasing).
    pub means: Vec<f64>,
    /// Number of items strictly above each mean.
    pub head_counts: Vec<usize>,
    /// Head size divided by the size of the set that was split.
    pub head_fractions: Vec<f64>,
    /// Level per input item, in input order; `1..=ht_index`.
    pub levels: Vec<usize>,
    pub ht_index: usize,
}

impl HeadTailClassification {
    /// Number of items at or above `level`.
    pub fn count_at_least(&self, level: usize) -> usize {
        self.levels.iter().filter(|&&l| l >= level).count()
    }
}

fn check_values(values: &[f64]) -> Result<(), ScalingError> {
    if values.is_empty() {
        return Err(ScalingError::EmptyInput);
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(ScalingError::NonFinite { index });
        }
        if value < 0.0 {
            return Err(ScalingError::NegativeValue { index, value });
        }
    }
    Ok(())
}

/// Splits `values` at the mean, again and again inside the head.
///
/// A split is accepted when its head (items strictly above the mean) is
/// non-empty and makes up at most `head_limit` of the set being split. The
/// process descends into an accepted head only while it holds two or more
/// items that are not all equal.
pub fn head_tail_breaks(
    values: &[f64],
    head_limit: f64,
) -> Result<HeadTailClassification, ScalingError> {
    check_values(values)?;
    if !(head_limit > 0.0 && head_limit < 1.0) {
        return Err(ScalingError::InvalidHeadLimit(head_limit));
    }

    let mut means = Vec::new();
    let mut head_counts = Vec::new();
    let mut head_fractions = Vec::new();
    let mut current: Vec<f64> = values.to_vec();
    loop {
        let mean = current.iter().sum::<f64>() / current.len() as f64;
        let head: Vec<f64> = current.iter().copied().filter(|&v| v > mean).collect();
        let fraction = head.len() as f64 / current.len() as f64;
        if head.is_empty() || fraction > head_limit {
            break;
        }
        means.push(mean);
        head_counts.push(head.len());
        head_fractions.push(fraction);
        let varied = head.iter().any(|&v| v != head[0]);
        if head.len() < 2 || !varied {
            break;
        }
        current = head;
    }

    let ht_index = means.len() + 1;
    let levels = values
        .iter()
        .map(|&v| (1 + means.iter().filter(|&&m| v > m).count()).min(ht_index))
        .collect();
    Ok(HeadTailClassification {
        means,
        head_counts,
        head_fractions,
        levels,
        ht_index,
    })
}

/// Ht-index under the default head limit.
pub fn ht_index(values: &[f64]) -> Result<usize, ScalingError> {
    Ok(head_tail_breaks(values, DEFAULT_HEAD_LIMIT)?.ht_index)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSize {
    /// `(rank, size)`, ranks `1..=N`, sizes non-increasing.
    pub pairs: Vec<(usize, f64)>,
}

impl RankSize {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sizes(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|&(_, s)| s)
    }
}

/// Sorts values descending (stable among equals) and ranks them from 1.
pub fn rank_size(values: &[f64]) -> Result<RankSize, ScalingError> {
    if values.is_empty() {
        return Err(ScalingError::EmptyInput);
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(ScalingError::NonFinite { index });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(RankSize {
        pairs: sorted
            .into_iter()
            .enumerate()
            .map(|(i, s)| (i + 1, s))
            .collect(),
    })
}

/// How the last, incomplete divider step enters the walked length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartialStep {
    /// Remaining distance to the end of the line is added to the length.
    #[default]
    Fractional,
    /// Remainder is dropped.
    Floor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DividerSample {
    pub ruler: f64,
    /// Full steps of length `ruler`.
    pub step_count: usize,
    /// `step_count * ruler`, plus the remainder under [`PartialStep::Fractional`].
    pub walked_length: f64,
}

impl DividerSample {
    /// Step count including the fractional remainder, `walked_length / ruler`.
    pub fn effective_count(&self) -> f64 {
        self.walked_length / self.ruler
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DividerResult {
    pub samples: Vec<DividerSample>,
    pub fit: DimensionFit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionFit {
    /// Negated slope of `ln N` against `ln r`.
    pub dimension: f64,
    /// Coefficient of determination of the count fit.
    pub r2: f64,
    /// Slope of `ln L` against `ln r`; `1 - dimension` for exact data.
    pub length_slope: f64,
}

/// Farthest distance from the first vertex to any vertex of the line.
fn reach(line: &Polyline) -> f64 {
    let start = line.first();
    line.vertices()
        .iter()
        .map(|v| v.distance(start))
        .fold(0.0, f64::max)
}

/// Richardson divider walk with the fractional remainder counted.
pub fn divider_walk(line: &Polyline, rulers: &[f64]) -> Result<Vec<DividerSample>, ScalingError> {
    divider_walk_with(line, rulers, PartialStep::Fractional)
}

/// Walks the line once per ruler with a fixed chord length.
///
/// Each chord starts where the previous one ended and ends at the first point
/// further along the line at exactly `ruler` straight-line distance. When no
/// such point remains, the distance to the end of the line is the remainder.
pub fn divider_walk_with(
    line: &Polyline,
    rulers: &[f64],
    partial: PartialStep,
) -> Result<Vec<DividerSample>, ScalingError> {
    let reach = reach(line);
    let eps = epsilon();
    for &r in rulers {
        if !(r > 0.0) || !r.is_finite() {
            return Err(ScalingError::RulerNotPositive(r));
        }
        if r > reach + eps {
            return Err(ScalingError::RulerTooLarge { ruler: r, reach });
        }
    }
    if rulers.windows(2).any(|w| w[1] >= w[0]) {
        return Err(ScalingError::RulersNotDecreasing);
    }
    Ok(rulers
        .iter()
        .map(|&r| walk_one(line.vertices(), r, partial))
        .collect())
}

fn walk_one(vertices: &[Point], ruler: f64, partial: PartialStep) -> DividerSample {
    let eps = epsilon();
    let end = vertices[vertices.len() - 1];
    let mut pos = vertices[0];
    // Current segment and parameter along it.
    let mut seg = 0usize;
    let mut t_from = 0.0f64;
    let mut steps = 0usize;
    while let Some((j, t)) = (seg..vertices.len() - 1).find_map(|j| {
        let t_min = if j == seg { t_from } else { 0.0 };
        circle_exit(vertices[j], vertices[j + 1], pos, ruler, t_min).map(|t| (j, t))
    }) {
        pos = lerp(vertices[j], vertices[j + 1], t);
        seg = j;
        t_from = t;
        steps += 1;
    }
    let remainder = pos.distance(end);
    let remainder = if remainder < eps { 0.0 } else { remainder };
    let walked_length = match partial {
        PartialStep::Fractional => steps as f64 * ruler + remainder,
        PartialStep::Floor => steps as f64 * ruler,
    };
    DividerSample {
        ruler,
        step_count: steps,
        walked_length,
    }
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    if t >= 1.0 {
        b
    } else {
        a.add(b.sub(a).scale(t))
    }
}

/// Smallest `t > t_min` on segment `a -> b` where the distance to `center`
/// equals `radius`. Roots within tolerance past the segment end snap to 1.
fn circle_exit(a: Point, b: Point, center: Point, radius: f64, t_min: f64) -> Option<f64> {
    let d = b.sub(a);
    let len2 = d.x * d.x + d.y * d.y;
    if len2 == 0.0 {
        return None;
    }
    let t_tol = epsilon() / len2.sqrt();
    let f = a.sub(center);
    let half_b = f.x * d.x + f.y * d.y;
    let c = f.x * f.x + f.y * f.y - radius * radius;
    let disc = half_b * half_b - len2 * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    [(-half_b - sq) / len2, (-half_b + sq) / len2]
        .into_iter()
        .find(|&t| t > t_min + t_tol && t <= 1.0 + t_tol)
        .map(|t| t.min(1.0))
}

/// Least-squares fit of `ln N` (effective step count) against `ln r`.
pub fn fit_dimension(samples: &[DividerSample]) -> Result<DimensionFit, ScalingError> {
    let distinct = {
        let mut rs: Vec<f64> = samples.iter().map(|s| s.ruler).collect();
        rs.sort_by(f64::total_cmp);
        rs.dedup();
        rs.len()
    };
    if samples.len() < 2 || distinct < 2 {
        return Err(ScalingError::InsufficientSamples(samples.len()));
    }
    if let Some(s) = samples.iter().find(|s| !(s.ruler > 0.0)) {
        return Err(ScalingError::RulerNotPositive(s.ruler));
    }
    if let Some(index) = samples.iter().position(|s| !(s.walked_length > 0.0)) {
        return Err(ScalingError::NonFinite { index });
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.ruler.ln()).collect();
    let counts: Vec<f64> = samples.iter().map(|s| s.effective_count().ln()).collect();
    let lengths: Vec<f64> = samples.iter().map(|s| s.walked_length.ln()).collect();
    let (slope, r2) = least_squares(&xs, &counts);
    let (length_slope, _) = least_squares(&xs, &lengths);
    Ok(DimensionFit {
        dimension: -slope,
        r2,
        length_slope,
    })
}

/// Divider walk followed by [`fit_dimension`].
pub fn divider_dimension(line: &Polyline, rulers: &[f64]) -> Result<DividerResult, ScalingError> {
    let samples = divider_walk(line, rulers)?;
    let fit = fit_dimension(&samples)?;
    Ok(DividerResult { samples, fit })
}

/// Returns `(slope, r2)` of the ordinary least-squares line.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r2 = if syy <= f64::EPSILON * n {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    (slope, r2)
}
