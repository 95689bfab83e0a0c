use crate::geometry::{segments_intersect, GeometryError, Point, Polyline, Segment};

use super::measure::measure_tree;
use super::{MeasureKind, SimplificationResult};

/// Two non-adjacent segments of one polyline that meet.
///
/// `first < second` are segment indices (segment `i` runs from vertex `i`
/// to vertex `i + 1`). Collinear overlaps are reported at the midpoint of
/// the shared stretch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
    pub point: Point,
}

fn pair_crossing(segs: &[Segment], i: usize, j: usize) -> Option<Crossing> {
    let point = match segments_intersect(segs[i], segs[j]) {
        Ok(Some(p)) => p,
        Ok(None) => return None,
        Err(GeometryError::CollinearOverlap) => overlap_midpoint(segs[i], segs[j]),
        Err(_) => return None,
    };
    Some(Crossing {
        first: i,
        second: j,
        point,
    })
}

fn overlap_midpoint(s1: Segment, s2: Segment) -> Point {
    let r = s1.b.sub(s1.a);
    let len2 = r.x * r.x + r.y * r.y;
    let param = |p: Point| {
        let q = p.sub(s1.a);
        (q.x * r.x + q.y * r.y) / len2
    };
    let (t0, t1) = (param(s2.a), param(s2.b));
    let lo = t0.min(t1).max(0.0);
    let hi = t0.max(t1).min(1.0);
    s1.a.add(r.scale((lo + hi) / 2.0))
}

fn segments_of(points: &[Point]) -> Vec<Segment> {
    points
        .windows(2)
        .map(|w| Segment::new(w[0], w[1]))
        .collect()
}

/// All crossings between non-adjacent segments, ordered by `(first, second)`.
///
/// Candidate pairs are pruned with a sweep over x-extents.
pub fn detect_self_intersections(line: &Polyline) -> Vec<Crossing> {
    crossings_in(line.vertices())
}

pub(crate) fn crossings_in(points: &[Point]) -> Vec<Crossing> {
    let segs = segments_of(points);
    let m = segs.len();
    let extent = |s: &Segment| (s.a.x.min(s.b.x), s.a.x.max(s.b.x));
    let mut by_min_x: Vec<usize> = (0..m).collect();
    by_min_x.sort_by(|&a, &b| extent(&segs[a]).0.total_cmp(&extent(&segs[b]).0));
    let eps = crate::geometry::epsilon();

    let mut out = Vec::new();
    for (pos, &i) in by_min_x.iter().enumerate() {
        let (_, max_x) = extent(&segs[i]);
        let (lo_y, hi_y) = (segs[i].a.y.min(segs[i].b.y), segs[i].a.y.max(segs[i].b.y));
        for &j in &by_min_x[pos + 1..] {
            let (min_x_j, _) = extent(&segs[j]);
            if min_x_j > max_x + eps {
                break;
            }
            if i.abs_diff(j) < 2 {
                continue;
            }
            let (lo_j, hi_j) = (segs[j].a.y.min(segs[j].b.y), segs[j].a.y.max(segs[j].b.y));
            if lo_j > hi_y + eps || lo_y > hi_j + eps {
                continue;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if let Some(c) = pair_crossing(&segs, a, b) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| (c.first, c.second));
    out
}

/// Reference all-pairs check.
pub fn detect_self_intersections_naive(line: &Polyline) -> Vec<Crossing> {
    let segs = segments_of(line.vertices());
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in i + 2..segs.len() {
            if let Some(c) = pair_crossing(&segs, i, j) {
                out.push(c);
            }
        }
    }
    out
}

/// Adds removed vertices back until the simplified line stops crossing
/// itself.
///
/// For each crossing in order, the candidates are the removed original
/// vertices between the ends of either offending segment; the one with the
/// largest measure value (lowest index on ties) goes back in. When no
/// crossing has a candidate left, the result is flagged with
/// `residual_crossings`.
pub fn repair_crossings(
    original: &Polyline,
    result: &SimplificationResult,
) -> SimplificationResult {
    let mut out = result.clone();
    let n = original.len();
    let measure: Vec<f64> = if n >= 3 {
        measure_tree(original, result.algorithm.repair_measure())
            .or_else(|_| measure_tree(original, MeasureKind::PerpDistance))
            .map(|t| t.values.iter().map(|v| v.unwrap_or(0.0)).collect())
            .unwrap_or_else(|_| vec![0.0; n])
    } else {
        vec![0.0; n]
    };
    let pts = original.vertices();
    let mut kept = vec![false; n];
    for &k in &out.retained {
        kept[k] = true;
    }

    loop {
        let current: Vec<Point> = out.retained.iter().map(|&k| pts[k]).collect();
        let crossings = crossings_in(&current);
        if crossings.is_empty() {
            out.residual_crossings = false;
            return out;
        }
        let pick = crossings.iter().find_map(|c| {
            [c.first, c.second]
                .into_iter()
                .flat_map(|s| out.retained[s] + 1..out.retained[s + 1])
                .filter(|&k| !kept[k])
                .fold(None, |best: Option<usize>, k| match best {
                    Some(b) if measure[b] > measure[k] || (measure[b] == measure[k] && b < k) => {
                        Some(b)
                    }
                    _ => Some(k),
                })
        });
        match pick {
            Some(k) => {
                kept[k] = true;
                let at = out.retained.partition_point(|&r| r < k);
                out.retained.insert(at, k);
                out.reinserted.push(k);
            }
            None => {
                out.residual_crossings = true;
                return out;
            }
        }
    }
}
