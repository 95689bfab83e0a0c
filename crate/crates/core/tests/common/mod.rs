//! Generators, reference implementations and property checks shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeMap;

use htsimplify::io::{format_features, parse_features, Feature, FeatureSet, Format, ReadOptions};
use htsimplify::scaling::{head_tail_breaks, ht_index, rank_size};
use htsimplify::simplify::{simplify_dp, simplify_ht, simplify_vw, simplify_vw_count};
use htsimplify::{MeasureKind, Point, Polyline};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 256;

/// Fixed-seed proptest config so runs are reproducible.
pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

// ---------------------------------------------------------------- generators

pub fn coords(min: usize, max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-100.0..100.0f64, -100.0..100.0f64), min..=max)
}

/// Valid polylines with at least `min` vertices after deduplication.
pub fn polyline(min: usize, max: usize) -> impl Strategy<Value = Polyline> {
    coords(min, max).prop_filter_map("too few distinct vertices", move |c| {
        Polyline::from_xy(&c).ok().filter(|l| l.len() >= min)
    })
}

/// Random walk of `n` vertices with steps of varying length and heading.
pub fn random_walk(rng: &mut ChaCha8Rng, n: usize) -> Polyline {
    let mut pts = vec![Point::new(0.0, 0.0)];
    while pts.len() < n {
        let last = *pts.last().unwrap();
        let step = rng.gen_range(0.1..10.0);
        let heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        pts.push(Point::new(
            last.x + step * heading.cos(),
            last.y + step * heading.sin(),
        ));
    }
    Polyline::new(pts).unwrap()
}

// ---------------------------------------------------------------- oracles

fn dist_to_line(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = (dx * dx + dy * dy).sqrt();
    if len < 1e-9 {
        return ((p.x - a.x).powi(2) + (p.y - a.y).powi(2)).sqrt();
    }
    (dx * (p.y - a.y) - dy * (p.x - a.x)).abs() / len
}

/// Textbook recursive Douglas-Peucker.
pub fn naive_dp(pts: &[Point], tolerance: f64) -> Vec<usize> {
    fn rec(pts: &[Point], i: usize, j: usize, tol: f64, out: &mut Vec<usize>) {
        let mut best = None;
        let mut best_d = -1.0;
        for k in i + 1..j {
            let d = dist_to_line(pts[k], pts[i], pts[j]);
            if d > best_d {
                best_d = d;
                best = Some(k);
            }
        }
        if let Some(k) = best {
            if best_d >= tol {
                rec(pts, i, k, tol, out);
                out.push(k);
                rec(pts, k, j, tol, out);
            }
        }
    }
    let mut out = vec![0];
    rec(pts, 0, pts.len() - 1, tolerance, &mut out);
    out.push(pts.len() - 1);
    out
}

fn area3(a: Point, b: Point, c: Point) -> f64 {
    0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)).abs()
}

/// Visvalingam-Whyatt by full rescan each round: O(n^2).
pub fn naive_vw_order(pts: &[Point]) -> Vec<(usize, f64)> {
    let mut alive: Vec<usize> = (0..pts.len()).collect();
    let mut order = Vec::new();
    while alive.len() > 2 {
        let mut best = 1;
        let mut best_area = f64::INFINITY;
        for k in 1..alive.len() - 1 {
            let a = area3(pts[alive[k - 1]], pts[alive[k]], pts[alive[k + 1]]);
            if a < best_area {
                best_area = a;
                best = k;
            }
        }
        order.push((alive[best], best_area));
        alive.remove(best);
    }
    order
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Pairs of non-adjacent segments that cross properly, by orientation signs.
pub fn naive_crossing_pairs(pts: &[Point]) -> Vec<(usize, usize)> {
    let m = pts.len() - 1;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            let (a, b, c, d) = (pts[i], pts[i + 1], pts[j], pts[j + 1]);
            let o1 = orient(a, b, c);
            let o2 = orient(a, b, d);
            let o3 = orient(c, d, a);
            let o4 = orient(c, d, b);
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Head/tail breaks restated step by step: `(means, head fractions)`.
pub fn naive_head_tail(values: &[f64], limit: f64) -> (Vec<f64>, Vec<f64>) {
    let mut means = Vec::new();
    let mut fractions = Vec::new();
    let mut data = values.to_vec();
    while !data.is_empty() {
        let mean = data.iter().sum::<f64>() / data.len() as f64;
        let head: Vec<f64> = data.iter().copied().filter(|v| *v > mean).collect();
        let share = head.len() as f64 / data.len() as f64;
        if head.is_empty() || share > limit {
            break;
        }
        means.push(mean);
        fractions.push(share);
        if head.len() < 2 || head.iter().all(|v| *v == head[0]) {
            break;
        }
        data = head;
    }
    (means, fractions)
}

/// Perpendicular-distance measure by plain recursion; ties within `1e-12`
/// go to the lowest index.
pub fn naive_x_values(pts: &[Point]) -> Vec<f64> {
    let mut vals = vec![0.0; pts.len()];
    let mut work = vec![(0, pts.len() - 1)];
    while let Some((i, j)) = work.pop() {
        if j < i + 2 {
            continue;
        }
        let mut best = i + 1;
        let mut best_d = dist_to_line(pts[best], pts[i], pts[j]);
        for k in i + 2..j {
            let d = dist_to_line(pts[k], pts[i], pts[j]);
            if d > best_d + 1e-12 {
                best = k;
                best_d = d;
            }
        }
        vals[best] = best_d;
        work.push((i, best));
        work.push((best, j));
    }
    vals[1..pts.len() - 1].to_vec()
}

// ---------------------------------------------------------------- properties

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn prop_endpoints(
    line: &Polyline,
    tolerance: f64,
    level: usize,
    count_frac: f64,
) -> Result<(), TestCaseError> {
    let n = line.len();
    let last = n - 1;
    let target = 2 + ((n - 2) as f64 * count_frac) as usize;
    let mut results = vec![
        simplify_dp(line, tolerance).unwrap(),
        simplify_vw(line, tolerance).unwrap(),
        simplify_vw_count(line, target).unwrap(),
    ];
    if n >= 3 {
        for kind in [
            MeasureKind::PerpDistance,
            MeasureKind::TriangleArea,
            MeasureKind::TurnAngle,
        ] {
            results.push(simplify_ht(line, kind, level, 0.4).unwrap());
        }
    }
    for r in results {
        check(
            r.retained.first() == Some(&0) && r.retained.last() == Some(&last),
            || format!("{}: endpoints missing from {:?}", r.algorithm, r.retained),
        )?;
        check(r.retained.windows(2).all(|w| w[0] < w[1]), || {
            format!("{}: retained not increasing", r.algorithm)
        })?;
    }
    Ok(())
}

pub fn prop_ht_nesting(line: &Polyline, kind: MeasureKind) -> Result<(), TestCaseError> {
    let sets: Vec<Vec<usize>> = (1..=8)
        .map(|k| simplify_ht(line, kind, k, 0.4).unwrap().retained)
        .collect();
    for (k, pair) in sets.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        check(upper.iter().all(|v| lower.binary_search(v).is_ok()), || {
            format!(
                "level {} keeps {upper:?}, not within level {}: {lower:?}",
                k + 2,
                k + 1
            )
        })?;
    }
    Ok(())
}

pub fn prop_dp_monotone(line: &Polyline, t1: f64, t2: f64) -> Result<(), TestCaseError> {
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    let fine = simplify_dp(line, lo).unwrap().retained;
    let coarse = simplify_dp(line, hi).unwrap().retained;
    check(coarse.iter().all(|v| fine.binary_search(v).is_ok()), || {
        format!("tolerance {hi} keeps {coarse:?}, not within {lo}: {fine:?}")
    })
}

pub fn prop_ht_scale_invariant(values: &[f64], factor: f64) -> Result<(), TestCaseError> {
    let scaled: Vec<f64> = values.iter().map(|v| v * factor).collect();
    let (a, b) = (ht_index(values).unwrap(), ht_index(&scaled).unwrap());
    check(a == b, || {
        format!("ht {a} became {b} after scaling by {factor}")
    })?;
    let la = head_tail_breaks(values, 0.4).unwrap().levels;
    let lb = head_tail_breaks(&scaled, 0.4).unwrap().levels;
    check(la == lb, || "levels changed under scaling".into())
}

pub fn prop_rank_size_roundtrip(values: &[f64]) -> Result<(), TestCaseError> {
    let rs = rank_size(values).unwrap();
    let ranks: Vec<usize> = rs.pairs.iter().map(|p| p.0).collect();
    check(ranks == (1..=values.len()).collect::<Vec<_>>(), || {
        "ranks are not 1..n".into()
    })?;
    check(rs.pairs.windows(2).all(|w| w[0].1 >= w[1].1), || {
        "sizes not descending".into()
    })?;
    let mut back: Vec<f64> = rs.sizes().collect();
    let mut orig = values.to_vec();
    back.sort_by(f64::total_cmp);
    orig.sort_by(f64::total_cmp);
    check(back == orig, || "multiset changed".into())
}

/// A feature set expressible in `format`: CSV holds one unnamed line
/// without properties, WKT drops properties.
pub fn feature_set(format: Format) -> impl Strategy<Value = FeatureSet> {
    let feature = (
        "[a-z][a-z0-9_-]{0,8}",
        polyline(2, 12),
        prop::collection::btree_map("[a-z]{1,6}", "[ -~]{0,12}", 0..3),
    );
    let max = if format == Format::Csv { 1 } else { 4 };
    prop::collection::vec(feature, 1..=max).prop_map(move |items| {
        let mut set = FeatureSet::new();
        for (k, (id, line, props)) in items.into_iter().enumerate() {
            let (id, properties) = match format {
                Format::Csv => ("line".to_string(), BTreeMap::new()),
                Format::Wkt => (format!("{id}{k}"), BTreeMap::new()),
                Format::GeoJson => (format!("{id}{k}"), props),
            };
            set.push(Feature {
                id,
                line,
                properties,
            })
            .unwrap();
        }
        set
    })
}

pub fn prop_io_roundtrip(set: &FeatureSet, format: Format) -> Result<(), TestCaseError> {
    let text = format_features(set, format).unwrap();
    let back = parse_features(&text, format, "line", ReadOptions::default())
        .map_err(|e| TestCaseError::fail(format!("{format}: {e}\n{text}")))?
        .features;
    check(back.len() == set.len(), || {
        format!("{format}: feature count changed")
    })?;
    for (a, b) in set.iter().zip(back.iter()) {
        check(a.id == b.id && a.properties == b.properties, || {
            format!("{format}: id or properties changed: {a:?} vs {b:?}")
        })?;
        check(a.line.len() == b.line.len(), || {
            format!("{format}: vertex count changed")
        })?;
        for (p, q) in a.line.vertices().iter().zip(b.line.vertices()) {
            check(
                (p.x - q.x).abs() <= 1e-12 && (p.y - q.y).abs() <= 1e-12,
                || format!("{format}: {p:?} read back as {q:?}"),
            )?;
        }
    }
    Ok(())
}
