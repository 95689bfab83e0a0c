use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use htsimplify::geometry::polyline_length;
use htsimplify::io::{self, Feature, FeatureSet, Format, ReadOptions};
use htsimplify::koch::{koch_curve, triangle_inventory, KochSpec};
use htsimplify::scaling::{head_tail_breaks, rank_size, RankSize, DEFAULT_HEAD_LIMIT};
use htsimplify::simplify::{
    detect_self_intersections, dp_tolerance_for_budget, ht_level_for_budget, measure_tree,
    repair_crossings, simplify_dp, simplify_ht, simplify_vw, simplify_vw_count, Algorithm,
    ScalingSummary,
};
use htsimplify::{MeasureKind, Polyline, SimplificationResult};

use crate::args::{AlgoName, CompareArgs, KochArgs, SimplifyArgs, StatsArgs};
use crate::table::Table;
use crate::{Outcome, Usage};

/// Writes to stdout, ignoring a closed pipe so `| head` ends quietly.
macro_rules! out {
    (@raw $s:expr) => {{
        use std::io::Write as _;
        let _ = std::io::stdout().write_all($s.as_bytes());
    }};
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// Largest `--koch-triangles` value; the inventory holds (4^n - 1) / 3 sizes.
const MAX_TRIANGLE_ITERATIONS: u32 = 12;
/// Rank-size rows printed per series.
const RANK_ROWS: usize = 25;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn check_head_limit(h: f64) -> Result<()> {
    if h > 0.0 && h < 1.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "--head-limit must lie strictly between 0 and 1, got {h}"
        )))
    }
}

fn resolve_format(path: &Path, explicit: Option<Format>, flag: &str) -> Result<Format> {
    explicit.or_else(|| Format::from_path(path)).ok_or_else(|| {
        usage(format!(
            "cannot infer the format of {} from its extension; pass {flag}",
            path.display()
        ))
    })
}

fn load(path: &Path, format: Format, strict: bool) -> Result<FeatureSet> {
    let parsed = io::read_features_with(path, format, ReadOptions { strict })
        .with_context(|| format!("reading {}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.features)
}

fn num(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        format!("{v:.6}")
    } else {
        format!("{v:.4e}")
    }
}

fn join_nums(values: &[f64]) -> String {
    if values.is_empty() {
        "-".into()
    } else {
        values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" ")
    }
}

/// `1/27` for exact reciprocals of integers, the decimal otherwise.
fn size_label(scale: f64) -> String {
    let inv = 1.0 / scale;
    if (inv - inv.round()).abs() <= 1e-9 * inv {
        format!("1/{}", inv.round())
    } else {
        format!("{scale}")
    }
}

/// Head/tail summary of a line's interior measures, when it has any.
fn summarize(line: &Polyline, kind: MeasureKind, head_limit: f64) -> Option<ScalingSummary> {
    if line.len() < 3 {
        return None;
    }
    let values = measure_tree(line, kind).ok()?.interior_values();
    ScalingSummary::of(&values, head_limit).ok()
}

fn ht_cell(s: &Option<ScalingSummary>) -> String {
    s.as_ref().map_or("-".into(), |s| s.ht_index.to_string())
}

// ---------------------------------------------------------------- koch

pub fn koch(a: &KochArgs) -> Result<Outcome> {
    let spec = KochSpec {
        iterations: a.iterations,
        ratio: a.ratio,
        height_factor: a.height_factor,
    };
    spec.validate().map_err(|e| usage(e.to_string()))?;
    let format = match &a.out {
        Some(p) => Some(resolve_format(p, a.format, "--format")?),
        None => None,
    };
    let line = koch_curve(&spec).map_err(|e| usage(e.to_string()))?;

    out!("vertices={} length={}", line.len(), polyline_length(&line));
    if spec.ratio == 1.0 / 3.0 && spec.height_factor == 1.0 {
        let inv = triangle_inventory(spec.iterations);
        let mut t = Table::new(["level", "size", "count"]);
        for e in &inv.entries {
            t.row(vec![
                e.level.to_string(),
                size_label(e.scale),
                e.count.to_string(),
            ]);
        }
        if !inv.is_empty() {
            out!(@raw t.render());
        }
        let pairs: Vec<String> = inv
            .entries
            .iter()
            .map(|e| format!("{}:{}", size_label(e.scale), e.count))
            .collect();
        out!(
            "inventory {}",
            if pairs.is_empty() {
                "-".into()
            } else {
                pairs.join(" ")
            }
        );
    } else {
        out!("inventory n/a (triangle sizes are listed for the default shape only)");
    }

    if let (Some(path), Some(format)) = (&a.out, format) {
        let mut set = FeatureSet::new();
        set.push(Feature::new(format!("koch-{}", spec.iterations), line))?;
        io::write_features(&set, path, format)?;
    }
    Ok(Outcome::Success)
}

// ---------------------------------------------------------------- simplify

fn forbid(name: &str, present: bool, algo: AlgoName) -> Result<()> {
    if present {
        Err(usage(format!(
            "{name} does not apply to --algo {}",
            algo.as_str()
        )))
    } else {
        Ok(())
    }
}

/// Turns the flags into an algorithm, rejecting inconsistent combinations.
fn simplify_algorithm(a: &SimplifyArgs) -> Result<Algorithm> {
    let algo = a.algo;
    match algo {
        AlgoName::Ht => {
            forbid("--tolerance", a.tolerance.is_some(), algo)?;
            forbid("--min-area", a.min_area.is_some(), algo)?;
            forbid("--count", a.count.is_some(), algo)?;
            let keep_level = a.level.ok_or_else(|| usage("--algo ht requires --level"))?;
            if keep_level == 0 {
                return Err(usage("--level starts at 1"));
            }
            let head_limit = a.head_limit.unwrap_or(DEFAULT_HEAD_LIMIT);
            check_head_limit(head_limit)?;
            Ok(Algorithm::HeadTail {
                kind: a.measure.unwrap_or_default(),
                keep_level,
                head_limit,
            })
        }
        AlgoName::Dp => {
            forbid("--measure", a.measure.is_some(), algo)?;
            forbid("--level", a.level.is_some(), algo)?;
            forbid("--head-limit", a.head_limit.is_some(), algo)?;
            forbid("--min-area", a.min_area.is_some(), algo)?;
            forbid("--count", a.count.is_some(), algo)?;
            let tolerance = a
                .tolerance
                .ok_or_else(|| usage("--algo dp requires --tolerance"))?;
            if !(tolerance > 0.0) {
                return Err(usage(format!(
                    "--tolerance must be positive, got {tolerance}"
                )));
            }
            Ok(Algorithm::DouglasPeucker { tolerance })
        }
        AlgoName::Vw => {
            forbid("--measure", a.measure.is_some(), algo)?;
            forbid("--level", a.level.is_some(), algo)?;
            forbid("--head-limit", a.head_limit.is_some(), algo)?;
            forbid("--tolerance", a.tolerance.is_some(), algo)?;
            match (a.min_area, a.count) {
                (Some(min_area), None) if min_area > 0.0 => {
                    Ok(Algorithm::VisvalingamArea { min_area })
                }
                (Some(min_area), None) => Err(usage(format!(
                    "--min-area must be positive, got {min_area}"
                ))),
                (None, Some(target)) if target >= 2 => Ok(Algorithm::VisvalingamCount { target }),
                (None, Some(_)) => Err(usage("--count must be at least 2")),
                _ => Err(usage(
                    "--algo vw requires exactly one of --min-area and --count",
                )),
            }
        }
    }
}

fn run_algorithm(line: &Polyline, algorithm: Algorithm) -> Result<SimplificationResult> {
    Ok(match algorithm {
        Algorithm::HeadTail {
            kind,
            keep_level,
            head_limit,
        } => simplify_ht(line, kind, keep_level, head_limit)?,
        Algorithm::DouglasPeucker { tolerance } => simplify_dp(line, tolerance)?,
        Algorithm::VisvalingamArea { min_area } => simplify_vw(line, min_area)?,
        // a line already at or below the target stays as it is
        Algorithm::VisvalingamCount { target } => simplify_vw_count(line, target.min(line.len()))?,
    })
}

pub fn simplify(a: &SimplifyArgs) -> Result<Outcome> {
    let algorithm = simplify_algorithm(a)?;
    let in_format = resolve_format(&a.input, a.format, "--format")?;
    let out_format = a
        .out
        .as_deref()
        .map(|p| Format::from_path(p).unwrap_or(in_format));
    let (kind, head_limit) = match algorithm {
        Algorithm::HeadTail {
            kind, head_limit, ..
        } => (kind, head_limit),
        _ => (MeasureKind::PerpDistance, DEFAULT_HEAD_LIMIT),
    };

    let features = load(&a.input, in_format, a.strict)?;
    let mut out = FeatureSet::new();
    let mut table = Table::new([
        "feature",
        "algorithm",
        "before",
        "after",
        "ht_before",
        "ht_after",
        "reinserted",
    ]);
    let mut failed = false;
    for f in &features {
        let attempt = run_algorithm(&f.line, algorithm)
            .map(|r| {
                if a.repair_crossings {
                    repair_crossings(&f.line, &r)
                } else {
                    r
                }
            })
            .and_then(|r| Ok((r.apply(&f.line)?, r)));
        let (line, result) = match attempt {
            Ok(pair) => pair,
            Err(e) => {
                eprintln!("error: feature {}: {e:#}", f.id);
                table.row(vec![
                    f.id.clone(),
                    algorithm.to_string(),
                    f.line.len().to_string(),
                    "failed".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                ]);
                failed = true;
                continue;
            }
        };
        if result.residual_crossings {
            eprintln!("warning: feature {}: crossings remain after repair", f.id);
        }
        table.row(vec![
            f.id.clone(),
            algorithm.to_string(),
            f.line.len().to_string(),
            line.len().to_string(),
            ht_cell(&summarize(&f.line, kind, head_limit)),
            ht_cell(&summarize(&line, kind, head_limit)),
            result.reinserted.len().to_string(),
        ]);
        out.push(Feature {
            id: f.id.clone(),
            line,
            properties: f.properties.clone(),
        })?;
    }
    out!(@raw table.render());
    if let (Some(path), Some(format)) = (&a.out, out_format) {
        io::write_features(&out, path, format)?;
    }
    Ok(if failed {
        Outcome::Partial
    } else {
        Outcome::Success
    })
}

// ---------------------------------------------------------------- stats

fn print_series(label: &str, values: &[f64], head_limit: f64) -> Result<RankSize> {
    let classes = head_tail_breaks(values, head_limit)?;
    let rs = rank_size(values)?;
    out!("== {label} ({} values)", values.len());
    out!("ht-index: {}", classes.ht_index);
    out!("means: {}", join_nums(&classes.means));
    out!("head fractions: {}", join_nums(&classes.head_fractions));
    out!(
        "head counts: {}",
        if classes.head_counts.is_empty() {
            "-".into()
        } else {
            classes
                .head_counts
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }
    );
    let mut t = Table::new(["rank", "size"]);
    for &(rank, size) in rs.pairs.iter().take(RANK_ROWS) {
        t.row(vec![rank.to_string(), num(size)]);
    }
    out!(@raw t.render());
    if rs.len() > RANK_ROWS {
        out!("... {} more", rs.len() - RANK_ROWS);
    }
    Ok(rs)
}

pub fn stats(a: &StatsArgs) -> Result<Outcome> {
    check_head_limit(a.head_limit)?;
    let mut series: Vec<(String, RankSize)> = Vec::new();
    let mut failed = false;
    if let Some(n) = a.koch_triangles {
        if n == 0 || n > MAX_TRIANGLE_ITERATIONS {
            return Err(usage(format!(
                "--koch-triangles must lie in 1..={MAX_TRIANGLE_ITERATIONS}, got {n}"
            )));
        }
        let label = format!("koch-{n} triangles");
        let rs = print_series(&label, &triangle_inventory(n).sizes(), a.head_limit)?;
        series.push((label, rs));
    } else if let Some(path) = &a.input {
        let format = resolve_format(path, a.format, "--format")?;
        for f in &load(path, format, a.strict)? {
            let label = format!("{} {}", f.id, a.measure);
            if f.line.len() < 3 {
                out!("== {label}: no interior vertices");
                continue;
            }
            let outcome = measure_tree(&f.line, a.measure)
                .map_err(anyhow::Error::from)
                .and_then(|t| print_series(&label, &t.interior_values(), a.head_limit));
            match outcome {
                Ok(rs) => series.push((label, rs)),
                Err(e) => {
                    eprintln!("error: feature {}: {e:#}", f.id);
                    failed = true;
                }
            }
        }
    }
    if let Some(plot) = &a.plot {
        if series.is_empty() {
            anyhow::bail!("nothing to plot");
        }
        io::render_rank_size(&series, plot)?;
    }
    Ok(if failed {
        Outcome::Partial
    } else {
        Outcome::Success
    })
}

// ---------------------------------------------------------------- compare

/// Parses the algorithm list, dropping repeats with a warning.
fn compare_algorithms(names: &[String]) -> Result<Vec<AlgoName>> {
    let mut algos: Vec<AlgoName> = Vec::new();
    for raw in names {
        let name = raw.trim();
        let algo = AlgoName::from_str(name, true).map_err(|_| {
            usage(format!(
                "unknown algorithm '{name}' (expected ht, dp or vw)"
            ))
        })?;
        if algos.contains(&algo) {
            eprintln!(
                "warning: algorithm '{}' listed more than once; running it once",
                algo.as_str()
            );
        } else {
            algos.push(algo);
        }
    }
    if algos.len() < 2 {
        return Err(usage("compare needs at least two distinct algorithms"));
    }
    Ok(algos)
}

fn at_budget(
    line: &Polyline,
    algo: AlgoName,
    budget: usize,
    kind: MeasureKind,
    head_limit: f64,
) -> Result<(SimplificationResult, String)> {
    Ok(match algo {
        AlgoName::Ht => {
            let r = ht_level_for_budget(line, kind, head_limit, budget)?;
            let Algorithm::HeadTail { keep_level, .. } = r.algorithm else {
                unreachable!("ht search returns a head/tail result")
            };
            (r, format!("level={keep_level}"))
        }
        AlgoName::Dp => {
            let r = dp_tolerance_for_budget(line, budget)?;
            let Algorithm::DouglasPeucker { tolerance } = r.algorithm else {
                unreachable!("dp search returns a Douglas-Peucker result")
            };
            (r, format!("tolerance={tolerance}"))
        }
        AlgoName::Vw => {
            let target = budget.min(line.len());
            (simplify_vw_count(line, target)?, format!("count={target}"))
        }
    })
}

pub fn compare(a: &CompareArgs) -> Result<Outcome> {
    let algos = compare_algorithms(&a.algos)?;
    if a.budget < 2 {
        return Err(usage("--budget must be at least 2"));
    }
    check_head_limit(a.head_limit)?;
    let format = resolve_format(&a.input, a.format, "--format")?;
    let features = load(&a.input, format, a.strict)?;

    let mut table = Table::new([
        "feature",
        "algorithm",
        "parameter",
        "retained",
        "crossings",
        "ht_before",
        "ht_after",
        "head_fractions",
        "minority_heads",
    ]);
    let mut failed = false;
    for f in &features {
        let before = ht_cell(&summarize(&f.line, a.measure, a.head_limit));
        for &algo in &algos {
            let attempt = at_budget(&f.line, algo, a.budget, a.measure, a.head_limit)
                .and_then(|(r, p)| Ok((r.apply(&f.line)?, r, p)));
            let (line, result, param) = match attempt {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: feature {} with {}: {e:#}", f.id, algo.as_str());
                    failed = true;
                    continue;
                }
            };
            let after = summarize(&line, a.measure, a.head_limit);
            let (fractions, minority) = match &after {
                Some(s) => (
                    join_nums(&s.head_fractions).replace(' ', ";"),
                    if s.head_fractions.iter().all(|&h| h < 0.5) {
                        "yes"
                    } else {
                        "no"
                    },
                ),
                None => ("-".into(), "-"),
            };
            table.row(vec![
                f.id.clone(),
                algo.as_str().into(),
                param,
                result.retained_count().to_string(),
                detect_self_intersections(&line).len().to_string(),
                before.clone(),
                ht_cell(&after),
                fractions,
                minority.into(),
            ]);
        }
    }
    out!(@raw table.render());
    if let Some(path) = &a.report {
        write_report(&table, path)?;
    }
    Ok(if failed {
        Outcome::Partial
    } else {
        Outcome::Success
    })
}

fn write_report(table: &Table, path: &Path) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(table.header())?;
    for row in table.rows() {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_labels() {
        assert_eq!(size_label(1.0 / 3.0), "1/3");
        assert_eq!(size_label(1.0 / 27.0), "1/27");
        assert_eq!(size_label(0.3), "0.3");
    }

    #[test]
    fn algorithm_lists() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(
            compare_algorithms(&names(&["ht", "DP", "ht"])).unwrap(),
            vec![AlgoName::Ht, AlgoName::Dp]
        );
        assert!(compare_algorithms(&names(&["ht"]))
            .unwrap_err()
            .is::<Usage>());
        assert!(compare_algorithms(&names(&["ht", "ht"]))
            .unwrap_err()
            .is::<Usage>());
        assert!(compare_algorithms(&names(&["ht", "rdp"]))
            .unwrap_err()
            .is::<Usage>());
    }
}
