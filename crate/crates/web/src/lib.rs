//! Browser bindings for the htsimplify demo page.
//!
//! Every export returns a string (SVG markup or JSON) so the page needs no
//! glue beyond setting `innerHTML`. The `*_markup` functions hold the logic
//! and run natively in tests.

use htsimplify::io::{rank_size_document, svg_document, Style};
use htsimplify::koch::{koch_curve, triangle_inventory, KochSpec};
use htsimplify::scaling::{rank_size, DEFAULT_HEAD_LIMIT};
use htsimplify::simplify::{
    detect_self_intersections, measure_tree, repair_crossings, simplify_dp, simplify_ht,
    simplify_vw_count, ScalingSummary,
};
use htsimplify::{MeasureKind, Polyline, SimplificationResult};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Iteration cap for the page; 4^7 + 1 vertices still redraws instantly.
pub const MAX_ITERATIONS: u32 = 7;

fn curve(iterations: u32, height_factor: f64) -> Result<Polyline, String> {
    if iterations > MAX_ITERATIONS {
        return Err(format!(
            "iterations above {MAX_ITERATIONS} are disabled in the demo"
        ));
    }
    koch_curve(&KochSpec {
        height_factor,
        ..KochSpec::new(iterations)
    })
    .map_err(|e| e.to_string())
}

fn ht_of(line: &Polyline, kind: MeasureKind) -> Option<usize> {
    let values = measure_tree(line, kind).ok()?.interior_values();
    ScalingSummary::of(&values, DEFAULT_HEAD_LIMIT)
        .ok()
        .map(|s| s.ht_index)
}

pub fn koch_markup(iterations: u32, height_factor: f64) -> Result<String, String> {
    let line = curve(iterations, height_factor)?;
    svg_document(&[(line, Style::default())]).map_err(|e| e.to_string())
}

/// Simplifies a Koch curve and returns JSON with the overlay SVG and counts.
///
/// `algo` is `ht` (parameter: keep level), `dp` (tolerance) or `vw`
/// (vertex count).
pub fn simplify_markup(
    iterations: u32,
    height_factor: f64,
    algo: &str,
    parameter: f64,
    repair: bool,
) -> Result<String, String> {
    let line = curve(iterations, height_factor)?;
    let kind = MeasureKind::PerpDistance;
    let result: SimplificationResult = match algo {
        "ht" => simplify_ht(&line, kind, parameter.max(1.0) as usize, DEFAULT_HEAD_LIMIT),
        "dp" => simplify_dp(&line, parameter),
        "vw" => simplify_vw_count(&line, (parameter.max(2.0) as usize).min(line.len())),
        other => return Err(format!("unknown algorithm '{other}'")),
    }
    .map_err(|e| e.to_string())?;
    let result = if repair {
        repair_crossings(&line, &result)
    } else {
        result
    };
    let simplified = result.apply(&line).map_err(|e| e.to_string())?;

    let original_style = Style {
        stroke: "#9aa5b1".into(),
        stroke_width: 1.0,
        ..Style::default()
    };
    let simplified_style = Style {
        stroke: "#c0392b".into(),
        stroke_width: 2.0,
        vertices: simplified.len() <= 300,
        ..Style::default()
    };
    let svg = svg_document(&[
        (line.clone(), original_style),
        (simplified.clone(), simplified_style),
    ])
    .map_err(|e| e.to_string())?;
    Ok(json!({
        "svg": svg,
        "before": line.len(),
        "after": simplified.len(),
        "ht_before": ht_of(&line, kind),
        "ht_after": ht_of(&simplified, kind),
        "crossings": detect_self_intersections(&simplified).len(),
        "reinserted": result.reinserted.len(),
        "algorithm": result.algorithm.to_string(),
    })
    .to_string())
}

/// Rank-size plot of the Koch triangle sizes next to the vertex measure
/// `measure` of the same curve.
pub fn rank_size_markup(iterations: u32, measure: &str) -> Result<String, String> {
    let kind: MeasureKind = measure.parse()?;
    if iterations == 0 {
        return Err("a straight line has nothing to rank".into());
    }
    let line = curve(iterations, 1.0)?;
    let triangles =
        rank_size(&triangle_inventory(iterations).sizes()).map_err(|e| e.to_string())?;
    let values = measure_tree(&line, kind)
        .map_err(|e| e.to_string())?
        .interior_values();
    let vertices = rank_size(&values).map_err(|e| e.to_string())?;
    rank_size_document(&[
        ("triangle sides".to_string(), triangles),
        (format!("vertex {kind}"), vertices),
    ])
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn koch_svg(iterations: u32, height_factor: f64) -> Result<String, JsError> {
    koch_markup(iterations, height_factor).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn simplify_overlay(
    iterations: u32,
    height_factor: f64,
    algo: &str,
    parameter: f64,
    repair: bool,
) -> Result<String, JsError> {
    simplify_markup(iterations, height_factor, algo, parameter, repair)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rank_size_svg(iterations: u32, measure: &str) -> Result<String, JsError> {
    rank_size_markup(iterations, measure).map_err(|e| JsError::new(&e))
}
