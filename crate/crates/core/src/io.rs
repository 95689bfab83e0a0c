//! Reading and writing polylines (GeoJSON, WKT, CSV) and SVG rendering.
//!
//! GeoJSON `MultiLineString` features are split into one feature per part,
//! with ids suffixed `#k`. WKT files hold one `LINESTRING` per text line,
//! optionally preceded by an id and a tab. CSV files hold a single polyline
//! as `x,y` rows; its id is the file stem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::geometry::{GeometryError, Point, Polyline};
use crate::scaling::RankSize;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed document: {0}")]
    Structure(String),
    #[error("unsupported geometry '{kind}' in feature {id}")]
    UnsupportedGeometry { kind: String, id: String },
    #[error("invalid geometry in feature {id}: {source}")]
    InvalidGeometry {
        id: String,
        #[source]
        source: GeometryError,
    },
    #[error("duplicate feature id '{0}'")]
    DuplicateId(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("nothing to render")]
    EmptyInput,
    #[error("cannot write {path}: {source}")]
    WriteFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    ReadFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl IoError {
    /// Line and column of a syntax error, when known.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            IoError::Parse { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    GeoJson,
    Wkt,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "geojson" | "json" => Some(Format::GeoJson),
            "wkt" | "txt" => Some(Format::Wkt),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "geojson" | "json" => Ok(Format::GeoJson),
            "wkt" => Ok(Format::Wkt),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format '{other}' (expected geojson, wkt or csv)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::GeoJson => "geojson",
            Format::Wkt => "wkt",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub id: String,
    pub line: Polyline,
    pub properties: BTreeMap<String, String>,
}

impl Feature {
    pub fn new(id: impl Into<String>, line: Polyline) -> Self {
        Feature {
            id: id.into(),
            line,
            properties: BTreeMap::new(),
        }
    }
}

/// Features with unique ids, in document order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureSet {
    features: Vec<Feature>,
}

impl FeatureSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, feature: Feature) -> Result<(), IoError> {
        if self.features.iter().any(|f| f.id == feature.id) {
            return Err(IoError::DuplicateId(feature.id));
        }
        self.features.push(feature);
        Ok(())
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Feature> {
        self.features.iter()
    }
}

impl<'a> IntoIterator for &'a FeatureSet {
    type Item = &'a Feature;
    type IntoIter = std::slice::Iter<'a, Feature>;

    fn into_iter(self) -> Self::IntoIter {
        self.features.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReadOptions {
    /// Fail on unsupported geometries instead of skipping them.
    pub strict: bool,
}

/// A parsed document plus the notes about skipped content.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Parsed {
    pub features: FeatureSet,
    pub warnings: Vec<String>,
}

pub fn read_features(path: &Path, format: Format) -> Result<FeatureSet, IoError> {
    Ok(read_features_with(path, format, ReadOptions::default())?.features)
}

pub fn read_features_with(
    path: &Path,
    format: Format,
    options: ReadOptions,
) -> Result<Parsed, IoError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(IoError::FileNotFound(path.display().to_string()))
        }
        Err(source) => {
            return Err(IoError::ReadFailure {
                path: path.display().to_string(),
                source,
            })
        }
    };
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("line")
        .to_string();
    parse_features(&text, format, &stem, options)
}

/// Parses a document held in memory. `default_id` names CSV lines and
/// GeoJSON geometries that carry no id.
pub fn parse_features(
    text: &str,
    format: Format,
    default_id: &str,
    options: ReadOptions,
) -> Result<Parsed, IoError> {
    match format {
        Format::GeoJson => parse_geojson(text, default_id, options),
        Format::Wkt => parse_wkt(text, options),
        Format::Csv => parse_csv(text, default_id),
    }
}

pub fn write_features(set: &FeatureSet, path: &Path, format: Format) -> Result<(), IoError> {
    let text = format_features(set, format)?;
    fs::write(path, text).map_err(|source| IoError::WriteFailure {
        path: path.display().to_string(),
        source,
    })
}

/// Serializes a feature set. Coordinates use the shortest decimal form that
/// reads back to the same `f64`.
pub fn format_features(set: &FeatureSet, format: Format) -> Result<String, IoError> {
    match format {
        Format::GeoJson => Ok(format_geojson(set)),
        Format::Wkt => Ok(format_wkt(set)),
        Format::Csv => format_csv(set),
    }
}

fn make_line(id: &str, points: Vec<Point>) -> Result<Polyline, IoError> {
    Polyline::new(points).map_err(|source| IoError::InvalidGeometry {
        id: id.to_string(),
        source,
    })
}

// ---------------------------------------------------------------- GeoJSON

fn parse_geojson(text: &str, default_id: &str, options: ReadOptions) -> Result<Parsed, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        IoError::Parse {
            line: e.line().max(1),
            // serde_json reports column 0 for errors found right after a newline
            column: e.column().max(1),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    let mut out = Parsed::default();
    match type_of(&root)? {
        "FeatureCollection" => {
            let features = root
                .get("features")
                .and_then(Value::as_array)
                .ok_or_else(|| {
                    IoError::Structure("FeatureCollection without 'features' array".into())
                })?;
            for (index, f) in features.iter().enumerate() {
                geojson_feature(f, &format!("f{index}"), options, &mut out)?;
            }
        }
        "Feature" => geojson_feature(&root, default_id, options, &mut out)?,
        _ => geojson_geometry(&root, default_id, BTreeMap::new(), options, &mut out)?,
    }
    Ok(out)
}

fn type_of(v: &Value) -> Result<&str, IoError> {
    v.get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| IoError::Structure("object without a string 'type' member".into()))
}

fn geojson_feature(
    f: &Value,
    fallback_id: &str,
    options: ReadOptions,
    out: &mut Parsed,
) -> Result<(), IoError> {
    if type_of(f)? != "Feature" {
        return Err(IoError::Structure(format!(
            "expected a Feature, found {}",
            type_of(f)?
        )));
    }
    let id = match f.get("id") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => fallback_id.to_string(),
    };
    let mut properties = BTreeMap::new();
    if let Some(Value::Object(map)) = f.get("properties") {
        for (k, v) in map {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            properties.insert(k.clone(), text);
        }
    }
    match f.get("geometry") {
        None | Some(Value::Null) => {
            let msg = format!("feature {id} has no geometry");
            if options.strict {
                return Err(IoError::UnsupportedGeometry {
                    kind: "null".into(),
                    id,
                });
            }
            out.warnings.push(msg);
            Ok(())
        }
        Some(g) => geojson_geometry(g, &id, properties, options, out),
    }
}

fn geojson_geometry(
    g: &Value,
    id: &str,
    properties: BTreeMap<String, String>,
    options: ReadOptions,
    out: &mut Parsed,
) -> Result<(), IoError> {
    let kind = type_of(g)?;
    let coords = || {
        g.get("coordinates")
            .ok_or_else(|| IoError::Structure(format!("{kind} in feature {id} has no coordinates")))
    };
    match kind {
        "LineString" => {
            let line = make_line(id, positions(coords()?, id)?)?;
            out.features.push(Feature {
                id: id.to_string(),
                line,
                properties,
            })
        }
        "MultiLineString" => {
            let parts = coords()?.as_array().ok_or_else(|| {
                IoError::Structure(format!("feature {id}: coordinates must be an array"))
            })?;
            for (k, part) in parts.iter().enumerate() {
                let part_id = format!("{id}#{k}");
                let line = make_line(&part_id, positions(part, &part_id)?)?;
                out.features.push(Feature {
                    id: part_id,
                    line,
                    properties: properties.clone(),
                })?;
            }
            Ok(())
        }
        other => {
            if options.strict {
                return Err(IoError::UnsupportedGeometry {
                    kind: other.to_string(),
                    id: id.to_string(),
                });
            }
            out.warnings.push(format!(
                "skipped unsupported geometry {other} in feature {id}"
            ));
            Ok(())
        }
    }
}

fn positions(v: &Value, id: &str) -> Result<Vec<Point>, IoError> {
    let bad = || {
        IoError::Structure(format!(
            "feature {id}: positions must be [x, y] number arrays"
        ))
    };
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|pos| {
            let pair = pos.as_array().filter(|a| a.len() >= 2).ok_or_else(bad)?;
            let x = pair[0].as_f64().ok_or_else(bad)?;
            let y = pair[1].as_f64().ok_or_else(bad)?;
            Ok(Point::new(x, y))
        })
        .collect()
}

fn format_geojson(set: &FeatureSet) -> String {
    let features: Vec<Value> = set
        .iter()
        .map(|f| {
            let coords: Vec<Value> = f
                .line
                .vertices()
                .iter()
                .map(|p| json!([p.x, p.y]))
                .collect();
            let props: Map<String, Value> = f
                .properties
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            json!({
                "type": "Feature",
                "id": f.id,
                "properties": props,
                "geometry": { "type": "LineString", "coordinates": coords },
            })
        })
        .collect();
    let doc = json!({ "type": "FeatureCollection", "features": features });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------- WKT

fn parse_wkt(text: &str, options: ReadOptions) -> Result<Parsed, IoError> {
    let mut out = Parsed::default();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (id, body, offset) = match raw.split_once('\t') {
            Some((id, body)) => (id.trim().to_string(), body, id.len() + 1),
            None => (format!("L{line_no}"), raw, 0),
        };
        let mut cursor = WktCursor {
            text: body,
            pos: 0,
            line: line_no,
            offset,
            keyword: String::new(),
        };
        match cursor.linestring()? {
            Some(points) => {
                let line = make_line(&id, points)?;
                out.features.push(Feature::new(id, line))?;
            }
            None => {
                let kind = cursor.keyword.clone();
                if options.strict {
                    return Err(IoError::UnsupportedGeometry { kind, id });
                }
                out.warnings.push(format!(
                    "line {line_no}: skipped unsupported geometry {kind}"
                ));
            }
        }
    }
    Ok(out)
}

/// Geometry types other than LINESTRING; skipped, or fatal in strict mode.
const OTHER_WKT_TAGS: &[&str] = &[
    "POINT",
    "MULTIPOINT",
    "MULTILINESTRING",
    "POLYGON",
    "MULTIPOLYGON",
    "GEOMETRYCOLLECTION",
    "CIRCULARSTRING",
    "COMPOUNDCURVE",
    "CURVEPOLYGON",
    "MULTICURVE",
    "MULTISURFACE",
    "POLYHEDRALSURFACE",
    "TRIANGLE",
    "TIN",
];

struct WktCursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
    keyword: String,
}

impl WktCursor<'_> {
    fn error(&self, message: impl Into<String>) -> IoError {
        IoError::Parse {
            line: self.line,
            column: self.offset + self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), IoError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_ascii_uppercase()
    }

    fn number(&mut self) -> Result<f64, IoError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
            .unwrap_or(rest.len());
        let value = rest[..len]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| self.error("expected a number"))?;
        self.pos += len;
        Ok(value)
    }

    /// `Ok(None)` for a well-formed tag other than LINESTRING.
    fn linestring(&mut self) -> Result<Option<Vec<Point>>, IoError> {
        let tag = self.word();
        if tag.is_empty() {
            return Err(self.error("expected a geometry tag"));
        }
        if tag != "LINESTRING" {
            if !OTHER_WKT_TAGS.contains(&tag.as_str()) {
                self.pos = 0;
                self.skip_ws();
                return Err(self.error(format!("unknown geometry tag '{tag}'")));
            }
            self.keyword = tag;
            return Ok(None);
        }
        // optional Z / M / ZM dimension tag
        let save = self.pos;
        let dims = self.word();
        let extra = match dims.as_str() {
            "" => {
                self.pos = save;
                0
            }
            "Z" | "M" => 1,
            "ZM" => 2,
            "EMPTY" => return Err(self.error("empty LINESTRING")),
            other => return Err(self.error(format!("unexpected '{other}'"))),
        };
        self.expect('(')?;
        let mut points = Vec::new();
        loop {
            let x = self.number()?;
            let y = self.number()?;
            for _ in 0..extra {
                self.number()?;
            }
            points.push(Point::new(x, y));
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some(_) if extra == 0 => {
                    // tolerate an unannounced third ordinate
                    self.number()?;
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.error("trailing characters after LINESTRING"));
        }
        Ok(Some(points))
    }
}

fn format_wkt(set: &FeatureSet) -> String {
    let mut s = String::new();
    for f in set {
        let coords: Vec<String> = f
            .line
            .vertices()
            .iter()
            .map(|p| format!("{} {}", p.x, p.y))
            .collect();
        let _ = writeln!(s, "{}\tLINESTRING ({})", f.id, coords.join(", "));
    }
    s
}

// ---------------------------------------------------------------- CSV

fn parse_csv(text: &str, id: &str) -> Result<Parsed, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let (line, column) = e.position().map_or((0, 0), |p| (p.line() as usize, 1));
            IoError::Parse {
                line,
                column,
                message: e.to_string(),
            }
        })?;
        let line = record.position().map_or(index + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let field = |k: usize| {
            record
                .get(k)
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|v| v.is_finite())
        };
        match (field(0), field(1)) {
            (Some(x), Some(y)) => points.push(Point::new(x, y)),
            _ if index == 0 => {} // header
            (x, _) => {
                let column = if x.is_none() {
                    1
                } else {
                    record.get(0).map_or(0, str::len) + 2
                };
                return Err(IoError::Parse {
                    line,
                    column,
                    message: "expected numeric x,y".into(),
                });
            }
        }
    }
    let mut out = Parsed::default();
    if !points.is_empty() {
        out.features
            .push(Feature::new(id, make_line(id, points)?))?;
    }
    Ok(out)
}

fn format_csv(set: &FeatureSet) -> Result<String, IoError> {
    if set.len() > 1 {
        return Err(IoError::Unsupported(format!(
            "CSV holds a single polyline; got {} features",
            set.len()
        )));
    }
    let mut s = String::new();
    if let Some(f) = set.features().first() {
        s.push_str("x,y\n");
        for p in f.line.vertices() {
            let _ = writeln!(s, "{},{}", p.x, p.y);
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------- SVG

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub stroke: String,
    pub stroke_width: f64,
    pub opacity: f64,
    /// Draw a dot on every vertex.
    pub vertices: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: "#1f4e79".into(),
            stroke_width: 1.5,
            opacity: 1.0,
            vertices: false,
        }
    }
}

impl Style {
    pub fn stroke(color: &str, width: f64) -> Self {
        Style {
            stroke: color.into(),
            stroke_width: width,
            ..Default::default()
        }
    }
}

const VIEW_W: f64 = 800.0;
const VIEW_H: f64 = 600.0;
const MARGIN: f64 = 20.0;

/// One `<path>` per line, fitted to the viewport with the aspect ratio kept
/// and the y axis pointing up.
pub fn svg_document(lines: &[(Polyline, Style)]) -> Result<String, IoError> {
    if lines.is_empty() {
        return Err(IoError::EmptyInput);
    }
    let all = lines.iter().flat_map(|(l, _)| l.vertices().iter());
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in all {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    let scale = ((VIEW_W - 2.0 * MARGIN) / (max_x - min_x).max(span * 1e-9))
        .min((VIEW_H - 2.0 * MARGIN) / (max_y - min_y).max(span * 1e-9));
    let off_x = (VIEW_W - (max_x - min_x) * scale) / 2.0;
    let off_y = (VIEW_H - (max_y - min_y) * scale) / 2.0;
    let to_screen = |p: &Point| {
        (
            off_x + (p.x - min_x) * scale,
            VIEW_H - (off_y + (p.y - min_y) * scale),
        )
    };

    let mut s = svg_open(VIEW_W, VIEW_H);
    for (line, style) in lines {
        let mut d = String::new();
        for (k, p) in line.vertices().iter().enumerate() {
            let (x, y) = to_screen(p);
            let _ = write!(d, "{}{:.3} {:.3}", if k == 0 { "M" } else { " L" }, x, y);
        }
        let _ = writeln!(
            s,
            r#"  <path d="{d}" fill="none" stroke="{}" stroke-width="{}" stroke-opacity="{}" stroke-linejoin="round"/>"#,
            xml_escape(&style.stroke),
            style.stroke_width,
            style.opacity
        );
        if style.vertices {
            let _ = writeln!(
                s,
                r#"  <g fill="{}" class="vertices">"#,
                xml_escape(&style.stroke)
            );
            for p in line.vertices() {
                let (x, y) = to_screen(p);
                let _ = writeln!(
                    s,
                    r#"    <circle cx="{x:.3}" cy="{y:.3}" r="{}"/>"#,
                    style.stroke_width * 1.5
                );
            }
            s.push_str("  </g>\n");
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_svg(lines: &[(Polyline, Style)], path: &Path) -> Result<(), IoError> {
    write_text(path, &svg_document(lines)?)
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Rank-size plot: linear rank axis, logarithmic size axis, one marker per
/// value and one polyline per series.
///
/// Zero sizes cannot sit on a log axis; they are drawn on the bottom edge.
pub fn rank_size_document(series: &[(String, RankSize)]) -> Result<String, IoError> {
    if series.is_empty() || series.iter().all(|(_, rs)| rs.is_empty()) {
        return Err(IoError::EmptyInput);
    }
    let max_rank = series
        .iter()
        .map(|(_, rs)| rs.len())
        .max()
        .unwrap_or(1)
        .max(2) as f64;
    let positive = series
        .iter()
        .flat_map(|(_, rs)| rs.sizes())
        .filter(|&s| s > 0.0);
    let (lo, hi) = positive.fold((f64::MAX, f64::MIN), |(lo, hi), s| (lo.min(s), hi.max(s)));
    let (log_lo, log_hi) = if lo > hi {
        (0.0, 1.0)
    } else {
        let (l, h) = (lo.log10().floor(), hi.log10().ceil());
        if h > l {
            (l, h)
        } else {
            (l - 0.5, l + 0.5)
        }
    };

    let (left, right, top, bottom) = (70.0, VIEW_W - 20.0, 30.0, VIEW_H - 50.0);
    let sx = |rank: f64| left + (rank - 1.0) / (max_rank - 1.0) * (right - left);
    let sy = |size: f64| {
        if size <= 0.0 {
            return bottom;
        }
        bottom - (size.log10() - log_lo) / (log_hi - log_lo) * (bottom - top)
    };

    let mut s = svg_open(VIEW_W, VIEW_H);
    let _ = writeln!(
        s,
        r##"  <g stroke="#444" stroke-width="1"><line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}"/></g>"##
    );
    let mut decade = log_lo;
    while decade <= log_hi + 1e-9 {
        let y = sy(10f64.powf(decade));
        let _ = writeln!(
            s,
            r#"  <text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">1e{}</text>"#,
            left - 6.0,
            y + 4.0,
            decade
        );
        decade += 1.0;
    }
    let _ = writeln!(
        s,
        r#"  <text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">rank</text>"#,
        (left + right) / 2.0,
        VIEW_H - 15.0
    );
    let _ = writeln!(
        s,
        r#"  <text x="{left}" y="{:.1}" font-size="11" text-anchor="middle">1</text><text x="{right}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
        bottom + 16.0,
        bottom + 16.0,
        max_rank
    );
    for (k, (label, rs)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = rs
            .pairs
            .iter()
            .map(|&(r, v)| format!("{:.3},{:.3}", sx(r as f64), sy(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"  <g class="series" data-label="{}" fill="{color}" stroke="{color}">"#,
            xml_escape(label)
        );
        let _ = writeln!(
            s,
            r#"    <polyline points="{}" fill="none" stroke-width="1"/>"#,
            pts.join(" ")
        );
        for &(r, v) in &rs.pairs {
            let _ = writeln!(
                s,
                r#"    <circle cx="{:.3}" cy="{:.3}" r="3" stroke="none"/>"#,
                sx(r as f64),
                sy(v)
            );
        }
        let _ = writeln!(
            s,
            r#"    <text x="{:.1}" y="{:.1}" font-size="12" stroke="none">{}</text>"#,
            right - 150.0,
            top + 16.0 * (k as f64 + 1.0),
            xml_escape(label)
        );
        s.push_str("  </g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_rank_size(series: &[(String, RankSize)], path: &Path) -> Result<(), IoError> {
    write_text(path, &rank_size_document(series)?)
}

fn svg_open(w: f64, h: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::WriteFailure {
        path: path.display().to_string(),
        source,
    })
}

/// Ids that occur more than once; used to validate merged sets.
pub fn duplicate_ids<'a>(ids: impl IntoIterator<Item = &'a str>) -> Vec<&'a str> {
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            dups.insert(id);
        }
    }
    dups.into_iter().collect()
}
