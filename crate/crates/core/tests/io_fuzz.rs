//! Truncated and corrupted documents must produce errors, never panics.

use std::panic::catch_unwind;

use htsimplify::io::{
    format_features, parse_features, Feature, FeatureSet, Format, IoError, ReadOptions,
};
use htsimplify::koch::{koch_curve, KochSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MULTI: &str = r#"{"type":"FeatureCollection","features":[
 {"type":"Feature","id":"a","properties":{"name":"first"},"geometry":{"type":"LineString","coordinates":[[0,0],[1,2.5],[2,-1e-3]]}},
 {"type":"Feature","id":7,"properties":{},"geometry":{"type":"MultiLineString","coordinates":[[[0,0],[1,1]],[[5,5],[6,7],[7,5]]]}}
]}"#;

fn corpus() -> Vec<(Format, String)> {
    let mut set = FeatureSet::new();
    set.push(Feature::new("koch", koch_curve(&KochSpec::new(2)).unwrap()))
        .unwrap();
    let mut docs: Vec<(Format, String)> = [Format::GeoJson, Format::Wkt, Format::Csv]
        .into_iter()
        .map(|f| (f, format_features(&set, f).unwrap()))
        .collect();
    docs.push((Format::GeoJson, MULTI.to_string()));
    docs.push((
        Format::Wkt,
        "a\tLINESTRING (0 0, 1 1, 2 0)\nb\tlinestring z (0 0 1, 3 4 1)\n".to_string(),
    ));
    docs
}

/// Parses without panicking; syntax errors must carry a 1-based position.
fn parse_safely(text: &str, format: Format) -> Result<(), IoError> {
    let owned = text.to_string();
    let outcome =
        catch_unwind(move || parse_features(&owned, format, "line", ReadOptions::default()))
            .unwrap_or_else(|_| panic!("{format} parser panicked on:\n{text}"));
    match outcome {
        Ok(_) => Ok(()),
        Err(e) => {
            if let Some((line, column)) = e.position() {
                assert!(line >= 1 && column >= 1, "{format}: bad position in {e}");
            }
            Err(e)
        }
    }
}

fn char_prefixes(text: &str) -> impl Iterator<Item = &str> {
    text.char_indices().map(move |(i, _)| &text[..i])
}

#[test]
fn truncations_never_panic() {
    for (format, doc) in corpus() {
        for prefix in char_prefixes(&doc) {
            let result = parse_safely(prefix, format);
            let complete = prefix.trim_end() == doc.trim_end();
            match format {
                // an unfinished JSON document is always a syntax error
                Format::GeoJson if !complete && !prefix.trim().is_empty() => {
                    let e = result.expect_err("truncated JSON accepted");
                    assert!(e.position().is_some(), "no position: {e}");
                }
                // a cut inside the last LINESTRING leaves it unclosed
                Format::Wkt if !prefix.trim().is_empty() && !prefix.trim_end().ends_with(')') => {
                    let e = result.expect_err("truncated WKT accepted");
                    assert!(e.position().is_some(), "no position: {e}");
                }
                _ => {}
            }
        }
    }
}

#[test]
fn corruptions_never_panic() {
    const NOISE: &[char] = &[
        ',', '(', ')', '{', '}', '[', ']', '"', ':', 'x', '-', '.', 'e', ' ', '9', '\n', '\t',
        '\u{e9}',
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut rejected = 0;
    let mut total = 0;
    for (format, doc) in corpus() {
        let chars: Vec<char> = doc.chars().collect();
        for _ in 0..400 {
            let mut mutated = chars.clone();
            for _ in 0..rng.gen_range(1..4) {
                let at = rng.gen_range(0..mutated.len());
                match rng.gen_range(0..3) {
                    0 => mutated[at] = NOISE[rng.gen_range(0..NOISE.len())],
                    1 => {
                        mutated.remove(at);
                    }
                    _ => mutated.insert(at, NOISE[rng.gen_range(0..NOISE.len())]),
                }
                if mutated.is_empty() {
                    break;
                }
            }
            let text: String = mutated.into_iter().collect();
            total += 1;
            if parse_safely(&text, format).is_err() {
                rejected += 1;
            }
        }
    }
    assert!(
        rejected * 4 > total,
        "only {rejected} of {total} corruptions rejected"
    );
}

#[test]
fn specific_errors_point_at_the_problem() {
    let e = parse_safely("x,y\n0,0\n1,0\n2,oops\n", Format::Csv).unwrap_err();
    assert_eq!(e.position().unwrap().0, 4);
    let e = parse_safely("LINESTRING (0 0, 1 1)\nLINESTRING (0 0 1 1)\n", Format::Wkt).unwrap_err();
    assert_eq!(e.position().unwrap().0, 2);
    let e = parse_safely(
        "{\n  \"type\": \"Feature\",\n  \"geometry\": nulx\n}",
        Format::GeoJson,
    )
    .unwrap_err();
    assert_eq!(e.position().unwrap().0, 3);
}
