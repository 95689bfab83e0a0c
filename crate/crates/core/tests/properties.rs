mod common;

use common::*;
use htsimplify::geometry::{
    perpendicular_distance, polyline_length, segments_intersect, triangle_area, turn_angle,
};
use htsimplify::io::Format;
use htsimplify::simplify::measure_tree;
use htsimplify::{MeasureKind, Point, Polyline, Segment};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(CASES, 0x5eed_0001))]

    #[test]
    fn endpoints_survive_every_algorithm(
        line in polyline(2, 40),
        tolerance in 1e-3..50.0f64,
        level in 1usize..6,
        frac in 0.0..1.0f64,
    ) {
        prop_endpoints(&line, tolerance, level, frac)?;
    }

    #[test]
    fn ht_levels_nest(line in polyline(3, 60)) {
        prop_ht_nesting(&line, MeasureKind::PerpDistance)?;
        prop_ht_nesting(&line, MeasureKind::TriangleArea)?;
    }

    #[test]
    fn dp_is_monotone_in_tolerance(line in polyline(3, 50), t1 in 1e-3..80.0f64, t2 in 1e-3..80.0f64) {
        prop_dp_monotone(&line, t1, t2)?;
    }

    #[test]
    fn ht_index_ignores_positive_scaling(
        values in prop::collection::vec(1e-3..1e3f64, 1..80),
        factor in prop_oneof![1e-3..1e3f64, (-10i32..10).prop_map(|e| 2f64.powi(e))],
    ) {
        prop_ht_scale_invariant(&values, factor)?;
    }

    #[test]
    fn rank_size_keeps_the_multiset(values in prop::collection::vec(0.0..1e6f64, 1..80)) {
        prop_rank_size_roundtrip(&values)?;
    }

    #[test]
    fn geojson_roundtrip(set in feature_set(Format::GeoJson)) {
        prop_io_roundtrip(&set, Format::GeoJson)?;
    }

    #[test]
    fn wkt_roundtrip(set in feature_set(Format::Wkt)) {
        prop_io_roundtrip(&set, Format::Wkt)?;
    }

    #[test]
    fn csv_roundtrip(set in feature_set(Format::Csv)) {
        prop_io_roundtrip(&set, Format::Csv)?;
    }
}

fn pt((x, y): (f64, f64)) -> Point {
    Point::new(x, y)
}

fn xy() -> impl Strategy<Value = (f64, f64)> {
    (-100.0..100.0f64, -100.0..100.0f64)
}

proptest! {
    #![proptest_config(config(CASES, 0x5eed_0002))]

    #[test]
    fn distance_is_a_metric(a in xy(), b in xy(), c in xy()) {
        let (a, b, c) = (pt(a), pt(b), pt(c));
        prop_assert!(a.distance(b) >= 0.0);
        prop_assert_eq!(a.distance(b), b.distance(a));
        prop_assert!(a.distance(c) <= a.distance(b) + b.distance(c) + 1e-9);
    }

    #[test]
    fn perpendicular_distance_is_symmetric_in_chord(p in xy(), a in xy(), b in xy()) {
        let (p, a, b) = (pt(p), pt(a), pt(b));
        let d1 = perpendicular_distance(p, a, b);
        let d2 = perpendicular_distance(p, b, a);
        prop_assert!(d1 >= 0.0);
        prop_assert!((d1 - d2).abs() <= 1e-9 * (1.0 + d1));
        prop_assert!(d1 <= p.distance(a) + 1e-9);
    }

    #[test]
    fn triangle_area_ignores_vertex_order(a in xy(), b in xy(), c in xy()) {
        let (a, b, c) = (pt(a), pt(b), pt(c));
        let s = triangle_area(a, b, c);
        prop_assert!(s >= 0.0);
        for t in [triangle_area(b, c, a), triangle_area(c, a, b), triangle_area(b, a, c)] {
            prop_assert!((s - t).abs() <= 1e-9 * (1.0 + s));
        }
    }

    #[test]
    fn turn_angle_is_bounded(a in xy(), b in xy(), c in xy()) {
        if let Ok(angle) = turn_angle(pt(a), pt(b), pt(c)) {
            prop_assert!((0.0..=180.0).contains(&angle));
            let back = turn_angle(pt(c), pt(b), pt(a)).unwrap();
            prop_assert!((angle - back).abs() <= 1e-9);
        }
    }

    #[test]
    fn intersection_is_symmetric(a in xy(), b in xy(), c in xy(), d in xy()) {
        let s1 = Segment::new(pt(a), pt(b));
        let s2 = Segment::new(pt(c), pt(d));
        match (segments_intersect(s1, s2), segments_intersect(s2, s1)) {
            (Ok(Some(p)), Ok(Some(q))) => {
                prop_assert!(p.distance(q) <= 1e-6);
                prop_assert!(perpendicular_distance(p, s1.a, s1.b) <= 1e-6);
                prop_assert!(perpendicular_distance(p, s2.a, s2.b) <= 1e-6);
            }
            (Ok(None), Ok(None)) | (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "asymmetric: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn length_bounds_the_chord(line in polyline(2, 30)) {
        prop_assert!(polyline_length(&line) + 1e-9 >= line.first().distance(line.last()));
    }

    #[test]
    fn measures_survive_rigid_motion(
        line in polyline(3, 40),
        theta in 0.0..std::f64::consts::TAU,
        dx in -1e3..1e3f64,
        dy in -1e3..1e3f64,
    ) {
        let (s, c) = theta.sin_cos();
        let moved = Polyline::new(
            line.vertices()
                .iter()
                .map(|p| Point::new(c * p.x - s * p.y + dx, s * p.x + c * p.y + dy))
                .collect(),
        )
        .unwrap();
        for kind in [MeasureKind::PerpDistance, MeasureKind::TriangleArea, MeasureKind::TurnAngle] {
            let a = measure_tree(&line, kind).unwrap().interior_values();
            let b = measure_tree(&moved, kind).unwrap().interior_values();
            prop_assert_eq!(a.len(), b.len());
            for (u, v) in a.iter().zip(&b) {
                prop_assert!((u - v).abs() <= 1e-6 * (1.0 + u.abs()), "{kind}: {u} vs {v}");
            }
        }
    }
}
