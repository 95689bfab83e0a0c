use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::{triangle_area, Polyline};

use super::{Algorithm, SimplificationResult, SimplifyError};

/// A removed vertex and its effective area at the moment of removal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Elimination {
    pub vertex: usize,
    pub area: f64,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    area: f64,
    vertex: usize,
    generation: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Reversed: BinaryHeap is a max-heap and we pop the smallest area,
    // lowest vertex index first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .area
            .total_cmp(&self.area)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Order in which Visvalingam-Whyatt removes every interior vertex.
///
/// Each round removes the vertex whose triangle with its current neighbours
/// is smallest, then recomputes the areas of the two neighbours. Areas are
/// raw; no monotone adjustment is applied.
pub fn vw_elimination_order(line: &Polyline) -> Vec<Elimination> {
    let pts = line.vertices();
    let n = pts.len();
    if n < 3 {
        return Vec::new();
    }
    let mut prev: Vec<usize> = (0..n).map(|i| i.wrapping_sub(1)).collect();
    let mut next: Vec<usize> = (0..n).map(|i| i + 1).collect();
    let mut generation = vec![0u32; n];
    let mut heap: BinaryHeap<Candidate> = (1..n - 1)
        .map(|i| Candidate {
            area: triangle_area(pts[i - 1], pts[i], pts[i + 1]),
            vertex: i,
            generation: 0,
        })
        .collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n - 2);
    while let Some(c) = heap.pop() {
        if removed[c.vertex] || generation[c.vertex] != c.generation {
            continue;
        }
        let v = c.vertex;
        removed[v] = true;
        order.push(Elimination {
            vertex: v,
            area: c.area,
        });
        let (p, q) = (prev[v], next[v]);
        next[p] = q;
        prev[q] = p;
        for u in [p, q] {
            if u == 0 || u == n - 1 {
                continue;
            }
            generation[u] += 1;
            heap.push(Candidate {
                area: triangle_area(pts[prev[u]], pts[u], pts[next[u]]),
                vertex: u,
                generation: generation[u],
            });
        }
    }
    order
}

fn retained_after(n: usize, eliminated: &[Elimination]) -> Vec<usize> {
    let mut keep = vec![true; n];
    for e in eliminated {
        keep[e.vertex] = false;
    }
    (0..n).filter(|&k| keep[k]).collect()
}

/// Removes vertices while the smallest effective area is below `min_area`.
pub fn simplify_vw(line: &Polyline, min_area: f64) -> Result<SimplificationResult, SimplifyError> {
    if !(min_area > 0.0) {
        return Err(SimplifyError::NonPositiveThreshold(min_area));
    }
    let order = vw_elimination_order(line);
    let stop = order
        .iter()
        .position(|e| e.area >= min_area)
        .unwrap_or(order.len());
    let n = line.len();
    Ok(SimplificationResult::new(
        retained_after(n, &order[..stop]),
        vec![0; n],
        Algorithm::VisvalingamArea { min_area },
    ))
}

/// Removes vertices until `target` remain.
pub fn simplify_vw_count(
    line: &Polyline,
    target: usize,
) -> Result<SimplificationResult, SimplifyError> {
    let n = line.len();
    if target < 2 || target > n {
        return Err(SimplifyError::TargetOutOfRange { target, len: n });
    }
    let order = vw_elimination_order(line);
    Ok(SimplificationResult::new(
        retained_after(n, &order[..n - target]),
        vec![0; n],
        Algorithm::VisvalingamCount { target },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wedge() -> Polyline {
        Polyline::from_xy(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap()
    }

    #[test]
    fn wedge_thresholds() {
        assert_eq!(simplify_vw(&wedge(), 0.5).unwrap().retained, vec![0, 1, 2]);
        assert_eq!(simplify_vw(&wedge(), 1.5).unwrap().retained, vec![0, 2]);
        assert_eq!(
            simplify_vw(&wedge(), 0.0),
            Err(SimplifyError::NonPositiveThreshold(0.0))
        );
    }

    #[test]
    fn count_contract() {
        let line = Polyline::new(
            (0..10)
                .map(|i| crate::geometry::Point::new(i as f64, ((i * 7) % 5) as f64))
                .collect(),
        )
        .unwrap();
        assert_eq!(simplify_vw_count(&line, 10).unwrap().retained_count(), 10);
        assert_eq!(simplify_vw_count(&line, 2).unwrap().retained, vec![0, 9]);
        assert_eq!(
            simplify_vw_count(&line, 1),
            Err(SimplifyError::TargetOutOfRange { target: 1, len: 10 })
        );
        assert_eq!(
            simplify_vw_count(&line, 11),
            Err(SimplifyError::TargetOutOfRange {
                target: 11,
                len: 10
            })
        );
    }

    #[test]
    fn small_bumps_example() {
        // initial areas: v1 = 0.075, v2 = 0 (on the line (1,0.1)-(3,0));
        // once v2 is gone, v1 spans (0,0)-(3,0) with area 0.15
        let line = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.1), (2.0, 0.05), (3.0, 0.0)]).unwrap();
        let order = vw_elimination_order(&line);
        assert_eq!(
            order.iter().map(|e| e.vertex).collect::<Vec<_>>(),
            vec![2, 1]
        );
        assert!((order[1].area - 0.15).abs() < 1e-12);
        assert_eq!(simplify_vw(&line, 0.12).unwrap().retained, vec![0, 1, 3]);
        assert_eq!(simplify_vw(&line, 0.2).unwrap().retained, vec![0, 3]);
    }

    #[test]
    fn two_vertex_line() {
        let l = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!(vw_elimination_order(&l).is_empty());
        assert_eq!(simplify_vw(&l, 1.0).unwrap().retained, vec![0, 1]);
    }
}
