//! Quality measures of a single drawing.

use alloc::vec::Vec;

use crate::drawing::{count_crossings, count_segments, odd_degree_half, Drawing};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord {
    pub segments: usize,
    /// `n_odd / 2`; only reported for trees.
    pub lower_bound: Option<usize>,
    pub crossings: usize,
    pub width: f64,
    pub height: f64,
    pub area: f64,
    /// Smallest angle between consecutive edges around a vertex, in degrees.
    pub min_angle: f64,
    /// Standard deviation of the edge lengths divided by their mean.
    pub edge_length_cv: f64,
}

pub fn evaluate(drawing: &Drawing, tree_mode: bool) -> MetricsRecord {
    let (width, height) = match drawing.bounding_box() {
        Some((lo, hi)) => (hi.x - lo.x, hi.y - lo.y),
        None => (0.0, 0.0),
    };
    MetricsRecord {
        segments: count_segments(drawing).0,
        lower_bound: tree_mode.then(|| odd_degree_half(&drawing.graph)),
        crossings: count_crossings(drawing),
        width,
        height,
        area: width * height,
        min_angle: min_angle(drawing),
        edge_length_cv: edge_length_cv(drawing),
    }
}

/// 180 when no vertex has two incident edges of positive length.
pub fn min_angle(drawing: &Drawing) -> f64 {
    let pts = drawing.positions.to_real();
    let mut best = 180.0f64;
    for (v, nbrs) in drawing.graph.adjacency().iter().enumerate() {
        let mut angles: Vec<f64> = nbrs
            .iter()
            .map(|&u| pts[u] - pts[v])
            .filter(|d| d.norm() > 0.0)
            .map(|d| d.angle().to_degrees())
            .collect();
        if angles.len() < 2 {
            continue;
        }
        angles.sort_by(f64::total_cmp);
        for w in angles.windows(2) {
            best = best.min(w[1] - w[0]);
        }
        best = best.min(angles[0] + 360.0 - angles[angles.len() - 1]);
    }
    best
}

/// 0 without edges.
pub fn edge_length_cv(drawing: &Drawing) -> f64 {
    let pts = drawing.positions.to_real();
    let lengths: Vec<f64> = drawing
        .graph
        .edges()
        .iter()
        .map(|&(u, v)| (pts[u] - pts[v]).norm())
        .collect();
    if lengths.is_empty() {
        return 0.0;
    }
    let m = lengths.len() as f64;
    let mean = lengths.iter().sum::<f64>() / m;
    if mean == 0.0 {
        return 0.0;
    }
    let var = lengths.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / m;
    libm::sqrt(var) / mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GridPoint;
    use crate::graph::Graph;

    #[test]
    fn straight_path() {
        let g = Graph::new(3, alloc::vec![(0, 1), (1, 2)]).unwrap();
        let d = Drawing::grid(
            g,
            alloc::vec![GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(3, 0)],
        );
        let m = evaluate(&d, true);
        assert_eq!(m.segments, 1);
        assert_eq!(m.lower_bound, Some(1));
        assert_eq!(m.crossings, 0);
        assert_eq!((m.width, m.height, m.area), (3.0, 0.0, 0.0));
        assert_eq!(m.min_angle, 180.0);
        assert!((m.edge_length_cv - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn right_angle() {
        let g = Graph::new(3, alloc::vec![(0, 1), (0, 2)]).unwrap();
        let d = Drawing::grid(
            g,
            alloc::vec![GridPoint::new(0, 0), GridPoint::new(2, 0), GridPoint::new(0, 2)],
        );
        let m = evaluate(&d, false);
        assert_eq!(m.lower_bound, None);
        assert!((m.min_angle - 90.0).abs() < 1e-9);
        assert_eq!(m.segments, 2);
    }
}
