//! Fruchterman–Reingold spring embedder, optionally with collinear paths.
//!
//! Each iteration sums the attractive force along every edge and the
//! repulsive force between every vertex pair, caps each vertex move by the
//! current temperature and cools linearly. The path-constrained variant then
//! overrides the moves of internal path vertices so that they land evenly
//! spaced on the segment between the moved path endpoints.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::Drawing;
use crate::geometry::Point;
use crate::graph::Graph;
use crate::paths::{validate_path_set, PathSet};
use crate::{Error, Result};

/// Relative spacing tolerance for constrained paths.
pub const EPS_SPACING: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceParams {
    /// Constant in the ideal edge length `k = C·sqrt(A / n)`.
    pub c: f64,
    /// Drawing area.
    pub area: f64,
    pub iterations: usize,
    pub initial_temperature: f64,
    pub seed: u64,
}

impl ForceParams {
    /// `C = 1`, `A = n`, 500 iterations, start temperature `0.1·sqrt(A)`.
    pub fn for_graph(n: usize, seed: u64) -> Self {
        let area = n.max(1) as f64;
        ForceParams {
            c: 1.0,
            area,
            iterations: 500,
            initial_temperature: 0.1 * libm::sqrt(area),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParameter("C must be positive"));
        }
        if !(self.area > 0.0 && self.area.is_finite()) {
            return Err(Error::InvalidParameter("area must be positive"));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iterations must be >= 1"));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::InvalidParameter("initial temperature must be positive"));
        }
        Ok(())
    }

    /// Ideal edge length for `n` vertices.
    pub fn ideal_length(&self, n: usize) -> f64 {
        self.c * libm::sqrt(self.area / n.max(1) as f64)
    }

    pub fn temperature(&self, t: usize) -> f64 {
        self.initial_temperature * (1.0 - t as f64 / self.iterations as f64)
    }
}

pub fn fr_attractive(d: f64, k: f64) -> f64 {
    d * d / k
}

pub fn fr_repulsive(d: f64, k: f64) -> f64 {
    -k * k / d
}

/// Plain spring embedder.
pub fn layout_force_directed(graph: &Graph, params: ForceParams) -> Result<Drawing> {
    params.validate()?;
    Ok(run(graph, &PathSet::default(), params))
}

/// Spring embedder that straightens the given paths.
///
/// The path set is validated first; if only its order is wrong, the
/// repaired order is used.
pub fn layout_fdfewseg(graph: &Graph, paths: &PathSet, params: ForceParams) -> Result<Drawing> {
    params.validate()?;
    let paths = validate_path_set(graph, paths)?.resolve(paths);
    Ok(run(graph, &paths, params))
}

/// Replaces the moves of internal path vertices, path by path in list order,
/// so that each lands on the affine interpolation of the moved endpoints.
pub fn apply_path_constraints(positions: &[Point], moves: &mut [Point], paths: &PathSet) {
    for path in paths.iter() {
        let k = path.len() - 1;
        let start = positions[path[0]] + moves[path[0]];
        let end = positions[path[k]] + moves[path[k]];
        for (i, &v) in path.iter().enumerate().take(k).skip(1) {
            let t = i as f64 / k as f64;
            let target = start.scale((k - i) as f64 / k as f64) + end.scale(t);
            moves[v] = target - positions[v];
        }
    }
}

/// Net force on every vertex.
pub fn forces(graph: &Graph, positions: &[Point], k: f64, d_min: f64, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = positions.len();
    let mut disp = vec![Point::default(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (dir, d) = direction(positions[i] - positions[j], d_min, rng);
            // repulsion is negative along the attraction axis, i.e. pushes apart
            let push = dir.scale(-fr_repulsive(d, k));
            disp[i] = disp[i] + push;
            disp[j] = disp[j] - push;
        }
    }
    for &(u, v) in graph.edges() {
        let (dir, d) = direction(positions[u] - positions[v], d_min, rng);
        let pull = dir.scale(fr_attractive(d, k));
        disp[u] = disp[u] - pull;
        disp[v] = disp[v] + pull;
    }
    disp
}

fn direction(delta: Point, d_min: f64, rng: &mut ChaCha8Rng) -> (Point, f64) {
    let d = delta.norm();
    if d < d_min {
        let a = rng.gen::<f64>() * core::f64::consts::TAU;
        let (s, c) = libm::sincos(a);
        (Point::new(c, s), d_min)
    } else {
        (delta.scale(1.0 / d), d)
    }
}

fn run(graph: &Graph, paths: &PathSet, params: ForceParams) -> Drawing {
    let n = graph.n();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let side = libm::sqrt(params.area);
    let mut pos: Vec<Point> = (0..n)
        .map(|_| {
            let x = rng.gen::<f64>() * side;
            let y = rng.gen::<f64>() * side;
            Point::new(x, y)
        })
        .collect();
    let k = params.ideal_length(n);
    let d_min = 1e-6 * side;
    for t in 0..params.iterations {
        let temp = params.temperature(t);
        let mut moves = forces(graph, &pos, k, d_min, &mut rng);
        for m in &mut moves {
            let len = m.norm();
            if len > temp {
                *m = m.scale(temp / len);
            }
        }
        apply_path_constraints(&pos, &mut moves, paths);
        for (p, m) in pos.iter_mut().zip(&moves) {
            *p = *p + *m;
        }
    }
    Drawing::real(graph.clone(), pos)
}

/// Largest distance of an internal vertex from the endpoint line, relative
/// to the endpoint distance, and largest deviation from even spacing along
/// it, in the same relative units.
pub fn path_deviation(positions: &[Point], path: &[usize]) -> (f64, f64) {
    let k = path.len() - 1;
    let a = positions[path[0]];
    let b = positions[path[k]];
    let len = (b - a).norm();
    if len == 0.0 {
        return (f64::INFINITY, f64::INFINITY);
    }
    let dir = (b - a).scale(1.0 / len);
    let mut off_line: f64 = 0.0;
    let mut spacing: f64 = 0.0;
    for (i, &v) in path.iter().enumerate().take(k).skip(1) {
        let rel = positions[v] - a;
        off_line = off_line.max(libm::fabs(dir.cross(rel)) / len);
        spacing = spacing.max(libm::fabs(dir.dot(rel) / len - i as f64 / k as f64));
    }
    (off_line, spacing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn force_closed_forms() {
        assert_eq!(fr_attractive(2.0, 1.0), 4.0);
        assert_eq!(fr_attractive(0.0, 3.0), 0.0);
        assert_eq!(fr_attractive(3.0, 3.0), 3.0);
        assert_eq!(fr_repulsive(3.0, 3.0), -3.0);
        assert_eq!(fr_repulsive(6.0, 3.0), -1.5);
    }

    #[test]
    fn three_vertex_path_interpolates_midpoint() {
        let pos = [Point::new(0.0, 0.0), Point::new(5.0, 5.0), Point::new(2.0, 0.0)];
        let mut moves = [Point::new(1.0, 1.0), Point::new(0.3, -0.2), Point::new(1.0, 3.0)];
        let paths = PathSet::new(vec![vec![0, 1, 2]]);
        apply_path_constraints(&pos, &mut moves, &paths);
        let mid = pos[1] + moves[1];
        assert!((mid.x - 2.0).abs() < 1e-12 && (mid.y - 2.0).abs() < 1e-12);
        assert_eq!(moves[0], Point::new(1.0, 1.0));
        assert_eq!(moves[2], Point::new(1.0, 3.0));
        let again = moves;
        apply_path_constraints(&pos, &mut moves, &paths);
        assert_eq!(moves, again);
    }

    #[test]
    fn bad_params_are_rejected() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let mut p = ForceParams::for_graph(2, 1);
        p.iterations = 0;
        assert!(layout_force_directed(&g, p).is_err());
    }
}
