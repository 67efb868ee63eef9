//! Straight-line drawings and the visual-complexity primitives on them.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{
    in_relative_interior, in_relative_interior_real, opposite_collinear,
    opposite_collinear_real, segments_overlap, segments_overlap_real, segments_touch,
    segments_touch_real, GridPoint, Point,
};
use crate::graph::{Graph, RootedTree};

/// Relative collinearity tolerance for real-coordinate drawings.
pub const EPS_COLLINEAR: f64 = 1e-6;

/// Vertex coordinates: exact grid points for tree layouts, reals for force layouts.
#[derive(Debug, Clone, PartialEq)]
pub enum Positions {
    Grid(Vec<GridPoint>),
    Real(Vec<Point>),
}

impl Positions {
    pub fn len(&self) -> usize {
        match self {
            Positions::Grid(p) => p.len(),
            Positions::Real(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_grid(&self) -> bool {
        matches!(self, Positions::Grid(_))
    }

    pub fn real(&self, v: usize) -> Point {
        match self {
            Positions::Grid(p) => p[v].to_real(),
            Positions::Real(p) => p[v],
        }
    }

    pub fn to_real(&self) -> Vec<Point> {
        (0..self.len()).map(|v| self.real(v)).collect()
    }
}

/// A graph together with one position per vertex; edges are straight lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub graph: Graph,
    pub positions: Positions,
}

impl Drawing {
    /// Panics if the position count does not match the vertex count.
    pub fn new(graph: Graph, positions: Positions) -> Self {
        assert_eq!(graph.n(), positions.len(), "one position per vertex");
        Drawing { graph, positions }
    }

    pub fn grid(graph: Graph, points: Vec<GridPoint>) -> Self {
        Self::new(graph, Positions::Grid(points))
    }

    pub fn real(graph: Graph, points: Vec<Point>) -> Self {
        Self::new(graph, Positions::Real(points))
    }

    pub fn grid_points(&self) -> Option<&[GridPoint]> {
        match &self.positions {
            Positions::Grid(p) => Some(p),
            Positions::Real(_) => None,
        }
    }

    /// `(min, max)` corners of the bounding box, or `None` without vertices.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let pts = self.positions.to_real();
        let first = *pts.first()?;
        Some(pts.iter().fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Whether all vertices have pairwise distinct positions.
    pub fn has_distinct_positions(&self) -> bool {
        match &self.positions {
            Positions::Grid(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                sorted.windows(2).all(|w| w[0] != w[1])
            }
            Positions::Real(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
                sorted.windows(2).all(|w| w[0] != w[1])
            }
        }
    }

    fn edge_vector_from(&self, edge: usize, v: usize) -> (GridPoint, Point) {
        let (a, b) = self.graph.edges()[edge];
        let other = if a == v { b } else { a };
        match &self.positions {
            Positions::Grid(p) => (p[other] - p[v], Point::default()),
            Positions::Real(p) => (GridPoint::ORIGIN, p[other] - p[v]),
        }
    }

    /// Whether edges `e` and `f`, both incident to `v`, continue each other
    /// straight through `v`.
    fn continues_through(&self, v: usize, e: usize, f: usize) -> bool {
        let (ge, re) = self.edge_vector_from(e, v);
        let (gf, rf) = self.edge_vector_from(f, v);
        if self.positions.is_grid() {
            opposite_collinear(ge, gf)
        } else {
            opposite_collinear_real(re, rf, EPS_COLLINEAR)
        }
    }
}

/// A maximal chain of pairwise incident, collinear edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Vertices along the chain, from one end to the other.
    pub vertices: Vec<usize>,
    /// Covered edge indices in chain order.
    pub edges: Vec<usize>,
}

impl Segment {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// Partitions the edges into maximal straight chains.
///
/// At every vertex, incident edges are paired greedily in edge-input order:
/// an edge is paired with the first later unpaired edge that leaves the
/// vertex in exactly the opposite direction (within [`EPS_COLLINEAR`] for
/// real coordinates). Pairs are then followed into chains.
pub fn count_segments(drawing: &Drawing) -> (usize, Vec<Segment>) {
    let graph = &drawing.graph;
    let m = graph.m();
    // link[e][side]: edge continuing e through its endpoint `side` (0 = first, 1 = second)
    let mut link: Vec<[Option<usize>; 2]> = vec![[None, None]; m];
    let side_of = |e: usize, v: usize| usize::from(graph.edges()[e].0 != v);
    for (v, incident) in graph.incidence().iter().enumerate() {
        let mut paired = vec![false; incident.len()];
        for i in 0..incident.len() {
            if paired[i] {
                continue;
            }
            for j in (i + 1)..incident.len() {
                if !paired[j] && drawing.continues_through(v, incident[i], incident[j]) {
                    paired[i] = true;
                    paired[j] = true;
                    let (e, f) = (incident[i], incident[j]);
                    link[e][side_of(e, v)] = Some(f);
                    link[f][side_of(f, v)] = Some(e);
                    break;
                }
            }
        }
    }

    let mut used = vec![false; m];
    let mut segments = Vec::new();
    let walk = |start: usize, from_side: usize, used: &mut Vec<bool>| {
        // `from_side` is the free end of `start`
        let (a, b) = graph.edges()[start];
        let mut vertices = if from_side == 0 { vec![a, b] } else { vec![b, a] };
        let mut edges = vec![start];
        used[start] = true;
        let mut current = start;
        let mut exit_side = 1 - from_side;
        while let Some(next) = link[current][exit_side] {
            if used[next] {
                break;
            }
            used[next] = true;
            let via = *vertices.last().unwrap();
            let (na, nb) = graph.edges()[next];
            let far = if na == via { nb } else { na };
            exit_side = side_of(next, far);
            vertices.push(far);
            edges.push(next);
            current = next;
        }
        Segment { vertices, edges }
    };
    for e in 0..m {
        if used[e] {
            continue;
        }
        if link[e][0].is_none() {
            segments.push(walk(e, 0, &mut used));
        } else if link[e][1].is_none() {
            segments.push(walk(e, 1, &mut used));
        }
    }
    // closed chains cannot occur in straight-line drawings; kept for totality
    for e in 0..m {
        if !used[e] {
            segments.push(walk(e, 0, &mut used));
        }
    }
    (segments.len(), segments)
}

/// Number of odd-degree vertices divided by two; 0 for a single vertex.
pub fn odd_degree_bound(tree: &RootedTree) -> usize {
    (0..tree.n()).filter(|&v| tree.degree(v) % 2 == 1).count() / 2
}

/// `n_odd / 2` computed on an arbitrary graph.
pub fn odd_degree_half(graph: &Graph) -> usize {
    graph.degrees().iter().filter(|&&d| d % 2 == 1).count() / 2
}

/// Outcome of a crossing count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CrossingReport {
    /// Unordered edge pairs meeting at a point other than a shared endpoint.
    pub crossings: usize,
    /// Those pairs among `crossings` that overlap collinearly.
    pub degenerate: usize,
}

/// Whether two edges meet anywhere other than at a shared endpoint, and
/// whether the contact is a collinear overlap.
pub(crate) fn edge_pair_conflict(drawing: &Drawing, e: usize, f: usize) -> Option<bool> {
    let (a, b) = drawing.graph.edges()[e];
    let (c, d) = drawing.graph.edges()[f];
    let shared = a == c || a == d || b == c || b == d;
    match &drawing.positions {
        Positions::Grid(p) => {
            let (pa, pb, pc, pd) = (p[a], p[b], p[c], p[d]);
            let overlap = segments_overlap(pa, pb, pc, pd);
            if shared {
                overlap.then_some(true)
            } else if overlap {
                Some(true)
            } else {
                segments_touch(pa, pb, pc, pd).then_some(false)
            }
        }
        Positions::Real(p) => {
            let (pa, pb, pc, pd) = (p[a], p[b], p[c], p[d]);
            let overlap = segments_overlap_real(pa, pb, pc, pd);
            if shared {
                overlap.then_some(true)
            } else if overlap {
                Some(true)
            } else {
                segments_touch_real(pa, pb, pc, pd).then_some(false)
            }
        }
    }
}

/// Counts edge pairs that intersect away from a shared endpoint, with
/// collinear overlaps flagged separately.
///
/// Edges are swept by their x-extent so only pairs with overlapping
/// x-intervals are tested.
pub fn crossing_report(drawing: &Drawing) -> CrossingReport {
    let pts = drawing.positions.to_real();
    let edges = drawing.graph.edges();
    let mut order: Vec<(f64, f64, usize)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (pts[u].x.min(pts[v].x), pts[u].x.max(pts[v].x), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    let mut report = CrossingReport::default();
    for i in 0..order.len() {
        let (_, hi, e) = order[i];
        for &(lo2, _, f) in &order[i + 1..] {
            if lo2 > hi {
                break;
            }
            if let Some(degenerate) = edge_pair_conflict(drawing, e, f) {
                report.crossings += 1;
                report.degenerate += usize::from(degenerate);
            }
        }
    }
    report
}

pub fn count_crossings(drawing: &Drawing) -> usize {
    crossing_report(drawing).crossings
}

/// Whether some vertex lies in the relative interior of an edge not incident to it.
pub fn has_vertex_on_edge(drawing: &Drawing) -> bool {
    let edges = drawing.graph.edges();
    (0..drawing.graph.n()).any(|v| {
        edges.iter().any(|&(a, b)| {
            a != v
                && b != v
                && match &drawing.positions {
                    Positions::Grid(p) => in_relative_interior(p[v], p[a], p[b]),
                    Positions::Real(p) => in_relative_interior_real(p[v], p[a], p[b]),
                }
        })
    })
}

/// True iff no two edges cross, no vertex sits inside a non-incident edge,
/// and no two vertices coincide.
pub fn is_planar_drawing(drawing: &Drawing) -> bool {
    drawing.has_distinct_positions()
        && count_crossings(drawing) == 0
        && !has_vertex_on_edge(drawing)
}
