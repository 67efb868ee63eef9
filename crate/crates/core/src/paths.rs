//! Path sets for the path-constrained spring embedder.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::drawing::Drawing;
use crate::graph::Graph;
use crate::{Error, Result};

/// Ordered list of vertex paths, each with at least two edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Vec<usize>>,
}

impl PathSet {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathSet { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Vec<usize>> {
        self.paths.iter()
    }
}

/// Successful validation: either the input order works, or a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathValidation {
    Ok,
    Reordered(PathSet),
}

impl PathValidation {
    /// The path set to run with.
    pub fn resolve(self, original: &PathSet) -> PathSet {
        match self {
            PathValidation::Ok => original.clone(),
            PathValidation::Reordered(p) => p,
        }
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Checks the path-set invariants.
///
/// A vertex that is internal to one path and an endpoint of another forces
/// the first path to come earlier; if the input order breaks only such
/// constraints, a stable topological order is returned instead.
pub fn validate_path_set(graph: &Graph, paths: &PathSet) -> Result<PathValidation> {
    let n = graph.n();
    let mut edge_owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut internal_of: Vec<Option<usize>> = vec![None; n];
    for (i, path) in paths.iter().enumerate() {
        if path.len() < 3 {
            return Err(Error::MalformedPath {
                path: i,
                reason: "a path needs at least two edges",
            });
        }
        if let Some(&v) = path.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let mut seen = path.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedPath {
                path: i,
                reason: "a path may not repeat a vertex",
            });
        }
        for w in path.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                return Err(Error::NotAPathInGraph {
                    path: i,
                    from: w[0],
                    to: w[1],
                });
            }
            if let Some(&j) = edge_owner.get(&key(w[0], w[1])) {
                return Err(Error::NotEdgeDisjoint { first: j, second: i });
            }
            edge_owner.insert(key(w[0], w[1]), i);
        }
        for &v in &path[1..path.len() - 1] {
            if internal_of[v].is_some() {
                return Err(Error::InternalVertexConflict(v));
            }
            internal_of[v] = Some(i);
        }
    }

    // succ[i] lists paths that must come after path i
    let m = paths.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indegree = vec![0usize; m];
    let mut in_order = true;
    for (j, path) in paths.iter().enumerate() {
        for &end in [path[0], *path.last().unwrap()].iter() {
            if let Some(i) = internal_of[end] {
                if i != j {
                    succ[i].push(j);
                    indegree[j] += 1;
                    in_order &= i < j;
                }
            }
        }
    }
    if in_order {
        return Ok(PathValidation::Ok);
    }
    // Kahn's algorithm, always releasing the lowest ready index
    let mut ready: BTreeSet<usize> =
        (0..m).filter(|&j| indegree[j] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() < m {
        return Err(Error::UnorderablePaths);
    }
    Ok(PathValidation::Reordered(PathSet::new(
        order.into_iter().map(|i| paths.paths[i].clone()).collect(),
    )))
}

/// Turning angle in degrees when walking `a -> v -> b`; `0` means straight.
fn turn(drawing: &Drawing, a: usize, v: usize, b: usize) -> f64 {
    let pv = drawing.positions.real(v);
    let da = drawing.positions.real(a) - pv;
    let db = drawing.positions.real(b) - pv;
    let (na, nb) = (da.norm(), db.norm());
    if na == 0.0 || nb == 0.0 {
        return 180.0;
    }
    let cos = (da.dot(db) / (na * nb)).clamp(-1.0, 1.0);
    180.0 - libm::acos(cos).to_degrees()
}

/// Greedy selection of paths that already run nearly straight in `base`.
///
/// Every vertex joins its straightest pair of incident edges when they turn
/// by at most `max_turn` degrees. The joined edges form chains; closed chains
/// are opened at their sharpest turn and chains that revisit a vertex are cut
/// there. Chains with at least `min_len` edges are then admitted longest
/// first as long as the admitted set stays valid.
pub fn select_paths(graph: &Graph, base: &Drawing, max_turn: f64, min_len: usize) -> PathSet {
    let n = graph.n();
    let adj = graph.adjacency();
    // join[v] = (a, b, turn): v continues edge {a,v} into {v,b}
    let mut join: Vec<Option<(usize, usize, f64)>> = vec![None; n];
    for v in 0..n {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, &a) in adj[v].iter().enumerate() {
            for &b in &adj[v][i + 1..] {
                let t = turn(base, a, v, b);
                if t <= max_turn && best.is_none_or(|(_, _, bt)| t < bt) {
                    best = Some((a, b, t));
                }
            }
        }
        join[v] = best;
    }
    let next = |join: &[Option<(usize, usize, f64)>], from: usize, v: usize| -> Option<usize> {
        join[v].and_then(|(a, b, _)| {
            if a == from {
                Some(b)
            } else if b == from {
                Some(a)
            } else {
                None
            }
        })
    };

    // open closed chains at their sharpest turn
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for v in 0..n {
        let Some((a, b, _)) = join[v] else { continue };
        let mut cycle = vec![v];
        let (mut prev, mut cur) = (v, a);
        let closed = loop {
            if cur == v {
                break prev == b;
            }
            cycle.push(cur);
            match next(&join, prev, cur) {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                }
                None => break false,
            }
            if cycle.len() > n {
                break false;
            }
        };
        if closed {
            let worst = cycle
                .iter()
                .copied()
                .max_by(|&x, &y| {
                    let tx = join[x].map_or(0.0, |j| j.2);
                    let ty = join[y].map_or(0.0, |j| j.2);
                    tx.total_cmp(&ty).then(y.cmp(&x))
                })
                .unwrap();
            join[worst] = None;
        }
    }

    // walk chains from edges whose start vertex does not continue them
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for &(u, w) in graph.edges() {
        for (start, second) in [(u, w), (w, u)] {
            if next(&join, second, start).is_some() || used.contains(&key(start, second)) {
                continue;
            }
            let mut chain = vec![start, second];
            used.insert(key(start, second));
            let (mut prev, mut cur) = (start, second);
            while let Some(nx) = next(&join, prev, cur) {
                if used.contains(&key(cur, nx)) {
                    break;
                }
                used.insert(key(cur, nx));
                chain.push(nx);
                prev = cur;
                cur = nx;
            }
            chains.extend(split_simple(&chain));
        }
    }

    let mut candidates: Vec<Vec<usize>> = chains
        .into_iter()
        .filter(|c| c.len() > min_len.max(2))
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut chosen = PathSet::default();
    for c in candidates {
        chosen.paths.push(c);
        match validate_path_set(graph, &chosen) {
            Ok(v) => chosen = v.resolve(&chosen),
            Err(_) => {
                chosen.paths.pop();
            }
        }
    }
    chosen
}

/// Cuts a walk into maximal pieces that do not repeat a vertex.
fn split_simple(walk: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    for &v in walk {
        if cur.contains(&v) {
            let last = *cur.last().unwrap();
            out.push(core::mem::take(&mut cur));
            cur.push(last);
        }
        cur.push(v);
    }
    out.push(cur);
    out.into_iter().filter(|p| p.len() >= 2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn path_graph(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn single_valid_path() {
        let g = path_graph(4);
        let p = PathSet::new(vec![vec![0, 1, 2, 3]]);
        assert_eq!(validate_path_set(&g, &p).unwrap(), PathValidation::Ok);
    }

    #[test]
    fn internal_then_endpoint_is_reordered() {
        // star-like: 0-1-2 and 1-3-4; vertex 1 is internal to the first, endpoint of the second
        let g = Graph::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let p1 = vec![0, 1, 2];
        let p2 = vec![1, 3, 4];
        let input = PathSet::new(vec![p2.clone(), p1.clone()]);
        assert_eq!(
            validate_path_set(&g, &input).unwrap(),
            PathValidation::Reordered(PathSet::new(vec![p1, p2]))
        );
    }

    #[test]
    fn shared_internal_vertex_is_rejected() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (3, 1), (1, 4)]).unwrap();
        let p = PathSet::new(vec![vec![0, 1, 2], vec![3, 1, 4]]);
        let err = validate_path_set(&g, &p).unwrap_err();
        assert_eq!(err, Error::InternalVertexConflict(1));
        assert!(alloc::format!("{err}").contains("internal-vertex conflict"));
    }

    #[test]
    fn non_edges_and_shared_edges() {
        let g = path_graph(4);
        let bad = PathSet::new(vec![vec![0, 2, 3]]);
        assert!(matches!(
            validate_path_set(&g, &bad),
            Err(Error::NotAPathInGraph { .. })
        ));
        let shared = PathSet::new(vec![vec![0, 1, 2], vec![3, 2, 1]]);
        assert!(matches!(
            validate_path_set(&g, &shared),
            Err(Error::NotEdgeDisjoint { .. })
        ));
    }

    #[test]
    fn cyclic_constraints_are_unorderable() {
        // 2 is internal to the first path and ends the second; 0 the other way round
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (2, 4), (4, 0), (0, 5)]).unwrap();
        let p = PathSet::new(vec![vec![0, 1, 2, 3], vec![2, 4, 0, 5]]);
        assert_eq!(validate_path_set(&g, &p), Err(Error::UnorderablePaths));
    }

    #[test]
    fn straight_chain_is_selected() {
        // 4-edge straight chain 0..4 with a bent pendant at 2
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.05),
            Point::new(2.0, 0.0),
            Point::new(3.0, -0.05),
            Point::new(4.0, 0.0),
            Point::new(2.0, 1.0),
        ];
        let d = Drawing::real(g.clone(), pts);
        let p = select_paths(&g, &d, 30.0, 3);
        assert_eq!(p.paths, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn triangle_gives_nothing() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let pts = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.8)];
        let d = Drawing::real(g.clone(), pts);
        assert!(select_paths(&g, &d, 180.0, 3).is_empty());
    }
}
