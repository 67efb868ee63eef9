//! Random stimuli: Prüfer-sequence trees with a fixed depth and connected
//! sparse graphs.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, RootedTree};
use crate::{Error, Result};

/// Default number of attempts before rejection sampling gives up.
pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

/// Seeded generator used for all stimuli.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Decodes a Prüfer sequence of 1-based labels into a tree on `n` vertices.
///
/// Vertex `i` of the result carries label `i + 1`.
pub fn prufer_decode(sequence: &[usize], n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidPrufer(format!("need n >= 2, got {n}")));
    }
    if sequence.len() != n - 2 {
        return Err(Error::InvalidPrufer(format!(
            "length {} does not match n - 2 = {}",
            sequence.len(),
            n - 2
        )));
    }
    if let Some(&bad) = sequence.iter().find(|&&l| l == 0 || l > n) {
        return Err(Error::InvalidPrufer(format!("label {bad} outside 1..={n}")));
    }
    let mut degree = vec![1usize; n];
    for &l in sequence {
        degree[l - 1] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &l in sequence {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        let v = l - 1;
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::new(n, edges)
}

/// Inverse of [`prufer_decode`]; labels are 1-based.
pub fn prufer_encode(tree: &Graph) -> Result<Vec<usize>> {
    let n = tree.n();
    if n < 2 || !tree.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges", n, tree.m())));
    }
    let adj = tree.adjacency();
    let mut degree = tree.degrees();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n - 2);
    while seq.len() < n - 2 {
        let Reverse(leaf) = leaves.pop().unwrap();
        removed[leaf] = true;
        let v = adj[leaf].iter().copied().find(|&u| !removed[u]).unwrap();
        seq.push(v + 1);
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    Ok(seq)
}

/// Uniformly random labeled tree on `n >= 2` vertices.
pub fn random_labeled_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(1..=n)).collect();
    prufer_decode(&seq, n).expect("sampled sequences are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepthClass {
    Deep,
    Balanced,
    Wide,
}

impl DepthClass {
    pub const ALL: [DepthClass; 3] = [DepthClass::Deep, DepthClass::Balanced, DepthClass::Wide];

    pub fn name(self) -> &'static str {
        match self {
            DepthClass::Deep => "deep",
            DepthClass::Balanced => "balanced",
            DepthClass::Wide => "wide",
        }
    }
}

/// Vertex count of a size class: 20 for class 1, 40 for class 2.
pub fn class_vertices(size_class: u8) -> Result<usize> {
    match size_class {
        1 => Ok(20),
        2 => Ok(40),
        _ => Err(Error::InvalidParameter("size class must be 1 or 2")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeSpec {
    pub size_class: u8,
    pub depth_class: DepthClass,
    pub seed: u64,
}

impl TreeSpec {
    pub fn vertices(&self) -> Result<usize> {
        class_vertices(self.size_class)
    }

    /// Root-to-leaf depth, in edges, that an accepted tree must have.
    pub fn target_depth(&self) -> Result<usize> {
        let depths = match self.size_class {
            1 => [8, 5, 3],
            2 => [14, 9, 5],
            _ => return Err(Error::InvalidParameter("size class must be 1 or 2")),
        };
        Ok(match self.depth_class {
            DepthClass::Deep => depths[0],
            DepthClass::Balanced => depths[1],
            DepthClass::Wide => depths[2],
        })
    }
}

/// Random tree of `spec`'s size and depth class rooted at label 1, with the default cap.
pub fn random_tree(spec: &TreeSpec) -> Result<RootedTree> {
    random_tree_with_cap(spec, DEFAULT_REJECTION_CAP)
}

pub fn random_tree_with_cap(spec: &TreeSpec, cap: u64) -> Result<RootedTree> {
    random_tree_with_depth(spec.vertices()?, spec.target_depth()?, spec.seed, cap)
}

/// Rejection-samples uniform labeled trees on `n` vertices until the tree
/// rooted at label 1 has exactly the given depth.
pub fn random_tree_with_depth(n: usize, depth: usize, seed: u64, cap: u64) -> Result<RootedTree> {
    if n < 2 {
        return Err(Error::InvalidParameter("trees need at least 2 vertices"));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..cap {
        let g = random_labeled_tree(n, &mut rng);
        let t = RootedTree::from_graph(&g, 0)?;
        if t.depth() == depth {
            return Ok(t);
        }
    }
    Err(Error::RejectionCapExceeded {
        attempts: cap,
        what: "depth",
    })
}

/// `count` trees cycling through both size classes and all depth classes,
/// seeded `base_seed, base_seed + 1, ...`.
pub fn tree_corpus(count: usize, base_seed: u64) -> Result<Vec<(TreeSpec, RootedTree)>> {
    (0..count)
        .map(|i| {
            let spec = TreeSpec {
                size_class: 1 + (i % 2) as u8,
                depth_class: DepthClass::ALL[i / 2 % 3],
                seed: base_seed + i as u64,
            };
            random_tree(&spec).map(|t| (spec, t))
        })
        .collect()
}

/// `count` connected sparse graphs alternating between the two size classes.
pub fn graph_corpus(count: usize, base_seed: u64) -> Result<Vec<Graph>> {
    (0..count)
        .map(|i| {
            random_sparse_graph(&GraphSpec {
                size_class: 1 + (i % 2) as u8,
                type_class: GraphType::Random,
                seed: base_seed + i as u64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphType {
    /// Loaded from a graph library; not generated.
    Rome,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpec {
    pub size_class: u8,
    pub type_class: GraphType,
    pub seed: u64,
}

impl GraphSpec {
    /// `(vertices, edges)`: 20/30 for class 1 and 40/60 for class 2.
    pub fn dimensions(&self) -> Result<(usize, usize)> {
        let n = class_vertices(self.size_class)?;
        Ok((n, n * 3 / 2))
    }
}

pub fn random_sparse_graph(spec: &GraphSpec) -> Result<Graph> {
    if spec.type_class != GraphType::Random {
        return Err(Error::InvalidParameter("only random graphs can be generated"));
    }
    let (n, m) = spec.dimensions()?;
    random_connected_graph(n, m, spec.seed, DEFAULT_REJECTION_CAP)
}

/// Samples `m` distinct edges uniformly until the graph is connected.
pub fn random_connected_graph(n: usize, m: usize, seed: u64, cap: u64) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::InvalidParameter("more edges than vertex pairs"));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..cap {
        let mut edges: Vec<(usize, usize)> = sample(&mut rng, pairs, m)
            .into_iter()
            .map(|i| pair_from_index(i, n))
            .collect();
        edges.sort_unstable();
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::RejectionCapExceeded {
        attempts: cap,
        what: "connected graph",
    })
}

/// The `i`-th unordered pair `(u, v)`, `u < v`, in lexicographic order.
fn pair_from_index(mut i: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    while i >= n - 1 - u {
        i -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    }

    #[test]
    fn decode_small_cases() {
        assert_eq!(edge_set(&prufer_decode(&[], 2).unwrap()), vec![(0, 1)]);
        assert_eq!(prufer_decode(&[1], 3).unwrap().edges(), &[(1, 0), (0, 2)]);
        let star = prufer_decode(&[3, 3, 3], 5).unwrap();
        assert_eq!(star.degrees()[2], 4);
    }

    #[test]
    fn decode_rejects_bad_input() {
        assert!(prufer_decode(&[1, 2], 3).is_err());
        assert!(prufer_decode(&[4], 3).is_err());
        assert!(prufer_decode(&[0], 3).is_err());
    }

    #[test]
    fn pair_index_covers_all_pairs() {
        let n = 6;
        let all: Vec<_> = (0..n * (n - 1) / 2).map(|i| pair_from_index(i, n)).collect();
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                expected.push((u, v));
            }
        }
        assert_eq!(all, expected);
    }

    #[test]
    fn tree_specs_hit_their_depth() {
        for depth_class in DepthClass::ALL {
            let spec = TreeSpec {
                size_class: 1,
                depth_class,
                seed: 3,
            };
            let t = random_tree(&spec).unwrap();
            assert_eq!(t.n(), 20);
            assert_eq!(t.root(), 0);
            assert_eq!(t.depth(), spec.target_depth().unwrap());
        }
    }

    #[test]
    fn sparse_graphs_have_the_right_shape() {
        for (size_class, n, m) in [(1, 20, 30), (2, 40, 60)] {
            let spec = GraphSpec {
                size_class,
                type_class: GraphType::Random,
                seed: 11,
            };
            let g = random_sparse_graph(&spec).unwrap();
            assert_eq!((g.n(), g.m()), (n, m));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn rejection_cap_is_reported() {
        // a 5-vertex tree cannot have depth 9
        let err = random_tree_with_depth(5, 9, 1, 10).unwrap_err();
        assert!(alloc::format!("{err}").contains("depth unreachable"));
    }
}
