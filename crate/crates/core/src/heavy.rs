//! Heavy path decomposition of rooted trees.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavyPathDecomposition {
    /// Child on the heavy edge of each vertex, `None` for leaves.
    pub heavy_child: Vec<Option<usize>>,
    /// Maximal heavy paths, each listed from its top vertex downwards.
    /// The path containing the root comes first, the rest in preorder of their heads.
    pub paths: Vec<Vec<usize>>,
    /// Index into `paths` for every vertex.
    pub path_of: Vec<usize>,
}

impl HeavyPathDecomposition {
    pub fn is_heavy_edge(&self, parent: usize, child: usize) -> bool {
        self.heavy_child[parent] == Some(child)
    }
}

/// Heavy child = child with the largest subtree, lowest index on ties.
pub fn heavy_path_decomposition(tree: &RootedTree) -> HeavyPathDecomposition {
    let size = tree.subtree_sizes();
    let heavy_child: Vec<Option<usize>> = (0..tree.n())
        .map(|v| {
            // children are sorted by index, so the first maximum wins ties
            tree.children(v)
                .iter()
                .copied()
                .fold(None, |best: Option<usize>, c| match best {
                    Some(b) if size[b] >= size[c] => Some(b),
                    _ => Some(c),
                })
        })
        .collect();

    let mut paths = Vec::new();
    let mut path_of = vec![usize::MAX; tree.n()];
    for v in tree.preorder() {
        let is_head = match tree.parent(v) {
            None => true,
            Some(p) => heavy_child[p] != Some(v),
        };
        if !is_head {
            continue;
        }
        let id = paths.len();
        let mut path = vec![v];
        path_of[v] = id;
        let mut cur = v;
        while let Some(h) = heavy_child[cur] {
            path.push(h);
            path_of[h] = id;
            cur = h;
        }
        paths.push(path);
    }
    HeavyPathDecomposition {
        heavy_child,
        paths,
        path_of,
    }
}
