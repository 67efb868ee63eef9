//! Simple undirected graphs and rooted trees.
//!
//! Vertices are dense indices `0..n`. File formats and user-facing messages
//! use 1-based labels; the conversion happens at the IO boundary.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Undirected simple graph. Edge order is preserved as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and bad indices.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Adjacency lists, neighbours in edge-input order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Incident edge indices per vertex, in edge-input order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Whether the graph is a tree (connected with `n - 1` edges).
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }
}

/// Rooted tree stored as a parent map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Builds a tree from a parent map; exactly one entry must be `None`.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::NotATree("empty vertex set".into()));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::NotATree("more than one root".into()));
                }
                None => root = Some(v),
                Some(p) if p >= n => return Err(Error::VertexOutOfRange { vertex: p, n }),
                Some(p) if p == v => return Err(Error::SelfLoop(v)),
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::NotATree("no root".into()))?;
        let tree = RootedTree {
            root,
            parent,
            children,
        };
        if tree.preorder().len() != n {
            return Err(Error::NotATree("parent map contains a cycle".into()));
        }
        Ok(tree)
    }

    /// Roots an undirected tree at `root`.
    pub fn from_graph(graph: &Graph, root: usize) -> Result<Self> {
        if root >= graph.n() {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                n: graph.n(),
            });
        }
        if !graph.is_tree() {
            return Err(Error::NotATree(format!(
                "{} vertices, {} edges, connected = {}",
                graph.n(),
                graph.m(),
                graph.is_connected()
            )));
        }
        let adj = graph.adjacency();
        let mut parent = vec![None; graph.n()];
        let mut seen = vec![false; graph.n()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        Self::from_parents(parent)
    }

    /// Single-vertex tree.
    pub fn singleton() -> Self {
        RootedTree {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
        }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children in increasing index order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Vertices in depth-first preorder, children visited by index.
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![self.root];
        let mut visited = vec![false; self.n()];
        while let Some(v) = stack.pop() {
            if visited[v] {
                // cycle in a malformed parent map
                continue;
            }
            visited[v] = true;
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Vertices in depth-first postorder, children visited by index.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                stack.extend(self.children[v].iter().rev().map(|&c| (c, false)));
            }
        }
        order
    }

    /// Edge count of each vertex's root path.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.n()];
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// Length in edges of the longest root–leaf path.
    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.n()];
        for v in self.postorder() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// The tree as an undirected graph; edge `(parent, child)` ordered by child.
    pub fn to_graph(&self) -> Graph {
        let edges = (0..self.n())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect();
        Graph { n: self.n(), edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert_eq!(Graph::new(2, vec![(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn parent_map_must_be_acyclic() {
        let cyclic = RootedTree::from_parents(vec![None, Some(2), Some(1)]);
        assert!(matches!(cyclic, Err(Error::NotATree(_))));
        let two_roots = RootedTree::from_parents(vec![None, None]);
        assert!(matches!(two_roots, Err(Error::NotATree(_))));
    }

    #[test]
    fn rooting_a_path() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let t = RootedTree::from_graph(&g, 1).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.children(1), &[0, 2]);
        assert_eq!(t.depth(), 1);
        assert_eq!(t.subtree_sizes(), vec![1, 3, 1]);
        assert_eq!(t.postorder(), vec![0, 2, 1]);
    }

    #[test]
    fn non_tree_graph_is_rejected() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(RootedTree::from_graph(&g, 0).is_err());
    }
}
