//! Few-segments tree layout on the integer grid.
//!
//! Every heavy path gets its own local frame in which the path runs along the
//! positive x-axis, starting at its head. A light child `r` of a path vertex
//! `p` is attached with an integer vector `v` (expressed in the parent's
//! frame); the heavy path of `r` then continues in the direction of the
//! primitive vector `u` of `v`, and the child's frame is the parent's frame
//! composed with the unimodular map whose first column is `u`. Unimodular
//! maps send grid points to grid points and preserve collinearity and
//! planarity, so a subtree is laid out once and can be re-aimed along any
//! vector.
//!
//! Light children of a path vertex are paired. The two subtrees of a pair get
//! opposite vectors `v` and `-v`, so both light edges continue each other
//! through `p`; the upper subtree lies strictly above the path's line and
//! the lower one strictly below. Pairs are placed from the inside out with
//! strictly decreasing slopes. With the parent edge continuing into the heavy
//! edge at every path vertex, each vertex terminates exactly `deg mod 2`
//! segments, so the drawing uses `n_odd / 2` segments. At the tree root an
//! odd light child continues the root's heavy path backwards instead.

use alloc::vec;
use alloc::vec::Vec;

use super::FewSegParams;
use crate::drawing::Drawing;
use crate::geometry::{primitive_vector, segments_overlap, segments_touch, GridPoint, LinearMap};
use crate::graph::RootedTree;
use crate::heavy::heavy_path_decomposition;

/// One heavy path and how it hangs off its parent path.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub(crate) path: Vec<usize>,
    /// Position of each path vertex along the local x-axis; `offsets[0] == 0`.
    pub(crate) offsets: Vec<i64>,
    /// Parent frame and index of the attachment vertex on its path.
    pub(crate) parent: Option<(usize, usize)>,
    /// Light-edge vector in the parent frame.
    pub(crate) vector: GridPoint,
    /// Subtree paired with this one through the same parent vertex.
    pub(crate) partner: Option<usize>,
    /// The root's odd light child drawn as a backwards extension of the root path.
    pub(crate) backward: bool,
    pub(crate) children: Vec<usize>,
    pub(crate) size: usize,
}

/// Bounding-box extent of a placed subtree and, when present, its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubtreeExtent {
    pub width: i64,
    pub height: i64,
    pub partner: Option<(i64, i64)>,
}

/// Outcome of the vector-rounding search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundingChoice {
    pub i: i64,
    pub j: i64,
    /// Vector for the subtree, `(x + i, y + j)`.
    pub vector: GridPoint,
    /// Vector for the paired subtree, `-(x + i, y + j)`.
    pub partner_vector: GridPoint,
    pub cost: i64,
}

/// The stretched vector `(x + i, y + j)`.
pub fn rounded_vector(v: GridPoint, i: i64, j: i64) -> GridPoint {
    GridPoint::new(v.x + i, v.y + j)
}

/// Chooses how far to stretch the vector `v = (x, y)`, `x, y > 0`.
///
/// Candidates are `0 <= i <= s·x`, `0 <= j <= s·y` whose slope
/// `(y + j) / (x + i)` does not exceed `y / x`. `measure` places the subtree
/// (and its partner) with a candidate vector and returns its extent, or
/// `None` when the placement collides with what is already drawn. The
/// candidate minimising `i + j + max(w + h, w' + h')` wins; ties go to the
/// smallest `(i, j)` in lexicographic order. Returns `None` only when no
/// candidate, including `(0, 0)`, can be placed.
pub fn round_vector<F>(v: GridPoint, s: i64, mut measure: F) -> Option<RoundingChoice>
where
    F: FnMut(GridPoint) -> Option<SubtreeExtent>,
{
    debug_assert!(v.x > 0 && v.y > 0, "rounding expects a top-right vector");
    let mut best: Option<RoundingChoice> = None;
    for i in 0..=s * v.x {
        for j in 0..=s * v.y {
            if (v.y + j) as i128 * v.x as i128 > v.y as i128 * (v.x + i) as i128 {
                continue;
            }
            let cand = rounded_vector(v, i, j);
            let Some(ext) = measure(cand) else {
                continue;
            };
            let spread = (ext.width + ext.height)
                .max(ext.partner.map_or(0, |(w, h)| w + h));
            let cost = i + j + spread;
            if best.is_none_or(|b| cost < b.cost) {
                best = Some(RoundingChoice {
                    i,
                    j,
                    vector: cand,
                    partner_vector: -cand,
                    cost,
                });
            }
        }
    }
    best
}

/// Few-segments layout state: the frame tree plus the resulting positions.
#[derive(Debug, Clone)]
pub struct FewSegLayout {
    pub(crate) tree: RootedTree,
    pub(crate) params: FewSegParams,
    pub(crate) frames: Vec<Frame>,
    /// Frame whose path contains each vertex.
    pub(crate) frame_of: Vec<usize>,
    /// Frame headed by each vertex, if any.
    pub(crate) head_frame: Vec<Option<usize>>,
    /// Global positions, kept in sync by [`FewSegLayout::refresh`].
    pub(crate) positions: Vec<GridPoint>,
    /// Global linear map of every frame.
    pub(crate) maps: Vec<LinearMap>,
    /// Tree edges inside each frame's subtree, `(parent, child)`.
    subtree_edges: Vec<Vec<(usize, usize)>>,
}

/// Light children attached at one path vertex, drawn relative to it.
struct Group {
    verts: Vec<usize>,
    rel: Vec<GridPoint>,
    edges: Vec<(usize, usize)>,
}

impl Group {
    fn min_max_x(&self) -> (i64, i64) {
        self.rel
            .iter()
            .fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.x), hi.max(p.x)))
    }
}

/// Whether two tree edges meet anywhere other than a shared endpoint.
pub(crate) fn edges_conflict(pos: &[GridPoint], e: (usize, usize), f: (usize, usize)) -> bool {
    let shared = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
    let (a, b, c, d) = (pos[e.0], pos[e.1], pos[f.0], pos[f.1]);
    if a.x.max(b.x) < c.x.min(d.x)
        || c.x.max(d.x) < a.x.min(b.x)
        || a.y.max(b.y) < c.y.min(d.y)
        || c.y.max(d.y) < a.y.min(b.y)
    {
        return false;
    }
    if shared {
        segments_overlap(a, b, c, d)
    } else {
        segments_touch(a, b, c, d)
    }
}

pub(crate) fn any_conflict(pos: &[GridPoint], a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    a.iter()
        .any(|&e| b.iter().any(|&f| edges_conflict(pos, e, f)))
}

fn extent(pos: &[GridPoint], verts: impl Iterator<Item = usize>) -> (i64, i64) {
    let (mut lo, mut hi) = (
        GridPoint::new(i64::MAX, i64::MAX),
        GridPoint::new(i64::MIN, i64::MIN),
    );
    for v in verts {
        let p = pos[v];
        lo = GridPoint::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = GridPoint::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi.x - lo.x, hi.y - lo.y)
}

impl FewSegLayout {
    /// Lays out `tree` with vector rounding; no compression rounds yet.
    pub fn build(tree: &RootedTree, params: FewSegParams) -> Self {
        let hpd = heavy_path_decomposition(tree);
        let sizes = tree.subtree_sizes();
        let n = tree.n();
        let mut frames: Vec<Frame> = hpd
            .paths
            .iter()
            .map(|path| Frame {
                offsets: (0..path.len() as i64).collect(),
                path: path.clone(),
                parent: None,
                vector: GridPoint::new(1, 0),
                partner: None,
                backward: false,
                children: Vec::new(),
                size: sizes[path[0]],
            })
            .collect();
        let mut frame_of = vec![0; n];
        let mut index_in_path = vec![0; n];
        let mut head_frame = vec![None; n];
        for (f, frame) in frames.iter().enumerate() {
            head_frame[frame.path[0]] = Some(f);
            for (i, &v) in frame.path.iter().enumerate() {
                frame_of[v] = f;
                index_in_path[v] = i;
            }
        }
        for f in 1..frames.len() {
            let p = tree.parent(frames[f].path[0]).expect("only the first path holds the root");
            let pf = frame_of[p];
            frames[f].parent = Some((pf, index_in_path[p]));
            frames[pf].children.push(f);
        }

        let mut layout = FewSegLayout {
            tree: tree.clone(),
            params,
            frames,
            frame_of,
            head_frame,
            positions: vec![GridPoint::ORIGIN; n],
            maps: Vec::new(),
            subtree_edges: Vec::new(),
        };
        layout.maps = vec![LinearMap::IDENTITY; layout.frames.len()];
        layout.subtree_edges = (0..layout.frames.len())
            .map(|f| {
                let mut verts = Vec::new();
                layout.collect_members(f, &mut verts);
                verts
                    .into_iter()
                    .filter(|&v| v != layout.frames[f].path[0])
                    .map(|v| (tree.parent(v).unwrap(), v))
                    .collect()
            })
            .collect();

        let mut builder = Builder {
            pos: vec![GridPoint::ORIGIN; n],
            canon: vec![Vec::new(); layout.frames.len()],
        };
        // heads appear in preorder, so children come after their parent frame
        for f in (0..layout.frames.len()).rev() {
            layout.build_frame(f, &mut builder);
        }
        layout.refresh();
        layout
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn params(&self) -> FewSegParams {
        self.params
    }

    /// Global positions, not normalised.
    pub fn positions(&self) -> &[GridPoint] {
        &self.positions
    }

    /// The drawing translated so that its bounding box starts at the origin.
    pub fn drawing(&self) -> Drawing {
        let min_x = self.positions.iter().map(|p| p.x).min().unwrap_or(0);
        let min_y = self.positions.iter().map(|p| p.y).min().unwrap_or(0);
        let pts = self
            .positions
            .iter()
            .map(|&p| p - GridPoint::new(min_x, min_y))
            .collect();
        Drawing::grid(self.tree.to_graph(), pts)
    }

    /// Vector currently used by the edge from `parent(v)` to `v`, in global
    /// coordinates.
    pub fn edge_vector(&self, v: usize) -> Option<GridPoint> {
        self.tree
            .parent(v)
            .map(|p| self.positions[v] - self.positions[p])
    }

    /// Whether the edge into `v` is a light edge that starts a new heavy path
    /// in a new direction (the root's backwards extension does not count).
    pub fn is_light_edge(&self, v: usize) -> bool {
        self.head_frame[v].is_some_and(|f| self.frames[f].parent.is_some() && !self.frames[f].backward)
    }

    /// Number of vertices on each heavy path, in frame order.
    pub fn heavy_paths(&self) -> Vec<Vec<usize>> {
        self.frames.iter().map(|f| f.path.clone()).collect()
    }

    /// Recomputes global positions and frame maps from the frame parameters.
    pub fn refresh(&mut self) {
        let mut pos = core::mem::take(&mut self.positions);
        let mut maps = core::mem::take(&mut self.maps);
        self.place_into(0, GridPoint::ORIGIN, LinearMap::IDENTITY, &mut pos, &mut maps);
        self.positions = pos;
        self.maps = maps;
    }

    pub(crate) fn place_into(
        &self,
        f: usize,
        origin: GridPoint,
        map: LinearMap,
        pos: &mut [GridPoint],
        maps: &mut [LinearMap],
    ) {
        maps[f] = map;
        let frame = &self.frames[f];
        for (&v, &off) in frame.path.iter().zip(&frame.offsets) {
            pos[v] = origin + off * map.col0;
        }
        for &c in &frame.children {
            let (_, t) = self.frames[c].parent.unwrap();
            let anchor = pos[frame.path[t]];
            let vector = self.frames[c].vector;
            let child_map = map.compose(&LinearMap::frame(primitive_vector(vector).unwrap()));
            self.place_into(c, anchor + map.apply(vector), child_map, pos, maps);
        }
    }

    pub(crate) fn collect_members(&self, f: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.frames[f].path);
        for &c in &self.frames[f].children {
            self.collect_members(c, out);
        }
    }

    fn head(&self, f: usize) -> usize {
        self.frames[f].path[0]
    }

    fn build_frame(&mut self, f: usize, b: &mut Builder) {
        let path = self.frames[f].path.clone();
        let is_root_frame = self.frames[f].parent.is_none();
        let mut groups = Vec::with_capacity(path.len());
        let mut backward = None;

        for (t, &h) in path.iter().enumerate() {
            let mut lights: Vec<usize> = self.frames[f]
                .children
                .iter()
                .copied()
                .filter(|&c| self.frames[c].parent == Some((f, t)))
                .collect();
            lights.sort_by_key(|&c| (core::cmp::Reverse(self.frames[c].size), self.head(c)));
            if is_root_frame && t == 0 && lights.len() % 2 == 1 {
                backward = lights.pop();
            }

            let mut group = Group {
                verts: vec![h],
                rel: vec![GridPoint::ORIGIN],
                edges: Vec::new(),
            };
            b.pos[h] = GridPoint::ORIGIN;
            let mut steepest: Option<GridPoint> = None;
            for pair in lights.chunks(2) {
                let (s, partner) = (pair[0], pair.get(1).copied());
                if let Some(p) = partner {
                    self.frames[s].partner = Some(p);
                    self.frames[p].partner = Some(s);
                }
                let base = self.search_base(b, &group, h, s, partner, steepest);
                let choice = round_vector(base, self.params.s, |v| {
                    self.try_place(b, &group, h, s, partner, v)
                })
                .expect("the base vector is always placeable");
                self.frames[s].vector = choice.vector;
                if let Some(p) = partner {
                    self.frames[p].vector = choice.partner_vector;
                }
                // commit positions of the chosen placement
                let placed = self.try_place(b, &group, h, s, partner, choice.vector);
                debug_assert!(placed.is_some());
                for c in [Some(s), partner].into_iter().flatten() {
                    group.edges.push((h, self.head(c)));
                    group.edges.extend_from_slice(&self.subtree_edges[c]);
                    for &(u, _) in &b.canon[c] {
                        group.verts.push(u);
                        group.rel.push(b.pos[u]);
                    }
                }
                steepest = Some(choice.vector);
            }
            groups.push(group);
        }

        let offsets = spread_groups(&groups, &mut b.pos);
        self.frames[f].offsets = offsets.clone();

        if let Some(c) = backward {
            self.frames[c].backward = true;
            let mut edges: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
            for (g, &off) in groups.iter().zip(&offsets) {
                for (&v, &r) in g.verts.iter().zip(&g.rel) {
                    b.pos[v] = r + GridPoint::new(off, 0);
                }
                edges.extend_from_slice(&g.edges);
            }
            let root = path[0];
            let mut own = self.subtree_edges[c].clone();
            own.push((root, self.head(c)));
            let mut m = 1;
            loop {
                for &(u, p) in &b.canon[c] {
                    b.pos[u] = GridPoint::new(-m - p.x, -p.y);
                }
                if !any_conflict(&b.pos, &own, &edges) {
                    break;
                }
                m += 1;
            }
            self.frames[c].vector = GridPoint::new(-m, 0);
        }

        let mut pos = vec![GridPoint::ORIGIN; self.tree.n()];
        let mut maps = vec![LinearMap::IDENTITY; self.frames.len()];
        self.place_into(f, GridPoint::ORIGIN, LinearMap::IDENTITY, &mut pos, &mut maps);
        let mut members = Vec::new();
        self.collect_members(f, &mut members);
        b.canon[f] = members.into_iter().map(|v| (v, pos[v])).collect();
    }

    /// Shortest top-right vector, steepest first among equal lengths, whose
    /// slope is strictly below `steepest` and which places the pair cleanly.
    fn search_base(
        &self,
        b: &mut Builder,
        group: &Group,
        h: usize,
        s: usize,
        partner: Option<usize>,
        steepest: Option<GridPoint>,
    ) -> GridPoint {
        for sum in 2i64.. {
            for x in 1..sum {
                let y = sum - x;
                if let Some(st) = steepest {
                    if y as i128 * st.x as i128 >= st.y as i128 * x as i128 {
                        continue;
                    }
                }
                let v = GridPoint::new(x, y);
                if self.try_place(b, group, h, s, partner, v).is_some() {
                    return v;
                }
            }
        }
        unreachable!()
    }

    /// Places `s` with vector `v` and `partner` with `-v` relative to the
    /// path vertex `h` at the origin. Fails if either leaves its half-plane
    /// or touches the group drawn so far.
    fn try_place(
        &self,
        b: &mut Builder,
        group: &Group,
        h: usize,
        s: usize,
        partner: Option<usize>,
        v: GridPoint,
    ) -> Option<SubtreeExtent> {
        let map = LinearMap::frame(primitive_vector(v).ok()?);
        for &(u, p) in &b.canon[s] {
            let q = v + map.apply(p);
            if q.y <= 0 {
                return None;
            }
            b.pos[u] = q;
        }
        if let Some(c) = partner {
            for &(u, p) in &b.canon[c] {
                let q = -(v + map.apply(p));
                if q.y >= 0 {
                    return None;
                }
                b.pos[u] = q;
            }
        }
        for (&u, &r) in group.verts.iter().zip(&group.rel) {
            b.pos[u] = r;
        }
        for c in [Some(s), partner].into_iter().flatten() {
            let link = [(h, self.head(c))];
            if any_conflict(&b.pos, &link, &group.edges)
                || any_conflict(&b.pos, &self.subtree_edges[c], &group.edges)
            {
                return None;
            }
        }
        let (width, height) = extent(&b.pos, b.canon[s].iter().map(|&(u, _)| u));
        let partner = partner.map(|c| extent(&b.pos, b.canon[c].iter().map(|&(u, _)| u)));
        Some(SubtreeExtent {
            width,
            height,
            partner,
        })
    }
}

struct Builder {
    /// Scratch positions indexed by vertex.
    pos: Vec<GridPoint>,
    /// Local drawing of every finished frame: `(vertex, position)` with the
    /// head at the origin and the path on the positive x-axis.
    canon: Vec<Vec<(usize, GridPoint)>>,
}

/// Smallest increasing offsets that keep consecutive groups from touching.
fn spread_groups(groups: &[Group], pos: &mut [GridPoint]) -> Vec<i64> {
    let mut offsets = vec![0i64];
    let mut union_edges: Vec<(usize, usize)> = groups[0].edges.clone();
    let (_, mut union_max) = groups[0].min_max_x();
    for (&v, &r) in groups[0].verts.iter().zip(&groups[0].rel) {
        pos[v] = r;
    }
    for g in &groups[1..] {
        let (g_min, g_max) = g.min_max_x();
        let mut x = offsets.last().unwrap() + 1;
        loop {
            if x + g_min > union_max {
                break;
            }
            for (&v, &r) in g.verts.iter().zip(&g.rel) {
                pos[v] = r + GridPoint::new(x, 0);
            }
            if !any_conflict(pos, &g.edges, &union_edges) {
                break;
            }
            x += 1;
        }
        for (&v, &r) in g.verts.iter().zip(&g.rel) {
            pos[v] = r + GridPoint::new(x, 0);
        }
        union_edges.extend_from_slice(&g.edges);
        union_max = union_max.max(x + g_max);
        offsets.push(x);
    }
    offsets
}
