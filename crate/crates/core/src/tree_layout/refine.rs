//! Compression and re-vectoring passes over a finished few-segments layout.
//!
//! Both passes only accept a change that keeps the drawing planar, does not
//! grow either side of the bounding box and leaves the segment count alone.

use alloc::vec;
use alloc::vec::Vec;

use super::fewseg::{any_conflict, FewSegLayout};
use crate::drawing::count_segments;
use crate::geometry::{primitive_vector, split_multiple, GridPoint, LinearMap};

/// Size of the drawing after one pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundStats {
    pub round: usize,
    /// `2` for edge compression, `3` for re-vectoring.
    pub pass: u8,
    pub width: i64,
    pub height: i64,
    pub segments: usize,
    /// Edges changed by the pass.
    pub changed: usize,
}

type EdgeList = Vec<(usize, usize)>;

#[derive(Clone, Copy)]
struct Bbox {
    lo: GridPoint,
    hi: GridPoint,
}

impl Bbox {
    const EMPTY: Bbox = Bbox {
        lo: GridPoint { x: i64::MAX, y: i64::MAX },
        hi: GridPoint { x: i64::MIN, y: i64::MIN },
    };

    fn add(&mut self, p: GridPoint) {
        self.lo = GridPoint::new(self.lo.x.min(p.x), self.lo.y.min(p.y));
        self.hi = GridPoint::new(self.hi.x.max(p.x), self.hi.y.max(p.y));
    }

    fn size(&self) -> (i64, i64) {
        (self.hi.x - self.lo.x, self.hi.y - self.lo.y)
    }
}

/// Vertices of every tree subtree as a contiguous preorder range.
struct Subtrees {
    order: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
}

impl Subtrees {
    fn new(layout: &FewSegLayout) -> Self {
        let order = layout.tree.preorder();
        let sizes = layout.tree.subtree_sizes();
        let mut start = vec![0; order.len()];
        let mut end = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            start[v] = i;
            end[v] = i + sizes[v];
        }
        Subtrees { order, start, end }
    }

    fn of(&self, v: usize) -> &[usize] {
        &self.order[self.start[v]..self.end[v]]
    }
}

impl FewSegLayout {
    /// Width and height of the bounding box.
    pub fn size(&self) -> (i64, i64) {
        let mut b = Bbox::EMPTY;
        for &p in &self.positions {
            b.add(p);
        }
        b.size()
    }

    pub fn segment_count(&self) -> usize {
        count_segments(&self.drawing()).0
    }

    /// Runs the configured number of compression / re-vectoring rounds.
    pub fn refine(&mut self) -> Vec<RoundStats> {
        let mut trace = Vec::with_capacity(2 * self.params.heuristic_rounds);
        for round in 0..self.params.heuristic_rounds {
            let changed = self.compress();
            trace.push(self.stats(round, 2, changed));
            let changed = self.revector();
            trace.push(self.stats(round, 3, changed));
        }
        trace
    }

    fn stats(&self, round: usize, pass: u8, changed: usize) -> RoundStats {
        let (width, height) = self.size();
        RoundStats {
            round,
            pass,
            width,
            height,
            segments: self.segment_count(),
            changed,
        }
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.tree.n())
            .filter_map(|v| self.tree.parent(v).map(|p| (p, v)))
            .collect()
    }

    /// Splits the tree edges into those with the child inside `moved` and the rest.
    fn split_edges(&self, moved: &[bool]) -> (EdgeList, EdgeList) {
        self.edge_list().into_iter().partition(|&(_, v)| moved[v])
    }

    /// Shortens every edge `k·u` to the smallest `m·u` that keeps the
    /// drawing valid, visiting edges bottom-up.
    pub fn compress(&mut self) -> usize {
        let subtrees = Subtrees::new(self);
        let (w0, h0) = self.size();
        let mut moved = vec![false; self.tree.n()];
        let mut changed = 0;
        for v in self.tree.postorder() {
            let Some(p) = self.tree.parent(v) else {
                continue;
            };
            let Ok((k, _)) = split_multiple(self.positions[v] - self.positions[p]) else {
                continue;
            };
            if k <= 1 {
                continue;
            }
            for &x in subtrees.of(v) {
                moved[x] = true;
            }
            let (inner, outer) = self.split_edges(&moved);
            let light = self.head_frame[v];
            let f = self.frame_of[v];
            let t = self.frames[f].path.iter().position(|&x| x == v).unwrap();
            let saved_vector = light.map(|c| self.frames[c].vector);
            let saved_offsets = self.frames[f].offsets.clone();
            let mut accepted = false;
            for m in 1..k {
                match light {
                    Some(c) => {
                        let prim = primitive_vector(saved_vector.unwrap()).unwrap();
                        let (old, _) = split_multiple(saved_vector.unwrap()).unwrap();
                        debug_assert_eq!(old, k);
                        self.frames[c].vector = m * prim;
                    }
                    None => {
                        let delta = m - k;
                        for off in &mut self.frames[f].offsets[t..] {
                            *off += delta;
                        }
                    }
                }
                self.refresh();
                let (w, h) = self.size();
                if w <= w0 && h <= h0 && !any_conflict(&self.positions, &inner, &outer) {
                    accepted = true;
                    break;
                }
                match light {
                    Some(c) => self.frames[c].vector = saved_vector.unwrap(),
                    None => self.frames[f].offsets.clone_from(&saved_offsets),
                }
            }
            if accepted {
                changed += 1;
            } else {
                self.refresh();
            }
            for &x in subtrees.of(v) {
                moved[x] = false;
            }
        }
        changed
    }

    /// Replaces long light-edge vectors by the shortest ones that keep the
    /// drawing valid, moving the paired subtree along with them.
    pub fn revector(&mut self) -> usize {
        let subtrees = Subtrees::new(self);
        let segments = self.segment_count();
        let mut moved = vec![false; self.tree.n()];
        let mut changed = 0;
        for r in self.tree.postorder() {
            let Some(c) = self.head_frame[r] else {
                continue;
            };
            let Some((pf, _)) = self.frames[c].parent else {
                continue;
            };
            if self.frames[c].backward {
                continue;
            }
            let p = self.tree.parent(r).unwrap();
            let current = self.positions[r] - self.positions[p];
            let (w, h) = self.size();
            if 5 * current.l1() <= w + h {
                continue;
            }
            let partner = self.frames[c].partner;
            let heads: Vec<usize> = [Some(c), partner]
                .into_iter()
                .flatten()
                .map(|f| self.frames[f].path[0])
                .collect();
            for &head in &heads {
                for &x in subtrees.of(head) {
                    moved[x] = true;
                }
            }
            let (inner, outer) = self.split_edges(&moved);
            let (own, other): (Vec<_>, Vec<_>) = inner
                .iter()
                .partition(|&&(_, x)| subtrees.start[r] <= subtrees.start[x] && subtrees.start[x] < subtrees.end[r]);
            let mut fixed = Bbox::EMPTY;
            for (x, &pos) in self.positions.iter().enumerate() {
                if !moved[x] {
                    fixed.add(pos);
                }
            }
            let map = self.maps[pf];
            let inverse = map.unimodular_inverse().expect("frame maps are unimodular");
            let saved: Vec<_> = [Some(c), partner]
                .into_iter()
                .flatten()
                .map(|f| (f, self.frames[f].vector))
                .collect();

            let mut accepted = false;
            'search: for s in 1..current.l1() {
                for i in -s..=s {
                    let rest = s - i.abs();
                    let js: &[i64] = if rest == 0 { &[0] } else { &[rest, -rest] };
                    for &j in js {
                        let local = inverse.apply(GridPoint::new(i, j));
                        if self.try_revector(c, partner, p, local, map, &moved, fixed, (w, h), &own, &other, &outer)
                            && self.segment_count() == segments
                        {
                            accepted = true;
                            break 'search;
                        }
                        for &(f, v) in &saved {
                            self.frames[f].vector = v;
                        }
                    }
                }
            }
            if accepted {
                changed += 1;
            }
            self.refresh();
            for &head in &heads {
                for &x in subtrees.of(head) {
                    moved[x] = false;
                }
            }
        }
        changed
    }

    #[allow(clippy::too_many_arguments)]
    fn try_revector(
        &mut self,
        c: usize,
        partner: Option<usize>,
        p: usize,
        local: GridPoint,
        map: LinearMap,
        moved: &[bool],
        fixed: Bbox,
        limit: (i64, i64),
        own: &[(usize, usize)],
        other: &[(usize, usize)],
        outer: &[(usize, usize)],
    ) -> bool {
        let mut pos = core::mem::take(&mut self.positions);
        let mut maps = core::mem::take(&mut self.maps);
        let anchor = pos[p];
        for (f, v) in [(Some(c), local), (partner, -local)] {
            let Some(f) = f else { continue };
            self.frames[f].vector = v;
            let child_map = map.compose(&LinearMap::frame(primitive_vector(v).unwrap()));
            self.place_into(f, anchor + map.apply(v), child_map, &mut pos, &mut maps);
        }
        let mut bbox = fixed;
        for (x, &q) in pos.iter().enumerate() {
            if moved[x] {
                bbox.add(q);
            }
        }
        let (w, h) = bbox.size();
        let ok = w <= limit.0
            && h <= limit.1
            && !any_conflict(&pos, own, other)
            && !any_conflict(&pos, own, outer)
            && !any_conflict(&pos, other, outer);
        self.positions = pos;
        self.maps = maps;
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{is_planar_drawing, odd_degree_bound};
    use crate::graph::RootedTree;
    use crate::tree_layout::FewSegParams;

    fn caterpillar() -> RootedTree {
        // spine 0-1-2-3 with two leaves on each spine vertex and a deeper branch
        let mut parent = vec![None, Some(0), Some(1), Some(2)];
        for s in 0..4 {
            parent.push(Some(s));
            parent.push(Some(s));
        }
        let b = parent.len();
        parent.push(Some(1));
        parent.push(Some(b));
        parent.push(Some(b));
        parent.push(Some(b));
        RootedTree::from_parents(parent).unwrap()
    }

    #[test]
    fn rounds_never_grow_the_drawing() {
        let t = caterpillar();
        let mut layout = FewSegLayout::build(&t, FewSegParams::default());
        let (mut w, mut h) = layout.size();
        for st in layout.refine() {
            assert!(st.width <= w && st.height <= h);
            assert_eq!(st.segments, odd_degree_bound(&t));
            w = st.width;
            h = st.height;
        }
        assert!(is_planar_drawing(&layout.drawing()));
    }

    #[test]
    fn trace_has_two_entries_per_round() {
        let t = caterpillar();
        let params = FewSegParams {
            s: 2,
            heuristic_rounds: 3,
        };
        let mut layout = FewSegLayout::build(&t, params);
        let trace = layout.refine();
        assert_eq!(trace.len(), 6);
        assert_eq!(trace.iter().map(|s| s.pass).collect::<Vec<_>>(), [2, 3, 2, 3, 2, 3]);
    }
}
