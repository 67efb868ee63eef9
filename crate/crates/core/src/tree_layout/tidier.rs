//! Layered tidy drawing in the Reingold–Tilford / Walker style.
//!
//! Subtrees are laid out bottom-up from their contours, so a subtree's
//! shape never depends on where it sits. Siblings keep a horizontal
//! distance of at least [`SIBLING_SEPARATION`] at every common level, and a
//! parent sits exactly at the midpoint of its outermost children.

use alloc::vec;
use alloc::vec::Vec;

use crate::drawing::Drawing;
use crate::geometry::GridPoint;
use crate::graph::RootedTree;

pub const SIBLING_SEPARATION: i64 = 2;

struct Contour {
    left: Vec<i64>,
    right: Vec<i64>,
}

/// Depth `d` vertices get `y = -d`; the leftmost vertex gets `x = 0`.
pub fn layout_tidier(tree: &RootedTree) -> Drawing {
    let n = tree.n();
    // x offset of every vertex relative to its parent
    let mut rel = vec![0i64; n];
    let mut contours: Vec<Option<Contour>> = (0..n).map(|_| None).collect();

    for v in tree.postorder() {
        let kids = tree.children(v);
        if kids.is_empty() {
            contours[v] = Some(Contour {
                left: vec![0],
                right: vec![0],
            });
            continue;
        }
        let mut shifts = Vec::with_capacity(kids.len());
        let mut acc_right: Vec<i64> = Vec::new();
        for (i, &c) in kids.iter().enumerate() {
            let cc = contours[c].as_ref().unwrap();
            let shift = if i == 0 {
                0
            } else {
                acc_right
                    .iter()
                    .zip(&cc.left)
                    .map(|(r, l)| r - l + SIBLING_SEPARATION)
                    .max()
                    .unwrap()
            };
            shifts.push(shift);
            merge_right(&mut acc_right, &cc.right, shift);
        }
        // keep the midpoint on the grid
        let last = shifts.len() - 1;
        if (shifts[0] + shifts[last]) % 2 != 0 {
            shifts[last] += 1;
        }
        let mid = (shifts[0] + shifts[last]) / 2;

        let mut left = vec![0i64];
        let mut right = vec![0i64];
        for (&c, &shift) in kids.iter().zip(&shifts) {
            rel[c] = shift - mid;
            let cc = contours[c].take().unwrap();
            for (d, (&l, &r)) in cc.left.iter().zip(&cc.right).enumerate() {
                let (l, r) = (l + rel[c], r + rel[c]);
                if d + 1 < left.len() {
                    left[d + 1] = left[d + 1].min(l);
                    right[d + 1] = right[d + 1].max(r);
                } else {
                    left.push(l);
                    right.push(r);
                }
            }
        }
        contours[v] = Some(Contour { left, right });
    }

    let mut pts = vec![GridPoint::ORIGIN; n];
    let depth = tree.depths();
    for v in tree.preorder() {
        let x = tree.parent(v).map_or(0, |p| pts[p].x + rel[v]);
        pts[v] = GridPoint::new(x, -(depth[v] as i64));
    }
    let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0);
    for p in &mut pts {
        p.x -= min_x;
    }
    Drawing::grid(tree.to_graph(), pts)
}

fn merge_right(acc: &mut Vec<i64>, right: &[i64], shift: i64) {
    for (d, &r) in right.iter().enumerate() {
        if d < acc.len() {
            acc[d] = acc[d].max(r + shift);
        } else {
            acc.push(r + shift);
        }
    }
}
