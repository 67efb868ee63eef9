//! Angular-resolution layout ("quad").
//!
//! Each vertex splits its available angular range (`quadrants × 90°`,
//! centred on the direction it was entered from) into one slot per child.
//! When the coefficient is attainable every slot is at least as wide as the
//! coefficient and the surplus is shared half evenly and half by subtree
//! size; otherwise the range is divided evenly. A child is placed on an
//! integer direction close to its slot centre, at the smallest distance that
//! puts its whole subtree strictly inside a convex wedge of its slot.
//! Wedges of siblings are disjoint, which keeps the drawing planar.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::QuadParams;
use crate::drawing::Drawing;
use crate::geometry::{primitive_vector, GridPoint};
use crate::graph::RootedTree;
use crate::Result;

const MAX_WEDGE_HALF: f64 = 89.0;

pub fn layout_quad(tree: &RootedTree, params: QuadParams) -> Result<Drawing> {
    params.validate()?;
    let sizes = tree.subtree_sizes();
    let ctx = Ctx {
        tree,
        params,
        sizes: &sizes,
    };
    let rel = ctx.subtree(tree.root(), None);
    let mut pts = vec![GridPoint::ORIGIN; tree.n()];
    for (v, p) in rel {
        pts[v] = p;
    }
    let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0);
    let min_y = pts.iter().map(|p| p.y).min().unwrap_or(0);
    for p in &mut pts {
        *p = *p - GridPoint::new(min_x, min_y);
    }
    Ok(Drawing::grid(tree.to_graph(), pts))
}

struct Ctx<'a> {
    tree: &'a RootedTree,
    params: QuadParams,
    sizes: &'a [usize],
}

struct Slot {
    center: f64,
    width: f64,
    tolerance: f64,
}

impl Ctx<'_> {
    /// Drawing of the subtree of `v` relative to `v`; `incoming` is the
    /// direction of the edge from the parent into `v`.
    fn subtree(&self, v: usize, incoming: Option<GridPoint>) -> Vec<(usize, GridPoint)> {
        let mut out = vec![(v, GridPoint::ORIGIN)];
        let kids = self.ordered_children(v);
        if kids.is_empty() {
            return out;
        }
        let center = incoming.map_or(-90.0, degrees);
        let slots = self.slots(center, &kids);
        for (&c, slot) in kids.iter().zip(&slots) {
            let dir = match incoming {
                Some(d) if kids.len() == 1 => d,
                _ => approximate_direction(slot.center, slot.tolerance),
            };
            let child = self.subtree(c, Some(dir));
            let half = (slot.width / 2.0).min(MAX_WEDGE_HALF);
            let len = smallest_length(&child, dir, slot.center, half);
            out.extend(child.into_iter().map(|(u, p)| (u, p + len * dir)));
        }
        out
    }

    /// Children in slot order (angularly increasing), largest subtrees in
    /// the middle of the range.
    fn ordered_children(&self, v: usize) -> Vec<usize> {
        let mut by_size: Vec<usize> = self.tree.children(v).to_vec();
        by_size.sort_by_key(|&c| (core::cmp::Reverse(self.sizes[c]), c));
        let c = by_size.len();
        let mut positions: Vec<usize> = (0..c).collect();
        positions.sort_by_key(|&i| ((2 * i).abs_diff(c - 1), i));
        let mut slots = vec![0; c];
        for (pos, kid) in positions.into_iter().zip(by_size) {
            slots[pos] = kid;
        }
        slots
    }

    fn slots(&self, center: f64, kids: &[usize]) -> Vec<Slot> {
        let c = kids.len();
        let range = self.params.available_angle();
        let coef = self.params.angular_coefficient;
        let feasible = self.params.permits(c);
        let widths: Vec<f64> = if feasible {
            let extra = range - c as f64 * coef;
            let total: usize = kids.iter().map(|&k| self.sizes[k]).sum();
            kids.iter()
                .map(|&k| {
                    coef + extra * (0.5 / c as f64 + 0.5 * self.sizes[k] as f64 / total as f64)
                })
                .collect()
        } else {
            vec![range / c as f64; c]
        };
        let mut start = center - range / 2.0;
        let mut slots: Vec<Slot> = widths
            .iter()
            .map(|&w| {
                let s = Slot {
                    center: start + w / 2.0,
                    width: w,
                    tolerance: 0.25f64.min(w.min(2.0 * MAX_WEDGE_HALF) / 8.0),
                };
                start += w;
                s
            })
            .collect();
        if feasible && c > 1 {
            // neighbouring centres must stay `coef` apart after rounding,
            // including across the wrap when the range is a full turn
            let wraps = range >= 360.0;
            for i in 0..c {
                let mut slack = f64::INFINITY;
                if i > 0 || wraps {
                    let j = (i + c - 1) % c;
                    slack = slack.min((widths[i] + widths[j]) / 2.0 - coef);
                }
                if i + 1 < c || wraps {
                    let j = (i + 1) % c;
                    slack = slack.min((widths[i] + widths[j]) / 2.0 - coef);
                }
                slots[i].tolerance = slots[i].tolerance.min(slack / 2.5);
            }
        }
        slots
    }
}

fn degrees(d: GridPoint) -> f64 {
    libm::atan2(d.y as f64, d.x as f64) * 180.0 / PI
}

/// Signed difference `a - b` wrapped into `(-180, 180]`.
fn angle_diff(a: f64, b: f64) -> f64 {
    let mut d = (a - b) % 360.0;
    if d > 180.0 {
        d -= 360.0;
    } else if d <= -180.0 {
        d += 360.0;
    }
    d
}

/// Primitive integer direction within `tolerance` degrees of `angle`.
fn approximate_direction(angle: f64, tolerance: f64) -> GridPoint {
    let (s, c) = libm::sincos(angle * PI / 180.0);
    let mut r = 1.0;
    loop {
        let cand = GridPoint::new(libm::round(r * c) as i64, libm::round(r * s) as i64);
        if !cand.is_zero() && libm::fabs(angle_diff(degrees(cand), angle)) <= tolerance {
            return primitive_vector(cand).unwrap();
        }
        r += 1.0;
    }
}

fn inside_wedge(points: &[(usize, GridPoint)], shift: GridPoint, center: f64, half: f64) -> bool {
    points.iter().all(|&(_, p)| {
        let q = p + shift;
        !q.is_zero() && libm::fabs(angle_diff(degrees(q), center)) < half - 1e-9
    })
}

fn smallest_length(points: &[(usize, GridPoint)], dir: GridPoint, center: f64, half: f64) -> i64 {
    let fits = |len: i64| inside_wedge(points, len * dir, center, half);
    let mut hi = 1i64;
    while !fits(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // fits(lo) is false (or lo == 0); fits(hi) is true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::is_planar_drawing;

    fn star(k: usize) -> RootedTree {
        let mut parent = vec![None];
        parent.extend((0..k).map(|_| Some(0)));
        RootedTree::from_parents(parent).unwrap()
    }

    fn child_angles(d: &Drawing, tree: &RootedTree, v: usize) -> Vec<f64> {
        let p = d.grid_points().unwrap();
        let mut a: Vec<f64> = tree
            .children(v)
            .iter()
            .map(|&c| {
                let v = p[c] - p[v];
                let deg = degrees(v);
                if deg < 0.0 {
                    deg + 360.0
                } else {
                    deg
                }
            })
            .collect();
        a.sort_by(f64::total_cmp);
        a
    }

    fn cyclic_gaps(a: &[f64]) -> Vec<f64> {
        (0..a.len())
            .map(|i| {
                if i + 1 < a.len() {
                    a[i + 1] - a[i]
                } else {
                    a[0] + 360.0 - a[i]
                }
            })
            .collect()
    }

    #[test]
    fn four_children_respect_coefficient() {
        let t = star(4);
        let d = layout_quad(&t, QuadParams::default()).unwrap();
        let gaps = cyclic_gaps(&child_angles(&d, &t, 0));
        assert!(gaps.iter().all(|&g| g >= 22.5 - 1e-9), "{gaps:?}");
        assert!(is_planar_drawing(&d));
    }

    #[test]
    fn seventeen_children_are_spread_evenly() {
        let t = star(17);
        let d = layout_quad(&t, QuadParams::default()).unwrap();
        let gaps = cyclic_gaps(&child_angles(&d, &t, 0));
        let even = 360.0 / 17.0;
        assert!(gaps.iter().all(|&g| (g - even).abs() <= 0.5 + 1e-9), "{gaps:?}");
        assert!(is_planar_drawing(&d));
    }

    #[test]
    fn chains_stay_straight() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2)]).unwrap();
        let d = layout_quad(&t, QuadParams::default()).unwrap();
        assert_eq!(crate::drawing::count_segments(&d).0, 1);
    }

    #[test]
    fn rejects_bad_params() {
        let bad = QuadParams {
            angular_coefficient: 0.0,
            quadrants: 4,
        };
        assert!(layout_quad(&star(2), bad).is_err());
        let bad = QuadParams {
            angular_coefficient: 22.5,
            quadrants: 5,
        };
        assert!(layout_quad(&star(2), bad).is_err());
    }
}
