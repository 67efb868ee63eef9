//! Integer and floating point plane geometry.
//!
//! Grid predicates use `i128` intermediates so they are exact for any `i64`
//! coordinates that appear in practice (|coordinate| < 2^62).

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Integer point or vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `|x| + |y|`.
    pub fn l1(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    pub fn to_real(self) -> Point {
        Point::new(self.x as f64, self.y as f64)
    }
}

impl Add for GridPoint {
    type Output = GridPoint;
    fn add(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for GridPoint {
    type Output = GridPoint;
    fn sub(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for GridPoint {
    type Output = GridPoint;
    fn neg(self) -> GridPoint {
        GridPoint::new(-self.x, -self.y)
    }
}

impl Mul<GridPoint> for i64 {
    type Output = GridPoint;
    fn mul(self, v: GridPoint) -> GridPoint {
        GridPoint::new(self * v.x, self * v.y)
    }
}

/// Real point or vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    /// Angle in radians in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        libm::atan2(self.y, self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Divides `v` by `gcd(|x|, |y|)`; signs are preserved.
pub fn primitive_vector(v: GridPoint) -> Result<GridPoint> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = gcd(v.x, v.y);
    Ok(GridPoint::new(v.x / g, v.y / g))
}

/// Splits `v` into `(k, u)` with `v = k * u`, `u` primitive and `k >= 1`.
pub fn split_multiple(v: GridPoint) -> Result<(i64, GridPoint)> {
    let u = primitive_vector(v)?;
    Ok((gcd(v.x, v.y), u))
}

/// `a × b` as an exact 128-bit value.
pub fn cross(a: GridPoint, b: GridPoint) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

pub fn dot(a: GridPoint, b: GridPoint) -> i128 {
    a.x as i128 * b.x as i128 + a.y as i128 * b.y as i128
}

/// Sign of the turn `a -> b -> c`.
pub fn orientation(a: GridPoint, b: GridPoint, c: GridPoint) -> Ordering {
    cross(b - a, c - a).cmp(&0)
}

/// Whether `p` lies on the closed segment `ab` (`a != b`).
pub fn on_segment(p: GridPoint, a: GridPoint, b: GridPoint) -> bool {
    orientation(a, b, p) == Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Whether `p` lies strictly inside segment `ab`.
pub fn in_relative_interior(p: GridPoint, a: GridPoint, b: GridPoint) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

/// Whether the closed segments `ab` and `cd` share at least one point.
pub fn segments_touch(a: GridPoint, b: GridPoint, c: GridPoint, d: GridPoint) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(c, a, b))
        || (o2 == Ordering::Equal && on_segment(d, a, b))
        || (o3 == Ordering::Equal && on_segment(a, c, d))
        || (o4 == Ordering::Equal && on_segment(b, c, d))
}

/// Whether the segments `ab` and `cd` are collinear and share more than a point.
pub fn segments_overlap(a: GridPoint, b: GridPoint, c: GridPoint, d: GridPoint) -> bool {
    if orientation(a, b, c) != Ordering::Equal || orientation(a, b, d) != Ordering::Equal {
        return false;
    }
    // project onto the dominant axis of ab
    let dir = b - a;
    let key = |p: GridPoint| dot(p - a, dir);
    let (lo1, hi1) = (0, key(b));
    let (k2, k3) = (key(c), key(d));
    let (lo2, hi2) = (k2.min(k3), k2.max(k3));
    lo1.max(lo2) < hi1.min(hi2)
}

/// 2×2 integer matrix given by its columns; maps `(u, w)` to `u·col0 + w·col1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearMap {
    pub col0: GridPoint,
    pub col1: GridPoint,
}

impl LinearMap {
    pub const IDENTITY: LinearMap = LinearMap {
        col0: GridPoint::new(1, 0),
        col1: GridPoint::new(0, 1),
    };

    pub fn apply(&self, v: GridPoint) -> GridPoint {
        GridPoint::new(
            v.x * self.col0.x + v.y * self.col1.x,
            v.x * self.col0.y + v.y * self.col1.y,
        )
    }

    pub fn det(&self) -> i64 {
        self.col0.x * self.col1.y - self.col0.y * self.col1.x
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            col0: self.apply(other.col0),
            col1: self.apply(other.col1),
        }
    }

    /// Inverse of a unimodular map (`det = ±1`).
    pub fn unimodular_inverse(&self) -> Option<LinearMap> {
        let det = self.det();
        if det != 1 && det != -1 {
            return None;
        }
        Some(LinearMap {
            col0: GridPoint::new(det * self.col1.y, -det * self.col0.y),
            col1: GridPoint::new(-det * self.col1.x, det * self.col0.x),
        })
    }

    /// The orientation-preserving unimodular frame whose first column is the
    /// primitive vector `e`, with the shortest (L1) second column.
    ///
    /// `frame(-e) = -frame(e)`, so opposite directions yield point-symmetric
    /// images of the same local drawing.
    pub fn frame(e: GridPoint) -> LinearMap {
        debug_assert!(gcd(e.x, e.y) == 1, "frame needs a primitive vector");
        if e.y < 0 || (e.y == 0 && e.x < 0) {
            let f = LinearMap::frame(-e);
            return LinearMap {
                col0: -f.col0,
                col1: -f.col1,
            };
        }
        // a*e.x + b*e.y = 1  =>  det(e, (-b, a)) = 1
        let (_, a, b) = extended_gcd(e.x, e.y);
        let g = GridPoint::new(-b, a);
        let ee = dot(e, e);
        let t0 = if ee == 0 { 0 } else { (-dot(g, e)).div_euclid(ee) as i64 };
        let mut best = g + t0 * e;
        for t in (t0 - 2)..=(t0 + 2) {
            let cand = g + t * e;
            if (cand.l1(), cand) < (best.l1(), best) {
                best = cand;
            }
        }
        LinearMap { col0: e, col1: best }
    }
}

/// Returns `(g, a, b)` with `a*x + b*y = g = gcd(x, y) >= 0`.
fn extended_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Exact test whether two integer vectors point along the same line in
/// opposite directions.
pub fn opposite_collinear(a: GridPoint, b: GridPoint) -> bool {
    cross(a, b) == 0 && dot(a, b) < 0
}

/// Tolerance version of [`opposite_collinear`] for real vectors:
/// `|a × b| <= eps * |a| * |b|` and `a · b < 0`.
pub fn opposite_collinear_real(a: Point, b: Point, eps: f64) -> bool {
    let scale = a.norm() * b.norm();
    scale > 0.0 && libm::fabs(a.cross(b)) <= eps * scale && a.dot(b) < 0.0
}

fn orient_real(a: Point, b: Point, c: Point) -> Ordering {
    let v = (b - a).cross(c - a);
    if v > 0.0 {
        Ordering::Greater
    } else if v < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn on_segment_real(p: Point, a: Point, b: Point) -> bool {
    orient_real(a, b, p) == Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Floating point counterpart of [`segments_touch`] (no tolerance).
pub fn segments_touch_real(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient_real(a, b, c);
    let o2 = orient_real(a, b, d);
    let o3 = orient_real(c, d, a);
    let o4 = orient_real(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Ordering::Equal && on_segment_real(c, a, b))
        || (o2 == Ordering::Equal && on_segment_real(d, a, b))
        || (o3 == Ordering::Equal && on_segment_real(a, c, d))
        || (o4 == Ordering::Equal && on_segment_real(b, c, d))
}

pub fn segments_overlap_real(a: Point, b: Point, c: Point, d: Point) -> bool {
    if orient_real(a, b, c) != Ordering::Equal || orient_real(a, b, d) != Ordering::Equal {
        return false;
    }
    let dir = b - a;
    let key = |p: Point| (p - a).dot(dir);
    let (k2, k3) = (key(c), key(d));
    0f64.max(k2.min(k3)) < key(b).min(k2.max(k3))
}

pub fn in_relative_interior_real(p: Point, a: Point, b: Point) -> bool {
    p != a && p != b && on_segment_real(p, a, b)
}
