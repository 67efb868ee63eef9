//! Grid layouts for rooted trees.
//!
//! All three layouts return integer coordinates with `y` growing upwards.

mod fewseg;
mod quad;
mod refine;
mod tidier;

pub use fewseg::{round_vector, rounded_vector, FewSegLayout, RoundingChoice, SubtreeExtent};
pub use quad::layout_quad;
pub use refine::RoundStats;
pub use tidier::layout_tidier;

use crate::drawing::Drawing;
use crate::graph::RootedTree;
use crate::{Error, Result};

/// Parameters of the few-segments layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FewSegParams {
    /// Stretch budget of the vector-rounding heuristic; `0` disables it.
    pub s: i64,
    /// Alternating compression / re-vectoring rounds after the layout.
    pub heuristic_rounds: usize,
}

impl Default for FewSegParams {
    fn default() -> Self {
        FewSegParams {
            s: 2,
            heuristic_rounds: 5,
        }
    }
}

impl FewSegParams {
    pub fn validate(&self) -> Result<()> {
        if self.s < 0 {
            return Err(Error::InvalidParameter("stretch budget s must be >= 0"));
        }
        Ok(())
    }
}

/// Parameters of the angular ("quad") layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParams {
    /// Target minimum angle between consecutive child edges, in degrees.
    pub angular_coefficient: f64,
    /// Number of 90° quadrants available for the children of a vertex.
    pub quadrants: u8,
}

impl Default for QuadParams {
    fn default() -> Self {
        QuadParams {
            angular_coefficient: 22.5,
            quadrants: 4,
        }
    }
}

impl QuadParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.angular_coefficient > 0.0 && self.angular_coefficient <= 90.0) {
            return Err(Error::InvalidParameter(
                "angular coefficient must lie in (0, 90] degrees",
            ));
        }
        if !(1..=4).contains(&self.quadrants) {
            return Err(Error::InvalidParameter("quadrants must lie in 1..=4"));
        }
        Ok(())
    }

    /// Angular range available to the children of one vertex, in degrees.
    pub fn available_angle(&self) -> f64 {
        90.0 * f64::from(self.quadrants)
    }

    /// Whether `children` child edges can all be kept at least
    /// `angular_coefficient` apart on the integer grid.
    ///
    /// A child count that uses the range exactly (`children * coefficient ==
    /// range`) needs irrational directions and is treated as not permitting.
    pub fn permits(&self, children: usize) -> bool {
        children <= 1 || (children as f64) * self.angular_coefficient < self.available_angle()
    }
}

/// Few-segments layout followed by `heuristic_rounds` rounds of compression
/// and re-vectoring.
pub fn layout_fewsegments(tree: &RootedTree, params: FewSegParams) -> Result<Drawing> {
    params.validate()?;
    let mut layout = FewSegLayout::build(tree, params);
    layout.refine();
    Ok(layout.drawing())
}
