//! JSON drawing documents as consumed by the study front end.

use serde::{Deserialize, Serialize};

use fewseg_core::{Drawing, Graph};
use fewseg_core::geometry::{GridPoint, Point};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusVertex {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StimulusEdge {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StimulusMetadata {
    pub layout: String,
    pub seed: u64,
    #[serde(default)]
    pub generator: Option<String>,
}

/// Vertex ids are 1-based; coordinates are the layout's, with y pointing up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusDocument {
    pub vertices: Vec<StimulusVertex>,
    pub edges: Vec<StimulusEdge>,
    pub metadata: StimulusMetadata,
}

impl StimulusDocument {
    pub fn from_drawing(drawing: &Drawing, metadata: StimulusMetadata) -> Self {
        let pts = drawing.positions.to_real();
        StimulusDocument {
            vertices: pts
                .iter()
                .enumerate()
                .map(|(i, p)| StimulusVertex {
                    id: i + 1,
                    x: p.x,
                    y: p.y,
                })
                .collect(),
            edges: drawing
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| StimulusEdge {
                    source: u + 1,
                    target: v + 1,
                })
                .collect(),
            metadata,
        }
    }

    /// Rebuilds the drawing; vertices are indexed by their position in the
    /// list and edges refer to ids.
    pub fn to_drawing(&self, origin: &str) -> Result<Drawing> {
        let index: std::collections::HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        if index.len() != self.vertices.len() {
            return Err(CliError::parse(origin, 0, "vertex ids are not unique"));
        }
        if let Some(v) = self.vertices.iter().find(|v| !(v.x.is_finite() && v.y.is_finite())) {
            return Err(CliError::parse(origin, 0, format!("vertex {} has non-finite coordinates", v.id)));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| match (index.get(&e.source), index.get(&e.target)) {
                (Some(&u), Some(&v)) => Ok((u, v)),
                _ => Err(CliError::parse(
                    origin,
                    0,
                    format!("edge {} {} refers to a missing vertex", e.source, e.target),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = Graph::new(self.vertices.len(), edges)
            .map_err(|e| CliError::parse(origin, 0, e.to_string()))?;
        // integral coordinates keep the exact grid predicates
        let integral = self
            .vertices
            .iter()
            .all(|v| v.x.fract() == 0.0 && v.y.fract() == 0.0 && v.x.abs() < 9e15 && v.y.abs() < 9e15);
        if integral {
            let pts = self
                .vertices
                .iter()
                .map(|v| GridPoint::new(v.x as i64, v.y as i64))
                .collect();
            return Ok(Drawing::grid(graph, pts));
        }
        let pts = self.vertices.iter().map(|v| Point::new(v.x, v.y)).collect();
        Ok(Drawing::real(graph, pts))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            CliError::parse(origin, e.line(), format!("{e} (column {})", e.column()))
        })
    }
}
