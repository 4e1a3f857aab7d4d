//! Point-set / polygon documents and the shipped figure data.
//!
//! Document schema: `{"p": .., "h": .., "m": .., "points": [[x, y], ..]}` for
//! point sets, `{"vertices": [[x, y], ..]}` for polygons. Every key is
//! optional at parse time; commands check what they need.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{convex_hull, LatticePoint, PointSet, Polygon};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document has no {0}")]
    Missing(&'static str),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    Arity { index: usize, got: usize, expected: usize },
    #[error("duplicate point {0:?}")]
    Duplicate(Vec<i64>),
    #[error("polygon vertices: {0}")]
    Polygon(#[from] crate::lattice::LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[i64; 2]>>,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Exponent vectors of dimension `m` (from the document, default 2),
    /// sorted and checked for duplicates.
    pub fn exponents(&self) -> Result<Vec<Vec<i64>>, DocError> {
        let pts = self.points.as_ref().ok_or(DocError::Missing("points"))?;
        let m = self.m.unwrap_or(2);
        for (index, p) in pts.iter().enumerate() {
            if p.len() != m {
                return Err(DocError::Arity { index, got: p.len(), expected: m });
            }
        }
        let mut sorted = pts.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DocError::Duplicate(w[0].clone()));
        }
        Ok(sorted)
    }

    pub fn point_set(&self) -> Result<PointSet, DocError> {
        let pts = self.points.as_ref().ok_or(DocError::Missing("points"))?;
        let mut out = PointSet::new();
        for (index, p) in pts.iter().enumerate() {
            if p.len() != 2 {
                return Err(DocError::Arity { index, got: p.len(), expected: 2 });
            }
            if !out.insert(LatticePoint::new(p[0], p[1])) {
                return Err(DocError::Duplicate(p.clone()));
            }
        }
        Ok(out)
    }

    /// The polygon from `vertices`, or else the hull of `points`.
    pub fn polygon(&self) -> Result<Polygon, DocError> {
        match &self.vertices {
            Some(v) => Ok(convex_hull(&v.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect())?),
            None => Ok(convex_hull(&self.point_set()?)?),
        }
    }
}

/// A shipped figure: its exponent set and ambient polygon.
#[derive(Debug, Clone)]
pub struct Figure {
    pub name: &'static str,
    pub doc: InputDoc,
    pub points: PointSet,
    pub polygon: Polygon,
}

fn load(name: &'static str, text: &str) -> Figure {
    let doc = InputDoc::parse(text).expect("shipped figure parses");
    let points = doc.point_set().expect("shipped figure points");
    let polygon = doc.polygon().expect("shipped figure polygon");
    Figure { name, doc, points, polygon }
}

pub const FIGURE1_JSON: &str = include_str!("../data/figure1.json");
pub const FIGURE2_JSON: &str = include_str!("../data/figure2.json");
pub const FIGURE3_JSON: &str = include_str!("../data/figure3.json");
pub const FIGURE4_JSON: &str = include_str!("../data/figure4.json");

/// The 12-point set of the `[49,12,28]` code over GF(8).
pub fn figure1() -> Figure {
    load("figure1", FIGURE1_JSON)
}

/// Seven points in the quadrilateral `conv{(0,0),(2,0),(3,1),(1,4)}`.
pub fn figure2() -> Figure {
    load("figure2", FIGURE2_JSON)
}

/// Vertices of the exceptional triangle (the interior point `(1,1)` omitted).
pub fn figure3() -> Figure {
    load("figure3", FIGURE3_JSON)
}

/// `T0 + conv{(0,0),(1,0)}` without the interior point `(1,1)`.
pub fn figure4() -> Figure {
    load("figure4", FIGURE4_JSON)
}

pub fn by_name(name: &str) -> Option<Figure> {
    match name {
        "figure1" => Some(figure1()),
        "figure2" => Some(figure2()),
        "figure3" => Some(figure3()),
        "figure4" => Some(figure4()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures_load() {
        assert_eq!(figure1().points.len(), 12);
        assert_eq!(figure2().points.len(), 7);
        assert_eq!(figure3().points.len(), 3);
        assert_eq!(figure4().points.len(), 6);
        assert_eq!(figure4().polygon.vertices().len(), 5);
    }

    #[test]
    fn schema_errors() {
        assert!(InputDoc::parse("{\"p\": 7, \"bogus\": 1}").is_err());
        let dup = InputDoc::parse("{\"points\": [[0,0],[0,0]]}").unwrap();
        assert!(matches!(dup.exponents(), Err(DocError::Duplicate(_))));
        let arity = InputDoc::parse("{\"m\": 3, \"points\": [[0,0]]}").unwrap();
        assert!(matches!(arity.exponents(), Err(DocError::Arity { .. })));
        assert!(matches!(InputDoc::default().point_set(), Err(DocError::Missing("points"))));
    }
}
