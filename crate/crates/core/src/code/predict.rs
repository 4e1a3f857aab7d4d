//! The segment-case prediction `d = (q-1)^2 - l(q-1)` for large characteristic.

use std::fmt;

use serde::Serialize;

use crate::lattice::{gcd, minkowski_length, LatticePoint, PointSet, Polygon};

/// A hypothesis of the segment theorem that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HypothesisFailure {
    /// `L(P)` could not be computed.
    Lattice(String),
    /// More than one maximal subpolygon (counting translates).
    NotUnique { decompositions: usize, placements: usize },
    /// The maximal subpolygon is not a multiple of one primitive segment.
    NotSegment,
    /// An endpoint of the maximal segment is missing from `S`.
    MissingEndpoint(LatticePoint),
    /// The exponents of `S` along the segment are all multiples of `j > 1`.
    CommonDivisor(i64),
}

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisFailure::Lattice(e) => write!(f, "Minkowski length unavailable: {e}"),
            HypothesisFailure::NotUnique { decompositions, placements } => write!(
                f,
                "maximal subpolygon not unique ({decompositions} decompositions, {placements} placements)"
            ),
            HypothesisFailure::NotSegment => write!(f, "maximal subpolygon is not a multiple of a primitive segment"),
            HypothesisFailure::MissingEndpoint(p) => write!(f, "S does not contain the segment endpoint {p}"),
            HypothesisFailure::CommonDivisor(j) => write!(f, "exponents along the segment are all multiples of {j}"),
        }
    }
}

/// Outcome of [`predict_d_theorem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TheoremPrediction {
    /// All hypotheses hold; `d` is the value for sufficiently large
    /// characteristic, with no effective bound on how large.
    Asymptotic { d: i64, length: u32, segment: (LatticePoint, LatticePoint) },
    Fails(HypothesisFailure),
}

impl TheoremPrediction {
    pub fn value(&self) -> Option<i64> {
        match self {
            TheoremPrediction::Asymptotic { d, .. } => Some(*d),
            TheoremPrediction::Fails(_) => None,
        }
    }
}

/// Checks the hypotheses of the segment theorem for `(P, S)` and, when they
/// hold, returns `(q-1)^2 - l(q-1)`.
///
/// The hypotheses: `P` has a unique maximal subpolygon `Q = l * I` for a
/// primitive segment `I`, `S` contains both endpoints of `Q`, and the
/// positions of the points of `S` along `Q` are not all multiples of a
/// common `j > 1`.
pub fn predict_d_theorem(p: &Polygon, s: &PointSet, q: u64) -> TheoremPrediction {
    let ml = match minkowski_length(p) {
        Ok(ml) => ml,
        Err(e) => return TheoremPrediction::Fails(HypothesisFailure::Lattice(e.to_string())),
    };
    let placements: usize = ml.decompositions.iter().map(|d| d.placements.len()).sum();
    if ml.decompositions.len() != 1 || placements != 1 {
        return TheoremPrediction::Fails(HypothesisFailure::NotUnique {
            decompositions: ml.decompositions.len(),
            placements,
        });
    }
    let dec = &ml.decompositions[0];
    let Some(dir) = dec.single_direction() else {
        return TheoremPrediction::Fails(HypothesisFailure::NotSegment);
    };
    let l = ml.length as i64;
    let start = dec.placements[0];
    let end = start.add(dir.scale(l));
    for endpoint in [start, end] {
        if !s.contains(&endpoint) {
            return TheoremPrediction::Fails(HypothesisFailure::MissingEndpoint(endpoint));
        }
    }
    let divisor = (0..=l)
        .filter(|&t| s.contains(&start.add(dir.scale(t))))
        .fold(0, gcd);
    if divisor != 1 {
        return TheoremPrediction::Fails(HypothesisFailure::CommonDivisor(divisor));
    }
    let n = q as i64 - 1;
    TheoremPrediction::Asymptotic { d: n * n - l * n, length: ml.length, segment: (start, end) }
}
