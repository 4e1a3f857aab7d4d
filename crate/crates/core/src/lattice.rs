//! Plane lattice geometry: convex hulls, lattice points, Minkowski sums and
//! the full Minkowski length of a lattice polygon.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest bounding-box side accepted by [`minkowski_length`].
pub const MAX_BOX_SIDE: i64 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("point set is empty")]
    Empty,
    #[error("a single point has no positive-dimensional summands")]
    PointPolygon,
    #[error("polygon bounding box side {0} exceeds {MAX_BOX_SIDE}")]
    TooLarge(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.x * k, self.y * k)
    }

    pub fn cross(self, o: LatticePoint) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: LatticePoint) -> i64 {
        self.x * o.x + self.y * o.y
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Number of lattice steps along the segment `a -> b`.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> i64 {
    let d = b.sub(a);
    gcd(d.x, d.y)
}

/// A finite set of plane lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PointSet(BTreeSet<LatticePoint>);

impl PointSet {
    pub fn new() -> Self {
        PointSet(BTreeSet::new())
    }

    pub fn insert(&mut self, p: LatticePoint) -> bool {
        self.0.insert(p)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Points in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<LatticePoint> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<LatticePoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        PointSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::collections::btree_set::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn points<I: IntoIterator<Item = (i64, i64)>>(it: I) -> PointSet {
    it.into_iter().map(LatticePoint::from).collect()
}

/// Convex lattice polygon, possibly degenerate.
///
/// Dimension 2: vertices are extreme points in counterclockwise order.
/// Dimension 1: the two endpoints, lexicographically smaller first.
/// Dimension 0: one point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Polygon {
    vertices: Vec<LatticePoint>,
    dim: u8,
}

impl Polygon {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Convex hull of the given vertices.
    pub fn from_vertices<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Result<Polygon, LatticeError> {
        convex_hull(&points(it))
    }

    pub fn segment(a: LatticePoint, b: LatticePoint) -> Polygon {
        convex_hull(&[a, b].into_iter().collect()).expect("nonempty")
    }

    /// Twice the area.
    pub fn area2(&self) -> i64 {
        if self.dim < 2 {
            return 0;
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn boundary_points(&self) -> i64 {
        match self.dim {
            0 => 1,
            1 => lattice_length(self.vertices[0], self.vertices[1]) + 1,
            _ => {
                let n = self.vertices.len();
                (0..n)
                    .map(|i| lattice_length(self.vertices[i], self.vertices[(i + 1) % n]))
                    .sum()
            }
        }
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bbox(&self) -> (LatticePoint, LatticePoint) {
        let minx = self.vertices.iter().map(|v| v.x).min().unwrap();
        let maxx = self.vertices.iter().map(|v| v.x).max().unwrap();
        let miny = self.vertices.iter().map(|v| v.y).min().unwrap();
        let maxy = self.vertices.iter().map(|v| v.y).max().unwrap();
        (LatticePoint::new(minx, miny), LatticePoint::new(maxx, maxy))
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dim {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let d = b.sub(a);
                let v = p.sub(a);
                d.cross(v) == 0 && v.dot(d) >= 0 && v.dot(d) <= d.dot(d)
            }
            _ => {
                let n = self.vertices.len();
                (0..n).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    b.sub(a).cross(p.sub(a)) >= 0
                })
            }
        }
    }

    pub fn translate(&self, t: LatticePoint) -> Polygon {
        let mut vertices: Vec<_> = self.vertices.iter().map(|v| v.add(t)).collect();
        if self.dim == 1 {
            vertices.sort();
        }
        Polygon { vertices, dim: self.dim }
    }

    /// Translate so the lexicographically smallest vertex sits at the origin.
    pub fn canonical(&self) -> Polygon {
        let min = *self.vertices.iter().min().unwrap();
        let mut c = self.translate(LatticePoint::ORIGIN.sub(min));
        if c.dim == 2 {
            let start = c.vertices.iter().position(|v| *v == LatticePoint::ORIGIN).unwrap();
            c.vertices.rotate_left(start);
        }
        c
    }

    pub fn apply(&self, map: &UnimodularMap) -> Polygon {
        convex_hull(&self.vertices.iter().map(|&v| map.apply(v)).collect()).expect("nonempty")
    }

    /// All integer translations `t` with `self + t` contained in `outer`.
    pub fn placements_in(&self, outer: &Polygon) -> Vec<LatticePoint> {
        let (qmin, qmax) = self.bbox();
        let (pmin, pmax) = outer.bbox();
        let mut out = Vec::new();
        for tx in (pmin.x - qmin.x)..=(pmax.x - qmax.x) {
            for ty in (pmin.y - qmin.y)..=(pmax.y - qmax.y) {
                let t = LatticePoint::new(tx, ty);
                if self.vertices.iter().all(|v| outer.contains(v.add(t))) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn fits_in(&self, outer: &Polygon) -> bool {
        let (qmin, qmax) = self.bbox();
        let (pmin, pmax) = outer.bbox();
        for tx in (pmin.x - qmin.x)..=(pmax.x - qmax.x) {
            for ty in (pmin.y - qmin.y)..=(pmax.y - qmax.y) {
                let t = LatticePoint::new(tx, ty);
                if self.vertices.iter().all(|v| outer.contains(v.add(t))) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Andrew's monotone chain; collinear boundary points are dropped.
pub fn convex_hull(points: &PointSet) -> Result<Polygon, LatticeError> {
    let pts = points.to_vec();
    match pts.len() {
        0 => return Err(LatticeError::Empty),
        1 => return Ok(Polygon { vertices: pts, dim: 0 }),
        _ => {}
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 {
            let n = lower.len();
            if lower[n - 1].sub(lower[n - 2]).cross(p.sub(lower[n - 2])) <= 0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 {
            let n = upper.len();
            if upper[n - 1].sub(upper[n - 2]).cross(p.sub(upper[n - 2])) <= 0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 {
        lower.sort();
        return Ok(Polygon { vertices: lower, dim: 1 });
    }
    Ok(Polygon { vertices: lower, dim: 2 })
}

/// All integer points inside or on the polygon.
pub fn lattice_points(poly: &Polygon) -> PointSet {
    let (lo, hi) = poly.bbox();
    let mut out = PointSet::new();
    for x in lo.x..=hi.x {
        for y in lo.y..=hi.y {
            let p = LatticePoint::new(x, y);
            if poly.contains(p) {
                out.insert(p);
            }
        }
    }
    out
}

/// Minkowski sum. Two 2-dimensional inputs are merged edge by edge; degenerate
/// inputs go through the hull of pairwise vertex sums.
pub fn minkowski_sum(a: &Polygon, b: &Polygon) -> Polygon {
    if a.dim == 2 && b.dim == 2 {
        edge_merge(a, b)
    } else {
        minkowski_sum_by_hull(a, b)
    }
}

pub fn minkowski_sum_by_hull(a: &Polygon, b: &Polygon) -> Polygon {
    let sums: PointSet = a
        .vertices
        .iter()
        .flat_map(|&u| b.vertices.iter().map(move |&v| u.add(v)))
        .collect();
    convex_hull(&sums).expect("nonempty")
}

fn edge_merge(a: &Polygon, b: &Polygon) -> Polygon {
    fn rotated(p: &Polygon) -> Vec<LatticePoint> {
        let start = (0..p.vertices.len())
            .min_by_key(|&i| (p.vertices[i].y, p.vertices[i].x))
            .unwrap();
        let mut v = p.vertices.clone();
        v.rotate_left(start);
        v
    }
    let pa = rotated(a);
    let pb = rotated(b);
    let (na, nb) = (pa.len(), pb.len());
    let mut out = Vec::with_capacity(na + nb);
    let (mut i, mut j) = (0, 0);
    while i < na || j < nb {
        out.push(pa[i % na].add(pb[j % nb]));
        let ea = pa[(i + 1) % na].sub(pa[i % na]);
        let eb = pb[(j + 1) % nb].sub(pb[j % nb]);
        let c = if i == na {
            -1
        } else if j == nb {
            1
        } else {
            ea.cross(eb)
        };
        if c >= 0 {
            i += 1;
        }
        if c <= 0 {
            j += 1;
        }
    }
    // equal-angle edges were merged above; drop any residual collinear vertex
    let n = out.len();
    let vertices: Vec<LatticePoint> = (0..n)
        .filter(|&k| {
            let prev = out[(k + n - 1) % n];
            let next = out[(k + 1) % n];
            out[k].sub(prev).cross(next.sub(out[k])) != 0
        })
        .map(|k| out[k])
        .collect();
    let mut vertices = vertices;
    let start = (0..vertices.len()).min_by_key(|&k| vertices[k]).unwrap();
    vertices.rotate_left(start);
    Polygon { vertices, dim: 2 }
}

/// `x -> matrix * x + translation` with an integer matrix of determinant ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnimodularMap {
    /// Row-major.
    pub matrix: [[i64; 2]; 2],
    pub translation: LatticePoint,
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap {
        matrix: [[1, 0], [0, 1]],
        translation: LatticePoint::ORIGIN,
    };

    pub fn new(matrix: [[i64; 2]; 2], translation: LatticePoint) -> Option<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        (det.abs() == 1).then_some(UnimodularMap { matrix, translation })
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let m = &self.matrix;
        LatticePoint::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y).add(self.translation)
    }

    pub fn linear(&self, p: LatticePoint) -> LatticePoint {
        let m = &self.matrix;
        LatticePoint::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
    }
}

/// The exceptional triangle `conv{(0,0),(1,2),(2,1)}`.
pub fn t0() -> Polygon {
    Polygon::from_vertices([(0, 0), (1, 2), (2, 1)]).unwrap()
}

const T0_VERTICES: [LatticePoint; 3] = [
    LatticePoint::new(0, 0),
    LatticePoint::new(1, 2),
    LatticePoint::new(2, 1),
];

/// The lattice-affine map carrying T0 onto `tri`, if one exists.
pub fn is_exceptional_triangle(tri: &Polygon) -> Option<UnimodularMap> {
    if tri.dim != 2 || tri.vertices.len() != 3 || tri.area2() != 3 {
        return None;
    }
    let v = &tri.vertices;
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let maps = PERMS.iter().filter_map(|perm| {
        let (v0, v1, v2) = (v[perm[0]], v[perm[1]], v[perm[2]]);
        let a = v1.sub(v0);
        let b = v2.sub(v0);
        // M (1,2) = a and M (2,1) = b
        let c1 = b.scale(2).sub(a);
        let c2 = a.scale(2).sub(b);
        if [c1.x, c1.y, c2.x, c2.y].iter().any(|c| c % 3 != 0) {
            return None;
        }
        UnimodularMap::new([[c1.x / 3, c2.x / 3], [c1.y / 3, c2.y / 3]], v0)
    });
    maps.min_by_key(|m| (m.matrix != UnimodularMap::IDENTITY.matrix, *m))
}

/// One indecomposable summand of a maximal decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Summand {
    /// Primitive segment from the origin along `(r, s)`, normalised with
    /// `r > 0` or `r == 0, s > 0`.
    Segment(LatticePoint),
    /// A copy of T0, stored in canonical position.
    ExceptionalTriangle(Polygon),
}

impl Summand {
    pub fn polygon(&self) -> Polygon {
        match self {
            Summand::Segment(d) => Polygon::segment(LatticePoint::ORIGIN, *d),
            Summand::ExceptionalTriangle(t) => t.clone(),
        }
    }

    pub fn is_triangle(&self) -> bool {
        matches!(self, Summand::ExceptionalTriangle(_))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Segment(d) => write!(f, "segment{d}"),
            Summand::ExceptionalTriangle(t) => write!(f, "T0-copy {t}"),
        }
    }
}

/// A subpolygon `Q = Q_1 + ... + Q_l` of `P` realising the full Minkowski length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Summands in lexicographic order.
    pub summands: Vec<Summand>,
    /// The sum, translated so its smallest vertex is at the origin.
    pub sum: Polygon,
    /// Every translation placing `sum` inside `P`, sorted.
    pub placements: Vec<LatticePoint>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn has_triangle(&self) -> bool {
        self.summands.iter().any(Summand::is_triangle)
    }

    /// `Some(direction)` when every summand is the same primitive segment.
    pub fn single_direction(&self) -> Option<LatticePoint> {
        let first = match self.summands.first()? {
            Summand::Segment(d) => *d,
            _ => return None,
        };
        self.summands
            .iter()
            .all(|s| *s == Summand::Segment(first))
            .then_some(first)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinkowskiLength {
    pub length: u32,
    pub decompositions: Vec<Decomposition>,
    /// Whether some maximal decomposition has an exceptional-triangle summand.
    pub has_t0_summand: bool,
}

impl MinkowskiLength {
    pub fn bounds(&self, q: u64) -> SsBounds {
        ss_lower_bound(self.length, q)
    }
}

fn normalise_direction(d: LatticePoint) -> LatticePoint {
    if d.x < 0 || (d.x == 0 && d.y < 0) {
        d.scale(-1)
    } else {
        d
    }
}

fn candidate_summands(p: &Polygon) -> Vec<Summand> {
    let (lo, hi) = p.bbox();
    let (wx, wy) = (hi.x - lo.x, hi.y - lo.y);
    let mut out = Vec::new();
    for r in 0..=wx {
        for s in -wy..=wy {
            if gcd(r, s) != 1 || (r == 0 && s < 0) {
                continue;
            }
            let d = LatticePoint::new(r, s);
            if Polygon::segment(LatticePoint::ORIGIN, d).fits_in(p) {
                out.push(Summand::Segment(d));
            }
        }
    }
    let w = wx.max(wy);
    let mut triangles = BTreeSet::new();
    for a in -w..=w {
        for b in -w..=w {
            for c in -w..=w {
                for d in -w..=w {
                    let Some(map) = UnimodularMap::new([[a, b], [c, d]], LatticePoint::ORIGIN) else {
                        continue;
                    };
                    let image: PointSet = T0_VERTICES.iter().map(|&v| map.apply(v)).collect();
                    let tri = convex_hull(&image).unwrap().canonical();
                    let (tlo, thi) = tri.bbox();
                    if thi.x - tlo.x > wx || thi.y - tlo.y > wy {
                        continue;
                    }
                    triangles.insert(tri);
                }
            }
        }
    }
    out.extend(
        triangles
            .into_iter()
            .filter(|t| t.fits_in(p))
            .map(Summand::ExceptionalTriangle),
    );
    out.sort();
    out
}

/// Full Minkowski length of `p` together with every maximal decomposition
/// into primitive segments and copies of T0.
///
/// Search completeness rests on the classification of maximal summands in the
/// plane (primitive segments and the exceptional triangle); the tests check it
/// against a brute-force decomposition oracle on small polygons.
pub fn minkowski_length(p: &Polygon) -> Result<MinkowskiLength, LatticeError> {
    match p.dim {
        0 => return Err(LatticeError::PointPolygon),
        1 => {
            let (a, b) = (p.vertices[0], p.vertices[1]);
            let len = lattice_length(a, b);
            let dir = normalise_direction(b.sub(a));
            let dir = LatticePoint::new(dir.x / len, dir.y / len);
            let sum = p.canonical();
            let placements = sum.placements_in(p);
            return Ok(MinkowskiLength {
                length: len as u32,
                decompositions: vec![Decomposition {
                    summands: vec![Summand::Segment(dir); len as usize],
                    sum,
                    placements,
                }],
                has_t0_summand: false,
            });
        }
        _ => {}
    }
    let (lo, hi) = p.bbox();
    let side = (hi.x - lo.x).max(hi.y - lo.y);
    if side > MAX_BOX_SIDE {
        return Err(LatticeError::TooLarge(side));
    }
    let candidates = candidate_summands(p);
    let polys: Vec<Polygon> = candidates.iter().map(Summand::polygon).collect();

    struct Search<'a> {
        outer: &'a Polygon,
        polys: &'a [Polygon],
        best: usize,
        found: Vec<Vec<usize>>,
        stack: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, current: Option<&Polygon>) {
            let depth = self.stack.len();
            if depth > 0 {
                if depth > self.best {
                    self.best = depth;
                    self.found.clear();
                }
                if depth == self.best {
                    self.found.push(self.stack.clone());
                }
            }
            for i in start..self.polys.len() {
                let next = match current {
                    None => self.polys[i].clone(),
                    Some(c) => minkowski_sum(c, &self.polys[i]),
                };
                if !next.fits_in(self.outer) {
                    continue;
                }
                self.stack.push(i);
                self.run(i, Some(&next));
                self.stack.pop();
            }
        }
    }

    let mut search = Search {
        outer: p,
        polys: &polys,
        best: 0,
        found: Vec::new(),
        stack: Vec::new(),
    };
    search.run(0, None);

    let mut decompositions: Vec<Decomposition> = search
        .found
        .iter()
        .map(|idx| {
            let summands: Vec<Summand> = idx.iter().map(|&i| candidates[i].clone()).collect();
            let sum = idx
                .iter()
                .skip(1)
                .fold(polys[idx[0]].clone(), |acc, &i| minkowski_sum(&acc, &polys[i]))
                .canonical();
            let placements = sum.placements_in(p);
            Decomposition { summands, sum, placements }
        })
        .collect();
    decompositions.sort_by(|a, b| a.summands.cmp(&b.summands));
    let has_t0_summand = decompositions.iter().any(Decomposition::has_triangle);
    Ok(MinkowskiLength {
        length: search.best as u32,
        decompositions,
        has_t0_summand,
    })
}

/// `floor(2 sqrt(q))`.
pub fn floor_two_sqrt(q: u64) -> u64 {
    let target = 4 * q;
    let mut r = (target as f64).sqrt() as u64;
    while r * r > target {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= target {
        r += 1;
    }
    r
}

/// Minimum-distance lower bounds from the full Minkowski length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SsBounds {
    /// `(q-1)^2 - L (q-1) - floor(2 sqrt q) + 1`, valid in general.
    pub with_t0: i64,
    /// `(q-1)^2 - L (q-1)`, valid when no maximal decomposition uses T0.
    pub without_t0: i64,
}

impl SsBounds {
    pub fn applicable(&self, has_t0_summand: bool) -> i64 {
        if has_t0_summand {
            self.with_t0
        } else {
            self.without_t0
        }
    }
}

pub fn ss_lower_bound(length: u32, q: u64) -> SsBounds {
    let n = q as i64 - 1;
    let without_t0 = n * n - length as i64 * n;
    SsBounds {
        with_t0: without_t0 - floor_two_sqrt(q) as i64 + 1,
        without_t0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn poly(v: &[(i64, i64)]) -> Polygon {
        Polygon::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn hull_examples() {
        let single = convex_hull(&points([(0, 0)])).unwrap();
        assert_eq!(single.dim(), 0);
        let fig2 = convex_hull(&figures::figure2().points).unwrap();
        assert_eq!(fig2, poly(&[(0, 0), (2, 0), (3, 1), (1, 4)]));
        assert_eq!(fig2.dim(), 2);
        let seg = convex_hull(&points([(0, 0), (1, 2), (2, 4)])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices(), &[LatticePoint::new(0, 0), LatticePoint::new(2, 4)]);
        assert_eq!(convex_hull(&PointSet::new()).unwrap_err(), LatticeError::Empty);
    }

    #[test]
    fn lattice_point_counts() {
        let fig1 = figures::figure1();
        let p1 = convex_hull(&fig1.points).unwrap();
        let all = lattice_points(&p1);
        assert_eq!(all.len(), 21);
        assert!(fig1.points.is_subset(&all));

        let fig2 = figures::figure2();
        let p2 = convex_hull(&fig2.points).unwrap();
        let all2 = lattice_points(&p2);
        assert_eq!(all2.len(), 10);
        let extra: Vec<_> = all2.iter().filter(|p| !fig2.points.contains(p)).copied().collect();
        assert_eq!(extra, points([(1, 2), (1, 3), (2, 1)]).to_vec());

        assert_eq!(lattice_points(&poly(&[(0, 0), (1, 0), (0, 1), (1, 1)])).len(), 4);
    }

    #[test]
    fn minkowski_sum_examples() {
        let i = Polygon::segment(LatticePoint::new(0, 0), LatticePoint::new(1, 0));
        let fig4 = minkowski_sum(&t0(), &i);
        assert_eq!(
            lattice_points(&fig4),
            points([(0, 0), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
        );
        let pt = convex_hull(&points([(3, -1)])).unwrap();
        assert_eq!(minkowski_sum(&fig4, &pt), fig4.translate(LatticePoint::new(3, -1)));

        let j = Polygon::segment(LatticePoint::new(0, 0), LatticePoint::new(0, 1));
        let mut rect = i.clone();
        for _ in 0..3 {
            rect = minkowski_sum(&rect, &i);
        }
        for _ in 0..2 {
            rect = minkowski_sum(&rect, &j);
        }
        assert_eq!(rect, poly(&[(0, 0), (4, 0), (4, 2), (0, 2)]));
    }

    #[test]
    fn exceptional_triangle_detection() {
        let map = is_exceptional_triangle(&t0()).unwrap();
        assert_eq!(map, UnimodularMap::IDENTITY);
        let relabeled = poly(&[(2, 1), (0, 0), (1, 2)]);
        assert_eq!(is_exceptional_triangle(&relabeled), Some(UnimodularMap::IDENTITY));
        assert_eq!(is_exceptional_triangle(&poly(&[(0, 0), (1, 0), (0, 1)])), None);
        // area 3/2 but boundary points on an edge
        assert_eq!(is_exceptional_triangle(&poly(&[(0, 0), (3, 0), (0, 1)])), None);
        let sheared = UnimodularMap::new([[1, 1], [0, 1]], LatticePoint::new(4, -2)).unwrap();
        let image = t0().apply(&sheared);
        let found = is_exceptional_triangle(&image).unwrap();
        assert_eq!(t0().apply(&found), image);
    }

    #[test]
    fn minkowski_length_figure1() {
        let p = convex_hull(&figures::figure1().points).unwrap();
        let ml = minkowski_length(&p).unwrap();
        assert_eq!(ml.length, 6);
        assert_eq!(ml.decompositions.len(), 1);
        let d = &ml.decompositions[0];
        assert_eq!(d.sum, poly(&[(0, 0), (4, 0), (4, 2), (0, 2)]));
        assert_eq!(d.placements, vec![LatticePoint::new(0, 2)]);
        let horizontal = d.summands.iter().filter(|s| **s == Summand::Segment(LatticePoint::new(1, 0))).count();
        let vertical = d.summands.iter().filter(|s| **s == Summand::Segment(LatticePoint::new(0, 1))).count();
        assert_eq!((horizontal, vertical), (4, 2));
        assert!(!ml.has_t0_summand);
    }

    #[test]
    fn minkowski_length_figure2() {
        let p = convex_hull(&figures::figure2().points).unwrap();
        let ml = minkowski_length(&p).unwrap();
        assert_eq!(ml.length, 4);
        assert_eq!(ml.decompositions.len(), 1);
        let d = &ml.decompositions[0];
        assert_eq!(d.single_direction(), Some(LatticePoint::new(0, 1)));
        assert_eq!(d.placements, vec![LatticePoint::new(1, 0)]);
        assert!(!ml.has_t0_summand);
    }

    #[test]
    fn minkowski_length_small_cases() {
        let seg = Polygon::segment(LatticePoint::new(1, 1), LatticePoint::new(7, 4));
        assert_eq!(minkowski_length(&seg).unwrap().length, 3);
        let ml = minkowski_length(&t0()).unwrap();
        assert_eq!(ml.length, 1);
        assert!(ml.has_t0_summand);

        let i = Polygon::segment(LatticePoint::new(0, 0), LatticePoint::new(1, 0));
        let fig4 = minkowski_sum(&t0(), &i);
        let ml = minkowski_length(&fig4).unwrap();
        assert_eq!(ml.length, 2);
        assert!(ml.has_t0_summand);
        assert!(ml.decompositions.iter().any(|d| d.summands
            == vec![Summand::Segment(LatticePoint::new(1, 0)), Summand::ExceptionalTriangle(t0())]));
        let vertical = ml
            .decompositions
            .iter()
            .find(|d| d.single_direction() == Some(LatticePoint::new(0, 1)))
            .unwrap();
        assert_eq!(vertical.len(), 2);
        assert!(vertical.placements.contains(&LatticePoint::new(1, 0)));

        assert_eq!(
            minkowski_length(&convex_hull(&points([(2, 2)])).unwrap()).unwrap_err(),
            LatticeError::PointPolygon
        );
        let big = poly(&[(0, 0), (13, 0), (0, 1)]);
        assert_eq!(minkowski_length(&big).unwrap_err(), LatticeError::TooLarge(13));
    }

    /// Most positive-dimensional summands in an exact decomposition of `q`,
    /// by trying every smaller polygon as a summand.
    fn naive_summands(q: &Polygon, shapes: &[Polygon], memo: &mut HashMap<Polygon, u32>) -> u32 {
        let q = q.canonical();
        if q.dim() == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&q) {
            return v;
        }
        let (_, qmax) = q.bbox();
        let mut best = 1;
        for a in shapes.iter().filter(|a| a.dim() > 0 && **a != q) {
            let (_, amax) = a.bbox();
            if amax.x > qmax.x || amax.y > qmax.y {
                continue;
            }
            let rest: PointSet = a.placements_in(&q).into_iter().collect();
            let Ok(b) = convex_hull(&rest) else { continue };
            if b.dim() == 0 || minkowski_sum(a, &b).canonical() != q {
                continue;
            }
            best = best.max(naive_summands(a, shapes, memo) + naive_summands(&b, shapes, memo));
        }
        memo.insert(q, best);
        best
    }

    #[test]
    fn minkowski_length_matches_naive_oracle() {
        // every lattice polygon in the 4x4 grid of points, from all subsets
        let grid: Vec<LatticePoint> = (0..4).flat_map(|x| (0..4).map(move |y| LatticePoint::new(x, y))).collect();
        let mut placed = BTreeSet::new();
        for mask in 1u32..1 << grid.len() {
            let subset: PointSet = (0..grid.len()).filter(|i| mask >> i & 1 == 1).map(|i| grid[i]).collect();
            placed.insert(convex_hull(&subset).unwrap());
        }
        let shapes: Vec<Polygon> =
            placed.iter().map(Polygon::canonical).collect::<BTreeSet<_>>().into_iter().collect();
        let mut memo = HashMap::new();
        let mut seen = BTreeSet::new();
        let mut checked = 0;
        for p in placed.iter().filter(|p| p.dim() > 0) {
            if !seen.insert(p.canonical()) {
                continue;
            }
            let oracle = placed
                .iter()
                .filter(|q| q.vertices().iter().all(|&v| p.contains(v)))
                .map(|q| naive_summands(q, &shapes, &mut memo))
                .max()
                .unwrap();
            assert_eq!(minkowski_length(p).unwrap().length, oracle, "{p}");
            checked += 1;
        }
        assert!(checked > 100, "{checked}");
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(ss_lower_bound(4, 9).without_t0, 32);
        assert_eq!(ss_lower_bound(2, 13).with_t0, 114);
        for q in [3u64, 4, 5, 7, 8, 9, 1000, 1 << 20] {
            let b = ss_lower_bound(3, q);
            assert_eq!(b.without_t0 - b.with_t0, floor_two_sqrt(q) as i64 - 1);
        }
        assert_eq!(floor_two_sqrt(13), 7);
        assert_eq!(floor_two_sqrt(16), 8);
        assert_eq!(floor_two_sqrt(17), 8);
    }

    fn arb_polygon(side: i64) -> impl Strategy<Value = Polygon> {
        proptest::collection::vec((0..=side, 0..=side), 1..7)
            .prop_map(|pts| convex_hull(&points(pts)).unwrap())
    }

    fn arb_unimodular() -> impl Strategy<Value = UnimodularMap> {
        (proptest::collection::vec(0usize..4, 1..4), -3i64..4, -3i64..4).prop_map(|(ops, tx, ty)| {
            let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]];
            let mut m = [[1i64, 0], [0, 1]];
            for o in ops {
                let g = gens[o];
                m = [
                    [g[0][0] * m[0][0] + g[0][1] * m[1][0], g[0][0] * m[0][1] + g[0][1] * m[1][1]],
                    [g[1][0] * m[0][0] + g[1][1] * m[1][0], g[1][0] * m[0][1] + g[1][1] * m[1][1]],
                ];
            }
            UnimodularMap::new(m, LatticePoint::new(tx, ty)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hull_idempotent_and_covering(pts in proptest::collection::vec((-5i64..6, -5i64..6), 1..12)) {
            let s = points(pts);
            let h = convex_hull(&s).unwrap();
            let again = convex_hull(&h.vertices().iter().copied().collect()).unwrap();
            prop_assert_eq!(&again, &h);
            prop_assert!(s.is_subset(&lattice_points(&h)));
        }

        #[test]
        fn picks_theorem(p in arb_polygon(6)) {
            if p.dim() == 2 {
                let total = lattice_points(&p).len() as i64;
                let boundary = p.boundary_points();
                let interior = total - boundary;
                prop_assert_eq!(p.area2(), 2 * interior + boundary - 2);
            }
        }

        #[test]
        fn sum_commutes_and_associates(a in arb_polygon(3), b in arb_polygon(3), c in arb_polygon(3)) {
            prop_assert_eq!(minkowski_sum(&a, &b), minkowski_sum(&b, &a));
            prop_assert_eq!(
                minkowski_sum(&minkowski_sum(&a, &b), &c),
                minkowski_sum(&a, &minkowski_sum(&b, &c))
            );
            prop_assert_eq!(minkowski_sum(&a, &b), minkowski_sum_by_hull(&a, &b));
        }

        #[test]
        fn length_superadditive(a in arb_polygon(2), b in arb_polygon(2)) {
            prop_assume!(a.dim() > 0 && b.dim() > 0);
            let la = minkowski_length(&a).unwrap().length;
            let lb = minkowski_length(&b).unwrap().length;
            let lab = minkowski_length(&minkowski_sum(&a, &b)).unwrap().length;
            prop_assert!(lab >= la + lb);
        }

        #[test]
        fn length_monotone(p in arb_polygon(4), keep in proptest::collection::vec(any::<bool>(), 25)) {
            prop_assume!(p.dim() > 0);
            let pts = lattice_points(&p).to_vec();
            let sub: PointSet = pts.iter().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
            prop_assume!(sub.len() >= 2);
            let q = convex_hull(&sub).unwrap();
            prop_assert!(minkowski_length(&q).unwrap().length <= minkowski_length(&p).unwrap().length);
        }

        #[test]
        fn length_unimodular_invariant(p in arb_polygon(3), map in arb_unimodular()) {
            prop_assume!(p.dim() > 0);
            let image = p.apply(&map);
            let (lo, hi) = image.bbox();
            prop_assume!((hi.x - lo.x).max(hi.y - lo.y) <= MAX_BOX_SIDE);
            let a = minkowski_length(&p).unwrap();
            let b = minkowski_length(&image).unwrap();
            prop_assert_eq!(a.length, b.length);
            prop_assert_eq!(a.has_t0_summand, b.has_t0_summand);
            let mut sa: Vec<Polygon> = a.decompositions.iter().map(|d| d.sum.apply(&map).canonical()).collect();
            let mut sb: Vec<Polygon> = b.decompositions.iter().map(|d| d.sum.clone()).collect();
            sa.sort();
            sb.sort();
            prop_assert_eq!(sa, sb);
        }
    }
}
