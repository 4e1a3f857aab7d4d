//! Generalized toric codes: construction, evaluation and exact parameters.
//!
//! A code is determined by a field `GF(q)` with primitive element `alpha`, an
//! exponent set `S` inside `[0, q-2]^m`, and the torus `(GF(q)^*)^m`. Row `e`
//! of the generator matrix holds `alpha^<f,e>` for every torus exponent `f`,
//! with columns in lexicographic order of `f`.

mod bz;
pub(crate) mod engine;
mod exhaustive;
mod predict;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldSpec, Gf};
use crate::lattice::PointSet;

pub use bz::min_distance_bz;
pub use exhaustive::min_distance_exhaustive;
pub use predict::{predict_d_theorem, HypothesisFailure, TheoremPrediction};

/// Largest block length accepted by [`build_code`].
pub const MAX_LENGTH: usize = 1 << 20;
/// Largest generator-matrix size (`k * n`) accepted by [`build_code`].
pub const MAX_ENTRIES: usize = 1 << 24;
/// Exhaustive engine limit on the projective codeword count.
pub const EXHAUSTIVE_LIMIT: f64 = 1e8;
/// Brouwer–Zimmermann limits.
pub const BZ_MAX_DIMENSION: usize = 20;
pub const BZ_MAX_LENGTH: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("exponent set is empty")]
    Empty,
    #[error("exponent {index} has {got} coordinates, expected {expected}")]
    Arity { index: usize, got: usize, expected: usize },
    #[error("exponent {point:?} lies outside [0, {max}]^m")]
    OutOfBox { point: Vec<i64>, max: i64 },
    #[error("duplicate exponent {0:?}")]
    Duplicate(Vec<i64>),
    #[error("code too large to materialise: n = {n}, k = {k}")]
    TooLarge { n: usize, k: usize },
    #[error("coefficient vector has length {got}, code has dimension {expected}")]
    CoefficientLength { got: usize, expected: usize },
    #[error("reduced monomial {0:?} is not in the exponent set")]
    OutsideSupport(Vec<i64>),
    #[error("factor direction has {got} coordinates, expected {expected}")]
    DirectionArity { got: usize, expected: usize },
    #[error("{engine} engine infeasible: {reason}")]
    Infeasible { engine: Engine, reason: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// A generalized toric code with its generator matrix.
#[derive(Clone)]
pub struct ToricCode {
    field: Arc<FieldSpec>,
    m: usize,
    n: usize,
    exponents: Vec<Vec<i64>>,
    rows: Vec<Vec<Gf>>,
}

impl fmt::Debug for ToricCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToricCode")
            .field("q", &self.field.q())
            .field("m", &self.m)
            .field("n", &self.n)
            .field("exponents", &self.exponents)
            .finish()
    }
}

/// Builds the code of `exponents` over `field` on the `m`-dimensional torus.
///
/// Exponents are sorted; row `i` of the generator matrix belongs to the
/// `i`-th smallest exponent. Nothing is reduced modulo `q - 1`: an exponent
/// outside the box is an error.
pub fn build_code(
    field: impl Into<Arc<FieldSpec>>,
    exponents: &[Vec<i64>],
    m: usize,
) -> Result<ToricCode, CodeError> {
    let field = field.into();
    if exponents.is_empty() {
        return Err(CodeError::Empty);
    }
    let max = field.order() as i64 - 1;
    for (index, e) in exponents.iter().enumerate() {
        if e.len() != m {
            return Err(CodeError::Arity { index, got: e.len(), expected: m });
        }
        if e.iter().any(|&c| c < 0 || c > max) {
            return Err(CodeError::OutOfBox { point: e.clone(), max });
        }
    }
    let mut sorted = exponents.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CodeError::Duplicate(w[0].clone()));
    }
    let order = field.order() as usize;
    let n = order
        .checked_pow(m as u32)
        .filter(|&n| n <= MAX_LENGTH && n.saturating_mul(sorted.len()) <= MAX_ENTRIES)
        .ok_or(CodeError::TooLarge { n: order.saturating_pow(m as u32), k: sorted.len() })?;

    let rows = sorted
        .iter()
        .map(|e| {
            let mut row = Vec::with_capacity(n);
            let mut f = vec![0usize; m];
            for _ in 0..n {
                let dot: usize = f.iter().zip(e).map(|(&fi, &ei)| fi * ei as usize).sum();
                row.push(field.exp((dot % order) as i64));
                for i in (0..m).rev() {
                    f[i] += 1;
                    if f[i] < order {
                        break;
                    }
                    f[i] = 0;
                }
            }
            row
        })
        .collect();
    Ok(ToricCode { field, m, n, exponents: sorted, rows })
}

/// Builds a planar code from a point set.
pub fn build_code_2d(field: impl Into<Arc<FieldSpec>>, points: &PointSet) -> Result<ToricCode, CodeError> {
    let exps: Vec<Vec<i64>> = points.iter().map(|p| vec![p.x, p.y]).collect();
    build_code(field, &exps, 2)
}

/// A codeword with its cached Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub values: Vec<Gf>,
    pub weight: usize,
}

impl Codeword {
    pub fn new(values: Vec<Gf>) -> Self {
        let weight = values.iter().filter(|v| !v.is_zero()).count();
        Codeword { values, weight }
    }
}

impl ToricCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generator rows, `|S|`.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    pub fn generator(&self) -> &[Vec<Gf>] {
        &self.rows
    }

    /// Index of the torus point with exponent vector `f`.
    pub fn column_index(&self, f: &[usize]) -> usize {
        let order = self.field.order() as usize;
        f.iter().fold(0, |acc, &fi| acc * order + fi)
    }

    /// Rank of the generator matrix, by row reduction.
    pub fn dimension(&self) -> usize {
        rank(&self.field, self.rows.clone())
    }

    /// The codeword `sum_e c_e x^e` evaluated on the torus.
    pub fn evaluate(&self, coeffs: &[Gf]) -> Result<Codeword, CodeError> {
        if coeffs.len() != self.k() {
            return Err(CodeError::CoefficientLength { got: coeffs.len(), expected: self.k() });
        }
        let f = &*self.field;
        let mut values = vec![Gf::ZERO; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (v, &x) in values.iter_mut().zip(row) {
                *v = f.add(*v, f.mul(c, x));
            }
        }
        Ok(Codeword::new(values))
    }

    /// Coefficients of an explicit polynomial `sum c_e x^e`, given as
    /// exponent/coefficient pairs already inside the box.
    pub fn coefficients_of(&self, terms: &BTreeMap<Vec<i64>, Gf>) -> Result<Vec<Gf>, CodeError> {
        let mut out = vec![Gf::ZERO; self.k()];
        for (e, &c) in terms {
            if c.is_zero() {
                continue;
            }
            match self.exponents.binary_search(e) {
                Ok(i) => out[i] = c,
                Err(_) => return Err(CodeError::OutsideSupport(e.clone())),
            }
        }
        Ok(out)
    }

    /// Expands `product`, reduces exponents modulo `q - 1` and returns the
    /// coefficient vector indexed like [`ToricCode::exponents`].
    pub fn reduce_exponents(&self, product: &MonomialProduct) -> Result<Vec<Gf>, CodeError> {
        let terms = product.expand(&self.field, self.m)?;
        self.coefficients_of(&terms)
    }

    /// Projective codeword count `(q^k - 1)/(q - 1)`, as a float.
    pub fn projective_count(&self) -> f64 {
        let q = self.field.q() as f64;
        (q.powi(self.k() as i32) - 1.0) / (q - 1.0)
    }
}

/// Rank of a matrix over `field` by Gaussian elimination.
pub fn rank(field: &FieldSpec, mut rows: Vec<Vec<Gf>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        let pivot: Vec<Gf> = rows[r].iter().map(|&x| field.mul(inv, x)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let factor = row[c];
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// A univariate polynomial in the substituted variable `u = x^direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniFactor {
    pub direction: Vec<i64>,
    /// Coefficients of `u^0, u^1, ...`.
    pub coeffs: Vec<Gf>,
}

impl UniFactor {
    /// The linear factor `u - root`.
    pub fn linear(field: &FieldSpec, direction: Vec<i64>, root: Gf) -> Self {
        UniFactor { direction, coeffs: vec![field.neg(root), Gf::ONE] }
    }
}

/// `x^prefix * prod factors`, a polynomial described by its factorisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialProduct {
    pub prefix: Vec<i64>,
    pub factors: Vec<UniFactor>,
}

impl MonomialProduct {
    /// Expanded terms with every exponent reduced into `[0, q-2]`.
    pub fn expand(&self, field: &FieldSpec, m: usize) -> Result<BTreeMap<Vec<i64>, Gf>, CodeError> {
        if self.prefix.len() != m {
            return Err(CodeError::DirectionArity { got: self.prefix.len(), expected: m });
        }
        let order = field.order() as i64;
        let mut terms: BTreeMap<Vec<i64>, Gf> = BTreeMap::new();
        terms.insert(self.prefix.iter().map(|x| x.rem_euclid(order)).collect(), Gf::ONE);
        for factor in &self.factors {
            if factor.direction.len() != m {
                return Err(CodeError::DirectionArity { got: factor.direction.len(), expected: m });
            }
            let mut next: BTreeMap<Vec<i64>, Gf> = BTreeMap::new();
            for (e, &c) in &terms {
                for (j, &a) in factor.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let key: Vec<i64> = e
                        .iter()
                        .zip(&factor.direction)
                        .map(|(&ei, &di)| (ei + j as i64 * di).rem_euclid(order))
                        .collect();
                    let entry = next.entry(key).or_insert(Gf::ZERO);
                    *entry = field.add(*entry, field.mul(c, a));
                }
            }
            next.retain(|_, c| !c.is_zero());
            terms = next;
        }
        Ok(terms)
    }
}

/// Minimum-distance engine identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Exhaustive,
    ExhaustiveOrbits,
    Bz,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Exhaustive => "exhaustive",
            Engine::ExhaustiveOrbits => "exhaustive-orbits",
            Engine::Bz => "bz",
        })
    }
}

/// Engine selection for [`min_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    #[default]
    Auto,
    Exhaustive { orbits: bool },
    Bz,
}

/// Result of a minimum-distance computation, with a verified witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    pub engine: Engine,
    /// Coefficients (indexed like the exponent list) of a minimum-weight word.
    pub witness: Vec<Gf>,
    /// Codewords whose weight was computed.
    pub visited: u64,
}

/// Below this projective count the plain exhaustive engine is cheapest.
const AUTO_PLAIN_LIMIT: f64 = 2e6;
/// Orbit representatives the auto engine is willing to walk.
const AUTO_ORBIT_LIMIT: f64 = 1e8;

/// Reason the exhaustive engine cannot run, if any.
pub fn exhaustive_infeasible(code: &ToricCode, orbits: bool) -> Option<String> {
    let count = code.projective_count();
    let reduction = if orbits { (code.field().order() as f64).powi(code.m() as i32) } else { 1.0 };
    let limit = EXHAUSTIVE_LIMIT * reduction;
    (count > limit).then(|| format!("{count:.3e} projective codewords exceed {limit:.3e}"))
}

/// Reason the Brouwer–Zimmermann engine cannot run, if any.
pub fn bz_infeasible(code: &ToricCode) -> Option<String> {
    if code.k() > BZ_MAX_DIMENSION {
        Some(format!("dimension {} exceeds {}", code.k(), BZ_MAX_DIMENSION))
    } else if code.n() > BZ_MAX_LENGTH {
        Some(format!("length {} exceeds {}", code.n(), BZ_MAX_LENGTH))
    } else {
        None
    }
}

/// The engine `Auto` resolves to for `code`.
pub fn auto_engine(code: &ToricCode) -> Result<EngineChoice, CodeError> {
    let count = code.projective_count();
    let torus = (code.field().order() as f64).powi(code.m() as i32);
    if count <= AUTO_PLAIN_LIMIT {
        Ok(EngineChoice::Exhaustive { orbits: false })
    } else if count / torus <= AUTO_ORBIT_LIMIT && exhaustive_infeasible(code, true).is_none() {
        Ok(EngineChoice::Exhaustive { orbits: true })
    } else if bz_infeasible(code).is_none() {
        Ok(EngineChoice::Bz)
    } else {
        Err(CodeError::Infeasible {
            engine: Engine::Bz,
            reason: bz_infeasible(code).unwrap_or_default(),
        })
    }
}

/// Exact minimum distance using the chosen engine.
pub fn min_distance(code: &ToricCode, choice: EngineChoice) -> Result<Distance, CodeError> {
    match choice {
        EngineChoice::Auto => min_distance(code, auto_engine(code)?),
        EngineChoice::Exhaustive { orbits } => min_distance_exhaustive(code, orbits),
        EngineChoice::Bz => min_distance_bz(code),
    }
}

/// Checks that `witness` is a nonzero message whose codeword has weight `d`.
fn verify_witness(code: &ToricCode, witness: &[Gf], d: usize) -> Result<(), CodeError> {
    if witness.iter().all(|c| c.is_zero()) {
        return Err(CodeError::Inconsistent("minimum-weight witness is the zero message".into()));
    }
    let word = code.evaluate(witness)?;
    if word.weight != d {
        return Err(CodeError::Inconsistent(format!(
            "witness codeword has weight {}, engine reported {d}",
            word.weight
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;
    use crate::lattice::points;

    fn gf(p: u64, h: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, h).unwrap())
    }

    #[test]
    fn reed_solomon_is_vandermonde() {
        let f = gf(7, 1);
        let code = build_code(f.clone(), &[vec![0], vec![1], vec![2]], 1).unwrap();
        for (i, row) in code.generator().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, f.exp((i * j) as i64));
            }
        }
        assert_eq!(code.n(), 6);
        // MDS: d = n - k + 1
        assert_eq!(min_distance(&code, EngineChoice::Auto).unwrap().d, 4);
    }

    #[test]
    fn constant_monomial_and_entries() {
        let code = build_code(gf(3, 1), &[vec![0, 0]], 2).unwrap();
        assert_eq!(code.generator(), &[vec![Gf::ONE; 4]]);
        let f = gf(7, 1);
        let code = build_code(f.clone(), &[vec![1, 4], vec![0, 0]], 2).unwrap();
        // rows sorted: (0,0) then (1,4)
        let col = code.column_index(&[2, 3]);
        assert_eq!(code.generator()[1][col], f.exp(2));
        assert_eq!(code.generator()[1][col], f.exp(14));
    }

    #[test]
    fn construction_errors() {
        let f = gf(5, 1);
        assert_eq!(build_code(f.clone(), &[], 2).unwrap_err(), CodeError::Empty);
        assert!(matches!(build_code(f.clone(), &[vec![4, 0]], 2), Err(CodeError::OutOfBox { .. })));
        assert!(matches!(build_code(f.clone(), &[vec![-1, 0]], 2), Err(CodeError::OutOfBox { .. })));
        assert!(matches!(build_code(f.clone(), &[vec![1]], 2), Err(CodeError::Arity { .. })));
        assert!(matches!(
            build_code(f.clone(), &[vec![1, 1], vec![1, 1]], 2),
            Err(CodeError::Duplicate(_))
        ));
        assert!(matches!(build_code(gf(251, 1), &[vec![0, 0, 0]], 3), Err(CodeError::TooLarge { .. })));
    }

    #[test]
    fn record_code_witness() {
        let f = gf(2, 3);
        let fig = figures::figure1();
        let code = build_code_2d(f.clone(), &fig.points).unwrap();
        assert_eq!((code.n(), code.k(), code.dimension()), (49, 12, 12));
        // roots 1, alpha, alpha^3 = alpha + 1 sum to zero
        let roots = [Gf::ONE, f.alpha(), f.exp(3)];
        assert!(f.add(f.add(roots[0], roots[1]), roots[2]).is_zero());
        let product = MonomialProduct {
            prefix: vec![4, 3],
            factors: roots.iter().map(|&r| UniFactor::linear(&f, vec![1, 0], r)).collect(),
        };
        let terms = product.expand(&f, 2).unwrap();
        let support: Vec<_> = terms.keys().cloned().collect();
        assert_eq!(support, vec![vec![0, 3], vec![4, 3], vec![5, 3]]);
        let word = code.evaluate(&code.reduce_exponents(&product).unwrap()).unwrap();
        assert_eq!(word.weight, 28);
    }

    #[test]
    fn reduction_examples() {
        let f = gf(7, 1);
        let code = build_code_2d(f.clone(), &points([(0, 0), (1, 0)])).unwrap();
        let a = f.from_int(3);
        let c = code
            .reduce_exponents(&MonomialProduct {
                prefix: vec![0, 0],
                factors: vec![UniFactor::linear(&f, vec![1, 0], a)],
            })
            .unwrap();
        assert_eq!(c, vec![f.neg(a), Gf::ONE]);

        let fig2 = figures::figure2();
        let code = build_code_2d(f.clone(), &fig2.points).unwrap();
        let beta = f.from_int(2);
        let product = MonomialProduct {
            prefix: vec![1, 1],
            factors: vec![UniFactor { direction: vec![0, 1], coeffs: vec![f.neg(beta), Gf::ZERO, Gf::ZERO, Gf::ONE] }],
        };
        let c = code.reduce_exponents(&product).unwrap();
        assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 2);
        // every cube root of beta kills one row of six torus points
        let word = code.evaluate(&c).unwrap();
        let cube_roots = f.nonzero().filter(|&y| f.pow(y, 3).unwrap() == beta).count();
        assert_eq!(word.weight, 36 - 6 * cube_roots);

        let outside = MonomialProduct { prefix: vec![3, 3], factors: vec![] };
        assert_eq!(code.reduce_exponents(&outside), Err(CodeError::OutsideSupport(vec![3, 3])));
    }

    /// Zero count of a fully split product `x^a y^b prod (x - r_i) prod (y - s_j)`
    /// on the torus by inclusion–exclusion: rows plus columns minus crossings.
    fn split_weight(q: u32, xs: usize, ys: usize) -> usize {
        let n = (q as usize - 1).pow(2);
        let zeros = xs * (q as usize - 1) + ys * (q as usize - 1) - xs * ys;
        n - zeros
    }

    #[test]
    fn split_products_match_inclusion_exclusion() {
        for (p, h) in [(5, 1), (7, 1), (2, 3), (3, 2), (11, 1)] {
            let f = gf(p, h);
            let q = f.q();
            let max = (q - 2) as i64;
            let all: Vec<Vec<i64>> = (0..=max).flat_map(|a| (0..=max).map(move |b| vec![a, b])).collect();
            let code = build_code(f.clone(), &all, 2).unwrap();
            let nz: Vec<Gf> = f.nonzero().collect();
            for xs in 0..=3.min(nz.len()) {
                for ys in 0..=2.min(nz.len()) {
                    if xs + ys > max as usize + 1 {
                        continue;
                    }
                    let mut factors: Vec<UniFactor> =
                        nz[..xs].iter().map(|&r| UniFactor::linear(&f, vec![1, 0], r)).collect();
                    factors.extend(nz[nz.len() - ys..].iter().map(|&r| UniFactor::linear(&f, vec![0, 1], r)));
                    let product = MonomialProduct { prefix: vec![1, 0], factors };
                    let Ok(c) = code.reduce_exponents(&product) else { continue };
                    assert_eq!(code.evaluate(&c).unwrap().weight, split_weight(q, xs, ys), "q={q} xs={xs} ys={ys}");
                }
            }
        }
    }

    #[test]
    fn rectangle_and_two_segment_witnesses() {
        // y^2 * prod_4 (x - a_i) * prod_2 (y - b_j) inside the Figure 1 box, q = 8
        let f = gf(2, 3);
        let code = build_code_2d(f.clone(), &crate::lattice::lattice_points(&figures::figure1().polygon)).unwrap();
        let nz: Vec<Gf> = f.nonzero().collect();
        let mut factors: Vec<UniFactor> = nz[..4].iter().map(|&r| UniFactor::linear(&f, vec![1, 0], r)).collect();
        factors.extend(nz[4..6].iter().map(|&r| UniFactor::linear(&f, vec![0, 1], r)));
        let c = code.reduce_exponents(&MonomialProduct { prefix: vec![0, 2], factors }).unwrap();
        assert_eq!(code.evaluate(&c).unwrap().weight, 49 - 6 * 7 + 8);

        // x (y - a)(y - b) on the Figure 4 polygon, q = 7
        let f = gf(7, 1);
        let code = build_code_2d(f.clone(), &crate::lattice::lattice_points(&figures::figure4().polygon)).unwrap();
        let factors = vec![
            UniFactor::linear(&f, vec![0, 1], f.from_int(2)),
            UniFactor::linear(&f, vec![0, 1], f.from_int(5)),
        ];
        let c = code.reduce_exponents(&MonomialProduct { prefix: vec![1, 0], factors }).unwrap();
        assert_eq!(code.evaluate(&c).unwrap().weight, 36 - 2 * 6);
    }

    #[test]
    fn auto_engine_choices() {
        let small = build_code_2d(gf(7, 1), &figures::figure2().points).unwrap();
        assert_eq!(auto_engine(&small).unwrap(), EngineChoice::Exhaustive { orbits: false });
        let mid = build_code_2d(gf(19, 1), &figures::figure2().points).unwrap();
        assert_eq!(auto_engine(&mid).unwrap(), EngineChoice::Exhaustive { orbits: true });
        let record = build_code_2d(gf(2, 3), &figures::figure1().points).unwrap();
        assert_eq!(auto_engine(&record).unwrap(), EngineChoice::Bz);
        assert!(exhaustive_infeasible(&record, false).is_some());
        assert!(exhaustive_infeasible(&record, true).is_some());
    }
}
