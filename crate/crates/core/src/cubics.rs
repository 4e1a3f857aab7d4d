//! The cubic family `a x^2 y + b x y^2 + c x y z + d z^3` behind the
//! exceptional-triangle codes: torus point counts, smoothness, the
//! 3-divisibility of projective counts, and supersingular counts.
//!
//! For `abd != 0` the curve meets the coordinate lines only in `(1:0:0)`,
//! `(0:1:0)` and `(b:-a:0)`, so `N_proj = N_tor + 3`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code::{build_code_2d, min_distance_exhaustive, CodeError, ToricCode};
use crate::gf::{gcd_u32, is_prime, FieldSpec, GfError, Gf};
use crate::lattice::{floor_two_sqrt, lattice_points, points, t0};
use crate::polyfact::UniPoly;

pub const DIVBY3_LIMIT: u32 = 64;
pub const SUPERSINGULAR_LIMIT: u32 = 32;
/// Limit for scans over every `(a, b, c, d)`.
pub const FULL_SCAN_LIMIT: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CubicError {
    #[error("member {0} is degenerate (abd = 0)")]
    Degenerate(CubicMember),
    #[error("q = {q} outside the supported range: {reason}")]
    Unsupported { q: u32, reason: &'static str },
    #[error("q = {q} exceeds the scan limit {limit}")]
    TooLarge { q: u32, limit: u32 },
    #[error("field: {0}")]
    Field(#[from] GfError),
    #[error("code: {0}")]
    Code(#[from] CodeError),
    #[error("violation over GF({q}): {detail}")]
    Violation { q: u32, detail: String },
}

/// Coefficients of `a x^2 y + b x y^2 + c x y z + d z^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubicMember {
    pub a: Gf,
    pub b: Gf,
    pub c: Gf,
    pub d: Gf,
}

impl fmt::Display for CubicMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c,d) = ({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

impl CubicMember {
    pub fn new(a: Gf, b: Gf, c: Gf, d: Gf) -> Self {
        CubicMember { a, b, c, d }
    }

    pub fn from_ints(field: &FieldSpec, a: i64, b: i64, c: i64, d: i64) -> Self {
        CubicMember::new(field.from_int(a), field.from_int(b), field.from_int(c), field.from_int(d))
    }

    /// `abd != 0`.
    pub fn is_nondegenerate(&self) -> bool {
        !(self.a.is_zero() || self.b.is_zero() || self.d.is_zero())
    }

    /// `d = 1` with `abd != 0`.
    pub fn is_normalized(&self) -> bool {
        self.is_nondegenerate() && self.d == Gf::ONE
    }

    /// The same curve scaled to `d = 1`.
    pub fn normalized(&self, field: &FieldSpec) -> Result<CubicMember, CubicError> {
        if !self.is_nondegenerate() {
            return Err(CubicError::Degenerate(*self));
        }
        let inv = field.inv(self.d)?;
        Ok(CubicMember::new(field.mul(self.a, inv), field.mul(self.b, inv), field.mul(self.c, inv), Gf::ONE))
    }

    fn embed(&self, image: &[Gf]) -> CubicMember {
        let e = |x: Gf| image[x.0 as usize];
        CubicMember::new(e(self.a), e(self.b), e(self.c), e(self.d))
    }

    /// `F(x, y, z)`.
    pub fn eval(&self, field: &FieldSpec, x: Gf, y: Gf, z: Gf) -> Gf {
        let xy = field.mul(x, y);
        let t1 = field.mul(field.mul(self.a, x), xy);
        let t2 = field.mul(field.mul(self.b, y), xy);
        let t3 = field.mul(field.mul(self.c, z), xy);
        let t4 = field.mul(self.d, field.pow(z, 3).expect("nonnegative power"));
        field.add(field.add(t1, t2), field.add(t3, t4))
    }

    /// `(F_x, F_y, F_z)`.
    pub fn gradient(&self, field: &FieldSpec, x: Gf, y: Gf, z: Gf) -> [Gf; 3] {
        let two = field.from_int(2);
        let three = field.from_int(3);
        let xy = field.mul(x, y);
        let fx = field.add(
            field.add(field.mul(field.mul(two, self.a), xy), field.mul(self.b, field.mul(y, y))),
            field.mul(self.c, field.mul(y, z)),
        );
        let fy = field.add(
            field.add(field.mul(self.a, field.mul(x, x)), field.mul(field.mul(two, self.b), xy)),
            field.mul(self.c, field.mul(x, z)),
        );
        let fz = field.add(field.mul(self.c, xy), field.mul(field.mul(three, self.d), field.mul(z, z)));
        [fx, fy, fz]
    }
}

/// Torus and projective point counts of one member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CubicCount {
    /// Zeros in `(GF(q)^*)^2`.
    pub n_tor: u64,
    /// `N_tor + 3`, only for `abd != 0`.
    pub n_proj: Option<u64>,
    /// Only for `abd != 0`.
    pub smooth: Option<bool>,
}

/// Precomputed quadratic character, for fast counts in odd characteristic.
struct Squares {
    is_square: Vec<bool>,
}

impl Squares {
    fn new(field: &FieldSpec) -> Self {
        let mut is_square = vec![false; field.q() as usize];
        for x in field.elements() {
            is_square[field.mul(x, x).0 as usize] = true;
        }
        Squares { is_square }
    }

    /// Number of `y` in the field with `y^2 = v`.
    fn roots(&self, v: Gf) -> u64 {
        if v.is_zero() {
            1
        } else if self.is_square[v.0 as usize] {
            2
        } else {
            0
        }
    }
}

/// Zeros of the member on the torus of `field`, reading each row `x` as a
/// quadratic in `y`: `(b x) y^2 + (a x^2 + c x) y + d`.
fn count_torus(field: &FieldSpec, squares: Option<&Squares>, m: &CubicMember) -> u64 {
    let mut total = 0;
    for x in field.nonzero() {
        let a2 = field.mul(m.b, x);
        let a1 = field.add(field.mul(m.a, field.mul(x, x)), field.mul(m.c, x));
        let a0 = m.d;
        total += match squares {
            Some(sq) if !a2.is_zero() => {
                let disc = field.sub(field.mul(a1, a1), field.mul(field.from_int(4), field.mul(a2, a0)));
                // y = 0 is a root exactly when d = 0
                sq.roots(disc) - a0.is_zero() as u64
            }
            _ => field
                .nonzero()
                .filter(|&y| field.add(field.mul(field.add(field.mul(a2, y), a1), y), a0).is_zero())
                .count() as u64,
        };
    }
    total
}

/// Torus count with projective count and smoothness when `abd != 0`.
pub fn torus_count(field: &FieldSpec, member: &CubicMember) -> CubicCount {
    let squares = (field.p() != 2).then(|| Squares::new(field));
    let n_tor = count_torus(field, squares.as_ref(), member);
    let smooth = member
        .is_nondegenerate()
        .then(|| is_singular(field, member).map(|s| !s.singular).unwrap_or(false));
    CubicCount { n_tor, n_proj: member.is_nondegenerate().then_some(n_tor + 3), smooth }
}

/// A singular point, with coordinates in `GF(q^degree)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub extension_degree: u32,
    pub coords: [Gf; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Singularity {
    pub singular: bool,
    pub point: Option<SingularPoint>,
    /// `closed-form` or `exhaustive`.
    pub method: &'static str,
}

/// Singularity test: `c^3 = -27abd` with the point `(-c/3a : -c/3b : 1)` for
/// `p >= 5`, exhaustive search over `GF(q)`, `GF(q^2)`, `GF(q^3)` otherwise.
pub fn is_singular(field: &FieldSpec, member: &CubicMember) -> Result<Singularity, CubicError> {
    if !member.is_nondegenerate() {
        return Err(CubicError::Degenerate(*member));
    }
    if field.p() >= 5 {
        Ok(closed_form_singularity(field, member))
    } else {
        let search = SingularSearch::new(field)?;
        Ok(search.find(member))
    }
}

fn closed_form_singularity(field: &FieldSpec, m: &CubicMember) -> Singularity {
    let c3 = field.pow(m.c, 3).expect("nonnegative power");
    let rhs = field.neg(field.mul(field.from_int(27), field.mul(m.a, field.mul(m.b, m.d))));
    let singular = c3 == rhs;
    let point = singular.then(|| {
        let three = field.from_int(3);
        let x = field.neg(field.div(m.c, field.mul(three, m.a)).expect("a != 0"));
        let y = field.neg(field.div(m.c, field.mul(three, m.b)).expect("b != 0"));
        SingularPoint { extension_degree: 1, coords: [x, y, Gf::ONE] }
    });
    Singularity { singular, point, method: "closed-form" }
}

/// Exhaustive search for points where the form and its three partial
/// derivatives vanish. A reducible cubic has components over an extension
/// of degree at most 3, so its singular points appear over `GF(q^e)`,
/// `e <= 3`; for each `x` in the extension the common zeros in `y` are found
/// as a polynomial gcd, which also catches `y` outside the extension.
pub struct SingularSearch {
    levels: Vec<(u32, Arc<FieldSpec>, Vec<Gf>)>,
}

impl SingularSearch {
    pub fn new(field: &FieldSpec) -> Result<Self, CubicError> {
        let mut levels = vec![(1, Arc::new(field.clone()), field.elements().collect())];
        for e in 2..=3 {
            let (big, image) = field.extension(e)?;
            levels.push((e, Arc::new(big), image));
        }
        Ok(SingularSearch { levels })
    }

    pub fn find(&self, member: &CubicMember) -> Singularity {
        for (e, big, image) in &self.levels {
            if let Some(coords) = singular_point_in(big, &member.embed(image)) {
                return Singularity {
                    singular: true,
                    point: Some(SingularPoint { extension_degree: *e, coords }),
                    method: "exhaustive",
                };
            }
        }
        Singularity { singular: false, point: None, method: "exhaustive" }
    }
}

/// The four polynomials `F, F_x, F_y, F_z` in `y` at fixed `x` and `z`.
fn polys_in_y(k: &FieldSpec, m: &CubicMember, x: Gf, z: Gf) -> [UniPoly; 4] {
    let two = k.from_int(2);
    let three = k.from_int(3);
    let xx = k.mul(x, x);
    let z2 = k.mul(z, z);
    // F = (b x) y^2 + (a x^2 + c x z) y + d z^3
    let f = UniPoly::new(vec![
        k.mul(m.d, k.mul(z2, z)),
        k.add(k.mul(m.a, xx), k.mul(m.c, k.mul(x, z))),
        k.mul(m.b, x),
    ]);
    // F_x = b y^2 + (2 a x + c z) y
    let fx = UniPoly::new(vec![Gf::ZERO, k.add(k.mul(k.mul(two, m.a), x), k.mul(m.c, z)), m.b]);
    // F_y = (a x^2 + c x z) + 2 b x y
    let fy = UniPoly::new(vec![k.add(k.mul(m.a, xx), k.mul(m.c, k.mul(x, z))), k.mul(k.mul(two, m.b), x)]);
    // F_z = 3 d z^2 + c x y
    let fz = UniPoly::new(vec![k.mul(k.mul(three, m.d), z2), k.mul(m.c, x)]);
    [f, fx, fy, fz]
}

fn common_root(k: &FieldSpec, polys: &[UniPoly; 4]) -> Option<Option<Gf>> {
    let g = polys.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(k, p));
    match g.degree() {
        // all four vanish identically: every y works
        None => Some(Some(Gf::ZERO)),
        Some(0) => None,
        Some(_) => Some(k.elements().find(|&y| g.eval(k, y).is_zero())),
    }
}

fn singular_point_in(k: &FieldSpec, m: &CubicMember) -> Option<[Gf; 3]> {
    // chart z = 1
    for x in k.elements() {
        if let Some(y) = common_root(k, &polys_in_y(k, m, x, Gf::ONE)) {
            return Some([x, y.unwrap_or(Gf::ZERO), Gf::ONE]);
        }
    }
    // line z = 0: points (1 : y : 0) and (0 : 1 : 0)
    if let Some(y) = common_root(k, &polys_in_y(k, m, Gf::ONE, Gf::ZERO)) {
        return Some([Gf::ONE, y.unwrap_or(Gf::ZERO), Gf::ZERO]);
    }
    let at = [Gf::ZERO, Gf::ONE, Gf::ZERO];
    let vanish = m.eval(k, at[0], at[1], at[2]).is_zero()
        && m.gradient(k, at[0], at[1], at[2]).iter().all(|g| g.is_zero());
    vanish.then_some(at)
}

/// Every normalized member `d = 1`, `ab != 0`, in order of `(a, b, c)`.
fn normalized_members(field: &FieldSpec, c_values: &[Gf]) -> Vec<CubicMember> {
    let nz: Vec<Gf> = field.nonzero().collect();
    let mut out = Vec::with_capacity(nz.len() * nz.len() * c_values.len());
    for &a in &nz {
        for &b in &nz {
            for &c in c_values {
                out.push(CubicMember::new(a, b, c, Gf::ONE));
            }
        }
    }
    out
}

/// Outcome of [`divby3_scan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivBy3Report {
    pub q: u32,
    pub smooth_members: u64,
    pub singular_members: u64,
    /// `N_proj` value to number of smooth members attaining it.
    pub histogram: BTreeMap<u64, u64>,
    /// `|N_proj - (q+1)| <= floor(2 sqrt q)` for every smooth member.
    pub hasse_weil: bool,
    /// The smooth member with the most torus points and that count.
    pub max_torus: Option<(CubicMember, u64)>,
}

/// Context shared by the scans: squares table and, for `p < 5`, the
/// extension fields for the singular-point search.
struct ScanContext<'a> {
    field: &'a FieldSpec,
    squares: Option<Squares>,
    search: Option<SingularSearch>,
}

impl<'a> ScanContext<'a> {
    fn new(field: &'a FieldSpec) -> Result<Self, CubicError> {
        Ok(ScanContext {
            field,
            squares: (field.p() != 2).then(|| Squares::new(field)),
            search: if field.p() < 5 { Some(SingularSearch::new(field)?) } else { None },
        })
    }

    fn singular(&self, m: &CubicMember) -> bool {
        match &self.search {
            Some(s) => s.find(m).singular,
            None => closed_form_singularity(self.field, m).singular,
        }
    }

    fn n_tor(&self, m: &CubicMember) -> u64 {
        count_torus(self.field, self.squares.as_ref(), m)
    }
}

fn field_of_order(q: u32) -> Result<FieldSpec, CubicError> {
    let (p, h) = prime_power(q).ok_or(CubicError::Unsupported { q, reason: "not a prime power" })?;
    Ok(FieldSpec::new(p as u64, h)?)
}

/// `(p, h)` with `q = p^h`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut h = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        h += 1;
    }
    (r == 1 && is_prime(p as u64)).then_some((p, h))
}

/// Checks `3 | N_proj` for every smooth normalized member over `GF(q)`.
pub fn divby3_scan(q: u32) -> Result<DivBy3Report, CubicError> {
    if q > DIVBY3_LIMIT {
        return Err(CubicError::TooLarge { q, limit: DIVBY3_LIMIT });
    }
    let field = field_of_order(q)?;
    let ctx = ScanContext::new(&field)?;
    let all_c: Vec<Gf> = field.elements().collect();
    let members = normalized_members(&field, &all_c);
    let bound = floor_two_sqrt(q as u64) as i64;

    let results: Vec<(CubicMember, Option<u64>)> = members
        .par_iter()
        .map(|m| (*m, (!ctx.singular(m)).then(|| ctx.n_tor(m))))
        .collect();

    let mut report = DivBy3Report {
        q,
        smooth_members: 0,
        singular_members: 0,
        histogram: BTreeMap::new(),
        hasse_weil: true,
        max_torus: None,
    };
    for (m, n_tor) in results {
        let Some(n_tor) = n_tor else {
            report.singular_members += 1;
            continue;
        };
        let n_proj = n_tor + 3;
        if n_proj % 3 != 0 {
            return Err(CubicError::Violation { q, detail: format!("{m} is smooth with N_proj = {n_proj}") });
        }
        report.smooth_members += 1;
        *report.histogram.entry(n_proj).or_default() += 1;
        report.hasse_weil &= (n_proj as i64 - (q as i64 + 1)).abs() <= bound;
        if report.max_torus.is_none_or(|(_, best)| n_tor > best) {
            report.max_torus = Some((m, n_tor));
        }
    }
    Ok(report)
}

/// Outcome of [`supersingular_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupersingularReport {
    pub q: u32,
    /// Smooth members with `c = 0`, `d = 1`.
    pub members: u64,
    /// Every member has `N_proj = q + 1` over `GF(q)`.
    pub base_count_ok: bool,
    /// Every member has `N_proj = q^2 + 1 + 2q` over `GF(q^2)`, when checked.
    pub quadratic_count_ok: Option<bool>,
    /// Largest torus count among the members; `q - 2` is expected.
    pub max_torus: u64,
}

/// Point counts of the `c = 0` members for `q` odd, `q = 2 mod 3`.
pub fn supersingular_check(q: u32, check_quadratic: bool) -> Result<SupersingularReport, CubicError> {
    if q % 2 == 0 || q % 3 != 2 {
        return Err(CubicError::Unsupported { q, reason: "needs q odd and q = 2 mod 3" });
    }
    if q > SUPERSINGULAR_LIMIT {
        return Err(CubicError::TooLarge { q, limit: SUPERSINGULAR_LIMIT });
    }
    let field = field_of_order(q)?;
    let ctx = ScanContext::new(&field)?;
    let members: Vec<CubicMember> =
        normalized_members(&field, &[Gf::ZERO]).into_iter().filter(|m| !ctx.singular(m)).collect();
    let counts: Vec<u64> = members.par_iter().map(|m| ctx.n_tor(m)).collect();
    let q64 = q as u64;
    let base_count_ok = counts.iter().all(|&n| n + 3 == q64 + 1);
    let quadratic_count_ok = if check_quadratic {
        let (big, image) = field.extension(2)?;
        let squares = Squares::new(&big);
        Some(
            members
                .par_iter()
                .all(|m| count_torus(&big, Some(&squares), &m.embed(&image)) + 3 == q64 * q64 + 1 + 2 * q64),
        )
    } else {
        None
    };
    let report = SupersingularReport {
        q,
        members: members.len() as u64,
        base_count_ok,
        quadratic_count_ok,
        max_torus: counts.iter().copied().max().unwrap_or(0),
    };
    if !base_count_ok || quadratic_count_ok == Some(false) {
        return Err(CubicError::Violation { q, detail: format!("supersingular counts fail: {report:?}") });
    }
    Ok(report)
}

/// The trace bound behind `d(C_T0)` for `q` odd, `q = 2 mod 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct T0Prediction {
    /// Largest `t <= floor(2 sqrt q)` prime to `p` with `3 | q + 1 + t`.
    pub t: i64,
    /// `(q-1)^2 - (q + 1 + t - 3)`.
    pub d: i64,
    /// `q` is a proper prime power; the coprimality is applied to `p`.
    pub prime_power: bool,
}

pub fn predict_d_t0(q: u32) -> Result<T0Prediction, CubicError> {
    let (p, h) = prime_power(q).ok_or(CubicError::Unsupported { q, reason: "not a prime power" })?;
    if q % 2 == 0 || q % 3 != 2 {
        return Err(CubicError::Unsupported { q, reason: "needs q odd and q = 2 mod 3" });
    }
    let q = q as i64;
    let t = (0..=floor_two_sqrt(q as u64) as i64)
        .rev()
        .find(|&t| gcd_u32(t as u32, p) == 1 && (q + 1 + t) % 3 == 0)
        .expect("one of three consecutive integers works");
    Ok(T0Prediction { t, d: (q - 1) * (q - 1) - (q + 1 + t - 3), prime_power: h > 1 })
}

/// The codes of the triangle vertices `S` and of all of `T0`.
pub fn t0_codes(q: u32) -> Result<(ToricCode, ToricCode), CubicError> {
    let field = Arc::new(field_of_order(q)?);
    let s = build_code_2d(field.clone(), &points([(0, 0), (1, 2), (2, 1)]))?;
    let t = build_code_2d(field, &lattice_points(&t0()))?;
    Ok((s, t))
}

/// Outcome of [`theorem_t0s_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T0SReport {
    pub q: u32,
    pub d_s: usize,
    pub d_t0: usize,
    /// `(q-1)^2 - (q-1)`.
    pub s_bound: usize,
    /// Weight of the word from `x^2 y + 1`, which has one zero for each `x`.
    pub s_witness_weight: usize,
    pub predicted_t0: Option<i64>,
}

/// Computes `d(C_S)` and `d(C_T0)` and checks the strict comparison.
pub fn theorem_t0s_check(q: u32) -> Result<T0SReport, CubicError> {
    let (s, t) = t0_codes(q)?;
    let mut coeffs = vec![Gf::ZERO; 3];
    // sorted S: (0,0), (1,2), (2,1); x^2 y is (2,1)
    coeffs[0] = Gf::ONE;
    coeffs[2] = Gf::ONE;
    let s_witness_weight = s.evaluate(&coeffs)?.weight;
    let n = q as usize - 1;
    let report = T0SReport {
        q,
        d_s: min_distance_exhaustive(&s, true)?.d,
        d_t0: min_distance_exhaustive(&t, true)?.d,
        s_bound: n * n - n,
        s_witness_weight,
        predicted_t0: predict_d_t0(q).ok().map(|p| p.d),
    };
    if report.s_witness_weight != report.s_bound || report.d_s > report.s_bound {
        return Err(CubicError::Violation { q, detail: format!("S bound fails: {report:?}") });
    }
    if q % 2 == 1 && q % 3 == 2 && !(report.d_s == report.s_bound && report.d_s > report.d_t0) {
        return Err(CubicError::Violation { q, detail: format!("d(C_S) = (q-1)^2 - (q-1) > d(C_T0) fails: {report:?}") });
    }
    Ok(report)
}

/// `(q-1)^2 - max N_tor` over every nonzero `(a, b, c, d)`: the minimum
/// distance of `C_T0` computed from point counts alone.
pub fn t0_distance_from_counts(q: u32) -> Result<u64, CubicError> {
    if q > FULL_SCAN_LIMIT {
        return Err(CubicError::TooLarge { q, limit: FULL_SCAN_LIMIT });
    }
    let field = field_of_order(q)?;
    let squares = (field.p() != 2).then(|| Squares::new(&field));
    let elems: Vec<Gf> = field.elements().collect();
    let max = elems
        .par_iter()
        .map(|&a| {
            let mut best = 0;
            for &b in &elems {
                for &c in &elems {
                    for &d in &elems {
                        let m = CubicMember::new(a, b, c, d);
                        if [a, b, c, d].iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        best = best.max(count_torus(&field, squares.as_ref(), &m));
                    }
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    let n = q as u64 - 1;
    Ok(n * n - max)
}

/// Members whose closed-form and exhaustive singularity verdicts differ.
pub fn singular_criterion_disagreements(q: u32) -> Result<Vec<CubicMember>, CubicError> {
    let field = field_of_order(q)?;
    let search = SingularSearch::new(&field)?;
    let all_c: Vec<Gf> = field.elements().collect();
    Ok(normalized_members(&field, &all_c)
        .into_par_iter()
        .filter(|m| closed_form_singularity(&field, m).singular != search.find(m).singular)
        .collect())
}
