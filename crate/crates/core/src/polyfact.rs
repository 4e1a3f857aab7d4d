//! Univariate polynomials over `GF(q)`: factorization patterns,
//! discriminants and censuses of linear families
//! `f(u) = u^l + t_1 u^{k_1} + ... + t_{m-1} u^{k_{m-1}} + t_m`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::{gcd_u32, FieldSpec, Gf};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("polynomial of degree {degree} needs degree at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("characteristic {p} does not exceed the degree {degree}")]
    SmallCharacteristic { p: u32, degree: usize },
    #[error("family exponents must satisfy l > k_1 > ... > k_(m-1) > 0, got l = {ell}, k = {ks:?}")]
    BadExponents { ell: u32, ks: Vec<u32> },
    #[error("family has {members:.3e} members, limit is {limit:.0e}")]
    TooLarge { members: f64, limit: f64 },
}

/// Polynomial with coefficients low degree first; the zero polynomial is
/// the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Gf>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Gf>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Gf::ONE] }
    }

    /// `u - root`.
    pub fn linear(field: &FieldSpec, root: Gf) -> Self {
        UniPoly::new(vec![field.neg(root), Gf::ONE])
    }

    /// `c * u^e`.
    pub fn monomial(c: Gf, e: usize) -> Self {
        let mut coeffs = vec![Gf::ZERO; e + 1];
        coeffs[e] = c;
        UniPoly::new(coeffs)
    }

    /// From small integer coefficients, low degree first.
    pub fn from_ints(field: &FieldSpec, ints: &[i64]) -> Self {
        UniPoly::new(ints.iter().map(|&i| field.from_int(i)).collect())
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn lead(&self) -> Gf {
        self.coeffs.last().copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Gf::ONE
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn eval(&self, field: &FieldSpec, x: Gf) -> Gf {
        self.coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &FieldSpec, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &FieldSpec, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, field: &FieldSpec, c: Gf) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&x| field.mul(c, x)).collect())
    }

    pub fn mul(&self, field: &FieldSpec, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, field: &FieldSpec, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let db = divisor.deg();
        let inv = field.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Gf::ZERO; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = field.mul(rem[i + db], inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(c, d));
            }
        }
        rem.truncate(db);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, field: &FieldSpec, divisor: &UniPoly) -> UniPoly {
        self.divrem(field, divisor).1
    }

    pub fn monic(&self, field: &FieldSpec) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(field, field.inv(self.lead()).expect("nonzero"))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, field: &FieldSpec, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &FieldSpec) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn pow_mod(&self, field: &FieldSpec, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut base = self.rem(field, modulus);
        let mut acc = UniPoly::one().rem(field, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus);
            }
            base = base.mul(field, &base).rem(field, modulus);
            e >>= 1;
        }
        acc
    }

    /// The `p`-th root of a polynomial in `u^p`.
    fn pth_root(&self, field: &FieldSpec) -> UniPoly {
        let p = field.p() as usize;
        let root_exp = (field.q() / field.p()) as i64;
        UniPoly::new(
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| if c.is_zero() { c } else { field.pow(c, root_exp).expect("nonzero") })
                .collect(),
        )
    }
}

/// Squarefree factors `(g, multiplicity)` of a nonconstant polynomial, each
/// `g` monic and squarefree.
pub fn squarefree_decomposition(field: &FieldSpec, f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    squarefree_into(field, &f.monic(field), 1, &mut out);
    out
}

fn squarefree_into(field: &FieldSpec, f: &UniPoly, scale: u32, out: &mut Vec<(UniPoly, u32)>) {
    if f.deg() == 0 {
        return;
    }
    let d = f.derivative(field);
    if d.is_zero() {
        return squarefree_into(field, &f.pth_root(field), scale * field.p(), out);
    }
    let mut c = f.gcd(field, &d);
    let mut w = f.divrem(field, &c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(field, &c);
        let z = w.divrem(field, &y).0;
        if z.deg() > 0 {
            out.push((z.monic(field), i * scale));
        }
        i += 1;
        c = c.divrem(field, &y).0;
        w = y;
    }
    if c.deg() > 0 {
        squarefree_into(field, &c.pth_root(field).monic(field), scale * field.p(), out);
    }
}

/// Degrees of the irreducible factors of a monic squarefree polynomial,
/// via `gcd(g, u^(q^i) - u)`.
pub fn distinct_degree_factors(field: &FieldSpec, g: &UniPoly) -> Vec<u32> {
    let mut g = g.monic(field);
    let u = UniPoly::monomial(Gf::ONE, 1);
    let mut h = u.clone();
    let mut degrees = Vec::new();
    let mut i = 1;
    while g.deg() >= 2 * i {
        h = h.pow_mod(field, field.q() as u64, &g);
        let d = h.sub(field, &u).gcd(field, &g);
        if d.deg() > 0 {
            degrees.extend(std::iter::repeat(i as u32).take(d.deg() / i));
            g = g.divrem(field, &d).0;
            h = h.rem(field, &g);
        }
        i += 1;
    }
    if g.deg() > 0 {
        degrees.push(g.deg() as u32);
    }
    degrees
}

/// Multiset of irreducible-factor degrees `1^{a_1} 2^{a_2} ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorPattern {
    /// `counts[i]` is `a_{i+1}`.
    counts: Vec<u32>,
}

impl FactorPattern {
    /// From `(degree, count)` pairs.
    pub fn from_counts(pairs: &[(u32, u32)]) -> Self {
        let top = pairs.iter().map(|&(d, _)| d).max().unwrap_or(0) as usize;
        let mut counts = vec![0; top];
        for &(d, c) in pairs {
            counts[d as usize - 1] += c;
        }
        FactorPattern::trimmed(counts)
    }

    fn trimmed(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FactorPattern { counts }
    }

    /// The split pattern `1^l`.
    pub fn split(l: u32) -> Self {
        FactorPattern::from_counts(&[(1, l)])
    }

    /// `a_i`.
    pub fn count(&self, degree: u32) -> u32 {
        self.counts.get(degree as usize - 1).copied().unwrap_or(0)
    }

    /// `sum i a_i`.
    pub fn degree(&self) -> u32 {
        self.counts.iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum()
    }

    pub fn add(&self, other: &FactorPattern) -> FactorPattern {
        let len = self.counts.len().max(other.counts.len());
        FactorPattern::trimmed(
            (0..len)
                .map(|i| self.counts.get(i).unwrap_or(&0) + other.counts.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    /// Every pattern of total degree `l`.
    pub fn all(l: u32) -> Vec<FactorPattern> {
        fn go(rest: u32, max_part: u32, counts: &mut Vec<u32>, out: &mut Vec<FactorPattern>) {
            if rest == 0 {
                out.push(FactorPattern::trimmed(counts.clone()));
                return;
            }
            for part in (1..=max_part.min(rest)).rev() {
                counts[part as usize - 1] += 1;
                go(rest - part, part, counts, out);
                counts[part as usize - 1] -= 1;
            }
        }
        let mut out = Vec::new();
        go(l, l, &mut vec![0; l as usize], &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, a)| format!("{}^{}", i + 1, a))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for FactorPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Proportion of permutations in `S_l` with cycle type `lambda`.
pub fn t_lambda(lambda: &FactorPattern) -> Ratio<u64> {
    let denom: u64 = lambda
        .counts
        .iter()
        .enumerate()
        .map(|(i, &a)| (1..=a as u64).product::<u64>() * (i as u64 + 1).pow(a))
        .product();
    Ratio::new(1, denom)
}

/// Factorization pattern of a nonconstant polynomial, with multiplicity.
pub fn factor_pattern(field: &FieldSpec, f: &UniPoly) -> Result<FactorPattern, PolyError> {
    let degree = f.degree().unwrap_or(0);
    if degree < 1 {
        return Err(PolyError::DegreeTooSmall { degree, min: 1 });
    }
    let mut pattern = FactorPattern::trimmed(Vec::new());
    for (g, mult) in squarefree_decomposition(field, f) {
        for d in distinct_degree_factors(field, &g) {
            pattern = pattern.add(&FactorPattern::from_counts(&[(d, mult)]));
        }
    }
    Ok(pattern)
}

/// Degree of the smallest extension of `GF(q)` over which `f` splits.
pub fn splitting_field_degree(field: &FieldSpec, f: &UniPoly) -> Result<u32, PolyError> {
    let pattern = factor_pattern(field, f)?;
    Ok((1..=pattern.counts.len() as u32)
        .filter(|&d| pattern.count(d) > 0)
        .fold(1, |acc, d| acc / gcd_u32(acc, d) * d))
}

/// Resultant `res(a, b)` by the Euclidean scheme.
pub fn resultant(field: &FieldSpec, a: &UniPoly, b: &UniPoly) -> Gf {
    if a.is_zero() || b.is_zero() {
        return Gf::ZERO;
    }
    let (da, db) = (a.deg(), b.deg());
    if db == 0 {
        return field.pow(b.lead(), da as i64).expect("nonzero");
    }
    let r = a.rem(field, b);
    if r.is_zero() {
        return Gf::ZERO;
    }
    let sign = if da % 2 == 1 && db % 2 == 1 { field.neg(Gf::ONE) } else { Gf::ONE };
    let scale = field.pow(b.lead(), (da - r.deg()) as i64).expect("nonzero");
    field.mul(field.mul(sign, scale), resultant(field, b, &r))
}

/// Discriminant `(-1)^{n(n-1)/2} res(f, f') / lc(f)`, defined for degree at
/// least 2 in characteristic larger than the degree.
pub fn discriminant(field: &FieldSpec, f: &UniPoly) -> Result<Gf, PolyError> {
    let degree = f.degree().unwrap_or(0);
    if degree < 2 {
        return Err(PolyError::DegreeTooSmall { degree, min: 2 });
    }
    if field.p() as usize <= degree {
        return Err(PolyError::SmallCharacteristic { p: field.p(), degree });
    }
    let res = resultant(field, f, &f.derivative(field));
    let sign = if (degree * (degree - 1) / 2) % 2 == 1 { field.neg(Gf::ONE) } else { Gf::ONE };
    Ok(field.mul(sign, field.div(res, f.lead()).expect("nonzero")))
}

/// Number of distinct roots of `f` in `GF(q)^*`, by direct scan.
pub fn nonzero_root_count(field: &FieldSpec, f: &UniPoly) -> usize {
    field.nonzero().filter(|&x| f.eval(field, x).is_zero()).count()
}

/// The family `u^l + t_1 u^{k_1} + ... + t_{m-1} u^{k_{m-1}} + t_m` over a field.
#[derive(Debug, Clone)]
pub struct UniFamily<'a> {
    field: &'a FieldSpec,
    ell: u32,
    ks: Vec<u32>,
}

/// Family descriptor for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub p: u32,
    pub h: u32,
    pub ell: u32,
    pub ks: Vec<u32>,
}

impl<'a> UniFamily<'a> {
    /// `ks` lists `k_1 > ... > k_{m-1} > 0`; the constant term is implicit.
    pub fn new(field: &'a FieldSpec, ell: u32, ks: &[u32]) -> Result<Self, PolyError> {
        let ok = ks.windows(2).all(|w| w[0] > w[1])
            && ks.first().is_none_or(|&k| k < ell)
            && ks.last().is_none_or(|&k| k > 0)
            && ell > 0;
        if !ok {
            return Err(PolyError::BadExponents { ell, ks: ks.to_vec() });
        }
        Ok(UniFamily { field, ell, ks: ks.to_vec() })
    }

    pub fn field(&self) -> &FieldSpec {
        self.field
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    /// Number of free coefficients.
    pub fn m(&self) -> usize {
        self.ks.len() + 1
    }

    /// `p > l`.
    pub fn large_characteristic(&self) -> bool {
        self.field.p() > self.ell
    }

    /// `gcd(l, k_1, ..., k_{m-1}) = 1`.
    pub fn coprime_exponents(&self) -> bool {
        self.ks.iter().fold(self.ell, |g, &k| gcd_u32(g, k)) == 1
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor { p: self.field.p(), h: self.field.h(), ell: self.ell, ks: self.ks.clone() }
    }

    pub fn member_count(&self) -> f64 {
        (self.field.q() as f64).powi(self.m() as i32)
    }

    /// The member with coefficients `t = (t_1, ..., t_m)`.
    pub fn member(&self, t: &[Gf]) -> UniPoly {
        let mut coeffs = vec![Gf::ZERO; self.ell as usize + 1];
        coeffs[self.ell as usize] = Gf::ONE;
        for (&k, &c) in self.ks.iter().zip(t) {
            coeffs[k as usize] = c;
        }
        coeffs[0] = t[self.ks.len()];
        UniPoly::new(coeffs)
    }

    /// Coefficients of `f` if it is a member.
    pub fn coefficients_of(&self, f: &UniPoly) -> Option<Vec<Gf>> {
        if f.degree() != Some(self.ell as usize) || !f.is_monic() {
            return None;
        }
        let allowed = |i: usize| i == 0 || i == self.ell as usize || self.ks.contains(&(i as u32));
        if f.coeffs.iter().enumerate().any(|(i, c)| !c.is_zero() && !allowed(i)) {
            return None;
        }
        let mut t: Vec<Gf> = self.ks.iter().map(|&k| f.coeff(k as usize)).collect();
        t.push(f.coeff(0));
        Some(t)
    }

    /// Member number `index` in the order `t_1` slowest.
    fn coefficients_at(&self, mut index: u64) -> Vec<Gf> {
        let q = self.field.q() as u64;
        let mut t = vec![Gf::ZERO; self.m()];
        for slot in t.iter_mut().rev() {
            *slot = Gf((index % q) as u32);
            index /= q;
        }
        t
    }

    /// `beta^{-l} f(beta u)`.
    pub fn act(&self, beta: Gf, f: &UniPoly) -> UniPoly {
        let field = self.field;
        let ell = self.ell as i64;
        UniPoly::new(
            f.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| field.mul(c, field.pow(beta, i as i64 - ell).expect("beta nonzero")))
                .collect(),
        )
    }

    /// Whether `f` splits into `l` distinct linear factors with nonzero roots.
    pub fn splits_with_distinct_nonzero_roots(&self, f: &UniPoly) -> bool {
        nonzero_root_count(self.field, f) == self.ell as usize
    }
}

/// Largest family enumerated by [`census`].
pub const CENSUS_LIMIT: f64 = 1e8;

/// Per-pattern tallies and the named counts over a whole family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub family: FamilyDescriptor,
    pub q: u32,
    pub members: u64,
    pub pattern_counts: BTreeMap<FactorPattern, u64>,
    /// Members with `l` distinct roots, all in `GF(q)^*`.
    pub split_distinct_nonzero: u64,
    /// Of those, the members with `t_1 = 0`.
    pub split_distinct_nonzero_t1_zero: u64,
    /// `|D_F(GF(q))|`; absent when `p <= l`.
    pub discriminant_zero: Option<u64>,
    /// Points of the discriminant locus with every `t_i` nonzero.
    pub discriminant_zero_all_t_nonzero: Option<u64>,
    /// `delta * pi_{m-1}` with `delta = 2l - 2`.
    pub discriminant_bound: u64,
    pub discriminant_bound_holds: Option<bool>,
    /// `|F_{1^l}| / q^m` against `T(1^l)`.
    pub split_ratio: f64,
    pub split_expected: f64,
    pub split_tolerance: f64,
    pub split_ratio_within_tolerance: bool,
    /// `p > l` and coprime exponents; otherwise the existence statement
    /// for large fields does not apply.
    pub corollary_applicable: bool,
}

#[derive(Default)]
struct Tally {
    patterns: BTreeMap<FactorPattern, u64>,
    split: u64,
    split_t1_zero: u64,
    disc_zero: u64,
    disc_zero_nonzero_t: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.patterns {
            *self.patterns.entry(k).or_default() += v;
        }
        self.split += other.split;
        self.split_t1_zero += other.split_t1_zero;
        self.disc_zero += other.disc_zero;
        self.disc_zero_nonzero_t += other.disc_zero_nonzero_t;
        self
    }
}

/// Enumerates every member of `family`.
pub fn census(family: &UniFamily) -> Result<CensusReport, PolyError> {
    let members = family.member_count();
    if members > CENSUS_LIMIT {
        return Err(PolyError::TooLarge { members, limit: CENSUS_LIMIT });
    }
    let field = family.field;
    let q = field.q() as u64;
    let per_t1 = q.pow(family.m() as u32 - 1);
    let with_disc = family.large_characteristic();

    let tally = (0..q)
        .into_par_iter()
        .map(|lead| {
            let mut tally = Tally::default();
            for index in lead * per_t1..(lead + 1) * per_t1 {
                let t = family.coefficients_at(index);
                let f = family.member(&t);
                let pattern = factor_pattern(field, &f).expect("degree l >= 1");
                *tally.patterns.entry(pattern).or_default() += 1;
                if family.splits_with_distinct_nonzero_roots(&f) {
                    tally.split += 1;
                    if t[0].is_zero() {
                        tally.split_t1_zero += 1;
                    }
                }
                if with_disc && family.ell >= 2 && discriminant(field, &f).expect("p > l").is_zero() {
                    tally.disc_zero += 1;
                    if t.iter().all(|c| !c.is_zero()) {
                        tally.disc_zero_nonzero_t += 1;
                    }
                }
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);

    let total = members as u64;
    let split_pattern = tally.patterns.get(&FactorPattern::split(family.ell)).copied().unwrap_or(0);
    let split_ratio = split_pattern as f64 / members;
    let t = t_lambda(&FactorPattern::split(family.ell));
    let split_expected = *t.numer() as f64 / *t.denom() as f64;
    let split_tolerance = 5.0 / (q as f64).sqrt();
    let pi = (0..family.m() as u32).map(|i| q.pow(i)).sum::<u64>();
    let discriminant_bound = (2 * family.ell as u64).saturating_sub(2) * pi;
    let with_disc = with_disc && family.ell >= 2;
    Ok(CensusReport {
        family: family.descriptor(),
        q: field.q(),
        members: total,
        pattern_counts: tally.patterns,
        split_distinct_nonzero: tally.split,
        split_distinct_nonzero_t1_zero: tally.split_t1_zero,
        discriminant_zero: with_disc.then_some(tally.disc_zero),
        discriminant_zero_all_t_nonzero: with_disc.then_some(tally.disc_zero_nonzero_t),
        discriminant_bound,
        discriminant_bound_holds: with_disc.then_some(tally.disc_zero <= discriminant_bound),
        split_ratio,
        split_expected,
        split_tolerance,
        split_ratio_within_tolerance: (split_ratio - split_expected).abs() <= split_tolerance,
        corollary_applicable: family.large_characteristic() && family.coprime_exponents(),
    })
}

/// First member (in enumeration order) with `l` distinct nonzero roots.
pub fn first_split_member(family: &UniFamily) -> Option<Vec<Gf>> {
    let q = family.field.q() as u64;
    (0..q.pow(family.m() as u32))
        .map(|i| family.coefficients_at(i))
        .find(|t| family.splits_with_distinct_nonzero_roots(&family.member(t)))
}

/// Result of the scaling-action check on the split members of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitVerdict {
    pub q: u32,
    /// Members with `l` distinct nonzero roots.
    pub count: u64,
    /// `count` is a multiple of `q - 1`.
    pub divisible: bool,
    /// Every image `beta^{-l} f(beta u)` is again a member.
    pub preserves_family: bool,
    /// Every image has the same factorization pattern.
    pub preserves_pattern: bool,
    /// Orbit size to number of split members lying in orbits of that size.
    pub orbit_sizes: BTreeMap<u64, u64>,
    /// Split members with trivial stabiliser; always a multiple of `q - 1`.
    pub free_members: u64,
}

/// Pairs `(member, beta)` checked for family and pattern preservation.
const ACTION_CHECK_BUDGET: u64 = 200_000;

/// Checks the scaling action `f -> beta^{-l} f(beta u)` on `family` and
/// whether the split count is divisible by `q - 1`.
pub fn orbit_divisibility_check(family: &UniFamily) -> Result<OrbitVerdict, PolyError> {
    let members = family.member_count();
    if members > CENSUS_LIMIT {
        return Err(PolyError::TooLarge { members, limit: CENSUS_LIMIT });
    }
    let field = family.field;
    let q = field.q() as u64;
    let total = members as u64;
    let stride = (total * (q - 1) / ACTION_CHECK_BUDGET).max(1);

    let mut preserves_family = true;
    let mut preserves_pattern = true;
    let mut orbit_sizes = BTreeMap::new();
    let mut count = 0;
    for index in 0..total {
        let t = family.coefficients_at(index);
        let f = family.member(&t);
        let split = family.splits_with_distinct_nonzero_roots(&f);
        if !split && index % stride != 0 {
            continue;
        }
        let pattern = factor_pattern(field, &f).expect("degree l >= 1");
        let mut stabiliser = 0u64;
        for beta in field.nonzero() {
            let image = family.act(beta, &f);
            if family.coefficients_of(&image).is_none() {
                preserves_family = false;
            }
            if factor_pattern(field, &image).ok().as_ref() != Some(&pattern) {
                preserves_pattern = false;
            }
            stabiliser += (image == f) as u64;
        }
        if split {
            count += 1;
            *orbit_sizes.entry((q - 1) / stabiliser).or_default() += 1;
        }
    }
    let free_members = orbit_sizes.get(&(q - 1)).copied().unwrap_or(0);
    Ok(OrbitVerdict {
        q: field.q(),
        count,
        divisible: count % (q - 1) == 0,
        preserves_family,
        preserves_pattern,
        orbit_sizes,
        free_members,
    })
}

/// For each prime `p` in `primes`, whether `GF(p)` has a member of the
/// family `u^l + sum t_i u^{k_i} + t_m` with `l` distinct nonzero roots.
pub fn split_existence_by_prime(ell: u32, ks: &[u32], primes: &[u64]) -> Result<Vec<(u64, bool)>, PolyError> {
    primes
        .par_iter()
        .map(|&p| {
            let field = FieldSpec::new(p, 1).expect("prime in range");
            let family = UniFamily::new(&field, ell, ks)?;
            Ok((p, first_split_member(&family).is_some()))
        })
        .collect()
}
