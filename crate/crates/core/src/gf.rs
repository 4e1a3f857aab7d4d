//! Small finite fields GF(p^h) backed by dense log/antilog tables.
//!
//! Elements are stored in their polynomial-basis representation: the base-p
//! digits of the integer are the coefficients of a polynomial in `u` reduced
//! modulo the field modulus, low degree first. Zero is the integer 0 and never
//! has a logarithm; every other element is `alpha^i` for a unique
//! `i` in `0..q-1`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_ORDER: u64 = 1 << 16;

/// Largest order used internally for extension fields (singular-point search).
pub(crate) const MAX_EXTENSION_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{h} is outside the supported range (max {max})")]
    OrderOutOfRange { p: u64, h: u32, max: u64 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("element {0} is not a primitive element")]
    NotPrimitive(u32),
    #[error("zero has no inverse")]
    InverseOfZero,
    #[error("zero has no discrete logarithm")]
    LogOfZero,
    #[error("element representation {0} is outside the field")]
    OutOfField(u64),
}

/// A field element in polynomial-basis representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with a fixed modulus and primitive element.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: Gf,
    /// `log[x]` for nonzero `x`; `log[0]` is a sentinel never read.
    log: Vec<u32>,
    /// `antilog[i] = alpha^(i mod (q-1))` for `i < 2(q-1)`, so sums of two
    /// logs index directly.
    antilog: Vec<u32>,
    /// `zech[i] = log(1 + alpha^i)`, or `NO_LOG` when the sum is zero.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.h == other.h
            && self.modulus == other.modulus
            && self.alpha == other.alpha
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial helpers over GF(p), coefficients low degree first.
mod prime_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] * inv_lead % p;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    /// Irreducibility of a monic polynomial of degree `h` via
    /// `gcd(f, u^(p^i) - u) = 1` for `i <= h/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let h = f.len() - 1;
        if h == 0 {
            return false;
        }
        if h == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut frob = x.clone();
        for _ in 1..=h / 2 {
            frob = pow_poly_mod(&frob, p, f, p);
            let mut diff = frob.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

fn digits(mut r: u64, p: u64, h: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(h as usize);
    for _ in 0..h {
        out.push(r % p);
        r /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    /// Builds GF(p^h) with the canonical modulus (lexicographically smallest
    /// monic irreducible, compared from the top coefficient down) and the
    /// smallest primitive element.
    pub fn new(p: u64, h: u32) -> Result<Self, GfError> {
        Self::new_bounded(p, h, MAX_ORDER)
    }

    pub(crate) fn new_bounded(p: u64, h: u32, max: u64) -> Result<Self, GfError> {
        let q = check_order(p, h, max)?;
        let modulus = canonical_modulus(p, h);
        let alpha = (1..q)
            .find(|&r| has_full_order(r, &modulus, p, h, q))
            .expect("multiplicative group of a finite field is cyclic");
        Ok(Self::build(p, h, q, modulus, alpha))
    }

    /// Builds GF(p^h) with an explicit modulus (low degree first, monic) and
    /// primitive element representation.
    pub fn with_presentation(p: u64, h: u32, modulus: &[u32], alpha: u32) -> Result<Self, GfError> {
        let q = check_order(p, h, MAX_ORDER)?;
        let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if m.len() != h as usize + 1
            || m[h as usize] != 1
            || m.iter().any(|&c| c >= p)
            || !prime_poly::is_irreducible(&m, p)
        {
            return Err(GfError::BadModulus(h));
        }
        if alpha as u64 >= q || !has_full_order(alpha as u64, &m, p, h, q) {
            return Err(GfError::NotPrimitive(alpha));
        }
        Ok(Self::build(p, h, q, m, alpha as u64))
    }

    fn build(p: u64, h: u32, q: u64, modulus: Vec<u64>, alpha: u64) -> Self {
        let n = (q - 1) as usize;
        let mut antilog = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let a = digits(alpha, p, h);
        let mut cur = vec![1u64];
        for i in 0..n {
            let mut d = cur.clone();
            d.resize(h as usize, 0);
            let r = undigits(&d, p) as u32;
            antilog[i] = r;
            log[r as usize] = i as u32;
            cur = prime_poly::mul_mod(&cur, &a, &modulus, p);
        }
        for i in n..2 * n {
            antilog[i] = antilog[i - n];
        }
        let mut field = FieldSpec {
            p: p as u32,
            h,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            alpha: Gf(alpha as u32),
            log,
            antilog,
            zech: Vec::new(),
        };
        let zech = (0..n)
            .map(|i| {
                let s = field.add_digits(Gf::ONE, Gf(field.antilog[i]));
                if s.is_zero() {
                    NO_LOG
                } else {
                    field.log[s.0 as usize]
                }
            })
            .collect();
        field.zech = zech;
        field
    }

    /// Extension GF(q^e) together with the images of every element of `self`
    /// under a field embedding, indexed by representation.
    pub(crate) fn extension(&self, e: u32) -> Result<(FieldSpec, Vec<Gf>), GfError> {
        let big = FieldSpec::new_bounded(self.p as u64, self.h * e, MAX_EXTENSION_ORDER)?;
        // a root of our modulus inside the big field
        let root = big
            .elements()
            .find(|&g| {
                let mut acc = Gf::ZERO;
                for &c in self.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, g), Gf(c));
                }
                acc.is_zero()
            })
            .expect("extension field contains a root of the base modulus");
        let image = (0..self.q)
            .map(|r| {
                let d = digits(r as u64, self.p as u64, self.h);
                let mut acc = Gf::ZERO;
                for &c in d.iter().rev() {
                    acc = big.add(big.mul(acc, root), Gf(c as u32));
                }
                acc
            })
            .collect();
        Ok((big, image))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Modulus coefficients, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> Gf {
        self.alpha
    }

    pub fn element(&self, repr: u64) -> Result<Gf, GfError> {
        if repr < self.q as u64 {
            Ok(Gf(repr as u32))
        } else {
            Err(GfError::OutOfField(repr))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.q).map(Gf)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Gf> + '_ {
        (1..self.q).map(Gf)
    }

    /// `alpha^i`, with `i` reduced modulo `q - 1`.
    #[inline]
    pub fn exp(&self, i: i64) -> Gf {
        let n = (self.q - 1) as i64;
        Gf(self.antilog[i.rem_euclid(n) as usize])
    }

    pub fn dlog(&self, x: Gf) -> Result<u32, GfError> {
        if x.is_zero() {
            Err(GfError::LogOfZero)
        } else {
            Ok(self.log[x.0 as usize])
        }
    }

    fn add_digits(&self, x: Gf, y: Gf) -> Gf {
        let p = self.p;
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.h {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        Gf(out)
    }

    #[inline]
    pub fn add(&self, x: Gf, y: Gf) -> Gf {
        if self.p == 2 {
            return Gf(x.0 ^ y.0);
        }
        if self.h == 1 {
            let s = x.0 + y.0;
            return Gf(if s >= self.p { s - self.p } else { s });
        }
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let n = self.q - 1;
        let lx = self.log[x.0 as usize];
        let ly = self.log[y.0 as usize];
        let d = if ly >= lx { ly - lx } else { ly + n - lx };
        match self.zech[d as usize] {
            NO_LOG => Gf::ZERO,
            z => Gf(self.antilog[(lx + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, x: Gf) -> Gf {
        if self.p == 2 || x.is_zero() {
            return x;
        }
        if self.h == 1 {
            return Gf(self.p - x.0);
        }
        // -1 = alpha^((q-1)/2) in odd characteristic
        let half = (self.q - 1) / 2;
        Gf(self.antilog[(self.log[x.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, x: Gf, y: Gf) -> Gf {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Gf, y: Gf) -> Gf {
        if x.is_zero() || y.is_zero() {
            return Gf::ZERO;
        }
        Gf(self.antilog[(self.log[x.0 as usize] + self.log[y.0 as usize]) as usize])
    }

    pub fn inv(&self, x: Gf) -> Result<Gf, GfError> {
        if x.is_zero() {
            return Err(GfError::InverseOfZero);
        }
        let n = self.q - 1;
        let l = self.log[x.0 as usize];
        Ok(Gf(self.antilog[((n - l) % n) as usize]))
    }

    pub fn div(&self, x: Gf, y: Gf) -> Result<Gf, GfError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^n`; negative exponents require `x != 0`, and `0^0 = 1`.
    pub fn pow(&self, x: Gf, n: i64) -> Result<Gf, GfError> {
        if x.is_zero() {
            return match n {
                0 => Ok(Gf::ONE),
                n if n > 0 => Ok(Gf::ZERO),
                _ => Err(GfError::InverseOfZero),
            };
        }
        let l = self.log[x.0 as usize] as i64;
        Ok(self.exp(l * n.rem_euclid((self.q - 1) as i64)))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Gf) -> Result<u32, GfError> {
        let l = self.dlog(x)?;
        let n = self.q - 1;
        Ok(n / gcd_u32(n, l))
    }

    /// `(p, h)` and the modulus, low degree first.
    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            h: self.h,
            q: self.q,
            modulus: self.modulus.clone(),
            alpha: self.alpha.0,
        }
    }
}

fn check_order(p: u64, h: u32, max: u64) -> Result<u64, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if h == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = (p as u128).checked_pow(h).filter(|&q| q <= max as u128);
    match q {
        Some(q) => Ok(q as u64),
        None => Err(GfError::OrderOutOfRange { p, h, max }),
    }
}

fn canonical_modulus(p: u64, h: u32) -> Vec<u64> {
    let count = p.pow(h);
    (0..count)
        .map(|idx| {
            // idx enumerates (c_{h-1}, ..., c_0) with c_{h-1} most significant
            let mut m = digits(idx, p, h);
            m.push(1);
            m
        })
        .find(|m| prime_poly::is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

fn has_full_order(r: u64, modulus: &[u64], p: u64, h: u32, q: u64) -> bool {
    if r == 0 {
        return false;
    }
    let x = {
        let mut d = digits(r, p, h);
        prime_poly::trim(&mut d);
        d
    };
    let n = q - 1;
    let one = vec![1u64];
    prime_poly::pow_poly_mod(&x, n, modulus, p) == one
        && prime_factors(n)
            .into_iter()
            .all(|f| prime_poly::pow_poly_mod(&x, n / f, modulus, p) != one)
}

pub(crate) fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Field description used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub h: u32,
    pub q: u32,
    /// Coefficients low degree first.
    pub modulus: Vec<u32>,
    pub alpha: u32,
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) modulus {:?} alpha {}", self.p, self.h, self.modulus, self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf7_generator_is_three() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.alpha(), Gf(3));
        // 2 has order 3 and 3 is the first candidate of order 6
        assert_eq!(f.mult_order(Gf(2)).unwrap(), 3);
        assert_eq!(f.mult_order(Gf(3)).unwrap(), 6);
    }

    #[test]
    fn gf8_modulus_and_alpha() {
        let f = FieldSpec::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.alpha(), Gf(0b010));
        assert_eq!(f.pow(f.alpha(), 7).unwrap(), Gf::ONE);
        for k in 1..7 {
            assert_ne!(f.pow(f.alpha(), k).unwrap(), Gf::ONE);
        }
        // u * u^2 = u^3 = u + 1
        assert_eq!(f.mul(Gf(0b010), Gf(0b100)), Gf(0b011));
    }

    #[test]
    fn gf9_and_gf16_canonical() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.alpha(), Gf(4)); // u + 1
        let f16 = FieldSpec::new(2, 4).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(f16.alpha(), Gf(2));
    }

    #[test]
    fn gf7_arithmetic() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.add(Gf(3), Gf(5)), Gf(1));
        assert_eq!(f.mul(Gf(3), Gf(5)), Gf(1));
        assert_eq!(f.inv(Gf(3)).unwrap(), Gf(5));
        assert_eq!(f.dlog(Gf(2)).unwrap(), 2);
        assert_eq!(f.dlog(Gf::ONE).unwrap(), 0);
        assert_eq!(f.dlog(f.alpha()).unwrap(), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(FieldSpec::new(9, 1).unwrap_err(), GfError::NotPrime(9));
        assert!(matches!(FieldSpec::new(2, 17), Err(GfError::OrderOutOfRange { .. })));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), GfError::ZeroDegree);
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(Gf::ZERO).unwrap_err(), GfError::InverseOfZero);
        assert_eq!(f.dlog(Gf::ZERO).unwrap_err(), GfError::LogOfZero);
        assert_eq!(f.pow(Gf::ZERO, -1).unwrap_err(), GfError::InverseOfZero);
        assert!(FieldSpec::with_presentation(7, 1, &[0, 1], 2).is_err());
        assert!(FieldSpec::with_presentation(2, 2, &[0, 0, 1], 2).is_err());
    }

    #[test]
    fn negative_powers() {
        let f = FieldSpec::new(3, 3).unwrap();
        for x in f.nonzero() {
            let inv = f.inv(x).unwrap();
            assert_eq!(f.pow(x, -1).unwrap(), inv);
            assert_eq!(f.mul(f.pow(x, -5).unwrap(), f.pow(x, 5).unwrap()), Gf::ONE);
        }
    }

    fn small_fields() -> Vec<FieldSpec> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]
            .iter()
            .map(|&(p, h)| FieldSpec::new(p, h).unwrap())
            .collect()
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for f in small_fields() {
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), Gf::ZERO);
                assert_eq!(f.mul(Gf::ONE, x), x);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Gf::ONE);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in f.elements() {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_everything() {
        for (p, h) in [(2, 9), (3, 5), (19, 2), (7, 3), (5, 3)] {
            let f = FieldSpec::new(p, h).unwrap();
            for x in f.elements() {
                assert_eq!(f.pow(x, f.q() as i64).unwrap(), x);
            }
        }
    }

    #[test]
    fn alpha_orbit_covers_group() {
        for f in small_fields().into_iter().chain([FieldSpec::new(3, 4).unwrap()]) {
            let mut seen = vec![false; f.q() as usize];
            let mut x = Gf::ONE;
            for _ in 0..f.order() {
                assert!(!seen[x.0 as usize], "repeat in alpha orbit");
                seen[x.0 as usize] = true;
                x = f.mul(x, f.alpha());
            }
            assert_eq!(x, Gf::ONE);
            assert!(!seen[0] && seen[1..].iter().all(|&s| s));
        }
    }

    #[test]
    fn custom_presentation() {
        let f = FieldSpec::with_presentation(7, 1, &[0, 1], 5).unwrap();
        assert_eq!(f.exp(1), Gf(5));
        let g = FieldSpec::with_presentation(2, 3, &[1, 0, 1, 1], 2).unwrap();
        assert_eq!(g.mul(Gf(0b100), Gf(0b010)), Gf(0b101));
    }

    #[test]
    fn extension_embedding_is_a_homomorphism() {
        for (p, h, e) in [(2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 3, 2)] {
            let f = FieldSpec::new(p, h).unwrap();
            let (big, img) = f.extension(e).unwrap();
            assert_eq!(big.q(), f.q().pow(e));
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(img[f.add(x, y).0 as usize], big.add(img[x.0 as usize], img[y.0 as usize]));
                    assert_eq!(img[f.mul(x, y).0 as usize], big.mul(img[x.0 as usize], img[y.0 as usize]));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn axioms_random_large_fields(
            which in 0usize..4,
            triples in proptest::collection::vec((0u32..65536, 0u32..65536, 0u32..65536), 200)
        ) {
            let (p, h) = [(65521u64, 1u32), (2, 16), (3, 10), (251, 2)][which];
            let f = FieldSpec::new(p, h).unwrap();
            for (a, b, c) in triples {
                let (x, y, z) = (Gf(a % f.q()), Gf(b % f.q()), Gf(c % f.q()));
                prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                prop_assert_eq!(f.add(x, y), f.add(y, x));
                prop_assert_eq!(f.sub(f.add(x, y), y), x);
            }
        }

        #[test]
        fn dlog_round_trip(i in 0i64..100_000) {
            let f = FieldSpec::new(3, 4).unwrap();
            let x = f.pow(f.alpha(), i).unwrap();
            prop_assert_eq!(f.dlog(x).unwrap() as i64, i % 80);
        }
    }
}
