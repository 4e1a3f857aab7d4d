//! Inner-loop machinery shared by the minimum-distance engines.

use crate::gf::{FieldSpec, Gf};

/// Field addition on raw representations, chosen once per run so the row
/// update loop is monomorphised.
pub(crate) trait Adder: Sync + Send + Copy {
    fn add(self, a: u32, b: u32) -> u32;
}

#[derive(Clone, Copy)]
pub(crate) struct XorAdd;

impl Adder for XorAdd {
    #[inline(always)]
    fn add(self, a: u32, b: u32) -> u32 {
        a ^ b
    }
}

#[derive(Clone, Copy)]
pub(crate) struct PrimeAdd(pub u32);

impl Adder for PrimeAdd {
    #[inline(always)]
    fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct FieldAdd<'a>(pub &'a FieldSpec);

impl Adder for FieldAdd<'_> {
    #[inline(always)]
    fn add(self, a: u32, b: u32) -> u32 {
        self.0.add(Gf(a), Gf(b)).0
    }
}

/// Calls `$body` with `$adder` bound to the fastest adder for `$field`.
macro_rules! with_adder {
    ($field:expr, |$adder:ident| $body:expr) => {{
        let field: &$crate::gf::FieldSpec = $field;
        if field.p() == 2 {
            let $adder = $crate::code::engine::XorAdd;
            $body
        } else if field.h() == 1 {
            let $adder = $crate::code::engine::PrimeAdd(field.p());
            $body
        } else {
            let $adder = $crate::code::engine::FieldAdd(field);
            $body
        }
    }};
}
pub(crate) use with_adder;

/// Every scalar multiple `alpha^s * row` of every generator row, flattened as
/// `[row][s][column]`.
pub(crate) struct ScaledRows {
    n: usize,
    order: usize,
    data: Vec<u32>,
}

impl ScaledRows {
    pub fn new(field: &FieldSpec, rows: &[Vec<Gf>]) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        let order = field.order() as usize;
        let mut data = Vec::with_capacity(rows.len() * order * n);
        for row in rows {
            for s in 0..order {
                let scalar = field.exp(s as i64);
                data.extend(row.iter().map(|&x| field.mul(scalar, x).0));
            }
        }
        ScaledRows { n, order, data }
    }

    #[inline(always)]
    pub fn row(&self, r: usize, s: u32) -> &[u32] {
        let start = (r * self.order + s as usize) * self.n;
        &self.data[start..start + self.n]
    }

    /// `word += alpha^s * row[r]`, returning the new Hamming weight.
    #[inline(always)]
    pub fn add_into<A: Adder>(&self, adder: A, word: &mut [u32], r: usize, s: u32) -> usize {
        let row = self.row(r, s);
        let mut weight = 0;
        for (w, &x) in word.iter_mut().zip(row) {
            *w = adder.add(*w, x);
            weight += (*w != 0) as usize;
        }
        weight
    }
}

/// Walks a Gray code over the coefficients of `positions`, updating `word`
/// with one scaled-row addition per step and calling `visit(weight, digits)`
/// on every new word. `step_log(from, to)` is the discrete log of the scalar
/// that moves a coefficient from digit `from` to digit `to`.
pub(crate) fn gray_walk<A: Adder>(
    rows: &ScaledRows,
    adder: A,
    word: &mut [u32],
    positions: &[usize],
    radix: Vec<u32>,
    step_log: impl Fn(u32, u32) -> u32,
    mut visit: impl FnMut(usize, &[u32]),
) {
    let mut gray = Gray::new(radix);
    while let Some(step) = gray.next_step() {
        let weight = rows.add_into(adder, word, positions[step.position], step_log(step.from, step.to));
        visit(weight, gray.digits());
    }
}

/// Step scalars for digits that are discrete logs: `alpha^d -> alpha^(d +- 1)`.
pub(crate) fn log_step(field: &FieldSpec) -> impl Fn(u32, u32) -> u32 {
    let order = field.order();
    let (up, down) = if order > 1 {
        let one = Gf::ONE;
        let a = field.alpha();
        (
            field.dlog(field.sub(a, one)).expect("alpha != 1"),
            field.dlog(field.sub(one, a)).expect("alpha != 1"),
        )
    } else {
        (0, 0)
    };
    move |from, to| {
        if to > from {
            (from + up) % order
        } else {
            (to + down) % order
        }
    }
}

/// Reflected mixed-radix Gray code: successive tuples differ in one digit by ±1.
pub(crate) struct Gray {
    radix: Vec<u32>,
    digits: Vec<u32>,
    up: Vec<bool>,
}

pub(crate) struct GrayStep {
    pub position: usize,
    pub from: u32,
    pub to: u32,
}

impl Gray {
    pub fn new(radix: Vec<u32>) -> Self {
        let len = radix.len();
        Gray {
            radix,
            digits: vec![0; len],
            up: vec![true; len],
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn next_step(&mut self) -> Option<GrayStep> {
        for j in 0..self.radix.len() {
            let d = self.digits[j];
            if self.up[j] {
                if d + 1 < self.radix[j] {
                    self.digits[j] = d + 1;
                    return Some(GrayStep { position: j, from: d, to: d + 1 });
                }
            } else if d > 0 {
                self.digits[j] = d - 1;
                return Some(GrayStep { position: j, from: d, to: d - 1 });
            }
            self.up[j] = !self.up[j];
        }
        None
    }
}

/// Smallest coset representatives of a subgroup of `(Z/n)^cols`.
///
/// Returns, per column, the range `0..r` that representative entries need to
/// cover: every coset of the subgroup generated by `gens` meets the box
/// `prod 0..r_c`. Rows are brought to an echelon form with gcd pivots, and
/// each pivot row's annihilated multiple is fed back in (Howell closure), so
/// the box is in bijection with the cosets.
pub(crate) fn coset_box(gens: &[Vec<i64>], n: i64) -> Vec<i64> {
    let cols = gens.first().map_or(0, Vec::len);
    let mut pool: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x.rem_euclid(n)).collect())
        .collect();
    let mut ranges = vec![n; cols];
    for c in 0..cols {
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::new();
        for row in pool.drain(..) {
            if row[c] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(pv) => {
                    let (g, s, t) = ext_gcd(pv[c], row[c]);
                    let (a, b) = (pv[c] / g, row[c] / g);
                    let combined: Vec<i64> =
                        (0..cols).map(|i| (s * pv[i] + t * row[i]).rem_euclid(n)).collect();
                    let other: Vec<i64> =
                        (0..cols).map(|i| (b * pv[i] - a * row[i]).rem_euclid(n)).collect();
                    debug_assert_eq!(other[c], 0);
                    rest.push(other);
                    pivot = Some(combined);
                }
            }
        }
        if let Some(mut pv) = pivot.filter(|pv| pv[c] != 0) {
            let g = ext_gcd(pv[c], n).0;
            let unit = (1..n)
                .find(|&u| ext_gcd(u, n).0 == 1 && (u * pv[c]).rem_euclid(n) == g)
                .expect("gcd is reachable by a unit multiple");
            for x in pv.iter_mut() {
                *x = (*x * unit).rem_euclid(n);
            }
            ranges[c] = g;
            let annihilated: Vec<i64> = pv.iter().map(|x| (x * (n / g)).rem_euclid(n)).collect();
            if annihilated.iter().any(|&x| x != 0) {
                rest.push(annihilated);
            }
        }
        pool = rest;
    }
    ranges
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}
