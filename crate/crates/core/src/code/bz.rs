//! Brouwer–Zimmermann minimum distance.
//!
//! The columns are covered greedily by disjoint information sets: reduce the
//! generator matrix using only still-unused columns (leftmost pivot first),
//! take the pivot columns as the next set, repeat. For a set of rank `r`
//! every message of weight `> w` has at least `w + 1 - (k - r)` nonzeros on
//! that set, so after enumerating all messages of weight `<= w_j` on each
//! reduced matrix `j`, every unseen codeword weighs at least
//! `sum_j max(0, w_j + 1 - (k - r_j))`. Enumeration stops when this lower
//! bound reaches the lightest word seen.

use rayon::prelude::*;

use super::engine::{gray_walk, log_step, with_adder, Adder, ScaledRows};
use super::{bz_infeasible, verify_witness, CodeError, Distance, Engine, ToricCode};
use crate::gf::{FieldSpec, Gf};

/// A generator matrix reduced on one information set.
struct InfoMatrix {
    rank: usize,
    rows: Vec<Vec<Gf>>,
    /// `rows[i] = sum_j transform[i][j] * G[j]`.
    transform: Vec<Vec<Gf>>,
}

fn reduce_on(field: &FieldSpec, g: &[Vec<Gf>], columns: &[usize]) -> (InfoMatrix, Vec<usize>) {
    let k = g.len();
    let mut rows = g.to_vec();
    let mut transform: Vec<Vec<Gf>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Gf::ONE } else { Gf::ZERO }).collect()).collect();
    let mut pivots = Vec::new();
    for &c in columns {
        let r = pivots.len();
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        transform.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut().chain(transform[r].iter_mut()) {
            *x = field.mul(inv, *x);
        }
        for i in (0..k).filter(|&i| i != r) {
            let factor = rows[i][c];
            if factor.is_zero() {
                continue;
            }
            let (pr, pt) = (rows[r].clone(), transform[r].clone());
            for (x, &y) in rows[i].iter_mut().zip(&pr) {
                *x = field.sub(*x, field.mul(factor, y));
            }
            for (x, &y) in transform[i].iter_mut().zip(&pt) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(c);
    }
    (InfoMatrix { rank: pivots.len(), rows, transform }, pivots)
}

fn information_sets(code: &ToricCode) -> Vec<InfoMatrix> {
    let mut unused: Vec<usize> = (0..code.n()).collect();
    let mut out = Vec::new();
    loop {
        let (matrix, pivots) = reduce_on(code.field(), code.generator(), &unused);
        if matrix.rank == 0 {
            break;
        }
        unused.retain(|c| !pivots.contains(c));
        out.push(matrix);
        if unused.is_empty() {
            break;
        }
    }
    out
}

fn lower_bound(k: usize, matrices: &[InfoMatrix], done: &[usize]) -> usize {
    matrices
        .iter()
        .zip(done)
        .map(|(m, &w)| (w + 1).saturating_sub(k - m.rank))
        .sum()
}

/// Lexicographic successor of a `w`-subset of `0..k`.
fn next_combination(c: &mut [usize], k: usize) -> bool {
    let w = c.len();
    for i in (0..w).rev() {
        if c[i] < k - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Found {
    weight: usize,
    index: usize,
    message: Vec<(usize, u32)>,
    visited: u64,
}

impl Found {
    fn merge(a: Found, b: Found) -> Found {
        let visited = a.visited + b.visited;
        let mut win = if (b.weight, b.index) < (a.weight, a.index) { b } else { a };
        win.visited = visited;
        win
    }
}

/// Enumerates every message of weight exactly `w` (first coefficient 1) on
/// one reduced matrix and returns the lightest codeword.
fn enumerate_weight<A: Adder>(field: &FieldSpec, rows: &ScaledRows, n: usize, k: usize, w: usize, adder: A) -> Found {
    let mut combos = Vec::new();
    let mut c: Vec<usize> = (0..w).collect();
    loop {
        combos.push(c.clone());
        if !next_combination(&mut c, k) {
            break;
        }
    }
    let step = log_step(field);
    let order = field.order();
    combos
        .par_iter()
        .enumerate()
        .map(|(index, combo)| {
            let mut word = vec![0u32; n];
            for &r in combo {
                rows.add_into(adder, &mut word, r, 0);
            }
            let mut found = Found {
                weight: word.iter().filter(|&&x| x != 0).count(),
                index,
                message: combo.iter().map(|&r| (r, 0)).collect(),
                visited: 1,
            };
            gray_walk(rows, adder, &mut word, &combo[1..], vec![order; w - 1], &step, |weight, digits| {
                found.visited += 1;
                if weight < found.weight {
                    found.weight = weight;
                    found.message = std::iter::once((combo[0], 0))
                        .chain(combo[1..].iter().copied().zip(digits.iter().copied()))
                        .collect();
                }
            });
            found
        })
        .reduce_with(Found::merge)
        .expect("at least one combination")
}

/// Exact minimum distance by the Brouwer–Zimmermann algorithm.
pub fn min_distance_bz(code: &ToricCode) -> Result<Distance, CodeError> {
    if let Some(reason) = bz_infeasible(code) {
        return Err(CodeError::Infeasible { engine: Engine::Bz, reason });
    }
    let field = code.field();
    let k = code.k();
    let n = code.n();
    let matrices = information_sets(code);
    let scaled: Vec<ScaledRows> = matrices.iter().map(|m| ScaledRows::new(field, &m.rows)).collect();
    let mut done = vec![0usize; matrices.len()];
    let mut upper = usize::MAX;
    let mut witness: Option<Vec<Gf>> = None;
    let mut visited = 0u64;

    'outer: for w in 1..=k {
        for (j, matrix) in matrices.iter().enumerate() {
            if lower_bound(k, &matrices, &done) >= upper {
                break 'outer;
            }
            // a partial-rank matrix only helps once it contributes
            if w < k - matrix.rank {
                continue;
            }
            for weight in done[j] + 1..=w {
                let found = with_adder!(field, |adder| enumerate_weight(field, &scaled[j], n, k, weight, adder));
                visited += found.visited;
                if found.weight > 0 && found.weight < upper {
                    upper = found.weight;
                    let mut coeffs = vec![Gf::ZERO; k];
                    for &(r, s) in &found.message {
                        let scalar = field.exp(s as i64);
                        for (x, &t) in coeffs.iter_mut().zip(&matrix.transform[r]) {
                            *x = field.add(*x, field.mul(scalar, t));
                        }
                    }
                    witness = Some(coeffs);
                }
            }
            done[j] = w;
            if w == k && matrix.rank == k {
                break 'outer;
            }
        }
    }
    let witness = witness.ok_or_else(|| CodeError::Inconsistent("no nonzero codeword enumerated".into()))?;
    verify_witness(code, &witness, upper)?;
    Ok(Distance { d: upper, engine: Engine::Bz, witness, visited })
}
