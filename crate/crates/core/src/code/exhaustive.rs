//! Exhaustive minimum distance, optionally one codeword per torus orbit.
//!
//! Plain mode fixes the first nonzero coefficient to 1 and walks the
//! remaining coefficients in a Gray code. Orbit mode splits messages by their
//! support `T`: scaling and the torus action `c_e -> c_e * prod t_i^{e_i}`
//! move the discrete logs of the coefficients by a subgroup `H_T` of
//! `(Z/(q-1))^T`, and permute codeword coordinates, so one representative
//! per coset of `H_T` suffices. The representatives walked are the
//! lexicographically smallest log vectors of each coset.

use rayon::prelude::*;

use super::engine::{coset_box, gray_walk, log_step, with_adder, Adder, ScaledRows};
use super::{exhaustive_infeasible, verify_witness, CodeError, Distance, Engine, ToricCode};
use crate::gf::{FieldSpec, Gf};

/// Best word seen by one job, ordered by weight and then job index so the
/// reported witness does not depend on scheduling.
#[derive(Clone)]
struct Best {
    weight: usize,
    job: usize,
    coeffs: Vec<Gf>,
    visited: u64,
}

impl Best {
    fn none(job: usize) -> Self {
        Best { weight: usize::MAX, job, coeffs: Vec::new(), visited: 0 }
    }

    fn merge(a: Best, b: Best) -> Best {
        let visited = a.visited + b.visited;
        let mut win = if (b.weight, b.job) < (a.weight, a.job) { b } else { a };
        win.visited = visited;
        win
    }
}

/// Exact minimum distance by enumeration.
pub fn min_distance_exhaustive(code: &ToricCode, use_torus_orbits: bool) -> Result<Distance, CodeError> {
    let engine = if use_torus_orbits { Engine::ExhaustiveOrbits } else { Engine::Exhaustive };
    if let Some(reason) = exhaustive_infeasible(code, use_torus_orbits) {
        return Err(CodeError::Infeasible { engine, reason });
    }
    let field = code.field();
    let rows = ScaledRows::new(field, code.generator());
    let best = with_adder!(field, |adder| {
        if use_torus_orbits {
            orbit_search(code, &rows, adder)
        } else {
            plain_search(code, &rows, adder)
        }
    });
    if best.weight == usize::MAX {
        return Err(CodeError::Inconsistent("enumeration visited no nonzero codeword".into()));
    }
    verify_witness(code, &best.coeffs, best.weight)?;
    Ok(Distance { d: best.weight, engine, witness: best.coeffs, visited: best.visited })
}

fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// Digit `0` is the zero coefficient, digit `t >= 1` is `alpha^(t-1)`.
fn digit_value(field: &FieldSpec, t: u32) -> Gf {
    if t == 0 {
        Gf::ZERO
    } else {
        field.exp(t as i64 - 1)
    }
}

fn plain_search<A: Adder>(code: &ToricCode, rows: &ScaledRows, adder: A) -> Best {
    let field = code.field();
    let q = field.q();
    let k = code.k();
    // Scalar logs for every single-digit move t -> t +- 1.
    let step_table: Vec<[u32; 2]> = (0..q)
        .map(|t| {
            let up = (t + 1 < q).then(|| field.sub(digit_value(field, t + 1), digit_value(field, t)));
            let down = (t > 0).then(|| field.sub(digit_value(field, t - 1), digit_value(field, t)));
            [
                up.map_or(0, |x| field.dlog(x).expect("distinct digits")),
                down.map_or(0, |x| field.dlog(x).expect("distinct digits")),
            ]
        })
        .collect();
    let step = |from: u32, to: u32| if to > from { step_table[from as usize][0] } else { step_table[from as usize][1] };

    // Job = (leading row, value of the last row when it is free).
    let jobs: Vec<(usize, Option<u32>)> = (0..k)
        .flat_map(|lead| {
            if lead + 1 < k {
                (0..q).map(|v| (lead, Some(v))).collect::<Vec<_>>()
            } else {
                vec![(lead, None)]
            }
        })
        .collect();

    jobs.par_iter()
        .enumerate()
        .map(|(job, &(lead, last))| {
            let mut word: Vec<u32> = rows.row(lead, 0).to_vec();
            let mut base = vec![Gf::ZERO; k];
            base[lead] = Gf::ONE;
            if let Some(v) = last {
                if v > 0 {
                    rows.add_into(adder, &mut word, k - 1, v - 1);
                }
                base[k - 1] = digit_value(field, v);
            }
            let free_end = if last.is_some() { k - 1 } else { k };
            let positions: Vec<usize> = (lead + 1..free_end).collect();
            let mut best = Best::none(job);
            let mut visited = 1u64;
            let w0 = weight(&word);
            if w0 > 0 {
                best.weight = w0;
                best.coeffs = base.clone();
            }
            gray_walk(rows, adder, &mut word, &positions, vec![q; positions.len()], step, |w, digits| {
                visited += 1;
                if w > 0 && w < best.weight {
                    best.weight = w;
                    let mut coeffs = base.clone();
                    for (&pos, &t) in positions.iter().zip(digits) {
                        coeffs[pos] = digit_value(field, t);
                    }
                    best.coeffs = coeffs;
                }
            });
            best.visited = visited;
            best
        })
        .reduce(|| Best::none(usize::MAX), Best::merge)
}

fn orbit_search<A: Adder>(code: &ToricCode, rows: &ScaledRows, adder: A) -> Best {
    let field = code.field();
    let order = field.order() as i64;
    let k = code.k();
    let exps = code.exponents();
    let step = log_step(field);

    (1u64..1 << k)
        .into_par_iter()
        .map(|mask| {
            let positions: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let mut gens = vec![vec![1i64; positions.len()]];
            for axis in 0..code.m() {
                gens.push(positions.iter().map(|&i| exps[i][axis]).collect());
            }
            let radix: Vec<u32> = coset_box(&gens, order).into_iter().map(|r| r as u32).collect();

            let mut word = vec![0u32; code.n()];
            for &i in &positions {
                rows.add_into(adder, &mut word, i, 0);
            }
            let mut best = Best::none(mask as usize);
            let mut visited = 1u64;
            let record = |best: &mut Best, w: usize, digits: Option<&[u32]>| {
                best.weight = w;
                let mut coeffs = vec![Gf::ZERO; k];
                for (j, &pos) in positions.iter().enumerate() {
                    coeffs[pos] = field.exp(digits.map_or(0, |d| d[j]) as i64);
                }
                best.coeffs = coeffs;
            };
            let w0 = weight(&word);
            if w0 > 0 {
                record(&mut best, w0, None);
            }
            gray_walk(rows, adder, &mut word, &positions, radix, &step, |w, digits| {
                visited += 1;
                if w > 0 && w < best.weight {
                    record(&mut best, w, Some(digits));
                }
            });
            best.visited = visited;
            best
        })
        .reduce(|| Best::none(usize::MAX), Best::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_code_2d;
    use crate::figures;
    use crate::lattice::points;
    use std::sync::Arc;

    /// Brute-force oracle: every message, no normalisation, no Gray code.
    fn brute_min_distance(code: &ToricCode) -> usize {
        let field = code.field();
        let q = field.q() as u64;
        let k = code.k();
        let elements: Vec<Gf> = field.elements().collect();
        (1..q.pow(k as u32))
            .map(|mut idx| {
                let coeffs: Vec<Gf> = (0..k)
                    .map(|_| {
                        let c = elements[(idx % q) as usize];
                        idx /= q;
                        c
                    })
                    .collect();
                code.evaluate(&coeffs).unwrap().weight
            })
            .min()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_small_codes() {
        let sets = [
            points([(0, 0)]),
            points([(0, 0), (1, 2), (2, 1)]),
            points([(0, 0), (1, 0), (0, 1), (1, 1)]),
            points([(0, 0), (2, 0), (1, 1)]),
            points([(0, 0), (1, 0), (2, 0)]),
        ];
        for (p, h) in [(2, 2), (3, 1), (5, 1), (2, 3), (7, 1)] {
            let f = Arc::new(FieldSpec::new(p, h).unwrap());
            for s in &sets {
                let max = s.iter().map(|pt| pt.x.max(pt.y)).max().unwrap();
                if max > f.q() as i64 - 2 {
                    continue;
                }
                let code = build_code_2d(f.clone(), s).unwrap();
                let oracle = brute_min_distance(&code);
                for orbits in [false, true] {
                    let got = min_distance_exhaustive(&code, orbits).unwrap();
                    assert_eq!(got.d, oracle, "q={} S={s:?} orbits={orbits}", f.q());
                    assert_eq!(code.evaluate(&got.witness).unwrap().weight, oracle);
                }
            }
        }
    }

    #[test]
    fn repetition_code() {
        for (p, h) in [(3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = FieldSpec::new(p, h).unwrap();
            let n = (f.order() as usize).pow(2);
            let code = build_code_2d(f, &points([(0, 0)])).unwrap();
            assert_eq!(min_distance_exhaustive(&code, false).unwrap().d, n);
            assert_eq!(min_distance_exhaustive(&code, true).unwrap().d, n);
        }
    }

    #[test]
    fn small_table_entries() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let code = build_code_2d(f7, &figures::figure2().points).unwrap();
        assert_eq!(min_distance_exhaustive(&code, false).unwrap().d, 18);
        let f5 = Arc::new(FieldSpec::new(5, 1).unwrap());
        let s = build_code_2d(f5.clone(), &figures::figure3().points).unwrap();
        let t0 = build_code_2d(f5, &crate::lattice::lattice_points(&crate::lattice::t0())).unwrap();
        assert_eq!(min_distance_exhaustive(&s, true).unwrap().d, 12);
        assert_eq!(min_distance_exhaustive(&t0, true).unwrap().d, 10);
    }

    #[test]
    fn orbit_mode_visits_fewer_words() {
        let f = FieldSpec::new(11, 1).unwrap();
        let code = build_code_2d(f, &figures::figure2().points).unwrap();
        let plain = min_distance_exhaustive(&code, false).unwrap();
        let orbit = min_distance_exhaustive(&code, true).unwrap();
        assert_eq!(plain.d, orbit.d);
        assert_eq!(plain.visited, (11u64.pow(7) - 1) / 10);
        assert!(orbit.visited * 50 < plain.visited);
    }
}
