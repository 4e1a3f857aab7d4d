use std::collections::BTreeMap;
use std::sync::Arc;

use gtc_core::code::{build_code, build_code_2d, min_distance, EngineChoice};
use gtc_core::cubics::{is_singular, torus_count, CubicMember};
use gtc_core::lattice::{minkowski_length, points, Polygon};
use gtc_core::polyfact::{census, discriminant, factor_pattern, FactorPattern, UniFamily, UniPoly};
use gtc_core::{FieldSpec, Gf};

#[test]
fn canonical_presentations() {
    let f8 = FieldSpec::new(2, 3).unwrap();
    assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    assert_eq!(f8.alpha(), Gf(2));
    assert_eq!(f8.mult_order(f8.alpha()).unwrap(), 7);
    let f7 = FieldSpec::new(7, 1).unwrap();
    assert_eq!(f7.alpha(), Gf(3));
    assert_eq!(f7.dlog(Gf(2)).unwrap(), 2);
}

#[test]
fn one_dimensional_codes_are_reed_solomon() {
    for (p, h) in [(5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = Arc::new(FieldSpec::new(p, h).unwrap());
        let n = f.order() as usize;
        for k in 1..=n.min(4) {
            let exps: Vec<Vec<i64>> = (0..k as i64).map(|e| vec![e]).collect();
            let code = build_code(f.clone(), &exps, 1).unwrap();
            let d = min_distance(&code, EngineChoice::Auto).unwrap().d;
            assert_eq!(d, n - k + 1, "q={} k={k}", f.q());
        }
    }
}

#[test]
fn products_of_segments() {
    // x^a y^b with a, b in [0, 2]: a 3x3 grid is a product code, d = (n-2)^2
    let f = FieldSpec::new(7, 1).unwrap();
    let grid = points((0..3).flat_map(|a| (0..3).map(move |b| (a, b))));
    let code = build_code_2d(f, &grid).unwrap();
    assert_eq!(min_distance(&code, EngineChoice::Auto).unwrap().d, 16);
    let ml = minkowski_length(&Polygon::from_vertices([(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()).unwrap();
    assert_eq!(ml.length, 4);
    assert_eq!(ml.bounds(7).applicable(ml.has_t0_summand), 12);
}

#[test]
fn polynomial_facts() {
    let f = FieldSpec::new(5, 1).unwrap();
    // u^4 - 1 splits into four distinct linear factors over GF(5)
    let g = UniPoly::from_ints(&f, &[-1, 0, 0, 0, 1]);
    assert_eq!(factor_pattern(&f, &g).unwrap(), FactorPattern::split(4));
    // u^2 + 1 = (u - 2)(u - 3), discriminant -4 = 1
    let h = UniPoly::from_ints(&f, &[1, 0, 1]);
    assert_eq!(discriminant(&f, &h).unwrap(), f.from_int(-4));
    let family = UniFamily::new(&f, 4, &[1]).unwrap();
    let report = census(&family).unwrap();
    assert_eq!(report.members, 25);
    assert_eq!(report.pattern_counts.values().sum::<u64>(), 25);
    assert_eq!(report.split_distinct_nonzero, 1);
}

#[test]
fn cubic_examples() {
    let f = FieldSpec::new(7, 1).unwrap();
    let singular = CubicMember::from_ints(&f, 1, 1, -3, 1);
    assert!(is_singular(&f, &singular).unwrap().singular);
    let smooth = CubicMember::from_ints(&f, 1, 1, 0, 1);
    let count = torus_count(&f, &smooth);
    assert_eq!(count.smooth, Some(true));
    assert_eq!(count.n_proj.unwrap() % 3, 0);
}

#[test]
fn coefficient_maps() {
    let f = FieldSpec::new(5, 1).unwrap();
    let code = build_code_2d(f.clone(), &points([(0, 0), (1, 0), (0, 1)])).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(vec![1, 0], Gf::ONE);
    terms.insert(vec![0, 0], f.from_int(-1));
    // x - 1 vanishes on the column x = 1
    let word = code.evaluate(&code.coefficients_of(&terms).unwrap()).unwrap();
    assert_eq!(word.weight, 12);
}
