// Worked instances checked against brute-force oracles written here.

use std::collections::BTreeSet;

use situs::analysis::{arzela_ascoli_report, check_completeness_lift, find_limit, FunctionFamily, Implication, SequenceTower};
use situs::filter::GradedFilter;
use situs::model::{indiscernibility_grade, FiniteStructure, Formula};
use situs::num::{q, qr};
use situs::ramsey::ramsey_check;
use situs::search::DEFAULT_MAX_CANDIDATES;
use situs::simplicial::{all_tuples, numbered};
use situs::situs::embed_diag;
use situs::skorokhod::{
    mapping_space, realize_simplex, skorokhod_distance, skorokhod_homotopic_pair, skorokhod_neighbourhood, GridPath,
    HomSet, MappingFilter,
};
use situs::space::FiniteMetricSpace;
use situs::subdivision::{interval_situs, ArchimedeanBudget, Window};
use situs::{BitSet, Situs, TruncatedSSet};

const B: u64 = DEFAULT_MAX_CANDIDATES;

fn line(n: usize) -> FiniteMetricSpace {
    let dist = (0..n).map(|a| (0..n).map(|b| q((a as i64 - b as i64).abs())).collect()).collect();
    FiniteMetricSpace::new(numbered(n), dist, vec![q(n as i64 + 1), qr(3, 2), qr(1, 2)]).unwrap()
}

/// Every function `{0..a} → {0..b}` that is non-decreasing.
fn monotone_functions(a: usize, b: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let total = (b as u64).pow(a as u32);
    for code in 0..total {
        let mut c = code;
        let f: Vec<usize> = (0..a)
            .map(|_| {
                let v = (c % b as u64) as usize;
                c /= b as u64;
                v
            })
            .collect();
        if f.windows(2).all(|w| w[0] <= w[1]) {
            out.insert(f);
        }
    }
    out
}

#[test]
fn mapping_space_from_a_point_has_the_carrier_of_y() {
    let f = GradedFilter::new(3, vec![BitSet::from_iter(3, [0, 1])]).unwrap();
    let y = embed_diag(&numbered(3), &f, 3).unwrap();
    let space = mapping_space(&Situs::point(3), &y, 3, MappingFilter::Skorokhod, 100_000).unwrap();
    for n in 1..=3 {
        assert_eq!(space.situs.size(n), y.size(n), "degree {n}");
    }
    assert_eq!(space.validation, None);
}

#[test]
fn interval_maps_into_a_simplex_are_monotone_maps() {
    for (points, top) in [(3, 1), (4, 1), (3, 2)] {
        let x = interval_situs(&numbered(points), 3, Window::Plain).unwrap();
        let y = Situs::antidiscrete(TruncatedSSet::standard_simplex(top, 3));
        let space = mapping_space(&x, &y, 1, MappingFilter::Skorokhod, 100_000).unwrap();
        let vertex_maps: BTreeSet<Vec<usize>> = space.homs[0].iter().map(|h| h[0].clone()).collect();
        assert_eq!(vertex_maps.len(), space.homs[0].len());
        assert_eq!(vertex_maps, monotone_functions(points, top + 1));
    }
}

#[test]
fn evaluation_is_a_bijection() {
    let d = 2;
    let a = TruncatedSSet::standard_simplex(1, d);
    let x = Situs::antidiscrete(TruncatedSSet::standard_simplex(1, d));
    let y = Situs::antidiscrete(TruncatedSSet::standard_simplex(1, d));
    let space = mapping_space(&x, &y, d, MappingFilter::Skorokhod, 100_000).unwrap();
    let curried = HomSet::new(&a, space.situs.sset(), 100_000).unwrap();
    let uncurried = HomSet::new(&a.product(x.sset()).unwrap(), y.sset(), 100_000).unwrap();
    let images: BTreeSet<_> = curried.maps.iter().map(|phi| space.evaluate(&a, phi).unwrap()).collect();
    assert_eq!(images.len(), curried.len());
    assert_eq!(images, uncurried.maps.iter().cloned().collect());
}

#[test]
fn neighbourhood_against_the_definition() {
    let x = interval_situs(&numbered(4), 3, Window::Plain).unwrap();
    let y = TruncatedSSet::standard_simplex(1, 3);
    let hs = HomSet::new(x.sset(), &y, 100_000).unwrap();
    let xs = x.sset();
    let base = x.filter(1).minimal().clone();
    for grade in 0..x.filter(2).grade_count() {
        let delta = x.filter(2).grade(grade).clone();
        for eps_mask in 0u32..4 {
            let eps = BitSet::from_iter(2, (0..2).filter(|i| eps_mask & (1 << i) != 0));
            let got = skorokhod_neighbourhood(&hs, &x, 2, &delta, 1, &eps).unwrap();
            for (k, f) in hs.maps.iter().enumerate() {
                // every vertex in the base continues inside δ to a vertex f sends into ε
                let expect = base.iter().all(|v| {
                    delta.iter().any(|e| xs.vertex(2, e, 0) == v && eps.contains(f[0][xs.vertex(2, e, 1)]))
                });
                assert_eq!(got.contains(k), expect, "grade {grade}, ε {eps_mask:b}, map {k}");
            }
            if eps.is_full() {
                assert!(got.is_full() || delta.is_empty() || !base.iter().all(|v| delta.iter().any(|e| xs.vertex(2, e, 0) == v)));
            }
        }
    }
}

#[test]
fn distance_of_two_jumps() {
    let f = GridPath::parse(8, "1/4").unwrap();
    let g = GridPath::parse(8, "3/4").unwrap();
    assert_eq!(skorokhod_distance(&f, &g).unwrap(), qr(1, 2));
    assert_eq!(skorokhod_distance(&f, &f).unwrap(), q(0));
}

#[test]
fn realised_interval_is_a_grid() {
    for k in 1..=8 {
        let r = realize_simplex(1, k).unwrap();
        assert_eq!(r.paths.len(), k + 1);
        let mut coords: Vec<usize> = r.paths.iter().map(|p| p.jumps()[0]).collect();
        coords.sort_unstable();
        assert_eq!(coords, (0..=k).collect::<Vec<_>>());
        let at = |c: usize| r.paths.iter().position(|p| p.jumps()[0] == c).unwrap();
        for c in 0..k {
            assert_eq!(r.space.dist(at(c), at(c + 1)), qr(1, k as i64));
        }
    }
    assert_eq!(realize_simplex(0, 5).unwrap().paths.len(), 1);
}

#[test]
fn homotopy_across_components_fails() {
    let d = 2;
    let two = TruncatedSSet::coproduct(&[&TruncatedSSet::point(d), &TruncatedSSet::point(d)]).unwrap();
    let y = Situs::antidiscrete(two);
    let space = mapping_space(&Situs::point(d), &y, 2, MappingFilter::Skorokhod, 100_000).unwrap();
    assert_eq!(space.situs.size(1), 2);
    let budget = ArchimedeanBudget { max_points: d, window: 1 };
    assert!(skorokhod_homotopic_pair(&space, 0, 0, budget).unwrap());
    assert!(skorokhod_homotopic_pair(&space, 1, 1, budget).unwrap());
    assert!(!skorokhod_homotopic_pair(&space, 0, 1, budget).unwrap());
}

#[test]
fn order_indiscernibles_of_length_three_are_monotone_triples() {
    let m = FiniteStructure::linear_order(4);
    let lt = Formula::parse("(< x1 x2)", &m).unwrap();
    let grade = indiscernibility_grade(&m, &lt, 3).unwrap();
    for (i, t) in all_tuples(3, 4).iter().enumerate() {
        let up = t.windows(2).all(|w| w[0] <= w[1]);
        let down = t.windows(2).all(|w| w[0] >= w[1]);
        assert_eq!(grade.contains(i), up || down, "{t:?}");
    }
}

#[test]
fn indiscernibles_in_a_pure_set() {
    let m = FiniteStructure::pure_set(3);
    // equality is only evaluated on distinct entries, so it never holds
    let eq = Formula::parse("(= x1 x2)", &m).unwrap();
    assert!(indiscernibility_grade(&m, &eq, 3).unwrap().is_full());
    // a one-variable formula: the sequence avoids the parameter or is made of it
    let at = Formula::parse("(= x1 @1)", &m).unwrap();
    let grade = indiscernibility_grade(&m, &at, 3).unwrap();
    for (i, t) in all_tuples(3, 3).iter().enumerate() {
        let hits = t.iter().filter(|&&v| v == 0).count();
        assert_eq!(grade.contains(i), hits == 0 || hits == 3, "{t:?}");
    }
}

/// Brute force: some 3-subset of `size` vertices is monochromatic.
fn has_mono_triangle(size: usize, colour: &[usize]) -> bool {
    let mut pairs = Vec::new();
    for a in 0..size {
        for b in a + 1..size {
            pairs.push((a, b));
        }
    }
    let c = |a: usize, b: usize| colour[pairs.iter().position(|&p| p == (a, b)).unwrap()];
    (0..size).any(|a| (a + 1..size).any(|b| (b + 1..size).any(|e| c(a, b) == c(a, e) && c(a, b) == c(b, e))))
}

#[test]
fn ramsey_examples() {
    let r = ramsey_check(6, 2, 2, 3, 1 << 24).unwrap();
    assert!(r.holds);
    assert_eq!(r.colourings, 1 << 15);
    let r = ramsey_check(5, 2, 2, 3, 1 << 24).unwrap();
    assert!(!r.holds);
    assert!(!has_mono_triangle(5, r.counterexample.as_ref().unwrap()));
    // pigeonhole
    assert!(ramsey_check(5, 2, 1, 3, 1 << 24).unwrap().holds);
    assert!(!ramsey_check(4, 2, 1, 3, 1 << 24).unwrap().holds);
}

#[test]
fn finite_lines_are_complete() {
    let m = line(3);
    let tower = SequenceTower::new(4);
    let sequences = all_tuples(5, 3);
    let c = check_completeness_lift(&m, &sequences, &tower, 3, B).unwrap();
    assert!(c.holds);
    assert!(c.cauchy > 0);
    // eventually constant sequences converge to their eventual value
    for s in &sequences {
        if s[2..].iter().all(|&v| v == s[2]) {
            assert_eq!(find_limit(s, &m, &tower, 3, B).unwrap().all, [s[2]]);
        }
    }
}

#[test]
fn constant_family_satisfies_every_statement() {
    let x = line(2);
    let m = line(2);
    let tower = SequenceTower::new(3);
    let family = FunctionFamily::new(vec![vec![0, 1]; 4], 2, 2).unwrap();
    let r = arzela_ascoli_report(&x, &m, &family, &tower, 3, B).unwrap();
    assert!(r.x_compact && r.m_complete);
    assert!(r.equicontinuous && r.uniformly_equicontinuous);
    assert!(r.statement_i && r.statement_ii && r.statement_iii);
    assert!(r.uniform_convergence.is_some());
    assert!(r.implications.iter().all(|(_, s)| *s == Implication::Witnessed));
}
