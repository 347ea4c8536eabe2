//! Subdivision neighbourhood structures, the interval object, semidirect
//! products and Archimedean simplices.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::filter::{product_filter, GradedFilter, Semantics};
use crate::set::BitSet;
use crate::simplicial::{monotone_tuples, MonotoneMap, TruncatedSSet};
use crate::situs::Situs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Window {
    /// `t_n ≤ t_1 + m`
    #[default]
    Plain,
    /// `t_n ≤ m`
    Lower,
    /// `t_1 > N − m`
    Upper,
}

impl Window {
    fn admits(self, t: &[usize], top: usize, m: usize) -> bool {
        let (first, last) = (t[0], t[t.len() - 1]);
        match self {
            Window::Plain => last <= first + m,
            Window::Lower => last <= m,
            Window::Upper => first + m > top,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub situs: Situs,
    /// Extensions beyond the truncation were needed and not available, so
    /// every grade was computed over extensions within it.
    pub truncated: bool,
}

/// The subdivision structure on `x`.
///
/// Seeds are vertices. For a vertex `v` and window size `m`, the required
/// set in degree `n` collects the faces `ε'[t_1..t_n]` of every simplex `ε'`
/// having `v` as a vertex, over index tuples admitted by the window. The
/// grade for `m` intersects these over all vertices; grades run from
/// `m = D − 1` down to `1`.
pub fn subdivision_filter(x: &TruncatedSSet, window: Window) -> Subdivision {
    let d = x.truncation();
    let top_m = d.saturating_sub(1).max(1);
    let nv = x.size(1);
    let mut filters = Vec::with_capacity(d);
    for n in 1..=d {
        // req[m - 1][v]
        let mut req = vec![vec![BitSet::new(x.size(n)); nv]; top_m];
        for p in 1..=d {
            let tuples = monotone_tuples(n, p);
            for e in 0..x.size(p) {
                let verts: BTreeSet<usize> = (0..p).map(|i| x.vertex(p, e, i)).collect();
                for t in &tuples {
                    let face = x.act(&MonotoneMap::new(p, t.clone()).expect("monotone"), e);
                    for m in 1..=top_m {
                        if window.admits(t, p - 1, m) {
                            for &v in &verts {
                                req[m - 1][v].insert(face);
                            }
                        }
                    }
                }
            }
        }
        let grades: Vec<BitSet> = (1..=top_m)
            .rev()
            .map(|m| {
                let mut g = BitSet::full(x.size(n));
                for w in &req[m - 1] {
                    g.intersect_with(w);
                }
                g
            })
            .collect();
        filters.push(GradedFilter::new(x.size(n), grades).expect("nonempty chain"));
    }
    let truncated = x.size(d) > 0;
    let situs = Situs::from_parts(x.clone(), filters, Semantics::Graded).expect("shapes agree");
    Subdivision { situs, truncated }
}

/// `n ↦` monotone maps `n → L`, with the subdivision structure of the window.
pub fn interval_situs(points: &[alloc::string::String], truncation: usize, window: Window) -> Result<Situs> {
    if points.len() < 2 {
        return Err(crate::error::domain("the interval needs at least two points"));
    }
    Ok(subdivision_filter(&TruncatedSSet::linear_order(points, truncation), window).situs)
}

/// The union of the lower and upper structures: grade `i` is the union of
/// both grade `i`s.
pub fn interval_situs_pm(points: &[alloc::string::String], truncation: usize) -> Result<Situs> {
    let lo = interval_situs(points, truncation, Window::Lower)?;
    let hi = interval_situs(points, truncation, Window::Upper)?;
    let filters = (1..=truncation)
        .map(|n| {
            let (a, b) = (lo.filter(n), hi.filter(n));
            let k = a.grade_count().max(b.grade_count());
            let grades = (0..k).map(|i| a.grade(i).union(b.grade(i))).collect();
            GradedFilter::new(a.size(), grades).expect("sizes agree")
        })
        .collect();
    Situs::from_parts(lo.sset().clone(), filters, Semantics::Graded)
}

/// `A ⋉ X`. With chain filters the fibre grades can be taken in lockstep
/// with the base grades, so the result is the product.
pub fn semidirect_product(a: &Situs, x: &Situs) -> Result<Situs> {
    a.product(x)
}

/// Every member `⋃_{a∈α} {a} × δ_a` of the semidirect grade family in degree
/// `n`, with `α` a grade of `A(n)` and each `δ_a` a grade of `X(n)`.
pub fn semidirect_family(a: &Situs, x: &Situs, n: usize, limit: usize) -> Result<Vec<BitSet>> {
    let (fa, fx) = (a.filter(n), x.filter(n));
    let nx = fx.size();
    let mut out = Vec::new();
    for alpha in fa.grades() {
        let elems = alpha.to_vec();
        let k = fx.grade_count();
        let mut choice = vec![0usize; elems.len()];
        loop {
            if out.len() == limit {
                return Err(Error::Size { what: "semidirect family", bound: u128::MAX, limit: limit as u64 });
            }
            let mut g = BitSet::new(fa.size() * nx);
            for (&ai, &j) in elems.iter().zip(&choice) {
                for xi in fx.grade(j).iter() {
                    g.insert(ai * nx + xi);
                }
            }
            out.push(g);
            let mut i = 0;
            while i < choice.len() && choice[i] + 1 == k {
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
            choice[i] += 1;
        }
    }
    Ok(out)
}

/// The lockstep grades of `A ⋉ X` in degree `n`.
pub fn semidirect_grades(a: &Situs, x: &Situs, n: usize) -> GradedFilter {
    product_filter(a.filter(n), x.filter(n))
}

/// How far refinements are searched: simplices of at most `max_points`
/// vertices, fineness windows of `window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArchimedeanBudget {
    pub max_points: usize,
    pub window: usize,
}

impl Default for ArchimedeanBudget {
    fn default() -> Self {
        ArchimedeanBudget { max_points: 4, window: 1 }
    }
}

/// `s` is `ε/w`-fine for the minimal grades of every degree: every face
/// `s[t_1..t_j]` with `t_j ≤ t_1 + w` lies in the degree-`j` minimal grade.
fn fine_in_sset(s: &Situs, p: usize, e: usize, window: usize) -> bool {
    (1..=s.truncation()).all(|j| {
        let eps = s.filter(j).minimal();
        monotone_tuples(j, p).into_iter().filter(|t| t[j - 1] <= t[0] + window).all(|t| {
            let f = MonotoneMap::new(p, t).expect("monotone");
            eps.contains(s.sset().act(&f, e))
        })
    })
}

/// Archimedean simplices of `s` within the budget, per degree.
///
/// A simplex is Archimedean when, for every degree, it is a face of a simplex
/// that is fine for that degree's minimal grade (finer grades are implied by
/// the chain). Refinements come from the situs itself up to its truncation;
/// for representable situses arbitrary tuples of up to `max_points` points
/// serve as extensions.
pub fn archimedean_simplices(s: &Situs, budget: ArchimedeanBudget) -> Result<Vec<BitSet>> {
    let d = s.truncation();
    let x = s.sset();
    if budget.max_points == 0 || budget.window == 0 {
        return Err(crate::error::domain("refinement budget must be positive"));
    }
    if x.is_representable() {
        return archimedean_representable(s, budget);
    }
    if budget.max_points > d {
        return Err(Error::DegreeBudget { needed: budget.max_points, available: d });
    }
    let mut out: Vec<BitSet> = (1..=d).map(|k| BitSet::new(x.size(k))).collect();
    // For each degree j, the faces of j-fine refinements.
    let mut per_degree: Vec<Vec<BitSet>> = Vec::new();
    for j in 1..=d {
        let sub = single_degree(s, j);
        let mut faces: Vec<BitSet> = (1..=d).map(|k| BitSet::new(x.size(k))).collect();
        for p in 1..=budget.max_points {
            for e in 0..x.size(p) {
                if !fine_in_sset(&sub, p, e, budget.window) {
                    continue;
                }
                for k in 1..=d {
                    for t in monotone_tuples(k, p) {
                        faces[k - 1].insert(x.act(&MonotoneMap::new(p, t).expect("monotone"), e));
                    }
                }
            }
        }
        per_degree.push(faces);
    }
    for k in 1..=d {
        let mut acc = BitSet::full(x.size(k));
        for faces in &per_degree {
            acc.intersect_with(&faces[k - 1]);
        }
        out[k - 1] = acc;
    }
    Ok(out)
}

/// `s` with every degree but `j` antidiscrete.
fn single_degree(s: &Situs, j: usize) -> Situs {
    let filters = (1..=s.truncation())
        .map(|k| if k == j { s.filter(k).clone() } else { GradedFilter::antidiscrete(s.size(k)) })
        .collect();
    Situs::from_parts(s.sset().clone(), filters, s.semantics()).expect("shapes agree")
}

fn archimedean_representable(s: &Situs, budget: ArchimedeanBudget) -> Result<Vec<BitSet>> {
    let d = s.truncation();
    let x = s.sset();
    let pts = x.size(1);
    let w = budget.window;
    // Tuples of length k are indexed in base `pts`.
    let index = |t: &[usize]| t.iter().fold(0usize, |acc, &v| acc * pts + v);
    // Fine tuples for degree j are built point by point; a new point only
    // creates faces whose window ends at it.
    let fine_extends = |j: usize, t: &[usize]| -> bool {
        let eps = s.filter(j).minimal();
        let p = t.len();
        let last = p - 1;
        let lo = last.saturating_sub(w);
        // faces with t_j = last and t_1 ≥ last - w
        monotone_tuples(j, last - lo + 1)
            .into_iter()
            .filter(|u| u[j - 1] == last - lo)
            .all(|u| {
                let face: Vec<usize> = u.iter().map(|&i| t[lo + i]).collect();
                eps.contains(index(&face))
            })
    };
    let mut out: Vec<BitSet> = (1..=d).map(|k| BitSet::full(x.size(k))).collect();
    for j in 1..=d {
        let mut faces: Vec<BitSet> = (1..=d).map(|k| BitSet::new(x.size(k))).collect();
        let mut stack: Vec<Vec<usize>> = (0..pts).map(|v| vec![v]).filter(|t| fine_extends(j, t)).collect();
        let mut visited: u64 = 0;
        while let Some(t) = stack.pop() {
            visited += 1;
            if visited > crate::search::DEFAULT_MAX_CANDIDATES {
                return Err(Error::Size {
                    what: "archimedean refinements",
                    bound: (pts as u128).saturating_pow(budget.max_points as u32),
                    limit: crate::search::DEFAULT_MAX_CANDIDATES,
                });
            }
            for k in 1..=d {
                for u in monotone_tuples(k, t.len()) {
                    let face: Vec<usize> = u.iter().map(|&i| t[i]).collect();
                    faces[k - 1].insert(index(&face));
                }
            }
            if t.len() < budget.max_points {
                for v in 0..pts {
                    let mut t2 = t.clone();
                    t2.push(v);
                    if fine_extends(j, &t2) {
                        stack.push(t2);
                    }
                }
            }
        }
        for k in 1..=d {
            out[k - 1].intersect_with(&faces[k - 1]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};
    use crate::simplicial::{numbered, tuple_index};
    use crate::situs::embed_metric;
    use crate::space::FiniteMetricSpace;

    #[test]
    fn representable_is_trivial_below_the_top_degree() {
        // Below the truncation every pair extends by any third vertex; in the
        // top degree there is no room left to extend.
        let x = TruncatedSSet::representable(&numbered(3), 3);
        let sub = subdivision_filter(&x, Window::Plain);
        assert!(sub.truncated);
        let s = sub.situs;
        assert!(s.filter(2).minimal().is_full());
        assert!(!s.filter(3).minimal().is_full());
        assert!(s.validate().is_none());
    }

    #[test]
    fn point_is_full() {
        let s = subdivision_filter(&TruncatedSSet::point(3), Window::Plain).situs;
        for n in 1..=3 {
            assert!(s.filter(n).minimal().is_full());
        }
    }

    #[test]
    fn interval_degree_two_is_adjacent_pairs() {
        let s = interval_situs(&numbered(5), 3, Window::Plain).unwrap();
        assert!(s.validate().is_none());
        let x = s.sset();
        let small: Vec<(usize, usize)> = s
            .filter(2)
            .minimal()
            .iter()
            .map(|e| (x.vertex(2, e, 0), x.vertex(2, e, 1)))
            .collect();
        assert!(small.iter().all(|&(p, q)| q <= p + 1));
        assert_eq!(small.len(), 5 + 4);
    }

    #[test]
    fn window_variants_validate() {
        for w in [Window::Lower, Window::Upper] {
            assert!(interval_situs(&numbered(4), 3, w).unwrap().validate().is_none());
        }
        assert!(interval_situs_pm(&numbered(4), 3).unwrap().validate().is_none());
    }

    #[test]
    fn semidirect_lockstep_is_cofinal() {
        let two = FiniteMetricSpace::new(
            numbered(2),
            vec![vec![q(0), q(1)], vec![q(1), q(0)]],
            vec![q(2), qr(1, 2)],
        )
        .unwrap();
        let a = embed_metric(&two, 2);
        let p = semidirect_product(&a, &a).unwrap();
        for n in 1..=2 {
            let fam = semidirect_family(&a, &a, n, 1 << 12).unwrap();
            let lock = p.filter(n);
            // every member contains a lockstep grade, and the lockstep grades are members
            assert!(fam.iter().all(|m| lock.grades().iter().any(|g| g.is_subset(m))));
            assert!(lock.grades().iter().all(|g| fam.contains(g)));
        }
    }

    #[test]
    fn metric_chain_is_archimedean() {
        // 0 - 1 - 2 on a line, steps of 1; fine grid below 2
        let d = |a: i64, b: i64| q((a - b).abs());
        let m = FiniteMetricSpace::new(
            numbered(3),
            (0..3).map(|a| (0..3).map(|b| d(a, b)).collect()).collect(),
            vec![q(3), qr(3, 2)],
        )
        .unwrap();
        let s = embed_metric(&m, 2);
        let arch = archimedean_simplices(&s, ArchimedeanBudget { max_points: 3, window: 1 }).unwrap();
        assert!(arch[1].contains(tuple_index(&[0, 2], 3)));
        let short = archimedean_simplices(&s, ArchimedeanBudget { max_points: 2, window: 1 }).unwrap();
        assert!(!short[1].contains(tuple_index(&[0, 2], 3)));
        assert!(short[1].contains(tuple_index(&[0, 1], 3)));
    }
}
