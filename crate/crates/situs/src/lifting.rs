//! Lifting properties, orthogonal classes and the characterizations built
//! on them: connectedness, π₀, ultrafilters and quasi-compactness.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::filter::GradedFilter;
use crate::search::{MapSearch, DEFAULT_MAX_CANDIDATES};
use crate::set::BitSet;
use crate::simplicial::{tuple_index, SSetMap, TruncatedSSet};
use crate::situs::{check_morphism, embed_cart, embed_diag, embed_top, Situs, SitusMorphism};
use crate::space::FiniteTopSpace;

/// A morphism together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: Situs,
    pub target: Situs,
    pub map: SitusMorphism,
}

impl Arrow {
    pub fn new(source: Situs, target: Situs, map: SitusMorphism) -> Result<Self> {
        if let Some(fail) = check_morphism(&map, &source, &target)? {
            return Err(domain(format!("not a situs morphism: {fail:?}")));
        }
        Ok(Arrow { source, target, map })
    }

    /// `∅ → target`.
    pub fn from_empty(target: Situs) -> Self {
        let d = target.truncation();
        Arrow { source: Situs::empty(d), target, map: SitusMorphism::new(vec![Vec::new(); d]) }
    }

    /// `source → pt`.
    pub fn to_point(source: Situs) -> Self {
        let d = source.truncation();
        let map = SitusMorphism::new((1..=d).map(|n| vec![0; source.size(n)]).collect());
        Arrow { target: Situs::point(d), source, map }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Arrow) -> Result<Arrow> {
        if self.target != other.source {
            return Err(domain("arrows are not composable"));
        }
        Ok(Arrow { source: self.source.clone(), target: other.target.clone(), map: self.map.then(&other.map) })
    }
}

/// A commutative square `f: A → X`, `g: B → Y` against `i: A → B`, `p: X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub f: SitusMorphism,
    pub g: SitusMorphism,
}

pub struct LiftingProblem<'a> {
    pub i: &'a Arrow,
    pub p: &'a Arrow,
    pub f: &'a SitusMorphism,
    pub g: &'a SitusMorphism,
}

fn compose(a: &SSetMap, b: &SSetMap) -> SSetMap {
    a.iter().zip(b).map(|(f, g)| f.iter().map(|&x| g[x]).collect()).collect()
}

impl LiftingProblem<'_> {
    fn check(&self) -> Result<()> {
        let d = self.i.source.truncation();
        if [&self.i.target, &self.p.source, &self.p.target].iter().any(|s| s.truncation() != d) {
            return Err(domain("lifting problem mixes truncations"));
        }
        if compose(&self.f.maps, &self.p.map.maps) != compose(&self.i.map.maps, &self.g.maps) {
            return Err(domain("the square does not commute"));
        }
        Ok(())
    }

    fn search(&self, max_candidates: u64) -> MapSearch<'_> {
        let (b, x) = (&self.i.target, &self.p.source);
        let d = b.truncation();
        let mut allowed: Vec<Vec<BitSet>> = (1..=d)
            .map(|n| {
                let p = self.p.map.at(n);
                (0..b.size(n))
                    .map(|e| {
                        let y = self.g.at(n)[e];
                        BitSet::from_iter(x.size(n), (0..x.size(n)).filter(|&xi| p[xi] == y))
                    })
                    .collect()
            })
            .collect();
        for n in 1..=d {
            for (a, &bi) in self.i.map.at(n).iter().enumerate() {
                let fa = self.f.at(n)[a];
                let keep = allowed[n - 1][bi].contains(fa);
                allowed[n - 1][bi] = BitSet::new(x.size(n));
                if keep {
                    allowed[n - 1][bi].insert(fa);
                }
            }
        }
        MapSearch::new(b.sset(), x.sset())
            .allowed(allowed)
            .continuous(b, x)
            .max_candidates(max_candidates)
            .named("lift search")
    }

    fn assert_lift(&self, h: &SitusMorphism) {
        assert_eq!(compose(&self.i.map.maps, &h.maps), self.f.maps, "lower triangle");
        assert_eq!(compose(&h.maps, &self.p.map.maps), self.g.maps, "upper triangle");
        assert!(
            matches!(check_morphism(h, &self.i.target, &self.p.source), Ok(None)),
            "lift is not a morphism"
        );
    }
}

/// A diagonal `h: B → X` with `h∘i = f` and `p∘h = g`, the first in
/// lexicographic order.
pub fn find_lift(prob: &LiftingProblem, max_candidates: u64) -> Result<Option<SitusMorphism>> {
    prob.check()?;
    let h = prob.search(max_candidates).first()?.map(SitusMorphism::new);
    if let Some(h) = &h {
        prob.assert_lift(h);
    }
    Ok(h)
}

/// Every diagonal, up to `limit` of them.
pub fn all_lifts(prob: &LiftingProblem, max_candidates: u64, limit: usize) -> Result<Vec<SitusMorphism>> {
    prob.check()?;
    let hs: Vec<SitusMorphism> = prob.search(max_candidates).all(limit)?.into_iter().map(SitusMorphism::new).collect();
    for h in &hs {
        prob.assert_lift(h);
    }
    Ok(hs)
}

/// The first commutative square from `i` to `p` without a diagonal, or
/// `None` when `i ⋔ p`.
pub fn lifting_obstruction(i: &Arrow, p: &Arrow, max_candidates: u64) -> Result<Option<Square>> {
    let (a, b, x, y) = (&i.source, &i.target, &p.source, &p.target);
    let d = a.truncation();
    if [b, x, y].iter().any(|s| s.truncation() != d) {
        return Err(domain("lifting problem mixes truncations"));
    }
    let mut failure: Option<Square> = None;
    let mut error: Option<Error> = None;
    MapSearch::new(b.sset(), y.sset())
        .continuous(b, y)
        .max_candidates(max_candidates)
        .named("square enumeration")
        .for_each(&mut |g| {
            let g = SitusMorphism::new(g.clone());
            let gi = compose(&i.map.maps, &g.maps);
            let allowed: Vec<Vec<BitSet>> = (1..=d)
                .map(|n| {
                    let pn = p.map.at(n);
                    gi[n - 1]
                        .iter()
                        .map(|&yv| BitSet::from_iter(x.size(n), (0..x.size(n)).filter(|&xi| pn[xi] == yv)))
                        .collect()
                })
                .collect();
            let inner = MapSearch::new(a.sset(), x.sset())
                .allowed(allowed)
                .continuous(a, x)
                .max_candidates(max_candidates)
                .named("square enumeration")
                .for_each(&mut |f| {
                    let f = SitusMorphism::new(f.clone());
                    let prob = LiftingProblem { i, p, f: &f, g: &g };
                    match find_lift(&prob, max_candidates) {
                        Ok(Some(_)) => true,
                        Ok(None) => {
                            failure = Some(Square { f, g: g.clone() });
                            false
                        }
                        Err(e) => {
                            error = Some(e);
                            false
                        }
                    }
                });
            if let Err(e) = inner {
                error = Some(e);
            }
            failure.is_none() && error.is_none()
        })?;
    match error {
        Some(e) => Err(e),
        None => Ok(failure),
    }
}

/// `i ⋔ p`.
pub fn lifts(i: &Arrow, p: &Arrow, max_candidates: u64) -> Result<bool> {
    Ok(lifting_obstruction(i, p, max_candidates)?.is_none())
}

/// `i ∈ P^l`.
pub fn has_llp(i: &Arrow, class: &[Arrow], max_candidates: u64) -> Result<bool> {
    for p in class {
        if !lifts(i, p, max_candidates)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p ∈ P^r`.
pub fn has_rlp(p: &Arrow, class: &[Arrow], max_candidates: u64) -> Result<bool> {
    for i in class {
        if !lifts(i, p, max_candidates)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `P^l`
    Left,
    /// `P^r`
    Right,
}

/// `P^l` or `P^r` for a finite `P`.
#[derive(Clone, Debug)]
pub struct MorphismClass {
    pub arrows: Vec<Arrow>,
    pub side: Side,
}

impl MorphismClass {
    pub fn contains(&self, a: &Arrow, max_candidates: u64) -> Result<bool> {
        match self.side {
            Side::Left => has_llp(a, &self.arrows, max_candidates),
            Side::Right => has_rlp(a, &self.arrows, max_candidates),
        }
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| String::from(*s)).collect()
}

/// `{0,1}_pa`: the discrete two-point space.
pub fn discrete_pair(truncation: usize) -> Situs {
    embed_top(&FiniteTopSpace::discrete(labels(&["0", "1"])), truncation)
}

/// `{0,1}_pa → {0=1}_pa`.
pub fn connectedness_arrow(truncation: usize) -> Arrow {
    Arrow::to_point(discrete_pair(truncation))
}

/// `S → pt` lifts against `{0,1}_pa → pt`: every morphism into the
/// discrete pair is constant.
pub fn is_connected_by_lifting(s: &Situs, max_candidates: u64) -> Result<bool> {
    lifts(&Arrow::to_point(s.clone()), &connectedness_arrow(s.truncation()), max_candidates)
}

#[derive(Clone, Debug)]
pub struct Pi0 {
    pub situs: Situs,
    /// `S → π₀(S)`
    pub unit: Arrow,
    /// `π₀(S) → pt`
    pub counit: Arrow,
    /// the unit lies in `({0,1}_pa → pt)^l`
    pub left_in_l: bool,
    /// the counit lifts against the witnesses of `({0,1}_pa → pt)^l`: the
    /// unit and `∅ → pt`
    pub right_in_lr: bool,
}

/// `π₀(S) = diag(components, antidiscrete)` with its M2 factorization.
pub fn pi0(s: &Situs, max_candidates: u64) -> Result<Pi0> {
    let d = s.truncation();
    let comp = s.sset().connected_components();
    let k = comp.iter().copied().max().map_or(0, |c| c + 1);
    let names: Vec<String> = (0..k)
        .map(|c| {
            let first = comp.iter().position(|&x| x == c).expect("component has a vertex");
            s.sset().labels(1)[first].clone()
        })
        .collect();
    let p = embed_diag(&names, &GradedFilter::antidiscrete(k), d)?;
    let unit_maps = (1..=d)
        .map(|n| {
            (0..s.size(n))
                .map(|e| {
                    let c = comp[s.sset().vertex(n, e, 0)];
                    tuple_index(&vec![c; n], k)
                })
                .collect()
        })
        .collect();
    let unit = Arrow::new(s.clone(), p.clone(), SitusMorphism::new(unit_maps))?;
    let counit = Arrow::to_point(p.clone());
    let test = [connectedness_arrow(d)];
    let left_in_l = has_llp(&unit, &test, max_candidates)?;
    let witnesses = [unit.clone(), Arrow::from_empty(Situs::point(d))];
    let right_in_lr = has_rlp(&counit, &witnesses, max_candidates)?;
    Ok(Pi0 { situs: p, unit, counit, left_in_l, right_in_lr })
}

/// `{o<1} ⊔ {o>1} → {o↔1}`, each a Cartesian situs on `{o, 1}`.
pub fn ultrafilter_test_arrow(truncation: usize) -> Arrow {
    let pts = labels(&["o", "1"]);
    let lt = embed_cart(&pts, &GradedFilter::principal(BitSet::singleton(2, 0)), truncation).expect("carrier");
    let gt = embed_cart(&pts, &GradedFilter::principal(BitSet::singleton(2, 1)), truncation).expect("carrier");
    let both = embed_cart(&pts, &GradedFilter::antidiscrete(2), truncation).expect("carrier");
    let sum = Situs::coproduct(&[&lt, &gt]).expect("same truncation");
    let maps = (1..=truncation).map(|n| (0..sum.size(n)).map(|e| e % both.size(n)).collect()).collect();
    Arrow { source: sum, target: both, map: SitusMorphism::new(maps) }
}

/// `∅ → F_diag`.
pub fn empty_to_diag(f: &GradedFilter, truncation: usize) -> Arrow {
    let pts: Vec<String> = (0..f.size()).map(|i| format!("{i}")).collect();
    Arrow::from_empty(embed_diag(&pts, f, truncation).expect("carrier"))
}

/// `∅ → F_diag ⋔ {o<1}⊔{o>1} → {o↔1}`.
pub fn is_ultrafilter_by_lifting(f: &GradedFilter, truncation: usize, max_candidates: u64) -> Result<bool> {
    lifts(&empty_to_diag(f, truncation), &ultrafilter_test_arrow(truncation), max_candidates)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiCompactness {
    /// per point `u`, every `a` such that the principal ultrafilter at `u`
    /// converges to `a`
    pub limits: Vec<Vec<usize>>,
}

impl QuasiCompactness {
    pub fn holds(&self) -> bool {
        self.limits.iter().all(|l| !l.is_empty())
    }
}

/// Every principal ultrafilter converges: for each point `u`, lifts of
/// `∅ → u_diag` against `S[+1] → S`. Needs a representable sset; the lift
/// problem lives one truncation lower.
pub fn quasi_compact_concise(s: &Situs, max_candidates: u64) -> Result<QuasiCompactness> {
    let x = s.sset();
    if !x.is_representable() {
        return Err(Error::Unsupported(String::from("quasi-compactness needs a representable sset")));
    }
    let d = s.truncation();
    if d < 2 {
        return Err(Error::DegreeBudget { needed: 2, available: d });
    }
    let pts = x.size(1);
    let shifted = s.shift_plus1()?;
    let base = s.truncate(d - 1)?;
    let counit = Arrow { source: shifted, target: base.clone(), map: s.shift_counit()? };
    let names: Vec<String> = x.labels(1).to_vec();
    let mut limits = Vec::with_capacity(pts);
    for u in 0..pts {
        let uf = GradedFilter::principal(BitSet::singleton(pts, u));
        let ud = embed_diag(&names, &uf, d - 1)?;
        let g = SitusMorphism::identity(&ud);
        if check_morphism(&g, &ud, &base)?.is_some() {
            // u_diag does not even map to S
            limits.push(Vec::new());
            continue;
        }
        let i = Arrow::from_empty(ud);
        let f = SitusMorphism::new(vec![Vec::new(); d - 1]);
        let prob = LiftingProblem { i: &i, p: &counit, f: &f, g: &g };
        let hs = all_lifts(&prob, max_candidates, pts.max(1))?;
        let mut ls: Vec<usize> = hs.iter().map(|h| x.vertex(2, h.at(1)[u], 0)).collect();
        ls.sort_unstable();
        ls.dedup();
        limits.push(ls);
    }
    Ok(QuasiCompactness { limits })
}

/// Standard simplices `Δ_{n_1} ⊔ … ⊔ Δ_{n_k}` as antidiscrete situses.
pub fn simplices_union(tops: &[usize], truncation: usize) -> Result<Situs> {
    let parts: Vec<TruncatedSSet> = tops.iter().map(|&t| TruncatedSSet::standard_simplex(t, truncation)).collect();
    let refs: Vec<&TruncatedSSet> = parts.iter().collect();
    Ok(Situs::antidiscrete(TruncatedSSet::coproduct(&refs)?))
}

/// Candidate budget used when callers pass none.
pub const DEFAULT_BUDGET: u64 = DEFAULT_MAX_CANDIDATES;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{enumerate_filters, is_ultrafilter_by_minimal_grade};

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn isomorphism_lifts() {
        let s = discrete_pair(2);
        let id = Arrow::new(s.clone(), s.clone(), SitusMorphism::identity(&s)).unwrap();
        assert!(lifts(&id, &connectedness_arrow(2), B).unwrap());
    }

    #[test]
    fn connectedness() {
        assert!(is_connected_by_lifting(&simplices_union(&[2], 3).unwrap(), B).unwrap());
        assert!(!is_connected_by_lifting(&simplices_union(&[0, 1], 3).unwrap(), B).unwrap());
    }

    #[test]
    fn empty_class() {
        let a = connectedness_arrow(2);
        assert!(has_llp(&a, &[], B).unwrap());
    }

    #[test]
    fn ultrafilters_on_two_points() {
        for f in enumerate_filters(2, 2) {
            let proper = !f.minimal().is_empty();
            let by_lift = is_ultrafilter_by_lifting(&f, 2, B).unwrap();
            if proper {
                assert_eq!(by_lift, is_ultrafilter_by_minimal_grade(&f), "{f:?}");
            } else {
                assert!(by_lift);
            }
        }
    }

    #[test]
    fn pi0_of_two_points() {
        let s = simplices_union(&[0, 0], 3).unwrap();
        let p = pi0(&s, B).unwrap();
        assert_eq!(p.situs.size(1), 2);
        assert!(p.left_in_l && p.right_in_lr);
        let sier = embed_top(&FiniteTopSpace::sierpinski(), 3);
        assert_eq!(pi0(&sier, B).unwrap().situs.size(1), 1);
    }

    #[test]
    fn finite_spaces_are_quasi_compact() {
        for x in FiniteTopSpace::enumerate(3) {
            let q = quasi_compact_concise(&embed_top(&x, 3), B).unwrap();
            assert!(q.holds());
            // each point is a limit of its own ultrafilter
            for (u, ls) in q.limits.iter().enumerate() {
                assert!(ls.contains(&u), "{x:?} {:?}", q.limits);
            }
        }
        assert!(quasi_compact_concise(&embed_top(&FiniteTopSpace::discrete(Vec::new()), 3), B).unwrap().holds());
    }
}
