//! Exhaustive search for simplicial maps between truncated simplicial sets.
//!
//! Degree by degree, element by element, depth first. Candidates for an
//! element are narrowed by the caller's allowed sets and by every structural
//! map into a lower degree; degenerate elements are forced by their lower
//! degree preimages. Same-degree maps, continuity and an optional per-degree
//! callback are checked as soon as they can be.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::filter::{check_continuous, GradedFilter, Semantics};
use crate::set::BitSet;
use crate::simplicial::{all_maps, SSetMap, TruncatedSSet};
use crate::situs::Situs;

pub const DEFAULT_MAX_CANDIDATES: u64 = 10_000_000;

/// `∏_d |X(d)|^|B(d)|`, saturating.
pub fn naive_bound(source: &TruncatedSSet, target: &TruncatedSSet) -> u128 {
    let mut b: u128 = 1;
    for d in 1..=source.truncation() {
        for _ in 0..source.size(d) {
            b = b.saturating_mul(target.size(d) as u128);
        }
    }
    b
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates: u64,
    pub solutions: u64,
}

type DegreeCheck<'a> = Box<dyn Fn(usize, &SSetMap) -> bool + 'a>;

pub struct MapSearch<'a> {
    source: &'a TruncatedSSet,
    target: &'a TruncatedSSet,
    allowed: Option<Vec<Vec<BitSet>>>,
    filters: Option<(&'a [GradedFilter], &'a [GradedFilter], Semantics)>,
    degree_check: Option<DegreeCheck<'a>>,
    max_candidates: u64,
    what: &'static str,
}

struct Lower {
    table: Vec<usize>,
    from: usize,
    fibers: Vec<BitSet>,
}

struct Same {
    src_table: Vec<usize>,
    tgt_table: Vec<usize>,
}

struct Raise {
    src_table: Vec<usize>,
    tgt_table: Vec<usize>,
    from: usize,
}

struct Plan {
    lower: Vec<Lower>,
    // (same-map index, b1, b2) checked once max(b1, b2) is assigned
    same: Vec<Same>,
    same_at: Vec<Vec<(usize, usize, usize)>>,
    raise: Vec<Raise>,
    // next-degree elements whose faces in this degree are all assigned once
    // the given index is
    ahead: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    Stop,
}

struct State<'v> {
    h: SSetMap,
    forced: Vec<Vec<Option<usize>>>,
    stats: SearchStats,
    visit: &'v mut dyn FnMut(&SSetMap) -> bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a TruncatedSSet, target: &'a TruncatedSSet) -> Self {
        MapSearch {
            source,
            target,
            allowed: None,
            filters: None,
            degree_check: None,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            what: "map search",
        }
    }

    /// Per degree, per source element, the admissible images.
    pub fn allowed(mut self, allowed: Vec<Vec<BitSet>>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    /// Only maps continuous for the situs structures.
    pub fn continuous(mut self, source: &'a Situs, target: &'a Situs) -> Self {
        self.filters = Some((source.filters(), target.filters(), source.semantics()));
        self
    }

    /// Called when a degree is complete, with that degree and every lower
    /// one assigned; returning `false` prunes.
    pub fn degree_check(mut self, check: impl Fn(usize, &SSetMap) -> bool + 'a) -> Self {
        self.degree_check = Some(Box::new(check));
        self
    }

    pub fn max_candidates(mut self, n: u64) -> Self {
        self.max_candidates = n;
        self
    }

    /// Name reported in size errors.
    pub fn named(mut self, what: &'static str) -> Self {
        self.what = what;
        self
    }

    pub fn first(&self) -> Result<Option<SSetMap>> {
        let mut found = None;
        self.for_each(&mut |h| {
            found = Some(h.clone());
            false
        })?;
        Ok(found)
    }

    /// All solutions; more than `limit` of them is a size error.
    pub fn all(&self, limit: usize) -> Result<Vec<SSetMap>> {
        let mut out = Vec::new();
        let mut over = false;
        self.for_each(&mut |h| {
            if out.len() == limit {
                over = true;
                return false;
            }
            out.push(h.clone());
            true
        })?;
        if over {
            return Err(Error::Size {
                what: self.what,
                bound: naive_bound(self.source, self.target),
                limit: limit as u64,
            });
        }
        Ok(out)
    }

    /// Visits solutions in lexicographic order until `visit` returns `false`.
    pub fn for_each(&self, visit: &mut dyn FnMut(&SSetMap) -> bool) -> Result<SearchStats> {
        let dim = self.source.truncation();
        if self.target.truncation() != dim {
            return Err(domain(format!(
                "maps between truncations {} and {}",
                dim,
                self.target.truncation()
            )));
        }
        if let Some(a) = &self.allowed {
            if a.len() != dim || (1..=dim).any(|d| a[d - 1].len() != self.source.size(d)) {
                return Err(domain("allowed sets do not match the source"));
            }
        }
        let plans: Vec<Plan> = (1..=dim).map(|d| self.plan(d)).collect();
        let allowed = self.effective_allowed();
        let mut st = State {
            h: (1..=dim).map(|d| vec![usize::MAX; self.source.size(d)]).collect(),
            forced: (1..=dim).map(|d| vec![None; self.source.size(d)]).collect(),
            stats: SearchStats::default(),
            visit,
        };
        self.go(&plans, &allowed, &mut st, 1, 0)?;
        Ok(st.stats)
    }

    fn effective_allowed(&self) -> Vec<Vec<BitSet>> {
        let dim = self.source.truncation();
        let mut allowed: Vec<Vec<BitSet>> = match &self.allowed {
            Some(a) => a.clone(),
            None => (1..=dim)
                .map(|d| vec![BitSet::full(self.target.size(d)); self.source.size(d)])
                .collect(),
        };
        // Continuity forces the minimal source grade into the minimal target grade.
        if let Some((sf, tf, _)) = self.filters {
            for d in 1..=dim {
                let tmin = tf[d - 1].minimal();
                for b in sf[d - 1].minimal().iter() {
                    allowed[d - 1][b].intersect_with(tmin);
                }
            }
        }
        allowed
    }

    fn plan(&self, d: usize) -> Plan {
        let (b, x) = (self.source, self.target);
        let mut lower = Vec::new();
        let mut same = Vec::new();
        let mut raise = Vec::new();
        for f in all_maps(b.truncation()) {
            let (m, n) = (f.source(), f.target());
            if n == d && m < d {
                let xt = x.table(&f);
                let mut fibers = vec![BitSet::new(x.size(d)); x.size(m)];
                for (xi, &y) in xt.iter().enumerate() {
                    fibers[y].insert(xi);
                }
                lower.push(Lower { table: b.table(&f).to_vec(), from: m, fibers });
            } else if n == d && m == d && !f.is_identity() {
                same.push(Same { src_table: b.table(&f).to_vec(), tgt_table: x.table(&f).to_vec() });
            } else if m == d && n < d {
                raise.push(Raise { src_table: b.table(&f).to_vec(), tgt_table: x.table(&f).to_vec(), from: n });
            }
        }
        let mut same_at = vec![Vec::new(); b.size(d)];
        for (k, s) in same.iter().enumerate() {
            for (b1, &b2) in s.src_table.iter().enumerate() {
                same_at[b1.max(b2)].push((k, b1, b2));
            }
        }
        let mut ahead = vec![Vec::new(); b.size(d)];
        if d < b.truncation() {
            for f in all_maps(b.truncation()) {
                if f.source() == d && f.target() == d + 1 {
                    for (e, &face) in b.table(&f).iter().enumerate() {
                        ahead[face].push(e);
                    }
                }
            }
            // keep each element only under its last face
            let mut last = vec![0usize; b.size(d + 1)];
            for (i, es) in ahead.iter().enumerate() {
                for &e in es {
                    last[e] = last[e].max(i);
                }
            }
            for (i, es) in ahead.iter_mut().enumerate() {
                es.retain(|&e| last[e] == i);
                es.sort_unstable();
                es.dedup();
            }
        }
        Plan { lower, same, same_at, raise, ahead }
    }

    /// Some candidate survives for every next-degree element that just had
    /// its last face assigned.
    fn supported(&self, plans: &[Plan], allowed: &[Vec<BitSet>], st: &State, d: usize, i: usize) -> bool {
        if d >= self.source.truncation() {
            return true;
        }
        let next = &plans[d];
        plans[d - 1].ahead[i].iter().all(|&e| {
            let mut c = allowed[d][e].clone();
            for l in &next.lower {
                c.intersect_with(&l.fibers[st.h[l.from - 1][l.table[e]]]);
                if c.is_empty() {
                    return false;
                }
            }
            !c.is_empty()
        })
    }

    fn go(&self, plans: &[Plan], allowed: &[Vec<BitSet>], st: &mut State, d: usize, i: usize) -> Result<Flow> {
        let dim = self.source.truncation();
        if d > dim {
            st.stats.solutions += 1;
            return Ok(if (st.visit)(&st.h) { Flow::Continue } else { Flow::Stop });
        }
        let plan = &plans[d - 1];
        if i == 0 {
            // Values forced by lower degrees through degeneracies.
            let forced = &mut st.forced[d - 1];
            forced.iter_mut().for_each(|v| *v = None);
            for r in &plan.raise {
                for (c, &bx) in r.src_table.iter().enumerate() {
                    let v = r.tgt_table[st.h[r.from - 1][c]];
                    match forced[bx] {
                        None => forced[bx] = Some(v),
                        Some(w) if w != v => return Ok(Flow::Continue),
                        _ => {}
                    }
                }
            }
        }
        if i == self.source.size(d) {
            if let Some((sf, tf, sem)) = self.filters {
                let c = check_continuous(&st.h[d - 1], &sf[d - 1], &tf[d - 1], sem)?;
                if c.failing_grade.is_some() {
                    return Ok(Flow::Continue);
                }
            }
            if let Some(check) = &self.degree_check {
                if !check(d, &st.h) {
                    return Ok(Flow::Continue);
                }
            }
            return self.go(plans, allowed, st, d + 1, 0);
        }
        let mut cands = allowed[d - 1][i].clone();
        for l in &plan.lower {
            cands.intersect_with(&l.fibers[st.h[l.from - 1][l.table[i]]]);
        }
        if let Some(v) = st.forced[d - 1][i] {
            let ok = cands.contains(v);
            cands = BitSet::new(cands.universe());
            if ok {
                cands.insert(v);
            }
        }
        for x in cands.iter() {
            st.stats.candidates += 1;
            if st.stats.candidates > self.max_candidates {
                return Err(Error::Size {
                    what: self.what,
                    bound: naive_bound(self.source, self.target),
                    limit: self.max_candidates,
                });
            }
            st.h[d - 1][i] = x;
            let consistent = plan.same_at[i].iter().all(|&(k, b1, b2)| {
                let s = &plan.same[k];
                s.tgt_table[st.h[d - 1][b1]] == st.h[d - 1][b2]
            });
            if consistent && self.supported(plans, allowed, st, d, i) {
                if let Flow::Stop = self.go(plans, allowed, st, d, i + 1)? {
                    return Ok(Flow::Stop);
                }
            }
        }
        st.h[d - 1][i] = usize::MAX;
        Ok(Flow::Continue)
    }
}

/// Every simplicial map `source → target`, up to `limit` of them.
pub fn hom_set(source: &TruncatedSSet, target: &TruncatedSSet, limit: usize) -> Result<Vec<SSetMap>> {
    MapSearch::new(source, target).named("hom-set").all(limit)
}

/// Every situs morphism `source → target`, up to `limit` of them.
pub fn situs_hom_set(source: &Situs, target: &Situs, limit: usize) -> Result<Vec<SSetMap>> {
    MapSearch::new(source.sset(), target.sset()).continuous(source, target).named("hom-set").all(limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::numbered;

    #[test]
    fn maps_between_representables_are_point_maps() {
        // Simplicial maps between representables are exactly maps of points.
        let a = TruncatedSSet::representable(&numbered(2), 3);
        let b = TruncatedSSet::representable(&numbered(3), 3);
        assert_eq!(hom_set(&a, &b, 100).unwrap().len(), 9);
    }

    #[test]
    fn maps_between_simplices_are_monotone() {
        let a = TruncatedSSet::standard_simplex(1, 3);
        let b = TruncatedSSet::standard_simplex(2, 3);
        // monotone maps {0,1} → {0,1,2}
        assert_eq!(hom_set(&a, &b, 100).unwrap().len(), 6);
    }

    #[test]
    fn budget_overflow_reports_size() {
        let a = TruncatedSSet::constant(&numbered(6), 3);
        let b = TruncatedSSet::constant(&numbered(6), 3);
        let err = MapSearch::new(&a, &b).max_candidates(100).all(1 << 20).unwrap_err();
        assert!(matches!(err, Error::Size { limit: 100, .. }));
    }

    #[test]
    fn limit_overflow_reports_size() {
        let a = TruncatedSSet::representable(&numbered(2), 2);
        let err = hom_set(&a, &a, 3).unwrap_err();
        assert!(matches!(err, Error::Size { limit: 3, .. }));
    }
}
