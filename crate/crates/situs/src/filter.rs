//! Graded filters: a finite carrier `0..size` with a descending chain of
//! neighbourhood grades `B_1 ⊇ B_2 ⊇ … ⊇ B_k`.
//!
//! The chain index is kept as data. On a finite carrier every genuine filter
//! is principal, so the grading is what carries the ∀ε∃δ structure of the
//! infinite filters these stand in for.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::set::BitSet;

/// How a grade chain is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Semantics {
    /// The grades are a base of a genuine filter: neighbourhoods are the
    /// supersets of the last grade.
    Generated,
    /// Neighbourhoods are supersets of some grade; witnesses record which.
    #[default]
    Graded,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFilter {
    size: usize,
    grades: Vec<BitSet>,
}

/// Replaces `B_i` with `B_1 ∩ … ∩ B_i`.
pub fn normalize(grades: &[BitSet]) -> Vec<BitSet> {
    let mut out: Vec<BitSet> = Vec::with_capacity(grades.len());
    for g in grades {
        let next = match out.last() {
            Some(prev) => prev.intersection(g),
            None => g.clone(),
        };
        out.push(next);
    }
    out
}

impl GradedFilter {
    /// Builds and normalizes. Fails on an empty chain or a grade over a
    /// different carrier.
    pub fn new(size: usize, grades: Vec<BitSet>) -> Result<Self> {
        if grades.is_empty() {
            return Err(domain("a graded filter needs at least one grade"));
        }
        if let Some(g) = grades.iter().find(|g| g.universe() != size) {
            return Err(domain(format!(
                "grade over a carrier of size {} in a filter on {size} elements",
                g.universe()
            )));
        }
        Ok(GradedFilter { size, grades: normalize(&grades) })
    }

    /// The filter whose only neighbourhood is the whole carrier.
    pub fn antidiscrete(size: usize) -> Self {
        GradedFilter { size, grades: vec![BitSet::full(size)] }
    }

    /// Grades `[carrier, set]`.
    pub fn principal(set: BitSet) -> Self {
        let size = set.universe();
        GradedFilter::new(size, vec![BitSet::full(size), set]).expect("sizes agree")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn grades(&self) -> &[BitSet] {
        &self.grades
    }

    pub fn grade_count(&self) -> usize {
        self.grades.len()
    }

    /// Grade `i`, padding past the end with the last grade.
    pub fn grade(&self, i: usize) -> &BitSet {
        &self.grades[i.min(self.grades.len() - 1)]
    }

    pub fn minimal(&self) -> &BitSet {
        self.grades.last().expect("nonempty chain")
    }

    pub fn is_neighbourhood(&self, s: &BitSet, sem: Semantics) -> Result<bool> {
        if s.universe() != self.size {
            return Err(domain(format!(
                "subset of a {}-element carrier tested against a filter on {}",
                s.universe(),
                self.size
            )));
        }
        Ok(match sem {
            Semantics::Generated => self.minimal().is_subset(s),
            Semantics::Graded => self.grades.iter().any(|g| g.is_subset(s)),
        })
    }

    /// Every neighbourhood of `other` is a neighbourhood of `self`.
    pub fn is_finer_than(&self, other: &GradedFilter) -> bool {
        self.size == other.size && self.minimal().is_subset(other.minimal())
    }

    /// Same neighbourhoods (the chains may differ).
    pub fn equivalent(&self, other: &GradedFilter) -> bool {
        self.size == other.size && self.minimal() == other.minimal()
    }

    /// Pads the chain to `k` grades by repeating the last one.
    pub fn padded(&self, k: usize) -> Vec<BitSet> {
        (0..k.max(self.grades.len())).map(|i| self.grade(i).clone()).collect()
    }
}

/// Image of a subset under a total map into `0..target_size`.
pub fn image(f: &[usize], s: &BitSet, target_size: usize) -> BitSet {
    BitSet::from_iter(target_size, s.iter().map(|x| f[x]))
}

pub fn preimage(f: &[usize], t: &BitSet) -> BitSet {
    BitSet::from_iter(f.len(), (0..f.len()).filter(|&x| t.contains(f[x])))
}

fn check_total(f: &[usize], source: usize, target: usize) -> Result<()> {
    if f.len() != source {
        return Err(domain(format!("map defined on {} elements, carrier has {source}", f.len())));
    }
    if let Some(&y) = f.iter().find(|&&y| y >= target) {
        return Err(domain(format!("map value {y} outside target carrier of size {target}")));
    }
    Ok(())
}

/// Outcome of a continuity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuity {
    pub holds: bool,
    /// For each target grade `i`, the coarsest source grade `j` with
    /// `f(B_j) ⊆ A_i`, if any. Generated semantics reports one entry.
    pub witness: Vec<Option<usize>>,
    /// First target grade with no witness.
    pub failing_grade: Option<usize>,
}

/// Graded: every target grade `A_i` has a source grade `B_j` with
/// `f(B_j) ⊆ A_i`. Generated: the same for the minimal grades only.
pub fn check_continuous(
    f: &[usize],
    src: &GradedFilter,
    tgt: &GradedFilter,
    sem: Semantics,
) -> Result<Continuity> {
    check_total(f, src.size, tgt.size)?;
    let fits = |b: &BitSet, a: &BitSet| b.iter().all(|x| a.contains(f[x]));
    match sem {
        Semantics::Generated => {
            let ok = fits(src.minimal(), tgt.minimal());
            Ok(Continuity {
                holds: ok,
                witness: vec![ok.then_some(src.grades.len() - 1)],
                failing_grade: (!ok).then_some(tgt.grades.len() - 1),
            })
        }
        Semantics::Graded => {
            let witness: Vec<Option<usize>> = tgt
                .grades
                .iter()
                .map(|a| src.grades.iter().position(|b| fits(b, a)))
                .collect();
            let failing = witness.iter().position(Option::is_none);
            Ok(Continuity { holds: failing.is_none(), witness, failing_grade: failing })
        }
    }
}

/// Fast boolean form used inside searches; both semantics agree on the verdict
/// for descending chains.
pub fn is_continuous(f: &[usize], src: &GradedFilter, tgt: &GradedFilter) -> bool {
    let a = tgt.minimal();
    src.minimal().iter().all(|x| a.contains(f[x]))
}

/// Grade-wise Cartesian product; the pair `(a, b)` is element `a * |G| + b`.
pub fn product_filter(f: &GradedFilter, g: &GradedFilter) -> GradedFilter {
    let k = f.grade_count().max(g.grade_count());
    let size = f.size * g.size;
    let grades = (0..k)
        .map(|i| {
            let (a, b) = (f.grade(i), g.grade(i));
            let mut s = BitSet::new(size);
            for x in a.iter() {
                for y in b.iter() {
                    s.insert(x * g.size + y);
                }
            }
            s
        })
        .collect();
    GradedFilter { size, grades }
}

/// Coarsest graded filter on `0..source_size` making every `f_t` continuous
/// into `G_t`: grade `i` is the intersection of the preimages of the targets'
/// grade `i`.
pub fn pullback_filter(source_size: usize, maps: &[(&[usize], &GradedFilter)]) -> Result<GradedFilter> {
    for (f, g) in maps {
        check_total(f, source_size, g.size)?;
    }
    let k = maps.iter().map(|(_, g)| g.grade_count()).max().unwrap_or(1);
    let grades = (0..k)
        .map(|i| {
            let mut s = BitSet::full(source_size);
            for (f, g) in maps {
                s.intersect_with(&preimage(f, g.grade(i)));
            }
            s
        })
        .collect();
    GradedFilter::new(source_size, grades)
}

/// Finest graded filter on the target making `f` continuous: grade-wise images.
pub fn pushforward_filter(f: &[usize], src: &GradedFilter, target_size: usize) -> Result<GradedFilter> {
    check_total(f, src.size, target_size)?;
    let grades = src.grades.iter().map(|b| image(f, b, target_size)).collect();
    GradedFilter::new(target_size, grades)
}

/// Ultrafilter test by 2-colourings: for every `χ: carrier → {o, 1}` one of
/// the two preimages is a neighbourhood. An improper filter (empty minimal
/// grade) is not ultra.
pub fn is_ultrafilter(f: &GradedFilter) -> bool {
    let min = f.minimal();
    if min.is_empty() {
        return false;
    }
    let n = f.size;
    assert!(n < 26, "colouring enumeration is for desk-scale carriers");
    (0u32..1 << n).all(|mask| {
        let zero = BitSet::from_iter(n, (0..n).filter(|&x| mask & (1 << x) == 0));
        min.is_subset(&zero) || min.is_subset(&zero.complement())
    })
}

/// The same test read off the chain: the minimal grade is a singleton.
pub fn is_ultrafilter_by_minimal_grade(f: &GradedFilter) -> bool {
    f.minimal().count() == 1
}

/// All descending chains of nonempty length up to `max_len` over subsets of
/// `0..size`, after normalization and deduplication. Used by exhaustive
/// sweeps.
pub fn enumerate_filters(size: usize, max_len: usize) -> Vec<GradedFilter> {
    let subsets: Vec<BitSet> = (0u32..1 << size)
        .map(|m| BitSet::from_iter(size, (0..size).filter(|&x| m & (1 << x) != 0)))
        .collect();
    let mut out: Vec<GradedFilter> = Vec::new();
    let mut chain: Vec<BitSet> = Vec::new();
    fn rec(subsets: &[BitSet], chain: &mut Vec<BitSet>, max_len: usize, size: usize, out: &mut Vec<GradedFilter>) {
        if !chain.is_empty() {
            out.push(GradedFilter { size, grades: chain.clone() });
        }
        if chain.len() == max_len {
            return;
        }
        for s in subsets {
            let ok = match chain.last() {
                Some(prev) => s.is_subset(prev) && s != prev,
                None => true,
            };
            if ok {
                chain.push(s.clone());
                rec(subsets, chain, max_len, size, out);
                chain.pop();
            }
        }
    }
    rec(&subsets, &mut chain, max_len, size, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_iter(n, xs.iter().copied())
    }

    #[test]
    fn neighbourhoods() {
        let f = GradedFilter::new(3, vec![set(3, &[0, 1, 2]), set(3, &[0, 1]), set(3, &[0])]).unwrap();
        assert!(f.is_neighbourhood(&set(3, &[0, 2]), Semantics::Graded).unwrap());
        assert!(!f.is_neighbourhood(&set(3, &[1, 2]), Semantics::Graded).unwrap());
        let e = GradedFilter::new(3, vec![set(3, &[0, 1, 2]), set(3, &[])]).unwrap();
        assert!(e.is_neighbourhood(&set(3, &[]), Semantics::Graded).unwrap());
        assert!(f.is_neighbourhood(&set(4, &[]), Semantics::Graded).is_err());
    }

    #[test]
    fn normalization_intersects_prefixes() {
        let f = GradedFilter::new(3, vec![set(3, &[0, 1]), set(3, &[1, 2])]).unwrap();
        assert_eq!(f.grades()[1], set(3, &[1]));
    }

    #[test]
    fn swap_is_not_continuous() {
        let f = GradedFilter::new(2, vec![set(2, &[0, 1]), set(2, &[0])]).unwrap();
        let c = check_continuous(&[1, 0], &f, &f, Semantics::Graded).unwrap();
        assert!(!c.holds);
        assert_eq!(c.failing_grade, Some(1));
        let id = check_continuous(&[0, 1], &f, &f, Semantics::Graded).unwrap();
        assert!(id.holds);
        assert_eq!(id.witness, vec![Some(0), Some(1)]);
    }

    #[test]
    fn product_and_pushforward() {
        let f = GradedFilter::new(2, vec![set(2, &[0, 1]), set(2, &[0])]).unwrap();
        let g = GradedFilter::antidiscrete(2);
        let p = product_filter(&f, &g);
        assert_eq!(p.grades()[0], BitSet::full(4));
        assert_eq!(p.grades()[1], set(4, &[0, 1]));
        let pushed = pushforward_filter(&[1, 0], &f, 2).unwrap();
        assert_eq!(pushed.grades(), &[set(2, &[0, 1]), set(2, &[1])]);
        let pulled = pullback_filter(2, &[(&[0, 1], &f)]).unwrap();
        assert_eq!(pulled, f);
    }

    #[test]
    fn ultrafilters() {
        let p = GradedFilter::new(2, vec![set(2, &[0, 1]), set(2, &[0])]).unwrap();
        assert!(is_ultrafilter(&p));
        assert!(!is_ultrafilter(&GradedFilter::antidiscrete(2)));
        let e = GradedFilter::new(2, vec![set(2, &[])]).unwrap();
        assert!(!is_ultrafilter(&e));
    }

    #[test]
    fn enumeration_counts_chains() {
        // On one point: [{0}], [∅], [{0}, ∅].
        assert_eq!(enumerate_filters(1, 4).len(), 3);
        assert_eq!(enumerate_filters(0, 4).len(), 1);
    }
}
