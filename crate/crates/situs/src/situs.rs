//! Situses: truncated simplicial sets with a graded filter in every degree,
//! all structural maps continuous.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::filter::{self, check_continuous, is_continuous, GradedFilter, Semantics};
use crate::set::BitSet;
use crate::simplicial::{all_maps, all_tuples, MonotoneMap, SSetMap, TruncatedSSet};
use crate::space::{FiniteMetricSpace, FiniteTopSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Situs {
    sset: TruncatedSSet,
    filters: Vec<GradedFilter>,
    semantics: Semantics,
}

/// Degree-wise maps between situses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SitusMorphism {
    pub maps: SSetMap,
}

impl SitusMorphism {
    pub fn new(maps: SSetMap) -> Self {
        SitusMorphism { maps }
    }

    pub fn identity(s: &Situs) -> Self {
        SitusMorphism { maps: (1..=s.truncation()).map(|n| (0..s.sset.size(n)).collect()).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SitusMorphism) -> SitusMorphism {
        SitusMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(f, g)| f.iter().map(|&x| g[x]).collect()).collect(),
        }
    }

    /// The map in degree `n`.
    pub fn at(&self, n: usize) -> &[usize] {
        &self.maps[n - 1]
    }
}

/// Why a candidate morphism is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    /// Does not commute with the action of `map` on the given simplex.
    NotSimplicial { map: MonotoneMap, simplex: usize },
    /// Not graded-continuous in `degree`; `grade` is the target grade lacking
    /// a witness.
    NotContinuous { degree: usize, grade: usize },
}

impl Situs {
    /// Builds and validates: every structural map must be continuous.
    pub fn new(sset: TruncatedSSet, filters: Vec<GradedFilter>, semantics: Semantics) -> Result<Self> {
        let s = Self::from_parts(sset, filters, semantics)?;
        if let Some((f, grade)) = s.validate() {
            return Err(domain(format!("structural map {} is not continuous at grade {grade}", f.key())));
        }
        Ok(s)
    }

    /// Builds checking shapes only; [`Situs::validate`] reports the rest.
    pub fn from_parts(sset: TruncatedSSet, filters: Vec<GradedFilter>, semantics: Semantics) -> Result<Self> {
        if filters.len() != sset.truncation() {
            return Err(domain(format!(
                "{} filters for truncation {}",
                filters.len(),
                sset.truncation()
            )));
        }
        for (i, f) in filters.iter().enumerate() {
            if f.size() != sset.size(i + 1) {
                return Err(domain(format!("degree-{} filter is over the wrong carrier", i + 1)));
            }
        }
        Ok(Situs { sset, filters, semantics })
    }

    pub fn antidiscrete(sset: TruncatedSSet) -> Self {
        let filters = (1..=sset.truncation()).map(|n| GradedFilter::antidiscrete(sset.size(n))).collect();
        Situs { sset, filters, semantics: Semantics::Graded }
    }

    pub fn point(truncation: usize) -> Self {
        Self::antidiscrete(TruncatedSSet::point(truncation))
    }

    pub fn empty(truncation: usize) -> Self {
        Self::antidiscrete(TruncatedSSet::empty(truncation))
    }

    /// The first structural map `f: m → n` and target grade at which
    /// `X(f): X(n) → X(m)` fails to be continuous.
    pub fn validate(&self) -> Option<(MonotoneMap, usize)> {
        for f in all_maps(self.truncation()) {
            let c = check_continuous(
                self.sset.table(&f),
                &self.filters[f.target() - 1],
                &self.filters[f.source() - 1],
                self.semantics,
            )
            .expect("shapes checked at construction");
            if let Some(g) = c.failing_grade {
                return Some((f, g));
            }
        }
        None
    }

    pub fn truncation(&self) -> usize {
        self.sset.truncation()
    }

    pub fn sset(&self) -> &TruncatedSSet {
        &self.sset
    }

    pub fn filter(&self, n: usize) -> &GradedFilter {
        &self.filters[n - 1]
    }

    pub fn filters(&self) -> &[GradedFilter] {
        &self.filters
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn size(&self, n: usize) -> usize {
        self.sset.size(n)
    }

    /// `S[+1]`: degree `n` is `S(n+1)` with its filter.
    pub fn shift_plus1(&self) -> Result<Situs> {
        let sset = self.sset.shift_plus1()?;
        Ok(Situs { sset, filters: self.filters[1..].to_vec(), semantics: self.semantics })
    }

    /// The counit `S[+1] → S` (target truncated to `D - 1`).
    pub fn shift_counit(&self) -> Result<SitusMorphism> {
        Ok(SitusMorphism { maps: self.sset.shift_counit()? })
    }

    pub fn truncate(&self, d: usize) -> Result<Situs> {
        Ok(Situs { sset: self.sset.truncate(d)?, filters: self.filters[..d].to_vec(), semantics: self.semantics })
    }

    /// Degree-wise product with product filters.
    pub fn product(&self, other: &Situs) -> Result<Situs> {
        let sset = self.sset.product(&other.sset)?;
        let filters = self.filters.iter().zip(&other.filters).map(|(a, b)| filter::product_filter(a, b)).collect();
        Ok(Situs { sset, filters, semantics: self.semantics })
    }

    /// Degree-wise disjoint union; grade `i` is the union of the summands'
    /// grade `i` (chains padded).
    pub fn coproduct(parts: &[&Situs]) -> Result<Situs> {
        let ssets: Vec<&TruncatedSSet> = parts.iter().map(|p| &p.sset).collect();
        let sset = TruncatedSSet::coproduct(&ssets)?;
        let filters = (1..=sset.truncation())
            .map(|n| {
                let k = parts.iter().map(|p| p.filter(n).grade_count()).max().unwrap_or(1);
                let offsets = TruncatedSSet::coproduct_offsets(&ssets, n);
                let grades = (0..k)
                    .map(|i| {
                        let mut g = BitSet::new(sset.size(n));
                        for (p, off) in parts.iter().zip(&offsets) {
                            for x in p.filter(n).grade(i).iter() {
                                g.insert(off + x);
                            }
                        }
                        g
                    })
                    .collect();
                GradedFilter::new(sset.size(n), grades).expect("sizes agree")
            })
            .collect();
        Ok(Situs { sset, filters, semantics: parts[0].semantics })
    }

    /// Relabels the degree-`n` carriers; filters and action are unchanged.
    pub fn sset_mut_labels(&mut self, labels: Vec<Vec<String>>) -> Result<()> {
        let action = self.sset.action().clone();
        self.sset = TruncatedSSet::from_parts(self.truncation(), labels, action)?;
        Ok(())
    }
}

/// Sset-morphism check plus degree-wise continuity.
pub fn check_morphism(f: &SitusMorphism, s: &Situs, t: &Situs) -> Result<Option<MorphismFailure>> {
    if s.truncation() != t.truncation() {
        return Err(domain(format!(
            "morphism between truncations {} and {}",
            s.truncation(),
            t.truncation()
        )));
    }
    if let Some((map, simplex)) = s.sset.morphism_failure(&f.maps, &t.sset)? {
        return Ok(Some(MorphismFailure::NotSimplicial { map, simplex }));
    }
    for n in 1..=s.truncation() {
        let c = check_continuous(&f.maps[n - 1], s.filter(n), t.filter(n), s.semantics)?;
        if let Some(grade) = c.failing_grade {
            return Ok(Some(MorphismFailure::NotContinuous { degree: n, grade }));
        }
    }
    Ok(None)
}

pub fn is_morphism(f: &SitusMorphism, s: &Situs, t: &Situs) -> bool {
    matches!(check_morphism(f, s, t), Ok(None))
}

/// Continuity only, for maps already known to be simplicial.
pub fn is_continuous_morphism(f: &SitusMorphism, s: &Situs, t: &Situs) -> bool {
    (1..=s.truncation()).all(|n| is_continuous(&f.maps[n - 1], s.filter(n), t.filter(n)))
}

/// The degree-wise maps of a representable source determined by a map of
/// points into a representable target: `(x_1..x_n) ↦ (g(x_1)..g(x_n))`.
pub fn tuple_map(src_points: usize, tgt_points: usize, g: &[usize], truncation: usize) -> SitusMorphism {
    SitusMorphism {
        maps: (1..=truncation)
            .map(|n| {
                all_tuples(n, src_points)
                    .iter()
                    .map(|t| t.iter().fold(0, |acc, &x| acc * tgt_points + g[x]))
                    .collect()
            })
            .collect(),
    }
}

/// `M_mi`: `n ↦ Mⁿ`; grade `i` in degree `n` is the tuples pairwise within
/// `ε_i` (strictly).
pub fn embed_metric(m: &FiniteMetricSpace, truncation: usize) -> Situs {
    let sset = TruncatedSSet::representable(m.labels(), truncation);
    let filters = (1..=truncation)
        .map(|n| {
            let tuples = all_tuples(n, m.len());
            let grades = m
                .grid()
                .iter()
                .map(|e| {
                    BitSet::from_iter(
                        tuples.len(),
                        (0..tuples.len()).filter(|&k| {
                            let t = &tuples[k];
                            t.iter().all(|&a| t.iter().all(|&b| m.dist(a, b) < *e))
                        }),
                    )
                })
                .collect();
            GradedFilter::new(tuples.len(), grades).expect("sizes agree")
        })
        .collect();
    Situs { sset, filters, semantics: Semantics::Graded }
}

/// `X_pa`: degree 1 antidiscrete, degree 2 principal at `⋃_x {x} × U_x`,
/// degree `n ≥ 3` the tuples whose consecutive pairs lie in that set.
pub fn embed_top(x: &FiniteTopSpace, truncation: usize) -> Situs {
    let sset = TruncatedSSet::representable(x.labels(), truncation);
    let filters = (1..=truncation)
        .map(|n| {
            let tuples = all_tuples(n, x.len());
            if n == 1 {
                return GradedFilter::antidiscrete(tuples.len());
            }
            let small = BitSet::from_iter(
                tuples.len(),
                (0..tuples.len()).filter(|&k| tuples[k].windows(2).all(|w| x.minimal_open(w[0]).contains(w[1]))),
            );
            GradedFilter::new(tuples.len(), vec![small]).expect("sizes agree")
        })
        .collect();
    Situs { sset, filters, semantics: Semantics::Graded }
}

/// Recovers a finite topological space. Points are the elements of every
/// degree-1 grade; a set `U` of points is a generator when some degree-2
/// grade `ε` satisfies: for `x ∈ ε` with both vertices points, `x[1] ∈ U`
/// implies `x[2] ∈ U`.
pub fn topologise(s: &Situs) -> Result<FiniteTopSpace> {
    let x = s.sset();
    let points = s.filter(1).minimal().clone();
    let pts: Vec<usize> = points.to_vec();
    let labels: Vec<String> = pts.iter().map(|&p| x.labels(1)[p].clone()).collect();
    let k = pts.len();
    if k > 16 {
        return Err(Error::Size { what: "topologise", bound: 1u128 << k, limit: 1 << 16 });
    }
    let local: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut generators = Vec::new();
    if s.truncation() >= 2 {
        let (v0, v1) = (x.table(&MonotoneMap::vertex(0, 2)), x.table(&MonotoneMap::vertex(1, 2)));
        for grade in s.filter(2).grades() {
            let edges: Vec<(usize, usize)> = grade
                .iter()
                .filter_map(|e| Some((*local.get(&v0[e])?, *local.get(&v1[e])?)))
                .collect();
            for mask in 0u32..(1u32 << k) {
                if edges.iter().all(|&(a, b)| mask & (1 << a) == 0 || mask & (1 << b) != 0) {
                    generators.push(BitSet::from_iter(k, (0..k).filter(|&i| mask & (1 << i) != 0)));
                }
            }
        }
    } else {
        generators.extend((0..k).map(|i| BitSet::singleton(k, i)));
    }
    FiniteTopSpace::generated_by(labels, &generators)
}

/// `F_diag`: `n ↦ Cⁿ`, grade `i` in degree `n` is the diagonal over `B_i`.
pub fn embed_diag(points: &[String], f: &GradedFilter, truncation: usize) -> Result<Situs> {
    embed_tuples(points, f, truncation, |t, g| t.iter().all(|&x| x == t[0] && g.contains(x)))
}

/// `F_cart`: grade-wise `n`-fold products.
pub fn embed_cart(points: &[String], f: &GradedFilter, truncation: usize) -> Result<Situs> {
    embed_tuples(points, f, truncation, |t, g| t.iter().all(|&x| g.contains(x)))
}

fn embed_tuples(
    points: &[String],
    f: &GradedFilter,
    truncation: usize,
    member: impl Fn(&[usize], &BitSet) -> bool,
) -> Result<Situs> {
    if points.len() != f.size() {
        return Err(domain("labels do not match the filter's carrier"));
    }
    let sset = TruncatedSSet::representable(points, truncation);
    let filters = (1..=truncation)
        .map(|n| {
            let tuples = all_tuples(n, points.len());
            let grades = f
                .grades()
                .iter()
                .map(|g| BitSet::from_iter(tuples.len(), (0..tuples.len()).filter(|&k| member(&tuples[k], g))))
                .collect();
            GradedFilter::new(tuples.len(), grades).expect("sizes agree")
        })
        .collect();
    Ok(Situs { sset, filters, semantics: Semantics::Graded })
}

/// `F_const`: the constant simplicial set on the carrier with `F` in every degree.
pub fn embed_const(points: &[String], f: &GradedFilter, truncation: usize) -> Result<Situs> {
    if points.len() != f.size() {
        return Err(domain("labels do not match the filter's carrier"));
    }
    let sset = TruncatedSSet::constant(points, truncation);
    Ok(Situs { sset, filters: vec![f.clone(); truncation], semantics: Semantics::Graded })
}

/// Every degree filter is invariant under permuting tuple coordinates.
/// Defined only for representable underlying ssets.
pub fn is_symmetric(s: &Situs) -> Result<bool> {
    let x = s.sset();
    if !x.is_representable() {
        return Err(Error::Unsupported(String::from("symmetry is defined for representable ssets only")));
    }
    for n in 2..=s.truncation() {
        let index: BTreeMap<Vec<usize>, usize> = (0..x.size(n)).map(|e| (x.vertices(n, e), e)).collect();
        let perms = permutations(n);
        for grade in s.filter(n).grades() {
            for p in &perms {
                for e in grade.iter() {
                    let v = x.vertices(n, e);
                    let w: Vec<usize> = p.iter().map(|&i| v[i]).collect();
                    if !grade.contains(index[&w]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};
    use crate::simplicial::tuple_index;

    fn two_points() -> FiniteMetricSpace {
        let l = vec![String::from("a"), String::from("b")];
        FiniteMetricSpace::new(l, vec![vec![q(0), q(1)], vec![q(1), q(0)]], vec![q(2), qr(1, 2)]).unwrap()
    }

    #[test]
    fn metric_grades() {
        let s = embed_metric(&two_points(), 3);
        assert_eq!(s.filter(2).grades()[0], BitSet::full(4));
        assert_eq!(s.filter(2).grades()[1].to_vec(), [0, 3]);
        assert!(s.validate().is_none());
        assert!(is_symmetric(&s).unwrap());
    }

    #[test]
    fn sierpinski_situs() {
        let s = embed_top(&FiniteTopSpace::sierpinski(), 3);
        let min: Vec<&str> = s.filter(2).minimal().iter().map(|e| s.sset().labels(2)[e].as_str()).collect();
        assert_eq!(min, ["(0,0)", "(0,1)", "(1,1)"]);
        assert!(s.validate().is_none());
        assert!(!is_symmetric(&s).unwrap());
        assert_eq!(topologise(&s).unwrap(), FiniteTopSpace::sierpinski());
    }

    #[test]
    fn diag_and_cart() {
        let pts = vec![String::from("0"), String::from("1")];
        let f = GradedFilter::principal(BitSet::singleton(2, 0));
        let d = embed_diag(&pts, &f, 3).unwrap();
        let c = embed_cart(&pts, &f, 3).unwrap();
        assert_eq!(d.filter(2).grades()[0].to_vec(), [0, 3]);
        assert_eq!(d.filter(2).grades()[1].to_vec(), [0]);
        assert_eq!(c.filter(2).grades()[0], BitSet::full(4));
        assert_eq!(c.filter(2).grades()[1].to_vec(), [0]);
        assert!(d.validate().is_none() && c.validate().is_none());
        assert!(embed_const(&pts, &f, 3).unwrap().validate().is_none());
    }

    #[test]
    fn broken_degeneracy_is_reported() {
        // Degree 2 demands the single pair (a, b), but the degeneracy sends
        // (a) to (a, a).
        let s = embed_metric(&two_points(), 2);
        let ab = tuple_index(&[0, 1], 2);
        let mut filters = s.filters().to_vec();
        filters[1] = GradedFilter::new(4, vec![BitSet::singleton(4, ab)]).unwrap();
        let bad = Situs::from_parts(s.sset().clone(), filters, Semantics::Graded).unwrap();
        let (f, _) = bad.validate().expect("invalid");
        assert_eq!((f.source(), f.target()), (2, 1));
    }

    #[test]
    fn identity_and_swap_morphisms() {
        let m = embed_metric(&two_points(), 3);
        assert!(is_morphism(&SitusMorphism::identity(&m), &m, &m));
        let swap = tuple_map(2, 2, &[1, 0], 3);
        assert!(is_morphism(&swap, &m, &m));
        let s = embed_top(&FiniteTopSpace::sierpinski(), 3);
        assert!(!is_morphism(&swap, &s, &s));
    }
}
