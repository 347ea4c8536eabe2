//! Sequences and families of functions: Cauchy sequences and limits as
//! factorizations through `[+1]`, completeness as a lifting property,
//! equicontinuity modes and the Arzela-Ascoli diagram checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::filter::GradedFilter;
use crate::lifting::{all_lifts, lifts, Arrow, LiftingProblem};
use crate::set::BitSet;
use crate::simplicial::{numbered, tuple_index};
use crate::situs::{check_morphism, is_continuous_morphism, embed_cart, embed_diag, embed_metric, embed_top, tuple_map, Situs, SitusMorphism};
use crate::space::FiniteMetricSpace;

/// How the tail filter on indices is spread over degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// grades `{(i, …, i) : i ∈ T}`
    Diag,
    /// grades `Tⁿ`
    Cart,
    /// the constant simplicial set with `T` in every degree
    Const,
}

/// `{0..N}` with tail grades `T_i = {i..N}`, down to tails of `min_tail`
/// elements. A finite stand-in for the cofinite filter on ℕ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceTower {
    horizon: usize,
    min_tail: usize,
}

impl SequenceTower {
    /// Tails down to `{N − 1, N}`. With single-point tails every sequence
    /// would converge to its last term.
    pub fn new(horizon: usize) -> Self {
        SequenceTower { horizon, min_tail: 2.min(horizon + 1) }
    }

    pub fn with_min_tail(horizon: usize, min_tail: usize) -> Result<Self> {
        if min_tail == 0 || min_tail > horizon + 1 {
            return Err(domain(format!("minimal tail {min_tail} for horizon {horizon}")));
        }
        Ok(SequenceTower { horizon, min_tail })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn min_tail(&self) -> usize {
        self.min_tail
    }

    pub fn len(&self) -> usize {
        self.horizon + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tails(&self) -> Vec<BitSet> {
        let n = self.len();
        (0..=n - self.min_tail).map(|i| BitSet::from_iter(n, i..n)).collect()
    }

    pub fn minimal_tail(&self) -> BitSet {
        self.tails().pop().expect("nonempty chain")
    }

    pub fn filter(&self) -> GradedFilter {
        GradedFilter::new(self.len(), self.tails()).expect("descending tails")
    }

    pub fn situs(&self, flavor: Flavor, truncation: usize) -> Situs {
        let pts = numbered(self.len());
        let f = self.filter();
        match flavor {
            Flavor::Diag => embed_diag(&pts, &f, truncation),
            Flavor::Cart => embed_cart(&pts, &f, truncation),
            Flavor::Const => crate::situs::embed_const(&pts, &f, truncation),
        }
        .expect("labels match")
    }
}

fn check_sequence(a: &[usize], m: &FiniteMetricSpace, tower: &SequenceTower) -> Result<()> {
    if a.len() != tower.len() {
        return Err(domain(format!("sequence of length {} for horizon {}", a.len(), tower.horizon())));
    }
    if a.iter().any(|&v| v >= m.len()) {
        return Err(domain("sequence leaves the space"));
    }
    Ok(())
}

/// `(i_1..i_n) ↦ (a_{i_1}..a_{i_n})` is a morphism from the Cartesian tower.
pub fn is_cauchy(a: &[usize], m: &FiniteMetricSpace, tower: &SequenceTower, truncation: usize) -> Result<bool> {
    check_sequence(a, m, tower)?;
    let src = tower.situs(Flavor::Cart, truncation);
    let tgt = embed_metric(m, truncation);
    let f = tuple_map(tower.len(), m.len(), a, truncation);
    Ok(check_morphism(&f, &src, &tgt)?.is_none())
}

/// `M_mi[+1] → M_mi` in truncation `d`.
pub fn metric_counit(m: &FiniteMetricSpace, truncation: usize) -> Result<Arrow> {
    let up = embed_metric(m, truncation + 1);
    Ok(Arrow { source: up.shift_plus1()?, target: embed_metric(m, truncation), map: up.shift_counit()? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    /// lexicographically first limit
    pub limit: Option<usize>,
    /// every point the sequence converges to
    pub all: Vec<usize>,
}

/// Limits as lifts of `∅ → tower` against `M_mi[+1] → M_mi` under the
/// sequence: the lift is `(i_1..i_n) ↦ (a_∞, a_{i_1}..a_{i_n})`.
pub fn find_limit(
    a: &[usize],
    m: &FiniteMetricSpace,
    tower: &SequenceTower,
    truncation: usize,
    max_candidates: u64,
) -> Result<Limit> {
    check_sequence(a, m, tower)?;
    let b = tower.situs(Flavor::Cart, truncation);
    let p = metric_counit(m, truncation)?;
    let i = Arrow::from_empty(b);
    let g = tuple_map(tower.len(), m.len(), a, truncation);
    let f = SitusMorphism::new(vec![Vec::new(); truncation]);
    let prob = LiftingProblem { i: &i, p: &p, f: &f, g: &g };
    let hs = all_lifts(&prob, max_candidates, m.len().max(1))?;
    let mut all: Vec<usize> = hs.iter().map(|h| h.at(1)[0] / m.len()).collect();
    all.sort_unstable();
    all.dedup();
    Ok(Limit { limit: all.first().copied(), all })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub holds: bool,
    /// index of the first Cauchy sequence without a limit
    pub first_failure: Option<usize>,
    /// how many of the supplied sequences were Cauchy
    pub cauchy: usize,
}

/// Every supplied Cauchy sequence has a limit.
pub fn check_completeness_lift(
    m: &FiniteMetricSpace,
    sequences: &[Vec<usize>],
    tower: &SequenceTower,
    truncation: usize,
    max_candidates: u64,
) -> Result<Completeness> {
    let mut cauchy = 0;
    for (k, a) in sequences.iter().enumerate() {
        if !is_cauchy(a, m, tower, truncation)? {
            continue;
        }
        cauchy += 1;
        if find_limit(a, m, tower, truncation, max_candidates)?.limit.is_none() {
            return Ok(Completeness { holds: false, first_failure: Some(k), cauchy });
        }
    }
    Ok(Completeness { holds: true, first_failure: None, cauchy })
}

/// Maps `f_i` from points of `X` to points of `M`, `i = 0..N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFamily {
    pub maps: Vec<Vec<usize>>,
}

impl FunctionFamily {
    pub fn new(maps: Vec<Vec<usize>>, x_points: usize, m_points: usize) -> Result<Self> {
        if maps.is_empty() {
            return Err(domain("empty family"));
        }
        if maps.iter().any(|f| f.len() != x_points || f.iter().any(|&v| v >= m_points)) {
            return Err(domain("family member is not a map between the given spaces"));
        }
        Ok(FunctionFamily { maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

fn decode(mut k: usize, len: usize, base: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = k % base;
        k /= base;
    }
    t
}

/// `(x_0..x_n) × (i_1..i_n) ↦ (f_∞(x_0), f_{i_1}(x_1)..f_{i_n}(x_n))`, with
/// `x_0` present when `f_inf` is given. The source is a product of a
/// (possibly shifted) representable situs over `X` and an index situs; the
/// index situs is representable over `0..N` or constant.
fn family_morphism(
    family: &FunctionFamily,
    f_inf: Option<&[usize]>,
    x_points: usize,
    m_points: usize,
    index: &Situs,
    index_const: bool,
    truncation: usize,
) -> SitusMorphism {
    let shift = usize::from(f_inf.is_some());
    let ni = family.len();
    let maps = (1..=truncation)
        .map(|n| {
            let xs_count = x_points.pow((n + shift) as u32);
            let is_count = index.size(n);
            let mut out = vec![0; xs_count * is_count];
            for a in 0..xs_count {
                let xs = decode(a, n + shift, x_points);
                for b in 0..is_count {
                    let is = if index_const { vec![b; n] } else { decode(b, n, ni) };
                    let mut img = Vec::with_capacity(n + shift);
                    if let Some(g) = f_inf {
                        img.push(g[xs[0]]);
                    }
                    for k in 0..n {
                        img.push(family.maps[is[k]][xs[shift + k]]);
                    }
                    out[a * is_count + b] = tuple_index(&img, m_points);
                }
            }
            out
        })
        .collect();
    SitusMorphism::new(maps)
}

/// `(x_1..x_n) × (indices) ↦ (f_{i_1}(x_1)..)` is a morphism
/// `source × tower_flavor → target`. The source is `X_pa` or `X_mi`
/// (representable over the points of `X`), the target `M_mi`.
pub fn check_family(
    family: &FunctionFamily,
    source: &Situs,
    target: &Situs,
    tower: &SequenceTower,
    flavor: Flavor,
) -> Result<bool> {
    FamilyChecker::new(source, target, tower, flavor)?.check(family)
}

/// [`check_family`] with the product situs built once, for sweeps over many
/// families. The simplicial part of the map holds by construction, so only
/// continuity is checked.
pub struct FamilyChecker<'a> {
    source: Situs,
    target: &'a Situs,
    index: Situs,
    flavor: Flavor,
    len: usize,
}

impl<'a> FamilyChecker<'a> {
    pub fn new(source: &Situs, target: &'a Situs, tower: &SequenceTower, flavor: Flavor) -> Result<Self> {
        let d = source.truncation();
        let index = tower.situs(flavor, d);
        Ok(FamilyChecker { source: source.product(&index)?, target, index, flavor, len: tower.len() })
    }

    pub fn check(&self, family: &FunctionFamily) -> Result<bool> {
        if family.len() != self.len {
            return Err(domain("family length does not match the tower"));
        }
        let d = self.source.truncation();
        let nx = self.source.size(1) / self.index.size(1);
        let f = family_morphism(family, None, nx, self.target.size(1), &self.index, self.flavor == Flavor::Const, d);
        Ok(is_continuous_morphism(&f, &self.source, self.target))
    }
}

/// The square with top row `X[+1] × I → M_mi[+1]`,
/// `(x_0, x_1..x_n, i_1..i_n) ↦ (f_∞(x_0), f_{i_1}(x_1)..)`, is well defined.
/// `source_up` is the source situs in truncation `d + 1`.
pub fn check_convergence_square(
    family: &FunctionFamily,
    f_inf: &[usize],
    source_up: &Situs,
    m: &FiniteMetricSpace,
    index: &Situs,
) -> Result<bool> {
    let d = index.truncation();
    if source_up.truncation() != d + 1 {
        return Err(domain("source must be given one truncation up"));
    }
    let (nx, nm) = (source_up.size(1), m.len());
    if f_inf.len() != nx || f_inf.iter().any(|&v| v >= nm) {
        return Err(domain("limit candidate is not a map X → M"));
    }
    let src = source_up.shift_plus1()?.product(index)?;
    let tgt = embed_metric(m, d + 1).shift_plus1()?;
    let f = family_morphism(family, Some(f_inf), nx, nm, index, false, d);
    Ok(check_morphism(&f, &src, &tgt)?.is_none())
}

/// Uniform convergence of the family to `f_inf` with the diagonal tower.
pub fn check_uniform_convergence(
    family: &FunctionFamily,
    f_inf: &[usize],
    x: &FiniteMetricSpace,
    m: &FiniteMetricSpace,
    tower: &SequenceTower,
    truncation: usize,
) -> Result<bool> {
    check_convergence_square(family, f_inf, &embed_metric(x, truncation + 1), m, &tower.situs(Flavor::Diag, truncation))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformLimit {
    /// family index of the first member that is a uniform limit
    pub limit: Option<usize>,
    /// every member of the menu that is one
    pub all: Vec<usize>,
}

/// Candidates are the members indexed by the minimal tail.
pub fn find_uniform_limit(
    family: &FunctionFamily,
    x: &FiniteMetricSpace,
    m: &FiniteMetricSpace,
    tower: &SequenceTower,
    truncation: usize,
) -> Result<UniformLimit> {
    let mut all = Vec::new();
    let mut seen: Vec<&Vec<usize>> = Vec::new();
    for j in tower.minimal_tail().iter() {
        let g = &family.maps[j];
        if seen.contains(&g) {
            continue;
        }
        seen.push(g);
        if check_uniform_convergence(family, g, x, m, tower, truncation)? {
            all.push(j);
        }
    }
    Ok(UniformLimit { limit: all.first().copied(), all })
}

/// The principal ultrafilter at index `j`, spread diagonally.
fn principal_index(n: usize, j: usize, truncation: usize) -> Situs {
    embed_diag(&numbered(n), &GradedFilter::principal(BitSet::singleton(n, j)), truncation).expect("labels match")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Implication {
    /// premise and conclusion hold
    Witnessed,
    /// premise fails
    Vacuous,
    /// premise holds, conclusion fails
    Violated,
}

impl Implication {
    fn of(premise: bool, conclusion: bool) -> Self {
        match (premise, conclusion) {
            (false, _) => Implication::Vacuous,
            (true, true) => Implication::Witnessed,
            (true, false) => Implication::Violated,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Implication::Witnessed => "witnessed",
            Implication::Vacuous => "vacuous",
            Implication::Violated => "violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArzelaAscoliReport {
    /// every principal ultrafilter on `X` converges in `X_mi`
    pub x_compact: bool,
    /// `∅ → u_cart ⋔ M_mi[+1] → M_mi` for every principal ultrafilter `u`
    pub m_complete: bool,
    /// per point of `X`, a tail index `j` whose principal ultrafilter makes
    /// the pointwise square commute
    pub pointwise_precompact: Vec<Option<usize>>,
    /// `X_pa × tower_diag → M_mi`, `X_pa` from the grid-ball topology
    pub equicontinuous: bool,
    /// `X_mi × tower_diag → M_mi`
    pub uniformly_equicontinuous: bool,
    /// a member to which the family converges uniformly
    pub uniform_convergence: Option<usize>,
    /// a tail index `j` and member `f_∞` witnessing a convergent subsequence
    pub subsequence: Option<(usize, usize)>,
    pub statement_i: bool,
    pub statement_ii: bool,
    pub statement_iii: bool,
    /// equicontinuous implies uniformly equicontinuous, on this instance
    pub eq_implies_ueq: Implication,
    /// `(label, status)` for the implications among (i), (ii), (iii)
    pub implications: Vec<(&'static str, Implication)>,
}

pub fn arzela_ascoli_report(
    x: &FiniteMetricSpace,
    m: &FiniteMetricSpace,
    family: &FunctionFamily,
    tower: &SequenceTower,
    truncation: usize,
    max_candidates: u64,
) -> Result<ArzelaAscoliReport> {
    let d = truncation;
    if d < 2 {
        return Err(Error::DegreeBudget { needed: 2, available: d });
    }
    if family.len() != tower.len() {
        return Err(domain("family length does not match the tower"));
    }
    let x_mi = embed_metric(x, d);
    let x_compact = crate::lifting::quasi_compact_concise(&x_mi, max_candidates)?.holds();

    let counit = metric_counit(m, d - 1)?;
    let mut m_complete = true;
    for u in 0..m.len() {
        let uc = embed_cart(m.labels(), &GradedFilter::principal(BitSet::singleton(m.len(), u)), d - 1)?;
        if !lifts(&Arrow::from_empty(uc), &counit, max_candidates)? {
            m_complete = false;
            break;
        }
    }

    let m_mi = embed_metric(m, d);
    let x_pa = embed_top(&x.grid_topology(), d);
    let equicontinuous = check_family(family, &x_pa, &m_mi, tower, Flavor::Diag)?;
    let uniformly_equicontinuous = check_family(family, &x_mi, &m_mi, tower, Flavor::Diag)?;
    let uniform_convergence = find_uniform_limit(family, x, m, tower, d)?.limit;

    let x_disc_up = embed_diag(x.labels(), &GradedFilter::antidiscrete(x.len()), d + 1)?;
    let x_mi_up = embed_metric(x, d + 1);
    let tail = tower.minimal_tail();
    let mut pointwise_precompact = Vec::with_capacity(x.len());
    for xi in 0..x.len() {
        let mut found = None;
        'tail: for j in tail.iter() {
            let idx = principal_index(tower.len(), j, d);
            for g in &family.maps {
                if g[xi] != family.maps[j][xi] {
                    continue;
                }
                if check_convergence_square(family, g, &x_disc_up, m, &idx)? {
                    found = Some(j);
                    break 'tail;
                }
            }
        }
        pointwise_precompact.push(found);
    }
    let mut subsequence = None;
    'sub: for j in tail.iter() {
        let idx = principal_index(tower.len(), j, d);
        for (k, g) in family.maps.iter().enumerate() {
            if check_convergence_square(family, g, &x_mi_up, m, &idx)? {
                subsequence = Some((j, k));
                break 'sub;
            }
        }
    }

    let precompact = pointwise_precompact.iter().all(Option::is_some);
    let statement_i = subsequence.is_some() && uniformly_equicontinuous;
    let statement_ii = precompact && equicontinuous;
    let statement_iii = precompact && uniformly_equicontinuous;
    let implications = vec![
        ("i=>ii", Implication::of(statement_i, statement_ii)),
        ("ii=>iii", Implication::of(statement_ii, statement_iii)),
        ("iii=>i", Implication::of(statement_iii, statement_i)),
        ("ii=>i", Implication::of(statement_ii, statement_i)),
        ("iii=>ii", Implication::of(statement_iii, statement_ii)),
        ("i=>iii", Implication::of(statement_i, statement_iii)),
    ];
    Ok(ArzelaAscoliReport {
        x_compact,
        m_complete,
        pointwise_precompact,
        equicontinuous,
        uniformly_equicontinuous,
        uniform_convergence,
        subsequence,
        statement_i,
        statement_ii,
        statement_iii,
        eq_implies_ueq: Implication::of(equicontinuous, uniformly_equicontinuous),
        implications,
    })
}

/// Labels `"0".."N"` for the index carrier.
pub fn index_labels(n: usize) -> Vec<String> {
    numbered(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};
    use crate::search::DEFAULT_MAX_CANDIDATES as B;

    fn line(n: i64) -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            numbered(n as usize),
            (0..n).map(|a| (0..n).map(|b| q((a - b).abs())).collect()).collect(),
            vec![q(n + 1), qr(1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn tails() {
        let t = SequenceTower::new(4);
        assert_eq!(t.tails().len(), 4);
        assert_eq!(t.minimal_tail().to_vec(), [3, 4]);
        assert_eq!(SequenceTower::with_min_tail(4, 1).unwrap().tails().len(), 5);
    }

    #[test]
    fn eventually_constant_converges() {
        let m = line(3);
        let t = SequenceTower::new(5);
        let a = [0, 2, 1, 1, 1, 1];
        assert!(is_cauchy(&a, &m, &t, 3).unwrap());
        assert_eq!(find_limit(&a, &m, &t, 3, B).unwrap().all, [1]);
    }

    #[test]
    fn alternating_diverges() {
        let m = line(2);
        let t = SequenceTower::new(5);
        let a = [0, 1, 0, 1, 0, 1];
        assert!(!is_cauchy(&a, &m, &t, 3).unwrap());
        assert_eq!(find_limit(&a, &m, &t, 3, B).unwrap().limit, None);
        // coarse grid: every pair is small, every point is a limit
        let coarse = m.with_grid(vec![q(2)]).unwrap();
        assert!(is_cauchy(&a, &coarse, &t, 3).unwrap());
        assert_eq!(find_limit(&a, &coarse, &t, 3, B).unwrap().all, [0, 1]);
    }

    #[test]
    fn family_modes() {
        let x = line(2);
        let m = line(3);
        let t = SequenceTower::new(3);
        let fam = FunctionFamily::new(vec![vec![0, 1]; 4], 2, 3).unwrap();
        let xm = embed_metric(&x, 3);
        let mm = embed_metric(&m, 3);
        for fl in [Flavor::Const, Flavor::Diag, Flavor::Cart] {
            assert!(check_family(&fam, &xm, &mm, &t, fl).unwrap());
        }
        let jump = FunctionFamily::new(vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![2, 2]], 2, 3).unwrap();
        assert!(!check_family(&jump, &xm, &mm, &t, Flavor::Cart).unwrap());
        assert!(check_family(&jump, &xm, &mm, &t, Flavor::Diag).unwrap());
    }

    #[test]
    fn uniform_limits() {
        let x = line(2);
        let m = line(3);
        let t = SequenceTower::new(3);
        let fam = FunctionFamily::new(vec![vec![2, 2], vec![0, 0], vec![1, 1], vec![1, 1]], 2, 3).unwrap();
        assert_eq!(find_uniform_limit(&fam, &x, &m, &t, 2).unwrap().limit, Some(2));
        let osc = FunctionFamily::new(vec![vec![0, 0], vec![2, 2], vec![0, 0], vec![2, 2]], 2, 3).unwrap();
        assert_eq!(find_uniform_limit(&osc, &x, &m, &t, 2).unwrap().limit, None);
        let r = arzela_ascoli_report(&x, &m, &osc, &t, 2, B).unwrap();
        assert!(r.uniform_convergence.is_none());
        assert!(r.pointwise_precompact.iter().all(Option::is_some));
    }
}
