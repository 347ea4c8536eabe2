//! Skorokhod neighbourhoods on hom-sets, the Skorokhod mapping space, the
//! Skorokhod pseudometric on grid paths `[0,1] → (N+1)_≤` and the grid-scale
//! realisation of `Δ_N`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::filter::{normalize, preimage, GradedFilter};
use crate::num::{abs_diff, q, qr, Q};
use crate::search::MapSearch;
use crate::set::BitSet;
use crate::simplicial::{monotone_tuples, MonotoneMap, SSetMap, TruncatedSSet};
use crate::situs::Situs;
use crate::space::FiniteMetricSpace;
use crate::subdivision::{archimedean_simplices, ArchimedeanBudget};

/// Guard on hom-set enumeration.
pub const DEFAULT_HOM_LIMIT: usize = 100_000;

/// All simplicial maps between two truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub source: TruncatedSSet,
    pub target: TruncatedSSet,
    pub maps: Vec<SSetMap>,
}

impl HomSet {
    pub fn new(source: &TruncatedSSet, target: &TruncatedSSet, limit: usize) -> Result<Self> {
        let maps = MapSearch::new(source, target).named("hom-set").all(limit)?;
        Ok(HomSet { source: source.clone(), target: target.clone(), maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

fn block(start: usize, len: usize, target: usize) -> MonotoneMap {
    MonotoneMap::new(target, (start..start + len).collect()).expect("increasing")
}

/// Maps `f` in the `εδ`-neighbourhood: for every `x` in the minimal grade of
/// `X(n)` some `x' ∈ δ ⊆ X(N')` has head `x'[1..n] = x` and tail
/// `f(x'[N'−n+1..N']) ∈ ε ⊆ Y(n)`.
pub fn skorokhod_neighbourhood(
    homset: &HomSet,
    x: &Situs,
    big_n: usize,
    delta: &BitSet,
    n: usize,
    eps: &BitSet,
) -> Result<BitSet> {
    if n == 0 || big_n < 2 * n {
        return Err(domain(format!("Skorokhod neighbourhoods need N ≥ 2n > 0, got N = {big_n}, n = {n}")));
    }
    if x.sset() != &homset.source {
        return Err(domain("situs does not sit over the hom-set source"));
    }
    let d = x.truncation();
    if big_n > d || n > homset.target.truncation() {
        return Err(Error::DegreeBudget { needed: big_n, available: d });
    }
    if delta.universe() != x.size(big_n) || eps.universe() != homset.target.size(n) {
        return Err(domain("δ or ε lives on the wrong carrier"));
    }
    Ok(neighbourhood(&homset.maps, x, big_n, delta, n, eps))
}

fn neighbourhood(maps: &[SSetMap], x: &Situs, big_n: usize, delta: &BitSet, n: usize, eps: &BitSet) -> BitSet {
    let xs = x.sset();
    let head = xs.table(&block(0, n, big_n));
    let tail = xs.table(&block(big_n - n, n, big_n));
    let base = x.filter(n).minimal();
    let mut out = BitSet::new(maps.len());
    for (k, f) in maps.iter().enumerate() {
        let fn_ = &f[n - 1];
        let mut ok = BitSet::new(xs.size(n));
        for xp in delta.iter() {
            if eps.contains(fn_[tail[xp]]) {
                ok.insert(head[xp]);
            }
        }
        if base.is_subset(&ok) {
            out.insert(k);
        }
    }
    out
}

/// How the degree filters of the mapping space are built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MappingFilter {
    /// Skorokhod `εδ`-neighbourhoods over every legal `(N', n)`, grade `i`
    /// from grade `i` of `δ` and `ε`.
    #[default]
    Skorokhod,
    /// The alternative comparing `f` along pointwise-ordered vertex sequences.
    Alternative,
}

/// `Hom(X × Δ_{m−1}, Y)` in degree `m`, with `Δ_{m−1}` antidiscrete.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub situs: Situs,
    /// `homs[m-1][i]` is degree-`m` element `i`
    pub homs: Vec<Vec<SSetMap>>,
    pub source: Situs,
    pub target: Situs,
    /// a structural map failing continuity, if any (`None` after closure
    /// unless the semantics disagree with the lockstep chains)
    pub validation: Option<(MonotoneMap, usize)>,
}

fn simplex_source(x: &Situs, m: usize) -> Result<Situs> {
    x.product(&Situs::antidiscrete(TruncatedSSet::standard_simplex(m - 1, x.truncation())))
}

/// `Δθ: Δ_{m'−1} → Δ_{m−1}` in every degree up to `d`, for `θ: m' → m`.
fn simplex_action(theta: &MonotoneMap, d: usize) -> Vec<Vec<usize>> {
    let (mp, m) = (theta.source(), theta.target());
    (1..=d)
        .map(|j| {
            let index: BTreeMap<Vec<usize>, usize> =
                monotone_tuples(j, m).into_iter().enumerate().map(|(i, t)| (t, i)).collect();
            monotone_tuples(j, mp).into_iter().map(|t| index[&theta_apply(theta, &t)]).collect()
        })
        .collect()
}

fn theta_apply(theta: &MonotoneMap, t: &[usize]) -> Vec<usize> {
    t.iter().map(|&v| theta.apply(v)).collect()
}

/// Restricts `h: X × Δ_{m−1} → Y` along `θ: m' → m`.
fn restrict(h: &SSetMap, theta: &MonotoneMap, x: &TruncatedSSet) -> SSetMap {
    let d = x.truncation();
    let act = simplex_action(theta, d);
    (1..=d)
        .map(|j| {
            let (big, small) = (monotone_tuples(j, theta.target()).len(), act[j - 1].len());
            let mut out = Vec::with_capacity(x.size(j) * small);
            for a in 0..x.size(j) {
                for &tt in &act[j - 1] {
                    out.push(h[j - 1][a * big + tt]);
                }
            }
            out
        })
        .collect()
}

/// The Skorokhod mapping space in degrees `1..=degrees`. Hom-sets are
/// enumerated at the truncation of `x` and `y`, which must agree. The raw
/// neighbourhood grades are then shrunk along the structural maps, so the
/// result is the coarsest situs inside them with the same number of grades.
pub fn mapping_space(
    x: &Situs,
    y: &Situs,
    degrees: usize,
    variant: MappingFilter,
    hom_limit: usize,
) -> Result<MappingSpace> {
    let d = x.truncation();
    if y.truncation() != d {
        return Err(domain("source and target truncations differ"));
    }
    if degrees == 0 {
        return Err(domain("a mapping space needs at least one degree"));
    }
    let mut sources = Vec::with_capacity(degrees);
    let mut homs = Vec::with_capacity(degrees);
    for m in 1..=degrees {
        let s = simplex_source(x, m)?;
        let hs = MapSearch::new(s.sset(), y.sset()).named("hom-set").all(hom_limit)?;
        sources.push(s);
        homs.push(hs);
    }
    let index: Vec<BTreeMap<SSetMap, usize>> =
        homs.iter().map(|hs| hs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect()).collect();
    let mut action = BTreeMap::new();
    for theta in crate::simplicial::all_maps(degrees) {
        let (mp, m) = (theta.source(), theta.target());
        let table = homs[m - 1]
            .iter()
            .map(|h| {
                let r = restrict(h, &theta, x.sset());
                index[mp - 1].get(&r).copied().ok_or_else(|| domain("restriction left the hom-set"))
            })
            .collect::<Result<Vec<_>>>()?;
        action.insert(theta, table);
    }
    let labels = homs.iter().map(|hs| (0..hs.len()).map(|i| format!("h{i}")).collect()).collect();
    let sset = TruncatedSSet::new(degrees, labels, action)?;
    let filters = (1..=degrees)
        .map(|m| match variant {
            MappingFilter::Skorokhod => skorokhod_filter(&homs[m - 1], &sources[m - 1], y),
            MappingFilter::Alternative => alternative_filter(&homs[m - 1], x, y, m),
        })
        .collect::<Vec<_>>();
    let filters = close_under_action(&sset, filters);
    let situs = Situs::from_parts(sset, filters, x.semantics())?;
    let validation = situs.validate();
    Ok(MappingSpace { situs, homs, source: x.clone(), target: y.clone(), validation })
}

/// Shrinks grade `i` of every degree by the preimages of grade `i` in the
/// other degrees until every structural map is continuous grade by grade.
fn close_under_action(x: &TruncatedSSet, filters: Vec<GradedFilter>) -> Vec<GradedFilter> {
    let k = filters.iter().map(GradedFilter::grade_count).max().unwrap_or(1);
    let mut grades: Vec<Vec<BitSet>> = filters.iter().map(|f| f.padded(k)).collect();
    loop {
        let mut changed = false;
        for (f, table) in x.action() {
            let (m, n) = (f.source() - 1, f.target() - 1);
            for i in 0..k {
                let pre = preimage(table, &grades[m][i]);
                if !grades[n][i].is_subset(&pre) {
                    grades[n][i].intersect_with(&pre);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    grades
        .into_iter()
        .enumerate()
        .map(|(d, gs)| GradedFilter::new(x.size(d + 1), gs).expect("sizes agree"))
        .collect()
}

fn skorokhod_filter(maps: &[SSetMap], src: &Situs, y: &Situs) -> GradedFilter {
    let d = src.truncation();
    let legal: Vec<(usize, usize)> =
        (1..=d).flat_map(|n| (2 * n..=d).map(move |big| (big, n))).collect();
    if legal.is_empty() {
        return GradedFilter::antidiscrete(maps.len());
    }
    let k = legal
        .iter()
        .map(|&(big, n)| src.filter(big).grade_count().max(y.filter(n).grade_count()))
        .max()
        .unwrap_or(1);
    let grades: Vec<BitSet> = (0..k)
        .map(|i| {
            let mut g = BitSet::full(maps.len());
            for &(big, n) in &legal {
                g.intersect_with(&neighbourhood(maps, src, big, src.filter(big).grade(i), n, y.filter(n).grade(i)));
            }
            g
        })
        .collect();
    GradedFilter::new(maps.len(), normalize(&grades)).expect("sizes agree")
}

/// For every degree `j`, grade `i` keeps the maps `h` such that whenever `h`
/// sends `δ × {t}` into `ε` it also sends `δ × {s}` into `ε`, for all vertex
/// sequences `t ≤ s` pointwise; `δ`, `ε` are grade `i` in degree `j`.
fn alternative_filter(maps: &[SSetMap], x: &Situs, y: &Situs, m: usize) -> GradedFilter {
    let d = x.truncation();
    let k = (1..=d).map(|j| x.filter(j).grade_count().max(y.filter(j).grade_count())).max().unwrap_or(1);
    let grades: Vec<BitSet> = (0..k)
        .map(|i| {
            let mut g = BitSet::new(maps.len());
            'maps: for (hi, h) in maps.iter().enumerate() {
                for j in 1..=d {
                    let (delta, eps) = (x.filter(j).grade(i), y.filter(j).grade(i));
                    let ts = monotone_tuples(j, m);
                    let sends = |t: usize| delta.iter().all(|a| eps.contains(h[j - 1][a * ts.len() + t]));
                    for (ti, t) in ts.iter().enumerate() {
                        if !sends(ti) {
                            continue;
                        }
                        for (si, s) in ts.iter().enumerate() {
                            if t.iter().zip(s).all(|(a, b)| a <= b) && !sends(si) {
                                continue 'maps;
                            }
                        }
                    }
                }
                g.insert(hi);
            }
            g
        })
        .collect();
    GradedFilter::new(maps.len(), normalize(&grades)).expect("sizes agree")
}

impl MappingSpace {
    /// `ev(φ): A × X → Y`, `(a, x) ↦ φ(a)(x, id)` in every degree up to the
    /// truncation of `X`, for `φ: A → Hom(X, Y)` (degrees of `A` beyond the
    /// mapping space are not used).
    pub fn evaluate(&self, a: &TruncatedSSet, phi: &SSetMap) -> Result<SSetMap> {
        let d = self.source.truncation();
        if self.homs.len() < d {
            return Err(Error::DegreeBudget { needed: d, available: self.homs.len() });
        }
        let xs = self.source.sset();
        Ok((1..=d)
            .map(|n| {
                let simplices = monotone_tuples(n, n);
                let id = simplices.iter().position(|t| t.iter().enumerate().all(|(i, &v)| i == v)).expect("identity");
                let mut out = Vec::with_capacity(a.size(n) * xs.size(n));
                for ai in 0..a.size(n) {
                    let h = &self.homs[n - 1][phi[n - 1][ai]];
                    for xi in 0..xs.size(n) {
                        out.push(h[n - 1][xi * simplices.len() + id]);
                    }
                }
                out
            })
            .collect())
    }

    /// Degree-1 element `f` as a plain map `X → Y`.
    pub fn as_map(&self, f: usize) -> SSetMap {
        self.homs[0][f].clone()
    }

    /// Degree-1 elements whose underlying map is `f`.
    pub fn find(&self, f: &SSetMap) -> Option<usize> {
        self.homs[0].iter().position(|h| h == f)
    }
}

/// Whether the degree-2 element `e` is Archimedean in the mapping space.
pub fn skorokhod_homotopic(space: &MappingSpace, e: usize, budget: ArchimedeanBudget) -> Result<bool> {
    if space.homs.len() < 2 || e >= space.homs[1].len() {
        return Err(domain("not a degree-2 element of the mapping space"));
    }
    Ok(archimedean_simplices(&space.situs, budget)?[1].contains(e))
}

/// Some degree-2 element from `f` to `g` is Archimedean.
pub fn skorokhod_homotopic_pair(space: &MappingSpace, f: usize, g: usize, budget: ArchimedeanBudget) -> Result<bool> {
    if space.homs.len() < 2 {
        return Err(Error::DegreeBudget { needed: 2, available: space.homs.len() });
    }
    let arch = archimedean_simplices(&space.situs, budget)?;
    let x = space.situs.sset();
    Ok((0..x.size(2)).any(|e| x.vertex(2, e, 0) == f && x.vertex(2, e, 1) == g && arch[1].contains(e)))
}

/// A non-decreasing map `{0, 1/k, …, 1} → (N+1)_≤`, stored by its jump
/// coordinates `0 ≤ s_1 ≤ … ≤ s_N ≤ k` (in grid units). The path takes
/// value `v` on `[s_v, s_{v+1})` and `N` on `[s_N, 1]`; at a jump point it
/// admits every value whose closed interval `[s_v, s_{v+1}]` contains it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPath {
    grid: usize,
    jumps: Vec<usize>,
}

impl GridPath {
    pub fn new(grid: usize, jumps: Vec<usize>) -> Result<Self> {
        if grid == 0 {
            return Err(domain("grid size must be positive"));
        }
        if jumps.windows(2).any(|w| w[0] > w[1]) || jumps.iter().any(|&s| s > grid) {
            return Err(domain("jump coordinates must be non-decreasing within the grid"));
        }
        Ok(GridPath { grid, jumps })
    }

    /// From the values at the grid points; the last value must be `N`.
    pub fn from_values(values: &[usize], top: usize) -> Result<Self> {
        if values.len() < 2 || values.windows(2).any(|w| w[0] > w[1]) || values.last() != Some(&top) {
            return Err(domain("values must be non-decreasing and end at the top vertex"));
        }
        let jumps = (1..=top).map(|j| values.iter().position(|&v| v >= j).expect("reaches top")).collect();
        GridPath::new(values.len() - 1, jumps)
    }

    /// Parses `"s1,..,sN"` with rationals that must sit on the grid.
    pub fn parse(grid: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let jumps = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|part| {
                    let v = crate::num::parse_q(part)? * q(grid as i64);
                    if !v.is_integer() || v < q(0) {
                        return Err(domain(format!("jump {part:?} is not on the 1/{grid} grid")));
                    }
                    Ok(v.to_integer() as usize)
                })
                .collect::<Result<Vec<_>>>()?
        };
        GridPath::new(grid, jumps)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn top(&self) -> usize {
        self.jumps.len()
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn jump_coordinates(&self) -> Vec<Q> {
        self.jumps.iter().map(|&s| qr(s as i64, self.grid as i64)).collect()
    }

    /// `#{j : s_j ≤ t}`.
    pub fn value(&self, t: usize) -> usize {
        self.jumps.iter().filter(|&&s| s <= t).count()
    }

    /// `s_v ≤ t ≤ s_{v+1}` with `s_0 = 0`, `s_{N+1} = k`.
    pub fn admits(&self, t: usize, v: usize) -> bool {
        if v > self.top() {
            return false;
        }
        let lo = if v == 0 { 0 } else { self.jumps[v - 1] };
        let hi = if v == self.top() { self.grid } else { self.jumps[v] };
        lo <= t && t <= hi
    }

    /// All paths into `(N+1)_≤` on the grid, lexicographic by jumps.
    pub fn all(top: usize, grid: usize) -> Vec<GridPath> {
        monotone_tuples(top, grid + 1).into_iter().map(|jumps| GridPath { grid, jumps }).collect()
    }
}

fn check_pair(f: &GridPath, g: &GridPath) -> Result<()> {
    if f.grid != g.grid || f.top() != g.top() {
        return Err(domain("paths on different grids or into different simplices"));
    }
    Ok(())
}

fn jump_distance(f: &GridPath, g: &GridPath) -> Q {
    let m = f.jumps.iter().zip(&g.jumps).map(|(&a, &b)| a.abs_diff(b)).max().unwrap_or(0);
    qr(m as i64, f.grid as i64)
}

/// `max_j |s_j(f) − s_j(g)|`; checks the pair first.
pub fn jump_metric(f: &GridPath, g: &GridPath) -> Result<Q> {
    check_pair(f, g)?;
    Ok(jump_distance(f, g))
}

/// The least grid `ε` such that for every grid vector `t_1 ≤ … ≤ t_n`,
/// `n ≤ N + 1`, and every value vector `f` admits along it, some grid vector
/// `t'` along which `g` admits the same values has `|t_i − t'_i| ≤ ε`. This
/// is the infimum of the strict-inequality condition.
pub fn skorokhod_distance(f: &GridPath, g: &GridPath) -> Result<Q> {
    check_pair(f, g)?;
    let (k, top) = (f.grid, f.top());
    let mut worst = 0usize;
    for n in 1..=top + 1 {
        let ts = monotone_tuples(n, k + 1);
        for t in &ts {
            for v in monotone_tuples(n, top + 1) {
                if !t.iter().zip(&v).all(|(&ti, &vi)| f.admits(ti, vi)) {
                    continue;
                }
                let mut best = usize::MAX;
                for tp in &ts {
                    if !tp.iter().zip(&v).all(|(&ti, &vi)| g.admits(ti, vi)) {
                        continue;
                    }
                    let e = t.iter().zip(tp).map(|(&a, &b)| a.abs_diff(b)).max().unwrap_or(0);
                    best = best.min(e);
                    if best <= worst {
                        break;
                    }
                }
                if best == usize::MAX {
                    // unreachable: g admits every value somewhere
                    return Err(domain("no matching vector"));
                }
                worst = worst.max(best);
            }
        }
    }
    Ok(qr(worst as i64, k as i64))
}

/// Grid-scale `|Δ_N|`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub paths: Vec<GridPath>,
    pub space: FiniteMetricSpace,
    /// `max |dist − max-coordinate distance|` over all pairs
    pub distortion: Q,
}

/// Points are the grid paths, the metric the Skorokhod distance through the
/// jump formula; labels are the jump vectors.
pub fn realize_simplex(top: usize, grid: usize) -> Result<Realization> {
    if grid == 0 {
        return Err(domain("grid size must be positive"));
    }
    let paths = GridPath::all(top, grid);
    let labels: Vec<String> = paths
        .iter()
        .map(|p| {
            let parts: Vec<String> = p.jumps.iter().map(|s| format!("{s}")).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut distortion = q(0);
    let dist: Vec<Vec<Q>> = paths
        .iter()
        .map(|a| {
            paths
                .iter()
                .map(|b| {
                    let d = jump_distance(a, b);
                    let e = a
                        .jump_coordinates()
                        .iter()
                        .zip(b.jump_coordinates())
                        .map(|(x, y)| abs_diff(x, &y))
                        .max()
                        .unwrap_or_else(|| q(0));
                    distortion = distortion.max(abs_diff(&d, &e));
                    d
                })
                .collect()
        })
        .collect();
    let labels = if paths.len() == 1 { vec![String::from("()")] } else { labels };
    let radii = (1..=grid).rev().map(|j| qr(j as i64, grid as i64)).collect();
    let space = FiniteMetricSpace::new(labels, dist, radii)?;
    Ok(Realization { paths, space, distortion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::numbered;
    use crate::filter::GradedFilter;
    use crate::situs::embed_diag;
    use crate::subdivision::{interval_situs, Window};

    #[test]
    fn paths_and_values() {
        let p = GridPath::from_values(&[0, 0, 1, 1, 2], 2).unwrap();
        assert_eq!(p.jumps(), [2, 4]);
        assert_eq!((0..=4).map(|t| p.value(t)).collect::<Vec<_>>(), [0, 0, 1, 1, 2]);
        assert!(p.admits(2, 0) && p.admits(2, 1) && !p.admits(2, 2));
        assert_eq!(GridPath::all(1, 8).len(), 9);
        assert_eq!(GridPath::parse(8, "1/4,3/4").unwrap().jumps(), [2, 6]);
        assert!(GridPath::parse(8, "1/3").is_err());
    }

    #[test]
    fn quarter_and_three_quarters() {
        let f = GridPath::new(8, vec![2]).unwrap();
        let g = GridPath::new(8, vec![6]).unwrap();
        assert_eq!(skorokhod_distance(&f, &g).unwrap(), qr(1, 2));
        assert_eq!(skorokhod_distance(&f, &f).unwrap(), q(0));
    }

    #[test]
    fn skipped_level_is_close() {
        let f = GridPath::new(8, vec![2, 4]).unwrap();
        let g = GridPath::new(8, vec![3, 3]).unwrap();
        assert_eq!(skorokhod_distance(&f, &g).unwrap(), qr(1, 8));
        assert_eq!(skorokhod_distance(&g, &f).unwrap(), qr(1, 8));
    }

    #[test]
    fn realize_interval() {
        let r = realize_simplex(1, 4).unwrap();
        assert_eq!(r.paths.len(), 5);
        for i in 0..4 {
            assert_eq!(r.space.dist(i, i + 1), qr(1, 4));
        }
        assert_eq!(realize_simplex(0, 3).unwrap().paths.len(), 1);
        assert_eq!(r.distortion, q(0));
    }

    fn point_situs(d: usize) -> Situs {
        Situs::point(d)
    }

    #[test]
    fn neighbourhood_precondition_and_full_eps() {
        let x = interval_situs(&numbered(3), 2, Window::Plain).unwrap();
        let y = Situs::antidiscrete(TruncatedSSet::standard_simplex(1, 2));
        let hs = HomSet::new(x.sset(), y.sset(), DEFAULT_HOM_LIMIT).unwrap();
        let full = BitSet::full(y.size(1));
        let delta = BitSet::full(x.size(2));
        let nb = skorokhod_neighbourhood(&hs, &x, 2, &delta, 1, &full).unwrap();
        assert!(nb.is_full());
        assert!(skorokhod_neighbourhood(&hs, &x, 1, &BitSet::full(x.size(1)), 1, &full).is_err());
    }

    #[test]
    fn mapping_space_from_a_point_is_the_target() {
        let y = embed_diag(&numbered(2), &GradedFilter::antidiscrete(2), 2).unwrap();
        let ms = mapping_space(&point_situs(2), &y, 2, MappingFilter::Skorokhod, DEFAULT_HOM_LIMIT).unwrap();
        assert_eq!(ms.situs.size(1), y.size(1));
        assert_eq!(ms.situs.size(2), y.size(2));
    }

    #[test]
    fn paths_into_interval_are_monotone_maps() {
        let x = interval_situs(&numbered(3), 2, Window::Plain).unwrap();
        let y = Situs::antidiscrete(TruncatedSSet::standard_simplex(1, 2));
        let ms = mapping_space(&x, &y, 2, MappingFilter::Skorokhod, DEFAULT_HOM_LIMIT).unwrap();
        // monotone maps {0,1,2} → {0,1}
        assert_eq!(ms.situs.size(1), 4);
        let same = skorokhod_homotopic_pair(&ms, 0, 0, ArchimedeanBudget { max_points: 2, window: 1 }).unwrap();
        assert!(same);
    }
}
