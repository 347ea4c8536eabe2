//! Truncated simplicial sets stored extensionally.
//!
//! Degrees are carrier sizes: `X(n)` holds the simplices indexed by the
//! linear order `n = {0..n-1}` (dimension `n - 1`), for `n = 1..=D`. A
//! monotone map `f: m → n` acts contravariantly as a table `X(n) → X(m)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};

/// A non-decreasing map `{0..m-1} → {0..n-1}`; `m` is `values.len()`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() || target == 0 {
            return Err(domain("monotone maps need nonempty source and target"));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(domain(format!("{values:?} is not non-decreasing")));
        }
        if values.iter().any(|&v| v >= target) {
            return Err(domain(format!("{values:?} leaves the target of size {target}")));
        }
        Ok(MonotoneMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { target: n, values: (0..n).collect() }
    }

    /// The vertex `{0} → n` picking `i`.
    pub fn vertex(i: usize, n: usize) -> Self {
        MonotoneMap { target: n, values: vec![i] }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ inner`, where `inner: k → m` and `self: m → n`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap> {
        if inner.target != self.source() {
            return Err(domain("composing monotone maps with mismatched sizes"));
        }
        Ok(MonotoneMap { target: self.target, values: inner.values.iter().map(|&i| self.values[i]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target - 1
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target && self.is_injective()
    }

    /// `f[+1]: m+1 → n+1`, adding a new minimal element: `0 ↦ 0`, `i+1 ↦ f(i)+1`.
    pub fn plus_one(&self) -> MonotoneMap {
        let mut values = vec![0];
        values.extend(self.values.iter().map(|v| v + 1));
        MonotoneMap { target: self.target + 1, values }
    }

    /// The mirrored doubling `e(f): 2m → 2n`. Position `m + i` goes to
    /// `n + f(i)` and its mirror `m - 1 - i` to `n - 1 - f(i)`.
    pub fn doubled(&self) -> MonotoneMap {
        let (m, n) = (self.source(), self.target);
        let values = (0..2 * m)
            .map(|p| if p >= m { n + self.values[p - m] } else { n - 1 - self.values[m - 1 - p] })
            .collect();
        MonotoneMap { target: 2 * n, values }
    }

    /// `"m->n:v0,v1,…"`, the key used by the JSON action tables.
    pub fn key(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("{}->{}:{}", self.source(), self.target, vals.join(","))
    }

    pub fn parse_key(key: &str) -> Result<MonotoneMap> {
        let bad = || domain(format!("bad monotone map key {key:?}"));
        let (sizes, vals) = key.split_once(':').ok_or_else(bad)?;
        let (m, n) = sizes.split_once("->").ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let values: Vec<usize> = vals
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if values.len() != m {
            return Err(bad());
        }
        MonotoneMap::new(n, values)
    }

    /// All monotone maps `m → n` in lexicographic order of their values.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        monotone_tuples(m, n).into_iter().map(|values| MonotoneMap { target: n, values }).collect()
    }
}

/// All non-decreasing tuples of length `m` over `0..n`, lexicographic.
pub fn monotone_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in lo..n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    if n > 0 || m == 0 {
        rec(m, n, 0, &mut cur, &mut out);
    }
    out
}

/// All tuples of length `m` over `0..n`, lexicographic.
pub fn all_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for v in 0..n {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Every monotone map between sizes `1..=d`, grouped by `(m, n)`.
pub fn all_maps(d: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    for n in 1..=d {
        for m in 1..=d {
            out.extend(MonotoneMap::all(m, n));
        }
    }
    out
}

/// Generating maps: cofaces `n-1 → n` and codegeneracies `n+1 → n`.
pub fn generators(d: usize) -> Vec<MonotoneMap> {
    all_maps(d)
        .into_iter()
        .filter(|f| {
            (f.source() + 1 == f.target() && f.is_injective()) || (f.source() == f.target() + 1 && f.is_surjective())
        })
        .collect()
}

/// A simplicial set truncated at degree `D`, with labelled carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSSet {
    truncation: usize,
    labels: Vec<Vec<String>>,
    action: BTreeMap<MonotoneMap, Vec<usize>>,
}

/// Degree-wise maps `maps[n-1]: X(n) → Y(n)`.
pub type SSetMap = Vec<Vec<usize>>;

impl TruncatedSSet {
    /// Builds from explicit tables and checks totality and functoriality.
    pub fn new(truncation: usize, labels: Vec<Vec<String>>, action: BTreeMap<MonotoneMap, Vec<usize>>) -> Result<Self> {
        let x = Self::from_parts(truncation, labels, action)?;
        if let Some((f, g)) = x.functoriality_failure() {
            return Err(domain(format!("action is not functorial at {} ∘ {}", f.key(), g.key())));
        }
        Ok(x)
    }

    /// Builds from explicit tables checking only shapes.
    pub fn from_parts(
        truncation: usize,
        labels: Vec<Vec<String>>,
        action: BTreeMap<MonotoneMap, Vec<usize>>,
    ) -> Result<Self> {
        if truncation == 0 {
            return Err(domain("truncation must be at least 1"));
        }
        if labels.len() != truncation {
            return Err(domain(format!("{} carriers given for truncation {truncation}", labels.len())));
        }
        for f in all_maps(truncation) {
            let table = action.get(&f).ok_or_else(|| domain(format!("missing action of {}", f.key())))?;
            let (src, tgt) = (labels[f.target() - 1].len(), labels[f.source() - 1].len());
            if table.len() != src || table.iter().any(|&y| y >= tgt) {
                return Err(domain(format!("action table of {} has the wrong shape", f.key())));
            }
        }
        if action.keys().any(|f| f.source() > truncation || f.target() > truncation) {
            return Err(domain("action given for a map beyond the truncation"));
        }
        Ok(TruncatedSSet { truncation, labels, action })
    }

    /// Builds a simplicial set whose simplices are values of type `T`, acted
    /// on by `act`. Fails if `act` leaves the supplied carriers.
    pub fn from_fn<T: Ord + Clone>(
        truncation: usize,
        elems: Vec<Vec<T>>,
        act: impl Fn(&MonotoneMap, &T) -> T,
        label: impl Fn(&T) -> String,
    ) -> Result<Self> {
        if elems.len() != truncation {
            return Err(domain("carrier count does not match truncation"));
        }
        let index: Vec<BTreeMap<T, usize>> =
            elems.iter().map(|es| es.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()).collect();
        let mut action = BTreeMap::new();
        for f in all_maps(truncation) {
            let table = elems[f.target() - 1]
                .iter()
                .map(|x| {
                    let y = act(&f, x);
                    index[f.source() - 1]
                        .get(&y)
                        .copied()
                        .ok_or_else(|| domain(format!("action of {} leaves the carrier", f.key())))
                })
                .collect::<Result<Vec<_>>>()?;
            action.insert(f, table);
        }
        let labels = elems.iter().map(|es| es.iter().map(&label).collect()).collect();
        Ok(TruncatedSSet { truncation, labels, action })
    }

    /// `n ↦ Sⁿ`, acting by reselection: `(x_1..x_n)[t_1..t_m] = (x_{t_1}..x_{t_m})`.
    pub fn representable(points: &[String], truncation: usize) -> Self {
        let elems = (1..=truncation).map(|n| all_tuples(n, points.len())).collect();
        Self::from_fn(truncation, elems, reselect, |t| tuple_label(points, t)).expect("closed under reselection")
    }

    /// `n ↦` monotone maps `n → N+1`.
    pub fn standard_simplex(top: usize, truncation: usize) -> Self {
        let elems = (1..=truncation).map(|n| monotone_tuples(n, top + 1)).collect();
        Self::from_fn(truncation, elems, reselect, |t| {
            let vals: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            vals.concat()
        })
        .expect("closed under reselection")
    }

    /// The nerve of a finite linear order with the given labels.
    pub fn linear_order(points: &[String], truncation: usize) -> Self {
        let elems = (1..=truncation).map(|n| monotone_tuples(n, points.len())).collect();
        Self::from_fn(truncation, elems, reselect, |t| tuple_label(points, t)).expect("closed under reselection")
    }

    /// The constant simplicial set on one carrier: every map acts as the identity.
    pub fn constant(points: &[String], truncation: usize) -> Self {
        let elems = (1..=truncation).map(|_| (0..points.len()).collect()).collect();
        Self::from_fn(truncation, elems, |_, &x: &usize| x, |&x| points[x].clone()).expect("identity action")
    }

    pub fn point(truncation: usize) -> Self {
        Self::standard_simplex(0, truncation)
    }

    pub fn empty(truncation: usize) -> Self {
        Self::from_fn::<usize>(truncation, vec![Vec::new(); truncation], |_, &x| x, |_| String::new())
            .expect("empty")
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `|X(n)|`.
    pub fn size(&self, n: usize) -> usize {
        self.labels[n - 1].len()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n - 1]
    }

    pub fn action(&self) -> &BTreeMap<MonotoneMap, Vec<usize>> {
        &self.action
    }

    /// The table `X(n) → X(m)` of `f: m → n`.
    pub fn table(&self, f: &MonotoneMap) -> &[usize] {
        self.action.get(f).unwrap_or_else(|| panic!("no action for {} at truncation {}", f.key(), self.truncation))
    }

    /// `x[f]` for `x ∈ X(f.target())`.
    pub fn act(&self, f: &MonotoneMap, x: usize) -> usize {
        self.table(f)[x]
    }

    /// Vertex `i` of `x ∈ X(n)`.
    pub fn vertex(&self, n: usize, x: usize, i: usize) -> usize {
        self.act(&MonotoneMap::vertex(i, n), x)
    }

    /// First pair `(g, f)` with `X(g ∘ f) ≠ X(f) ∘ X(g)`, or an identity acting
    /// non-trivially (reported as `(id, id)`).
    pub fn functoriality_failure(&self) -> Option<(MonotoneMap, MonotoneMap)> {
        let d = self.truncation;
        for n in 1..=d {
            let id = MonotoneMap::identity(n);
            if self.table(&id).iter().enumerate().any(|(i, &y)| i != y) {
                return Some((id.clone(), id));
            }
        }
        let maps = all_maps(d);
        for g in &maps {
            for f in maps.iter().filter(|f| f.target() == g.source()) {
                let gf = g.compose(f).expect("composable");
                let (tg, tf, tgf) = (self.table(g), self.table(f), self.table(&gf));
                if (0..tg.len()).any(|x| tf[tg[x]] != tgf[x]) {
                    return Some((g.clone(), f.clone()));
                }
            }
        }
        None
    }

    /// Checks the simplicial identities on generators: `d_i d_j = d_{j-1} d_i`
    /// for `i < j`, and the degeneracy identities, in their dual form
    /// `δ_j δ_i = δ_i δ_{j-1}` etc., by composing generator tables.
    pub fn simplicial_identities_hold(&self) -> bool {
        let gens = generators(self.truncation);
        for g in &gens {
            for f in gens.iter().filter(|f| f.target() == g.source()) {
                let gf = g.compose(f).expect("composable");
                let (tg, tf, tgf) = (self.table(g), self.table(f), self.table(&gf));
                if (0..tg.len()).any(|x| tf[tg[x]] != tgf[x]) {
                    return false;
                }
            }
        }
        true
    }

    /// `x ∈ X(n)` is the image of some degeneracy `X(n-1) → X(n)`.
    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        if n < 2 {
            return false;
        }
        MonotoneMap::all(n, n - 1)
            .into_iter()
            .filter(MonotoneMap::is_surjective)
            .any(|s| self.table(&s).contains(&x))
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.size(n)).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// Checks that degree-wise maps commute with the action. Returns the first
    /// offending map and simplex.
    pub fn morphism_failure(&self, maps: &SSetMap, target: &TruncatedSSet) -> Result<Option<(MonotoneMap, usize)>> {
        if self.truncation != target.truncation {
            return Err(domain("morphism between ssets of different truncation"));
        }
        if maps.len() != self.truncation {
            return Err(domain("morphism needs one map per degree"));
        }
        for n in 1..=self.truncation {
            if maps[n - 1].len() != self.size(n) || maps[n - 1].iter().any(|&y| y >= target.size(n)) {
                return Err(domain(format!("degree-{n} map has the wrong shape")));
            }
        }
        for f in all_maps(self.truncation) {
            let (ts, tt) = (self.table(&f), target.table(&f));
            let (fm, fn_) = (&maps[f.source() - 1], &maps[f.target() - 1]);
            if let Some(x) = (0..ts.len()).find(|&x| fm[ts[x]] != tt[fn_[x]]) {
                return Ok(Some((f, x)));
            }
        }
        Ok(None)
    }

    /// `X[+1](n) = X(n+1)` with the action precomposed by `[+1]`.
    pub fn shift_plus1(&self) -> Result<Self> {
        if self.truncation < 2 {
            return Err(Error::DegreeBudget { needed: 2, available: self.truncation });
        }
        let d = self.truncation - 1;
        let labels = self.labels[1..].to_vec();
        let action = all_maps(d).into_iter().map(|f| (f.clone(), self.table(&f.plus_one()).to_vec())).collect();
        Ok(TruncatedSSet { truncation: d, labels, action })
    }

    /// The counit `[-1]: X[+1] → X` (truncated at `D - 1`) forgetting the new
    /// minimal coordinate: the face `n → n+1, i ↦ i+1`.
    pub fn shift_counit(&self) -> Result<SSetMap> {
        if self.truncation < 2 {
            return Err(Error::DegreeBudget { needed: 2, available: self.truncation });
        }
        Ok((1..self.truncation)
            .map(|n| {
                let drop_first = MonotoneMap { target: n + 1, values: (1..=n).collect() };
                self.table(&drop_first).to_vec()
            })
            .collect())
    }

    /// Restriction to a lower truncation.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d == 0 || d > self.truncation {
            return Err(Error::DegreeBudget { needed: d, available: self.truncation });
        }
        let labels = self.labels[..d].to_vec();
        let action = all_maps(d).into_iter().map(|f| (f.clone(), self.table(&f).to_vec())).collect();
        Ok(TruncatedSSet { truncation: d, labels, action })
    }

    /// Connected components of `X(1)`: the finest partition putting both
    /// vertices of every `X(2)` element in one block. Returns the block index
    /// of each vertex, blocks numbered by first appearance.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.size(1);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        if self.truncation >= 2 {
            let (v0, v1) = (self.table(&MonotoneMap::vertex(0, 2)), self.table(&MonotoneMap::vertex(1, 2)));
            for e in 0..self.size(2) {
                let (a, b) = (find(&mut parent, v0[e]), find(&mut parent, v1[e]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        (0..n)
            .map(|x| {
                let r = find(&mut parent, x);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().iter().max().map_or(0, |m| m + 1)
    }

    /// Grayson subdivision `X ∘ e`: `(X∘e)(n) = X(2n)`, truncated at `⌊D/2⌋`.
    pub fn grayson(&self) -> Result<Self> {
        let d = self.truncation / 2;
        if d < 1 {
            return Err(Error::DegreeBudget { needed: 2, available: self.truncation });
        }
        let labels = (1..=d).map(|n| self.labels[2 * n - 1].clone()).collect();
        let action = all_maps(d).into_iter().map(|f| (f.clone(), self.table(&f.doubled()).to_vec())).collect();
        Ok(TruncatedSSet { truncation: d, labels, action })
    }

    /// Degree-wise product; `(a, b)` is element `a * |Y(n)| + b`.
    pub fn product(&self, other: &TruncatedSSet) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(domain("product of ssets with different truncations"));
        }
        let d = self.truncation;
        let labels = (1..=d)
            .map(|n| {
                let mut out = Vec::new();
                for a in self.labels(n) {
                    for b in other.labels(n) {
                        out.push(format!("<{a}|{b}>"));
                    }
                }
                out
            })
            .collect();
        let action = all_maps(d)
            .into_iter()
            .map(|f| {
                let (ta, tb) = (self.table(&f), other.table(&f));
                let bm = other.size(f.source());
                let mut table = Vec::with_capacity(ta.len() * tb.len());
                for &ya in ta {
                    for &yb in tb {
                        table.push(ya * bm + yb);
                    }
                }
                (f, table)
            })
            .collect();
        Ok(TruncatedSSet { truncation: d, labels, action })
    }

    /// Degree-wise disjoint union; summand `k` occupies a contiguous block.
    pub fn coproduct(parts: &[&TruncatedSSet]) -> Result<Self> {
        let d = parts.first().map(|p| p.truncation).ok_or_else(|| domain("empty coproduct needs a truncation"))?;
        if parts.iter().any(|p| p.truncation != d) {
            return Err(domain("coproduct of ssets with different truncations"));
        }
        let labels = (1..=d)
            .map(|n| {
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(k, p)| p.labels(n).iter().map(move |l| format!("{k}:{l}")))
                    .collect()
            })
            .collect();
        let action = all_maps(d)
            .into_iter()
            .map(|f| {
                let mut table = Vec::new();
                let mut offset = 0;
                for p in parts {
                    table.extend(p.table(&f).iter().map(|y| y + offset));
                    offset += p.size(f.source());
                }
                (f, table)
            })
            .collect();
        Ok(TruncatedSSet { truncation: d, labels, action })
    }

    /// Offsets of each summand's block at degree `n` in [`Self::coproduct`].
    pub fn coproduct_offsets(parts: &[&TruncatedSSet], n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            out.push(acc);
            acc += p.size(n);
        }
        out
    }

    /// Whether `X(n) → X(1)ⁿ` (all vertices) is a bijection onto all tuples at
    /// every degree, i.e. the sset is `n ↦ X(1)ⁿ` up to relabelling.
    pub fn is_representable(&self) -> bool {
        let v = self.size(1);
        (1..=self.truncation).all(|n| {
            let expected = v.checked_pow(n as u32);
            if expected != Some(self.size(n)) {
                return false;
            }
            let mut seen = BTreeMap::new();
            (0..self.size(n)).all(|x| {
                let vs: Vec<usize> = (0..n).map(|i| self.vertex(n, x, i)).collect();
                seen.insert(vs, x).is_none()
            })
        })
    }

    /// Vertex tuple of `x ∈ X(n)`.
    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..n).map(|i| self.vertex(n, x, i)).collect()
    }
}

/// Reselection action on tuples.
#[allow(clippy::ptr_arg)]
pub fn reselect(f: &MonotoneMap, t: &Vec<usize>) -> Vec<usize> {
    f.values().iter().map(|&i| t[i]).collect()
}

/// `"(a,b,c)"` for a tuple of point indices; a 1-tuple is labelled by its point.
pub fn tuple_label(points: &[String], t: &[usize]) -> String {
    if let [x] = t {
        return points[*x].clone();
    }
    let parts: Vec<&str> = t.iter().map(|&i| points[i].as_str()).collect();
    format!("({})", parts.join(","))
}

/// Index of a tuple over `0..base` in [`all_tuples`] order.
pub fn tuple_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

/// Compact labels `"0"`, `"1"`, … for generated carriers.
pub fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reselection_example() {
        let s = TruncatedSSet::representable(&pts(&["x", "y", "z"]), 3);
        let xyz = tuple_index(&[0, 1, 2], 3);
        let f = MonotoneMap::new(3, vec![0, 0, 2]).unwrap();
        assert_eq!(s.labels(3)[s.act(&f, xyz)], "(x,x,z)");
        assert_eq!(TruncatedSSet::representable(&pts(&["a", "b"]), 2).size(2), 4);
    }

    #[test]
    fn standard_simplex_counts() {
        let d1 = TruncatedSSet::standard_simplex(1, 3);
        assert_eq!(d1.labels(2), &["00", "01", "11"]);
        let d0 = TruncatedSSet::point(3);
        assert!((1..=3).all(|n| d0.size(n) == 1));
    }

    #[test]
    fn keys_roundtrip() {
        let f = MonotoneMap::new(3, vec![0, 2]).unwrap();
        assert_eq!(f.key(), "2->3:0,2");
        assert_eq!(MonotoneMap::parse_key("2->3:0,2").unwrap(), f);
        assert!(MonotoneMap::parse_key("2->3:2,0").is_err());
    }

    #[test]
    fn shift_of_representable() {
        let s = TruncatedSSet::representable(&pts(&["a", "b"]), 3);
        let sh = s.shift_plus1().unwrap();
        assert_eq!(sh.truncation(), 2);
        assert_eq!(sh.size(1), 4);
        let counit = s.shift_counit().unwrap();
        // (a, b) ↦ (b): the counit drops the first coordinate.
        let ab = tuple_index(&[0, 1], 2);
        assert_eq!(counit[0][ab], 1);
        assert!(sh.morphism_failure(&counit, &s.truncate(2).unwrap()).unwrap().is_none());
        assert!(TruncatedSSet::point(1).shift_plus1().is_err());
    }

    #[test]
    fn components() {
        let d2 = TruncatedSSet::standard_simplex(2, 3);
        assert_eq!(d2.component_count(), 1);
        let two = TruncatedSSet::coproduct(&[&TruncatedSSet::point(3), &TruncatedSSet::point(3)]).unwrap();
        assert_eq!(two.component_count(), 2);
        assert_eq!(TruncatedSSet::representable(&pts(&["a", "b", "c"]), 2).component_count(), 1);
    }

    #[test]
    fn doubling_is_functorial() {
        for g in all_maps(3) {
            for f in all_maps(3).into_iter().filter(|f| f.target() == g.source()) {
                let lhs = g.compose(&f).unwrap().doubled();
                let rhs = g.doubled().compose(&f.doubled()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(MonotoneMap::identity(2).doubled().is_identity());
    }

    #[test]
    fn grayson_of_representable() {
        let s = TruncatedSSet::representable(&pts(&["a", "b"]), 4);
        let g = s.grayson().unwrap();
        assert_eq!(g.truncation(), 2);
        assert_eq!(g.size(1), 4);
        assert!(g.functoriality_failure().is_none());
        assert!(TruncatedSSet::point(1).grayson().is_err());
    }

    #[test]
    fn degeneracy() {
        let s = TruncatedSSet::representable(&pts(&["a", "b"]), 3);
        let nd: Vec<&str> = s.nondegenerate(3).iter().map(|&x| s.labels(3)[x].as_str()).collect();
        assert_eq!(nd, ["(a,b,a)", "(b,a,b)"]);
    }
}
