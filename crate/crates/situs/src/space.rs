//! Finite topological and metric spaces.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::num::{is_positive, Q};
use crate::set::BitSet;

/// A finite topological space given by its open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopSpace {
    labels: Vec<String>,
    opens: Vec<BitSet>,
    minimal: Vec<BitSet>,
}

impl FiniteTopSpace {
    /// Checks the axioms: ∅ and the whole set are open, opens are closed under
    /// pairwise union and intersection.
    pub fn new(labels: Vec<String>, opens: Vec<BitSet>) -> Result<Self> {
        let n = labels.len();
        if labels.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(domain("point labels must be distinct"));
        }
        let set: BTreeSet<BitSet> = opens.into_iter().collect();
        if set.iter().any(|o| o.universe() != n) {
            return Err(domain("open set over the wrong carrier"));
        }
        if !set.contains(&BitSet::new(n)) || !set.contains(&BitSet::full(n)) {
            return Err(domain("the empty set and the whole space must be open"));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&a.union(b)) || !set.contains(&a.intersection(b)) {
                    return Err(domain("opens are not closed under union and intersection"));
                }
            }
        }
        Ok(Self::from_valid(labels, set.into_iter().collect()))
    }

    fn from_valid(labels: Vec<String>, opens: Vec<BitSet>) -> Self {
        let n = labels.len();
        let minimal = (0..n)
            .map(|x| {
                let mut u = BitSet::full(n);
                for o in opens.iter().filter(|o| o.contains(x)) {
                    u.intersect_with(o);
                }
                u
            })
            .collect();
        FiniteTopSpace { labels, opens, minimal }
    }

    /// The topology whose opens are the up-sets of a preorder given by
    /// `le[x]` = the set of `y` with `x ≤ y`. The minimal open of `x` is then
    /// `le[x]` itself (after transitive closure).
    pub fn from_up_sets(labels: Vec<String>, le: &[BitSet]) -> Result<Self> {
        let n = labels.len();
        if labels.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(domain("point labels must be distinct"));
        }
        if le.len() != n || le.iter().any(|u| u.universe() != n) {
            return Err(domain("up-sets over the wrong carrier"));
        }
        let closure = transitive_closure(le, n);
        // up-closed sets are exactly the unions of minimal opens
        let mut opens = BTreeSet::new();
        opens.insert(BitSet::new(n));
        let mut frontier: Vec<BitSet> = alloc::vec![BitSet::new(n)];
        while let Some(s) = frontier.pop() {
            for c in &closure {
                let t = s.union(c);
                if opens.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        Ok(Self::from_valid(labels, opens.into_iter().collect()))
    }

    /// The topology generated by a family of subsets (closure under finite
    /// unions and intersections, plus ∅ and the whole set).
    pub fn generated_by(labels: Vec<String>, family: &[BitSet]) -> Result<Self> {
        let n = labels.len();
        let mut opens: BTreeSet<BitSet> = family.iter().cloned().collect();
        opens.insert(BitSet::new(n));
        opens.insert(BitSet::full(n));
        loop {
            let cur: Vec<BitSet> = opens.iter().cloned().collect();
            let before = opens.len();
            for a in &cur {
                for b in &cur {
                    opens.insert(a.union(b));
                    opens.insert(a.intersection(b));
                }
            }
            if opens.len() == before {
                break;
            }
        }
        Self::new(labels, opens.into_iter().collect())
    }

    pub fn discrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        let le: Vec<BitSet> = (0..n).map(|x| BitSet::singleton(n, x)).collect();
        Self::from_up_sets(labels, &le).expect("discrete")
    }

    pub fn antidiscrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self::new(labels, [BitSet::new(n), BitSet::full(n)].into_iter().collect()).expect("antidiscrete")
    }

    /// `{0, 1}` with opens `∅, {1}, {0, 1}`.
    pub fn sierpinski() -> Self {
        let labels = alloc::vec![String::from("0"), String::from("1")];
        Self::new(labels, alloc::vec![BitSet::new(2), BitSet::singleton(2, 1), BitSet::full(2)]).expect("sierpinski")
    }

    /// The 4-point pseudocircle: `a, b` open points, `U_c = U_d = {a, b, ·}`.
    pub fn pseudocircle() -> Self {
        let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| String::from(*s)).collect();
        let le = [
            BitSet::singleton(4, 0),
            BitSet::singleton(4, 1),
            BitSet::from_iter(4, [0, 1, 2]),
            BitSet::from_iter(4, [0, 1, 3]),
        ];
        Self::from_up_sets(labels, &le).expect("pseudocircle")
    }

    /// Every topology on `n` labelled points, in a fixed order.
    pub fn enumerate(n: usize) -> Vec<FiniteTopSpace> {
        let labels: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut le: Vec<BitSet> = (0..n).map(|x| BitSet::singleton(n, x)).collect();
            for (k, &(x, y)) in pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    le[x].insert(y);
                }
            }
            let closed = transitive_closure(&le, n);
            if closed != le {
                continue;
            }
            if seen.insert(closed.clone()) {
                out.push(Self::from_up_sets(labels.clone(), &closed).expect("preorder topology"));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    /// `U_x`, the smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> &BitSet {
        &self.minimal[x]
    }

    pub fn is_open(&self, s: &BitSet) -> bool {
        self.opens.binary_search(s).is_ok()
    }

    /// Preimages of opens are open.
    pub fn is_continuous(&self, f: &[usize], target: &FiniteTopSpace) -> bool {
        target.opens.iter().all(|o| self.is_open(&crate::filter::preimage(f, o)))
    }

    /// Same opens up to the given point bijection `f: self → other`.
    pub fn is_homeomorphism(&self, f: &[usize], other: &FiniteTopSpace) -> bool {
        let n = self.len();
        if other.len() != n || BitSet::from_iter(n, f.iter().copied()).count() != n {
            return false;
        }
        let mut inv = alloc::vec![0; n];
        for (x, &y) in f.iter().enumerate() {
            inv[y] = x;
        }
        self.is_continuous(f, other) && other.is_continuous(&inv, self)
    }

    /// Subspace on `s`, with points renumbered in increasing order.
    pub fn subspace(&self, s: &BitSet) -> FiniteTopSpace {
        let pts: Vec<usize> = s.to_vec();
        let labels = pts.iter().map(|&x| self.labels[x].clone()).collect();
        let m = pts.len();
        let opens: BTreeSet<BitSet> = self
            .opens
            .iter()
            .map(|o| BitSet::from_iter(m, (0..m).filter(|&i| o.contains(pts[i]))))
            .collect();
        FiniteTopSpace::from_valid(labels, opens.into_iter().collect())
    }

    /// Product topology; `(a, b)` is point `a * |other| + b`.
    pub fn product(&self, other: &FiniteTopSpace) -> FiniteTopSpace {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("<{a}|{b}>"));
            }
        }
        let le: Vec<BitSet> = (0..n * m)
            .map(|p| {
                let (a, b) = (p / m, p % m);
                BitSet::from_iter(
                    n * m,
                    self.minimal[a].iter().flat_map(|x| other.minimal[b].iter().map(move |y| x * m + y)),
                )
            })
            .collect();
        FiniteTopSpace::from_up_sets(labels, &le).expect("product topology")
    }

    /// Topological indistinguishability classes (same minimal open set),
    /// numbered by first appearance.
    pub fn t0_classes(&self) -> Vec<usize> {
        let mut reps: Vec<&BitSet> = Vec::new();
        self.minimal
            .iter()
            .enumerate()
            .map(|(x, _)| {
                let key = &self.minimal[x];
                // Indistinguishable: each lies in the other's minimal open.
                match reps.iter().position(|r| *r == key) {
                    Some(i) => i,
                    None => {
                        reps.push(key);
                        reps.len() - 1
                    }
                }
            })
            .collect()
    }

    /// Connected components by union over specialization pairs.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in self.minimal[x].iter() {
                    let c = comp[x].min(comp[y]);
                    if comp[x] != c || comp[y] != c {
                        comp[x] = c;
                        comp[y] = c;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut ids: Vec<usize> = Vec::new();
        comp.iter()
            .map(|c| match ids.iter().position(|d| d == c) {
                Some(i) => i,
                None => {
                    ids.push(*c);
                    ids.len() - 1
                }
            })
            .collect()
    }
}

fn transitive_closure(le: &[BitSet], n: usize) -> Vec<BitSet> {
    let mut c: Vec<BitSet> = le.to_vec();
    for x in 0..n {
        c[x].insert(x);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            let mut acc = c[x].clone();
            for y in c[x].iter() {
                acc.union_with(&c[y]);
            }
            if acc != c[x] {
                c[x] = acc;
                changed = true;
            }
        }
        if !changed {
            return c;
        }
    }
}

/// A finite metric space with a strictly decreasing grid of radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Q>>,
    grid: Vec<Q>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Q>>, grid: Vec<Q>) -> Result<Self> {
        let n = labels.len();
        if labels.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(domain("point labels must be distinct"));
        }
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(domain("distance table must be square over the points"));
        }
        for x in 0..n {
            if dist[x][x] != Q::from_integer(0) {
                return Err(domain(format!("nonzero self-distance at {}", labels[x])));
            }
            for y in 0..n {
                if dist[x][y] != dist[y][x] {
                    return Err(domain("distance table is not symmetric"));
                }
                if x != y && !is_positive(&dist[x][y]) {
                    return Err(domain(format!("distinct points {} and {} at distance 0", labels[x], labels[y])));
                }
                for z in 0..n {
                    if dist[x][z] > dist[x][y] + dist[y][z] {
                        return Err(domain("triangle inequality fails"));
                    }
                }
            }
        }
        if grid.is_empty() {
            return Err(domain("the grid of radii must be nonempty"));
        }
        if grid.iter().any(|e| !is_positive(e)) || grid.windows(2).any(|w| w[0] <= w[1]) {
            return Err(domain("grid radii must be positive and strictly decreasing"));
        }
        Ok(FiniteMetricSpace { labels, dist, grid })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, x: usize, y: usize) -> Q {
        self.dist[x][y]
    }

    pub fn table(&self) -> &[Vec<Q>] {
        &self.dist
    }

    pub fn grid(&self) -> &[Q] {
        &self.grid
    }

    /// Same points and distances, another grid.
    pub fn with_grid(&self, grid: Vec<Q>) -> Result<Self> {
        Self::new(self.labels.clone(), self.dist.clone(), grid)
    }

    /// Smallest distance between distinct points.
    pub fn min_positive_distance(&self) -> Option<Q> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).map(|(x, y)| self.dist[x][y]).min()
    }

    pub fn diameter(&self) -> Q {
        self.dist.iter().flatten().copied().max().unwrap_or(Q::from_integer(0))
    }

    /// Topology generated by the open balls with grid radii.
    pub fn grid_topology(&self) -> FiniteTopSpace {
        let n = self.len();
        let balls: Vec<BitSet> = (0..n)
            .flat_map(|x| self.grid.iter().map(move |e| (x, *e)))
            .map(|(x, e)| BitSet::from_iter(n, (0..n).filter(|&y| self.dist[x][y] < e)))
            .collect();
        FiniteTopSpace::generated_by(self.labels.clone(), &balls).expect("ball topology")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=3).map(|n| FiniteTopSpace::enumerate(n).len()).collect();
        assert_eq!(counts, [1, 1, 4, 29]);
    }

    #[test]
    fn sierpinski_minimal_opens() {
        let s = FiniteTopSpace::sierpinski();
        assert_eq!(s.minimal_open(0).to_vec(), [0, 1]);
        assert_eq!(s.minimal_open(1).to_vec(), [1]);
        assert!(!s.is_continuous(&[1, 0], &s));
        assert!(s.is_continuous(&[0, 0], &s));
    }

    #[test]
    fn metric_validation() {
        let l = alloc::vec![String::from("a"), String::from("b")];
        let d = alloc::vec![alloc::vec![q(0), q(1)], alloc::vec![q(1), q(0)]];
        assert!(FiniteMetricSpace::new(l.clone(), d.clone(), alloc::vec![q(2), qr(1, 2)]).is_ok());
        assert!(FiniteMetricSpace::new(l.clone(), d.clone(), alloc::vec![qr(1, 2), q(2)]).is_err());
        assert!(FiniteMetricSpace::new(l, d, alloc::vec![]).is_err());
    }

    #[test]
    fn pseudocircle_is_connected() {
        let c = FiniteTopSpace::pseudocircle();
        assert!(c.components().iter().all(|&k| k == 0));
        assert_eq!(c.opens().len(), 7);
    }
}
