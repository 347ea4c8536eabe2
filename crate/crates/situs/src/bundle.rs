//! Locally trivial bundles of finite spaces.
//!
//! `p: X → B` is locally trivial with fibre `F` when the pullback of `X_pa`
//! along the counit `B_pa[+1] → B_pa` is isomorphic over `B_pa[+1]` to
//! `B_pa[+1] × F_pa`. Such an isomorphism is a family of fibre bijections
//! `φ_{b,b'}: p⁻¹(b') → F`, one family per base point `b`; only the `b'` in
//! the minimal open of `b` are constrained.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::filter::{GradedFilter, Semantics};
use crate::set::BitSet;
use crate::simplicial::{all_tuples, reselect, TruncatedSSet};
use crate::situs::{check_morphism, Situs, SitusMorphism};
use crate::space::FiniteTopSpace;

/// The fibre bijections chosen for one base point `b`: `bijections[b']`
/// lists, for the fibre over `b'` in increasing order, the image in `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub base_point: usize,
    pub bijections: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleReport {
    pub locally_trivial: bool,
    /// one trivialization per base point when locally trivial
    pub family: Vec<Trivialization>,
    /// first base point without a trivialization
    pub failing_point: Option<usize>,
    /// the family was checked as a situs isomorphism in both directions
    pub certified: bool,
}

struct Setup<'a> {
    x: &'a FiniteTopSpace,
    b: &'a FiniteTopSpace,
    p: &'a [usize],
    f: &'a FiniteTopSpace,
    fibres: Vec<Vec<usize>>,
    // position of each point of X in its fibre
    slot: Vec<usize>,
}

fn setup<'a>(
    x: &'a FiniteTopSpace,
    b: &'a FiniteTopSpace,
    p: &'a [usize],
    f: &'a FiniteTopSpace,
) -> Result<Option<Setup<'a>>> {
    if p.len() != x.len() || p.iter().any(|&v| v >= b.len()) {
        return Err(domain("projection does not map the total space to the base"));
    }
    if !x.is_continuous(p, b) {
        return Err(domain("projection is not continuous"));
    }
    let mut fibres = vec![Vec::new(); b.len()];
    let mut slot = vec![0; x.len()];
    for (xi, &bi) in p.iter().enumerate() {
        slot[xi] = fibres[bi].len();
        fibres[bi].push(xi);
    }
    if fibres.iter().any(|fb| fb.len() != f.len()) {
        return Ok(None);
    }
    Ok(Some(Setup { x, b, p, f, fibres, slot }))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::situs::permutations(n)
}

impl Setup<'_> {
    fn le_x(&self, a: usize, c: usize) -> bool {
        self.x.minimal_open(a).contains(c)
    }

    fn le_f(&self, a: usize, c: usize) -> bool {
        self.f.minimal_open(a).contains(c)
    }

    /// Bijections over the base points of `region` such that, for every
    /// pair of points over the region, `x ≤ x'` iff `p(x) ≤ p(x')` and
    /// `φ(x) ≤ φ(x')`.
    fn trivialize(&self, region: &BitSet) -> Option<Vec<Vec<usize>>> {
        let order: Vec<usize> = region.iter().collect();
        let perms = permutations(self.f.len());
        let mut chosen: Vec<Option<usize>> = vec![None; self.b.len()];
        if self.assign(&order, 0, &perms, &mut chosen) {
            Some(
                (0..self.b.len())
                    .map(|bi| match chosen[bi] {
                        Some(k) => perms[k].clone(),
                        None => (0..self.f.len()).collect(),
                    })
                    .collect(),
            )
        } else {
            None
        }
    }

    fn assign(&self, order: &[usize], i: usize, perms: &[Vec<usize>], chosen: &mut Vec<Option<usize>>) -> bool {
        if i == order.len() {
            return true;
        }
        let bi = order[i];
        for k in 0..perms.len() {
            chosen[bi] = Some(k);
            let ok = order[..=i].iter().all(|&bj| self.compatible(bi, bj, perms, chosen));
            if ok && self.assign(order, i + 1, perms, chosen) {
                return true;
            }
        }
        chosen[bi] = None;
        false
    }

    fn phi(&self, xi: usize, perms: &[Vec<usize>], chosen: &[Option<usize>]) -> usize {
        perms[chosen[self.p[xi]].expect("assigned")][self.slot[xi]]
    }

    fn compatible(&self, b1: usize, b2: usize, perms: &[Vec<usize>], chosen: &[Option<usize>]) -> bool {
        for (u, v) in [(b1, b2), (b2, b1)] {
            if !self.b.minimal_open(u).contains(v) {
                // no point over u specializes to one over v
                continue;
            }
            for &x1 in &self.fibres[u] {
                for &x2 in &self.fibres[v] {
                    let f1 = self.phi(x1, perms, chosen);
                    let f2 = self.phi(x2, perms, chosen);
                    if self.le_x(x1, x2) != self.le_f(f1, f2) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Decides local triviality through the situs formulation and certifies a
/// positive answer with [`check_morphism`] in both directions.
pub fn is_locally_trivial(
    x: &FiniteTopSpace,
    b: &FiniteTopSpace,
    p: &[usize],
    f: &FiniteTopSpace,
) -> Result<BundleReport> {
    let Some(s) = setup(x, b, p, f)? else {
        return Ok(BundleReport { locally_trivial: false, family: Vec::new(), failing_point: None, certified: false });
    };
    let mut family = Vec::with_capacity(b.len());
    for b0 in 0..b.len() {
        match s.trivialize(b.minimal_open(b0)) {
            Some(bijections) => family.push(Trivialization { base_point: b0, bijections }),
            None => {
                return Ok(BundleReport {
                    locally_trivial: false,
                    family: Vec::new(),
                    failing_point: Some(b0),
                    certified: false,
                })
            }
        }
    }
    let certified = certify(&s, &family)?;
    Ok(BundleReport { locally_trivial: true, family, failing_point: None, certified })
}

/// `n ↦ B × Yⁿ` acting on the `Y` coordinates; the shape of both
/// `B_pa[+1] ×_{B_pa} X_pa` (with `Y = X`) and `B_pa[+1] × F_pa` (with
/// `Y = B × F`). The minimal grade asks `base(y_1) ∈ U_{b_0}` and each
/// consecutive pair `y_i ≤ y_{i+1}`.
fn over_base(
    nb: usize,
    ny: usize,
    base_of: impl Fn(usize) -> usize,
    le_b: impl Fn(usize, usize) -> bool,
    le_y: impl Fn(usize, usize) -> bool,
    truncation: usize,
) -> Situs {
    let elems: Vec<Vec<Vec<usize>>> = (1..=truncation)
        .map(|n| {
            let mut v = Vec::new();
            for b0 in 0..nb {
                for t in all_tuples(n, ny) {
                    let mut e = vec![b0];
                    e.extend(t);
                    v.push(e);
                }
            }
            v
        })
        .collect();
    let sset = TruncatedSSet::from_fn(
        truncation,
        elems.clone(),
        |f, e: &Vec<usize>| {
            let mut out = vec![e[0]];
            out.extend(reselect(f, &e[1..].to_vec()));
            out
        },
        |e| format!("{e:?}"),
    )
    .expect("closed under reselection");
    let filters = elems
        .iter()
        .map(|es| {
            let small = BitSet::from_iter(
                es.len(),
                (0..es.len()).filter(|&k| {
                    let e = &es[k];
                    le_b(e[0], base_of(e[1])) && e[1..].windows(2).all(|w| le_y(w[0], w[1]))
                }),
            );
            GradedFilter::new(es.len(), vec![small]).expect("sizes agree")
        })
        .collect();
    Situs::from_parts(sset, filters, Semantics::Graded).expect("shapes agree")
}

fn certify(s: &Setup, family: &[Trivialization]) -> Result<bool> {
    const D: usize = 2;
    let (nb, nx, nf) = (s.b.len(), s.x.len(), s.f.len());
    let le_b = |u: usize, v: usize| s.b.minimal_open(u).contains(v);
    let src = over_base(nb, nx, |xi| s.p[xi], le_b, |a, c| s.le_x(a, c), D);
    let tgt = over_base(
        nb,
        nb * nf,
        |y| y / nf,
        le_b,
        |a, c| le_b(a / nf, c / nf) && s.le_f(a % nf, c % nf),
        D,
    );
    let psi = |b0: usize, xi: usize| s.p[xi] * nf + family[b0].bijections[s.p[xi]][s.slot[xi]];
    // ψ is a bijection X → B × F for each b0; its inverse
    let mut inv = vec![vec![0; nb * nf]; nb];
    for b0 in 0..nb {
        for xi in 0..nx {
            inv[b0][psi(b0, xi)] = xi;
        }
    }
    let index_src = |e: &[usize]| e.iter().skip(1).fold(e[0], |acc, &v| acc * nx + v);
    let index_tgt = |e: &[usize]| e.iter().skip(1).fold(e[0], |acc, &v| acc * nb * nf + v);
    let mut fwd: Vec<Vec<usize>> = Vec::new();
    let mut bwd: Vec<Vec<usize>> = Vec::new();
    for n in 1..=D {
        let mut fw = vec![0; src.size(n)];
        let mut bw = vec![0; tgt.size(n)];
        for b0 in 0..nb {
            for t in all_tuples(n, nx) {
                let mut e = vec![b0];
                e.extend(t.iter().copied());
                let mut img = vec![b0];
                img.extend(t.iter().map(|&xi| psi(b0, xi)));
                fw[index_src(&e)] = index_tgt(&img);
                bw[index_tgt(&img)] = index_src(&e);
            }
        }
        fwd.push(fw);
        bwd.push(bw);
    }
    let ok_fwd = check_morphism(&SitusMorphism::new(fwd), &src, &tgt)?.is_none();
    let ok_bwd = check_morphism(&SitusMorphism::new(bwd), &tgt, &src)?.is_none();
    Ok(ok_fwd && ok_bwd)
}

/// Classical check: over the minimal open `U_b` of every base point,
/// `p⁻¹(U_b) ≅ U_b × F` over `U_b`, searched over all fibre-wise bijections
/// and tested with open sets.
pub fn is_locally_trivial_classical(
    x: &FiniteTopSpace,
    b: &FiniteTopSpace,
    p: &[usize],
    f: &FiniteTopSpace,
) -> Result<bool> {
    let Some(s) = setup(x, b, p, f)? else {
        return Ok(false);
    };
    // every open around b0 contains its minimal open, and trivializations
    // restrict, so the minimal opens decide
    Ok((0..b.len()).all(|b0| homeomorphic_over(&s, b.minimal_open(b0))))
}

fn homeomorphic_over(s: &Setup, u: &BitSet) -> bool {
    let nf = s.f.len();
    let base_pts: Vec<usize> = u.iter().collect();
    let over = BitSet::from_iter(s.x.len(), (0..s.x.len()).filter(|&xi| u.contains(s.p[xi])));
    let total = s.x.subspace(&over);
    let prod = s.b.subspace(u).product(s.f);
    let local_x: Vec<usize> = over.iter().collect();
    let perms = permutations(nf);
    let k = base_pts.len();
    let mut choice = vec![0usize; k];
    loop {
        // point of the subspace ↦ (position of its base point in U, φ)
        let map: Vec<usize> = local_x
            .iter()
            .map(|&xi| {
                let bpos = base_pts.iter().position(|&bb| bb == s.p[xi]).expect("over U");
                bpos * nf + perms[choice[bpos]][s.slot[xi]]
            })
            .collect();
        if total.is_homeomorphism(&map, &prod) {
            return true;
        }
        let mut i = 0;
        while i < k && choice[i] + 1 == perms.len() {
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            return false;
        }
        choice[i] += 1;
    }
}

/// A homeomorphism `X ≅ B × F` over `B`, as the image index `b·|F| + f` of
/// every point of `X`.
pub fn global_trivialization(
    x: &FiniteTopSpace,
    b: &FiniteTopSpace,
    p: &[usize],
    f: &FiniteTopSpace,
) -> Result<Option<Vec<usize>>> {
    let Some(s) = setup(x, b, p, f)? else {
        return Ok(None);
    };
    let all = BitSet::full(b.len());
    Ok(s.trivialize(&all).map(|bij| {
        (0..x.len()).map(|xi| p[xi] * f.len() + bij[p[xi]][s.slot[xi]]).collect()
    }))
}

/// `B × F` with the preorder generated by the fibre order and, for every
/// specialization `b ≤ b'` with `b ≠ b'`, the edges `(b, y) ≤ (b', φ(y))` of
/// the given map `φ: F → F`. Points are `b·|F| + y`. Returns the space and
/// its projection.
pub fn glue(
    base: &FiniteTopSpace,
    fibre: &FiniteTopSpace,
    edges: &[((usize, usize), Vec<usize>)],
) -> Result<(FiniteTopSpace, Vec<usize>)> {
    let (nb, nf) = (base.len(), fibre.len());
    let n = nb * nf;
    let mut le = vec![vec![false; n]; n];
    for bi in 0..nb {
        for y in 0..nf {
            for y2 in fibre.minimal_open(y).iter() {
                le[bi * nf + y][bi * nf + y2] = true;
            }
        }
    }
    for ((b1, b2), phi) in edges {
        if !base.minimal_open(*b1).contains(*b2) || phi.len() != nf || phi.iter().any(|&v| v >= nf) {
            return Err(domain("edge map does not follow the base order"));
        }
        for (y, &v) in phi.iter().enumerate() {
            le[b1 * nf + y][b2 * nf + v] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    let ups: Vec<BitSet> = (0..n).map(|i| BitSet::from_iter(n, (0..n).filter(|&j| le[i][j]))).collect();
    let labels: Vec<String> = (0..n)
        .map(|i| format!("{}.{}", base.labels()[i / nf], fibre.labels()[i % nf]))
        .collect();
    let x = FiniteTopSpace::from_up_sets(labels, &ups)?;
    Ok((x, (0..n).map(|i| i / nf).collect()))
}

/// The connected double cover of the pseudocircle: sheets over `U_c` are
/// `{c0,a0,b0}`, `{c1,a1,b1}`, over `U_d` they cross: `{d0,a0,b1}`,
/// `{d1,a1,b0}`.
pub fn pseudocircle_double_cover() -> (FiniteTopSpace, FiniteTopSpace, Vec<usize>, FiniteTopSpace) {
    let names = ["a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1"];
    let labels: Vec<String> = names.iter().map(|s| String::from(*s)).collect();
    let up = |xs: &[usize]| BitSet::from_iter(8, xs.iter().copied());
    let ups = [up(&[0]), up(&[1]), up(&[2]), up(&[3]), up(&[4, 0, 2]), up(&[5, 1, 3]), up(&[6, 0, 3]), up(&[7, 1, 2])];
    let x = FiniteTopSpace::from_up_sets(labels, &ups).expect("preorder");
    let p = vec![0, 0, 1, 1, 2, 2, 3, 3];
    let fibre = FiniteTopSpace::discrete(vec![String::from("0"), String::from("1")]);
    (x, FiniteTopSpace::pseudocircle(), p, fibre)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| String::from(*s)).collect()
    }

    #[test]
    fn product_projection_is_trivial() {
        let b = FiniteTopSpace::sierpinski();
        let f = FiniteTopSpace::sierpinski();
        let (x, p) = glue(&b, &f, &[((0, 1), vec![0, 1])]).unwrap();
        let r = is_locally_trivial(&x, &b, &p, &f).unwrap();
        assert!(r.locally_trivial && r.certified);
        assert!(is_locally_trivial_classical(&x, &b, &p, &f).unwrap());
        assert!(global_trivialization(&x, &b, &p, &f).unwrap().is_some());
    }

    #[test]
    fn collapsing_edge_is_not_trivial() {
        let b = FiniteTopSpace::sierpinski();
        let f = FiniteTopSpace::discrete(pts(&["0", "1"]));
        let (x, p) = glue(&b, &f, &[((0, 1), vec![0, 0])]).unwrap();
        assert!(!is_locally_trivial(&x, &b, &p, &f).unwrap().locally_trivial);
        assert!(!is_locally_trivial_classical(&x, &b, &p, &f).unwrap());
    }

    #[test]
    fn mismatched_fibres() {
        let b = FiniteTopSpace::discrete(pts(&["u", "v"]));
        let x = FiniteTopSpace::discrete(pts(&["u0", "v0", "v1"]));
        let f = FiniteTopSpace::discrete(pts(&["0", "1"]));
        let r = is_locally_trivial(&x, &b, &[0, 1, 1], &f).unwrap();
        assert!(!r.locally_trivial && r.failing_point.is_none());
    }

    #[test]
    fn double_cover() {
        let (x, b, p, f) = pseudocircle_double_cover();
        let r = is_locally_trivial(&x, &b, &p, &f).unwrap();
        assert!(r.locally_trivial && r.certified);
        assert!(is_locally_trivial_classical(&x, &b, &p, &f).unwrap());
        assert!(global_trivialization(&x, &b, &p, &f).unwrap().is_none());
    }
}
