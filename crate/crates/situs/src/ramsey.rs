//! Colourings of non-degenerate simplices, homogeneous subcomplexes and
//! exhaustive Ramsey checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::set::BitSet;
use crate::simplicial::{MonotoneMap, TruncatedSSet};

/// A colour for each non-degenerate simplex of `X(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub dimension: usize,
    pub colours: usize,
    /// the non-degenerate simplices of `X(n)`, in carrier order
    pub simplices: Vec<usize>,
    /// `colour[i]` is the colour of `simplices[i]`
    pub colour: Vec<usize>,
}

impl Colouring {
    pub fn new(x: &TruncatedSSet, dimension: usize, colours: usize, colour: Vec<usize>) -> Result<Self> {
        if dimension == 0 || dimension > x.truncation() {
            return Err(Error::DegreeBudget { needed: dimension, available: x.truncation() });
        }
        let simplices = x.nondegenerate(dimension);
        if colour.len() != simplices.len() {
            return Err(domain(format!(
                "{} colours given for {} non-degenerate simplices",
                colour.len(),
                simplices.len()
            )));
        }
        if colour.iter().any(|&c| c >= colours) {
            return Err(domain("colour out of range"));
        }
        Ok(Colouring { dimension, colours, simplices, colour })
    }

    pub fn constant(x: &TruncatedSSet, dimension: usize) -> Result<Self> {
        if dimension == 0 || dimension > x.truncation() {
            return Err(Error::DegreeBudget { needed: dimension, available: x.truncation() });
        }
        Colouring::new(x, dimension, 1, vec![0; x.nondegenerate(dimension).len()])
    }

    fn colour_of(&self, simplex: usize) -> Option<usize> {
        self.simplices.binary_search(&simplex).ok().map(|i| self.colour[i])
    }
}

/// `c(X)`, degree by degree, with the part of each colour. A simplex without
/// non-degenerate `n`-faces is homogeneous for every colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    /// `simplices[k-1]` ⊆ `X(k)`
    pub simplices: Vec<BitSet>,
    /// `by_colour[c][k-1]`
    pub by_colour: Vec<Vec<BitSet>>,
}

impl Homogeneous {
    /// Closed under every structural map.
    pub fn is_subsset(&self, x: &TruncatedSSet) -> bool {
        x.action().iter().all(|(f, table)| {
            self.simplices[f.target() - 1].iter().all(|e| self.simplices[f.source() - 1].contains(table[e]))
        })
    }
}

/// Colours of the non-degenerate `n`-faces of `e ∈ X(k)`.
fn face_colours(x: &TruncatedSSet, c: &Colouring, k: usize, e: usize) -> BitSet {
    let mut seen = BitSet::new(c.colours);
    for f in MonotoneMap::all(c.dimension, k) {
        if let Some(col) = c.colour_of(x.act(&f, e)) {
            seen.insert(col);
        }
    }
    seen
}

pub fn homogeneous_subsset(x: &TruncatedSSet, c: &Colouring) -> Homogeneous {
    let d = x.truncation();
    let mut simplices = Vec::with_capacity(d);
    let mut by_colour = vec![Vec::with_capacity(d); c.colours];
    for k in 1..=d {
        let mut all = BitSet::new(x.size(k));
        let mut parts = vec![BitSet::new(x.size(k)); c.colours];
        for e in 0..x.size(k) {
            let seen = face_colours(x, c, k, e);
            match seen.count() {
                0 => {
                    all.insert(e);
                    parts.iter_mut().for_each(|p| p.insert(e));
                }
                1 => {
                    all.insert(e);
                    parts[seen.first().expect("one colour")].insert(e);
                }
                _ => {}
            }
        }
        simplices.push(all);
        for (col, p) in parts.into_iter().enumerate() {
            by_colour[col].push(p);
        }
    }
    Homogeneous { simplices, by_colour }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyReport {
    pub holds: bool,
    pub colourings: u64,
    /// a colouring with no homogeneous non-degenerate simplex of the target
    /// dimension, as colours of the `n`-subsets in lexicographic order
    pub counterexample: Option<Vec<usize>>,
    /// for the all-zero colouring, a homogeneous target simplex (vertices)
    pub example: Option<Vec<usize>>,
}

/// Default guard on the number of colourings.
pub const DEFAULT_MAX_COLOURINGS: u64 = 1 << 24;

/// Exhausts the colourings of the `arity`-subsets of `size` vertices, that
/// is the non-degenerate `arity`-simplices of `Δ_{size−1}`, and looks for a
/// homogeneous non-degenerate simplex on `target` vertices in each.
pub fn ramsey_check(size: usize, colours: usize, arity: usize, target: usize, max_colourings: u64) -> Result<RamseyReport> {
    if size == 0 || colours == 0 || arity == 0 || target < arity {
        return Err(domain("need size, colours, arity ≥ 1 and target ≥ arity"));
    }
    let x = TruncatedSSet::standard_simplex(size - 1, target);
    let edges = x.nondegenerate(arity);
    let tops = x.nondegenerate(target);
    let count = (colours as u128).checked_pow(edges.len() as u32).unwrap_or(u128::MAX);
    if count > max_colourings as u128 {
        return Err(Error::Size { what: "colourings", bound: count, limit: max_colourings });
    }
    // non-degenerate arity-faces of each top simplex, as positions in `edges`
    let faces: Vec<Vec<usize>> = tops
        .iter()
        .map(|&e| {
            let mut fs: Vec<usize> = MonotoneMap::all(arity, target)
                .iter()
                .filter_map(|f| edges.binary_search(&x.act(f, e)).ok())
                .collect();
            fs.sort_unstable();
            fs.dedup();
            fs
        })
        .collect();
    let homogeneous = |col: &[usize]| -> Option<usize> {
        faces.iter().position(|fs| fs.iter().all(|&i| col[i] == col[fs[0]]))
    };
    let mut col = vec![0usize; edges.len()];
    let example = homogeneous(&col).map(|t| x.vertices(target, tops[t]));
    let mut checked = 0u64;
    loop {
        checked += 1;
        if homogeneous(&col).is_none() {
            return Ok(RamseyReport { holds: false, colourings: checked, counterexample: Some(col), example });
        }
        // next colouring, last position fastest
        let mut i = col.len();
        loop {
            if i == 0 {
                return Ok(RamseyReport { holds: true, colourings: checked, counterexample: None, example });
            }
            i -= 1;
            col[i] += 1;
            if col[i] < colours {
                break;
            }
            col[i] = 0;
        }
    }
}
