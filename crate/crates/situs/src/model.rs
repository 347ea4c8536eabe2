//! Finite relational structures, quantifier-free formulas, indiscernibility
//! grades and the Stone situs of a structure over a parameter set.
//!
//! Formula syntax, prefix and parenthesised:
//!
//! ```text
//! formula := "true" | "false"
//!          | "(" "and" formula* ")" | "(" "or" formula* ")" | "(" "not" formula ")"
//!          | "(" "=" term term ")" | "(" symbol term* ")"
//! term    := "x" digits      variable, numbered from 1
//!          | "@" label       parameter, an element of the universe
//! ```

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::filter::{GradedFilter, Semantics};
use crate::set::BitSet;
use crate::simplicial::{all_tuples, MonotoneMap, TruncatedSSet};
use crate::situs::{topologise, Situs};

/// A finite universe with named relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    universe: Vec<String>,
    relations: BTreeMap<String, (usize, BTreeSet<Vec<usize>>)>,
}

impl FiniteStructure {
    pub fn new(universe: Vec<String>, relations: BTreeMap<String, (usize, BTreeSet<Vec<usize>>)>) -> Result<Self> {
        if universe.iter().collect::<BTreeSet<_>>().len() != universe.len() {
            return Err(domain("universe labels must be distinct"));
        }
        for (name, (arity, rows)) in &relations {
            if name == "=" || name == "and" || name == "or" || name == "not" {
                return Err(domain(format!("reserved relation symbol {name:?}")));
            }
            if rows.iter().any(|r| r.len() != *arity || r.iter().any(|&v| v >= universe.len())) {
                return Err(domain(format!("relation {name} does not respect its arity or universe")));
            }
        }
        Ok(FiniteStructure { universe, relations })
    }

    /// `{0..n-1}` with its strict order as `<`; labels `"1".."n"`.
    pub fn linear_order(n: usize) -> Self {
        let rows = (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect();
        let mut relations = BTreeMap::new();
        relations.insert(String::from("<"), (2, rows));
        FiniteStructure { universe: (1..=n).map(|i| i.to_string()).collect(), relations }
    }

    /// A pure set: equality only.
    pub fn pure_set(n: usize) -> Self {
        FiniteStructure { universe: (1..=n).map(|i| i.to_string()).collect(), relations: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn relations(&self) -> &BTreeMap<String, (usize, BTreeSet<Vec<usize>>)> {
        &self.relations
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.universe.iter().position(|u| u == label).ok_or_else(|| domain(format!("no element {label:?}")))
    }

    pub fn holds(&self, symbol: &str, args: &[usize]) -> Result<bool> {
        let (arity, rows) = self.relations.get(symbol).ok_or_else(|| domain(format!("unknown relation {symbol:?}")))?;
        if *arity != args.len() {
            return Err(domain(format!("{symbol} has arity {arity}, got {} arguments", args.len())));
        }
        Ok(rows.contains(args))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// 1-based
    Var(usize),
    Param(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Eq(Term, Term),
    Rel(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token::Atom(core::mem::take(cur)));
        }
    };
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut cur, &mut out);
                out.push(if ch == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    m: &'a FiniteStructure,
}

impl Parser<'_> {
    fn next(&mut self) -> Result<Token> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| domain("unexpected end of formula"))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.next()? {
            Token::Atom(a) if a == "true" => Ok(Formula::Const(true)),
            Token::Atom(a) if a == "false" => Ok(Formula::Const(false)),
            Token::Atom(a) => Err(domain(format!("expected a formula at token {}, found {a:?}", self.pos))),
            Token::Close => Err(domain(format!("unexpected ')' at token {}", self.pos))),
            Token::Open => {
                let head = match self.next()? {
                    Token::Atom(a) => a,
                    _ => return Err(domain(format!("expected an operator at token {}", self.pos))),
                };
                let f = match head.as_str() {
                    "and" | "or" => {
                        let mut parts = Vec::new();
                        while self.peek() != Some(&Token::Close) {
                            parts.push(self.formula()?);
                        }
                        if head == "and" {
                            Formula::And(parts)
                        } else {
                            Formula::Or(parts)
                        }
                    }
                    "not" => Formula::Not(Box::new(self.formula()?)),
                    "=" => {
                        let a = self.term()?;
                        let b = self.term()?;
                        Formula::Eq(a, b)
                    }
                    sym => {
                        let (arity, _) = self
                            .m
                            .relations
                            .get(sym)
                            .ok_or_else(|| domain(format!("unknown relation symbol {sym:?}")))?;
                        let args = (0..*arity).map(|_| self.term()).collect::<Result<Vec<_>>>()?;
                        Formula::Rel(String::from(sym), args)
                    }
                };
                match self.next()? {
                    Token::Close => Ok(f),
                    _ => Err(domain(format!("expected ')' at token {}", self.pos))),
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.next()? {
            Token::Atom(a) => {
                if let Some(label) = a.strip_prefix('@') {
                    Ok(Term::Param(self.m.element(label)?))
                } else if let Some(k) = a.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    if k == 0 {
                        return Err(domain("variables are numbered from x1"));
                    }
                    Ok(Term::Var(k))
                } else {
                    Err(domain(format!("bad term {a:?}")))
                }
            }
            _ => Err(domain(format!("expected a term at token {}", self.pos))),
        }
    }
}

impl Formula {
    /// Parses against the signature of `m`.
    pub fn parse(s: &str, m: &FiniteStructure) -> Result<Formula> {
        let mut p = Parser { toks: tokenize(s), pos: 0, m };
        let f = p.formula()?;
        if p.pos != p.toks.len() {
            return Err(domain(format!("trailing input after token {}", p.pos)));
        }
        Ok(f)
    }

    /// Largest variable index.
    pub fn arity(&self) -> usize {
        let term = |t: &Term| if let Term::Var(k) = t { *k } else { 0 };
        match self {
            Formula::Const(_) => 0,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::arity).max().unwrap_or(0),
            Formula::Not(f) => f.arity(),
            Formula::Eq(a, b) => term(a).max(term(b)),
            Formula::Rel(_, ts) => ts.iter().map(term).max().unwrap_or(0),
        }
    }

    pub fn parameters(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<usize>) {
        let mut term = |t: &Term| {
            if let Term::Param(p) = t {
                out.insert(*p);
            }
        };
        match self {
            Formula::Const(_) => {}
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_params(out)),
            Formula::Not(f) => f.collect_params(out),
            Formula::Eq(a, b) => {
                term(a);
                term(b);
            }
            Formula::Rel(_, ts) => ts.iter().for_each(term),
        }
    }

    /// Truth value at an assignment of `x1..` to elements.
    pub fn eval(&self, m: &FiniteStructure, xs: &[usize]) -> Result<bool> {
        let val = |t: &Term| -> Result<usize> {
            match t {
                Term::Param(p) => Ok(*p),
                Term::Var(k) => {
                    xs.get(k - 1).copied().ok_or_else(|| domain(format!("x{k} is unassigned")))
                }
            }
        };
        Ok(match self {
            Formula::Const(b) => *b,
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(m, xs)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(m, xs)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Not(f) => !f.eval(m, xs)?,
            Formula::Eq(a, b) => val(a)? == val(b)?,
            Formula::Rel(s, ts) => {
                let args = ts.iter().map(val).collect::<Result<Vec<_>>>()?;
                m.holds(s, &args)?
            }
        })
    }
}

fn increasing_tuples(len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..n {
            cur.push(v);
            rec(len, n, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(len, n, 0, &mut cur, &mut out);
    out
}

/// `φ` takes one truth value on `(a_{i_1}..a_{i_k})` over all index tuples
/// `i_1 < … < i_k` whose entries are pairwise distinct.
pub fn is_homogeneous(m: &FiniteStructure, phi: &Formula, a: &[usize]) -> Result<bool> {
    let k = phi.arity().max(1);
    let mut seen: Option<bool> = None;
    for idx in increasing_tuples(k, a.len()) {
        let args: Vec<usize> = idx.iter().map(|&i| a[i]).collect();
        if args.iter().collect::<BTreeSet<_>>().len() != k {
            continue;
        }
        let v = phi.eval(m, &args)?;
        match seen {
            None => seen = Some(v),
            Some(w) if w != v => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// The `φ`-homogeneous sequences of length `n`, indexed as tuples in `Mⁿ`.
pub fn indiscernibility_grade(m: &FiniteStructure, phi: &Formula, n: usize) -> Result<BitSet> {
    let tuples = all_tuples(n, m.len());
    let mut out = BitSet::new(tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        if is_homogeneous(m, phi, t)? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// `n ↦ Mⁿ`; grade `j` is the sequences homogeneous for the first `j`
/// formulas, grade 0 everything. Validated.
pub fn stone_situs(m: &FiniteStructure, params: &[usize], phis: &[Formula], truncation: usize) -> Result<Situs> {
    if params.iter().any(|&p| p >= m.len()) {
        return Err(domain("parameter outside the universe"));
    }
    for phi in phis {
        if let Some(p) = phi.parameters().into_iter().find(|p| !params.contains(p)) {
            return Err(domain(format!("formula uses {} outside the parameter set", m.universe[p])));
        }
    }
    let sset = TruncatedSSet::representable(&m.universe, truncation);
    let filters = (1..=truncation)
        .map(|n| {
            let size = sset.size(n);
            let mut grades = vec![BitSet::full(size)];
            for phi in phis {
                let g = indiscernibility_grade(m, phi, n)?;
                grades.push(g.intersection(grades.last().expect("nonempty")));
            }
            GradedFilter::new(size, grades)
        })
        .collect::<Result<Vec<_>>>()?;
    Situs::new(sset, filters, Semantics::Generated)
}

/// Classes of elements by the truth values of the one-variable formulas of
/// `Φ`, numbered by first appearance. Formulas in more variables do not
/// constrain one-types and are skipped.
pub fn qf_types(m: &FiniteStructure, phis: &[Formula]) -> Result<Vec<usize>> {
    let mut keys: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::with_capacity(m.len());
    for a in 0..m.len() {
        let key = phis.iter().filter(|f| f.arity() <= 1).map(|f| f.eval(m, &[a])).collect::<Result<Vec<_>>>()?;
        let c = match keys.iter().position(|k| *k == key) {
            Some(c) => c,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        out.push(c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoneQuotient {
    /// class of each element in the Hausdorff quotient of the topologisation
    pub classes: Vec<usize>,
    pub points: usize,
    /// classes by direct qf-type computation
    pub direct: Vec<usize>,
    pub agrees: bool,
}

/// Topologises the Stone situs, identifies topologically indistinguishable
/// points and compares with the direct type computation.
pub fn stone_hausdorff_quotient(stone: &Situs, m: &FiniteStructure, phis: &[Formula]) -> Result<StoneQuotient> {
    if stone.semantics() != Semantics::Generated {
        return Err(domain("the Stone quotient expects generated semantics"));
    }
    let top = topologise(stone)?;
    let classes = top.t0_classes();
    let points = classes.iter().max().map_or(0, |c| c + 1);
    let direct = qf_types(m, phis)?;
    let agrees = same_partition(&classes, &direct);
    Ok(StoneQuotient { classes, points, direct, agrees })
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

/// Every non-decreasing reindexing `m → n` maps the minimal grade in degree
/// `n` into the minimal grade in degree `m`.
pub fn reindexing_preserves_homogeneity(stone: &Situs) -> bool {
    let d = stone.truncation();
    (1..=d).all(|n| {
        (1..=d).all(|k| {
            MonotoneMap::all(k, n).iter().all(|f| {
                let table = stone.sset().table(f);
                stone.filter(n).minimal().iter().all(|e| stone.filter(k).minimal().contains(table[e]))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::situs::is_symmetric;

    #[test]
    fn parse_and_eval() {
        let m = FiniteStructure::linear_order(4);
        let f = Formula::parse("(and (< x1 x2) (not (= x2 @4)))", &m).unwrap();
        assert_eq!(f.arity(), 2);
        assert!(f.eval(&m, &[0, 1]).unwrap());
        assert!(!f.eval(&m, &[0, 3]).unwrap());
        assert!(Formula::parse("(< x1)", &m).is_err());
        assert!(Formula::parse("(R x1 x2)", &m).is_err());
        assert!(Formula::parse("(< x1 x2) x3", &m).is_err());
        assert!(Formula::parse("(< x0 x2)", &m).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let m = FiniteStructure::linear_order(5);
        let lt = Formula::parse("(< x1 x2)", &m).unwrap();
        assert!(is_homogeneous(&m, &lt, &[0, 1, 3, 4]).unwrap());
        assert!(is_homogeneous(&m, &lt, &[2, 2, 2]).unwrap());
        assert!(!is_homogeneous(&m, &lt, &[0, 2, 1]).unwrap());
    }

    #[test]
    fn empty_formula_list_is_antidiscrete() {
        let m = FiniteStructure::linear_order(3);
        let s = stone_situs(&m, &[], &[], 3).unwrap();
        assert!((1..=3).all(|n| s.filter(n).minimal().is_full()));
        let q = stone_hausdorff_quotient(&s, &m, &[]).unwrap();
        assert_eq!(q.points, 1);
    }

    #[test]
    fn order_types_over_a_parameter() {
        let m = FiniteStructure::linear_order(4);
        let phis: Vec<Formula> = ["(< x1 @2)", "(= x1 @2)", "(< @2 x1)"]
            .iter()
            .map(|s| Formula::parse(s, &m).unwrap())
            .collect();
        let s = stone_situs(&m, &[1], &phis, 3).unwrap();
        let q = stone_hausdorff_quotient(&s, &m, &phis).unwrap();
        assert_eq!(q.points, 3);
        assert!(q.agrees);
        assert!(reindexing_preserves_homogeneity(&s));
    }

    #[test]
    fn symmetry_probe() {
        let set = FiniteStructure::pure_set(3);
        let eq = Formula::parse("(= x1 x2)", &set).unwrap();
        assert!(is_symmetric(&stone_situs(&set, &[], &[eq], 3).unwrap()).unwrap());
        let ord = FiniteStructure::linear_order(3);
        let lt = Formula::parse("(< x1 x2)", &ord).unwrap();
        assert!(!is_symmetric(&stone_situs(&ord, &[], &[lt], 3).unwrap()).unwrap());
    }
}
