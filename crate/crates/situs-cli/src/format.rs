//! JSON forms of the library objects.
//!
//! Simplices, points and elements are referred to by label everywhere;
//! rationals are strings `"p/q"` (or integers written as strings).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use situs::model::FiniteStructure;
use situs::num::{format_q, parse_q, Q};
use situs::simplicial::{all_maps, MonotoneMap};
use situs::space::{FiniteMetricSpace, FiniteTopSpace};
use situs::{BitSet, GradedFilter, Semantics, Situs, SitusMorphism, TruncatedSSet};

use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn index_of(labels: &[String]) -> Result<BTreeMap<&str, usize>> {
    let mut out = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if out.insert(l.as_str(), i).is_some() {
            return Err(input(format!("duplicate label {l:?}")));
        }
    }
    Ok(out)
}

fn lookup(index: &BTreeMap<&str, usize>, label: &str, what: &str) -> Result<usize> {
    index.get(label).copied().ok_or_else(|| input(format!("unknown {what} {label:?}")))
}

fn subset(index: &BTreeMap<&str, usize>, size: usize, labels: &[String], what: &str) -> Result<BitSet> {
    let mut s = BitSet::new(size);
    for l in labels {
        s.insert(lookup(index, l, what)?);
    }
    Ok(s)
}

fn labels_of(s: &BitSet, labels: &[String]) -> Vec<String> {
    s.iter().map(|i| labels[i].clone()).collect()
}

fn degree_key(n: usize) -> String {
    n.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterJson {
    pub carrier: Vec<String>,
    pub grades: Vec<Vec<String>>,
}

impl FilterJson {
    pub fn to_filter(&self) -> Result<GradedFilter> {
        let index = index_of(&self.carrier)?;
        self.grades_over(&index, self.carrier.len())
    }

    fn grades_over(&self, index: &BTreeMap<&str, usize>, size: usize) -> Result<GradedFilter> {
        let grades = self
            .grades
            .iter()
            .map(|g| subset(index, size, g, "element"))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedFilter::new(size, grades)?)
    }

    pub fn from_filter(f: &GradedFilter, carrier: &[String]) -> Self {
        FilterJson {
            carrier: carrier.to_vec(),
            grades: f.grades().iter().map(|g| labels_of(g, carrier)).collect(),
        }
    }
}

/// `action` maps `"m->n:values"` to a table from degree-`n` labels to
/// degree-`m` labels. Missing maps are filled in by composition, so faces
/// and degeneracies suffice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    pub truncation: usize,
    pub carriers: BTreeMap<String, Vec<String>>,
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

impl SSetJson {
    fn carriers(&self) -> Result<Vec<Vec<String>>> {
        if self.truncation == 0 {
            return Err(input("truncation must be at least 1"));
        }
        if let Some(k) = self.carriers.keys().find(|k| k.parse::<usize>().map_or(true, |n| n == 0 || n > self.truncation)) {
            return Err(input(format!("carrier key {k:?} is not a degree in 1..={}", self.truncation)));
        }
        (1..=self.truncation)
            .map(|n| {
                self.carriers
                    .get(&degree_key(n))
                    .cloned()
                    .ok_or_else(|| input(format!("missing carrier for degree {n}")))
            })
            .collect()
    }

    /// Builds without checking functoriality.
    pub fn to_sset_unchecked(&self) -> Result<TruncatedSSet> {
        let d = self.truncation;
        let labels = self.carriers()?;
        let index: Vec<BTreeMap<&str, usize>> = labels.iter().map(|l| index_of(l)).collect::<Result<_>>()?;
        let mut action: BTreeMap<MonotoneMap, Vec<usize>> = BTreeMap::new();
        for (key, table) in &self.action {
            let f = MonotoneMap::parse_key(key)?;
            let (m, n) = (f.source(), f.target());
            if m > d || n > d || m == 0 {
                return Err(input(format!("map {key} is beyond the truncation")));
            }
            let mut out = vec![usize::MAX; labels[n - 1].len()];
            for (src, tgt) in table {
                out[lookup(&index[n - 1], src, "simplex")?] = lookup(&index[m - 1], tgt, "simplex")?;
            }
            if let Some(i) = out.iter().position(|&v| v == usize::MAX) {
                return Err(input(format!("map {key} has no image for {:?}", labels[n - 1][i])));
            }
            action.insert(f, out);
        }
        for n in 1..=d {
            action.entry(MonotoneMap::identity(n)).or_insert_with(|| (0..labels[n - 1].len()).collect());
        }
        complete_action(&mut action, d);
        Ok(TruncatedSSet::from_parts(d, labels, action)?)
    }

    pub fn to_sset(&self) -> Result<TruncatedSSet> {
        let x = self.to_sset_unchecked()?;
        if let Some((f, g)) = x.functoriality_failure() {
            return Err(input(format!("action is not functorial at {} after {}", f.key(), g.key())));
        }
        Ok(x)
    }

    /// Every non-identity map is written out.
    pub fn from_sset(x: &TruncatedSSet) -> Self {
        let d = x.truncation();
        let carriers = (1..=d).map(|n| (degree_key(n), x.labels(n).to_vec())).collect();
        let action = x
            .action()
            .iter()
            .filter(|(f, _)| !f.is_identity())
            .map(|(f, table)| {
                let (src, tgt) = (x.labels(f.target()), x.labels(f.source()));
                let t = table.iter().enumerate().map(|(i, &j)| (src[i].clone(), tgt[j].clone())).collect();
                (f.key(), t)
            })
            .collect();
        SSetJson { truncation: d, carriers, action }
    }
}

/// Fills in `X(g ∘ f) = X(f) ∘ X(g)` until nothing new appears.
fn complete_action(action: &mut BTreeMap<MonotoneMap, Vec<usize>>, d: usize) {
    let wanted = all_maps(d).len();
    loop {
        if action.len() >= wanted {
            return;
        }
        let known: Vec<(MonotoneMap, Vec<usize>)> = action.iter().map(|(f, t)| (f.clone(), t.clone())).collect();
        let before = action.len();
        for (inner, ti) in &known {
            for (outer, to) in &known {
                if inner.target() != outer.source() {
                    continue;
                }
                let f = outer.compose(inner).expect("composable");
                action.entry(f).or_insert_with(|| to.iter().map(|&e| ti[e]).collect());
            }
        }
        if action.len() == before {
            return;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsJson {
    #[default]
    Graded,
    Generated,
}

impl From<SemanticsJson> for Semantics {
    fn from(s: SemanticsJson) -> Self {
        match s {
            SemanticsJson::Graded => Semantics::Graded,
            SemanticsJson::Generated => Semantics::Generated,
        }
    }
}

impl From<Semantics> for SemanticsJson {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::Graded => SemanticsJson::Graded,
            Semantics::Generated => SemanticsJson::Generated,
        }
    }
}

/// A missing degree filter is antidiscrete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitusJson {
    #[serde(flatten)]
    pub sset: SSetJson,
    #[serde(default)]
    pub filters: BTreeMap<String, FilterJson>,
    #[serde(default)]
    pub semantics: SemanticsJson,
}

impl SitusJson {
    /// Shapes only; [`Situs::validate`] reports continuity.
    pub fn to_situs_unchecked(&self) -> Result<Situs> {
        let x = self.sset.to_sset()?;
        self.with_sset(x)
    }

    pub fn with_sset(&self, x: TruncatedSSet) -> Result<Situs> {
        let d = x.truncation();
        if let Some(k) = self.filters.keys().find(|k| k.parse::<usize>().map_or(true, |n| n == 0 || n > d)) {
            return Err(input(format!("filter key {k:?} is not a degree in 1..={d}")));
        }
        let filters = (1..=d)
            .map(|n| match self.filters.get(&degree_key(n)) {
                None => Ok(GradedFilter::antidiscrete(x.size(n))),
                Some(f) => {
                    let index = index_of(x.labels(n))?;
                    if f.carrier.len() != x.size(n) || f.carrier.iter().any(|l| !index.contains_key(l.as_str())) {
                        return Err(input(format!("degree-{n} filter carrier differs from the simplices")));
                    }
                    f.grades_over(&index, x.size(n))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Situs::from_parts(x, filters, self.semantics.into())?)
    }

    pub fn to_situs(&self) -> Result<Situs> {
        let s = self.to_situs_unchecked()?;
        if let Some((f, grade)) = s.validate() {
            return Err(input(format!("structural map {} is not continuous at grade {grade}", f.key())));
        }
        Ok(s)
    }

    pub fn from_situs(s: &Situs) -> Self {
        let x = s.sset();
        let filters = (1..=s.truncation())
            .map(|n| (degree_key(n), FilterJson::from_filter(s.filter(n), x.labels(n))))
            .collect();
        SitusJson { sset: SSetJson::from_sset(x), filters, semantics: s.semantics().into() }
    }
}

/// Degree ↦ (source label ↦ target label).
pub type MorphismJson = BTreeMap<String, BTreeMap<String, String>>;

pub fn to_morphism(m: &MorphismJson, source: &TruncatedSSet, target: &TruncatedSSet) -> Result<SitusMorphism> {
    let d = source.truncation();
    if target.truncation() != d {
        return Err(input("source and target truncations differ"));
    }
    let maps = (1..=d)
        .map(|n| {
            let src = index_of(source.labels(n))?;
            let tgt = index_of(target.labels(n))?;
            let empty = BTreeMap::new();
            let table = m.get(&degree_key(n)).unwrap_or(&empty);
            let mut out = vec![usize::MAX; source.size(n)];
            for (a, b) in table {
                out[lookup(&src, a, "source simplex")?] = lookup(&tgt, b, "target simplex")?;
            }
            if let Some(i) = out.iter().position(|&v| v == usize::MAX) {
                return Err(input(format!("no image for {:?} in degree {n}", source.labels(n)[i])));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SitusMorphism::new(maps))
}

pub fn from_morphism(f: &SitusMorphism, source: &TruncatedSSet, target: &TruncatedSSet) -> MorphismJson {
    (1..=source.truncation())
        .map(|n| {
            let table = f
                .at(n)
                .iter()
                .enumerate()
                .map(|(i, &j)| (source.labels(n)[i].clone(), target.labels(n)[j].clone()))
                .collect();
            (degree_key(n), table)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub source: SitusJson,
    pub target: SitusJson,
    pub map: MorphismJson,
}

impl ArrowJson {
    pub fn to_arrow(&self) -> Result<situs::lifting::Arrow> {
        let source = self.source.to_situs()?;
        let target = self.target.to_situs()?;
        let map = to_morphism(&self.map, source.sset(), target.sset())?;
        Ok(situs::lifting::Arrow::new(source, target, map)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceJson {
    pub fn to_space(&self) -> Result<FiniteTopSpace> {
        let index = index_of(&self.points)?;
        let opens = self
            .opens
            .iter()
            .map(|o| subset(&index, self.points.len(), o, "point"))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteTopSpace::new(self.points.clone(), opens)?)
    }

    pub fn from_space(x: &FiniteTopSpace) -> Self {
        SpaceJson {
            points: x.labels().to_vec(),
            opens: x.opens().iter().map(|o| labels_of(o, x.labels())).collect(),
        }
    }
}

fn rational(s: &str) -> Result<Q> {
    parse_q(s).map_err(|_| input(format!("{s:?} is not a rational p/q")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub points: Vec<String>,
    pub dist: Vec<Vec<String>>,
    pub grid: Vec<String>,
}

impl MetricJson {
    pub fn to_metric(&self) -> Result<FiniteMetricSpace> {
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|v| rational(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let grid = self.grid.iter().map(|v| rational(v)).collect::<Result<Vec<_>>>()?;
        Ok(FiniteMetricSpace::new(self.points.clone(), dist, grid)?)
    }

    pub fn from_metric(m: &FiniteMetricSpace) -> Self {
        let n = m.len();
        MetricJson {
            points: m.labels().to_vec(),
            dist: (0..n).map(|a| (0..n).map(|b| format_q(&m.dist(a, b))).collect()).collect(),
            grid: m.grid().iter().map(format_q).collect(),
        }
    }
}

/// An element of a structure, by position or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Index(usize),
    Label(String),
}

/// `arity` is only needed for relations given with no tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub universe: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<Vec<ElementJson>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arity: BTreeMap<String, usize>,
}

impl StructureJson {
    pub fn to_structure(&self) -> Result<FiniteStructure> {
        let index = index_of(&self.universe)?;
        let mut relations = BTreeMap::new();
        for (name, tuples) in &self.relations {
            let arity = match (self.arity.get(name), tuples.first()) {
                (Some(&a), _) => a,
                (None, Some(t)) => t.len(),
                (None, None) => return Err(input(format!("relation {name:?} is empty; give its arity"))),
            };
            let mut set = std::collections::BTreeSet::new();
            for t in tuples {
                if t.len() != arity {
                    return Err(input(format!("tuple of length {} in {arity}-ary relation {name:?}", t.len())));
                }
                let args = t
                    .iter()
                    .map(|e| match e {
                        ElementJson::Index(i) if *i < self.universe.len() => Ok(*i),
                        ElementJson::Index(i) => Err(input(format!("element index {i} outside the universe"))),
                        ElementJson::Label(l) => lookup(&index, l, "element"),
                    })
                    .collect::<Result<Vec<_>>>()?;
                set.insert(args);
            }
            relations.insert(name.clone(), (arity, set));
        }
        Ok(FiniteStructure::new(self.universe.clone(), relations)?)
    }

    pub fn from_structure(m: &FiniteStructure) -> Self {
        let relations = m
            .relations()
            .iter()
            .map(|(name, (_, set))| {
                (name.clone(), set.iter().map(|t| t.iter().map(|&i| ElementJson::Index(i)).collect()).collect())
            })
            .collect();
        let arity = m.relations().iter().map(|(name, (a, _))| (name.clone(), *a)).collect();
        StructureJson { universe: m.universe().to_vec(), relations, arity }
    }
}

/// `members[i][j]` is the label in `M` of `f_i` at the `j`-th point of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub members: Vec<Vec<String>>,
}

impl FamilyJson {
    pub fn to_maps(&self, x_points: usize, m: &[String]) -> Result<Vec<Vec<usize>>> {
        let index = index_of(m)?;
        self.members
            .iter()
            .map(|f| {
                if f.len() != x_points {
                    return Err(input(format!("member with {} values for {x_points} points", f.len())));
                }
                f.iter().map(|l| lookup(&index, l, "point of M")).collect()
            })
            .collect()
    }
}
