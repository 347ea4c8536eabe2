use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use situs::analysis::{
    arzela_ascoli_report, check_completeness_lift, find_limit, is_cauchy, FunctionFamily, Implication, SequenceTower,
};
use situs::bundle::{global_trivialization, is_locally_trivial, is_locally_trivial_classical};
use situs::filter::is_ultrafilter;
use situs::lifting::{find_lift, pi0, quasi_compact_concise, LiftingProblem};
use situs::model::{reindexing_preserves_homogeneity, stone_hausdorff_quotient, stone_situs, Formula};
use situs::num::{format_q, qr};
use situs::ramsey::{ramsey_check, DEFAULT_MAX_COLOURINGS};
use situs::search::DEFAULT_MAX_CANDIDATES;
use situs::simplicial::all_tuples;
use situs::situs::{check_morphism, is_symmetric, MorphismFailure};
use situs::skorokhod::{jump_metric, mapping_space, realize_simplex, skorokhod_distance, GridPath, MappingFilter, DEFAULT_HOM_LIMIT};
use situs::{Situs, TruncatedSSet};

use crate::format::{
    from_morphism, to_morphism, ArrowJson, FamilyJson, FilterJson, MetricJson, MorphismJson, SSetJson, SitusJson,
    SpaceJson, StructureJson,
};
use crate::report::{Format, Report};
use crate::{CliError, MAX_CANDIDATES_ENV};

type Result<T> = std::result::Result<T, CliError>;

/// Finite surrogates of simplicial filters: validation, lifting problems and
/// the analytic, topological and combinatorial checks.
#[derive(Debug, Parser)]
#[command(name = "situs", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Guard on exhaustive searches [default: $SITUS_MAX_CANDIDATES or 10^7].
    #[arg(long, global = true)]
    pub max_candidates: Option<u64>,
    /// Truncation degree for objects built by the command.
    #[arg(long, default_value_t = 3, global = true)]
    pub truncation: usize,
    /// Leave out the timing field (for byte comparisons).
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Situs,
    Sset,
    Filter,
    Space,
    Metric,
    Structure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Skorokhod,
    Alternative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// the standard simplex Δ_top
    Simplex,
    /// tuples over the given points
    Representable,
    Point,
    Empty,
    /// two points, disconnected
    DiscretePair,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks a JSON object against its axioms.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Situs)]
        kind: Kind,
    },
    /// Checks that a labelled map is a situs morphism.
    CheckMorphism {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Searches a diagonal for the square f: A → X, g: B → Y over i: A → B, p: X → Y.
    Lift {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Connected components and the lifting characterization of π₀.
    Pi0 { file: PathBuf },
    /// Limit of a sequence in a finite metric space.
    Limit {
        #[arg(long)]
        space: PathBuf,
        /// comma-separated point labels
        #[arg(long)]
        seq: String,
    },
    /// Every Cauchy sequence of the given length has a limit.
    Complete {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Every principal ultrafilter converges.
    Compact { file: PathBuf },
    /// Local triviality of a map of finite spaces, both ways.
    Bundle {
        #[arg(long)]
        total: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        fibre: PathBuf,
        /// base label of each total-space point, comma-separated
        #[arg(long)]
        projection: String,
    },
    /// Skorokhod distance between two grid paths given by jump coordinates.
    SkorokhodDist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The grid paths into Δ_n as a metric space.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        grid: usize,
    },
    /// The Skorokhod mapping space Hom(X, Y).
    MappingSpace {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// degrees to build [default: the truncation of X]
        #[arg(long)]
        degrees: Option<usize>,
        #[arg(long, value_enum, default_value_t = Variant::Skorokhod)]
        variant: Variant,
        #[arg(long, default_value_t = DEFAULT_HOM_LIMIT)]
        hom_limit: usize,
    },
    /// Every colouring of the arity-subsets has a homogeneous target-subset.
    Ramsey {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        colours: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COLOURINGS)]
        max_colourings: u64,
    },
    /// Stone situs of a structure and its Hausdorff quotient.
    Stone {
        #[arg(long)]
        structure: PathBuf,
        /// comma-separated parameter labels
        #[arg(long, default_value = "")]
        params: String,
        /// a quantifier-free formula; repeat for several
        #[arg(long = "formula")]
        formulas: Vec<String>,
    },
    /// The Arzela-Ascoli diagram checks for a family of maps X → M.
    AaReport {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Prints a situs in the JSON input format.
    Generate {
        #[arg(value_enum)]
        what: Generator,
        #[arg(long, default_value_t = 1)]
        top: usize,
        /// comma-separated labels
        #[arg(long, default_value = "0,1")]
        points: String,
    },
}

impl Cli {
    fn budget(&self) -> Result<u64> {
        if let Some(n) = self.max_candidates {
            return Ok(n);
        }
        match std::env::var(MAX_CANDIDATES_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{MAX_CANDIDATES_ENV}={v:?} is not a number"))),
            Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
        }
    }
}

pub fn execute(cli: &Cli) -> (i32, String) {
    let start = Instant::now();
    if let Command::Generate { what, top, points } = &cli.command {
        return match generate(*what, *top, points, cli.truncation) {
            Ok(s) => (0, s),
            Err(e) => (e.exit_code(), format!("{e}\n")),
        };
    }
    match dispatch(cli) {
        Ok(report) => {
            let timing = (!cli.no_timing).then(|| start.elapsed());
            (if report.verdict { 0 } else { 1 }, report.render(cli.format, timing))
        }
        Err(e) => {
            let body = match cli.format {
                Format::Json => {
                    let kind = if e.exit_code() == crate::EXIT_BUDGET { "budget" } else { "input" };
                    let mut s = serde_json::to_string_pretty(&json!({ "error": kind, "message": e.to_string() }))
                        .expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => format!("{e}\n"),
            };
            (e.exit_code(), body)
        }
    }
}

fn read(report: &mut Report, name: &str, path: &Path) -> Result<Vec<u8>> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    report.input(name, &bytes);
    Ok(bytes)
}

fn load<T: DeserializeOwned>(report: &mut Report, name: &str, path: &Path) -> Result<T> {
    let bytes = read(report, name, path)?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn split_labels(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn positions(labels: &[String], wanted: &[String], what: &str) -> Result<Vec<usize>> {
    wanted
        .iter()
        .map(|w| {
            labels
                .iter()
                .position(|l| l == w)
                .ok_or_else(|| CliError::Input(format!("unknown {what} {w:?}")))
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let budget = cli.budget()?;
    let d = cli.truncation;
    if d == 0 {
        return Err(CliError::Input("truncation must be at least 1".into()));
    }
    match &cli.command {
        Command::Validate { file, kind } => validate(file, *kind),
        Command::CheckMorphism { source, target, map } => {
            let mut r = Report::new("check-morphism");
            let s = load::<SitusJson>(&mut r, "source", source)?.to_situs()?;
            let t = load::<SitusJson>(&mut r, "target", target)?.to_situs()?;
            let f = to_morphism(&load::<MorphismJson>(&mut r, "map", map)?, s.sset(), t.sset())?;
            let failure = check_morphism(&f, &s, &t)?;
            r.set("failure", failure.as_ref().map(|e| describe_failure(e, &s)));
            Ok(r.verdict(failure.is_none()))
        }
        Command::Lift { i, p, f, g } => {
            let mut r = Report::new("lift");
            let i = load::<ArrowJson>(&mut r, "i", i)?.to_arrow()?;
            let p = load::<ArrowJson>(&mut r, "p", p)?.to_arrow()?;
            let f = to_morphism(&load::<MorphismJson>(&mut r, "f", f)?, i.source.sset(), p.source.sset())?;
            let g = to_morphism(&load::<MorphismJson>(&mut r, "g", g)?, i.target.sset(), p.target.sset())?;
            r.arg("max_candidates", budget);
            let h = find_lift(&LiftingProblem { i: &i, p: &p, f: &f, g: &g }, budget)?;
            match &h {
                Some(h) => r.set("lift", from_morphism(h, i.target.sset(), p.source.sset())),
                None => r.set("lift", "none"),
            }
            Ok(r.verdict(h.is_some()))
        }
        Command::Pi0 { file } => {
            let mut r = Report::new("pi0");
            let s = load::<SitusJson>(&mut r, "situs", file)?.to_situs()?;
            let p = pi0(&s, budget)?;
            let comp = s.sset().connected_components();
            let names = p.situs.sset().labels(1);
            let of: BTreeMap<&str, &str> =
                s.sset().labels(1).iter().zip(&comp).map(|(v, &c)| (v.as_str(), names[c].as_str())).collect();
            r.set("components", names.len());
            r.set("component_of", of);
            r.set("unit_in_left_class", p.left_in_l);
            r.set("counit_lifts_against_witnesses", p.right_in_lr);
            Ok(r.verdict(p.left_in_l && p.right_in_lr))
        }
        Command::Limit { space, seq } => {
            let mut r = Report::new("limit");
            let m = load::<MetricJson>(&mut r, "space", space)?.to_metric()?;
            r.arg("seq", seq);
            let a = positions(m.labels(), &split_labels(seq), "point")?;
            if a.is_empty() {
                return Err(CliError::Input("empty sequence".into()));
            }
            let tower = SequenceTower::new(a.len() - 1);
            let cauchy = is_cauchy(&a, &m, &tower, d)?;
            let lim = find_limit(&a, &m, &tower, d, budget)?;
            r.set("cauchy", cauchy);
            r.set("limit", lim.limit.map_or_else(|| "none".to_string(), |l| m.labels()[l].clone()));
            r.set("all_limits", lim.all.iter().map(|&l| m.labels()[l].clone()).collect::<Vec<_>>());
            Ok(r.verdict(lim.limit.is_some()))
        }
        Command::Complete { space, length } => {
            let mut r = Report::new("complete");
            let m = load::<MetricJson>(&mut r, "space", space)?.to_metric()?;
            r.arg("length", length);
            if *length < 2 {
                return Err(CliError::Input("sequences need length at least 2".into()));
            }
            let count = (m.len() as u128).checked_pow(*length as u32).unwrap_or(u128::MAX);
            if count > budget as u128 {
                return Err(CliError::Budget(format!("{count} sequences exceed the guard {budget}")));
            }
            let sequences = all_tuples(*length, m.len());
            let tower = SequenceTower::new(length - 1);
            let c = check_completeness_lift(&m, &sequences, &tower, d, budget)?;
            r.set("sequences", sequences.len());
            r.set("cauchy", c.cauchy);
            r.set(
                "first_failure",
                c.first_failure.map(|k| sequences[k].iter().map(|&v| m.labels()[v].clone()).collect::<Vec<_>>()),
            );
            Ok(r.verdict(c.holds))
        }
        Command::Compact { file } => {
            let mut r = Report::new("compact");
            let s = load::<SitusJson>(&mut r, "situs", file)?.to_situs()?;
            let q = quasi_compact_concise(&s, budget)?;
            let pts = s.sset().labels(1);
            let limits: BTreeMap<&str, Vec<&str>> = q
                .limits
                .iter()
                .enumerate()
                .map(|(u, ls)| (pts[u].as_str(), ls.iter().map(|&a| pts[a].as_str()).collect()))
                .collect();
            r.set("limits", limits);
            Ok(r.verdict(q.holds()))
        }
        Command::Bundle { total, base, fibre, projection } => {
            let mut r = Report::new("bundle");
            let x = load::<SpaceJson>(&mut r, "total", total)?.to_space()?;
            let b = load::<SpaceJson>(&mut r, "base", base)?.to_space()?;
            let f = load::<SpaceJson>(&mut r, "fibre", fibre)?.to_space()?;
            r.arg("projection", projection);
            let p = positions(b.labels(), &split_labels(projection), "base point")?;
            if p.len() != x.len() {
                return Err(CliError::Input(format!("projection lists {} points, total space has {}", p.len(), x.len())));
            }
            let rep = is_locally_trivial(&x, &b, &p, &f)?;
            let classical = is_locally_trivial_classical(&x, &b, &p, &f)?;
            let global = global_trivialization(&x, &b, &p, &f)?;
            r.set("locally_trivial", rep.locally_trivial);
            r.set("certified", rep.certified);
            r.set("failing_point", rep.failing_point.map(|i| b.labels()[i].clone()));
            r.set("classical", classical);
            r.set("agree", classical == rep.locally_trivial);
            r.set(
                "global_trivialization",
                global.map(|g| {
                    g.iter()
                        .enumerate()
                        .map(|(xi, &k)| {
                            let (bi, fi) = (k / f.len(), k % f.len());
                            (x.labels()[xi].clone(), vec![b.labels()[bi].clone(), f.labels()[fi].clone()])
                        })
                        .collect::<BTreeMap<_, _>>()
                }),
            );
            Ok(r.verdict(rep.locally_trivial))
        }
        Command::SkorokhodDist { n, grid, f, g } => {
            let mut r = Report::new("skorokhod-dist");
            r.arg("n", n);
            r.arg("grid", grid);
            r.arg("f", f);
            r.arg("g", g);
            let pf = GridPath::parse(*grid, f)?;
            let pg = GridPath::parse(*grid, g)?;
            if pf.top() != *n || pg.top() != *n {
                return Err(CliError::Input(format!("paths need exactly {n} jump coordinates")));
            }
            let dist = skorokhod_distance(&pf, &pg)?;
            let formula = jump_metric(&pf, &pg)?;
            r.set("distance", format_q(&dist));
            r.set("jump_formula", format_q(&formula));
            Ok(r.verdict(dist == formula))
        }
        Command::Realize { n, grid } => {
            let mut r = Report::new("realize");
            r.arg("n", n);
            r.arg("grid", grid);
            let real = realize_simplex(*n, *grid)?;
            r.set("points", real.paths.len());
            r.set("distortion", format_q(&real.distortion));
            r.set("space", MetricJson::from_metric(&real.space));
            Ok(r.verdict(real.distortion <= qr(1, *grid as i64)))
        }
        Command::MappingSpace { x, y, degrees, variant, hom_limit } => {
            let mut r = Report::new("mapping-space");
            let xs = load::<SitusJson>(&mut r, "x", x)?.to_situs()?;
            let ys = load::<SitusJson>(&mut r, "y", y)?.to_situs()?;
            let degrees = degrees.unwrap_or(xs.truncation());
            r.arg("degrees", degrees);
            r.arg("variant", format!("{variant:?}").to_lowercase());
            let v = match variant {
                Variant::Skorokhod => MappingFilter::Skorokhod,
                Variant::Alternative => MappingFilter::Alternative,
            };
            let space = mapping_space(&xs, &ys, degrees, v, *hom_limit)?;
            r.set("sizes", (1..=degrees).map(|n| space.situs.size(n)).collect::<Vec<_>>());
            r.set("validation", space.validation.as_ref().map(|(f, g)| json!({ "map": f.key(), "grade": g })));
            r.set("situs", SitusJson::from_situs(&space.situs));
            Ok(r.verdict(space.validation.is_none()))
        }
        Command::Ramsey { size, colours, arity, target, max_colourings } => {
            let mut r = Report::new("ramsey");
            r.arg("size", size);
            r.arg("colours", colours);
            r.arg("arity", arity);
            r.arg("target", target);
            let rep = ramsey_check(*size, *colours, *arity, *target, *max_colourings)?;
            r.set("colourings_checked", rep.colourings);
            r.set("counterexample", &rep.counterexample);
            r.set("example", &rep.example);
            Ok(r.verdict(rep.holds))
        }
        Command::Stone { structure, params, formulas } => {
            let mut r = Report::new("stone");
            let m = load::<StructureJson>(&mut r, "structure", structure)?.to_structure()?;
            r.arg("params", params);
            r.arg("formulas", formulas);
            let ps = positions(m.universe(), &split_labels(params), "parameter")?;
            let phis = formulas.iter().map(|s| Formula::parse(s, &m)).collect::<situs::error::Result<Vec<_>>>()?;
            let s = stone_situs(&m, &ps, &phis, d)?;
            let q = stone_hausdorff_quotient(&s, &m, &phis)?;
            let grade_sizes: Vec<usize> = (1..=d).map(|n| s.filter(n).minimal().count()).collect();
            r.set("homogeneous_sequences", grade_sizes);
            r.set("reindexing_preserves_homogeneity", reindexing_preserves_homogeneity(&s));
            r.set("symmetric", is_symmetric(&s)?);
            r.set("quotient_points", q.points);
            let by = |cs: &[usize]| -> BTreeMap<String, usize> {
                m.universe().iter().cloned().zip(cs.iter().copied()).collect()
            };
            r.set("classes", by(&q.classes));
            r.set("qf_types", by(&q.direct));
            r.set("agrees", q.agrees);
            Ok(r.verdict(q.agrees))
        }
        Command::AaReport { x, m, family } => {
            let mut r = Report::new("aa-report");
            let xm = load::<MetricJson>(&mut r, "x", x)?.to_metric()?;
            let mm = load::<MetricJson>(&mut r, "m", m)?.to_metric()?;
            let fam = load::<FamilyJson>(&mut r, "family", family)?;
            let maps = fam.to_maps(xm.len(), mm.labels())?;
            let fam = FunctionFamily::new(maps, xm.len(), mm.len())?;
            let tower = SequenceTower::new(fam.len() - 1);
            let a = arzela_ascoli_report(&xm, &mm, &fam, &tower, d, budget)?;
            let pointwise: BTreeMap<&str, Option<usize>> =
                xm.labels().iter().map(String::as_str).zip(a.pointwise_precompact.iter().copied()).collect();
            r.set("X is compact", a.x_compact);
            r.set("M is complete", a.m_complete);
            r.set("pointwise precompact", pointwise);
            r.set("equicontinuous", a.equicontinuous);
            r.set("uniformly equicontinuous", a.uniformly_equicontinuous);
            r.set("uniformly equicontinuous implies uniform convergence", a.uniform_convergence.map(|i| json!({ "limit_member": i })));
            r.set("equicontinuous implies uniformly equicontinuous", a.eq_implies_ueq.as_str());
            r.set("(i) convergent subsequence", a.subsequence.map(|(j, f)| json!({ "tail": j, "member": f })));
            r.set("(i)", a.statement_i);
            r.set("(ii)", a.statement_ii);
            r.set("(iii)", a.statement_iii);
            let imps: serde_json::Map<String, Value> =
                a.implications.iter().map(|(k, s)| (k.to_string(), Value::from(s.as_str()))).collect();
            r.set("implications", imps);
            let violated = a.implications.iter().any(|(_, s)| *s == Implication::Violated);
            Ok(r.verdict(!violated))
        }
        Command::Generate { .. } => unreachable!("handled before dispatch"),
    }
}

fn describe_failure(e: &MorphismFailure, s: &Situs) -> Value {
    match e {
        MorphismFailure::NotSimplicial { map, simplex } => json!({
            "kind": "not simplicial",
            "map": map.key(),
            "simplex": s.sset().labels(map.target())[*simplex],
        }),
        MorphismFailure::NotContinuous { degree, grade } => json!({
            "kind": "not continuous",
            "degree": degree,
            "grade": grade,
        }),
    }
}

/// Invalid content is a negative verdict with a reason; unreadable JSON is
/// an input error.
fn validate(file: &Path, kind: Kind) -> Result<Report> {
    let mut r = Report::new("validate");
    r.arg("kind", format!("{kind:?}").to_lowercase());
    let outcome: Result<Vec<(&str, Value)>> = match kind {
        Kind::Situs => {
            let j: SitusJson = load(&mut r, "file", file)?;
            (|| {
                let s = j.to_situs_unchecked()?;
                let sizes: Vec<usize> = (1..=s.truncation()).map(|n| s.size(n)).collect();
                if let Some((f, g)) = s.validate() {
                    return Err(CliError::Input(format!("structural map {} is not continuous at grade {g}", f.key())));
                }
                Ok(vec![("sizes", json!(sizes))])
            })()
        }
        Kind::Sset => {
            let j: SSetJson = load(&mut r, "file", file)?;
            j.to_sset().map(|x| vec![("sizes", json!((1..=x.truncation()).map(|n| x.size(n)).collect::<Vec<_>>()))])
        }
        Kind::Filter => {
            let j: FilterJson = load(&mut r, "file", file)?;
            j.to_filter().map(|f| {
                vec![
                    ("grades", json!(f.grades().iter().map(|g| g.count()).collect::<Vec<_>>())),
                    ("ultrafilter", json!(is_ultrafilter(&f))),
                ]
            })
        }
        Kind::Space => {
            let j: SpaceJson = load(&mut r, "file", file)?;
            j.to_space().map(|x| vec![("points", json!(x.len())), ("opens", json!(x.opens().len()))])
        }
        Kind::Metric => {
            let j: MetricJson = load(&mut r, "file", file)?;
            j.to_metric().map(|m| vec![("points", json!(m.len()))])
        }
        Kind::Structure => {
            let j: StructureJson = load(&mut r, "file", file)?;
            j.to_structure().map(|m| vec![("elements", json!(m.len()))])
        }
    };
    match outcome {
        Ok(fields) => {
            for (k, v) in fields {
                r.set(k, v);
            }
            Ok(r.verdict(true))
        }
        Err(CliError::Input(reason)) => {
            r.set("reason", reason);
            Ok(r.verdict(false))
        }
        Err(e) => Err(e),
    }
}

fn generate(what: Generator, top: usize, points: &str, d: usize) -> Result<String> {
    if d == 0 {
        return Err(CliError::Input("truncation must be at least 1".into()));
    }
    let x = match what {
        Generator::Simplex => TruncatedSSet::standard_simplex(top, d),
        Generator::Representable => TruncatedSSet::representable(&split_labels(points), d),
        Generator::Point => TruncatedSSet::point(d),
        Generator::Empty => TruncatedSSet::empty(d),
        Generator::DiscretePair => {
            return Ok(to_pretty(&SitusJson::from_situs(&situs::lifting::discrete_pair(d))));
        }
    };
    Ok(to_pretty(&SitusJson::from_situs(&Situs::antidiscrete(x))))
}

fn to_pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
