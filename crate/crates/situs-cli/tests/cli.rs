use std::io::Write;

use proptest::prelude::*;
use serde_json::Value;

use situs::model::FiniteStructure;
use situs::num::qr;
use situs::situs::{embed_metric, embed_top};
use situs::space::{FiniteMetricSpace, FiniteTopSpace};
use situs::{Situs, TruncatedSSet};
use situs_cli::format::{FilterJson, MetricJson, SSetJson, SitusJson, SpaceJson, StructureJson};
use situs_cli::run;

fn file(v: &impl serde::Serialize) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(serde_json::to_string(v).unwrap().as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> String {
    f.path().to_str().unwrap().to_string()
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).unwrap()
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn line(n: usize) -> FiniteMetricSpace {
    let dist = (0..n).map(|i| (0..n).map(|j| qr(i.abs_diff(j) as i64, 1)).collect()).collect();
    FiniteMetricSpace::new(labels(n), dist, vec![qr(2, 1), qr(1, 1), qr(1, 2)]).unwrap()
}

fn situses() -> Vec<Situs> {
    let mut out = vec![
        Situs::point(3),
        Situs::empty(2),
        Situs::antidiscrete(TruncatedSSet::standard_simplex(2, 3)),
        Situs::antidiscrete(TruncatedSSet::representable(&labels(2), 2)),
        embed_metric(&line(3), 2),
    ];
    out.extend(FiniteTopSpace::enumerate(2).iter().map(|x| embed_top(x, 2)));
    out
}

#[test]
fn situs_json_round_trips() {
    for s in situses() {
        let j = SitusJson::from_situs(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: SitusJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_situs().unwrap(), s);
        let sset = SSetJson::from_sset(s.sset());
        assert_eq!(&sset.to_sset().unwrap(), s.sset());
        for n in 1..=s.truncation() {
            let f = FilterJson::from_filter(s.filter(n), s.sset().labels(n));
            let again: FilterJson = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            assert_eq!(&again.to_filter().unwrap(), s.filter(n));
        }
    }
}

#[test]
fn structure_json_round_trips() {
    for m in [FiniteStructure::linear_order(4), FiniteStructure::pure_set(3)] {
        let j = StructureJson::from_structure(&m);
        let back: StructureJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_structure().unwrap(), m);
    }
}

proptest! {
    #[test]
    fn space_json_round_trips(k in 1usize..4, pick in 0usize..1000) {
        let all = FiniteTopSpace::enumerate(k);
        let x = &all[pick % all.len()];
        let j = SpaceJson::from_space(x);
        let back: SpaceJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        prop_assert_eq!(&back, &j);
        prop_assert_eq!(&back.to_space().unwrap(), x);
    }

    #[test]
    fn metric_json_round_trips(xs in proptest::collection::btree_set(-20i64..20, 1..6), den in 1i64..5) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let n = xs.len();
        let dist = (0..n).map(|i| (0..n).map(|j| qr((xs[i] - xs[j]).abs(), den)).collect()).collect();
        let m = FiniteMetricSpace::new(labels(n), dist, vec![qr(3, 1), qr(1, den)]).unwrap();
        let j = MetricJson::from_metric(&m);
        let back: MetricJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        prop_assert_eq!(&back, &j);
        prop_assert_eq!(&back.to_metric().unwrap(), &m);
    }
}

#[test]
fn emitted_situs_re_parses() {
    let y = file(&SitusJson::from_situs(&Situs::antidiscrete(TruncatedSSet::standard_simplex(1, 3))));
    let x = file(&SitusJson::from_situs(&Situs::point(3)));
    let (code, out) = run(["situs", "mapping-space", "--x", &path(&x), "--y", &path(&y), "--degrees", "1"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    let emitted: SitusJson = serde_json::from_value(v["situs"].clone()).unwrap();
    let again: SitusJson = serde_json::from_str(&serde_json::to_string(&emitted).unwrap()).unwrap();
    assert_eq!(again, emitted);
    emitted.to_situs().unwrap();

    let (code, out) = run(["situs", "realize", "--n", "1", "--grid", "3"]);
    assert_eq!(code, 0, "{out}");
    let m: MetricJson = serde_json::from_value(json(&out)["space"].clone()).unwrap();
    assert_eq!(m.points.len(), 4);
    assert_eq!(MetricJson::from_metric(&m.to_metric().unwrap()), m);

    let (code, out) = run(["situs", "generate", "simplex", "--top", "2"]);
    assert_eq!(code, 0);
    let s: SitusJson = serde_json::from_str(&out).unwrap();
    assert_eq!(s.to_situs().unwrap(), Situs::antidiscrete(TruncatedSSet::standard_simplex(2, 3)));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let s = file(&SitusJson::from_situs(&embed_top(&FiniteTopSpace::sierpinski(), 3)));
    let cases: Vec<Vec<String>> = vec![
        vec!["validate".into(), path(&s)],
        vec!["pi0".into(), path(&s)],
        vec!["compact".into(), path(&s)],
        ["ramsey", "--size", "5", "--colours", "2", "--arity", "2", "--target", "3"].map(String::from).to_vec(),
        ["skorokhod-dist", "--n", "2", "--grid", "6", "--f", "1/6,1/2", "--g", "1/3,1/2"].map(String::from).to_vec(),
    ];
    for args in cases {
        let argv = |extra: &[&str]| {
            let mut a = vec!["situs".to_string()];
            a.extend(args.iter().cloned());
            a.extend(extra.iter().map(|s| s.to_string()));
            a
        };
        let (c1, mut a) = run(argv(&[]));
        let (c2, mut b) = run(argv(&[]));
        assert_eq!(c1, c2);
        for v in [&mut a, &mut b] {
            let mut j = json(v);
            assert!(j.as_object_mut().unwrap().remove("timing_ms").is_some());
            *v = serde_json::to_string(&j).unwrap();
        }
        assert_eq!(a, b);
        let (_, x) = run(argv(&["--no-timing"]));
        let (_, y) = run(argv(&["--no-timing"]));
        assert_eq!(x, y);
        assert!(!x.contains("timing_ms"));
    }
}

#[test]
fn exit_codes() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"{\"truncation\": 2,\n  \"carriers\": [").unwrap();
    let (code, out) = run(["situs", "validate", &path(&bad)]);
    assert_eq!(code, 2);
    assert!(out.contains("line 2"), "{out}");

    let (code, _) = run(["situs", "no-such-command"]);
    assert_eq!(code, 2);

    let (code, out) = run(["situs", "ramsey", "--size", "5", "--colours", "2", "--arity", "2", "--target", "3"]);
    assert_eq!(code, 1);
    assert!(json(&out)["counterexample"].is_array());

    let (code, _) =
        run(["situs", "ramsey", "--size", "9", "--colours", "2", "--arity", "2", "--target", "3", "--max-colourings", "100"]);
    assert_eq!(code, 3);

    let m = file(&MetricJson::from_metric(&line(5)));
    let (code, out) = run(["situs", "complete", "--space", &path(&m), "--length", "6", "--max-candidates", "10"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn invalid_content_is_a_negative_verdict() {
    let mut j = SitusJson::from_situs(&Situs::antidiscrete(TruncatedSSet::standard_simplex(1, 2)));
    j.sset.carriers.get_mut("1").unwrap().pop();
    let f = file(&j);
    let (code, out) = run(["situs", "validate", &path(&f)]);
    assert_eq!(code, 1, "{out}");
    assert!(json(&out)["reason"].is_string());
}

#[test]
fn text_format_has_one_line_per_key() {
    let (code, out) = run(["situs", "--format", "text", "skorokhod-dist", "--n", "1", "--grid", "8", "--f", "1/4", "--g", "3/4"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "distance: 1/2"), "{out}");
    assert!(out.lines().any(|l| l == "verdict: true"));
}

#[test]
fn limits_in_a_line() {
    let m = file(&MetricJson::from_metric(&line(3)));
    let (code, out) = run(["situs", "limit", "--space", &path(&m), "--seq", "0,1,1,1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["limit"], "1");
}
