//! One line per criterion for the command-line surface, driving the built
//! binary.

use std::io::Write;
use std::process::Command;

use situs::lifting::{discrete_pair, simplices_union};
use situs::situs::SitusMorphism;
use situs::{Situs, TruncatedSSet};
use situs_cli::format::{from_morphism, ArrowJson, SitusJson};

const D: usize = 3;

fn file(v: &impl serde::Serialize) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(serde_json::to_string_pretty(v).unwrap().as_bytes()).unwrap();
    f
}

fn situs(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_situs")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn to_point(s: &Situs) -> ArrowJson {
    let pt = Situs::point(s.truncation());
    let map = SitusMorphism::new((1..=s.truncation()).map(|n| vec![0; s.size(n)]).collect());
    ArrowJson {
        source: SitusJson::from_situs(s),
        target: SitusJson::from_situs(&pt),
        map: from_morphism(&map, s.sset(), pt.sset()),
    }
}

/// Two points over a point, mapped bijectively onto the discrete pair: no
/// diagonal exists, since the point has one vertex.
fn disconnected_problem() -> [tempfile::NamedTempFile; 4] {
    let a = simplices_union(&[0, 0], D).unwrap();
    let x = discrete_pair(D);
    let pt = Situs::point(D);
    // component k goes to the constant tuple (k, .., k), base-2 index k(2^n - 1)
    let f = SitusMorphism::new((1..=D).map(|n| vec![0, (1 << n) - 1]).collect());
    let g = SitusMorphism::identity(&pt);
    [
        file(&to_point(&a)),
        file(&to_point(&x)),
        file(&from_morphism(&f, a.sset(), x.sset())),
        file(&from_morphism(&g, pt.sset(), pt.sset())),
    ]
}

fn main() {
    let mut failed = 0;
    let mut line = |name: &str, pass: bool, detail: String| {
        println!("cli {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    };

    let s = file(&SitusJson::from_situs(&Situs::antidiscrete(TruncatedSSet::standard_simplex(2, D))));
    let (code, _) = situs(&["validate", s.path().to_str().unwrap()]);
    line("validate on a correct situs", code == 0, format!("exit {code}"));

    let (code, out) = situs(&["ramsey", "--size", "6", "--colours", "2", "--arity", "2", "--target", "3"]);
    let checked = serde_json::from_str::<serde_json::Value>(&out).ok().map(|v| v["colourings_checked"].clone());
    line("ramsey 6 2 2 3", code == 0, format!("exit {code}, colourings {}", checked.unwrap_or_default()));

    let files = disconnected_problem();
    let p: Vec<&str> = files.iter().map(|f| f.path().to_str().unwrap()).collect();
    let (code, out) = situs(&["lift", "--i", p[0], "--p", p[1], "--f", p[2], "--g", p[3]]);
    let lift = serde_json::from_str::<serde_json::Value>(&out).ok().map(|v| v["lift"].clone());
    let none = lift.as_ref().is_some_and(|l| l == "none");
    line("lift on the disconnected problem", code == 1 && none, format!("exit {code}, lift {}", lift.unwrap_or_default()));

    if failed > 0 {
        std::process::exit(1);
    }
}
