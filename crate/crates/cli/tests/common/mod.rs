//! Shared driver for the golden transcripts.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const FANS: [&str; 4] = ["p1", "p2", "p1xp1", "f1"];

pub fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

pub fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric-dmod")).args(args).output().expect("spawn toric-dmod");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap_or(-1), text)
}

fn zeros(arity: usize) -> String {
    vec!["0"; arity].join(",")
}

fn ones(arity: usize) -> String {
    vec!["1"; arity].join(",")
}

/// All commands for one fan, concatenated with headers.
pub fn transcript(name: &str) -> String {
    let fan = dir("fixtures").join(format!("{name}.toml"));
    let fan_s = fan.to_str().unwrap();
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("golden-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let fan_text = std::fs::read_to_string(&fan).unwrap();
    let gd = toric_dmod::load_grading(&fan_text).unwrap();
    let arity = gd.class_arity();

    let mut out = String::new();
    let mut step = |label: String, args: Vec<String>| -> String {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let (code, text) = run(&refs);
        out.push_str(&format!("== {label} (exit {code})\n{text}"));
        text
    };

    step("fan-info".into(), vec!["fan-info".into(), fan_s.into()]);
    step("fan-info machine".into(), vec!["--format".into(), "machine".into(), "fan-info".into(), fan_s.into()]);
    let mut modules = Vec::new();
    for (cmd, class) in [("dl", zeros(arity)), ("dl", ones(arity)), ("dr", ones(arity))] {
        let text = step(format!("{cmd} {class}"), vec![cmd.into(), fan_s.into(), class.clone()]);
        let path = tmp.join(format!("{cmd}-{}.toml", class.replace(',', "_")));
        std::fs::write(&path, text).unwrap();
        modules.push(path);
    }
    let structure = tmp.join("structure.toml");
    let degs = vec![format!("[{}]", zeros(arity).replace(',', ", ")); 1].join(", ");
    let rels: Vec<String> = (1..=gd.d()).map(|i| format!("[\"d{i}\"]")).collect();
    std::fs::write(&structure, format!("side = \"left\"\ndegrees = [{degs}]\nrelations = [{}]\n", rels.join(", ")))
        .unwrap();
    modules.push(structure);

    for m in &modules {
        let m_s = m.to_str().unwrap().to_string();
        let base = m.file_name().unwrap().to_str().unwrap().to_string();
        step(format!("check {base}"), vec!["check".into(), fan_s.into(), m_s.clone()]);
        step(format!("swap {base}"), vec!["swap".into(), fan_s.into(), m_s.clone()]);
        step(
            format!("charvar {base}"),
            vec!["charvar".into(), "--charts".into(), "--saturate".into(), fan_s.into(), m_s.clone()],
        );
    }
    for cone in gd.fan().max_cones() {
        let cone_s: Vec<String> = cone.iter().map(|i| (i + 1).to_string()).collect();
        let cone_s = cone_s.join(",");
        for p in [vec![-1i64; gd.n()], vec![1; gd.n()], {
            let mut v = vec![0; gd.n()];
            v[0] = -2;
            v
        }] {
            let p_s: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            let p_s = p_s.join(",");
            step(
                format!("local {cone_s} {p_s}"),
                vec!["local".into(), fan_s.into(), "--cone".into(), cone_s.clone(), "--p".into(), p_s.clone()],
            );
        }
    }
    std::fs::remove_dir_all(&tmp).ok();
    out.replace(tmp.to_str().unwrap(), "$TMP").replace(dir("fixtures").to_str().unwrap(), "$FIXTURES")
}

/// Compares two fresh transcripts per fan with the stored golden files.
pub fn golden_mismatches(update: bool) -> Vec<String> {
    let mut bad = Vec::new();
    for name in FANS {
        let first = transcript(name);
        let second = transcript(name);
        if first != second {
            bad.push(format!("{name}: two runs differ"));
            continue;
        }
        let path = dir("golden").join(format!("{name}.txt"));
        if update {
            std::fs::create_dir_all(dir("golden")).unwrap();
            std::fs::write(&path, &first).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(first.as_str()) {
            bad.push(format!("{name}: report differs from {}", path.display()));
        }
    }
    bad
}
