// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


use std::path::PathBuf;
use std::process::{Command, Output};

use combfam::text::read_family;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combfam")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn schreier_singleton_rank() {
    let out = run(&["rank", "schreier", "--point", "{4}"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4\n");
    let out = run(&["rank", "schreier", "--point", "-"]);
    assert_eq!(stdout(&out), "w\n");
    let out = run(&["rank", "schreier", "--point", "-", "--budget", "5"]);
    assert_eq!(stdout(&out), ">= 6\n");
}

#[test]
fn permuted_pair_iso() {
    let out = run(&["iso", &data("ex-4-F.fam"), &data("ex-4-G.fam")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[1>3 2>1 3>2]\n");
    let out = run(&["iso", &data("homeo-F.fam"), &data("homeo-G.fam")]);
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn census_of_two() {
    let out = run(&["census", "--members", "2", "--window", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "families: 2, pairs: 1, counterexamples: 0\n");
    let out = run(&["--machine", "census", "--members", "2", "--window", "8", "--workers", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["families"], 2);
    assert_eq!(v["records"].as_array().unwrap().len(), 2);
}

#[test]
fn gen_round_trips() {
    let out = run(&["gen", "cube 2", "--window", "6"]);
    let text = stdout(&out);
    let parsed = read_family(&text).unwrap();
    let expected = "cube 2".parse::<combfam::LazyFamily>().unwrap().truncate(6).unwrap();
    assert_eq!(parsed, expected);
    assert_eq!(text, std::fs::read_to_string(data("cube2.fam")).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["auto", &data("ex-4-G.fam")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--machine", "extremes", &data("homeo-F.fam")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn check_exit_codes() {
    let cube = data("cube2.fam");
    let out = run(&["check", &cube, "--hereditary", "--spreading", "3", "--singletons"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", &data("ex-4-F.fam"), "--spreading", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("{0 1} is a member but its spread {2 3} is not"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fam");
    std::fs::write(&bad, "ground 0 3\n0\n2 1\n").unwrap();
    let out = run(&["maximal", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(run(&["rank", "schreier", "--point", "4"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--members", "2", "--window", "5"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn norms_of_file_and_descriptor() {
    let out = run(&["norm", "schreier", &data("x.vec")]);
    assert_eq!(stdout(&out), "5/2\n");
    let out = run(&["norm", &data("cube2.fam"), &data("x.vec")]);
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn uniqueness_machinery_on_cube() {
    let cube = data("cube2.fam");
    let out = run(&["claim-scan", &cube]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("violations: 0\n"));
    let out = run(&["reconstruct", &cube, "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("matches: yes\n"));
    let out = run(&["strata", &cube, "--n", "1"]);
    assert_eq!(stdout(&out), "k 0: {0} {1} {2} {3} {4} {5}\n");
}

#[test]
fn closures_and_maximal() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.fam");
    std::fs::write(&f, "ground 0 4\n1 2\n").unwrap();
    let out = run(&["closure", f.to_str().unwrap()]);
    assert_eq!(stdout(&out), "ground 0 4\n-\n1\n2\n1 2\n");
    let out = run(&["closure", "--spreading", f.to_str().unwrap()]);
    assert_eq!(stdout(&out), "ground 0 4\n1 2\n1 3\n2 3\n");
    let out = run(&["maximal", &data("cube2.fam")]);
    assert_eq!(stdout(&out).lines().count(), 1 + 15);
}
