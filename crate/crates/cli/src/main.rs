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


//! `combfam`: command-line access to families, norms, ranks and the
//! uniqueness machinery.
//!
//! Exit status is 0 on success, 1 when a checked property fails and 2 on
//! usage, parse or precondition errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use combfam::iso::{self, CensusConfig};
use combfam::lazy::DEFAULT_BUDGET;
use combfam::norm::{self, SparseVector};
use combfam::spreading::{is_spreading, spreading_closure, spreading_violation};
use combfam::text::{read_family, write_family};
use combfam::{ExplicitFamily, FinSet, LazyFamily, OrdinalW2, RankValue};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "combfam", version, about = "Combinatorial families of finite sets")]
struct Cli {
    /// Print a JSON mirror of the report instead of text.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncate a descriptor to `[base, window)` and print it in family format.
    Gen {
        descriptor: String,
        #[arg(long)]
        window: u32,
    },
    /// Check structural properties; exits 1 if any requested check fails.
    Check(CheckArgs),
    /// Print the maximal members.
    Maximal { file: PathBuf },
    /// Print the downward closure, or the in-window spreading closure.
    Closure {
        file: PathBuf,
        #[arg(long)]
        spreading: bool,
    },
    /// Evaluate the norm of a vector; the family is a file or a descriptor.
    Norm { family: String, vector: PathBuf },
    /// List the extreme points of the dual ball.
    Extremes { file: PathBuf },
    /// Cantor-Bendixson rank of a point, or of the family without `--point`.
    Rank {
        descriptor: String,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: OrdinalW2,
    },
    /// Find the least permutation carrying the first family onto the second.
    Iso { first: PathBuf, second: PathBuf },
    /// Automorphism group summary.
    Auto {
        file: PathBuf,
        /// List support automorphisms when there are at most this many.
        #[arg(long, default_value_t = 24)]
        cap: usize,
    },
    /// Exhaustive uniqueness census of hereditary spreading families.
    Census(CensusArgs),
    /// Strata of level `n`: members of size `n` whose exclusion set has at most `k` points.
    Strata {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Check the exclusion-set inequality over all spread pairs.
    ClaimScan { file: PathBuf },
    /// Rebuild level `n + 1` from the strata of level `n`; exits 1 on mismatch.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    hereditary: bool,
    /// Spreading with the given headroom.
    #[arg(long, value_name = "M")]
    spreading: Option<u32>,
    #[arg(long)]
    singletons: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    members: u32,
    #[arg(long)]
    window: u32,
    #[arg(long, default_value_t = 0)]
    base: u32,
    #[arg(long)]
    max_size: Option<usize>,
    /// Do not require every singleton of the generator range.
    #[arg(long)]
    relaxed: bool,
    #[arg(long)]
    workers: Option<usize>,
}

enum Failure {
    Usage(String),
    Core(combfam::Error),
}

impl From<combfam::Error> for Failure {
    fn from(e: combfam::Error) -> Self {
        Failure::Core(e)
    }
}

/// Text, JSON mirror, and whether every checked property held.
struct Report {
    text: String,
    machine: Value,
    ok: bool,
}

impl Report {
    fn new(text: String, machine: Value) -> Self {
        Report { text, machine, ok: true }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.machine {
                println!("{}", serde_json::to_string_pretty(&report.machine).expect("json values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { descriptor, window } => gen(&descriptor, window),
        Command::Check(args) => check(&args),
        Command::Maximal { file } => {
            let f = load(&file)?.maximal_elements();
            Ok(Report::new(write_family(&f), family_json(&f)))
        }
        Command::Closure { file, spreading } => {
            let f = load(&file)?;
            let g = if spreading { spreading_closure(&f) } else { f.downward_closure() };
            Ok(Report::new(write_family(&g), family_json(&g)))
        }
        Command::Norm { family, vector } => norm_cmd(&family, &vector),
        Command::Extremes { file } => extremes(&file),
        Command::Rank { descriptor, point, budget } => rank(&descriptor, point.as_deref(), budget),
        Command::Iso { first, second } => iso_cmd(&first, &second),
        Command::Auto { file, cap } => auto(&file, cap),
        Command::Census(args) => census(&args),
        Command::Strata { file, n } => strata(&file, n),
        Command::ClaimScan { file } => claim_scan(&file),
        Command::Reconstruct { file, n } => reconstruct(&file, n),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ExplicitFamily, Failure> {
    read_family(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn descriptor(text: &str) -> Result<LazyFamily, Failure> {
    Ok(text.parse::<LazyFamily>()?)
}

fn set_literal(text: &str) -> Result<FinSet, Failure> {
    FinSet::parse_literal(text).ok_or_else(|| Failure::Usage(format!("not a set literal: {text}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sets_json(sets: impl IntoIterator<Item = FinSet>) -> Value {
    Value::from(sets.into_iter().map(|s| Value::from(s.elements().to_vec())).collect::<Vec<_>>())
}

fn family_json(f: &ExplicitFamily) -> Value {
    json!({ "base": f.base(), "window": f.window(), "members": sets_json(f.members()) })
}

fn members_line(f: &ExplicitFamily) -> String {
    f.members().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(text: &str, window: u32) -> Outcome {
    let f = descriptor(text)?.truncate(window)?;
    Ok(Report::new(write_family(&f), family_json(&f)))
}

fn check(args: &CheckArgs) -> Outcome {
    let f = load(&args.file)?;
    let all = !args.hereditary && args.spreading.is_none() && !args.singletons;
    let mut text = String::new();
    let mut machine = serde_json::Map::new();
    let mut ok = true;
    if all || args.hereditary {
        let h = f.is_hereditary();
        ok &= h;
        writeln!(text, "hereditary: {}", yes(h)).unwrap();
        machine.insert("hereditary".into(), h.into());
    }
    if let Some(m) = args.spreading {
        let violation = spreading_violation(&f, m)?;
        ok &= violation.is_none();
        match &violation {
            None => writeln!(text, "spreading (headroom {m}): yes").unwrap(),
            Some((s, t)) => writeln!(text, "spreading (headroom {m}): no, {s} is a member but its spread {t} is not").unwrap(),
        }
        machine.insert(
            "spreading".into(),
            json!({
                "headroom": m,
                "holds": violation.is_none(),
                "violation": violation.map(|(s, t)| sets_json([s, t])),
            }),
        );
    } else if all {
        let s = is_spreading(&f, f.window())?;
        writeln!(text, "spreading (headroom {}): {}", f.window(), yes(s)).unwrap();
        machine.insert("spreading".into(), json!({ "headroom": f.window(), "holds": s }));
        ok &= s;
    }
    if all || args.singletons {
        let s = f.contains_all_singletons();
        ok &= s;
        writeln!(text, "singletons: {}", yes(s)).unwrap();
        machine.insert("singletons".into(), s.into());
    }
    Ok(Report {
        text,
        machine: machine.into(),
        ok,
    })
}

fn norm_cmd(family: &str, vector: &Path) -> Outcome {
    let x = SparseVector::parse(&read_text(vector)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", vector.display())))?;
    let value = if Path::new(family).is_file() {
        norm::norm(&load(Path::new(family))?, &x)
    } else {
        norm::norm_lazy(&descriptor(family)?, &x)?
    };
    Ok(Report::new(format!("{value}\n"), json!({ "norm": value.to_string() })))
}

fn extremes(file: &Path) -> Outcome {
    let f = load(file)?;
    let points = norm::extreme_points(&f)?;
    let mut text = format!("extreme points: {}\n", points.len());
    for p in &points {
        writeln!(text, "{p}").unwrap();
    }
    let machine = json!({
        "count": points.len(),
        "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, machine))
}

fn rank_json(r: &RankValue) -> Value {
    match r {
        RankValue::Exact(o) => json!({ "exact": o.to_string() }),
        RankValue::AtLeast(o) => json!({ "at_least": o.to_string() }),
    }
}

fn rank(text: &str, point: Option<&str>, budget: OrdinalW2) -> Outcome {
    let l = descriptor(text)?;
    let r = match point {
        Some(p) => l.cb_rank_point(&set_literal(p)?, budget)?,
        None => l.family_rank(budget)?,
    };
    Ok(Report::new(format!("{r}\n"), rank_json(&r)))
}

fn iso_cmd(first: &Path, second: &Path) -> Outcome {
    let f = load(first)?;
    let g = load(second)?;
    let found = iso::find_pi_homeomorphism(&f, &g)?;
    let text = match &found {
        Some(pi) => format!("{pi}\n"),
        None => "none\n".to_string(),
    };
    let machine = json!({ "permutation": found.map(|pi| pi.to_string()) });
    Ok(Report::new(text, machine))
}

fn auto(file: &Path, cap: usize) -> Outcome {
    let f = load(file)?;
    let r = iso::automorphism_report(&f, cap);
    let mut text = String::new();
    writeln!(text, "automorphisms: {}", r.count).unwrap();
    writeln!(text, "free points: {}", r.free_points).unwrap();
    writeln!(text, "fixing free points: {}", r.support_count).unwrap();
    let classes: Vec<String> = r.twin_classes.iter().map(|c| FinSet::new(c.iter().copied()).to_string()).collect();
    writeln!(text, "twin classes: {}", classes.join(" ")).unwrap();
    if let Some(list) = &r.support_automorphisms {
        for pi in list {
            writeln!(text, "{pi}").unwrap();
        }
    }
    let machine = json!({
        "count": r.count.to_string(),
        "free_points": r.free_points.elements(),
        "support_count": r.support_count.to_string(),
        "twin_classes": r.twin_classes,
        "support_automorphisms": r
            .support_automorphisms
            .map(|v| v.iter().map(|pi| pi.to_string()).collect::<Vec<_>>()),
    });
    Ok(Report::new(text, machine))
}

fn census(args: &CensusArgs) -> Outcome {
    let config = CensusConfig {
        members: args.members,
        window: args.window,
        base: args.base,
        max_size: args.max_size,
        require_singletons: !args.relaxed,
        workers: args.workers,
    };
    let report = iso::uniqueness_census(&config)?;
    let machine = serde_json::to_value(&report).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Report {
        text: format!("{}\n", report.summary()),
        machine,
        ok: report.counterexamples.is_empty(),
    })
}

fn strata(file: &Path, n: usize) -> Outcome {
    let f = load(file)?;
    let mut text = String::new();
    let mut layers = Vec::new();
    let level = f.level(n).count();
    // strata grow with k; stop once the whole level is covered
    for k in 0..=f.ground().count_ones() as usize {
        let layer = iso::stratum(&f, n, k);
        writeln!(text, "k {k}: {}", members_line(&layer)).unwrap();
        layers.push(json!({ "k": k, "members": sets_json(layer.members()) }));
        if layer.len() == level {
            break;
        }
    }
    Ok(Report::new(text, json!({ "n": n, "strata": layers })))
}

fn claim_scan(file: &Path) -> Outcome {
    let f = load(file)?;
    let scan = iso::claim_scan(&f);
    let mut text = format!("pairs: {}, violations: {}\n", scan.pairs, scan.violations.len());
    for v in &scan.violations {
        writeln!(
            text,
            "  {} -> {}: |I| {} -> {}, outside inclusion {}, inside bound {}",
            v.source,
            v.target,
            v.source_size,
            v.target_size,
            yes(v.outside_inclusion),
            yes(v.inside_bound)
        )
        .unwrap();
    }
    let machine = serde_json::to_value(&scan).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Report {
        text,
        machine,
        ok: scan.violations.is_empty(),
    })
}

fn reconstruct(file: &Path, n: usize) -> Outcome {
    let f = load(file)?;
    let rebuilt = iso::reconstruct_level(&f, n);
    let expected = f.filter(|m| m.count_ones() as usize == n + 1);
    let matches = rebuilt == expected;
    let text = format!("level {}: {}\nmatches: {}\n", n + 1, members_line(&rebuilt), yes(matches));
    let machine = json!({
        "level": n + 1,
        "members": sets_json(rebuilt.members()),
        "matches": matches,
    });
    Ok(Report {
        text,
        machine,
        ok: matches,
    })
}
