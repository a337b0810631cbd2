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

//! Line-oriented family file format.
//!
//! ```text
//! # comment
//! ground 0 3
//! -
//! 0
//! 1 2
//! ```
//!
//! The first non-comment line is `ground <base> <window>`; every further
//! line is one member written as increasing integers, with `-` for the
//! empty set. Members are written in canonical order and may be read in
//! any order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::ExplicitFamily;
use crate::finset::FinSet;

pub fn write_family(f: &ExplicitFamily) -> String {
    let mut out = String::new();
    writeln!(out, "ground {} {}", f.base(), f.window()).unwrap();
    for s in f.members() {
        out.push_str(&member_line(&s));
        out.push('\n');
    }
    out
}

fn member_line(s: &FinSet) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn read_family(text: &str) -> Result<ExplicitFamily> {
    let mut header: Option<(u32, u32)> = None;
    let mut members = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((base, window)) = header else {
            header = Some(parse_header(line, line_no)?);
            continue;
        };
        let set = if line == "-" {
            FinSet::empty()
        } else {
            let mut elems = Vec::new();
            for word in line.split_whitespace() {
                let e: u32 = word
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("not an index: {word}")))?;
                elems.push(e);
            }
            FinSet::from_sorted(elems)
                .ok_or_else(|| Error::parse(line_no, "member is not strictly increasing"))?
        };
        if let Some(&e) = set.elements().iter().find(|&&e| e < base || e >= window) {
            return Err(Error::parse(
                line_no,
                format!("index {e} outside the ground [{base}, {window})"),
            ));
        }
        members.push(set);
    }
    let (base, window) = header.ok_or_else(|| Error::parse(0, "missing `ground` header"))?;
    ExplicitFamily::new(base, window, members)
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, u32)> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        ["ground", b, w] => {
            let base = b
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad base {b}")))?;
            let window = w
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad window {w}")))?;
            if base > window {
                return Err(Error::parse(line_no, "base exceeds window"));
            }
            Ok((base, window))
        }
        _ => Err(Error::parse(line_no, "expected `ground <base> <window>`")),
    }
}
