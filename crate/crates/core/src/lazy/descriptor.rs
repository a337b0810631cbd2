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


//! Canonical prefix text for descriptors.
//!
//! ```text
//! schreier | cube N | block-schreier M | ex-adjacent-removed | ex-initial-pairs
//! remove SET.. (E) | permute PERM (E) | union (E) (E)
//! restrict !SET (E) | base N (E) | derive (E)
//! ```
//!
//! Sub-expressions are always parenthesised. Catalog names such as
//! `ex-4-perm-pair:F` are accepted on input and expand to their
//! definitions, so printing always yields the expanded form.

use std::fmt;

use super::node::Node;
use super::LazyFamily;
use crate::constructions;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::permutation::Permutation;

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Schreier => f.write_str("schreier"),
            Node::Cube(n) => write!(f, "cube {n}"),
            Node::BlockSchreier(m) => write!(f, "block-schreier {m}"),
            Node::AdjacentRemoved => f.write_str("ex-adjacent-removed"),
            Node::InitialPairs => f.write_str("ex-initial-pairs"),
            Node::Remove { sets, inner } => {
                f.write_str("remove")?;
                for s in sets {
                    write!(f, " {s}")?;
                }
                write!(f, " ({inner})")
            }
            Node::Permute { pi, inner, .. } => write!(f, "permute {pi} ({inner})"),
            Node::Union(a, b) => write!(f, "union ({a}) ({b})"),
            Node::Restrict { excluded, inner } => write!(f, "restrict !{excluded} ({inner})"),
            Node::Based { base, inner } => write!(f, "base {base} ({inner})"),
            Node::Derived { order, inner } => {
                for _ in 0..*order {
                    f.write_str("derive (")?;
                }
                write!(f, "{inner}")?;
                for _ in 0..*order {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn bad(message: impl Into<String>) -> Error {
    Error::parse(1, message)
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            _ if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            _ => {
                // a bracketed literal may contain spaces
                let closer = match c {
                    '{' => Some('}'),
                    '[' => Some(']'),
                    '!' => Some('}'),
                    _ => None,
                };
                let mut end = text.len();
                match closer {
                    Some(close) => {
                        let rel = text[i..]
                            .find(close)
                            .ok_or_else(|| bad(format!("unclosed literal at offset {i}")))?;
                        end = i + rel + 1;
                    }
                    None => {
                        if let Some(rel) = text[i..].find(|ch: char| ch.is_whitespace() || ch == '(' || ch == ')') {
                            end = i + rel;
                        }
                    }
                }
                tokens.push(Token::Word(text[i..end].to_string()));
                while chars.peek().is_some_and(|&(j, _)| j < end) {
                    chars.next();
                }
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next_word(&mut self, what: &str) -> Result<String> {
        match self.tokens.get(self.pos) {
            Some(Token::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(bad(format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        let w = self.next_word(what)?;
        w.parse().map_err(|_| bad(format!("expected {what}, got {w}")))
    }

    fn sub(&mut self) -> Result<LazyFamily> {
        if self.tokens.get(self.pos) != Some(&Token::Open) {
            return Err(bad("expected `(` before a sub-expression"));
        }
        self.pos += 1;
        let e = self.expr()?;
        if self.tokens.get(self.pos) != Some(&Token::Close) {
            return Err(bad("expected `)`"));
        }
        self.pos += 1;
        Ok(e)
    }

    fn expr(&mut self) -> Result<LazyFamily> {
        if self.tokens.get(self.pos) == Some(&Token::Open) {
            return self.sub();
        }
        let head = self.next_word("a descriptor")?;
        match head.as_str() {
            "schreier" => Ok(constructions::schreier()),
            "cube" => Ok(constructions::cube(self.number("a size")?)),
            "block-schreier" => constructions::block_schreier(self.number("a block count")?),
            "remove" => {
                let mut sets = Vec::new();
                while let Some(Token::Word(w)) = self.tokens.get(self.pos) {
                    let set = FinSet::parse_literal(w).ok_or_else(|| bad(format!("bad set {w}")))?;
                    sets.push(set);
                    self.pos += 1;
                }
                let inner = self.sub()?;
                constructions::remove_sets(&inner, &sets)
            }
            "permute" => {
                let pi = Permutation::parse(&self.next_word("a permutation")?)?;
                let inner = self.sub()?;
                constructions::permuted(&inner, &pi)
            }
            "union" => {
                let a = self.sub()?;
                let b = self.sub()?;
                Ok(constructions::union(&a, &b))
            }
            "restrict" => {
                let w = self.next_word("an excluded set")?;
                let set = w
                    .strip_prefix('!')
                    .and_then(FinSet::parse_literal)
                    .ok_or_else(|| bad(format!("expected !{{..}}, got {w}")))?;
                let inner = self.sub()?;
                Ok(constructions::restrict_ground(&inner, &set))
            }
            "base" => {
                let base = self.number("a base")?;
                let inner = self.sub()?;
                Ok(constructions::based(&inner, base))
            }
            "derive" => self.sub()?.derivative(),
            name => constructions::catalog(name),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<LazyFamily> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(bad("trailing input after the descriptor"));
    }
    Ok(e)
}
