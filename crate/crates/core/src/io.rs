//! Text formats for families. Elements are 1-based here and nowhere else.
//!
//! * `lines`: one set per line, elements ascending and space-separated, `-`
//!   for the empty set. Blank lines and `#` comments are ignored.
//! * `json`: `{"n": 4, "sets": [[1], [1, 2]]}` with `[]` for the empty set.
//!
//! Writers always emit members in ascending bitmask order.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::set::{GroundSize, SetWord, MAX_GROUND};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Format {
    #[default]
    Lines,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lines" => Ok(Format::Lines),
            "json" => Ok(Format::Json),
            other => Err(Error::parse(0, format!("unknown format `{other}`"))),
        }
    }
}

/// Serialized form of a family: 1-based element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub n: u32,
    pub sets: Vec<Vec<u32>>,
}

impl From<&Family> for FamilyDocument {
    fn from(f: &Family) -> Self {
        FamilyDocument { n: f.ground().get(), sets: f.iter().map(elements).collect() }
    }
}

impl TryFrom<FamilyDocument> for Family {
    type Error = Error;

    fn try_from(doc: FamilyDocument) -> Result<Family> {
        let ground = GroundSize::new(doc.n)?;
        let words = doc
            .sets
            .iter()
            .enumerate()
            .map(|(i, set)| word_from_elements(set, ground).map_err(|e| relocate(e, i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Family::new(ground, words)
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

/// 1-based elements of `w`, ascending.
pub fn elements(w: SetWord) -> Vec<u32> {
    w.positions().map(|p| p + 1).collect()
}

/// Builds a word from strictly increasing 1-based elements in `1..=n`.
pub fn word_from_elements(elems: &[u32], ground: GroundSize) -> Result<SetWord> {
    let mut bits = 0u32;
    let mut prev = 0;
    for &e in elems {
        if e < 1 || e > ground.get() {
            return Err(Error::parse(0, format!("element {e} outside 1..={}", ground.get())));
        }
        if e <= prev {
            return Err(Error::parse(0, format!("elements must be strictly increasing, got {e} after {prev}")));
        }
        bits |= 1 << (e - 1);
        prev = e;
    }
    Ok(SetWord(bits))
}

/// `1 3 4`, or `-` for the empty set.
pub fn format_set_lines(w: SetWord) -> String {
    if w.is_empty() {
        "-".to_string()
    } else {
        elements(w).iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// `{1,3,4}`, or `{}` for the empty set.
pub fn format_set_braces(w: SetWord) -> String {
    let inner: Vec<String> = elements(w).iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn format_family_braces(f: &Family) -> String {
    let inner: Vec<String> = f.iter().map(format_set_braces).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn write_family(f: &Family, format: Format) -> String {
    match format {
        Format::Lines => f.iter().fold(String::new(), |mut out, w| {
            let _ = writeln!(out, "{}", format_set_lines(w));
            out
        }),
        Format::Json => {
            let mut out = serde_json::to_string(&FamilyDocument::from(f)).expect("document serializes");
            out.push('\n');
            out
        }
    }
}

/// Guesses the format from the first non-blank character.
pub fn detect_format(text: &str) -> Format {
    match text.trim_start().chars().next() {
        Some('{') => Format::Json,
        _ => Format::Lines,
    }
}

/// Parses a family document.
///
/// `n` is required to agree with a JSON document's own `n`. For `lines`
/// input without `n`, the ground size is the largest element seen (at least 1).
pub fn parse_family(text: &str, format: Option<Format>, n: Option<GroundSize>) -> Result<Family> {
    match format.unwrap_or_else(|| detect_format(text)) {
        Format::Json => {
            let doc: FamilyDocument =
                serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
            if let Some(n) = n {
                if n.get() != doc.n {
                    return Err(Error::GroundMismatch { left: doc.n, right: n.get() });
                }
            }
            Family::try_from(doc)
        }
        Format::Lines => parse_lines(text, n),
    }
}

fn parse_lines(text: &str, n: Option<GroundSize>) -> Result<Family> {
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let elems = if line == "-" {
            Vec::new()
        } else {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::parse(i + 1, format!("`{tok}` is not an element")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        sets.push(elems);
        lines.push(i + 1);
    }
    let ground = match n {
        Some(n) => n,
        None => {
            let max = sets.iter().flatten().copied().max().unwrap_or(1).max(1);
            if max > MAX_GROUND {
                return Err(Error::parse(0, format!("element {max} exceeds {MAX_GROUND}")));
            }
            GroundSize::new(max)?
        }
    };
    let words = sets
        .iter()
        .zip(&lines)
        .map(|(set, &line)| word_from_elements(set, ground).map_err(|e| relocate(e, line)))
        .collect::<Result<Vec<_>>>()?;
    Family::new(ground, words)
}

/// Parses `3,4`, `3 4`, `{3,4}` or the empty string into a word.
pub fn parse_set_spec(spec: &str, ground: GroundSize) -> Result<SetWord> {
    let inner = spec.trim().trim_start_matches('{').trim_end_matches('}');
    let mut elems = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(0, format!("`{tok}` is not an element")))
        })
        .collect::<Result<Vec<_>>>()?;
    elems.sort_unstable();
    elems.dedup();
    word_from_elements(&elems, ground)
}
