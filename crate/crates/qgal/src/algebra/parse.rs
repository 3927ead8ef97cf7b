//! The `.alg` text format.
//!
//! Line 1: `quandle n` | `rack n` | `group n`. Then n rows of n
//! space-separated integers (the ◁ table, or the multiplication table for
//! groups; identity and inverses are inferred). Blank lines and `#`
//! comments are skipped. Round-trips exactly.

use super::{Alg, FiniteAlgebra, Variety};
use crate::{input_err, Result};

pub fn parse_alg(text: &str) -> Result<Alg> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = match lines.next() {
        Some(h) => h,
        None => return input_err("empty .alg input"),
    };
    let mut parts = header.split_whitespace();
    let variety = match parts.next() {
        Some("quandle") => Variety::Quandle,
        Some("rack") => Variety::Rack,
        Some("group") => Variety::Group,
        other => return input_err(format!("unknown variety {:?}", other.unwrap_or(""))),
    };
    let n: usize = match parts.next().map(str::parse) {
        Some(Ok(n)) => n,
        _ => return input_err("header must be `<variety> <size>`"),
    };
    if parts.next().is_some() {
        return input_err("trailing tokens after header");
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = match lines.next() {
            Some(l) => l,
            None => return input_err(format!("expected {n} table rows")),
        };
        let row: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| crate::Error::Input(format!("bad table entry: {e}")))?;
        if row.len() != n {
            return input_err(format!("row has {} entries, expected {n}", row.len()));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return input_err("trailing content after table");
    }
    FiniteAlgebra::from_rows(variety, &rows)
}

pub fn render_alg(a: &Alg) -> String {
    let mut out = format!("{} {}\n", a.variety(), a.size());
    for row in a.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
