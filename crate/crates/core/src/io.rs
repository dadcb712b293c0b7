//! Reading and writing systems.
//!
//! JSON: `{"name": "...", "num_points": n, "lines": [[...], ...]}` with
//! `name` optional. Planes may add `"coords"`, one normalized triple of field
//! element indices per point, and a hyperoval file adds `"arc"`.
//!
//! Text: a header line `n m` followed by `m` lines of space-separated point
//! indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::LinearSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub num_points: usize,
    pub lines: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[u32; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<Vec<usize>>,
}

impl SystemFile {
    pub fn from_system(sys: &LinearSystem) -> Self {
        Self {
            name: sys.name().map(str::to_owned),
            num_points: sys.num_points(),
            lines: sys.lines().to_vec(),
            coords: None,
            arc: None,
        }
    }

    pub fn into_system(self) -> Result<LinearSystem> {
        let sys = LinearSystem::new(self.num_points, self.lines)?;
        Ok(match self.name {
            Some(name) => sys.with_name(name),
            None => sys,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("system files always serialize")
    }
}

pub fn to_json(sys: &LinearSystem) -> String {
    SystemFile::from_system(sys).to_json()
}

pub fn from_json(text: &str) -> Result<LinearSystem> {
    parse_json_file(text)?.into_system()
}

pub fn parse_json_file(text: &str) -> Result<SystemFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_text(sys: &LinearSystem) -> String {
    let mut out = format!("{} {}\n", sys.num_points(), sys.num_lines());
    for line in sys.lines() {
        let row: Vec<String> = line.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<LinearSystem> {
    let mut rows = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = rows.next().ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
    let nums = parse_row(header)?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse(format!(
            "header `{header}` must hold exactly two integers"
        )));
    };
    let lines: Vec<Vec<usize>> = rows.map(parse_row).collect::<Result<_>>()?;
    if lines.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} lines, found {}",
            lines.len()
        )));
    }
    LinearSystem::new(n, lines)
}

fn parse_row(row: &str) -> Result<Vec<usize>> {
    row.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("`{t}` is not a point index")))
        })
        .collect()
}

/// Picks the format from the content: JSON objects start with `{`.
pub fn parse_any(text: &str) -> Result<LinearSystem> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}
