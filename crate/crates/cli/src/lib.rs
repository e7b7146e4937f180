//! Library side of the command-line front end: JSON rendering, disk caches,
//! table exports and the verification suites. The binary in `main.rs` is a
//! thin argument-parsing layer over these.

pub mod cache;
pub mod export;
pub mod json;
pub mod verify;

use anyhow::{bail, Result};

/// Parses a comma-separated partition argument like `"3,1"`; the empty
/// string (or `"-"`) denotes the empty partition.
pub fn parse_parts_arg(s: &str) -> Result<Vec<usize>> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "-" || trimmed == "[]" {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    for piece in trimmed.split(',') {
        let p: usize = piece.trim().parse()?;
        if p == 0 {
            bail!("partition parts must be positive");
        }
        parts.push(p);
    }
    Ok(parts)
}

/// A single comma-separated partition CLI argument (needed so clap does not
/// mistake `Vec<usize>` for a repeated flag).
#[derive(Clone, Debug)]
pub struct PartsArg(pub Vec<usize>);

impl std::str::FromStr for PartsArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_parts_arg(s).map(PartsArg).map_err(|e| e.to_string())
    }
}

/// Comma-separated even bubble indices like `"2,0"` for `d_2 d_0`.
#[derive(Clone, Debug)]
pub struct EvenIndicesArg(pub Vec<usize>);

impl std::str::FromStr for EvenIndicesArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(EvenIndicesArg(Vec::new()));
        }
        let mut out = Vec::new();
        for piece in trimmed.split(',') {
            let v: usize = piece.trim().parse().map_err(|e| format!("{e}"))?;
            if !v.is_multiple_of(2) {
                return Err(format!("bubble indices must be even, got {v}"));
            }
            out.push(v);
        }
        Ok(EvenIndicesArg(out))
    }
}
