//! Structured-text serialization of configurations and point sets.
//!
//! The format is line-oriented UTF-8 with one record per line and explicit
//! integers throughout (arbitrary precision, no floats), so documents in
//! canonical form round-trip bit-exactly:
//!
//! ```text
//! thetaplanes-config v1
//! dim 3
//! hyperplane 0 0 0 1 mult 8 tag node-span
//! point 1 0 0 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::configuration::{Provenance, WeightedConfig};
use crate::error::{Error, Result};
use crate::exactlin::{Hyperplane, ProjPoint};

const MAGIC: &str = "thetaplanes-config v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocEntry {
    pub coeffs: Vec<BigInt>,
    pub multiplicity: u64,
    pub provenance: String,
}

/// In-memory form of a configuration file: the weighted hyperplane entries
/// plus an optional point section (e.g. the nodes a synthesizer used).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConfigDocument {
    pub ambient_dim: usize,
    pub entries: Vec<DocEntry>,
    pub points: Vec<Vec<BigInt>>,
}

impl ConfigDocument {
    pub fn from_config(cfg: &WeightedConfig, points: &[ProjPoint]) -> Self {
        let entries = cfg
            .iter()
            .map(|(h, m, p)| DocEntry {
                coeffs: h.coeffs().to_vec(),
                multiplicity: m,
                provenance: p.as_str().to_string(),
            })
            .collect();
        let points = points.iter().map(|p| p.coords().to_vec()).collect();
        Self { ambient_dim: cfg.ambient_dim(), entries, points }
    }

    pub fn to_config(&self) -> Result<WeightedConfig> {
        let mut cfg = WeightedConfig::new(self.ambient_dim);
        for e in &self.entries {
            if e.coeffs.len() != self.ambient_dim + 1 {
                return Err(Error::Parse(format!(
                    "hyperplane with {} coordinates in a dimension-{} document",
                    e.coeffs.len(),
                    self.ambient_dim
                )));
            }
            if e.multiplicity == 0 {
                return Err(Error::Parse("zero multiplicity".into()));
            }
            let h = Hyperplane::from_bigints(e.coeffs.clone())
                .map_err(|e| Error::Parse(e.to_string()))?;
            cfg.insert(h, e.multiplicity, Provenance::parse(&e.provenance)?);
        }
        Ok(cfg)
    }

    pub fn point_list(&self) -> Result<Vec<ProjPoint>> {
        self.points
            .iter()
            .map(|coords| {
                if coords.len() != self.ambient_dim + 1 {
                    return Err(Error::Parse(format!(
                        "point with {} coordinates in a dimension-{} document",
                        coords.len(),
                        self.ambient_dim
                    )));
                }
                ProjPoint::from_bigints(coords.clone()).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for ConfigDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{MAGIC}")?;
        writeln!(f, "dim {}", self.ambient_dim)?;
        for e in &self.entries {
            write!(f, "hyperplane")?;
            for c in &e.coeffs {
                write!(f, " {c}")?;
            }
            writeln!(f, " mult {} tag {}", e.multiplicity, e.provenance)?;
        }
        for p in &self.points {
            write!(f, "point")?;
            for c in p {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for ConfigDocument {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some(l) if l == MAGIC => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header {MAGIC:?}, found {other:?}"
                )))
            }
        }
        let dim_line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing dim line".into()))?;
        let ambient_dim = match dim_line.split_whitespace().collect::<Vec<_>>()[..] {
            ["dim", d] => d
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad dimension: {e}")))?,
            _ => return Err(Error::Parse(format!("malformed dim line {dim_line:?}"))),
        };
        let mut doc = ConfigDocument { ambient_dim, entries: Vec::new(), points: Vec::new() };
        for line in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.first() {
                Some(&"hyperplane") => {
                    let mult_pos = tokens
                        .iter()
                        .position(|t| *t == "mult")
                        .ok_or_else(|| Error::Parse(format!("entry without mult: {line:?}")))?;
                    let coeffs = parse_ints(&tokens[1..mult_pos])?;
                    if tokens.len() < mult_pos + 2 {
                        return Err(Error::Parse(format!("entry without multiplicity value: {line:?}")));
                    }
                    let multiplicity = tokens[mult_pos + 1]
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("bad multiplicity: {e}")))?;
                    let provenance = match tokens.get(mult_pos + 2) {
                        Some(&"tag") => tokens
                            .get(mult_pos + 3)
                            .ok_or_else(|| Error::Parse(format!("tag without value: {line:?}")))?
                            .to_string(),
                        None => Provenance::Mock.as_str().to_string(),
                        Some(other) => {
                            return Err(Error::Parse(format!("unexpected token {other:?}")))
                        }
                    };
                    doc.entries.push(DocEntry { coeffs, multiplicity, provenance });
                }
                Some(&"point") => {
                    doc.points.push(parse_ints(&tokens[1..])?);
                }
                _ => return Err(Error::Parse(format!("unrecognized record {line:?}"))),
            }
        }
        Ok(doc)
    }
}

fn parse_ints(tokens: &[&str]) -> Result<Vec<BigInt>> {
    if tokens.is_empty() {
        return Err(Error::Parse("empty integer vector".into()));
    }
    tokens
        .iter()
        .map(|t| {
            BigInt::from_str(t).map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

/// Parse a plain points file: one point per line, whitespace-separated
/// integers, with optional `point` prefixes, comments and blank lines.
pub fn parse_points_file(text: &str, ambient_dim: usize) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let tokens = if tokens.first() == Some(&"point") { &tokens[1..] } else { &tokens[..] };
        let coords = parse_ints(tokens)?;
        if coords.len() != ambient_dim + 1 {
            return Err(Error::Parse(format!(
                "point with {} coordinates, expected {}",
                coords.len(),
                ambient_dim + 1
            )));
        }
        out.push(ProjPoint::from_bigints(coords).map_err(|e| Error::Parse(e.to_string()))?);
    }
    if out.is_empty() {
        return Err(Error::Parse("no points in file".into()));
    }
    Ok(out)
}
