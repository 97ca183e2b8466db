//! Flat key-value parameter files.
//!
//! ```text
//! # comments start with '#'
//! epsilon.a2 = 1
//! tau.(0,0) = 1/2
//! tauprime.3 = -1
//! sigma.0 = 2
//! ```
//!
//! Vertex ids are either coordinate tuples or zero-based indices into the
//! vertex list of the quiver in use. `=`, `:` or whitespace separate key and value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::parabolic::{parse_sigma, ParabolicDatum};
use crate::params::EpsilonSet;
use crate::weight::{format_rational, parse_rational, Rational, Weight};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamFile {
    pub epsilon: BTreeMap<String, Rational>,
    pub tau: Vec<(String, Rational)>,
    pub tauprime: Vec<(String, Rational)>,
    pub sigma: BTreeMap<usize, Rational>,
}

fn split_line(line: &str) -> Option<(&str, &str)> {
    if let Some(i) = line.find(['=', ':']) {
        // A ':' inside a coordinate tuple never occurs, so the first separator wins.
        return Some((line[..i].trim(), line[i + 1..].trim()));
    }
    let mut it = line.splitn(2, char::is_whitespace);
    Some((it.next()?.trim(), it.next()?.trim()))
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = ParamFile::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                split_line(line).ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", no + 1)))?;
            let value = parse_rational(value).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
            let (kind, id) = key
                .split_once('.')
                .ok_or_else(|| Error::Parse(format!("line {}: key {key:?} has no '.'", no + 1)))?;
            match kind {
                "epsilon" | "eps" => {
                    out.epsilon.insert(id.to_string(), value);
                }
                "tau" => out.tau.push((id.to_string(), value)),
                "tauprime" | "tau_prime" => out.tauprime.push((id.to_string(), value)),
                "sigma" => {
                    let i: usize = id.parse().map_err(|_| Error::Parse(format!("line {}: bad sigma index {id:?}", no + 1)))?;
                    out.sigma.insert(i, value);
                }
                other => return Err(Error::Parse(format!("line {}: unknown key kind {other:?}", no + 1))),
            }
        }
        Ok(out)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn epsilon_set(&self, p: &ParabolicDatum) -> Result<EpsilonSet> {
        let mut e = EpsilonSet::default();
        for (label, v) in &self.epsilon {
            let idx = parse_sigma(label, p.rank())?;
            let [i] = idx[..] else {
                return Err(Error::Config(format!("epsilon key {label:?} must name one simple root")));
            };
            e.values.insert(i, v.clone());
        }
        Ok(e)
    }

    /// `σ_0..σ_{m−1}`; indices must be contiguous from zero.
    pub fn sigma_list(&self) -> Result<Vec<Rational>> {
        for (k, (&i, _)) in self.sigma.iter().enumerate() {
            if i != k {
                return Err(Error::Config(format!("sigma indices must be 0..m without gaps; missing sigma.{k}")));
            }
        }
        Ok(self.sigma.values().cloned().collect())
    }

    pub fn tau_map(&self, vertices: &[Weight]) -> Result<BTreeMap<Weight, Rational>> {
        resolve(&self.tau, vertices)
    }

    /// `τ′` values; keys may use either the `tauprime.` or the `tau.` prefix.
    pub fn tauprime_map(&self, vertices: &[Weight]) -> Result<BTreeMap<Weight, Rational>> {
        let mut all = self.tauprime.clone();
        if all.is_empty() {
            all = self.tau.clone();
        }
        resolve(&all, vertices)
    }
}

/// Resolves a vertex id: a coordinate tuple or an index into `vertices`.
pub fn resolve_vertex(id: &str, vertices: &[Weight]) -> Result<Weight> {
    let id = id.trim();
    if id.starts_with(['(', '[']) {
        return id.parse();
    }
    let i: usize = id.parse().map_err(|_| Error::Parse(format!("bad vertex id {id:?}")))?;
    vertices
        .get(i)
        .cloned()
        .ok_or_else(|| Error::Config(format!("vertex index {i} out of range (quiver has {} vertices)", vertices.len())))
}

fn resolve(entries: &[(String, Rational)], vertices: &[Weight]) -> Result<BTreeMap<Weight, Rational>> {
    let mut out = BTreeMap::new();
    for (id, v) in entries {
        let w = resolve_vertex(id, vertices)?;
        if out.insert(w.clone(), v.clone()).is_some() {
            return Err(Error::Config(format!("duplicate entry for vertex {w}")));
        }
    }
    Ok(out)
}

/// Renders `prefix.<coords> = value` lines.
pub fn write_map(prefix: &str, map: &BTreeMap<Weight, Rational>) -> String {
    let mut s = String::new();
    for (w, v) in map {
        let _ = writeln!(s, "{prefix}.{w} = {}", format_rational(v));
    }
    s
}
