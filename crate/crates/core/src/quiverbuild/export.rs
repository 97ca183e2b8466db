//! JSON and DOT renderings of a [`Quiver`].

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Arrow, BoundaryReport, PairDims, Quiver, Relation, Term};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::weight::{format_rational, parse_rational, Rational, Weight};

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    id: usize,
    tail: Vec<Value>,
    head: Vec<Value>,
    index: usize,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    path: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct DroppedJson {
    tail: Vec<i64>,
    head: Vec<i64>,
    multiplicity: u64,
}

#[derive(Serialize, Deserialize, Default)]
struct BoundaryJson {
    dropped_arrows: Vec<DroppedJson>,
    truncated_relations: usize,
}

#[derive(Serialize, Deserialize)]
struct DimJson {
    tail: Vec<Value>,
    head: Vec<Value>,
    a_dim: u64,
    b_dim: u64,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<String>>,
    status: String,
    vertices: Vec<Vec<Value>>,
    arrows: Vec<ArrowJson>,
    #[serde(default)]
    relations: Vec<RelationJson>,
    #[serde(default)]
    boundary_report: BoundaryJson,
    #[serde(default)]
    dim_table: Vec<DimJson>,
}

fn coord_value(c: &Rational) -> Value {
    match num::ToPrimitive::to_i64(c.numer()) {
        Some(n) if c.is_integer() => Value::from(n),
        _ => Value::from(format_rational(c)),
    }
}

fn weight_value(w: &Weight) -> Vec<Value> {
    w.coords.iter().map(coord_value).collect()
}

fn parse_coord(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| Error::Parse(format!("non-integer coordinate {n}"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad coordinate {other}"))),
    }
}

fn parse_weight(v: &[Value]) -> Result<Weight> {
    Ok(Weight::new(v.iter().map(parse_coord).collect::<Result<Vec<_>>>()?))
}

fn to_json_struct(q: &Quiver) -> QuiverJson {
    let w = |i: usize| weight_value(&q.vertices[i]);
    QuiverJson {
        group: q.group.clone(),
        sigma: q.sigma.as_ref().map(|s| s.iter().map(|i| format!("a{}", i + 1)).collect()),
        status: q.status.clone(),
        vertices: q.vertices.iter().map(weight_value).collect(),
        arrows: q.arrows.iter().map(|a| ArrowJson { id: a.id, tail: w(a.tail), head: w(a.head), index: a.index }).collect(),
        relations: q
            .relations
            .iter()
            .map(|r| RelationJson {
                terms: r.terms.iter().map(|t| TermJson { coeff: format_rational(&t.coeff), path: t.path.clone() }).collect(),
            })
            .collect(),
        boundary_report: BoundaryJson {
            dropped_arrows: q
                .boundary
                .dropped_arrows
                .iter()
                .map(|(t, h, m)| DroppedJson { tail: t.clone(), head: h.clone(), multiplicity: *m })
                .collect(),
            truncated_relations: q.boundary.truncated_relations,
        },
        dim_table: q
            .dim_table
            .iter()
            .map(|d| DimJson { tail: w(d.tail), head: w(d.head), a_dim: d.a_dim, b_dim: d.b_dim })
            .collect(),
    }
}

/// Serializes a quiver to pretty-printed JSON.
pub fn to_json(q: &Quiver) -> String {
    serde_json::to_string_pretty(&to_json_struct(q)).expect("quiver JSON is serializable")
}

/// Loads a quiver written by [`to_json`] or authored by hand.
pub fn from_json(s: &str) -> Result<Quiver> {
    let j: QuiverJson = serde_json::from_str(s)?;
    let vertices = j.vertices.iter().map(|v| parse_weight(v)).collect::<Result<Vec<_>>>()?;
    let pos: HashMap<Weight, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let lookup = |v: &[Value]| -> Result<usize> {
        let w = parse_weight(v)?;
        pos.get(&w).copied().ok_or_else(|| Error::Parse(format!("arrow endpoint {w} is not a vertex")))
    };
    let mut arrows = Vec::with_capacity(j.arrows.len());
    for (k, a) in j.arrows.iter().enumerate() {
        if a.id != k {
            return Err(Error::Parse(format!("arrow ids must be 0..n in order; found {} at position {k}", a.id)));
        }
        arrows.push(Arrow { id: a.id, tail: lookup(&a.tail)?, head: lookup(&a.head)?, index: a.index });
    }
    let mut relations = Vec::new();
    for r in &j.relations {
        let mut terms = Vec::new();
        for t in &r.terms {
            if let Some(&bad) = t.path.iter().find(|&&id| id >= arrows.len()) {
                return Err(Error::Parse(format!("relation refers to unknown arrow {bad}")));
            }
            terms.push(Term { coeff: parse_rational(&t.coeff)?, path: t.path.clone() });
        }
        relations.push(Relation { terms });
    }
    let mut dim_table = Vec::new();
    for d in &j.dim_table {
        dim_table.push(PairDims { tail: lookup(&d.tail)?, head: lookup(&d.head)?, a_dim: d.a_dim, b_dim: d.b_dim });
    }
    let sigma = match &j.sigma {
        Some(labels) => {
            let joined = labels.join(",");
            let rank = vertices.first().map_or(usize::MAX, |v| v.rank());
            Some(crate::parabolic::parse_sigma(&joined, rank)?)
        }
        None => None,
    };
    Ok(Quiver {
        vertices,
        arrows,
        relations,
        status: j.status,
        boundary: BoundaryReport {
            dropped_arrows: j
                .boundary_report
                .dropped_arrows
                .into_iter()
                .map(|d| (d.tail, d.head, d.multiplicity))
                .collect(),
            truncated_relations: j.boundary_report.truncated_relations,
        },
        dim_table,
        group: j.group,
        sigma,
    })
}

/// Renders a relation as `[a0,a3] - [a1,a2] + 2[a5]`; each path lists arrows
/// in traversal order, labelled by `label`.
pub fn relation_text(r: &Relation, label: impl Fn(usize) -> String) -> String {
    let mut s = String::new();
    for (i, t) in r.terms.iter().enumerate() {
        let neg = t.coeff < Rational::from_integer(0.into());
        let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !num::One::is_one(&mag) {
            s.push_str(&format_rational(&mag));
        }
        let path: Vec<String> = t.path.iter().map(|&a| label(a)).collect();
        let _ = write!(s, "[{}]", path.join(","));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Graphviz rendering; vertices of equal `Σ`-height share a rank.
pub fn to_dot(p: &ParabolicDatum, q: &Quiver) -> String {
    let mut s = String::from("digraph Q {\n  rankdir=TB;\n");
    let mut levels: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (i, v) in q.vertices.iter().enumerate() {
        let h = p.sigma_height(v).unwrap_or_else(|_| Rational::from_integer(0.into()));
        match levels.iter_mut().find(|(k, _)| *k == h) {
            Some((_, vs)) => vs.push(i),
            None => levels.push((h, vec![i])),
        }
    }
    levels.sort_by(|a, b| b.0.cmp(&a.0));
    for (i, v) in q.vertices.iter().enumerate() {
        let h = p.sigma_height(v).unwrap_or_else(|_| Rational::from_integer(0.into()));
        let _ = writeln!(s, "  v{i} [label=\"{v}\", sigma_height=\"{}\"];", format_rational(&h));
    }
    for (h, vs) in &levels {
        let ids: Vec<String> = vs.iter().map(|i| format!("v{i}")).collect();
        let _ = writeln!(s, "  {{ rank=same; /* height {} */ {}; }}", format_rational(h), ids.join("; "));
    }
    for a in &q.arrows {
        let _ = writeln!(s, "  v{} -> v{} [label=\"a{}\"];", a.tail, a.head, a.id);
    }
    s.push_str("}\n");
    s
}
