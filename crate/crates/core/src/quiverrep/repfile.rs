//! JSON representation files.
//!
//! ```text
//! {
//!   "field": "Q",
//!   "dims": { "(0,0)": 1, "(1,-2)": 1 },
//!   "maps": { "0": [[1]], "1": [["1/2"]] },
//!   "decorations": { "(0,0)": { "rank": 1, "degree": "0" } }
//! }
//! ```
//!
//! Vertex keys are coordinate tuples or vertex indices; arrow keys are arrow ids.
//! Missing vertices have dimension zero and missing arrows carry the zero map.
//! Entries are integers, rational strings, or `[re, im]` pairs (complex input only).

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Decoration, Field, QuiverRep};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::params::paramfile::resolve_vertex;
use crate::quiverbuild::Quiver;
use crate::weight::{format_rational, parse_rational, rational_to_f64, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecorationJson {
    pub rank: i64,
    #[serde(default = "zero_string")]
    pub degree: String,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RepFile {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decorations: Option<BTreeMap<String, DecorationJson>>,
}

fn default_field() -> String {
    "Q".into()
}

fn real_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(Rational::from_integer(x.into())),
            None => parse_rational(&n.to_string()),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("entry {other} is not a rational number"))),
    }
}

fn complex_entry(v: &Value) -> Result<Complex64> {
    let f = |x: &Value| -> Result<f64> {
        match x {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            _ => Ok(rational_to_f64(&real_entry(x)?)),
        }
    };
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(f(&pair[0])?, f(&pair[1])?)),
        Value::Array(_) => Err(Error::Parse("complex entries are [re, im] pairs".into())),
        other => Ok(Complex64::new(f(other)?, 0.0)),
    }
}

impl RepFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn dims_for(&self, q: &Quiver) -> Result<Vec<usize>> {
        let mut dims = vec![0; q.vertices.len()];
        for (id, &d) in &self.dims {
            let w = resolve_vertex(id, &q.vertices)?;
            let i = q.vertex_index(&w).ok_or_else(|| Error::Config(format!("{w} is not a vertex of the quiver")))?;
            dims[i] = d;
        }
        Ok(dims)
    }

    fn arrow_entries(&self, q: &Quiver) -> Result<BTreeMap<usize, &Vec<Vec<Value>>>> {
        let mut out = BTreeMap::new();
        for (id, rows) in &self.maps {
            let a: usize = id.trim().parse().map_err(|_| Error::Parse(format!("bad arrow id {id:?}")))?;
            if a >= q.arrows.len() {
                return Err(Error::Config(format!("arrow {a} is not in the quiver ({} arrows)", q.arrows.len())));
            }
            out.insert(a, rows);
        }
        Ok(out)
    }

    fn shape_check(q: &Quiver, dims: &[usize], a: usize, rows: &[Vec<Value>]) -> Result<()> {
        let (r, c) = (dims[q.arrows[a].head], dims[q.arrows[a].tail]);
        let exact = rows.len() == r && rows.iter().all(|x| x.len() == c);
        let empty = (r == 0 || c == 0) && rows.iter().all(|x| x.is_empty());
        if !exact && !empty {
            return Err(Error::Domain(format!("arrow {a} needs a {r}×{c} matrix")));
        }
        Ok(())
    }

    /// An exact representation over `Q` or `F_p`.
    pub fn to_rep(&self, q: &Quiver) -> Result<QuiverRep> {
        let field = Field::parse(&self.field)?;
        let dims = self.dims_for(q)?;
        let entries = self.arrow_entries(q)?;
        let mut maps = Vec::with_capacity(q.arrows.len());
        for a in &q.arrows {
            let mut m = QMat::zeros(dims[a.head], dims[a.tail]);
            if let Some(rows) = entries.get(&a.id) {
                Self::shape_check(q, &dims, a.id, rows)?;
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m.set(i, j, real_entry(v)?);
                    }
                }
            }
            maps.push(m);
        }
        let mut rep = QuiverRep { quiver: q.clone(), field, dims, maps, decorations: None };
        if let Some(dec) = &self.decorations {
            let mut d: Vec<Decoration> =
                rep.dims.iter().map(|&k| Decoration { rank: k as i64, degree: Rational::from_integer(0.into()) }).collect();
            for (id, x) in dec {
                let w = resolve_vertex(id, &q.vertices)?;
                let i = q.vertex_index(&w).ok_or_else(|| Error::Config(format!("{w} is not a vertex of the quiver")))?;
                d[i] = Decoration { rank: x.rank, degree: parse_rational(&x.degree)? };
            }
            rep.decorations = Some(d);
        }
        rep.validate()?;
        Ok(rep)
    }

    /// Complex matrices per arrow, for the numerical vortex solver.
    pub fn to_complex(&self, q: &Quiver) -> Result<(Vec<usize>, Vec<DMatrix<Complex64>>)> {
        let dims = self.dims_for(q)?;
        let entries = self.arrow_entries(q)?;
        let mut maps = Vec::with_capacity(q.arrows.len());
        for a in &q.arrows {
            let mut m = DMatrix::zeros(dims[a.head], dims[a.tail]);
            if let Some(rows) = entries.get(&a.id) {
                Self::shape_check(q, &dims, a.id, rows)?;
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m[(i, j)] = complex_entry(v)?;
                    }
                }
            }
            maps.push(m);
        }
        Ok((dims, maps))
    }

    /// The file describing an exact representation; vertices keyed by coordinates.
    pub fn from_rep(r: &QuiverRep) -> Self {
        let key = |i: usize| r.quiver.vertices[i].to_string();
        let dims = (0..r.dims.len()).filter(|&i| r.dims[i] > 0).map(|i| (key(i), r.dims[i])).collect();
        let maps = r
            .maps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.rows > 0 && m.cols > 0)
            .map(|(a, m)| {
                let rows = m
                    .to_rows()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| match num::ToPrimitive::to_i64(x.numer()) {
                                Some(n) if x.is_integer() => Value::from(n),
                                _ => Value::from(format_rational(x)),
                            })
                            .collect()
                    })
                    .collect();
                (a.to_string(), rows)
            })
            .collect();
        let decorations = r.decorations.as_ref().map(|d| {
            d.iter()
                .enumerate()
                .map(|(i, x)| (key(i), DecorationJson { rank: x.rank, degree: format_rational(&x.degree) }))
                .collect()
        });
        RepFile { field: r.field.tag(), dims, maps, decorations }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation JSON is serializable")
    }
}
