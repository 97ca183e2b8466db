//! Quiver representations: relation checks, `τ′`-slopes and exact
//! (semi)stability by exhaustive subrepresentation search over `F_p`.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{next_prime, subspaces, FpMat, QMat};
use crate::quiverbuild::Quiver;
use crate::weight::{rat, Rational, Weight};

pub mod repfile;

/// Default bound on the total dimension for exhaustive enumeration.
pub const DEFAULT_BOUND: usize = 8;
/// Default prime for exact stability checks; overridden by `PQUIVER_PRIME`.
pub const DEFAULT_PRIME: u64 = 5;
const PRIME_SEARCH_LIMIT: u64 = 10_007;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "Q".into(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .and_then(|x| x.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field tag {s:?}")))?;
        if !crate::linalg::is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }
}

/// Prime used for exact checks of rational representations.
pub fn default_prime() -> u64 {
    std::env::var("PQUIVER_PRIME")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&p| crate::linalg::is_prime(p))
        .unwrap_or(DEFAULT_PRIME)
}

/// Rank and degree attached to a vertex for sheaf-level bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub rank: i64,
    pub degree: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep {
    pub quiver: Quiver,
    pub field: Field,
    /// Dimension per vertex index.
    pub dims: Vec<usize>,
    /// Matrix per arrow id, of shape `dims[head] × dims[tail]`.
    pub maps: Vec<QMat>,
    pub decorations: Option<Vec<Decoration>>,
}

impl QuiverRep {
    pub fn new(quiver: Quiver, field: Field, dims: Vec<usize>, maps: Vec<QMat>) -> Result<Self> {
        let r = QuiverRep { quiver, field, dims, maps, decorations: None };
        r.validate()?;
        Ok(r)
    }

    /// The representation with every map zero.
    pub fn zero_maps(quiver: Quiver, field: Field, dims: Vec<usize>) -> Result<Self> {
        let maps = quiver.arrows.iter().map(|a| QMat::zeros(dims[a.head], dims[a.tail])).collect();
        Self::new(quiver, field, dims, maps)
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.quiver.vertices.len();
        if self.dims.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, got: self.dims.len() });
        }
        if self.maps.len() != self.quiver.arrows.len() {
            return Err(Error::DimensionMismatch { expected: self.quiver.arrows.len(), got: self.maps.len() });
        }
        for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
            if m.rows != self.dims[a.head] || m.cols != self.dims[a.tail] {
                return Err(Error::Domain(format!(
                    "arrow {} needs a {}×{} matrix, got {}×{}",
                    a.id, self.dims[a.head], self.dims[a.tail], m.rows, m.cols
                )));
            }
            if let Field::Prime(p) = self.field {
                if m.data.iter().any(|x| !x.is_integer() || x.is_negative() || *x >= rat(p as i64)) {
                    return Err(Error::Domain(format!("arrow {} has entries outside 0..{p}", a.id)));
                }
            }
        }
        if let Some(d) = &self.decorations {
            if d.len() != nv {
                return Err(Error::DimensionMismatch { expected: nv, got: d.len() });
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The composite map along a path (arrow ids in traversal order).
    pub fn path_matrix(&self, path: &[usize]) -> Result<QMat> {
        let first = self.quiver.arrows.get(*path.first().ok_or_else(|| Error::Domain("empty path".into()))?)
            .ok_or_else(|| Error::Domain("unknown arrow in path".into()))?;
        let mut m = QMat::identity(self.dims[first.tail]);
        let mut at = first.tail;
        for &id in path {
            let a = self.quiver.arrows.get(id).ok_or_else(|| Error::Domain(format!("unknown arrow {id}")))?;
            if a.tail != at {
                return Err(Error::Domain(format!("path is not composable at arrow {id}")));
            }
            m = self.maps[id].mul(&m)?;
            at = a.head;
        }
        Ok(m)
    }

    fn reduce(&self, m: QMat) -> QMat {
        match self.field {
            Field::Rational => m,
            Field::Prime(p) => FpMat::from_qmat(&m, p).expect("integer entries reduce mod p").to_qmat(),
        }
    }

    /// `(rank, degree)` per vertex: decorations when present, else `(dim, 0)`.
    pub fn rank_degree(&self) -> Vec<(i64, Rational)> {
        match &self.decorations {
            Some(d) => d.iter().map(|x| (x.rank, x.degree.clone())).collect(),
            None => self.dims.iter().map(|&d| (d as i64, Rational::zero())).collect(),
        }
    }
}

/// A relation that fails, with its residual matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub relation: usize,
    pub residual: QMat,
}

/// Evaluates every relation by path composition; an empty list means all hold.
pub fn check_relations(r: &QuiverRep) -> Result<Vec<Violation>> {
    r.validate()?;
    let mut out = Vec::new();
    for (i, rel) in r.quiver.relations.iter().enumerate() {
        let mut acc: Option<QMat> = None;
        for t in &rel.terms {
            let m = r.path_matrix(&t.path)?;
            match &mut acc {
                None => {
                    let mut z = QMat::zeros(m.rows, m.cols);
                    z.add_scaled(&m, &t.coeff)?;
                    acc = Some(z);
                }
                Some(a) => a.add_scaled(&m, &t.coeff)?,
            }
        }
        if let Some(a) = acc {
            let a = r.reduce(a);
            if !a.is_zero() {
                out.push(Violation { relation: i, residual: a });
            }
        }
    }
    Ok(out)
}

/// `deg_τ′(R) = Σ (n_λ deg E_λ − τ′_λ rk E_λ)`.
pub fn tau_degree(r: &QuiverRep, tau_prime: &[Rational], n: &[u64]) -> Result<Rational> {
    let rd = r.rank_degree();
    check_len(tau_prime.len(), rd.len())?;
    check_len(n.len(), rd.len())?;
    Ok(rd
        .iter()
        .zip(tau_prime)
        .zip(n)
        .fold(Rational::zero(), |acc, (((rk, deg), t), &nl)| acc + rat(nl as i64) * deg - t * rat(*rk)))
}

/// `μ_τ′(R) = deg_τ′(R) / Σ n_λ rk E_λ`.
pub fn tau_slope(r: &QuiverRep, tau_prime: &[Rational], n: &[u64]) -> Result<Rational> {
    let d = tau_degree(r, tau_prime, n)?;
    let w: i64 = r.rank_degree().iter().zip(n).map(|((rk, _), &nl)| rk * nl as i64).sum();
    if w == 0 {
        return Err(Error::Domain("τ′-slope of a representation with zero weighted rank".into()));
    }
    Ok(d / rat(w))
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: b, got: a });
    }
    Ok(())
}

/// Slope of a point-base subrepresentation with the given dimension vector.
pub fn sub_slope(sub_dims: &[usize], tau_prime: &[Rational], n: &[u64]) -> Option<Rational> {
    let w: u64 = sub_dims.iter().zip(n).map(|(&d, &k)| d as u64 * k).sum();
    if w == 0 {
        return None;
    }
    let deg = sub_dims.iter().zip(tau_prime).fold(Rational::zero(), |acc, (&d, t)| acc - t * rat(d as i64));
    Some(deg / rat(w as i64))
}

/// Converts per-vertex maps keyed by weight into vectors ordered like `q.vertices`.
pub fn per_vertex<T: Clone>(q: &Quiver, m: &BTreeMap<Weight, T>, default: Option<T>) -> Result<Vec<T>> {
    q.vertices
        .iter()
        .map(|v| {
            m.get(v)
                .cloned()
                .or_else(|| default.clone())
                .ok_or_else(|| Error::Config(format!("no value given for vertex {v}")))
        })
        .collect()
}

/// An arrow-invariant family of subspaces, one basis matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubrepWitness {
    pub sub_dims: Vec<usize>,
    pub bases: Vec<FpMat>,
}

/// Picks a prime for which `r` reduces faithfully: denominators invertible and
/// arrow and relation-path ranks preserved.
pub fn faithful_prime(r: &QuiverRep, start: u64) -> Result<u64> {
    if let Field::Prime(p) = r.field {
        return Ok(p);
    }
    let mut mats: Vec<QMat> = r.maps.clone();
    for rel in &r.quiver.relations {
        for t in &rel.terms {
            mats.push(r.path_matrix(&t.path)?);
        }
    }
    let ranks: Vec<usize> = mats.iter().map(|m| m.rank()).collect();
    let mut p = if crate::linalg::is_prime(start) { start } else { next_prime(start) };
    while p < PRIME_SEARCH_LIMIT {
        let ok = mats
            .iter()
            .zip(&ranks)
            .all(|(m, &k)| FpMat::from_qmat(m, p).is_some_and(|f| f.rank() == k));
        if ok {
            return Ok(p);
        }
        p = next_prime(p);
    }
    Err(Error::Domain("no rank-faithful prime below the search limit".into()))
}

struct Search<'a> {
    p: u64,
    dims: &'a [usize],
    maps: Vec<FpMat>,
    /// `(tail, head, arrow)` sorted by the later of the two vertices.
    arrows: Vec<(usize, usize, usize)>,
    out: Vec<SubrepWitness>,
}

impl Search<'_> {
    fn go(&mut self, v: usize, chosen: &mut Vec<FpMat>) {
        if v == self.dims.len() {
            self.out.push(SubrepWitness { sub_dims: chosen.iter().map(|b| b.cols).collect(), bases: chosen.clone() });
            return;
        }
        for k in 0..=self.dims[v] {
            for b in subspaces(self.p, self.dims[v], k) {
                chosen.push(b);
                if self.consistent(v, chosen) {
                    self.go(v + 1, chosen);
                }
                chosen.pop();
            }
        }
    }

    /// Checks every arrow whose endpoints are both among `0..=v` and touch `v`.
    fn consistent(&self, v: usize, chosen: &[FpMat]) -> bool {
        self.arrows.iter().filter(|&&(t, h, _)| t.max(h) == v).all(|&(t, h, a)| {
            let bt = &chosen[t];
            let bh = &chosen[h];
            if bt.cols == 0 || bh.cols == self.dims[h] {
                return true;
            }
            let img = self.maps[a].mul(bt);
            bh.hcat(&img).rank() == bh.cols
        })
    }
}

fn all_subreps(r: &QuiverRep, bound: usize) -> Result<(u64, Vec<SubrepWitness>)> {
    r.validate()?;
    let total = r.total_dim();
    if total > bound {
        return Err(Error::SizeBound { total, bound });
    }
    let p = match r.field {
        Field::Prime(p) => p,
        Field::Rational => faithful_prime(r, default_prime())?,
    };
    let maps = r
        .maps
        .iter()
        .map(|m| FpMat::from_qmat(m, p).ok_or_else(|| Error::Domain(format!("matrix not reducible mod {p}"))))
        .collect::<Result<Vec<_>>>()?;
    let arrows = r.quiver.arrows.iter().map(|a| (a.tail, a.head, a.id)).collect();
    let mut s = Search { p, dims: &r.dims, maps, arrows, out: Vec::new() };
    s.go(0, &mut Vec::new());
    Ok((p, s.out))
}

/// All sub-dimension vectors of invariant subspace families, one witness each,
/// sorted by dimension vector. Includes `0` and `R` itself.
pub fn enumerate_subreps(r: &QuiverRep, bound: usize) -> Result<Vec<SubrepWitness>> {
    let (_, all) = all_subreps(r, bound)?;
    let mut seen = BTreeMap::new();
    for w in all {
        seen.entry(w.sub_dims.clone()).or_insert(w);
    }
    Ok(seen.into_values().collect())
}

/// Re-verifies arrow invariance of a witness.
pub fn is_invariant(r: &QuiverRep, w: &SubrepWitness) -> Result<bool> {
    let Some(b0) = w.bases.first() else { return Ok(true) };
    let p = b0.p;
    for a in &r.quiver.arrows {
        let m = FpMat::from_qmat(&r.maps[a.id], p).ok_or_else(|| Error::Domain(format!("matrix not reducible mod {p}")))?;
        let img = m.mul(&w.bases[a.tail]);
        let bh = &w.bases[a.head];
        if bh.hcat(&img).rank() != bh.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::StrictlySemistable => "strictly-semistable",
            Verdict::Unstable => "unstable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Semistable and a direct sum of stable summands of the same slope.
    pub polystable: bool,
    pub slope: Rational,
    /// Maximal-slope proper subrepresentation when the verdict is not stable.
    pub witness: Option<SubrepWitness>,
    pub witness_slope: Option<Rational>,
    pub prime: u64,
}

/// Exact `τ′`-stability at point base. Relations of the quiver are not consulted.
pub fn is_semistable(r: &QuiverRep, tau_prime: &[Rational], n: &[u64]) -> Result<StabilityReport> {
    is_semistable_bounded(r, tau_prime, n, DEFAULT_BOUND)
}

pub fn is_semistable_bounded(r: &QuiverRep, tau_prime: &[Rational], n: &[u64], bound: usize) -> Result<StabilityReport> {
    if let Some(d) = &r.decorations {
        if d.iter().any(|x| !x.degree.is_zero()) {
            return Err(Error::Domain("exact stability is decided at point base only (all degrees zero)".into()));
        }
    }
    let slope = tau_slope(r, tau_prime, n)?;
    let (prime, all) = all_subreps(r, bound)?;
    let total = r.dims.clone();
    let proper: Vec<(&SubrepWitness, Rational)> = all
        .iter()
        .filter(|w| w.sub_dims != total)
        .filter_map(|w| sub_slope(&w.sub_dims, tau_prime, n).map(|s| (w, s)))
        .collect();
    let best = proper.iter().max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.sub_dims.cmp(&a.0.sub_dims)));
    let verdict = match best {
        None => Verdict::Stable,
        Some((_, s)) if *s < slope => Verdict::Stable,
        Some((_, s)) if *s == slope => Verdict::StrictlySemistable,
        _ => Verdict::Unstable,
    };
    let polystable = match verdict {
        Verdict::Stable => true,
        Verdict::Unstable => false,
        Verdict::StrictlySemistable => proper
            .iter()
            .filter(|(_, s)| *s == slope)
            .all(|(w, _)| has_complement(w, &all, &total)),
    };
    let (witness, witness_slope) = match (verdict, best) {
        (Verdict::Stable, _) | (_, None) => (None, None),
        (_, Some((w, s))) => (Some((*w).clone()), Some(s.clone())),
    };
    Ok(StabilityReport { verdict, polystable, slope, witness, witness_slope, prime })
}

fn has_complement(w: &SubrepWitness, all: &[SubrepWitness], total: &[usize]) -> bool {
    all.iter().any(|c| {
        c.sub_dims.iter().zip(&w.sub_dims).zip(total).all(|((a, b), t)| a + b == *t)
            && c.bases.iter().zip(&w.bases).zip(total).all(|((a, b), &t)| t == 0 || a.hcat(b).rank() == t)
    })
}

/// Support subsets closed under nonzero arrows: the subrepresentation lattice
/// for thin representations (all dims ≤ 1).
pub fn closed_support_sets(r: &QuiverRep) -> BTreeSet<Vec<usize>> {
    let support: Vec<usize> = (0..r.dims.len()).filter(|&v| r.dims[v] > 0).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << support.len()) {
        let mut d = vec![0usize; r.dims.len()];
        for (bit, &v) in support.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                d[v] = 1;
            }
        }
        let closed = r.quiver.arrows.iter().all(|a| r.maps[a.id].is_zero() || d[a.tail] == 0 || d[a.head] == 1);
        if closed {
            out.insert(d);
        }
    }
    out
}
