//! Point-base quiver vortex equations `Σ_{ha=λ} φ_a φ_a* − Σ_{ta=λ} φ_a* φ_a = τ′_λ id`,
//! solved by a gradient flow acting on the maps through the complexified gauge group.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiverbuild::Quiver;

pub type CMat = DMatrix<Complex64>;

#[derive(Clone, Debug)]
pub struct HermitianRep {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub maps: Vec<CMat>,
    /// Multiplicities `n_λ`; at point base they enter only through `τ′`.
    pub n: Vec<u64>,
    pub tau_prime: Vec<f64>,
}

impl HermitianRep {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<CMat>, n: Vec<u64>, tau_prime: Vec<f64>) -> Result<Self> {
        let r = HermitianRep { quiver, dims, maps, n, tau_prime };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.quiver.vertices.len();
        for len in [self.dims.len(), self.n.len(), self.tau_prime.len()] {
            if len != nv {
                return Err(Error::DimensionMismatch { expected: nv, got: len });
            }
        }
        if self.maps.len() != self.quiver.arrows.len() {
            return Err(Error::DimensionMismatch { expected: self.quiver.arrows.len(), got: self.maps.len() });
        }
        for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
            if m.nrows() != self.dims[a.head] || m.ncols() != self.dims[a.tail] {
                return Err(Error::Domain(format!(
                    "arrow {} needs a {}×{} matrix, got {}×{}",
                    a.id,
                    self.dims[a.head],
                    self.dims[a.tail],
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if self.n.contains(&0) {
            return Err(Error::Domain("multiplicities n_λ must be positive".into()));
        }
        Ok(())
    }

    /// The complexification of an exact representation.
    pub fn from_exact(r: &crate::quiverrep::QuiverRep, n: Vec<u64>, tau_prime: Vec<f64>) -> Result<Self> {
        let maps = r
            .maps
            .iter()
            .map(|m| {
                CMat::from_fn(m.rows, m.cols, |i, j| Complex64::new(crate::weight::rational_to_f64(m.get(i, j)), 0.0))
            })
            .collect();
        Self::new(r.quiver.clone(), r.dims.clone(), maps, n, tau_prime)
    }
}

/// `m_λ = Σ_{ha=λ} φ_a φ_a* − Σ_{ta=λ} φ_a* φ_a`.
pub fn moment_map(r: &HermitianRep) -> Result<Vec<CMat>> {
    r.validate()?;
    Ok(moment_map_unchecked(&r.quiver, &r.dims, &r.maps))
}

fn moment_map_unchecked(q: &Quiver, dims: &[usize], maps: &[CMat]) -> Vec<CMat> {
    let mut m: Vec<CMat> = dims.iter().map(|&d| CMat::zeros(d, d)).collect();
    for (a, phi) in q.arrows.iter().zip(maps) {
        m[a.head] += phi * phi.adjoint();
        m[a.tail] -= phi.adjoint() * phi;
    }
    m
}

fn residual_of(m: &[CMat], tau: &[f64]) -> f64 {
    m.iter()
        .zip(tau)
        .map(|(x, &t)| {
            let mut d = x.clone();
            for i in 0..d.nrows() {
                d[(i, i)] -= Complex64::new(t, 0.0);
            }
            d.norm_squared()
        })
        .sum::<f64>()
        .sqrt()
}

/// `sqrt(Σ_λ ‖m_λ − τ′_λ id‖_F²)`.
pub fn residual(r: &HermitianRep) -> Result<f64> {
    Ok(residual_of(&moment_map(r)?, &r.tau_prime))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowVerdict {
    PolystableNumeric,
    UnstableNumeric,
    Inconclusive,
}

impl FlowVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowVerdict::PolystableNumeric => "polystable-numeric",
            FlowVerdict::UnstableNumeric => "unstable-numeric",
            FlowVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for FlowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    pub step: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub backtrack: f64,
    /// Window (in accepted steps) over which a plateau is measured.
    pub plateau_window: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { step: 0.1, max_iters: 50_000, tol: 1e-10, backtrack: 0.5, plateau_window: 200 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub residual: f64,
    pub step: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub iterations: usize,
    pub final_residual: f64,
    pub converged: bool,
    pub verdict: FlowVerdict,
    /// `log det h_λ` of the accumulated metric change `h_λ = g_λ* g_λ`.
    pub metric_log_determinants: Vec<f64>,
    /// Arrows whose numerical rank dropped during the flow.
    pub rank_collapse: Vec<usize>,
    #[serde(skip)]
    pub trace: Vec<TracePoint>,
}

impl FlowReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("flow report JSON is serializable")
    }

    /// `iteration,residual,step` lines for every accepted step.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("iteration,residual,step\n");
        for t in &self.trace {
            s.push_str(&format!("{},{:e},{:e}\n", t.iteration, t.residual, t.step));
        }
        s
    }
}

/// `exp(−s·H)` for hermitian `H`.
fn exp_neg_hermitian(h: &CMat, s: f64) -> CMat {
    let n = h.nrows();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let eig = SymmetricEigen::new(h.clone());
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new((-s * l).exp(), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

fn numerical_rank(m: &CMat, thresh: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > thresh).count()
}

fn gradient(m: &[CMat], tau: &[f64]) -> Vec<CMat> {
    m.iter()
        .zip(tau)
        .map(|(x, &t)| {
            let mut d = x.clone();
            for i in 0..d.nrows() {
                d[(i, i)] -= Complex64::new(t, 0.0);
            }
            // Re-symmetrize against round-off.
            (&d + d.adjoint()) * Complex64::new(0.5, 0.0)
        })
        .collect()
}

const COLLAPSE_THRESHOLD: f64 = 1e-6;

/// Runs `φ_a ← g_{ha} φ_a g_{ta}⁻¹` with `g_λ = exp(−s(m_λ − τ′_λ id))`, halving
/// `s` whenever the residual would increase.
pub fn kempf_ness_flow(r: &HermitianRep, opts: FlowOptions) -> Result<(HermitianRep, FlowReport)> {
    r.validate()?;
    if !(opts.tol > 0.0 && opts.step > 0.0 && opts.backtrack > 0.0 && opts.backtrack < 1.0) {
        return Err(Error::Config("flow options need tol > 0, step > 0 and backtrack in (0, 1)".into()));
    }
    let nv = r.dims.len();
    let mut cur = r.clone();
    let mut logdet = vec![0.0; nv];
    let mut m = moment_map_unchecked(&cur.quiver, &cur.dims, &cur.maps);
    let mut res = residual_of(&m, &cur.tau_prime);
    let mut trace = vec![TracePoint { iteration: 0, residual: res, step: opts.step }];
    let report = |it: usize, res: f64, converged: bool, verdict, logdet: Vec<f64>, collapse, trace| FlowReport {
        iterations: it,
        final_residual: res,
        converged,
        verdict,
        metric_log_determinants: logdet,
        rank_collapse: collapse,
        trace,
    };

    let weighted: f64 = cur.tau_prime.iter().zip(&cur.dims).map(|(t, &d)| t * d as f64).sum();
    let scale: f64 = cur.tau_prime.iter().zip(&cur.dims).map(|(t, &d)| t.abs() * d as f64).sum::<f64>().max(1.0);
    if weighted.abs() >= opts.tol * scale {
        let rep = report(0, res, false, FlowVerdict::UnstableNumeric, logdet, Vec::new(), trace);
        return Ok((cur, rep));
    }

    let initial_norm: f64 = r.maps.iter().map(|x| x.norm()).fold(1.0, f64::max);
    let initial_ranks: Vec<usize> =
        r.maps.iter().map(|x| numerical_rank(x, COLLAPSE_THRESHOLD * 1e-2 * initial_norm)).collect();
    let mut step = opts.step;
    let mut it = 0;
    let mut plateau = false;
    while res >= opts.tol && it < opts.max_iters {
        it += 1;
        let grad = gradient(&m, &cur.tau_prime);
        let mut accepted = None;
        let mut s = step;
        while s > 1e-18 {
            let g: Vec<CMat> = grad.iter().map(|h| exp_neg_hermitian(h, s)).collect();
            let ginv: Vec<CMat> = grad.iter().map(|h| exp_neg_hermitian(h, -s)).collect();
            let maps: Vec<CMat> =
                cur.quiver.arrows.iter().zip(&cur.maps).map(|(a, phi)| &g[a.head] * phi * &ginv[a.tail]).collect();
            if maps.iter().any(|x| x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
                return Err(Error::Numeric { iteration: it, message: "non-finite entries in the flow".into() });
            }
            let m2 = moment_map_unchecked(&cur.quiver, &cur.dims, &maps);
            let r2 = residual_of(&m2, &cur.tau_prime);
            if !r2.is_finite() {
                return Err(Error::Numeric { iteration: it, message: "non-finite residual".into() });
            }
            if r2 <= res {
                accepted = Some((maps, m2, r2, s));
                break;
            }
            s *= opts.backtrack;
        }
        let Some((maps, m2, r2, s)) = accepted else {
            plateau = true;
            break;
        };
        for (ld, h) in logdet.iter_mut().zip(&grad) {
            *ld += -2.0 * s * h.trace().re;
        }
        let gain = (res * res - r2 * r2) / s;
        cur.maps = maps;
        m = m2;
        res = r2;
        trace.push(TracePoint { iteration: it, residual: res, step: s });
        step = (s / opts.backtrack).min(opts.step);
        let w = opts.plateau_window;
        if res > 10.0 * opts.tol && trace.len() > w {
            let old = trace[trace.len() - 1 - w].residual;
            if (old - res) <= 1e-9 * res && gain <= opts.tol * opts.tol {
                plateau = true;
                break;
            }
        }
    }
    let collapse: Vec<usize> = cur
        .maps
        .iter()
        .zip(&initial_ranks)
        .enumerate()
        .filter(|(_, (x, &k0))| numerical_rank(x, COLLAPSE_THRESHOLD * initial_norm) < k0)
        .map(|(a, _)| a)
        .collect();
    let converged = res < opts.tol && collapse.is_empty();
    let verdict = if converged {
        FlowVerdict::PolystableNumeric
    } else if plateau && res > 10.0 * opts.tol {
        FlowVerdict::UnstableNumeric
    } else {
        FlowVerdict::Inconclusive
    };
    let rep = report(it, res, converged, verdict, logdet, collapse, trace);
    Ok((cur, rep))
}

/// One line of the chain vortex system `E_m → ⋯ → E_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainEquation {
    /// Position `i` in the chain; `E_0` is the sink.
    pub position: usize,
    pub vertex: usize,
    /// `φ_{i+1}: E_{i+1} → E_i`, contributing `+φ_{i+1}∘φ_{i+1}*`.
    pub incoming: Option<usize>,
    /// `φ_i: E_i → E_{i−1}`, contributing `−φ_i*∘φ_i`.
    pub outgoing: Option<usize>,
}

impl fmt::Display for ChainEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.position;
        write!(f, "√−1ΛF_{{k_{i}}}")?;
        if self.incoming.is_some() {
            write!(f, " + φ_{}∘φ*_{}", i + 1, i + 1)?;
        }
        if self.outgoing.is_some() {
            write!(f, " − φ*_{i}∘φ_{i}")?;
        }
        write!(f, " = τ_{i} id_{{E_{i}}}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub equations: Vec<ChainEquation>,
    /// Residual of the equations with `ΛF ≡ 0`, when a representation is supplied.
    pub point_base_residual: Option<f64>,
    /// Per-position residual `‖m_i − τ′_i id‖_F`.
    pub per_vertex: Vec<f64>,
}

/// Orders the vertices of a linearly oriented chain from the sink.
pub fn chain_order(q: &Quiver) -> Result<Vec<(usize, Option<usize>)>> {
    let nv = q.vertices.len();
    let not_chain = || Error::Domain("quiver is not a linearly oriented chain".into());
    if nv == 0 || q.arrows.len() + 1 != nv {
        return Err(not_chain());
    }
    let mut out_arrow = vec![None; nv];
    let mut in_arrow = vec![None; nv];
    for a in &q.arrows {
        if out_arrow[a.tail].replace(a.id).is_some() || in_arrow[a.head].replace(a.id).is_some() {
            return Err(not_chain());
        }
    }
    let sinks: Vec<usize> = (0..nv).filter(|&v| out_arrow[v].is_none()).collect();
    let [sink] = sinks[..] else { return Err(not_chain()) };
    let mut order = vec![(sink, None)];
    let mut v = sink;
    while let Some(a) = in_arrow[v] {
        v = q.arrows[a].tail;
        order.last_mut().expect("nonempty").1 = Some(a);
        order.push((v, None));
    }
    if order.len() != nv {
        return Err(not_chain());
    }
    Ok(order)
}

/// The chain vortex system for a chain quiver, evaluated at point base when a
/// representation is given.
pub fn chain_vortex_residual(q: &Quiver, rep: Option<&HermitianRep>) -> Result<ChainReport> {
    let order = chain_order(q)?;
    let equations: Vec<ChainEquation> = order
        .iter()
        .enumerate()
        .map(|(i, &(v, incoming))| ChainEquation {
            position: i,
            vertex: v,
            incoming,
            outgoing: if i == 0 { None } else { order[i - 1].1 },
        })
        .collect();
    let (point_base_residual, per_vertex) = match rep {
        None => (None, Vec::new()),
        Some(r) => {
            let m = moment_map(r)?;
            let per: Vec<f64> =
                order.iter().map(|&(v, _)| residual_of(&m[v..v + 1], &r.tau_prime[v..v + 1])).collect();
            (Some(residual_of(&m, &r.tau_prime)), per)
        }
    };
    Ok(ChainReport { equations, point_base_residual, per_vertex })
}
