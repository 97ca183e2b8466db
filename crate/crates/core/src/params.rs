//! Kähler parameters, slopes of homogeneous bundles and the `τ`, `τ′`, `σ`
//! conversions.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::charring::CharEngine;
use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::weight::{rat, Rational, Weight};

pub mod paramfile;

/// Positive parameters `ε_β` indexed by the simple roots `β ∈ Σ` (zero-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EpsilonSet {
    pub values: BTreeMap<usize, Rational>,
}

impl EpsilonSet {
    /// The same value on every root of `Σ`.
    pub fn uniform(p: &ParabolicDatum, eps: Rational) -> Self {
        EpsilonSet { values: p.sigma.iter().map(|&i| (i, eps.clone())).collect() }
    }

    fn validate(&self, p: &ParabolicDatum) -> Result<()> {
        for &i in &p.sigma {
            match self.values.get(&i) {
                None => return Err(Error::Config(format!("missing ε for simple root a{}", i + 1))),
                Some(v) if !v.is_positive() => {
                    return Err(Error::Domain(format!("ε for a{} must be positive, got {v}", i + 1)))
                }
                _ => {}
            }
        }
        if let Some(extra) = self.values.keys().find(|&&k| !(k < p.rank() && p.in_sigma(k))) {
            return Err(Error::Config(format!("ε given for a{}, which is not in Σ", extra + 1)));
        }
        Ok(())
    }
}

/// `ε_α = Σ_{β∈Σ} ε_β ⟨λ_β, α^∨⟩` for every `α ∈ Δ₊(r)`, keyed by root index.
pub fn extend_epsilon(p: &ParabolicDatum, eps: &EpsilonSet) -> Result<BTreeMap<usize, Rational>> {
    eps.validate(p)?;
    let mut out = BTreeMap::new();
    for &a in &p.r_positive {
        let c = p.rs.coroot_coords(p.rs.root(a));
        let v = p.sigma.iter().fold(Rational::zero(), |acc, &b| acc + &eps.values[&b] * rat(c[b]));
        debug_assert!(v.is_positive());
        out.insert(a, v);
    }
    Ok(out)
}

/// Slope `μ_ε(O_λ) = Σ_{α∈Δ₊(r)} ⟨λ, α^∨⟩ / ε_α` of the homogeneous bundle `O_λ`.
pub fn slope_o(p: &ParabolicDatum, eps: &EpsilonSet, lambda: &Weight) -> Result<Rational> {
    let ext = extend_epsilon(p, eps)?;
    slope_with(p, &ext, lambda)
}

fn slope_with(p: &ParabolicDatum, ext: &BTreeMap<usize, Rational>, lambda: &Weight) -> Result<Rational> {
    let mut s = Rational::zero();
    for (&a, e) in ext {
        s += p.rs.pairing(lambda, p.rs.root(a))? / e;
    }
    Ok(s)
}

/// Shared context for repeated conversions: the engine for `n_λ` and the extended `ε`.
pub struct ParamContext<'a> {
    pub p: &'a ParabolicDatum,
    engine: CharEngine,
    ext: BTreeMap<usize, Rational>,
}

impl<'a> ParamContext<'a> {
    pub fn new(p: &'a ParabolicDatum, eps: &EpsilonSet) -> Result<Self> {
        Ok(ParamContext { p, engine: CharEngine::new(p), ext: extend_epsilon(p, eps)? })
    }

    pub fn n(&self, lambda: &Weight) -> Result<u64> {
        self.engine.weyl_dim(lambda)
    }

    pub fn slope(&self, lambda: &Weight) -> Result<Rational> {
        slope_with(self.p, &self.ext, lambda)
    }

    /// `τ′_λ = n_λ (τ_λ − μ_ε(O_λ))`.
    pub fn tau_to_tauprime(&self, tau: &BTreeMap<Weight, Rational>) -> Result<BTreeMap<Weight, Rational>> {
        tau.iter()
            .map(|(l, t)| {
                let n = rat(self.n(l)? as i64);
                Ok((l.clone(), n * (t - self.slope(l)?)))
            })
            .collect()
    }

    /// `τ_λ = τ′_λ / n_λ + μ_ε(O_λ)`.
    pub fn tauprime_to_tau(&self, tp: &BTreeMap<Weight, Rational>) -> Result<BTreeMap<Weight, Rational>> {
        tp.iter()
            .map(|(l, t)| {
                let n = rat(self.n(l)? as i64);
                Ok((l.clone(), t / n + self.slope(l)?))
            })
            .collect()
    }

    fn check_ascending(&self, order: &[Weight]) -> Result<()> {
        for w in order.windows(2) {
            if self.p.vertex_compare(&w[0], &w[1]) != Ordering::Less {
                return Err(Error::Domain(format!("vertex order is not ascending at {} , {}", w[0], w[1])));
            }
        }
        for l in order {
            if !self.p.is_dominant(l)? {
                return Err(Error::Domain(format!("weight {l} is not dominant for P")));
            }
        }
        Ok(())
    }

    /// `τ′_{λ_s} = n_s Σ_{s′<s} σ_{s′} − n_s μ_ε(O_{λ_s})` for `s = 0..=m`.
    ///
    /// Returns the map and a warning for every non-positive `σ_s`.
    pub fn sigma_to_tauprime(&self, sigma: &[Rational], order: &[Weight]) -> Result<(BTreeMap<Weight, Rational>, Vec<String>)> {
        self.check_ascending(order)?;
        if order.is_empty() || sigma.len() + 1 != order.len() {
            return Err(Error::DimensionMismatch { expected: order.len().saturating_sub(1), got: sigma.len() });
        }
        let warnings = sigma
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_positive())
            .map(|(i, s)| format!("σ_{i} = {s} is not positive"))
            .collect();
        let mut out = BTreeMap::new();
        let mut partial = Rational::zero();
        for (s, l) in order.iter().enumerate() {
            let n = rat(self.n(l)? as i64);
            out.insert(l.clone(), &n * &partial - &n * self.slope(l)?);
            if s < sigma.len() {
                partial += &sigma[s];
            }
        }
        Ok((out, warnings))
    }

    /// `σ_s = τ_{s+1} − τ_s` with `τ` recovered from `τ′`.
    pub fn tauprime_to_sigma(&self, tp: &BTreeMap<Weight, Rational>, order: &[Weight]) -> Result<Vec<Rational>> {
        self.check_ascending(order)?;
        let tau = self.tauprime_to_tau(tp)?;
        let get = |l: &Weight| tau.get(l).cloned().ok_or_else(|| Error::Config(format!("τ′ missing for vertex {l}")));
        order.windows(2).map(|w| Ok(get(&w[1])? - get(&w[0])?)).collect()
    }

    /// Rank and degree of `p*E ⊗ q*O_λ` on `X × G/P`.
    pub fn product_degree(&self, lambda: &Weight, rank_e: i64, deg_e: &Rational) -> Result<(i64, Rational)> {
        if rank_e < 0 {
            return Err(Error::Domain(format!("negative rank {rank_e}")));
        }
        let n = self.n(lambda)? as i64;
        Ok((n * rank_e, rat(n) * deg_e + rat(n) * self.slope(lambda)? * rat(rank_e)))
    }
}

pub fn tau_to_tauprime(p: &ParabolicDatum, eps: &EpsilonSet, tau: &BTreeMap<Weight, Rational>) -> Result<BTreeMap<Weight, Rational>> {
    ParamContext::new(p, eps)?.tau_to_tauprime(tau)
}

pub fn tauprime_to_tau(p: &ParabolicDatum, eps: &EpsilonSet, tp: &BTreeMap<Weight, Rational>) -> Result<BTreeMap<Weight, Rational>> {
    ParamContext::new(p, eps)?.tauprime_to_tau(tp)
}

pub fn sigma_to_tauprime(
    p: &ParabolicDatum,
    eps: &EpsilonSet,
    sigma: &[Rational],
    order: &[Weight],
) -> Result<(BTreeMap<Weight, Rational>, Vec<String>)> {
    ParamContext::new(p, eps)?.sigma_to_tauprime(sigma, order)
}

pub fn product_degree(p: &ParabolicDatum, eps: &EpsilonSet, lambda: &Weight, rank_e: i64, deg_e: &Rational) -> Result<(i64, Rational)> {
    ParamContext::new(p, eps)?.product_degree(lambda, rank_e, deg_e)
}

/// Tests `Σ τ_i rk(F_i/F_{i−1}) = deg F`; returns the verdict and `deg F − Σ τ_i r_i`.
pub fn check_constraint(tau: &[Rational], quotient_ranks: &[i64], deg_f: &Rational) -> Result<(bool, Rational)> {
    if tau.len() != quotient_ranks.len() {
        return Err(Error::DimensionMismatch { expected: tau.len(), got: quotient_ranks.len() });
    }
    let lhs = tau.iter().zip(quotient_ranks).fold(Rational::zero(), |acc, (t, &r)| acc + t * rat(r));
    let residual = deg_f - lhs;
    Ok((residual.is_zero(), residual))
}

/// `deg_σ(F) = deg F + Σ_{i<m} σ_i rk(F_i)` for a filtration `F_0 ⊂ … ⊂ F_m = F`.
pub fn sigma_degree(sigma: &[Rational], filtration_ranks: &[i64], deg_f: &Rational) -> Result<Rational> {
    if filtration_ranks.is_empty() || sigma.len() + 1 != filtration_ranks.len() {
        return Err(Error::DimensionMismatch { expected: filtration_ranks.len().saturating_sub(1), got: sigma.len() });
    }
    Ok(sigma.iter().zip(filtration_ranks).fold(deg_f.clone(), |acc, (s, &r)| acc + s * rat(r)))
}

/// `μ_σ(F) = deg_σ(F) / rk F`.
pub fn sigma_slope(sigma: &[Rational], filtration_ranks: &[i64], deg_f: &Rational) -> Result<Rational> {
    let d = sigma_degree(sigma, filtration_ranks, deg_f)?;
    let r = *filtration_ranks.last().expect("non-empty after sigma_degree");
    if r == 0 {
        return Err(Error::Domain("σ-slope of a rank-zero sheaf".into()));
    }
    Ok(d / rat(r))
}

/// For a holomorphic triple (`m = 1`, `σ_0 = 0`) solves for `ε` from
/// `2/ε = ((r_0 + r_1) τ′_0 − (d_0 + d_1)) / r_1`.
pub fn triple_epsilon(r0: i64, r1: i64, d0: &Rational, d1: &Rational, tau_prime0: &Rational) -> Result<Rational> {
    if r1 <= 0 || r0 < 0 {
        return Err(Error::Domain("triple ranks must satisfy r0 ≥ 0, r1 > 0".into()));
    }
    let two_over_eps = (rat(r0 + r1) * tau_prime0 - (d0 + d1)) / rat(r1);
    if !two_over_eps.is_positive() {
        return Err(Error::Domain(format!("2/ε = {two_over_eps} is not positive")));
    }
    Ok(rat(2) / two_over_eps)
}
