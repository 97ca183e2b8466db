//! The Levi/nilradical split attached to a set `Σ` of non-parabolic simple roots.

use std::cmp::Ordering;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use crate::weight::{rat, Rational, Weight};

/// A parabolic subgroup `P ⊂ G`, given by the simple roots `Σ` whose negatives
/// are not in the Levi factor.
#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub rs: Arc<RootSystem>,
    /// Sorted, zero-based simple-root indices in `Σ`.
    pub sigma: Vec<usize>,
    /// Indices (into `rs.roots()`) of `Δ₊(l)`.
    pub levi_positive: Vec<usize>,
    /// Indices of `Δ(u)`: negative roots with a nonzero `Σ`-coordinate.
    pub nilradical: Vec<usize>,
    /// Indices of `Δ₊(r) = −Δ(u)`.
    pub r_positive: Vec<usize>,
    /// Half the sum of `Δ₊(l)`, in fundamental-weight coordinates.
    pub rho_levi: Weight,
    pub warnings: Vec<String>,
    in_sigma: Vec<bool>,
}

pub fn build_parabolic(rs: &RootSystem, sigma: &[usize]) -> Result<ParabolicDatum> {
    ParabolicDatum::new(Arc::new(rs.clone()), sigma)
}

impl ParabolicDatum {
    pub fn new(rs: Arc<RootSystem>, sigma: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut in_sigma = vec![false; n];
        for &i in sigma {
            if i >= n {
                return Err(Error::Config(format!("simple root index {} out of range 1..={n}", i + 1)));
            }
            in_sigma[i] = true;
        }
        let sigma: Vec<usize> = (0..n).filter(|&i| in_sigma[i]).collect();
        let mut warnings = Vec::new();
        if sigma.is_empty() {
            warnings.push("empty Σ: P = G and the quiver has no arrows".to_string());
        }
        let touches_sigma = |r: &Root| sigma.iter().any(|&i| r.simple_coords[i] != 0);
        let levi_positive: Vec<usize> = (0..rs.num_positive()).filter(|&i| !touches_sigma(rs.root(i))).collect();
        let nilradical: Vec<usize> =
            (rs.num_positive()..rs.num_roots()).filter(|&i| touches_sigma(rs.root(i))).collect();
        let r_positive: Vec<usize> = nilradical.iter().map(|&i| rs.negate_index(i)).collect();
        let mut rho2 = vec![0i64; n];
        for &i in &levi_positive {
            for (a, b) in rho2.iter_mut().zip(&rs.root(i).fw_coords) {
                *a += b;
            }
        }
        let rho_levi = Weight::new(rho2.iter().map(|&x| Rational::new(x.into(), 2.into())).collect());
        Ok(ParabolicDatum { rs, sigma, levi_positive, nilradical, r_positive, rho_levi, warnings, in_sigma })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn in_sigma(&self, i: usize) -> bool {
        self.in_sigma[i]
    }

    /// Simple-root indices of the Levi factor, `S ∖ Σ`.
    pub fn levi_simple(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.in_sigma[i]).collect()
    }

    pub fn is_borel(&self) -> bool {
        self.sigma.len() == self.rank()
    }

    pub fn levi_positive_roots(&self) -> Vec<&Root> {
        self.levi_positive.iter().map(|&i| self.rs.root(i)).collect()
    }

    pub fn nilradical_roots(&self) -> Vec<&Root> {
        self.nilradical.iter().map(|&i| self.rs.root(i)).collect()
    }

    pub fn r_positive_roots(&self) -> Vec<&Root> {
        self.r_positive.iter().map(|&i| self.rs.root(i)).collect()
    }

    /// True when no two roots of `Δ(u)` sum to a root.
    pub fn nilradical_is_abelian(&self) -> bool {
        self.nilradical
            .iter()
            .all(|&a| self.nilradical.iter().all(|&b| self.rs.sum_index(a, b).is_none()))
    }

    /// Identifier of the Levi context used to tag characters.
    pub fn levi_tag(&self) -> String {
        let labels: Vec<String> = self.sigma.iter().map(|i| format!("a{}", i + 1)).collect();
        format!("{}/{{{}}}", self.rs.spec, labels.join(","))
    }

    pub fn is_dominant_int(&self, lambda: &[i64]) -> bool {
        (0..self.rank()).all(|i| self.in_sigma[i] || lambda[i] >= 0)
    }

    /// Dominance for `P`: integral with `⟨λ, α^∨⟩ ≥ 0` for every Levi simple root.
    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        self.check_rank(lambda)?;
        let ints = lambda
            .to_ints()
            .ok_or_else(|| Error::Domain(format!("weight {lambda} is not integral")))?;
        Ok(self.is_dominant_int(&ints))
    }

    fn check_rank(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.rank() });
        }
        Ok(())
    }

    /// Sum of the `Σ`-coordinates of `μ` in the simple-root basis.
    pub fn sigma_height(&self, mu: &Weight) -> Result<Rational> {
        self.check_rank(mu)?;
        let n = self.rs.to_simple_root_coords(mu)?;
        Ok(self.sigma.iter().fold(Rational::zero(), |acc, &i| acc + &n[i]))
    }

    pub fn sigma_height_int(&self, mu: &[i64]) -> Rational {
        self.sigma_height(&Weight::from_ints(mu)).expect("rank checked by caller")
    }

    /// Sum of the Levi coordinates of `μ` in the simple-root basis.
    pub fn levi_height(&self, mu: &Weight) -> Result<Rational> {
        self.check_rank(mu)?;
        let n = self.rs.to_simple_root_coords(mu)?;
        Ok((0..self.rank()).filter(|&i| !self.in_sigma[i]).fold(Rational::zero(), |acc, i| acc + &n[i]))
    }

    /// Total order on weights: by `Σ`-height, then lexicographically on
    /// fundamental-weight coordinates.
    pub fn vertex_compare(&self, lambda: &Weight, mu: &Weight) -> Ordering {
        let hl = self.sigma_height(lambda).unwrap_or_else(|_| rat(0));
        let hm = self.sigma_height(mu).unwrap_or_else(|_| rat(0));
        hl.cmp(&hm).then_with(|| lambda.coords.cmp(&mu.coords))
    }
}

pub fn is_dominant_p(p: &ParabolicDatum, lambda: &Weight) -> Result<bool> {
    p.is_dominant(lambda)
}

pub fn sigma_height(p: &ParabolicDatum, mu: &Weight) -> Result<Rational> {
    p.sigma_height(mu)
}

pub fn vertex_compare(p: &ParabolicDatum, lambda: &Weight, mu: &Weight) -> Ordering {
    p.vertex_compare(lambda, mu)
}

/// Parses `Σ` from labels such as `"a1,a2"` or `"1,2"` (one-based).
pub fn parse_sigma(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let digits = tok.trim_start_matches(['a', 'A', 'α']);
        let k: usize = digits.parse().map_err(|_| Error::Config(format!("bad simple-root label {tok:?}")))?;
        if k == 0 || k > rank {
            return Err(Error::Config(format!("simple-root label {tok:?} out of range 1..={rank}")));
        }
        if !out.contains(&(k - 1)) {
            out.push(k - 1);
        }
    }
    out.sort_unstable();
    Ok(out)
}
