//! Characters of irreducible Levi modules and isotypic multiplicities.
//!
//! Weights are handled as integer vectors in the fundamental-weight basis.
//! Multiplicities of dominant weights come from Freudenthal's recursion and
//! are expanded over the Levi Weyl group on demand.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use num::{BigInt, ToPrimitive};

use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::weight::{Rational, Weight};

/// Formal character: weight → multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMap {
    pub entries: BTreeMap<Vec<i64>, u64>,
    pub levi_tag: String,
}

impl CharacterMap {
    pub fn new(levi_tag: impl Into<String>) -> Self {
        CharacterMap { entries: BTreeMap::new(), levi_tag: levi_tag.into() }
    }

    /// The one-dimensional character supported at the zero weight.
    pub fn trivial(rank: usize, levi_tag: impl Into<String>) -> Self {
        let mut c = Self::new(levi_tag);
        c.entries.insert(vec![0; rank], 1);
        c
    }

    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn get(&self, w: &Weight) -> u64 {
        w.to_ints().and_then(|k| self.entries.get(&k).copied()).unwrap_or(0)
    }

    pub fn add(&mut self, w: Vec<i64>, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }
}

/// Multiplicities of irreducible summands, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsotypicDecomp {
    pub summands: BTreeMap<Vec<i64>, u64>,
}

impl IsotypicDecomp {
    pub fn get(&self, lambda: &[i64]) -> u64 {
        self.summands.get(lambda).copied().unwrap_or(0)
    }
}

type DomMults = HashMap<Vec<i64>, u64>;

/// Character engine bound to one parabolic datum, with memoized results.
pub struct CharEngine {
    p: ParabolicDatum,
    levi: Vec<usize>,
    /// `(simple coords, fw coords)` of `Δ₊(l)`.
    levi_roots: Vec<(Vec<i64>, Vec<i64>)>,
    ustar: CharacterMap,
    ext2_ustar: CharacterMap,
    dominant: RwLock<HashMap<Vec<i64>, Arc<DomMults>>>,
    a_tables: RwLock<HashMap<Vec<i64>, Arc<IsotypicDecomp>>>,
    b_tables: RwLock<HashMap<Vec<i64>, Arc<IsotypicDecomp>>>,
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn cached<T: Clone>(lock: &RwLock<HashMap<Vec<i64>, T>>, key: &[i64], make: impl FnOnce() -> Result<T>) -> Result<T> {
    if let Some(v) = lock.read().expect("cache lock").get(key) {
        return Ok(v.clone());
    }
    let v = make()?;
    lock.write().expect("cache lock").entry(key.to_vec()).or_insert_with(|| v.clone());
    Ok(v)
}

impl CharEngine {
    pub fn new(p: &ParabolicDatum) -> Self {
        let rs = &p.rs;
        let levi = p.levi_simple();
        let levi_roots = p
            .levi_positive
            .iter()
            .map(|&i| (rs.root(i).simple_coords.clone(), rs.root(i).fw_coords.clone()))
            .collect();
        let tag = p.levi_tag();
        let mut ustar = CharacterMap::new(tag.clone());
        for &i in &p.r_positive {
            ustar.add(rs.root(i).fw_coords.clone(), 1);
        }
        let ext2_ustar = exterior_square(&ustar);
        CharEngine {
            p: p.clone(),
            levi,
            levi_roots,
            ustar,
            ext2_ustar,
            dominant: RwLock::new(HashMap::new()),
            a_tables: RwLock::new(HashMap::new()),
            b_tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn parabolic(&self) -> &ParabolicDatum {
        &self.p
    }

    pub fn levi_tag(&self) -> String {
        self.ustar.levi_tag.clone()
    }

    fn ints(&self, lambda: &Weight) -> Result<Vec<i64>> {
        if !self.p.is_dominant(lambda)? {
            return Err(Error::Domain(format!("weight {lambda} is not dominant for P")));
        }
        Ok(lambda.to_ints().expect("dominance implies integrality"))
    }

    fn is_levi_dominant(&self, w: &[i64]) -> bool {
        self.levi.iter().all(|&i| w[i] >= 0)
    }

    fn to_levi_dominant(&self, w: &[i64]) -> Vec<i64> {
        let mut w = w.to_vec();
        while let Some(&i) = self.levi.iter().find(|&&i| w[i] < 0) {
            w = self.p.rs.reflect_int(i, &w);
        }
        w
    }

    /// `(x, α)` for `x` in fundamental-weight coordinates and `α` in simple coordinates.
    fn form(&self, x: &[i64], alpha_simple: &[i64]) -> i64 {
        let d = &self.p.rs.sym;
        alpha_simple.iter().enumerate().map(|(i, &n)| n * d[i] * x[i]).sum()
    }

    /// Weyl dimension of the irreducible Levi module with highest weight `λ`.
    pub fn weyl_dim_int(&self, lambda: &[i64]) -> u64 {
        let rs = &self.p.rs;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for &i in &self.p.levi_positive {
            let c = rs.coroot_coords(rs.root(i));
            let top: i64 = self.levi.iter().map(|&j| c[j] * (lambda[j] + 1)).sum();
            let bot: i64 = self.levi.iter().map(|&j| c[j]).sum();
            num *= top;
            den *= bot;
        }
        (num / den).to_u64().expect("dimension fits in u64")
    }

    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        let l = self.ints(lambda)?;
        Ok(self.weyl_dim_int(&l))
    }

    /// Multiplicities of the Levi-dominant weights of `M_λ`.
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> Arc<DomMults> {
        cached(&self.dominant, lambda, || Ok(Arc::new(self.freudenthal(lambda)))).expect("freudenthal is total")
    }

    fn freudenthal(&self, lambda: &[i64]) -> DomMults {
        let rank = lambda.len();
        // Dominant weights below λ with their Levi-root-lattice depth vector.
        let mut depth: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        depth.insert(lambda.to_vec(), vec![0; rank]);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        while let Some(mu) = queue.pop_front() {
            let k = depth[&mu].clone();
            for (sc, fw) in &self.levi_roots {
                let nu: Vec<i64> = mu.iter().zip(fw).map(|(a, b)| a - b).collect();
                if self.is_levi_dominant(&nu) && !depth.contains_key(&nu) {
                    depth.insert(nu.clone(), add_vec(&k, sc));
                    queue.push_back(nu);
                }
            }
        }
        let mut order: Vec<(Vec<i64>, Vec<i64>)> = depth.into_iter().collect();
        order.sort_by(|a, b| {
            let ha: i64 = a.1.iter().sum();
            let hb: i64 = b.1.iter().sum();
            ha.cmp(&hb).then_with(|| a.0.cmp(&b.0))
        });
        let d = &self.p.rs.sym;
        let mut mult: DomMults = HashMap::new();
        for (mu, k) in order {
            if mu == lambda {
                mult.insert(mu, 1);
                continue;
            }
            let mut num: i64 = 0;
            for (sc, fw) in &self.levi_roots {
                let mut j = 1;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(fw).map(|(a, b)| a + j * b).collect();
                    let m = mult.get(&self.to_levi_dominant(&nu)).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    num += self.form(&nu, sc) * m as i64;
                    j += 1;
                }
            }
            num *= 2;
            let den: i64 = self.levi.iter().map(|&i| k[i] * d[i] * (lambda[i] + mu[i] + 2)).sum();
            debug_assert!(den > 0 && num % den == 0, "Freudenthal quotient must be a positive integer");
            let m = (num / den) as u64;
            if m > 0 {
                mult.insert(mu, m);
            }
        }
        mult
    }

    /// Full character of `M_λ` (highest weight `λ`, integer coordinates).
    pub fn character_int(&self, lambda: &[i64]) -> CharacterMap {
        let dom = self.dominant_multiplicities(lambda);
        let mut out = CharacterMap::new(self.levi_tag());
        for (mu, &m) in dom.iter() {
            let mut seen: HashSet<Vec<i64>> = HashSet::from([mu.clone()]);
            let mut queue = VecDeque::from([mu.clone()]);
            while let Some(w) = queue.pop_front() {
                for &i in &self.levi {
                    let s = self.p.rs.reflect_int(i, &w);
                    if seen.insert(s.clone()) {
                        queue.push_back(s);
                    }
                }
            }
            for w in seen {
                out.add(w, m);
            }
        }
        out
    }

    pub fn character(&self, lambda: &Weight) -> Result<CharacterMap> {
        let l = self.ints(lambda)?;
        Ok(self.character_int(&l))
    }

    fn order_key(&self, w: &[i64]) -> (Rational, Rational, Vec<i64>) {
        let wt = Weight::from_ints(w);
        let n = self.p.rs.to_simple_root_coords(&wt).expect("rank matches");
        let mut hs = Rational::from_integer(0.into());
        let mut hl = Rational::from_integer(0.into());
        for (i, c) in n.into_iter().enumerate() {
            if self.p.in_sigma(i) {
                hs += c;
            } else {
                hl += c;
            }
        }
        (hs, hl, w.to_vec())
    }

    /// Splits a Levi character into irreducible summands.
    pub fn decompose(&self, chi: &CharacterMap) -> Result<IsotypicDecomp> {
        if chi.levi_tag != self.levi_tag() {
            return Err(Error::Domain(format!("character context {} does not match {}", chi.levi_tag, self.levi_tag())));
        }
        let rank = self.p.rank();
        for (w, &m) in &chi.entries {
            if w.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: w.len() });
            }
            for &i in &self.levi {
                let s = self.p.rs.reflect_int(i, w);
                if chi.entries.get(&s).copied().unwrap_or(0) != m {
                    return Err(Error::NotACharacter(format!("multiplicities at {w:?} and {s:?} differ")));
                }
            }
        }
        let mut rest: BTreeMap<(Rational, Rational, Vec<i64>), i64> = chi
            .entries
            .iter()
            .filter(|(w, &m)| m > 0 && self.is_levi_dominant(w))
            .map(|(w, &m)| (self.order_key(w), m as i64))
            .collect();
        let mut out = IsotypicDecomp::default();
        while let Some((key, m)) = rest.pop_last() {
            if m == 0 {
                continue;
            }
            let top = key.2;
            if m < 0 {
                return Err(Error::NotACharacter(format!("negative multiplicity {m} at {top:?}")));
            }
            for (mu, &k) in self.dominant_multiplicities(&top).iter() {
                if *mu == top {
                    continue;
                }
                let e = rest.entry(self.order_key(mu)).or_insert(0);
                *e -= m * k as i64;
            }
            out.summands.insert(top, m as u64);
        }
        Ok(out)
    }

    /// Character of `u*`: the roots of `Δ₊(r)`, each once.
    pub fn u_star_character(&self) -> &CharacterMap {
        &self.ustar
    }

    /// Decomposition of `u* ⊗ M_μ`.
    pub fn a_table(&self, mu: &[i64]) -> Result<Arc<IsotypicDecomp>> {
        cached(&self.a_tables, mu, || {
            Ok(Arc::new(self.decompose(&tensor(&self.ustar, &self.character_int(mu))?)?))
        })
    }

    /// Decomposition of `⋀²u* ⊗ M_μ`.
    pub fn b_table(&self, mu: &[i64]) -> Result<Arc<IsotypicDecomp>> {
        cached(&self.b_tables, mu, || {
            Ok(Arc::new(self.decompose(&tensor(&self.ext2_ustar, &self.character_int(mu))?)?))
        })
    }

    /// Multiplicity of `M_λ` in `u* ⊗ M_μ`, the number of arrows `λ → μ`.
    pub fn a_dim(&self, mu: &Weight, lambda: &Weight) -> Result<u64> {
        let m = self.ints(mu)?;
        let l = self.ints(lambda)?;
        Ok(self.a_table(&m)?.get(&l))
    }

    /// Multiplicity of `M_λ` in `⋀²u* ⊗ M_μ`, the number of relations from `λ` to `μ`.
    pub fn b_dim(&self, mu: &Weight, lambda: &Weight) -> Result<u64> {
        let m = self.ints(mu)?;
        let l = self.ints(lambda)?;
        Ok(self.b_table(&m)?.get(&l))
    }

    pub fn a_dim_int(&self, mu: &[i64], lambda: &[i64]) -> Result<u64> {
        Ok(self.a_table(mu)?.get(lambda))
    }

    pub fn b_dim_int(&self, mu: &[i64], lambda: &[i64]) -> Result<u64> {
        Ok(self.b_table(mu)?.get(lambda))
    }
}

/// Character of a tensor product.
pub fn tensor(a: &CharacterMap, b: &CharacterMap) -> Result<CharacterMap> {
    if a.levi_tag != b.levi_tag {
        return Err(Error::Domain(format!("cannot tensor characters of {} and {}", a.levi_tag, b.levi_tag)));
    }
    let mut out = CharacterMap::new(a.levi_tag.clone());
    for (w1, &m1) in &a.entries {
        for (w2, &m2) in &b.entries {
            out.add(add_vec(w1, w2), m1 * m2);
        }
    }
    Ok(out)
}

/// Character of the exterior square.
pub fn exterior_square(chi: &CharacterMap) -> CharacterMap {
    let mut out = CharacterMap::new(chi.levi_tag.clone());
    let items: Vec<(&Vec<i64>, u64)> = chi.entries.iter().map(|(w, &m)| (w, m)).collect();
    for (i, &(w, m)) in items.iter().enumerate() {
        out.add(add_vec(w, w), m * m.saturating_sub(1) / 2);
        for &(w2, m2) in &items[i + 1..] {
            out.add(add_vec(w, w2), m * m2);
        }
    }
    out
}

pub fn weyl_dim(p: &ParabolicDatum, lambda: &Weight) -> Result<u64> {
    CharEngine::new(p).weyl_dim(lambda)
}

pub fn character(p: &ParabolicDatum, lambda: &Weight) -> Result<CharacterMap> {
    CharEngine::new(p).character(lambda)
}

pub fn decompose(p: &ParabolicDatum, chi: &CharacterMap) -> Result<IsotypicDecomp> {
    CharEngine::new(p).decompose(chi)
}

pub fn a_dim(p: &ParabolicDatum, mu: &Weight, lambda: &Weight) -> Result<u64> {
    CharEngine::new(p).a_dim(mu, lambda)
}

pub fn b_dim(p: &ParabolicDatum, mu: &Weight, lambda: &Weight) -> Result<u64> {
    CharEngine::new(p).b_dim(mu, lambda)
}
