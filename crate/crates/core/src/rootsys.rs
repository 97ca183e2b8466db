//! Cartan data, root enumeration, coroot pairings and Chevalley constants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::weight::{rat, Rational, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn from_char(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    /// Whether every root has the same length.
    pub fn is_simply_laced(self) -> bool {
        matches!(self, Series::A | Series::D | Series::E)
    }

    fn valid_rank(self, n: usize) -> bool {
        match self {
            Series::A => n >= 1,
            Series::B | Series::C => n >= 2,
            Series::D => n >= 3,
            Series::E => (6..=8).contains(&n),
            Series::F => n == 4,
            Series::G => n == 2,
        }
    }
}

/// A product of simple Dynkin types, e.g. `A1xA1` or `B2xA3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesSpec {
    pub factors: Vec<(Series, usize)>,
}

impl SeriesSpec {
    pub fn new(factors: Vec<(Series, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Config("a group needs at least one simple factor".into()));
        }
        for &(s, n) in &factors {
            if !s.valid_rank(n) {
                return Err(Error::Config(format!("invalid rank {n} for series {}", s.letter())));
            }
        }
        Ok(SeriesSpec { factors })
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.factors.iter().all(|f| f.0.is_simply_laced())
    }
}

impl FromStr for SeriesSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let series = chars
                .next()
                .and_then(Series::from_char)
                .ok_or_else(|| Error::Config(format!("unknown series in {part:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Config(format!("bad rank in {part:?}")))?;
            factors.push((series, rank));
        }
        SeriesSpec::new(factors)
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(s, n)| format!("{}{n}", s.letter())).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A root, stored by its simple-root coordinates with cached
/// fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub simple_coords: Vec<i64>,
    pub fw_coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple_coords.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn weight(&self) -> Weight {
        Weight::from_ints(&self.fw_coords)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simple_coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn factor_cartan(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::F | Series::G => {
            for k in 0..n - 1 {
                link(k, k + 1);
            }
        }
        Series::D => {
            for k in 0..n - 2 {
                link(k, k + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for k in 2..n - 1 {
                link(k, k + 1);
            }
        }
    }
    match series {
        Series::B => a[n - 1][n - 2] = -2,
        Series::C => a[n - 2][n - 1] = -2,
        Series::F => a[2][1] = -2,
        Series::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Root lengths `d_i = (α_i, α_i)/2`, normalized to coprime positive integers
/// on each component, satisfying `d_i A_ij = d_j A_ji`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(rat(1));
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * rat(a[i][j]) / rat(a[j][i]));
                    stack.push(j);
                    comp.push(j);
                }
            }
        }
        let lcm = comp
            .iter()
            .fold(BigInt::from(1), |acc, &i| num::integer::lcm(acc, d[i].as_ref().unwrap().denom().clone()));
        for &i in &comp {
            let v = d[i].take().unwrap() * Rational::from_integer(lcm.clone());
            d[i] = Some(v);
        }
    }
    d.into_iter()
        .map(|x| {
            let x = x.unwrap();
            num::ToPrimitive::to_i64(x.numer()).unwrap()
        })
        .collect()
}

/// The root system of a semisimple Lie algebra together with a Chevalley basis.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub spec: SeriesSpec,
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2`.
    pub sym: Vec<i64>,
    /// Positive roots in increasing order, followed by their negatives in the same order.
    roots: Vec<Root>,
    n_pos: usize,
    index: HashMap<Vec<i64>, usize>,
    inv_cartan: QMat,
    pub rho: Weight,
    chevalley: Vec<i64>,
}

pub fn build_root_system(spec: SeriesSpec) -> Result<RootSystem> {
    RootSystem::new(spec)
}

impl RootSystem {
    pub fn new(spec: SeriesSpec) -> Result<Self> {
        let spec = SeriesSpec::new(spec.factors)?;
        let n = spec.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut off = 0;
        for &(s, k) in &spec.factors {
            let block = factor_cartan(s, k);
            for i in 0..k {
                for j in 0..k {
                    cartan[off + i][off + j] = block[i][j];
                }
            }
            off += k;
        }
        let sym = symmetrizer(&cartan);
        let inv_cartan = QMat::from_i64(&cartan).inverse()?;

        let fw_of = |c: &[i64]| -> Vec<i64> { (0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum()).collect() };

        // Positive roots by height via root strings.
        let mut positive: Vec<Vec<i64>> = Vec::new();
        let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut level: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while !level.is_empty() {
            for r in &level {
                known.insert(r.clone(), ());
            }
            positive.extend(level.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &level {
                let fw = fw_of(beta);
                for i in 0..n {
                    let mut p = 0;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if known.contains_key(&cur) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - fw[i];
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            level = next;
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = positive.len();
        let mut roots: Vec<Root> = positive
            .iter()
            .map(|c| Root { fw_coords: fw_of(c), simple_coords: c.clone() })
            .collect();
        let negs: Vec<Root> = roots
            .iter()
            .map(|r| Root {
                simple_coords: r.simple_coords.iter().map(|x| -x).collect(),
                fw_coords: r.fw_coords.iter().map(|x| -x).collect(),
            })
            .collect();
        roots.extend(negs);
        let index = roots.iter().enumerate().map(|(i, r)| (r.simple_coords.clone(), i)).collect();

        let mut rs = RootSystem {
            spec,
            cartan,
            sym,
            roots,
            n_pos,
            index,
            inv_cartan,
            rho: Weight::from_ints(&vec![1; n]),
            chevalley: Vec::new(),
        };
        rs.chevalley = crate::chevalley::compute_table(&rs);
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn negative_roots(&self) -> &[Root] {
        &self.roots[self.n_pos..]
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.index.get(simple_coords).copied()
    }

    /// Index of `−α` given the index of `α`.
    pub fn negate_index(&self, idx: usize) -> usize {
        if idx < self.n_pos {
            idx + self.n_pos
        } else {
            idx - self.n_pos
        }
    }

    /// Index of the `i`-th simple root.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[self.simple_index(i)]
    }

    /// Index of the root `α + β`, if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i64> = self.roots[a].simple_coords.iter().zip(&self.roots[b].simple_coords).map(|(x, y)| x + y).collect();
        self.root_index(&c)
    }

    /// Invariant form on simple-root coordinates, `(α_i, α_i) = 2 d_i`.
    pub fn inner_simple(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * b[j] * self.sym[i] * self.cartan[i][j];
            }
        }
        s
    }

    pub fn inner(&self, a: usize, b: usize) -> i64 {
        self.inner_simple(&self.roots[a].simple_coords, &self.roots[b].simple_coords)
    }

    /// Coefficients of the coroot `α^∨` in the simple coroots.
    pub fn coroot_coords(&self, alpha: &Root) -> Vec<i64> {
        let len = self.inner_simple(&alpha.simple_coords, &alpha.simple_coords);
        alpha
            .simple_coords
            .iter()
            .zip(&self.sym)
            .map(|(&n, &d)| {
                debug_assert_eq!((n * 2 * d) % len, 0);
                n * 2 * d / len
            })
            .collect()
    }

    /// `⟨λ, α^∨⟩` for integer fundamental-weight coordinates.
    pub fn pairing_int(&self, lambda: &[i64], alpha: &Root) -> i64 {
        self.coroot_coords(alpha).iter().zip(lambda).map(|(c, l)| c * l).sum()
    }

    /// `⟨λ, α^∨⟩`.
    pub fn pairing(&self, lambda: &Weight, alpha: &Root) -> Result<Rational> {
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.rank() });
        }
        Ok(self
            .coroot_coords(alpha)
            .iter()
            .zip(&lambda.coords)
            .map(|(&c, l)| rat(c) * l)
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// Coordinates of `λ` in the basis of simple roots.
    pub fn to_simple_root_coords(&self, lambda: &Weight) -> Result<Vec<Rational>> {
        self.inv_cartan.mul_vec(&lambda.coords)
    }

    /// Fundamental-weight coordinates of `Σ n_i α_i`.
    pub fn from_simple_root_coords(&self, n: &[Rational]) -> Weight {
        let r = self.rank();
        Weight::new(
            (0..r)
                .map(|i| (0..r).map(|j| rat(self.cartan[i][j]) * &n[j]).fold(Rational::zero(), |a, b| a + b))
                .collect(),
        )
    }

    /// Simple reflection `s_i(λ) = λ − ⟨λ, α_i^∨⟩ α_i` on integer coordinates.
    pub fn reflect_int(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = lambda[i];
        (0..self.rank()).map(|j| lambda[j] - c * self.cartan[j][i]).collect()
    }

    /// The Chevalley constant `N_{αβ}` by root indices; zero when `α + β` is not a root.
    pub fn chevalley(&self, a: usize, b: usize) -> i64 {
        self.chevalley[a * self.roots.len() + b]
    }

    /// `N_{αβ}` looked up by roots.
    pub fn chevalley_of(&self, a: &Root, b: &Root) -> i64 {
        match (self.root_index(&a.simple_coords), self.root_index(&b.simple_coords)) {
            (Some(i), Some(j)) => self.chevalley(i, j),
            _ => 0,
        }
    }

    /// Largest `p` with `β − pα` a root.
    pub fn string_down(&self, a: usize, b: usize) -> i64 {
        let ra = &self.roots[a].simple_coords;
        let mut cur = self.roots[b].simple_coords.clone();
        let mut p = 0;
        loop {
            for (c, x) in cur.iter_mut().zip(ra) {
                *c -= x;
            }
            if self.root_index(&cur).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

pub fn pairing(rs: &RootSystem, lambda: &Weight, alpha: &Root) -> Result<Rational> {
    rs.pairing(lambda, alpha)
}

pub fn to_simple_root_coords(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Rational>> {
    rs.to_simple_root_coords(lambda)
}

/// All nonzero Chevalley constants keyed by root indices.
pub fn chevalley_constants(rs: &RootSystem) -> BTreeMap<(usize, usize), i64> {
    let n = rs.num_roots();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let v = rs.chevalley(a, b);
            if v != 0 {
                out.insert((a, b), v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::rat_frac;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_specs() {
        let s: SeriesSpec = "b2xa3".parse().unwrap();
        assert_eq!(s.factors, vec![(Series::B, 2), (Series::A, 3)]);
        assert_eq!(s.to_string(), "B2xA3");
        assert!("E9".parse::<SeriesSpec>().is_err());
        assert!("G3".parse::<SeriesSpec>().is_err());
        assert!("Q2".parse::<SeriesSpec>().is_err());
        assert!("".parse::<SeriesSpec>().is_err());
    }

    #[test]
    fn root_counts() {
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("B2", 8),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("D5", 40),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
            ("A1xA1", 4),
        ];
        for (s, n) in cases {
            assert_eq!(rs(s).num_roots(), n, "{s}");
        }
    }

    #[test]
    fn a2_cartan_and_pairings() {
        let r = rs("A2");
        assert_eq!(r.cartan, vec![vec![2, -1], vec![-1, 2]]);
        let l1 = Weight::from_ints(&[1, 0]);
        let l2 = Weight::from_ints(&[0, 1]);
        assert_eq!(r.pairing(&l1, r.simple_root(0)).unwrap(), rat(1));
        assert_eq!(r.pairing(&l1, r.simple_root(1)).unwrap(), rat(0));
        let top = &r.roots()[r.root_index(&[1, 1]).unwrap()];
        assert_eq!(r.pairing(&l2, top).unwrap(), rat(1));
        assert_eq!(r.to_simple_root_coords(&l1).unwrap(), vec![rat_frac(2, 3), rat_frac(1, 3)]);
        assert_eq!(r.to_simple_root_coords(&Weight::from_ints(&[2, -1])).unwrap(), vec![rat(1), rat(0)]);
    }

    #[test]
    fn b2_and_g2_conventions() {
        let b2 = rs("B2");
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(b2.sym, vec![2, 1]);
        let g2 = rs("G2");
        assert_eq!(g2.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.sym, vec![1, 3]);
    }

    #[test]
    fn coroots_pair_to_two() {
        for s in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let r = rs(s);
            for a in r.roots() {
                assert_eq!(r.pairing(&a.weight(), a).unwrap(), rat(2), "{s} {a}");
            }
        }
    }

    #[test]
    fn a1_has_no_constants() {
        let r = rs("A1");
        assert!(chevalley_constants(&r).is_empty());
    }
}
