//! Chevalley structure constants by the extraspecial-pair algorithm.
//!
//! Positive roots are ordered as in [`RootSystem`]: by height, then by
//! simple-root coordinates in decreasing lexicographic order (so that the
//! simple roots appear as `α_1, α_2, …`). For every positive non-simple root
//! `ξ` the extraspecial pair `(r, s)` has `r` minimal with `ξ − r` positive,
//! and `N_{r,s}` is taken positive. All other constants follow from the
//! standard identities for a Chevalley basis.

use std::collections::HashMap;

use num::{BigInt, ToPrimitive, Zero};

use crate::rootsys::RootSystem;
use crate::weight::Rational;

struct Ctx<'a> {
    rs: &'a RootSystem,
    extraspecial: Vec<Option<(usize, usize)>>,
    memo: HashMap<(usize, usize), Rational>,
}

pub(crate) fn compute_table(rs: &RootSystem) -> Vec<i64> {
    let n = rs.num_roots();
    let np = rs.num_positive();
    let mut extraspecial = vec![None; n];
    for xi in 0..np {
        for r in 0..np {
            let diff: Vec<i64> = rs.root(xi).simple_coords.iter().zip(&rs.root(r).simple_coords).map(|(a, b)| a - b).collect();
            if let Some(s) = rs.root_index(&diff) {
                if s < np {
                    extraspecial[xi] = Some((r, s));
                    break;
                }
            }
        }
    }
    let mut ctx = Ctx { rs, extraspecial, memo: HashMap::new() };
    let mut table = vec![0i64; n * n];
    for a in 0..n {
        for b in 0..n {
            if rs.sum_index(a, b).is_some() {
                let v = ctx.n(a, b);
                assert!(v.is_integer(), "non-integral structure constant");
                table[a * n + b] = v.to_integer().to_i64().expect("structure constant fits in i64");
            }
        }
    }
    table
}

impl Ctx<'_> {
    fn len2(&self, idx: usize) -> Rational {
        Rational::from_integer(BigInt::from(self.rs.inner(idx, idx)))
    }

    fn diff(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i64> = self.rs.root(a).simple_coords.iter().zip(&self.rs.root(b).simple_coords).map(|(x, y)| x - y).collect();
        self.rs.root_index(&c)
    }

    fn coords_neg_sum(&self, a: usize, b: usize) -> usize {
        let c: Vec<i64> = self.rs.root(a).simple_coords.iter().zip(&self.rs.root(b).simple_coords).map(|(x, y)| -(x + y)).collect();
        self.rs.root_index(&c).expect("negated sum of a root pair is a root")
    }

    /// `N_{ab}` for roots `a`, `b` whose sum is a root.
    fn n(&mut self, a: usize, b: usize) -> Rational {
        if let Some(v) = self.memo.get(&(a, b)) {
            return v.clone();
        }
        let v = self.compute(a, b);
        self.memo.insert((a, b), v.clone());
        v
    }

    fn compute(&mut self, a: usize, b: usize) -> Rational {
        let rs = self.rs;
        let np = rs.num_positive();
        let pa = a < np;
        let pb = b < np;
        match (pa, pb) {
            (true, true) => {
                if a > b {
                    return -self.n(b, a);
                }
                let xi = rs.sum_index(a, b).expect("sum is a root");
                let (r1, s1) = self.extraspecial[xi].expect("non-simple positive root has an extraspecial pair");
                let n_rs = Rational::from_integer(BigInt::from(rs.string_down(r1, s1) + 1));
                if a == r1 {
                    return n_rs;
                }
                let mut acc = Rational::zero();
                let neg_r1 = rs.negate_index(r1);
                let neg_s1 = rs.negate_index(s1);
                if let Some(d) = self.diff(b, r1) {
                    acc += self.n(b, neg_r1) * self.n(a, neg_s1) / self.len2(d);
                }
                if let Some(d) = self.diff(a, r1) {
                    acc += self.n(neg_r1, a) * self.n(b, neg_s1) / self.len2(d);
                }
                self.len2(xi) / n_rs * acc
            }
            (false, false) => -self.n(rs.negate_index(a), rs.negate_index(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                let c = self.coords_neg_sum(a, b);
                let sum = rs.sum_index(a, b).expect("sum is a root");
                if sum < np {
                    self.len2(c) / self.len2(a) * self.n(b, c)
                } else {
                    self.len2(c) / self.len2(b) * self.n(c, a)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::rootsys::build_root_system;

    #[test]
    fn magnitudes_match_root_strings() {
        for s in ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"] {
            let rs = build_root_system(s.parse().unwrap()).unwrap();
            let n = rs.num_roots();
            for a in 0..n {
                for b in 0..n {
                    let v = rs.chevalley(a, b);
                    if rs.sum_index(a, b).is_some() {
                        assert_eq!(v.abs(), rs.string_down(a, b) + 1, "{s} {a} {b}");
                        assert_eq!(rs.chevalley(b, a), -v);
                        let p = rs.string_down(a, b) + 1;
                        assert_eq!(v * rs.chevalley(rs.negate_index(a), rs.negate_index(b)), -p * p);
                    } else {
                        assert_eq!(v, 0);
                    }
                }
            }
        }
    }

    /// Bracket on the basis `h_1..h_r, e_{α_1}..e_{α_n}` as integer vectors.
    fn bracket(rs: &crate::rootsys::RootSystem, x: usize, y: usize) -> Vec<i64> {
        let r = rs.rank();
        let mut out = vec![0; r + rs.num_roots()];
        match (x < r, y < r) {
            (true, true) => {}
            (true, false) => out[y] = rs.root(y - r).fw_coords[x],
            (false, true) => out[x] = -rs.root(x - r).fw_coords[y],
            (false, false) => {
                let (a, b) = (x - r, y - r);
                if rs.negate_index(a) == b {
                    for (k, c) in rs.coroot_coords(rs.root(a)).into_iter().enumerate() {
                        out[k] = c;
                    }
                } else if let Some(s) = rs.sum_index(a, b) {
                    out[r + s] = rs.chevalley(a, b);
                }
            }
        }
        out
    }

    fn bracket_vec(rs: &crate::rootsys::RootSystem, x: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (y, &c) in v.iter().enumerate() {
            if c != 0 {
                for (o, b) in out.iter_mut().zip(bracket(rs, x, y)) {
                    *o += c * b;
                }
            }
        }
        out
    }

    #[test]
    fn jacobi_identity_holds() {
        for s in ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "A1xA2"] {
            let rs = build_root_system(s.parse().unwrap()).unwrap();
            let dim = rs.rank() + rs.num_roots();
            for x in 0..dim {
                for y in 0..dim {
                    let xy = bracket(&rs, x, y);
                    for z in 0..dim {
                        let a = bracket_vec(&rs, x, &bracket(&rs, y, z));
                        let b = bracket_vec(&rs, y, &bracket(&rs, z, x));
                        let c: Vec<i64> = bracket_vec(&rs, z, &xy);
                        assert!(a.iter().zip(&b).zip(&c).all(|((p, q), r)| p + q + r == 0), "{s}: Jacobi fails on {x},{y},{z}");
                    }
                }
            }
        }
    }
}
