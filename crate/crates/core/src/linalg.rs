//! Small exact linear algebra over ℚ and over prime fields.

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::weight::Rational;

/// Dense rational matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(QMat { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows.iter().flatten().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        QMat { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &QMat, s: &Rational) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
        Ok(())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j) - &f * m.get(row, j);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<QMat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Domain("matrix is singular".into()));
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// Matrix over the prime field `F_p`, entries kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Reduces a rational modulo `p`; `None` when the denominator vanishes mod `p`.
pub fn reduce_mod(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * inv_mod(d, p) % p)
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_qmat(m: &QMat, p: u64) -> Option<Self> {
        let data = m.data.iter().map(|x| reduce_mod(x, p)).collect::<Option<Vec<_>>>()?;
        Some(FpMat { p, rows: m.rows, cols: m.cols, data })
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows, "F_p matrix product shape");
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % self.p;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows, "F_p hcat shape");
        let cols = self.cols + other.cols;
        let mut out = FpMat::zeros(self.p, self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(piv * m.cols + j, row * m.cols + j);
            }
            let inv = inv_mod(m.get(row, col), p);
            for r in row + 1..m.rows {
                let f = m.get(r, col) * inv % p;
                if f != 0 {
                    for j in col..m.cols {
                        let v = (m.get(r, j) + p * p - f * m.get(row, j) % p) % p;
                        m.set(r, j, v);
                    }
                }
            }
            row += 1;
        }
        row
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect(),
        }
    }
}

/// Enumerates all `k`-dimensional subspaces of `F_p^n` as `n × k` basis
/// matrices whose transposes are in reduced row echelon form.
pub fn subspaces(p: u64, n: usize, k: usize) -> Vec<FpMat> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for pivots in combinations(n, k) {
        // Free positions: row r of the echelon form, column c > pivot[r], c not a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let count = (p as usize).pow(free.len() as u32);
        for mut code in 0..count {
            let mut basis = FpMat::zeros(p, n, k);
            for (r, &c) in pivots.iter().enumerate() {
                basis.set(c, r, 1);
            }
            for &(r, c) in &free {
                basis.set(c, r, (code % p as usize) as u64);
                code /= p as usize;
            }
            out.push(basis);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{rat, rat_frac};

    #[test]
    fn inverse_of_a2_cartan() {
        let a = QMat::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.to_rows(), vec![vec![rat_frac(2, 3), rat_frac(1, 3)], vec![rat_frac(1, 3), rat_frac(2, 3)]]);
        assert_eq!(a.mul(&inv).unwrap(), QMat::identity(2));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = QMat::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(a.inverse().is_err());
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // [3 choose 1]_2 = 7, [3 choose 2]_2 = 7, [4 choose 2]_3 = 130.
        assert_eq!(subspaces(2, 3, 1).len(), 7);
        assert_eq!(subspaces(2, 3, 2).len(), 7);
        assert_eq!(subspaces(3, 4, 2).len(), 130);
        assert_eq!(subspaces(5, 2, 0).len(), 1);
        for b in subspaces(3, 4, 2) {
            assert_eq!(b.rank(), 2);
        }
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(reduce_mod(&rat_frac(1, 2), 5), Some(3));
        assert_eq!(reduce_mod(&rat(-1), 5), Some(4));
        assert_eq!(reduce_mod(&rat_frac(1, 5), 5), None);
        assert_eq!(next_prime(5), 7);
    }
}
