//! Prime fields and dense matrices over them.
//!
//! Everything in the engine that touches vector spaces goes through the
//! routines here: row reduction, kernels, spans and subspace enumeration.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Primes accepted by [`PrimeField::new`]. The small ones are the working
/// fields; the larger ones exist so Hall-polynomial interpolation has room
/// to extend its sample set.
pub const PRIME_ALLOWLIST: [u32; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !PRIME_ALLOWLIST.contains(&p) {
            return Err(Error::PrimeNotAllowed(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Field size as a wide integer, for cardinality arithmetic.
    #[inline]
    pub fn q(self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = a as u64;
        let mut exp = self.p - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// |GL_m(F_q)|
    pub fn gl_order(self, m: usize) -> u128 {
        let q = self.p as u128;
        let qm = q.pow(m as u32);
        (0..m as u32).map(|i| qm - q.pow(i)).product()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p)
    }
}

pub fn is_prime(n: u32) -> bool {
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

/// Dense row-major matrix with entries reduced modulo the ambient prime.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: &[u32]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Mat {
            rows,
            cols,
            data: entries.to_vec(),
        }
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vecs(cols: usize, vecs: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(vecs.len(), cols);
        for (r, v) in vecs.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.data[r * cols..(r + 1) * cols].copy_from_slice(v);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        let p = f.p() as u64;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32, f: PrimeField) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn apply(&self, v: &[u32], f: PrimeField) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (c, &x) in v.iter().enumerate() {
                    acc += self.get(r, c) as u64 * x as u64;
                }
                (acc % f.p() as u64) as u32
            })
            .collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..self.cols {
                    self.data.swap(piv * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self, f: PrimeField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place(f);
        (m, piv)
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right null space {x : A x = 0}.
    pub fn kernel(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis (as RREF rows) of the row space.
    pub fn row_space(&self, f: PrimeField) -> Subspace {
        Subspace::span(self.cols, (0..self.rows).map(|r| self.row(r).to_vec()), f)
    }

    /// Basis (as RREF rows) of the column space.
    pub fn column_space(&self, f: PrimeField) -> Subspace {
        self.transpose().row_space(f)
    }
}

/// A subspace of F_p^n stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vec<u32>>>(ambient: usize, vecs: I, f: PrimeField) -> Self {
        let vecs: Vec<Vec<u32>> = vecs.into_iter().collect();
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::from_row_vecs(ambient, &vecs);
        let pivots = m.rref_in_place(f);
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// Assumes `basis` is already in reduced row echelon form.
    pub fn from_rref(ambient: usize, basis: Vec<Vec<u32>>) -> Self {
        let pivots = basis
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).expect("zero row in RREF basis"))
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce a vector modulo this subspace; the result vanishes on pivots.
    pub fn reduce(&self, v: &[u32], f: PrimeField) -> Vec<u32> {
        let mut out = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(b) {
                    *o = f.sub(*o, f.mul(c, x));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32], f: PrimeField) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the stored basis; `None` if `v` is outside.
    pub fn coords(&self, v: &[u32], f: PrimeField) -> Option<Vec<u32>> {
        if !self.contains(v, f) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, other: &Subspace, f: PrimeField) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
            f,
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: PrimeField) -> bool {
        self.basis.iter().all(|b| other.contains(b, f))
    }

    /// Columns not used as pivots: coordinates on the quotient F^n / self.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Image of this subspace under a linear map.
    pub fn image(&self, map: &Mat, f: PrimeField) -> Subspace {
        Subspace::span(map.rows(), self.basis.iter().map(|b| map.apply(b, f)), f)
    }
}

/// Every `k`-dimensional subspace of F_p^n, each given by its RREF basis.
///
/// Walks pivot sets in lexicographic order and, for each, every filling of
/// the free entries, so the output is duplicate-free and deterministic.
pub fn subspaces(n: usize, k: usize, f: PrimeField) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row i, col c) with c > pivots[i] and c not a pivot
        let mut slots = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    slots.push((i, c));
                }
            }
        }
        let count = (f.p() as u64).pow(slots.len() as u32);
        for code in 0..count {
            let mut rows = vec![vec![0u32; n]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            let mut c = code;
            for &(i, col) in &slots {
                rows[i][col] = (c % f.p() as u64) as u32;
                c /= f.p() as u64;
            }
            out.push(Subspace {
                ambient: n,
                basis: rows,
                pivots: pivots.clone(),
            });
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Every subspace W with `inner` ⊆ W ⊆ F_p^n and dim W = k.
pub fn subspaces_containing(inner: &Subspace, k: usize, f: PrimeField) -> Vec<Subspace> {
    let n = inner.ambient();
    if k < inner.dim() || k > n {
        return Vec::new();
    }
    let free = inner.free_columns();
    subspaces(free.len(), k - inner.dim(), f)
        .into_iter()
        .map(|w| {
            let lifted = w.basis().iter().map(|b| {
                let mut v = vec![0u32; n];
                for (j, &c) in free.iter().enumerate() {
                    v[c] = b[j];
                }
                v
            });
            Subspace::span(n, inner.basis().iter().cloned().chain(lifted), f)
        })
        .collect()
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}
