//! Dense linear algebra over a prime field F_p.
//!
//! Matrices are row-major with residues in `[0, p)`. Row reduction always takes
//! the leftmost pivot column and, within it, the first row holding a nonzero
//! entry, so every result is reproducible across runs.
//!
//! Maps between column vectors are the convention everywhere downstream: a
//! matrix of shape `m x n` sends `F_p^n` to `F_p^m`.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if p >= (1 << 31) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub fn fadd(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn fsub(p: u32, a: u32, b: u32) -> u32 {
    fadd(p, a, p - b)
}

#[inline]
pub fn fneg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn fmul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn finv(p: u32, a: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    // a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// `dst += c * src` over F_p, elementwise.
#[inline]
fn axpy(p: u32, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    if p == 2 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
    } else {
        let pp = p as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            *d = ((*d as u64 + c as u64 * *s as u64) % pp) as u32;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        let p = check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let data = data.into_iter().map(|x| (x % p as u64) as u32).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        Self::from_fn(p, rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        Self::from_fn(p, rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = vec![0u32; self.rows * other.cols];
        if p == 2 {
            for i in 0..self.rows {
                let orow = &mut out[i * other.cols..(i + 1) * other.cols];
                for k in 0..self.cols {
                    if self.data[i * self.cols + k] != 0 {
                        for (o, s) in orow.iter_mut().zip(other.row(k)) {
                            *o ^= *s;
                        }
                    }
                }
            }
        } else {
            let pp = p as u64;
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.data[i * self.cols + k] as u64;
                    if a != 0 {
                        for (o, s) in acc.iter_mut().zip(other.row(k)) {
                            *o = (*o + a * *s as u64) % pp;
                        }
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    out[i * other.cols + j] = *a as u32;
                }
            }
        }
        FpMatrix { p, rows: self.rows, cols: other.cols, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % self.p as u64;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| fadd(self.p, *a, *b)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| fsub(self.p, *a, *b)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let data = self.data.iter().map(|a| fmul(self.p, *a, c % self.p)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.p - 1)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(self.p, &mut self.data, c % self.p, &other.data);
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(p: u32, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        for i in 0..b.rows {
            let dst = &mut self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + b.cols];
            dst.copy_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        Self::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { reduced: m, rank, pivots }
    }

    /// Row-reduces in place and returns the pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let lead = self.data[r * cols + c];
            if lead != 1 {
                let inv = finv(p, lead);
                for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *x = fmul(p, *x, inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let (dst, src) = if i < r {
                    let (a, b) = self.data.split_at_mut(r * cols);
                    (&mut a[i * cols + c..(i + 1) * cols], &b[c..cols])
                } else {
                    let (a, b) = self.data.split_at_mut(i * cols);
                    (&mut b[c..cols], &a[r * cols + c..(r + 1) * cols])
                };
                axpy(p, dst, p - f, src);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> FpMatrix {
        self.kernel_cols().transpose()
    }

    /// Basis of the right null space, one vector per column.
    pub fn kernel_cols(&self) -> FpMatrix {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = r;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c] == usize::MAX).collect();
        let mut out = FpMatrix::zeros(p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + k] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.data[r * m.cols + fc];
                out.data[pc * free.len() + k] = fneg(p, v);
            }
        }
        out
    }

    /// Basis of the column space, as columns; chosen deterministically from the
    /// reduced row echelon form of the transpose.
    pub fn image_cols(&self) -> FpMatrix {
        let mut t = self.transpose();
        let pivots = t.rref_in_place();
        let r = pivots.len();
        FpMatrix::from_fn(self.p, self.rows, r, |i, j| t.get(j, i))
    }

    /// Some `x` with `self * x = b`, free variables set to zero, or `None`.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let bm = FpMatrix::from_fn(self.p, self.rows, 1, |i, _| b[i]);
        self.solve_matrix(&bm).map(|x| x.col(0))
    }

    /// Some `X` with `self * X = b`, or `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(b.rows, self.rows);
        let n = self.cols;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.p, n, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = aug.get(r, n + j);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&FpMatrix::identity(self.p, self.rows))?;
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// The quotient `F_p^d / U` realized on coordinates complementary to the pivots
/// of `U`'s echelon form.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    /// `q x d`, kills `U`.
    pub proj: FpMatrix,
    /// `d x q` linear section, `proj * lift = I`.
    pub lift: FpMatrix,
}

impl QuotientSpace {
    /// `sub` holds spanning vectors of `U` as columns.
    pub fn new(p: u32, d: usize, sub: &FpMatrix) -> Self {
        assert_eq!(sub.rows(), d);
        let mut t = sub.transpose();
        let pivots = t.rref_in_place();
        let mut pivot_row = vec![usize::MAX; d];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row[c] = r;
        }
        let free: Vec<usize> = (0..d).filter(|&c| pivot_row[c] == usize::MAX).collect();
        let q = free.len();
        let mut proj = FpMatrix::zeros(p, q, d);
        let mut lift = FpMatrix::zeros(p, d, q);
        for (k, &fc) in free.iter().enumerate() {
            proj.set(k, fc, 1);
            lift.set(fc, k, 1);
        }
        // a pivot coordinate is congruent to minus the free part of its echelon row
        for (r, &pc) in pivots.iter().enumerate() {
            for (k, &fc) in free.iter().enumerate() {
                let v = t.get(r, fc);
                proj.set(k, pc, fneg(p, v));
            }
        }
        QuotientSpace { proj, lift }
    }

    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

/// Incrementally built echelon basis, for greedy selection of independent
/// vectors in a fixed order.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(self.p, v, self.p - c, row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it was independent of what is already there.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = finv(self.p, w[pc]);
        for x in w.iter_mut() {
            *x = fmul(self.p, *x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn insert_cols(&mut self, m: &FpMatrix) {
        for j in 0..m.cols() {
            self.insert(&m.col(j));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(p: u64, rows: usize, cols: usize, d: &[u64]) -> FpMatrix {
        FpMatrix::new(p, rows, cols, d.to_vec()).unwrap()
    }

    fn random(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix::from_fn(p, rows, cols, |_, _| rng.gen_range(0..p))
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FpMatrix::new(4, 1, 1, vec![1]), Err(Error::NotPrime(4)));
        assert!(FpMatrix::new(2, 2, 2, vec![1, 0, 0]).is_err());
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(2, 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let z = FpMatrix::zeros(3, 3, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());

        let a = m(5, 2, 2, &[1, 2, 2, 4]);
        let r = a.rref();
        assert_eq!(r.reduced, m(5, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(3, 3).kernel_basis().rows(), 0);
        let z = FpMatrix::zeros(2, 3, 3);
        assert_eq!(z.kernel_basis(), FpMatrix::identity(2, 3));
        let a = m(2, 1, 2, &[1, 1]);
        assert_eq!(a.kernel_basis(), m(2, 1, 2, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(7, 3);
        assert_eq!(id.solve(&[1, 5, 6]), Some(vec![1, 5, 6]));
        let z = FpMatrix::zeros(3, 2, 2);
        assert_eq!(z.solve(&[1, 0]), None);
        let a = m(2, 2, 2, &[1, 1, 0, 0]);
        assert_eq!(a.solve(&[1, 0]), Some(vec![1, 0]));
    }

    #[test]
    fn quotient_space_kills_subspace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let d = rng.gen_range(1..7);
            let k = rng.gen_range(0..5);
            let u = random(&mut rng, p, d, k);
            let q = QuotientSpace::new(p, d, &u);
            assert_eq!(q.dim(), d - u.rank());
            assert!(q.proj.mul(&u).is_zero());
            assert_eq!(q.proj.mul(&q.lift), FpMatrix::identity(p, q.dim()));
        }
    }

    #[test]
    fn rank_of_transpose_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        for _ in 0..1000 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let (r, c) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
            let a = random(&mut rng, p, r, c);
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_kernel_solve_exact(
            seed in any::<u64>(), pi in 0usize..3, r in 0usize..8, c in 0usize..8
        ) {
            let p = [2u32, 3, 5][pi];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random(&mut rng, p, r, c);
            let once = a.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once.clone());
            let k = a.kernel_cols();
            prop_assert_eq!(k.cols(), c - a.rank());
            prop_assert!(a.mul(&k).is_zero());
            let b: Vec<u32> = (0..r).map(|_| rng.gen_range(0..p)).collect();
            if let Some(x) = a.solve(&b) {
                prop_assert_eq!(a.mul_vec(&x), b);
            }
            // a consistent right-hand side always solves
            let x0: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p)).collect();
            let b0 = a.mul_vec(&x0);
            let x = a.solve(&b0);
            prop_assert!(x.is_some());
            prop_assert_eq!(a.mul_vec(&x.unwrap()), b0);
        }
    }
}
