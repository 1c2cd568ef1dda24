//! Exact arithmetic over a prime field GF(q) and the dense linear algebra
//! (row reduction, rank, null spaces, inversion) the coding layers are built on.
//!
//! A [`PrimeField`] is a tiny copyable context carrying the modulus; elements
//! are canonical `u64` representatives in `[0, q)`. [`Matrix`] is a dense
//! row-major matrix bound to one field. All operations are exact — there is no
//! tolerance anywhere, and a returned null-space basis multiplies back to the
//! zero matrix identically.
//!
//! Elimination pivots on the first nonzero entry in column order (GF(q) has no
//! magnitude), and null-space bases are emitted in the free-variable order
//! induced by the RREF, so repeated runs produce identical bases.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported modulus: products must fit in `u128` and sums of two
/// canonical values in `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Default modulus: the Mersenne prime 2^31 - 1, chosen so products fit in
/// 64 bits and reduction is a shift-and-fold instead of a division.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

/// Reduces `x < 2^63` modulo 2^31 - 1 by folding the high bits.
#[inline(always)]
fn fold31(x: u64) -> u64 {
    let mut s = (x & DEFAULT_MODULUS) + (x >> 31);
    s = (s & DEFAULT_MODULUS) + (s >> 31);
    if s >= DEFAULT_MODULUS {
        s - DEFAULT_MODULUS
    } else {
        s
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range [2, 2^62]")]
    ModulusOutOfRange(u64),
    #[error("division by zero in GF(q)")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
}

/// The prime field GF(q). Copyable context; elements are plain `u64` values
/// kept canonical in `[0, q)` by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    /// Builds the field context, verifying primality once.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q < 2 || q > MAX_MODULUS {
            return Err(FieldError::ModulusOutOfRange(q));
        }
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Canonical representative of a signed integer.
    pub fn canon_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    pub fn canon_u64(&self, v: u64) -> u64 {
        v % self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.q == DEFAULT_MODULUS {
            fold31(a * b)
        } else {
            ((a as u128 * b as u128) % self.q as u128) as u64
        }
    }

    /// `(acc + k * s) mod q`; the hot operation of every elimination loop.
    #[inline(always)]
    pub fn mul_add(&self, acc: u64, k: u64, s: u64) -> u64 {
        if self.q == DEFAULT_MODULUS {
            // k*s < 2^62 and acc < 2^31, so the sum fits in u64
            fold31(acc + k * s)
        } else {
            ((acc as u128 + k as u128 * s as u128) % self.q as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat: a^(q-2). Errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a % self.q == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Uniform element of GF(q).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.q)
    }

    /// Uniform element of GF(q) \ {0}.
    pub fn sample_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.q)
    }
}

/// Deterministic Miller-Rabin for u64 (witness set covers all 64-bit inputs).
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense row-major matrix over one prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from signed entries (reduced into canonical form).
    pub fn from_rows_i64(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            data.extend(row.iter().map(|&v| field.canon_i64(v)));
        }
        Self { field, rows: r, cols: c, data }
    }

    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        let data = data.into_iter().map(|v| field.canon_u64(v)).collect();
        Self { field, rows, cols, data }
    }

    pub fn random<R: Rng>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.sample(rng)).collect();
        Self { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.canon_u64(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a == 0 {
                    continue;
                }
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                let src = other.row(t);
                for (o, &b) in dst.iter_mut().zip(src) {
                    *o = f.mul_add(*o, a, b);
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn row_vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(*o, a, b);
            }
        }
        out
    }

    /// New matrix from the given column indices, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// New matrix from the given row indices, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row.iter().map(|&v| self.field.canon_u64(v)));
        self.rows += 1;
    }

    /// Reduced row echelon form. Returns (rref, rank, pivot columns).
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.row_axpy(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    /// Rank by forward elimination only (no back-substitution); the cheap
    /// routine behind every nonsingularity probe.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in r + 1..m.rows {
                let factor = m.get(i, c);
                if factor != 0 {
                    m.row_axpy(i, r, f.neg(factor));
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of `{x : self · xᵀ = 0}`, one vector per row, in the canonical
    /// free-variable order induced by the RREF. Empty matrix (0 rows) when the
    /// null space is trivial.
    pub fn right_null_basis(&self) -> Matrix {
        let (rref, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate().take(rank) {
                let v = rref.get(pr, fc);
                if v != 0 {
                    basis.set(i, pc, self.field.neg(v));
                }
            }
        }
        basis
    }

    /// Basis of `{s : s · self = 0}`, one vector per row.
    pub fn left_null_basis(&self) -> Matrix {
        self.transpose().right_null_basis()
    }

    /// Inverse of a nonsingular square matrix.
    pub fn invert(&self) -> Result<Matrix, FieldError> {
        assert_eq!(self.rows, self.cols, "invert requires a square matrix");
        let f = self.field;
        let n = self.rows;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| aug.get(i, c) != 0) else {
                return Err(FieldError::SingularMatrix);
            };
            aug.swap_rows(c, p);
            let inv = f.inv(aug.get(c, c))?;
            aug.scale_row(c, inv);
            for i in 0..n {
                if i != c {
                    let factor = aug.get(i, c);
                    if factor != 0 {
                        aug.row_axpy(i, c, f.neg(factor));
                    }
                }
            }
        }
        let mut out = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }

    /// True iff the matrix is square and nonsingular. Cheaper than `invert`
    /// when only the verdict is needed.
    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.data[r * self.cols + c] = f.mul(v, k);
        }
    }

    /// row[i] += k * row[j]
    fn row_axpy(&mut self, i: usize, j: usize, k: u64) {
        assert_ne!(i, j, "axpy rows must differ");
        let f = self.field;
        let cols = self.cols;
        let (dst, src): (&mut [u64], &[u64]) = if i < j {
            let (head, tail) = self.data.split_at_mut(j * cols);
            (&mut head[i * cols..i * cols + cols], &tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(i * cols);
            (&mut tail[..cols], &head[j * cols..j * cols + cols])
        };
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = f.mul_add(*d, k, s);
        }
    }
}

/// Incremental row-space tracker: feeds rows through Gaussian elimination and
/// reports whether each one enlarged the span. Used for greedy basis
/// completion and running rank checks without re-eliminating from scratch.
pub struct RowSpace {
    field: PrimeField,
    cols: usize,
    /// Reduced rows, each with its leading-column index.
    echelon: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self { field, cols, echelon: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    /// Reduces `row` against the current span; if a nonzero residue remains it
    /// is absorbed and `true` is returned.
    pub fn add_row(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let f = self.field;
        let mut v: Vec<u64> = row.iter().map(|&x| f.canon_u64(x)).collect();
        for (lead, basis) in &self.echelon {
            if v[*lead] != 0 {
                let k = f.neg(v[*lead]);
                for (d, &s) in v.iter_mut().zip(basis) {
                    *d = f.mul_add(*d, k, s);
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(lead) => {
                let inv = f.inv(v[lead]).expect("leading entry nonzero");
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                self.echelon.push((lead, v));
                self.echelon.sort_by_key(|(l, _)| *l);
                true
            }
        }
    }
}
