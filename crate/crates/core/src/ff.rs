//! Dense linear algebra over a prime field `F_p`.
//!
//! Entries are stored reduced in `[0, p)` as `u32`; products are formed in
//! 64-bit and reduced explicitly. Elimination always takes the leftmost
//! pivot column and the topmost available row so that every derived basis
//! is reproducible.

use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Largest prime accepted for a computation context.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// A scalar of `F_p` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Self {
        FpScalar {
            value: reduce(value, p),
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: inv(self.value, self.p),
            p: self.p,
        })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: add(self.value, o.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: sub(self.value, o.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: mul(self.value, o.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: neg(self.value, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Number of products `< (p-1)^2` that can be summed in a `u64` without overflow.
fn accumulation_budget(p: u32) -> usize {
    let sq = (p as u64 - 1).max(1).pow(2);
    ((u64::MAX - p as u64) / sq).min(1 << 20) as usize
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Mat {
        Mat {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Mat {
        let mut m = Mat::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from raw entries, reducing each modulo `p`.
    pub fn from_vec(rows: usize, cols: usize, p: u32, entries: Vec<u32>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            p,
            data: entries.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn from_rows(rows: &[Vec<i64>], p: u32) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(x, p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(cols: &[Vec<u32>], len: usize, p: u32) -> Mat {
        let mut m = Mat::zeros(len, cols.len(), p);
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), len);
            for (i, &x) in v.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn from_row_vecs(rows: &[Vec<u32>], len: usize, p: u32) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * len);
        for r in rows {
            assert_eq!(r.len(), len);
            data.extend_from_slice(r);
        }
        Mat {
            rows: rows.len(),
            cols: len,
            p,
            data,
        }
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
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
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

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = add(self.data[k], v % self.p, self.p);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        debug_assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let n = other.cols;
        let budget = accumulation_budget(self.p);
        let mut out = Mat::zeros(self.rows, n, self.p);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending >= budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out.data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        let budget = accumulation_budget(self.p);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                let mut pending = 0;
                for (a, b) in self.row(i).iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc += *a as u64 * *b as u64;
                        pending += 1;
                        if pending >= budget {
                            acc %= p;
                            pending = 0;
                        }
                    }
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add(a, b, p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| sub(a, b, p))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().map(|&a| mul(a, c % p, p)).collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        if c.is_multiple_of(p) {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = add(*a, mul(b, c, p), p);
            }
        }
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |t, i| add(t, self.get(i, i), self.p))
    }

    /// Kronecker product: `(a⊗b)[(i,k),(j,l)] = a[i,j]·b[k,l]`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let p = self.p;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(r, c, p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = mul(a, b, p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(idx.len(), self.cols, self.p);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len(), self.p);
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len(), self.p);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        out
    }

    /// Direct sum (block diagonal).
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            let c = self.cols;
            out.row_mut(self.rows + i)[c..].copy_from_slice(other.row(i));
        }
        out
    }

    /// Reduced row-echelon form, leftmost pivot and topmost row first.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    /// In-place RREF; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
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
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let iv = inv(self.data[r * cols + c], p);
            if iv != 1 {
                for j in c..cols {
                    let x = &mut self.data[r * cols + j];
                    *x = mul(*x, iv, p);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let nf = (p - f) as u64;
                for j in c..cols {
                    let b = pivot_row[j];
                    if b != 0 {
                        row[j] = ((row[j] as u64 + nf * b as u64) % p as u64) as u32;
                    }
                }
            };
            for row in head.chunks_mut(cols) {
                eliminate(row);
            }
            for row in rest.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{v : self·v = 0}` as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = neg(reduced.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel as a matrix whose columns span it.
    pub fn kernel(&self) -> Mat {
        Mat::from_columns(&self.kernel_basis(), self.cols, self.p)
    }

    /// Solves `self · x = b` for a particular solution `x`, or `None` when
    /// some column of `b` is outside the column space.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: a has {} rows, b has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, b.cols, self.p);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, reduced.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n, self.p));
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(reduced.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis (as rows) of the row space, in reduced echelon form.
    pub fn row_space(&self) -> Mat {
        let r = self.rref();
        r.reduced.select_rows(&(0..r.rank).collect::<Vec<_>>())
    }

    /// Columns forming a basis of the column space (a subset of the input columns).
    pub fn column_space(&self) -> Mat {
        let r = self.rref();
        self.select_cols(&r.pivots)
    }

    pub fn pow(&self, e: usize) -> Mat {
        let mut result = Mat::identity(self.rows, self.p);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Writes the binary matrix record: magic `SPFM`, version, p, rows, cols,
    /// then row-major little-endian `u32` entries.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"SPFM")?;
        for x in [MATRIX_FORMAT_VERSION, self.p, self.rows as u32, self.cols as u32] {
            w.write_all(&x.to_le_bytes())?;
        }
        for &x in &self.data {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Mat> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"SPFM" {
            return Err(Error::Format("bad matrix magic".into()));
        }
        let mut word = || -> Result<u32> {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)?;
            Ok(u32::from_le_bytes(b))
        };
        let version = word()?;
        if version != MATRIX_FORMAT_VERSION {
            return Err(Error::Format(format!("matrix format version {version}")));
        }
        let p = word()?;
        let rows = word()? as usize;
        let cols = word()? as usize;
        if !is_prime(p) {
            return Err(Error::Format(format!("modulus {p} is not prime")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let x = word()?;
            if x >= p {
                return Err(Error::Format("unreduced entry".into()));
            }
            data.push(x);
        }
        Ok(Mat {
            rows,
            cols,
            p,
            data,
        })
    }
}

pub const MATRIX_FORMAT_VERSION: u32 = 1;

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(24) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(24)])?;
        }
        Ok(())
    }
}

/// Row-reduced basis of a subspace, kept in echelon form for fast membership
/// tests and incremental growth.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize, p: u32) -> Self {
        Echelon {
            p,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis in place; returns true if the remainder is zero.
    pub fn reduce(&self, v: &mut [u32]) -> bool {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                let nf = (p - f) as u64;
                for j in c..self.len {
                    if row[j] != 0 {
                        v[j] = ((v[j] as u64 + nf * row[j] as u64) % p as u64) as u32;
                    }
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w)
    }

    /// Adds `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = v.to_vec();
        if self.reduce(&mut w) {
            return false;
        }
        let c = w.iter().position(|&x| x != 0).unwrap();
        let iv = inv(w[c], p);
        for x in w.iter_mut() {
            *x = mul(*x, iv, p);
        }
        // keep the basis fully reduced
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let nf = (p - f) as u64;
                for j in c..self.len {
                    if w[j] != 0 {
                        row[j] = ((row[j] as u64 + nf * w[j] as u64) % p as u64) as u32;
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis (reads pivot entries); `None` if
    /// `v` is not in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        self.reduce(&mut w).then_some(coords)
    }

    pub fn to_rows(&self) -> Mat {
        Mat::from_row_vecs(&self.rows, self.len, self.p)
    }
}

/// Intersection and sum of two subspaces given by spanning vectors.
pub fn subspace_meet_join(
    u: &[Vec<u32>],
    w: &[Vec<u32>],
    len: usize,
    p: u32,
) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    if u.iter().chain(w).any(|v| v.len() != len) {
        return Err(Error::DimensionMismatch(
            "subspace vectors of unequal ambient dimension".into(),
        ));
    }
    let ub = Mat::from_row_vecs(u, len, p).row_space();
    let wb = Mat::from_row_vecs(w, len, p).row_space();
    let mut join = Echelon::new(len, p);
    for v in ub.row_vecs().iter().chain(wb.row_vecs().iter()) {
        join.insert(v);
    }
    // Zassenhaus: rows [u | u] and [w | 0]; the echelon rows with zero left half
    // span the intersection in the right half.
    let mut z = Mat::zeros(ub.rows() + wb.rows(), 2 * len, p);
    for i in 0..ub.rows() {
        z.row_mut(i)[..len].copy_from_slice(ub.row(i));
        z.row_mut(i)[len..].copy_from_slice(ub.row(i));
    }
    for i in 0..wb.rows() {
        z.row_mut(ub.rows() + i)[..len].copy_from_slice(wb.row(i));
    }
    let r = z.rref();
    let meet = (0..r.rank)
        .filter(|&i| r.pivots[i] >= len)
        .map(|i| r.reduced.row(i)[len..].to_vec())
        .collect();
    Ok((meet, join.basis().to_vec()))
}
