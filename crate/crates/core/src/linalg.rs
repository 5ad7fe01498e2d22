//! Dense complex matrices and the handful of decompositions the geometry needs.
//!
//! Storage is row-major. Rank, nullspace and solve routines go through a
//! complex SVD and use the relative threshold `tol * sigma_max`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{NcgError, Result};

pub type C64 = Complex64;

/// Default relative tolerance for rank decisions and residual checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ONE)
    }

    /// `z` times the `n x n` identity.
    pub fn scalar(n: usize, z: C64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(NcgError::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Self {
            rows: r,
            cols,
            data: rows.concat(),
        }
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| c(x, 0.0)).collect(),
        }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Matrix unit E_pq of size n.
    pub fn unit(n: usize, p: usize, q: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(p, q)] = ONE;
        m
    }

    /// Entries with independent standard normal real and imaginary parts.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(rows, cols, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        kron(self, rhs)
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Normalised trace, the candidate scalar `z` for `self ≈ z·1`.
    pub fn scalar_part(&self) -> C64 {
        if self.rows == 0 {
            return ZERO;
        }
        self.trace() / self.rows as f64
    }

    /// Max-abs distance from the nearest multiple of the identity.
    pub fn scalar_deviation(&self) -> f64 {
        let z = self.scalar_part();
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { z } else { ZERO };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// Hilbert-Schmidt inner product `tr(self† rhs)`.
    pub fn inner(&self, rhs: &Self) -> C64 {
        assert_eq!(self.shape(), rhs.shape());
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.shape(), rhs.shape());
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                assert_eq!(self.shape(), rhs.shape(), "elementwise shape mismatch");
                ComplexMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $trait<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                (&self).$method(rhs)
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape());
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape());
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, z: C64) -> ComplexMatrix {
        self.scale(z)
    }
}

impl Mul<C64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, z: C64) -> ComplexMatrix {
        self.scale(z)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

/// Kronecker product: `kron(A, B)[(i*p + r), (j*q + s)] = A[i,j] * B[r,s]` for `B` of shape `p x q`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = b.shape();
    let mut out = ComplexMatrix::zeros(a.rows * p, a.cols * q);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for r in 0..p {
                for s in 0..q {
                    out[(i * p + r, j * q + s)] = aij * b[(r, s)];
                }
            }
        }
    }
    out
}

/// Block-diagonal assembly; off-diagonal blocks are zero.
pub fn block_diag(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows = blocks.iter().map(ComplexMatrix::rows).sum();
    let cols = blocks.iter().map(ComplexMatrix::cols).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
        r0 += b.rows;
        c0 += b.cols;
    }
    out
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.to_nalgebra().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn rank_from_singular_values(s: &[f64], tol: f64) -> usize {
    let smax = s.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * smax).count()
}

pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> usize {
    rank_from_singular_values(&singular_values(m), tol)
}

/// Thin SVD `M = U diag(s) Vh` with singular values sorted descending.
struct Svd {
    u: ComplexMatrix,
    s: Vec<f64>,
    vh: ComplexMatrix,
}

fn svd(m: &ComplexMatrix) -> Svd {
    let raw = m.to_nalgebra().svd(true, true);
    let u = raw.u.expect("requested U");
    let vh = raw.v_t.expect("requested V^H");
    let mut order: Vec<usize> = (0..raw.singular_values.len()).collect();
    order.sort_by(|&a, &b| raw.singular_values[b].total_cmp(&raw.singular_values[a]));
    Svd {
        u: ComplexMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]),
        s: order.iter().map(|&k| raw.singular_values[k]).collect(),
        vh: ComplexMatrix::from_fn(order.len(), vh.ncols(), |i, j| vh[(order[i], j)]),
    }
}

/// Orthonormal basis of `{v : M v = 0}` with rank decided at `tol * sigma_max`.
///
/// A zero matrix has the whole space as kernel.
pub fn nullspace_basis(m: &ComplexMatrix, tol: f64) -> Vec<Vec<C64>> {
    let n = m.cols;
    if n == 0 {
        return Vec::new();
    }
    // Pad with zero rows so that the SVD returns a full V.
    let padded;
    let target = if m.rows < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.data[..m.data.len()].copy_from_slice(&m.data);
        padded = p;
        &padded
    } else {
        m
    };
    let dec = svd(target);
    let rank = rank_from_singular_values(&dec.s, tol);
    (rank..n)
        .map(|i| dec.vh.row(i).iter().map(|z| z.conj()).collect())
        .collect()
}

/// Orthonormal rows spanning the row space of `m`.
pub fn row_space_basis(m: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    if m.rows == 0 || m.cols == 0 {
        return ComplexMatrix::zeros(0, m.cols);
    }
    let dec = svd(m);
    let rank = rank_from_singular_values(&dec.s, tol);
    ComplexMatrix::from_fn(rank, m.cols, |i, j| dec.vh[(i, j)])
}

/// Rows stored as sparse `(column, value)` lists, used for tall spanning sets.
#[derive(Clone, Debug, Default)]
pub struct SparseRows {
    ncols: usize,
    rows: Vec<Vec<(usize, C64)>>,
}

/// Extra sketch rows beyond the column count.
const OVERSAMPLE: usize = 8;

impl SparseRows {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense_rows(ncols: usize, rows: Vec<Vec<C64>>) -> Self {
        let mut out = Self::new(ncols);
        for r in rows {
            out.push_dense(&r);
        }
        out
    }

    pub fn push_dense(&mut self, row: &[C64]) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(
            row.iter()
                .enumerate()
                .filter(|(_, z)| **z != ZERO)
                .map(|(j, &z)| (j, z))
                .collect(),
        );
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, z) in row {
                out[(i, j)] = z;
            }
        }
        out
    }

    /// `S * self` for a `k x nrows` complex Gaussian `S` drawn from `seed`.
    ///
    /// Row `i` of `S` comes from its own ChaCha stream, so the result does
    /// not depend on how rayon schedules the rows.
    pub fn sketch(&self, k: usize, seed: u64) -> ComplexMatrix {
        let m = self.rows.len();
        let n = self.ncols;
        let out: Vec<Vec<C64>> = (0..k)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let mut acc = vec![ZERO; n];
                for r in 0..m {
                    let s = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
                    for &(j, z) in &self.rows[r] {
                        acc[j] += s * z;
                    }
                }
                acc
            })
            .collect();
        if k == 0 {
            return ComplexMatrix::zeros(0, n);
        }
        ComplexMatrix::from_rows(&out)
    }

    /// A matrix with the same row space: the rows themselves when few, a
    /// random sketch of `ncols + 8` rows otherwise.
    pub fn compress(&self, seed: u64) -> ComplexMatrix {
        let k = self.ncols + OVERSAMPLE;
        if self.rows.len() <= k {
            self.to_dense()
        } else {
            self.sketch(k, seed)
        }
    }

    /// Numerical rank, via a sketch when the rows outnumber the columns.
    pub fn rank(&self, tol: f64, seed: u64) -> usize {
        numerical_rank(&self.compress(seed), tol)
    }
}

const SPAN_SEED: u64 = 0x5eed_0001;

/// Numerical rank of the matrix whose rows are the vectorised inputs.
pub fn span_dimension(vs: &[ComplexMatrix], tol: f64) -> usize {
    let Some(first) = vs.first() else {
        return 0;
    };
    assert!(
        vs.iter().all(|v| v.shape() == first.shape()),
        "span_dimension needs equally shaped inputs"
    );
    let mut rows = SparseRows::new(first.rows * first.cols);
    for v in vs {
        rows.push_dense(v.as_slice());
    }
    rows.rank(tol, SPAN_SEED)
}

/// Solve the square system `A x = b`.
///
/// Fails with `SingularSystem` when the numerical rank at `tol * sigma_max`
/// is below the dimension.
pub fn solve_linear(a: &ComplexMatrix, b: &[C64], tol: f64) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(NcgError::Shape(format!(
            "solve_linear needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    if a.rows != b.len() {
        return Err(NcgError::Shape(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.rows
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    let dec = svd(a);
    let rank = rank_from_singular_values(&dec.s, tol);
    if rank < n {
        return Err(NcgError::SingularSystem { rank, dim: n });
    }
    Ok(pseudo_inverse_apply(&dec, b, n))
}

fn pseudo_inverse_apply(dec: &Svd, b: &[C64], rank: usize) -> Vec<C64> {
    // x = V diag(1/s) U^H b over the leading `rank` singular triples.
    let ncols = dec.vh.cols;
    let mut x = vec![ZERO; ncols];
    for k in 0..rank {
        let coeff: C64 = (0..dec.u.rows)
            .map(|i| dec.u[(i, k)].conj() * b[i])
            .sum::<C64>()
            / dec.s[k];
        for (j, xj) in x.iter_mut().enumerate() {
            *xj += dec.vh[(k, j)].conj() * coeff;
        }
    }
    x
}

/// Minimum-norm least-squares solution of `A x = b` and its residual norm.
pub fn least_squares(a: &ComplexMatrix, b: &[C64], tol: f64) -> Result<(Vec<C64>, f64)> {
    if a.rows != b.len() {
        return Err(NcgError::Shape(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.rows
        )));
    }
    if a.rows == 0 || a.cols == 0 {
        let res = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        return Ok((vec![ZERO; a.cols], res));
    }
    let dec = svd(a);
    let rank = rank_from_singular_values(&dec.s, tol);
    let x = pseudo_inverse_apply(&dec, b, rank);
    let ax = a.mul_vec(&x);
    let res = ax
        .iter()
        .zip(b)
        .map(|(p, q)| (p - q).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((x, res))
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Pauli matrices tau_1, tau_2, tau_3.
pub fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]),
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]),
        ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]),
    ]
}

/// Levi-Civita symbol on 0-based axes.
pub fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal_case() {
        let a = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let k = kron(&a, &ComplexMatrix::identity(2));
        let expected = ComplexMatrix::diag(&[ONE, ONE, c(2.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_tau1_squares_to_identity() {
        let [t1, _, _] = pauli();
        let k = kron(&t1, &t1);
        assert_eq!(k.matmul(&k), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_index_formula() {
        let mut r = rng();
        let a = ComplexMatrix::random(2, 3, &mut r);
        let b = ComplexMatrix::random(4, 2, &mut r);
        let k = kron(&a, &b);
        assert_eq!(k.shape(), (8, 6));
        for i in 0..2 {
            for j in 0..3 {
                for p in 0..4 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 4 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_associative_on_integer_entries() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = ComplexMatrix::from_real(1, 2, &[5.0, -1.0]);
        let cm = ComplexMatrix::from_real(2, 1, &[0.0, 7.0]);
        assert_eq!(kron(&kron(&a, &b), &cm), kron(&a, &kron(&b, &cm)));
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = ComplexMatrix::random(3, 5, &mut rng());
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn block_diag_places_blocks() {
        let a = ComplexMatrix::scalar(1, c(3.0, 0.0));
        let b = ComplexMatrix::identity(2);
        let m = block_diag(&[a, b]);
        assert_eq!(m, ComplexMatrix::diag(&[c(3.0, 0.0), ONE, ONE]));
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        assert_eq!(
            nullspace_basis(&ComplexMatrix::zeros(2, 2), DEFAULT_TOL).len(),
            2
        );
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace_basis(&ComplexMatrix::identity(3), DEFAULT_TOL).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let ns = nullspace_basis(&m, DEFAULT_TOL);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((vec_norm(v) - 1.0).abs() < 1e-12);
        assert!((v[0] + v[1]).norm() < 1e-12);
        assert!(vec_norm(&m.mul_vec(v)) < 1e-12);
    }

    #[test]
    fn nullspace_of_wide_matrix_is_orthonormal() {
        let m = ComplexMatrix::random(2, 5, &mut rng());
        let ns = nullspace_basis(&m, DEFAULT_TOL);
        assert_eq!(ns.len(), 3);
        for (i, u) in ns.iter().enumerate() {
            assert!(vec_norm(&m.mul_vec(u)) <= DEFAULT_TOL * m.operator_norm());
            for (j, v) in ns.iter().enumerate() {
                let ip: C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn span_dimension_examples() {
        let id = ComplexMatrix::identity(2);
        assert_eq!(
            span_dimension(&[id.clone(), id.scale(c(2.0, 0.0))], DEFAULT_TOL),
            1
        );
        let [t1, t2, t3] = pauli();
        assert_eq!(span_dimension(&[id, t1, t2, t3], DEFAULT_TOL), 4);
        assert_eq!(span_dimension(&[], DEFAULT_TOL), 0);
    }

    #[test]
    fn span_dimension_of_single_matrix() {
        assert_eq!(
            span_dimension(&[ComplexMatrix::zeros(3, 3)], DEFAULT_TOL),
            0
        );
        let m = ComplexMatrix::random(3, 3, &mut rng());
        assert_eq!(span_dimension(&[m], DEFAULT_TOL), 1);
    }

    #[test]
    fn sketched_rank_matches_dense_rank() {
        let mut r = rng();
        // 40 rows in a 6-dimensional subspace of C^12.
        let basis = ComplexMatrix::random(6, 12, &mut r);
        let mix = ComplexMatrix::random(40, 6, &mut r);
        let tall = mix.matmul(&basis);
        let rows = SparseRows::from_dense_rows(12, tall.to_rows());
        assert_eq!(rows.rank(DEFAULT_TOL, 1), 6);
        assert_eq!(numerical_rank(&tall, DEFAULT_TOL), 6);
        assert_eq!(rows.sketch(20, 3), rows.sketch(20, 3));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0)];
        let x = solve_linear(&ComplexMatrix::identity(3), &b, DEFAULT_TOL).unwrap();
        for (p, q) in x.iter().zip(&b) {
            assert!((p - q).norm() < 1e-14);
        }
    }

    #[test]
    fn solve_diagonal() {
        let a = ComplexMatrix::diag(&[c(2.0, 0.0), c(4.0, 0.0)]);
        let x = solve_linear(&a, &[c(2.0, 0.0), c(4.0, 0.0)], DEFAULT_TOL).unwrap();
        assert!((x[0] - ONE).norm() < 1e-14 && (x[1] - ONE).norm() < 1e-14);
    }

    #[test]
    fn solve_random_nine_by_nine() {
        let mut r = rng();
        let a = &ComplexMatrix::random(9, 9, &mut r) + &ComplexMatrix::scalar(9, c(6.0, 0.0));
        let b: Vec<C64> = ComplexMatrix::random(9, 1, &mut r).into_vec();
        let x = solve_linear(&a, &b, DEFAULT_TOL).unwrap();
        let res: Vec<C64> = a.mul_vec(&x).iter().zip(&b).map(|(p, q)| p - q).collect();
        assert!(vec_norm(&res) < 1e-12 * vec_norm(&b).max(1.0));
    }

    #[test]
    fn solve_singular_reports_rank() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let err = solve_linear(&a, &[ONE, ONE], DEFAULT_TOL).unwrap_err();
        assert_eq!(err, NcgError::SingularSystem { rank: 1, dim: 2 });
    }

    #[test]
    fn least_squares_is_min_norm() {
        // x + y = 2 has minimum-norm solution (1, 1).
        let a = ComplexMatrix::from_real(1, 2, &[1.0, 1.0]);
        let (x, res) = least_squares(&a, &[c(2.0, 0.0)], DEFAULT_TOL).unwrap();
        assert!(res < 1e-12);
        assert!((x[0] - ONE).norm() < 1e-12 && (x[1] - ONE).norm() < 1e-12);
    }

    #[test]
    fn scalar_deviation_detects_non_scalar() {
        assert!(ComplexMatrix::scalar(3, c(2.0, -1.0)).scalar_deviation() < 1e-15);
        assert!(ComplexMatrix::unit(3, 0, 1).scalar_deviation() > 0.5);
    }
}
