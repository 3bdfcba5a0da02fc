//! Dense real linear algebra for query-model simulation.
//!
//! Every amplitude and matrix entry the construction needs is real, so the
//! simulator works over `f64` only. Matrices are immutable once built.
//! Matrices with few nonzeros are stored row-compressed internally; this
//! changes neither the row-major semantics nor the results of [`apply`].

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Tolerance for matrix identities such as `M·Mᵀ = I`.
pub const MATRIX_TOL: f64 = 1e-12;
/// Tolerance for norms and probabilities.
pub const NORM_TOL: f64 = 1e-9;

/// A real amplitude vector `Σ α_i |i⟩` over `K = 2^T` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<f64>,
}

impl StateVector {
    /// Validates that the length is a power of two and the L2 norm is 1 within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amplitudes.len()));
        }
        let state = StateVector { amplitudes };
        let norm = state.norm();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(state)
    }

    /// The basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index + 1 });
        }
        let mut amplitudes = vec![0.0; dim];
        amplitudes[index] = 1.0;
        Ok(StateVector { amplitudes })
    }

    /// Wraps amplitudes produced by a linear map; no norm check, since a
    /// non-unitary map is allowed to denormalize.
    pub(crate) fn from_raw(amplitudes: Vec<f64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> Self {
        StateVector { amplitudes: self.amplitudes.iter().map(|a| -a).collect() }
    }

    /// Largest elementwise difference to `other`, or `None` on length mismatch.
    pub fn max_abs_diff(&self, other: &[f64]) -> Option<f64> {
        max_abs_diff(&self.amplitudes, other)
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<f64>),
    Sparse { row_ptr: Vec<usize>, cols: Vec<usize>, vals: Vec<f64> },
}

/// A `K×K` real matrix with row-major semantics.
#[derive(Clone, Debug)]
pub struct SquareMatrix {
    dim: usize,
    storage: Storage,
}

/// Entrywise equality, independent of the internal storage.
impl PartialEq for SquareMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && (0..self.dim).all(|i| self.row_nonzeros(i) == other.row_nonzeros(i))
    }
}

impl SquareMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_sparse_rows(dim, vec![Vec::new(); dim])
    }

    pub fn diagonal(diag: Vec<f64>) -> Self {
        let dim = diag.len();
        let rows = diag.into_iter().enumerate().map(|(i, v)| vec![(i, v)]).collect();
        Self::from_sparse_rows(dim, rows)
    }

    /// Builds a matrix from `dim * dim` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::MalformedMatrix { dim, entries: entries.len() });
        }
        let nnz = entries.iter().filter(|v| **v != 0.0).count();
        if prefers_sparse(dim, nnz) {
            let rows = entries
                .chunks(dim.max(1))
                .take(dim)
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, v)| **v != 0.0)
                        .map(|(j, v)| (j, *v))
                        .collect()
                })
                .collect();
            Ok(Self::from_sparse_rows(dim, rows))
        } else {
            Ok(SquareMatrix { dim, storage: Storage::Dense(entries) })
        }
    }

    /// Builds a matrix by evaluating `f(row, col)` for every entry.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let entries = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| f(i, j));
        Self::from_row_major(dim, entries.collect()).expect("entry count matches dimension")
    }

    /// Builds a matrix from per-row `(column, value)` lists. Duplicate
    /// columns in a row are summed; zero values are dropped.
    pub fn from_sparse_rows(dim: usize, rows: Vec<Vec<(usize, f64)>>) -> Self {
        assert_eq!(rows.len(), dim, "one entry list per row");
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|(j, _)| *j);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for (j, v) in row {
                assert!(j < dim, "column {j} out of range for dimension {dim}");
                match merged.last_mut() {
                    Some((last, acc)) if *last == j => *acc += v,
                    _ => merged.push((j, v)),
                }
            }
            for (j, v) in merged.into_iter().filter(|(_, v)| *v != 0.0) {
                cols.push(j);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        SquareMatrix { dim, storage: Storage::Sparse { row_ptr, cols, vals } }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of range");
        match &self.storage {
            Storage::Dense(e) => e[i * self.dim + j],
            Storage::Sparse { row_ptr, cols, vals } => {
                let range = row_ptr[i]..row_ptr[i + 1];
                match cols[range.clone()].binary_search(&j) {
                    Ok(pos) => vals[range.start + pos],
                    Err(_) => 0.0,
                }
            }
        }
    }

    /// Nonzero `(column, value)` pairs of row `i`, in column order.
    pub fn row_nonzeros(&self, i: usize) -> Vec<(usize, f64)> {
        match &self.storage {
            Storage::Dense(e) => e[i * self.dim..(i + 1) * self.dim]
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(j, v)| (j, *v))
                .collect(),
            Storage::Sparse { row_ptr, cols, vals } => (row_ptr[i]..row_ptr[i + 1])
                .map(|p| (cols[p], vals[p]))
                .collect(),
        }
    }

    pub fn nonzero_count(&self) -> usize {
        match &self.storage {
            Storage::Dense(e) => e.iter().filter(|v| **v != 0.0).count(),
            Storage::Sparse { vals, .. } => vals.len(),
        }
    }

    /// All entries in row-major order.
    pub fn to_row_major(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(e) => e.clone(),
            Storage::Sparse { .. } => {
                let mut out = vec![0.0; self.dim * self.dim];
                for i in 0..self.dim {
                    for (j, v) in self.row_nonzeros(i) {
                        out[i * self.dim + j] = v;
                    }
                }
                out
            }
        }
    }

    /// Copy with entry `(i, j)` replaced by `value`.
    pub fn with_entry(&self, i: usize, j: usize, value: f64) -> Self {
        let mut entries = self.to_row_major();
        entries[i * self.dim + j] = value;
        Self::from_row_major(self.dim, entries).expect("same shape")
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim];
        for i in 0..self.dim {
            for (j, v) in self.row_nonzeros(i) {
                rows[j].push((i, v));
            }
        }
        Self::from_sparse_rows(self.dim, rows)
    }

    /// Largest elementwise difference to `other`, or `None` if dimensions differ.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> Option<f64> {
        if self.dim != other.dim {
            return None;
        }
        max_abs_diff(&self.to_row_major(), &other.to_row_major())
    }

    fn apply_slice(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(v, &mut out);
        out
    }

    /// `out = self · v`; both slices must have length `dim`.
    pub(crate) fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        match &self.storage {
            Storage::Dense(e) => {
                for (o, row) in out.iter_mut().zip(e.chunks_exact(self.dim)) {
                    *o = dot(row, v);
                }
            }
            Storage::Sparse { row_ptr, cols, vals } => {
                for (o, w) in out.iter_mut().zip(row_ptr.windows(2)) {
                    *o = (w[0]..w[1]).map(|p| vals[p] * v[cols[p]]).sum();
                }
            }
        }
    }
}

/// Dot product with eight independent partial sums so the loop vectorizes.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    const LANES: usize = 8;
    let mut acc = [0.0f64; LANES];
    let (a_main, a_tail) = a.split_at(a.len() - a.len() % LANES);
    let (b_main, b_tail) = b.split_at(a_main.len());
    for (ca, cb) in a_main.chunks_exact(LANES).zip(b_main.chunks_exact(LANES)) {
        for l in 0..LANES {
            acc[l] += ca[l] * cb[l];
        }
    }
    let tail: f64 = a_tail.iter().zip(b_tail).map(|(x, y)| x * y).sum();
    acc.iter().sum::<f64>() + tail
}

fn prefers_sparse(dim: usize, nnz: usize) -> bool {
    nnz.saturating_mul(8) <= dim.saturating_mul(dim)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, nan_max))
}

fn nan_max(acc: f64, x: f64) -> f64 {
    if x.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

/// `m · v`. The norm is preserved when `m` is unitary.
pub fn apply(m: &SquareMatrix, v: &StateVector) -> Result<StateVector> {
    if m.dim != v.len() {
        return Err(Error::DimensionMismatch { expected: m.dim, found: v.len() });
    }
    Ok(StateVector::from_raw(m.apply_slice(v.amplitudes())))
}

/// Kronecker product `a ⊗ b`: `result[i·b.dim + k][j·b.dim + l] = a[i][j]·b[k][l]`.
pub fn tensor(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let bd = b.dim;
    let dim = a.dim * bd;
    let b_rows: Vec<_> = (0..bd).map(|k| b.row_nonzeros(k)).collect();
    let nnz = a.nonzero_count() * b.nonzero_count();
    if prefers_sparse(dim, nnz) {
        let mut rows = Vec::with_capacity(dim);
        for i in 0..a.dim {
            let a_row = a.row_nonzeros(i);
            for b_row in &b_rows {
                let row = a_row
                    .iter()
                    .flat_map(|&(j, av)| b_row.iter().map(move |&(l, bv)| (j * bd + l, av * bv)))
                    .collect();
                rows.push(row);
            }
        }
        SquareMatrix::from_sparse_rows(dim, rows)
    } else {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..a.dim {
            for (j, av) in a.row_nonzeros(i) {
                for (k, b_row) in b_rows.iter().enumerate() {
                    let row = i * bd + k;
                    for &(l, bv) in b_row {
                        entries[row * dim + j * bd + l] = av * bv;
                    }
                }
            }
        }
        SquareMatrix { dim, storage: Storage::Dense(entries) }
    }
}

/// The 2×2 Hadamard matrix.
pub fn hadamard() -> SquareMatrix {
    let h = FRAC_1_SQRT_2;
    SquareMatrix::from_row_major(2, vec![h, h, h, -h]).expect("2x2")
}

/// `H^{⊗t}`, with `entry[i][j] = 2^{-t/2} · (-1)^{popcount(i & j)}`.
pub fn hadamard_power(t: u32) -> Result<SquareMatrix> {
    if t == 0 {
        return Err(Error::ZeroHadamardPower);
    }
    let dim = 1usize << t;
    let mut scale = 0.5f64.powi((t / 2) as i32);
    if t % 2 == 1 {
        scale *= FRAC_1_SQRT_2;
    }
    Ok(SquareMatrix::from_fn(dim, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            scale
        } else {
            -scale
        }
    }))
}

/// `max |(M·Mᵀ − I)[i][j]|`, or infinity if any entry is NaN.
pub fn unitarity_deviation(m: &SquareMatrix) -> f64 {
    let dev = match &m.storage {
        Storage::Dense(e) => {
            // Rows are visited in blocks so each row `k` streamed from memory
            // is reused against a whole block of rows `i ≤ k`.
            const BLOCK: usize = 16;
            let dim = m.dim;
            let row = |i: usize| &e[i * dim..(i + 1) * dim];
            (0..dim.div_ceil(BLOCK))
                .into_par_iter()
                .map(|b| {
                    let block = b * BLOCK..((b + 1) * BLOCK).min(dim);
                    let mut worst: f64 = 0.0;
                    for k in block.start..dim {
                        let rk = row(k);
                        for i in block.start..block.end.min(k + 1) {
                            let target = if i == k { 1.0 } else { 0.0 };
                            worst = nan_max(worst, (dot(row(i), rk) - target).abs());
                        }
                    }
                    worst
                })
                .reduce(|| 0.0, nan_max)
        }
        Storage::Sparse { .. } => {
            // Only rows sharing a column can have a nonzero dot product.
            let transposed = m.transpose();
            let mut acc = vec![0.0; m.dim];
            let mut touched = Vec::new();
            let mut worst: f64 = 0.0;
            for i in 0..m.dim {
                for (j, v) in m.row_nonzeros(i) {
                    for (k, w) in transposed.row_nonzeros(j) {
                        if acc[k] == 0.0 {
                            touched.push(k);
                        }
                        acc[k] += v * w;
                    }
                }
                if !touched.contains(&i) {
                    worst = nan_max(worst, 1.0);
                }
                for &k in &touched {
                    let target = if k == i { 1.0 } else { 0.0 };
                    worst = nan_max(worst, (acc[k] - target).abs());
                    acc[k] = 0.0;
                }
                touched.clear();
            }
            worst
        }
    };
    if dev.is_nan() {
        f64::INFINITY
    } else {
        dev
    }
}

/// True iff `max |(M·Mᵀ − I)[i][j]| ≤ tol`.
pub fn is_unitary(m: &SquareMatrix, tol: f64) -> bool {
    unitarity_deviation(m) <= tol
}
