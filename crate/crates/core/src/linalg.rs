//! Dense complex linear algebra helpers on top of `faer`.
//!
//! Every reduction here runs in a fixed order so results are bitwise
//! reproducible regardless of the rayon pool size. `faer` kernels are always
//! invoked with sequential parallelism for the same reason.

use std::sync::Once;

use faer::linalg::matmul::matmul as faer_matmul;
use faer::{Accum, Mat, Par};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = Mat<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Chunk length used by the deterministic parallel reductions.
const CHUNK: usize = 64;

static SEQUENTIAL_FAER: Once = Once::new();

fn sequential_faer() {
    SEQUENTIAL_FAER.call_once(|| faer::set_global_parallelism(Par::Seq));
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    Mat::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMat {
    Mat::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    let mut out = zeros(a.nrows(), b.ncols());
    faer_matmul(out.as_mut(), Accum::Replace, a.as_ref(), b.as_ref(), ONE, Par::Seq);
    out
}

/// `a^H b` without materialising the adjoint.
pub fn matmul_adj_left(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.nrows(), b.nrows(), "matmul shape mismatch");
    let mut out = zeros(a.ncols(), b.ncols());
    faer_matmul(
        out.as_mut(),
        Accum::Replace,
        a.as_ref().adjoint(),
        b.as_ref(),
        ONE,
        Par::Seq,
    );
    out
}

pub fn adjoint(a: &CMat) -> CMat {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub fn scale(a: &CMat, s: C64) -> CMat {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * s)
}

pub fn add(a: &CMat, b: &CMat) -> CMat {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] + b[(i, j)])
}

pub fn sub(a: &CMat, b: &CMat) -> CMat {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] - b[(i, j)])
}

pub fn trace(a: &CMat) -> C64 {
    let diag: Vec<C64> = (0..a.nrows().min(a.ncols())).map(|i| a[(i, i)]).collect();
    pairwise_sum(&diag)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

pub fn max_abs(a: &CMat) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

pub fn frobenius_norm(a: &CMat) -> f64 {
    let sq: Vec<f64> = (0..a.ncols())
        .flat_map(|j| (0..a.nrows()).map(move |i| (i, j)))
        .map(|(i, j)| a[(i, j)].norm_sqr())
        .collect();
    pairwise_sum_f64(&sq).sqrt()
}

/// Deviation from Hermitian symmetry, `max |a - a^H|`.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    m
}

pub fn pairwise_sum(values: &[C64]) -> C64 {
    match values.len() {
        0 => ZERO,
        1 => values[0],
        n if n <= 8 => values.iter().fold(ZERO, |acc, v| acc + v),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

pub fn pairwise_sum_f64(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum_f64(l) + pairwise_sum_f64(r)
        }
    }
}

/// Sums `term(i)` for `i in 0..n` over fixed-size chunks evaluated in parallel,
/// then folds the chunk partials pairwise. The reduction tree depends only on
/// `n`, never on the number of worker threads.
pub fn par_sum_by<T, F, A>(n: usize, term: F, add: A, zero: T) -> T
where
    T: Clone + Send + Sync,
    F: Fn(usize) -> T + Sync,
    A: Fn(T, T) -> T + Sync,
{
    let chunks: Vec<T> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).fold(zero.clone(), |acc, i| add(acc, term(i)))
        })
        .collect();
    tree_fold(chunks, &add, zero)
}

fn tree_fold<T: Clone, A: Fn(T, T) -> T>(mut items: Vec<T>, add: &A, zero: T) -> T {
    if items.is_empty() {
        return zero;
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(add(a, b)),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    sequential_faer();
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Vec::new());
    }
    a.singular_values()
        .map_err(|e| Error::Decomposition(format!("svd: {e:?}")))
}

/// Full SVD `a = U diag(s) V^H`.
pub struct SvdFactors {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

pub fn svd(a: &CMat) -> Result<SvdFactors> {
    sequential_faer();
    let f = a
        .svd()
        .map_err(|e| Error::Decomposition(format!("svd: {e:?}")))?;
    let s = f.S().column_vector().iter().map(|x| x.re).collect();
    Ok(SvdFactors {
        u: f.U().to_owned(),
        s,
        v: f.V().to_owned(),
    })
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    sequential_faer();
    let e = a
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Decomposition(format!("eigen: {e:?}")))?;
    let vals = e.S().column_vector().iter().map(|x| x.re).collect();
    Ok((vals, e.U().to_owned()))
}
