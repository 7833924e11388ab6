//! Dense compressions of operators on `L^2(G)` to a truncated Peter-Weyl basis.
//!
//! A basis vector is `e_b = sqrt(d) xi_ij`; a function `h` has coordinates
//! `<h, e_b> = sqrt(d) hhat(xi)_{ji}`. Multiplication operators are Gram
//! matrices `<M_f e_b', e_b>` computed by quadrature, multipliers act on each
//! Fourier block by left multiplication.
//!
//! Every operator carries a `reach`: how far in label units it can move a
//! Fourier mode. Products add reaches. Results are trusted on the interior
//! labels `<= bound - reach` only; the symbol routines enforce this.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{basis_enumerate, BandlimitedFunction, DualIndex, GroupTag, QuadLayout, QuadratureRule, TruncationSpec};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::peter_weyl::{self, small_d_tables, twiddles, EulerSpectralGrid};

/// Tolerance for `P^2 = P = P^*` on projection blocks.
pub const PROJECTION_TOL: f64 = 1e-13;

/// Default relative kernel threshold.
pub const TAU_REL: f64 = 1e-8;

/// Singular values at or below this are treated as numerically zero in reports.
pub const ZERO_SINGULAR: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    trunc: TruncationSpec,
    matrix: CMat,
    reach: u32,
    provenance: String,
}

impl TruncatedOperator {
    pub fn new(trunc: TruncationSpec, matrix: CMat, reach: u32, provenance: impl Into<String>) -> Result<Self> {
        let n = trunc.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix is {}x{}, basis has length {n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(TruncatedOperator {
            trunc,
            matrix,
            reach,
            provenance: provenance.into(),
        })
    }

    pub fn identity(trunc: TruncationSpec) -> Self {
        TruncatedOperator {
            trunc,
            matrix: linalg::identity(trunc.dim()),
            reach: 0,
            provenance: "I".into(),
        }
    }

    pub fn zero(trunc: TruncationSpec) -> Self {
        TruncatedOperator {
            trunc,
            matrix: linalg::zeros(trunc.dim(), trunc.dim()),
            reach: 0,
            provenance: "0".into(),
        }
    }

    pub fn trunc(&self) -> &TruncationSpec {
        &self.trunc
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn reach(&self) -> u32 {
        self.reach
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    fn check_compatible(&self, other: &TruncatedOperator) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::DimensionMismatch(format!(
                "operators on {:?} and {:?}",
                self.trunc, other.trunc
            )));
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        TruncatedOperator {
            trunc: self.trunc,
            matrix: linalg::adjoint(&self.matrix),
            reach: self.reach,
            provenance: format!("({})^*", self.provenance),
        }
    }

    pub fn compose(&self, other: &TruncatedOperator) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedOperator {
            trunc: self.trunc,
            matrix: linalg::matmul(&self.matrix, &other.matrix),
            reach: self.reach + other.reach,
            provenance: format!("{} {}", self.provenance, other.provenance),
        })
    }

    pub fn add(&self, other: &TruncatedOperator) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedOperator {
            trunc: self.trunc,
            matrix: linalg::add(&self.matrix, &other.matrix),
            reach: self.reach.max(other.reach),
            provenance: format!("{} + {}", self.provenance, other.provenance),
        })
    }

    pub fn sub(&self, other: &TruncatedOperator) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedOperator {
            trunc: self.trunc,
            matrix: linalg::sub(&self.matrix, &other.matrix),
            reach: self.reach.max(other.reach),
            provenance: format!("{} - {}", self.provenance, other.provenance),
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        TruncatedOperator {
            trunc: self.trunc,
            matrix: linalg::scale(&self.matrix, s),
            reach: self.reach,
            provenance: format!("{s} {}", self.provenance),
        }
    }

    /// Applies the operator to a coefficient vector in basis order.
    pub fn apply_coefficients(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for operator of size {}",
                v.len(),
                self.dim()
            )));
        }
        Ok((0..self.dim())
            .map(|i| {
                let terms: Vec<C64> = (0..self.dim()).map(|j| self.matrix[(i, j)] * v[j]).collect();
                linalg::pairwise_sum(&terms)
            })
            .collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.matrix[(i, j)].re, self.matrix[(i, j)].im]).collect())
            .collect();
        serde_json::json!({
            "trunc": { "group": self.trunc.group, "bandwidth": self.trunc.bound },
            "basis": "ascending dual label, then (row, col) row-major; entry b is <h, sqrt(d) xi_{row,col}>",
            "reach": self.reach,
            "provenance": self.provenance,
            "matrix": rows,
        })
    }
}

/// Per-dual orthogonal projections acting on Fourier blocks by left multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierProjection {
    trunc: TruncationSpec,
    blocks: Vec<CMat>,
    descriptor: String,
}

impl MultiplierProjection {
    pub fn from_blocks(trunc: TruncationSpec, blocks: Vec<CMat>, descriptor: impl Into<String>) -> Result<Self> {
        let duals = trunc.duals();
        if blocks.len() != duals.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} projection blocks for {} duals",
                blocks.len(),
                duals.len()
            )));
        }
        for (d, p) in duals.iter().zip(&blocks) {
            let label = d.label() as i64;
            if p.nrows() != d.dim() || p.ncols() != d.dim() {
                return Err(Error::InvalidProjection {
                    label,
                    reason: format!("shape {}x{}, expected {}x{}", p.nrows(), p.ncols(), d.dim(), d.dim()),
                });
            }
            let herm = linalg::hermitian_defect(p);
            if herm > PROJECTION_TOL {
                return Err(Error::InvalidProjection {
                    label,
                    reason: format!("not Hermitian (defect {herm:.2e})"),
                });
            }
            let idem = linalg::max_abs_diff(&linalg::matmul(p, p), p);
            if idem > PROJECTION_TOL {
                return Err(Error::InvalidProjection {
                    label,
                    reason: format!("not idempotent (defect {idem:.2e})"),
                });
            }
        }
        Ok(MultiplierProjection {
            trunc,
            blocks,
            descriptor: descriptor.into(),
        })
    }

    /// Diagonal projection selecting the basis weights for which `keep(label, 2m)` holds.
    pub fn diagonal<F: Fn(i32, i32) -> bool>(trunc: TruncationSpec, keep: F, descriptor: &str) -> Self {
        let blocks = trunc
            .duals()
            .iter()
            .map(|d| {
                let n = d.dim();
                CMat::from_fn(n, n, |i, j| {
                    let two_m = match d.group() {
                        GroupTag::Circle => d.label(),
                        GroupTag::Su2 => 2 * i as i32 - d.label(),
                    };
                    if i == j && keep(d.label(), two_m) {
                        ONE
                    } else {
                        ZERO
                    }
                })
            })
            .collect();
        MultiplierProjection {
            trunc,
            blocks,
            descriptor: descriptor.into(),
        }
    }

    pub fn identity(trunc: TruncationSpec) -> Self {
        Self::diagonal(trunc, |_, _| true, "identity")
    }

    /// The default projection: the Hardy projection `n >= 0` on the circle,
    /// the highest-weight projection `m = l` on SU(2).
    pub fn hardy(trunc: TruncationSpec) -> Self {
        match trunc.group {
            GroupTag::Circle => Self::diagonal(trunc, |n, _| n >= 0, "hardy"),
            GroupTag::Su2 => Self::diagonal(trunc, |tl, tm| tm == tl, "hardy"),
        }
    }

    /// SU(2) sign projection `m >= 0` in every block.
    pub fn su2_sign(trunc: TruncationSpec) -> Self {
        Self::diagonal(trunc, |_, tm| tm >= 0, "su2-sign")
    }

    /// Named pattern: `hardy`, `su2-sign` or `identity`.
    pub fn from_pattern(name: &str, trunc: TruncationSpec) -> Result<Self> {
        match name {
            "hardy" => Ok(Self::hardy(trunc)),
            "su2-sign" if trunc.group == GroupTag::Su2 => Ok(Self::su2_sign(trunc)),
            "identity" => Ok(Self::identity(trunc)),
            other => Err(Error::InvalidParameter(format!(
                "unknown projection pattern `{other}` for {}",
                trunc.group
            ))),
        }
    }

    /// Parses `{"<label>": [[[re,im],...],...]}`; missing labels default to zero blocks.
    pub fn from_json_blocks(trunc: TruncationSpec, value: &serde_json::Value) -> Result<Self> {
        let mut spec = crate::group::SpectrumSide::zeros(trunc);
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("projection blocks must be a JSON object".into()))?;
        let wrapped = serde_json::json!({
            "group": trunc.group,
            "bandwidth": trunc.bound,
            "coeffs": obj,
        });
        let parsed = crate::group::SpectrumSide::from_json_value(wrapped)?;
        for (d, b) in parsed.blocks() {
            *spec.block_mut(&d).unwrap() = b.clone();
        }
        Self::from_blocks(trunc, spec.block_list().to_vec(), "custom")
    }

    pub fn trunc(&self) -> &TruncationSpec {
        &self.trunc
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn block(&self, dual: &DualIndex) -> Option<&CMat> {
        self.trunc.dual_position(dual).map(|p| &self.blocks[p])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (DualIndex, &CMat)> + '_ {
        self.trunc.duals().into_iter().zip(self.blocks.iter())
    }

    /// Blocks of `F = 2 Pi - I`.
    pub fn symmetry_blocks(&self) -> Vec<CMat> {
        self.blocks
            .iter()
            .map(|p| linalg::sub(&linalg::scale(p, C64::new(2.0, 0.0)), &linalg::identity(p.nrows())))
            .collect()
    }

    /// `sum_xi d_xi Tr(P_xi)`, the rank of the compressed projection.
    pub fn rank(&self) -> usize {
        self.blocks()
            .map(|(d, p)| d.dim() * linalg::trace(p).re.round() as usize)
            .sum()
    }

    /// Orthonormal basis of the range, as columns over the truncated basis.
    pub fn range_basis(&self) -> Result<CMat> {
        let n = self.trunc.dim();
        let mut cols: Vec<Vec<(usize, C64)>> = Vec::new();
        for (dual, p) in self.blocks() {
            let d = dual.dim();
            let offset = self.trunc.block_offset(&dual).unwrap();
            let diagonal = (0..d).all(|i| (0..d).all(|j| i == j || p[(i, j)].norm() <= PROJECTION_TOL));
            let vectors: Vec<Vec<C64>> = if diagonal {
                (0..d)
                    .filter(|&k| p[(k, k)].re > 0.5)
                    .map(|k| (0..d).map(|j| if j == k { ONE } else { ZERO }).collect())
                    .collect()
            } else {
                let (vals, vecs) = linalg::hermitian_eigen(p)?;
                (0..d)
                    .filter(|&k| vals[k] > 0.5)
                    .map(|k| (0..d).map(|j| vecs[(j, k)]).collect())
                    .collect()
            };
            // the block acts on the j index of coordinates (i, j)
            for i in 0..d {
                for v in &vectors {
                    cols.push((0..d).map(|j| (offset + i * d + j, v[j])).collect());
                }
            }
        }
        if cols.is_empty() {
            return Err(Error::EmptyRange);
        }
        let mut q = linalg::zeros(n, cols.len());
        for (c, entries) in cols.iter().enumerate() {
            for (r, v) in entries {
                q[(*r, c)] = *v;
            }
        }
        Ok(q)
    }
}

/// Block-diagonal operator `hhat(xi) -> P_xi hhat(xi)`.
pub fn op_from_multiplier(p: &MultiplierProjection) -> TruncatedOperator {
    multiplier_operator(&p.trunc, &p.blocks, format!("Pi[{}]", p.descriptor))
}

/// `F = 2 Pi - I` as an operator.
pub fn op_symmetry(p: &MultiplierProjection) -> TruncatedOperator {
    multiplier_operator(&p.trunc, &p.symmetry_blocks(), format!("F[{}]", p.descriptor))
}

fn multiplier_operator(trunc: &TruncationSpec, blocks: &[CMat], provenance: String) -> TruncatedOperator {
    let n = trunc.dim();
    let mut m = linalg::zeros(n, n);
    for (dual, p) in trunc.duals().iter().zip(blocks) {
        let d = dual.dim();
        let offset = trunc.block_offset(dual).unwrap();
        // c'_(i,j) = sum_k P_{jk} c_(i,k)
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    m[(offset + i * d + j, offset + i * d + k)] = p[(j, k)];
                }
            }
        }
    }
    TruncatedOperator {
        trunc: *trunc,
        matrix: m,
        reach: 0,
        provenance,
    }
}

/// Gram matrix of `M_f` over the truncated basis. The rule must be exact to
/// `bandwidth(f) + 2 trunc.bound`.
pub fn op_multiplication(f: &BandlimitedFunction, trunc: &TruncationSpec, quad: &QuadratureRule) -> Result<TruncatedOperator> {
    if f.group() != trunc.group || quad.group != trunc.group {
        return Err(Error::GroupMismatch {
            expected: trunc.group,
            found: if f.group() != trunc.group { f.group() } else { quad.group },
        });
    }
    let reach = f.effective_bound();
    quad.require(reach + 2 * trunc.bound)?;
    let samples = peter_weyl::sample(f, quad)?;
    let m = gram_from_samples(&samples, quad, trunc, reach)?;
    TruncatedOperator::new(*trunc, m, reach, "M_f")
}

/// `<M_v e_b', e_b>` for sampled values `v` whose Fourier support lies within
/// `reach`; entries further than `reach` apart are set to zero on the product
/// layouts.
pub(crate) fn gram_from_samples(samples: &[C64], quad: &QuadratureRule, trunc: &TruncationSpec, reach: u32) -> Result<CMat> {
    if samples.len() != quad.len() {
        return Err(Error::SampleCount {
            expected: quad.len(),
            found: samples.len(),
        });
    }
    let n = trunc.dim();
    match &quad.layout {
        QuadLayout::Circle { count } => {
            let b = trunc.bound as i64;
            let pmax = (2 * b).min(reach as i64);
            let table = twiddles(*count);
            let w = quad.weights[0];
            // G(p) = sum_j w f_j e^{-i p theta_j}
            let g: Vec<C64> = (-pmax..=pmax)
                .map(|p| {
                    let terms: Vec<C64> = samples
                        .iter()
                        .enumerate()
                        .map(|(j, v)| v * table[((-p) * j as i64).rem_euclid(*count as i64) as usize])
                        .collect();
                    linalg::pairwise_sum(&terms) * w
                })
                .collect();
            Ok(CMat::from_fn(n, n, |r, c| {
                let p = r as i64 - c as i64;
                if p.abs() <= pmax {
                    g[(p + pmax) as usize]
                } else {
                    ZERO
                }
            }))
        }
        QuadLayout::EulerProduct {
            angle_count,
            betas,
            beta_weights,
        } => {
            let pmax = (2 * trunc.bound as i64).min(reach as i64);
            let grid = EulerSpectralGrid::analyse(samples, *angle_count, betas.len(), pmax, pmax);
            let tables = small_d_tables(trunc.bound, betas);
            let basis = basis_enumerate(trunc);
            let rows: Vec<Vec<C64>> = basis
                .par_iter()
                .map(|b| {
                    let (pm, pn) = b.weights();
                    let tl = b.dual.label() as usize;
                    let sd = (b.dual.dim() as f64).sqrt();
                    basis
                        .iter()
                        .map(|b2| {
                            let (qm, qn) = b2.weights();
                            let (p, q) = ((pm - qm) as i64, (pn - qn) as i64);
                            if p.abs() > pmax || q.abs() > pmax || b.dual.label().abs_diff(b2.dual.label()) > reach {
                                return ZERO;
                            }
                            let tl2 = b2.dual.label() as usize;
                            let s = sd * (b2.dual.dim() as f64).sqrt();
                            let mut acc = ZERO;
                            for (k, wk) in beta_weights.iter().enumerate() {
                                let dd = tables[k][tl][(b.row, b.col)] * tables[k][tl2][(b2.row, b2.col)];
                                acc += grid.get(p, k, q) * (wk * dd);
                            }
                            acc * s
                        })
                        .collect()
                })
                .collect();
            Ok(CMat::from_fn(n, n, |r, c| rows[r][c]))
        }
        _ => {
            // Phi^H diag(w f) Phi with Phi_{k b} = e_b(x_k)
            let phi_rows: Vec<Vec<C64>> = quad
                .nodes
                .par_iter()
                .map(|x| crate::group::basis_values(trunc, x))
                .collect::<Result<_>>()?;
            let phi = CMat::from_fn(quad.len(), n, |k, b| phi_rows[k][b]);
            let wphi = CMat::from_fn(quad.len(), n, |k, b| phi_rows[k][b] * (samples[k] * quad.weights[k]));
            Ok(linalg::matmul_adj_left(&phi, &wphi))
        }
    }
}

pub fn op_commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    Ok(TruncatedOperator {
        trunc: a.trunc,
        matrix: linalg::sub(&ab.matrix, &ba.matrix),
        reach: a.reach + b.reach,
        provenance: format!("[{}, {}]", a.provenance, b.provenance),
    })
}

pub fn op_trace(a: &TruncatedOperator) -> C64 {
    linalg::trace(&a.matrix)
}

pub fn op_singular_values(a: &TruncatedOperator) -> Result<Vec<f64>> {
    linalg::singular_values(&a.matrix)
}

fn schatten_from_values(s: &[f64], p: f64) -> f64 {
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0.0;
    }
    // scale out s_max to avoid overflow at large p
    let terms: Vec<f64> = s.iter().map(|v| (v / smax).powf(p)).collect();
    smax * linalg::pairwise_sum_f64(&terms).powf(1.0 / p)
}

/// `(sum s^p)^{1/p}`.
pub fn schatten_norm(a: &TruncatedOperator, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("Schatten exponent {p} < 1")));
    }
    Ok(schatten_from_values(&op_singular_values(a)?, p))
}

/// Number of singular values below `tau_rel * s_max` (`s_max = 1` for the zero matrix).
pub fn kernel_dim_from_values(s: &[f64], tau_rel: f64) -> usize {
    let smax = s.first().copied().unwrap_or(0.0);
    let smax = if smax > 0.0 { smax } else { 1.0 };
    s.iter().filter(|v| **v < tau_rel * smax).count()
}

pub fn numerical_kernel_dim(a: &CMat, tau_rel: f64) -> Result<usize> {
    if !(tau_rel > 0.0 && tau_rel < 1.0) {
        return Err(Error::InvalidParameter(format!("tau_rel {tau_rel} outside (0, 1)")));
    }
    let s = linalg::singular_values(a)?;
    // a square matrix always has as many singular values as columns
    Ok(kernel_dim_from_values(&s, tau_rel) + a.ncols().saturating_sub(s.len()))
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SummabilityReport {
    pub p: f64,
    pub singular_values: Vec<f64>,
    /// `sum_{nu <= k} s_nu^p` for each `k`.
    pub partial_sums: Vec<f64>,
    /// Least-squares `e` in `s_nu ~ nu^{-e}` over values above the zero threshold;
    /// absent when fewer than two such values exist.
    pub decay_exponent_fit: Option<f64>,
    pub numerical_rank: usize,
    /// Rank at most twice the reach: a bound a band operator keeps as the
    /// truncation grows, so the rank does not scale with the dimension.
    pub finite_rank_flag: bool,
}

pub fn summability_report(a: &TruncatedOperator, p: f64) -> Result<SummabilityReport> {
    summability_from_values(op_singular_values(a)?, p, a.reach())
}

pub fn summability_from_values(s: Vec<f64>, p: f64, reach: u32) -> Result<SummabilityReport> {
    let mut partial = Vec::with_capacity(s.len());
    let mut acc = 0.0;
    for v in &s {
        acc += v.powf(p);
        partial.push(acc);
    }
    let tail: Vec<(f64, f64)> = s
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > ZERO_SINGULAR)
        .map(|(i, v)| (((i + 1) as f64).ln(), v.ln()))
        .collect();
    let rank = tail.len();
    Ok(SummabilityReport {
        p,
        decay_exponent_fit: least_squares_slope(&tail).map(|slope| -slope),
        partial_sums: partial,
        singular_values: s,
        numerical_rank: rank,
        finite_rank_flag: rank <= 2 * reach as usize,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// `Pi M_f Pi` restricted to the range of `Pi`.
#[derive(Clone, Debug)]
pub struct ToeplitzOperator {
    pub trunc: TruncationSpec,
    /// Orthonormal range basis, columns over the full truncated basis.
    pub range: CMat,
    /// `range^H M_f range`.
    pub matrix: CMat,
    pub reach: u32,
}

impl ToeplitzOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn toeplitz_build(
    f: &BandlimitedFunction,
    p: &MultiplierProjection,
    trunc: &TruncationSpec,
    quad: &QuadratureRule,
) -> Result<ToeplitzOperator> {
    if p.trunc != *trunc {
        return Err(Error::DimensionMismatch("projection and operator truncations differ".into()));
    }
    let mf = op_multiplication(f, trunc, quad)?;
    toeplitz_from_operator(&mf, p)
}

pub fn toeplitz_from_operator(mf: &TruncatedOperator, p: &MultiplierProjection) -> Result<ToeplitzOperator> {
    let q = p.range_basis()?;
    let mq = linalg::matmul(mf.matrix(), &q);
    Ok(ToeplitzOperator {
        trunc: mf.trunc,
        matrix: linalg::matmul_adj_left(&q, &mq),
        range: q,
        reach: mf.reach,
    })
}

/// `index,value` rows with a header.
pub fn singular_values_csv(s: &[f64]) -> String {
    let mut out = String::from("index,value\n");
    for (i, v) in s.iter().enumerate() {
        out.push_str(&format!("{},{:e}\n", i + 1, v));
    }
    out
}
