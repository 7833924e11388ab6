//! Fredholm index of Toeplitz operators `Pi M_f Pi` by three independent routes:
//! the winding number (circle only), the Connes commutator trace
//! `-Tr f^{-1} [Pi, f] [Pi, f^{-1}] ... [Pi, f]`, and edge-filtered kernel counting.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{BandlimitedFunction, GroupTag, QuadratureRule, TruncationSpec};
use crate::linalg::{self, CMat, C64};
use crate::operator::{
    self, op_commutator, op_from_multiplier, op_multiplication, op_trace, summability_report, MultiplierProjection,
    SummabilityReport, ToeplitzOperator, TruncatedOperator, TAU_REL,
};
use crate::peter_weyl::{self, default_quadrature, Inversion, DELTA_INV};
use crate::symbol::{trace_quadrature, trace_via_symbol};

/// Residual above which a Connes value is flagged as non-integer.
pub const NON_INTEGER_TOL: f64 = 1e-3;

/// Edge-mass fraction above which a kernel vector is a truncation artifact.
pub const SPURIOUS_MASS: f64 = 0.5;

/// Edge masses in this band make the filter inconclusive.
pub const AMBIGUOUS_BAND: (f64, f64) = (0.3, 0.7);

/// Phase increments at or above this abort the winding computation.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

/// Unwrapped winding number of a nonvanishing circle function on a grid of
/// `samples` points (default `max(64, 8 * bandwidth)`).
pub fn winding_number(f: &BandlimitedFunction, samples: Option<usize>, delta_inv: f64) -> Result<i64> {
    if f.group() != GroupTag::Circle {
        return Err(Error::GroupMismatch {
            expected: GroupTag::Circle,
            found: f.group(),
        });
    }
    let n = samples.unwrap_or((8 * f.bound() as usize).max(64));
    if n < 2 {
        return Err(Error::InvalidParameter("winding grid needs at least two points".into()));
    }
    let grid = crate::circle::circle_quadrature_with_exactness(n as u32 - 1);
    let v = peter_weyl::sample(f, &grid)?;
    let min_modulus = v.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(min_modulus >= delta_inv) {
        return Err(Error::NotInvertible {
            min_modulus,
            threshold: delta_inv,
        });
    }
    let mut total = 0.0;
    for k in 0..n {
        let next = (k + 1) % n;
        let step = (v[next] / v[k]).arg();
        if step.abs() >= MAX_PHASE_STEP {
            return Err(Error::PhaseJump { jump: step, index: k, next });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Commutator count used when none is given: `n + 2` for odd `dim G = n`, `n + 1` for even.
pub fn default_commutator_count(group: GroupTag) -> usize {
    let n = group.dimension();
    if n % 2 == 1 {
        n + 2
    } else {
        n + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceRoute {
    Direct,
    ViaSymbol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Winding,
    Connes { m: usize, route: TraceRoute },
    Svd,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Winding => "winding",
            Method::Connes { .. } => "connes",
            Method::Svd => "svd",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndexOptions {
    pub delta_inv: f64,
    pub tau_rel: f64,
    /// Width of the truncation-edge band; defaults to the bandwidth of `f`.
    pub edge_width: Option<u32>,
    /// Bandwidth of the approximate inverse; defaults to `max(4 bandwidth(f), bound)`.
    pub inverse_bound: Option<u32>,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions {
            delta_inv: DELTA_INV,
            tau_rel: TAU_REL,
            edge_width: None,
            inverse_bound: None,
        }
    }
}

/// Operators shared by the Connes and kernel methods for one `(f, Pi, B)`.
pub struct IndexContext {
    pub trunc: TruncationSpec,
    pub f: BandlimitedFunction,
    pub projection: MultiplierProjection,
    pub inversion: Inversion,
    pub pi: TruncatedOperator,
    pub mf: TruncatedOperator,
    pub mf_inv: TruncatedOperator,
}

impl IndexContext {
    pub fn new(f: &BandlimitedFunction, p: &MultiplierProjection, trunc: &TruncationSpec, opts: &IndexOptions) -> Result<Self> {
        if f.group() != trunc.group {
            return Err(Error::GroupMismatch {
                expected: trunc.group,
                found: f.group(),
            });
        }
        if p.trunc() != trunc {
            return Err(Error::DimensionMismatch("projection and truncation differ".into()));
        }
        let bw = f.effective_bound();
        let out = opts.inverse_bound.unwrap_or((4 * bw).max(trunc.bound));
        let inversion = peter_weyl::pointwise_invert(f, Some(out), None, opts.delta_inv)?;
        let quad = default_quadrature(trunc.group, bw.max(out) + 2 * trunc.bound);
        Self::with_quadrature(f, p, trunc, inversion, &quad)
    }

    pub fn with_quadrature(
        f: &BandlimitedFunction,
        p: &MultiplierProjection,
        trunc: &TruncationSpec,
        inversion: Inversion,
        quad: &QuadratureRule,
    ) -> Result<Self> {
        let mf = op_multiplication(f, trunc, quad)?.with_provenance("M_f");
        let mf_inv = op_multiplication(&inversion.function, trunc, quad)?.with_provenance("M_{1/f}");
        Ok(IndexContext {
            trunc: *trunc,
            f: f.clone(),
            projection: p.clone(),
            inversion,
            pi: op_from_multiplier(p),
            mf,
            mf_inv,
        })
    }

    /// `M_{f^{-1}} prod_{j=1..m} [Pi, M_{g_j}]` with `g_j = f` for odd `j`, `f^{-1}` for even `j`.
    pub fn build_i(&self, m: usize) -> Result<TruncatedOperator> {
        if m == 0 || m % 2 == 0 {
            return Err(Error::EvenFactorCount(m));
        }
        let need = (m as u32 + 1) * self.f.effective_bound();
        if need > self.trunc.bound {
            return Err(Error::MarginViolation {
                label: self.trunc.bound as i64,
                bound: self.trunc.bound,
                reach: need,
            });
        }
        let c_f = op_commutator(&self.pi, &self.mf)?;
        let c_inv = op_commutator(&self.pi, &self.mf_inv)?;
        let mut acc = self.mf_inv.compose(&c_f)?;
        for j in 2..=m {
            acc = acc.compose(if j % 2 == 0 { &c_inv } else { &c_f })?;
        }
        Ok(acc.with_provenance(format!("I[m={m}]")))
    }

    pub fn connes_index(&self, m: usize, route: TraceRoute) -> Result<ConnesValue> {
        let op = self.build_i(m)?;
        let tr = match route {
            TraceRoute::Direct => op_trace(&op),
            TraceRoute::ViaSymbol => trace_via_symbol(&op, &trace_quadrature(&self.trunc), &self.trunc)?,
        };
        // [Pi, f^{-1}] = -f^{-1} [Pi, f] f^{-1}, so I_m = (-1)^{(m-1)/2} (f^{-1} [Pi, f])^m
        let sign = if (m / 2) % 2 == 0 { -1.0 } else { 1.0 };
        Ok(ConnesValue::from_raw(tr * sign))
    }

    pub fn toeplitz(&self) -> Result<ToeplitzOperator> {
        operator::toeplitz_from_operator(&self.mf, &self.projection)
    }

    pub fn svd_index(&self, tau_rel: f64, edge_width: Option<u32>) -> Result<SvdIndex> {
        let toe = self.toeplitz()?;
        let w = edge_width.unwrap_or(self.f.effective_bound());
        svd_index_of(&toe, tau_rel, w)
    }

    /// `[Pi, M_f]`, the commutator whose summability underlies the Connes formula.
    pub fn commutator(&self) -> Result<TruncatedOperator> {
        op_commutator(&self.pi, &self.mf)
    }
}

/// `-Tr I` with its nearest integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnesValue {
    pub raw: C64,
    pub rounded: i64,
    /// `|raw - rounded|`.
    pub residual: f64,
}

impl ConnesValue {
    fn from_raw(raw: C64) -> Self {
        let rounded = raw.re.round() as i64;
        ConnesValue {
            raw,
            rounded,
            residual: (raw - rounded as f64).norm(),
        }
    }

    pub fn value(&self) -> f64 {
        self.raw.re
    }

    pub fn non_integer(&self) -> bool {
        self.residual > NON_INTEGER_TOL
    }
}

pub fn build_i(
    f: &BandlimitedFunction,
    p: &MultiplierProjection,
    trunc: &TruncationSpec,
    m: usize,
    opts: &IndexOptions,
) -> Result<TruncatedOperator> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::EvenFactorCount(m));
    }
    IndexContext::new(f, p, trunc, opts)?.build_i(m)
}

pub fn connes_index(
    f: &BandlimitedFunction,
    p: &MultiplierProjection,
    trunc: &TruncationSpec,
    m: usize,
    route: TraceRoute,
    opts: &IndexOptions,
) -> Result<ConnesValue> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::EvenFactorCount(m));
    }
    IndexContext::new(f, p, trunc, opts)?.connes_index(m, route)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SvdIndex {
    pub kernel_raw: usize,
    pub cokernel_raw: usize,
    pub kernel: usize,
    pub cokernel: usize,
    pub index: i64,
    pub edge_width: u32,
    /// Edge-mass fractions of the kernel and cokernel directions, in the
    /// basis that diagonalises the edge mass on each subspace.
    pub kernel_edge_mass: Vec<f64>,
    pub cokernel_edge_mass: Vec<f64>,
}

pub fn svd_index(
    f: &BandlimitedFunction,
    p: &MultiplierProjection,
    trunc: &TruncationSpec,
    opts: &IndexOptions,
) -> Result<SvdIndex> {
    // only M_f is needed; skip the inverse
    let bw = f.effective_bound();
    let quad = default_quadrature(trunc.group, bw + 2 * trunc.bound);
    let toe = operator::toeplitz_build(f, p, trunc, &quad)?;
    svd_index_of(&toe, opts.tau_rel, opts.edge_width.unwrap_or(bw))
}

/// Kernel counting on a Toeplitz compression with the edge filter of width `w`.
pub fn svd_index_of(toe: &ToeplitzOperator, tau_rel: f64, w: u32) -> Result<SvdIndex> {
    if !(tau_rel > 0.0 && tau_rel < 1.0) {
        return Err(Error::InvalidParameter(format!("tau_rel {tau_rel} outside (0, 1)")));
    }
    let svd = linalg::svd(&toe.matrix)?;
    let smax = svd.s.first().copied().filter(|v| *v > 0.0).unwrap_or(1.0);
    let small: Vec<usize> = (0..svd.s.len()).filter(|&k| svd.s[k] < tau_rel * smax).collect();
    let b = toe.trunc.bound;
    let edge: Vec<bool> = crate::group::basis_enumerate(&toe.trunc)
        .iter()
        .map(|bi| bi.dual.degree() + w > b)
        .collect();
    let kernel_edge_mass = edge_masses(&toe.range, &svd.v, &small, &edge)?;
    let cokernel_edge_mass = edge_masses(&toe.range, &svd.u, &small, &edge)?;
    for m in kernel_edge_mass.iter().chain(&cokernel_edge_mass) {
        if *m >= AMBIGUOUS_BAND.0 && *m <= AMBIGUOUS_BAND.1 {
            return Err(Error::AmbiguousFilter { edge_mass: *m });
        }
    }
    let kernel = kernel_edge_mass.iter().filter(|m| **m <= SPURIOUS_MASS).count();
    let cokernel = cokernel_edge_mass.iter().filter(|m| **m <= SPURIOUS_MASS).count();
    Ok(SvdIndex {
        kernel_raw: small.len(),
        cokernel_raw: small.len(),
        kernel,
        cokernel,
        index: kernel as i64 - cokernel as i64,
        edge_width: w,
        kernel_edge_mass,
        cokernel_edge_mass,
    })
}

fn edge_masses(range: &CMat, vecs: &CMat, cols: &[usize], edge: &[bool]) -> Result<Vec<f64>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    // lift the selected directions to the full basis: K = Q V_sel
    let sel = CMat::from_fn(vecs.nrows(), cols.len(), |i, j| vecs[(i, cols[j])]);
    let k = linalg::matmul(range, &sel);
    let e = CMat::from_fn(k.nrows(), k.ncols(), |i, j| if edge[i] { k[(i, j)] } else { linalg::ZERO });
    // the edge mass is a quadratic form on the subspace; its eigenvalues are
    // the masses of the best-separated orthonormal directions
    let gram = linalg::matmul_adj_left(&k, &e);
    let herm = CMat::from_fn(gram.nrows(), gram.ncols(), |i, j| (gram[(i, j)] + gram[(j, i)].conj()) * 0.5);
    let (vals, _) = linalg::hermitian_eigen(&herm)?;
    Ok(vals.into_iter().map(|v| v.clamp(0.0, 1.0)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodResult {
    pub name: String,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounded: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub symbol: String,
    pub projection: String,
    pub group: GroupTag,
    pub bandwidth: u32,
    pub methods: Vec<MethodResult>,
    pub summability: Option<SummabilityReport>,
    pub inversion_residual: Option<f64>,
    pub aliasing_warning: bool,
    pub agreement: bool,
}

impl IndexReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation")
    }

    pub fn csv_header() -> &'static str {
        "symbol,projection,group,bandwidth,methods,agreement"
    }

    /// One row: per-method `name=rounded` joined by `;`.
    pub fn csv_row(&self) -> String {
        let methods: Vec<String> = self
            .methods
            .iter()
            .map(|m| match m.rounded {
                Some(r) => format!("{}{}={}", m.name, method_suffix(&m.params), r),
                None => format!("{}{}=error", m.name, method_suffix(&m.params)),
            })
            .collect();
        format!(
            "{},{},{},{},{},{}",
            csv_field(&self.symbol),
            csv_field(&self.projection),
            self.group,
            self.bandwidth,
            csv_field(&methods.join(";")),
            self.agreement
        )
    }

    pub fn rounded_values(&self) -> Vec<i64> {
        self.methods.iter().filter_map(|m| m.rounded).collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn method_suffix(params: &serde_json::Value) -> String {
    match (params.get("m"), params.get("route")) {
        (Some(m), Some(r)) => format!("[m={},{}]", m, r.as_str().unwrap_or("")),
        _ => String::new(),
    }
}

fn failed(name: &str, params: serde_json::Value, e: &Error) -> MethodResult {
    MethodResult {
        name: name.into(),
        params,
        raw: None,
        rounded: None,
        residual: None,
        warning: None,
        error: Some(e.to_string()),
    }
}

/// Runs the requested methods, attaches the summability of `[Pi, M_f]` at
/// `p = dim G + 2` and the inversion residual. Per-method failures are recorded
/// in the report; the agreement flag requires every method to succeed with a
/// common rounded value.
pub fn index_report(
    f: &BandlimitedFunction,
    symbol: &str,
    p: &MultiplierProjection,
    trunc: &TruncationSpec,
    methods: &[Method],
    opts: &IndexOptions,
) -> IndexReport {
    let ctx = IndexContext::new(f, p, trunc, opts);
    let mut results = Vec::new();
    for method in methods {
        let r = match method {
            Method::Winding => {
                let params = serde_json::json!({});
                match winding_number(f, None, opts.delta_inv) {
                    Ok(wn) => MethodResult {
                        name: "winding".into(),
                        params: serde_json::json!({ "winding_number": wn }),
                        raw: Some([-wn as f64, 0.0]),
                        rounded: Some(-wn),
                        residual: Some(0.0),
                        warning: None,
                        error: None,
                    },
                    Err(e) => failed("winding", params, &e),
                }
            }
            Method::Connes { m, route } => {
                let params = serde_json::json!({ "m": m, "route": route });
                match ctx.as_ref().map_err(Clone::clone).and_then(|c| c.connes_index(*m, *route)) {
                    Ok(v) => MethodResult {
                        name: "connes".into(),
                        params,
                        raw: Some([v.raw.re, v.raw.im]),
                        rounded: Some(v.rounded),
                        residual: Some(v.residual),
                        warning: v.non_integer().then(|| format!("non-integer result (residual {:.3e})", v.residual)),
                        error: None,
                    },
                    Err(e) => failed("connes", params, &e),
                }
            }
            Method::Svd => {
                let w = opts.edge_width.unwrap_or(f.effective_bound());
                let params = serde_json::json!({ "tau_rel": opts.tau_rel, "edge_width": w });
                match ctx.as_ref().map_err(Clone::clone).and_then(|c| c.svd_index(opts.tau_rel, Some(w))) {
                    Ok(s) => MethodResult {
                        name: "svd".into(),
                        params: serde_json::json!({
                            "tau_rel": opts.tau_rel,
                            "edge_width": w,
                            "kernel_raw": s.kernel_raw,
                            "cokernel_raw": s.cokernel_raw,
                            "kernel": s.kernel,
                            "cokernel": s.cokernel,
                        }),
                        raw: Some([s.index as f64, 0.0]),
                        rounded: Some(s.index),
                        residual: Some(0.0),
                        warning: None,
                        error: None,
                    },
                    Err(e) => failed("svd", params, &e),
                }
            }
        };
        results.push(r);
    }
    let summability = ctx
        .as_ref()
        .ok()
        .and_then(|c| c.commutator().ok())
        .and_then(|c| summability_report(&c, (trunc.group.dimension() + 2) as f64).ok());
    let (inversion_residual, aliasing_warning) = match &ctx {
        Ok(c) => (Some(c.inversion.residual), c.inversion.aliasing_warning),
        Err(_) => (None, false),
    };
    let rounded: Vec<i64> = results.iter().filter_map(|m| m.rounded).collect();
    let agreement = !results.is_empty()
        && rounded.len() == results.len()
        && rounded.windows(2).all(|w| w[0] == w[1]);
    IndexReport {
        symbol: symbol.into(),
        projection: p.descriptor().into(),
        group: trunc.group,
        bandwidth: trunc.bound,
        methods: results,
        summability,
        inversion_residual,
        aliasing_warning,
        agreement,
    }
}

/// The full method list for a group: winding (circle only), Connes at `m = 1`
/// and the default `m` over both trace routes, and kernel counting.
pub fn all_methods(group: GroupTag) -> Vec<Method> {
    let mut out = Vec::new();
    if group == GroupTag::Circle {
        out.push(Method::Winding);
    }
    let mut ms = vec![1, default_commutator_count(group)];
    ms.dedup();
    for m in ms {
        for route in [TraceRoute::Direct, TraceRoute::ViaSymbol] {
            out.push(Method::Connes { m, route });
        }
    }
    out.push(Method::Svd);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{DualIndex, SpectrumSide};
    use crate::linalg::ONE;

    fn circle_fn(terms: &[(i32, f64)]) -> BandlimitedFunction {
        let b = terms.iter().map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0);
        let mut s = SpectrumSide::zeros(TruncationSpec::circle(b));
        for (n, c) in terms {
            s.set_entry(&DualIndex::circle(*n), 0, 0, C64::new(*c, 0.0)).unwrap();
        }
        BandlimitedFunction::new(s)
    }

    #[test]
    fn winding_examples() {
        for k in -3..=3 {
            assert_eq!(winding_number(&circle_fn(&[(k, 1.0)]), None, DELTA_INV).unwrap(), k as i64);
        }
        assert_eq!(winding_number(&circle_fn(&[(0, 3.0), (1, 1.0)]), None, DELTA_INV).unwrap(), 0);
        assert!(matches!(
            winding_number(&circle_fn(&[(3, 1.0)]), Some(8), DELTA_INV),
            Err(Error::PhaseJump { .. })
        ));
        assert!(matches!(
            winding_number(&circle_fn(&[(0, 1.0), (1, 1.0)]), Some(64), DELTA_INV),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn default_counts() {
        assert_eq!(default_commutator_count(GroupTag::Circle), 3);
        assert_eq!(default_commutator_count(GroupTag::Su2), 5);
    }

    #[test]
    fn even_counts_are_rejected() {
        let t = TruncationSpec::circle(8);
        let p = MultiplierProjection::hardy(t);
        let f = circle_fn(&[(1, 1.0)]);
        assert_eq!(build_i(&f, &p, &t, 2, &IndexOptions::default()).unwrap_err(), Error::EvenFactorCount(2));
        assert_eq!(build_i(&f, &p, &t, 0, &IndexOptions::default()).unwrap_err(), Error::EvenFactorCount(0));
    }

    #[test]
    fn constants_give_zero_operator() {
        let t = TruncationSpec::circle(8);
        let p = MultiplierProjection::hardy(t);
        let f = BandlimitedFunction::constant(GroupTag::Circle, C64::new(2.0, 0.0));
        let i = build_i(&f, &p, &t, 3, &IndexOptions::default()).unwrap();
        assert!(linalg::max_abs(i.matrix()) < 1e-15);
        let v = connes_index(&f, &p, &t, 3, TraceRoute::Direct, &IndexOptions::default()).unwrap();
        assert_eq!(v.rounded, 0);
        assert!(v.residual < 1e-15);
    }

    #[test]
    fn single_character_trace() {
        let t = TruncationSpec::circle(32);
        let p = MultiplierProjection::hardy(t);
        let f = circle_fn(&[(1, 1.0)]);
        for (m, want) in [(1, 1.0), (3, -1.0), (5, 1.0)] {
            let i = build_i(&f, &p, &t, m, &IndexOptions::default()).unwrap();
            assert!((op_trace(&i) - want).norm() < 1e-10, "m={m}");
        }
    }

    #[test]
    fn shift_kernels_sit_where_expected() {
        let t = TruncationSpec::circle(32);
        let p = MultiplierProjection::hardy(t);
        for k in 1..=3 {
            let s = svd_index(&circle_fn(&[(k, 1.0)]), &p, &t, &IndexOptions::default()).unwrap();
            assert_eq!((s.kernel_raw, s.cokernel_raw), (k as usize, k as usize));
            assert_eq!((s.kernel, s.cokernel), (0, k as usize));
            assert_eq!(s.index, -(k as i64));
        }
    }

    #[test]
    fn report_for_single_character() {
        let t = TruncationSpec::circle(16);
        let p = MultiplierProjection::hardy(t);
        let f = circle_fn(&[(1, 1.0)]);
        let r = index_report(&f, "circle:char:k=1", &p, &t, &all_methods(GroupTag::Circle), &IndexOptions::default());
        assert!(r.agreement);
        assert!(r.rounded_values().iter().all(|v| *v == -1));
        let s = r.summability.unwrap();
        assert!(s.finite_rank_flag);
        assert_eq!(s.numerical_rank, 1);
    }

    #[test]
    fn report_for_unit_constant() {
        let t = TruncationSpec::circle(8);
        let p = MultiplierProjection::hardy(t);
        let f = BandlimitedFunction::constant(GroupTag::Circle, ONE);
        let r = index_report(&f, "circle:const:c=1", &p, &t, &all_methods(GroupTag::Circle), &IndexOptions::default());
        assert!(r.agreement);
        assert!(r.rounded_values().iter().all(|v| *v == 0));
        assert_eq!(r.summability.unwrap().numerical_rank, 0);
    }

    #[test]
    fn scale_invariance() {
        let t = TruncationSpec::circle(16);
        let p = MultiplierProjection::hardy(t);
        let f = circle_fn(&[(2, 3.0), (3, 1.0)]);
        let g = f.scaled(C64::new(5.0, 0.0));
        let methods = all_methods(GroupTag::Circle);
        let a = index_report(&f, "f", &p, &t, &methods, &IndexOptions::default());
        let b = index_report(&g, "5f", &p, &t, &methods, &IndexOptions::default());
        assert_eq!(a.rounded_values(), b.rounded_values());
        assert!(a.rounded_values().iter().all(|v| *v == -2));
    }

    #[test]
    fn report_records_failures() {
        let t = TruncationSpec::circle(8);
        let p = MultiplierProjection::hardy(t);
        let f = circle_fn(&[(0, 1.0), (1, 1.0)]);
        let r = index_report(&f, "bad", &p, &t, &all_methods(GroupTag::Circle), &IndexOptions::default());
        assert!(!r.agreement);
        assert!(r.methods.iter().all(|m| m.error.is_some()));
        assert!(r.summability.is_none());
    }
}
