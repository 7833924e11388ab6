//! Group-independent vocabulary shared by the circle and SU(2) backends:
//! dual labels, truncations, the ordered Peter-Weyl basis, quadrature rules
//! and band-limited functions stored by their matrix Fourier coefficients.
//!
//! Half-integer SU(2) labels are stored doubled (`2l`), so every label and
//! every bandwidth in this crate is an integer. "Label units" below means the
//! integer `n` on the circle and `2l` on SU(2).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::circle::{self, CirclePoint};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::su2::{self, Su2Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    Circle,
    Su2,
}

impl GroupTag {
    /// Manifold dimension of the group.
    pub fn dimension(self) -> usize {
        match self {
            GroupTag::Circle => 1,
            GroupTag::Su2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupTag::Circle => "circle",
            GroupTag::Su2 => "su2",
        }
    }
}

impl std::str::FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(GroupTag::Circle),
            "su2" => Ok(GroupTag::Su2),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label of an irreducible unitary representation.
///
/// On the circle the label is the character index `n`; on SU(2) it is `2l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualIndex {
    group: GroupTag,
    label: i32,
}

impl DualIndex {
    pub fn circle(n: i32) -> Self {
        DualIndex {
            group: GroupTag::Circle,
            label: n,
        }
    }

    /// Spin `two_l / 2` representation of SU(2).
    pub fn su2(two_l: u32) -> Self {
        DualIndex {
            group: GroupTag::Su2,
            label: two_l as i32,
        }
    }

    pub fn new(group: GroupTag, label: i32) -> Result<Self> {
        if group == GroupTag::Su2 && label < 0 {
            return Err(Error::InvalidLabel {
                group,
                label: label as i64,
            });
        }
        Ok(DualIndex { group, label })
    }

    pub fn group(&self) -> GroupTag {
        self.group
    }

    pub fn label(&self) -> i32 {
        self.label
    }

    /// Representation dimension `d_xi`.
    pub fn dim(&self) -> usize {
        match self.group {
            GroupTag::Circle => 1,
            GroupTag::Su2 => self.label as usize + 1,
        }
    }

    /// Distance from the trivial representation in label units.
    pub fn degree(&self) -> u32 {
        self.label.unsigned_abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.label == 0
    }

    /// `n` on the circle, `l` on SU(2).
    pub fn spin(&self) -> f64 {
        match self.group {
            GroupTag::Circle => self.label as f64,
            GroupTag::Su2 => self.label as f64 / 2.0,
        }
    }

    /// Eigenvalue of minus the Laplacian (Casimir) on the representation:
    /// `n^2` on the circle and `l(l+1)` on SU(2).
    pub fn casimir(&self) -> f64 {
        let s = self.spin();
        match self.group {
            GroupTag::Circle => s * s,
            GroupTag::Su2 => s * (s + 1.0),
        }
    }
}

impl fmt::Display for DualIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            GroupTag::Circle => write!(f, "n={}", self.label),
            GroupTag::Su2 if self.label % 2 == 0 => write!(f, "l={}", self.label / 2),
            GroupTag::Su2 => write!(f, "l={}/2", self.label),
        }
    }
}

/// Finite truncation of the unitary dual: `|n| <= B` on the circle, or
/// `0 <= 2l <= bound` on SU(2). The bound is in label units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub group: GroupTag,
    pub bound: u32,
}

impl TruncationSpec {
    pub fn new(group: GroupTag, bound: u32) -> Self {
        TruncationSpec { group, bound }
    }

    pub fn circle(b: u32) -> Self {
        Self::new(GroupTag::Circle, b)
    }

    /// SU(2) truncation at spin `two_b / 2`.
    pub fn su2(two_b: u32) -> Self {
        Self::new(GroupTag::Su2, two_b)
    }

    /// SU(2) truncation from a spin value, which must be a nonnegative half-integer.
    pub fn su2_spin(b: f64) -> Result<Self> {
        let two = 2.0 * b;
        if !(two >= 0.0) || (two - two.round()).abs() > 1e-12 {
            return Err(Error::InvalidTruncation(format!(
                "SU(2) bandwidth {b} is not a nonnegative half-integer"
            )));
        }
        Ok(Self::su2(two.round() as u32))
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        Self::new(self.group, bound)
    }

    /// Bandwidth in natural units (`B` on the circle, spin on SU(2)).
    pub fn bandwidth(&self) -> f64 {
        match self.group {
            GroupTag::Circle => self.bound as f64,
            GroupTag::Su2 => self.bound as f64 / 2.0,
        }
    }

    /// Duals in ascending label order.
    pub fn duals(&self) -> Vec<DualIndex> {
        match self.group {
            GroupTag::Circle => {
                let b = self.bound as i32;
                (-b..=b).map(DualIndex::circle).collect()
            }
            GroupTag::Su2 => (0..=self.bound).map(DualIndex::su2).collect(),
        }
    }

    pub fn dual_count(&self) -> usize {
        match self.group {
            GroupTag::Circle => 2 * self.bound as usize + 1,
            GroupTag::Su2 => self.bound as usize + 1,
        }
    }

    pub fn contains(&self, dual: &DualIndex) -> bool {
        dual.group == self.group && dual.degree() <= self.bound
    }

    /// Position of a dual in [`TruncationSpec::duals`].
    pub fn dual_position(&self, dual: &DualIndex) -> Option<usize> {
        if !self.contains(dual) {
            return None;
        }
        Some(match self.group {
            GroupTag::Circle => (dual.label + self.bound as i32) as usize,
            GroupTag::Su2 => dual.label as usize,
        })
    }

    /// Length of the basis, `sum d_xi^2`.
    pub fn dim(&self) -> usize {
        match self.group {
            GroupTag::Circle => 2 * self.bound as usize + 1,
            GroupTag::Su2 => {
                let n = self.bound as usize + 1;
                n * (n + 1) * (2 * n + 1) / 6
            }
        }
    }

    /// Basis position of the first element of a dual block.
    pub fn block_offset(&self, dual: &DualIndex) -> Option<usize> {
        let p = self.dual_position(dual)?;
        Some(match self.group {
            GroupTag::Circle => p,
            GroupTag::Su2 => p * (p + 1) * (2 * p + 1) / 6,
        })
    }

    pub fn basis_position(&self, index: &BasisIndex) -> Option<usize> {
        let d = index.dual.dim();
        if index.row >= d || index.col >= d {
            return None;
        }
        Some(self.block_offset(&index.dual)? + index.row * d + index.col)
    }
}

/// Element of the ordered Peter-Weyl basis: the function `sqrt(d) xi_{row,col}`.
///
/// Rows and columns run over `m = -l..l` ascending, stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub dual: DualIndex,
    pub row: usize,
    pub col: usize,
}

impl BasisIndex {
    /// Doubled magnetic quantum numbers `(2m_row, 2m_col)`; `(n, n)` on the circle.
    pub fn weights(&self) -> (i32, i32) {
        match self.dual.group {
            GroupTag::Circle => (self.dual.label, self.dual.label),
            GroupTag::Su2 => {
                let tl = self.dual.label;
                (2 * self.row as i32 - tl, 2 * self.col as i32 - tl)
            }
        }
    }
}

/// Ascending dual label, then row-major within each block.
pub fn basis_enumerate(trunc: &TruncationSpec) -> Vec<BasisIndex> {
    let mut out = Vec::with_capacity(trunc.dim());
    for dual in trunc.duals() {
        let d = dual.dim();
        for row in 0..d {
            for col in 0..d {
                out.push(BasisIndex { dual, row, col });
            }
        }
    }
    out
}

/// A point of the group in its native coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupPoint {
    Circle(CirclePoint),
    Su2(Su2Element),
}

impl GroupPoint {
    pub fn group(&self) -> GroupTag {
        match self {
            GroupPoint::Circle(_) => GroupTag::Circle,
            GroupPoint::Su2(_) => GroupTag::Su2,
        }
    }

    pub fn identity(group: GroupTag) -> Self {
        match group {
            GroupTag::Circle => GroupPoint::Circle(CirclePoint::new(0.0)),
            GroupTag::Su2 => GroupPoint::Su2(Su2Element::identity()),
        }
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &GroupPoint) -> Result<GroupPoint> {
        match (self, other) {
            (GroupPoint::Circle(a), GroupPoint::Circle(b)) => {
                Ok(GroupPoint::Circle(CirclePoint::new(a.theta() + b.theta())))
            }
            (GroupPoint::Su2(a), GroupPoint::Su2(b)) => Ok(GroupPoint::Su2(su2::su2_multiply(a, b))),
            _ => Err(Error::GroupMismatch {
                expected: self.group(),
                found: other.group(),
            }),
        }
    }

    pub fn inverse(&self) -> GroupPoint {
        match self {
            GroupPoint::Circle(a) => GroupPoint::Circle(CirclePoint::new(-a.theta())),
            GroupPoint::Su2(a) => GroupPoint::Su2(a.inverse()),
        }
    }

    /// Chart coordinates for reports: `[theta]` or `[x1, x2, x3, x4]`.
    pub fn chart_coords(&self) -> Vec<f64> {
        match self {
            GroupPoint::Circle(p) => vec![p.theta()],
            GroupPoint::Su2(g) => g.quaternion().to_vec(),
        }
    }
}

/// Representation matrix `xi(x)` for one dual.
pub fn rep_matrix(dual: &DualIndex, x: &GroupPoint) -> Result<CMat> {
    match (dual.group(), x) {
        (GroupTag::Circle, GroupPoint::Circle(p)) => {
            let v = circle::circle_rep_eval(dual.label(), p.theta());
            Ok(CMat::from_fn(1, 1, |_, _| v))
        }
        (GroupTag::Su2, GroupPoint::Su2(g)) => Ok(su2::rep_matrix(dual.label() as u32, g)),
        (expected, p) => Err(Error::GroupMismatch {
            expected,
            found: p.group(),
        }),
    }
}

/// Representation matrices for every dual of `trunc`, in dual order.
pub fn rep_matrices(trunc: &TruncationSpec, x: &GroupPoint) -> Result<Vec<CMat>> {
    trunc.duals().iter().map(|d| rep_matrix(d, x)).collect()
}

/// Values of the orthonormal basis functions `sqrt(d) xi_ij(x)` in basis order.
pub fn basis_values(trunc: &TruncationSpec, x: &GroupPoint) -> Result<Vec<C64>> {
    let reps = rep_matrices(trunc, x)?;
    let mut out = Vec::with_capacity(trunc.dim());
    for (dual, r) in trunc.duals().iter().zip(&reps) {
        let d = dual.dim();
        let s = (d as f64).sqrt();
        for i in 0..d {
            for j in 0..d {
                out.push(r[(i, j)] * s);
            }
        }
    }
    Ok(out)
}

/// Node layout of a quadrature rule; product layouts admit separable transforms.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadLayout {
    /// `count` equispaced circle nodes.
    Circle { count: usize },
    /// SU(2) Euler product rule. Node `(a, k, c)` sits at flat index
    /// `(a * betas.len() + k) * angle_count + c`, with `alpha = 4 pi a / angle_count`,
    /// `beta = betas[k]`, `gamma = 4 pi c / angle_count`, and weight
    /// `beta_weights[k] / angle_count^2`.
    EulerProduct {
        angle_count: usize,
        betas: Vec<f64>,
        beta_weights: Vec<f64>,
    },
    /// SU(2) product rule in the `(t, nu, s)` chart.
    Tvs {
        t_count: usize,
        nu_count: usize,
        s_count: usize,
    },
    Scattered,
}

/// Group points with nonnegative weights summing to one (normalized Haar
/// measure). Products of matrix coefficients whose labels add up to at most
/// `exactness` are integrated exactly.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub group: GroupTag,
    pub nodes: Vec<GroupPoint>,
    pub weights: Vec<f64>,
    pub exactness: u32,
    pub layout: QuadLayout,
    /// Total mass of the rule's native chart measure before normalisation, when meaningful.
    pub raw_mass: Option<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        linalg::pairwise_sum_f64(&self.weights)
    }

    /// Fails with `QuadratureInsufficient` unless `needed <= exactness`.
    pub fn require(&self, needed: u32) -> Result<()> {
        if needed > self.exactness {
            return Err(Error::QuadratureInsufficient {
                needed,
                available: self.exactness,
            });
        }
        Ok(())
    }

    /// `sum_k w_k v_k`, reduced in a thread-count independent order.
    pub fn integrate(&self, values: &[C64]) -> Result<C64> {
        if values.len() != self.len() {
            return Err(Error::SampleCount {
                expected: self.len(),
                found: values.len(),
            });
        }
        Ok(linalg::par_sum_by(
            values.len(),
            |k| values[k] * self.weights[k],
            |a, b| a + b,
            ZERO,
        ))
    }

    /// Samples `f` at every node, in node order.
    pub fn sample<F>(&self, f: F) -> Vec<C64>
    where
        F: Fn(&GroupPoint) -> C64 + Sync + Send,
    {
        use rayon::prelude::*;
        self.nodes.par_iter().map(f).collect()
    }
}

/// Fourier-side data: one `d_xi x d_xi` complex block per dual of the truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSide {
    trunc: TruncationSpec,
    blocks: Vec<CMat>,
}

impl SpectrumSide {
    pub fn zeros(trunc: TruncationSpec) -> Self {
        let blocks = trunc
            .duals()
            .iter()
            .map(|d| linalg::zeros(d.dim(), d.dim()))
            .collect();
        SpectrumSide { trunc, blocks }
    }

    pub fn from_blocks(trunc: TruncationSpec, blocks: Vec<CMat>) -> Result<Self> {
        let duals = trunc.duals();
        if blocks.len() != duals.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} duals",
                blocks.len(),
                duals.len()
            )));
        }
        for (d, b) in duals.iter().zip(&blocks) {
            if b.nrows() != d.dim() || b.ncols() != d.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "block {d} has shape {}x{}, expected {}x{}",
                    b.nrows(),
                    b.ncols(),
                    d.dim(),
                    d.dim()
                )));
            }
        }
        Ok(SpectrumSide { trunc, blocks })
    }

    pub fn trunc(&self) -> &TruncationSpec {
        &self.trunc
    }

    pub fn group(&self) -> GroupTag {
        self.trunc.group
    }

    pub fn block(&self, dual: &DualIndex) -> Option<&CMat> {
        self.trunc.dual_position(dual).map(|p| &self.blocks[p])
    }

    pub fn block_mut(&mut self, dual: &DualIndex) -> Option<&mut CMat> {
        self.trunc.dual_position(dual).map(move |p| &mut self.blocks[p])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (DualIndex, &CMat)> + '_ {
        self.trunc.duals().into_iter().zip(self.blocks.iter())
    }

    pub fn block_list(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn set_entry(&mut self, dual: &DualIndex, row: usize, col: usize, value: C64) -> Result<()> {
        let trunc = self.trunc;
        let b = self.block_mut(dual).ok_or(Error::InvalidLabel {
            group: trunc.group,
            label: dual.label() as i64,
        })?;
        if row >= b.nrows() || col >= b.ncols() {
            return Err(Error::DimensionMismatch(format!("entry ({row},{col}) outside block {dual}")));
        }
        b[(row, col)] = value;
        Ok(())
    }

    /// Restricts or zero-extends to another truncation of the same group.
    pub fn resized(&self, trunc: TruncationSpec) -> Self {
        assert_eq!(trunc.group, self.trunc.group);
        let mut out = SpectrumSide::zeros(trunc);
        for (dual, b) in self.blocks() {
            if let Some(t) = out.block_mut(&dual) {
                *t = b.clone();
            }
        }
        out
    }

    /// Largest label degree carrying a nonzero block.
    pub fn effective_bound(&self) -> u32 {
        self.blocks()
            .filter(|(_, b)| linalg::max_abs(b) > 0.0)
            .map(|(d, _)| d.degree())
            .max()
            .unwrap_or(0)
    }

    /// `a * self + b * other` over the union of both truncations.
    pub fn combine(&self, a: C64, other: &SpectrumSide, b: C64) -> Result<Self> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch {
                expected: self.group(),
                found: other.group(),
            });
        }
        let trunc = self.trunc.with_bound(self.trunc.bound.max(other.trunc.bound));
        let x = self.resized(trunc);
        let y = other.resized(trunc);
        let blocks = x
            .blocks
            .iter()
            .zip(&y.blocks)
            .map(|(p, q)| linalg::add(&linalg::scale(p, a), &linalg::scale(q, b)))
            .collect();
        Ok(SpectrumSide { trunc, blocks })
    }

    pub fn scaled(&self, a: C64) -> Self {
        SpectrumSide {
            trunc: self.trunc,
            blocks: self.blocks.iter().map(|b| linalg::scale(b, a)).collect(),
        }
    }

    /// Coordinates in the orthonormal basis: `<h, sqrt(d) xi_ij> = sqrt(d) h^(xi)_{ji}`.
    pub fn to_coefficient_vector(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.trunc.dim());
        for (dual, b) in self.blocks() {
            let d = dual.dim();
            let s = (d as f64).sqrt();
            for i in 0..d {
                for j in 0..d {
                    out.push(b[(j, i)] * s);
                }
            }
        }
        out
    }

    pub fn from_coefficient_vector(trunc: TruncationSpec, coeffs: &[C64]) -> Result<Self> {
        if coeffs.len() != trunc.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for basis of length {}",
                coeffs.len(),
                trunc.dim()
            )));
        }
        let mut out = SpectrumSide::zeros(trunc);
        let mut pos = 0;
        for (p, dual) in trunc.duals().iter().enumerate() {
            let d = dual.dim();
            let s = (d as f64).sqrt();
            for i in 0..d {
                for j in 0..d {
                    out.blocks[p][(j, i)] = coeffs[pos] / s;
                    pos += 1;
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise difference after zero-extending both sides.
    pub fn max_abs_diff(&self, other: &SpectrumSide) -> f64 {
        if self.group() != other.group() {
            return f64::INFINITY;
        }
        let trunc = self.trunc.with_bound(self.trunc.bound.max(other.trunc.bound));
        let x = self.resized(trunc);
        let y = other.resized(trunc);
        x.blocks
            .iter()
            .zip(&y.blocks)
            .map(|(p, q)| linalg::max_abs_diff(p, q))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpectrumJson::from(self)).expect("spectrum serialisation")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&SpectrumJson::from(self)).expect("spectrum serialisation")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpectrumJsonIn = serde_json::from_str(text)?;
        raw.into_spectrum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SpectrumJson::from(self)).expect("spectrum serialisation")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let raw: SpectrumJsonIn = serde_json::from_value(value)?;
        raw.into_spectrum()
    }
}

/// A smooth function given by finitely many matrix Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BandlimitedFunction {
    spectrum: SpectrumSide,
}

impl BandlimitedFunction {
    pub fn new(spectrum: SpectrumSide) -> Self {
        BandlimitedFunction { spectrum }
    }

    pub fn constant(group: GroupTag, c: C64) -> Self {
        let mut s = SpectrumSide::zeros(TruncationSpec::new(group, 0));
        let trivial = DualIndex::new(group, 0).unwrap();
        s.set_entry(&trivial, 0, 0, c).unwrap();
        BandlimitedFunction { spectrum: s }
    }

    pub fn spectrum(&self) -> &SpectrumSide {
        &self.spectrum
    }

    pub fn into_spectrum(self) -> SpectrumSide {
        self.spectrum
    }

    pub fn group(&self) -> GroupTag {
        self.spectrum.group()
    }

    pub fn trunc(&self) -> &TruncationSpec {
        self.spectrum.trunc()
    }

    /// Declared bandwidth (label units).
    pub fn bound(&self) -> u32 {
        self.spectrum.trunc().bound
    }

    /// Bandwidth actually carried by nonzero coefficients.
    pub fn effective_bound(&self) -> u32 {
        self.spectrum.effective_bound()
    }

    /// `f(x) = sum_xi d_xi Tr(xi(x) f^(xi))`.
    pub fn eval(&self, x: &GroupPoint) -> Result<C64> {
        bandlimited_eval(self, x)
    }

    pub fn scaled(&self, a: C64) -> Self {
        BandlimitedFunction::new(self.spectrum.scaled(a))
    }

    pub fn combine(&self, a: C64, other: &BandlimitedFunction, b: C64) -> Result<Self> {
        Ok(BandlimitedFunction::new(self.spectrum.combine(a, &other.spectrum, b)?))
    }

    pub fn to_json(&self) -> String {
        self.spectrum.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        SpectrumSide::from_json(text).map(BandlimitedFunction::new)
    }
}

/// Evaluates the Fourier inversion sum at a group point.
pub fn bandlimited_eval(f: &BandlimitedFunction, x: &GroupPoint) -> Result<C64> {
    let spec = f.spectrum();
    if x.group() != spec.group() {
        return Err(Error::GroupMismatch {
            expected: spec.group(),
            found: x.group(),
        });
    }
    let mut acc = ZERO;
    for (dual, block) in spec.blocks() {
        if linalg::max_abs(block) == 0.0 {
            continue;
        }
        let r = rep_matrix(&dual, x)?;
        let d = dual.dim();
        let mut tr = ZERO;
        for i in 0..d {
            for j in 0..d {
                tr += r[(i, j)] * block[(j, i)];
            }
        }
        acc += tr * d as f64;
    }
    Ok(acc)
}

type BlockRows = Vec<Vec<[f64; 2]>>;

#[derive(Serialize)]
struct SpectrumJson {
    group: GroupTag,
    bandwidth: u32,
    coeffs: CoeffMap,
}

struct CoeffMap(Vec<(i32, BlockRows)>);

impl Serialize for CoeffMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (label, rows) in &self.0 {
            map.serialize_entry(&label.to_string(), rows)?;
        }
        map.end()
    }
}

impl From<&SpectrumSide> for SpectrumJson {
    fn from(s: &SpectrumSide) -> Self {
        let coeffs = s
            .blocks()
            .map(|(dual, b)| {
                let rows = (0..b.nrows())
                    .map(|i| (0..b.ncols()).map(|j| [b[(i, j)].re, b[(i, j)].im]).collect())
                    .collect();
                (dual.label(), rows)
            })
            .collect();
        SpectrumJson {
            group: s.group(),
            bandwidth: s.trunc().bound,
            coeffs: CoeffMap(coeffs),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumJsonIn {
    group: GroupTag,
    bandwidth: u32,
    coeffs: BTreeMap<String, BlockRows>,
}

impl SpectrumJsonIn {
    fn into_spectrum(self) -> Result<SpectrumSide> {
        let trunc = TruncationSpec::new(self.group, self.bandwidth);
        let mut out = SpectrumSide::zeros(trunc);
        for (key, rows) in self.coeffs {
            let label: i32 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient label `{key}` is not an integer")))?;
            let dual = DualIndex::new(self.group, label)?;
            let d = dual.dim();
            let block = out.block_mut(&dual).ok_or_else(|| {
                Error::Parse(format!("label {label} exceeds declared bandwidth {}", self.bandwidth))
            })?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Parse(format!("block for label {label} must be {d}x{d}")));
            }
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v[0].is_finite() || !v[1].is_finite() {
                        return Err(Error::Parse(format!("non-finite coefficient in block {label}")));
                    }
                    block[(i, j)] = C64::new(v[0], v[1]);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn circle_basis_order() {
        let b = basis_enumerate(&TruncationSpec::circle(1));
        let labels: Vec<i32> = b.iter().map(|x| x.dual.label()).collect();
        assert_eq!(labels, vec![-1, 0, 1]);
    }

    #[test]
    fn su2_basis_lengths() {
        assert_eq!(basis_enumerate(&TruncationSpec::su2(1)).len(), 5);
        assert_eq!(basis_enumerate(&TruncationSpec::su2(2)).len(), 14);
        for two_b in 0..10 {
            let t = TruncationSpec::su2(two_b);
            let expected: usize = (0..=two_b as usize).map(|k| (k + 1) * (k + 1)).sum();
            assert_eq!(t.dim(), expected);
            assert_eq!(basis_enumerate(&t).len(), expected);
        }
    }

    #[test]
    fn basis_positions_are_a_bijection() {
        for t in [TruncationSpec::circle(5), TruncationSpec::su2(6)] {
            let basis = basis_enumerate(&t);
            for (k, b) in basis.iter().enumerate() {
                assert_eq!(t.basis_position(b), Some(k));
            }
            assert_eq!(basis, basis_enumerate(&t));
        }
    }

    #[test]
    fn su2_spin_parsing() {
        assert_eq!(TruncationSpec::su2_spin(1.5).unwrap().bound, 3);
        assert!(TruncationSpec::su2_spin(0.3).is_err());
        assert!(TruncationSpec::su2_spin(-1.0).is_err());
        assert!("so3".parse::<GroupTag>().is_err());
    }

    #[test]
    fn dual_invariants() {
        assert_eq!(DualIndex::circle(-7).dim(), 1);
        assert_eq!(DualIndex::su2(3).dim(), 4);
        assert!(DualIndex::new(GroupTag::Su2, -1).is_err());
        assert_eq!(DualIndex::su2(2).casimir(), 2.0);
    }

    #[test]
    fn constant_function_evaluates_everywhere() {
        let c = C64::new(1.5, -0.25);
        let f = BandlimitedFunction::constant(GroupTag::Su2, c);
        let g = GroupPoint::Su2(Su2Element::from_quaternion([0.5, 0.5, 0.5, 0.5]).unwrap());
        assert!((f.eval(&g).unwrap() - c).norm() < 1e-15);
        let f = BandlimitedFunction::constant(GroupTag::Circle, c);
        assert!((f.eval(&GroupPoint::Circle(CirclePoint::new(2.0))).unwrap() - c).norm() < 1e-15);
    }

    #[test]
    fn single_character() {
        let mut s = SpectrumSide::zeros(TruncationSpec::circle(2));
        s.set_entry(&DualIndex::circle(1), 0, 0, C64::new(1.0, 0.0)).unwrap();
        let f = BandlimitedFunction::new(s);
        for theta in [-3.0, -1.0, 0.0, 0.4, 2.5] {
            let v = f.eval(&GroupPoint::Circle(CirclePoint::new(theta))).unwrap();
            assert!((v - C64::from_polar(1.0, theta)).norm() < 1e-15);
        }
    }

    #[test]
    fn json_rejects_bad_shapes() {
        let bad = r#"{"group":"su2","bandwidth":1,"coeffs":{"1":[[[1,0]]]}}"#;
        assert!(SpectrumSide::from_json(bad).is_err());
        let bad = r#"{"group":"circle","bandwidth":1,"coeffs":{"2":[[[1,0]]]}}"#;
        assert!(SpectrumSide::from_json(bad).is_err());
        let bad = r#"{"group":"circle","bandwidth":1,"coeffs":{},"extra":1}"#;
        assert!(SpectrumSide::from_json(bad).is_err());
        let ok = r#"{"group":"circle","bandwidth":1,"coeffs":{"-1":[[[0.5,-2]]]}}"#;
        let s = SpectrumSide::from_json(ok).unwrap();
        assert_eq!(s.block(&DualIndex::circle(-1)).unwrap()[(0, 0)], C64::new(0.5, -2.0));
    }

    fn arb_spectrum() -> impl Strategy<Value = SpectrumSide> {
        (prop_oneof![Just(GroupTag::Circle), Just(GroupTag::Su2)], 0u32..4).prop_flat_map(|(g, b)| {
            let t = TruncationSpec::new(g, b);
            proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), t.dim()).prop_map(move |v| {
                let c: Vec<C64> = v.into_iter().map(|(a, b)| C64::new(a, b)).collect();
                SpectrumSide::from_coefficient_vector(t, &c).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip_is_bit_exact(s in arb_spectrum()) {
            let text = s.to_json();
            let back = SpectrumSide::from_json(&text).unwrap();
            prop_assert_eq!(back.trunc(), s.trunc());
            for ((_, a), (_, b)) in s.blocks().zip(back.blocks()) {
                for i in 0..a.nrows() {
                    for j in 0..a.ncols() {
                        prop_assert_eq!(a[(i, j)].re.to_bits(), b[(i, j)].re.to_bits());
                        prop_assert_eq!(a[(i, j)].im.to_bits(), b[(i, j)].im.to_bits());
                    }
                }
            }
            prop_assert_eq!(back.to_json(), text);
        }

        #[test]
        fn coefficient_vector_round_trip(s in arb_spectrum()) {
            let v = s.to_coefficient_vector();
            let back = SpectrumSide::from_coefficient_vector(*s.trunc(), &v).unwrap();
            prop_assert!(back.max_abs_diff(&s) < 1e-12);
        }
    }
}
