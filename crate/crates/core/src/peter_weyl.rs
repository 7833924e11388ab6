//! Forward and inverse matrix Fourier transforms, Plancherel norms, Sobolev
//! weights and pointwise inversion of band-limited functions.
//!
//! Transforms over the Euler product rule and the circle rule are separable:
//! the angle sums are discrete Fourier sums evaluated once and shared by every
//! representation, so only the `beta` direction touches the small-d matrices.

use std::f64::consts::PI;

use faer::Mat;
use rayon::prelude::*;

use crate::circle;
use crate::error::{Error, Result};
use crate::group::{
    bandlimited_eval, BandlimitedFunction, DualIndex, GroupPoint, GroupTag, QuadLayout, QuadratureRule,
    SpectrumSide, TruncationSpec,
};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::su2;

/// Default invertibility threshold.
pub const DELTA_INV: f64 = 1e-6;

/// Residual above which an inversion is flagged as aliased.
pub const ALIASING_TOL: f64 = 1e-6;

/// `e^{2 pi i j / n}` for `j = 0..n`.
pub(crate) fn twiddles(n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

fn tw(table: &[C64], p: i64, a: usize) -> C64 {
    let n = table.len() as i64;
    table[(p * a as i64).rem_euclid(n) as usize]
}

/// Angle-averaged samples on the Euler product grid: for doubled frequencies
/// `|p| <= pmax`, `|q| <= qmax`,
/// `F(p, k, q) = N^{-2} sum_{a,c} v(a, k, c) e^{i p alpha_a / 2} e^{i q gamma_c / 2}`.
pub(crate) struct EulerSpectralGrid {
    pub pmax: i64,
    pub qmax: i64,
    pub nb: usize,
    data: Vec<C64>,
}

impl EulerSpectralGrid {
    pub fn get(&self, p: i64, k: usize, q: i64) -> C64 {
        let nq = (2 * self.qmax + 1) as usize;
        self.data[(((p + self.pmax) as usize) * self.nb + k) * nq + (q + self.qmax) as usize]
    }

    pub fn analyse(values: &[C64], n: usize, nb: usize, pmax: i64, qmax: i64) -> Self {
        let table = twiddles(n);
        let nq = (2 * qmax + 1) as usize;
        let np = (2 * pmax + 1) as usize;
        // stage one: gamma sums for every (a, k)
        let g: Vec<C64> = (0..n * nb)
            .into_par_iter()
            .flat_map_iter(|ak| {
                let row = &values[ak * n..(ak + 1) * n];
                let table = &table;
                (0..nq).map(move |qi| {
                    let q = qi as i64 - qmax;
                    let mut s = ZERO;
                    for (c, v) in row.iter().enumerate() {
                        s += v * tw(table, q, c);
                    }
                    s
                })
            })
            .collect();
        let norm = 1.0 / (n * n) as f64;
        // stage two: alpha sums
        let data: Vec<C64> = (0..np * nb)
            .into_par_iter()
            .flat_map_iter(|pk| {
                let p = (pk / nb) as i64 - pmax;
                let k = pk % nb;
                let (g, table) = (&g, &table);
                (0..nq).map(move |qi| {
                    let mut s = ZERO;
                    for a in 0..n {
                        s += g[(a * nb + k) * nq + qi] * tw(table, p, a);
                    }
                    s * norm
                })
            })
            .collect();
        EulerSpectralGrid { pmax, qmax, nb, data }
    }
}

/// Small-d matrices `d^l(beta_k)` for every listed beta and `2l <= two_b`.
pub(crate) fn small_d_tables(two_b: u32, betas: &[f64]) -> Vec<Vec<Mat<f64>>> {
    betas
        .par_iter()
        .map(|b| (0..=two_b).map(|tl| su2::wigner_d_small(tl, *b)).collect())
        .collect()
}

fn check_group(expected: GroupTag, found: GroupTag) -> Result<()> {
    if expected != found {
        return Err(Error::GroupMismatch { expected, found });
    }
    Ok(())
}

/// Values of `f` at the nodes of `quad`, in node order.
pub fn sample(f: &BandlimitedFunction, quad: &QuadratureRule) -> Result<Vec<C64>> {
    check_group(quad.group, f.group())?;
    let spec = f.spectrum();
    match &quad.layout {
        QuadLayout::Circle { count } => {
            let table = twiddles(*count);
            let coeffs: Vec<(i64, C64)> = spec
                .blocks()
                .map(|(d, b)| (d.label() as i64, b[(0, 0)]))
                .filter(|(_, c)| *c != ZERO)
                .collect();
            Ok((0..*count)
                .into_par_iter()
                .map(|j| coeffs.iter().fold(ZERO, |acc, (n, c)| acc + c * tw(&table, *n, j)))
                .collect())
        }
        QuadLayout::EulerProduct {
            angle_count,
            betas,
            ..
        } => Ok(euler_synthesis(spec, *angle_count, betas)),
        _ => quad
            .nodes
            .par_iter()
            .map(|x| bandlimited_eval(f, x))
            .collect(),
    }
}

fn euler_synthesis(spec: &SpectrumSide, n: usize, betas: &[f64]) -> Vec<C64> {
    let two_b = spec.effective_bound();
    let tb = two_b as i64;
    let nb = betas.len();
    let tables = small_d_tables(two_b, betas);
    let side = (2 * tb + 1) as usize;
    // H(p, k, q) = sum_l d d^l_{mn}(beta_k) fhat^l_{nm} with p = 2m, q = 2n
    let h: Vec<Vec<C64>> = (0..nb)
        .map(|k| {
            let mut out = vec![ZERO; side * side];
            for (dual, block) in spec.blocks() {
                let tl = dual.label();
                if tl as u32 > two_b {
                    continue;
                }
                let d = dual.dim();
                let small = &tables[k][tl as usize];
                for r in 0..d {
                    for c in 0..d {
                        let p = 2 * r as i64 - tl as i64;
                        let q = 2 * c as i64 - tl as i64;
                        out[((p + tb) as usize) * side + (q + tb) as usize] +=
                            block[(c, r)] * (small[(r, c)] * d as f64);
                    }
                }
            }
            out
        })
        .collect();
    let table = twiddles(n);
    // f(a, k, c) = sum_{p,q} H(p, k, q) e^{-i p alpha_a / 2} e^{-i q gamma_c / 2}
    (0..n * nb)
        .into_par_iter()
        .flat_map_iter(|ak| {
            let (a, k) = (ak / nb, ak % nb);
            let hk = &h[k];
            let table = &table;
            // partial sums over p for each q
            let inner: Vec<C64> = (0..side)
                .map(|qi| {
                    let mut s = ZERO;
                    for pi in 0..side {
                        let v = hk[pi * side + qi];
                        if v != ZERO {
                            s += v * tw(table, -(pi as i64 - tb), a);
                        }
                    }
                    s
                })
                .collect();
            (0..n).map(move |c| {
                let mut s = ZERO;
                for (qi, v) in inner.iter().enumerate() {
                    s += v * tw(table, -(qi as i64 - tb), c);
                }
                s
            })
        })
        .collect()
}

/// `fhat(xi) = sum_k w_k f(x_k) xi(x_k)^*` for every dual of `trunc`.
///
/// `f_bound` is the declared bandwidth of the sampled function; the rule must
/// be exact to `f_bound + trunc.bound`.
pub fn forward_transform(
    samples: &[C64],
    quad: &QuadratureRule,
    trunc: &TruncationSpec,
    f_bound: u32,
) -> Result<SpectrumSide> {
    quad.require(f_bound + trunc.bound)?;
    forward_transform_unchecked(samples, quad, trunc)
}

/// The quadrature sum without the exactness precondition.
pub fn forward_transform_unchecked(
    samples: &[C64],
    quad: &QuadratureRule,
    trunc: &TruncationSpec,
) -> Result<SpectrumSide> {
    check_group(quad.group, trunc.group)?;
    if samples.len() != quad.len() {
        return Err(Error::SampleCount {
            expected: quad.len(),
            found: samples.len(),
        });
    }
    match &quad.layout {
        QuadLayout::Circle { count } => {
            let table = twiddles(*count);
            let w = quad.weights[0];
            let blocks = trunc
                .duals()
                .par_iter()
                .map(|d| {
                    let n = d.label() as i64;
                    let terms: Vec<C64> = samples
                        .iter()
                        .enumerate()
                        .map(|(j, v)| v * tw(&table, -n, j))
                        .collect();
                    CMat::from_fn(1, 1, |_, _| linalg::pairwise_sum(&terms) * w)
                })
                .collect();
            SpectrumSide::from_blocks(*trunc, blocks)
        }
        QuadLayout::EulerProduct {
            angle_count,
            betas,
            beta_weights,
        } => {
            let tb = trunc.bound as i64;
            let grid = EulerSpectralGrid::analyse(samples, *angle_count, betas.len(), tb, tb);
            let tables = small_d_tables(trunc.bound, betas);
            let blocks = trunc
                .duals()
                .iter()
                .map(|dual| {
                    let tl = dual.label();
                    let d = dual.dim();
                    CMat::from_fn(d, d, |r, s| {
                        // fhat_{rs} = sum_k w_k d_{sr}(beta_k) F(2 m_s, k, 2 m_r)
                        let ps = 2 * s as i64 - tl as i64;
                        let pr = 2 * r as i64 - tl as i64;
                        let mut acc = ZERO;
                        for (k, wk) in beta_weights.iter().enumerate() {
                            acc += grid.get(ps, k, pr) * (wk * tables[k][tl as usize][(s, r)]);
                        }
                        acc
                    })
                })
                .collect();
            SpectrumSide::from_blocks(*trunc, blocks)
        }
        _ => {
            let duals = trunc.duals();
            let blocks = duals
                .iter()
                .map(|dual| {
                    let d = dual.dim();
                    linalg::par_sum_by(
                        quad.len(),
                        |k| {
                            let r = crate::group::rep_matrix(dual, &quad.nodes[k]).expect("group checked");
                            let wf = samples[k] * quad.weights[k];
                            CMat::from_fn(d, d, |i, j| r[(j, i)].conj() * wf)
                        },
                        |a, b| linalg::add(&a, &b),
                        linalg::zeros(d, d),
                    )
                })
                .collect();
            SpectrumSide::from_blocks(*trunc, blocks)
        }
    }
}

/// `sum_xi d_xi Tr(xi(x) fhat(xi))`.
pub fn inverse_transform(spec: &SpectrumSide, x: &GroupPoint) -> Result<C64> {
    bandlimited_eval(&BandlimitedFunction::new(spec.clone()), x)
}

/// `<f, g> = sum_xi d_xi Tr(fhat(xi) ghat(xi)^*)`, conjugate-linear in `g`.
pub fn spectral_inner(f: &SpectrumSide, g: &SpectrumSide) -> Result<C64> {
    check_group(f.group(), g.group())?;
    let trunc = f.trunc().with_bound(f.trunc().bound.min(g.trunc().bound));
    let mut terms = Vec::new();
    for dual in trunc.duals() {
        let (a, b) = (f.block(&dual).unwrap(), g.block(&dual).unwrap());
        let d = dual.dim();
        let mut tr = ZERO;
        for i in 0..d {
            for j in 0..d {
                tr += a[(i, j)] * b[(i, j)].conj();
            }
        }
        terms.push(tr * d as f64);
    }
    Ok(linalg::pairwise_sum(&terms))
}

/// `sqrt(sum_xi d_xi Tr(fhat fhat^*))`.
pub fn plancherel_norm(spec: &SpectrumSide) -> f64 {
    let terms: Vec<f64> = spec
        .blocks()
        .map(|(d, b)| {
            let f = linalg::frobenius_norm(b);
            d.dim() as f64 * f * f
        })
        .collect();
    linalg::pairwise_sum_f64(&terms).sqrt()
}

/// `(int |f|^2)^{1/2}` by quadrature.
pub fn quadrature_l2_norm(samples: &[C64], quad: &QuadratureRule) -> Result<f64> {
    let sq: Vec<C64> = samples.iter().map(|v| C64::new(v.norm_sqr(), 0.0)).collect();
    Ok(quad.integrate(&sq)?.re.max(0.0).sqrt())
}

/// `(1 + lambda)^{s/2}` with `lambda` the Laplace eigenvalue of the representation.
pub fn sobolev_weight(dual: &DualIndex, s: f64) -> f64 {
    let base = 1.0 + dual.casimir();
    if s < 0.0 {
        1.0 / base.powf(-s / 2.0)
    } else {
        base.powf(s / 2.0)
    }
}

/// Fourier side of the convolution `(f * g)(x) = int f(y) g(y^{-1} x) dy`,
/// which is `ghat(xi) fhat(xi)` blockwise.
pub fn convolve(f: &SpectrumSide, g: &SpectrumSide) -> Result<SpectrumSide> {
    check_group(f.group(), g.group())?;
    let trunc = f.trunc().with_bound(f.trunc().bound.min(g.trunc().bound));
    let blocks = trunc
        .duals()
        .iter()
        .map(|d| linalg::matmul(g.block(d).unwrap(), f.block(d).unwrap()))
        .collect();
    SpectrumSide::from_blocks(trunc, blocks)
}

/// Quadrature rule suited to band-limited data of combined degree `exactness`.
pub fn default_quadrature(group: GroupTag, exactness: u32) -> QuadratureRule {
    match group {
        GroupTag::Circle => circle::circle_quadrature_with_exactness(exactness),
        GroupTag::Su2 => su2::su2_quadrature_euler_with_exactness(exactness),
    }
}

/// Result of [`pointwise_invert`].
#[derive(Clone, Debug)]
pub struct Inversion {
    pub function: BandlimitedFunction,
    /// `max |f g - 1|` over an independent check grid.
    pub residual: f64,
    pub min_modulus: f64,
    /// Set when the residual exceeds [`ALIASING_TOL`].
    pub aliasing_warning: bool,
}

/// Band-limited approximation of `1/f` at bandwidth `out_bound` (label units;
/// defaults to four times the bandwidth of `f`).
///
/// The transform uses `quad`, which must be exact to `2 out_bound`; a default
/// rule is built when `quad` is `None`. The residual is measured on a
/// different rule of one higher exactness so it is not an interpolation artifact.
pub fn pointwise_invert(
    f: &BandlimitedFunction,
    out_bound: Option<u32>,
    quad: Option<&QuadratureRule>,
    delta_inv: f64,
) -> Result<Inversion> {
    let out = out_bound.unwrap_or(4 * f.bound());
    let owned;
    let quad = match quad {
        Some(q) => q,
        None => {
            owned = default_quadrature(f.group(), (4 * out).max(f.bound() + out));
            &owned
        }
    };
    check_group(quad.group, f.group())?;
    quad.require(2 * out)?;
    let values = sample(f, quad)?;
    let check = default_quadrature(f.group(), quad.exactness + 1);
    let check_values = sample(f, &check)?;
    let min_modulus = values
        .iter()
        .chain(&check_values)
        .map(|v| v.norm())
        .fold(f64::INFINITY, f64::min);
    if !(min_modulus >= delta_inv) {
        return Err(Error::NotInvertible {
            min_modulus,
            threshold: delta_inv,
        });
    }
    let recip: Vec<C64> = values.iter().map(|v| v.inv()).collect();
    let trunc = TruncationSpec::new(f.group(), out);
    let spec = forward_transform_unchecked(&recip, quad, &trunc)?;
    let g = BandlimitedFunction::new(spec);
    let g_check = sample(&g, &check)?;
    let residual = check_values
        .iter()
        .zip(&g_check)
        .map(|(a, b)| (a * b - 1.0).norm())
        .fold(0.0, f64::max);
    Ok(Inversion {
        function: g,
        residual,
        min_modulus,
        aliasing_warning: residual > ALIASING_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::circle_quadrature;
    use crate::su2::{su2_quadrature_euler, su2_quadrature_tvs, Su2Element};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spectrum(trunc: TruncationSpec, rng: &mut ChaCha8Rng) -> SpectrumSide {
        let c: Vec<C64> = (0..trunc.dim())
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SpectrumSide::from_coefficient_vector(trunc, &c).unwrap()
    }

    fn brute_samples(f: &BandlimitedFunction, q: &QuadratureRule) -> Vec<C64> {
        q.nodes.iter().map(|x| f.eval(x).unwrap()).collect()
    }

    #[test]
    fn constant_transforms_to_trivial_block() {
        for (g, q) in [
            (GroupTag::Circle, circle_quadrature(2)),
            (GroupTag::Su2, su2_quadrature_euler(2)),
            (GroupTag::Su2, su2_quadrature_tvs(2)),
        ] {
            let trunc = TruncationSpec::new(g, 2);
            let s = forward_transform(&vec![C64::new(1.0, 0.0); q.len()], &q, &trunc, 0).unwrap();
            let mut expected = SpectrumSide::zeros(trunc);
            expected
                .set_entry(&DualIndex::new(g, 0).unwrap(), 0, 0, C64::new(1.0, 0.0))
                .unwrap();
            assert!(s.max_abs_diff(&expected) < 1e-13);
        }
    }

    #[test]
    fn character_and_matrix_coefficient() {
        let q = circle_quadrature(2);
        let v: Vec<C64> = q
            .nodes
            .iter()
            .map(|p| match p {
                GroupPoint::Circle(c) => circle::circle_rep_eval(2, c.theta()),
                _ => unreachable!(),
            })
            .collect();
        let s = forward_transform(&v, &q, &TruncationSpec::circle(2), 2).unwrap();
        for (d, b) in s.blocks() {
            let e = if d.label() == 2 { 1.0 } else { 0.0 };
            assert!((b[(0, 0)] - e).norm() < 1e-14);
        }
        for q in [su2_quadrature_euler(1), su2_quadrature_tvs(1)] {
            for a in 0..2 {
                for b in 0..2 {
                    let v: Vec<C64> = q
                        .nodes
                        .iter()
                        .map(|p| match p {
                            GroupPoint::Su2(g) => su2::rep_matrix(1, g)[(a, b)],
                            _ => unreachable!(),
                        })
                        .collect();
                    let s = forward_transform(&v, &q, &TruncationSpec::su2(1), 1).unwrap();
                    let mut e = SpectrumSide::zeros(TruncationSpec::su2(1));
                    e.set_entry(&DualIndex::su2(1), b, a, C64::new(0.5, 0.0)).unwrap();
                    assert!(s.max_abs_diff(&e) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn insufficient_rule_is_rejected() {
        let q = circle_quadrature(1);
        let err = forward_transform(&vec![ZERO; q.len()], &q, &TruncationSpec::circle(3), 3).unwrap_err();
        assert_eq!(err, Error::QuadratureInsufficient { needed: 6, available: 4 });
    }

    #[test]
    fn fast_sampling_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (trunc, q) in [
            (TruncationSpec::circle(5), circle_quadrature(3)),
            (TruncationSpec::su2(4), su2_quadrature_euler(2)),
        ] {
            let f = BandlimitedFunction::new(random_spectrum(trunc, &mut rng));
            let fast = sample(&f, &q).unwrap();
            let slow = brute_samples(&f, &q);
            let err = fast.iter().zip(&slow).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12, "{err}");
        }
    }

    #[test]
    fn separable_forward_matches_dense_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let trunc = TruncationSpec::su2(2);
        let q = su2_quadrature_euler(2);
        let f = BandlimitedFunction::new(random_spectrum(trunc, &mut rng));
        let v = sample(&f, &q).unwrap();
        let fast = forward_transform(&v, &q, &trunc, 2).unwrap();
        let mut dense_rule = q.clone();
        dense_rule.layout = QuadLayout::Scattered;
        let dense = forward_transform(&v, &dense_rule, &trunc, 2).unwrap();
        assert!(fast.max_abs_diff(&dense) < 1e-13);
        assert!(fast.max_abs_diff(f.spectrum()) < 1e-12);
    }

    #[test]
    fn round_trip_su2_bandwidth_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let trunc = TruncationSpec::su2(2);
        let spec = random_spectrum(trunc, &mut rng);
        let f = BandlimitedFunction::new(spec.clone());
        let q = su2_quadrature_tvs(1);
        let v = sample(&f, &q).unwrap();
        let back = forward_transform(&v, &q, &trunc, 2).unwrap();
        for _ in 0..20 {
            let x = GroupPoint::Su2(Su2Element::random(&mut rng));
            let e = (inverse_transform(&back, &x).unwrap() - f.eval(&x).unwrap()).norm();
            assert!(e < 1e-11);
        }
    }

    #[test]
    fn plancherel_examples() {
        let c = C64::new(-2.0, 1.5);
        assert!((plancherel_norm(BandlimitedFunction::constant(GroupTag::Su2, c).spectrum()) - c.norm()).abs() < 1e-15);
        let mut s = SpectrumSide::zeros(TruncationSpec::circle(1));
        s.set_entry(&DualIndex::circle(1), 0, 0, C64::new(1.0, 0.0)).unwrap();
        s.set_entry(&DualIndex::circle(-1), 0, 0, C64::new(1.0, 0.0)).unwrap();
        assert!((plancherel_norm(&s) - 2f64.sqrt()).abs() < 1e-15);
        let mut s = SpectrumSide::zeros(TruncationSpec::su2(1));
        s.set_entry(&DualIndex::su2(1), 0, 0, C64::new(0.5, 0.0)).unwrap();
        let q = su2_quadrature_euler(1);
        let v = sample(&BandlimitedFunction::new(s.clone()), &q).unwrap();
        let l2 = quadrature_l2_norm(&v, &q).unwrap();
        assert!((plancherel_norm(&s) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((l2 - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn polarization_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let trunc = TruncationSpec::su2(2);
        let q = su2_quadrature_euler(2);
        for _ in 0..5 {
            let (f, g) = (random_spectrum(trunc, &mut rng), random_spectrum(trunc, &mut rng));
            let fv = sample(&BandlimitedFunction::new(f.clone()), &q).unwrap();
            let gv = sample(&BandlimitedFunction::new(g.clone()), &q).unwrap();
            let prod: Vec<C64> = fv.iter().zip(&gv).map(|(a, b)| a * b.conj()).collect();
            let direct = q.integrate(&prod).unwrap();
            assert!((direct - spectral_inner(&f, &g).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn sobolev_weights() {
        assert_eq!(sobolev_weight(&DualIndex::su2(0), 3.7), 1.0);
        assert!((sobolev_weight(&DualIndex::circle(1), 2.0) - 2.0).abs() < 1e-15);
        assert!((sobolev_weight(&DualIndex::su2(2), 1.0) - 3f64.sqrt()).abs() < 1e-15);
        for tl in 0..12 {
            for s in [0.5, 1.0, 2.5, 7.0] {
                let d = DualIndex::su2(tl);
                let p = sobolev_weight(&d, s) * sobolev_weight(&d, -s);
                assert!((p - 1.0).abs() <= 4.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn casimir_from_second_differences() {
        // -sum_k d^2/dt^2 xi(exp(t X_k)) at t = 0 equals l(l+1) I for spin l = 1
        let h = 1e-4;
        let gens = [
            |t: f64| su2::euler_element(t, 0.0, 0.0),
            |t: f64| su2::euler_element(0.0, t, 0.0),
            |t: f64| su2::euler_element(-PI / 2.0, t, PI / 2.0),
        ];
        let mut lap = linalg::zeros(3, 3);
        for g in gens {
            let (p, z, m) = (su2::rep_matrix(2, &g(h)), su2::rep_matrix(2, &g(0.0)), su2::rep_matrix(2, &g(-h)));
            for i in 0..3 {
                for j in 0..3 {
                    lap[(i, j)] -= (p[(i, j)] - 2.0 * z[(i, j)] + m[(i, j)]) / (h * h);
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { DualIndex::su2(2).casimir() } else { 0.0 };
                assert!((lap[(i, j)] - e).norm() < 1e-6, "{i}{j} {}", lap[(i, j)]);
            }
        }
        let w = sobolev_weight(&DualIndex::su2(2), 1.0);
        assert!((w - (1.0 + lap[(0, 0)].re).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn inversion_examples() {
        let two = BandlimitedFunction::constant(GroupTag::Su2, C64::new(2.0, 0.0));
        let inv = pointwise_invert(&two, None, None, DELTA_INV).unwrap();
        assert!(inv.residual < 1e-15);
        assert!((inv.function.spectrum().block(&DualIndex::su2(0)).unwrap()[(0, 0)] - 0.5).norm() < 1e-15);

        for k in 1..4 {
            let mut s = SpectrumSide::zeros(TruncationSpec::circle(k));
            s.set_entry(&DualIndex::circle(k as i32), 0, 0, C64::new(1.0, 0.0)).unwrap();
            let inv = pointwise_invert(&BandlimitedFunction::new(s), Some(k), None, DELTA_INV).unwrap();
            assert!(inv.residual < 1e-14);
            for (d, b) in inv.function.spectrum().blocks() {
                let e = if d.label() == -(k as i32) { 1.0 } else { 0.0 };
                assert!((b[(0, 0)] - e).norm() < 1e-14);
            }
        }

        let mut s = SpectrumSide::zeros(TruncationSpec::circle(1));
        s.set_entry(&DualIndex::circle(0), 0, 0, C64::new(3.0, 0.0)).unwrap();
        s.set_entry(&DualIndex::circle(1), 0, 0, C64::new(1.0, 0.0)).unwrap();
        let inv = pointwise_invert(&BandlimitedFunction::new(s), Some(16), None, DELTA_INV).unwrap();
        // 1/(3 + z) = sum_m (-1)^m 3^{-(m+1)} z^m
        for (d, b) in inv.function.spectrum().blocks() {
            let m = d.label();
            let e = if m >= 0 { (-1f64).powi(m) * 3f64.powi(-(m + 1)) } else { 0.0 };
            assert!((b[(0, 0)] - e).norm() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn non_invertible_is_rejected() {
        let mut s = SpectrumSide::zeros(TruncationSpec::circle(1));
        s.set_entry(&DualIndex::circle(0), 0, 0, C64::new(1.0, 0.0)).unwrap();
        s.set_entry(&DualIndex::circle(1), 0, 0, C64::new(1.0, 0.0)).unwrap();
        // 1 + e^{it} vanishes at t = pi, which is a node of the check grid
        let err = pointwise_invert(&BandlimitedFunction::new(s), Some(4), None, DELTA_INV).unwrap_err();
        assert!(matches!(err, Error::NotInvertible { .. }));
    }

    #[test]
    fn convolution_is_right_block_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let trunc = TruncationSpec::su2(1);
        let (f, g) = (random_spectrum(trunc, &mut rng), random_spectrum(trunc, &mut rng));
        let fb = BandlimitedFunction::new(f.clone());
        let gb = BandlimitedFunction::new(g.clone());
        let q = su2_quadrature_euler(1);
        let x = Su2Element::random(&mut rng);
        // (f * g)(x) = int f(y) g(y^{-1} x) dy by quadrature
        let vals: Vec<C64> = q
            .nodes
            .iter()
            .map(|y| {
                let yinv_x = y.inverse().compose(&GroupPoint::Su2(x)).unwrap();
                fb.eval(y).unwrap() * gb.eval(&yinv_x).unwrap()
            })
            .collect();
        let direct = q.integrate(&vals).unwrap();
        let spec = convolve(&f, &g).unwrap();
        assert!((inverse_transform(&spec, &GroupPoint::Su2(x)).unwrap() - direct).norm() < 1e-12);
    }
}
