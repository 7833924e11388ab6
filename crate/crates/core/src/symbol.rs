//! Matrix-valued symbols `sigma_A(x, xi) = xi(x)^* (A xi)(x)` of truncated
//! operators, their operator-valued action on Fourier blocks, and the trace
//! formula `Tr A = int sum_xi d_xi Tr sigma_A(x, xi) dx`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{basis_values, rep_matrix, BandlimitedFunction, DualIndex, GroupPoint, QuadratureRule, SpectrumSide, TruncationSpec};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::operator::TruncatedOperator;

fn check_margin(a: &TruncatedOperator, label_degree: u32) -> Result<()> {
    let b = a.trunc().bound;
    if label_degree + a.reach() > b {
        return Err(Error::MarginViolation {
            label: label_degree as i64,
            bound: b,
            reach: a.reach(),
        });
    }
    Ok(())
}

/// `(A xi)(x)` and `xi(x)` for the compressed operator, without the margin check.
fn applied_block(a: &TruncatedOperator, x: &GroupPoint, dual: &DualIndex) -> Result<(CMat, CMat)> {
    let trunc = a.trunc();
    if x.group() != trunc.group || dual.group() != trunc.group {
        return Err(Error::GroupMismatch {
            expected: trunc.group,
            found: if x.group() != trunc.group { x.group() } else { dual.group() },
        });
    }
    let offset = trunc.block_offset(dual).ok_or(Error::InvalidLabel {
        group: trunc.group,
        label: dual.label() as i64,
    })?;
    let e = basis_values(trunc, x)?;
    let d = dual.dim();
    let s = (d as f64).sqrt();
    let m = a.matrix();
    // xi_ij has coordinates delta_b / sqrt(d), so (A xi_ij)(x) = sum_b' e_b'(x) A_{b' b} / sqrt(d)
    let applied = CMat::from_fn(d, d, |i, j| {
        let col = offset + i * d + j;
        let terms: Vec<C64> = e.iter().enumerate().map(|(r, v)| v * m[(r, col)]).collect();
        linalg::pairwise_sum(&terms) / s
    });
    Ok((applied, rep_matrix(dual, x)?))
}

/// `xi(x)^* (A xi)(x)`; requires `deg(xi) + reach(A) <= bound`.
pub fn matrix_symbol(a: &TruncatedOperator, x: &GroupPoint, dual: &DualIndex) -> Result<CMat> {
    check_margin(a, dual.degree())?;
    compressed_symbol(a, x, dual)
}

/// Symbol of the compressed operator itself, meaningful for every dual of the truncation.
pub fn compressed_symbol(a: &TruncatedOperator, x: &GroupPoint, dual: &DualIndex) -> Result<CMat> {
    let (applied, rep) = applied_block(a, x, dual)?;
    Ok(linalg::matmul_adj_left(&rep, &applied))
}

/// `sigma_A(x) xi (e_G)` computed as `(A L_x xi)(x)` with `L_x phi(y) = phi(x^{-1} y)`.
///
/// The translated matrix coefficients are transformed from samples at
/// `x^{-1} y`, so this route shares nothing with [`matrix_symbol`] beyond the
/// operator matrix.
pub fn translated_symbol(a: &TruncatedOperator, x: &GroupPoint, dual: &DualIndex) -> Result<CMat> {
    check_margin(a, dual.degree())?;
    let trunc = *a.trunc();
    if x.group() != trunc.group || dual.group() != trunc.group {
        return Err(Error::GroupMismatch {
            expected: trunc.group,
            found: if x.group() != trunc.group { x.group() } else { dual.group() },
        });
    }
    let deg = dual.degree();
    let inner = trunc.with_bound(deg);
    let quad = crate::peter_weyl::default_quadrature(trunc.group, 2 * deg);
    let xinv = x.inverse();
    let shifted: Vec<CMat> = quad
        .nodes
        .iter()
        .map(|y| rep_matrix(dual, &xinv.compose(y)?))
        .collect::<Result<_>>()?;
    let d = dual.dim();
    let mut out = linalg::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let samples: Vec<C64> = shifted.iter().map(|r| r[(i, j)]).collect();
            let spec = crate::peter_weyl::forward_transform(&samples, &quad, &inner, deg)?.resized(trunc);
            let coords = a.apply_coefficients(&spec.to_coefficient_vector())?;
            let image = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(trunc, &coords)?);
            out[(i, j)] = image.eval(x)?;
        }
    }
    Ok(out)
}

/// `hhat(xi) -> sigma_A(x, xi) hhat(xi)` on every block of `h`.
pub fn opvalued_apply(a: &TruncatedOperator, x: &GroupPoint, h: &BandlimitedFunction) -> Result<BandlimitedFunction> {
    check_margin(a, h.bound())?;
    let spec = h.spectrum();
    let blocks = spec
        .blocks()
        .map(|(dual, b)| Ok(linalg::matmul(&compressed_symbol(a, x, &dual)?, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandlimitedFunction::new(SpectrumSide::from_blocks(*spec.trunc(), blocks)?))
}

/// The quantization `(A f)(x) = sum_xi d_xi Tr(xi(x) sigma_A(x, xi) fhat(xi))`.
pub fn quantize_at(a: &TruncatedOperator, x: &GroupPoint, f: &BandlimitedFunction) -> Result<C64> {
    check_margin(a, f.bound())?;
    let mut acc = ZERO;
    for (dual, b) in f.spectrum().blocks() {
        let sigma = compressed_symbol(a, x, &dual)?;
        let rep = rep_matrix(&dual, x)?;
        let m = linalg::matmul(&linalg::matmul(&rep, &sigma), b);
        acc += linalg::trace(&m) * dual.dim() as f64;
    }
    Ok(acc)
}

/// `int sum_{xi in trunc_sym} d_xi Tr sigma_A(x, xi) dx` by quadrature.
///
/// The symbol is that of the compressed operator, so `trunc_sym` may reach the
/// full truncation; the integrand has degree `bound + trunc_sym.bound`, which the
/// rule must cover. With `trunc_sym` equal to the truncation this reproduces
/// the matrix trace.
pub fn trace_via_symbol(a: &TruncatedOperator, quad: &QuadratureRule, trunc_sym: &TruncationSpec) -> Result<C64> {
    let trunc = a.trunc();
    if trunc_sym.group != trunc.group || quad.group != trunc.group {
        return Err(Error::GroupMismatch {
            expected: trunc.group,
            found: if quad.group != trunc.group { quad.group } else { trunc_sym.group },
        });
    }
    if trunc_sym.bound > trunc.bound {
        return Err(Error::MarginViolation {
            label: trunc_sym.bound as i64,
            bound: trunc.bound,
            reach: a.reach(),
        });
    }
    quad.require(trunc.bound + trunc_sym.bound)?;
    let n = trunc.dim();
    let nsym = trunc_sym.dim();
    let rows: Vec<Vec<C64>> = quad
        .nodes
        .par_iter()
        .map(|x| basis_values(trunc, x))
        .collect::<Result<_>>()?;
    let phi = CMat::from_fn(rows.len(), n, |k, b| rows[k][b]);
    let phi_a = linalg::matmul(&phi, a.matrix());
    // sum over b < nsym: sum_ij conj(xi_ij) d (A xi)_ij collapses to conj(e_b) (Phi A)_b
    Ok(linalg::par_sum_by(
        rows.len(),
        |k| {
            let terms: Vec<C64> = (0..nsym).map(|b| phi[(k, b)].conj() * phi_a[(k, b)]).collect();
            linalg::pairwise_sum(&terms) * quad.weights[k]
        },
        |x, y| x + y,
        ZERO,
    ))
}

/// Rule exact enough for [`trace_via_symbol`] at the full truncation.
pub fn trace_quadrature(trunc: &TruncationSpec) -> QuadratureRule {
    crate::peter_weyl::default_quadrature(trunc.group, 2 * trunc.bound)
}

/// CSV rows `coords..., label, row, col, re, im` of the symbol at the given points.
pub fn symbol_csv(a: &TruncatedOperator, points: &[GroupPoint], duals: &[DualIndex]) -> Result<String> {
    let mut out = String::new();
    let ncoords = points.first().map(|p| p.chart_coords().len()).unwrap_or(0);
    for c in 0..ncoords {
        out.push_str(&format!("x{},", c + 1));
    }
    out.push_str("label,row,col,re,im\n");
    for x in points {
        let coords: Vec<String> = x.chart_coords().iter().map(|v| format!("{v:e}")).collect();
        for dual in duals {
            let s = matrix_symbol(a, x, dual)?;
            for i in 0..s.nrows() {
                for j in 0..s.ncols() {
                    out.push_str(&format!(
                        "{},{},{},{},{:e},{:e}\n",
                        coords.join(","),
                        dual.label(),
                        i,
                        j,
                        s[(i, j)].re,
                        s[(i, j)].im
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_quadrature, CirclePoint};
    use crate::group::GroupTag;
    use crate::operator::{op_from_multiplier, op_multiplication, MultiplierProjection};
    use crate::su2::{su2_quadrature_euler, Su2Element};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_function(trunc: TruncationSpec, rng: &mut ChaCha8Rng) -> BandlimitedFunction {
        let c: Vec<C64> = (0..trunc.dim())
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(trunc, &c).unwrap())
    }

    #[test]
    fn identity_symbol() {
        let t = TruncationSpec::su2(3);
        let id = TruncatedOperator::identity(t);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let x = GroupPoint::Su2(Su2Element::random(&mut rng));
        for dual in t.duals() {
            let s = matrix_symbol(&id, &x, &dual).unwrap();
            assert!(linalg::max_abs_diff(&s, &linalg::identity(dual.dim())) < 1e-12);
        }
    }

    #[test]
    fn multiplication_symbol_is_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f = random_function(TruncationSpec::su2(1), &mut rng);
        let t = TruncationSpec::su2(4);
        let m = op_multiplication(&f, &t, &su2_quadrature_euler(3)).unwrap();
        for _ in 0..5 {
            let x = GroupPoint::Su2(Su2Element::random(&mut rng));
            let fx = f.eval(&x).unwrap();
            for tl in 0..=3 {
                let s = matrix_symbol(&m, &x, &DualIndex::su2(tl)).unwrap();
                let e = linalg::scale(&linalg::identity(tl as usize + 1), fx);
                assert!(linalg::max_abs_diff(&s, &e) < 1e-11);
            }
        }
        assert!(matches!(
            matrix_symbol(&m, &GroupPoint::identity(GroupTag::Su2), &DualIndex::su2(4)),
            Err(Error::MarginViolation { .. })
        ));
    }

    #[test]
    fn multiplier_symbol_is_the_block() {
        let t = TruncationSpec::su2(3);
        let p = MultiplierProjection::su2_sign(t);
        let op = op_from_multiplier(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..3 {
            let x = GroupPoint::Su2(Su2Element::random(&mut rng));
            for (dual, b) in p.blocks() {
                assert!(linalg::max_abs_diff(&matrix_symbol(&op, &x, &dual).unwrap(), b) < 1e-12);
            }
        }
    }

    #[test]
    fn frozen_coefficient_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let f = random_function(TruncationSpec::circle(2), &mut rng);
        let t = TruncationSpec::circle(10);
        let m = op_multiplication(&f, &t, &circle_quadrature(8)).unwrap();
        let h = random_function(TruncationSpec::circle(5), &mut rng);
        let x = GroupPoint::Circle(CirclePoint::new(0.7));
        let out = opvalued_apply(&m, &x, &h).unwrap();
        let expected = h.scaled(f.eval(&x).unwrap());
        assert!(out.spectrum().max_abs_diff(expected.spectrum()) < 1e-11);
        let id = TruncatedOperator::identity(t);
        assert!(opvalued_apply(&id, &x, &h).unwrap().spectrum().max_abs_diff(h.spectrum()) < 1e-13);
    }

    #[test]
    fn quantization_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let t = TruncationSpec::su2(4);
        let g = random_function(TruncationSpec::su2(1), &mut rng);
        let q = su2_quadrature_euler(3);
        let m = op_multiplication(&g, &t, &q).unwrap();
        let a = op_from_multiplier(&MultiplierProjection::hardy(t)).compose(&m).unwrap();
        let f = random_function(TruncationSpec::su2(3), &mut rng);
        let coords = a.apply_coefficients(&f.spectrum().resized(t).to_coefficient_vector()).unwrap();
        let af = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(t, &coords).unwrap());
        for _ in 0..5 {
            let x = GroupPoint::Su2(Su2Element::random(&mut rng));
            let lhs = af.eval(&x).unwrap();
            let rhs = quantize_at(&a, &x, &f).unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn adjoint_symbol_consistency() {
        // <A xi_ij, xi_kl> = conj <A^* xi_kl, xi_ij> on a random right-invariant A
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let t = TruncationSpec::su2(2);
        let blocks: Vec<CMat> = t
            .duals()
            .iter()
            .map(|d| CMat::from_fn(d.dim(), d.dim(), |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        let n = t.dim();
        let mut m = linalg::zeros(n, n);
        for (dual, p) in t.duals().iter().zip(&blocks) {
            let d = dual.dim();
            let o = t.block_offset(dual).unwrap();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        m[(o + i * d + j, o + i * d + k)] = p[(j, k)];
                    }
                }
            }
        }
        let a = TruncatedOperator::new(t, m, 0, "A").unwrap();
        let x = GroupPoint::Su2(Su2Element::random(&mut rng));
        for (dual, p) in t.duals().iter().zip(&blocks) {
            let s = matrix_symbol(&a, &x, dual).unwrap();
            let s_adj = matrix_symbol(&a.adjoint(), &x, dual).unwrap();
            assert!(linalg::max_abs_diff(&s, p) < 1e-12);
            assert!(linalg::max_abs_diff(&s_adj, &linalg::adjoint(&s)) < 1e-12);
        }
    }

    #[test]
    fn trace_formula_for_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = random_function(TruncationSpec::su2(2), &mut rng);
        let t = TruncationSpec::su2(4);
        let m = op_multiplication(&f, &t, &su2_quadrature_euler(3)).unwrap();
        let q = trace_quadrature(&t);
        let tr = trace_via_symbol(&m, &q, &t).unwrap();
        assert!((tr - crate::operator::op_trace(&m)).norm() < 1e-9);
        // interior piece: (sum d^2) * int f
        let inner = TruncationSpec::su2(2);
        let mean = f.spectrum().block(&DualIndex::su2(0)).unwrap()[(0, 0)];
        let part = trace_via_symbol(&m, &q, &inner).unwrap();
        assert!((part - mean * inner.dim() as f64).norm() < 1e-9);
        let z = TruncatedOperator::zero(t);
        assert_eq!(trace_via_symbol(&z, &q, &t).unwrap(), ZERO);
    }

    #[test]
    fn translation_route_matches_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let t = TruncationSpec::su2(6);
        let f = random_function(TruncationSpec::su2(1), &mut rng);
        let m = op_multiplication(&f, &t, &su2_quadrature_euler(5)).unwrap();
        let a = op_from_multiplier(&MultiplierProjection::hardy(t)).compose(&m).unwrap();
        let x = GroupPoint::Su2(Su2Element::random(&mut rng));
        for tl in 0..=5 {
            let dual = DualIndex::su2(tl);
            let s = matrix_symbol(&a, &x, &dual).unwrap();
            let r = translated_symbol(&a, &x, &dual).unwrap();
            assert!(linalg::max_abs_diff(&s, &r) < 1e-12, "2l={tl}");
        }
    }

    #[test]
    fn symbol_csv_layout() {
        let t = TruncationSpec::circle(2);
        let csv = symbol_csv(
            &TruncatedOperator::identity(t),
            &[GroupPoint::Circle(CirclePoint::new(0.0))],
            &[DualIndex::circle(0)],
        )
        .unwrap();
        assert_eq!(csv, "x1,label,row,col,re,im\n0e0,0,0,0,1e0,0e0\n");
    }
}
