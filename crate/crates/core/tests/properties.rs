use proptest::prelude::*;

use lie_toeplitz::group::{BandlimitedFunction, DualIndex, GroupPoint, SpectrumSide, TruncationSpec};
use lie_toeplitz::index::{connes_index, svd_index, winding_number, IndexOptions, TraceRoute};
use lie_toeplitz::linalg::{self, C64};
use lie_toeplitz::operator::{op_commutator, op_from_multiplier, op_multiplication, op_singular_values, op_trace, MultiplierProjection};
use lie_toeplitz::peter_weyl::{default_quadrature, forward_transform, plancherel_norm, quadrature_l2_norm, sample};
use lie_toeplitz::su2::{rep_matrix, su2_multiply, su2_quadrature_euler, su2_quadrature_tvs, Su2Element};
use lie_toeplitz::symbol::{trace_quadrature, trace_via_symbol};

fn circle_terms(terms: &[(i32, C64)]) -> BandlimitedFunction {
    let b = terms.iter().map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0);
    let mut s = SpectrumSide::zeros(TruncationSpec::circle(b));
    for (n, c) in terms {
        let d = DualIndex::circle(*n);
        let old = s.block(&d).unwrap()[(0, 0)];
        s.set_entry(&d, 0, 0, old + c).unwrap();
    }
    BandlimitedFunction::new(s)
}

fn su2_element() -> impl Strategy<Value = Su2Element> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |q| q.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|q| {
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            Su2Element::from_quaternion([q[0] / n, q[1] / n, q[2] / n, q[3] / n]).unwrap()
        })
}

fn coefficients(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn representations_are_homomorphisms(g in su2_element(), h in su2_element(), two_l in 0u32..=6) {
        let lhs = rep_matrix(two_l, &su2_multiply(&g, &h));
        let rhs = linalg::matmul(&rep_matrix(two_l, &g), &rep_matrix(two_l, &h));
        prop_assert!(linalg::max_abs_diff(&lhs, &rhs) < 1e-11);
    }

    #[test]
    fn su2_plancherel_both_schemes(c in coefficients(TruncationSpec::su2(3).dim())) {
        let t = TruncationSpec::su2(3);
        let f = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(t, &c).unwrap());
        for q in [su2_quadrature_euler(3), su2_quadrature_tvs(3)] {
            let v = sample(&f, &q).unwrap();
            let back = forward_transform(&v, &q, &t, t.bound).unwrap();
            prop_assert!(back.max_abs_diff(f.spectrum()) < 1e-11);
            prop_assert!((quadrature_l2_norm(&v, &q).unwrap() - plancherel_norm(f.spectrum())).abs() < 1e-11);
        }
    }

    /// A dominant term `c e^{ik theta}` plus a small perturbation has winding `k`.
    #[test]
    fn circle_methods_agree_with_winding(k in -3i32..=3, c in 2.0f64..4.0, eps in coefficients(3)) {
        let mut terms = vec![(k, C64::new(c, 0.0))];
        for (j, e) in eps.iter().enumerate() {
            terms.push((k + j as i32 - 1, e * 0.15));
        }
        let f = circle_terms(&terms);
        let t = TruncationSpec::circle(32);
        let p = MultiplierProjection::hardy(t);
        let opts = IndexOptions::default();
        let wn = winding_number(&f, None, opts.delta_inv).unwrap();
        prop_assert_eq!(wn, k as i64);
        let s = svd_index(&f, &p, &t, &opts).unwrap();
        prop_assert_eq!(s.index, -wn);
        let c1 = connes_index(&f, &p, &t, 1, TraceRoute::Direct, &opts).unwrap();
        let c3 = connes_index(&f, &p, &t, 3, TraceRoute::Direct, &opts).unwrap();
        prop_assert!((c1.value() + wn as f64).abs() < 1e-6);
        prop_assert!((c1.value() - c3.value()).abs() < 1e-8);
    }

    #[test]
    fn commutator_rank_bounded_by_twice_bandwidth(b in 1u32..=5, c in coefficients(11)) {
        let terms: Vec<(i32, C64)> = (-(b as i32)..=b as i32).zip(c).collect();
        let f = circle_terms(&terms);
        let t = TruncationSpec::circle(20);
        let q = default_quadrature(t.group, b + 2 * t.bound);
        let m = op_multiplication(&f, &t, &q).unwrap();
        let comm = op_commutator(&op_from_multiplier(&MultiplierProjection::hardy(t)), &m).unwrap();
        let s = op_singular_values(&comm).unwrap();
        let rank = s.iter().filter(|v| **v > 1e-10 * s[0].max(1e-300)).count();
        prop_assert!(rank <= 2 * b as usize);
    }

    #[test]
    fn trace_routes_agree(c in coefficients(5), bound in 6u32..=12) {
        let t = TruncationSpec::su2(bound);
        let f = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(TruncationSpec::su2(1), &c).unwrap());
        let q = default_quadrature(t.group, 1 + 2 * bound);
        let a = op_from_multiplier(&MultiplierProjection::hardy(t)).compose(&op_multiplication(&f, &t, &q).unwrap()).unwrap();
        let via = trace_via_symbol(&a, &trace_quadrature(&t), &t).unwrap();
        prop_assert!((via - op_trace(&a)).norm() < 1e-9);
    }

    #[test]
    fn evaluation_matches_group_law(c in coefficients(TruncationSpec::su2(2).dim()), g in su2_element(), h in su2_element()) {
        // f(g^{-1} x) has coefficients fhat xi(g)^*
        let t = TruncationSpec::su2(2);
        let f = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(t, &c).unwrap());
        let blocks: Vec<_> = f.spectrum().blocks().map(|(d, b)| {
            let r = rep_matrix(d.label() as u32, &g);
            linalg::matmul(b, &linalg::adjoint(&r))
        }).collect();
        let shifted = BandlimitedFunction::new(SpectrumSide::from_blocks(t, blocks).unwrap());
        let x = GroupPoint::Su2(h);
        let gx = GroupPoint::Su2(su2_multiply(&g.inverse(), &h));
        prop_assert!((shifted.eval(&x).unwrap() - f.eval(&gx).unwrap()).norm() < 1e-11);
    }
}
