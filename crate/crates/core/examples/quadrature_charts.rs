//! The two SU(2) quadratures: node counts for a given exactness and how well
//! each integrates products of matrix coefficients.

use lie_toeplitz::group::{basis_values, TruncationSpec};
use lie_toeplitz::linalg::{self, CMat};
use lie_toeplitz::su2::{su2_quadrature_euler_with_exactness, su2_quadrature_tvs_with_exactness};

fn main() {
    println!("exactness  euler nodes  tvs nodes  schur defect (euler, tvs)");
    for d in [2u32, 4, 8, 12] {
        let t = TruncationSpec::su2(d / 2);
        let mut defects = Vec::new();
        let mut counts = Vec::new();
        for q in [su2_quadrature_euler_with_exactness(d), su2_quadrature_tvs_with_exactness(d)] {
            let rows: Vec<Vec<_>> = q.nodes.iter().map(|x| basis_values(&t, x).unwrap()).collect();
            let phi = CMat::from_fn(rows.len(), t.dim(), |k, b| rows[k][b] * q.weights[k].sqrt());
            let gram = linalg::matmul_adj_left(&phi, &phi);
            defects.push(linalg::max_abs_diff(&gram, &linalg::identity(t.dim())));
            counts.push(q.len());
        }
        println!("{d:>9}  {:>11}  {:>9}  {:.1e}, {:.1e}", counts[0], counts[1], defects[0], defects[1]);
    }
}
