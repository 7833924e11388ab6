//! Matrix symbols of a Toeplitz operator on SU(2): the symbol of Pi M_f Pi at
//! a point, the connection between operator-valued and matrix symbols, and the
//! trace formula.

use lie_toeplitz::builtin::builtin_symbol;
use lie_toeplitz::group::{DualIndex, GroupPoint, TruncationSpec};
use lie_toeplitz::linalg;
use lie_toeplitz::operator::{op_from_multiplier, op_multiplication, op_trace, MultiplierProjection};
use lie_toeplitz::peter_weyl::default_quadrature;
use lie_toeplitz::su2::euler_element;
use lie_toeplitz::symbol::{matrix_symbol, trace_quadrature, trace_via_symbol, translated_symbol};

fn main() {
    let t = TruncationSpec::su2(6);
    let f = builtin_symbol("su2:shifted-real").unwrap();
    let quad = default_quadrature(t.group, f.bound() + 2 * t.bound);
    let m = op_multiplication(&f, &t, &quad).unwrap();
    let pi = op_from_multiplier(&MultiplierProjection::hardy(t));
    let toe = pi.compose(&m).unwrap().compose(&pi).unwrap();

    let x = GroupPoint::Su2(euler_element(0.4, 1.2, -0.7));
    println!("f(x) = {:.6}", f.eval(&x).unwrap());
    let dual = DualIndex::su2(2);
    let s = matrix_symbol(&toe, &x, &dual).unwrap();
    println!("symbol of Pi M_f Pi at spin 1:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| format!("{:>18.6}", s[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }
    let r = translated_symbol(&toe, &x, &dual).unwrap();
    println!("operator-valued symbol at the identity vs matrix symbol: {:.1e}", linalg::max_abs_diff(&s, &r));

    let q = trace_quadrature(&t);
    println!(
        "Tr(Pi M_f Pi) = {:.10} directly, {:.10} from the symbol",
        op_trace(&toe),
        trace_via_symbol(&toe, &q, &t).unwrap()
    );
}
