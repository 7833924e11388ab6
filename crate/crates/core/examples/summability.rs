//! Singular values of [Pi, M_f]: finite rank on the circle, slow decay on
//! SU(2). Writes both spectra as CSV for `lie-toeplitz plot`.

use lie_toeplitz::builtin::builtin_symbol;
use lie_toeplitz::group::{BandlimitedFunction, TruncationSpec};
use lie_toeplitz::operator::{op_commutator, op_from_multiplier, op_multiplication, singular_values_csv, summability_report, MultiplierProjection};
use lie_toeplitz::peter_weyl::default_quadrature;

fn spectrum(name: &str, f: &BandlimitedFunction, t: TruncationSpec) {
    let q = default_quadrature(t.group, f.bound() + 2 * t.bound);
    let m = op_multiplication(f, &t, &q).unwrap();
    let c = op_commutator(&op_from_multiplier(&MultiplierProjection::hardy(t)), &m).unwrap();
    let p = (t.group.dimension() + 2) as f64;
    let r = summability_report(&c, p).unwrap();
    println!(
        "{name}: rank {}, finite-rank flag {}, decay exponent {}, sum of s^{p} = {:.6}",
        r.numerical_rank,
        r.finite_rank_flag,
        r.decay_exponent_fit.map(|e| format!("{e:.3}")).unwrap_or_else(|| "-".into()),
        r.partial_sums.last().unwrap()
    );
    let file = format!("{}.csv", name.replace([':', '=', ','], "_"));
    std::fs::write(&file, singular_values_csv(&r.singular_values)).unwrap();
    println!("  wrote {file}");
}

fn main() {
    spectrum("circle:mixed:k=2,c=3", &builtin_symbol("circle:mixed:k=2,c=3").unwrap(), TruncationSpec::circle(32));
    spectrum("su2:shifted-real", &builtin_symbol("su2:shifted-real").unwrap(), TruncationSpec::su2(12));
}
