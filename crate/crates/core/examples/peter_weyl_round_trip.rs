//! Forward and inverse Fourier transform of a random band-limited function on
//! SU(2), under the Euler-angle and (t, nu, s) quadratures.

use lie_toeplitz::group::{BandlimitedFunction, GroupPoint, SpectrumSide, TruncationSpec};
use lie_toeplitz::peter_weyl::{forward_transform, inverse_transform, plancherel_norm, quadrature_l2_norm, sample};
use lie_toeplitz::su2::{su2_quadrature_euler, su2_quadrature_tvs, Su2Element};
use lie_toeplitz::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = TruncationSpec::su2(4);
    let c: Vec<C64> = (0..t.dim()).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let f = BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(t, &c).unwrap());
    println!("random function, spin <= 2, {} coefficients", t.dim());
    println!("plancherel norm {:.15}", plancherel_norm(f.spectrum()));

    let mut specs = Vec::new();
    for (name, q) in [("euler", su2_quadrature_euler(4)), ("tvs", su2_quadrature_tvs(4))] {
        let v = sample(&f, &q).unwrap();
        let back = forward_transform(&v, &q, &t, t.bound).unwrap();
        println!(
            "{name:>5}: {:>4} nodes, L2 norm {:.15}, coefficient error {:.1e}",
            q.len(),
            quadrature_l2_norm(&v, &q).unwrap(),
            back.max_abs_diff(f.spectrum())
        );
        specs.push(back);
    }
    println!("scheme disagreement {:.1e}", specs[0].max_abs_diff(&specs[1]));

    let x = GroupPoint::Su2(Su2Element::random(&mut rng));
    println!(
        "f(x) = {:.6}, inversion formula gives {:.6}",
        f.eval(&x).unwrap(),
        inverse_transform(&specs[1], &x).unwrap()
    );
}
