//! Wigner matrices of SU(2): the spin-1 small-d matrix, and how far the
//! representations up to spin 3 are from unitary and multiplicative.

use lie_toeplitz::linalg;
use lie_toeplitz::su2::{rep_matrix, su2_multiply, wigner_D, wigner_d_small, EulerAngles, Su2Element};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let beta = 0.9;
    let d = wigner_d_small(2, beta);
    println!("d^1({beta}):");
    for i in 0..3 {
        println!("  {:>9.5} {:>9.5} {:>9.5}", d[(i, 0)], d[(i, 1)], d[(i, 2)]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("\nspin  unitarity   homomorphism");
    for two_l in 0..=6u32 {
        let (mut unit, mut hom) = (0.0f64, 0.0f64);
        for _ in 0..100 {
            let g = Su2Element::random(&mut rng);
            let h = Su2Element::random(&mut rng);
            let rg = rep_matrix(two_l, &g);
            let rh = rep_matrix(two_l, &h);
            let n = two_l as usize + 1;
            unit = unit.max(linalg::max_abs_diff(&linalg::matmul_adj_left(&rg, &rg), &linalg::identity(n)));
            hom = hom.max(linalg::max_abs_diff(&rep_matrix(two_l, &su2_multiply(&g, &h)), &linalg::matmul(&rg, &rh)));
        }
        println!("{:>4.1}  {unit:.2e}    {hom:.2e}", two_l as f64 / 2.0);
    }

    let e = EulerAngles::new(0.3, 1.1, 4.2).unwrap();
    let dm = wigner_D(1, &e);
    let g = e.to_element();
    println!(
        "\nD^(1/2)(0.3, 1.1, 4.2) against the group element: {:.1e}",
        linalg::max_abs_diff(&dm, &rep_matrix(1, &g))
    );
}
