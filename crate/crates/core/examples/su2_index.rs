//! Index of a Toeplitz operator on SU(2). The symbol 3 + x1 + x3 is real and
//! invertible, so the index is zero; the example shows the Connes trace with
//! five commutators, the kernel count and the commutator spectrum.

use lie_toeplitz::builtin::builtin_symbol;
use lie_toeplitz::group::TruncationSpec;
use lie_toeplitz::index::{index_report, IndexOptions, Method, TraceRoute};
use lie_toeplitz::operator::MultiplierProjection;

fn main() {
    let two_b = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8u32);
    let t = TruncationSpec::su2(two_b);
    let f = builtin_symbol("su2:shifted-real").unwrap();
    let p = MultiplierProjection::hardy(t);
    let methods = [
        Method::Connes { m: 5, route: TraceRoute::Direct },
        Method::Connes { m: 5, route: TraceRoute::ViaSymbol },
        Method::Svd,
    ];
    let r = index_report(&f, "su2:shifted-real", &p, &t, &methods, &IndexOptions::default());
    println!("spin bound {}, {} basis functions", t.bandwidth(), t.dim());
    for m in &r.methods {
        match (&m.raw, &m.error) {
            (Some(raw), _) => println!("{:<7} {:<34} {:+.3e}", m.name, m.params.to_string(), raw[0]),
            (None, Some(e)) => println!("{:<7} error: {e}", m.name),
            _ => {}
        }
    }
    println!("agreement: {}", r.agreement);
    if let Some(s) = &r.summability {
        println!(
            "[Pi, M_f]: rank {}, decay exponent {:.3}, largest singular values {:.4?}",
            s.numerical_rank,
            s.decay_exponent_fit.unwrap_or(f64::NAN),
            &s.singular_values[..6]
        );
    }
}
