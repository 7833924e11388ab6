//! Index of Toeplitz operators on the circle by winding number, Connes
//! commutator trace and kernel counting.

use lie_toeplitz::builtin::builtin_symbol;
use lie_toeplitz::group::{GroupTag, TruncationSpec};
use lie_toeplitz::index::{all_methods, index_report, IndexOptions, IndexReport};
use lie_toeplitz::operator::MultiplierProjection;

fn main() {
    let t = TruncationSpec::circle(32);
    let p = MultiplierProjection::hardy(t);
    let mut names: Vec<String> = (-3..=3).map(|k| format!("circle:char:k={k}")).collect();
    names.push("circle:mixed:k=2,c=3".into());
    names.push("circle:mixed:k=-1,c=2,s=-1".into());
    println!("{}", IndexReport::csv_header());
    for name in &names {
        let f = builtin_symbol(name).unwrap();
        let r = index_report(&f, name, &p, &t, &all_methods(GroupTag::Circle), &IndexOptions::default());
        println!("{}", r.csv_row());
    }
}
