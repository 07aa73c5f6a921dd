//! Enumerates the integer points of the invariant-measure cone up to a
//! weight bound and tabulates them by Euler characteristic. Every nonzero
//! point has strictly negative Euler characteristic; the boundary weight
//! grows with it, which is the numerical shadow of the carried surfaces
//! getting more complicated.

use std::collections::BTreeMap;

use branchfold::measures::{enumerate_measures, euler_functional};
use branchfold::models::build_rg;

fn main() {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let model = build_rg(1).expect("valid genus");
    let bs = &model.surface;

    let cone = enumerate_measures(bs, bound, &[]);
    let chi = euler_functional(bs);
    println!("bound {bound}: {} invariant measures", cone.len());

    let mut by_euler: BTreeMap<i64, usize> = BTreeMap::new();
    for m in &cone {
        *by_euler.entry(chi.evaluate(m)).or_default() += 1;
    }
    for (value, count) in &by_euler {
        println!("  euler {value:3}: {count} measure(s)");
    }

    println!("\nfirst few points (lexicographic):");
    for m in cone.iter().take(8) {
        println!("  {:?}", m.weights());
    }
}
