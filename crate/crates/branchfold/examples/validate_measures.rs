//! Checks the built-in boundary-parameter weight family against the models:
//! every member resolves at every branch curve, weights are all positive
//! exactly from n = 3 on, and the Euler characteristic comes out of the
//! linear functional without building the surface.

use branchfold::measures::{euler_functional, first_infeasible_curve, positive_weights};
use branchfold::models::{build_rg, fgn_measure};

fn main() {
    for g in 1..=3u32 {
        let model = build_rg(g).expect("valid genus");
        let bs = &model.surface;
        let chi = euler_functional(bs);
        println!("model {}:", bs.name);
        for n in 1..=8u64 {
            let w = fgn_measure(g, n).expect("valid parameters");
            let feasible = match first_infeasible_curve(bs, &w) {
                None => "resolves".to_string(),
                Some(c) => format!("stuck at {}", bs.curve(c).name),
            };
            println!(
                "  n={n:2}  weights {:?}  {}  positive={}  euler={}",
                w.weights(),
                feasible,
                positive_weights(&w),
                chi.evaluate(&w),
            );
        }
    }
}
