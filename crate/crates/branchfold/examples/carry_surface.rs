//! Resolves a measure into sheet counts, reconstructs the carried surface,
//! and reports its topology. Also shows the search over cyclic shifts and
//! fold flips when the default wiring is not wanted.

use branchfold::carried::{default_wiring, wiring_search};
use branchfold::models::{build_rg, fgn_measure};
use branchfold::{analyze, carry_report, reconstruct, resolve};

fn main() {
    let model = build_rg(2).expect("valid genus");
    let bs = &model.surface;
    let w = fgn_measure(2, 3).expect("valid parameters");

    // Step by step: resolve pair multiplicities, wire sheets, reconstruct.
    let resolution = resolve(bs, &w).expect("measure is invariant");
    for c in bs.curves() {
        let counts = &resolution.per_curve[c.id.0].counts;
        println!("curve {:4} pair multiplicities {:?}", c.name, counts);
    }
    let wiring = default_wiring(bs, &resolution, &model.overrides);
    let complex = reconstruct(bs, &w, &wiring).expect("wiring is consistent");
    let report = analyze(bs, &complex);
    println!("\ncarried surface:\n{report}");

    // The one-call form used by the CLI.
    let (_, again) = carry_report(bs, &w, &model.overrides).expect("measure is invariant");
    assert_eq!(report.euler, again.euler);

    // Search the declared freedom for an orientable reconstruction.
    let found = wiring_search(bs, &w, &model.freedom, |r| r.orientable);
    println!("search finds an orientable wiring: {}", found.is_some());
}
