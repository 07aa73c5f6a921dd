//! The disjoint family: s+1 parallel copies of the genus-g model that embed
//! disjointly, distinguished by which copy of the U2 section they use. Each
//! member carries the same surfaces, so the verification grid must pass for
//! every index. Prints the grid as CSV, the CLI's `verify --s` output.

use branchfold::models::{grid_csv, verify_grid};

fn main() {
    let s = 3;
    let rows = verify_grid((1, 2), (1, 4), Some(s)).expect("valid ranges");
    print!("{}", grid_csv(&rows));

    let passed = rows.iter().filter(|r| r.pass).count();
    eprintln!("{passed}/{} cells pass across family indices 0..={s}", rows.len());
}
