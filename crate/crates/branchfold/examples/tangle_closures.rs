//! Rational tangles and their closures. An n-twist tangle closes to a knot
//! exactly when n is odd; even twist counts close to a two-component link,
//! which the closure reports as an error instead of a diagram. The resulting
//! codes print in the same plain text the CLI reads back.

use branchfold::knots::{alexander, format_pd, parse_pd, rational_tangle, tangle_close};

fn main() {
    for n in 0..=5i64 {
        match tangle_close(&rational_tangle(n), &rational_tangle(0)) {
            Ok(pd) => {
                let poly = alexander(&pd).expect("closure is a knot");
                println!(
                    "closure of {n} twists: knot with {} crossings, {} Seifert circles, poly {poly}",
                    pd.crossing_count(),
                    pd.seifert_circles(),
                );
            }
            Err(e) => println!("closure of {n} twists: {e}"),
        }
    }

    let pd = tangle_close(&rational_tangle(3), &rational_tangle(0)).expect("knot");
    let text = format_pd(&pd);
    println!("\nthree-twist closure as text:\n{text}");
    let back = parse_pd(&text).expect("own output parses");
    assert_eq!(back, pd);
}
