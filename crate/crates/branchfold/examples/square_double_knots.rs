//! Builds square doubles: a companion knot is doubled through a six-crossing
//! tangle pattern, with an optional twist region between the two strands.
//! The untwisted double of the unknot is the square knot, and its Alexander
//! polynomial matches the connected sum of a trefoil and its mirror. Odd
//! twisting collapses the polynomial down to genus-one size while the
//! diagram stays visibly complicated.

use branchfold::knots::{
    alexander, connected_sum, mirror, seifert_genus_upper, square_double, trefoil, unknot,
};

fn main() {
    let patterns: [(&str, fn() -> branchfold::PdCode); 2] =
        [("unknot", unknot), ("trefoil", trefoil)];

    for (name, pattern) in patterns {
        for twists in [0i64, 1, 3, -1] {
            let k = square_double(twists, &pattern()).expect("pattern is a knot");
            let poly = alexander(&k).expect("double is a knot");
            println!(
                "double({twists:2}, {name:7}) {:2} crossings  genus bound {}  poly {}",
                k.crossing_count(),
                seifert_genus_upper(&k).expect("single component"),
                poly,
            );
        }
    }

    let composite = connected_sum(&trefoil(), &mirror(&trefoil()).unwrap()).unwrap();
    println!(
        "\ntrefoil # mirror trefoil        poly {}",
        alexander(&composite).unwrap()
    );
    println!("matches double(0, unknot) up to units: {}", {
        let d0 = square_double(0, &unknot()).unwrap();
        alexander(&d0).unwrap().equivalent(&alexander(&composite).unwrap())
    });
}
