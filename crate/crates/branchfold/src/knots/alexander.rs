//! Alexander polynomial from a planar-diagram code.
//!
//! Arcs are maximal over-strand runs: the two over labels at each crossing
//! belong to one arc. Each crossing contributes one linear relation among
//! the arcs it meets; the polynomial is the determinant of the relation
//! matrix with one row and one column removed, exact over integer Laurent
//! polynomials, normalized to lowest exponent 0 and positive leading
//! coefficient.

use std::collections::BTreeMap;

use super::laurent::{determinant, Laurent};
use super::pd::{to_diagram, PdCode, PdError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlexanderError {
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("code traces {0} components, expected 1")]
    MultiComponent(usize),
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }
}

/// Arc index for every edge label, numbering arcs in order of their
/// smallest label.
fn arc_classes(pd: &PdCode) -> BTreeMap<u64, usize> {
    let n = 2 * pd.crossing_count() as u64;
    let mut uf = UnionFind::new(n as usize + 1);
    for t in &pd.crossings {
        uf.union(t[1] as usize, t[3] as usize);
    }
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for e in 1..=n {
        let root = uf.find(e as usize);
        let next = arc_of_root.len();
        let arc = *arc_of_root.entry(root).or_insert(next);
        classes.insert(e, arc);
    }
    classes
}

pub fn alexander(pd: &PdCode) -> Result<Laurent, AlexanderError> {
    pd.validate()?;
    let c = pd.crossing_count();
    if c == 0 {
        return Ok(Laurent::one());
    }
    let comps = to_diagram(pd)?.closed_components();
    if comps != 1 {
        return Err(AlexanderError::MultiComponent(comps));
    }

    let arcs = arc_classes(pd);
    let arc_count = arcs.values().copied().max().unwrap() + 1;
    debug_assert_eq!(arc_count, c);

    let t = Laurent::term(1, 1);
    let one = Laurent::one();
    let mut rows = Vec::with_capacity(c);
    for (i, tuple) in pd.crossings.iter().enumerate() {
        let [a, b, _, d] = *tuple;
        let under_out = tuple[2];
        let mut row = vec![Laurent::zero(); arc_count];
        let (in_coeff, over_coeff, out_coeff) = if pd.sign(i) > 0 {
            (t.clone(), one.sub(&t), Laurent::term(0, -1))
        } else {
            (one.clone(), t.sub(&one), t.neg())
        };
        // A kink can route one arc through two roles; contributions add.
        row[arcs[&a]] = row[arcs[&a]].add(&in_coeff);
        row[arcs[&b.min(d)]] = row[arcs[&b.min(d)]].add(&over_coeff);
        row[arcs[&under_out]] = row[arcs[&under_out]].add(&out_coeff);
        rows.push(row);
    }

    rows.pop();
    for row in &mut rows {
        row.pop();
    }
    Ok(determinant(rows).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::pd::{self, connected_sum, mirror, with_kink};
    use crate::knots::tangle::{rational_tangle, square_double, square_tangle, tangle_close};

    fn poly(terms: &[(i64, i64)]) -> Laurent {
        Laurent::from_terms(terms)
    }

    #[test]
    fn small_knot_polynomials() {
        assert_eq!(alexander(&pd::unknot()).unwrap(), Laurent::one());
        assert_eq!(
            alexander(&PdCode { crossings: vec![[2, 1, 1, 2]] }).unwrap(),
            Laurent::one()
        );
        assert_eq!(alexander(&pd::trefoil()).unwrap(), poly(&[(0, 1), (1, -1), (2, 1)]));
        assert_eq!(alexander(&pd::figure_eight()).unwrap(), poly(&[(0, 1), (1, -3), (2, 1)]));
        // Mirrors share the polynomial.
        assert_eq!(alexander(&mirror(&pd::trefoil()).unwrap()).unwrap(), poly(&[(0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn trefoil_matches_the_centered_form() {
        let centered = poly(&[(-1, 1), (0, -1), (1, 1)]);
        assert!(alexander(&pd::trefoil()).unwrap().equivalent(&centered));
    }

    #[test]
    fn square_knot_polynomial_three_ways() {
        let expected = poly(&[(0, 1), (1, -2), (2, 3), (3, -2), (4, 1)]);
        let via_sum = alexander(&connected_sum(&pd::trefoil(), &mirror(&pd::trefoil()).unwrap()).unwrap()).unwrap();
        assert_eq!(via_sum, expected);

        let via_tangle = alexander(&tangle_close(&square_tangle(), &rational_tangle(0)).unwrap()).unwrap();
        assert_eq!(via_tangle, expected);

        // Fox-Milnor shape for this ribbon knot: f(t) * f(1/t) up to units.
        let f = poly(&[(-1, 1), (0, -1), (1, 1)]);
        assert!(via_tangle.equivalent(&f.mul(&f.invert_variable())));
    }

    #[test]
    fn connected_sum_multiplies_polynomials() {
        let sample = [pd::unknot(), pd::trefoil(), pd::figure_eight()];
        for a in &sample {
            for b in &sample {
                let joined = alexander(&connected_sum(a, b).unwrap()).unwrap();
                let product = alexander(a).unwrap().mul(&alexander(b).unwrap());
                assert!(joined.equivalent(&product), "sum of {a:?} and {b:?}");
            }
        }
    }

    #[test]
    fn generated_polynomials_are_symmetric_and_normalized_at_one() {
        let mut knots = vec![
            pd::trefoil(),
            pd::figure_eight(),
            connected_sum(&pd::trefoil(), &pd::figure_eight()).unwrap(),
            square_double(0, &pd::unknot()).unwrap(),
            square_double(3, &pd::unknot()).unwrap(),
            square_double(0, &pd::trefoil()).unwrap(),
        ];
        knots.push(with_kink(&knots[0], 2, 1).unwrap());
        for k in &knots {
            let p = alexander(k).unwrap();
            assert!(p.equivalent(&p.invert_variable()), "symmetry for {k:?}");
            let at_one = p.eval_one();
            assert!(*at_one.magnitude() == num_bigint::BigUint::from(1u32), "unit at 1 for {k:?}");
        }
    }

    #[test]
    fn twisted_doubles_have_small_breadth() {
        for m in [-1i64, 0, 1] {
            for j in [pd::unknot(), pd::trefoil()] {
                let k = square_double(2 * m + 1, &j).unwrap();
                let p = alexander(&k).unwrap();
                assert!(p.breadth() <= 2, "breadth {} for m={m}, pattern {} crossings", p.breadth(), j.crossing_count());
            }
        }
    }

    #[test]
    fn kink_moves_do_not_change_the_polynomial() {
        for label in [1u64, 4] {
            for sign in [1i8, -1] {
                let k = with_kink(&pd::trefoil(), label, sign).unwrap();
                assert!(alexander(&k).unwrap().equivalent(&alexander(&pd::trefoil()).unwrap()));
            }
        }
    }

    #[test]
    fn links_are_rejected() {
        let hopf = PdCode { crossings: vec![[1, 3, 2, 4], [3, 1, 4, 2]] };
        assert_eq!(alexander(&hopf), Err(AlexanderError::MultiComponent(2)));
    }
}
