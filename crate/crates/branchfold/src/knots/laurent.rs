//! Integer Laurent polynomials with exact big-integer coefficients.
//!
//! Alexander polynomials are defined up to a unit (a sign and a power of t),
//! so comparison normalizes: lowest exponent 0, top coefficient positive.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    /// exponent -> coefficient; zero coefficients are never stored.
    coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Laurent {
        Laurent::term(0, 1)
    }

    /// c * t^e
    pub fn term(exp: i64, c: i64) -> Laurent {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(exp, BigInt::from(c));
        }
        Laurent { coeffs }
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Laurent {
        let mut p = Laurent::zero();
        for (e, c) in terms {
            p.bump(*e, &BigInt::from(*c));
        }
        p
    }

    fn bump(&mut self, exp: i64, c: &BigInt) {
        use num_bigint::Sign;
        if c.sign() == Sign::NoSign {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.sign() == Sign::NoSign {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Difference between highest and lowest exponent; 0 for the zero poly.
    pub fn breadth(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.bump(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.bump(ea + eb, &(ca * cb));
            }
        }
        out
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes t -> 1/t.
    pub fn invert_variable(&self) -> Laurent {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Exact division; None when the divisor does not divide exactly.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let d_max = divisor.max_exp().unwrap();
        let d_lead = divisor.coeff(d_max);
        // An exact quotient's exponents lie in [min/min, max/max] of the
        // operands; without this floor, division by a Laurent polynomial
        // could peel terms forever toward -infinity.
        let min_quot_exp = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while !rem.is_zero() {
            let r_max = rem.max_exp().unwrap();
            let r_lead = rem.coeff(r_max);
            let q = &r_lead / &d_lead;
            if &q * &d_lead != r_lead {
                return None;
            }
            let exp = r_max - d_max;
            if exp < min_quot_exp {
                return None;
            }
            let term = Laurent { coeffs: BTreeMap::from([(exp, q)]) };
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Sum of coefficients (evaluation at t = 1).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Unit-normal form: lowest exponent 0, highest coefficient positive.
    pub fn normalized(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let shifted = self.shift(-self.min_exp().unwrap());
        use num_bigint::Sign;
        if shifted.coeff(shifted.max_exp().unwrap()).sign() == Sign::Minus {
            shifted.neg()
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by a unit (sign times a power of t).
    pub fn equivalent(&self, other: &Laurent) -> bool {
        self.normalized() == other.normalized()
    }
}

/// Sorted "exponent:coefficient" pairs; "0" for the zero polynomial.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Fraction-free Bareiss determinant over integer Laurent polynomials.
/// Every interior division is exact by the Sylvester identity; row swaps
/// only flip the sign. The determinant of the empty matrix is 1.
pub fn determinant(mut m: Vec<Vec<Laurent>>) -> Laurent {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    if n == 0 {
        return Laurent::one();
    }
    let mut sign = false;
    let mut prev = Laurent::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|r| !m[*r][k].is_zero()) else {
                return Laurent::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Laurent::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> Laurent {
        Laurent::from_terms(terms)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[(0, 1), (1, -1), (2, 1)]);
        let b = p(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(a.shift(-1), b);
        assert!(a.equivalent(&b));
        assert!(a.equivalent(&b.neg()));
        assert!(!a.equivalent(&p(&[(0, 1), (1, 1)])));
        assert_eq!(a.sub(&a), Laurent::zero());
        assert_eq!(a.breadth(), 2);
        assert_eq!(Laurent::zero().breadth(), 0);
        assert_eq!(a.eval_one(), 1.into());
        assert_eq!(a.invert_variable().normalized(), a.normalized());
    }

    #[test]
    fn multiplication_and_exact_division() {
        let a = p(&[(0, 2), (1, 3)]);
        let b = p(&[(-2, -1), (0, 5)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(p(&[(0, 1), (1, 1)]).div_exact(&p(&[(0, 2)])).is_none());
        assert!(p(&[(0, 1), (2, 1)]).div_exact(&p(&[(0, 1), (1, 1)])).is_none());
        assert_eq!(Laurent::zero().div_exact(&a).unwrap(), Laurent::zero());
        assert!(a.div_exact(&Laurent::zero()).is_none());
    }

    #[test]
    fn normalization_fixes_sign_and_offset() {
        let a = p(&[(3, -1), (4, 2), (5, -3)]);
        let n = a.normalized();
        assert_eq!(n, p(&[(0, 1), (1, -2), (2, 3)]));
        assert_eq!(n.min_exp(), Some(0));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        // 2x2 oracle: ad - bc.
        let a = p(&[(0, 1)]);
        let b = p(&[(1, -1)]);
        let c = p(&[(0, 1), (1, -1)]);
        let d = p(&[(0, 1)]);
        let det = determinant(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
        assert_eq!(det, a.mul(&d).sub(&b.mul(&c)));

        // 3x3 integer oracle via the rule of Sarrus.
        let m: Vec<Vec<i64>> = vec![vec![2, 0, 1], vec![3, 5, -2], vec![1, 4, 0]];
        let sarrus = 2 * (5 * 0 - (-2) * 4) - 0 * (3 * 0 - (-2) * 1) + 1 * (3 * 4 - 5 * 1);
        let pm: Vec<Vec<Laurent>> = m.iter().map(|r| r.iter().map(|x| Laurent::term(0, *x)).collect()).collect();
        assert_eq!(determinant(pm), Laurent::term(0, sarrus));

        assert_eq!(determinant(Vec::new()), Laurent::one());
        let zero_row = vec![vec![Laurent::zero(), Laurent::zero()], vec![a.clone(), d]];
        assert_eq!(determinant(zero_row), Laurent::zero());

        // Pivot swap path: leading zero forces a row exchange.
        let swap = vec![vec![Laurent::zero(), a.clone()], vec![a.clone(), Laurent::zero()]];
        assert_eq!(determinant(swap), a.mul(&a).neg());
    }

    #[test]
    fn display_lists_sorted_exponent_coefficient_pairs() {
        assert_eq!(p(&[(2, 1), (0, 1), (1, -1)]).to_string(), "0:1 1:-1 2:1");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(p(&[(-1, 7)]).to_string(), "-1:7");
    }
}
