//! Closed forms for `A(n, g)` and for the genus polynomial
//! `A_n(x) = sum_g A(n, g) x^{n+1-2g}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{
    binomial, factorial, falling_factorial, odd_cycle_permutations, partitions_of,
    stirling_first_unsigned,
};
use crate::symbolic::{falling_factorial_poly, tanh_ratio_series, to_integer, Polynomial};
use crate::{Error, Result};

/// Which formula or procedure produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    LehmanWalsh,
    OddCycles,
    Convolution,
    HzCoeff,
    HzRec,
    Chapuy,
    Oracle,
    HzPolynomial,
    NewPolynomial,
}

impl Method {
    /// Methods exposed as table generators.
    pub const TABLE_METHODS: [Method; 7] = [
        Method::LehmanWalsh,
        Method::OddCycles,
        Method::Convolution,
        Method::HzCoeff,
        Method::HzRec,
        Method::Chapuy,
        Method::Oracle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::LehmanWalsh => "lehman-walsh",
            Method::OddCycles => "odd-cycles",
            Method::Convolution => "convolution",
            Method::HzCoeff => "hz-coeff",
            Method::HzRec => "hz-rec",
            Method::Chapuy => "chapuy",
            Method::Oracle => "oracle",
            Method::HzPolynomial => "hz-poly",
            Method::NewPolynomial => "new-poly",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Method::LehmanWalsh,
            Method::OddCycles,
            Method::Convolution,
            Method::HzCoeff,
            Method::HzRec,
            Method::Chapuy,
            Method::Oracle,
            Method::HzPolynomial,
            Method::NewPolynomial,
        ]
        .into_iter()
        .find(|m| m.tag() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// `A(n, g)` for the legal range `0 <= g <= n/2`, tagged with its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    n: usize,
    counts: Vec<BigInt>,
    method: Method,
}

impl GenusTable {
    pub fn new(n: usize, mut counts: Vec<BigInt>, method: Method) -> Self {
        counts.resize(n / 2 + 1, BigInt::zero());
        GenusTable { n, counts, method }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Counts indexed by genus.
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `A(n, g)`, zero outside the legal range.
    pub fn get(&self, g: usize) -> BigInt {
        self.counts.get(g).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Same counts, regardless of method.
    pub fn same_counts(&self, other: &GenusTable) -> bool {
        self.n == other.n && self.counts == other.counts
    }
}

fn integral(r: BigRational, context: impl FnOnce() -> String) -> Result<BigInt> {
    to_integer(&r, &context())
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `(2n)! / ((n+1)! n!)`
pub fn catalan(n: usize) -> BigInt {
    factorial(2 * n) / (factorial(n + 1) * factorial(n))
}

/// Partition-sum formula:
/// `sum_{lambda |- g} (n+1)_{2g+l(lambda)} / (2^{2g} prod_i c_i! (2i+1)^{c_i}) * Cat(n)`.
pub fn lehman_walsh(n: usize, g: usize) -> Result<BigInt> {
    if 2 * g > n {
        return Ok(BigInt::zero());
    }
    let mut sum = BigRational::zero();
    for lambda in partitions_of(g) {
        // (n+1) n ... (n+2-2g-l): exactly 2g + l descending factors
        let rising = falling_factorial(n as i64 + 1, 2 * g + lambda.length());
        let denom = lambda
            .multiplicities()
            .iter()
            .fold(pow2(2 * g), |acc, (&i, &c)| {
                acc * factorial(c) * BigInt::from(2 * i + 1).pow(c as u32)
            });
        sum += BigRational::new(rising, denom);
    }
    integral(sum * BigRational::from_integer(catalan(n)), || {
        format!("lehman_walsh({n}, {g})")
    })
}

/// `(2n)! / ((n+1)! n! 2^{2g}) O(n+1, g)`.
pub fn a_via_odd_cycles(n: usize, g: usize) -> Result<BigInt> {
    if 2 * g > n {
        return Ok(BigInt::zero());
    }
    let r = BigRational::new(
        factorial(2 * n) * odd_cycle_permutations(n + 1, g as i64),
        factorial(n + 1) * factorial(n) * pow2(2 * g),
    );
    integral(r, || format!("a_via_odd_cycles({n}, {g})"))
}

/// `sum_{k=0}^{n} C(n,k) sum_{i+j=l} C(n-k+1, i) (-1)^{k+1-j} C(k+1, j)`,
/// the signed Stirling convolution at arbitrary total cycle count `l`.
pub fn stirling_convolution(n: usize, l: i64) -> BigInt {
    let mut total = BigInt::zero();
    if l < 2 {
        // i, j >= 1 for every nonzero term
        return total;
    }
    for k in 0..=n {
        let mut inner = BigInt::zero();
        for j in 1..=(k as i64 + 1).min(l - 1) {
            let i = l - j;
            let left = stirling_first_unsigned(n - k + 1, i);
            if left.is_zero() {
                continue;
            }
            let term = left * stirling_first_unsigned(k + 1, j);
            if (k as i64 + 1 - j) % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += binomial(n, k as i64) * inner;
    }
    total
}

/// `A-bar(n, g)`: the convolution at `l = n + 2 - 2g`.
pub fn stirling_convolution_bar(n: usize, g: usize) -> BigInt {
    stirling_convolution(n, n as i64 + 2 - 2 * g as i64)
}

/// `(2n)! / (2^n n! (n+1)!) A-bar(n, g)`.
pub fn a_via_convolution(n: usize, g: usize) -> Result<BigInt> {
    if 2 * g > n {
        return Ok(BigInt::zero());
    }
    let r = BigRational::new(
        factorial(2 * n) * stirling_convolution_bar(n, g),
        pow2(n) * factorial(n) * factorial(n + 1),
    );
    integral(r, || format!("a_via_convolution({n}, {g})"))
}

/// `(2n)! / ((n+1)! (n-2g)!) [x^{2g}] ((x/2)/tanh(x/2))^{n+1}`.
pub fn harer_zagier_coefficient(n: usize, g: usize) -> Result<BigInt> {
    if 2 * g > n {
        return Ok(BigInt::zero());
    }
    let series = tanh_ratio_series(2 * g + 1).pow(n as u32 + 1);
    let r = BigRational::new(factorial(2 * n), factorial(n + 1) * factorial(n - 2 * g))
        * series.coeff(2 * g);
    integral(r, || format!("harer_zagier_coefficient({n}, {g})"))
}

/// `binom(x + offset, k)` as a polynomial in `x`.
fn binomial_poly(offset: i64, k: usize) -> Polynomial {
    falling_factorial_poly(offset, k).scale(&BigRational::new(BigInt::one(), factorial(k)))
}

fn prefactor_double_factorial(n: usize) -> BigRational {
    BigRational::new(factorial(2 * n), pow2(n) * factorial(n))
}

/// `A_n(x) = (2n)!/(2^n n!) sum_{k>=1} 2^{k-1} C(n, k-1) binom(x, k)`.
pub fn hz_polynomial(n: usize) -> Polynomial {
    let mut sum = Polynomial::zero();
    for k in 1..=n + 1 {
        let c = BigRational::from_integer(pow2(k - 1) * binomial(n, k as i64 - 1));
        sum = &sum + &binomial_poly(0, k).scale(&c);
    }
    sum.scale(&prefactor_double_factorial(n))
}

/// `A_n(x) = (2n)!/(2^n n!) sum_{k>=0} C(n, k) binom(x + n - k, n + 1)`.
pub fn new_polynomial(n: usize) -> Polynomial {
    let mut sum = Polynomial::zero();
    for k in 0..=n {
        let c = BigRational::from_integer(binomial(n, k as i64));
        sum = &sum + &binomial_poly(n as i64 - k as i64, n + 1).scale(&c);
    }
    sum.scale(&prefactor_double_factorial(n))
}

/// Reads `A(n, g)` off the coefficient of `x^{n+1-2g}`.
pub fn genus_table_from_polynomial(p: &Polynomial, n: usize, method: Method) -> Result<GenusTable> {
    if p.degree().is_some_and(|d| d > n + 1) {
        return Err(Error::InvalidArgument(format!(
            "degree {:?} exceeds n + 1 = {}",
            p.degree(),
            n + 1
        )));
    }
    for (e, c) in p.coeffs().iter().enumerate() {
        if e % 2 != (n + 1) % 2 && !c.is_zero() {
            return Err(Error::ParityViolation(format!(
                "coefficient of x^{e} is {c}, expected 0 for n = {n}"
            )));
        }
    }
    let mut counts = Vec::with_capacity(n / 2 + 1);
    for g in 0..=n / 2 {
        let c = p.coeff(n + 1 - 2 * g);
        let v = to_integer(&c, &format!("coefficient of x^{}", n + 1 - 2 * g))?;
        if v.is_negative() {
            return Err(Error::NegativeCount {
                context: format!("A({n}, {g})"),
                value: v.to_string(),
            });
        }
        counts.push(v);
    }
    Ok(GenusTable::new(n, counts, method))
}

/// Full genus table for one closed-form method.
pub fn genus_table(n: usize, method: Method) -> Result<GenusTable> {
    let single: fn(usize, usize) -> Result<BigInt> = match method {
        Method::LehmanWalsh => lehman_walsh,
        Method::OddCycles => a_via_odd_cycles,
        Method::Convolution => a_via_convolution,
        Method::HzCoeff => harer_zagier_coefficient,
        Method::HzPolynomial => return genus_table_from_polynomial(&hz_polynomial(n), n, method),
        Method::NewPolynomial => {
            return genus_table_from_polynomial(&new_polynomial(n), n, method)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other} is not a closed form"
            )))
        }
    };
    let counts = (0..=n / 2)
        .map(|g| single(n, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(GenusTable::new(n, counts, method))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ip(c: &[i64]) -> Polynomial {
        Polynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), b(1));
        assert_eq!(catalan(3), b(5));
        assert_eq!(catalan(4), b(14));
    }

    #[test]
    fn spot_values_every_closed_form() {
        let forms: [fn(usize, usize) -> Result<BigInt>; 4] = [
            lehman_walsh,
            a_via_odd_cycles,
            a_via_convolution,
            harer_zagier_coefficient,
        ];
        for f in forms {
            assert_eq!(f(2, 1).unwrap(), b(1));
            assert_eq!(f(3, 1).unwrap(), b(10));
            assert_eq!(f(4, 1).unwrap(), b(70));
            assert_eq!(f(4, 2).unwrap(), b(21));
            for n in 1..12 {
                assert_eq!(f(n, 0).unwrap(), catalan(n));
            }
            assert_eq!(f(3, 2).unwrap(), b(0));
        }
    }

    #[test]
    fn convolution_bar_values() {
        assert_eq!(stirling_convolution_bar(2, 1), b(2));
        assert_eq!(stirling_convolution_bar(1, 0), b(2));
        assert_eq!(stirling_convolution_bar(2, 0), b(4));
        assert_eq!(stirling_convolution(1, 2), b(0));
        assert_eq!(stirling_convolution(0, 2), b(1));
    }

    #[test]
    fn convolution_bar_is_power_of_two_times_odd_cycles() {
        for n in 0..=20usize {
            for g in 0..=n / 2 + 1 {
                let rhs = odd_cycle_permutations(n + 1, g as i64) << (n.saturating_sub(2 * g));
                let rhs = if 2 * g > n { BigInt::zero() } else { rhs };
                assert_eq!(stirling_convolution_bar(n, g), rhs, "({n},{g})");
            }
        }
    }

    #[test]
    fn wrong_parity_convolution_vanishes() {
        for n in 0..=15usize {
            for l in 0..=(n as i64 + 4) {
                if (l - n as i64).rem_euclid(2) == 1 {
                    assert!(stirling_convolution(n, l).is_zero(), "({n},{l})");
                }
            }
        }
    }

    #[test]
    fn polynomials_small() {
        assert_eq!(hz_polynomial(1), ip(&[0, 0, 1]));
        assert_eq!(hz_polynomial(2), ip(&[0, 1, 0, 2]));
        assert_eq!(hz_polynomial(3), ip(&[0, 0, 10, 0, 5]));
        assert_eq!(new_polynomial(1), ip(&[0, 0, 1]));
        assert_eq!(new_polynomial(2), ip(&[0, 1, 0, 2]));
        assert_eq!(new_polynomial(4), ip(&[0, 21, 0, 70, 0, 14]));
    }

    #[test]
    fn table_from_polynomial() {
        let t = genus_table_from_polynomial(&ip(&[0, 0, 1]), 1, Method::NewPolynomial).unwrap();
        assert_eq!(t.counts(), &[b(1)]);
        let t = genus_table_from_polynomial(&ip(&[0, 1, 0, 2]), 2, Method::NewPolynomial).unwrap();
        assert_eq!(t.counts(), &[b(2), b(1)]);
        let t = genus_table_from_polynomial(&ip(&[0, 0, 10, 0, 5]), 3, Method::NewPolynomial)
            .unwrap();
        assert_eq!(t.counts(), &[b(5), b(10)]);
        assert_eq!(t.get(7), b(0));
        assert!(matches!(
            genus_table_from_polynomial(&ip(&[0, 1, 1, 2]), 2, Method::NewPolynomial),
            Err(Error::ParityViolation(_))
        ));
        let half = Polynomial::new(vec![
            BigRational::zero(),
            BigRational::new(b(1), b(2)),
            BigRational::zero(),
            BigRational::one(),
        ]);
        assert!(matches!(
            genus_table_from_polynomial(&half, 2, Method::NewPolynomial),
            Err(Error::NonIntegerResult { .. })
        ));
        assert!(matches!(
            genus_table_from_polynomial(&ip(&[0, -1, 0, 2]), 2, Method::NewPolynomial),
            Err(Error::NegativeCount { .. })
        ));
    }

    #[test]
    fn polynomial_symmetry() {
        for n in 1..=12usize {
            let p = new_polynomial(n);
            let sign = if (n + 1) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            assert_eq!(p, p.reflect().scale(&sign));
        }
    }

    #[test]
    fn method_tags_roundtrip() {
        for m in Method::TABLE_METHODS {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
