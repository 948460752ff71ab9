//! Exact polynomial and truncated power-series algebra, the backward shift
//! operator `E: f(x) -> f(x-1)`, and the operator-form identities for the
//! genus generating polynomial `A_n(x)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, factorial};
use crate::{Error, Result};

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Dense univariate polynomial with exact rational coefficients.
/// Index is the exponent; trailing zeros are always trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::new(coeffs.into_iter().map(|c| rat(c)).collect())
    }

    /// `x + c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: usize) -> BigRational {
        self.coeffs.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `f(x + c)`, by Horner's scheme in the ring of polynomials.
    pub fn shift(&self, c: &BigRational) -> Self {
        let step = Polynomial::linear(c.clone());
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, a| {
            &(&acc * &step) + &Polynomial::constant(a.clone())
        })
    }

    /// `f(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let q = rem[top].clone() / &lead;
            let shift = top - dd;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &q * d;
                }
            }
            quot[shift] = q;
            rem.pop();
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scale(&lead.recip())
    }

    /// Multiplicity of `x` as a factor (zero for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Power series `c_0 + c_1 x + ... + c_order x^order`, exact modulo `x^(order+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> BigRational) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn reciprocal(&self) -> Result<TruncatedSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::InvalidArgument(
                "series reciprocal needs a nonzero constant term".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(BigRational::zero(), |acc, i| acc + &self.coeffs[i] * &out[k - i]);
            out.push(-s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut result = TruncatedSeries::new(self.order(), vec![BigRational::one()]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }
}

/// The series of `(x/2) / tanh(x/2)` up to `x^order`, assembled as
/// `cosh(x/2) / (sinh(x/2) / (x/2))` so that no pole is ever divided.
pub fn tanh_ratio_series(order: usize) -> TruncatedSeries {
    let half_power = |k: usize, fact: usize| -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32) * factorial(fact))
    };
    let cosh = TruncatedSeries::from_fn(order, |k| {
        if k % 2 == 0 {
            half_power(k, k)
        } else {
            BigRational::zero()
        }
    });
    let sinh_over = TruncatedSeries::from_fn(order, |k| {
        if k % 2 == 0 {
            half_power(k, k + 1)
        } else {
            BigRational::zero()
        }
    });
    cosh.mul(&sinh_over.reciprocal().expect("constant term is 1"))
}

/// `(x + offset)(x + offset - 1) ... (x + offset - length + 1)`.
pub fn falling_factorial_poly(offset: i64, length: usize) -> Polynomial {
    (0..length as i64).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::linear(rat(offset - i))
    })
}

/// A polynomial `p(t) = a_0 + a_1 t + ... + a_n t^n` to be applied as `p(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorPolynomial {
    a: Vec<BigRational>,
}

impl OperatorPolynomial {
    pub fn new(mut a: Vec<BigRational>) -> Self {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        OperatorPolynomial { a }
    }

    /// `(1 + t)^n`
    pub fn one_plus_t_pow(n: usize) -> Self {
        Self::new((0..=n).map(|k| rat(binomial(n, k as i64))).collect())
    }

    /// `(1 - t^2)^n`
    pub fn one_minus_t_squared_pow(n: usize) -> Self {
        let mut a = vec![BigRational::zero(); 2 * n + 1];
        for j in 0..=n {
            let c = binomial(n, j as i64);
            a[2 * j] = if j % 2 == 0 { rat(c) } else { -rat(c) };
        }
        Self::new(a)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.a
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.a.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree `n` with `a_n != 0`; `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.a.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.a.iter().map(|x| x * c).collect())
    }
}

/// `p(E) f = sum_k a_k f(x - k)`.
pub fn apply_shift_operator(p: &OperatorPolynomial, f: &Polynomial) -> Polynomial {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .fold(Polynomial::zero(), |acc, (k, a)| {
            &acc + &f.shift(&rat(-(k as i64))).scale(a)
        })
}

/// `(2n)! / (2^n n! (n+1)!)`
fn prop13_prefactor(n: usize) -> BigRational {
    BigRational::new(
        factorial(2 * n),
        BigInt::from(2).pow(n as u32) * factorial(n) * factorial(n + 1),
    )
}

/// `A_n(x)` as `(2n)!/(2^n n! (n+1)!) (1+E)^n (x+n)_{n+1}`.
pub fn prop13_polynomial(n: usize) -> Polynomial {
    apply_shift_operator(
        &OperatorPolynomial::one_plus_t_pow(n),
        &falling_factorial_poly(n as i64, n + 1),
    )
    .scale(&prop13_prefactor(n))
}

/// `A_n(x)` as `1/(2^n n! (2n+1)) (1-E^2)^n (x+2n)_{2n+1}`.
pub fn stanley_polynomial(n: usize) -> Polynomial {
    let scale = BigRational::new(
        BigInt::one(),
        BigInt::from(2).pow(n as u32) * factorial(n) * (2 * n + 1),
    );
    apply_shift_operator(
        &OperatorPolynomial::one_minus_t_squared_pow(n),
        &falling_factorial_poly(2 * n as i64, 2 * n + 1),
    )
    .scale(&scale)
}

/// Checks `a_1/a_0 = a_{n-1}/a_n` and
/// `k a_k + (n-k+2) a_{k-2} = (a_1/a_0) a_{k-1}` for `2 <= k <= n`.
pub fn theorem4_premises_hold(p: &OperatorPolynomial) -> Result<bool> {
    let n = match p.degree() {
        None => return Err(Error::DegenerateOperator("p is the zero polynomial".into())),
        Some(n) => n,
    };
    if p.coeff(0).is_zero() {
        return Err(Error::DegenerateOperator("a_0 = 0".into()));
    }
    if n == 0 {
        return Ok(true);
    }
    let ratio = p.coeff(1) / p.coeff(0);
    if ratio != p.coeff(n - 1) / p.coeff(n) {
        return Ok(false);
    }
    for k in 2..=n {
        let lhs = p.coeff(k) * rat(k) + p.coeff(k - 2) * rat(n + 2 - k);
        if lhs != &ratio * p.coeff(k - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn checked_premises(p: &OperatorPolynomial, n: usize) -> Result<BigRational> {
    if p.degree() != Some(n) {
        return Err(Error::PremiseViolation(format!(
            "degree of p is {:?}, expected {n}",
            p.degree()
        )));
    }
    if !theorem4_premises_hold(p)? {
        return Err(Error::PremiseViolation(
            "coefficient conditions fail".into(),
        ));
    }
    Ok(p.coeff(1) / p.coeff(0))
}

/// `F(x) = p(E)(x+n)_{n+1}`.
pub fn operator_image(p: &OperatorPolynomial, n: usize) -> Polynomial {
    apply_shift_operator(p, &falling_factorial_poly(n as i64, n + 1))
}

/// Verifies `(n + 2 + a_1/a_0) F(x) = x (F(x+1) - F(x-1))` as a polynomial identity.
pub fn theorem4_functional_identity(p: &OperatorPolynomial, n: usize) -> Result<bool> {
    let ratio = checked_premises(p, n)?;
    let f = operator_image(p, n);
    let lhs = f.scale(&(ratio + rat(n + 2)));
    let diff = &f.shift(&BigRational::one()) - &f.shift(&-BigRational::one());
    let rhs = &Polynomial::x() * &diff;
    Ok((&lhs - &rhs).is_zero())
}

/// Right-hand side of the coefficient identity at exponent `k`:
/// `sum_{j>=1} C(k+2j, 2j+1) b_{k+2j}`.
fn odd_derivative_sum(b: &Polynomial, k: usize) -> BigRational {
    let top = b.degree().unwrap_or(0);
    (1..)
        .map(|j| k + 2 * j)
        .take_while(|&e| e <= top)
        .map(|e| b.coeff(e) * rat(binomial(e, (e - k) as i64 + 1)))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// Verifies `((n + 2 + a_1/a_0)/2 - k) b_k = sum_{j>=1} C(k+2j, 2j+1) b_{k+2j}`
/// for every `k`, where `b_k = [x^k] p(E)(x+n)_{n+1}`.
pub fn theorem4_coefficient_identity(p: &OperatorPolynomial, n: usize) -> Result<bool> {
    let ratio = checked_premises(p, n)?;
    let b = operator_image(p, n);
    let half = (ratio + rat(n + 2)) / rat(2);
    let top = b.degree().unwrap_or(0) + 2;
    Ok((0..=top).all(|k| (&half - rat(k)) * b.coeff(k) == odd_derivative_sum(&b, k)))
}

/// One instance of the genus recursion read off the coefficient identity for
/// `A_n(x)`: `lhs = 2g A(n,g)` and `terms[k-1] = C(n+1-2(g-k), 2k+1) A(n, g-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusRecursionInstance {
    pub n: usize,
    pub g: usize,
    pub lhs: BigRational,
    pub terms: Vec<BigRational>,
}

/// Specializes the coefficient identity to `p(t) = c (1+t)^n`, the operator
/// form of `A_n(x)`, and returns one instance per genus `0 <= g <= n/2`.
pub fn theorem4_genus_instances(n: usize) -> Result<Vec<GenusRecursionInstance>> {
    let p = OperatorPolynomial::one_plus_t_pow(n).scale(&prop13_prefactor(n));
    let ratio = checked_premises(&p, n)?;
    let b = operator_image(&p, n);
    let half = (ratio + rat(n + 2)) / rat(2);
    let mut out = Vec::new();
    for g in 0..=n / 2 {
        let k = n + 1 - 2 * g;
        let lhs = (&half - rat(k)) * b.coeff(k);
        let terms = (1..=g)
            .map(|j| b.coeff(k + 2 * j) * rat(binomial(k + 2 * j, 2 * j as i64 + 1)))
            .collect();
        out.push(GenusRecursionInstance { n, g, lhs, terms });
    }
    Ok(out)
}

/// Number of sign changes in a sequence, zeros skipped.
fn sign_changes(values: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in values.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm sequence `s, s', -rem(s, s'), ...`.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

/// Distinct real roots of a squarefree polynomial in `(-inf, 0)`; requires `p(0) != 0`.
fn negative_root_count(squarefree: &Polynomial) -> usize {
    let seq = sturm_sequence(squarefree);
    let at_neg_inf = seq.iter().map(|q| {
        let s = sign(&q.leading_coeff());
        if q.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    });
    let at_zero = seq.iter().map(|q| sign(&q.coeff(0)));
    sign_changes(at_neg_inf) - sign_changes(at_zero)
}

/// True iff every root of `p` other than `x = 0` is real and negative.
///
/// Strips the factor `x^m`, reduces the rest to its squarefree part and
/// counts negative roots with a Sturm sequence.
pub fn sturm_negative_real_rooted(p: &Polynomial) -> bool {
    assert!(!p.is_zero(), "zero polynomial has no well-defined roots");
    let m = p.x_valuation();
    let rest = Polynomial::new(p.coeffs()[m..].to_vec());
    if rest.degree() == Some(0) {
        return true;
    }
    let g = rest.gcd(&rest.derivative());
    let squarefree = rest.div_rem(&g).0;
    negative_root_count(&squarefree) == squarefree.degree().unwrap_or(0)
}

/// `s_g^2 >= s_{g-1} s_{g+1}` at every interior index.
pub fn log_concave(seq: &[BigInt]) -> bool {
    seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `H(x) = sum_g A(n,g) x^{floor((n+1)/2) - g}` from the genus counts of `A_n`.
pub fn h_polynomial(n: usize, counts: &[BigInt]) -> Polynomial {
    let top = n.div_ceil(2);
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for (g, c) in counts.iter().enumerate() {
        if g <= top {
            coeffs[top - g] = rat(c.clone());
        }
    }
    Polynomial::new(coeffs)
}

/// `f(x^2)`
pub fn substitute_square(f: &Polynomial) -> Polynomial {
    let mut coeffs = vec![BigRational::zero(); 2 * f.coeffs().len()];
    for (i, c) in f.coeffs().iter().enumerate() {
        coeffs[2 * i] = c.clone();
    }
    Polynomial::new(coeffs)
}

/// Checks the parity split `H(x^2) = x Q(x)` (n odd) or `H(x^2) = Q(x)`
/// (n even), where `x Q(x) = A_n(x)`.
pub fn h_parity_reconstruction(n: usize, a_n: &Polynomial, counts: &[BigInt]) -> bool {
    let (q, r) = a_n.div_rem(&Polynomial::x());
    if !r.is_zero() {
        return false;
    }
    let h_sq = substitute_square(&h_polynomial(n, counts));
    if n % 2 == 1 {
        h_sq == &Polynomial::x() * &q
    } else {
        h_sq == q
    }
}

/// Exact integer test for a rational.
pub fn to_integer(r: &BigRational, context: &str) -> Result<BigInt> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else {
        Err(Error::NonIntegerResult {
            context: context.to_string(),
            value: r.to_string(),
        })
    }
}
