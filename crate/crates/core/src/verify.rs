//! Verification suites that sweep every cross-check up to a bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::closed_forms::{
    genus_table, hz_polynomial, new_polynomial, stirling_convolution, stirling_convolution_bar,
    GenusTable, Method,
};
use crate::combinatorics::odd_cycle_permutations;
use crate::involution_lab::orbit_audit;
use crate::maps_oracle::{brute_force_table_with_cap, double_factorial_odd};
use crate::recurrences::{chapuy_table, hz_recurrence_table, tables_agree, RecurrenceTable};
use crate::symbolic::{
    h_parity_reconstruction, h_polynomial, log_concave, prop13_polynomial, stanley_polynomial,
    sturm_negative_real_rooted, theorem4_coefficient_identity, theorem4_functional_identity,
    theorem4_genus_instances, theorem4_premises_hold, OperatorPolynomial,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Involutions,
    Oracle,
    Polynomials,
    Concavity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::Involutions,
        Suite::Oracle,
        Suite::Polynomials,
        Suite::Concavity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Involutions => "involutions",
            Suite::Oracle => "oracle",
            Suite::Polynomials => "polynomials",
            Suite::Concavity => "concavity",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Identities => 30,
            Suite::Involutions => 6,
            Suite::Oracle => 8,
            Suite::Polynomials => 20,
            Suite::Concavity => 50,
        }
    }

    /// Largest `n_max` accepted without an explicit override.
    pub fn default_cap(self) -> usize {
        match self {
            Suite::Identities => 30,
            Suite::Involutions => 6,
            Suite::Oracle => crate::maps_oracle::ORACLE_DEFAULT_CAP,
            Suite::Polynomials => 30,
            Suite::Concavity => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks {
    suite: Suite,
    out: Vec<CheckResult>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Checks {
            suite,
            out: Vec::new(),
        }
    }

    /// Records one named check; `failure` is the first counterexample, if any.
    fn push(&mut self, name: impl Into<String>, failure: Option<String>, ok_detail: String) {
        self.out.push(CheckResult {
            suite: self.suite.name().to_string(),
            name: name.into(),
            passed: failure.is_none(),
            detail: failure.unwrap_or(ok_detail),
        });
    }

    /// Runs `check` over `ns`, reporting the first `n` where it fails.
    fn sweep(
        &mut self,
        name: &str,
        ns: impl IntoIterator<Item = usize> + Clone,
        mut check: impl FnMut(usize) -> Result<Option<String>>,
    ) {
        let (lo, hi) = {
            let v: Vec<usize> = ns.clone().into_iter().collect();
            (v.first().copied().unwrap_or(0), v.last().copied().unwrap_or(0))
        };
        let mut failure = None;
        for n in ns {
            match check(n) {
                Ok(None) => {}
                Ok(Some(msg)) => {
                    failure = Some(format!("n = {n}: {msg}"));
                    break;
                }
                Err(e) => {
                    failure = Some(format!("n = {n}: error {e}"));
                    break;
                }
            }
        }
        self.push(name, failure, format!("n = {lo}..={hi}"));
    }
}

const CLOSED_FORMS: [Method; 6] = [
    Method::LehmanWalsh,
    Method::OddCycles,
    Method::Convolution,
    Method::HzCoeff,
    Method::HzPolynomial,
    Method::NewPolynomial,
];

/// All genus tables for `n`: six closed forms and two recurrences.
pub fn all_method_tables(
    n: usize,
    hz: &RecurrenceTable,
    chapuy: &RecurrenceTable,
) -> Result<Vec<GenusTable>> {
    let mut tables = CLOSED_FORMS
        .iter()
        .map(|&m| genus_table(n, m))
        .collect::<Result<Vec<_>>>()?;
    tables.push(hz.genus_table(n));
    tables.push(chapuy.genus_table(n));
    Ok(tables)
}

fn disagreement(reference: &GenusTable, tables: &[GenusTable]) -> Option<String> {
    tables
        .iter()
        .find(|t| !t.same_counts(reference))
        .map(|t| {
            format!(
                "{} gives {:?}, {} gives {:?}",
                reference.method(),
                reference.counts(),
                t.method(),
                t.counts()
            )
        })
}

pub fn run_identities(n_max: usize) -> Result<Vec<CheckResult>> {
    let mut c = Checks::new(Suite::Identities);
    let hz = hz_recurrence_table(n_max.max(1))?;
    let chapuy = chapuy_table(n_max.max(1))?;
    c.push(
        "hz_and_chapuy_tables_agree",
        (!tables_agree(&hz, &chapuy)).then(|| "tables differ".to_string()),
        format!("n <= {n_max}"),
    );
    c.sweep("all_methods_agree", 1..=n_max, |n| {
        let tables = all_method_tables(n, &hz, &chapuy)?;
        Ok(disagreement(&tables[0], &tables[1..]))
    });
    c.sweep("all_counts_positive", 1..=n_max, |n| {
        Ok(hz
            .row(n)
            .iter()
            .position(|v| v <= &BigInt::zero())
            .map(|g| format!("A({n},{g}) is not positive")))
    });
    c.sweep("convolution_is_power_of_two_times_odd_cycles", 0..=n_max.min(20), |n| {
        Ok((0..=n / 2).find_map(|g| {
            let lhs = stirling_convolution_bar(n, g);
            let rhs = odd_cycle_permutations(n + 1, g as i64) << (n - 2 * g);
            (lhs != rhs).then(|| format!("g = {g}: {lhs} vs {rhs}"))
        }))
    });
    c.sweep("wrong_parity_convolution_vanishes", 0..=n_max.min(15), |n| {
        Ok((0..=n + 3)
            .filter(|l| (l + n) % 2 == 1)
            .find(|&l| !stirling_convolution(n, l as i64).is_zero())
            .map(|l| format!("l = {l}")))
    });
    c.sweep("polynomial_parity_symmetry", 1..=n_max, |n| {
        let p = new_polynomial(n);
        let sign = if n % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        Ok((p != p.reflect().scale(&sign)).then(|| "A_n(x) != (-1)^(n+1) A_n(-x)".into()))
    });
    c.sweep("hz_recurrence_via_odd_cycles", 2..=n_max.min(20), |n| {
        for g in 0..=n / 2 {
            let a = |m: usize, h: i64| -> Result<BigInt> {
                if h < 0 {
                    return Ok(BigInt::zero());
                }
                crate::closed_forms::a_via_odd_cycles(m, h as usize)
            };
            let ni = n as i64;
            let lhs = BigInt::from(ni + 1) * a(n, g as i64)?;
            let rhs = BigInt::from(2 * (2 * ni - 1)) * a(n - 1, g as i64)?
                + BigInt::from((2 * ni - 1) * (ni - 1) * (2 * ni - 3)) * a(n - 2, g as i64 - 1)?;
            if lhs != rhs {
                return Ok(Some(format!("g = {g}")));
            }
        }
        Ok(None)
    });
    Ok(c.out)
}

pub fn run_involutions(n_max: usize) -> Result<Vec<CheckResult>> {
    let mut c = Checks::new(Suite::Involutions);
    for n in 0..=n_max {
        let report = orbit_audit(n)?;
        let failure = report.failures().next().map(|f| {
            format!(
                "{} at l = {}: {}",
                f.property,
                f.l,
                f.counterexample.clone().unwrap_or_default()
            )
        });
        c.push(
            format!("orbit_audit n = {n}"),
            failure,
            format!(
                "{} pairs, {} properties",
                report.pairs_audited,
                report.checks.len()
            ),
        );
    }
    Ok(c.out)
}

pub fn run_oracle(n_max: usize, cap: usize) -> Result<Vec<CheckResult>> {
    let mut c = Checks::new(Suite::Oracle);
    let hz = hz_recurrence_table(n_max.max(1))?;
    let chapuy = chapuy_table(n_max.max(1))?;
    for n in 1..=n_max {
        let oracle = brute_force_table_with_cap(n, cap)?;
        let tables = all_method_tables(n, &hz, &chapuy)?;
        let mut failure = disagreement(&oracle, &tables);
        if failure.is_none() && oracle.total() != double_factorial_odd(n) {
            failure = Some(format!("total {} != (2n-1)!!", oracle.total()));
        }
        c.push(
            format!("oracle n = {n}"),
            failure,
            format!("{:?}", oracle.counts()),
        );
    }
    Ok(c.out)
}

pub fn run_polynomials(n_max: usize) -> Result<Vec<CheckResult>> {
    let mut c = Checks::new(Suite::Polynomials);
    c.sweep("operator_forms_agree", 1..=n_max, |n| {
        let reference = new_polynomial(n);
        let forms = [
            ("prop13", prop13_polynomial(n)),
            ("stanley", stanley_polynomial(n)),
            ("hz", hz_polynomial(n)),
        ];
        Ok(forms
            .into_iter()
            .find(|(_, p)| *p != reference)
            .map(|(name, p)| format!("{name} = {p}, new = {reference}")))
    });
    c.sweep("stanley_degree_collapses", 1..=n_max, |n| {
        let d = stanley_polynomial(n).degree();
        Ok((d != Some(n + 1)).then(|| format!("degree {d:?}")))
    });
    c.sweep("theorem4_premises", 1..=n_max, |n| {
        let ok = theorem4_premises_hold(&OperatorPolynomial::one_plus_t_pow(n))?;
        Ok((!ok).then(|| "premises fail".into()))
    });
    c.sweep("theorem4_functional_identity", 1..=n_max, |n| {
        let ok = theorem4_functional_identity(&OperatorPolynomial::one_plus_t_pow(n), n)?;
        Ok((!ok).then(|| "identity fails".into()))
    });
    c.sweep("theorem4_coefficient_identity", 1..=n_max, |n| {
        let ok = theorem4_coefficient_identity(&OperatorPolynomial::one_plus_t_pow(n), n)?;
        Ok((!ok).then(|| "identity fails".into()))
    });
    let chapuy = chapuy_table(n_max.max(1))?;
    c.sweep("theorem4_reproduces_chapuy", 1..=n_max, |n| {
        for inst in theorem4_genus_instances(n)? {
            let g = inst.g;
            let lhs = BigRational::from_integer(BigInt::from(2 * g) * chapuy.get(n, g));
            let terms: Vec<BigRational> = (1..=g)
                .map(|k| {
                    BigRational::from_integer(
                        crate::combinatorics::binomial(n + 1 - 2 * (g - k), 2 * k as i64 + 1)
                            * chapuy.get(n, g - k),
                    )
                })
                .collect();
            if inst.lhs != lhs || inst.terms != terms {
                return Ok(Some(format!("g = {g}")));
            }
        }
        Ok(None)
    });
    Ok(c.out)
}

pub fn run_concavity(n_max: usize) -> Result<Vec<CheckResult>> {
    let mut c = Checks::new(Suite::Concavity);
    let table = hz_recurrence_table(n_max.max(1))?;
    c.sweep("log_concave", 1..=n_max, |n| {
        Ok((!log_concave(table.row(n))).then(|| format!("{:?}", table.row(n))))
    });
    c.sweep("h_real_rooted", 1..=n_max, |n| {
        let h = h_polynomial(n, table.row(n));
        Ok((!sturm_negative_real_rooted(&h)).then(|| format!("H = {h}")))
    });
    c.sweep("h_parity_reconstruction", 1..=n_max, |n| {
        let ok = h_parity_reconstruction(n, &new_polynomial(n), table.row(n));
        Ok((!ok).then(|| "H(x^2) does not match A_n(x)".into()))
    });
    Ok(c.out)
}

/// Runs one suite at `n_max`; `oracle_cap` bounds the brute-force enumeration.
pub fn run_suite(suite: Suite, n_max: usize, oracle_cap: usize) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Identities => run_identities(n_max),
        Suite::Involutions => run_involutions(n_max),
        Suite::Oracle => run_oracle(n_max, oracle_cap),
        Suite::Polynomials => run_polynomials(n_max),
        Suite::Concavity => run_concavity(n_max),
    }
}
