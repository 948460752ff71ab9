//! Acceptance gate. Runs every criterion exactly and prints one line each;
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use unimap::closed_forms::{
    a_via_convolution, a_via_odd_cycles, genus_table, harer_zagier_coefficient, hz_polynomial,
    lehman_walsh, new_polynomial, stirling_convolution, GenusTable, Method,
};
use unimap::combinatorics::binomial;
use unimap::involution_lab::{orbit_audit, pair_space_size, theorem1_check};
use unimap::maps_oracle::{
    brute_force_table, brute_force_table_serial, decode_triple, double_factorial_odd, Permutation,
};
use unimap::recurrences::{chapuy_table, hz_recurrence_table, tables_agree, RecurrenceTable};
use unimap::symbolic::{
    h_parity_reconstruction, h_polynomial, log_concave, prop13_polynomial, stanley_polynomial,
    sturm_negative_real_rooted, theorem4_coefficient_identity, theorem4_functional_identity,
    theorem4_genus_instances, theorem4_premises_hold, OperatorPolynomial,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed > limit {
        return Err(format!("{label} took {elapsed:.2?}, limit {limit:?}"));
    }
    Ok(())
}

/// The six primary methods at `(n, g)`.
fn six_values(
    n: usize,
    g: usize,
    hz: &RecurrenceTable,
    chapuy: &RecurrenceTable,
) -> Result<[(&'static str, BigInt); 6], String> {
    let e = |r: unimap::Result<BigInt>| r.map_err(|e| e.to_string());
    Ok([
        ("lehman-walsh", e(lehman_walsh(n, g))?),
        ("odd-cycles", e(a_via_odd_cycles(n, g))?),
        ("convolution", e(a_via_convolution(n, g))?),
        ("hz-coeff", e(harer_zagier_coefficient(n, g))?),
        ("hz-rec", hz.get(n, g)),
        ("chapuy", chapuy.get(n, g)),
    ])
}

fn ac1_six_way() -> Outcome {
    let start = Instant::now();
    let hz = hz_recurrence_table(30).map_err(|e| e.to_string())?;
    let chapuy = chapuy_table(30).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for n in 1..=30 {
        for g in 0..=n / 2 {
            let vals = six_values(n, g, &hz, &chapuy)?;
            if let Some((m, v)) = vals.iter().find(|(_, v)| *v != vals[0].1) {
                return Err(format!("A({n},{g}): {m} = {v}, lehman-walsh = {}", vals[0].1));
            }
            if vals[0].1 <= BigInt::zero() {
                return Err(format!("A({n},{g}) not positive"));
            }
            checked += 1;
        }
    }
    within("six-way sweep", start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{checked} (n,g) cells, n <= 30, in {:.2?}", start.elapsed()))
}

fn ac2_oracle() -> Outcome {
    let start = Instant::now();
    let hz = hz_recurrence_table(8).map_err(|e| e.to_string())?;
    let chapuy = chapuy_table(8).map_err(|e| e.to_string())?;
    let mut serial_time = Duration::ZERO;
    for n in 1..=8 {
        let t0 = Instant::now();
        let oracle = brute_force_table_serial(n, 9).map_err(|e| e.to_string())?;
        serial_time = t0.elapsed();
        let parallel = brute_force_table(n).map_err(|e| e.to_string())?;
        if oracle != parallel {
            return Err(format!("n = {n}: serial and partitioned tallies differ"));
        }
        if oracle.total() != double_factorial_odd(n) {
            return Err(format!("n = {n}: total {} != (2n-1)!!", oracle.total()));
        }
        for g in 0..=n / 2 {
            for (m, v) in six_values(n, g, &hz, &chapuy)? {
                if v != oracle.get(g) {
                    return Err(format!("A({n},{g}): {m} = {v}, oracle = {}", oracle.get(g)));
                }
            }
        }
    }
    within("serial n = 8 enumeration", serial_time, Duration::from_secs(60))?;
    Ok(format!(
        "n <= 8 exhaustive, 2027025 involutions at n = 8 in {serial_time:.2?} single-threaded (total {:.2?})",
        start.elapsed()
    ))
}

fn ac3_spot_values() -> Outcome {
    let spots = [(2, 1, 1), (3, 1, 10), (4, 1, 70), (4, 2, 21)];
    let hz = hz_recurrence_table(4).map_err(|e| e.to_string())?;
    let chapuy = chapuy_table(4).map_err(|e| e.to_string())?;
    for (n, g, expected) in spots {
        let mut values: Vec<(String, BigInt)> = six_values(n, g, &hz, &chapuy)?
            .into_iter()
            .map(|(m, v)| (m.to_string(), v))
            .collect();
        let oracle = brute_force_table(n).map_err(|e| e.to_string())?;
        values.push(("oracle".into(), oracle.get(g)));
        for m in [Method::HzPolynomial, Method::NewPolynomial] {
            let t: GenusTable = genus_table(n, m).map_err(|e| e.to_string())?;
            values.push((m.tag().into(), t.get(g)));
        }
        if let Some((m, v)) = values.iter().find(|(_, v)| *v != b(expected)) {
            return Err(format!("A({n},{g}) by {m} = {v}, expected {expected}"));
        }
    }
    Ok("A(2,1)=1, A(3,1)=10, A(4,1)=70, A(4,2)=21 by 9 methods".into())
}

fn ac4_worked_triple() -> Outcome {
    let p = |c: &[&[usize]]| Permutation::from_cycles(6, c).map_err(|e| e.to_string());
    let alpha = p(&[&[1, 4], &[2, 5], &[3, 6]])?;
    let triple = decode_triple(&alpha, 3).map_err(|e| e.to_string())?;
    let beta = p(&[&[1, 5, 3], &[4, 2, 6]])?;
    let gamma = p(&[&[1, 2, 3, 4, 5, 6]])?;
    if triple.beta != beta || triple.gamma != gamma {
        return Err(format!("beta = {}, gamma = {}", triple.beta, triple.gamma));
    }
    if triple.genus() != 1 {
        return Err(format!("genus {}", triple.genus()));
    }
    Ok(format!("alpha = {alpha} gives beta = {}, genus 1", triple.beta))
}

fn ac5_involutions() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0u64;
    for n in 0..=6 {
        let report = orbit_audit(n).map_err(|e| e.to_string())?;
        if let Some(f) = report.failures().next() {
            return Err(format!(
                "n = {n}, l = {}: {} ({})",
                f.l,
                f.property,
                f.counterexample.clone().unwrap_or_default()
            ));
        }
        if BigInt::from(report.pairs_audited) != pair_space_size(n) {
            return Err(format!("n = {n}: audited {} pairs", report.pairs_audited));
        }
        pairs += report.pairs_audited;
    }
    // Signed sums against the closed right-hand side, outside the audit.
    for n in 0..=4 {
        for l in 1..=n + 2 {
            if !theorem1_check(n, l).map_err(|e| e.to_string())? {
                return Err(format!("theorem1_check({n}, {l}) failed"));
            }
        }
    }
    within("orbit audits", start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "{pairs} pairs audited for n <= 6 (60480 at n = 6) in {:.2?}",
        start.elapsed()
    ))
}

fn ac6_operator_forms() -> Outcome {
    for n in 1..=20 {
        let reference = new_polynomial(n);
        let stanley = stanley_polynomial(n);
        for (name, p) in [
            ("prop13", prop13_polynomial(n)),
            ("stanley", stanley.clone()),
            ("hz", hz_polynomial(n)),
        ] {
            if p != reference {
                return Err(format!("n = {n}: {name} differs"));
            }
        }
        if stanley.degree() != Some(n + 1) {
            return Err(format!("n = {n}: degree {:?}", stanley.degree()));
        }
    }
    Ok("four forms identical for n <= 20; (1-E^2)^n form has degree n+1".into())
}

fn ac7_operator_recursion() -> Outcome {
    let chapuy = chapuy_table(30).map_err(|e| e.to_string())?;
    let e = |r: unimap::Result<bool>| r.map_err(|e| e.to_string());
    let mut instances = 0;
    for n in 1..=30 {
        let p = OperatorPolynomial::one_plus_t_pow(n);
        if !e(theorem4_premises_hold(&p))? {
            return Err(format!("premises fail at n = {n}"));
        }
        if !e(theorem4_functional_identity(&p, n))? {
            return Err(format!("functional identity fails at n = {n}"));
        }
        if !e(theorem4_coefficient_identity(&p, n))? {
            return Err(format!("coefficient identity fails at n = {n}"));
        }
        for inst in theorem4_genus_instances(n).map_err(|e| e.to_string())? {
            let g = inst.g;
            let lhs = BigRational::from_integer(BigInt::from(2 * g) * chapuy.get(n, g));
            let terms: Vec<BigRational> = (1..=g)
                .map(|k| {
                    BigRational::from_integer(
                        binomial(n + 1 - 2 * (g - k), 2 * k as i64 + 1) * chapuy.get(n, g - k),
                    )
                })
                .collect();
            if inst.lhs != lhs || inst.terms != terms {
                return Err(format!("instance (n, g) = ({n}, {g}) differs from Chapuy table"));
            }
            let sum = terms.iter().fold(BigRational::zero(), |a, t| a + t);
            if lhs != sum {
                return Err(format!("recursion fails at ({n}, {g})"));
            }
            instances += 1;
        }
    }
    Ok(format!("premises, both identities, {instances} recursion instances for n <= 30"))
}

fn ac8_parity_symmetry() -> Outcome {
    let mut vanishing = 0;
    for n in 0..=15usize {
        for l in 0..=n + 4 {
            if (l + n) % 2 == 1 {
                let v = stirling_convolution(n, l as i64);
                if !v.is_zero() {
                    return Err(format!("convolution({n}, {l}) = {v}"));
                }
                vanishing += 1;
            }
        }
    }
    for n in 1..=30 {
        let p = new_polynomial(n);
        let sign = if n % 2 == 1 { BigRational::one() } else { -BigRational::one() };
        if p != p.reflect().scale(&sign) {
            return Err(format!("A_{n}(x) != (-1)^(n+1) A_{n}(-x)"));
        }
    }
    Ok(format!("{vanishing} wrong-parity sums vanish (n <= 15); symmetry holds n <= 30"))
}

fn ac9_concavity() -> Outcome {
    let table = hz_recurrence_table(50).map_err(|e| e.to_string())?;
    for n in 1..=50 {
        if !log_concave(table.row(n)) {
            return Err(format!("A({n}, .) not log-concave"));
        }
    }
    let start = Instant::now();
    for n in 1..=20 {
        let h = h_polynomial(n, table.row(n));
        if !sturm_negative_real_rooted(&h) {
            return Err(format!("H for n = {n} is not real-rooted: {h}"));
        }
        if !h_parity_reconstruction(n, &new_polynomial(n), table.row(n)) {
            return Err(format!("H(x^2) reconstruction fails at n = {n}"));
        }
    }
    within("Sturm sweep", start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "log-concave n <= 50; H real-rooted n <= 20 (Sturm sweep {:.2?})",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    // Both recurrence tables must agree before anything else is meaningful.
    let (hz, ch) = (hz_recurrence_table(10).unwrap(), chapuy_table(10).unwrap());
    assert!(tables_agree(&hz, &ch));

    let criteria: [Criterion; 9] = [
        ("AC1 six-way equality n <= 30", ac1_six_way),
        ("AC2 oracle ground truth n <= 8", ac2_oracle),
        ("AC3 spot values", ac3_spot_values),
        ("AC4 worked genus-1 triple", ac4_worked_triple),
        ("AC5 involution certification n <= 6", ac5_involutions),
        ("AC6 operator identities n <= 20", ac6_operator_forms),
        ("AC7 operator genus recursion for (1+t)^n, n <= 30", ac7_operator_recursion),
        ("AC8 parity vanishing and symmetry", ac8_parity_symmetry),
        ("AC9 log-concavity and real-rootedness", ac9_concavity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
