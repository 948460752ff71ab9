//! Integer primitives: factorials, binomials, unsigned Stirling numbers of the
//! first kind, integer partitions and odd-cycle permutation counts.

use std::collections::BTreeMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(x)_k = x (x-1) ... (x-k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// `n` choose `k`, zero when `k` is out of `0..=n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Triangular table of unsigned Stirling numbers of the first kind,
/// `C(n, k)` = number of permutations of `n` elements with `k` cycles.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut table = StirlingTable {
            rows: vec![vec![BigInt::one()]],
        };
        table.extend_to(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            for k in 1..=m {
                // C(m, k) = C(m-1, k-1) + (m-1) C(m-1, k)
                let mut v = prev[k - 1].clone();
                if k < m {
                    v += &prev[k] * (m - 1);
                }
                row[k] = v;
            }
            self.rows.push(row);
        }
    }

    /// Entry `C(n, k)`; zero outside `0 <= k <= n`. Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        if k < 0 || k as usize > n {
            return BigInt::zero();
        }
        self.rows[n][k as usize].clone()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

static STIRLING: LazyLock<RwLock<StirlingTable>> =
    LazyLock::new(|| RwLock::new(StirlingTable::new(0)));

fn ensure_stirling(n: usize) {
    if STIRLING.read().unwrap().max_n() >= n {
        return;
    }
    STIRLING.write().unwrap().extend_to(n);
}

/// Memoized `C(n, k)`.
pub fn stirling_first_unsigned(n: usize, k: i64) -> BigInt {
    ensure_stirling(n);
    STIRLING.read().unwrap().get(n, k)
}

/// An integer partition stored as part-size multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    multiplicities: BTreeMap<usize, usize>,
}

impl Partition {
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut multiplicities = BTreeMap::new();
        for &p in parts {
            assert!(p >= 1, "partition parts must be positive");
            *multiplicities.entry(p).or_insert(0) += 1;
        }
        Partition { multiplicities }
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, usize> {
        &self.multiplicities
    }

    /// Multiplicity `c_i` of part size `i`.
    pub fn count(&self, part: usize) -> usize {
        self.multiplicities.get(&part).copied().unwrap_or(0)
    }

    /// The partitioned integer `sum i c_i`.
    pub fn weight(&self) -> usize {
        self.multiplicities.iter().map(|(i, c)| i * c).sum()
    }

    /// Number of parts `l(lambda)`.
    pub fn length(&self) -> usize {
        self.multiplicities.values().sum()
    }
}

/// All partitions of `g`, largest parts first, each exactly once.
pub fn partitions_of(g: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions_rec(g, g, 1, &mut parts, &mut |p| {
        out.push(Partition::from_parts(p))
    });
    out
}

/// Visits partitions of `remaining` with parts at most `max_part`, drawn from
/// `step`-spaced sizes ending at `max_part` (`step = 2` with odd `max_part`
/// gives odd parts).
fn partitions_rec(
    remaining: usize,
    max_part: usize,
    step: usize,
    parts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(parts);
        return;
    }
    let mut part = max_part.min(remaining);
    if step == 2 && part.is_multiple_of(2) {
        part -= 1;
    }
    while part >= 1 {
        parts.push(part);
        partitions_rec(remaining - part, part, step, parts, visit);
        parts.pop();
        if part < step {
            break;
        }
        part -= step;
    }
}

/// Row `n` of the odd-cycle table: entry `g` is `O(n, g)`.
fn odd_cycle_row(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut row = vec![BigInt::zero(); (n - 1) / 2 + 1];
    let n_fact = factorial(n);
    let mut parts = Vec::new();
    let top = if n % 2 == 1 { n } else { n - 1 };
    partitions_rec(n, top, 2, &mut parts, &mut |p| {
        // permutations of cycle type p: n! / prod(m^{c_m} c_m!)
        let lambda = Partition::from_parts(p);
        let denom = lambda
            .multiplicities()
            .iter()
            .fold(BigInt::one(), |acc, (&m, &c)| {
                acc * BigInt::from(m).pow(c as u32) * factorial(c)
            });
        let g = (n - p.len()) / 2;
        row[g] += &n_fact / denom;
    });
    row
}

static ODD_CYCLES: LazyLock<RwLock<Vec<Vec<BigInt>>>> = LazyLock::new(|| RwLock::new(Vec::new()));

/// `O(n, g)`: permutations of `[n]` made of exactly `n - 2g` cycles, all odd.
///
/// `O(0, 0) = 1`; zero whenever `n - 2g <= 0` with `n >= 1`.
pub fn odd_cycle_permutations(n: usize, g: i64) -> BigInt {
    if g < 0 {
        return BigInt::zero();
    }
    {
        let table = ODD_CYCLES.read().unwrap();
        if let Some(row) = table.get(n) {
            return row.get(g as usize).cloned().unwrap_or_default();
        }
    }
    let mut table = ODD_CYCLES.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        table.push(odd_cycle_row(m));
    }
    table[n].get(g as usize).cloned().unwrap_or_default()
}

/// `O(n+1, g)` by classifying on the length of the cycle through one element:
/// `O(n, g) + sum_{k=1}^{g} (n)_{2k} O(n-2k, g-k)`.
pub fn odd_cycle_recurrence_a1(n: usize, g: i64) -> BigInt {
    if g < 0 {
        return BigInt::zero();
    }
    let mut total = odd_cycle_permutations(n, g);
    for k in 1..=g {
        let rest = n as i64 - 2 * k;
        if rest < 0 {
            break;
        }
        total += falling_factorial(n as i64, 2 * k as usize)
            * odd_cycle_permutations(rest as usize, g - k);
    }
    total
}

/// `O(n+1, g)` by the three-term form `O(n, g) + n(n-1) O(n-1, g-1)`.
pub fn odd_cycle_recurrence_a2(n: usize, g: i64) -> BigInt {
    if g < 0 {
        return BigInt::zero();
    }
    let mut total = odd_cycle_permutations(n, g);
    if n >= 1 {
        total += BigInt::from(n * (n - 1)) * odd_cycle_permutations(n - 1, g - 1);
    }
    total
}
