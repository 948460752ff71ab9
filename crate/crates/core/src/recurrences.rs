//! `A(n, g)` tables built from recurrences alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::closed_forms::{catalan, GenusTable, Method};
use crate::combinatorics::binomial;
use crate::{Error, Result};

/// Dense `A(n, g)` for `0 <= n <= n_max`, `0 <= g <= n/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceTable {
    n_max: usize,
    rows: Vec<Vec<BigInt>>,
    seed_spec: &'static str,
    method: Method,
}

impl RecurrenceTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn seed_spec(&self) -> &'static str {
        self.seed_spec
    }

    /// `A(n, g)`; zero outside the table or the legal genus range.
    pub fn get(&self, n: usize, g: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(g))
            .cloned()
            .unwrap_or_default()
    }

    fn get_signed(&self, n: i64, g: i64) -> BigInt {
        if n < 0 || g < 0 {
            return BigInt::zero();
        }
        self.get(n as usize, g as usize)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn genus_table(&self, n: usize) -> GenusTable {
        GenusTable::new(n, self.rows[n].clone(), self.method)
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, n: usize, g: usize, v: BigInt) {
        self.rows[n][g] = v;
    }
}

fn exact_div(num: BigInt, den: BigInt, context: impl FnOnce() -> String) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegerResult {
            context: context(),
            value: format!("{num}/{den}"),
        });
    }
    Ok(q)
}

/// `(n+1) A(n,g) = 2(2n-1) A(n-1,g) + (2n-1)(n-1)(2n-3) A(n-2,g-1)`, from `A(0,0) = 1`.
pub fn hz_recurrence_table(n_max: usize) -> Result<RecurrenceTable> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut table = RecurrenceTable {
        n_max,
        rows: vec![vec![BigInt::from(1)]],
        seed_spec: "A(0,0) = 1; out-of-range terms are 0",
        method: Method::HzRec,
    };
    for n in 1..=n_max {
        let ni = n as i64;
        let mut row = Vec::with_capacity(n / 2 + 1);
        for g in 0..=n / 2 {
            let gi = g as i64;
            let rhs = BigInt::from(2 * (2 * ni - 1)) * table.get_signed(ni - 1, gi)
                + BigInt::from((2 * ni - 1) * (ni - 1) * (2 * ni - 3))
                    * table.get_signed(ni - 2, gi - 1);
            row.push(exact_div(rhs, BigInt::from(n + 1), || {
                format!("Harer-Zagier recurrence at ({n}, {g})")
            })?);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// `2g A(n,g) = sum_{k=1}^{g} C(n+1-2(g-k), 2k+1) A(n, g-k)`, seeded with
/// `A(n, 0) = Cat(n)` since the recursion is silent at `g = 0`.
pub fn chapuy_table(n_max: usize) -> Result<RecurrenceTable> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![catalan(n)];
        for g in 1..=n / 2 {
            let mut rhs = BigInt::zero();
            for k in 1..=g {
                let top = n + 1 - 2 * (g - k);
                rhs += binomial(top, 2 * k as i64 + 1) * &row[g - k];
            }
            row.push(exact_div(rhs, BigInt::from(2 * g), || {
                format!("Chapuy recursion at ({n}, {g})")
            })?);
        }
        rows.push(row);
    }
    Ok(RecurrenceTable {
        n_max,
        rows,
        seed_spec: "A(n,0) = Catalan(n) for every n",
        method: Method::Chapuy,
    })
}

/// Entry-wise equality; tables of different extent never agree.
pub fn tables_agree(t1: &RecurrenceTable, t2: &RecurrenceTable) -> bool {
    t1.n_max == t2.n_max && t1.rows == t2.rows
}
