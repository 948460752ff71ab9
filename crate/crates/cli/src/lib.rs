//! Output records and table assembly for the `unimap` command line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use unimap::closed_forms::{genus_table, GenusTable, Method};
use unimap::maps_oracle::brute_force_table_with_cap;
use unimap::recurrences::{chapuy_table, hz_recurrence_table};
use unimap::{Error, Result};

pub const CSV_HEADER: &str = "n,g,value,method";

/// One `A(n, g)` value; `value` is the exact decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: usize,
    pub g: usize,
    pub value: String,
    pub method: String,
}

impl OutputRecord {
    pub fn new(n: usize, g: usize, value: &BigInt, method: Method) -> Self {
        OutputRecord {
            n,
            g,
            value: value.to_str_radix(10),
            method: method.tag().to_string(),
        }
    }
}

/// Genus tables for `1 <= n <= n_max`, sorted by `n`.
pub fn method_tables(n_max: usize, method: Method, oracle_cap: usize) -> Result<Vec<GenusTable>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("--n-max must be at least 1".into()));
    }
    match method {
        Method::HzRec => {
            let t = hz_recurrence_table(n_max)?;
            Ok((1..=n_max).map(|n| t.genus_table(n)).collect())
        }
        Method::Chapuy => {
            let t = chapuy_table(n_max)?;
            Ok((1..=n_max).map(|n| t.genus_table(n)).collect())
        }
        Method::Oracle => (1..=n_max)
            .map(|n| brute_force_table_with_cap(n, oracle_cap))
            .collect(),
        m => (1..=n_max).map(|n| genus_table(n, m)).collect(),
    }
}

pub fn records(tables: &[GenusTable]) -> Vec<OutputRecord> {
    tables
        .iter()
        .flat_map(|t| {
            t.counts()
                .iter()
                .enumerate()
                .map(move |(g, v)| OutputRecord::new(t.n(), g, v, t.method()))
        })
        .collect()
}

pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(out, "{},{},{},{}", r.n, r.g, r.value, r.method).unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<OutputRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::InvalidArgument("missing CSV header".into()));
    }
    lines
        .map(|line| {
            let bad = || Error::InvalidArgument(format!("malformed CSV row {line:?}"));
            let fields: Vec<&str> = line.split(',').collect();
            let [n, g, value, method] = fields[..] else {
                return Err(bad());
            };
            value.parse::<BigInt>().map_err(|_| bad())?;
            Ok(OutputRecord {
                n: n.parse().map_err(|_| bad())?,
                g: g.parse().map_err(|_| bad())?,
                value: value.to_string(),
                method: method.to_string(),
            })
        })
        .collect()
}

pub fn to_json(records: &[OutputRecord]) -> String {
    serde_json::to_string(records).expect("records always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let tables = method_tables(12, Method::Chapuy, 9).unwrap();
        let csv = to_csv(&records(&tables));
        assert_eq!(to_csv(&parse_csv(&csv).unwrap()), csv);
        // A(2k, k) = (4k-1)!! / (2k+1)
        assert!(csv.ends_with("\n12,6,24325703325,chapuy\n"));
    }

    #[test]
    fn json_uses_strings_for_values() {
        let tables = method_tables(1, Method::Oracle, 9).unwrap();
        assert_eq!(
            to_json(&records(&tables)),
            r#"[{"n":1,"g":0,"value":"1","method":"oracle"}]"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(method_tables(0, Method::Chapuy, 9).is_err());
        assert!(parse_csv("a,b\n").is_err());
        assert!(parse_csv("n,g,value,method\n1,0,x,oracle\n").is_err());
    }
}
