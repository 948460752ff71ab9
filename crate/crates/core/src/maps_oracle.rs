//! Ground truth by exhaustive enumeration.
//!
//! A rooted one-face map with `n` edges is a fixed-point-free involution
//! `alpha` on `2n` half-edges; the vertex permutation is recovered from
//! `gamma = alpha . beta` with `gamma = (1 2 ... 2n)`, and the genus follows
//! from Euler's formula `v - n + 1 = 2 - 2g`.
//!
//! Composition convention, fixed library-wide: `s.compose(t)` is
//! `x -> s(t(x))`, i.e. `t` is applied first.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::closed_forms::{GenusTable, Method};
use crate::{Error, Result};

/// Largest `n` enumerated without an explicit override (`(2n-1)!!` grows fast).
pub const ORACLE_DEFAULT_CAP: usize = 9;

/// A bijection on `{0, .., size-1}`; points print 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            image: (0..size).collect(),
        }
    }

    /// Builds from a 0-based image array, checking bijectivity.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "image {image:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds from 1-based cycles; unlisted points are fixed.
    pub fn from_cycles(size: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..size).collect();
        let mut seen = vec![false; size];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > size || seen[x - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "bad point {x} in cycles {cycles:?} on {size} points"
                    )));
                }
                seen[x - 1] = true;
                image[x - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { image })
    }

    /// The long cycle `(1 2 ... size)`.
    pub fn long_cycle(size: usize) -> Self {
        Permutation {
            image: (0..size).map(|x| (x + 1) % size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.size()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(x, &y)| y != x && self.image[y] == x)
    }

    /// Canonical 0-based cycles: each starts at its minimum, sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.size()];
        let mut count = 0;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let labels: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", labels.join(","))?;
        }
        Ok(())
    }
}

/// Fixed-point-free involutions on `2n` points, each exactly once.
///
/// The smallest unmatched point is paired with the `choice[i]`-th remaining
/// point, so the state is a mixed-radix counter with radices
/// `2n-1, 2n-3, ..., 1`. Fixing the first digit gives independent sub-streams.
#[derive(Debug, Clone)]
pub struct FpfInvolutions {
    two_n: usize,
    choice: Vec<usize>,
    first_locked: bool,
    done: bool,
}

impl FpfInvolutions {
    pub fn new(two_n: usize) -> Result<Self> {
        if two_n == 0 || two_n % 2 == 1 {
            return Err(Error::OddSize(two_n));
        }
        Ok(FpfInvolutions {
            two_n,
            choice: vec![0; two_n / 2],
            first_locked: false,
            done: false,
        })
    }

    /// The sub-stream in which point 1 is paired with the `first`-th other point.
    pub fn with_first_partner(two_n: usize, first: usize) -> Result<Self> {
        let mut it = Self::new(two_n)?;
        if first >= two_n - 1 {
            return Err(Error::InvalidArgument(format!(
                "first partner index {first} out of range for {two_n} points"
            )));
        }
        it.choice[0] = first;
        it.first_locked = true;
        Ok(it)
    }

    fn decode(&self) -> Permutation {
        let mut free: Vec<usize> = (0..self.two_n).collect();
        let mut image = vec![0; self.two_n];
        for &c in &self.choice {
            let x = free.remove(0);
            let y = free.remove(c);
            image[x] = y;
            image[y] = x;
        }
        Permutation { image }
    }

    fn advance(&mut self) {
        let levels = self.choice.len();
        let lowest = usize::from(self.first_locked);
        for i in (lowest..levels).rev() {
            let radix = self.two_n - 2 * i - 1;
            if self.choice[i] + 1 < radix {
                self.choice[i] += 1;
                return;
            }
            self.choice[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for FpfInvolutions {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let p = self.decode();
        self.advance();
        Some(p)
    }
}

pub fn enumerate_fpf_involutions(two_n: usize) -> Result<FpfInvolutions> {
    FpfInvolutions::new(two_n)
}

/// A decoded one-face map: `gamma = alpha . beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapTriple {
    pub n: usize,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl MapTriple {
    pub fn vertices(&self) -> usize {
        self.beta.cycle_count()
    }

    pub fn genus(&self) -> usize {
        (self.n + 1 - self.vertices()) / 2
    }
}

fn check_alpha(alpha: &Permutation, n: usize) -> Result<()> {
    if alpha.size() != 2 * n || !alpha.is_fixed_point_free_involution() {
        return Err(Error::InvalidArgument(format!(
            "{alpha} is not a fixed-point-free involution on {} points",
            2 * n
        )));
    }
    Ok(())
}

/// Recovers `beta = alpha^{-1} gamma = alpha gamma` and re-checks `gamma = alpha beta`.
pub fn decode_triple(alpha: &Permutation, n: usize) -> Result<MapTriple> {
    check_alpha(alpha, n)?;
    let gamma = Permutation::long_cycle(2 * n);
    let beta = alpha.compose(&gamma)?;
    if alpha.compose(&beta)? != gamma {
        return Err(Error::InvalidArgument(format!(
            "alpha beta != gamma for alpha = {alpha}"
        )));
    }
    let triple = MapTriple {
        n,
        alpha: alpha.clone(),
        beta,
        gamma,
    };
    parity_check(triple.vertices(), n, alpha)?;
    Ok(triple)
}

fn parity_check(v: usize, n: usize, alpha: &Permutation) -> Result<()> {
    if v % 2 != (n + 1) % 2 || v > n + 1 {
        return Err(Error::ParityViolation(format!(
            "alpha = {alpha} gives {v} vertices with n = {n}"
        )));
    }
    Ok(())
}

/// Genus of the one-face map encoded by `alpha`.
pub fn genus_of(alpha: &Permutation, n: usize) -> Result<usize> {
    check_alpha(alpha, n)?;
    // beta(x) = alpha(gamma(x)) = alpha(x + 1 mod 2n)
    let beta = Permutation {
        image: (0..2 * n).map(|x| alpha.apply((x + 1) % (2 * n))).collect(),
    };
    let v = beta.cycle_count();
    parity_check(v, n, alpha)?;
    Ok((n + 1 - v) / 2)
}

fn tally(stream: FpfInvolutions, n: usize) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n / 2 + 1];
    for alpha in stream {
        counts[genus_of(&alpha, n)?] += 1;
    }
    Ok(counts)
}

/// `A(n, g)` for all `g` by exhaustive enumeration, bounded by [`ORACLE_DEFAULT_CAP`].
pub fn brute_force_table(n: usize) -> Result<GenusTable> {
    brute_force_table_with_cap(n, ORACLE_DEFAULT_CAP)
}

/// As [`brute_force_table`] with an explicit bound. Sub-streams split on the
/// partner of point 1 are tallied in parallel and merged by addition.
pub fn brute_force_table_with_cap(n: usize, cap: usize) -> Result<GenusTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::BoundExceeded { requested: n, cap });
    }
    let partials = (0..2 * n - 1)
        .into_par_iter()
        .map(|first| tally(FpfInvolutions::with_first_partner(2 * n, first)?, n))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0u64; n / 2 + 1];
    for part in partials {
        for (total, c) in counts.iter_mut().zip(part) {
            *total += c;
        }
    }
    Ok(GenusTable::new(
        n,
        counts.into_iter().map(BigInt::from).collect(),
        Method::Oracle,
    ))
}

/// Single-threaded [`brute_force_table_with_cap`].
pub fn brute_force_table_serial(n: usize, cap: usize) -> Result<GenusTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::BoundExceeded { requested: n, cap });
    }
    let counts = tally(FpfInvolutions::new(2 * n)?, n)?;
    Ok(GenusTable::new(
        n,
        counts.into_iter().map(BigInt::from).collect(),
        Method::Oracle,
    ))
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`.
pub fn double_factorial_odd(n: usize) -> BigInt {
    (1..n).fold(BigInt::from(1), |acc, i| acc * (2 * i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(size: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(size, cycles).unwrap()
    }

    #[test]
    fn composition_convention() {
        // (1 2) after (2 3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        let s = perm(3, &[&[1, 2]]);
        let t = perm(3, &[&[2, 3]]);
        assert_eq!(s.compose(&t).unwrap(), perm(3, &[&[1, 2, 3]]));
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&t).unwrap(), t);
        assert!(s.compose(&s).unwrap().is_identity());
        assert_eq!(
            s.compose(&Permutation::identity(4)),
            Err(Error::SizeMismatch(3, 4))
        );
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(Permutation::identity(5).cycle_count(), 5);
        assert_eq!(Permutation::long_cycle(5).cycle_count(), 1);
        assert_eq!(perm(4, &[&[2, 4]]).cycle_count(), 3);
        assert_eq!(perm(4, &[&[2, 4]]).to_string(), "(1)(2,4)(3)");
    }

    #[test]
    fn from_cycles_rejects_repeats() {
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[4]]).is_err());
        assert!(Permutation::from_image(vec![0, 0]).is_err());
    }

    #[test]
    fn involution_counts() {
        let two: Vec<_> = enumerate_fpf_involutions(2).unwrap().collect();
        assert_eq!(two, vec![perm(2, &[&[1, 2]])]);
        let four: Vec<_> = enumerate_fpf_involutions(4).unwrap().collect();
        assert_eq!(
            four,
            vec![
                perm(4, &[&[1, 2], &[3, 4]]),
                perm(4, &[&[1, 3], &[2, 4]]),
                perm(4, &[&[1, 4], &[2, 3]]),
            ]
        );
        assert_eq!(enumerate_fpf_involutions(8).unwrap().count(), 105);
        assert!(matches!(enumerate_fpf_involutions(5), Err(Error::OddSize(5))));
        assert!(matches!(enumerate_fpf_involutions(0), Err(Error::OddSize(0))));
    }

    #[test]
    fn involutions_are_distinct_and_valid() {
        let all: Vec<_> = enumerate_fpf_involutions(10).unwrap().collect();
        assert_eq!(all.len(), 945);
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), 945);
        assert!(all.iter().all(|a| a.is_fixed_point_free_involution()));
        let split: usize = (0..9)
            .map(|f| FpfInvolutions::with_first_partner(10, f).unwrap().count())
            .sum();
        assert_eq!(split, 945);
    }

    #[test]
    fn genus_examples() {
        let a = perm(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(genus_of(&a, 2).unwrap(), 1);
        assert_eq!(decode_triple(&a, 2).unwrap().beta, perm(4, &[&[1, 4, 3, 2]]));
        let b = perm(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(genus_of(&b, 2).unwrap(), 0);
        assert_eq!(decode_triple(&b, 2).unwrap().beta, perm(4, &[&[2, 4]]));
        let c = perm(2, &[&[1, 2]]);
        assert_eq!(genus_of(&c, 1).unwrap(), 0);
        assert!(decode_triple(&c, 1).unwrap().beta.is_identity());
    }

    #[test]
    fn figure_one_triple() {
        let alpha = perm(6, &[&[1, 4], &[2, 5], &[3, 6]]);
        let t = decode_triple(&alpha, 3).unwrap();
        assert_eq!(t.beta, perm(6, &[&[1, 5, 3], &[4, 2, 6]]));
        assert_eq!(t.gamma, perm(6, &[&[1, 2, 3, 4, 5, 6]]));
        assert_eq!(t.genus(), 1);
        assert_eq!(genus_of(&alpha, 3).unwrap(), 1);
    }

    #[test]
    fn rejects_non_involution() {
        assert!(genus_of(&Permutation::identity(4), 2).is_err());
        assert!(genus_of(&perm(4, &[&[1, 2], &[3, 4]]), 3).is_err());
    }

    #[test]
    fn small_tables() {
        let t1 = brute_force_table(1).unwrap();
        assert_eq!(t1.counts(), &[BigInt::from(1)]);
        let t2 = brute_force_table(2).unwrap();
        assert_eq!(t2.counts(), &[BigInt::from(2), BigInt::from(1)]);
        let t4 = brute_force_table(4).unwrap();
        assert_eq!(
            t4.counts(),
            &[BigInt::from(14), BigInt::from(70), BigInt::from(21)]
        );
        assert_eq!(t4.total(), BigInt::from(105));
        assert_eq!(
            brute_force_table(10),
            Err(Error::BoundExceeded { requested: 10, cap: 9 })
        );
        assert!(brute_force_table_with_cap(3, 2).is_err());
        for n in 1..=6 {
            assert_eq!(
                brute_force_table_serial(n, 9).unwrap(),
                brute_force_table(n).unwrap()
            );
        }
    }

    #[test]
    fn every_involution_decodes() {
        for n in 1..=5 {
            for alpha in enumerate_fpf_involutions(2 * n).unwrap() {
                assert!(alpha.compose(&alpha).unwrap().is_identity());
                let t = decode_triple(&alpha, n).unwrap();
                assert_eq!(t.alpha.compose(&t.beta).unwrap(), t.gamma);
            }
        }
    }
}
