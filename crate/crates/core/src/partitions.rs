//! Partitions in multiplicity form, read as cycle types of permutations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, ratio, Prime};
use crate::error::{Error, Result};

/// A partition of `n` stored as part size -> multiplicity, zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    n: u32,
    mults: BTreeMap<u32, u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        Self::from_mults(parts.iter().map(|&p| (p, 1)))
    }

    /// Builds from `(part, multiplicity)` pairs; repeated parts accumulate.
    pub fn from_mults<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut mults = BTreeMap::new();
        let mut n = 0u32;
        for (part, m) in pairs {
            if part == 0 {
                return Err(Error::Input("partition parts must be positive".into()));
            }
            if m == 0 {
                continue;
            }
            *mults.entry(part).or_insert(0) += m;
            n += part * m;
        }
        Ok(Partition { n, mults })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mult(&self, part: u32) -> u32 {
        self.mults.get(&part).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn mults(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mults.iter().map(|(&p, &m)| (p, m))
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.mults
            .iter()
            .rev()
            .flat_map(|(&p, &m)| std::iter::repeat_n(p, m as usize))
            .collect()
    }

    pub fn num_parts(&self) -> u32 {
        self.mults.values().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return f.write_str("-");
        }
        let terms: Vec<String> = self
            .mults
            .iter()
            .rev()
            .map(|(p, m)| format!("{p}^{m}"))
            .collect();
        f.write_str(&terms.join(" "))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2^1 1^1"`; `"-"` or an empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let mut pairs = Vec::new();
        for term in s.split_whitespace() {
            let bad = || Error::Input(format!("bad partition term {term:?}"));
            let (p, m) = term.split_once('^').ok_or_else(bad)?;
            pairs.push((p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
        }
        Partition::from_mults(pairs)
    }
}

/// Partitions of `n` in reverse-lexicographic order of their part lists,
/// starting with `[n]` and ending with `[1, ..., 1]`.
pub struct Partitions {
    parts: Vec<u32>,
    done: bool,
}

pub fn partitions_of(n: u32) -> Partitions {
    Partitions {
        parts: if n == 0 { vec![] } else { vec![n] },
        done: false,
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_parts(&self.parts).expect("positive parts");
        // Drop trailing ones, decrement the last part > 1, refill greedily.
        let mut ones = 0;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            ones += 1;
        }
        match self.parts.pop() {
            None => self.done = true,
            Some(k) => {
                let k = k - 1;
                let mut rest = ones + 1;
                self.parts.push(k);
                while rest > 0 {
                    let take = rest.min(k);
                    self.parts.push(take);
                    rest -= take;
                }
            }
        }
        Some(current)
    }
}

/// Cycle type of `pi^r` for a permutation `pi` of cycle type `c`.
pub fn power_type_sn(c: &Partition, r: Prime) -> Partition {
    let r = r.get();
    let pairs = c
        .mults()
        .map(|(i, ci)| if i % r == 0 { (i / r, r * ci) } else { (i, ci) });
    Partition::from_mults(pairs).expect("positive parts")
}

/// Whether permutations of cycle type `lambda` are r-th powers: every part
/// divisible by `r` occurs with multiplicity divisible by `r`.
pub fn is_rth_power_sn(lambda: &Partition, r: Prime) -> bool {
    let r = r.get();
    lambda.mults().all(|(i, m)| i % r != 0 || m % r == 0)
}

/// Size of the conjugacy class of S_n with cycle type `lambda`.
pub fn sn_class_size(lambda: &Partition) -> BigUint {
    let centralizer = lambda.mults().fold(BigUint::one(), |acc, (i, m)| {
        acc * BigUint::from(i).pow(m) * factorial(m as u64)
    });
    factorial(lambda.n() as u64) / centralizer
}

/// Number of partitions of `n` whose multiplicity of each part `i` satisfies
/// `allowed(i, m)` (zero multiplicities are always allowed).
fn count_restricted(n: u32, allowed: impl Fn(u32, u32) -> bool) -> BigUint {
    let n = n as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=n {
        let mut next = ways.clone();
        for total in 0..=n {
            for m in 1..=(total / part) {
                if allowed(part as u32, m as u32) {
                    let add = ways[total - m * part].clone();
                    next[total] += add;
                }
            }
        }
        ways = next;
    }
    ways.swap_remove(n)
}

pub fn count_p(n: u32) -> BigUint {
    count_restricted(n, |_, _| true)
}

/// Partitions of `n` with every multiplicity divisible by `r`.
pub fn count_p_r(n: u32, r: Prime) -> BigUint {
    let r = r.get();
    count_restricted(n, |_, m| m % r == 0)
}

/// Partitions of `n` in which parts divisible by `r` have multiplicity
/// divisible by `r`.
pub fn count_p_r_prime(n: u32, r: Prime) -> BigUint {
    let r = r.get();
    count_restricted(n, |i, m| i % r != 0 || m % r == 0)
}

/// Proportion of r-th powers in S_n.
pub fn prob_r_sn(n: u32, r: Prime) -> BigRational {
    let powers = partitions_of(n)
        .filter(|l| is_rth_power_sn(l, r))
        .fold(BigUint::zero(), |acc, l| acc + sn_class_size(&l));
    ratio(&powers, &factorial(n as u64))
}
