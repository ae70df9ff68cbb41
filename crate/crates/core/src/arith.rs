//! Small exact-arithmetic helpers shared by the class-level and oracle code.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// A prime exponent. Class-level formulas are only valid for prime powers,
/// so every such operation takes this type instead of a raw integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(r: u64) -> Result<Self> {
        if is_prime(r) && r <= u32::MAX as u64 {
            Ok(Prime(r as u32))
        } else {
            Err(Error::NotPrime(r))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn divides(self, k: u64) -> bool {
        k.is_multiple_of(self.0 as u64)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(r: u64) -> Result<Self> {
        Prime::new(r)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// |G|^n * n!, the order of G wr S_n.
pub fn wreath_order(group_order: u64, n: u32) -> BigUint {
    BigUint::from(group_order).pow(n) * factorial(n as u64)
}

pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.clone().into(), den.clone().into())
}

/// Renders an exact rational as `a/b`, always with an explicit denominator.
pub fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&k| is_prime(k)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(Prime::new(6), Err(Error::NotPrime(6)));
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(5).unwrap().get(), 5);
    }

    #[test]
    fn rational_text_keeps_unit_denominator() {
        let q = BigRational::from_integer(3.into());
        assert_eq!(fmt_rational(&q), "3/1");
        let half = ratio(&BigUint::from(81u32), &BigUint::from(162u32));
        assert_eq!(fmt_rational(&half), "1/2");
    }

    #[test]
    fn wreath_order_overflows_u64_at_desk_scale() {
        let big = wreath_order(6, 24);
        assert!(big > BigUint::from(u64::MAX));
        assert_eq!(wreath_order(3, 3), BigUint::from(162u32));
    }
}
