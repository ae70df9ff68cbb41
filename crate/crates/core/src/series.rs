//! Truncated formal power series over exact rationals and the generating
//! functions for power probabilities and class counts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{fmt_rational, Prime};
use crate::error::{Error, Result};
use crate::groups::{nonpower_classes, ClassStructure};

/// Coefficients `c_0, ..., c_cap` of a power series in `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(BigRational::one(), 0, cap)
    }

    /// `c * u^degree`, which is zero if `degree > cap`.
    pub fn monomial(c: BigRational, degree: usize, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        if degree <= cap {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Pads with zeros or truncates to the cap.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, cap: usize) -> Self {
        coeffs.resize(cap + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], cap: usize) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            cap,
        )
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=cap.min(self.cap())].to_vec(), cap)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `f(u^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.cap());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d * k > self.cap() {
                break;
            }
            out.coeffs[d * k] = c.clone();
        }
        out
    }

    /// `f / (1 - u^m)`, computed as a strided running sum.
    pub fn div_one_minus_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut out = self.clone();
        for k in m..=self.cap() {
            let prev = out.coeffs[k - m].clone();
            out.coeffs[k] += prev;
        }
        out
    }

    pub fn pow_int(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.cap()), |acc, _| &acc * self)
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series(
                "reciprocal needs a nonzero constant term, found 0".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut g: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        g.push(inv0.clone());
        for n in 1..=self.cap() {
            let s: BigRational = (1..=n).map(|k| &self.coeffs[k] * &g[n - k]).sum();
            g.push(-(s * &inv0));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(format!(
                "exp needs constant term 0, found {}",
                fmt_rational(&self.coeffs[0])
            )));
        }
        // n g_n = sum_k k f_k g_{n-k}
        let mut g = vec![BigRational::one()];
        for n in 1..=self.cap() {
            let s: BigRational = (1..=n)
                .map(|k| &self.coeffs[k] * &g[n - k] * BigRational::from_integer(BigInt::from(k)))
                .sum();
            g.push(s / BigRational::from_integer(BigInt::from(n)));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(format!(
                "log needs constant term 1, found {}",
                fmt_rational(&self.coeffs[0])
            )));
        }
        // f g' = f'
        let mut g = vec![BigRational::zero()];
        for n in 1..=self.cap() {
            let nn = BigRational::from_integer(BigInt::from(n));
            let s: BigRational = (1..n)
                .map(|k| &g[k] * &self.coeffs[n - k] * BigRational::from_integer(BigInt::from(k)))
                .sum();
            g.push((&self.coeffs[n] * &nn - s) / nn);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `f^q = exp(q log f)` for `f` with constant term 1.
    pub fn pow_rational(&self, exponent: &BigRational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(format!(
                "rational power needs constant term 1, found {}",
                fmt_rational(&self.coeffs[0])
            )));
        }
        self.log()?.scale(exponent).exp()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap().min(rhs.cap());
        TruncatedSeries {
            coeffs: (0..=cap)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap().min(rhs.cap());
        let mut out = vec![BigRational::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(cap + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    /// One line per degree: `n<TAB>numerator/denominator`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}\t{}", fmt_rational(c))?;
        }
        Ok(())
    }
}

fn factorial_q(m: usize) -> BigRational {
    BigRational::from_integer((1..=m).fold(BigInt::one(), |acc, k| acc * k))
}

/// Part of `exp(alpha u^j / j)` whose exponent index is divisible by `r`:
/// `sum over r | m of (alpha / j)^m u^(j m) / m!`.
pub fn psi(j: usize, alpha: &BigRational, r: Prime, cap: usize) -> TruncatedSeries {
    assert!(j >= 1);
    let x = alpha / BigRational::from_integer(BigInt::from(j));
    let r = r.get() as usize;
    let mut out = TruncatedSeries::zero(cap);
    let mut m = 0;
    while j * m <= cap {
        out.coeffs[j * m] = num_traits::pow(x.clone(), m) / factorial_q(m);
        m += r;
    }
    out
}

fn class_fractions(cs: &ClassStructure) -> Vec<BigRational> {
    let order = BigInt::from(cs.group_order());
    cs.sizes()
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), order.clone()))
        .collect()
}

/// `(1 - u^r)^(1/r) / (1 - u)`.
fn power_class_base(r: Prime, cap: usize) -> TruncatedSeries {
    let rv = r.get() as usize;
    let one_minus =
        &TruncatedSeries::one(cap) - &TruncatedSeries::monomial(BigRational::one(), rv, cap);
    one_minus
        .pow_rational(&q(1, rv as i64))
        .expect("constant term 1")
        .div_one_minus_power(1)
}

/// `1 + sum_n P_r(G wr S_n) u^n`: non-power classes contribute
/// `prod_j psi(j, alpha_i)`, power classes contribute
/// `((1 - u^r)^(1/r) / (1 - u))^alpha_i * prod_j psi(r j, alpha_i)`.
pub fn genfun_prob_wreath(cs: &ClassStructure, r: Prime, cap: usize) -> TruncatedSeries {
    let lab = nonpower_classes(cs, r);
    let alphas = class_fractions(cs);
    let rv = r.get() as usize;
    let base = power_class_base(r, cap);
    let mut out = TruncatedSeries::one(cap);
    for (i, alpha) in alphas.iter().enumerate() {
        if lab.is_power_class(i) {
            out = &out * &base.pow_rational(alpha).expect("constant term 1");
            for j in (rv..=cap).step_by(rv) {
                out = &out * &psi(j, alpha, r, cap);
            }
        } else {
            for j in 1..=cap {
                out = &out * &psi(j, alpha, r, cap);
            }
        }
    }
    out
}

/// `prod_i 1 / (1 - u^i)`.
pub fn genfun_partitions(cap: usize) -> TruncatedSeries {
    (1..=cap).fold(TruncatedSeries::one(cap), |acc, i| {
        acc.div_one_minus_power(i)
    })
}

/// `prod_i 1 / (1 - u^(r i))`.
pub fn genfun_p_r(r: Prime, cap: usize) -> TruncatedSeries {
    let rv = r.get() as usize;
    (1..)
        .map(|i| rv * i)
        .take_while(|&m| m <= cap)
        .fold(TruncatedSeries::one(cap), |acc, m| {
            acc.div_one_minus_power(m)
        })
}

/// `prod_i 1 / ((1 - u^(r i - 1)) ... (1 - u^(r i - (r - 1))) (1 - u^(r^2 i)))`.
pub fn genfun_p_r_prime(r: Prime, cap: usize) -> TruncatedSeries {
    let rv = r.get() as usize;
    let mut out = TruncatedSeries::one(cap);
    let mut i = 1;
    while rv * i - (rv - 1) <= cap {
        for k in 1..rv {
            let m = rv * i - k;
            if m <= cap {
                out = out.div_one_minus_power(m);
            }
        }
        if rv * rv * i <= cap {
            out = out.div_one_minus_power(rv * rv * i);
        }
        i += 1;
    }
    out
}

/// Class-count series `P(u)^s`.
pub fn genfun_cc(s: usize, cap: usize) -> TruncatedSeries {
    genfun_partitions(cap).pow_int(s as u32)
}

/// Power-class-count series `P(u^r)^d P_r'(u)^(s - d)`.
pub fn genfun_cc_r(cs: &ClassStructure, r: Prime, cap: usize) -> TruncatedSeries {
    let d = nonpower_classes(cs, r).d();
    let s = cs.num_classes();
    let pr = genfun_partitions(cap).substitute_power(r.get() as usize);
    &pr.pow_int(d as u32) * &genfun_p_r_prime(r, cap).pow_int((s - d) as u32)
}

/// Product form of the cycle-index generating function with each variable
/// `t_ij` replaced by `weight(i, j)`: `prod_i prod_j exp(w_ij alpha_i u^j / j)`.
pub fn cycle_index_series<W>(cs: &ClassStructure, cap: usize, weight: W) -> TruncatedSeries
where
    W: Fn(usize, usize) -> BigRational,
{
    let alphas = class_fractions(cs);
    let mut exponent = TruncatedSeries::zero(cap);
    for (i, alpha) in alphas.iter().enumerate() {
        for j in 1..=cap {
            let c = weight(i, j) * alpha / BigRational::from_integer(BigInt::from(j));
            exponent.coeffs[j] += c;
        }
    }
    exponent.exp().expect("constant term 0")
}

/// Degrees `k < cap` with `k` not congruent to `-1` mod `r` where
/// `c_(k+1) != c_k`. Empty means the plateau pattern holds.
pub fn check_plateau_series(f: &TruncatedSeries, r: Prime) -> Vec<usize> {
    let rv = r.get() as usize;
    (0..f.cap())
        .filter(|&k| (k + 1) % rv != 0 && f.coeff(k + 1) != f.coeff(k))
        .collect()
}

/// Integer coefficients, failing if any coefficient is not an integer.
pub fn integer_coeffs(f: &TruncatedSeries) -> Result<Vec<BigUint>> {
    f.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer()
                    .to_biguint()
                    .ok_or_else(|| Error::Series("negative coefficient".into()))
            } else {
                Err(Error::Series(format!(
                    "non-integer coefficient {}",
                    fmt_rational(c)
                )))
            }
        })
        .collect()
}
