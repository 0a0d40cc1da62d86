//! Exact scalars and the small combinatorial functions shared by every
//! other module: factorials, extended double factorials, generalized
//! harmonic numbers, binomial and multinomial coefficients.
//!
//! The scalar type is [`Rational`], an arbitrary-precision fraction that is
//! always kept in lowest terms with a positive denominator. Its canonical
//! text form is `p/q`, or just `p` when `q = 1`, with the sign on the
//! numerator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

/// Exact rational number. Normalized on construction.
pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn big(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// Canonical text form: `p/q` in lowest terms, `p` when `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses the canonical text form. Non-reduced input (`2/4`) is accepted
/// and normalized; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n, d),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `n!` for a machine index.
pub fn factorial_of(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return domain(format!("factorial of negative number {n}"));
    }
    Ok(factorial_of(n as usize))
}

/// Double factorial of an odd argument, extended to negative odd values by
/// `(-1)!! = 1` and `(-(2i+1))!! = (-1)^i / (2i-1)!!`.
pub fn double_factorial_ext(a: i64) -> Result<Rational> {
    if a % 2 == 0 {
        return domain(format!("double factorial of even argument {a}"));
    }
    if a >= -1 {
        let mut acc = BigInt::one();
        let mut j = a;
        while j > 1 {
            acc *= BigInt::from(j);
            j -= 2;
        }
        return Ok(big(acc));
    }
    // a = -(2i+1), i >= 1
    let i = (-a - 1) / 2;
    let denom = double_factorial_ext(2 * i - 1)?;
    let value = denom.recip();
    Ok(if i % 2 == 0 { value } else { -value })
}

/// Generalized harmonic number `H_n^(k) = sum_{j=1}^n 1/j^k`.
pub fn harmonic(n: usize, k: i64) -> Result<Rational> {
    let mut cache = HarmonicCache::new(k)?;
    Ok(cache.get(n).clone())
}

/// Prefix table of `H_n^(k)` for a fixed order `k`.
#[derive(Debug, Clone)]
pub struct HarmonicCache {
    order: u32,
    values: Vec<Rational>,
}

impl HarmonicCache {
    pub fn new(order: i64) -> Result<Self> {
        if order < 1 {
            return domain(format!("harmonic number order must be >= 1, got {order}"));
        }
        let order = u32::try_from(order)
            .map_err(|_| Error::Domain(format!("harmonic order {order} too large")))?;
        Ok(Self {
            order,
            values: vec![Rational::zero()],
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&mut self, n: usize) -> &Rational {
        while self.values.len() <= n {
            let j = self.values.len();
            let term = Rational::new(BigInt::one(), BigInt::from(j).pow(self.order));
            let next = self.values.last().expect("seeded with H_0") + term;
            self.values.push(next);
        }
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Binomial coefficient `C(n, j)` for any integer `n`.
///
/// Returns 0 for `j < 0` and for `j > n >= 0`; negative `n` uses
/// `C(n, j) = (-1)^j C(j - n - 1, j)`.
pub fn binomial(n: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let value = binomial(j - n - 1, j);
        return if j % 2 == 0 { value } else { -value };
    }
    if j > n {
        return BigInt::zero();
    }
    let j = j.min(n - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient with a rational upper argument, `C(x, j)`.
pub fn binomial_rational(x: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= x - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

/// `top! / (parts[0]! * parts[1]! * ...)`; the parts must sum to `top`.
pub fn multinomial(top: usize, parts: &[usize]) -> Result<BigInt> {
    let sum: usize = parts.iter().sum();
    if sum != top {
        return domain(format!("multinomial parts sum to {sum}, expected {top}"));
    }
    let mut acc = BigInt::one();
    let mut seen = 0usize;
    for &part in parts {
        for i in 1..=part {
            seen += 1;
            acc = acc * BigInt::from(seen) / BigInt::from(i);
        }
    }
    Ok(acc)
}

/// `(-1)^e` as a small integer.
pub(crate) fn sign_pow(e: i64) -> i64 {
    if e.is_even() {
        1
    } else {
        -1
    }
}

/// `base^e` for a possibly negative exponent, as an exact rational.
pub fn pow_int(base: i64, e: i64) -> Rational {
    let b = int(base);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, e.unsigned_abs() as usize).recip()
    }
}
