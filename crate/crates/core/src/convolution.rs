//! Multinomial convolutions of the level-2 Cauchy numbers `C_{2n} =
//! C_{2n}^{(1)}` and the closed forms claimed for them.
//!
//! For offsets `j_1, ..., j_k` the convolution is
//!
//! ```text
//! (C_{2j_1} + ... + C_{2j_k})^n
//!     = sum_{i_1+...+i_k=n} (2n)! / ((2i_1)! ... (2i_k)!) C_{2i_1+2j_1} ... C_{2i_k+2j_k}
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{big, binomial, double_factorial_ext, factorial_of, int, pow_int, rat, sign_pow, Rational};
use crate::polycauchy::polycauchy2_formula_with;
use crate::stirling::Level2Triangle;

/// `C_0, C_2, C_4, ...` (level 2, `k = 1`) through a fixed index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyNumbers {
    values: Vec<Rational>,
}

impl CauchyNumbers {
    /// `C_{2m}` for `0 <= m <= mmax`, computed from the level-2 triangle.
    pub fn new(mmax: usize) -> Self {
        let triangle = Level2Triangle::by_recurrence(mmax);
        let values = (0..=mmax)
            .map(|m| polycauchy2_formula_with(&triangle, m, 1).expect("covered"))
            .collect();
        Self { values }
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "need at least C_0");
        Self { values }
    }

    /// Largest `m` with `C_{2m}` available.
    pub fn mmax(&self) -> usize {
        self.values.len() - 1
    }

    /// `C_{2m}`. Negative `m` never occurs in a stated identity inside its
    /// range, so it is reported as a range error.
    pub fn get(&self, m: i64) -> Result<&Rational> {
        usize::try_from(m)
            .ok()
            .and_then(|m| self.values.get(m))
            .ok_or(Error::TableRange {
                needed: m.max(0) as usize,
                available: self.mmax(),
            })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Offsets `j_1, ..., j_k` and the exponent `n` of a convolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionSpec {
    offsets: Vec<usize>,
    n: usize,
}

impl ConvolutionSpec {
    pub fn new(offsets: Vec<usize>, n: usize) -> Result<Self> {
        if offsets.len() < 2 {
            return domain("a convolution needs at least two terms");
        }
        Ok(Self { offsets, n })
    }

    /// `k` copies of offset 0.
    pub fn zeros(k: usize, n: usize) -> Result<Self> {
        Self::new(vec![0; k], n)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest `m` such that `C_{2m}` is read.
    pub fn max_index(&self) -> usize {
        self.n + self.offsets.iter().max().copied().unwrap_or(0)
    }
}

/// The convolution by direct enumeration of all compositions of `n`.
///
/// Every term is formed in integers: with `D` the least common denominator
/// of the values read and `C_{2m} = a_m / D`, a composition contributes
/// `multinomial * a_{i_1+j_1} ... a_{i_k+j_k}`, and the sum is divided by
/// `D^k` once at the end. The multinomial is accumulated slot by slot as
/// `C(2s, 2i)` where `s` is what remains to be distributed.
pub fn convolve(spec: &ConvolutionSpec, table: &CauchyNumbers) -> Result<Rational> {
    if spec.max_index() > table.mmax() {
        return Err(Error::TableRange {
            needed: spec.max_index(),
            available: table.mmax(),
        });
    }
    let values = &table.values[..=spec.max_index()];
    let common = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&common / v.denom()))
        .collect();
    let two_n = 2 * spec.n as i64;
    let binomials: Vec<Vec<BigInt>> = (0..=two_n)
        .map(|top| (0..=top).map(|j| binomial(top, j)).collect())
        .collect();
    let mut total = BigInt::zero();
    accumulate(
        &Enumeration {
            offsets: &spec.offsets,
            scaled: &scaled,
            binomials: &binomials,
        },
        0,
        spec.n,
        &BigInt::one(),
        &mut total,
    );
    let denominator = num_traits::pow(common, spec.offsets.len());
    Ok(Rational::new(total, denominator))
}

struct Enumeration<'a> {
    offsets: &'a [usize],
    scaled: &'a [BigInt],
    binomials: &'a [Vec<BigInt>],
}

/// Adds to `total` every composition of `remaining` over the slots from
/// `slot` on, given the product `prefix` of the earlier slots.
fn accumulate(e: &Enumeration<'_>, slot: usize, remaining: usize, prefix: &BigInt, total: &mut BigInt) {
    let j = e.offsets[slot];
    if slot + 1 == e.offsets.len() {
        *total += prefix * &e.scaled[remaining + j];
        return;
    }
    for i in 0..=remaining {
        let value = &e.scaled[i + j];
        if value.is_zero() {
            continue;
        }
        let weight = &e.binomials[2 * remaining][2 * i];
        accumulate(e, slot + 1, remaining - i, &(prefix * weight * value), total);
    }
}

/// The same convolution for every `n` in `0..=nmax`, built by folding in one
/// term at a time with binomial convolutions. Equal to [`convolve`] because
/// the multinomial weight factors into binomials.
pub fn convolve_all(offsets: &[usize], nmax: usize, table: &CauchyNumbers) -> Result<Vec<Rational>> {
    if offsets.len() < 2 {
        return domain("a convolution needs at least two terms");
    }
    let needed = nmax + offsets.iter().max().copied().unwrap_or(0);
    if needed > table.mmax() {
        return Err(Error::TableRange {
            needed,
            available: table.mmax(),
        });
    }
    let shifted = |j: usize| -> Vec<Rational> { (0..=nmax).map(|i| table.values[i + j].clone()).collect() };
    // EGF in t^{2n}/(2n)!: multiply the ordinary sequences a_n / (2n)!
    let scale: Vec<Rational> = (0..=nmax).map(|n| big(factorial_of(2 * n))).collect();
    let to_ordinary = |seq: Vec<Rational>| -> Vec<Rational> {
        seq.into_iter().zip(&scale).map(|(a, s)| a / s).collect()
    };
    let mut acc = to_ordinary(shifted(offsets[0]));
    for &j in &offsets[1..] {
        let next = to_ordinary(shifted(j));
        acc = (0..=nmax)
            .map(|n| (0..=n).map(|i| &acc[i] * &next[n - i]).sum())
            .collect();
    }
    Ok(acc.into_iter().zip(&scale).map(|(a, s)| a * s).collect())
}

/// The closed-form convolution identities under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `(C_0 + C_0)^n`
    Thm2,
    /// `(C_0 + C_2)^n`
    Thm3,
    /// `(C_2 + C_2)^n`
    Thm4,
    /// `(C_0 + C_0 + C_0)^n`
    Thm5,
    /// `(C_0 + C_0 + C_0 + C_0)^n`
    Thm6,
    /// five copies of `C_0`
    Fold5,
    /// seven copies of `C_0`
    Fold7,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Thm2,
        Theorem::Thm3,
        Theorem::Thm4,
        Theorem::Thm5,
        Theorem::Thm6,
        Theorem::Fold5,
        Theorem::Fold7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm2 => "thm2",
            Theorem::Thm3 => "thm3",
            Theorem::Thm4 => "thm4",
            Theorem::Thm5 => "thm5",
            Theorem::Thm6 => "thm6",
            Theorem::Fold5 => "fold5",
            Theorem::Fold7 => "fold7",
        }
    }

    /// Offsets of the left-hand side.
    pub fn offsets(self) -> Vec<usize> {
        match self {
            Theorem::Thm2 => vec![0, 0],
            Theorem::Thm3 => vec![0, 1],
            Theorem::Thm4 => vec![1, 1],
            Theorem::Thm5 => vec![0; 3],
            Theorem::Thm6 => vec![0; 4],
            Theorem::Fold5 => vec![0; 5],
            Theorem::Fold7 => vec![0; 7],
        }
    }

    /// Smallest `n` for which the identity is claimed.
    pub fn lower_bound(self) -> usize {
        match self {
            Theorem::Thm2 | Theorem::Thm3 | Theorem::Thm4 => 0,
            Theorem::Thm5 | Theorem::Thm6 => 1,
            Theorem::Fold5 => 2,
            Theorem::Fold7 => 3,
        }
    }

    /// Largest `m` such that `C_{2m}` enters either side at `n`.
    pub fn max_index(self, n: usize) -> usize {
        match self {
            Theorem::Thm3 => n + 1,
            Theorem::Thm4 => n + 2,
            _ => n,
        }
    }

    /// Evaluates the stated right-hand side.
    pub fn rhs(self, table: &CauchyNumbers, n: usize) -> Result<Rational> {
        if n < self.lower_bound() {
            return domain(format!(
                "{} is stated for n >= {}, got n = {n}",
                self.name(),
                self.lower_bound()
            ));
        }
        match self {
            Theorem::Thm2 => rhs_thm2(table, n),
            Theorem::Thm3 => rhs_thm3(table, n),
            Theorem::Thm4 => rhs_thm4(table, n),
            Theorem::Thm5 => rhs_thm5(table, n),
            Theorem::Thm6 => rhs_thm6(table, n),
            Theorem::Fold5 => rhs_fold5(table, n),
            Theorem::Fold7 => rhs_fold7(table, n),
        }
    }

    /// Evaluates the left-hand side by direct enumeration.
    pub fn lhs(self, table: &CauchyNumbers, n: usize) -> Result<Rational> {
        convolve(&ConvolutionSpec::new(self.offsets(), n)?, table)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown theorem {s:?}")))
    }
}

fn df(a: i64) -> Rational {
    double_factorial_ext(a).expect("odd argument")
}

fn fact(n: i64) -> Rational {
    big(factorial_of(usize::try_from(n).expect("nonnegative factorial argument")))
}

fn sign(e: i64) -> Rational {
    int(sign_pow(e))
}

fn binom(n: i64, k: i64) -> Rational {
    big(binomial(n, k))
}

/// `(2n)! sum_{l=0}^n (-1)^{n-l} (2n-2l-3)!! (2l-1) C_{2l} / (2^{n-l} (n-l)! (2l)!)`
pub fn rhs_thm2(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    let mut sum = Rational::zero();
    for l in 0..=n {
        let num = sign(n - l) * df(2 * n - 2 * l - 3) * int(2 * l - 1);
        let den = pow_int(2, n - l) * fact(n - l) * fact(2 * l);
        sum += num / den * c.get(l)?;
    }
    Ok(fact(2 * n) * sum)
}

/// The `(C_0 + C_2)^n` closed form, summing `l` from 0 to `n + 1`.
pub fn rhs_thm3(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    rhs_thm3_upto(c, n, n + 1)
}

/// The `(C_0 + C_2)^n` sum cut at `l = upper`. Only `upper = n + 1` is the
/// stated identity; smaller values serve as negative controls.
pub fn rhs_thm3_upto(c: &CauchyNumbers, n: usize, upper: usize) -> Result<Rational> {
    let n = n as i64;
    let mut sum = Rational::zero();
    for l in 0..=upper as i64 {
        let quad = 3 * n * n - 3 * n * l + 2 * l * l + 4 * n - 3 * l + 1;
        let num = sign(n - l - 1) * int(2 * l - 1) * int(quad) * df(2 * n - 2 * l - 1);
        let den = int(3) * pow_int(2, n - l) * fact(n - l + 1) * fact(2 * l);
        sum += num / den * c.get(l)?;
    }
    Ok(fact(2 * n) * sum)
}

/// The `(C_2 + C_2)^n` closed form (three sums).
pub fn rhs_thm4(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    let mut first = Rational::zero();
    let mut second = Rational::zero();
    let mut third = Rational::zero();
    for l in 0..=n {
        let common = sign(n - l) / (pow_int(2, n - l) * fact(n - l) * fact(2 * l));
        first += &common * int(10 * n - 8 * l + 5) * df(2 * n - 2 * l - 3) * c.get(l + 2)?;
        second += &common * int(6 * l + 1) * df(2 * n - 2 * l + 1) * c.get(l + 1)?;
        let cubic = 160 * l * l * l - 220 * l * l + 72 * l - 1;
        third += &common * int(cubic) * df(2 * n - 2 * l + 1) * c.get(l)?;
    }
    let f = fact(2 * n);
    Ok(&f * rat(1, 30) * first - &f * rat(1, 3) * second - &f * rat(1, 30) * third)
}

/// `(2n-1)(n-1) C_{2n} + n(2n-1)(2n-3)^2 C_{2n-2}`
pub fn rhs_thm5(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    Ok(int((2 * n - 1) * (n - 1)) * c.get(n)?
        + int(n * (2 * n - 1) * (2 * n - 3) * (2 * n - 3)) * c.get(n - 1)?)
}

/// The `(C_0 + C_0 + C_0 + C_0)^n` closed form (two sums).
pub fn rhs_thm6(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    let mut sum = Rational::zero();
    for l in 0..=n {
        let common =
            sign(n - l) * df(2 * n - 2 * l - 3) / (pow_int(2, n - l) * fact(n - l) * fact(2 * l));
        sum += &common * int((2 * l - 1) * (2 * l - 2) * (2 * l - 3)) * c.get(l)?;
        if l >= 1 {
            let cube = (2 * l - 3) * (2 * l - 3) * (2 * l - 3);
            sum += &common * int(2 * l * (2 * l - 1) * cube) * c.get(l - 1)?;
        }
    }
    Ok(fact(2 * n) * rat(1, 6) * sum)
}

/// Five-fold convolution closed form, claimed for `n >= 2`.
pub fn rhs_fold5(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    let middle = rat(4 * n * n - 16 * n + 17, 3);
    Ok(binom(2 * n - 1, 4) * c.get(n)?
        + middle * binom(2 * n, 2) * binom(2 * n - 3, 2) * c.get(n - 1)?
        + binom(2 * n, 4) * pow_int(2 * n - 5, 4) * c.get(n - 2)?)
}

/// Seven-fold convolution closed form, claimed for `n >= 3`.
pub fn rhs_fold7(c: &CauchyNumbers, n: usize) -> Result<Rational> {
    let n = n as i64;
    let p2 = rat(12 * n * n - 60 * n + 83, 15);
    let p4 = rat((4 * n * n - 24 * n + 39) * (12 * n * n - 72 * n + 109), 15);
    Ok(binom(2 * n - 1, 6) * c.get(n)?
        + p2 * binom(2 * n, 2) * binom(2 * n - 3, 4) * c.get(n - 1)?
        + p4 * binom(2 * n, 4) * binom(2 * n - 5, 2) * c.get(n - 2)?
        + binom(2 * n, 6) * pow_int(2 * n - 7, 6) * c.get(n - 3)?)
}

/// `true` when `value` is an exact integer.
pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}
