//! Stirling numbers of the first kind, classical and with level 2, and the
//! even-index central factorial numbers of the first kind.
//!
//! The level-2 numbers `[[n, m]]` are the coefficients of
//! `x (x + 1^2) (x + 2^2) ... (x + (n-1)^2)`. Four independent algorithms
//! are provided so they can be checked against each other:
//!
//! * the row recurrence `[[n,m]] = [[n-1,m-1]] + (n-1)^2 [[n-1,m]]`,
//! * direct expansion of the rising product,
//! * brute-force elementary symmetric sums of `1^2, ..., (n-1)^2`,
//! * an alternating combination of classical Stirling numbers.
//!
//! `[[0, 0]] = 1` (empty product); `[[n, 0]] = 0` for `n >= 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::sign_pow;

fn get(rows: &[Vec<BigInt>], n: i64, m: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    rows.get(n as usize)
        .map(|row| row_get(row, m))
        .unwrap_or_default()
}

fn row_get(row: &[BigInt], m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    row.get(m as usize).cloned().unwrap_or_default()
}

/// Multiplies an ascending coefficient vector by `(x + c)`.
fn mul_linear(poly: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.len() + 1];
    for (i, a) in poly.iter().enumerate() {
        out[i + 1] += a;
        out[i] += a * c;
    }
    out
}

/// Unsigned classical Stirling numbers of the first kind, `[n, m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTriangle {
    pub fn new(nmax: usize) -> Self {
        let mut rows = vec![vec![BigInt::one()]];
        for n in 1..=nmax {
            let prev: &Vec<BigInt> = &rows[n - 1];
            let row = (0..=n as i64)
                .map(|m| row_get(prev, m - 1) + BigInt::from(n - 1) * row_get(prev, m))
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[n, m]`, zero outside the triangle. Panics if `n` exceeds `nmax`.
    pub fn get(&self, n: i64, m: i64) -> BigInt {
        assert!(n < self.rows.len() as i64, "row {n} not computed");
        get(&self.rows, n, m)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

/// `[n, m]` computed on demand.
pub fn stirling1(n: i64, m: i64) -> BigInt {
    if n < 0 || m < 0 || m > n {
        return BigInt::zero();
    }
    StirlingTriangle::new(n as usize).get(n, m)
}

/// Stirling numbers of the first kind with level 2, `[[n, m]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level2Triangle {
    rows: Vec<Vec<BigInt>>,
}

impl Level2Triangle {
    /// Triangle through row `nmax` by the row recurrence.
    pub fn by_recurrence(nmax: usize) -> Self {
        let mut t = Self {
            rows: vec![vec![BigInt::one()]],
        };
        t.extend_to(nmax);
        t
    }

    /// Wraps precomputed rows without checking them; see
    /// [`Level2Triangle::check_row`].
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        if rows.is_empty() || rows.iter().enumerate().any(|(n, r)| r.len() != n + 1) {
            return None;
        }
        Some(Self { rows })
    }

    /// Appends rows by the recurrence until row `nmax` exists. Returns the
    /// number of rows computed.
    pub fn extend_to(&mut self, nmax: usize) -> usize {
        let mut computed = 0;
        while self.rows.len() <= nmax {
            let n = self.rows.len();
            let row = Self::next_row(&self.rows[n - 1], n);
            self.rows.push(row);
            computed += 1;
        }
        computed
    }

    fn next_row(prev: &[BigInt], n: usize) -> Vec<BigInt> {
        let sq = BigInt::from((n - 1) * (n - 1));
        (0..=n as i64)
            .map(|m| row_get(prev, m - 1) + &sq * row_get(prev, m))
            .collect()
    }

    /// True when row `n` satisfies the recurrence against row `n - 1`
    /// (row 0 must be `[1]`).
    pub fn check_row(&self, n: usize) -> bool {
        if n == 0 {
            return self.rows[0] == [BigInt::one()];
        }
        match self.rows.get(n) {
            Some(row) => *row == Self::next_row(&self.rows[n - 1], n),
            None => false,
        }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[[n, m]]`, zero outside the triangle. Panics if `n` exceeds `nmax`.
    pub fn get(&self, n: i64, m: i64) -> BigInt {
        assert!(n < self.rows.len() as i64, "row {n} not computed");
        get(&self.rows, n, m)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Rows with the sign `(-1)^{n-m}` applied, i.e. the central factorial
    /// convention `t(2n, 2m)`.
    pub fn signed_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(m, v)| v * BigInt::from(sign_pow((n - m) as i64)))
                    .collect()
            })
            .collect()
    }
}

pub fn level2_by_recurrence(nmax: usize) -> Level2Triangle {
    Level2Triangle::by_recurrence(nmax)
}

/// Expands `x (x + 1^2) ... (x + (n-1)^2)` row by row.
pub fn level2_by_rising_factorial(nmax: usize) -> Level2Triangle {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..=nmax {
        let mut poly = vec![BigInt::zero(), BigInt::one()];
        for i in 1..n {
            poly = mul_linear(&poly, &BigInt::from(i * i));
        }
        rows.push(poly);
    }
    Level2Triangle { rows }
}

/// `e_{n-m}(1^2, 2^2, ..., (n-1)^2)` by enumerating every subset of size
/// `n - m`. Exponential in `n`; meant as a reference for small rows.
pub fn level2_by_symmetric_sum(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    let size = n - m;
    let pool = n.saturating_sub(1);
    if size > pool {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    // indices[0] < indices[1] < ... drawn from 1..=pool
    let mut indices: Vec<usize> = (1..=size).collect();
    loop {
        let small = indices
            .iter()
            .try_fold(1u128, |acc, &i| acc.checked_mul((i * i) as u128));
        total += match small {
            Some(p) => BigInt::from(p),
            None => indices.iter().map(|&i| BigInt::from(i * i)).product(),
        };
        // advance to the next combination in lexicographic order
        let mut pos = size;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            if indices[pos] < pool - (size - 1 - pos) {
                break;
            }
        }
        indices[pos] += 1;
        for q in pos + 1..size {
            indices[q] = indices[q - 1] + 1;
        }
    }
}

/// `[n,m]^2 + sum_{d>=1, m-d>=1} 2 (-1)^d [n,m-d] [n,m+d]`, the expression
/// of `[[n, m]]` through classical Stirling numbers (for `m >= 1`).
pub fn level2_by_classical_combination(classical: &StirlingTriangle, n: usize, m: usize) -> BigInt {
    if m == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let (n, m) = (n as i64, m as i64);
    let mut acc = classical.get(n, m).pow(2);
    for d in 1..m {
        let term = classical.get(n, m - d) * classical.get(n, m + d) * 2;
        acc += term * sign_pow(d);
    }
    acc
}

/// Central factorial numbers of the first kind at even indices,
/// `rows[n][m] = t(2n, 2m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralFactorialTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl CentralFactorialTriangle {
    /// Expands `x (x + n - 1) (x + n - 2) ... (x - n + 1)` (the defining
    /// product for `t(2n, .)`) and keeps the even coefficients.
    pub fn new(nmax: usize) -> Self {
        let rows = (0..=nmax).map(central_factorial_row).collect();
        Self { rows }
    }

    pub fn get(&self, n: usize, m: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(m))
            .cloned()
            .unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

fn central_factorial_row(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    let half = n as i64;
    let mut poly = vec![BigInt::zero(), BigInt::one()];
    for shift in (1 - half..=half - 1).rev() {
        poly = mul_linear(&poly, &BigInt::from(shift));
    }
    debug_assert!(poly.iter().skip(1).step_by(2).all(Zero::is_zero));
    poly.into_iter().step_by(2).collect()
}

/// `t(2n, 2m)`.
pub fn central_factorial_even(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    central_factorial_row(n)[m].clone()
}

/// Outcome of checking one closed form over a range of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: &'static str,
    pub as_printed: bool,
    pub checked: usize,
    /// `(n, expected from the triangle, value of the closed form)`
    pub first_failure: Option<(usize, String, String)>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.checked > 0
    }
}

/// Checks the classical and level-2 closed forms (small `m` and the
/// near-diagonal ones) for `1 <= n <= nmax`.
pub fn level2_closed_form_fixtures(nmax: usize) -> Vec<FixtureResult> {
    crate::closed_forms::run(nmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, factorial_of};
    use num_traits::Signed;

    fn nonnegative(rows: &[Vec<BigInt>]) -> bool {
        rows.iter().flatten().all(|v| !v.is_negative())
    }

    /// `e_j` of the given values by the usual one-pass DP.
    fn elementary_symmetric(values: &[BigInt]) -> Vec<BigInt> {
        let mut e = vec![BigInt::one()];
        for v in values {
            e.push(BigInt::zero());
            for j in (1..e.len()).rev() {
                let prev = e[j - 1].clone();
                e[j] += prev * v;
            }
        }
        e
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classical_values() {
        assert_eq!(stirling1(4, 1), BigInt::from(6));
        assert_eq!(stirling1(4, 3), BigInt::from(6));
        assert_eq!(stirling1(5, 7), BigInt::zero());
        assert_eq!(stirling1(0, 0), BigInt::one());
        assert_eq!(stirling1(3, 0), BigInt::zero());
    }

    #[test]
    fn classical_recurrence_and_row_sums() {
        let t = StirlingTriangle::new(30);
        for n in 1..=30i64 {
            for m in 0..=n {
                let rhs = t.get(n - 1, m - 1) + BigInt::from(n - 1) * t.get(n - 1, m);
                assert_eq!(t.get(n, m), rhs);
            }
            let sum: BigInt = t.rows()[n as usize].iter().sum();
            assert_eq!(sum, factorial_of(n as usize));
        }
    }

    #[test]
    fn level2_small_rows() {
        let t = level2_by_recurrence(3);
        assert_eq!(t.row(0), ints(&[1]).as_slice());
        assert_eq!(t.row(1), ints(&[0, 1]).as_slice());
        assert_eq!(t.row(2), ints(&[0, 1, 1]).as_slice());
        assert_eq!(t.row(3), ints(&[0, 4, 5, 1]).as_slice());
        assert_eq!(t.get(3, 2), binomial(6, 3) / 4);
        let r = level2_by_rising_factorial(2);
        assert_eq!(r.row(1), ints(&[0, 1]).as_slice());
        assert_eq!(r.row(2), ints(&[0, 1, 1]).as_slice());
    }

    #[test]
    fn symmetric_sum_values() {
        assert_eq!(level2_by_symmetric_sum(3, 1), BigInt::from(4));
        assert_eq!(level2_by_symmetric_sum(4, 2), BigInt::from(49));
        for n in 0..8 {
            assert_eq!(level2_by_symmetric_sum(n, n), BigInt::one());
        }
        assert_eq!(level2_by_symmetric_sum(0, 0), BigInt::one());
        assert_eq!(level2_by_symmetric_sum(5, 0), BigInt::zero());
        assert_eq!(level2_by_symmetric_sum(2, 3), BigInt::zero());
    }

    #[test]
    fn classical_combination_values() {
        let c = StirlingTriangle::new(10);
        for n in 1..=10 {
            assert_eq!(level2_by_classical_combination(&c, n, n), BigInt::one());
        }
        assert_eq!(level2_by_classical_combination(&c, 3, 2), BigInt::from(5));
    }

    #[test]
    fn four_algorithms_agree_on_small_rows() {
        let nmax = 14;
        let rec = level2_by_recurrence(nmax);
        let ris = level2_by_rising_factorial(nmax);
        let classical = StirlingTriangle::new(nmax);
        assert_eq!(rec, ris);
        for n in 0..=nmax {
            for m in 0..=n {
                let expected = rec.get(n as i64, m as i64);
                assert_eq!(level2_by_symmetric_sum(n, m), expected, "sym {n},{m}");
                assert_eq!(
                    level2_by_classical_combination(&classical, n, m),
                    expected,
                    "combo {n},{m}"
                );
            }
        }
    }

    #[test]
    fn row_sums_and_alternating_sums() {
        let t = level2_by_recurrence(25);
        assert!(nonnegative(t.rows()));
        for n in 0..=25usize {
            let sum: BigInt = t.row(n).iter().sum();
            let prod: BigInt = (1..n).map(|i| BigInt::from(1 + i * i)).product();
            assert_eq!(sum, prod, "row sum {n}");
            if n >= 2 {
                let alt: BigInt = t
                    .row(n)
                    .iter()
                    .enumerate()
                    .map(|(m, v)| v * sign_pow(m as i64))
                    .sum();
                assert!(alt.is_zero(), "alternating sum {n}");
            }
        }
    }

    #[test]
    fn central_factorial_sign_relation() {
        assert_eq!(central_factorial_even(3, 1), BigInt::from(4));
        assert_eq!(central_factorial_even(2, 1), BigInt::from(-1));
        let t = level2_by_recurrence(20);
        let cf = CentralFactorialTriangle::new(20);
        assert_eq!(cf.rows(), t.signed_rows().as_slice());
        for n in 0..=20 {
            assert_eq!(central_factorial_even(n, n), BigInt::one());
        }
    }

    #[test]
    fn elementary_symmetric_dp_matches_rows() {
        let t = level2_by_recurrence(12);
        for n in 1..=12usize {
            let squares: Vec<BigInt> = (1..n).map(|i| BigInt::from(i * i)).collect();
            let e = elementary_symmetric(&squares);
            for m in 1..=n {
                assert_eq!(e[n - m], t.get(n as i64, m as i64));
            }
        }
    }

    #[test]
    fn extend_and_check_rows() {
        let mut t = Level2Triangle::from_rows(level2_by_recurrence(5).rows().to_vec()).unwrap();
        assert_eq!(t.extend_to(8), 3);
        assert_eq!(t.extend_to(8), 0);
        assert_eq!(t, level2_by_recurrence(8));
        assert!((0..=8).all(|n| t.check_row(n)));
        let mut rows = t.rows().to_vec();
        rows[6][3] += 1;
        let bad = Level2Triangle::from_rows(rows).unwrap();
        assert!(!bad.check_row(6));
        assert!(!bad.check_row(7));
        assert!(Level2Triangle::from_rows(vec![vec![BigInt::one()], vec![BigInt::one()]]).is_none());
    }
}
