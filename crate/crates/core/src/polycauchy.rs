//! Poly-Cauchy numbers with level 2, `C_{2n}^{(k)}`, and the level-1
//! poly-Cauchy numbers `c_n^{(k)}` used as a comparator.
//!
//! Two routes compute `C_{2n}^{(k)}`:
//!
//! * [`Route::Formula`]: `sum_{m=1}^n (-4)^{n-m} [[n,m]] / (2m+1)^k`, with
//!   `C_0^{(k)} = 1`;
//! * [`Route::Series`]: the EGF coefficient of `Lif_{2,k}(arcsinh t)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::builtin::{arcsinh, lif2k, lif_k, log1p};
use crate::error::{domain, Error, Result};
use crate::exact::{big, binomial_rational, factorial_of, int, pow_int, rat, sign_pow, Rational};
use crate::poly::Poly;
use crate::series::Series;
use crate::stirling::{Level2Triangle, StirlingTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Formula,
    Series,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Formula => "formula",
            Route::Series => "series",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Route::Formula),
            "series" => Ok(Route::Series),
            _ => domain(format!("unknown route {s:?}")),
        }
    }
}

/// `C_{2n}^{(k)}` from a level-2 triangle that reaches row `n`.
pub fn polycauchy2_formula_with(triangle: &Level2Triangle, n: usize, k: i64) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    if triangle.nmax() < n {
        return Err(Error::TableRange {
            needed: n,
            available: triangle.nmax(),
        });
    }
    let n_i = n as i64;
    Ok((1..=n_i)
        .map(|m| {
            let stirling = big(triangle.get(n_i, m));
            pow_int(-4, n_i - m) * pow_int(2 * m + 1, -k) * stirling
        })
        .sum())
}

pub fn polycauchy2_by_formula(n: usize, k: i64) -> Rational {
    let triangle = Level2Triangle::by_recurrence(n);
    polycauchy2_formula_with(&triangle, n, k).expect("triangle covers row n")
}

/// `Lif_{2,k}(arcsinh t)` through `t^order`.
pub fn polycauchy2_series(k: i64, order: usize) -> Series {
    Series::compose(&lif2k(k, order), &arcsinh(order)).expect("arcsinh has no constant term")
}

pub fn polycauchy2_by_series(n: usize, k: i64, order: usize) -> Result<Rational> {
    if order < 2 * n {
        return domain(format!("series order {order} too small for index 2n = {}", 2 * n));
    }
    polycauchy2_series(k, order).egf_even_coefficient(n)
}

/// `c_n^{(k)} = sum_m (-1)^{n-m} [n,m] / (m+1)^k`.
pub fn polycauchy1(n: usize, k: i64) -> Rational {
    let classical = StirlingTriangle::new(n);
    let n_i = n as i64;
    (0..=n_i)
        .map(|m| int(sign_pow(n_i - m)) * big(classical.get(n_i, m)) * pow_int(m + 1, -k))
        .sum()
}

/// `Lif_k(log(1+t))` through `t^order`.
pub fn polycauchy1_series(k: i64, order: usize) -> Series {
    Series::compose(&lif_k(k, order), &log1p(order)).expect("log1p has no constant term")
}

pub fn polycauchy1_by_series(n: usize, k: i64, order: usize) -> Result<Rational> {
    polycauchy1_series(k, order).egf_coefficient(n)
}

/// Memoized `C_{2n}^{(k)}` values with the route that produced each.
#[derive(Debug, Clone, Default)]
pub struct PolyCauchyTable {
    entries: BTreeMap<(usize, i64), (Rational, Route)>,
}

impl PolyCauchyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Computes `C_{2n}^{(k)}` for `0 <= n <= nmax` by one route. The series
    /// order is raised to `2 nmax` if `order` is smaller.
    pub fn build(k: i64, nmax: usize, route: Route, order: usize) -> Self {
        let mut table = Self::new();
        table.fill(k, nmax, route, order);
        table
    }

    /// Adds every missing `(n, k)` for `n <= nmax`. Returns how many entries
    /// were computed.
    pub fn fill(&mut self, k: i64, nmax: usize, route: Route, order: usize) -> usize {
        let missing: Vec<usize> = (0..=nmax)
            .filter(|n| !self.entries.contains_key(&(*n, k)))
            .collect();
        if missing.is_empty() {
            return 0;
        }
        match route {
            Route::Formula => {
                return self.fill_formula_with(&Level2Triangle::by_recurrence(nmax), k, nmax);
            }
            Route::Series => {
                let series = polycauchy2_series(k, order.max(2 * nmax));
                for &n in &missing {
                    let v = series.egf_even_coefficient(n).expect("order covers 2n");
                    self.entries.insert((n, k), (v, route));
                }
            }
        }
        missing.len()
    }

    /// Like [`PolyCauchyTable::fill`] by the closed form, reading the
    /// level-2 numbers from `triangle`, which must reach row `nmax`.
    pub fn fill_formula_with(&mut self, triangle: &Level2Triangle, k: i64, nmax: usize) -> usize {
        let mut computed = 0;
        for n in 0..=nmax {
            if let Entry::Vacant(slot) = self.entries.entry((n, k)) {
                let v = polycauchy2_formula_with(triangle, n, k).expect("triangle covers nmax");
                slot.insert((v, Route::Formula));
                computed += 1;
            }
        }
        computed
    }

    pub fn insert(&mut self, n: usize, k: i64, value: Rational, route: Route) {
        self.entries.insert((n, k), (value, route));
    }

    pub fn get(&self, n: usize, k: i64) -> Option<&Rational> {
        self.entries.get(&(n, k)).map(|(v, _)| v)
    }

    pub fn route(&self, n: usize, k: i64) -> Option<Route> {
        self.entries.get(&(n, k)).map(|(_, r)| *r)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, &Rational, Route)> {
        self.entries.iter().map(|(&(n, k), (v, r))| (n, k, v, *r))
    }

    /// Values `C_0^{(k)}, C_2^{(k)}, ...` as long as they are contiguous
    /// from `n = 0`.
    pub fn sequence(&self, k: i64) -> Vec<Rational> {
        (0..)
            .map_while(|n| self.get(n, k).cloned())
            .collect()
    }
}

/// Outcome of the exact check of the multiple-integral representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary1Report {
    pub n: usize,
    pub k: i64,
    /// `(-4)^n (n!)^2 C(z/2, n) C(-z/2, n)` equals
    /// `sum_m (-4)^{n-m} [[n,m]] z^{2m}` coefficientwise.
    pub polynomial_identity: bool,
    /// The k-fold integral, evaluated termwise on the expanded integrand.
    pub integral: Rational,
    pub formula: Rational,
}

impl Corollary1Report {
    pub fn passed(&self) -> bool {
        self.polynomial_identity && self.integral == self.formula
    }
}

/// `C(a z, n)` as a polynomial in `z`.
fn binomial_poly(a: &Rational, n: usize) -> Poly {
    let mut acc = Poly::constant(Rational::one());
    for i in 0..n {
        acc = &acc * &Poly::linear(a.clone(), int(-(i as i64)));
    }
    acc.scale(&big(factorial_of(n)).recip())
}

/// `(-4)^n (n!)^2 C(z/2, n) C(-z/2, n)` expanded in `z`.
pub fn corollary1_integrand(n: usize) -> Poly {
    let n_fact = big(factorial_of(n));
    let prefactor = pow_int(-4, n as i64) * &n_fact * &n_fact;
    let product = &binomial_poly(&rat(1, 2), n) * &binomial_poly(&rat(-1, 2), n);
    product.scale(&prefactor)
}

/// Runs both stages of the integral-representation check for `k >= 1`.
pub fn corollary1_check(triangle: &Level2Triangle, n: usize, k: i64) -> Result<Corollary1Report> {
    if k < 1 {
        return domain(format!("integral representation needs k >= 1, got {k}"));
    }
    if triangle.nmax() < n {
        return Err(Error::TableRange {
            needed: n,
            available: triangle.nmax(),
        });
    }
    let integrand = corollary1_integrand(n);
    let n_i = n as i64;
    let expected = Poly::new(
        (0..=2 * n)
            .map(|j| {
                if j % 2 == 1 {
                    return Rational::zero();
                }
                let m = (j / 2) as i64;
                pow_int(-4, n_i - m) * big(triangle.get(n_i, m))
            })
            .collect(),
    );
    let polynomial_identity = integrand == expected;
    // int_0^1 ... int_0^1 (x_1 ... x_k)^j dx = 1 / (j+1)^k
    let integral = integrand
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * pow_int(j as i64 + 1, -k))
        .sum();
    let formula = polycauchy2_formula_with(triangle, n, k)?;
    Ok(Corollary1Report {
        n,
        k,
        polynomial_identity,
        integral,
        formula,
    })
}

/// The integrand evaluated directly at one point.
pub fn integrand_at(n: usize, z: &Rational) -> Rational {
    let half = z / int(2);
    let n_fact = big(factorial_of(n));
    pow_int(-4, n as i64) * &n_fact * &n_fact * binomial_rational(&half, n) * binomial_rational(&-half, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixtures() -> Vec<Rational> {
        vec![
            int(1),
            rat(1, 3),
            rat(-17, 15),
            rat(367, 21),
            rat(-27859, 45),
            rat(1295803, 33),
            rat(-5329242827, 1365),
        ]
    }

    #[test]
    fn formula_fixtures() {
        for (n, expected) in fixtures().into_iter().enumerate() {
            assert_eq!(polycauchy2_by_formula(n, 1), expected, "n = {n}");
        }
        assert_eq!(polycauchy2_by_formula(2, 0), int(-3));
        for k in -3..=3 {
            assert_eq!(polycauchy2_by_formula(0, k), int(1));
        }
    }

    #[test]
    fn series_fixtures() {
        assert_eq!(polycauchy2_by_series(2, 1, 12).unwrap(), rat(-17, 15));
        assert_eq!(polycauchy2_by_series(6, 1, 12).unwrap(), rat(-5329242827, 1365));
        assert!(polycauchy2_by_series(6, 1, 11).is_err());
        assert_eq!(polycauchy2_by_series(2, 0, 4).unwrap(), int(-3));
    }

    #[test]
    fn routes_agree() {
        for k in -3..=3 {
            let series = polycauchy2_series(k, 24);
            let triangle = Level2Triangle::by_recurrence(12);
            for n in 0..=12 {
                let f = polycauchy2_formula_with(&triangle, n, k).unwrap();
                assert_eq!(f, series.egf_even_coefficient(n).unwrap(), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn odd_coefficients_vanish() {
        for k in -2..=3 {
            let s = polycauchy2_series(k, 31);
            for i in (1..=31).step_by(2) {
                assert!(s.egf_coefficient(i).unwrap().is_zero(), "k = {k}, i = {i}");
            }
        }
    }

    #[test]
    fn level1_values_and_routes() {
        assert_eq!(polycauchy1(0, 1), int(1));
        assert_eq!(polycauchy1(1, 1), rat(1, 2));
        assert_eq!(polycauchy1(2, 1), rat(-1, 6));
        for k in 1..=3 {
            let series = polycauchy1_series(k, 12);
            for n in 0..=12 {
                assert_eq!(polycauchy1(n, k), series.egf_coefficient(n).unwrap(), "n = {n}, k = {k}");
            }
        }
        // c_n = c_n^{(1)} are the Cauchy numbers of t / log(1+t)
        let t = Series::variable(9);
        let cauchy = Series::divide(&t, &log1p(9)).unwrap();
        for n in 0..=8 {
            assert_eq!(polycauchy1(n, 1), cauchy.egf_coefficient(n).unwrap());
        }
    }

    #[test]
    fn sign_pattern_on_fixture_range() {
        for (n, v) in fixtures().iter().enumerate().skip(1) {
            let signed = v * int(sign_pow(n as i64 + 1));
            assert!(signed > Rational::zero(), "n = {n}");
        }
    }

    #[test]
    fn table_build_and_fill() {
        let mut table = PolyCauchyTable::build(1, 6, Route::Formula, 40);
        assert_eq!(table.sequence(1), fixtures());
        assert_eq!(table.route(3, 1), Some(Route::Formula));
        assert_eq!(table.fill(1, 6, Route::Series, 40), 0);
        assert_eq!(table.fill(1, 8, Route::Series, 4), 2);
        assert_eq!(table.route(8, 1), Some(Route::Series));
        assert_eq!(table.get(8, 1), Some(&polycauchy2_by_formula(8, 1)));
        for k in -3..=3 {
            table.fill(k, 0, Route::Formula, 0);
            assert_eq!(table.get(0, k), Some(&int(1)));
        }
    }

    #[test]
    fn integrand_expansion_matches_pointwise() {
        for n in 0..=6 {
            let poly = corollary1_integrand(n);
            for z in [-3i64, -1, 0, 2, 5] {
                assert_eq!(poly.eval(&int(z)), integrand_at(n, &int(z)));
            }
        }
    }

    #[test]
    fn corollary_checks() {
        let triangle = Level2Triangle::by_recurrence(10);
        let r0 = corollary1_check(&triangle, 0, 1).unwrap();
        assert!(r0.passed());
        assert_eq!(r0.integral, int(1));
        let r1 = corollary1_check(&triangle, 1, 1).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.integral, rat(1, 3));
        for n in 0..=10 {
            for k in 1..=3 {
                assert!(corollary1_check(&triangle, n, k).unwrap().passed(), "n = {n}, k = {k}");
            }
        }
        assert!(corollary1_check(&triangle, 2, 0).is_err());
        assert!(corollary1_check(&triangle, 11, 1).is_err());
    }
}
