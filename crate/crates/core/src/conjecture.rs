//! Recovery of the polynomial coefficients in the odd-fold convolution
//! pattern
//!
//! ```text
//! (C_0 + ... + C_0)^n  (2r+1 terms)
//!     = sum_{k=0}^r P_{r,2k}(n) C(2n,2k) C(2n-2k-1, 2r-2k) C_{2n-2k}
//! ```
//!
//! Each sample `n` gives one linear equation in the values `P_{r,2k}(n)`, so
//! the values cannot be separated point by point once `r >= 2`. Instead every
//! `P_{r,2k}` is written with unknown coefficients up to degree `2k + SLACK`
//! and the resulting overdetermined linear system over all samples is solved
//! exactly. A consistent, full-rank solution determines the polynomials
//! uniquely; the degree bound `2k` is then checked on the recovered
//! coefficients rather than assumed.

use num_traits::{One, Zero};

use crate::convolution::{convolve_all, CauchyNumbers};
use crate::error::{domain, Error, Result};
use crate::exact::{big, binomial, int, rat, Rational};
use crate::poly::Poly;

/// Degrees allowed above the expected `2k` in the ansatz.
pub const SLACK: usize = 2;

/// Redundant equations used beyond the number of unknowns.
pub const EXTRA_SAMPLES: usize = 6;

/// One recovered `P_{r,2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjecturePolynomial {
    pub r: usize,
    pub k: usize,
    /// `(n, P_{r,2k}(n))` at each sample.
    pub sample_points: Vec<(usize, Rational)>,
    /// Ascending coefficients, obtained by interpolating the sample points.
    pub interpolated_coefficients: Vec<Rational>,
    pub degree_ok: bool,
}

impl ConjecturePolynomial {
    pub fn poly(&self) -> Poly {
        Poly::new(self.interpolated_coefficients.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly().degree()
    }
}

/// All polynomials for one `r`, with the structural checks.
#[derive(Debug, Clone)]
pub struct ConjectureExtraction {
    pub r: usize,
    pub polynomials: Vec<ConjecturePolynomial>,
    /// `P_{r,0} = 1`.
    pub constant_is_one: bool,
    /// `P_{r,2r}(n) = (2n - 2r - 1)^{2r}`.
    pub top_matches: bool,
}

impl ConjectureExtraction {
    pub fn degrees_ok(&self) -> bool {
        self.polynomials.iter().all(|p| p.degree_ok)
    }

    pub fn passed(&self) -> bool {
        self.degrees_ok() && self.constant_is_one && self.top_matches
    }

    /// The right-hand side with the recovered polynomials.
    pub fn rhs(&self, table: &CauchyNumbers, n: usize) -> Result<Rational> {
        let polys: Vec<Poly> = self.polynomials.iter().map(ConjecturePolynomial::poly).collect();
        pattern_rhs(self.r, &polys, table, n)
    }
}

/// `C(2n,2k) C(2n-2k-1, 2r-2k)`
fn prefactor(r: usize, k: usize, n: usize) -> Rational {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    big(binomial(2 * n, 2 * k) * binomial(2 * n - 2 * k - 1, 2 * r - 2 * k))
}

/// Evaluates the pattern's right-hand side for given `P_{r,0}, ..., P_{r,2r}`.
pub fn pattern_rhs(r: usize, polys: &[Poly], table: &CauchyNumbers, n: usize) -> Result<Rational> {
    if polys.len() != r + 1 {
        return domain(format!("need {} polynomials, got {}", r + 1, polys.len()));
    }
    if n < r + 1 {
        return domain(format!("the pattern for r = {r} needs n >= {}", r + 1));
    }
    let x = int(n as i64);
    let mut sum = Rational::zero();
    for (k, p) in polys.iter().enumerate() {
        sum += p.eval(&x) * prefactor(r, k, n) * table.get((n - k) as i64)?;
    }
    Ok(sum)
}

/// The polynomials read off the stated three-, five- and seven-fold closed
/// forms after factoring out the pattern's binomials.
pub fn stated_polynomials(r: usize) -> Option<Vec<Poly>> {
    let one = Poly::from_ints(&[1]);
    let top = |r: i64| Poly::from_ints(&[-(2 * r + 1), 2]).pow(2 * r as usize);
    match r {
        1 => Some(vec![one, top(1)]),
        2 => Some(vec![
            one,
            Poly::new(vec![rat(17, 3), rat(-16, 3), rat(4, 3)]),
            top(2),
        ]),
        3 => Some(vec![
            one,
            Poly::new(vec![rat(83, 15), rat(-60, 15), rat(12, 15)]),
            &Poly::from_ints(&[39, -24, 4]) * &Poly::new(vec![rat(109, 15), rat(-72, 15), rat(12, 15)]),
            top(3),
        ]),
        _ => None,
    }
}

/// `n = r+1, r+2, ...`: enough samples for the ansatz plus redundancy.
pub fn default_samples(r: usize) -> Vec<usize> {
    let unknowns: usize = (0..=r).map(|k| 2 * k + SLACK + 1).sum();
    (r + 1..=r + unknowns + EXTRA_SAMPLES).collect()
}

/// Recovers `P_{r,0}, ..., P_{r,2r}` from exact convolution values.
pub fn extract_conjecture_polynomials(r: usize, n_samples: &[usize]) -> Result<ConjectureExtraction> {
    if r == 0 {
        return domain("the pattern starts at r = 1");
    }
    if let Some(&n) = n_samples.iter().find(|&&n| n < r + 1) {
        return domain(format!("sample n = {n} is below r + 1 = {}", r + 1));
    }
    let mut samples: Vec<usize> = n_samples
        .iter()
        .copied()
        .filter(|&n| (0..=r).all(|k| !prefactor(r, k, n).is_zero()))
        .collect();
    samples.sort_unstable();
    samples.dedup();

    let widths: Vec<usize> = (0..=r).map(|k| 2 * k + SLACK + 1).collect();
    let unknowns: usize = widths.iter().sum();
    if samples.len() <= unknowns {
        return domain(format!(
            "{} usable samples; need more than {unknowns}",
            samples.len()
        ));
    }

    let nmax = *samples.last().expect("nonempty");
    let table = CauchyNumbers::new(nmax);
    let lhs = convolve_all(&vec![0; 2 * r + 1], nmax, &table)?;

    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for &n in &samples {
        let mut row = Vec::with_capacity(unknowns);
        for (k, &width) in widths.iter().enumerate() {
            let base = prefactor(r, k, n) * table.get((n - k) as i64)?;
            let mut power = Rational::one();
            for _ in 0..width {
                row.push(&base * &power);
                power *= int(n as i64);
            }
        }
        rows.push(row);
        rhs.push(lhs[n].clone());
    }
    let solution = solve_overdetermined(rows, rhs)?;

    let mut polynomials = Vec::with_capacity(r + 1);
    let mut offset = 0;
    for (k, &width) in widths.iter().enumerate() {
        let fitted = Poly::new(solution[offset..offset + width].to_vec());
        offset += width;
        let sample_points: Vec<(usize, Rational)> = samples
            .iter()
            .map(|&n| (n, fitted.eval(&int(n as i64))))
            .collect();
        let nodes: Vec<(Rational, Rational)> = sample_points
            .iter()
            .map(|(n, v)| (int(*n as i64), v.clone()))
            .collect();
        let interpolated = Poly::lagrange(&nodes)?;
        let degree_ok = interpolated.degree().is_none_or(|d| d <= 2 * k);
        polynomials.push(ConjecturePolynomial {
            r,
            k,
            sample_points,
            interpolated_coefficients: interpolated.coeffs().to_vec(),
            degree_ok,
        });
    }

    let constant_is_one = polynomials[0].poly() == Poly::from_ints(&[1]);
    let top = Poly::from_ints(&[-(2 * r as i64 + 1), 2]).pow(2 * r);
    let top_matches = polynomials[r].poly() == top;
    Ok(ConjectureExtraction {
        r,
        polynomials,
        constant_is_one,
        top_matches,
    })
}

/// Exact least-squares-free solve of `A x = b` with more equations than
/// unknowns: requires full column rank and that every equation holds.
fn solve_overdetermined(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = a.len();
    for col in 0..cols {
        let pivot = (col..rows)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Domain(format!("ansatz column {col} is not determined by the samples")))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in &mut a[col][col..cols] {
            *v *= &inv;
        }
        b[col] *= &inv;
        for i in 0..rows {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            let pivot_row = a[col].clone();
            for (target, p) in a[i][col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *target -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[i] -= delta;
        }
    }
    if let Some(i) = (cols..rows).find(|&i| !b[i].is_zero()) {
        return domain(format!(
            "sample equation {i} is inconsistent with a polynomial ansatz of degree 2k + {SLACK}"
        ));
    }
    b.truncate(cols);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_reproduces_the_three_fold_form() {
        let ex = extract_conjecture_polynomials(1, &default_samples(1)).unwrap();
        assert!(ex.passed());
        let stated = stated_polynomials(1).unwrap();
        let got: Vec<Poly> = ex.polynomials.iter().map(ConjecturePolynomial::poly).collect();
        assert_eq!(got, stated);
        assert_eq!(got[1], Poly::from_ints(&[9, -12, 4]));
    }

    #[test]
    fn r2_and_r3_reproduce_the_stated_forms() {
        for r in [2, 3] {
            let ex = extract_conjecture_polynomials(r, &default_samples(r)).unwrap();
            assert!(ex.passed(), "r = {r}: {ex:?}");
            let got: Vec<Poly> = ex.polynomials.iter().map(ConjecturePolynomial::poly).collect();
            assert_eq!(got, stated_polynomials(r).unwrap(), "r = {r}");
            for p in &ex.polynomials {
                assert_eq!(p.degree(), Some(2 * p.k), "r = {r}, k = {}", p.k);
            }
        }
    }

    #[test]
    fn recovered_pattern_matches_convolution_beyond_samples() {
        let ex = extract_conjecture_polynomials(2, &default_samples(2)).unwrap();
        let last = *default_samples(2).last().unwrap();
        let table = CauchyNumbers::new(last + 4);
        let lhs = convolve_all(&[0; 5], last + 4, &table).unwrap();
        for (n, value) in lhs.iter().enumerate().skip(last + 1) {
            assert_eq!(&ex.rhs(&table, n).unwrap(), value);
        }
    }

    #[test]
    fn sample_validation() {
        assert!(extract_conjecture_polynomials(0, &[1, 2, 3]).is_err());
        assert!(extract_conjecture_polynomials(2, &[1, 5, 6]).is_err());
        assert!(extract_conjecture_polynomials(1, &[2, 3, 4]).is_err());
    }

    #[test]
    fn solver_rejects_inconsistent_systems() {
        let a = vec![vec![int(1)], vec![int(1)]];
        assert!(solve_overdetermined(a.clone(), vec![int(1), int(2)]).is_err());
        assert_eq!(solve_overdetermined(a, vec![int(3), int(3)]).unwrap(), vec![int(3)]);
    }
}
