//! Power-series identities satisfied by `L(t) = t / arcsinh t` and by the
//! powers of `arcsinh t`, each returned as a pair of series (left, right)
//! sharing one truncation order.

use num_traits::Zero;

use crate::builtin::{arcsinh, inv32_1pt2, invsqrt_1pt2, l_series, sqrt_1pt2};
use crate::convolution::{convolve, CauchyNumbers, ConvolutionSpec};
use crate::error::{domain, Result};
use crate::exact::{big, factorial_of, int, pow_int, rat, Rational};
use crate::series::Series;
use crate::stirling::Level2Triangle;

/// Both sides of an identity, truncated to the same order.
#[derive(Debug, Clone)]
pub struct SeriesPair {
    pub lhs: Series,
    pub rhs: Series,
}

impl SeriesPair {
    fn new(lhs: Series, rhs: Series, order: usize) -> Self {
        Self {
            lhs: lhs.truncate(order),
            rhs: rhs.truncate(order),
        }
    }

    /// `(index, lhs, rhs)` for every ordinary coefficient.
    pub fn coefficients(&self) -> impl Iterator<Item = (usize, &Rational, &Rational)> {
        self.lhs
            .coeffs()
            .iter()
            .zip(self.rhs.coeffs())
            .enumerate()
            .map(|(i, (a, b))| (i, a, b))
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn derivatives(l: &Series, up_to: usize) -> Result<Vec<Series>> {
    (0..=up_to).map(|d| l.derivative(d)).collect()
}

/// `L^2 = -t sqrt(1+t^2) L' + sqrt(1+t^2) L` through `t^order`.
pub fn eq_ll(order: usize) -> Result<SeriesPair> {
    let l = l_series(order + 1)?;
    let dl = l.derivative(1)?;
    let sqrt = sqrt_1pt2(order + 1);
    let lhs = &l * &l;
    let rhs = &(&sqrt * &l) - &(&sqrt.shift_up(1) * &dl);
    Ok(SeriesPair::new(lhs, rhs, order))
}

/// The expression of `L L''` through `L, L', L'', L'''` with prefactors in
/// `(1+t^2)^{1/2}`, `(1+t^2)^{-1/2}` and `(1+t^2)^{-3/2}`.
pub fn eq_convo02(order: usize) -> Result<SeriesPair> {
    let l = l_series(order + 3)?;
    let d = derivatives(&l, 3)?;
    let work = order + 1;
    let sqrt = sqrt_1pt2(work);
    let invsqrt = invsqrt_1pt2(work);
    let inv32 = inv32_1pt2(work);

    let c0 = &(&inv32 * &rat(1, 2)) - &(&invsqrt * &rat(1, 6));
    // (sqrt/6 + inv32/2 - 2 invsqrt/3) has zero constant term, so t divides it
    let c1_times_t = &(&(&sqrt * &rat(1, 6)) + &(&inv32 * &rat(1, 2))) - &(&invsqrt * &rat(2, 3));
    let c1 = c1_times_t.shift_down(1)?;
    let c2 = &(&invsqrt - &sqrt) * &rat(1, 2);
    let c3 = &sqrt.shift_up(1) * &rat(-1, 3);

    let lhs = &d[0] * &d[2];
    let rhs = &(&(&c0 * &d[0]) + &(&c1 * &d[1])) + &(&(&c2 * &d[2]) + &(&c3 * &d[3]));
    Ok(SeriesPair::new(lhs, rhs, order))
}

/// How to read the prefactor of `L^{(3)}` in the `(L'')^2` expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// `-(3t + 2t^2) / (3 (1+t^2)^{3/2})`, as stated. It mixes parities, so
    /// it cannot hold for the even series `(L'')^2`.
    AsPrinted,
    /// `-(3t + 2t^3) / (3 (1+t^2)^{3/2})`.
    Corrected,
}

/// The expression of `(L'')^2` through `L, ..., L^{(5)}` used for the
/// `(C_2 + C_2)^n` identity.
pub fn eq_second_derivative_square(order: usize, reading: Reading) -> Result<SeriesPair> {
    let l = l_series(order + 5)?;
    let d = derivatives(&l, 5)?;
    let work = order + 2;
    let sqrt = sqrt_1pt2(work);
    let invsqrt = invsqrt_1pt2(work);
    let inv32 = inv32_1pt2(work);
    let t = Series::variable(work);
    let t2 = Series::monomial(int(1), 2, work);

    let c5 = &sqrt.shift_up(1) * &rat(-1, 30);
    let c4 = &(&invsqrt - &(&sqrt * &int(2))) * &rat(1, 6);
    let second_power = match reading {
        Reading::AsPrinted => 2,
        Reading::Corrected => 3,
    };
    let t_second = Series::monomial(int(2), second_power, work);
    let c3 = &(&(&(&t * &int(3)) + &t_second) * &inv32) * &rat(-1, 3);
    let c2 = &(&(&Series::constant(int(2), work) + &t2) * &inv32) * &rat(-1, 6);
    let c1 = &(&t * &inv32) * &rat(-1, 30);
    let c0 = &inv32 * &rat(1, 30);

    let lhs = &d[2] * &d[2];
    let terms = [c0 * &d[0], c1 * &d[1], c2 * &d[2], c3 * &d[3], c4 * &d[4], c5 * &d[5]];
    let rhs = terms
        .iter()
        .fold(Series::zero(order), |acc, term| &acc + term);
    Ok(SeriesPair::new(lhs, rhs, order))
}

/// `(arcsinh t)^{2m} / (2m)! = sum_{n>=m} (-4)^{n-m} [[n,m]] t^{2n} / (2n)!`
pub fn arcsinh_power(m: usize, order: usize) -> Result<SeriesPair> {
    if m == 0 {
        return domain("the arcsinh power identity needs m >= 1");
    }
    let lhs = &arcsinh(order).pow(2 * m) * &big(factorial_of(2 * m)).recip();
    let triangle = Level2Triangle::by_recurrence(order / 2);
    let rhs = Series::from_fn(order, |i| {
        if i % 2 == 1 || i < 2 * m {
            return Rational::zero();
        }
        let n = i / 2;
        pow_int(-4, (n - m) as i64) * big(triangle.get(n as i64, m as i64)) / big(factorial_of(i))
    });
    Ok(SeriesPair::new(lhs, rhs, order))
}

/// EGF coefficients `(2n)! [t^{2n}]` of `L^{(2j_1)} ... L^{(2j_k)}` next to
/// the direct convolution with the same offsets, for `0 <= n <= nmax`.
pub fn duality(offsets: &[usize], nmax: usize) -> Result<Vec<(usize, Rational, Rational)>> {
    let max_offset = offsets.iter().max().copied().unwrap_or(0);
    let order = 2 * nmax;
    let l = l_series(order + 2 * max_offset)?;
    let mut product = Series::one(order);
    for &j in offsets {
        product = &product * &l.derivative(2 * j)?.truncate(order);
    }
    let table = CauchyNumbers::new(nmax + max_offset);
    (0..=nmax)
        .map(|n| {
            let spec = ConvolutionSpec::new(offsets.to_vec(), n)?;
            Ok((n, product.egf_even_coefficient(n)?, convolve(&spec, &table)?))
        })
        .collect()
}

/// The offset lists whose series products have a closed form in `L`.
pub const DUALITY_CASES: [(&str, &[usize]); 7] = [
    ("L^2", &[0, 0]),
    ("L L''", &[0, 1]),
    ("(L'')^2", &[1, 1]),
    ("L^3", &[0, 0, 0]),
    ("L^4", &[0, 0, 0, 0]),
    ("L^5", &[0, 0, 0, 0, 0]),
    ("L^7", &[0, 0, 0, 0, 0, 0, 0]),
];
