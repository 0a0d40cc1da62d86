//! Truncated formal power series in one variable with exact rational
//! coefficients.
//!
//! A [`Series`] of order `N` knows the ordinary coefficients of `t^0..=t^N`;
//! everything above `t^N` is unknown, not zero. Binary operations keep the
//! smaller of the two orders. Exponential-generating-function access is a
//! view on top of the ordinary coefficients (see [`Series::egf_coefficient`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::{big, factorial_of, format_rational, int, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series of the given truncation order. Missing coefficients
    /// are zero; extra ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        Self::new(vec![value], order)
    }

    /// `value * t^power`, truncated at `order`.
    pub fn monomial(value: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = value;
        }
        s
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^i`, or `None` past the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    /// Index of the first nonzero coefficient, `None` if all known
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul_series(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, exponent: usize) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Formal derivative applied `times` times. The order drops by `times`.
    pub fn derivative(&self, times: usize) -> Result<Series> {
        if times > self.order() {
            return domain(format!(
                "cannot differentiate {times} times a series of order {}",
                self.order()
            ));
        }
        let mut coeffs = self.coeffs.clone();
        for _ in 0..times {
            coeffs = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect();
        }
        Ok(Series { coeffs })
    }

    /// Term-by-term antiderivative with zero constant term; the order grows
    /// by one.
    pub fn integral(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(i as i64 + 1));
        }
        Series { coeffs }
    }

    /// Multiplication by `t^power`; the order grows by `power`.
    pub fn shift_up(&self, power: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Exact division by `t^power`. The low `power` coefficients must be
    /// zero; the order drops by `power`.
    pub fn shift_down(&self, power: usize) -> Result<Series> {
        if power > self.order() {
            return domain(format!(
                "cannot divide a series of order {} by t^{power}",
                self.order()
            ));
        }
        if let Some(i) = self.coeffs[..power].iter().position(|c| !c.is_zero()) {
            return domain(format!(
                "division by t^{power}: coefficient of t^{i} is nonzero"
            ));
        }
        Ok(Series {
            coeffs: self.coeffs[power..].to_vec(),
        })
    }

    /// `outer(inner(t))`, evaluated by Horner's rule over powers of `inner`.
    ///
    /// `inner` must have a zero constant term. With inner valuation `v`, the
    /// result is exact through `min(inner.order, v * (outer.order + 1) - 1)`.
    pub fn compose(outer: &Series, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return domain("composition needs an inner series with zero constant term");
        }
        let order = match inner.valuation() {
            Some(v) => inner.order().min(v * (outer.order() + 1) - 1),
            None => inner.order(),
        };
        let inner = inner.truncate(order);
        let mut acc = Series::zero(order);
        for c in outer.coeffs.iter().rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Multiplicative inverse. Needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return domain("reciprocal of a series with zero constant term");
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[n - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    /// `num / den`. A common factor `t^v` (the valuation of `den`) is
    /// cancelled first, which requires the low `v` coefficients of `num` to
    /// vanish; the result order is `min(num.order, den.order) - v`.
    pub fn divide(num: &Series, den: &Series) -> Result<Series> {
        let v = match den.valuation() {
            Some(v) => v,
            None => return domain("division by a series that is zero through its order"),
        };
        let num = num.shift_down(v)?;
        let den = den.shift_down(v)?;
        Ok(num.mul_series(&den.reciprocal()?))
    }

    /// EGF coefficient `n! * [t^n]`.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational> {
        match self.coeffs.get(n) {
            Some(c) => Ok(c * big(factorial_of(n))),
            None => domain(format!(
                "EGF index {n} beyond truncation order {}",
                self.order()
            )),
        }
    }

    /// Even EGF coefficient `(2n)! * [t^{2n}]`.
    pub fn egf_even_coefficient(&self, n: usize) -> Result<Rational> {
        self.egf_coefficient(2 * n)
    }

    /// Ordinary coefficient of `t^i` in an EGF-described series
    /// `sum a_i t^i / i!`.
    pub fn from_egf(values: &[Rational]) -> Series {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(i, a)| a / big(factorial_of(i)))
            .collect::<Vec<_>>();
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{} t^{i}", format_rational(c)))
            .collect();
        write!(f, "Series[{}; O(t^{})]", terms.join(" + "), self.order() + 1)
    }
}

fn zip_with(a: &Series, b: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
    let order = a.order().min(b.order());
    Series {
        coeffs: (0..=order).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect(),
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Mul<&Rational> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Rational) -> Series {
        self.scale(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn s(coeffs: &[i64], order: usize) -> Series {
        Series::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn arithmetic_basics() {
        let p = s(&[1, 1], 4) * s(&[1, -1], 4);
        assert_eq!(p, s(&[1, 0, -1], 4));
        let a = s(&[3, 0, 2, 7], 5);
        assert_eq!(&a + &Series::zero(5), a);
        let half = Series::new(vec![rat(1, 2), int(1)], 3);
        assert_eq!(half.scale(&int(2)), s(&[1, 2], 3));
    }

    #[test]
    fn mixed_orders_keep_the_smaller() {
        let a = s(&[1, 2, 3, 4], 3);
        let b = s(&[1, 1], 6);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn derivatives() {
        let t2 = s(&[0, 0, 1], 4);
        assert_eq!(t2.derivative(1).unwrap(), s(&[0, 2], 3));
        let half_t2 = Series::new(vec![int(0), int(0), rat(1, 2)], 2);
        assert_eq!(half_t2.derivative(2).unwrap(), s(&[1], 0));
        assert!(s(&[5], 3).derivative(1).unwrap().is_zero());
        assert!(s(&[5], 3).derivative(4).is_err());
    }

    #[test]
    fn composition_examples() {
        let outer = s(&[1, 1], 6);
        let t2 = s(&[0, 0, 1], 6);
        assert_eq!(Series::compose(&outer, &t2).unwrap(), s(&[1, 0, 1], 6));

        let inner = s(&[0, 3, -1, 4, 2], 4);
        assert_eq!(Series::compose(&s(&[0, 1], 4), &inner).unwrap(), inner);

        let exp3 = Series::from_fn(3, |i| big(factorial_of(i)).recip());
        let composed = Series::compose(&exp3, &Series::variable(3)).unwrap();
        assert_eq!(composed, exp3);

        assert!(Series::compose(&outer, &s(&[1, 1], 4)).is_err());
    }

    #[test]
    fn reciprocal_and_division() {
        let geometric = s(&[1, -1], 6).reciprocal().unwrap();
        assert_eq!(geometric, s(&[1, 1, 1, 1, 1, 1, 1], 6));
        let a = s(&[2, 0, 5, -1], 6);
        assert_eq!(Series::divide(&a, &a).unwrap(), Series::one(6));
        assert!(s(&[0, 1], 3).reciprocal().is_err());
        assert!(Series::divide(&a, &Series::zero(6)).is_err());
        // num lacks the t factor carried by den
        assert!(Series::divide(&s(&[1, 1], 4), &s(&[0, 1], 4)).is_err());
        let q = Series::divide(&s(&[0, 0, 1, 1], 5), &s(&[0, 1], 5)).unwrap();
        assert_eq!(q, s(&[0, 1, 1], 4));
    }

    #[test]
    fn shifts() {
        let a = s(&[0, 0, 3, 1], 5);
        assert_eq!(a.shift_down(2).unwrap(), s(&[3, 1], 3));
        assert!(a.shift_down(3).is_err());
        assert_eq!(a.shift_down(2).unwrap().shift_up(2), a);
    }

    #[test]
    fn egf_view() {
        let a = s(&[1, 0, 3], 4);
        assert_eq!(a.egf_even_coefficient(1).unwrap(), int(6));
        assert_eq!(Series::variable(4).egf_even_coefficient(1).unwrap(), int(0));
        assert!(a.egf_even_coefficient(3).is_err());
        let back = Series::from_egf(&[int(1), int(2), int(6)]);
        assert_eq!(back, s(&[1, 2, 3], 2));
    }

    fn arb_invertible() -> impl Strategy<Value = Series> {
        (
            prop::collection::vec((-20i64..20, 1i64..9), 1..10),
            -20i64..20,
        )
            .prop_filter_map("nonzero head", |(tail, head)| {
                if head == 0 {
                    return None;
                }
                let mut coeffs = vec![int(head)];
                coeffs.extend(tail.into_iter().map(|(n, d)| rat(n, d)));
                let order = coeffs.len() - 1;
                Some(Series::new(coeffs, order))
            })
    }

    proptest! {
        #[test]
        fn reciprocal_is_inverse(a in arb_invertible()) {
            let product = a.reciprocal().unwrap() * &a;
            prop_assert_eq!(product, Series::one(a.order()));
        }

        #[test]
        fn product_rule(a in arb_invertible(), b in arb_invertible()) {
            let lhs = (&a * &b).derivative(1).unwrap();
            let rhs = a.derivative(1).unwrap() * &b + &a * b.derivative(1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
