//! Named series expansions used by the generating-function definitions.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exact::{big, double_factorial_ext, factorial_of, int, pow_int, rat, sign_pow, Rational};
use crate::series::Series;

/// The built-in expansions. Names match the CLI `series --name` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `arcsinh t`
    Arcsinh,
    /// `sum z^{2m} / ((2m)! (2m+1)^k)`
    Lif2k,
    /// `sum z^m / (m! (m+1)^k)`
    LifK,
    /// `log(1 + t)`
    Log1p,
    /// `sqrt(1 + t^2)`
    Sqrt1pt2,
    /// `1 / sqrt(1 + t^2)`
    InvSqrt1pt2,
    /// `(1 + t^2)^{-3/2}`
    Inv32_1pt2,
    /// `t / arcsinh t`
    L,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::Arcsinh,
        Builtin::Lif2k,
        Builtin::LifK,
        Builtin::Log1p,
        Builtin::Sqrt1pt2,
        Builtin::InvSqrt1pt2,
        Builtin::Inv32_1pt2,
        Builtin::L,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Arcsinh => "arcsinh",
            Builtin::Lif2k => "lif2k",
            Builtin::LifK => "lif_k",
            Builtin::Log1p => "log1p",
            Builtin::Sqrt1pt2 => "sqrt_1pt2",
            Builtin::InvSqrt1pt2 => "invsqrt_1pt2",
            Builtin::Inv32_1pt2 => "inv32_1pt2",
            Builtin::L => "L",
        }
    }

    pub fn needs_k(self) -> bool {
        matches!(self, Builtin::Lif2k | Builtin::LifK)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown series name {s:?}")))
    }
}

/// Expansion of a named series through `t^order`. `k` is required for the
/// two polyfactorial functions and ignored otherwise.
pub fn builtin_series(name: Builtin, order: usize, k: Option<i64>) -> Result<Series> {
    let need_k = || match k {
        Some(k) => Ok(k),
        None => domain(format!("series {name} needs a k parameter")),
    };
    Ok(match name {
        Builtin::Arcsinh => arcsinh(order),
        Builtin::Lif2k => lif2k(need_k()?, order),
        Builtin::LifK => lif_k(need_k()?, order),
        Builtin::Log1p => log1p(order),
        Builtin::Sqrt1pt2 => sqrt_1pt2(order),
        Builtin::InvSqrt1pt2 => invsqrt_1pt2(order),
        Builtin::Inv32_1pt2 => inv32_1pt2(order),
        Builtin::L => l_series(order)?,
    })
}

/// Fills even powers `t^{2j}` from `f(j)`, odd powers are zero.
fn even_series(order: usize, mut f: impl FnMut(usize) -> Rational) -> Series {
    Series::from_fn(order, |i| if i % 2 == 0 { f(i / 2) } else { Rational::zero() })
}

fn fact(n: usize) -> Rational {
    big(factorial_of(n))
}

/// `arcsinh t = sum_j (-1)^j (2j)! / (4^j (j!)^2 (2j+1)) t^{2j+1}`
pub fn arcsinh(order: usize) -> Series {
    Series::from_fn(order, |i| {
        if i % 2 == 0 {
            return Rational::zero();
        }
        let j = i / 2;
        let num = fact(2 * j) * int(sign_pow(j as i64));
        let den = pow_int(4, j as i64) * fact(j) * fact(j) * int(2 * j as i64 + 1);
        num * den.recip()
    })
}

/// `(2m+1)^{-k}` for any integer `k`.
fn odd_weight(m: usize, k: i64) -> Rational {
    pow_int(2 * m as i64 + 1, -k)
}

pub fn lif2k(k: i64, order: usize) -> Series {
    even_series(order, |m| odd_weight(m, k) / fact(2 * m))
}

pub fn lif_k(k: i64, order: usize) -> Series {
    Series::from_fn(order, |m| pow_int(m as i64 + 1, -k) / fact(m))
}

pub fn log1p(order: usize) -> Series {
    Series::from_fn(order, |j| {
        if j == 0 {
            Rational::zero()
        } else {
            rat(sign_pow(j as i64 + 1), j as i64)
        }
    })
}

/// `sqrt(1+t^2) = sum_j (-1)^{j-1} (2j-3)!! / (2^j j!) t^{2j}`
pub fn sqrt_1pt2(order: usize) -> Series {
    even_series(order, |j| {
        let j = j as i64;
        let df = double_factorial_ext(2 * j - 3).expect("odd argument");
        df * int(sign_pow(j - 1)) * pow_int(2, -j) / fact(j as usize)
    })
}

/// `1/sqrt(1+t^2) = sum_j (-1)^j (2j-1)!! / (2^j j!) t^{2j}`
pub fn invsqrt_1pt2(order: usize) -> Series {
    even_series(order, |j| {
        let j = j as i64;
        let df = double_factorial_ext(2 * j - 1).expect("odd argument");
        df * int(sign_pow(j)) * pow_int(2, -j) / fact(j as usize)
    })
}

/// `(1+t^2)^{-3/2} = sum_j (-1)^j (2j+1)!! / (2^j j!) t^{2j}`
pub fn inv32_1pt2(order: usize) -> Series {
    even_series(order, |j| {
        let j = j as i64;
        let df = double_factorial_ext(2 * j + 1).expect("odd argument");
        df * int(sign_pow(j)) * pow_int(2, -j) / fact(j as usize)
    })
}

/// `L(t) = t / arcsinh t`, the EGF of the level-2 Cauchy numbers at `k = 1`.
pub fn l_series(order: usize) -> Result<Series> {
    // t and arcsinh t share the factor t, so one extra term is needed
    Series::divide(&Series::variable(order + 1), &arcsinh(order + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_rational;

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!("cosh".parse::<Builtin>().is_err());
    }

    #[test]
    fn k_is_required_for_polyfactorials() {
        assert!(builtin_series(Builtin::Lif2k, 4, None).is_err());
        assert!(builtin_series(Builtin::LifK, 4, None).is_err());
        assert!(builtin_series(Builtin::Log1p, 4, None).is_ok());
    }

    #[test]
    fn sqrt_coefficients_match_binomial_series() {
        let s = sqrt_1pt2(20);
        assert_eq!(s.coeffs()[2], rat(1, 2));
        for j in 0..=10 {
            assert_eq!(s.coeffs()[2 * j], binomial_rational(&rat(1, 2), j));
        }
        for i in (1..20).step_by(2) {
            assert!(s.coeffs()[i].is_zero());
        }
        let inv = invsqrt_1pt2(20);
        let inv32 = inv32_1pt2(20);
        for j in 0..=10 {
            assert_eq!(inv.coeffs()[2 * j], binomial_rational(&rat(-1, 2), j));
            assert_eq!(inv32.coeffs()[2 * j], binomial_rational(&rat(-3, 2), j));
        }
    }

    #[test]
    fn square_root_relations() {
        let s = sqrt_1pt2(30);
        let one_plus_t2 = Series::new(vec![int(1), int(0), int(1)], 30);
        assert_eq!(&s * &s, one_plus_t2);
        assert_eq!(&s * &invsqrt_1pt2(30), Series::one(30));
        assert_eq!(&invsqrt_1pt2(30) * &one_plus_t2.reciprocal().unwrap(), inv32_1pt2(30));
    }

    #[test]
    fn arcsinh_is_integral_of_invsqrt() {
        let a = arcsinh(25);
        assert_eq!(a, invsqrt_1pt2(24).integral());
        assert_eq!(a.coeffs()[1], int(1));
        assert_eq!(a.coeffs()[3], rat(-1, 6));
    }

    #[test]
    fn sinh_inverts_arcsinh() {
        let order = 31;
        let sinh = Series::from_fn(order, |i| {
            if i % 2 == 1 {
                fact(i).recip()
            } else {
                Rational::zero()
            }
        });
        let composed = Series::compose(&sinh, &arcsinh(order)).unwrap();
        assert_eq!(composed, Series::variable(order));
        let back = Series::compose(&arcsinh(order), &sinh).unwrap();
        assert_eq!(back, Series::variable(order));
    }

    #[test]
    fn lif2k_at_k0_is_cosh() {
        let s = lif2k(0, 16);
        for m in 0..=8 {
            assert_eq!(s.coeffs()[2 * m], fact(2 * m).recip());
        }
    }

    #[test]
    fn l_series_fixtures() {
        let l = l_series(12).unwrap();
        assert_eq!(l.order(), 12);
        assert_eq!(l.egf_even_coefficient(0).unwrap(), int(1));
        assert_eq!(l.egf_even_coefficient(1).unwrap(), rat(1, 3));
        assert_eq!(l.egf_even_coefficient(2).unwrap(), rat(-17, 15));
        assert_eq!(l.coeffs()[4], rat(-17, 15 * 24));
        for i in (1..=11).step_by(2) {
            assert!(l.coeffs()[i].is_zero());
        }
    }

    #[test]
    fn l_matches_lif21_of_arcsinh() {
        let direct = l_series(20).unwrap();
        let composed = Series::compose(&lif2k(1, 20), &arcsinh(20)).unwrap();
        assert_eq!(direct, composed);
    }
}
