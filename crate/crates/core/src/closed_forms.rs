//! Closed forms for the classical and level-2 Stirling numbers of the first
//! kind near the edges of the triangle, checked against the recurrence.

use num_bigint::BigInt;

use crate::exact::{big, binomial, factorial_of, format_rational, int, rat, HarmonicCache, Rational};
use crate::stirling::{FixtureResult, Level2Triangle, StirlingTriangle};

/// Which triangle a closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Classical,
    Level2,
}

/// Where in the triangle the closed form sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    /// Column `m` for every row.
    Column(i64),
    /// The entry `(n, n - d)`.
    Diagonal(i64),
}

pub struct ClosedForm {
    pub name: &'static str,
    pub family: Family,
    pub position: Position,
    /// False for forms that are not stated in the literature in this exact
    /// shape (corrections of misprints).
    pub as_printed: bool,
    formula: fn(i64, &mut Harmonics) -> Rational,
}

/// Harmonic numbers of orders 1, 2 and 4, shared across formulas.
pub struct Harmonics {
    h1: HarmonicCache,
    h2: HarmonicCache,
    h4: HarmonicCache,
}

impl Harmonics {
    fn new() -> Self {
        Self {
            h1: HarmonicCache::new(1).expect("order 1"),
            h2: HarmonicCache::new(2).expect("order 2"),
            h4: HarmonicCache::new(4).expect("order 4"),
        }
    }
}

fn b(n: i64, k: i64) -> Rational {
    big(binomial(n, k))
}

fn poly(n: i64, coeffs_high_to_low: &[i64]) -> Rational {
    let v = coeffs_high_to_low
        .iter()
        .fold(BigInt::from(0), |acc, &c| acc * n + c);
    big(v)
}

fn fact_sq(n: i64) -> Rational {
    let f = big(factorial_of((n - 1) as usize));
    &f * &f
}

pub fn all() -> Vec<ClosedForm> {
    use Family::*;
    use Position::*;
    vec![
        ClosedForm { name: "[n,0] = 0", family: Classical, position: Column(0), as_printed: true, formula: |_, _| int(0) },
        ClosedForm {
            name: "[n,1] = (n-1)!",
            family: Classical,
            position: Column(1),
            as_printed: true,
            formula: |n, _| big(factorial_of((n - 1) as usize)),
        },
        ClosedForm {
            name: "[n,2] = (n-1)! H_{n-1}",
            family: Classical,
            position: Column(2),
            as_printed: true,
            formula: |n, h| big(factorial_of((n - 1) as usize)) * h.h1.get((n - 1) as usize),
        },
        ClosedForm { name: "[n,n] = 1", family: Classical, position: Diagonal(0), as_printed: true, formula: |_, _| int(1) },
        ClosedForm {
            name: "[n,n-1] = C(n,2)",
            family: Classical,
            position: Diagonal(1),
            as_printed: true,
            formula: |n, _| b(n, 2),
        },
        ClosedForm {
            name: "[n,n-2] = (3n-1)/4 C(n,3)",
            family: Classical,
            position: Diagonal(2),
            as_printed: true,
            formula: |n, _| poly(n, &[3, -1]) * rat(1, 4) * b(n, 3),
        },
        ClosedForm {
            name: "[n,n-3] = C(n,2) C(n,4)",
            family: Classical,
            position: Diagonal(3),
            as_printed: true,
            formula: |n, _| b(n, 2) * b(n, 4),
        },
        ClosedForm {
            name: "[n,n-4] = (15n^3-30n^2+5n-2)/48 C(n,5)",
            family: Classical,
            position: Diagonal(4),
            as_printed: true,
            formula: |n, _| poly(n, &[15, -30, 5, -2]) * rat(1, 48) * b(n, 5),
        },
        // the printed constant term has the wrong sign: [5,1] = 24 needs +2
        ClosedForm {
            name: "[n,n-4] = (15n^3-30n^2+5n+2)/48 C(n,5)",
            family: Classical,
            position: Diagonal(4),
            as_printed: false,
            formula: |n, _| poly(n, &[15, -30, 5, 2]) * rat(1, 48) * b(n, 5),
        },
        ClosedForm {
            name: "[n,n-5] = (3n^2-7n-2)/8 C(n,2) C(n,6)",
            family: Classical,
            position: Diagonal(5),
            as_printed: true,
            formula: |n, _| poly(n, &[3, -7, -2]) * rat(1, 8) * b(n, 2) * b(n, 6),
        },
        ClosedForm {
            name: "[n,n-6] = (63n^5-315n^4+315n^3+91n^2-42n-16)/576 C(n,7)",
            family: Classical,
            position: Diagonal(6),
            as_printed: true,
            formula: |n, _| poly(n, &[63, -315, 315, 91, -42, -16]) * rat(1, 576) * b(n, 7),
        },
        ClosedForm {
            name: "[[n,1]] = ((n-1)!)^2",
            family: Level2,
            position: Column(1),
            as_printed: true,
            formula: |n, _| fact_sq(n),
        },
        ClosedForm {
            name: "[[n,2]] = ((n-1)!)^2 H2_{n-1}",
            family: Level2,
            position: Column(2),
            as_printed: true,
            formula: |n, h| fact_sq(n) * h.h2.get((n - 1) as usize),
        },
        ClosedForm {
            name: "[[n,3]] = ((n-1)!)^2 ((H2_{n-1})^2 - H4_{n-1})/2",
            family: Level2,
            position: Column(3),
            as_printed: true,
            formula: |n, h| {
                let h2 = h.h2.get((n - 1) as usize).clone();
                let h4 = h.h4.get((n - 1) as usize).clone();
                fact_sq(n) * (&h2 * &h2 - h4) * rat(1, 2)
            },
        },
        ClosedForm { name: "[[n,n]] = 1", family: Level2, position: Diagonal(0), as_printed: true, formula: |_, _| int(1) },
        ClosedForm {
            name: "[[n,n-1]] = C(2n,3)/2^2",
            family: Level2,
            position: Diagonal(1),
            as_printed: true,
            formula: |n, _| b(2 * n, 3) * rat(1, 4),
        },
        ClosedForm {
            name: "[[n,n-2]] = (5n+1)/(3*2^3) C(2n,5)",
            family: Level2,
            position: Diagonal(2),
            as_printed: true,
            formula: |n, _| poly(n, &[5, 1]) * rat(1, 24) * b(2 * n, 5),
        },
        ClosedForm {
            name: "[[n,n-3]] = (35n^2+21n+4)/(9*2^4) C(2n,7)",
            family: Level2,
            position: Diagonal(3),
            as_printed: true,
            formula: |n, _| poly(n, &[35, 21, 4]) * rat(1, 144) * b(2 * n, 7),
        },
        ClosedForm {
            name: "[[n,n-4]] = (5n+2)(35n^2+28n+9)/(15*2^5) C(2n,9)",
            family: Level2,
            position: Diagonal(4),
            as_printed: true,
            formula: |n, _| poly(n, &[5, 2]) * poly(n, &[35, 28, 9]) * rat(1, 480) * b(2 * n, 9),
        },
        ClosedForm {
            name: "[[n,n-5]] = (385n^4+770n^3+671n^2+286n+48)/(9*2^6) C(2n,11)",
            family: Level2,
            position: Diagonal(5),
            as_printed: true,
            formula: |n, _| poly(n, &[385, 770, 671, 286, 48]) * rat(1, 576) * b(2 * n, 11),
        },
    ]
}

pub(crate) fn run(nmax: usize) -> Vec<FixtureResult> {
    let classical = StirlingTriangle::new(nmax);
    let level2 = Level2Triangle::by_recurrence(nmax);
    let mut harmonics = Harmonics::new();
    all()
        .into_iter()
        .map(|form| {
            let start = match form.position {
                Position::Column(_) => 1,
                Position::Diagonal(d) => d.max(1),
            };
            let mut checked = 0;
            let mut first_failure = None;
            for n in start..=nmax as i64 {
                let m = match form.position {
                    Position::Column(m) => m,
                    Position::Diagonal(d) => n - d,
                };
                let actual = big(match form.family {
                    Family::Classical => classical.get(n, m),
                    Family::Level2 => level2.get(n, m),
                });
                let claimed = (form.formula)(n, &mut harmonics);
                checked += 1;
                if actual != claimed && first_failure.is_none() {
                    first_failure = Some((
                        n as usize,
                        format_rational(&actual),
                        format_rational(&claimed),
                    ));
                }
            }
            FixtureResult {
                name: form.name,
                as_printed: form.as_printed,
                checked,
                first_failure,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let forms = all();
        let mut h = Harmonics::new();
        let find = |name: &str| forms.iter().find(|f| f.name.starts_with(name)).unwrap();
        assert_eq!((find("[[n,1]]").formula)(4, &mut h), int(36));
        assert_eq!((find("[[n,2]]").formula)(3, &mut h), int(5));
        assert_eq!((find("[[n,n-1]]").formula)(2, &mut h), int(1));
        assert_eq!((find("[[n,n-1]]").formula)(3, &mut h), int(5));
    }

    #[test]
    fn counts_by_family() {
        let forms = all();
        let diag = |fam| {
            forms
                .iter()
                .filter(|f| f.as_printed && f.family == fam)
                .filter(|f| matches!(f.position, Position::Diagonal(_)))
                .count()
        };
        assert_eq!(diag(Family::Classical), 7);
        assert_eq!(diag(Family::Level2), 6);
    }

    #[test]
    fn forms_hold_through_row_30_except_the_misprint() {
        let failed: Vec<_> = run(30).into_iter().filter(|r| !r.passed()).collect();
        assert_eq!(failed.len(), 1, "{failed:#?}");
        assert_eq!(failed[0].name, "[n,n-4] = (15n^3-30n^2+5n-2)/48 C(n,5)");
        assert_eq!(
            failed[0].first_failure,
            Some((5, "24".to_string(), "287/12".to_string()))
        );
    }
}
