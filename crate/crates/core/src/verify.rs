//! One entry point that runs any of the identity checks and collects exact
//! left/right values per index into an [`IdentityReport`].
//!
//! Row keys depend on the identity:
//!
//! * `thm1`, `cor1`: `n` of `C_{2n}^{(k)}`;
//! * convolution identities and the conjecture: the exponent `n`;
//! * series identities (`eqll`, `eqconvo02`, `arcsinh_power`): the power of
//!   `t`, from `0` through `2 nmax + 1`, so that `nmax` bounds the even EGF
//!   index in every case.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;

use crate::conjecture::{default_samples, extract_conjecture_polynomials, ConjectureExtraction};
use crate::convolution::{convolve_all, CauchyNumbers, Theorem};
use crate::error::{domain, Error, Result};
use crate::exact::Rational;
use crate::polycauchy::{corollary1_check, polycauchy2_formula_with, polycauchy2_series};
use crate::series_identities::{arcsinh_power, eq_convo02, eq_ll, SeriesPair};
use crate::stirling::Level2Triangle;

/// Every identity the verifier knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// Closed form for `C_{2n}^{(k)}` against the generating function.
    Thm1,
    /// The multiple-integral representation.
    Cor1,
    Convolution(Theorem),
    EqLl,
    EqConvo02,
    ArcsinhPower,
    /// The odd-fold pattern with `2r+1` terms.
    Conjecture(usize),
}

impl IdentityId {
    pub fn all() -> Vec<IdentityId> {
        let mut ids = vec![IdentityId::Thm1, IdentityId::Cor1];
        ids.extend(Theorem::ALL.into_iter().map(IdentityId::Convolution));
        ids.extend([IdentityId::EqLl, IdentityId::EqConvo02, IdentityId::ArcsinhPower]);
        ids.extend((1..=3).map(IdentityId::Conjecture));
        ids
    }

    pub fn name(self) -> String {
        match self {
            IdentityId::Thm1 => "thm1".into(),
            IdentityId::Cor1 => "cor1".into(),
            IdentityId::Convolution(t) => t.name().into(),
            IdentityId::EqLl => "eqll".into(),
            IdentityId::EqConvo02 => "eqconvo02".into(),
            IdentityId::ArcsinhPower => "arcsinh_power".into(),
            IdentityId::Conjecture(r) => format!("conjecture-r{r}"),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "thm1" => IdentityId::Thm1,
            "cor1" => IdentityId::Cor1,
            "eqll" => IdentityId::EqLl,
            "eqconvo02" => IdentityId::EqConvo02,
            "arcsinh_power" => IdentityId::ArcsinhPower,
            "conjecture" => IdentityId::Conjecture(1),
            _ => {
                if let Some(r) = s.strip_prefix("conjecture-r") {
                    match r.parse::<usize>() {
                        Ok(r @ 1..=3) => IdentityId::Conjecture(r),
                        _ => return domain(format!("unknown identity {s:?}")),
                    }
                } else {
                    IdentityId::Convolution(
                        s.parse()
                            .map_err(|_| Error::Domain(format!("unknown identity {s:?}")))?,
                    )
                }
            }
        };
        Ok(id)
    }
}

/// Knobs for [`verify_identity`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub nmax: usize,
    /// `k` for `thm1` and `cor1`, `m` for `arcsinh_power`; defaults to 1.
    pub k: Option<i64>,
    /// Minimum series order for generating-function routes.
    pub order: usize,
    /// Worker threads; `None` or 1 runs on the calling thread.
    pub jobs: Option<usize>,
    /// Adds 1 to the right-hand side at this row key. Negative controls only.
    pub perturb_rhs_at: Option<usize>,
}

impl VerifyOptions {
    pub fn new(nmax: usize) -> Self {
        Self {
            nmax,
            k: None,
            order: 40,
            jobs: None,
            perturb_rhs_at: None,
        }
    }

    fn k(&self) -> i64 {
        self.k.unwrap_or(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowResult {
    pub n: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity: String,
    pub nmax: usize,
    pub status: Status,
    pub results: Vec<RowResult>,
    pub first_failure: Option<RowResult>,
    /// Present for the conjecture: the recovered polynomials and their
    /// structural checks, which are reported separately from the rows.
    pub conjecture: Option<ConjectureExtraction>,
}

impl IdentityReport {
    fn from_rows(identity: String, nmax: usize, results: Vec<RowResult>) -> Self {
        let first_failure = results.iter().find(|r| !r.equal).cloned();
        let status = if first_failure.is_some() { Status::Fail } else { Status::Pass };
        Self {
            identity,
            nmax,
            status,
            results,
            first_failure,
            conjecture: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Rows pass and, for the conjecture, every structural check holds.
    pub fn fully_passed(&self) -> bool {
        self.passed() && self.conjecture.as_ref().is_none_or(ConjectureExtraction::passed)
    }
}

/// Runs one identity over its range.
pub fn verify_identity(id: IdentityId, opts: &VerifyOptions) -> Result<IdentityReport> {
    let extraction = match id {
        IdentityId::Conjecture(r) => Some(extract_conjecture_polynomials(r, &default_samples(r))?),
        _ => None,
    };
    let extraction_ref = extraction.as_ref();
    let mut rows = match opts.jobs {
        Some(jobs) if jobs > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start {jobs} workers: {e}")))?;
            pool.install(|| rows_for(id, opts, extraction_ref, true))?
        }
        _ => rows_for(id, opts, extraction_ref, false)?,
    };
    if let Some(at) = opts.perturb_rhs_at {
        for row in rows.iter_mut().filter(|r| r.n == at) {
            row.rhs += Rational::one();
            row.equal = row.lhs == row.rhs;
        }
    }
    let mut report = IdentityReport::from_rows(id.name(), opts.nmax, rows);
    report.conjecture = extraction;
    Ok(report)
}

fn row(n: usize, lhs: Rational, rhs: Rational) -> RowResult {
    let equal = lhs == rhs;
    RowResult { n, lhs, rhs, equal }
}

/// Evaluates `f` on every key, in parallel when asked, keeping key order.
fn map_keys<F>(keys: Vec<usize>, parallel: bool, f: F) -> Result<Vec<RowResult>>
where
    F: Fn(usize) -> Result<RowResult> + Sync + Send,
{
    if parallel {
        keys.into_par_iter().map(&f).collect()
    } else {
        keys.into_iter().map(&f).collect()
    }
}

fn series_rows(pair: SeriesPair) -> Vec<RowResult> {
    pair.coefficients()
        .map(|(i, a, b)| row(i, a.clone(), b.clone()))
        .collect()
}

fn rows_for(
    id: IdentityId,
    opts: &VerifyOptions,
    extraction: Option<&ConjectureExtraction>,
    parallel: bool,
) -> Result<Vec<RowResult>> {
    let nmax = opts.nmax;
    let series_order = 2 * nmax + 1;
    match id {
        IdentityId::Thm1 => {
            let k = opts.k();
            let triangle = Level2Triangle::by_recurrence(nmax);
            let order = opts.order.max(2 * nmax);
            let series = polycauchy2_series(k, order);
            map_keys((0..=nmax).collect(), parallel, |n| {
                let formula = polycauchy2_formula_with(&triangle, n, k)?;
                let by_series = series.egf_even_coefficient(n)?;
                Ok(row(n, formula, by_series))
            })
        }
        IdentityId::Cor1 => {
            let k = opts.k();
            let triangle = Level2Triangle::by_recurrence(nmax);
            map_keys((0..=nmax).collect(), parallel, |n| {
                let report = corollary1_check(&triangle, n, k)?;
                let mut r = row(n, report.integral.clone(), report.formula.clone());
                r.equal = report.passed();
                Ok(r)
            })
        }
        IdentityId::Convolution(t) => {
            let table = CauchyNumbers::new(t.max_index(nmax));
            map_keys((t.lower_bound()..=nmax).collect(), parallel, |n| {
                Ok(row(n, t.lhs(&table, n)?, t.rhs(&table, n)?))
            })
        }
        IdentityId::EqLl => Ok(series_rows(eq_ll(series_order)?)),
        IdentityId::EqConvo02 => Ok(series_rows(eq_convo02(series_order)?)),
        IdentityId::ArcsinhPower => {
            let m = usize::try_from(opts.k())
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::Domain("arcsinh_power needs m >= 1".into()))?;
            Ok(series_rows(arcsinh_power(m, series_order)?))
        }
        IdentityId::Conjecture(r) => {
            let extraction = extraction.expect("extracted before the sweep");
            if nmax < r + 1 {
                return Ok(Vec::new());
            }
            let table = CauchyNumbers::new(nmax);
            let lhs = convolve_all(&vec![0; 2 * r + 1], nmax, &table)?;
            map_keys((r + 1..=nmax).collect(), parallel, |n| {
                Ok(row(n, lhs[n].clone(), extraction.rhs(&table, n)?))
            })
        }
    }
}
