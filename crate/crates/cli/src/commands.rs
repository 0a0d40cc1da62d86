//! Subcommand implementations. Each writes its full output to stdout and
//! reports pass/fail through [`Outcome`]; errors become usage failures.

use std::io::Write;

use level2_core::builtin::builtin_series;
use level2_core::exact::format_rational;
use level2_core::polycauchy::{polycauchy2_series, Route};
use level2_core::verify::{verify_identity, VerifyOptions};
use serde_json::json;

use crate::cache::Store;
use crate::output;
use crate::{Cli, Command, Format, Outcome, RouteArg};

type CmdResult = Result<Outcome, Box<dyn std::error::Error>>;

pub fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    let format = g.format;
    if format == Some(Format::Text) && !matches!(cli.command, Command::Verify { .. }) {
        return Err("--format text applies to verify only".into());
    }
    let mut store = Store::open(g.cache.as_deref());
    let (text, outcome) = match &cli.command {
        Command::Stirling2 { nmax, signed } => {
            let triangle = store.triangle(*nmax);
            let rows = if *signed {
                triangle.signed_rows()[..=*nmax].to_vec()
            } else {
                triangle.rows()[..=*nmax].to_vec()
            };
            (output::triangle(format.unwrap_or(Format::Csv), &rows, *signed), Outcome::Pass)
        }
        Command::Polycauchy { k, nmax, route } => {
            polycauchy(&mut store, format.unwrap_or(Format::Csv), *k, *nmax, *route, g.order)
        }
        Command::Series { name, k } => {
            let series = builtin_series(*name, g.order, *k)?;
            let coeffs: Vec<String> = series.coeffs().iter().map(format_rational).collect();
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => output::json_text(&json!({
                    "name": name.name(),
                    "order": g.order,
                    "k": k,
                    "coefficients": coeffs,
                })),
                f => {
                    let rows: Vec<Vec<String>> = coeffs
                        .into_iter()
                        .enumerate()
                        .map(|(i, c)| vec![i.to_string(), c])
                        .collect();
                    output::delimited(f, &["index", "coefficient"], &rows)
                }
            };
            (text, Outcome::Pass)
        }
        Command::Verify { identity, nmax, k } => {
            let opts = VerifyOptions {
                nmax: *nmax,
                k: *k,
                order: g.order,
                jobs: g.jobs.map(usize::from),
                perturb_rhs_at: None,
            };
            let report = verify_identity(*identity, &opts)?;
            let outcome = if report.fully_passed() { Outcome::Pass } else { Outcome::Fail };
            (output::report(format.unwrap_or(Format::Text), &report), outcome)
        }
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    store.save()?;
    if g.stats {
        eprintln!("{}", store.stats.line());
    }
    Ok(outcome)
}

fn polycauchy(
    store: &mut Store,
    format: Format,
    k: i64,
    nmax: usize,
    route: RouteArg,
    order: usize,
) -> (String, Outcome) {
    let columns: Vec<Vec<level2_core::Rational>> = route
        .routes()
        .into_iter()
        .map(|r| match r {
            Route::Formula => store.polycauchy_formula(k, nmax),
            Route::Series => {
                // never truncate: the order must reach t^{2 nmax}
                let series = polycauchy2_series(k, order.max(2 * nmax));
                (0..=nmax)
                    .map(|n| series.egf_even_coefficient(n).expect("order covers 2 nmax"))
                    .collect()
            }
        })
        .collect();
    let agree = columns.windows(2).all(|w| w[0] == w[1]);
    let outcome = if agree { Outcome::Pass } else { Outcome::Fail };
    let names: Vec<&str> = match route {
        RouteArg::Both => vec!["formula", "series"],
        _ => vec!["value"],
    };
    let text = match format {
        Format::Json => {
            let values: Vec<serde_json::Value> = (0..=nmax)
                .map(|n| {
                    let mut entry = serde_json::Map::new();
                    entry.insert("n".into(), json!(n));
                    for (name, col) in names.iter().zip(&columns) {
                        entry.insert((*name).into(), json!(format_rational(&col[n])));
                    }
                    serde_json::Value::Object(entry)
                })
                .collect();
            output::json_text(&json!({
                "k": k,
                "nmax": nmax,
                "route": format!("{route:?}").to_lowercase(),
                "values": values,
            }))
        }
        f => {
            let header: Vec<&str> = std::iter::once("n").chain(names.iter().copied()).collect();
            let rows: Vec<Vec<String>> = (0..=nmax)
                .map(|n| {
                    std::iter::once(n.to_string())
                        .chain(columns.iter().map(|c| format_rational(&c[n])))
                        .collect()
                })
                .collect();
            output::delimited(f, &header, &rows)
        }
    };
    if !agree {
        eprintln!("level2: formula and series routes disagree");
    }
    (text, outcome)
}
