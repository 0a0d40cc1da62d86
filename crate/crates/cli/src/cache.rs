//! Persistent JSON cache of level-2 triangle rows and closed-form
//! poly-Cauchy values.
//!
//! The cache only saves work: rows and values read back are spot-checked
//! (three random triangle rows against the recurrence, three random values
//! against a fresh evaluation) and the whole file is discarded on any
//! mismatch, on a parse error or on an unknown `format_version`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use level2_core::exact::{format_rational, parse_rational};
use level2_core::polycauchy::{polycauchy2_formula_with, PolyCauchyTable, Route};
use level2_core::stirling::Level2Triangle;
use num_bigint::BigInt;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// How many rows and values are re-derived after loading.
const SPOT_CHECKS: usize = 3;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    /// `triangles[n][m]` is `[[n, m]]` in decimal.
    pub triangles: Vec<Vec<String>>,
    pub polycauchy_entries: Vec<CacheEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub n: usize,
    pub k: i64,
    pub value: String,
}

/// Why a cache file was not used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discarded {
    Missing,
    Unreadable(String),
    UnknownVersion(u32),
    FailedSpotCheck,
}

/// What a run reused and computed.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Stats {
    pub rows_reused: usize,
    pub rows_computed: usize,
    pub entries_reused: usize,
    pub entries_computed: usize,
    pub discarded: Option<Discarded>,
}

impl Stats {
    pub fn line(&self) -> String {
        let mut line = format!(
            "cache: triangle rows reused {}, computed {}; poly-Cauchy values reused {}, computed {}",
            self.rows_reused, self.rows_computed, self.entries_reused, self.entries_computed
        );
        match &self.discarded {
            None | Some(Discarded::Missing) => {}
            Some(Discarded::Unreadable(why)) => line.push_str(&format!("; ignored unreadable file ({why})")),
            Some(Discarded::UnknownVersion(v)) => line.push_str(&format!("; ignored format_version {v}")),
            Some(Discarded::FailedSpotCheck) => line.push_str("; discarded after a failed spot check"),
        }
        line
    }
}

/// In-memory state backed by an optional cache file.
pub struct Store {
    path: Option<PathBuf>,
    triangle: Level2Triangle,
    /// Rows that came from the file.
    loaded_rows: usize,
    /// Closed-form values only; the series route is never cached, so it
    /// stays an independent check.
    table: PolyCauchyTable,
    pub stats: Stats,
}

impl Store {
    /// Opens `path` if given; a missing or unusable file starts empty.
    pub fn open(path: Option<&Path>) -> Self {
        let mut store = Self {
            path: path.map(Path::to_path_buf),
            triangle: Level2Triangle::by_recurrence(0),
            loaded_rows: 0,
            table: PolyCauchyTable::new(),
            stats: Stats::default(),
        };
        if let Some(path) = path {
            match load(path) {
                Ok((triangle, table)) => {
                    store.loaded_rows = triangle.nmax() + 1;
                    store.triangle = triangle;
                    store.table = table;
                }
                Err(why) => store.stats.discarded = Some(why),
            }
        }
        store
    }

    /// The triangle through row `nmax`, extended as needed. Each call adds
    /// its rows `0..=nmax` to the statistics as reused (read from the file)
    /// or computed.
    pub fn triangle(&mut self, nmax: usize) -> &Level2Triangle {
        self.triangle.extend_to(nmax);
        let reused = self.loaded_rows.min(nmax + 1);
        self.stats.rows_reused += reused;
        self.stats.rows_computed += nmax + 1 - reused;
        &self.triangle
    }

    /// `C_{2n}^{(k)}` by the closed form for `n = 0..=nmax`.
    pub fn polycauchy_formula(&mut self, k: i64, nmax: usize) -> Vec<level2_core::Rational> {
        self.triangle(nmax);
        let computed = self.table.fill_formula_with(&self.triangle, k, nmax);
        self.stats.entries_computed += computed;
        self.stats.entries_reused += nmax + 1 - computed;
        (0..=nmax)
            .map(|n| self.table.get(n, k).expect("filled").clone())
            .collect()
    }

    /// Writes the cache back, replacing the file atomically.
    pub fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let file = CacheFile {
            format_version: FORMAT_VERSION,
            triangles: self
                .triangle
                .rows()
                .iter()
                .map(|row| row.iter().map(BigInt::to_string).collect())
                .collect(),
            polycauchy_entries: self
                .table
                .iter()
                .map(|(n, k, v, _)| CacheEntry {
                    n,
                    k,
                    value: format_rational(v),
                })
                .collect(),
        };
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, &file)?;
        tmp.write_all(b"\n")?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

fn load(path: &Path) -> Result<(Level2Triangle, PolyCauchyTable), Discarded> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(Discarded::Missing),
        Err(e) => return Err(Discarded::Unreadable(e.to_string())),
    };
    // read the version first so that a future layout is ignored, not misread
    let version: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Discarded::Unreadable(e.to_string()))?;
    match version.get("format_version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(FORMAT_VERSION) => {}
        Some(v) => return Err(Discarded::UnknownVersion(v.try_into().unwrap_or(u32::MAX))),
        None => return Err(Discarded::Unreadable("no format_version".into())),
    }
    let file: CacheFile =
        serde_json::from_value(version).map_err(|e| Discarded::Unreadable(e.to_string()))?;

    let rows = file
        .triangles
        .iter()
        .map(|row| row.iter().map(|v| v.parse::<BigInt>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Discarded::Unreadable(e.to_string()))?;
    let triangle = Level2Triangle::from_rows(rows)
        .ok_or_else(|| Discarded::Unreadable("triangle rows have the wrong shape".into()))?;

    let mut rng = rand::thread_rng();
    let row_count = triangle.nmax() + 1;
    let rows_ok = sample(&mut rng, row_count, SPOT_CHECKS.min(row_count))
        .into_iter()
        .all(|n| triangle.check_row(n));
    if !rows_ok {
        return Err(Discarded::FailedSpotCheck);
    }

    let mut table = PolyCauchyTable::new();
    for entry in &file.polycauchy_entries {
        let value = parse_rational(&entry.value).map_err(|e| Discarded::Unreadable(e.to_string()))?;
        table.insert(entry.n, entry.k, value, Route::Formula);
    }
    let entries: Vec<_> = table.iter().map(|(n, k, v, _)| (n, k, v.clone())).collect();
    let values_ok = sample(&mut rng, entries.len(), SPOT_CHECKS.min(entries.len()))
        .into_iter()
        .all(|i| {
            let (n, k, ref value) = entries[i];
            let reference = Level2Triangle::by_recurrence(n);
            polycauchy2_formula_with(&reference, n, k).is_ok_and(|v| &v == value)
        });
    if !values_ok {
        return Err(Discarded::FailedSpotCheck);
    }
    Ok((triangle, table))
}
