//! Bundled knot complexes and their text format.
//!
//! Records are JSON with fields `name`, `generators` (pairs `[maslov,
//! alexander]`), `differential` (dense matrix, column `j` the boundary of
//! generator `j`) and an optional `companion` cache.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::IntegerMatrix;
use crate::complex::{CompanionData, FilteredKnotComplex, Generator};
use crate::error::{Error, Result};
use crate::format;

/// Environment variable naming a directory of `<key>.json` records that
/// shadows the bundled set.
pub const DATA_DIR_ENV: &str = "HFK_DOUBLER_DATA";

/// Largest `n` for the bundled `torus_2_{2n+1}` family.
pub const MAX_TORUS_N: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub key: String,
    pub complex: FilteredKnotComplex,
    pub companion: Option<CompanionData>,
}

impl KnotRecord {
    pub fn new(complex: FilteredKnotComplex) -> Result<Self> {
        let companion = complex.to_companion()?;
        Ok(KnotRecord {
            key: complex.name.clone(),
            complex,
            companion: Some(companion),
        })
    }

    /// Cached companion data, computing it when absent.
    pub fn companion(&self) -> Result<CompanionData> {
        match &self.companion {
            Some(c) => Ok(c.clone()),
            None => self.complex.to_companion(),
        }
    }
}

pub fn bundled_keys() -> Vec<String> {
    let mut keys: Vec<String> = ["unknot", "trefoil_rh", "trefoil_lh", "figure8"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    keys.extend((1..=MAX_TORUS_N).map(|n| format!("torus_2_{}", 2 * n + 1)));
    keys
}

pub fn load(key: &str) -> Result<KnotRecord> {
    KnotRecord::new(bundled_complex(key)?)
}

fn bundled_complex(key: &str) -> Result<FilteredKnotComplex> {
    match key {
        "unknot" => FilteredKnotComplex::from_arrows("unknot", &[(0, 0)], &[]),
        "trefoil_rh" => staircase("trefoil_rh", 1),
        // Written out independently of the mirror construction, generators in a different order.
        "trefoil_lh" => FilteredKnotComplex::from_arrows(
            "trefoil_lh",
            &[(2, 1), (1, 0), (0, -1)],
            &[(0, 1, 1)],
        ),
        // a(1,1) -> b(0,0), c(0,0) -> d(-1,-1), e(0,0) carries the homology.
        "figure8" => FilteredKnotComplex::from_arrows(
            "figure8",
            &[(1, 1), (0, 0), (0, 0), (-1, -1), (0, 0)],
            &[(0, 1, 1), (2, 3, 1)],
        ),
        _ => {
            let n = key
                .strip_prefix("torus_2_")
                .and_then(|s| s.parse::<u32>().ok())
                .filter(|&p| p % 2 == 1 && p >= 3 && (p - 1) / 2 <= MAX_TORUS_N)
                .map(|p| (p - 1) / 2)
                .ok_or_else(|| Error::UnknownKnot(key.to_string()))?;
            staircase(key, n)
        }
    }
}

/// Hat complex of the `T(2, 2n+1)` staircase: `x_k` at Alexander `n - k`,
/// Maslov `-k`, with the vertical arrows `x_{2j+1} -> x_{2j+2}`.
fn staircase(name: &str, n: u32) -> Result<FilteredKnotComplex> {
    let n = n as i64;
    let gens: Vec<(i64, i64)> = (0..=2 * n).map(|k| (-k, n - k)).collect();
    let arrows: Vec<(usize, usize, i64)> = (0..n)
        .map(|j| (2 * j as usize + 1, 2 * j as usize + 2, 1))
        .collect();
    FilteredKnotComplex::from_arrows(name, &gens, &arrows)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordText {
    name: String,
    generators: Vec<[i64; 2]>,
    differential: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    companion: Option<CompanionData>,
}

pub fn emit(record: &KnotRecord) -> String {
    let c = &record.complex;
    let text = RecordText {
        name: record.key.clone(),
        generators: c
            .generators()
            .iter()
            .map(|g| [g.maslov, g.alexander])
            .collect(),
        differential: c.differential().to_rows(),
        companion: record.companion.clone(),
    };
    format::to_lines(&text)
}

pub fn ingest(text: &str) -> Result<KnotRecord> {
    let raw: RecordText = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = raw.generators.len();
    let rows = if raw.differential.is_empty() && n > 0 {
        return Err(field_error("differential", format!("expected {n} rows, found 0")));
    } else {
        raw.differential
    };
    if rows.len() != n {
        return Err(field_error(
            "differential",
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    let matrix = if n == 0 {
        IntegerMatrix::zeros(0, 0)
    } else {
        IntegerMatrix::from_rows(&rows).map_err(|e| field_error("differential", e.to_string()))?
    };
    if matrix.cols() != n {
        return Err(field_error(
            "differential",
            format!("expected {n} columns, found {}", matrix.cols()),
        ));
    }
    let gens = raw
        .generators
        .iter()
        .map(|&[m, a]| Generator::new(m, a))
        .collect();
    let complex = FilteredKnotComplex::new(raw.name.clone(), gens, matrix)?;
    if let Some(cache) = &raw.companion {
        let fresh = complex.to_companion()?;
        if *cache != fresh {
            return Err(field_error(
                "companion",
                "cached companion data disagrees with the complex".into(),
            ));
        }
    }
    Ok(KnotRecord {
        key: raw.name,
        complex,
        companion: raw.companion,
    })
}

fn field_error(field: &str, message: String) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("field `{field}`: {message}"),
    }
}

pub fn read_file(path: &Path) -> Result<KnotRecord> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ingest(&text)
}

/// Directory holding the shipped records.
pub fn bundled_data_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

/// Resolves a `--knot` argument: an existing file path, then `<key>.json`
/// under [`DATA_DIR_ENV`] if set, then the bundled knots.
pub fn resolve(name: &str) -> Result<KnotRecord> {
    let path = Path::new(name);
    if path.is_file() {
        return read_file(path);
    }
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let candidate = Path::new(&dir).join(format!("{name}.json"));
        if candidate.is_file() {
            return read_file(&candidate);
        }
    }
    load(name)
}
