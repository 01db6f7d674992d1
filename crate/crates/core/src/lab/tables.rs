//! Coefficient tables of the conjectural symmetric functions, loaded from
//! the shipped data files and checked against recorded SHA-256 digests.
//!
//! A table lists integers `N_ρ` with `f = Σ (N_ρ / scale) m_ρ`. The CSV
//! files hold one row `parts;integer` per monomial; `closed_forms.json`
//! holds the three degree-4 tables in the same row format.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kerov::Family;
use crate::partition::Partition;
use crate::rational::{factorial, Rational};
use crate::symfunc::{Basis, SymFunc};

const EMBEDDED_C3: &str = include_str!("../../tables/c3.csv");
const EMBEDDED_C4: &str = include_str!("../../tables/c4.csv");
const EMBEDDED_A3: &str = include_str!("../../tables/a3.csv");
const EMBEDDED_CLOSED: &str = include_str!("../../tables/closed_forms.json");
const EMBEDDED_CHECKSUMS: &str = include_str!("../../tables/checksums.json");

/// The six tables: three closed degree-4 forms and three degree-8/12
/// conjectural tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableKind {
    /// `f_2`, R family
    F2,
    /// `g_2`, Q family
    G2,
    /// `F_2`, C family
    UpperF2,
    /// `c^{(3)}`, coefficients of `f_3`
    C3,
    /// `c^{(4)}`, coefficients of `f_4`
    C4,
    /// `a^{(3)}`, coefficients of `g_3`
    A3,
}

impl TableKind {
    pub const ALL: [TableKind; 6] = [
        TableKind::F2,
        TableKind::G2,
        TableKind::UpperF2,
        TableKind::C3,
        TableKind::C4,
        TableKind::A3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::F2 => "f2",
            TableKind::G2 => "g2",
            TableKind::UpperF2 => "F2",
            TableKind::C3 => "c3",
            TableKind::C4 => "c4",
            TableKind::A3 => "a3",
        }
    }

    pub fn from_name(s: &str) -> Result<TableKind> {
        TableKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }

    /// Generator family of the expansion the table describes.
    pub fn family(self) -> Family {
        match self {
            TableKind::F2 | TableKind::C3 | TableKind::C4 => Family::R,
            TableKind::G2 | TableKind::A3 => Family::Q,
            TableKind::UpperF2 => Family::C,
        }
    }

    /// The `k` of `K_{r,r-2k+1}`.
    pub fn k(self) -> usize {
        match self {
            TableKind::F2 | TableKind::G2 | TableKind::UpperF2 => 2,
            TableKind::C3 | TableKind::A3 => 3,
            TableKind::C4 => 4,
        }
    }

    /// The global denominator printed with the table.
    pub fn expected_scale(self) -> BigInt {
        let f = |n: usize| factorial(n);
        match self {
            TableKind::F2 => BigInt::from(5760),
            TableKind::G2 => BigInt::from(8640),
            TableKind::UpperF2 => BigInt::from(2880),
            TableKind::C3 => BigInt::from(2) * f(6) * f(8),
            TableKind::A3 => BigInt::from(500) * f(5) * f(7),
            TableKind::C4 => BigInt::from(2) * f(8) * f(12),
        }
    }

    /// Whether the table is expected to have only positive entries.
    pub fn is_positive(self) -> bool {
        self != TableKind::UpperF2
    }

    fn file_name(self) -> &'static str {
        match self {
            TableKind::C3 => "c3.csv",
            TableKind::C4 => "c4.csv",
            TableKind::A3 => "a3.csv",
            _ => "closed_forms.json",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub kind: TableKind,
    pub scale: BigInt,
    pub entries: BTreeMap<Partition, BigInt>,
}

impl CoefficientTable {
    /// `Σ (N_ρ / scale) m_ρ`
    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_terms(
            Basis::M,
            self.entries
                .iter()
                .map(|(rho, n)| (rho.clone(), Rational::new(n.clone(), self.scale.clone()))),
        )
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .keys()
            .map(Partition::weight)
            .max()
            .unwrap_or(0)
    }

    pub fn negative_entries(&self) -> Vec<(Partition, BigInt)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .filter(|(_, n)| n.is_negative())
            .map(|(p, n)| (p.clone(), n.clone()))
            .collect();
        v.sort_by(|a, b| a.0.display_cmp(&b.0));
        v
    }
}

/// Where the table files are read from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TableSource {
    /// The copies compiled into the library.
    #[default]
    Embedded,
    Dir(PathBuf),
}

#[derive(Deserialize)]
struct ChecksumFile {
    sha256: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct ClosedFormEntry {
    scale: i64,
    rows: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The digests recorded when the tables were transcribed. These are the
/// reference for every source, including a user-supplied directory.
pub fn recorded_checksums() -> BTreeMap<String, String> {
    let file: ChecksumFile =
        serde_json::from_str(EMBEDDED_CHECKSUMS).expect("embedded checksums.json is valid");
    file.sha256
}

fn read_source(source: &TableSource, file: &str) -> Result<String> {
    match source {
        TableSource::Embedded => Ok(match file {
            "c3.csv" => EMBEDDED_C3,
            "c4.csv" => EMBEDDED_C4,
            "a3.csv" => EMBEDDED_A3,
            "closed_forms.json" => EMBEDDED_CLOSED,
            _ => unreachable!("no embedded table named {file}"),
        }
        .to_string()),
        TableSource::Dir(dir) => {
            let path = dir.join(file);
            fs::read_to_string(&path).map_err(|e| Error::io(path, e))
        }
    }
}

/// Checks one data file against its recorded digest.
pub fn verify_checksum(source: &TableSource, file: &str) -> Result<()> {
    let text = read_source(source, file)?;
    let expected = recorded_checksums()
        .get(file)
        .cloned()
        .ok_or_else(|| Error::Table(file.into(), "no recorded checksum".into()))?;
    let actual = sha256_hex(text.as_bytes());
    if actual != expected {
        return Err(Error::ChecksumMismatch {
            file: file.into(),
            expected,
            actual,
        });
    }
    Ok(())
}

fn parse_row(table: &str, line_no: usize, line: &str) -> Result<(Partition, BigInt)> {
    let bad = |msg: String| Error::Table(table.into(), format!("line {line_no}: {msg}"));
    let (parts, value) = line
        .split_once(';')
        .ok_or_else(|| bad(format!("expected `parts;integer`, got {line:?}")))?;
    let rho: Partition = parts.parse().map_err(|e: Error| bad(e.to_string()))?;
    let n: BigInt = value
        .trim()
        .parse()
        .map_err(|_| bad(format!("{value:?} is not an integer")))?;
    Ok((rho, n))
}

fn parse_rows<'a>(
    table: &str,
    lines: impl Iterator<Item = &'a str>,
) -> Result<BTreeMap<Partition, BigInt>> {
    let mut entries = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (rho, n) = parse_row(table, i + 1, line)?;
        if entries.insert(rho.clone(), n).is_some() {
            return Err(Error::Table(
                table.into(),
                format!("duplicate row for {rho}"),
            ));
        }
    }
    Ok(entries)
}

fn check_shape(table: &CoefficientTable) -> Result<()> {
    let name = table.kind.name();
    if table.scale != table.kind.expected_scale() {
        return Err(Error::Table(
            name.into(),
            format!(
                "scale {} differs from {}",
                table.scale,
                table.kind.expected_scale()
            ),
        ));
    }
    let bound = 4 * (table.kind.k() - 1);
    if let Some(rho) = table
        .entries
        .keys()
        .find(|rho| rho.weight() > bound || rho.is_empty())
    {
        return Err(Error::Table(
            name.into(),
            format!("row {rho} outside 1 <= |rho| <= {bound}"),
        ));
    }
    if table.kind.is_positive() {
        if let Some((rho, n)) = table.entries.iter().find(|(_, n)| !n.is_positive()) {
            return Err(Error::Table(
                name.into(),
                format!("entry {n} at {rho} is not positive"),
            ));
        }
    }
    Ok(())
}

/// Loads one table, verifying the file checksum first.
pub fn load_table(source: &TableSource, kind: TableKind) -> Result<CoefficientTable> {
    let file = kind.file_name();
    verify_checksum(source, file)?;
    let text = read_source(source, file)?;
    let table = match kind {
        TableKind::C3 | TableKind::C4 | TableKind::A3 => CoefficientTable {
            kind,
            scale: kind.expected_scale(),
            entries: parse_rows(kind.name(), text.lines())?,
        },
        _ => {
            let all: BTreeMap<String, ClosedFormEntry> = serde_json::from_str(&text)?;
            let entry = all.get(kind.name()).ok_or_else(|| {
                Error::Table(kind.name().into(), "missing from closed_forms.json".into())
            })?;
            CoefficientTable {
                kind,
                scale: BigInt::from(entry.scale),
                entries: parse_rows(kind.name(), entry.rows.iter().map(String::as_str))?,
            }
        }
    };
    check_shape(&table)?;
    Ok(table)
}

/// All tables from one source, in [`TableKind::ALL`] order.
pub fn load_all(source: &TableSource) -> Result<Vec<CoefficientTable>> {
    TableKind::ALL
        .iter()
        .map(|&k| load_table(source, k))
        .collect()
}

/// Copies the embedded data files into `dir`.
pub fn write_embedded(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, body) in [
        ("c3.csv", EMBEDDED_C3),
        ("c4.csv", EMBEDDED_C4),
        ("a3.csv", EMBEDDED_A3),
        ("closed_forms.json", EMBEDDED_CLOSED),
        ("checksums.json", EMBEDDED_CHECKSUMS),
    ] {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}
