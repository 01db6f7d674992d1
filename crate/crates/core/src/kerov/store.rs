//! Shared access to computed Kerov polynomials: an in-process map plus an
//! optional on-disk JSON cache, one file per `r`.
//!
//! Cache files are written to a temporary name and renamed into place, so a
//! reader sees either a complete file or none. Files with another format
//! version, unreadable contents, or values that fail a spot check against
//! the character oracle are ignored and rewritten.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::normalized_character;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::symfunc::TermJson;

use super::interpolate::{compute_kerov, KerovPolynomial, SamplingConfig};
use super::poly::{CumulantPolynomial, Family};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "KEROVLAB_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    r: usize,
    terms: Vec<TermJson>,
}

/// Where a polynomial handed out by the store came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Memory,
    Disk,
    Computed,
    /// A cache file existed but was stale or invalid.
    Recomputed,
}

pub struct KerovStore {
    config: SamplingConfig,
    cache_dir: Option<PathBuf>,
    memory: Mutex<HashMap<usize, Arc<KerovPolynomial>>>,
}

impl KerovStore {
    pub fn new(config: SamplingConfig, cache_dir: Option<PathBuf>) -> Self {
        KerovStore {
            config,
            cache_dir,
            memory: Mutex::new(HashMap::new()),
        }
    }

    /// In-memory only.
    pub fn in_memory() -> Self {
        KerovStore::new(SamplingConfig::default(), None)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn cache_path(&self, r: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("kerov_r{r}.json")))
    }

    pub fn get(&self, r: usize) -> Result<Arc<KerovPolynomial>> {
        self.get_with_origin(r).map(|(k, _)| k)
    }

    pub fn get_with_origin(&self, r: usize) -> Result<(Arc<KerovPolynomial>, Origin)> {
        if let Some(k) = self.memory.lock().expect("kerov store poisoned").get(&r) {
            return Ok((Arc::clone(k), Origin::Memory));
        }
        let (k, origin) = match self.cache_path(r) {
            Some(path) if path.exists() => match load(&path, r) {
                Some(k) => (k, Origin::Disk),
                None => {
                    let k = compute_kerov(r, &self.config)?;
                    save(&path, &k)?;
                    (k, Origin::Recomputed)
                }
            },
            Some(path) => {
                let k = compute_kerov(r, &self.config)?;
                save(&path, &k)?;
                (k, Origin::Computed)
            }
            None => (compute_kerov(r, &self.config)?, Origin::Computed),
        };
        let k = Arc::new(k);
        let mut memory = self.memory.lock().expect("kerov store poisoned");
        let stored = memory.entry(r).or_insert(k);
        Ok((Arc::clone(stored), origin))
    }

    /// Several `K_r` at once, computed in parallel and returned in the order
    /// requested.
    pub fn get_many(&self, rs: &[usize]) -> Result<Vec<Arc<KerovPolynomial>>> {
        rs.par_iter().map(|&r| self.get(r)).collect()
    }
}

fn load(path: &Path, r: usize) -> Option<KerovPolynomial> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.format_version != CACHE_FORMAT_VERSION || file.r != r {
        return None;
    }
    let poly = CumulantPolynomial::from_json_terms(Family::R, &file.terms).ok()?;
    let k = KerovPolynomial { r, poly };
    spot_check(&k).then_some(k)
}

/// Compares against the oracle on the one-row and one-column diagrams and
/// a hook, all of size `r + 1`.
fn spot_check(k: &KerovPolynomial) -> bool {
    let n = k.r + 1;
    let mut hook = vec![1; n - 2];
    hook.insert(0, 2);
    let probes = [
        Partition::single(n),
        Partition::new(vec![1; n]),
        Partition::new(hook),
    ];
    probes.iter().all(|lam| {
        matches!(
            (k.evaluate_at(lam), normalized_character(lam, k.r)),
            (Ok(a), Ok(b)) if a == b
        )
    })
}

fn save(path: &Path, k: &KerovPolynomial) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let file = CacheFile {
        format_version: CACHE_FORMAT_VERSION,
        r: k.r,
        terms: k.poly.to_json_terms(),
    };
    let body = serde_json::to_string(&file)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, body).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_roundtrip_and_stale_files() {
        let dir = tempfile::tempdir().unwrap();
        let store = KerovStore::new(SamplingConfig::default(), Some(dir.path().to_path_buf()));
        let (k, origin) = store.get_with_origin(4).unwrap();
        assert_eq!(origin, Origin::Computed);
        assert_eq!(store.get_with_origin(4).unwrap().1, Origin::Memory);

        let fresh = KerovStore::new(SamplingConfig::default(), Some(dir.path().to_path_buf()));
        let (again, origin) = fresh.get_with_origin(4).unwrap();
        assert_eq!(origin, Origin::Disk);
        assert_eq!(*again, *k);

        let path = fresh.cache_path(4).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(
            &path,
            text.replace("\"format_version\":1", "\"format_version\":0"),
        )
        .unwrap();
        let third = KerovStore::new(SamplingConfig::default(), Some(dir.path().to_path_buf()));
        let (k3, origin) = third.get_with_origin(4).unwrap();
        assert_eq!(origin, Origin::Recomputed);
        assert_eq!(*k3, *k);

        // wrong numbers with a valid header fail the spot check
        fs::write(
            &path,
            r#"{"format_version":1,"r":4,"terms":[{"partition":[5],"coef":"1"}]}"#,
        )
        .unwrap();
        let fourth = KerovStore::new(SamplingConfig::default(), Some(dir.path().to_path_buf()));
        assert_eq!(fourth.get_with_origin(4).unwrap().1, Origin::Recomputed);

        fs::write(&path, "{ truncated").unwrap();
        let fifth = KerovStore::new(SamplingConfig::default(), Some(dir.path().to_path_buf()));
        assert_eq!(fifth.get_with_origin(4).unwrap().1, Origin::Recomputed);
    }

    #[test]
    fn get_many_preserves_order() {
        let store = KerovStore::in_memory();
        let ks = store.get_many(&[5, 2, 3]).unwrap();
        assert_eq!(ks.iter().map(|k| k.r).collect::<Vec<_>>(), vec![5, 2, 3]);
    }
}
