//! Versioned JSON disk cache for the expensive `Γ` constructions: character
//! matrices (keyed by level) and `𝔭`-basis interpolations. A format version
//! bump invalidates everything.

use crate::json::partition_key;
use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use twheis::gamma::{character_matrix_from_entries, GammaCtx, GammaElement};
use twheis::partitions::{OddPartition, StrictPartition};
use twheis::rational::{rat_from_str, rat_to_string};

pub const CACHE_VERSION: u32 = 1;
pub const ENV_CACHE_DIR: &str = "TWC_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct XMatrixFile {
    version: u32,
    /// level -> { "mu|lambda" -> "a/b" }
    levels: BTreeMap<usize, BTreeMap<String, String>>,
}

#[derive(Serialize, Deserialize)]
struct PfrakFile {
    version: u32,
    /// "mu" -> { "gamma" -> "a/b" } (p-basis coordinates)
    entries: BTreeMap<String, BTreeMap<String, String>>,
}

pub struct DiskCache {
    dir: PathBuf,
}

fn parse_parts(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        DiskCache { dir }
    }

    /// Resolves the cache directory from a CLI flag or `TWC_CACHE_DIR`.
    pub fn resolve(flag: Option<PathBuf>) -> Option<DiskCache> {
        flag.or_else(|| std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from))
            .map(DiskCache::new)
    }

    fn x_path(&self) -> PathBuf {
        self.dir.join(format!("x_matrices_v{CACHE_VERSION}.json"))
    }

    fn pfrak_path(&self) -> PathBuf {
        self.dir.join(format!("pfrak_v{CACHE_VERSION}.json"))
    }

    /// Seeds the context from disk; silently skips missing or stale files.
    pub fn load_into(&self, ctx: &GammaCtx) -> Result<()> {
        if let Some(file) = read_json::<XMatrixFile>(&self.x_path())? {
            if file.version == CACHE_VERSION {
                for (n, entries) in file.levels {
                    let mut triples = Vec::new();
                    for (key, value) in entries {
                        let (mu, lambda) = key
                            .split_once('|')
                            .context("x-matrix key must be mu|lambda")?;
                        let mu = OddPartition::new(parse_parts(mu).context("bad mu")?)?;
                        let lambda =
                            StrictPartition::new(parse_parts(lambda).context("bad lambda")?)?;
                        let v = rat_from_str(&value).context("bad rational")?;
                        triples.push((mu, lambda, v));
                    }
                    ctx.import_x_matrix(character_matrix_from_entries(n, triples)?);
                }
            }
        }
        if let Some(file) = read_json::<PfrakFile>(&self.pfrak_path())? {
            if file.version == CACHE_VERSION {
                for (mu_key, coords) in file.entries {
                    let mu = OddPartition::new(parse_parts(&mu_key).context("bad mu")?)?;
                    let mut coeffs = std::collections::BTreeMap::new();
                    for (gamma_key, value) in coords {
                        let gamma =
                            OddPartition::new(parse_parts(&gamma_key).context("bad gamma")?)?;
                        coeffs.insert(gamma, rat_from_str(&value).context("bad rational")?);
                    }
                    ctx.import_pfrak(mu, GammaElement::from_coeffs(coeffs));
                }
            }
        }
        Ok(())
    }

    /// Persists the context's caches.
    pub fn save_from(&self, ctx: &GammaCtx) -> Result<()> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache dir {}", self.dir.display()))?;
        let mut levels = BTreeMap::new();
        for xm in ctx.export_x_matrices() {
            let mut entries = BTreeMap::new();
            for (mu, row) in xm.rows() {
                for (lambda, value) in xm.strict_index().iter().zip(row) {
                    entries.insert(
                        format!(
                            "{}|{}",
                            partition_key(mu.parts()),
                            partition_key(lambda.parts())
                        ),
                        rat_to_string(value),
                    );
                }
            }
            levels.insert(xm.level(), entries);
        }
        write_json(
            &self.x_path(),
            &XMatrixFile {
                version: CACHE_VERSION,
                levels,
            },
        )?;

        let mut entries = BTreeMap::new();
        for (mu, f) in ctx.export_pfrak() {
            let coords: BTreeMap<String, String> = f
                .coeffs()
                .iter()
                .map(|(gamma, c)| (partition_key(gamma.parts()), rat_to_string(c)))
                .collect();
            entries.insert(partition_key(mu.parts()), coords);
        }
        write_json(
            &self.pfrak_path(),
            &PfrakFile {
                version: CACHE_VERSION,
                entries,
            },
        )
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Option<T>> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(Some(
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
        )),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e).with_context(|| format!("reading {}", path.display())),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use twheis::partitions::enumerate_odd;
    use twheis::rational::rat;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path().to_path_buf());
        let ctx = GammaCtx::new();
        ctx.x_matrix(3).unwrap();
        for mu in enumerate_odd(3) {
            ctx.pfrak(&mu).unwrap();
        }
        cache.save_from(&ctx).unwrap();

        let fresh = GammaCtx::new();
        cache.load_into(&fresh).unwrap();
        // The seeded context agrees with a from-scratch computation.
        let scratch = GammaCtx::new();
        for mu in enumerate_odd(3) {
            assert_eq!(fresh.pfrak(&mu).unwrap(), scratch.pfrak(&mu).unwrap());
        }
        assert_eq!(
            fresh
                .x_matrix(3)
                .unwrap()
                .entry(
                    &OddPartition::new(vec![3]).unwrap(),
                    &StrictPartition::new(vec![2, 1]).unwrap()
                )
                .unwrap(),
            rat(-2)
        );
    }
}
