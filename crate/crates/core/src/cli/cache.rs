//! Versioned on-disk cache of WZW modular data.
//!
//! One JSON file per `(algebra, level)`. Floats are stored as decimal
//! strings with 17 significant digits, rationals as exact `p/q` strings.
//! Writes go to a temporary file that is renamed over the target, so
//! concurrent writers resolve to last-writer-wins on whole files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::affine::{self, AffineError, MODULAR_TOLERANCE};
use crate::exact::Q;
use crate::liealg::{AlgebraSpec, SimpleLieAlgebra};
use crate::modular::{Label, ModularData, C64, CMat};
use crate::theory::ModularSource;

/// Bumped whenever the entry layout or the meaning of a field changes.
pub const CACHE_SCHEMA: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    schema: u32,
    algebra: AlgebraSpec,
    level: i64,
    name: String,
    labels: Vec<Label>,
    vacuum: usize,
    /// Row-major `[re, im]` pairs.
    s: Vec<[String; 2]>,
    delta: Vec<String>,
    c: String,
}

fn float_out(x: f64) -> String {
    format!("{x:.16e}")
}

fn float_in(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|e| format!("bad float {s:?}: {e}"))
}

fn rational_in(s: &str) -> Result<Q, String> {
    s.parse::<Q>().map_err(|e| format!("bad rational {s:?}: {e}"))
}

pub fn encode(spec: AlgebraSpec, level: i64, md: &ModularData) -> String {
    let n = md.len();
    let entry = CacheEntry {
        schema: CACHE_SCHEMA,
        algebra: spec,
        level,
        name: md.name.clone(),
        labels: md.labels.clone(),
        vacuum: md.vacuum,
        s: (0..n * n)
            .map(|i| {
                let z = md.s[(i / n, i % n)];
                [float_out(z.re), float_out(z.im)]
            })
            .collect(),
        delta: md.delta.iter().map(|d| d.to_string()).collect(),
        c: md.c.to_string(),
    };
    serde_json::to_string_pretty(&entry).expect("cache entry serializes")
}

/// Parses an entry, rejecting anything that is not a complete, current
/// schema record for the requested theory.
pub fn decode(text: &str, spec: AlgebraSpec, level: i64) -> Result<ModularData, String> {
    let entry: CacheEntry = serde_json::from_str(text).map_err(|e| format!("corrupt entry: {e}"))?;
    if entry.schema != CACHE_SCHEMA {
        return Err(format!(
            "schema version {} does not match {CACHE_SCHEMA}",
            entry.schema
        ));
    }
    if entry.algebra != spec || entry.level != level {
        return Err(format!("entry is for {}_k{}", entry.algebra, entry.level));
    }
    let n = entry.labels.len();
    if n == 0 || entry.s.len() != n * n || entry.delta.len() != n || entry.vacuum >= n {
        return Err("inconsistent dimensions".into());
    }
    let mut s = CMat::zeros(n, n);
    for (i, [re, im]) in entry.s.iter().enumerate() {
        s[(i / n, i % n)] = C64::new(float_in(re)?, float_in(im)?);
    }
    Ok(ModularData {
        name: entry.name,
        labels: entry.labels,
        vacuum: entry.vacuum,
        s,
        delta: entry.delta.iter().map(|d| rational_in(d)).collect::<Result<_, _>>()?,
        c: rational_in(&entry.c)?,
    })
}

/// A [`ModularSource`] backed by a cache directory. `misses` counts
/// Kac–Peterson evaluations (each one a Weyl group traversal).
pub struct DiskCache {
    pub dir: PathBuf,
    pub weyl_cap: usize,
    pub hits: usize,
    pub misses: usize,
    pub warnings: Vec<String>,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>, weyl_cap: usize) -> DiskCache {
        DiskCache {
            dir: dir.into(),
            weyl_cap,
            hits: 0,
            misses: 0,
            warnings: Vec::new(),
        }
    }

    pub fn path_for(&self, spec: AlgebraSpec, level: i64) -> PathBuf {
        self.dir.join(format!("{}.json", affine::theory_name(spec, level)))
    }

    fn load(&self, path: &Path, spec: AlgebraSpec, level: i64) -> Option<Result<ModularData, String>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => return Some(Err(e.to_string())),
        };
        Some(decode(&text, spec, level).and_then(|md| {
            // A structurally valid file can still hold truncated numbers.
            md.check(MODULAR_TOLERANCE).map_err(|e| e.to_string())?;
            Ok(md)
        }))
    }

    fn store(&mut self, path: &Path, text: &str) {
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        let result = fs::create_dir_all(&self.dir)
            .and_then(|_| {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(text.as_bytes())?;
                f.sync_all()
            })
            .and_then(|_| fs::rename(&tmp, path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            self.warn(format!("could not write cache entry {}: {e}", path.display()));
        }
    }

    fn warn(&mut self, msg: String) {
        log::warn!("{msg}");
        self.warnings.push(msg);
    }
}

impl ModularSource for DiskCache {
    fn wzw(&mut self, alg: &SimpleLieAlgebra, level: i64) -> Result<ModularData, AffineError> {
        let path = self.path_for(alg.spec, level);
        match self.load(&path, alg.spec, level) {
            Some(Ok(md)) => {
                self.hits += 1;
                log::debug!("cache hit {}", path.display());
                return Ok(md);
            }
            Some(Err(e)) => self.warn(format!(
                "discarding cache entry {}: {e}; recomputing",
                path.display()
            )),
            None => {}
        }
        self.misses += 1;
        let md = affine::kac_peterson(alg, level, self.weyl_cap)?;
        let text = encode(alg.spec, level, &md);
        self.store(&path, &text);
        Ok(md)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;

    #[test]
    fn encode_decode_is_exact() {
        let alg = SimpleLieAlgebra::new("B2".parse().unwrap());
        let md = affine::kac_peterson(&alg, 2, DEFAULT_WEYL_CAP).unwrap();
        let back = decode(&encode(alg.spec, 2, &md), alg.spec, 2).unwrap();
        assert_eq!(back, md);
    }

    #[test]
    fn wrong_theory_rejected() {
        let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
        let md = affine::kac_peterson(&alg, 1, DEFAULT_WEYL_CAP).unwrap();
        let text = encode(alg.spec, 1, &md);
        assert!(decode(&text, alg.spec, 2).is_err());
        let bumped = text.replace("\"schema\": 1", "\"schema\": 0");
        assert!(decode(&bumped, alg.spec, 1).unwrap_err().contains("schema"));
    }
}
