//! On-disk cache of certified ideal echelon forms, plus an in-memory store.
//!
//! One JSON file per (kind, genus, index, cap):
//!
//! ```json
//! {"version":1, "kind":"quantum", "g":3, "r":2, "cap":12,
//!  "fingerprint":"…", "checksum":"…", "spans":{"4":[["1/1","0/1",…]]}}
//! ```
//!
//! Rows are dense over the column monomials. Anything that does not match
//! the requested ideal, or fails the certificate after loading, is ignored
//! and recomputed.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ideal::{build_triple, default_cap, GradedIdeal};
use crate::linalg::{Rref, SparseRow};
use crate::presentation::{PresentationKind, PresentationTriple};
use crate::scalar::Scalar;

pub const CACHE_VERSION: u64 = 1;
pub const CACHE_ENV: &str = "QCMS_CACHE_DIR";

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn genus_field(kind: &PresentationKind) -> u32 {
    match kind {
        PresentationKind::Quantum { genus } => *genus,
        _ => 0,
    }
}

#[derive(Debug, Clone)]
pub struct IdealCache {
    dir: PathBuf,
}

impl IdealCache {
    /// Opens (creating if needed) a cache directory; fails if it is not writable.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let probe = dir.join(".write-probe");
        fs::write(&probe, b"").map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let _ = fs::remove_file(&probe);
        Ok(IdealCache { dir })
    }

    /// The flag value if given, else `QCMS_CACHE_DIR`; `None` disables caching.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, triple: &PresentationTriple, cap: u32) -> PathBuf {
        self.dir.join(format!(
            "{}-g{}-r{}-cap{}.json",
            triple.kind.name(),
            genus_field(&triple.kind),
            triple.index,
            cap
        ))
    }

    fn fingerprint(triple: &PresentationTriple) -> String {
        let gens: Vec<Value> = triple.gens.iter().map(|g| g.to_json()).collect();
        hex_digest(Value::Array(gens).to_string().as_bytes())
    }

    pub fn encode(triple: &PresentationTriple, ideal: &GradedIdeal) -> Value {
        let ncols = ideal.columns().len();
        let mut spans = serde_json::Map::new();
        for (degree, rows) in ideal.spans() {
            let dense: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut cells = vec![Scalar::zero(); ncols];
                    for (c, x) in row {
                        cells[*c] = x.clone();
                    }
                    Value::Array(cells.iter().map(|x| Value::String(x.to_coef_string())).collect())
                })
                .collect();
            spans.insert(degree.to_string(), Value::Array(dense));
        }
        let spans = Value::Object(spans);
        json!({
            "version": CACHE_VERSION,
            "kind": triple.kind.name(),
            "g": genus_field(&triple.kind),
            "r": triple.index,
            "cap": ideal.cap(),
            "fingerprint": Self::fingerprint(triple),
            "checksum": hex_digest(spans.to_string().as_bytes()),
            "spans": spans,
        })
    }

    pub fn decode(triple: &PresentationTriple, cap: u32, value: &Value) -> Result<GradedIdeal> {
        let bad = |what: &str| Error::Cache(format!("{what} mismatch"));
        if value["version"].as_u64() != Some(CACHE_VERSION) {
            return Err(bad("version"));
        }
        if value["kind"].as_str() != Some(triple.kind.name()) {
            return Err(bad("kind"));
        }
        if value["g"].as_u64() != Some(genus_field(&triple.kind) as u64)
            || value["r"].as_u64() != Some(triple.index as u64)
            || value["cap"].as_u64() != Some(cap as u64)
        {
            return Err(bad("shape"));
        }
        if value["fingerprint"].as_str() != Some(Self::fingerprint(triple).as_str()) {
            return Err(bad("fingerprint"));
        }
        let spans = value["spans"].as_object().ok_or_else(|| bad("spans"))?;
        if value["checksum"].as_str() != Some(hex_digest(value["spans"].to_string().as_bytes()).as_str()) {
            return Err(bad("checksum"));
        }
        let sig = triple.gens[0].signature().clone();
        let columns = crate::ideal::monomials_up_to(&sig, cap);
        let ncols = columns.len();
        let mut by_degree: BTreeMap<u32, Vec<SparseRow>> = BTreeMap::new();
        for (degree, rows) in spans {
            let degree: u32 = degree.parse().map_err(|_| bad("degree key"))?;
            let rows = rows.as_array().ok_or_else(|| bad("rows"))?;
            for row in rows {
                let cells = row.as_array().ok_or_else(|| bad("row"))?;
                if cells.len() != ncols {
                    return Err(bad("row length"));
                }
                let mut sparse = Vec::new();
                for (c, cell) in cells.iter().enumerate() {
                    let x = Scalar::parse_coef_string(cell.as_str().ok_or_else(|| bad("cell"))?)?;
                    if !x.is_zero() {
                        sparse.push((c, x));
                    }
                }
                match sparse.first() {
                    Some((lead, _)) if sig.degree_of(&columns[*lead]) == degree => {}
                    _ => return Err(bad("degree grouping")),
                }
                by_degree.entry(degree).or_default().push(sparse);
            }
        }
        // Columns run from high degree to low, so pivots ascend as degrees descend.
        let rows: Vec<SparseRow> = by_degree.into_values().rev().flatten().collect();
        let rref = Rref::from_canonical(ncols, rows).ok_or_else(|| bad("echelon form"))?;
        GradedIdeal::from_rref(&triple.gens, cap, rref)
    }

    pub fn load(&self, triple: &PresentationTriple, cap: u32) -> Option<GradedIdeal> {
        let path = self.path_for(triple, cap);
        let text = fs::read_to_string(&path).ok()?;
        let value: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => {
                log::warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        match Self::decode(triple, cap, &value) {
            Ok(ideal) => {
                log::debug!("cache hit {}", path.display());
                Some(ideal)
            }
            Err(e) => {
                log::warn!("ignoring cache file {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, triple: &PresentationTriple, ideal: &GradedIdeal) -> Result<()> {
        let path = self.path_for(triple, ideal.cap());
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        let text = Self::encode(triple, ideal).to_string();
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

type StoreKey = (&'static str, u32, u32);

/// Built ideals of the presentation families, memoized in memory and
/// optionally on disk.
#[derive(Debug, Default)]
pub struct IdealStore {
    cache: Option<IdealCache>,
    memo: Mutex<HashMap<StoreKey, Arc<GradedIdeal>>>,
}

impl IdealStore {
    pub fn new(cache: Option<IdealCache>) -> Self {
        IdealStore { cache, memo: Mutex::new(HashMap::new()) }
    }

    pub fn cache(&self) -> Option<&IdealCache> {
        self.cache.as_ref()
    }

    /// The certified ideal of a triple at the default cap.
    pub fn ideal(&self, triple: &PresentationTriple) -> Result<Arc<GradedIdeal>> {
        if let PresentationKind::Generic { .. } = triple.kind {
            return build_triple(triple).map(Arc::new);
        }
        let key = (triple.kind.name(), genus_field(&triple.kind), triple.index);
        if let Some(hit) = self.memo.lock().expect("store lock").get(&key) {
            return Ok(hit.clone());
        }
        let cap = default_cap(triple.index);
        let ideal = match self.cache.as_ref().and_then(|c| c.load(triple, cap)) {
            Some(ideal) => ideal,
            None => {
                let ideal = build_triple(triple)?;
                if let Some(c) = &self.cache {
                    if let Err(e) = c.store(triple, &ideal) {
                        log::warn!("could not write cache: {e}");
                    }
                }
                ideal
            }
        };
        let ideal = Arc::new(ideal);
        self.memo.lock().expect("store lock").entry(key).or_insert_with(|| ideal.clone());
        Ok(ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{floer_triple, quantum_triple};

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IdealCache::open(dir.path()).unwrap();
        let t = quantum_triple(3, 3).unwrap();
        let built = build_triple(&t).unwrap();
        cache.store(&t, &built).unwrap();
        let loaded = cache.load(&t, built.cap()).unwrap();
        assert_eq!(loaded.rref(), built.rref());

        // Same shape, different ideal: rejected by the fingerprint.
        let other = floer_triple(3);
        assert!(cache.load(&other, built.cap()).is_none());

        let path = cache.path_for(&t, built.cap());
        let mut value: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        value["version"] = json!(2);
        fs::write(&path, value.to_string()).unwrap();
        assert!(cache.load(&t, built.cap()).is_none());

        value["version"] = json!(1);
        let first = value["spans"].as_object().unwrap().keys().next().unwrap().clone();
        value["spans"][&first][0][0] = json!("5/1");
        fs::write(&path, value.to_string()).unwrap();
        assert!(cache.load(&t, built.cap()).is_none());

        fs::write(&path, "{not json").unwrap();
        assert!(cache.load(&t, built.cap()).is_none());
    }

    #[test]
    fn store_recomputes_after_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let t = floer_triple(2);
        let first = IdealStore::new(Some(IdealCache::open(dir.path()).unwrap())).ideal(&t).unwrap();
        let path = IdealCache::open(dir.path()).unwrap().path_for(&t, first.cap());
        fs::write(&path, "garbage").unwrap();
        let second = IdealStore::new(Some(IdealCache::open(dir.path()).unwrap())).ideal(&t).unwrap();
        assert_eq!(first.rref(), second.rref());
        let third = IdealStore::new(Some(IdealCache::open(dir.path()).unwrap())).ideal(&t).unwrap();
        assert_eq!(first.rref(), third.rref());
    }
}
