//! Brute-force ground truth: exhaustive counts of class members under
//! arbitrary constraint sets and statistics, with a content-addressed disk
//! cache.
//!
//! Scans stream the lexicographic enumeration in contiguous rank chunks.
//! With the `parallel` feature the chunks run on the rayon pool; integer
//! sums and histogram merges commute, so the reduction is deterministic
//! either way. The class test runs first (alternating-shaped permutations
//! are a vanishing fraction of S_n), then each constraint with early exit.
//!
//! Cache entries are one JSON document per query under a filename derived
//! from the hash of the canonical query string. Writes go through a
//! temp-file rename; corrupt or mismatched entries are recomputed, never
//! trusted.

use crate::pattern::{satisfies_slice, ConstraintSpec};
use crate::perm::{factorial, in_class, ClassLabel, PermError};
use crate::stats::Statistic;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Cache schema version; bump when the canonical query string changes.
pub const ENGINE_VERSION: &str = concat!("updown-", env!("CARGO_PKG_VERSION"));

/// Default exhaustive-scan cap for CI-style runs.
pub const DEFAULT_N_CAP: usize = 10;
/// Cap for manual runs; 12! is the practical desk limit.
pub const MANUAL_N_CAP: usize = 12;

/// A single oracle question: count (or histogram) the members of a class
/// satisfying every constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountQuery {
    pub n: usize,
    pub class: ClassLabel,
    pub constraints: Vec<ConstraintSpec>,
    pub statistic: Option<Statistic>,
}

impl CountQuery {
    pub fn new(n: usize, class: ClassLabel, constraints: Vec<ConstraintSpec>) -> Self {
        Self {
            n,
            class,
            constraints,
            statistic: None,
        }
    }

    pub fn with_statistic(mut self, stat: Statistic) -> Self {
        self.statistic = Some(stat);
        self
    }

    /// Canonical serialization; the cache key is a hash of this string.
    pub fn canonical(&self) -> String {
        let mut s = format!("v1|n={}|class={}", self.n, self.class.token());
        for c in &self.constraints {
            s.push('|');
            s.push_str(&c.canonical());
        }
        if let Some(stat) = &self.statistic {
            s.push_str("|stat=");
            s.push_str(&stat.canonical());
        }
        s
    }
}

impl fmt::Display for CountQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Histogram of a statistic over the constrained class.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DistributionTable {
    pub counts: BTreeMap<u64, u64>,
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Oracle configuration: scan cap and optional cache directory.
#[derive(Clone, Debug, Default)]
pub struct Oracle {
    pub n_cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            n_cap: DEFAULT_N_CAP,
            cache_dir: None,
        }
    }

    pub fn with_cap(mut self, n_cap: usize) -> Self {
        self.n_cap = n_cap;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// |{π in class_n : all constraints satisfied}| by exhaustive scan.
    pub fn count_exact(&self, q: &CountQuery) -> Result<u64, PermError> {
        assert!(
            q.statistic.is_none(),
            "count_exact takes a statistic-free query; use distribution"
        );
        if let Some(CachedResult::Count(v)) = self.cache_lookup(q) {
            return Ok(v);
        }
        let count = scan_count(q.n, self.n_cap, q.class, &q.constraints)?;
        self.cache_store(q, &CachedResult::Count(count));
        Ok(count)
    }

    /// Histogram of the query's statistic over the constrained class.
    pub fn distribution(&self, q: &CountQuery) -> Result<DistributionTable, PermError> {
        let stat = q
            .statistic
            .clone()
            .expect("distribution requires a statistic");
        if let Some(CachedResult::Distribution(map)) = self.cache_lookup(q) {
            return Ok(DistributionTable { counts: map });
        }
        let counts = scan_distribution(q.n, self.n_cap, q.class, &q.constraints, &stat)?;
        self.cache_store(q, &CachedResult::Distribution(counts.clone()));
        Ok(DistributionTable { counts })
    }

    fn cache_path(&self, q: &CountQuery) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let mut hasher = Sha256::new();
        hasher.update(q.canonical().as_bytes());
        let digest = hasher.finalize();
        let mut name = String::with_capacity(64);
        for byte in digest.iter().take(16) {
            name.push_str(&format!("{byte:02x}"));
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    fn cache_lookup(&self, q: &CountQuery) -> Option<CachedResult> {
        let path = self.cache_path(q)?;
        let text = std::fs::read_to_string(path).ok()?;
        let doc: CacheDoc = serde_json::from_str(&text).ok()?;
        // a hash collision or schema drift must never be trusted
        if doc.query != q.canonical() || doc.engine_version != ENGINE_VERSION {
            return None;
        }
        doc.result.into_result()
    }

    fn cache_store(&self, q: &CountQuery, result: &CachedResult) {
        let Some(path) = self.cache_path(q) else {
            return;
        };
        let doc = CacheDoc {
            query: q.canonical(),
            result: CacheResultRepr::from_result(result),
            engine_version: ENGINE_VERSION.to_string(),
            timestamp: unix_time(),
        };
        // best effort: a failed write only costs a recompute later
        let _ = write_atomic(&path, &doc);
    }
}

enum CachedResult {
    Count(u64),
    Distribution(BTreeMap<u64, u64>),
}

/// On-disk document: {query, result, engine_version, timestamp}.
#[derive(Serialize, Deserialize)]
struct CacheDoc {
    query: String,
    result: CacheResultRepr,
    engine_version: String,
    timestamp: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheResultRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distribution: Option<BTreeMap<String, u64>>,
}

impl CacheResultRepr {
    fn from_result(r: &CachedResult) -> Self {
        match r {
            CachedResult::Count(v) => Self {
                count: Some(*v),
                distribution: None,
            },
            CachedResult::Distribution(map) => Self {
                count: None,
                distribution: Some(
                    map.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                ),
            },
        }
    }

    fn into_result(self) -> Option<CachedResult> {
        if let Some(v) = self.count {
            return Some(CachedResult::Count(v));
        }
        let map = self.distribution?;
        let mut out = BTreeMap::new();
        for (k, v) in map {
            out.insert(k.parse().ok()?, v);
        }
        Some(CachedResult::Distribution(out))
    }
}

fn unix_time() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn write_atomic(path: &Path, doc: &CacheDoc) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(doc).expect("serializable").as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn keep(e: &[u8], class: ClassLabel, constraints: &[ConstraintSpec]) -> bool {
    in_class(e, class) && constraints.iter().all(|c| satisfies_slice(e, c))
}

/// Sequential scan over one rank chunk.
fn count_chunk(
    n: usize,
    lo: u64,
    hi: u64,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
) -> Result<u64, PermError> {
    let mut count = 0u64;
    crate::perm::scan_range(n, lo, hi, cap, |e| {
        if keep(e, class, constraints) {
            count += 1;
        }
    })?;
    Ok(count)
}

fn distribution_chunk(
    n: usize,
    lo: u64,
    hi: u64,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
    stat: &Statistic,
) -> Result<BTreeMap<u64, u64>, PermError> {
    let mut counts = BTreeMap::new();
    crate::perm::scan_range(n, lo, hi, cap, |e| {
        if keep(e, class, constraints) {
            *counts.entry(stat.eval_slice(e)).or_insert(0) += 1;
        }
    })?;
    Ok(counts)
}

/// Rank-chunk boundaries for a parallel scan.
#[cfg(feature = "parallel")]
fn chunk_bounds(total: u64, pieces: u64) -> Vec<(u64, u64)> {
    let pieces = pieces.max(1).min(total.max(1));
    (0..pieces)
        .map(|i| (i * total / pieces, (i + 1) * total / pieces))
        .collect()
}

#[cfg(feature = "parallel")]
fn scan_count(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
) -> Result<u64, PermError> {
    use rayon::prelude::*;
    let total = factorial(n);
    let pieces = (rayon::current_num_threads() as u64) * 8;
    let partials = chunk_bounds(total, pieces)
        .into_par_iter()
        .map(|(lo, hi)| count_chunk(n, lo, hi, cap, class, constraints))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(partials.into_iter().sum())
}

#[cfg(not(feature = "parallel"))]
fn scan_count(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
) -> Result<u64, PermError> {
    count_chunk(n, 0, factorial(n), cap, class, constraints)
}

#[cfg(feature = "parallel")]
fn scan_distribution(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
    stat: &Statistic,
) -> Result<BTreeMap<u64, u64>, PermError> {
    use rayon::prelude::*;
    let total = factorial(n);
    let pieces = (rayon::current_num_threads() as u64) * 8;
    let partials = chunk_bounds(total, pieces)
        .into_par_iter()
        .map(|(lo, hi)| distribution_chunk(n, lo, hi, cap, class, constraints, stat))
        .collect::<Result<Vec<_>, _>>()?;
    let mut merged = BTreeMap::new();
    for part in partials {
        for (k, v) in part {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    Ok(merged)
}

#[cfg(not(feature = "parallel"))]
fn scan_distribution(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
    stat: &Statistic,
) -> Result<BTreeMap<u64, u64>, PermError> {
    distribution_chunk(n, 0, factorial(n), cap, class, constraints, stat)
}

/// Always-sequential entry point, kept callable for benchmarks comparing
/// the two scan paths.
pub fn count_sequential(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
) -> Result<u64, PermError> {
    count_chunk(n, 0, factorial(n), cap, class, constraints)
}

/// The configured scan path (parallel when the feature is enabled).
pub fn count_configured(
    n: usize,
    cap: usize,
    class: ClassLabel,
    constraints: &[ConstraintSpec],
) -> Result<u64, PermError> {
    scan_count(n, cap, class, constraints)
}
