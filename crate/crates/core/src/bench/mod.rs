//! Benchmark harness: dataset generation, instrumented single-run
//! measurement and the technique-by-size run matrix.
//!
//! Every run records three decision variables: wall-clock time of the sort
//! call in nanoseconds, net bytes allocated by the call expressed in bits,
//! and the peak live heap the call added expressed in whole KB (rounded up).
//! Timing wraps the sort call only; memory counters are reset immediately
//! before it. A run is only recorded after
//! [`verify_sorted_permutation`](crate::sort::verify_sorted_permutation)
//! accepts the output.

pub mod alloc;
mod csv;

pub use csv::{read_metrics_csv, write_metrics_csv, CsvError, METRICS_CSV_HEADER};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sort::{heap_sort, shell_sort, treap_sort, verify_sorted_permutation};
use crate::sort::{GapSequence, SortKey, Treap};

/// The three sorting techniques under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    Shell,
    Heap,
    Treap,
}

impl Technique {
    pub const ALL: [Technique; 3] = [Technique::Shell, Technique::Heap, Technique::Treap];

    pub fn name(self) -> &'static str {
        match self {
            Technique::Shell => "shell",
            Technique::Heap => "heap",
            Technique::Treap => "treap",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "shell" => Some(Technique::Shell),
            "heap" => Some(Technique::Heap),
            "treap" => Some(Technique::Treap),
            _ => None,
        }
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Display labels for the three decision variables, in column order.
pub const VARIABLE_LABELS: [&str; 3] = [
    "Time taken(nano second)",
    "Memory Consumed(bits)",
    "Total memory used(KB)",
];

/// One measured run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsRecord {
    pub technique: Technique,
    pub n: u64,
    pub seed: u64,
    pub time_ns: u64,
    pub mem_consumed_bits: u64,
    pub total_mem_kb: u64,
}

impl MetricsRecord {
    /// The record's decision variables in column order.
    pub fn variables(&self) -> [f64; 3] {
        [
            self.time_ns as f64,
            self.mem_consumed_bits as f64,
            self.total_mem_kb as f64,
        ]
    }
}

/// Ordered runs for a single technique: the observation matrix handed to the
/// statistics, one row per run over the three decision variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MetricsMatrix {
    rows: Vec<MetricsRecord>,
}

impl MetricsMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a run. Panics if `record` belongs to a different technique
    /// than the rows already present.
    pub fn push(&mut self, record: MetricsRecord) {
        if let Some(t) = self.technique() {
            assert_eq!(t, record.technique, "matrix holds runs of one technique");
        }
        self.rows.push(record);
    }

    pub fn rows(&self) -> &[MetricsRecord] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Technique shared by all rows; `None` while empty.
    pub fn technique(&self) -> Option<Technique> {
        self.rows.first().map(|r| r.technique)
    }
}

impl FromIterator<MetricsRecord> for MetricsMatrix {
    fn from_iter<I: IntoIterator<Item = MetricsRecord>>(iter: I) -> Self {
        let mut m = MetricsMatrix::new();
        for r in iter {
            m.push(r);
        }
        m
    }
}

/// Input shapes for generated datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    Uniform,
    Sorted,
    Reverse,
    FewUnique,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Sorted => "sorted",
            Distribution::Reverse => "reverse",
            Distribution::FewUnique => "few_unique",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uniform" => Some(Distribution::Uniform),
            "sorted" => Some(Distribution::Sorted),
            "reverse" => Some(Distribution::Reverse),
            "few_unique" => Some(Distribution::FewUnique),
            _ => None,
        }
    }
}

/// Ten log-spaced input sizes spanning 1e3..=1e6.
pub const DEFAULT_SIZES: [u64; 10] = [
    1_000, 2_154, 4_642, 10_000, 21_544, 46_416, 100_000, 215_443, 464_159, 1_000_000,
];

/// Harness settings for one run matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<u64>,
    pub reps: u32,
    pub base_seed: u64,
    pub distribution: Distribution,
    /// Discarded pre-runs per (technique, size) before the recorded reps.
    pub warmup: u32,
    /// Replace measured time with the deterministic model from
    /// [`synthetic_time_ns`], for bit-reproducible end-to-end runs.
    pub synthetic_time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            reps: 10,
            base_seed: 42,
            distribution: Distribution::Uniform,
            warmup: 2,
            synthetic_time: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.sizes.is_empty() {
            return Err("sizes must not be empty".into());
        }
        if let Some(&bad) = self.sizes.iter().find(|&&n| n == 0) {
            return Err(format!("sizes must be >= 1, found {bad}"));
        }
        if self.reps == 0 {
            return Err("reps must be >= 1".into());
        }
        Ok(())
    }
}

/// Measurement failures; any of these invalidates the whole run matrix.
#[derive(Debug, Error)]
pub enum MeasurementError {
    #[error("sort output failed verification (technique {technique}, n {n}, seed {seed})")]
    VerificationFailed {
        technique: Technique,
        n: u64,
        seed: u64,
    },
    #[error("tracking allocator is not installed as the global allocator")]
    AllocatorInactive,
}

/// Deterministic dataset for `(n, seed, distribution)`. Uniform draws span
/// the full 64-bit range; `FewUnique` draws from a pool of 16 values.
pub fn generate_dataset(n: u64, seed: u64, distribution: Distribution) -> Vec<SortKey> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n as usize;
    match distribution {
        Distribution::Uniform => (0..n).map(|_| rng.next_u64() as SortKey).collect(),
        Distribution::Sorted => {
            let mut v: Vec<SortKey> = (0..n).map(|_| rng.next_u64() as SortKey).collect();
            v.sort_unstable();
            v
        }
        Distribution::Reverse => {
            let mut v: Vec<SortKey> = (0..n).map(|_| rng.next_u64() as SortKey).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        }
        Distribution::FewUnique => {
            let pool: Vec<SortKey> = (0..16).map(|_| rng.next_u64() as SortKey).collect();
            (0..n)
                .map(|_| pool[(rng.next_u64() % 16) as usize])
                .collect()
        }
    }
}

/// SplitMix64 finalizer; decorrelates derived seeds.
pub(crate) fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-run seed: `base_seed` xor a mix of the (size, rep) cell coordinates.
pub fn run_seed(base_seed: u64, size_index: usize, rep_index: u32) -> u64 {
    base_seed ^ mix64(((size_index as u64) << 32) | u64::from(rep_index))
}

// Treap priorities must come from a stream decorrelated from the dataset
// stream, which is seeded with the same run seed.
const PRIORITY_SALT: u64 = 0x5052_494f_5249_5459; // "PRIORITY"

fn priority_seed(run_seed: u64) -> u64 {
    mix64(run_seed ^ PRIORITY_SALT)
}

// One measured sort at a time, process-wide: concurrent windows would
// corrupt both timer and allocator attribution.
static MEASURE_LOCK: Mutex<()> = Mutex::new(());

/// Runs one instrumented sort of `data` and returns its record.
///
/// `seed` is stored in the record and seeds the treap priority stream; the
/// dataset itself is the caller's. Fails fast if no [`alloc::TrackingAllocator`]
/// is installed or if the output does not verify.
pub fn measure_run(
    technique: Technique,
    data: &[SortKey],
    seed: u64,
) -> Result<MetricsRecord, MeasurementError> {
    let _guard = MEASURE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    if !alloc::allocator_active() {
        return Err(MeasurementError::AllocatorInactive);
    }
    match technique {
        Technique::Shell => {
            let gaps = GapSequence::halving(data.len());
            run_window(technique, data, seed, || shell_sort(data, &gaps))
        }
        Technique::Heap => run_window(technique, data, seed, || heap_sort(data)),
        Technique::Treap => {
            // The treap is torn down outside the window so node storage
            // counts toward net consumption; the drop is excluded from the
            // timed region either way.
            let mut parked = None;
            let record = run_window(technique, data, seed, || {
                let treap = Treap::from_keys_seeded(data, priority_seed(seed));
                let out = treap.in_order();
                parked = Some(treap);
                out
            });
            drop(parked);
            record
        }
    }
}

fn run_window(
    technique: Technique,
    data: &[SortKey],
    seed: u64,
    sort_call: impl FnOnce() -> Vec<SortKey>,
) -> Result<MetricsRecord, MeasurementError> {
    let window = alloc::open_window();
    let t0 = Instant::now();
    let output = sort_call();
    let elapsed = t0.elapsed();
    let stats = alloc::close_window(window);
    if !verify_sorted_permutation(data, &output) {
        return Err(MeasurementError::VerificationFailed {
            technique,
            n: data.len() as u64,
            seed,
        });
    }
    Ok(MetricsRecord {
        technique,
        n: data.len() as u64,
        seed,
        time_ns: elapsed.as_nanos() as u64,
        mem_consumed_bits: stats.net_bytes * 8,
        total_mem_kb: stats.peak_bytes.div_ceil(1024),
    })
}

/// Runs the full technique-by-size matrix. All three techniques receive
/// bitwise-identical copies of each cell's dataset; per-run seeds derive
/// deterministically from `base_seed` and the cell coordinates.
pub fn run_matrix(cfg: &BenchConfig) -> Result<BTreeMap<Technique, MetricsMatrix>, MeasurementError> {
    let mut out: BTreeMap<Technique, MetricsMatrix> = Technique::ALL
        .iter()
        .map(|&t| (t, MetricsMatrix::new()))
        .collect();
    for (size_index, &n) in cfg.sizes.iter().enumerate() {
        if cfg.warmup > 0 {
            let seed = run_seed(cfg.base_seed, size_index, 0);
            let data = generate_dataset(n, seed, cfg.distribution);
            for _ in 0..cfg.warmup {
                for &technique in &Technique::ALL {
                    measure_run(technique, &data, seed)?;
                }
            }
        }
        for rep_index in 0..cfg.reps {
            let seed = run_seed(cfg.base_seed, size_index, rep_index);
            let data = generate_dataset(n, seed, cfg.distribution);
            for &technique in &Technique::ALL {
                let mut record = measure_run(technique, &data, seed)?;
                if cfg.synthetic_time {
                    record.time_ns = synthetic_time_ns(technique, n, seed);
                }
                out.get_mut(&technique).expect("all techniques present").push(record);
            }
        }
    }
    Ok(out)
}

/// Deterministic stand-in for wall-clock time: a per-technique growth curve
/// with seeded multiplicative jitter of up to +/-4%.
pub fn synthetic_time_ns(technique: Technique, n: u64, seed: u64) -> u64 {
    let nf = n as f64;
    let log_n = nf.max(2.0).log2();
    let base = match technique {
        Technique::Shell => 8.0 * nf.powf(1.3) + 40.0 * nf,
        Technique::Heap => 14.0 * nf * log_n + 25.0 * nf,
        Technique::Treap => 120.0 * nf * log_n + 60.0 * nf,
    } + 200.0;
    let salt = match technique {
        Technique::Shell => 0x5348_454c_4c,
        Technique::Heap => 0x4845_4150,
        Technique::Treap => 0x5452_4541_50,
    };
    let unit = (mix64(seed ^ salt) >> 11) as f64 / (1u64 << 53) as f64; // [0, 1)
    let jitter = 1.0 + 0.04 * (2.0 * unit - 1.0);
    (base * jitter).round() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_empty() {
        assert!(generate_dataset(0, 1, Distribution::Uniform).is_empty());
    }

    #[test]
    fn dataset_sorted_contract() {
        let v = generate_dataset(5, 8, Distribution::Sorted);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        let v = generate_dataset(5, 8, Distribution::Reverse);
        assert!(v.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn dataset_determinism() {
        let a = generate_dataset(1000, 42, Distribution::Uniform);
        let b = generate_dataset(1000, 42, Distribution::Uniform);
        assert_eq!(a, b);
    }

    #[test]
    fn dataset_few_unique_pool() {
        let v = generate_dataset(4096, 3, Distribution::FewUnique);
        let mut distinct = v.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert!(distinct.len() <= 16);
        assert!(distinct.len() > 1);
    }

    #[test]
    fn run_seeds_differ_across_cells() {
        let s = 42;
        let mut seen = std::collections::HashSet::new();
        for size_index in 0..10 {
            for rep in 0..10 {
                assert!(seen.insert(run_seed(s, size_index, rep)));
            }
        }
    }

    #[test]
    fn synthetic_time_is_deterministic_and_grows() {
        for &t in &Technique::ALL {
            assert_eq!(synthetic_time_ns(t, 5_000, 9), synthetic_time_ns(t, 5_000, 9));
            assert!(synthetic_time_ns(t, 100_000, 9) > synthetic_time_ns(t, 1_000, 9));
        }
    }

    #[test]
    fn matrix_rejects_mixed_techniques() {
        let rec = |technique| MetricsRecord {
            technique,
            n: 1,
            seed: 0,
            time_ns: 1,
            mem_consumed_bits: 8,
            total_mem_kb: 1,
        };
        let mut m = MetricsMatrix::new();
        m.push(rec(Technique::Shell));
        let res = std::panic::catch_unwind(move || m.push(rec(Technique::Heap)));
        assert!(res.is_err());
    }

    // The unit-test binary does not install the tracking allocator, which is
    // exactly the condition measure_run must refuse to run under.
    #[test]
    fn measure_without_allocator_is_refused() {
        let data = generate_dataset(16, 1, Distribution::Uniform);
        match measure_run(Technique::Heap, &data, 1) {
            Err(MeasurementError::AllocatorInactive) => {}
            other => panic!("expected AllocatorInactive, got {other:?}"),
        }
    }
}
