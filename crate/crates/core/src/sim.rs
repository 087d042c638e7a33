//! Seeded Monte Carlo engine.
//!
//! Replication `r` of a run with master seed `s` always draws from the ChaCha8
//! stream `r` keyed by `s`, so results do not depend on how replications are
//! scheduled. Replications are grouped into fixed-size chunks; chunk partial
//! sums are combined in chunk order, which makes the parallel and sequential
//! paths bit-identical.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type TrialRng = ChaCha8Rng;

/// Replications per aggregation chunk. Part of the determinism contract.
pub const CHUNK: u64 = 4096;

/// Default multiplier on the standard error for confidence half-widths.
pub const DEFAULT_Z: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, sequential otherwise.
    #[default]
    Parallel,
}

/// The RNG for replication `index` under `master_seed`.
pub fn replication_rng(master_seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Derives an independent master seed for a labelled sub-experiment.
pub fn derive_seed(master_seed: u64, label: u64) -> u64 {
    use rand::RngCore;
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed ^ 0x5EED_5EED_5EED_5EED);
    rng.set_stream(label.wrapping_add(1 << 63));
    rng.next_u64()
}

/// Event hit counter handed to each replication.
pub struct Events<'a> {
    counts: &'a mut [u64],
}

impl Events<'_> {
    #[inline]
    pub fn hit(&mut self, event: usize) {
        self.counts[event] += 1;
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventStat {
    pub count: u64,
    pub frequency: f64,
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub replications: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
    pub z: f64,
    /// Events in the order they were declared.
    pub events: Vec<(String, EventStat)>,
    pub wall_time_secs: f64,
}

impl SimulationReport {
    pub fn event(&self, label: &str) -> Option<&EventStat> {
        self.events.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    /// Same report, ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.replications == other.replications
            && self.seed == other.seed
            && self.mean.to_bits() == other.mean.to_bits()
            && self.std_error.to_bits() == other.std_error.to_bits()
            && self.events == other.events
    }

    /// Columnar text: a summary block followed by one row per event.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        out.push_str(&format!("replications,{}\n", self.replications));
        out.push_str(&format!("seed,{}\n", self.seed));
        out.push_str(&format!("mean,{}\n", self.mean));
        out.push_str(&format!("std_error,{}\n", self.std_error));
        out.push_str(&format!("wall_time_secs,{}\n", self.wall_time_secs));
        out.push_str("\nevent,count,frequency,half_width\n");
        for (label, s) in &self.events {
            out.push_str(&format!("{label},{},{},{}\n", s.count, s.frequency, s.half_width));
        }
        out
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone)]
struct ChunkTotals {
    sum: KahanSum,
    sum_sq: KahanSum,
    counts: Vec<u64>,
}

fn run_chunk<F>(chunk: u64, replications: u64, seed: u64, num_events: usize, trial: &F) -> ChunkTotals
where
    F: Fn(&mut TrialRng, &mut Events<'_>) -> f64,
{
    let start = chunk * CHUNK;
    let end = (start + CHUNK).min(replications);
    let mut totals = ChunkTotals {
        sum: KahanSum::default(),
        sum_sq: KahanSum::default(),
        counts: vec![0; num_events],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in start..end {
        rng.set_stream(r);
        rng.set_word_pos(0);
        let mut events = Events {
            counts: &mut totals.counts,
        };
        let v = trial(&mut rng, &mut events);
        totals.sum.add(v);
        totals.sum_sq.add(v * v);
    }
    totals
}

/// Runs `replications` independent trials with the default options.
///
/// `trial` returns the performance of one replication and records which of the
/// `labels` events occurred.
pub fn run_trials<F>(labels: &[String], replications: u64, master_seed: u64, trial: F) -> SimulationReport
where
    F: Fn(&mut TrialRng, &mut Events<'_>) -> f64 + Sync,
{
    run_trials_with(labels, replications, master_seed, Execution::Parallel, DEFAULT_Z, trial)
}

pub fn run_trials_with<F>(
    labels: &[String],
    replications: u64,
    master_seed: u64,
    execution: Execution,
    z: f64,
    trial: F,
) -> SimulationReport
where
    F: Fn(&mut TrialRng, &mut Events<'_>) -> f64 + Sync,
{
    assert!(replications >= 1, "at least one replication is required");
    let started = Instant::now();
    let chunks = replications.div_ceil(CHUNK);
    let k = labels.len();

    let partials: Vec<ChunkTotals> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..chunks)
                .into_par_iter()
                .map(|c| run_chunk(c, replications, master_seed, k, &trial))
                .collect()
        }
        _ => (0..chunks)
            .map(|c| run_chunk(c, replications, master_seed, k, &trial))
            .collect(),
    };

    let mut sum = KahanSum::default();
    let mut sum_sq = KahanSum::default();
    let mut counts = vec![0u64; k];
    for p in &partials {
        sum.add(p.sum.value());
        sum_sq.add(p.sum_sq.value());
        for (c, pc) in counts.iter_mut().zip(&p.counts) {
            *c += pc;
        }
    }

    let r = replications as f64;
    let mean = sum.value() / r;
    let var = if replications > 1 {
        ((sum_sq.value() - r * mean * mean) / (r - 1.0)).max(0.0)
    } else {
        0.0
    };
    let events = labels
        .iter()
        .zip(counts)
        .map(|(label, count)| {
            let f = count as f64 / r;
            (
                label.clone(),
                EventStat {
                    count,
                    frequency: f,
                    half_width: z * (f * (1.0 - f) / r).sqrt(),
                },
            )
        })
        .collect();

    SimulationReport {
        replications,
        seed: master_seed,
        mean,
        std_error: (var / r).sqrt(),
        z,
        events,
        wall_time_secs: started.elapsed().as_secs_f64(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub event: String,
    pub target: f64,
    pub required: f64,
    pub frequency: f64,
    pub half_width: f64,
    pub pass: bool,
}

/// Checks `frequency + half_width ≥ factor · target` for every target event.
pub fn verify_marginals(report: &SimulationReport, targets: &[(String, f64)], factor: f64) -> Result<Vec<Verdict>> {
    let lookup: BTreeMap<&str, &EventStat> = report.events.iter().map(|(l, s)| (l.as_str(), s)).collect();
    let missing: Vec<String> = targets
        .iter()
        .filter(|(l, _)| !lookup.contains_key(l.as_str()))
        .map(|(l, _)| l.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingEvents(missing));
    }
    Ok(targets
        .iter()
        .map(|(label, target)| {
            let s = lookup[label.as_str()];
            let required = factor * target;
            Verdict {
                event: label.clone(),
                target: *target,
                required,
                frequency: s.frequency,
                half_width: s.half_width,
                pass: s.frequency + s.half_width >= required,
            }
        })
        .collect())
}
