//! Exhaustive and sampled censuses of `S_n`.
//!
//! The work space (encodings in exhaustive mode, sample indices in sampled
//! mode) is cut into fixed chunks. Workers claim chunks, tally them
//! independently and the driver merges the tallies, so the report never
//! depends on the thread count or on scheduling. In sampled mode each chunk
//! draws from its own ChaCha stream, selected by chunk index.

mod checkpoint;
mod classifier;
mod ratio;
mod report;
mod tally;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::GroupClass;
use crate::error::{Error, Result};
use crate::layout::SlotLayout;
use crate::structure::sample_with;
use crate::vocab::Vocabulary;

pub use checkpoint::Checkpoint;
pub use ratio::{ratio_table, unlabelled_ratio_table, Predicate, RatioRow};
pub use report::{KeyRow, ReportDocument, UnlabelledDocument};
pub use tally::{KeyTally, Tally};

use classifier::Classifier;

/// Largest slot count accepted in exhaustive mode (about 10⁹ structures).
pub const MAX_EXHAUSTIVE_SLOTS: usize = 30;

/// Largest universe in sampled mode.
pub const MAX_SAMPLED_N: usize = crate::automorphism::MAX_AUT_DEGREE;

/// Largest universe for which exhaustive runs also count isomorphism classes.
pub const MAX_UNLABELLED_N: usize = 5;

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 20;

/// Aggregation key of a structure: support sizes, group class, and the
/// orbit counts of the group restricted to its support. All zero and
/// `Trivial` for rigid structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CensusKey {
    pub spt: usize,
    pub spt_star: usize,
    pub class: GroupClass,
    pub q: usize,
    pub s: usize,
}

impl CensusKey {
    pub fn rigid() -> Self {
        CensusKey {
            spt: 0,
            spt_star: 0,
            class: GroupClass::Trivial,
            q: 0,
            s: 0,
        }
    }

    pub fn is_rigid(&self) -> bool {
        self.class == GroupClass::Trivial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Aggregated census counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub vocab: Vocabulary,
    pub n: usize,
    pub mode: Mode,
    pub labelled: BTreeMap<CensusKey, u64>,
    /// Isomorphism classes per key, exhaustive runs with small `n` only.
    pub unlabelled: Option<BTreeMap<CensusKey, u64>>,
    pub total: u64,
    /// Wall time of the run that produced the report; not serialized.
    pub elapsed: Duration,
}

impl CensusReport {
    pub fn count_where(&self, pred: impl Fn(&CensusKey) -> bool) -> u64 {
        self.labelled
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn unlabelled_where(&self, pred: impl Fn(&CensusKey) -> bool) -> Option<u64> {
        self.unlabelled
            .as_ref()
            .map(|u| u.iter().filter(|(k, _)| pred(k)).map(|(_, c)| c).sum())
    }

    pub fn rigid(&self) -> u64 {
        self.count_where(CensusKey::is_rigid)
    }

    pub fn unlabelled_total(&self) -> Option<u64> {
        self.unlabelled_where(|_| true)
    }
}

/// Configures and runs one census.
#[derive(Debug, Clone)]
pub struct Census {
    vocab: Vocabulary,
    n: usize,
    mode: Mode,
    threads: usize,
    checkpoint: Option<PathBuf>,
    chunk_size: u64,
    stop_after: Option<u64>,
    save_interval: Duration,
}

impl Census {
    pub fn new(vocab: &Vocabulary, n: usize, mode: Mode) -> Self {
        Census {
            vocab: vocab.clone(),
            n,
            mode,
            threads: 1,
            checkpoint: None,
            chunk_size: DEFAULT_CHUNK_SIZE,
            stop_after: None,
            save_interval: Duration::from_secs(10),
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Resume from `path` if it exists, and keep it updated while running.
    pub fn checkpoint(mut self, path: impl AsRef<Path>) -> Self {
        self.checkpoint = Some(path.as_ref().to_path_buf());
        self
    }

    pub fn chunk_size(mut self, size: u64) -> Self {
        self.chunk_size = size.max(1);
        self
    }

    /// Stop once this many chunks have been completed in this run, leaving
    /// the checkpoint behind; `run` then returns [`Error::Interrupted`].
    pub fn stop_after_chunks(mut self, chunks: u64) -> Self {
        self.stop_after = Some(chunks);
        self
    }

    pub fn save_interval(mut self, interval: Duration) -> Self {
        self.save_interval = interval;
        self
    }

    fn units(&self, layout: &SlotLayout) -> Result<u64> {
        match self.mode {
            Mode::Exhaustive => {
                if layout.width() > MAX_EXHAUSTIVE_SLOTS {
                    return Err(Error::ExhaustiveGuard {
                        slots: layout.width(),
                        limit: MAX_EXHAUSTIVE_SLOTS,
                    });
                }
                Ok(1u64 << layout.width())
            }
            Mode::Sampled { samples, .. } => {
                if self.n > MAX_SAMPLED_N {
                    return Err(Error::DegreeGuard {
                        what: "sampled censuses",
                        degree: self.n,
                        limit: MAX_SAMPLED_N,
                    });
                }
                Ok(samples)
            }
        }
    }

    fn blank_checkpoint(&self) -> Checkpoint {
        Checkpoint {
            vocab: self.vocab.clone(),
            n: self.n,
            mode: self.mode,
            chunk_size: self.chunk_size,
            tally: Tally::new(),
        }
    }

    fn resume_state(&self) -> Result<Checkpoint> {
        let Some(path) = &self.checkpoint else {
            return Ok(self.blank_checkpoint());
        };
        if !path.exists() {
            return Ok(self.blank_checkpoint());
        }
        let saved = Checkpoint::load(path)?;
        if saved.vocab != self.vocab || saved.n != self.n || saved.mode != self.mode {
            return Err(Error::Checkpoint(format!(
                "{} belongs to a different census ({} n={} {:?})",
                path.display(),
                saved.vocab,
                saved.n,
                saved.mode
            )));
        }
        if saved.chunk_size != self.chunk_size {
            return Err(Error::Checkpoint(format!(
                "chunk size {} does not match {}",
                saved.chunk_size, self.chunk_size
            )));
        }
        Ok(saved)
    }

    pub fn run(&self) -> Result<CensusReport> {
        let started = Instant::now();
        let layout = SlotLayout::new(&self.vocab, self.n)?;
        let units = self.units(&layout)?;
        let mut state = self.resume_state()?;

        let chunk = self.chunk_size;
        let chunk_count = units.div_ceil(chunk);
        let pending: Vec<u64> = (0..chunk_count)
            .filter(|&c| !state.tally.covers(c * chunk, ((c + 1) * chunk).min(units)))
            .collect();
        let budget = self
            .stop_after
            .map(|b| b.min(pending.len() as u64) as usize);
        let work = &pending[..budget.unwrap_or(pending.len())];

        let next = AtomicUsize::new(0);
        let stop = AtomicBool::new(false);
        let (tx, rx) = mpsc::channel::<Result<Tally>>();
        let workers = self.threads.min(work.len()).max(1);
        let mut last_save = Instant::now();
        let mut merged_err: Option<Error> = None;

        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let (next, stop, layout) = (&next, &stop, &layout);
                scope.spawn(move || {
                    let mut classifier = match Classifier::new(&self.vocab, self.n) {
                        Ok(c) => c,
                        Err(e) => {
                            let _ = tx.send(Err(e));
                            return;
                        }
                    };
                    while !stop.load(Ordering::Relaxed) {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&c) = work.get(i) else { break };
                        let start = c * chunk;
                        let end = (start + chunk).min(units);
                        let t = self.run_chunk(&mut classifier, layout, c, start, end);
                        if tx.send(Ok(t)).is_err() {
                            break;
                        }
                    }
                });
            }
            drop(tx);
            for msg in rx {
                let merged = msg.and_then(|t| state.tally.merge(&t));
                if let Err(e) = merged {
                    stop.store(true, Ordering::Relaxed);
                    merged_err.get_or_insert(e);
                    continue;
                }
                if let Some(path) = &self.checkpoint {
                    if last_save.elapsed() >= self.save_interval {
                        if let Err(e) = state.save(path) {
                            merged_err.get_or_insert(e);
                            stop.store(true, Ordering::Relaxed);
                        }
                        last_save = Instant::now();
                    }
                }
            }
        });
        if let Some(e) = merged_err {
            return Err(e);
        }
        if let Some(path) = &self.checkpoint {
            state.save(path)?;
        }
        if state.tally.covered() < units {
            let done = (0..chunk_count)
                .filter(|&c| state.tally.covers(c * chunk, ((c + 1) * chunk).min(units)))
                .count() as u64;
            return Err(Error::Interrupted {
                completed: done,
                total: chunk_count,
            });
        }
        Ok(self.finish(&state.tally, started.elapsed()))
    }

    fn run_chunk(
        &self,
        classifier: &mut Classifier,
        layout: &SlotLayout,
        chunk_index: u64,
        start: u64,
        end: u64,
    ) -> Tally {
        let mut hits: Vec<u64> = Vec::new();
        match self.mode {
            Mode::Exhaustive => {
                for code in start..end {
                    let id = classifier.classify_code(code) as usize;
                    if id >= hits.len() {
                        hits.resize(id + 1, 0);
                    }
                    hits[id] += 1;
                }
            }
            Mode::Sampled { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk_index);
                for _ in start..end {
                    let m = sample_with(&self.vocab, layout, &mut rng);
                    let id = classifier.classify_structure(&m) as usize;
                    if id >= hits.len() {
                        hits.resize(id + 1, 0);
                    }
                    hits[id] += 1;
                }
            }
        }
        let mut tally = Tally::for_range(start, end);
        for (id, &count) in hits.iter().enumerate() {
            let (key, order) = classifier.entry(id as classifier::GroupId);
            tally.add(key, count, count * order);
        }
        tally
    }

    fn finish(&self, tally: &Tally, elapsed: Duration) -> CensusReport {
        let labelled: BTreeMap<CensusKey, u64> =
            tally.counts().iter().map(|(k, t)| (*k, t.count)).collect();
        let unlabelled = (self.mode == Mode::Exhaustive && self.n <= MAX_UNLABELLED_N).then(|| {
            let n_factorial: u64 = (1..=self.n as u64).product();
            // orbit-stabilizer: each class of a key contributes n!/|Aut| structures
            tally
                .counts()
                .iter()
                .map(|(k, t)| {
                    debug_assert_eq!(t.aut_sum % n_factorial, 0);
                    (*k, t.aut_sum / n_factorial)
                })
                .collect()
        });
        CensusReport {
            vocab: self.vocab.clone(),
            n: self.n,
            mode: self.mode,
            total: labelled.values().sum(),
            labelled,
            unlabelled,
            elapsed,
        }
    }
}

/// One-call form of [`Census`].
pub fn run_census(
    vocab: &Vocabulary,
    n: usize,
    mode: Mode,
    threads: usize,
    checkpoint: Option<&Path>,
) -> Result<CensusReport> {
    let mut c = Census::new(vocab, n, mode).threads(threads);
    if let Some(p) = checkpoint {
        c = c.checkpoint(p);
    }
    c.run()
}
