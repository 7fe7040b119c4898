//! Simulated annealing towards tournaments with short power paths.
//!
//! A move flips one uniformly chosen pair. The objective is the exact
//! longest `k`-th power path, cached by canonical fingerprint. Worsening
//! moves are accepted with probability `exp(-delta / temperature)`; the
//! temperature is multiplied by `cooling_rate` every `moves_per_step` moves
//! and the chain restarts from a fresh random tournament once it falls below
//! [`RESTART_FRACTION`] of the initial temperature.
//!
//! Only the state cap of the solver budget is honoured; a wall-clock cap
//! would make runs irreproducible.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonical_fingerprint, BoundFlag, Fingerprint, Method, SearchError, SearchRecord};
use crate::rng::{derive_seed, stream_rng};
use crate::solver::{longest_power_path_exact, SolveBudget};
use crate::tournament::Tournament;
use crate::trn::{read_trn, write_trn};

pub const RESTART_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub iterations: u64,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub moves_per_step: u64,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            iterations: 100_000,
            initial_temperature: 1.0,
            cooling_rate: 0.99,
            moves_per_step: 100,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    /// `iterations` may be zero (the initial record only).
    pub fn validate(&self) -> Result<(), SearchError> {
        let t0 = self.initial_temperature;
        if !(t0.is_finite() && t0 > 0.0) {
            return Err(SearchError::InvalidConfig(format!("initial temperature {t0}")));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(SearchError::InvalidConfig(format!("cooling rate {}", self.cooling_rate)));
        }
        if self.moves_per_step == 0 {
            return Err(SearchError::InvalidConfig("moves per step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct Objective {
    value: usize,
    exact: bool,
}

/// Everything needed to continue a chain bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealCheckpoint {
    pub n: usize,
    pub k: usize,
    pub chain: usize,
    pub config: AnnealConfig,
    pub max_states: u64,
    pub rng: ChaCha8Rng,
    /// Current tournament in `.trn` text.
    pub matrix: String,
    pub current_pp: usize,
    pub best_pp: usize,
    pub temperature: f64,
    pub iteration: u64,
    pub moves_in_step: u64,
    pub exhausted: bool,
    cache: BTreeMap<String, Objective>,
}

pub struct Annealer {
    n: usize,
    k: usize,
    chain: usize,
    cfg: AnnealConfig,
    budget: SolveBudget,
    rng: ChaCha8Rng,
    current: Tournament,
    current_pp: usize,
    best_pp: usize,
    temperature: f64,
    iteration: u64,
    moves_in_step: u64,
    exhausted: bool,
    cache: HashMap<Fingerprint, Objective>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnealOutcome {
    pub records: Vec<SearchRecord>,
    /// Some objective stayed a lower bound even with the doubled budget.
    pub exhausted: bool,
}

impl Annealer {
    /// Draw the initial tournament; its record is returned.
    pub fn new(
        n: usize,
        k: usize,
        chain: usize,
        cfg: AnnealConfig,
        max_states: u64,
    ) -> Result<(Self, SearchRecord), SearchError> {
        cfg.validate()?;
        if n < 2 || k == 0 {
            return Err(SearchError::InvalidConfig("annealing needs n >= 2 and k >= 1".into()));
        }
        let mut rng = stream_rng(cfg.seed, "anneal");
        let current = Tournament::random(n, rng.gen())?;
        let mut a = Annealer {
            n,
            k,
            chain,
            cfg,
            budget: SolveBudget {
                max_states,
                max_millis: u64::MAX,
            },
            rng,
            current,
            current_pp: 0,
            best_pp: 0,
            temperature: cfg.initial_temperature,
            iteration: 0,
            moves_in_step: 0,
            exhausted: false,
            cache: HashMap::new(),
        };
        let o = a.evaluate(&a.current.clone());
        a.current_pp = o.value;
        a.best_pp = o.value;
        let rec = a.record();
        Ok((a, rec))
    }

    pub fn config(&self) -> &AnnealConfig {
        &self.cfg
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn best_pp(&self) -> usize {
        self.best_pp
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn current(&self) -> &Tournament {
        &self.current
    }

    fn evaluate(&mut self, t: &Tournament) -> Objective {
        let fp = canonical_fingerprint(t);
        if let Some(&o) = self.cache.get(&fp) {
            return o;
        }
        let o = match longest_power_path_exact(t, self.k, self.budget) {
            Ok(p) => Objective {
                value: p.len(),
                exact: true,
            },
            Err(_) => match longest_power_path_exact(t, self.k, self.budget.doubled()) {
                Ok(p) => Objective {
                    value: p.len(),
                    exact: true,
                },
                Err(e) => {
                    self.exhausted = true;
                    Objective {
                        value: e.best.len(),
                        exact: false,
                    }
                }
            },
        };
        self.cache.insert(fp, o);
        o
    }

    fn record(&self) -> SearchRecord {
        let (witness, bound) = match longest_power_path_exact(&self.current, self.k, self.budget.doubled()) {
            Ok(p) => (p, BoundFlag::Exact),
            Err(e) => (e.best, BoundFlag::Lower),
        };
        SearchRecord {
            n: self.n,
            k: self.k,
            fingerprint: canonical_fingerprint(&self.current),
            pp: witness.len(),
            bound,
            witness,
            tournament: self.current.clone(),
            seed: self.cfg.seed,
            method: Method::Anneal,
            chain: self.chain,
            iteration: self.iteration,
        }
    }

    fn random_pair(&mut self) -> (usize, usize) {
        let i = self.rng.gen_range(0..self.n);
        let mut j = self.rng.gen_range(0..self.n - 1);
        if j >= i {
            j += 1;
        }
        (i.min(j), i.max(j))
    }

    /// One move; returns a record when it set a new minimum.
    pub fn step(&mut self) -> Option<SearchRecord> {
        self.iteration += 1;
        let (i, j) = self.random_pair();
        self.current.flip(i, j);
        let cand = self.current.clone();
        let o = self.evaluate(&cand);
        let delta = o.value as f64 - self.current_pp as f64;
        let accept = delta <= 0.0 || self.rng.gen::<f64>() < (-delta / self.temperature).exp();
        let mut out = None;
        if accept {
            self.current_pp = o.value;
            if o.value < self.best_pp {
                self.best_pp = o.value;
                out = Some(self.record());
            }
        } else {
            self.current.flip(i, j);
        }
        self.moves_in_step += 1;
        if self.moves_in_step == self.cfg.moves_per_step {
            self.moves_in_step = 0;
            self.temperature *= self.cfg.cooling_rate;
            if self.temperature < self.cfg.initial_temperature * RESTART_FRACTION && out.is_none() {
                out = self.restart();
            }
        }
        out
    }

    fn restart(&mut self) -> Option<SearchRecord> {
        self.temperature = self.cfg.initial_temperature;
        self.current = Tournament::random(self.n, self.rng.gen()).expect("n >= 2");
        let o = self.evaluate(&self.current.clone());
        self.current_pp = o.value;
        if o.value < self.best_pp {
            self.best_pp = o.value;
            return Some(self.record());
        }
        None
    }

    /// Run until `iterations` moves have been made in total.
    pub fn run(&mut self) -> Vec<SearchRecord> {
        self.run_until(self.cfg.iterations)
    }

    /// Run until the iteration counter reaches `stop` (capped at the
    /// configured total).
    pub fn run_until(&mut self, stop: u64) -> Vec<SearchRecord> {
        let stop = stop.min(self.cfg.iterations);
        let mut out = Vec::new();
        while self.iteration < stop {
            out.extend(self.step());
        }
        out
    }

    pub fn checkpoint(&self) -> AnnealCheckpoint {
        AnnealCheckpoint {
            n: self.n,
            k: self.k,
            chain: self.chain,
            config: self.cfg,
            max_states: self.budget.max_states,
            rng: self.rng.clone(),
            matrix: String::from_utf8(write_trn(&self.current)).expect("ascii"),
            current_pp: self.current_pp,
            best_pp: self.best_pp,
            temperature: self.temperature,
            iteration: self.iteration,
            moves_in_step: self.moves_in_step,
            exhausted: self.exhausted,
            cache: self.cache.iter().map(|(f, &o)| (f.hex.clone(), o)).collect(),
        }
    }

    pub fn from_checkpoint(c: AnnealCheckpoint) -> Result<Self, SearchError> {
        c.config.validate()?;
        let current = read_trn(c.matrix.as_bytes()).map_err(|e| SearchError::InvalidConfig(e.to_string()))?;
        if current.n() != c.n {
            return Err(SearchError::InvalidConfig("checkpoint matrix size".into()));
        }
        let canonical = c.n <= super::CANONICAL_LIMIT;
        Ok(Annealer {
            n: c.n,
            k: c.k,
            chain: c.chain,
            cfg: c.config,
            budget: SolveBudget {
                max_states: c.max_states,
                max_millis: u64::MAX,
            },
            rng: c.rng,
            current,
            current_pp: c.current_pp,
            best_pp: c.best_pp,
            temperature: c.temperature,
            iteration: c.iteration,
            moves_in_step: c.moves_in_step,
            exhausted: c.exhausted,
            cache: c
                .cache
                .into_iter()
                .map(|(hex, o)| (Fingerprint { hex, canonical }, o))
                .collect(),
        })
    }
}

/// One chain: the initial record followed by every new minimum.
pub fn anneal_min_pp(n: usize, k: usize, cfg: &AnnealConfig, max_states: u64) -> Result<AnnealOutcome, SearchError> {
    let (mut a, first) = Annealer::new(n, k, 0, *cfg, max_states)?;
    let mut records = vec![first];
    records.extend(a.run());
    Ok(AnnealOutcome {
        records,
        exhausted: a.exhausted(),
    })
}

/// Independent chains with seeds derived from `cfg.seed`, merged by
/// `(chain, iteration)`.
pub fn anneal_chains(
    n: usize,
    k: usize,
    cfg: &AnnealConfig,
    chains: usize,
    max_states: u64,
) -> Result<AnnealOutcome, SearchError> {
    let outs: Vec<Result<AnnealOutcome, SearchError>> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let chain_cfg = AnnealConfig {
                seed: derive_seed(cfg.seed, &format!("chain/{c}")),
                ..*cfg
            };
            let (mut a, first) = Annealer::new(n, k, c, chain_cfg, max_states)?;
            let mut records = vec![first];
            records.extend(a.run());
            Ok(AnnealOutcome {
                records,
                exhausted: a.exhausted(),
            })
        })
        .collect();
    let mut merged = AnnealOutcome {
        records: Vec::new(),
        exhausted: false,
    };
    for o in outs {
        let o = o?;
        merged.records.extend(o.records);
        merged.exhausted |= o.exhausted;
    }
    merged.records.sort_by_key(|r| (r.chain, r.iteration));
    Ok(merged)
}

/// Minimum over a record stream.
pub fn best_record(records: &[SearchRecord]) -> Option<&SearchRecord> {
    records.iter().min_by_key(|r| (r.pp, r.chain, r.iteration))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::enumerate_min_pp;

    fn cfg(iterations: u64, seed: u64) -> AnnealConfig {
        AnnealConfig {
            iterations,
            seed,
            ..Default::default()
        }
    }

    #[test]
    fn zero_iterations_returns_initial_record() {
        let out = anneal_min_pp(6, 2, &cfg(0, 3), 1 << 20).unwrap();
        assert_eq!(out.records.len(), 1);
        let r = &out.records[0];
        assert_eq!(r.iteration, 0);
        assert!(r.witness.is_valid(&r.tournament));
        let first = Annealer::new(6, 2, 0, cfg(0, 3), 1 << 20).unwrap().0;
        assert_eq!(&r.tournament, first.current());
    }

    #[test]
    fn triangle_found_quickly() {
        for seed in 0..20 {
            let out = anneal_min_pp(3, 2, &cfg(100, seed), 1 << 20).unwrap();
            assert_eq!(best_record(&out.records).unwrap().pp, 2, "seed {seed}");
        }
    }

    #[test]
    fn records_strictly_improve_and_verify() {
        let out = anneal_min_pp(7, 2, &cfg(2000, 9), 1 << 20).unwrap();
        for w in out.records.windows(2) {
            assert!(w[1].pp < w[0].pp);
            assert!(w[1].iteration > w[0].iteration);
        }
        for r in &out.records {
            assert!(r.witness.is_valid(&r.tournament));
            assert_eq!(r.pp, r.witness.len());
            assert_eq!(r.bound, BoundFlag::Exact);
        }
    }

    #[test]
    fn never_below_enumeration() {
        let e = enumerate_min_pp(5, 2).unwrap();
        for seed in 0..5 {
            let out = anneal_min_pp(5, 2, &cfg(500, seed), 1 << 20).unwrap();
            assert!(best_record(&out.records).unwrap().pp >= e.min);
        }
    }

    #[test]
    fn deterministic_and_resumable() {
        let c = cfg(3000, 17);
        let full = anneal_min_pp(8, 2, &c, 1 << 20).unwrap();
        assert_eq!(full, anneal_min_pp(8, 2, &c, 1 << 20).unwrap());

        let (mut a, first) = Annealer::new(8, 2, 0, c, 1 << 20).unwrap();
        let mut resumed = vec![first];
        resumed.extend(a.run_until(1234));
        let json = serde_json::to_string(&a.checkpoint()).unwrap();
        drop(a);
        let mut b = Annealer::from_checkpoint(serde_json::from_str(&json).unwrap()).unwrap();
        resumed.extend(b.run());
        assert_eq!(resumed, full.records);
    }

    #[test]
    fn flip_is_an_involution() {
        let t = Tournament::random(9, 1).unwrap();
        let mut u = t.clone();
        u.flip(2, 7);
        assert_ne!(u, t);
        u.flip(2, 7);
        assert_eq!(u, t);
    }

    #[test]
    fn chains_merge_in_order() {
        let out = anneal_chains(5, 2, &cfg(300, 2), 3, 1 << 20).unwrap();
        let keys: Vec<(usize, u64)> = out.records.iter().map(|r| (r.chain, r.iteration)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(out, anneal_chains(5, 2, &cfg(300, 2), 3, 1 << 20).unwrap());
    }

    #[test]
    fn defaults_match_committed_config() {
        let committed: AnnealConfig =
            serde_json::from_str(include_str!("../../calibration/anneal_defaults.json")).unwrap();
        assert_eq!(committed, AnnealConfig::default());
    }

    #[test]
    fn bad_configs() {
        for c in [
            AnnealConfig { cooling_rate: 1.0, ..cfg(1, 0) },
            AnnealConfig { initial_temperature: 0.0, ..cfg(1, 0) },
            AnnealConfig { moves_per_step: 0, ..cfg(1, 0) },
        ] {
            assert!(matches!(c.validate(), Err(SearchError::InvalidConfig(_))));
        }
        assert!(anneal_min_pp(1, 2, &cfg(1, 0), 10).is_err());
    }
}
