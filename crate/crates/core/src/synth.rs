//! Synthetic tournaments with known ground truth.
//!
//! The generator draws votes from the same family of models the fitters
//! assume: each pair's decisive outcomes follow a logistic law on the
//! log-ability difference, ties arrive at a fixed outcome-independent
//! rate, and optional per-annotator noise flips decisive choices. That
//! makes recovered rankings directly checkable against the configured
//! ground truth.
//!
//! Votes for each pair come from an independent random stream derived
//! from (seed, pair index), so generation order never changes the output;
//! the returned list is canonically sorted.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Choice, VoteRecord};
use crate::error::{Error, Result};

fn default_annotator_noise() -> Vec<f64> {
    vec![0.0; 3]
}

/// Ground-truth tournament description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_systems: usize,
    pub true_log_abilities: Vec<f64>,
    #[serde(default)]
    pub tie_rate: f64,
    pub votes_per_pair: usize,
    #[serde(default = "default_annotator_noise")]
    pub annotator_noise: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_systems < 2 {
            return Err(Error::InvalidConfig("need at least 2 systems".into()));
        }
        if self.true_log_abilities.len() != self.n_systems {
            return Err(Error::InvalidConfig(format!(
                "{} log-abilities for {} systems",
                self.true_log_abilities.len(),
                self.n_systems
            )));
        }
        if !(0.0..1.0).contains(&self.tie_rate) {
            return Err(Error::InvalidConfig("tie_rate must lie in [0, 1)".into()));
        }
        if self.votes_per_pair == 0 {
            return Err(Error::InvalidConfig("votes_per_pair must be at least 1".into()));
        }
        if self.annotator_noise.is_empty() {
            return Err(Error::InvalidConfig("need at least one annotator".into()));
        }
        if self
            .annotator_noise
            .iter()
            .any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::InvalidConfig(
                "flip probabilities must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Zero-padded system ids in ground-truth order (index order).
    pub fn system_ids(&self) -> Vec<String> {
        let width = std::cmp::max(2, self.n_systems.saturating_sub(1).to_string().len());
        (0..self.n_systems)
            .map(|i| format!("sys_{i:0width$}"))
            .collect()
    }

    /// System ids sorted by true ability, best first.
    pub fn true_order(&self) -> Vec<String> {
        let ids = self.system_ids();
        let mut order: Vec<usize> = (0..self.n_systems).collect();
        order.sort_by(|&i, &j| {
            self.true_log_abilities[j]
                .total_cmp(&self.true_log_abilities[i])
                .then(ids[i].cmp(&ids[j]))
        });
        order.into_iter().map(|i| ids[i].clone()).collect()
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Generates the full round-robin vote list for `cfg`. Votes cycle
/// through the annotator pool; each prompt id groups one full cycle, so
/// every annotator judges every prompt of every pair once.
pub fn generate(cfg: &SynthConfig) -> Result<Vec<VoteRecord>> {
    cfg.validate()?;
    let ids = cfg.system_ids();
    let n_ann = cfg.annotator_noise.len();

    let mut votes = Vec::new();
    let mut pair_index = 0u64;
    for i in 0..cfg.n_systems {
        for j in (i + 1)..cfg.n_systems {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(pair_index);
            pair_index += 1;

            let p_a = sigmoid(cfg.true_log_abilities[i] - cfg.true_log_abilities[j]);
            for v in 0..cfg.votes_per_pair {
                let annotator = v % n_ann;
                let choice = if rng.random::<f64>() < cfg.tie_rate {
                    Choice::Tie
                } else {
                    let honest = if rng.random::<f64>() < p_a {
                        Choice::A
                    } else {
                        Choice::B
                    };
                    if rng.random::<f64>() < cfg.annotator_noise[annotator] {
                        honest.flip()
                    } else {
                        honest
                    }
                };
                votes.push(
                    VoteRecord::new(
                        "synthetic",
                        format!("p{:05}", v / n_ann),
                        format!("ann_{annotator:02}"),
                        ids[i].clone(),
                        ids[j].clone(),
                        choice,
                        None,
                    )
                    .expect("generated system ids are distinct"),
                );
            }
        }
    }
    votes.sort_by(|a, b| {
        (&a.system_a, &a.system_b, &a.prompt_id, &a.annotator_id).cmp(&(
            &b.system_a,
            &b.system_b,
            &b.prompt_id,
            &b.annotator_id,
        ))
    });
    Ok(votes)
}
