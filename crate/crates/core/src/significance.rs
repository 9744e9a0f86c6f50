//! Bootstrap significance testing of one matchup's decisive-vote margin.
//!
//! The test statistic is the decisive win fraction (ties carry no
//! information about direction, so they are resampled but never counted).
//! The reported p-value is one-sided in the observed direction: the
//! fraction of resamples in which that direction reverses or lands on an
//! exact tie, with an add-one adjustment so a clean sweep reports
//! 1/(samples+1) rather than a literal zero.
//!
//! Resampling can treat each vote as the exchangeable unit or each
//! prompt's whole vote group (a cluster bootstrap that respects
//! within-prompt correlation). Every resample draws from its own random
//! stream derived from (seed, resample index), so results do not depend
//! on evaluation order.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::corpus::{Choice, MatchupCounts};
use crate::error::{Error, Result};

/// What gets resampled: individual votes or whole per-prompt vote groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResampleUnit {
    Vote,
    Prompt,
}

impl std::fmt::Display for ResampleUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResampleUnit::Vote => f.write_str("vote"),
            ResampleUnit::Prompt => f.write_str("prompt"),
        }
    }
}

impl std::str::FromStr for ResampleUnit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vote" => Ok(ResampleUnit::Vote),
            "prompt" => Ok(ResampleUnit::Prompt),
            other => Err(Error::InvalidConfig(format!(
                "unknown resample unit `{other}` (expected vote or prompt)"
            ))),
        }
    }
}

/// Outcome of one bootstrap run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapResult {
    pub p_value: f64,
    pub samples: usize,
    pub resample_unit: ResampleUnit,
    pub observed_major_win: f64,
}

/// Runs the bootstrap test on one matchup. Deterministic given `seed`.
pub fn bootstrap_test(
    counts: &MatchupCounts,
    samples: usize,
    unit: ResampleUnit,
    seed: u64,
) -> Result<BootstrapResult> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    if counts.decisive() == 0 {
        return Err(Error::NoDecisiveVotes);
    }
    let observed_major_win = counts.win as f64 / counts.decisive() as f64;
    // the nominal winner; an exact observed tie tests the first side
    let a_wins = counts.win >= counts.loss;

    let reversals = match unit {
        ResampleUnit::Vote => vote_reversals(counts, samples, seed, a_wins)?,
        ResampleUnit::Prompt => prompt_reversals(counts, samples, seed, a_wins)?,
    };

    Ok(BootstrapResult {
        p_value: (reversals + 1) as f64 / (samples + 1) as f64,
        samples,
        resample_unit: unit,
        observed_major_win,
    })
}

fn reversed(a_wins: bool, w: u64, l: u64) -> bool {
    if a_wins {
        w <= l
    } else {
        l <= w
    }
}

fn resample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

// Vote-unit resampling: n draws with replacement from the observed
// {win, loss, tie} multiset. Only the win/loss split matters, so the
// draw collapses to W' ~ Bin(n, win/n) followed by
// L' | W' ~ Bin(n − W', loss/(loss + tie)).
fn vote_reversals(counts: &MatchupCounts, samples: usize, seed: u64, a_wins: bool) -> Result<u64> {
    let n = counts.total() as u64;
    let p_win = counts.win as f64 / n as f64;
    let rest = counts.loss + counts.tie;
    let p_loss_given_rest = if rest == 0 {
        0.0
    } else {
        counts.loss as f64 / rest as f64
    };

    let mut reversals = 0u64;
    for i in 0..samples {
        let mut rng = resample_rng(seed, i);
        let w = draw_binomial(&mut rng, n, p_win);
        let l = draw_binomial(&mut rng, n - w, p_loss_given_rest);
        if reversed(a_wins, w, l) {
            reversals += 1;
        }
    }
    Ok(reversals)
}

fn draw_binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p)
        .expect("p validated to lie in (0,1)")
        .sample(rng)
}

// Prompt-unit resampling: draw whole per-prompt vote groups with
// replacement and sum their decisive counts.
fn prompt_reversals(
    counts: &MatchupCounts,
    samples: usize,
    seed: u64,
    a_wins: bool,
) -> Result<u64> {
    if counts.per_prompt.is_empty() {
        return Err(Error::NoPromptGroups);
    }
    let groups: Vec<(u64, u64)> = counts
        .per_prompt
        .values()
        .map(|votes| {
            let w = votes.iter().filter(|&&c| c == Choice::A).count() as u64;
            let l = votes.iter().filter(|&&c| c == Choice::B).count() as u64;
            (w, l)
        })
        .collect();

    let mut reversals = 0u64;
    for i in 0..samples {
        let mut rng = resample_rng(seed, i);
        let (mut w, mut l) = (0u64, 0u64);
        for _ in 0..groups.len() {
            let (gw, gl) = groups[rng.random_range(0..groups.len())];
            w += gw;
            l += gl;
        }
        if reversed(a_wins, w, l) {
            reversals += 1;
        }
    }
    Ok(reversals)
}
