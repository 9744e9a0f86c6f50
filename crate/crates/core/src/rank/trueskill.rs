//! Two-player TrueSkill over a stream of pairwise judgments.
//!
//! Every vote is one game between the two systems it compares (tie =
//! draw). Each system keeps a Gaussian skill belief (mu, sigma); a game
//! updates both players' beliefs by moment-matching the truncated
//! Gaussian that conditioning on the observed outcome produces. The
//! standard v/w correction functions appear in their win and draw forms,
//! with the draw margin derived from a configurable draw probability.
//!
//! Judgments are replayed in a seeded random order for a fixed number of
//! full passes so the final ratings do not privilege file order.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::corpus::{Choice, VoteRecord};
use crate::error::{Error, Result};

/// TrueSkill hyperparameters.
///
/// The defaults are the rating system's conventional ones: prior mu0 = 25,
/// sigma0 = 25/3, performance noise beta = sigma0/2, dynamics tau =
/// sigma0/100. `draw_probability` of `None` estimates the draw rate from
/// the data's observed tie fraction.
#[derive(Debug, Clone, Copy)]
pub struct TrueSkillConfig {
    pub mu0: f64,
    pub sigma0: f64,
    pub beta: f64,
    pub tau: f64,
    pub draw_probability: Option<f64>,
    pub passes: usize,
    pub shuffle_seed: u64,
}

impl Default for TrueSkillConfig {
    fn default() -> Self {
        let sigma0 = 25.0 / 3.0;
        TrueSkillConfig {
            mu0: 25.0,
            sigma0,
            beta: sigma0 / 2.0,
            tau: sigma0 / 100.0,
            draw_probability: None,
            passes: 2,
            shuffle_seed: 17,
        }
    }
}

impl TrueSkillConfig {
    fn validate(&self) -> Result<()> {
        if !(self.sigma0 > 0.0 && self.beta > 0.0 && self.mu0.is_finite()) {
            return Err(Error::InvalidConfig(
                "mu0 must be finite; sigma0 and beta must be positive".into(),
            ));
        }
        if self.tau < 0.0 {
            return Err(Error::InvalidConfig("tau must be nonnegative".into()));
        }
        if let Some(p) = self.draw_probability {
            if !(0.0..1.0).contains(&p) {
                return Err(Error::InvalidConfig(
                    "draw_probability must lie in [0, 1)".into(),
                ));
            }
        }
        if self.passes == 0 {
            return Err(Error::InvalidConfig("passes must be at least 1".into()));
        }
        Ok(())
    }
}

/// One system's skill belief.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkillRating {
    pub mu: f64,
    pub sigma: f64,
    pub games: usize,
}

/// Rates all systems appearing in `votes`; systems with zero votes are
/// absent from the output. Deterministic for a fixed config.
pub fn trueskill_rate(
    votes: &[VoteRecord],
    cfg: &TrueSkillConfig,
) -> Result<BTreeMap<String, SkillRating>> {
    cfg.validate()?;
    if votes.is_empty() {
        return Ok(BTreeMap::new());
    }

    let draw_p = match cfg.draw_probability {
        Some(p) => p,
        None => {
            let ties = votes.iter().filter(|v| v.choice == Choice::Tie).count();
            ties as f64 / votes.len() as f64
        }
    };
    if draw_p >= 1.0 {
        return Err(Error::InvalidConfig(
            "every judgment is a tie; draw probability 1 leaves no signal".into(),
        ));
    }
    let norm = Normal::new(0.0, 1.0).expect("unit normal");
    // two-player draw margin for the given draw probability
    let eps = norm.inverse_cdf(0.5 * (draw_p + 1.0)) * std::f64::consts::SQRT_2 * cfg.beta;

    let mut ratings: BTreeMap<String, SkillRating> = BTreeMap::new();
    for v in votes {
        for sys in [&v.system_a, &v.system_b] {
            ratings.entry(sys.clone()).or_insert(SkillRating {
                mu: cfg.mu0,
                sigma: cfg.sigma0,
                games: 0,
            });
        }
    }

    let mut order: Vec<usize> = (0..votes.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.shuffle_seed);
    for _ in 0..cfg.passes {
        order.shuffle(&mut rng);
        for &k in &order {
            let v = &votes[k];
            let a = ratings[&v.system_a];
            let b = ratings[&v.system_b];
            let (na, nb) = update_pair(&norm, cfg, eps, a, b, v.choice);
            ratings.insert(v.system_a.clone(), na);
            ratings.insert(v.system_b.clone(), nb);
        }
    }
    Ok(ratings)
}

/// Applies one game between a and b (choice from a's perspective) and
/// returns the updated pair.
fn update_pair(
    norm: &Normal,
    cfg: &TrueSkillConfig,
    eps: f64,
    a: SkillRating,
    b: SkillRating,
    choice: Choice,
) -> (SkillRating, SkillRating) {
    // dynamics: each game starts by widening both beliefs with tau
    let var_a = a.sigma * a.sigma + cfg.tau * cfg.tau;
    let var_b = b.sigma * b.sigma + cfg.tau * cfg.tau;
    let c2 = 2.0 * cfg.beta * cfg.beta + var_a + var_b;
    let c = c2.sqrt();
    let eps_c = eps / c;

    // diff is oriented winner-minus-loser for decisive games so that a
    // single v/w pair serves both; the draw case keeps a-minus-b, where v
    // is sign-aware (positive when a trails).
    let (v, w) = match choice {
        Choice::A => vw_win(norm, (a.mu - b.mu) / c, eps_c),
        Choice::B => vw_win(norm, (b.mu - a.mu) / c, eps_c),
        Choice::Tie => vw_draw(norm, (a.mu - b.mu) / c, eps_c),
    };

    let (dir_a, dir_b) = match choice {
        Choice::A | Choice::Tie => (1.0, -1.0),
        Choice::B => (-1.0, 1.0),
    };

    let new_mu_a = a.mu + dir_a * (var_a / c) * v;
    let new_mu_b = b.mu + dir_b * (var_b / c) * v;
    let new_sigma_a = (var_a * (1.0 - w * var_a / c2)).max(1e-12).sqrt();
    let new_sigma_b = (var_b * (1.0 - w * var_b / c2)).max(1e-12).sqrt();
    (
        SkillRating {
            mu: new_mu_a,
            sigma: new_sigma_a,
            games: a.games + 1,
        },
        SkillRating {
            mu: new_mu_b,
            sigma: new_sigma_b,
            games: b.games + 1,
        },
    )
}

// Mean and variance corrections for a decisive game, evaluated at the
// scaled mu difference `d` (winner minus loser) and draw margin `eps`.
fn vw_win(norm: &Normal, d: f64, eps: f64) -> (f64, f64) {
    let x = d - eps;
    let denom = norm.cdf(x);
    // for hopeless upsets the ratio pdf/cdf degenerates; its asymptote -x
    // keeps the update finite
    let v = if denom < 1e-158 { -x } else { norm.pdf(x) / denom };
    let w = v * (v + x);
    (v, w.clamp(0.0, 1.0))
}

// Draw corrections. v is odd in d: a draw pulls the higher-rated player
// down and the lower-rated player up.
fn vw_draw(norm: &Normal, d: f64, eps: f64) -> (f64, f64) {
    let abs_d = d.abs();
    let denom = norm.cdf(eps - abs_d) - norm.cdf(-eps - abs_d);
    if denom < 1e-158 {
        // both tails vanish; treat the draw as pinning the difference at
        // the margin edge
        let v = if d < 0.0 { abs_d - eps } else { eps - abs_d };
        return (v, 1.0);
    }
    let x = norm.pdf(-eps - abs_d) - norm.pdf(eps - abs_d);
    let v = if d < 0.0 { -x / denom } else { x / denom };
    let w = v * v
        + ((eps - abs_d) * norm.pdf(eps - abs_d) + (eps + abs_d) * norm.pdf(eps + abs_d)) / denom;
    (v, w.clamp(0.0, 1.0))
}
