//! Model-based ranking methods and a shared ranked-list representation.
//!
//! Two fitters live here: a Bradley-Terry maximum-likelihood fit over
//! aggregated matchup counts and a two-player TrueSkill pass over the
//! raw judgment stream. Both reduce to an ordered list of systems with a
//! score and an uncertainty, so downstream consumers (CLI tables, the
//! recovery harness) can treat them uniformly.

pub mod bradley_terry;
pub mod trueskill;

use std::collections::BTreeMap;

use serde::Serialize;

pub use bradley_terry::{fit_bradley_terry, fit_bradley_terry_default, BtFit, BtOptions};
pub use trueskill::{trueskill_rate, SkillRating, TrueSkillConfig};

use crate::error::{Error, Result};

/// One row of a method-tagged ranking: a system with its score (BT
/// log-ability or TrueSkill mu) and uncertainty (standard error or sigma).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedSystem {
    pub system_id: String,
    pub score: f64,
    pub uncertainty: f64,
}

/// Sorts (system, score, uncertainty) triples into a ranking: score
/// descending, then uncertainty ascending, then system id.
pub fn ranking_with_uncertainty<I>(entries: I) -> Result<Vec<RankedSystem>>
where
    I: IntoIterator<Item = (String, f64, f64)>,
{
    let mut out: Vec<RankedSystem> = entries
        .into_iter()
        .map(|(system_id, score, uncertainty)| RankedSystem {
            system_id,
            score,
            uncertainty,
        })
        .collect();
    if out.is_empty() {
        return Err(Error::InvalidConfig("nothing to rank".into()));
    }
    out.sort_by(|x, y| {
        y.score
            .total_cmp(&x.score)
            .then(x.uncertainty.total_cmp(&y.uncertainty))
            .then_with(|| x.system_id.cmp(&y.system_id))
    });
    Ok(out)
}

/// Ranking view of a Bradley-Terry fit: score is the log-ability,
/// uncertainty its standard error.
pub fn bt_ranking(fit: &BtFit) -> Result<Vec<RankedSystem>> {
    ranking_with_uncertainty(fit.log_abilities.iter().map(|(sys, &log_p)| {
        let se = fit.std_errors.get(sys).copied().unwrap_or(f64::NAN);
        (sys.clone(), log_p, se)
    }))
}

/// Ranking view of TrueSkill output: score is mu, uncertainty is sigma.
pub fn trueskill_ranking(ratings: &BTreeMap<String, SkillRating>) -> Result<Vec<RankedSystem>> {
    ranking_with_uncertainty(
        ratings
            .iter()
            .map(|(sys, r)| (sys.clone(), r.mu, r.sigma)),
    )
}
