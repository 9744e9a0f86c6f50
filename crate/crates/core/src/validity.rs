//! Prompt validity via corrected item-total correlation.
//!
//! Each prompt is treated as a test item. Within one matchup the prompt
//! scores the mean numeric vote (A = +1, tie = 0, B = -1), re-oriented so
//! the matchup's overall decisive winner counts positive; that makes
//! scores comparable across matchups regardless of which system happened
//! to sit on the A side. A prompt's validity is the Pearson correlation,
//! across the matchups covering it, between its own score and the sum of
//! every other prompt's score in the same matchup (a leave-one-out total,
//! so a prompt never correlates with itself).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::MatchupCounts;
use crate::error::{Error, Result};
use crate::stats;

/// One prompt's discriminative power. `item_total_r` is undefined when
/// fewer than three matchups cover the prompt or either series is
/// constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PromptValidity {
    pub prompt_id: String,
    pub item_total_r: Option<f64>,
    pub matchups_used: usize,
}

/// Scores every prompt appearing in `all_counts` (one dataset's matchups,
/// each carrying per-prompt vote detail). Needs at least three matchups.
pub fn prompt_validity(all_counts: &[MatchupCounts]) -> Result<Vec<PromptValidity>> {
    if all_counts.len() < 3 {
        return Err(Error::InsufficientMatchups {
            need: 3,
            got: all_counts.len(),
        });
    }

    // per matchup: prompt → oriented mean vote
    let mut item_scores: Vec<BTreeMap<&str, f64>> = Vec::with_capacity(all_counts.len());
    for counts in all_counts {
        // winner-positive orientation; a dead-even matchup falls back to
        // the lexicographic side order, so the score never depends on how
        // the record happens to be oriented
        let sign = match counts.win.cmp(&counts.loss) {
            Ordering::Greater => 1.0,
            Ordering::Less => -1.0,
            Ordering::Equal if counts.system_a <= counts.system_b => 1.0,
            Ordering::Equal => -1.0,
        };
        let mut scores = BTreeMap::new();
        for (prompt, votes) in &counts.per_prompt {
            if votes.is_empty() {
                continue;
            }
            let mean: f64 =
                votes.iter().map(|c| c.numeric()).sum::<f64>() / votes.len() as f64;
            scores.insert(prompt.as_str(), sign * mean);
        }
        item_scores.push(scores);
    }

    // matchup totals, so the rest-total is one subtraction per cell
    let totals: Vec<f64> = item_scores.iter().map(|m| m.values().sum()).collect();

    let mut prompts: BTreeMap<&str, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for (scores, &total) in item_scores.iter().zip(&totals) {
        for (&prompt, &x) in scores {
            let entry = prompts.entry(prompt).or_default();
            entry.0.push(x);
            entry.1.push(total - x);
        }
    }

    Ok(prompts
        .into_iter()
        .map(|(prompt_id, (own, rest))| {
            let matchups_used = own.len();
            let item_total_r = if matchups_used < 3 {
                None
            } else {
                stats::pearson(&own, &rest)
            };
            PromptValidity {
                prompt_id: prompt_id.to_string(),
                item_total_r,
                matchups_used,
            }
        })
        .collect())
}
