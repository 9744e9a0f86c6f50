//! Inter-annotator agreement: weak-agreement categories, kappa
//! statistics, annotator quality profiles, and the correlation between
//! agreement features and matchup scores.
//!
//! Weak agreement looks at each prompt's multiset of votes and asks how
//! scattered they are: unanimous (`AllAgree`), split across all three
//! labels (`AllDis`), or anything in between (`OneDis`). The `ab_dis`
//! flag marks the harder subset of disagreements where annotators chose
//! opposite systems with no tie softening the split.
//!
//! Chance-corrected agreement comes in two flavors: Fleiss' kappa over
//! prompts with a fixed number of votes each, and pairwise Cohen's kappa
//! between two annotators' aligned label lists. Annotator profiles
//! combine a rank correlation against the pooled judgment of everyone
//! else with the mean pairwise kappa, flagging annotators who run
//! against the crowd on enough data to matter.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{Choice, MatchupCounts, VoteRecord};
use crate::error::{Error, Result};
use crate::stats;

/// How scattered one prompt's votes are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeakCategory {
    AllAgree,
    OneDis,
    AllDis,
}

/// Buckets one prompt's votes. Also reports whether the prompt is an
/// A-versus-B split with no tie present (`ab_dis`).
pub fn classify_prompt(votes: &[Choice]) -> Result<(WeakCategory, bool)> {
    if votes.len() < 2 {
        return Err(Error::InsufficientVotes {
            need: 2,
            got: votes.len(),
        });
    }
    let has_a = votes.contains(&Choice::A);
    let has_b = votes.contains(&Choice::B);
    let has_tie = votes.contains(&Choice::Tie);
    let category = match (has_a, has_b, has_tie) {
        (true, true, true) => WeakCategory::AllDis,
        (true, false, false) | (false, true, false) | (false, false, true) => {
            WeakCategory::AllAgree
        }
        _ => WeakCategory::OneDis,
    };
    Ok((category, has_a && has_b && !has_tie))
}

/// Per-matchup weak-agreement counts. The three categories partition the
/// prompts with at least two votes; `ab_dis` counts a subset of the
/// disagreeing prompts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WeakAgreementSummary {
    pub all_agree: u64,
    pub one_dis: u64,
    pub all_dis: u64,
    pub ab_dis: u64,
}

impl WeakAgreementSummary {
    /// Classifies every prompt of a matchup that drew at least two votes.
    pub fn from_matchup(counts: &MatchupCounts) -> Self {
        let mut summary = WeakAgreementSummary::default();
        for votes in counts.per_prompt.values() {
            if votes.len() < 2 {
                continue;
            }
            let (category, ab_dis) =
                classify_prompt(votes).expect("length checked above");
            match category {
                WeakCategory::AllAgree => summary.all_agree += 1,
                WeakCategory::OneDis => summary.one_dis += 1,
                WeakCategory::AllDis => summary.all_dis += 1,
            }
            if ab_dis {
                summary.ab_dis += 1;
            }
        }
        summary
    }

    /// Number of classified prompts.
    pub fn total(&self) -> u64 {
        self.all_agree + self.one_dis + self.all_dis
    }
}

/// Policy for prompts whose vote counts differ: drop everything off the
/// modal size, or randomly downsample larger groups onto it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnequalGroups {
    Exclude,
    Downsample { seed: u64 },
}

fn choice_index(c: Choice) -> usize {
    match c {
        Choice::A => 0,
        Choice::B => 1,
        Choice::Tie => 2,
    }
}

/// Fleiss' kappa over prompts with equal vote counts. Groups with fewer
/// than two votes are ignored; remaining unequal sizes are reconciled to
/// the modal size per `policy` (exclusion, or seeded downsampling of
/// larger groups). Returns `None` when expected agreement is 1 (every
/// vote in one category), where kappa is undefined.
pub fn fleiss_kappa(groups: &[Vec<Choice>], policy: UnequalGroups) -> Result<Option<f64>> {
    let usable: Vec<&Vec<Choice>> = groups.iter().filter(|g| g.len() >= 2).collect();
    if usable.is_empty() {
        return Err(Error::InsufficientVotes { need: 2, got: 0 });
    }

    // modal group size; a frequency tie resolves to the smaller size so
    // that larger groups can still downsample onto it
    let mut size_freq: BTreeMap<usize, usize> = BTreeMap::new();
    for g in &usable {
        *size_freq.entry(g.len()).or_insert(0) += 1;
    }
    let modal_n = size_freq
        .iter()
        .max_by(|(na, ca), (nb, cb)| ca.cmp(cb).then(nb.cmp(na)))
        .map(|(&n, _)| n)
        .expect("nonempty frequency map");

    let mut rng = match policy {
        UnequalGroups::Downsample { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        UnequalGroups::Exclude => None,
    };
    let mut table: Vec<[u64; 3]> = Vec::new();
    for g in &usable {
        let kept: Vec<Choice> = if g.len() == modal_n {
            g.to_vec()
        } else if g.len() > modal_n {
            match rng.as_mut() {
                Some(rng) => {
                    let mut shuffled = g.to_vec();
                    shuffled.shuffle(rng);
                    shuffled.truncate(modal_n);
                    shuffled
                }
                None => continue,
            }
        } else {
            continue;
        };
        let mut row = [0u64; 3];
        for &c in &kept {
            row[choice_index(c)] += 1;
        }
        table.push(row);
    }
    if table.is_empty() {
        return Err(Error::InsufficientVotes { need: 2, got: 0 });
    }

    let n_items = table.len() as f64;
    let n = modal_n as f64;
    let mut p_bar = 0.0;
    let mut category_totals = [0.0f64; 3];
    for row in &table {
        let same: f64 = row.iter().map(|&c| (c * c) as f64).sum();
        p_bar += (same - n) / (n * (n - 1.0));
        for (t, &c) in category_totals.iter_mut().zip(row.iter()) {
            *t += c as f64;
        }
    }
    p_bar /= n_items;
    let total_votes = n_items * n;
    let p_e: f64 = category_totals
        .iter()
        .map(|&t| (t / total_votes).powi(2))
        .sum();
    if (1.0 - p_e).abs() < 1e-12 {
        return Ok(None);
    }
    Ok(Some((p_bar - p_e) / (1.0 - p_e)))
}

/// Cohen's kappa between two aligned label lists. `None` when expected
/// agreement is 1 (both raters constant on the same label).
pub fn cohen_kappa(labels1: &[Choice], labels2: &[Choice]) -> Result<Option<f64>> {
    if labels1.len() != labels2.len() {
        return Err(Error::InvalidConfig(
            "label lists must have equal length".into(),
        ));
    }
    if labels1.is_empty() {
        return Err(Error::InsufficientVotes { need: 1, got: 0 });
    }
    let n = labels1.len() as f64;
    let mut agree = 0usize;
    let mut marg1 = [0.0f64; 3];
    let mut marg2 = [0.0f64; 3];
    for (&c1, &c2) in labels1.iter().zip(labels2) {
        if c1 == c2 {
            agree += 1;
        }
        marg1[choice_index(c1)] += 1.0;
        marg2[choice_index(c2)] += 1.0;
    }
    let p_o = agree as f64 / n;
    let p_e: f64 = marg1
        .iter()
        .zip(&marg2)
        .map(|(&m1, &m2)| (m1 / n) * (m2 / n))
        .sum();
    if (1.0 - p_e).abs() < 1e-12 {
        return Ok(None);
    }
    Ok(Some((p_o - p_e) / (1.0 - p_e)))
}

/// One annotator's quality diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnotatorProfile {
    pub annotator_id: String,
    pub n_judgments: usize,
    pub spearman_vs_rest: Option<f64>,
    pub mean_cohen_kappa: Option<f64>,
    pub flagged: bool,
}

type ItemKey = (String, String, String, String);

/// Profiles every annotator in the vote list. An item is one
/// (dataset, prompt, pair) cell on the canonical orientation; when an
/// annotator voted the same item twice only the first vote counts.
/// `flagged` marks annotators whose rank correlation against everyone
/// else is negative and who produced at least `min_support` judgments.
pub fn annotator_profiles(votes: &[VoteRecord], min_support: usize) -> Vec<AnnotatorProfile> {
    // annotator → item → first numeric vote / first label
    let mut by_annotator: BTreeMap<&str, BTreeMap<ItemKey, Choice>> = BTreeMap::new();
    let mut raw_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for v in votes {
        let key = (
            v.dataset_id.clone(),
            v.prompt_id.clone(),
            v.system_a.clone(),
            v.system_b.clone(),
        );
        by_annotator
            .entry(v.annotator_id.as_str())
            .or_default()
            .entry(key)
            .or_insert(v.choice);
        *raw_counts.entry(v.annotator_id.as_str()).or_insert(0) += 1;
    }

    let annotators: Vec<&str> = by_annotator.keys().copied().collect();
    let mut profiles = Vec::with_capacity(annotators.len());
    for &ann in &annotators {
        let own = &by_annotator[ann];
        let n_judgments = raw_counts[ann];

        // rank correlation of own numeric votes against the mean numeric
        // vote of all other annotators on the shared items
        let mut own_series = Vec::new();
        let mut rest_series = Vec::new();
        for (item, &choice) in own {
            let mut rest_sum = 0.0;
            let mut rest_n = 0usize;
            for &other in &annotators {
                if other == ann {
                    continue;
                }
                if let Some(&oc) = by_annotator[other].get(item) {
                    rest_sum += oc.numeric();
                    rest_n += 1;
                }
            }
            if rest_n > 0 {
                own_series.push(choice.numeric());
                rest_series.push(rest_sum / rest_n as f64);
            }
        }
        let spearman_vs_rest = stats::spearman(&own_series, &rest_series);

        // mean pairwise Cohen's kappa with co-annotators sharing enough items
        let mut kappas = Vec::new();
        for &other in &annotators {
            if other == ann {
                continue;
            }
            let other_map = &by_annotator[other];
            let shared: Vec<&ItemKey> = own.keys().filter(|k| other_map.contains_key(k)).collect();
            if shared.len() < min_support {
                continue;
            }
            let l1: Vec<Choice> = shared.iter().map(|k| own[*k]).collect();
            let l2: Vec<Choice> = shared.iter().map(|k| other_map[*k]).collect();
            if let Ok(Some(k)) = cohen_kappa(&l1, &l2) {
                kappas.push(k);
            }
        }
        let mean_cohen_kappa = if kappas.is_empty() {
            None
        } else {
            Some(kappas.iter().sum::<f64>() / kappas.len() as f64)
        };

        let flagged = matches!(spearman_vs_rest, Some(s) if s < 0.0) && n_judgments >= min_support;
        profiles.push(AnnotatorProfile {
            annotator_id: ann.to_string(),
            n_judgments,
            spearman_vs_rest,
            mean_cohen_kappa,
            flagged,
        });
    }
    profiles
}

/// Correlation of one agreement feature with the matchup score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureCorrelation {
    pub feature: &'static str,
    pub spearman: Option<f64>,
    pub p_value: Option<f64>,
}

type FeatureCount = fn(&WeakAgreementSummary) -> u64;

/// Spearman correlation (with t-approximation p-value) between each
/// matchup's decisive win fraction and its four agreement-feature rates.
/// Matchups with no classified prompts are skipped; fewer than three
/// usable matchups is an error.
pub fn agreement_score_correlation(
    rows: &[(WeakAgreementSummary, f64)],
) -> Result<Vec<FeatureCorrelation>> {
    let usable: Vec<&(WeakAgreementSummary, f64)> =
        rows.iter().filter(|(s, _)| s.total() > 0).collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientMatchups {
            need: 3,
            got: usable.len(),
        });
    }
    let scores: Vec<f64> = usable.iter().map(|(_, score)| *score).collect();
    let features: [(&'static str, FeatureCount); 4] = [
        ("all_agree", |s| s.all_agree),
        ("ab_dis", |s| s.ab_dis),
        ("one_dis", |s| s.one_dis),
        ("all_dis", |s| s.all_dis),
    ];
    let mut out = Vec::with_capacity(features.len());
    for (name, get) in features {
        let rates: Vec<f64> = usable
            .iter()
            .map(|(s, _)| get(s) as f64 / s.total() as f64)
            .collect();
        let (spearman, p_value) = match stats::spearman_t_test(&rates, &scores) {
            Some((rho, p)) => (Some(rho), Some(p)),
            None => (None, None),
        };
        out.push(FeatureCorrelation {
            feature: name,
            spearman,
            p_value,
        });
    }
    Ok(out)
}

/// Convenience: distinct annotator ids appearing in a vote list.
pub fn annotator_ids(votes: &[VoteRecord]) -> BTreeSet<String> {
    votes.iter().map(|v| v.annotator_id.clone()).collect()
}
