//! Lexical diversity of a system's responses: distinct-n and length.
//!
//! distinct-n counts the unique n-grams across all of a system's
//! responses and divides by the total token count (tokens, not n-grams,
//! in the denominator). N-grams never cross response boundaries. Tokens
//! come from a deliberately simple normalizer: lowercase, whitespace
//! split, punctuation stripped from each token's ends.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::corpus::ResponseSet;
use crate::error::{Error, Result};

/// Lowercases, splits on whitespace, trims non-alphanumeric characters
/// from each token's ends, and drops tokens that were pure punctuation.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|tok| tok.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|tok| !tok.is_empty())
        .map(str::to_string)
        .collect()
}

/// Unique n-grams across the response set divided by total tokens.
/// Responses too short to hold an n-gram contribute tokens but no
/// n-grams, so a set with fewer than n tokens anywhere scores 0.
pub fn distinct_n(responses: &ResponseSet, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidConfig("n-gram order must be at least 1".into()));
    }
    if responses.responses.is_empty() {
        return Err(Error::EmptyResponseSet);
    }
    let mut total_tokens = 0usize;
    let mut ngrams: BTreeSet<Vec<String>> = BTreeSet::new();
    for text in responses.responses.values() {
        let tokens = tokenize(text);
        total_tokens += tokens.len();
        for gram in tokens.windows(n) {
            ngrams.insert(gram.to_vec());
        }
    }
    if total_tokens == 0 {
        return Ok(0.0);
    }
    Ok(ngrams.len() as f64 / total_tokens as f64)
}

/// Mean token count per response.
pub fn avg_length(responses: &ResponseSet) -> Result<f64> {
    if responses.responses.is_empty() {
        return Err(Error::EmptyResponseSet);
    }
    let total: usize = responses
        .responses
        .values()
        .map(|text| tokenize(text).len())
        .sum();
    Ok(total as f64 / responses.responses.len() as f64)
}

/// The per-system diversity row the CLI emits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiversityStats {
    pub system_id: String,
    pub distinct_1: f64,
    pub distinct_2: f64,
    pub avg_tokens: f64,
    pub total_tokens: usize,
}

/// Computes distinct-1, distinct-2, and length stats for one system.
pub fn diversity_stats(responses: &ResponseSet) -> Result<DiversityStats> {
    Ok(DiversityStats {
        system_id: responses.system_id.clone(),
        distinct_1: distinct_n(responses, 1)?,
        distinct_2: distinct_n(responses, 2)?,
        avg_tokens: avg_length(responses)?,
        total_tokens: responses
            .responses
            .values()
            .map(|text| tokenize(text).len())
            .sum(),
    })
}
