//! Data model and ingestion: prompts, system responses, and pairwise votes.
//!
//! A vote is one annotator's judgment on one prompt for an (A, B) system
//! pair: A wins, B wins, or tie. Presentation order is randomized at
//! collection time, so records are stored with the pair in canonical
//! lexicographic order and the choice flipped whenever ingestion has to
//! swap the pair. Aggregation reduces votes to per-pair win/loss/tie
//! counts while keeping the per-prompt vote lists that the agreement and
//! validity analyses need.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One annotator's verdict on a pair, relative to the stored (A, B) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Choice {
    A,
    B,
    Tie,
}

impl Choice {
    /// Parses "A" | "B" | "tie" case-insensitively.
    pub fn parse(token: &str) -> Option<Choice> {
        match token.trim().to_ascii_lowercase().as_str() {
            "a" => Some(Choice::A),
            "b" => Some(Choice::B),
            "tie" => Some(Choice::Tie),
            _ => None,
        }
    }

    /// The same verdict seen from the swapped pair order.
    pub fn flip(self) -> Choice {
        match self {
            Choice::A => Choice::B,
            Choice::B => Choice::A,
            Choice::Tie => Choice::Tie,
        }
    }

    /// Preference strength on the canonical orientation: A=+1, tie=0, B=-1.
    pub fn numeric(self) -> f64 {
        match self {
            Choice::A => 1.0,
            Choice::Tie => 0.0,
            Choice::B => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Choice::A => "A",
            Choice::B => "B",
            Choice::Tie => "tie",
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Choice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Choice {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let token = String::deserialize(deserializer)?;
        Choice::parse(&token)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown choice {token:?}")))
    }
}

/// One judgment: annotator, prompt, canonicalized system pair, choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteRecord {
    pub dataset_id: String,
    pub prompt_id: String,
    pub annotator_id: String,
    pub system_a: String,
    pub system_b: String,
    pub choice: Choice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hit_id: Option<String>,
}

impl VoteRecord {
    /// Builds a record, swapping the pair into canonical lexicographic
    /// order and flipping the choice if a swap was needed.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dataset_id: impl Into<String>,
        prompt_id: impl Into<String>,
        annotator_id: impl Into<String>,
        system_a: impl Into<String>,
        system_b: impl Into<String>,
        choice: Choice,
        hit_id: Option<String>,
    ) -> Result<VoteRecord> {
        let (a, b) = (system_a.into(), system_b.into());
        if a == b {
            return Err(Error::SelfComparison { line: 0, system: a });
        }
        let mut rec = VoteRecord {
            dataset_id: dataset_id.into(),
            prompt_id: prompt_id.into(),
            annotator_id: annotator_id.into(),
            system_a: a,
            system_b: b,
            choice,
            hit_id,
        };
        rec.canonicalize();
        Ok(rec)
    }

    fn canonicalize(&mut self) {
        if self.system_a > self.system_b {
            std::mem::swap(&mut self.system_a, &mut self.system_b);
            self.choice = self.choice.flip();
        }
    }

    /// Key identifying the matchup this vote belongs to.
    pub fn pair_key(&self) -> (&str, &str, &str) {
        (&self.dataset_id, &self.system_a, &self.system_b)
    }
}

/// Raw line shape shared by the JSON and delimited vote formats; the
/// choice stays a string so bad tokens can be reported with line numbers.
#[derive(Deserialize)]
struct RawVote {
    dataset_id: String,
    prompt_id: String,
    annotator_id: String,
    system_a: String,
    system_b: String,
    choice: String,
    #[serde(default)]
    hit_id: Option<String>,
}

impl RawVote {
    fn into_record(self, line: usize) -> Result<VoteRecord> {
        let choice = Choice::parse(&self.choice).ok_or_else(|| Error::UnknownChoice {
            line,
            token: self.choice.clone(),
        })?;
        if self.system_a == self.system_b {
            return Err(Error::SelfComparison {
                line,
                system: self.system_a,
            });
        }
        let mut rec = VoteRecord {
            dataset_id: self.dataset_id,
            prompt_id: self.prompt_id,
            annotator_id: self.annotator_id,
            system_a: self.system_a,
            system_b: self.system_b,
            choice,
            hit_id: self.hit_id.filter(|h| !h.is_empty()),
        };
        rec.canonicalize();
        Ok(rec)
    }
}

/// Parses a vote file, auto-detecting the format: JSON object per line, or
/// a delimited table (comma or tab) with a header row naming the same
/// fields. Records come back canonicalized, in input order.
pub fn parse_votes<R: BufRead>(reader: R) -> Result<Vec<VoteRecord>> {
    let text = {
        let mut buf = String::new();
        let mut r = reader;
        r.read_to_string(&mut buf)?;
        buf
    };
    let first = text.lines().find(|l| !l.trim().is_empty());
    match first {
        None => Ok(Vec::new()),
        Some(l) if l.trim_start().starts_with('{') => parse_votes_jsonl(&text),
        Some(l) => {
            let delim = if l.contains('\t') { b'\t' } else { b',' };
            parse_votes_delimited(&text, delim)
        }
    }
}

fn parse_votes_jsonl(text: &str) -> Result<Vec<VoteRecord>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let raw: RawVote = serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
            line: lineno,
            msg: e.to_string(),
        })?;
        out.push(raw.into_record(lineno)?);
    }
    Ok(out)
}

fn parse_votes_delimited(text: &str, delimiter: u8) -> Result<Vec<VoteRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .flexible(false)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::MalformedRecord {
        line: 1,
        msg: e.to_string(),
    })?;
    for required in [
        "dataset_id",
        "prompt_id",
        "annotator_id",
        "system_a",
        "system_b",
        "choice",
    ] {
        if !headers.iter().any(|h| h == required) {
            return Err(Error::MalformedRecord {
                line: 1,
                msg: format!("header is missing the {required} column"),
            });
        }
    }
    let mut out = Vec::new();
    for rec in rdr.deserialize::<RawVote>() {
        // csv reports positions of the raw record; +1 maps to the 1-based
        // line a user sees in an editor (header occupies line 1).
        let lineno = out.len() + 2;
        let raw = rec.map_err(|e| Error::MalformedRecord {
            line: e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(lineno),
            msg: e.to_string(),
        })?;
        out.push(raw.into_record(lineno)?);
    }
    Ok(out)
}

/// Serializes records as one JSON object per line, the primary vote format.
pub fn write_votes_jsonl<W: Write>(mut writer: W, votes: &[VoteRecord]) -> Result<()> {
    for v in votes {
        serde_json::to_writer(&mut writer, v).map_err(|e| Error::MalformedRecord {
            line: 0,
            msg: e.to_string(),
        })?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// A dataset's prompts. Single-turn datasets have one utterance per
/// prompt; multi-turn datasets carry the whole context window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSet {
    pub dataset_id: String,
    pub prompts: Vec<Prompt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prompt {
    pub prompt_id: String,
    pub turns: Vec<String>,
}

/// Parses a prompt file (one JSON object per line: prompt_id, turns).
pub fn parse_prompts<R: BufRead>(reader: R, dataset_id: impl Into<String>) -> Result<PromptSet> {
    let mut prompts: Vec<Prompt> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let p: Prompt = serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
            line: lineno,
            msg: e.to_string(),
        })?;
        if !seen.insert(p.prompt_id.clone()) {
            return Err(Error::DuplicatePrompt {
                prompt_id: p.prompt_id,
            });
        }
        if p.turns.is_empty() || p.turns.iter().all(|t| t.trim().is_empty()) {
            return Err(Error::EmptyPrompt {
                prompt_id: p.prompt_id,
            });
        }
        prompts.push(p);
    }
    Ok(PromptSet {
        dataset_id: dataset_id.into(),
        prompts,
    })
}

/// One system's responses to a dataset's prompts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseSet {
    pub system_id: String,
    pub dataset_id: String,
    pub responses: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawResponse {
    prompt_id: String,
    response: String,
}

/// Parses a response file (one JSON object per line: prompt_id, response).
pub fn parse_responses<R: BufRead>(
    reader: R,
    system_id: impl Into<String>,
    dataset_id: impl Into<String>,
) -> Result<ResponseSet> {
    let system_id = system_id.into();
    let mut responses = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let r: RawResponse = serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
            line: lineno,
            msg: e.to_string(),
        })?;
        if responses.insert(r.prompt_id.clone(), r.response).is_some() {
            return Err(Error::ResponseMismatch {
                system_id,
                msg: format!("duplicate response for prompt {:?}", r.prompt_id),
            });
        }
    }
    Ok(ResponseSet {
        system_id,
        dataset_id: dataset_id.into(),
        responses,
    })
}

impl ResponseSet {
    /// Checks the one-response-per-prompt contract against a prompt set.
    pub fn validate_against(&self, prompts: &PromptSet) -> Result<()> {
        for p in &prompts.prompts {
            if !self.responses.contains_key(&p.prompt_id) {
                return Err(Error::ResponseMismatch {
                    system_id: self.system_id.clone(),
                    msg: format!("missing response for prompt {:?}", p.prompt_id),
                });
            }
        }
        let known: std::collections::BTreeSet<_> =
            prompts.prompts.iter().map(|p| p.prompt_id.as_str()).collect();
        for pid in self.responses.keys() {
            if !known.contains(pid.as_str()) {
                return Err(Error::ResponseMismatch {
                    system_id: self.system_id.clone(),
                    msg: format!("response for unknown prompt {pid:?}"),
                });
            }
        }
        Ok(())
    }
}

/// Aggregated win/loss/tie counts for one ordered pair on one dataset.
///
/// `win` counts A-choices and `loss` counts B-choices relative to the
/// stored (system_a, system_b) orientation. `per_prompt` keeps the raw
/// choices behind the counts; fixtures built from published tables carry
/// only the counts and leave it empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchupCounts {
    pub dataset_id: String,
    pub system_a: String,
    pub system_b: String,
    pub win: usize,
    pub loss: usize,
    pub tie: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub per_prompt: BTreeMap<String, Vec<Choice>>,
}

impl MatchupCounts {
    /// A counts-only matchup (no per-prompt detail), e.g. from a table.
    pub fn from_counts(
        dataset_id: impl Into<String>,
        system_a: impl Into<String>,
        system_b: impl Into<String>,
        win: usize,
        loss: usize,
        tie: usize,
    ) -> MatchupCounts {
        MatchupCounts {
            dataset_id: dataset_id.into(),
            system_a: system_a.into(),
            system_b: system_b.into(),
            win,
            loss,
            tie,
            per_prompt: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> usize {
        self.win + self.loss + self.tie
    }

    pub fn decisive(&self) -> usize {
        self.win + self.loss
    }
}

/// Groups votes into one `MatchupCounts` per (dataset, pair), sorted by key.
pub fn aggregate(votes: &[VoteRecord]) -> Vec<MatchupCounts> {
    let mut map: BTreeMap<(String, String, String), MatchupCounts> = BTreeMap::new();
    for v in votes {
        let key = (
            v.dataset_id.clone(),
            v.system_a.clone(),
            v.system_b.clone(),
        );
        let m = map.entry(key).or_insert_with(|| {
            MatchupCounts::from_counts(&v.dataset_id, &v.system_a, &v.system_b, 0, 0, 0)
        });
        match v.choice {
            Choice::A => m.win += 1,
            Choice::B => m.loss += 1,
            Choice::Tie => m.tie += 1,
        }
        m.per_prompt
            .entry(v.prompt_id.clone())
            .or_default()
            .push(v.choice);
    }
    map.into_values().collect()
}

/// Counts votes beyond the first from the same annotator on the same
/// (dataset, prompt, pair) item. Duplicates stay in the data; callers
/// surface this as a warning.
pub fn count_duplicate_judgments(votes: &[VoteRecord]) -> usize {
    let mut seen = std::collections::HashMap::new();
    let mut dups = 0;
    for v in votes {
        let key = (
            v.dataset_id.as_str(),
            v.prompt_id.as_str(),
            v.annotator_id.as_str(),
            v.system_a.as_str(),
            v.system_b.as_str(),
        );
        let n = seen.entry(key).or_insert(0usize);
        if *n > 0 {
            dups += 1;
        }
        *n += 1;
    }
    dups
}
