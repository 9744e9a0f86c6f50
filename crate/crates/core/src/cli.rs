//! Command-line front end.
//!
//! Each subcommand reads votes (or responses, or a generator config),
//! runs one analysis, and writes machine-readable CSV/JSON artifacts
//! into the output directory; `report` runs the whole pipeline at once.
//! Analysis runs also drop a `run_manifest.json` recording the exact
//! inputs, flags, and seed, so any output directory is self-describing.
//! All randomness is seeded through flags; rerunning a subcommand with
//! the same inputs reproduces every artifact byte for byte (the manifest
//! timestamp is the sole exception).
//!
//! Votes spanning several datasets are analyzed per dataset, with file
//! names suffixed by dataset id when more than one is present.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write as IoWrite};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::agreement::{
    agreement_score_correlation, annotator_profiles, fleiss_kappa, AnnotatorProfile,
    UnequalGroups, WeakAgreementSummary,
};
use crate::corpus::{self, MatchupCounts, VoteRecord};
use crate::diversity::diversity_stats;
use crate::error::{Error, Result};
use crate::rank::{
    bt_ranking, fit_bradley_terry_default, trueskill_rate, trueskill_ranking, RankedSystem,
    TrueSkillConfig,
};
use crate::scores::{matchup_matrix, score_pair, win_count_ranking};
use crate::significance::{bootstrap_test, ResampleUnit};
use crate::synth::{generate, SynthConfig};
use crate::validity::prompt_validity;

#[derive(Parser)]
#[command(
    name = "abjudge",
    version,
    about = "Rankings, significance tests, and annotator diagnostics from pairwise A/B/tie votes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bt,
    Trueskill,
    Wincount,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Unit {
    Vote,
    Prompt,
}

impl From<Unit> for ResampleUnit {
    fn from(u: Unit) -> ResampleUnit {
        match u {
            Unit::Vote => ResampleUnit::Vote,
            Unit::Prompt => ResampleUnit::Prompt,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Aggregate raw votes into per-matchup win/loss/tie counts
    Aggregate {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Per-matchup win fractions and the win-count ranking
    Score {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Rank systems by Bradley-Terry, TrueSkill, or win count
    Rank {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "bt")]
        method: Method,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// TrueSkill replay passes over the shuffled judgment stream
        #[arg(long, default_value_t = 2)]
        passes: usize,
    },
    /// Bootstrap significance test for every matchup
    Significance {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value = "vote")]
        unit: Unit,
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
    /// Weak-agreement categories, Fleiss' kappa, and their score correlation
    Agreement {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Seed for downsampling prompts with uneven vote counts
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
    /// Per-annotator agreement profiles and a correlation histogram
    Annotators {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Minimum shared judgments for pairwise kappa and flagging
        #[arg(long, default_value_t = 5)]
        min_support: usize,
    },
    /// Item-total validity score for every prompt
    Validity {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Prompts with item_total_r below this land in low_validity.csv
        #[arg(long, default_value_t = 0.1)]
        validity_threshold: f64,
    },
    /// distinct-1/distinct-2 and response length per system
    Diversity {
        /// One JSONL file per system (prompt_id, response); the file stem
        /// names the system
        #[arg(long, value_name = "FILE", num_args = 1.., required = true)]
        responses: Vec<PathBuf>,
        /// Optional prompt set to validate response coverage against
        #[arg(long, value_name = "FILE")]
        prompts: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Generate a synthetic tournament with known ground truth
    Simulate {
        /// JSON generator config
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Output vote file (JSONL)
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Full pipeline: scores, all three rankings, significance,
    /// agreement, annotators, validity, matrices, and a text summary
    Report {
        #[arg(long, value_name = "FILE")]
        votes: PathBuf,
        #[arg(long, value_name = "FILE", num_args = 1..)]
        responses: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        prompts: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value = "vote")]
        unit: Unit,
        #[arg(long, default_value_t = 2)]
        passes: usize,
        #[arg(long, default_value_t = 5)]
        min_support: usize,
        #[arg(long, default_value_t = 0.1)]
        validity_threshold: f64,
    },
}

/// Parses argv, runs the requested subcommand, and maps errors to a
/// diagnostic on stderr plus a nonzero exit status.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Aggregate { votes, out } => cmd_aggregate(&votes, &out),
        Command::Score { votes, out } => cmd_score(&votes, &out),
        Command::Rank {
            votes,
            out,
            method,
            seed,
            passes,
        } => cmd_rank(&votes, &out, method, seed, passes),
        Command::Significance {
            votes,
            out,
            samples,
            unit,
            seed,
        } => cmd_significance(&votes, &out, samples, unit.into(), seed),
        Command::Agreement { votes, out, seed } => cmd_agreement(&votes, &out, seed),
        Command::Annotators {
            votes,
            out,
            min_support,
        } => cmd_annotators(&votes, &out, min_support),
        Command::Validity {
            votes,
            out,
            validity_threshold,
        } => cmd_validity(&votes, &out, validity_threshold),
        Command::Diversity {
            responses,
            prompts,
            out,
        } => cmd_diversity(&responses, prompts.as_deref(), &out),
        Command::Simulate { config, out } => cmd_simulate(&config, &out),
        Command::Report {
            votes,
            responses,
            prompts,
            out,
            seed,
            samples,
            unit,
            passes,
            min_support,
            validity_threshold,
        } => cmd_report(ReportArgs {
            votes,
            responses,
            prompts,
            out,
            seed,
            samples,
            unit: unit.into(),
            passes,
            min_support,
            validity_threshold,
        }),
    }
}

// ---------------------------------------------------------------------
// shared plumbing

fn read_failed(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::ReadFailed {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn write_failed(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::WriteFailed {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).map_err(|e| read_failed(path, e))?,
    ))
}

fn load_votes(path: &Path) -> Result<Vec<VoteRecord>> {
    let votes = corpus::parse_votes(open(path)?)?;
    let duplicates = corpus::count_duplicate_judgments(&votes);
    if duplicates > 0 {
        eprintln!(
            "warning: {duplicates} duplicate judgments (same annotator, prompt, and pair); all are kept"
        );
    }
    Ok(votes)
}

fn by_dataset(votes: Vec<VoteRecord>) -> BTreeMap<String, Vec<VoteRecord>> {
    let mut map: BTreeMap<String, Vec<VoteRecord>> = BTreeMap::new();
    for v in votes {
        map.entry(v.dataset_id.clone()).or_default().push(v);
    }
    map
}

/// `base.ext`, or `base_<dataset>.ext` when several datasets are present.
fn outname(base: &str, ext: &str, dataset: &str, multi: bool) -> String {
    if multi {
        format!("{base}_{dataset}.{ext}")
    } else {
        format!("{base}.{ext}")
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|e| write_failed(path, e))
}

fn finish_csv(mut w: csv::Writer<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| write_failed(path, e))
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

fn pair_label(m: &MatchupCounts) -> String {
    format!("{} vs {}", m.system_a, m.system_b)
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    inputs: Vec<String>,
    output_dir: String,
    flags: BTreeMap<&'static str, String>,
    generated_unix_seconds: u64,
}

fn write_manifest(
    out: &Path,
    subcommand: &'static str,
    inputs: &[&Path],
    flags: BTreeMap<&'static str, String>,
) -> Result<()> {
    let manifest = RunManifest {
        subcommand,
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        output_dir: out.display().to_string(),
        flags,
        generated_unix_seconds: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let path = out.join("run_manifest.json");
    let file = File::create(&path).map_err(|e| write_failed(&path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), &manifest)
        .map_err(|e| write_failed(&path, e))
}

fn ensure_dir(out: &Path) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| write_failed(out, e))
}

// ---------------------------------------------------------------------
// artifact writers, shared between single subcommands and `report`

fn write_counts(out: &Path, all: &[MatchupCounts]) -> Result<()> {
    let path = out.join("counts.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["dataset", "system_a", "system_b", "win", "loss", "tie"])
        .map_err(|e| write_failed(&path, e))?;
    for m in all {
        w.write_record([
            m.dataset_id.as_str(),
            m.system_a.as_str(),
            m.system_b.as_str(),
            &m.win.to_string(),
            &m.loss.to_string(),
            &m.tie.to_string(),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn write_scores(out: &Path, all: &[MatchupCounts]) -> Result<()> {
    let path = out.join("scores.csv");
    let mut w = csv_writer(&path)?;
    w.write_record([
        "dataset",
        "system_a",
        "system_b",
        "major_win",
        "major_loss",
        "distinct_win",
        "distinct_loss",
        "distinct_tie",
    ])
    .map_err(|e| write_failed(&path, e))?;
    for m in all {
        let s = score_pair(m);
        w.write_record([
            m.dataset_id.as_str(),
            m.system_a.as_str(),
            m.system_b.as_str(),
            &fmt_opt(s.major_win),
            &fmt_opt(s.major_loss),
            &fmt_opt(s.distinct_win),
            &fmt_opt(s.distinct_loss),
            &fmt_opt(s.distinct_tie),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn write_win_counts(out: &Path, dataset: &str, multi: bool, all: &[MatchupCounts]) -> Result<()> {
    let ranking = win_count_ranking(all);
    let path = out.join(outname("win_counts", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["rank", "system", "win_count", "total_matchups", "mean_major_win"])
        .map_err(|e| write_failed(&path, e))?;
    for (i, e) in ranking.entries.iter().enumerate() {
        w.write_record([
            &(i + 1).to_string(),
            e.system_id.as_str(),
            &e.win_count.to_string(),
            &e.total_matchups.to_string(),
            &fmt_opt(e.mean_major_win),
        ])
        .map_err(|err| write_failed(&path, err))?;
    }
    finish_csv(w, &path)
}

fn write_ranking(out: &Path, name: &str, rows: &[RankedSystem]) -> Result<()> {
    let path = out.join(name);
    let mut w = csv_writer(&path)?;
    w.write_record(["rank", "system", "score", "uncertainty"])
        .map_err(|e| write_failed(&path, e))?;
    for (i, r) in rows.iter().enumerate() {
        w.write_record([
            &(i + 1).to_string(),
            r.system_id.as_str(),
            &fmt(r.score),
            &fmt(r.uncertainty),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn wincount_as_ranking(all: &[MatchupCounts]) -> Vec<RankedSystem> {
    win_count_ranking(all)
        .entries
        .into_iter()
        .map(|e| RankedSystem {
            system_id: e.system_id,
            score: e.win_count as f64,
            uncertainty: f64::NAN,
        })
        .collect()
}

fn write_wincount_ranking(out: &Path, name: &str, all: &[MatchupCounts]) -> Result<()> {
    // win counts carry no uncertainty; the column stays empty
    let rows = wincount_as_ranking(all);
    let path = out.join(name);
    let mut w = csv_writer(&path)?;
    w.write_record(["rank", "system", "score", "uncertainty"])
        .map_err(|e| write_failed(&path, e))?;
    for (i, r) in rows.iter().enumerate() {
        w.write_record([
            &(i + 1).to_string(),
            r.system_id.as_str(),
            &fmt(r.score),
            "",
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn write_significance(
    out: &Path,
    dataset: &str,
    multi: bool,
    all: &[MatchupCounts],
    samples: usize,
    unit: ResampleUnit,
    seed: u64,
) -> Result<Vec<Option<f64>>> {
    let path = out.join(outname("significance", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["pair", "p_value", "observed_major_win"])
        .map_err(|e| write_failed(&path, e))?;
    let mut p_values = Vec::with_capacity(all.len());
    for m in all {
        // a matchup with no decisive votes has nothing to test; its row
        // stays, with empty statistics
        let (p, observed) = if m.decisive() == 0 {
            (None, String::new())
        } else {
            let r = bootstrap_test(m, samples, unit, seed)?;
            (Some(r.p_value), fmt(r.observed_major_win))
        };
        w.write_record([&pair_label(m), &fmt_opt(p), &observed])
            .map_err(|e| write_failed(&path, e))?;
        p_values.push(p);
    }
    finish_csv(w, &path)?;
    Ok(p_values)
}

fn write_agreement(
    out: &Path,
    dataset: &str,
    multi: bool,
    all: &[MatchupCounts],
    seed: u64,
) -> Result<Vec<(WeakAgreementSummary, Option<f64>)>> {
    let path = out.join(outname("agreement", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["pair", "all_agree", "ab_dis", "one_dis", "all_dis", "fleiss_kappa"])
        .map_err(|e| write_failed(&path, e))?;
    let mut rows = Vec::with_capacity(all.len());
    for m in all {
        let summary = WeakAgreementSummary::from_matchup(m);
        let groups: Vec<Vec<corpus::Choice>> = m.per_prompt.values().cloned().collect();
        let kappa = fleiss_kappa(&groups, UnequalGroups::Downsample { seed }).unwrap_or(None);
        w.write_record([
            &pair_label(m),
            &summary.all_agree.to_string(),
            &summary.ab_dis.to_string(),
            &summary.one_dis.to_string(),
            &summary.all_dis.to_string(),
            &fmt_opt(kappa),
        ])
        .map_err(|e| write_failed(&path, e))?;
        rows.push((summary, score_pair(m).major_win));
    }
    finish_csv(w, &path)?;
    Ok(rows)
}

fn write_agreement_correlation(
    out: &Path,
    dataset: &str,
    multi: bool,
    rows: &[(WeakAgreementSummary, Option<f64>)],
) -> Result<bool> {
    let usable: Vec<(WeakAgreementSummary, f64)> = rows
        .iter()
        .filter_map(|(s, major)| major.map(|m| (*s, m)))
        .collect();
    let table = match agreement_score_correlation(&usable) {
        Ok(table) => table,
        Err(Error::InsufficientMatchups { need, got }) => {
            eprintln!(
                "note: dataset {dataset}: skipping agreement correlation ({got} usable matchups, need {need})"
            );
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    let path = out.join(outname("agreement_correlation", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["feature", "spearman", "p_value"])
        .map_err(|e| write_failed(&path, e))?;
    for f in &table {
        w.write_record([f.feature, &fmt_opt(f.spearman), &fmt_opt(f.p_value)])
            .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)?;
    Ok(true)
}

fn write_annotators(out: &Path, profiles: &[AnnotatorProfile]) -> Result<()> {
    let path = out.join("annotators.csv");
    let mut w = csv_writer(&path)?;
    w.write_record([
        "annotator_id",
        "n_judgments",
        "spearman_vs_rest",
        "mean_cohen_kappa",
        "flagged",
    ])
    .map_err(|e| write_failed(&path, e))?;
    for p in profiles {
        w.write_record([
            p.annotator_id.as_str(),
            &p.n_judgments.to_string(),
            &fmt_opt(p.spearman_vs_rest),
            &fmt_opt(p.mean_cohen_kappa),
            if p.flagged { "true" } else { "false" },
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)?;

    // histogram of spearman_vs_rest over [-1, 1] in 20 fixed bins
    let mut bins = [0usize; 20];
    for p in profiles {
        if let Some(s) = p.spearman_vs_rest {
            let idx = (((s + 1.0) / 0.1).floor() as isize).clamp(0, 19) as usize;
            bins[idx] += 1;
        }
    }
    let path = out.join("spearman_hist.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["bin_low", "bin_high", "count"])
        .map_err(|e| write_failed(&path, e))?;
    for (k, count) in bins.iter().enumerate() {
        let low = -1.0 + 0.1 * k as f64;
        w.write_record([
            &format!("{low:.1}"),
            &format!("{:.1}", low + 0.1),
            &count.to_string(),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn write_validity(
    out: &Path,
    dataset: &str,
    multi: bool,
    all: &[MatchupCounts],
    threshold: f64,
) -> Result<()> {
    let validity = prompt_validity(all)?;
    let path = out.join(outname("validity", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["prompt_id", "item_total_r", "matchups_used"])
        .map_err(|e| write_failed(&path, e))?;
    for v in &validity {
        w.write_record([
            v.prompt_id.as_str(),
            &fmt_opt(v.item_total_r),
            &v.matchups_used.to_string(),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)?;

    let path = out.join(outname("low_validity", "csv", dataset, multi));
    let mut w = csv_writer(&path)?;
    w.write_record(["prompt_id", "item_total_r", "matchups_used"])
        .map_err(|e| write_failed(&path, e))?;
    for v in &validity {
        if matches!(v.item_total_r, Some(r) if r < threshold) {
            w.write_record([
                v.prompt_id.as_str(),
                &fmt_opt(v.item_total_r),
                &v.matchups_used.to_string(),
            ])
            .map_err(|e| write_failed(&path, e))?;
        }
    }
    finish_csv(w, &path)
}

fn write_matrix(out: &Path, dataset: &str, multi: bool, all: &[MatchupCounts]) -> Result<()> {
    let matrix = matchup_matrix(all, &win_count_ranking(all))?;
    let path = out.join(outname("matrix", "json", dataset, multi));
    let file = File::create(&path).map_err(|e| write_failed(&path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), &matrix).map_err(|e| write_failed(&path, e))
}

// ---------------------------------------------------------------------
// subcommands

fn cmd_aggregate(votes_path: &Path, out: &Path) -> Result<()> {
    let votes = load_votes(votes_path)?;
    let all = corpus::aggregate(&votes);
    ensure_dir(out)?;
    write_counts(out, &all)?;
    write_manifest(out, "aggregate", &[votes_path], BTreeMap::new())
}

fn cmd_score(votes_path: &Path, out: &Path) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    let mut everything = Vec::new();
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        write_win_counts(out, dataset, multi, &all)?;
        everything.extend(all);
    }
    write_scores(out, &everything)?;
    write_manifest(out, "score", &[votes_path], BTreeMap::new())
}

fn cmd_rank(votes_path: &Path, out: &Path, method: Method, seed: u64, passes: usize) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        match method {
            Method::Bt => {
                let fit = fit_bradley_terry_default(&all)?;
                let name = outname("rankings_bt", "csv", dataset, multi);
                write_ranking(out, &name, &bt_ranking(&fit)?)?;
            }
            Method::Trueskill => {
                let cfg = TrueSkillConfig {
                    passes,
                    shuffle_seed: seed,
                    ..TrueSkillConfig::default()
                };
                let ratings = trueskill_rate(votes, &cfg)?;
                let name = outname("rankings_trueskill", "csv", dataset, multi);
                write_ranking(out, &name, &trueskill_ranking(&ratings)?)?;
            }
            Method::Wincount => {
                let name = outname("rankings_wincount", "csv", dataset, multi);
                write_wincount_ranking(out, &name, &all)?;
            }
        }
    }
    let method_name = match method {
        Method::Bt => "bt",
        Method::Trueskill => "trueskill",
        Method::Wincount => "wincount",
    };
    write_manifest(
        out,
        "rank",
        &[votes_path],
        BTreeMap::from([
            ("method", method_name.to_string()),
            ("seed", seed.to_string()),
            ("passes", passes.to_string()),
        ]),
    )
}

fn cmd_significance(
    votes_path: &Path,
    out: &Path,
    samples: usize,
    unit: ResampleUnit,
    seed: u64,
) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        write_significance(out, dataset, multi, &all, samples, unit, seed)?;
    }
    write_manifest(
        out,
        "significance",
        &[votes_path],
        BTreeMap::from([
            ("samples", samples.to_string()),
            ("unit", unit.to_string()),
            ("seed", seed.to_string()),
        ]),
    )
}

fn cmd_agreement(votes_path: &Path, out: &Path, seed: u64) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        let rows = write_agreement(out, dataset, multi, &all, seed)?;
        write_agreement_correlation(out, dataset, multi, &rows)?;
    }
    write_manifest(
        out,
        "agreement",
        &[votes_path],
        BTreeMap::from([("seed", seed.to_string())]),
    )
}

fn cmd_annotators(votes_path: &Path, out: &Path, min_support: usize) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let profiles = annotator_profiles(&votes, min_support);
    write_annotators(out, &profiles)?;
    write_manifest(
        out,
        "annotators",
        &[votes_path],
        BTreeMap::from([("min_support", min_support.to_string())]),
    )
}

fn cmd_validity(votes_path: &Path, out: &Path, threshold: f64) -> Result<()> {
    let votes = load_votes(votes_path)?;
    ensure_dir(out)?;
    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        write_validity(out, dataset, multi, &all, threshold)?;
    }
    write_manifest(
        out,
        "validity",
        &[votes_path],
        BTreeMap::from([("validity_threshold", fmt(threshold))]),
    )
}

fn load_response_sets(
    paths: &[PathBuf],
    prompts_path: Option<&Path>,
) -> Result<Vec<crate::corpus::ResponseSet>> {
    let prompt_set = match prompts_path {
        Some(p) => {
            let dataset = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "prompts".to_string());
            Some(corpus::parse_prompts(open(p)?, dataset)?)
        }
        None => None,
    };
    let mut sets = Vec::with_capacity(paths.len());
    for path in paths {
        let system = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let dataset = prompt_set
            .as_ref()
            .map(|p| p.dataset_id.clone())
            .unwrap_or_default();
        let set = corpus::parse_responses(open(path)?, system, dataset)?;
        if let Some(prompts) = &prompt_set {
            set.validate_against(prompts)?;
        }
        sets.push(set);
    }
    sets.sort_by(|a, b| a.system_id.cmp(&b.system_id));
    Ok(sets)
}

fn write_diversity(out: &Path, sets: &[crate::corpus::ResponseSet]) -> Result<()> {
    let path = out.join("diversity.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["system", "distinct_1", "distinct_2", "avg_tokens"])
        .map_err(|e| write_failed(&path, e))?;
    for set in sets {
        let stats = diversity_stats(set)?;
        w.write_record([
            stats.system_id.as_str(),
            &fmt(stats.distinct_1),
            &fmt(stats.distinct_2),
            &fmt(stats.avg_tokens),
        ])
        .map_err(|e| write_failed(&path, e))?;
    }
    finish_csv(w, &path)
}

fn cmd_diversity(responses: &[PathBuf], prompts: Option<&Path>, out: &Path) -> Result<()> {
    let sets = load_response_sets(responses, prompts)?;
    ensure_dir(out)?;
    write_diversity(out, &sets)?;
    let mut inputs: Vec<&Path> = responses.iter().map(PathBuf::as_path).collect();
    if let Some(p) = prompts {
        inputs.push(p);
    }
    write_manifest(out, "diversity", &inputs, BTreeMap::new())
}

fn cmd_simulate(config_path: &Path, out: &Path) -> Result<()> {
    let cfg: SynthConfig = serde_json::from_reader(open(config_path)?)
        .map_err(|e| read_failed(config_path, e))?;
    let votes = generate(&cfg)?;
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| write_failed(parent, e))?;
        }
    }
    let file = File::create(out).map_err(|e| write_failed(out, e))?;
    corpus::write_votes_jsonl(BufWriter::new(file), &votes)?;
    eprintln!("wrote {} votes to {}", votes.len(), out.display());
    Ok(())
}

struct ReportArgs {
    votes: PathBuf,
    responses: Vec<PathBuf>,
    prompts: Option<PathBuf>,
    out: PathBuf,
    seed: u64,
    samples: usize,
    unit: ResampleUnit,
    passes: usize,
    min_support: usize,
    validity_threshold: f64,
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let votes = load_votes(&args.votes)?;
    let out = args.out.as_path();
    ensure_dir(out)?;

    let mut summary = String::new();
    let duplicates = corpus::count_duplicate_judgments(&votes);
    summary.push_str(&format!("votes: {}\n", votes.len()));
    summary.push_str(&format!("duplicate judgments: {duplicates}\n"));

    let groups = by_dataset(votes);
    let multi = groups.len() > 1;
    summary.push_str(&format!(
        "datasets: {}\n",
        groups.keys().cloned().collect::<Vec<_>>().join(", ")
    ));

    let mut everything = Vec::new();
    for (dataset, votes) in &groups {
        let all = corpus::aggregate(votes);
        summary.push_str(&format!("\n[{dataset}]\n"));
        summary.push_str(&format!("matchups: {}\n", all.len()));

        write_win_counts(out, dataset, multi, &all)?;
        write_wincount_ranking(out, &outname("rankings_wincount", "csv", dataset, multi), &all)?;
        let wc = win_count_ranking(&all);
        if let Some(top) = wc.entries.first() {
            summary.push_str(&format!(
                "win-count leader: {} ({} of {} matchups)\n",
                top.system_id, top.win_count, top.total_matchups
            ));
        }

        // model-based rankings; degenerate data (an undefeated system, a
        // split comparison graph) skips the method rather than killing
        // the whole report
        match fit_bradley_terry_default(&all) {
            Ok(fit) => {
                let ranking = bt_ranking(&fit)?;
                write_ranking(out, &outname("rankings_bt", "csv", dataset, multi), &ranking)?;
                let mean_se = fit.std_errors.values().sum::<f64>()
                    / fit.std_errors.len() as f64;
                summary.push_str(&format!(
                    "bt top: {}; mean log-ability standard error: {:.4}\n",
                    top_three(&ranking),
                    mean_se
                ));
            }
            Err(e) => {
                eprintln!("note: dataset {dataset}: skipping bt ranking: {e}");
                summary.push_str(&format!("bt ranking skipped: {e}\n"));
            }
        }
        let ts_cfg = TrueSkillConfig {
            passes: args.passes,
            shuffle_seed: args.seed,
            ..TrueSkillConfig::default()
        };
        match trueskill_rate(votes, &ts_cfg) {
            Ok(ratings) => {
                let ranking = trueskill_ranking(&ratings)?;
                write_ranking(
                    out,
                    &outname("rankings_trueskill", "csv", dataset, multi),
                    &ranking,
                )?;
                let mean_sigma =
                    ratings.values().map(|r| r.sigma).sum::<f64>() / ratings.len() as f64;
                summary.push_str(&format!(
                    "trueskill top: {}; mean sigma: {:.4}\n",
                    top_three(&ranking),
                    mean_sigma
                ));
            }
            Err(e) => {
                eprintln!("note: dataset {dataset}: skipping trueskill ranking: {e}");
                summary.push_str(&format!("trueskill ranking skipped: {e}\n"));
            }
        }

        let p_values =
            write_significance(out, dataset, multi, &all, args.samples, args.unit, args.seed)?;
        let sig_count = p_values
            .iter()
            .filter(|p| matches!(p, Some(p) if *p < 0.05))
            .count();
        summary.push_str(&format!(
            "significant at p < 0.05: {sig_count} of {} matchups ({} unit, {} samples, seed {})\n",
            all.len(),
            args.unit,
            args.samples,
            args.seed
        ));

        let rows = write_agreement(out, dataset, multi, &all, args.seed)?;
        write_agreement_correlation(out, dataset, multi, &rows)?;

        match write_validity(out, dataset, multi, &all, args.validity_threshold) {
            Ok(()) => {}
            Err(Error::InsufficientMatchups { need, got }) => {
                eprintln!(
                    "note: dataset {dataset}: skipping validity ({got} matchups, need {need})"
                );
                summary.push_str(&format!(
                    "validity skipped: {got} matchups, need {need}\n"
                ));
            }
            Err(e) => return Err(e),
        }

        write_matrix(out, dataset, multi, &all)?;
        everything.extend(all);
    }
    write_counts(out, &everything)?;
    write_scores(out, &everything)?;

    let all_votes: Vec<VoteRecord> = groups.into_values().flatten().collect();
    let profiles = annotator_profiles(&all_votes, args.min_support);
    write_annotators(out, &profiles)?;
    let flagged = profiles.iter().filter(|p| p.flagged).count();
    summary.push_str(&format!(
        "\nannotators: {} ({} flagged, min support {})\n",
        profiles.len(),
        flagged,
        args.min_support
    ));

    if !args.responses.is_empty() {
        let sets = load_response_sets(&args.responses, args.prompts.as_deref())?;
        write_diversity(out, &sets)?;
        summary.push_str(&format!("response sets: {}\n", sets.len()));
    }

    let path = out.join("summary.txt");
    let mut file = File::create(&path).map_err(|e| write_failed(&path, e))?;
    file.write_all(summary.as_bytes())
        .map_err(|e| write_failed(&path, e))?;

    let mut inputs: Vec<&Path> = vec![args.votes.as_path()];
    inputs.extend(args.responses.iter().map(PathBuf::as_path));
    if let Some(p) = &args.prompts {
        inputs.push(p.as_path());
    }
    write_manifest(
        out,
        "report",
        &inputs,
        BTreeMap::from([
            ("seed", args.seed.to_string()),
            ("samples", args.samples.to_string()),
            ("unit", args.unit.to_string()),
            ("passes", args.passes.to_string()),
            ("min_support", args.min_support.to_string()),
            ("validity_threshold", fmt(args.validity_threshold)),
        ]),
    )
}

fn top_three(ranking: &[RankedSystem]) -> String {
    ranking
        .iter()
        .take(3)
        .map(|r| r.system_id.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}
