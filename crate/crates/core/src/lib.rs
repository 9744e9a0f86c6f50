//! Analytics for pairwise A/B/tie human evaluation of dialog systems.
//!
//! The crate takes raw votes (annotator X preferred system A over system
//! B on prompt P, or called it a tie) and produces everything needed to
//! compare systems and audit the evaluation itself:
//!
//! - [`corpus`]: vote/prompt/response parsing, canonical pair
//!   orientation, aggregation into per-matchup counts.
//! - [`scores`]: win fractions with and without ties, win-count
//!   rankings, score matrices.
//! - [`rank`]: Bradley-Terry maximum-likelihood abilities with standard
//!   errors, and two-player TrueSkill ratings.
//! - [`significance`]: bootstrap tests of each matchup's margin.
//! - [`agreement`]: weak-agreement categories, Fleiss'/Cohen's kappa,
//!   annotator quality profiles, agreement-vs-score correlations.
//! - [`validity`]: per-prompt item-total correlations.
//! - [`diversity`]: distinct-n and response-length statistics.
//! - [`synth`]: a ground-truth tournament generator for end-to-end
//!   validation of the fitters.
//!
//! Everything randomized takes an explicit seed and is deterministic
//! given one; nothing reads ambient state.

pub mod agreement;
pub mod cli;
pub mod corpus;
pub mod diversity;
pub mod error;
pub mod rank;
pub mod scores;
pub mod significance;
pub mod stats;
pub mod synth;
pub mod validity;

pub use corpus::{aggregate, Choice, MatchupCounts, PromptSet, ResponseSet, VoteRecord};
pub use error::{Error, Result};
