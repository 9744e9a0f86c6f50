//! Shared fixtures for the integration suites: five dialog-benchmark
//! A/B test tables (vote percentages, per-prompt agreement counts, and
//! the p-value each campaign reported), plus helpers expanding them
//! into the library's input types.
//!
//! Four campaigns judged 200 prompts per matchup and the movie-dialog
//! campaign judged 1000, three votes per prompt, so percentage columns
//! convert to exact vote counts. The agreement columns count prompts;
//! two rows ship without an all_dis cell.

#![allow(dead_code)]

use abjudge::corpus::{Choice, MatchupCounts, VoteRecord};

/// One table row in its listed orientation: percentages of votes for
/// system A, for system B, and for neither, then the prompt-level
/// agreement counts and the campaign's reported bootstrap p-value.
pub struct BenchRow {
    pub system_a: &'static str,
    pub system_b: &'static str,
    pub win_pct: usize,
    pub loss_pct: usize,
    pub tie_pct: usize,
    pub all_agree: usize,
    pub ab_dis: usize,
    pub one_dis: usize,
    pub all_dis: Option<usize>,
    pub reported_p: f64,
}

impl BenchRow {
    #[allow(clippy::too_many_arguments)]
    const fn new(
        system_a: &'static str,
        system_b: &'static str,
        win_pct: usize,
        loss_pct: usize,
        tie_pct: usize,
        all_agree: usize,
        ab_dis: usize,
        one_dis: usize,
        all_dis: Option<usize>,
        reported_p: f64,
    ) -> BenchRow {
        BenchRow {
            system_a,
            system_b,
            win_pct,
            loss_pct,
            tie_pct,
            all_agree,
            ab_dis,
            one_dis,
            all_dis,
            reported_p,
        }
    }

    /// Vote counts for this row at the benchmark's scale, keeping the
    /// listed orientation (wins belong to `system_a`).
    pub fn counts(&self, bench: &Benchmark) -> MatchupCounts {
        let per_pct = bench.votes_per_matchup() / 100;
        MatchupCounts::from_counts(
            bench.dataset_id,
            self.system_a,
            self.system_b,
            self.win_pct * per_pct,
            self.loss_pct * per_pct,
            self.tie_pct * per_pct,
        )
    }
}

pub struct Benchmark {
    pub dataset_id: &'static str,
    pub prompts: usize,
    pub rows: &'static [BenchRow],
}

impl Benchmark {
    pub fn votes_per_matchup(&self) -> usize {
        self.prompts * 3
    }

    /// All rows as count-level matchups in table orientation.
    pub fn matchup_counts(&self) -> Vec<MatchupCounts> {
        self.rows.iter().map(|r| r.counts(self)).collect()
    }

    /// Expands every row into per-vote records: three votes per prompt,
    /// dealt as a block of A votes, then B votes, then ties. Rounded
    /// percentage columns can sum to 99 or 101, so a row's vote total
    /// may differ from the nominal matchup size by one prompt's worth.
    pub fn expand_votes(&self) -> Vec<VoteRecord> {
        let per_pct = self.votes_per_matchup() / 100;
        let mut votes = Vec::new();
        for row in self.rows {
            let spread = [
                (Choice::A, row.win_pct * per_pct),
                (Choice::B, row.loss_pct * per_pct),
                (Choice::Tie, row.tie_pct * per_pct),
            ];
            let mut slot = 0usize;
            for (choice, n) in spread {
                for _ in 0..n {
                    votes.push(
                        VoteRecord::new(
                            self.dataset_id,
                            format!("p{:04}", slot / 3),
                            format!("w{}", slot % 3),
                            row.system_a,
                            row.system_b,
                            choice,
                            None,
                        )
                        .expect("fixture rows never compare a system to itself"),
                    );
                    slot += 1;
                }
            }
        }
        votes
    }
}

pub fn ncme() -> Benchmark {
    Benchmark {
        dataset_id: "ncme",
        prompts: 200,
        rows: NCME,
    }
}

pub fn dbdc() -> Benchmark {
    Benchmark {
        dataset_id: "dbdc",
        prompts: 200,
        rows: DBDC,
    }
}

pub fn twitter() -> Benchmark {
    Benchmark {
        dataset_id: "twitter",
        prompts: 200,
        rows: TWITTER,
    }
}

pub fn cornell() -> Benchmark {
    Benchmark {
        dataset_id: "cornell",
        prompts: 1000,
        rows: CORNELL,
    }
}

pub fn esl() -> Benchmark {
    Benchmark {
        dataset_id: "esl",
        prompts: 200,
        rows: ESL,
    }
}

pub fn all_benchmarks() -> Vec<Benchmark> {
    vec![ncme(), dbdc(), twitter(), cornell(), esl()]
}

const NCME: &[BenchRow] = &[
    BenchRow::new("NCME human 1", "Blender(2.7B)", 30, 40, 30, 29, 51, 130, Some(41), 0.00),
    BenchRow::new("NCME human 1", "DialoGPT", 46, 41, 13, 3, 99, 147, Some(22), 0.07),
    BenchRow::new("NCME human 1", "Transformer", 63, 21, 16, 86, 48, 99, Some(15), 0.00),
    BenchRow::new("NCME human 1", "ParlAI(Controllable)", 70, 10, 20, 103, 25, 85, Some(11), 0.00),
    BenchRow::new("NCME human 1", "CakeChat", 61, 19, 20, 87, 45, 90, Some(23), 0.00),
    BenchRow::new("NCME human 1", "OpenNMT(OS)", 53, 21, 26, 78, 38, 98, Some(18), 0.00),
    BenchRow::new("NCME human 1", "OpenNMT(Twitter)", 74, 14, 12, 100, 34, 82, Some(17), 0.00),
    BenchRow::new("NCME human 1", "ConvAI2(seq2seq)", 70, 23, 7, 77, 82, 110, Some(13), 0.00),
    BenchRow::new("NCME human 2", "Blender(2.7B)", 34, 36, 30, 24, 52, 128, Some(48), 0.27),
    BenchRow::new("NCME human 2", "DialoGPT", 33, 31, 36, 2, 24, 197, None, 0.13),
    BenchRow::new("NCME human 2", "Transformer", 35, 29, 36, 20, 36, 128, Some(52), 0.02),
    BenchRow::new("NCME human 2", "ParlAI(Controllable)", 39, 32, 29, 16, 62, 137, Some(47), 0.01),
    BenchRow::new("NCME human 2", "CakeChat", 41, 33, 26, 25, 56, 123, Some(52), 0.01),
    BenchRow::new("NCME human 2", "OpenNMT(OS)", 46, 29, 25, 28, 63, 136, Some(32), 0.00),
    BenchRow::new("NCME human 2", "OpenNMT(Twitter)", 45, 31, 24, 28, 61, 141, Some(31), 0.00),
    BenchRow::new("NCME human 2", "ConvAI2(seq2seq)", 44, 33, 23, 35, 56, 124, Some(41), 0.00),
    BenchRow::new("Blender(2.7B)", "DialoGPT", 40, 36, 24, 25, 66, 141, Some(34), 0.16),
    BenchRow::new("Blender(2.7B)", "Transformer", 39, 35, 26, 18, 57, 136, Some(46), 0.11),
    BenchRow::new("Blender(2.7B)", "ParlAI(Controllable)", 39, 36, 25, 30, 65, 141, Some(29), 0.21),
    BenchRow::new("Blender(2.7B)", "CakeChat", 32, 28, 40, 23, 30, 122, Some(55), 0.06),
    BenchRow::new("Blender(2.7B)", "OpenNMT(OS)", 33, 30, 37, 19, 34, 142, Some(39), 0.19),
    BenchRow::new("Blender(2.7B)", "OpenNMT(Twitter)", 39, 32, 29, 27, 52, 134, Some(39), 0.04),
    BenchRow::new("Blender(2.7B)", "ConvAI2(seq2seq)", 35, 37, 28, 23, 61, 127, Some(50), 0.35),
    BenchRow::new("DialoGPT", "Transformer", 55, 29, 16, 53, 75, 122, Some(25), 0.00),
    BenchRow::new("DialoGPT", "ParlAI(Controllable)", 58, 18, 24, 73, 33, 100, Some(27), 0.00),
    BenchRow::new("DialoGPT", "CakeChat", 49, 33, 18, 36, 75, 130, Some(34), 0.00),
    BenchRow::new("DialoGPT", "OpenNMT(OS)", 47, 28, 25, 45, 47, 112, Some(40), 0.00),
    BenchRow::new("DialoGPT", "OpenNMT(Twitter)", 70, 14, 16, 102, 34, 87, Some(11), 0.00),
    BenchRow::new("DialoGPT", "ConvAI2(seq2seq)", 72, 19, 9, 89, 68, 96, Some(15), 0.00),
    BenchRow::new("Transformer", "ParlAI(Controllable)", 40, 35, 25, 40, 57, 125, Some(35), 0.07),
    BenchRow::new("Transformer", "CakeChat", 37, 36, 27, 44, 45, 123, Some(33), 0.39),
    BenchRow::new("Transformer", "OpenNMT(OS)", 38, 41, 21, 51, 58, 122, Some(27), 0.11),
    BenchRow::new("Transformer", "OpenNMT(Twitter)", 41, 31, 28, 44, 49, 129, Some(27), 0.00),
    BenchRow::new("Transformer", "ConvAI2(seq2seq)", 45, 27, 28, 32, 51, 134, Some(34), 0.00),
    BenchRow::new("ParlAI(Controllable)", "CakeChat", 35, 40, 25, 47, 53, 123, Some(30), 0.08),
    BenchRow::new("ParlAI(Controllable)", "OpenNMT(OS)", 31, 50, 19, 54, 68, 115, Some(31), 0.00),
    BenchRow::new("ParlAI(Controllable)", "OpenNMT(Twitter)", 42, 38, 20, 43, 65, 130, Some(27), 0.14),
    BenchRow::new("ParlAI(Controllable)", "ConvAI2(seq2seq)", 39, 30, 31, 43, 40, 125, Some(32), 0.00),
    BenchRow::new("CakeChat", "OpenNMT(OS)", 43, 46, 11, 47, 94, 121, Some(32), 0.22),
    BenchRow::new("CakeChat", "OpenNMT(Twitter)", 46, 40, 14, 55, 42, 115, Some(30), 0.00),
    BenchRow::new("CakeChat", "ConvAI2(seq2seq)", 46, 41, 13, 5, 97, 195, None, 0.04),
    BenchRow::new("OpenNMT(OS)", "OpenNMT(Twitter)", 43, 42, 15, 29, 96, 139, Some(32), 0.36),
    BenchRow::new("OpenNMT(OS)", "ConvAI2(seq2seq)", 52, 35, 13, 52, 87, 125, Some(23), 0.00),
    BenchRow::new("OpenNMT(Twitter)", "ConvAI2(seq2seq)", 48, 37, 15, 29, 92, 140, Some(31), 0.00),
    BenchRow::new("Blender(2.7B)", "Blender(90M)", 35, 30, 35, 23, 40, 131, Some(46), 0.10),
    BenchRow::new("Blender(2.7B)", "Blender(with persona)", 44, 40, 16, 37, 80, 125, Some(27), 0.09),
];

const DBDC: &[BenchRow] = &[
    BenchRow::new("Human", "Blender(2.7B)", 37, 34, 29, 15, 61, 146, Some(39), 0.15),
    BenchRow::new("Human", "DialoGPT", 42, 46, 12, 41, 95, 139, Some(20), 0.18),
    BenchRow::new("Human", "Transformer", 54, 36, 10, 48, 96, 127, Some(25), 0.00),
    BenchRow::new("Human", "ParlAI(Controllable)", 50, 37, 13, 44, 94, 132, Some(24), 0.00),
    BenchRow::new("Human", "OpenNMT(OS)", 51, 34, 15, 33, 93, 130, Some(35), 0.00),
    BenchRow::new("Blender(2.7B)", "DialoGPT", 29, 30, 41, 25, 37, 137, Some(38), 0.41),
    BenchRow::new("Blender(2.7B)", "Transformer", 31, 30, 39, 27, 29, 130, Some(43), 0.47),
    BenchRow::new("Blender(2.7B)", "ParlAI(Controllable)", 31, 30, 39, 28, 34, 130, Some(42), 0.35),
    BenchRow::new("Blender(2.7B)", "OpenNMT(OS)", 31, 27, 42, 21, 30, 144, Some(35), 0.09),
    BenchRow::new("DialoGPT", "Transformer", 46, 35, 19, 33, 78, 133, Some(33), 0.00),
    BenchRow::new("DialoGPT", "ParlAI(Controllable)", 51, 35, 14, 32, 93, 134, Some(34), 0.36),
    BenchRow::new("DialoGPT", "OpenNMT(OS)", 47, 31, 22, 33, 71, 140, Some(27), 0.09),
    BenchRow::new("Transformer", "ParlAI(Controllable)", 40, 41, 19, 27, 78, 142, Some(31), 0.46),
    BenchRow::new("Transformer", "OpenNMT(OS)", 39, 39, 22, 34, 64, 130, Some(36), 0.40),
    BenchRow::new("ParlAI(Controllable)", "OpenNMT(OS)", 41, 37, 22, 29, 62, 131, Some(40), 0.14),
];

const TWITTER: &[BenchRow] = &[
    BenchRow::new("Twitter Baseline", "Blender(2.7B)", 30, 33, 38, 19, 40, 138, Some(43), 0.16),
    BenchRow::new("Twitter Baseline", "DialoGPT", 32, 41, 27, 22, 56, 138, Some(40), 0.00),
    BenchRow::new("Twitter Baseline", "Transformer", 38, 37, 25, 30, 61, 129, Some(41), 0.41),
    BenchRow::new("Twitter Baseline", "ParlAI(Controllable)", 35, 33, 32, 23, 49, 133, Some(44), 0.28),
    BenchRow::new("Twitter Baseline", "ConvAI2(seq2seq)", 36, 36, 28, 26, 55, 124, Some(50), 0.46),
    BenchRow::new("Blender(2.7B)", "DialoGPT", 32, 32, 36, 24, 41, 139, Some(37), 0.47),
    BenchRow::new("Blender(2.7B)", "Transformer", 34, 35, 31, 23, 49, 133, Some(44), 0.40),
    BenchRow::new("Blender(2.7B)", "ParlAI(Controllable)", 28, 33, 39, 28, 33, 131, Some(41), 0.06),
    BenchRow::new("Blender(2.7B)", "ConvAI2(seq2seq)", 30, 29, 41, 20, 33, 133, Some(47), 0.45),
    BenchRow::new("DialoGPT", "Transformer", 36, 32, 32, 26, 50, 130, Some(44), 0.07),
    BenchRow::new("DialoGPT", "ParlAI(Controllable)", 36, 36, 28, 18, 56, 147, Some(35), 0.48),
    BenchRow::new("DialoGPT", "ConvAI2(seq2seq)", 38, 28, 34, 27, 47, 137, Some(36), 0.00),
    BenchRow::new("Transformer", "ParlAI(Controllable)", 33, 35, 32, 26, 42, 126, Some(48), 0.27),
    BenchRow::new("Transformer", "ConvAI2(seq2seq)", 39, 25, 36, 24, 29, 128, Some(48), 0.00),
    BenchRow::new("ParlAI(Controllable)", "ConvAI2(seq2seq)", 41, 29, 30, 27, 46, 136, Some(37), 0.00),
];

const CORNELL: &[BenchRow] = &[
    BenchRow::new("CornellMovie DC Baseline", "Blender(2.7B)", 40, 41, 19, 147, 396, 675, Some(178), 0.32),
    BenchRow::new("CornellMovie DC Baseline", "DialoGPT", 39, 39, 22, 142, 345, 646, Some(194), 0.38),
    BenchRow::new("CornellMovie DC Baseline", "DC-NeuralConv", 41, 40, 19, 119, 411, 687, Some(212), 0.06),
    BenchRow::new("CornellMovie DC Baseline", "ParlAI(Controllable)", 42, 40, 18, 133, 416, 683, Some(184), 0.03),
    BenchRow::new("Blender(2.7B)", "DialoGPT", 36, 38, 26, 124, 290, 652, Some(224), 0.18),
    BenchRow::new("Blender(2.7B)", "DC-NeuralConv", 43, 33, 24, 144, 300, 647, Some(209), 0.00),
    BenchRow::new("Blender(2.7B)", "ParlAI(Controllable)", 39, 37, 24, 132, 315, 655, Some(213), 0.08),
    BenchRow::new("DialoGPT", "DC-NeuralConv", 38, 36, 26, 109, 292, 673, Some(218), 0.01),
    BenchRow::new("DialoGPT", "ParlAI(Controllable)", 40, 38, 22, 210, 343, 687, Some(193), 0.12),
    BenchRow::new("DC-NeuralConv", "ParlAI(Controllable)", 39, 35, 26, 122, 292, 670, Some(208), 0.01),
];

const ESL: &[BenchRow] = &[
    BenchRow::new("Human", "Blender(2.7B)", 38, 21, 41, 36, 21, 122, Some(42), 0.00),
    BenchRow::new("Human", "DialoGPT", 58, 18, 24, 42, 50, 127, Some(31), 0.00),
    BenchRow::new("Human", "CakeChat", 60, 18, 22, 50, 60, 125, Some(25), 0.00),
    BenchRow::new("Human", "ParlAI(Controllable)", 55, 17, 28, 47, 39, 125, Some(25), 0.00),
    BenchRow::new("Human", "ConvAI2(KV-MemNN)", 66, 13, 21, 63, 38, 109, Some(28), 0.00),
    BenchRow::new("Human", "ConvAI2(seq2seq)", 66, 11, 23, 62, 38, 121, Some(17), 0.00),
    BenchRow::new("Blender(2.7B)", "BlenderPersona", 50, 17, 33, 61, 24, 115, Some(20), 0.00),
    BenchRow::new("Blender(2.7B)", "DialoGPT", 79, 10, 11, 120, 31, 70, Some(10), 0.00),
    BenchRow::new("Blender(2.7B)", "CakeChat", 60, 11, 29, 85, 26, 99, Some(16), 0.00),
    BenchRow::new("Blender(2.7B)", "ParlAI(Controllable)", 56, 16, 28, 61, 20, 113, Some(26), 0.00),
    BenchRow::new("Blender(2.7B)", "ConvAI2(KV-MemNN)", 64, 10, 26, 71, 27, 113, Some(16), 0.00),
    BenchRow::new("Blender(2.7B)", "ConvAI2(seq2seq)", 60, 5, 35, 74, 11, 121, Some(5), 0.00),
    BenchRow::new("DialoGPT", "ConvAI2(KV-MemNN)", 25, 16, 59, 53, 10, 132, Some(15), 0.00),
    BenchRow::new("DialoGPT", "ConvAI2(seq2seq)", 33, 24, 43, 47, 20, 133, Some(20), 0.00),
    BenchRow::new("DialoGPT", "ParlAI(Controllable)", 18, 25, 57, 67, 5, 115, Some(36), 0.01),
    BenchRow::new("DialoGPT", "CakeChat", 29, 22, 49, 49, 13, 128, Some(23), 0.01),
    BenchRow::new("CakeChat", "ParlAI(Controllable)", 28, 46, 26, 53, 48, 123, Some(24), 0.00),
    BenchRow::new("CakeChat", "ConvAI2(KV-MemNN)", 35, 25, 40, 34, 26, 137, Some(29), 0.00),
    BenchRow::new("CakeChat", "ConvAI2(seq2seq)", 35, 30, 35, 37, 33, 130, Some(33), 0.07),
    BenchRow::new("ParlAI(Controllable)", "ConvAI2(KV-MemNN)", 48, 17, 35, 27, 46, 136, Some(37), 0.00),
    BenchRow::new("ParlAI(Controllable)", "ConvAI2(seq2seq)", 38, 20, 42, 33, 20, 134, Some(32), 0.00),
    BenchRow::new("ConvAI2(KV-MemNN)", "ConvAI2(seq2seq)", 23, 32, 45, 36, 25, 132, Some(32), 0.00),
];
