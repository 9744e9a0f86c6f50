//! Matchup scores and the win-count ranking.
//!
//! Two score families per matchup, both from the A side's perspective:
//! the major score `win / (win + loss)` ignores ties, and the distinct
//! score `win / (win + loss + tie)` penalizes them, with `distinct_tie`
//! carrying the tie share. Scores with a zero denominator are undefined
//! and stay `None`; treating them as 0 would corrupt rankings.
//!
//! A system's win count is the number of matchups it wins by strict
//! majority (major score > 0.5). Matchups at exactly 0.5, or with no
//! decisive votes, count for neither side.

use serde::Serialize;

use crate::corpus::MatchupCounts;
use crate::error::{Error, Result};

/// Major and distinct scores for one matchup, A side's perspective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScorePair {
    pub major_win: Option<f64>,
    pub major_loss: Option<f64>,
    pub distinct_win: Option<f64>,
    pub distinct_loss: Option<f64>,
    pub distinct_tie: Option<f64>,
}

/// Computes both score families for a matchup.
pub fn score_pair(counts: &MatchupCounts) -> ScorePair {
    let decisive = counts.decisive() as f64;
    let total = counts.total() as f64;
    let (major_win, major_loss) = if counts.decisive() > 0 {
        (
            Some(counts.win as f64 / decisive),
            Some(counts.loss as f64 / decisive),
        )
    } else {
        (None, None)
    };
    let (distinct_win, distinct_loss, distinct_tie) = if counts.total() > 0 {
        (
            Some(counts.win as f64 / total),
            Some(counts.loss as f64 / total),
            Some(counts.tie as f64 / total),
        )
    } else {
        (None, None, None)
    };
    ScorePair {
        major_win,
        major_loss,
        distinct_win,
        distinct_loss,
        distinct_tie,
    }
}

/// One system's row in the win-count (frequency) ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinCountEntry {
    pub system_id: String,
    pub win_count: usize,
    pub total_matchups: usize,
    /// Mean of the system's defined major-win scores across its matchups;
    /// `None` if it has no decisive matchup at all.
    pub mean_major_win: Option<f64>,
}

/// Systems ordered by win count, then mean major win, then id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinCountRanking {
    pub entries: Vec<WinCountEntry>,
}

impl WinCountRanking {
    pub fn systems(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.system_id.as_str())
    }

    pub fn position(&self, system_id: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.system_id == system_id)
    }
}

/// Ranks systems by how many matchups they win by strict majority.
/// Counts are expected to come from a single dataset; callers analyzing
/// several datasets rank each one separately.
pub fn win_count_ranking(all_counts: &[MatchupCounts]) -> WinCountRanking {
    use std::collections::BTreeMap;

    #[derive(Default)]
    struct Acc {
        wins: usize,
        matchups: usize,
        major_sum: f64,
        major_n: usize,
    }

    let mut acc: BTreeMap<&str, Acc> = BTreeMap::new();
    for m in all_counts {
        let s = score_pair(m);
        let a = acc.entry(&m.system_a).or_default();
        a.matchups += 1;
        if let Some(mw) = s.major_win {
            a.major_sum += mw;
            a.major_n += 1;
            if mw > 0.5 {
                a.wins += 1;
            }
        }
        let b = acc.entry(&m.system_b).or_default();
        b.matchups += 1;
        if let Some(ml) = s.major_loss {
            b.major_sum += ml;
            b.major_n += 1;
            if ml > 0.5 {
                b.wins += 1;
            }
        }
    }

    let mut entries: Vec<WinCountEntry> = acc
        .into_iter()
        .map(|(id, a)| WinCountEntry {
            system_id: id.to_string(),
            win_count: a.wins,
            total_matchups: a.matchups,
            mean_major_win: (a.major_n > 0).then(|| a.major_sum / a.major_n as f64),
        })
        .collect();
    entries.sort_by(|x, y| {
        y.win_count
            .cmp(&x.win_count)
            .then_with(|| {
                let mx = x.mean_major_win.unwrap_or(f64::NEG_INFINITY);
                let my = y.mean_major_win.unwrap_or(f64::NEG_INFINITY);
                my.total_cmp(&mx)
            })
            .then_with(|| x.system_id.cmp(&y.system_id))
    });
    WinCountRanking { entries }
}

/// Pairwise score matrix in a fixed system order, ready for heatmap
/// plotting. Cell (i, j) holds row system i's score against column system
/// j; the diagonal and missing matchups are `None` (absence, not zero).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchupMatrix {
    pub systems: Vec<String>,
    pub distinct: Vec<Vec<Option<f64>>>,
    pub major: Vec<Vec<Option<f64>>>,
}

/// Lays the matchup scores out as matrices in the ranking's system order.
pub fn matchup_matrix(
    all_counts: &[MatchupCounts],
    ordering: &WinCountRanking,
) -> Result<MatchupMatrix> {
    let systems: Vec<String> = ordering.systems().map(str::to_string).collect();
    let index = |id: &str| -> Result<usize> {
        ordering.position(id).ok_or_else(|| {
            Error::InvalidConfig(format!("ranking does not cover system {id:?}"))
        })
    };
    let n = systems.len();
    let mut distinct = vec![vec![None; n]; n];
    let mut major = vec![vec![None; n]; n];
    for m in all_counts {
        let (i, j) = (index(&m.system_a)?, index(&m.system_b)?);
        let s = score_pair(m);
        distinct[i][j] = s.distinct_win;
        distinct[j][i] = s.distinct_loss;
        major[i][j] = s.major_win;
        major[j][i] = s.major_loss;
    }
    Ok(MatchupMatrix {
        systems,
        distinct,
        major,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::MatchupCounts;
    use approx::assert_relative_eq;

    fn counts(a: &str, b: &str, w: usize, l: usize, t: usize) -> MatchupCounts {
        MatchupCounts::from_counts("d", a, b, w, l, t)
    }

    #[test]
    fn score_pair_reproduces_30_40_30_split() {
        let s = score_pair(&counts("h1", "blender", 180, 240, 180));
        assert_relative_eq!(s.major_win.unwrap(), 180.0 / 420.0, epsilon = 1e-12);
        assert_relative_eq!(s.major_win.unwrap(), 0.4286, epsilon = 1e-4);
        assert_relative_eq!(s.distinct_win.unwrap(), 0.30);
        assert_relative_eq!(s.distinct_loss.unwrap(), 0.40);
        assert_relative_eq!(s.distinct_tie.unwrap(), 0.30);
    }

    #[test]
    fn unanimous_and_degenerate_cases() {
        let s = score_pair(&counts("a", "b", 100, 0, 0));
        assert_eq!(s.major_win, Some(1.0));
        assert_eq!(s.distinct_win, Some(1.0));

        let tie_only = score_pair(&counts("a", "b", 0, 0, 50));
        assert_eq!(tie_only.major_win, None);
        assert_eq!(tie_only.major_loss, None);
        assert_eq!(tie_only.distinct_tie, Some(1.0));

        let empty = score_pair(&counts("a", "b", 0, 0, 0));
        assert_eq!(empty.distinct_win, None);
        assert_eq!(empty.distinct_tie, None);
    }

    #[test]
    fn transitive_triangle_win_counts() {
        let ranking = win_count_ranking(&[
            counts("s1", "s2", 7, 3, 0),
            counts("s1", "s3", 8, 2, 0),
            counts("s2", "s3", 6, 4, 0),
        ]);
        let order: Vec<&str> = ranking.systems().collect();
        assert_eq!(order, vec!["s1", "s2", "s3"]);
        let wins: Vec<usize> = ranking.entries.iter().map(|e| e.win_count).collect();
        assert_eq!(wins, vec![2, 1, 0]);
    }

    #[test]
    fn exact_even_split_counts_for_neither() {
        let ranking = win_count_ranking(&[counts("a", "b", 50, 50, 0)]);
        assert!(ranking.entries.iter().all(|e| e.win_count == 0));
    }

    #[test]
    fn undefined_major_counts_for_neither() {
        let ranking = win_count_ranking(&[counts("a", "b", 0, 0, 30)]);
        assert!(ranking.entries.iter().all(|e| e.win_count == 0));
        assert!(ranking.entries.iter().all(|e| e.mean_major_win.is_none()));
    }

    #[test]
    fn tie_break_uses_mean_major_win_then_id() {
        // both win once, but a's margin is larger
        let ranking = win_count_ranking(&[
            counts("a", "x", 9, 1, 0),
            counts("b", "x", 6, 4, 0),
        ]);
        let order: Vec<&str> = ranking.systems().collect();
        assert_eq!(order, vec!["a", "b", "x"]);
    }

    #[test]
    fn matrix_reads_off_scores_both_ways() {
        let all = [counts("a", "b", 60, 30, 10)];
        let ranking = win_count_ranking(&all);
        let m = matchup_matrix(&all, &ranking).unwrap();
        let (ia, ib) = (
            m.systems.iter().position(|s| s == "a").unwrap(),
            m.systems.iter().position(|s| s == "b").unwrap(),
        );
        assert_relative_eq!(m.distinct[ia][ib].unwrap(), 0.6);
        assert_relative_eq!(m.distinct[ib][ia].unwrap(), 0.3);
        assert_relative_eq!(m.major[ia][ib].unwrap(), 2.0 / 3.0);
        assert_eq!(m.distinct[ia][ia], None);
    }

    #[test]
    fn missing_pairs_stay_absent() {
        let all = [counts("a", "b", 5, 5, 0), counts("b", "c", 5, 5, 0)];
        let ranking = win_count_ranking(&all);
        let m = matchup_matrix(&all, &ranking).unwrap();
        let (ia, ic) = (
            m.systems.iter().position(|s| s == "a").unwrap(),
            m.systems.iter().position(|s| s == "c").unwrap(),
        );
        assert_eq!(m.distinct[ia][ic], None);
        assert_eq!(m.major[ic][ia], None);
    }

    #[test]
    fn matrix_requires_full_ordering() {
        let all = [counts("a", "b", 5, 5, 0)];
        let partial = WinCountRanking {
            entries: vec![WinCountEntry {
                system_id: "a".into(),
                win_count: 0,
                total_matchups: 1,
                mean_major_win: Some(0.5),
            }],
        };
        assert!(matchup_matrix(&all, &partial).is_err());
    }

    #[test]
    fn row_col_tie_cells_sum_to_one() {
        let m = counts("a", "b", 37, 41, 22);
        let s = score_pair(&m);
        let sum = s.distinct_win.unwrap() + s.distinct_loss.unwrap() + s.distinct_tie.unwrap();
        assert_relative_eq!(sum, 1.0, epsilon = 1e-12);
    }
}
