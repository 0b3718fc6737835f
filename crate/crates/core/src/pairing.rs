//! Bowling pairs: maximal runs of overs alternating between two bowlers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::MatchFormat;
use crate::overmodel::{MetricSummary, OverRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("individual threshold must be positive")]
    NonPositiveIndividual,
    #[error("pairing threshold must be at least 2, got {0}")]
    PairingTooSmall(u32),
}

/// Career-overs threshold per bowler and accumulated alternating-overs
/// threshold per pair. Both are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingConfig {
    pub t_i: u32,
    pub t_p: u32,
}

impl PairingConfig {
    pub fn new(t_i: u32, t_p: u32) -> Result<Self, PairingError> {
        if t_i == 0 {
            return Err(PairingError::NonPositiveIndividual);
        }
        if t_p < 2 {
            return Err(PairingError::PairingTooSmall(t_p));
        }
        Ok(PairingConfig { t_i, t_p })
    }

    pub fn for_format(format: MatchFormat) -> Self {
        match format {
            MatchFormat::Test | MatchFormat::Odi => PairingConfig { t_i: 300, t_p: 60 },
            MatchFormat::T20i => PairingConfig { t_i: 80, t_p: 16 },
        }
    }
}

/// One slot of an innings' over sequence. `bowler` is `None` when the over
/// was shared by several bowlers, which breaks any alternation through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverSlot {
    pub over_idx: u32,
    pub bowler: Option<String>,
    /// Index of the slot's record in the record list it was built from.
    pub record: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InningsSequence {
    pub match_id: String,
    pub innings: u32,
    pub slots: Vec<OverSlot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationRun {
    pub match_id: String,
    pub innings: u32,
    pub start_over: u32,
    pub length: u32,
    /// Sorted pair of bowler names.
    pub bowlers: (String, String),
    /// Position of the first over in the innings sequence.
    #[serde(skip)]
    pub start_slot: usize,
}

fn sorted_pair<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The unordered bowler pair linking slot `i` to slot `i + 1`, if those two
/// overs are consecutive and bowled by two different known bowlers.
fn link(slots: &[OverSlot], i: usize) -> Option<(&str, &str)> {
    let (cur, next) = (&slots[i], &slots[i + 1]);
    if next.over_idx != cur.over_idx + 1 {
        return None;
    }
    match (&cur.bowler, &next.bowler) {
        (Some(x), Some(y)) if x != y => Some(sorted_pair(x, y)),
        _ => None,
    }
}

/// Maximal alternation runs of length at least 2 between `a` and `b`.
///
/// A run is a stretch of consecutive overs whose bowlers alternate strictly
/// between the two; a gap in over numbering, a third bowler, or the same
/// bowler twice in a row ends it.
pub fn find_alternation_runs(seq: &InningsSequence, a: &str, b: &str) -> Vec<AlternationRun> {
    let target = sorted_pair(a, b);
    let mut runs = Vec::new();
    if a == b || seq.slots.len() < 2 {
        return runs;
    }
    let mut i = 0;
    while i + 1 < seq.slots.len() {
        if link(&seq.slots, i) != Some(target) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < seq.slots.len() && link(&seq.slots, i) == Some(target) {
            i += 1;
        }
        runs.push(AlternationRun {
            match_id: seq.match_id.clone(),
            innings: seq.innings,
            start_over: seq.slots[start].over_idx,
            length: (i - start + 1) as u32,
            bowlers: (target.0.to_string(), target.1.to_string()),
            start_slot: start,
        });
    }
    runs
}

/// Every maximal alternation run in the innings, for all pairs at once.
pub fn all_alternation_runs(seq: &InningsSequence) -> Vec<AlternationRun> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i + 1 < seq.slots.len() {
        let Some(pair) = link(&seq.slots, i) else {
            i += 1;
            continue;
        };
        let start = i;
        while i + 1 < seq.slots.len() && link(&seq.slots, i) == Some(pair) {
            i += 1;
        }
        runs.push(AlternationRun {
            match_id: seq.match_id.clone(),
            innings: seq.innings,
            start_over: seq.slots[start].over_idx,
            length: (i - start + 1) as u32,
            bowlers: (pair.0.to_string(), pair.1.to_string()),
            start_slot: start,
        });
        // the closing over of this run may open a run with another partner
    }
    runs
}

/// Groups records by (match, innings) in first-appearance order and orders
/// each innings by over number.
pub fn innings_sequences(records: &[OverRecord]) -> Vec<InningsSequence> {
    let mut order: Vec<(String, u32)> = Vec::new();
    let mut grouped: BTreeMap<(String, u32), Vec<usize>> = BTreeMap::new();
    for (idx, r) in records.iter().enumerate() {
        let key = (r.match_id.clone(), r.innings);
        let entry = grouped.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(idx);
    }
    order
        .into_iter()
        .map(|key| {
            let mut idxs = grouped.remove(&key).expect("grouped key");
            idxs.sort_by_key(|&i| records[i].over_idx);
            let mut slots: Vec<OverSlot> = Vec::with_capacity(idxs.len());
            for i in idxs {
                let r = &records[i];
                match slots.last_mut() {
                    Some(last) if last.over_idx == r.over_idx => {
                        last.bowler = None;
                        last.record = None;
                    }
                    _ => slots.push(OverSlot {
                        over_idx: r.over_idx,
                        bowler: Some(r.bowler.clone()),
                        record: Some(i),
                    }),
                }
            }
            InningsSequence {
                match_id: key.0,
                innings: key.1,
                slots,
            }
        })
        .collect()
}

/// Accumulated alternation overs of one unordered bowler pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BowlingPair {
    pub a: String,
    pub b: String,
    /// Team the pair bowled for (the one with most pair overs if it varies).
    pub team: String,
    pub pair_overs: u32,
    pub runs_count: u32,
    pub overs_of_a: Vec<OverRecord>,
    pub overs_of_b: Vec<OverRecord>,
}

impl BowlingPair {
    pub fn overs_of(&self, bowler: &str) -> Option<&[OverRecord]> {
        if bowler == self.a {
            Some(&self.overs_of_a)
        } else if bowler == self.b {
            Some(&self.overs_of_b)
        } else {
            None
        }
    }

    pub fn partner_of(&self, bowler: &str) -> Option<&str> {
        if bowler == self.a {
            Some(&self.b)
        } else if bowler == self.b {
            Some(&self.a)
        } else {
            None
        }
    }
}

#[derive(Default)]
struct PairAccum {
    pair_overs: u32,
    runs_count: u32,
    overs_of_a: Vec<OverRecord>,
    overs_of_b: Vec<OverRecord>,
    team_overs: BTreeMap<String, u32>,
}

/// Sums alternation runs per unordered pair over all innings of all matches.
pub fn accumulate_pairs(records: &[OverRecord]) -> Vec<BowlingPair> {
    let mut acc: BTreeMap<(String, String), PairAccum> = BTreeMap::new();
    for seq in innings_sequences(records) {
        for run in all_alternation_runs(&seq) {
            let entry = acc.entry(run.bowlers.clone()).or_default();
            entry.pair_overs += run.length;
            entry.runs_count += 1;
            for slot in &seq.slots[run.start_slot..run.start_slot + run.length as usize] {
                let rec = &records[slot.record.expect("run slots have a single bowler")];
                *entry.team_overs.entry(rec.bowling_team.clone()).or_default() += 1;
                if rec.bowler == run.bowlers.0 {
                    entry.overs_of_a.push(rec.clone());
                } else {
                    entry.overs_of_b.push(rec.clone());
                }
            }
        }
    }
    acc.into_iter()
        .map(|((a, b), p)| {
            let team = p
                .team_overs
                .iter()
                .max_by(|x, y| x.1.cmp(y.1).then_with(|| y.0.cmp(x.0)))
                .map(|(t, _)| t.clone())
                .unwrap_or_default();
            BowlingPair {
                a,
                b,
                team,
                pair_overs: p.pair_overs,
                runs_count: p.runs_count,
                overs_of_a: p.overs_of_a,
                overs_of_b: p.overs_of_b,
            }
        })
        .collect()
}

fn career_overs(summaries: &BTreeMap<String, MetricSummary>, bowler: &str) -> f64 {
    summaries.get(bowler).map_or(0.0, |s| s.n_overs)
}

/// Bowlers whose career overs reach `t_i`.
pub fn qualifying_bowlers(
    summaries: &BTreeMap<String, MetricSummary>,
    cfg: &PairingConfig,
) -> Vec<String> {
    summaries
        .iter()
        .filter(|(_, s)| s.n_overs >= f64::from(cfg.t_i))
        .map(|(b, _)| b.clone())
        .collect()
}

/// Keeps pairs where both bowlers reach `t_i` career overs and the pair
/// reaches `t_p` alternating overs.
pub fn filter_pairs(
    pairs: &[BowlingPair],
    summaries: &BTreeMap<String, MetricSummary>,
    cfg: &PairingConfig,
) -> Vec<BowlingPair> {
    let t_i = f64::from(cfg.t_i);
    pairs
        .iter()
        .filter(|p| {
            p.pair_overs >= cfg.t_p
                && career_overs(summaries, &p.a) >= t_i
                && career_overs(summaries, &p.b) >= t_i
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(bowlers: &[&str]) -> InningsSequence {
        InningsSequence {
            match_id: "m".into(),
            innings: 1,
            slots: bowlers
                .iter()
                .enumerate()
                .map(|(i, b)| OverSlot {
                    over_idx: i as u32,
                    bowler: Some(b.to_string()),
                    record: Some(i),
                })
                .collect(),
        }
    }

    fn lengths(runs: &[AlternationRun]) -> Vec<u32> {
        runs.iter().map(|r| r.length).collect()
    }

    #[test]
    fn maximal_run() {
        let s = seq(&["A", "B", "A", "B", "A", "C"]);
        assert_eq!(lengths(&find_alternation_runs(&s, "A", "B")), vec![5]);
        assert_eq!(lengths(&find_alternation_runs(&s, "B", "A")), vec![5]);
    }

    #[test]
    fn repeated_bowler_breaks_alternation() {
        let s = seq(&["A", "A", "B"]);
        let runs = find_alternation_runs(&s, "A", "B");
        assert_eq!(lengths(&runs), vec![2]);
        assert_eq!(runs[0].start_over, 1);
    }

    #[test]
    fn shared_boundary_over() {
        let s = seq(&["A", "B", "A", "C", "A"]);
        assert_eq!(lengths(&find_alternation_runs(&s, "A", "B")), vec![3]);
        assert_eq!(lengths(&find_alternation_runs(&s, "A", "C")), vec![3]);
        assert_eq!(lengths(&all_alternation_runs(&s)), vec![3, 3]);
    }

    #[test]
    fn gap_in_numbering_breaks_run() {
        let mut s = seq(&["A", "B", "A", "B"]);
        for slot in &mut s.slots[2..] {
            slot.over_idx += 1;
        }
        assert_eq!(lengths(&find_alternation_runs(&s, "A", "B")), vec![2, 2]);
    }

    fn rec(m: &str, inn: u32, over: u32, bowler: &str) -> OverRecord {
        OverRecord {
            match_id: m.into(),
            innings: inn,
            over_idx: over,
            bowler: bowler.into(),
            bowling_team: "T".into(),
            legal_balls: 6,
            runs_charged: 4,
            wickets_credited: 0,
            complete: true,
        }
    }

    #[test]
    fn single_innings_pair() {
        let recs: Vec<OverRecord> = ["A", "B", "A", "B"]
            .iter()
            .enumerate()
            .map(|(i, b)| rec("m", 1, i as u32, b))
            .collect();
        let pairs = accumulate_pairs(&recs);
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].a.as_str(), pairs[0].b.as_str()), ("A", "B"));
        assert_eq!(pairs[0].pair_overs, 4);
        assert_eq!(pairs[0].overs_of_a.len(), 2);
        assert_eq!(pairs[0].team, "T");
    }

    #[test]
    fn pairs_sum_across_matches() {
        let mut recs = Vec::new();
        for m in ["m1", "m2"] {
            for (i, b) in ["B", "A", "B"].iter().enumerate() {
                recs.push(rec(m, 1, i as u32, b));
            }
        }
        let pairs = accumulate_pairs(&recs);
        assert_eq!(pairs[0].pair_overs, 6);
        assert_eq!(pairs[0].runs_count, 2);
        assert_eq!(pairs[0].overs_of_a.len() + pairs[0].overs_of_b.len(), 6);
    }

    #[test]
    fn runs_do_not_span_innings() {
        let recs = vec![rec("m", 1, 0, "A"), rec("m", 1, 1, "B"), rec("m", 2, 2, "A"), rec("m", 2, 3, "B")];
        let pairs = accumulate_pairs(&recs);
        assert_eq!((pairs[0].pair_overs, pairs[0].runs_count), (4, 2));
    }

    #[test]
    fn shared_over_breaks_runs() {
        let mut recs = vec![rec("m", 1, 0, "A"), rec("m", 1, 1, "B")];
        let mut partial = rec("m", 1, 1, "C");
        partial.legal_balls = 3;
        recs.push(partial);
        recs.push(rec("m", 1, 2, "A"));
        assert!(accumulate_pairs(&recs).is_empty());
    }

    fn summaries(entries: &[(&str, f64)]) -> BTreeMap<String, MetricSummary> {
        entries
            .iter()
            .map(|&(b, n)| {
                (
                    b.to_string(),
                    MetricSummary {
                        economy: 4.0,
                        hitrate: 0.1,
                        bowling_index: None,
                        n_overs: n,
                    },
                )
            })
            .collect()
    }

    fn pair(a: &str, b: &str, overs: u32) -> BowlingPair {
        BowlingPair {
            a: a.into(),
            b: b.into(),
            team: "T".into(),
            pair_overs: overs,
            runs_count: 1,
            overs_of_a: Vec::new(),
            overs_of_b: Vec::new(),
        }
    }

    #[test]
    fn thresholds_are_inclusive() {
        let cfg = PairingConfig::new(300, 60).unwrap();
        let s = summaries(&[("A", 300.0), ("B", 300.0), ("C", 299.5)]);
        let kept = filter_pairs(&[pair("A", "B", 60), pair("A", "B", 59), pair("A", "C", 100)], &s, &cfg);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].pair_overs, 60);
        assert_eq!(qualifying_bowlers(&s, &cfg), vec!["A".to_string(), "B".to_string()]);
    }

    #[test]
    fn config_validation_and_defaults() {
        assert_eq!(PairingConfig::new(0, 10), Err(PairingError::NonPositiveIndividual));
        assert_eq!(PairingConfig::new(10, 1), Err(PairingError::PairingTooSmall(1)));
        assert_eq!(PairingConfig::for_format(MatchFormat::Test), PairingConfig { t_i: 300, t_p: 60 });
        assert_eq!(PairingConfig::for_format(MatchFormat::T20i), PairingConfig { t_i: 80, t_p: 16 });
    }
}
