//! Per-bowler over records and economy/hitrate summaries.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Corpus, Delivery, MatchMeta};

pub const BALLS_PER_OVER: u32 = 6;

/// Dismissal kinds credited to the bowler.
const BOWLER_CREDITED: [&str; 6] = [
    "bowled",
    "caught",
    "lbw",
    "stumped",
    "hit wicket",
    "caught and bowled",
];

pub fn is_bowler_credited(kind: &str) -> bool {
    let kind = kind.trim();
    BOWLER_CREDITED.iter().any(|k| k.eq_ignore_ascii_case(kind))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverModelError {
    #[error("bowler {0:?} bowled no overs")]
    UnknownBowler(String),
    #[error("series has no overs")]
    NoOvers,
}

/// One bowler's share of one over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverRecord {
    pub match_id: String,
    pub innings: u32,
    pub over_idx: u32,
    pub bowler: String,
    pub bowling_team: String,
    /// Capped at six; umpire miscounts occasionally record a seventh legal ball.
    pub legal_balls: u32,
    pub runs_charged: u32,
    pub wickets_credited: u32,
    pub complete: bool,
}

/// Run attribution rule for extras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attribution {
    /// Charge wide and no-ball runs to the bowler.
    pub charge_extras: bool,
}

impl Default for Attribution {
    fn default() -> Self {
        Attribution {
            charge_extras: true,
        }
    }
}

impl Attribution {
    pub fn runs_charged(&self, d: &Delivery) -> u32 {
        if self.charge_extras {
            d.batter_runs + d.extras.wides + d.extras.noballs
        } else {
            d.batter_runs
        }
    }
}

struct Accum<'a> {
    bowler: &'a str,
    legal: u32,
    runs: u32,
    wickets: u32,
}

/// Builds one record per (match, innings, over, bowler), skipping super-over
/// innings and overs without a legal ball.
pub fn build_over_records(corpus: &Corpus, attribution: Attribution) -> Vec<OverRecord> {
    let metas: HashMap<&str, &MatchMeta> = corpus
        .matches
        .iter()
        .map(|m| (m.match_id.as_str(), m))
        .collect();

    let mut records = Vec::new();
    let mut i = 0;
    let deliveries = &corpus.deliveries;
    while i < deliveries.len() {
        let first = &deliveries[i];
        let mut j = i;
        while j < deliveries.len()
            && deliveries[j].match_id == first.match_id
            && deliveries[j].innings == first.innings
            && deliveries[j].over_idx == first.over_idx
        {
            j += 1;
        }
        let innings = metas
            .get(first.match_id.as_str())
            .and_then(|m| m.innings_info(first.innings));
        let super_over = innings.is_some_and(|inn| inn.super_over);
        if !super_over {
            let team = innings.map(|inn| inn.bowling_team.as_str()).unwrap_or("");
            push_over(&deliveries[i..j], team, attribution, &mut records);
        }
        i = j;
    }
    records
}

fn push_over(over: &[Delivery], team: &str, attribution: Attribution, out: &mut Vec<OverRecord>) {
    // a bowler change mid-over yields one partial record per bowler
    let mut parts: Vec<Accum> = Vec::new();
    for d in over {
        let idx = match parts.iter().position(|p| p.bowler == d.bowler) {
            Some(idx) => idx,
            None => {
                parts.push(Accum {
                    bowler: &d.bowler,
                    legal: 0,
                    runs: 0,
                    wickets: 0,
                });
                parts.len() - 1
            }
        };
        let part = &mut parts[idx];
        part.legal += u32::from(d.is_legal());
        part.runs += attribution.runs_charged(d);
        part.wickets += d.wickets.iter().filter(|w| is_bowler_credited(&w.kind)).count() as u32;
    }
    let head = &over[0];
    for part in parts.into_iter().filter(|p| p.legal > 0) {
        let legal_balls = part.legal.min(BALLS_PER_OVER);
        out.push(OverRecord {
            match_id: head.match_id.clone(),
            innings: head.innings,
            over_idx: head.over_idx,
            bowler: part.bowler.to_string(),
            bowling_team: team.to_string(),
            legal_balls,
            runs_charged: part.runs,
            wickets_credited: part.wickets,
            complete: legal_balls == BALLS_PER_OVER,
        });
    }
}

/// A bowler's overs in match order, with career totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BowlerSeries {
    pub bowler: String,
    pub overs: Vec<OverRecord>,
    /// Legal balls / 6, so incomplete overs count fractionally.
    pub total_overs: f64,
    pub total_runs: u64,
    pub total_wickets: u64,
}

impl BowlerSeries {
    fn from_overs(bowler: String, overs: Vec<OverRecord>) -> Self {
        let balls: u64 = overs.iter().map(|o| u64::from(o.legal_balls)).sum();
        BowlerSeries {
            bowler,
            total_overs: balls as f64 / f64::from(BALLS_PER_OVER),
            total_runs: overs.iter().map(|o| u64::from(o.runs_charged)).sum(),
            total_wickets: overs.iter().map(|o| u64::from(o.wickets_credited)).sum(),
            overs,
        }
    }

    /// Runs conceded in each complete over.
    pub fn complete_runs(&self) -> Vec<f64> {
        complete_runs(&self.overs)
    }
}

pub fn complete_runs<'a>(overs: impl IntoIterator<Item = &'a OverRecord>) -> Vec<f64> {
    overs
        .into_iter()
        .filter(|o| o.complete)
        .map(|o| f64::from(o.runs_charged))
        .collect()
}

pub fn complete_wickets<'a>(overs: impl IntoIterator<Item = &'a OverRecord>) -> Vec<f64> {
    overs
        .into_iter()
        .filter(|o| o.complete)
        .map(|o| f64::from(o.wickets_credited))
        .collect()
}

pub fn bowler_series(records: &[OverRecord], bowler: &str) -> Result<BowlerSeries, OverModelError> {
    let overs: Vec<OverRecord> = records.iter().filter(|r| r.bowler == bowler).cloned().collect();
    if overs.is_empty() {
        return Err(OverModelError::UnknownBowler(bowler.to_string()));
    }
    Ok(BowlerSeries::from_overs(bowler.to_string(), overs))
}

/// Series for every bowler in `records`, keyed by name.
pub fn all_series(records: &[OverRecord]) -> BTreeMap<String, BowlerSeries> {
    let mut grouped: BTreeMap<String, Vec<OverRecord>> = BTreeMap::new();
    for r in records {
        grouped.entry(r.bowler.clone()).or_default().push(r.clone());
    }
    grouped
        .into_iter()
        .map(|(bowler, overs)| {
            let series = BowlerSeries::from_overs(bowler.clone(), overs);
            (bowler, series)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub economy: f64,
    pub hitrate: f64,
    /// Bowling average times strike rate; absent without wickets.
    pub bowling_index: Option<f64>,
    pub n_overs: f64,
}

pub fn summarize(series: &BowlerSeries) -> Result<MetricSummary, OverModelError> {
    if series.total_overs <= 0.0 {
        return Err(OverModelError::NoOvers);
    }
    let overs = series.total_overs;
    let runs = series.total_runs as f64;
    let wickets = series.total_wickets as f64;
    let bowling_index = (series.total_wickets > 0).then(|| {
        let average = runs / wickets;
        let strike_rate = f64::from(BALLS_PER_OVER) * overs / wickets;
        average * strike_rate
    });
    Ok(MetricSummary {
        economy: runs / overs,
        hitrate: wickets / overs,
        bowling_index,
        n_overs: overs,
    })
}

/// Runs-per-over and wickets-per-over frequency counts over complete overs.
pub fn over_histograms(records: &[OverRecord]) -> (BTreeMap<u32, u64>, BTreeMap<u32, u64>) {
    let mut runs = BTreeMap::new();
    let mut wickets = BTreeMap::new();
    for r in records.iter().filter(|r| r.complete) {
        *runs.entry(r.runs_charged).or_insert(0) += 1;
        *wickets.entry(r.wickets_credited).or_insert(0) += 1;
    }
    (runs, wickets)
}
