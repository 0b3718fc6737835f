use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BowlershipError;
use crate::overmodel::{BowlerSeries, OverRecord};
use crate::pairing::BowlingPair;
use crate::stats::{mann_whitney, MWResult, DEFAULT_EXACT_CUTOFF};

/// Fewest complete overs either sample may have.
pub const MIN_SAMPLE_OVERS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Metric {
    Economy,
    Hitrate,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Economy, Metric::Hitrate];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Economy => "ECONOMY",
            Metric::Hitrate => "HITRATE",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = BowlershipError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "economy" | "eco" => Ok(Metric::Economy),
            "hitrate" | "wickets" => Ok(Metric::Hitrate),
            _ => Err(BowlershipError::UnknownMetric(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn weight(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }
}

/// Reference sample a bowler's pair overs are compared against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndividualSet {
    /// Every complete over the bowler bowled.
    #[default]
    AllOvers,
    /// Every complete over except those bowled in runs with the partner.
    ExcludePair,
}

impl IndividualSet {
    pub fn as_str(self) -> &'static str {
        match self {
            IndividualSet::AllOvers => "all_overs",
            IndividualSet::ExcludePair => "exclude_pair",
        }
    }
}

impl FromStr for IndividualSet {
    type Err = BowlershipError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all_overs" => Ok(IndividualSet::AllOvers),
            "exclude_pair" => Ok(IndividualSet::ExcludePair),
            _ => Err(BowlershipError::UnknownIndividualSet(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub metric: Metric,
    pub alpha: f64,
    pub individual_set: IndividualSet,
    pub exact_cutoff: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            metric: Metric::Economy,
            alpha: 0.05,
            individual_set: IndividualSet::AllOvers,
            exact_cutoff: DEFAULT_EXACT_CUTOFF,
        }
    }
}

/// A directed, signed bowlership: `from` bowls significantly better
/// (positive) or worse (negative) when paired with `to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BowlershipEdge {
    pub from: String,
    pub to: String,
    pub metric: Metric,
    pub sign: Sign,
    pub mw: MWResult,
    pub pair_overs: u32,
}

/// The three-test comparison of one bowler's pair overs with their
/// individual sample.
///
/// `mw` is oriented so that `p_greater` is the test for improvement with the
/// partner: it compares individual against pair runs for economy, and
/// negated wicket counts for hitrate (more wickets is better).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectedTest {
    pub from: String,
    pub to: String,
    pub team: String,
    pub metric: Metric,
    pub mw: MWResult,
    pub sign: Option<Sign>,
    pub pair_overs: u32,
    pub n_bowlership: usize,
    pub n_individual: usize,
    /// Mean runs (economy) or wickets (hitrate) per complete over.
    pub bowlership_mean: f64,
    pub individual_mean: f64,
}

impl DirectedTest {
    pub fn edge(&self) -> Option<BowlershipEdge> {
        self.sign.map(|sign| BowlershipEdge {
            from: self.from.clone(),
            to: self.to.clone(),
            metric: self.metric,
            sign,
            mw: self.mw.clone(),
            pair_overs: self.pair_overs,
        })
    }
}

type OverKey<'a> = (&'a str, u32, u32);

fn over_key(o: &OverRecord) -> OverKey<'_> {
    (&o.match_id, o.innings, o.over_idx)
}

fn metric_values(overs: &[&OverRecord], metric: Metric) -> Vec<f64> {
    overs
        .iter()
        .map(|o| match metric {
            Metric::Economy => f64::from(o.runs_charged),
            Metric::Hitrate => -f64::from(o.wickets_credited),
        })
        .collect()
}

fn mean_of(overs: &[&OverRecord], metric: Metric) -> f64 {
    let total: f64 = overs
        .iter()
        .map(|o| match metric {
            Metric::Economy => f64::from(o.runs_charged),
            Metric::Hitrate => f64::from(o.wickets_credited),
        })
        .sum();
    total / overs.len() as f64
}

/// Sign decision from the three p-values: both the one-sided and the
/// two-sided null must be rejected.
pub fn decide_sign(mw: &MWResult, alpha: f64) -> Option<Sign> {
    let two_sided = mw.p_two_sided < alpha;
    if two_sided && mw.p_greater < alpha {
        Some(Sign::Positive)
    } else if two_sided && mw.p_less < alpha {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Tests whether `from` bowls differently with its partner in `pair`.
pub fn classify_direction(
    pair: &BowlingPair,
    from: &str,
    individual: &BowlerSeries,
    opts: &ClassifyOptions,
) -> Result<DirectedTest, BowlershipError> {
    let (Some(pair_overs), Some(to)) = (pair.overs_of(from), pair.partner_of(from)) else {
        return Err(BowlershipError::NotInPair(from.to_string()));
    };
    if individual.bowler != from {
        return Err(BowlershipError::NotInPair(individual.bowler.clone()));
    }
    let bowlership: Vec<&OverRecord> = pair_overs.iter().filter(|o| o.complete).collect();
    let individual_overs: Vec<&OverRecord> = match opts.individual_set {
        IndividualSet::AllOvers => individual.overs.iter().filter(|o| o.complete).collect(),
        IndividualSet::ExcludePair => {
            let in_pair: HashSet<OverKey> = pair_overs.iter().map(over_key).collect();
            individual
                .overs
                .iter()
                .filter(|o| o.complete && !in_pair.contains(&over_key(o)))
                .collect()
        }
    };
    if bowlership.len() < MIN_SAMPLE_OVERS || individual_overs.len() < MIN_SAMPLE_OVERS {
        return Err(BowlershipError::InsufficientSample {
            bowler: from.to_string(),
            partner: to.to_string(),
            bowlership: bowlership.len(),
            individual: individual_overs.len(),
        });
    }
    let mw = mann_whitney(
        &metric_values(&individual_overs, opts.metric),
        &metric_values(&bowlership, opts.metric),
        opts.exact_cutoff,
    )?;
    Ok(DirectedTest {
        from: from.to_string(),
        to: to.to_string(),
        team: pair.team.clone(),
        metric: opts.metric,
        sign: decide_sign(&mw, opts.alpha),
        mw,
        pair_overs: pair.pair_overs,
        n_bowlership: bowlership.len(),
        n_individual: individual_overs.len(),
        bowlership_mean: mean_of(&bowlership, opts.metric),
        individual_mean: mean_of(&individual_overs, opts.metric),
    })
}

/// Both directions of a pair: `a` with `b`, then `b` with `a`.
pub fn classify_pair(
    pair: &BowlingPair,
    series: &BTreeMap<String, BowlerSeries>,
    opts: &ClassifyOptions,
) -> [Result<DirectedTest, BowlershipError>; 2] {
    [pair.a.as_str(), pair.b.as_str()].map(|from| {
        let individual = series
            .get(from)
            .ok_or_else(|| BowlershipError::UnknownVertex(from.to_string()))?;
        classify_direction(pair, from, individual, opts)
    })
}
