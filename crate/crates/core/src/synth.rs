//! Seeded generator of synthetic cricsheet match files with planted
//! bowler-pair synergies and a ledger of what was generated.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ingest::{IngestError, MatchFormat};
use crate::overmodel::is_bowler_credited;

pub const TEAMS: [&str; 2] = ["Northland", "Southland"];

const RUN_VALUES: [u32; 5] = [0, 1, 2, 4, 6];
const NORMAL_WEIGHTS: [u32; 5] = [50, 30, 8, 9, 3];
const TIGHT_WEIGHTS: [u32; 5] = [82, 14, 2, 1, 1];
const DISMISSALS: [(&str, u32); 5] = [
    ("caught", 5),
    ("bowled", 2),
    ("lbw", 2),
    ("run out", 1),
    ("stumped", 1),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub matches: usize,
    pub format: MatchFormat,
    /// Bowlers per team, at least 3.
    pub roster_size: usize,
    /// Overs per innings; defaults by format when absent.
    pub overs_per_innings: Option<u32>,
    /// Roster indices of Northland bowlers who concede far fewer runs while
    /// bowling in tandem.
    pub planted: Vec<(usize, usize)>,
    /// Chance that a new spell goes to a planted pair.
    pub planted_spell_prob: f64,
    pub wicket_prob: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 7,
            matches: 20,
            format: MatchFormat::Odi,
            roster_size: 5,
            overs_per_innings: None,
            planted: vec![(0, 1)],
            planted_spell_prob: 0.15,
            wicket_prob: 0.035,
        }
    }
}

impl SynthConfig {
    fn overs_limit(&self) -> u32 {
        self.overs_per_innings.unwrap_or(match self.format {
            MatchFormat::Test => 80,
            MatchFormat::Odi => 50,
            MatchFormat::T20i => 20,
        })
    }

    fn innings_count(&self) -> usize {
        match self.format {
            MatchFormat::Test => 4,
            _ => 2,
        }
    }
}

pub fn bowler_name(team: &str, idx: usize) -> String {
    format!("{} Bowler{}", &team[..1], idx + 1)
}

fn batter_name(team: &str, idx: u32) -> String {
    format!("{} Bat{}", &team[..1], idx + 1)
}

/// What one bowler was credited with across the generated corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BowlerLedger {
    pub over_records: u32,
    pub legal_balls: u32,
    pub runs_charged: u64,
    pub wickets_credited: u64,
    /// Runs charged in each complete over, in match order.
    pub complete_over_runs: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SynthLedger {
    pub bowlers: BTreeMap<String, BowlerLedger>,
    /// Batter runs plus all extras, per match id.
    pub match_totals: BTreeMap<String, u64>,
    /// Planted pairs as sorted bowler names.
    pub planted: Vec<(String, String)>,
}

#[derive(Serialize)]
struct FileDoc {
    meta: Meta,
    info: Info,
    innings: Vec<InningsDoc>,
}

#[derive(Serialize)]
struct Meta {
    data_version: &'static str,
}

#[derive(Serialize)]
struct Info {
    match_type: &'static str,
    teams: Vec<String>,
    dates: Vec<String>,
    venue: String,
}

#[derive(Serialize)]
struct InningsDoc {
    team: String,
    overs: Vec<OverDoc>,
}

#[derive(Serialize)]
struct OverDoc {
    over: u32,
    deliveries: Vec<BallDoc>,
}

#[derive(Serialize)]
struct BallDoc {
    batter: String,
    bowler: String,
    non_striker: String,
    runs: RunsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    extras: Option<BTreeMap<&'static str, u32>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    wickets: Vec<WicketDoc>,
}

#[derive(Serialize)]
struct RunsDoc {
    batter: u32,
    extras: u32,
    total: u32,
}

#[derive(Serialize)]
struct WicketDoc {
    player_out: String,
    kind: &'static str,
}

fn match_type(format: MatchFormat) -> &'static str {
    match format {
        MatchFormat::Test => "Test",
        MatchFormat::Odi => "ODI",
        MatchFormat::T20i => "T20",
    }
}

struct Generator<'a> {
    cfg: &'a SynthConfig,
    rng: ChaCha8Rng,
    normal: WeightedIndex<u32>,
    tight: WeightedIndex<u32>,
    dismissal: WeightedIndex<u32>,
    ledger: SynthLedger,
}

impl Generator<'_> {
    /// Bowler order for one innings: spells of strict alternation between
    /// two bowlers. No bowler bowls two overs in a row.
    fn schedule(&mut self, team: usize) -> (Vec<usize>, Vec<bool>) {
        let limit = self.cfg.overs_limit() as usize;
        let roster = self.cfg.roster_size;
        let planted: Vec<(usize, usize)> = if team == 0 {
            self.cfg.planted.clone()
        } else {
            Vec::new()
        };
        let mut order = Vec::with_capacity(limit);
        let mut tight = Vec::with_capacity(limit);
        while order.len() < limit {
            let last = order.last().copied();
            let pair = match planted.choose(&mut self.rng) {
                Some(&p) if self.rng.gen_bool(self.cfg.planted_spell_prob) => Some(p),
                _ => None,
            };
            let (x, y) = pair.unwrap_or_else(|| {
                let mut picks: Vec<usize> = (0..roster).collect();
                picks.shuffle(&mut self.rng);
                (picks[0], picks[1])
            });
            let is_planted = planted.iter().any(|&(a, b)| (a, b) == (x, y) || (b, a) == (x, y));
            // whoever bowled last cannot open the spell
            let (first, second) = if Some(x) == last { (y, x) } else { (x, y) };
            if Some(first) == last {
                continue;
            }
            let len = self.rng.gen_range(2..=8);
            for i in 0..len {
                if order.len() == limit {
                    break;
                }
                order.push(if i % 2 == 0 { first } else { second });
                tight.push(is_planted);
            }
        }
        (order, tight)
    }

    fn innings(&mut self, batting: usize, total: &mut u64) -> InningsDoc {
        let bowling = 1 - batting;
        let bat_team = TEAMS[batting];
        let bowl_team = TEAMS[bowling];
        let (order, tight) = self.schedule(bowling);
        let mut wickets_down = 0u32;
        let mut overs = Vec::new();
        'overs: for (over_idx, (&b, &is_tight)) in order.iter().zip(&tight).enumerate() {
            let bowler = bowler_name(bowl_team, b);
            let mut legal = 0;
            let mut over_runs = 0u32;
            let mut balls = Vec::new();
            while legal < 6 {
                let striker = batter_name(bat_team, wickets_down);
                let non_striker = batter_name(bat_team, wickets_down + 1);
                let dist = if is_tight { &self.tight } else { &self.normal };
                let roll: f64 = self.rng.gen();
                let mut extras = BTreeMap::new();
                let mut batter_runs = 0;
                let mut wickets = Vec::new();
                if roll < 0.02 {
                    extras.insert("wides", 1);
                } else if roll < 0.03 {
                    extras.insert("noballs", 1);
                    batter_runs = RUN_VALUES[dist.sample(&mut self.rng)];
                } else if roll < 0.05 {
                    extras.insert(if self.rng.gen_bool(0.5) { "byes" } else { "legbyes" }, 1);
                    legal += 1;
                } else {
                    legal += 1;
                    if self.rng.gen_bool(self.cfg.wicket_prob) {
                        let kind = DISMISSALS[self.dismissal.sample(&mut self.rng)].0;
                        wickets.push(WicketDoc {
                            player_out: striker.clone(),
                            kind,
                        });
                    } else {
                        batter_runs = RUN_VALUES[dist.sample(&mut self.rng)];
                    }
                }
                let extra_total: u32 = extras.values().sum();
                let charged = batter_runs
                    + extras.get("wides").copied().unwrap_or(0)
                    + extras.get("noballs").copied().unwrap_or(0);
                over_runs += charged;
                *total += u64::from(batter_runs + extra_total);
                let credited = wickets.iter().filter(|w| is_bowler_credited(w.kind)).count();
                let out = !wickets.is_empty();
                balls.push(BallDoc {
                    batter: striker,
                    bowler: bowler.clone(),
                    non_striker,
                    runs: RunsDoc {
                        batter: batter_runs,
                        extras: extra_total,
                        total: batter_runs + extra_total,
                    },
                    extras: (!extras.is_empty()).then_some(extras),
                    wickets,
                });
                let entry = self.ledger.bowlers.entry(bowler.clone()).or_default();
                entry.wickets_credited += credited as u64;
                if out {
                    wickets_down += 1;
                    if wickets_down == 10 {
                        self.close_over(&bowler, legal, over_runs);
                        overs.push(OverDoc {
                            over: over_idx as u32,
                            deliveries: balls,
                        });
                        break 'overs;
                    }
                }
            }
            self.close_over(&bowler, legal, over_runs);
            overs.push(OverDoc {
                over: over_idx as u32,
                deliveries: balls,
            });
        }
        InningsDoc {
            team: bat_team.to_string(),
            overs,
        }
    }

    fn close_over(&mut self, bowler: &str, legal: u32, runs: u32) {
        let entry = self.ledger.bowlers.entry(bowler.to_string()).or_default();
        entry.runs_charged += u64::from(runs);
        if legal == 0 {
            return;
        }
        entry.over_records += 1;
        entry.legal_balls += legal;
        if legal == 6 {
            entry.complete_over_runs.push(runs);
        }
    }
}

/// Generates `(file name, YAML text)` for each match, plus the ledger.
pub fn generate(cfg: &SynthConfig) -> (Vec<(String, String)>, SynthLedger) {
    assert!(cfg.roster_size >= 3, "roster_size must be at least 3");
    let weights = |w: &[u32]| WeightedIndex::new(w).expect("static weights");
    let mut gen = Generator {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        normal: weights(&NORMAL_WEIGHTS),
        tight: weights(&TIGHT_WEIGHTS),
        dismissal: weights(&DISMISSALS.map(|d| d.1)),
        ledger: SynthLedger::default(),
    };
    gen.ledger.planted = cfg
        .planted
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (bowler_name(TEAMS[0], a), bowler_name(TEAMS[0], b));
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();

    let mut files = Vec::with_capacity(cfg.matches);
    for m in 0..cfg.matches {
        let match_id = format!("synth{m:04}");
        let first = gen.rng.gen_range(0..2usize);
        let mut total = 0;
        let innings = (0..cfg.innings_count())
            .map(|i| gen.innings((first + i) % 2, &mut total))
            .collect();
        gen.ledger.match_totals.insert(match_id.clone(), total);
        let doc = FileDoc {
            meta: Meta { data_version: "1.1.0" },
            info: Info {
                match_type: match_type(cfg.format),
                teams: TEAMS.iter().map(|t| t.to_string()).collect(),
                dates: vec![format!("{:04}-{:02}-{:02}", 2000 + m / 336, (m / 28) % 12 + 1, m % 28 + 1)],
                venue: "Synthetic Oval".to_string(),
            },
            innings,
        };
        let text = serde_yaml::to_string(&doc).expect("plain data serializes");
        files.push((format!("{match_id}.yaml"), text));
    }
    (files, gen.ledger)
}

/// Generates a corpus into `dir`, creating it if needed.
pub fn write_synthetic_corpus(cfg: &SynthConfig, dir: &Path) -> Result<SynthLedger, IngestError> {
    fs::create_dir_all(dir).map_err(|e| IngestError::io(dir, e))?;
    let (files, ledger) = generate(cfg);
    for (name, text) in files {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| IngestError::io(&path, e))?;
    }
    Ok(ledger)
}
