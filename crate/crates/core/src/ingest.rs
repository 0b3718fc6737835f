//! Cricsheet YAML ingestion and the CSV intermediate format.
//!
//! Two YAML layouts are accepted. The current one nests deliveries as
//! `innings[].overs[].deliveries[]` with `runs.batter`; the legacy one keys
//! each innings by name (`1st innings`) and each delivery by `over.ball`
//! (`0.1`) with `runs.batsman`. Both produce the same [`Delivery`] stream.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_yaml::{Mapping, Value};
use thiserror::Error;

type ParsedMatch = (MatchMeta, Vec<Delivery>);

pub const DELIVERIES_FILE: &str = "deliveries.csv";
pub const MATCHES_FILE: &str = "matches.csv";
pub const INNINGS_FILE: &str = "innings.csv";

pub const DELIVERY_COLUMNS: [&str; 15] = [
    "match_id",
    "format",
    "innings",
    "over_idx",
    "ball_seq",
    "bowler",
    "striker",
    "batter_runs",
    "wides",
    "noballs",
    "byes",
    "legbyes",
    "penalty",
    "wicket_kind",
    "player_out",
];

/// Separator between multiple dismissals on one delivery in the CSV columns.
const WICKET_SEP: char = ';';

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed file: {0}")]
    MalformedFile(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("unknown match format {0:?}")]
    UnknownFormat(String),
    #[error("no valid match files of the requested format")]
    EmptyCorpus,
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("intermediate file {path}: {message}")]
    Intermediate { path: PathBuf, message: String },
}

impl IngestError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        IngestError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn intermediate(path: &Path, message: impl fmt::Display) -> Self {
        IngestError::Intermediate {
            path: path.to_path_buf(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MatchFormat {
    #[serde(rename = "TEST")]
    Test,
    #[serde(rename = "ODI")]
    Odi,
    #[serde(rename = "T20I")]
    T20i,
}

impl MatchFormat {
    pub const ALL: [MatchFormat; 3] = [MatchFormat::Test, MatchFormat::Odi, MatchFormat::T20i];

    pub fn as_str(self) -> &'static str {
        match self {
            MatchFormat::Test => "TEST",
            MatchFormat::Odi => "ODI",
            MatchFormat::T20i => "T20I",
        }
    }

    /// Maps cricsheet's `info.match_type` onto a format.
    pub fn from_match_type(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "TEST" => Some(MatchFormat::Test),
            "ODI" => Some(MatchFormat::Odi),
            "T20" | "T20I" | "IT20" => Some(MatchFormat::T20i),
            _ => None,
        }
    }
}

impl fmt::Display for MatchFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchFormat {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MatchFormat::from_match_type(s).ok_or_else(|| IngestError::UnknownFormat(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extras {
    pub wides: u32,
    pub noballs: u32,
    pub byes: u32,
    pub legbyes: u32,
    pub penalty: u32,
}

impl Extras {
    pub fn total(&self) -> u32 {
        self.wides + self.noballs + self.byes + self.legbyes + self.penalty
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wicket {
    pub player_out: String,
    /// Dismissal kind exactly as recorded (`caught`, `run out`, ...).
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delivery {
    pub match_id: String,
    pub innings: u32,
    pub over_idx: u32,
    pub ball_seq: u32,
    pub bowler: String,
    pub striker: String,
    pub batter_runs: u32,
    pub extras: Extras,
    /// At most two dismissals.
    pub wickets: Vec<Wicket>,
}

impl Delivery {
    /// Wides and no-balls do not count towards the six balls of an over.
    pub fn is_legal(&self) -> bool {
        self.extras.wides == 0 && self.extras.noballs == 0
    }

    pub fn total_runs(&self) -> u32 {
        self.batter_runs + self.extras.total()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InningsInfo {
    pub number: u32,
    pub batting_team: String,
    pub bowling_team: String,
    /// Super-over innings are kept in the corpus but skipped by the analysis.
    pub super_over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchMeta {
    pub match_id: String,
    pub format: MatchFormat,
    pub teams: (String, String),
    pub date: String,
    pub venue: Option<String>,
    pub innings: Vec<InningsInfo>,
}

impl MatchMeta {
    pub fn innings_info(&self, number: u32) -> Option<&InningsInfo> {
        self.innings.iter().find(|i| i.number == number)
    }
}

/// Matches of one format with their deliveries, ordered by (date, match_id)
/// and within a match by (innings, over_idx, ball_seq).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub matches: Vec<MatchMeta>,
    pub deliveries: Vec<Delivery>,
    pub format_filter: MatchFormat,
}

impl Corpus {
    pub fn match_meta(&self, match_id: &str) -> Option<&MatchMeta> {
        self.matches.iter().find(|m| m.match_id == match_id)
    }
}

/// Files that were read but not ingested, with the reason.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub files_seen: usize,
    pub skipped: Vec<(String, String)>,
    pub other_format: usize,
}

// ---------------------------------------------------------------------------
// YAML parsing
// ---------------------------------------------------------------------------

fn key<'a>(map: &'a Mapping, name: &str) -> Option<&'a Value> {
    map.get(Value::String(name.to_string()))
}

fn as_map<'a>(v: &'a Value, what: &str) -> Result<&'a Mapping, IngestError> {
    v.as_mapping()
        .ok_or_else(|| IngestError::SchemaViolation(format!("{what} is not a mapping")))
}

fn as_seq<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IngestError> {
    v.as_sequence()
        .ok_or_else(|| IngestError::SchemaViolation(format!("{what} is not a list")))
}

fn scalar_string(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        _ => None,
    }
}

fn required_string(map: &Mapping, name: &str, ctx: &str) -> Result<String, IngestError> {
    key(map, name)
        .and_then(scalar_string)
        .ok_or_else(|| IngestError::SchemaViolation(format!("{ctx}: missing `{name}`")))
}

fn count(v: Option<&Value>, what: &str) -> Result<u32, IngestError> {
    match v {
        None | Some(Value::Null) => Ok(0),
        Some(Value::Number(n)) => n
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| IngestError::SchemaViolation(format!("{what} is not a non-negative integer"))),
        Some(_) => Err(IngestError::SchemaViolation(format!("{what} is not a number"))),
    }
}

fn parse_extras(v: Option<&Value>) -> Result<Extras, IngestError> {
    let Some(v) = v else {
        return Ok(Extras::default());
    };
    let map = as_map(v, "extras")?;
    Ok(Extras {
        wides: count(key(map, "wides"), "extras.wides")?,
        noballs: count(key(map, "noballs"), "extras.noballs")?,
        byes: count(key(map, "byes"), "extras.byes")?,
        legbyes: count(key(map, "legbyes"), "extras.legbyes")?,
        penalty: count(key(map, "penalty"), "extras.penalty")?,
    })
}

fn parse_wicket(v: &Value) -> Result<Wicket, IngestError> {
    let map = as_map(v, "wicket")?;
    Ok(Wicket {
        player_out: required_string(map, "player_out", "wicket")?,
        kind: required_string(map, "kind", "wicket")?,
    })
}

fn parse_wickets(v: Option<&Value>) -> Result<Vec<Wicket>, IngestError> {
    let wickets = match v {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Sequence(items)) => items.iter().map(parse_wicket).collect::<Result<_, _>>()?,
        Some(single @ Value::Mapping(_)) => vec![parse_wicket(single)?],
        Some(_) => return Err(IngestError::SchemaViolation("wickets malformed".into())),
    };
    if wickets.len() > 2 {
        return Err(IngestError::SchemaViolation(format!(
            "{} dismissals on one delivery",
            wickets.len()
        )));
    }
    Ok(wickets)
}

/// Fields of one ball entry, common to both layouts.
struct BallFields {
    bowler: String,
    striker: String,
    batter_runs: u32,
    extras: Extras,
    wickets: Vec<Wicket>,
}

fn parse_ball(map: &Mapping, legacy: bool) -> Result<BallFields, IngestError> {
    let (striker_key, runs_key, wickets_key) = if legacy {
        ("batsman", "batsman", "wicket")
    } else {
        ("batter", "batter", "wickets")
    };
    let bowler = required_string(map, "bowler", "delivery")?;
    let striker = required_string(map, striker_key, "delivery")?;
    let runs = key(map, "runs")
        .ok_or_else(|| IngestError::SchemaViolation("delivery: missing `runs`".into()))?;
    let runs = as_map(runs, "runs")?;
    let batter_runs = match key(runs, runs_key) {
        Some(v) => count(Some(v), "runs.batter")?,
        None => return Err(IngestError::SchemaViolation(format!("runs: missing `{runs_key}`"))),
    };
    Ok(BallFields {
        bowler,
        striker,
        batter_runs,
        extras: parse_extras(key(map, "extras"))?,
        wickets: parse_wickets(key(map, wickets_key))?,
    })
}

struct RawInnings {
    batting_team: String,
    super_over: bool,
    /// (over_idx, ball) in file order
    balls: Vec<(u32, BallFields)>,
}

fn parse_current_innings(map: &Mapping) -> Result<RawInnings, IngestError> {
    let batting_team = required_string(map, "team", "innings")?;
    let super_over = matches!(key(map, "super_over"), Some(Value::Bool(true)));
    let mut balls = Vec::new();
    if let Some(overs) = key(map, "overs") {
        for over in as_seq(overs, "overs")? {
            let over = as_map(over, "over")?;
            let over_idx = count(key(over, "over"), "over number")?;
            let deliveries = key(over, "deliveries")
                .ok_or_else(|| IngestError::SchemaViolation("over: missing `deliveries`".into()))?;
            for ball in as_seq(deliveries, "deliveries")? {
                balls.push((over_idx, parse_ball(as_map(ball, "delivery")?, false)?));
            }
        }
    }
    Ok(RawInnings {
        batting_team,
        super_over,
        balls,
    })
}

fn parse_legacy_innings(name: &str, body: &Mapping) -> Result<RawInnings, IngestError> {
    let batting_team = required_string(body, "team", "innings")?;
    let super_over = name.to_ascii_lowercase().contains("super");
    let mut balls = Vec::new();
    if let Some(deliveries) = key(body, "deliveries") {
        for entry in as_seq(deliveries, "deliveries")? {
            let entry = as_map(entry, "delivery")?;
            let (ball_key, ball) = entry
                .iter()
                .next()
                .filter(|_| entry.len() == 1)
                .ok_or_else(|| IngestError::SchemaViolation("legacy delivery must have one key".into()))?;
            let over_idx = legacy_over_index(ball_key)?;
            balls.push((over_idx, parse_ball(as_map(ball, "delivery")?, true)?));
        }
    }
    Ok(RawInnings {
        batting_team,
        super_over,
        balls,
    })
}

/// `12.3` → over 12. Only the integer part is used because YAML reads `12.10`
/// as the float 12.1.
fn legacy_over_index(v: &Value) -> Result<u32, IngestError> {
    let text = scalar_string(v)
        .ok_or_else(|| IngestError::SchemaViolation("legacy delivery key is not a number".into()))?;
    let whole = text.split('.').next().unwrap_or("");
    whole
        .parse::<u32>()
        .map_err(|_| IngestError::SchemaViolation(format!("bad legacy delivery key {text:?}")))
}

fn parse_innings_list(innings: &[Value]) -> Result<Vec<RawInnings>, IngestError> {
    innings
        .iter()
        .map(|inn| {
            let map = as_map(inn, "innings")?;
            if key(map, "team").is_some() {
                parse_current_innings(map)
            } else if map.len() == 1 {
                let (name, body) = map.iter().next().expect("one entry");
                let name = scalar_string(name).unwrap_or_default();
                parse_legacy_innings(&name, as_map(body, "innings")?)
            } else {
                Err(IngestError::SchemaViolation("unrecognised innings layout".into()))
            }
        })
        .collect()
}

/// Parses one cricsheet YAML match file.
pub fn parse_match(bytes: &[u8], match_id: &str) -> Result<(MatchMeta, Vec<Delivery>), IngestError> {
    let doc: Value =
        serde_yaml::from_slice(bytes).map_err(|e| IngestError::MalformedFile(e.to_string()))?;
    let root = doc
        .as_mapping()
        .ok_or_else(|| IngestError::MalformedFile("document is not a mapping".into()))?;
    let info = key(root, "info")
        .ok_or_else(|| IngestError::SchemaViolation("missing `info`".into()))?;
    let info = as_map(info, "info")?;
    let innings = key(root, "innings")
        .ok_or_else(|| IngestError::SchemaViolation("missing `innings`".into()))?;
    let innings = as_seq(innings, "innings")?;

    let match_type = required_string(info, "match_type", "info")?;
    let format =
        MatchFormat::from_match_type(&match_type).ok_or(IngestError::UnknownFormat(match_type))?;
    let teams: Vec<String> = key(info, "teams")
        .and_then(Value::as_sequence)
        .map(|s| s.iter().filter_map(scalar_string).collect())
        .unwrap_or_default();
    if teams.len() != 2 {
        return Err(IngestError::SchemaViolation("info.teams must list two teams".into()));
    }
    let date = key(info, "dates")
        .and_then(Value::as_sequence)
        .and_then(|d| d.first())
        .and_then(scalar_string)
        .ok_or_else(|| IngestError::SchemaViolation("info.dates missing".into()))?;
    let venue = key(info, "venue").and_then(scalar_string);

    let raw = parse_innings_list(innings)?;
    let mut innings_meta = Vec::with_capacity(raw.len());
    let mut deliveries = Vec::new();
    for (i, inn) in raw.into_iter().enumerate() {
        let number = i as u32 + 1;
        let bowling_team = if inn.batting_team == teams[0] {
            teams[1].clone()
        } else if inn.batting_team == teams[1] {
            teams[0].clone()
        } else {
            String::new()
        };
        innings_meta.push(InningsInfo {
            number,
            batting_team: inn.batting_team,
            bowling_team,
            super_over: inn.super_over,
        });

        let mut current_over: Option<u32> = None;
        let mut ball_seq = 0;
        for (over_idx, ball) in inn.balls {
            match current_over {
                Some(prev) if over_idx < prev => {
                    return Err(IngestError::SchemaViolation(format!(
                        "innings {number}: over {over_idx} follows over {prev}"
                    )));
                }
                Some(prev) if over_idx == prev => ball_seq += 1,
                _ => ball_seq = 1,
            }
            current_over = Some(over_idx);
            deliveries.push(Delivery {
                match_id: match_id.to_string(),
                innings: number,
                over_idx,
                ball_seq,
                bowler: ball.bowler,
                striker: ball.striker,
                batter_runs: ball.batter_runs,
                extras: ball.extras,
                wickets: ball.wickets,
            });
        }
    }

    let meta = MatchMeta {
        match_id: match_id.to_string(),
        format,
        teams: (teams[0].clone(), teams[1].clone()),
        date,
        venue,
        innings: innings_meta,
    };
    Ok((meta, deliveries))
}

// ---------------------------------------------------------------------------
// Corpus assembly
// ---------------------------------------------------------------------------

fn is_match_file(path: &Path) -> bool {
    path.is_file()
        && matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("yaml") | Some("yml")
        )
}

/// Reads every `*.yaml` / `*.yml` file in `dir` and keeps the matches of
/// `format`. Files that fail to parse are listed in the report and skipped.
pub fn ingest_corpus(dir: &Path, format: MatchFormat) -> Result<(Corpus, IngestReport), IngestError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| IngestError::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()).map_err(|e| IngestError::io(dir, e)))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| is_match_file(p));
    paths.sort();

    let parsed: Vec<(String, Result<ParsedMatch, IngestError>)> = paths
        .par_iter()
        .map(|path| {
            let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let result = fs::read(path)
                .map_err(|e| IngestError::io(path, e))
                .and_then(|bytes| parse_match(&bytes, &stem));
            (name, result)
        })
        .collect();

    let mut report = IngestReport {
        files_seen: paths.len(),
        ..Default::default()
    };
    let mut seen_ids = BTreeSet::new();
    let mut kept: Vec<(MatchMeta, Vec<Delivery>)> = Vec::new();
    for (name, result) in parsed {
        match result {
            Ok((meta, deliveries)) => {
                if !seen_ids.insert(meta.match_id.clone()) {
                    report
                        .skipped
                        .push((name, format!("duplicate match id {}", meta.match_id)));
                } else if meta.format != format {
                    report.other_format += 1;
                } else {
                    kept.push((meta, deliveries));
                }
            }
            Err(e) => report.skipped.push((name, e.to_string())),
        }
    }
    if kept.is_empty() {
        return Err(IngestError::EmptyCorpus);
    }
    kept.sort_by(|a, b| (&a.0.date, &a.0.match_id).cmp(&(&b.0.date, &b.0.match_id)));
    let mut corpus = Corpus {
        matches: Vec::with_capacity(kept.len()),
        deliveries: Vec::new(),
        format_filter: format,
    };
    for (meta, deliveries) in kept {
        corpus.matches.push(meta);
        corpus.deliveries.extend(deliveries);
    }
    Ok((corpus, report))
}

// ---------------------------------------------------------------------------
// Intermediate format
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct DeliveryRow {
    match_id: String,
    format: MatchFormat,
    innings: u32,
    over_idx: u32,
    ball_seq: u32,
    bowler: String,
    striker: String,
    batter_runs: u32,
    wides: u32,
    noballs: u32,
    byes: u32,
    legbyes: u32,
    penalty: u32,
    wicket_kind: String,
    player_out: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatchRow {
    match_id: String,
    format: MatchFormat,
    date: String,
    team1: String,
    team2: String,
    venue: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct InningsRow {
    match_id: String,
    innings: u32,
    batting_team: String,
    bowling_team: String,
    super_over: bool,
}

fn join_wickets(wickets: &[Wicket], field: impl Fn(&Wicket) -> &str) -> String {
    wickets
        .iter()
        .map(field)
        .collect::<Vec<_>>()
        .join(&WICKET_SEP.to_string())
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, IngestError> {
    let file = fs::File::create(path).map_err(|e| IngestError::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<(), IngestError> {
    let tmp = path.with_extension("csv.tmp");
    {
        let mut w = csv_writer(&tmp)?;
        for row in rows {
            w.serialize(row).map_err(|e| IngestError::intermediate(path, e))?;
        }
        w.flush().map_err(|e| IngestError::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| IngestError::io(path, e))
}

/// Writes the corpus to `dir`, replacing any earlier ingestion there.
///
/// `deliveries.csv` carries the delivery stream; `matches.csv` and
/// `innings.csv` carry the match metadata and the per-innings teams.
pub fn write_corpus(corpus: &Corpus, dir: &Path) -> Result<(), IngestError> {
    fs::create_dir_all(dir).map_err(|e| IngestError::io(dir, e))?;
    let format = corpus.format_filter;
    let formats: std::collections::HashMap<&str, MatchFormat> = corpus
        .matches
        .iter()
        .map(|m| (m.match_id.as_str(), m.format))
        .collect();
    write_rows(
        &dir.join(DELIVERIES_FILE),
        corpus.deliveries.iter().map(|d| DeliveryRow {
            match_id: d.match_id.clone(),
            format: formats.get(d.match_id.as_str()).copied().unwrap_or(format),
            innings: d.innings,
            over_idx: d.over_idx,
            ball_seq: d.ball_seq,
            bowler: d.bowler.clone(),
            striker: d.striker.clone(),
            batter_runs: d.batter_runs,
            wides: d.extras.wides,
            noballs: d.extras.noballs,
            byes: d.extras.byes,
            legbyes: d.extras.legbyes,
            penalty: d.extras.penalty,
            wicket_kind: join_wickets(&d.wickets, |w| &w.kind),
            player_out: join_wickets(&d.wickets, |w| &w.player_out),
        }),
    )?;
    write_rows(
        &dir.join(MATCHES_FILE),
        corpus.matches.iter().map(|m| MatchRow {
            match_id: m.match_id.clone(),
            format: m.format,
            date: m.date.clone(),
            team1: m.teams.0.clone(),
            team2: m.teams.1.clone(),
            venue: m.venue.clone().unwrap_or_default(),
        }),
    )?;
    write_rows(
        &dir.join(INNINGS_FILE),
        corpus.matches.iter().flat_map(|m| {
            m.innings.iter().map(|i| InningsRow {
                match_id: m.match_id.clone(),
                innings: i.number,
                batting_team: i.batting_team.clone(),
                bowling_team: i.bowling_team.clone(),
                super_over: i.super_over,
            })
        }),
    )
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, IngestError> {
    let file = fs::File::open(path).map_err(|e| IngestError::io(path, e))?;
    csv::Reader::from_reader(file)
        .deserialize()
        .map(|r| r.map_err(|e| IngestError::intermediate(path, e)))
        .collect()
}

fn split_wickets(kinds: &str, players: &str) -> Vec<Wicket> {
    if kinds.is_empty() {
        return Vec::new();
    }
    kinds
        .split(WICKET_SEP)
        .zip(players.split(WICKET_SEP))
        .map(|(k, p)| Wicket {
            player_out: p.to_string(),
            kind: k.to_string(),
        })
        .collect()
}

/// Reads a corpus written by [`write_corpus`].
pub fn read_corpus(dir: &Path) -> Result<Corpus, IngestError> {
    let match_rows: Vec<MatchRow> = read_rows(&dir.join(MATCHES_FILE))?;
    let innings_rows: Vec<InningsRow> = read_rows(&dir.join(INNINGS_FILE))?;
    let delivery_rows: Vec<DeliveryRow> = read_rows(&dir.join(DELIVERIES_FILE))?;

    let mut matches: Vec<MatchMeta> = match_rows
        .into_iter()
        .map(|r| MatchMeta {
            match_id: r.match_id,
            format: r.format,
            teams: (r.team1, r.team2),
            date: r.date,
            venue: (!r.venue.is_empty()).then_some(r.venue),
            innings: Vec::new(),
        })
        .collect();
    let index: std::collections::HashMap<String, usize> = matches
        .iter()
        .enumerate()
        .map(|(i, m)| (m.match_id.clone(), i))
        .collect();
    let innings_path = dir.join(INNINGS_FILE);
    for r in innings_rows {
        let &i = index
            .get(&r.match_id)
            .ok_or_else(|| IngestError::intermediate(&innings_path, format!("unknown match {}", r.match_id)))?;
        matches[i].innings.push(InningsInfo {
            number: r.innings,
            batting_team: r.batting_team,
            bowling_team: r.bowling_team,
            super_over: r.super_over,
        });
    }
    let deliveries_path = dir.join(DELIVERIES_FILE);
    let deliveries = delivery_rows
        .into_iter()
        .map(|r| {
            if !index.contains_key(&r.match_id) {
                return Err(IngestError::intermediate(
                    &deliveries_path,
                    format!("unknown match {}", r.match_id),
                ));
            }
            Ok(Delivery {
                wickets: split_wickets(&r.wicket_kind, &r.player_out),
                match_id: r.match_id,
                innings: r.innings,
                over_idx: r.over_idx,
                ball_seq: r.ball_seq,
                bowler: r.bowler,
                striker: r.striker,
                batter_runs: r.batter_runs,
                extras: Extras {
                    wides: r.wides,
                    noballs: r.noballs,
                    byes: r.byes,
                    legbyes: r.legbyes,
                    penalty: r.penalty,
                },
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let format_filter = matches
        .first()
        .map(|m| m.format)
        .ok_or(IngestError::EmptyCorpus)?;
    Ok(Corpus {
        matches,
        deliveries,
        format_filter,
    })
}
