//! End-to-end analysis of an ingested corpus and the files it emits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::{fs, io};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bowlership::{
    bowler_select, build_directed_graph, classify_pair, create_weighted_graph, directed_dot,
    edge_rows, edges_csv, weighted_dot, BowlershipError, DirectedSignedGraph, DirectedTest, Metric,
    SelectionResult, Sign, WeightedGraph,
};
use crate::config::{ConfigError, RunConfig};
use crate::ingest::{Corpus, IngestError, MatchFormat};
use crate::overmodel::{all_series, build_over_records, over_histograms, summarize, MetricSummary};
use crate::pairing::{accumulate_pairs, filter_pairs, qualifying_bowlers, BowlingPair};
use crate::stats::{normality_battery, NormalityTable, NormalityTest};

pub const PAIRS_FILE: &str = "pairs.csv";
pub const EDGES_FILE: &str = "edges.csv";
pub const TESTS_FILE: &str = "bowlership_tests.csv";
pub const SKIPPED_FILE: &str = "skipped_tests.csv";
pub const TABLE1_FILE: &str = "table1.csv";
pub const HIST_RUNS_FILE: &str = "hist_runs.csv";
pub const HIST_WICKETS_FILE: &str = "hist_wickets.csv";
pub const SCATTER_FILE: &str = "scatter.csv";
pub const NETWORK_FILE: &str = "network.json";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const REPORT_FILE: &str = "report.txt";

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Bowlership(#[from] BowlershipError),
    #[error("no qualifying pairs: {bowlers} bowlers reach t_i = {t_i}, none of their pairs reach t_p = {t_p} alternating overs")]
    NoQualifyingPairs { bowlers: usize, t_i: u32, t_p: u32 },
    #[error("unknown team {0:?}")]
    UnknownTeam(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Output { path: PathBuf, message: String },
}

impl AnalysisError {
    fn io(path: &Path, source: io::Error) -> Self {
        AnalysisError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn output(path: &Path, message: impl ToString) -> Self {
        AnalysisError::Output {
            path: path.to_path_buf(),
            message: message.to_string(),
        }
    }

    /// True for failures to read or write files, as opposed to problems
    /// with the data or the request.
    pub fn is_io(&self) -> bool {
        match self {
            AnalysisError::Io { .. } | AnalysisError::Output { .. } => true,
            AnalysisError::Ingest(e) => matches!(e, IngestError::Io { .. } | IngestError::Intermediate { .. }),
            AnalysisError::Config(e) => matches!(e, ConfigError::Io { .. }),
            _ => false,
        }
    }
}

/// A directional test that could not be run, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedTest {
    pub from: String,
    pub to: String,
    pub metric: Metric,
    pub reason: String,
}

/// The signed and weighted graphs of one team for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricNetwork {
    pub directed: DirectedSignedGraph,
    pub weighted: WeightedGraph,
}

/// Everything `select` and `export-graph` need, persisted as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub format: MatchFormat,
    pub alpha: f64,
    /// team → metric name → graphs
    pub teams: BTreeMap<String, BTreeMap<Metric, MetricNetwork>>,
}

impl NetworkFile {
    pub fn network(&self, team: &str, metric: Metric) -> Result<&MetricNetwork, AnalysisError> {
        let by_metric = self
            .teams
            .get(team)
            .ok_or_else(|| AnalysisError::UnknownTeam(team.to_string()))?;
        Ok(by_metric.get(&metric).expect("every team has all metrics"))
    }

    pub fn load(dir: &Path) -> Result<Self, AnalysisError> {
        let path = dir.join(NETWORK_FILE);
        let text = fs::read_to_string(&path).map_err(|e| AnalysisError::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| AnalysisError::output(&path, e))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub config: RunConfig,
    pub n_matches: usize,
    pub n_deliveries: usize,
    pub n_over_records: usize,
    pub summaries: BTreeMap<String, MetricSummary>,
    pub qualifying_bowlers: Vec<String>,
    /// Pairs with at least one alternation run, before thresholds.
    pub candidate_pairs: usize,
    pub pairs: Vec<BowlingPair>,
    pub tests: Vec<DirectedTest>,
    pub skipped: Vec<SkippedTest>,
    pub normality: NormalityTable,
    pub runs_histogram: BTreeMap<u32, u64>,
    pub wickets_histogram: BTreeMap<u32, u64>,
    pub network: NetworkFile,
}

impl Analysis {
    pub fn edge_count(&self, metric: Metric, sign: Sign) -> usize {
        self.tests
            .iter()
            .filter(|t| t.metric == metric && t.sign == Some(sign))
            .count()
    }
}

/// Runs the full analysis on an ingested corpus.
///
/// Directional tests are run for both metrics on every qualifying pair;
/// graphs are built per team from the pairs that team's bowlers formed.
pub fn analyze(corpus: &Corpus, cfg: &RunConfig) -> Result<Analysis, AnalysisError> {
    let records = build_over_records(corpus, cfg.attribution());
    let series = all_series(&records);
    let summaries: BTreeMap<String, MetricSummary> = series
        .iter()
        .filter_map(|(b, s)| summarize(s).ok().map(|m| (b.clone(), m)))
        .collect();
    let pairing = cfg.pairing();
    let qualifying = qualifying_bowlers(&summaries, &pairing);
    let candidates = accumulate_pairs(&records);
    let pairs = filter_pairs(&candidates, &summaries, &pairing);
    if pairs.is_empty() {
        return Err(AnalysisError::NoQualifyingPairs {
            bowlers: qualifying.len(),
            t_i: cfg.t_i,
            t_p: cfg.t_p,
        });
    }

    let jobs: Vec<(&BowlingPair, Metric)> = Metric::ALL
        .iter()
        .flat_map(|&m| pairs.iter().map(move |p| (p, m)))
        .collect();
    let outcomes: Vec<[Result<DirectedTest, BowlershipError>; 2]> = jobs
        .par_iter()
        .map(|&(pair, metric)| classify_pair(pair, &series, &cfg.classify_options(metric)))
        .collect();
    let mut tests = Vec::new();
    let mut skipped = Vec::new();
    for ((pair, metric), results) in jobs.iter().zip(outcomes) {
        for (from, result) in [&pair.a, &pair.b].into_iter().zip(results) {
            match result {
                Ok(t) => tests.push(t),
                Err(BowlershipError::InsufficientSample { bowler, partner, .. }) => {
                    skipped.push(SkippedTest {
                        from: bowler,
                        to: partner,
                        metric: *metric,
                        reason: "insufficient sample".into(),
                    })
                }
                Err(e) => {
                    skipped.push(SkippedTest {
                        from: from.clone(),
                        to: pair.partner_of(from).unwrap_or_default().to_string(),
                        metric: *metric,
                        reason: e.to_string(),
                    });
                }
            }
        }
    }

    let mut teams: BTreeMap<String, BTreeMap<Metric, MetricNetwork>> = BTreeMap::new();
    let roster: BTreeMap<&str, BTreeSet<&str>> = pairs.iter().fold(BTreeMap::new(), |mut acc, p| {
        let r: &mut BTreeSet<&str> = acc.entry(p.team.as_str()).or_default();
        r.insert(&p.a);
        r.insert(&p.b);
        acc
    });
    for (team, bowlers) in &roster {
        let team_tests: Vec<DirectedTest> = tests.iter().filter(|t| t.team == *team).cloned().collect();
        let mut by_metric = BTreeMap::new();
        for metric in Metric::ALL {
            let directed = build_directed_graph(bowlers.iter().copied(), &team_tests, metric)?;
            let weighted = create_weighted_graph(&directed);
            by_metric.insert(metric, MetricNetwork { directed, weighted });
        }
        teams.insert(team.to_string(), by_metric);
    }

    let samples: Vec<Vec<f64>> = qualifying.iter().map(|b| series[b].complete_runs()).collect();
    let normality = normality_battery(samples.iter().map(Vec::as_slice), cfg.alpha, cfg.seed);
    let (runs_histogram, wickets_histogram) = over_histograms(&records);
    let n_matches = corpus.matches.len();

    Ok(Analysis {
        config: cfg.clone(),
        n_matches,
        n_deliveries: corpus.deliveries.len(),
        n_over_records: records.len(),
        summaries,
        qualifying_bowlers: qualifying,
        candidate_pairs: candidates.len(),
        pairs,
        tests,
        skipped,
        normality,
        runs_histogram,
        wickets_histogram,
        network: NetworkFile {
            format: cfg.format,
            alpha: cfg.alpha,
            teams,
        },
    })
}

fn csv_err(name: &'static str) -> impl Fn(csv::Error) -> AnalysisError {
    move |e| AnalysisError::output(Path::new(name), e)
}

fn csv_to_string<T: Serialize>(headers: &[&str], rows: impl IntoIterator<Item = T>) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(headers)?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of strings is utf-8"))
}

#[derive(Serialize)]
struct TestRow<'a> {
    team: &'a str,
    from: &'a str,
    to: &'a str,
    metric: &'a str,
    n_bowlership: usize,
    n_individual: usize,
    bowlership_mean: f64,
    individual_mean: f64,
    u_statistic: f64,
    p_greater: f64,
    p_two: f64,
    p_less: f64,
    method: &'a str,
    sign: &'a str,
}

/// The emitted files as (file name, contents), in a fixed order.
pub fn render_outputs(a: &Analysis) -> Result<Vec<(&'static str, String)>, AnalysisError> {
    let mut files = Vec::new();

    files.push((
        PAIRS_FILE,
        csv_to_string(
            &["bowler_a", "bowler_b", "team", "pair_overs", "runs_count"],
            a.pairs.iter().map(|p| (&p.a, &p.b, &p.team, p.pair_overs, p.runs_count)),
        )
        .map_err(csv_err(PAIRS_FILE))?,
    ));

    let mut edge_rows_all = Vec::new();
    for by_metric in a.network.teams.values() {
        for net in by_metric.values() {
            edge_rows_all.extend(edge_rows(&net.directed, &net.weighted));
        }
    }
    let mut edges = Vec::new();
    edges_csv(&edge_rows_all, &mut edges).map_err(csv_err(EDGES_FILE))?;
    files.push((EDGES_FILE, String::from_utf8(edges).expect("utf-8")));

    files.push((
        TESTS_FILE,
        csv_to_string(
            &[
                "team",
                "from",
                "to",
                "metric",
                "n_bowlership",
                "n_individual",
                "bowlership_mean",
                "individual_mean",
                "u_statistic",
                "p_greater",
                "p_two",
                "p_less",
                "method",
                "sign",
            ],
            a.tests.iter().map(|t| TestRow {
                team: &t.team,
                from: &t.from,
                to: &t.to,
                metric: t.metric.as_str(),
                n_bowlership: t.n_bowlership,
                n_individual: t.n_individual,
                bowlership_mean: t.bowlership_mean,
                individual_mean: t.individual_mean,
                u_statistic: t.mw.u_statistic,
                p_greater: t.mw.p_greater,
                p_two: t.mw.p_two_sided,
                p_less: t.mw.p_less,
                method: t.mw.method.as_str(),
                sign: t.sign.map_or("", Sign::symbol),
            }),
        )
        .map_err(csv_err(TESTS_FILE))?,
    ));

    files.push((
        SKIPPED_FILE,
        csv_to_string(
            &["from", "to", "metric", "reason"],
            a.skipped.iter().map(|s| (&s.from, &s.to, s.metric.as_str(), &s.reason)),
        )
        .map_err(csv_err(SKIPPED_FILE))?,
    ));

    files.push((
        TABLE1_FILE,
        csv_to_string(
            &["format", "test", "fail_count", "pass_count"],
            NormalityTest::ALL.iter().map(|&t| {
                let row = a.normality.row(t);
                (a.config.format.as_str(), t.label(), row.fail, row.pass)
            }),
        )
        .map_err(csv_err(TABLE1_FILE))?,
    ));

    for (name, hist) in [
        (HIST_RUNS_FILE, &a.runs_histogram),
        (HIST_WICKETS_FILE, &a.wickets_histogram),
    ] {
        files.push((
            name,
            csv_to_string(&["value", "count"], hist.iter()).map_err(csv_err(name))?,
        ));
    }

    files.push((
        SCATTER_FILE,
        csv_to_string(
            &["bowler", "n_overs", "economy", "hitrate"],
            a.summaries
                .iter()
                .map(|(b, s)| (b, s.n_overs, s.economy, s.hitrate)),
        )
        .map_err(csv_err(SCATTER_FILE))?,
    ));

    let mut network = serde_json::to_string_pretty(&a.network)
        .map_err(|e| AnalysisError::output(Path::new(NETWORK_FILE), e))?;
    network.push('\n');
    files.push((NETWORK_FILE, network));
    files.push((SUMMARY_FILE, summary_text(a)));
    files.push((REPORT_FILE, report_text(a)));
    Ok(files)
}

/// Machine-readable `key = value` summary of the run.
pub fn summary_text(a: &Analysis) -> String {
    let mut out = a.config.parameters_text();
    let _ = writeln!(out, "matches = {}", a.n_matches);
    let _ = writeln!(out, "deliveries = {}", a.n_deliveries);
    let _ = writeln!(out, "over_records = {}", a.n_over_records);
    let _ = writeln!(out, "bowlers = {}", a.summaries.len());
    let _ = writeln!(out, "qualifying_bowlers = {}", a.qualifying_bowlers.len());
    let _ = writeln!(out, "candidate_pairs = {}", a.candidate_pairs);
    let _ = writeln!(out, "qualifying_pairs = {}", a.pairs.len());
    let _ = writeln!(out, "directional_tests = {}", a.tests.len());
    let _ = writeln!(out, "skipped_tests = {}", a.skipped.len());
    for metric in Metric::ALL {
        for sign in [Sign::Positive, Sign::Negative] {
            let name = match sign {
                Sign::Positive => "positive",
                Sign::Negative => "negative",
            };
            let _ = writeln!(
                out,
                "{}_{} = {}",
                metric.as_str().to_ascii_lowercase(),
                name,
                a.edge_count(metric, sign)
            );
        }
    }
    let _ = writeln!(out, "teams = {}", a.network.teams.len());
    out
}

/// Human-readable report.
pub fn report_text(a: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Bowlership analysis, {} matches", a.config.format);
    let _ = writeln!(
        out,
        "{} matches, {} deliveries, {} bowlers ({} with at least {} overs)",
        a.n_matches,
        a.n_deliveries,
        a.summaries.len(),
        a.qualifying_bowlers.len(),
        a.config.t_i
    );
    let _ = writeln!(
        out,
        "{} qualifying pairs (at least {} alternating overs), alpha = {}",
        a.pairs.len(),
        a.config.t_p,
        a.config.alpha
    );
    let _ = writeln!(out, "\nNormality of runs per over ({} bowlers)", a.normality.bowlers);
    for t in NormalityTest::ALL {
        let row = a.normality.row(t);
        let total = row.fail + row.pass;
        let share = if total == 0 { 0.0 } else { 100.0 * row.fail as f64 / total as f64 };
        let _ = writeln!(out, "  {:<17} fail {:>5} ({:.0}%)  pass {:>5}", t.label(), row.fail, share, row.pass);
    }
    for (team, by_metric) in &a.network.teams {
        let _ = writeln!(out, "\n{team}");
        for (metric, net) in by_metric {
            let _ = writeln!(
                out,
                "  {}: {} bowlers, {} directed edges, {} weighted edges",
                metric.as_str(),
                net.directed.vertices.len(),
                net.directed.edges.len(),
                net.weighted.edge_count()
            );
            for e in net.directed.edges.values() {
                let _ = writeln!(
                    out,
                    "    {} -> {} {} (p = {:.3e})",
                    e.from,
                    e.to,
                    e.sign.symbol(),
                    e.mw.p_two_sided
                );
            }
        }
    }
    out
}

/// Writes all outputs to `dir`, each through a temporary file.
pub fn write_outputs(a: &Analysis, dir: &Path) -> Result<(), AnalysisError> {
    fs::create_dir_all(dir).map_err(|e| AnalysisError::io(dir, e))?;
    for (name, text) in render_outputs(a)? {
        let path = dir.join(name);
        let tmp = dir.join(format!("{name}.tmp"));
        fs::write(&tmp, text).map_err(|e| AnalysisError::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| AnalysisError::io(&path, e))?;
    }
    Ok(())
}

pub fn select_team(
    network: &NetworkFile,
    team: &str,
    metric: Metric,
    k: usize,
) -> Result<SelectionResult, AnalysisError> {
    Ok(bowler_select(&network.network(team, metric)?.weighted, k)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphLayout {
    /// Directed signed graph as DOT.
    Dot,
    /// Weighted undirected graph as DOT.
    WeightedDot,
    Csv,
}

impl std::str::FromStr for GraphLayout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(GraphLayout::Dot),
            "weighted-dot" | "weighted_dot" => Ok(GraphLayout::WeightedDot),
            "csv" => Ok(GraphLayout::Csv),
            _ => Err(format!("unknown layout {s:?}")),
        }
    }
}

pub fn export_graph(
    network: &NetworkFile,
    team: &str,
    metric: Metric,
    layout: GraphLayout,
) -> Result<String, AnalysisError> {
    let net = network.network(team, metric)?;
    Ok(match layout {
        GraphLayout::Dot => directed_dot(&net.directed),
        GraphLayout::WeightedDot => weighted_dot(&net.weighted),
        GraphLayout::Csv => {
            let mut buf = Vec::new();
            edges_csv(&edge_rows(&net.directed, &net.weighted), &mut buf)
                .map_err(|e| AnalysisError::output(Path::new(EDGES_FILE), e))?;
            String::from_utf8(buf).expect("utf-8")
        }
    })
}
