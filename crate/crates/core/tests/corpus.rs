//! Ingestion and over model checked against the synthetic generator's own
//! bookkeeping.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use bowlership::config::{ConfigLayer, RunConfig};
use bowlership::ingest::{ingest_corpus, read_corpus, write_corpus, IngestError, MatchFormat};
use bowlership::overmodel::{all_series, build_over_records, Attribution};
use bowlership::pipeline::{analyze, render_outputs};
use bowlership::synth::{generate, SynthConfig, SynthLedger};

fn small(format: MatchFormat, seed: u64, matches: usize) -> SynthConfig {
    SynthConfig {
        seed,
        matches,
        format,
        overs_per_innings: Some(20),
        ..Default::default()
    }
}

fn write_prefixed(cfg: &SynthConfig, dir: &Path, prefix: &str) -> SynthLedger {
    let (files, ledger) = generate(cfg);
    for (name, text) in files {
        fs::write(dir.join(format!("{prefix}{name}")), text).unwrap();
    }
    ledger
}

#[test]
fn format_filter_keeps_only_requested_matches() {
    let dir = tempfile::tempdir().unwrap();
    write_prefixed(&small(MatchFormat::Odi, 1, 2), dir.path(), "odi_");
    write_prefixed(&small(MatchFormat::Test, 2, 1), dir.path(), "test_");
    fs::write(dir.path().join("notes.txt"), "not a match").unwrap();

    let (odi, report) = ingest_corpus(dir.path(), MatchFormat::Odi).unwrap();
    assert_eq!(odi.matches.len(), 2);
    assert_eq!(report.files_seen, 3);
    assert_eq!(report.other_format, 1);
    assert!(odi.matches.iter().all(|m| m.format == MatchFormat::Odi));

    let (test, _) = ingest_corpus(dir.path(), MatchFormat::Test).unwrap();
    assert_eq!(test.matches.len(), 1);

    assert!(matches!(
        ingest_corpus(dir.path(), MatchFormat::T20i),
        Err(IngestError::EmptyCorpus)
    ));
}

#[test]
fn broken_files_are_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    write_prefixed(&small(MatchFormat::Odi, 3, 1), dir.path(), "");
    fs::write(dir.path().join("broken.yaml"), "info: [unterminated").unwrap();
    fs::write(dir.path().join("empty.yaml"), "meta:\n  data_version: 1\n").unwrap();
    let (corpus, report) = ingest_corpus(dir.path(), MatchFormat::Odi).unwrap();
    assert_eq!(corpus.matches.len(), 1);
    let skipped: Vec<&str> = report.skipped.iter().map(|(f, _)| f.as_str()).collect();
    assert_eq!(skipped, ["broken.yaml", "empty.yaml"]);
}

#[test]
fn over_records_agree_with_generator_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = write_prefixed(&small(MatchFormat::Odi, 11, 6), dir.path(), "");
    let (corpus, _) = ingest_corpus(dir.path(), MatchFormat::Odi).unwrap();

    let mut totals: BTreeMap<String, u64> = BTreeMap::new();
    for d in &corpus.deliveries {
        *totals.entry(d.match_id.clone()).or_default() += u64::from(d.total_runs());
    }
    assert_eq!(totals, ledger.match_totals);

    let records = build_over_records(&corpus, Attribution::default());
    let series = all_series(&records);
    assert_eq!(
        series.keys().collect::<Vec<_>>(),
        ledger.bowlers.keys().collect::<Vec<_>>()
    );
    for (name, expected) in &ledger.bowlers {
        let s = &series[name];
        assert_eq!(s.overs.len() as u32, expected.over_records, "{name}");
        let balls: u32 = s.overs.iter().map(|o| o.legal_balls).sum();
        assert_eq!(balls, expected.legal_balls, "{name}");
        assert_eq!(s.total_runs, expected.runs_charged, "{name}");
        assert_eq!(s.total_wickets, expected.wickets_credited, "{name}");
        let runs: Vec<f64> = expected.complete_over_runs.iter().map(|&r| f64::from(r)).collect();
        assert_eq!(s.complete_runs(), runs, "{name}");
    }
}

#[test]
fn histograms_count_every_complete_over() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = write_prefixed(&small(MatchFormat::Odi, 12, 4), dir.path(), "");
    let (corpus, _) = ingest_corpus(dir.path(), MatchFormat::Odi).unwrap();
    let cfg = RunConfig::resolve(ConfigLayer::parse("t_i = 1\nt_p = 2").unwrap()).unwrap();
    let a = analyze(&corpus, &cfg).unwrap();

    let complete: u64 = ledger
        .bowlers
        .values()
        .map(|b| b.complete_over_runs.len() as u64)
        .sum();
    assert_eq!(a.runs_histogram.values().sum::<u64>(), complete);
    assert_eq!(a.wickets_histogram.values().sum::<u64>(), complete);

    let mut by_runs: BTreeMap<u32, u64> = BTreeMap::new();
    for b in ledger.bowlers.values() {
        for &r in &b.complete_over_runs {
            *by_runs.entry(r).or_default() += 1;
        }
    }
    assert_eq!(a.runs_histogram, by_runs);
}

#[test]
fn scatter_matches_hand_computed_rates() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = write_prefixed(&small(MatchFormat::Odi, 13, 4), dir.path(), "");
    let (corpus, _) = ingest_corpus(dir.path(), MatchFormat::Odi).unwrap();
    let cfg = RunConfig::resolve(ConfigLayer::parse("t_i = 1\nt_p = 2").unwrap()).unwrap();
    let a = analyze(&corpus, &cfg).unwrap();
    let files = render_outputs(&a).unwrap();
    let scatter = &files.iter().find(|(n, _)| *n == "scatter.csv").unwrap().1;

    let mut rows = csv::Reader::from_reader(scatter.as_bytes());
    let mut seen = 0;
    for row in rows.records() {
        let row = row.unwrap();
        let b = &ledger.bowlers[&row[0]];
        let overs = f64::from(b.legal_balls) / 6.0;
        let n_overs: f64 = row[1].parse().unwrap();
        let economy: f64 = row[2].parse().unwrap();
        let hitrate: f64 = row[3].parse().unwrap();
        assert!((n_overs - overs).abs() < 1e-9);
        assert!((economy - b.runs_charged as f64 / overs).abs() < 1e-9);
        assert!((hitrate - b.wickets_credited as f64 / overs).abs() < 1e-9);
        seen += 1;
    }
    assert_eq!(seen, ledger.bowlers.len());
}

#[test]
fn intermediate_files_round_trip_byte_for_byte() {
    let src = tempfile::tempdir().unwrap();
    write_prefixed(&small(MatchFormat::Odi, 14, 3), src.path(), "");
    let (corpus, _) = ingest_corpus(src.path(), MatchFormat::Odi).unwrap();

    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    write_corpus(&corpus, first.path()).unwrap();
    let back = read_corpus(first.path()).unwrap();
    assert_eq!(back, corpus);
    write_corpus(&back, second.path()).unwrap();

    let names = |dir: &Path| {
        let mut n: Vec<_> = fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        n.sort();
        n
    };
    assert_eq!(names(first.path()), names(second.path()));
    for name in names(first.path()) {
        assert_eq!(
            fs::read(first.path().join(&name)).unwrap(),
            fs::read(second.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }

    let (again, _) = ingest_corpus(src.path(), MatchFormat::Odi).unwrap();
    assert_eq!(again, corpus);
}

#[test]
fn corrupt_intermediate_file_is_reported() {
    let src = tempfile::tempdir().unwrap();
    write_prefixed(&small(MatchFormat::Odi, 15, 1), src.path(), "");
    let (corpus, _) = ingest_corpus(src.path(), MatchFormat::Odi).unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(&corpus, out.path()).unwrap();
    fs::write(out.path().join("deliveries.csv"), "garbage\n\"unclosed").unwrap();
    assert!(matches!(
        read_corpus(out.path()),
        Err(IngestError::Intermediate { .. })
    ));
    assert!(matches!(
        read_corpus(&out.path().join("missing")),
        Err(IngestError::Io { .. })
    ));
}
