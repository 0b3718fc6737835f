use std::path::PathBuf;
use std::process::ExitCode;

use bowlership::bowlership::{BowlershipError, IndividualSet, Metric};
use bowlership::config::{ConfigError, ConfigLayer, RunConfig};
use bowlership::ingest::{ingest_corpus, read_corpus, write_corpus, IngestError, MatchFormat};
use bowlership::pipeline::{
    analyze, export_graph, select_team, write_outputs, AnalysisError, GraphLayout, NetworkFile,
    REPORT_FILE,
};
use bowlership::synth::{write_synthetic_corpus, SynthConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bowlership", version, about = "Detect bowler-pair synergies in ball-by-ball cricket data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a directory of cricsheet YAML files into the intermediate CSVs.
    Ingest(Common),
    /// Run the pair tests and write every table, graph and report.
    Analyze(Common),
    /// Select k bowlers from a team's weighted network; prints JSON.
    Select {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        team: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "economy")]
        metric: Metric,
    },
    /// Print a team's network as DOT or CSV.
    ExportGraph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        team: String,
        #[arg(long, default_value = "economy")]
        metric: Metric,
        /// dot, weighted-dot or csv
        #[arg(long, default_value = "dot")]
        layout: GraphLayout,
    },
    /// Print the report written by `analyze`.
    Report(Common),
    /// Write a synthetic corpus with one planted synergy pair.
    Synth {
        /// Directory to write the YAML files to.
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 20)]
        matches: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "ODI")]
        format: MatchFormat,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory of cricsheet YAML files.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// TEST, ODI or T20I.
    #[arg(long)]
    format: Option<MatchFormat>,
    /// Minimum career overs per bowler.
    #[arg(long)]
    ti: Option<u32>,
    /// Minimum alternating overs per pair.
    #[arg(long)]
    tp: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    exact_cutoff: Option<usize>,
    /// all_overs or exclude_pair.
    #[arg(long)]
    individual_set: Option<IndividualSet>,
    #[arg(long)]
    charge_extras: Option<bool>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for intermediate and result files.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = self.config.as_deref().map(ConfigLayer::from_file).transpose()?;
        let flags = ConfigLayer {
            corpus_dir: self.corpus.clone(),
            format: self.format,
            t_i: self.ti,
            t_p: self.tp,
            alpha: self.alpha,
            exact_cutoff: self.exact_cutoff,
            individual_set: self.individual_set,
            charge_extras: self.charge_extras,
            seed: self.seed,
            output_dir: self.out.clone(),
        };
        Ok(RunConfig::layered(flags, file)?)
    }
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Io(String),
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        if e.is_io() {
            CliError::Io(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        AnalysisError::from(e).into()
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        AnalysisError::from(e).into()
    }
}

impl From<BowlershipError> for CliError {
    fn from(e: BowlershipError) -> Self {
        AnalysisError::from(e).into()
    }
}

fn load_network(cfg: &RunConfig) -> Result<NetworkFile, CliError> {
    Ok(NetworkFile::load(&cfg.output_dir)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest(common) => {
            let cfg = common.resolve()?;
            let dir = cfg
                .corpus_dir
                .clone()
                .ok_or_else(|| CliError::Domain("no corpus directory: pass --corpus or set corpus_dir".into()))?;
            let (corpus, report) = ingest_corpus(&dir, cfg.format)?;
            for (file, reason) in &report.skipped {
                eprintln!("skipped {file}: {reason}");
            }
            write_corpus(&corpus, &cfg.output_dir)?;
            println!("matches={} deliveries={}", corpus.matches.len(), corpus.deliveries.len());
        }
        Command::Analyze(common) => {
            let cfg = common.resolve()?;
            let corpus = read_corpus(&cfg.output_dir)?;
            let analysis = analyze(&corpus, &cfg)?;
            write_outputs(&analysis, &cfg.output_dir)?;
            println!(
                "pairs={} tests={} skipped={}",
                analysis.pairs.len(),
                analysis.tests.len(),
                analysis.skipped.len()
            );
        }
        Command::Select { common, team, k, metric } => {
            let cfg = common.resolve()?;
            let result = select_team(&load_network(&cfg)?, &team, metric, k)?;
            let json = serde_json::to_string_pretty(&result).map_err(|e| CliError::Io(e.to_string()))?;
            println!("{json}");
        }
        Command::ExportGraph {
            common,
            team,
            metric,
            layout,
        } => {
            let cfg = common.resolve()?;
            print!("{}", export_graph(&load_network(&cfg)?, &team, metric, layout)?);
        }
        Command::Report(common) => {
            let cfg = common.resolve()?;
            let path = cfg.output_dir.join(REPORT_FILE);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            print!("{text}");
        }
        Command::Synth {
            dir,
            matches,
            seed,
            format,
        } => {
            let cfg = SynthConfig {
                seed,
                matches,
                format,
                ..Default::default()
            };
            let ledger = write_synthetic_corpus(&cfg, &dir)?;
            for (a, b) in &ledger.planted {
                println!("planted {a} + {b}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
