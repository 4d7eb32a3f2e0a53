use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};
use comention::graph::{build_dynamic, build_static, GraphQuery};
use comention::service::{self, Api};
use comention::time::{parse_date, Period};
use comention::{ingest, IngestOptions, PersonDictionary, RecordStore};

/// Person co-mention extraction from WARC files and temporal social graphs.
#[derive(Parser)]
#[command(name = "comention", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract co-mentions from WARC files into a store.
    Ingest {
        /// Person dictionary, one name per line.
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        store: PathBuf,
        /// Worker threads (default: one per CPU).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(required = true)]
        warc: Vec<PathBuf>,
    },
    /// Write all records as NDJSON.
    Export {
        #[arg(long)]
        store: PathBuf,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Append records from an NDJSON file.
    Import {
        #[arg(long)]
        store: PathBuf,
        ndjson: PathBuf,
    },
    /// Print corpus statistics as JSON.
    #[command(group(ArgGroup::new("kind").required(true).args(["weights", "per_year"])))]
    Stats {
        #[arg(long)]
        store: PathBuf,
        /// Number of records per entry weight.
        #[arg(long)]
        weights: bool,
        /// Number of records per crawl year.
        #[arg(long)]
        per_year: bool,
    },
    /// Build a static graph, or a dynamic one with --window-days.
    Graph {
        #[arg(long)]
        store: PathBuf,
        #[arg(long = "person", required = true)]
        persons: Vec<String>,
        /// First day, YYYY-MM-DD.
        #[arg(long)]
        from: String,
        /// Day after the last one, YYYY-MM-DD.
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_entries: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        min_entry_weight: f64,
        #[arg(long, default_value_t = 0.0)]
        min_edge_weight: f64,
        #[arg(long)]
        window_days: Option<u32>,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the HTTP API (and optionally a UI bundle).
    Serve {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory served under `/`.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

type Error = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Ingest { dict, store, workers, warc } => {
            let dictionary = PersonDictionary::load(BufReader::new(File::open(&dict).map_err(|e| format!("{}: {e}", dict.display()))?))?;
            let store = RecordStore::open(&store)?;
            let report = ingest(&warc, &dictionary, &store, &IngestOptions::default().with_workers(workers));
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.errors.is_empty() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Export { store, out } => {
            let store = open_existing(&store)?;
            let mut out = output(&out)?;
            store.export(&mut out)?;
            out.flush()?;
        }
        Command::Import { store, ndjson } => {
            let input = File::open(&ndjson).map_err(|e| format!("{}: {e}", ndjson.display()))?;
            let ids = RecordStore::open(&store)?.import(BufReader::new(input))?;
            eprintln!("imported {} records", ids.len());
        }
        Command::Stats { store, weights, per_year: _ } => {
            let store = open_existing(&store)?;
            let json = if weights {
                let rows: Vec<_> = store
                    .weight_histogram()
                    .iter()
                    .map(|(n, w, count)| serde_json::json!({"n": n, "weight": w, "count": count}))
                    .collect();
                serde_json::to_string_pretty(&rows)?
            } else {
                let map: serde_json::Map<_, _> =
                    store.edges_per_year().iter().map(|(y, c)| (y.to_string(), c.into())).collect();
                serde_json::to_string_pretty(&map)?
            };
            println!("{json}");
        }
        Command::Graph {
            store,
            persons,
            from,
            to,
            max_entries,
            min_entry_weight,
            min_edge_weight,
            window_days,
            out,
        } => {
            let store = open_existing(&store)?;
            let period = Period::new(parse_date(&from)?, parse_date(&to)?)?;
            let mut query = GraphQuery::new(persons, period)?
                .with_max_entries(max_entries)?
                .with_min_entry_weight(min_entry_weight)?
                .with_min_edge_weight(min_edge_weight)?;
            if let Some(days) = window_days {
                query = query.with_window_days(days)?;
            }
            let entries = store.query_entries(query.persons(), query.period(), None)?;
            let json = match window_days {
                Some(_) => build_dynamic(&entries, &query)?.to_json(),
                None => build_static(&entries, &query).to_json(),
            };
            let mut out = output(&out)?;
            writeln!(out, "{json}")?;
            out.flush()?;
        }
        Command::Serve { store, port, host, ui_dir } => {
            let store = Arc::new(open_existing(&store)?);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let listener = tokio::net::TcpListener::bind(SocketAddr::new(host, port)).await?;
                eprintln!("serving {} records on http://{}", store.len(), listener.local_addr()?);
                let shutdown = async {
                    let _ = tokio::signal::ctrl_c().await;
                };
                service::serve(listener, Api::new(store), ui_dir, shutdown).await
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn open_existing(dir: &Path) -> Result<RecordStore, Error> {
    if !dir.is_dir() {
        return Err(format!("store directory {} does not exist", dir.display()).into());
    }
    Ok(RecordStore::open(dir)?)
}

fn output(path: &Path) -> Result<Box<dyn Write>, Error> {
    if path == Path::new("-") {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Box::new(BufWriter::new(file)))
}
