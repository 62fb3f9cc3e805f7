//! `ldpart`: classify graphs, build and verify locating-dominating
//! partitions, run the exact oracles, generate instances and sweep corpora.

mod input;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ldpart::format::{write_graph, Format};
use ldpart::generators::{enumerate_mops, generate, GenSpec};
use ldpart::oracle::{gamma_ld, ld_partition_exists, OracleCaps};
use ldpart::{check_ld_partition, GraphClass, LdPartition, VertexSet};
use rayon::prelude::*;
use serde::Serialize;

use input::{read_corpus, read_instances, read_single, Instance};
use report::{run_partition, to_dot, BatchSummary, ClassChoice, Classes, PartitionOptions, RunReport, Status, SCHEMA};

#[derive(Parser)]
#[command(name = "ldpart", version, about = "Locating-dominating partitions of graphs")]
struct Cli {
    /// Input or output graph format; inputs are auto-detected when omitted.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest order for the minimum LD-set search (default 18, or LD_ORACLE_CAP).
    #[arg(long, global = true)]
    cap_gamma: Option<usize>,
    /// Largest order for the partition existence search (default 20, or LD_ORACLE_CAP).
    #[arg(long, global = true)]
    cap_partition: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership, twin-freeness and isolate-freeness.
    Classify {
        /// Graph file; stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Construct an LD-partition.
    Partition {
        input: Option<PathBuf>,
        /// auto, dh, mop, split or cobipartite.
        #[arg(long, default_value = "auto")]
        class: ClassChoice,
        /// Skip the independent re-check and the oracle cross-check.
        #[arg(long)]
        no_verify: bool,
        /// Also write a Graphviz rendering of the partition.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a given partition.
    Verify {
        input: Option<PathBuf>,
        /// JSON file holding `{"d1": [..], "d2": [..]}` or a partition report.
        #[arg(long, conflicts_with_all = ["d1", "d2"])]
        partition: Option<PathBuf>,
        /// Comma-separated vertices of the first side.
        #[arg(long, requires = "d2")]
        d1: Option<String>,
        /// Comma-separated vertices of the second side.
        #[arg(long, requires = "d1")]
        d2: Option<String>,
    },
    /// Exact answers by exhaustive search.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        input: Option<PathBuf>,
    },
    /// Generate random instances of a class.
    Gen {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cross-edge density for split and co-bipartite graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Number of instances, with seeds `seed`, `seed+1`, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Allow twins (only twin-free instances are generated by default).
        #[arg(long)]
        twins: bool,
        /// Every triangulation of the n-gon instead of random ones (mop only).
        #[arg(long)]
        all: bool,
    },
    /// Construct and verify partitions for every graph in a corpus.
    Batch {
        /// Files or directories; stdin when omitted.
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "auto")]
        class: ClassChoice,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for failing instances.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        #[arg(long)]
        no_verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    Gamma,
    Partition,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn caps(cli: &Cli) -> Result<OracleCaps> {
    let env = OracleCaps::from_env()?;
    Ok(OracleCaps::new(cli.cap_gamma.unwrap_or(env.gamma), cli.cap_partition.unwrap_or(env.partition))?)
}

/// Writes to `--out` if given, else stdout.
fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn lines<T: Serialize>(items: &[T]) -> String {
    let mut s = String::new();
    for it in items {
        s.push_str(&serde_json::to_string(it).expect("serialises"));
        s.push('\n');
    }
    s
}

fn exit_for(reports: &[RunReport]) -> ExitCode {
    if reports.iter().any(|r| r.status.is_failure()) {
        ExitCode::from(1)
    } else if reports.iter().any(|r| r.status != Status::Ok) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Classify { input } => {
            let reports: Vec<RunReport> = read_instances(input.as_deref(), cli.format)?
                .iter()
                .map(|inst| {
                    let mut r = RunReport::new("classify", inst);
                    r.classes = Some(Classes::of(&inst.graph));
                    r
                })
                .collect();
            emit(cli, &lines(&reports))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Partition { input, class, no_verify, dot } => {
            let opts = PartitionOptions { class: *class, verify: !no_verify, caps: caps(cli)?, timings: cli.timings };
            let instances = read_instances(input.as_deref(), cli.format)?;
            let reports: Vec<RunReport> = instances.iter().map(|inst| run_partition(inst, &opts)).collect();
            for r in &reports {
                if let Some(e) = &r.error {
                    eprintln!("{}#{}: {e}", r.input.source, r.input.index);
                }
            }
            emit(cli, &lines(&reports))?;
            if let Some(path) = dot {
                write_dot(path, &instances, &reports)?;
            }
            Ok(exit_for(&reports))
        }
        Command::Verify { input, partition, d1, d2 } => {
            let inst = read_single(input.as_deref(), cli.format)?;
            let p = match (partition, d1, d2) {
                (Some(path), _, _) => read_partition(path)?,
                (None, Some(a), Some(b)) => LdPartition::new(parse_set(a)?, parse_set(b)?),
                _ => bail!("give either --partition or both --d1 and --d2"),
            };
            let verdict = check_ld_partition(&inst.graph, &p)?;
            let mut r = RunReport::new("verify", &inst);
            r.status = if verdict.passed() { Status::Ok } else { Status::VerificationFailed };
            r.partition = Some(p);
            r.verdict = Some(verdict);
            emit(cli, &lines(&[&r]))?;
            Ok(exit_for(&[r]))
        }
        Command::Oracle { query, input } => {
            let caps = caps(cli)?;
            #[derive(Serialize)]
            struct OracleReport {
                schema: u32,
                command: &'static str,
                query: &'static str,
                input: report::InputId,
                #[serde(flatten)]
                result: ldpart::oracle::OracleResult,
            }
            let mut out = Vec::new();
            for inst in read_instances(input.as_deref(), cli.format)? {
                let (name, result) = match query {
                    OracleQuery::Gamma => ("gamma", gamma_ld(&inst.graph, caps.gamma)?),
                    OracleQuery::Partition => ("partition", ld_partition_exists(&inst.graph, caps.partition)?),
                };
                out.push(OracleReport { schema: SCHEMA, command: "oracle", query: name, input: report::InputId::of(&inst), result });
            }
            emit(cli, &lines(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { class, n, seed, p, count, twins, all } => {
            let graphs = if *all {
                if *class != GraphClass::Mop {
                    bail!("--all is only available for --class mop");
                }
                enumerate_mops(*n)?
            } else {
                (0..*count)
                    .map(|i| {
                        let mut spec = GenSpec::new(*class, *n, seed.wrapping_add(i)).with_p(*p);
                        if *twins {
                            spec = spec.with_twins();
                        }
                        generate(&spec)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let format = cli.format.unwrap_or(if graphs.len() > 1 { Format::Graph6 } else { Format::Edgelist });
            if graphs.len() > 1 && matches!(format, Format::Edgelist | Format::Polygon) {
                bail!("{format:?} holds one graph per file; use --format graph6 or json for several");
            }
            let text: String = graphs.iter().map(|g| write_graph(g, format)).collect();
            emit(cli, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch { inputs, class, jobs, counterexamples, no_verify } => {
            let opts = PartitionOptions { class: *class, verify: !no_verify, caps: caps(cli)?, timings: cli.timings };
            let instances = read_corpus(inputs, cli.format)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(*jobs).build()?;
            let reports: Vec<RunReport> =
                pool.install(|| instances.par_iter().map(|inst| run_partition(inst, &opts)).collect());
            let mut summary = BatchSummary::from_reports(&reports);
            if let Some(dir) = counterexamples {
                summary.counterexamples = save_counterexamples(dir, &reports)?;
            }
            if let Some(p) = &cli.out {
                fs::write(p, lines(&reports)).with_context(|| format!("writing {}", p.display()))?;
            }
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(if summary.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn write_dot(path: &Path, instances: &[Instance], reports: &[RunReport]) -> Result<()> {
    let mut s = String::new();
    for (inst, r) in instances.iter().zip(reports) {
        if let Some(p) = &r.partition {
            s.push_str(&to_dot(&inst.graph, p));
        }
    }
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn parse_set(s: &str) -> Result<VertexSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad vertex `{t}`")))
        .collect()
}

fn read_partition(path: &Path) -> Result<LdPartition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = value.get("partition").cloned().unwrap_or(value);
    Ok(serde_json::from_value(inner).with_context(|| format!("{} holds no partition", path.display()))?)
}

fn save_counterexamples(dir: &Path, reports: &[RunReport]) -> Result<Vec<String>> {
    let mut saved = Vec::new();
    for r in reports.iter().filter(|r| r.status.is_failure()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(format!("{}.json", &r.input.sha256[..16]));
        fs::write(&path, serde_json::to_string_pretty(r)?)?;
        saved.push(path.display().to_string());
    }
    Ok(saved)
}
