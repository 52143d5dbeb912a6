//! `ascent210` — enumerate, map, trace and verify 210-avoiding ascent
//! sequences and 3-nonnesting set partitions.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use ascent210::ascent::{enumerate_ascent_sequences, AscentSequences};
use ascent210::bijection::{psi, psi_inverse, trace_ascent_to_partition, trace_partition_to_ascent};
use ascent210::filling::{filling_to_partition, partition_to_filling};
use ascent210::growth::{backward_growth, forward_diagram, GrowthDiagram};
use ascent210::oracle::{render_table, verify_conjecture, with_jobs};
use ascent210::setpartition::{enumerate_set_partitions, SetPartitions};
use ascent210::{
    ascent_to_partition, partition_to_ascent, phi, phi_inverse, AscentSequence, FerrersShape, Filling01,
    PartitionSequence, Pattern, SetPartition, TriangularFilling,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "ascent210",
    version,
    about = "210-avoiding ascent sequences and 3-nonnesting set partitions"
)]
struct Cli {
    /// Emit one JSON value per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Show every intermediate stage, with growth diagrams as corner-label grids.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List objects in lexicographic order, one per line.
    Enumerate {
        #[command(subcommand)]
        what: Family,
    },
    /// Count objects, optionally sharded over several threads.
    Count {
        #[command(subcommand)]
        what: Family,
        #[arg(long, default_value_t = 0, global = true)]
        jobs: usize,
    },
    /// Apply one stage of the bijection, or the whole of it.
    Map {
        #[arg(value_enum)]
        map: MapKind,
        #[command(flatten)]
        input: Input,
    },
    /// Run the local rules over a whole shape.
    Growth {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Check the bijection against brute-force counts for every n up to --max-n.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Add a millis column (elapsed_ms in JSON). Makes output vary between runs.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand, Clone)]
enum Family {
    /// Ascent sequences of a given length.
    Ascent {
        #[arg(long, short = 'n')]
        length: usize,
        /// Keep only sequences avoiding this pattern, e.g. 210.
        #[arg(long)]
        avoid: Option<Pattern>,
        /// Keep only sequences without two equal adjacent entries.
        #[arg(long)]
        primitive: bool,
    },
    /// Set partitions of [size].
    Partitions {
        #[arg(long)]
        size: usize,
        /// Keep only partitions with no K pairwise nesting arcs.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        nonnesting: Option<u64>,
        /// Keep only partitions with no K pairwise crossing arcs.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        noncrossing: Option<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum MapKind {
    AscentToPartition,
    PartitionToAscent,
    Phi,
    PhiInverse,
    Psi,
    PsiInverse,
}

#[derive(Subcommand)]
enum Direction {
    /// Filling to boundary sequence. Literals are set partitions, read as
    /// fillings of a staircase; `--file` also takes {"shape","ones"} objects.
    Forward {
        #[command(flatten)]
        input: Input,
    },
    /// Boundary sequence to filling.
    Backward {
        /// Shape as a D/R boundary word or top-down row lengths ("3,2,1").
        /// Defaults to the staircase matching the sequence length.
        #[arg(long)]
        shape: Option<FerrersShape>,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Input objects as literals.
    literals: Vec<String>,
    /// Read JSON values, one per line, from a file ("-" for stdin).
    #[arg(long, conflicts_with = "literals")]
    file: Option<PathBuf>,
}

enum Raw {
    Literal(String),
    Json(String),
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Io(io::Error),
}

impl From<ascent210::Error> for CliError {
    fn from(e: ascent210::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Returns `Ok(false)` when the command ran but found a failure (verify).
fn run(cli: &Cli, out: &mut impl Write) -> CliResult<bool> {
    match &cli.command {
        Command::Enumerate { what } => enumerate(what, cli.json, out)?,
        Command::Count { what, jobs } => {
            let n = count(what, *jobs);
            if cli.json {
                writeln!(out, "{}", json!({ "count": n }))?;
            } else {
                writeln!(out, "{n}")?;
            }
        }
        Command::Map { map, input } => {
            for raw in read_inputs(input)? {
                map_one(*map, &raw, cli, out)?;
            }
        }
        Command::Growth { direction } => growth(direction, cli, out)?,
        Command::Verify { max_n, jobs, timings } => {
            let reports = verify_conjecture(*max_n, *jobs);
            if cli.json {
                for r in &reports {
                    let mut v = serde_json::to_value(r).expect("reports serialize");
                    v["ok"] = r.ok().into();
                    if !timings {
                        v.as_object_mut().expect("object").remove("elapsed_ms");
                    }
                    writeln!(out, "{v}")?;
                }
            } else {
                write!(out, "{}", render_table(&reports, *timings))?;
                for r in reports.iter().filter(|r| !r.ok()) {
                    for msg in r.roundtrip_failures.iter().chain(&r.image_mismatches) {
                        writeln!(out, "n={}: {msg}", r.n)?;
                    }
                }
            }
            return Ok(reports.iter().all(|r| r.ok()));
        }
    }
    Ok(true)
}

fn keep_ascent(x: &AscentSequence, avoid: Option<&Pattern>, primitive: bool) -> bool {
    (!primitive || x.is_primitive()) && avoid.is_none_or(|p| x.avoids(p))
}

fn keep_partition(p: &SetPartition, nonnesting: Option<u64>, noncrossing: Option<u64>) -> bool {
    let below = |stat: usize, k: Option<u64>| k.is_none_or(|k| (stat as u64) < k);
    below(p.max_nesting(), nonnesting) && below(p.max_crossing(), noncrossing)
}

fn enumerate(what: &Family, as_json: bool, out: &mut impl Write) -> CliResult {
    match what {
        Family::Ascent {
            length,
            avoid,
            primitive,
        } => {
            for x in enumerate_ascent_sequences(*length).filter(|x| keep_ascent(x, avoid.as_ref(), *primitive)) {
                emit(out, as_json, &x, &x)?;
            }
        }
        Family::Partitions {
            size,
            nonnesting,
            noncrossing,
        } => {
            for p in enumerate_set_partitions(*size).filter(|p| keep_partition(p, *nonnesting, *noncrossing)) {
                emit(out, as_json, &p, &p)?;
            }
        }
    }
    Ok(())
}

/// Shards on the first few entries; each shard is enumerated independently.
const SHARD_DEPTH: usize = 5;

fn count(what: &Family, jobs: usize) -> usize {
    match what {
        Family::Ascent {
            length,
            avoid,
            primitive,
        } => {
            let n = *length;
            let prefixes: Vec<AscentSequence> = enumerate_ascent_sequences(n.min(SHARD_DEPTH)).collect();
            with_jobs(jobs, || {
                prefixes
                    .par_iter()
                    .map(|p| {
                        AscentSequences::with_prefix(p.entries(), n)
                            .expect("prefixes are ascent sequences")
                            .filter(|x| keep_ascent(x, avoid.as_ref(), *primitive))
                            .count()
                    })
                    .sum()
            })
        }
        Family::Partitions {
            size,
            nonnesting,
            noncrossing,
        } => {
            let n = *size;
            let prefixes: Vec<Vec<usize>> = enumerate_set_partitions(n.min(SHARD_DEPTH))
                .map(|p| p.restricted_growth_string())
                .collect();
            with_jobs(jobs, || {
                prefixes
                    .par_iter()
                    .map(|w| {
                        SetPartitions::with_prefix(w, n)
                            .expect("prefixes are restricted growth strings")
                            .filter(|p| keep_partition(p, *nonnesting, *noncrossing))
                            .count()
                    })
                    .sum()
            })
        }
    }
}

fn emit(
    out: &mut impl Write,
    as_json: bool,
    value: &impl serde::Serialize,
    text: &impl std::fmt::Display,
) -> CliResult {
    if as_json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(value).expect("library types serialize")
        )?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn read_inputs(input: &Input) -> CliResult<Vec<Raw>> {
    let Some(path) = &input.file else {
        if input.literals.is_empty() {
            return Err(CliError::Domain("no input: give a literal or --file".into()));
        }
        return Ok(input.literals.iter().cloned().map(Raw::Literal).collect());
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?
    };
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Raw::Json(l.to_string()))
        .collect())
}

fn parse<T>(raw: &Raw) -> CliResult<T>
where
    T: FromStr<Err = ascent210::Error> + DeserializeOwned,
{
    match raw {
        Raw::Literal(s) => Ok(s.parse()?),
        Raw::Json(s) => serde_json::from_str(s).map_err(|e| CliError::Domain(format!("bad JSON {s:?}: {e}"))),
    }
}

fn map_one(kind: MapKind, raw: &Raw, cli: &Cli, out: &mut impl Write) -> CliResult {
    let trace = |out: &mut dyn Write, tr: ascent210::BijectionTrace| -> CliResult {
        if cli.json {
            writeln!(out, "{}", serde_json::to_string(&tr).expect("traces serialize"))?;
        } else {
            write!(out, "{tr}")?;
        }
        Ok(())
    };
    match kind {
        MapKind::AscentToPartition => {
            let x: AscentSequence = parse(raw)?;
            if cli.trace {
                return trace(out, trace_ascent_to_partition(&x)?);
            }
            let p = ascent_to_partition(&x)?;
            emit(out, cli.json, &p, &p)
        }
        MapKind::PartitionToAscent => {
            let p: SetPartition = parse(raw)?;
            if cli.trace {
                return trace(out, trace_partition_to_ascent(&p)?);
            }
            let x = partition_to_ascent(&p)?;
            emit(out, cli.json, &x, &x)
        }
        MapKind::Phi => {
            let x: AscentSequence = parse(raw)?;
            let t = phi(&x)?;
            emit(out, cli.json, &t, &t)?;
            if cli.trace && !cli.json {
                write!(out, "{}", t.to_filling().render())?;
            }
            Ok(())
        }
        MapKind::PhiInverse => {
            let t: TriangularFilling = parse(raw)?;
            if cli.trace && !cli.json {
                write!(out, "{}", t.to_filling().render())?;
            }
            let x = phi_inverse(&t)?;
            emit(out, cli.json, &x, &x)
        }
        MapKind::Psi => {
            let x: AscentSequence = parse(raw)?;
            if cli.trace {
                return trace(out, trace_ascent_to_partition(&x)?);
            }
            let v = psi(&x)?;
            emit(out, cli.json, &v, &v)
        }
        MapKind::PsiInverse => {
            let v: PartitionSequence = parse(raw)?;
            let x = psi_inverse(&v)?;
            if cli.trace {
                return trace(out, trace_ascent_to_partition(&x)?);
            }
            emit(out, cli.json, &x, &x)
        }
    }
}

fn read_filling(raw: &Raw) -> CliResult<Filling01> {
    match raw {
        Raw::Json(s) if s.trim_start().starts_with('{') => {
            serde_json::from_str(s).map_err(|e| CliError::Domain(format!("bad JSON filling {s:?}: {e}")))
        }
        _ => Ok(partition_to_filling(&parse::<SetPartition>(raw)?)),
    }
}

/// Staircase partial permutations print as set partitions, anything else as
/// its list of 1-cells.
fn filling_text(f: &Filling01) -> String {
    if f.shape().staircase_size().is_some() {
        if let Ok(p) = filling_to_partition(f) {
            return p.to_string();
        }
    }
    let cells: Vec<String> = f.ones().map(|(r, c)| format!("({r},{c})")).collect();
    format!("[{}]", cells.join(","))
}

fn growth(direction: &Direction, cli: &Cli, out: &mut impl Write) -> CliResult {
    let show = |out: &mut dyn Write, d: &GrowthDiagram| -> CliResult {
        if cli.trace && !cli.json {
            write!(out, "{}", d.render())?;
        }
        Ok(())
    };
    match direction {
        Direction::Forward { input } => {
            for raw in read_inputs(input)? {
                let d = forward_diagram(&read_filling(&raw)?);
                show(out, &d)?;
                let b = d.boundary();
                emit(out, cli.json, &b, &b)?;
            }
        }
        Direction::Backward { shape, input } => {
            for raw in read_inputs(input)? {
                let seq: PartitionSequence = parse(&raw)?;
                let shape = match shape {
                    Some(s) => s.clone(),
                    None if seq.len() % 2 == 1 => FerrersShape::staircase(seq.len() / 2),
                    None => {
                        return Err(CliError::Domain(format!(
                            "{seq} has even length {}; pass --shape",
                            seq.len()
                        )))
                    }
                };
                let d = backward_growth(&shape, &seq)?;
                show(out, &d)?;
                emit(out, cli.json, d.filling(), &filling_text(d.filling()))?;
            }
        }
    }
    Ok(())
}
