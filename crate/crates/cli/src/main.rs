//! `repetita`: build, query and measure repetition-aware indexes.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 self-test failure.

mod engine;

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use repetita::measures::{even_samples, measure_prefixes, normalize, MeasureCsvRow};
use repetita::selftest::{self, Fault, SelftestConfig};
use repetita::Text;
use serde_json::json;

use engine::{Engine, Index, Loaded};

#[derive(Parser)]
#[command(name = "repetita", version, about = "Repetition-aware text indexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    #[value(name = "json-lines")]
    JsonLines,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Text file; the terminator is appended.
    #[arg(long)]
    input: PathBuf,
    /// Read the input as FASTA and concatenate the record sequences.
    #[arg(long)]
    fasta: bool,
}

#[derive(clap::Args)]
struct PatternArgs {
    /// A single pattern.
    #[arg(long, conflicts_with = "patterns")]
    pattern: Option<String>,
    /// File with one pattern per line.
    #[arg(long)]
    patterns: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index and write it to a file.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Engine::LzRlbwt)]
        engine: Engine,
        /// Output index file.
        #[arg(long)]
        index: PathBuf,
    },
    /// Count occurrences, one line per pattern.
    Count {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        patterns: PatternArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Sorted occurrence positions, one line per pattern.
    Locate {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        patterns: PatternArgs,
        /// Mark positions as primary (`p`) or secondary (`s`); lz-rlbwt only.
        #[arg(long)]
        tag: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Matching statistics of each query line against an st index.
    Ms {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        patterns: PatternArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Measures over prefixes of the input.
    Measures {
        #[command(flatten)]
        input: InputArgs,
        /// A sample count, a comma-separated list of prefix lengths, or
        /// `records` for one sample per FASTA record.
        #[arg(long, default_value = "1")]
        samples: String,
        /// Divide every column by its first sample.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Preorder listing of every suffix-tree node of an st index.
    Traverse {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Random oracle-equivalence checks.
    Selftest {
        #[arg(long, default_value_t = 100)]
        iterations: usize,
        #[arg(long, default_value_t = 128)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        sigma: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Deliberately break a component to check that failures surface.
        #[arg(long, value_enum)]
        inject_fault: Option<InjectFault>,
    },
    /// Tables of the structures inside an index.
    Dump {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum)]
        what: DumpWhat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InjectFault {
    Rank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DumpWhat {
    Nodes,
    Arcs,
    Parse,
    Runs,
}

/// Errors in how the tool was invoked, as opposed to bad data.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn read_text(input: &InputArgs) -> Result<(Text, Vec<u8>)> {
    let bytes = fs::read(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
    let t = if input.fasta {
        Text::from_fasta(&bytes)?
    } else {
        Text::from_plain(&bytes)?
    };
    Ok((t, bytes))
}

fn read_patterns(args: &PatternArgs) -> Result<Vec<Vec<u8>>> {
    match (&args.pattern, &args.patterns) {
        (Some(p), None) => Ok(vec![p.as_bytes().to_vec()]),
        (None, Some(path)) => {
            let body = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let mut lines: Vec<Vec<u8>> = body
                .split(|&b| b == b'\n')
                .map(|l| l.strip_suffix(b"\r").unwrap_or(l).to_vec())
                .collect();
            if lines.last().is_some_and(|l| l.is_empty()) {
                lines.pop();
            }
            Ok(lines)
        }
        _ => Err(usage("give exactly one of --pattern or --patterns")),
    }
}

fn load(path: &Path) -> Result<Loaded> {
    engine::load(path).with_context(|| format!("loading {}", path.display()))
}

fn joined(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(command: Command, out: &mut impl Write) -> Result<u8> {
    match command {
        Command::Build { input, engine, index } => {
            let (t, _) = read_text(&input)?;
            engine::build(&t, engine)
                .save(&index)
                .with_context(|| format!("writing {}", index.display()))?;
        }
        Command::Count { index, patterns, format } => {
            let pats = read_patterns(&patterns)?;
            let loaded = load(&index)?;
            for p in pats {
                let shown = String::from_utf8_lossy(&p);
                match loaded.map.encode(&p) {
                    Ok(sym) => {
                        let c = loaded.index.count(&sym);
                        match format {
                            Format::Tsv => writeln!(out, "{c}")?,
                            Format::JsonLines => writeln!(out, "{}", json!({"pattern": shown, "count": c}))?,
                        }
                    }
                    Err(e) => pattern_error(out, format, &shown, &e)?,
                }
            }
        }
        Command::Locate {
            index,
            patterns,
            tag,
            format,
        } => {
            let pats = read_patterns(&patterns)?;
            let loaded = load(&index)?;
            if tag && loaded.index.engine() != Engine::LzRlbwt {
                bail!(usage("--tag needs an lz-rlbwt index"));
            }
            for p in pats {
                let shown = String::from_utf8_lossy(&p);
                let sym = match loaded.map.encode(&p) {
                    Ok(sym) => sym,
                    Err(e) => {
                        pattern_error(out, format, &shown, &e)?;
                        continue;
                    }
                };
                let occ = loaded.index.locate(&sym);
                let all = occ.all();
                match (format, tag) {
                    (Format::Tsv, false) => writeln!(out, "{}", joined(&all))?,
                    (Format::Tsv, true) => {
                        let tagged: Vec<String> = all
                            .iter()
                            .map(|s| {
                                let kind = if occ.primary.binary_search(s).is_ok() { 'p' } else { 's' };
                                format!("{s}{kind}")
                            })
                            .collect();
                        writeln!(out, "{}", tagged.join(" "))?
                    }
                    (Format::JsonLines, false) => writeln!(out, "{}", json!({"pattern": shown, "positions": all}))?,
                    (Format::JsonLines, true) => writeln!(
                        out,
                        "{}",
                        json!({"pattern": shown, "positions": all, "primary": occ.primary, "secondary": occ.secondary})
                    )?,
                }
            }
        }
        Command::Ms {
            index,
            patterns,
            format,
        } => {
            let queries = read_patterns(&patterns)?;
            let loaded = load(&index)?;
            let Index::St(st) = &loaded.index else {
                bail!(usage("ms needs an st index"));
            };
            for q in queries {
                let shown = String::from_utf8_lossy(&q);
                match loaded.map.encode(&q) {
                    Ok(sym) => {
                        let ms = st.matching_statistics(&sym);
                        match format {
                            Format::Tsv => {
                                let cols: Vec<String> = ms.iter().map(|x| x.to_string()).collect();
                                writeln!(out, "{}", cols.join("\t"))?
                            }
                            Format::JsonLines => writeln!(out, "{}", json!({"query": shown, "ms": ms}))?,
                        }
                    }
                    Err(e) => pattern_error(out, format, &shown, &e)?,
                }
            }
        }
        Command::Measures {
            input,
            samples,
            normalize: norm,
            format,
        } => {
            let (t, bytes) = read_text(&input)?;
            let len = t.len() - 1;
            let positions = parse_samples(&samples, len, input.fasta.then_some(bytes.as_slice()))?;
            let rows = measure_prefixes(&t, &positions)?;
            write_measures(out, &rows, norm, format)?;
        }
        Command::Traverse { index, format } => {
            let loaded = load(&index)?;
            let Index::St(st) = &loaded.index else {
                bail!(usage("traverse needs an st index"));
            };
            if format == Format::Tsv {
                writeln!(out, "depth\tclass\tleaf")?;
            }
            let n = st.len();
            for v in st.traverse() {
                let leaf = st.is_leaf(v).then(|| n - v.depth + 1);
                match format {
                    Format::Tsv => writeln!(
                        out,
                        "{}\t{}\t{}",
                        v.depth,
                        v.node,
                        leaf.map_or("-".to_string(), |p| p.to_string())
                    )?,
                    Format::JsonLines => writeln!(out, "{}", json!({"depth": v.depth, "class": v.node, "leaf": leaf}))?,
                }
            }
        }
        Command::Selftest {
            iterations,
            max_n,
            sigma,
            seed,
            inject_fault,
        } => {
            if sigma == 0 || sigma > 26 || max_n < 2 {
                bail!(usage("need 1 <= sigma <= 26 and max-n >= 2"));
            }
            let cfg = SelftestConfig {
                max_n,
                sigma,
                seed,
                iterations,
                fault: inject_fault.map(|InjectFault::Rank| Fault::RankOffByOne),
                ..Default::default()
            };
            let report = selftest::run(&cfg);
            for f in &report.failures {
                writeln!(
                    out,
                    "FAIL\t{}\tseed {}\t{}\treproduce: repetita selftest --iterations 1 --max-n {max_n} --sigma {sigma} --seed {}",
                    f.check, f.case_seed, f.detail, f.case_seed
                )?;
            }
            writeln!(
                out,
                "{}\t{} cases\t{} checks\t{} failures",
                if report.passed() { "PASS" } else { "FAIL" },
                report.cases,
                report.checks,
                report.failures.len()
            )?;
            if !report.passed() {
                return Ok(3);
            }
        }
        Command::Dump { index, what } => {
            let loaded = load(&index)?;
            let cdawg = match &loaded.index {
                Index::Cdawg(ix) => Some(ix.cdawg()),
                Index::St(ix) => Some(ix.cdawg()),
                Index::LzRlbwt(_) => None,
            };
            match what {
                DumpWhat::Nodes => write!(out, "{}", cdawg.ok_or_else(|| usage("no CDAWG in this index"))?.nodes_tsv())?,
                DumpWhat::Arcs => write!(out, "{}", cdawg.ok_or_else(|| usage("no CDAWG in this index"))?.arcs_tsv())?,
                DumpWhat::Parse => {
                    let Index::LzRlbwt(ix) = &loaded.index else {
                        bail!(usage("parse needs an lz-rlbwt index"));
                    };
                    write!(out, "{}", ix.parse().to_tsv())?
                }
                DumpWhat::Runs => {
                    let rb = match &loaded.index {
                        Index::LzRlbwt(ix) => ix.rlbwt(),
                        Index::Cdawg(ix) => ix.rlbwt(),
                        Index::St(ix) => ix.rlbwt(),
                    };
                    writeln!(out, "symbol\tstart\tlength")?;
                    for run in rb.runs() {
                        writeln!(out, "{}\t{}\t{}", run.symbol, run.start, run.len())?;
                    }
                }
            }
        }
    }
    Ok(0)
}

fn pattern_error(out: &mut impl Write, format: Format, shown: &str, e: &repetita::Error) -> Result<()> {
    match format {
        Format::Tsv => writeln!(out, "error: {e}")?,
        Format::JsonLines => writeln!(out, "{}", json!({"pattern": shown, "error": e.to_string()}))?,
    }
    Ok(())
}

fn parse_samples(arg: &str, len: usize, fasta: Option<&[u8]>) -> Result<Vec<usize>> {
    if arg == "records" {
        let bytes = fasta.ok_or_else(|| usage("--samples records needs --fasta"))?;
        return Ok(Text::fasta_record_ends(bytes)?);
    }
    if arg.contains(',') {
        return arg
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad sample position {s:?}"))))
            .collect();
    }
    let k: usize = arg.parse().map_err(|_| usage(format!("bad --samples value {arg:?}")))?;
    if k == 0 {
        return Err(usage("--samples must be positive"));
    }
    Ok(even_samples(len, k))
}

fn write_measures(out: &mut impl Write, rows: &[MeasureCsvRow], norm: bool, format: Format) -> Result<()> {
    let header = MeasureCsvRow::HEADER;
    if format == Format::Tsv {
        writeln!(out, "{}", header.join(","))?;
    }
    if norm {
        for v in normalize(rows) {
            match format {
                Format::Tsv => {
                    let cols: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
                    writeln!(out, "{}", cols.join(","))?
                }
                Format::JsonLines => {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        header.iter().zip(v).map(|(k, x)| (k.to_string(), json!(x))).collect();
                    writeln!(out, "{}", serde_json::Value::Object(obj))?
                }
            }
        }
    } else {
        for r in rows {
            let v = r.values();
            match format {
                Format::Tsv => {
                    let cols: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{}", cols.join(","))?
                }
                Format::JsonLines => {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        header.iter().zip(v).map(|(k, x)| (k.to_string(), json!(x))).collect();
                    writeln!(out, "{}", serde_json::Value::Object(obj))?
                }
            }
        }
    }
    Ok(())
}
