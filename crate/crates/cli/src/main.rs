use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use ebwt::io::{
    invert_ebwt, read_ebwt, read_fasta, read_index, run_length_encode, write_outputs, write_parse, FastaOptions,
    OutputOptions,
};
use ebwt::oracle::oracle_ebwt;
use ebwt::pfp::{pfp_build, TriggerConfig};
use ebwt::sais::ebwt_with;
use ebwt::strings::{EbwtResult, SeqCollection};
use ebwt::Error;

const DEFAULT_W: usize = 10;
const DEFAULT_P: u64 = 100;
const FASTA_WIDTH: usize = 80;

#[derive(Parser)]
#[command(name = "ebwt", version, about = "Extended BWT of a collection of sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the eBWT of a FASTA file.
    Build(BuildArgs),
    /// Reconstruct the sequences from an .ebwt/.I pair.
    Invert(InvertArgs),
    /// Compare both construction paths with the naive oracle.
    Check(CheckArgs),
    /// Print alphabet size, length and run statistics.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pfp,
    Direct,
    Auto,
}

#[derive(Args)]
struct ParseOpts {
    /// Trigger window length (default 10, or the length of --triggers).
    #[arg(short = 'w', long)]
    window: Option<usize>,
    /// Karp-Rabin modulus.
    #[arg(short = 'p', long = "modulus", default_value_t = DEFAULT_P)]
    modulus: u64,
    /// Comma-separated explicit trigger strings instead of hashing.
    #[arg(long, value_delimiter = ',')]
    triggers: Option<Vec<String>>,
}

#[derive(Args)]
struct InputOpts {
    /// Drop records whose fraction of N exceeds this value.
    #[arg(long)]
    max_n_frac: Option<f64>,
    /// Keep lowercase letters as they are.
    #[arg(long)]
    keep_case: bool,
    /// Keep degenerate IUPAC codes instead of mapping them to N.
    #[arg(long)]
    keep_iupac: bool,
}

impl InputOpts {
    fn fasta_options(&self) -> Result<FastaOptions> {
        if let Some(f) = self.max_n_frac {
            if !(0.0..=1.0).contains(&f) {
                bail!("--max-n-frac must lie in [0, 1], got {f}");
            }
        }
        Ok(FastaOptions {
            uppercase: !self.keep_case,
            iupac_to_n: !self.keep_iupac,
            max_n_frac: self.max_n_frac,
        })
    }
}

#[derive(Args)]
struct BuildArgs {
    input: PathBuf,
    /// Output prefix (default: input path without its extension).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[command(flatten)]
    parse: ParseOpts,
    #[command(flatten)]
    input_opts: InputOpts,
    /// Also write run-boundary samples (.ssa, .esa).
    #[arg(long)]
    samples: bool,
    /// Also write the run-length encoded eBWT (.rle).
    #[arg(long)]
    rle: bool,
    /// Dump dictionary, parse and start marks (.dict, .parse, .starts).
    #[arg(long)]
    keep_parse: bool,
    /// Worker threads for parsing (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct InvertArgs {
    /// The .ebwt file.
    ebwt: PathBuf,
    /// The .I file (default: the .ebwt path with extension .I).
    index: Option<PathBuf>,
    /// Write FASTA here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    /// Largest total length handed to the oracle.
    #[arg(long, default_value_t = 10_000)]
    limit: usize,
    #[command(flatten)]
    parse: ParseOpts,
    #[command(flatten)]
    input_opts: InputOpts,
}

#[derive(Args)]
struct StatsArgs {
    /// A FASTA file or a raw .ebwt file.
    input: PathBuf,
}

fn trigger_config(coll: &SeqCollection, opts: &ParseOpts) -> Result<TriggerConfig> {
    if let Some(trig) = &opts.triggers {
        let w = match opts.window {
            Some(w) => w,
            None => trig.first().map_or(0, |t| t.len()),
        };
        if w < 2 {
            bail!("window length must be at least 2, got {w}");
        }
        return Ok(TriggerConfig::explicit(w, trig.iter().map(|t| t.as_bytes().to_vec()))?);
    }
    let w = opts.window.unwrap_or(DEFAULT_W);
    if w < 2 {
        bail!("window length must be at least 2, got {w}");
    }
    if opts.modulus < 1 {
        bail!("modulus must be at least 1");
    }
    Ok(TriggerConfig::for_collection(coll, w, opts.modulus)?)
}

fn default_base(input: &Path) -> PathBuf {
    input.with_extension("")
}

fn cmd_build(args: &BuildArgs) -> Result<()> {
    if let Some(n) = args.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring thread pool")?;
    }
    let coll = read_fasta(&args.input, &args.input_opts.fasta_options()?)?;
    let base = args.output.clone().unwrap_or_else(|| default_base(&args.input));
    let start = Instant::now();

    let mut mode = args.mode;
    let mut built = None;
    if mode != Mode::Direct {
        let attempt = trigger_config(&coll, &args.parse).and_then(|cfg| Ok(pfp_build(&coll, &cfg, args.samples)?));
        match attempt {
            Ok(b) => {
                mode = Mode::Pfp;
                built = Some(b);
            }
            Err(e) if args.mode == Mode::Auto && is_fallback(&e) => {
                warn!("{e}; falling back to direct construction");
                mode = Mode::Direct;
            }
            Err(e) => return Err(e),
        }
    }

    let mut files = Vec::new();
    let mut parse_stats = None;
    let result: EbwtResult = match built {
        Some(b) => {
            if args.keep_parse {
                files.extend(write_parse(&base, &b.parse)?);
            }
            parse_stats = Some((b.parse.parse_len(), b.parse.dict.len(), b.parse.dict_len()));
            b.result
        }
        None => {
            if args.keep_parse {
                warn!("--keep-parse has no effect in direct mode");
            }
            ebwt_with(&coll, args.samples)?
        }
    };
    let elapsed = start.elapsed();
    files.extend(write_outputs(
        &base,
        &result,
        OutputOptions {
            rle: args.rle,
            samples: args.samples,
        },
    )?);

    let rle = run_length_encode(&result.bwt);
    print_kv("mode", if mode == Mode::Pfp { "pfp" } else { "direct" });
    print_kv("m", coll.len());
    print_kv("n", rle.n);
    print_kv("r", rle.r());
    print_kv("n_over_r", format!("{:.4}", rle.ratio()));
    print_kv("time_s", format!("{:.3}", elapsed.as_secs_f64()));
    if let Some((phrases, dict_phrases, dict_len)) = parse_stats {
        print_kv("phrases", phrases);
        print_kv("dict_phrases", dict_phrases);
        print_kv("dict_len", dict_len);
    }
    for f in files {
        print_kv("output", f.display());
    }
    Ok(())
}

fn is_fallback(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::DocumentTooShort { .. } | Error::NoTrigger { .. })
    )
}

fn print_kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}={value}");
}

fn cmd_invert(args: &InvertArgs) -> Result<()> {
    let index = args.index.clone().unwrap_or_else(|| args.ebwt.with_extension("I"));
    let bwt = read_ebwt(&args.ebwt)?;
    let index_set = read_index(&index)?;
    let coll = invert_ebwt(&bwt, &index_set)?;
    let out: Box<dyn Write> = match &args.output {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(out);
    for (d, seq) in coll.seqs().enumerate() {
        writeln!(out, ">seq{}", d + 1)?;
        for line in seq.chunks(FASTA_WIDTH) {
            out.write_all(line)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Up to `max` positions (1-based) where `a` and `b` differ.
fn diff_positions(a: &[u8], b: &[u8], max: usize) -> Vec<usize> {
    let mut d: Vec<usize> = a
        .iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i + 1)
        .take(max)
        .collect();
    if a.len() != b.len() && d.len() < max {
        d.push(a.len().min(b.len()) + 1);
    }
    d
}

fn compare(name: &str, got: &EbwtResult, want: &EbwtResult) -> bool {
    let diffs = diff_positions(&got.bwt, &want.bwt, 10);
    let same_index = got.index_set == want.index_set;
    if diffs.is_empty() && same_index {
        println!("{name}=pass");
        return true;
    }
    let pos: Vec<String> = diffs.iter().map(|p| p.to_string()).collect();
    println!("{name}=fail");
    if !pos.is_empty() {
        println!("{name}_diff_positions={}", pos.join(","));
    }
    if !same_index {
        println!("{name}_index_set={:?} expected={:?}", got.index_set, want.index_set);
    }
    false
}

fn cmd_check(args: &CheckArgs) -> Result<bool> {
    let coll = read_fasta(&args.input, &args.input_opts.fasta_options()?)?;
    let n = coll.total_len();
    if n > args.limit {
        bail!("input has {n} characters, above the oracle limit of {}", args.limit);
    }
    let want = oracle_ebwt(&coll);
    print_kv("n", n);
    let mut ok = compare("direct", &ebwt_with(&coll, false)?, &want);
    match trigger_config(&coll, &args.parse).and_then(|cfg| Ok(pfp_build(&coll, &cfg, false)?)) {
        Ok(b) => ok &= compare("pfp", &b.result, &want),
        Err(e) if is_fallback(&e) => {
            info!("{e}");
            print_kv("pfp", "skipped");
        }
        Err(e) => return Err(e),
    }
    print_kv("result", if ok { "pass" } else { "fail" });
    Ok(ok)
}

fn cmd_stats(args: &StatsArgs) -> Result<()> {
    let raw = std::fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let bwt = if raw.first() == Some(&b'>') {
        let coll = read_fasta(&args.input, &FastaOptions::default())?;
        ebwt_with(&coll, false)?.bwt
    } else {
        raw
    };
    if bwt.is_empty() {
        bail!("{} contains no characters", args.input.display());
    }
    let mut seen = [false; 256];
    for &c in &bwt {
        seen[c as usize] = true;
    }
    let rle = run_length_encode(&bwt);
    print_kv("sigma", seen.iter().filter(|&&s| s).count());
    print_kv("n", rle.n);
    print_kv("r", rle.r());
    print_kv("n_over_r", format!("{:.4}", rle.ratio()));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Build(a) => cmd_build(a).map(|_| true),
        Cmd::Invert(a) => cmd_invert(a).map(|_| true),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Stats(a) => cmd_stats(a).map(|_| true),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
