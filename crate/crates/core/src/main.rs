use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use cellular::harness::{emit_json_lines, verify_corpus, verify_scheme, Summary, VerifyOptions};
use cellular::io::{parse_matrix, write_scheme, ReadOptions};
use cellular::radical::{radical_chain, ModularAlgebra};
use cellular::wedderburn::DEFAULT_TOLERANCE;
use cellular::{decompose, frame_number, Configuration, Corpus, SchemeSpec};

#[derive(Parser)]
#[command(name = "cellular", version, about = "Coherent configurations, Frame numbers and modular radicals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Scheme file: n, then n rows of colors.
    file: PathBuf,
    /// Colors in the file start at 1.
    #[arg(long)]
    one_based: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated scheme file.
    Gen {
        /// rank2, discrete, thin-cyclic, thin-sym, thin-group, schurian, hamming, johnson or direct-sum.
        family: String,
        /// Family parameters; direct-sum takes two scheme ids such as rank2(2).
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Size, rank, cells, flags, relation table and tensor digest.
    Info(Input),
    /// Wedderburn blocks, Frame number and Frame quotient.
    Frame {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimension of the radical over F_p.
    Radical {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
    },
    /// Verify a scheme file or the registered corpus.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
        /// JSON lines instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Keep corpus entries whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
        #[arg(long)]
        one_based: bool,
    },
}

/// Failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn load(path: &Path, one_based: bool) -> Result<Configuration, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let rows = parse_matrix(&text, ReadOptions { one_based }).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Configuration::from_color_matrix(&rows).map_err(|e| Usage(format!("invalid scheme: {e}")))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn info(config: &Configuration) {
    let scheme = config.scheme();
    println!("n={} r={} cells={:?}", config.size(), config.rank(), config.cell_sizes());
    println!("{}", config.flags());
    println!("relation size d_out d_in fiber transpose");
    for (rel, stat) in config.stats().relations.iter().enumerate() {
        println!(
            "{rel:>8} {:>4} {:>5} {:>4} ({},{}) {:>9}",
            stat.size,
            stat.d_out,
            stat.d_in,
            stat.source,
            stat.target,
            scheme.transpose_of(rel)
        );
    }
    println!("tensor_sha256={}", hex(&Sha256::digest(config.tensor().to_le_bytes())));
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    match cli.command {
        Command::Gen { family, params } => {
            let spec = SchemeSpec::from_family(&family, &params)?;
            print!("{}", write_scheme(&spec.build()?));
        }
        Command::Info(input) => info(&load(&input.file, input.one_based)?),
        Command::Frame { input, seed } => {
            let config = load(&input.file, input.one_based)?;
            let wd = decompose(&config, seed, DEFAULT_TOLERANCE)?;
            let fr = frame_number(&config, &wd)?;
            println!("blocks={wd} F={} N={}", fr.frame, fr.quotient);
        }
        Command::Radical { input, p } => {
            let config = load(&input.file, input.one_based)?;
            let rad = radical_chain(&ModularAlgebra::new(&config, p)?)?;
            println!("rad_dim={} semisimple={}", rad.dim, rad.is_semisimple());
        }
        Command::Verify { file, corpus, json, seed, jobs, filter, prime_bound, one_based } => {
            let options = VerifyOptions { seed, prime_bound, jobs, ..VerifyOptions::default() };
            let reports = match (file, corpus) {
                (Some(path), _) => {
                    let config = load(&path, one_based)?;
                    vec![verify_scheme(&path.display().to_string(), &config, &options)]
                }
                (None, true) => {
                    let entries = Corpus { seed, ..Corpus::default() }
                        .filtered(|e| filter.as_deref().is_none_or(|f| e.id.contains(f)));
                    verify_corpus(&entries, &options).0
                }
                (None, false) => return Err(Usage("verify needs a scheme file or --corpus".into())),
            };
            if json {
                print!("{}", emit_json_lines(&reports));
            } else {
                for r in &reports {
                    print!("{r}");
                }
                println!("{}", Summary::of(&reports));
            }
            if !reports.iter().all(|r| r.pass) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
