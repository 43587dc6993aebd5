//! Command line front end. Results go to stdout as JSON (CSV where noted),
//! diagnostics to stderr; exit code 2 flags invalid input, 3 a refused
//! resource guard.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use twinperm_core::{
    detect, max_len, r_max, ConstructionSpec, Error, Family, Permutation, TwinKind,
    TwinsCertificate,
};
use twinperm_tools::formats;
use twinperm_tools::montecarlo::{self, Statistic};
use twinperm_tools::search;

#[derive(Parser)]
#[command(
    name = "twinperm",
    version,
    about = "Detect, construct, search and sample twin structures in permutations"
)]
struct Cli {
    /// Write results to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Permutation source; `--perm -` reads stdin, files hold one
/// permutation per line.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct PermInput {
    /// Inline permutation such as "1,4,3,2,5", or - for stdin.
    #[arg(long)]
    perm: Option<String>,
    /// File with one permutation per line; # starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the reduced pattern of each input permutation.
    Reduce {
        #[command(flatten)]
        input: PermInput,
    },
    /// Decide whether r twins of one kind and length occur.
    Detect {
        /// block, tight or block-tight.
        #[arg(long)]
        kind: String,
        /// Number of twins.
        #[arg(long)]
        r: usize,
        /// Length of each twin.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: PermInput,
    },
    /// Largest twin length at fixed multiplicity.
    Maxlen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: PermInput,
    },
    /// Largest multiplicity at fixed twin length (block or tight).
    Rmax {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: PermInput,
    },
    /// Emit a construction as a text permutation.
    Construct {
        /// pi-k, pi-rk, quadratic, alternating, or a named witness.
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Smallest n up to a bound at which every permutation contains
    /// tight r-twins of length k.
    SearchF {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        /// Worker threads; falls back to TWINPERM_THREADS, then to the
        /// machine's parallelism.
        #[arg(long)]
        threads: Option<usize>,
        /// Permit scans beyond n = 14.
        #[arg(long)]
        allow_large: bool,
    },
    /// Count fully decomposable windows of length r*k.
    CountQ {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Estimate a statistic over seeded random hosts.
    Mc {
        /// bt_len, tt_len, btt_len or match2_success.
        #[arg(long)]
        stat: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Enumerate all n! hosts instead of sampling (ignores --trials,
        /// --seed and --threads; n <= 8).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Probability of joint similarity on fixed position sets, exact on
    /// small hosts; --sets2 switches to the independence check.
    CheckProb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Position sets, e.g. "1,2;3,4".
        #[arg(long)]
        sets: String,
        /// Second family for the independence check.
        #[arg(long)]
        sets2: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
    },
}

enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::ResourceLimit(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Serialize)]
struct CertJson {
    kind: &'static str,
    r: usize,
    k: usize,
    position_sets: Vec<Vec<usize>>,
    pattern: Vec<u32>,
}

fn cert_json(c: &TwinsCertificate) -> CertJson {
    CertJson {
        kind: c.kind.name(),
        r: c.multiplicity,
        k: c.length,
        position_sets: c.position_sets.clone(),
        pattern: c.pattern.values().to_vec(),
    }
}

#[derive(Serialize)]
struct ReduceOut {
    pattern: Vec<u32>,
}

#[derive(Serialize)]
struct DetectOut {
    found: bool,
    certificate: Option<CertJson>,
}

#[derive(Serialize)]
struct MaxlenOut {
    k_max: usize,
    certificate: Option<CertJson>,
}

#[derive(Serialize)]
struct RmaxOut {
    r_max: usize,
    certificate: Option<CertJson>,
}

#[derive(Serialize)]
struct SearchFOut {
    f: serde_json::Value,
    reports: Vec<search::SearchReport>,
}

#[derive(Serialize)]
struct CountQOut {
    r: usize,
    k: usize,
    q: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn load_input(input: &PermInput) -> Result<Vec<Permutation>, CliError> {
    if let Some(s) = &input.perm {
        if s == "-" {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            return Ok(formats::parse_perms(&text)?);
        }
        return Ok(vec![s.parse()?]);
    }
    let path = input.file.as_ref().expect("clap enforces one source");
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(formats::parse_perms(&text)?)
}

fn emit(out: &Option<PathBuf>, payload: String) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn json_lines<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    let mut s = String::new();
    for item in items {
        s.push_str(&serde_json::to_string(&item).expect("serializable output"));
        s.push('\n');
    }
    s
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    let t = match flag {
        Some(t) => t,
        None => match std::env::var("TWINPERM_THREADS") {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::Core(Error::InvalidInput("TWINPERM_THREADS must be an integer"))
            })?,
            Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        },
    };
    if t == 0 {
        return Err(CliError::Core(Error::InvalidInput("threads must be at least 1")));
    }
    Ok(t)
}

fn parse_kind(s: &str) -> Result<TwinKind, CliError> {
    Ok(s.parse::<TwinKind>()?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = &cli.out;
    match cli.cmd {
        Cmd::Reduce { input } => {
            let rows = load_input(&input)?.into_iter().map(|p| ReduceOut {
                pattern: p.reduce().values().to_vec(),
            });
            emit(out, json_lines(rows))
        }
        Cmd::Detect { kind, r, k, input } => {
            let kind = parse_kind(&kind)?;
            if r < 2 || k == 0 {
                return Err(Error::InvalidInput("detect needs r >= 2 and k >= 1").into());
            }
            let rows = load_input(&input)?.into_iter().map(|p| {
                let cert = detect(&p, kind, r, k);
                DetectOut {
                    found: cert.is_some(),
                    certificate: cert.as_ref().map(cert_json),
                }
            });
            emit(out, json_lines(rows))
        }
        Cmd::Maxlen { kind, r, input } => {
            let kind = parse_kind(&kind)?;
            if r < 2 {
                return Err(Error::InvalidInput("maxlen needs r >= 2").into());
            }
            let rows = load_input(&input)?.into_iter().map(|p| {
                let (k_max, cert) = max_len(&p, r, kind);
                MaxlenOut {
                    k_max,
                    certificate: cert.as_ref().map(cert_json),
                }
            });
            emit(out, json_lines(rows))
        }
        Cmd::Rmax { kind, k, input } => {
            let kind = parse_kind(&kind)?;
            let mut rows = Vec::new();
            for p in load_input(&input)? {
                let (r_val, cert) = r_max(&p, k, kind)?;
                rows.push(RmaxOut {
                    r_max: r_val,
                    certificate: cert.as_ref().map(cert_json),
                });
            }
            emit(out, json_lines(rows))
        }
        Cmd::Construct { family, r, k, n } => {
            let spec = ConstructionSpec {
                family: family.parse::<Family>()?,
                r,
                k,
                n,
            };
            let p = spec.build()?;
            emit(out, format!("{p}\n"))
        }
        Cmd::SearchF {
            r,
            k,
            n_max,
            threads,
            allow_large,
        } => {
            let workers = resolve_threads(threads)?;
            let (f, reports) = search::compute_f(r, k, n_max, workers, allow_large)?;
            let payload = SearchFOut {
                f: match f {
                    Some(n) => serde_json::json!(n),
                    None => serde_json::json!("exceeds n_max"),
                },
                reports,
            };
            emit(out, format!("{}\n", serde_json::to_string(&payload).unwrap()))
        }
        Cmd::CountQ { r, k } => {
            let q = search::count_q(r, k)?;
            emit(
                out,
                format!("{}\n", serde_json::to_string(&CountQOut { r, k, q }).unwrap()),
            )
        }
        Cmd::Mc {
            stat,
            n,
            r,
            trials,
            seed,
            threads,
            format,
            exhaustive,
        } => {
            let stat = stat.parse::<Statistic>()?;
            let stats = if exhaustive {
                montecarlo::exhaustive_stat(stat, n, r)?
            } else {
                let workers = resolve_threads(threads)?;
                montecarlo::estimate_stat(stat, n, r, trials, seed, workers)?
            };
            let payload = match format.as_str() {
                "json" => format!("{}\n", serde_json::to_string(&stats).unwrap()),
                "csv" => format!(
                    "{}\n{}\n",
                    montecarlo::TrialStats::CSV_HEADER,
                    stats.csv_row()
                ),
                _ => return Err(Error::InvalidInput("format must be json or csv").into()),
            };
            emit(out, payload)
        }
        Cmd::CheckProb {
            n,
            r,
            k,
            sets,
            sets2,
            trials,
            seed,
        } => {
            let first = formats::parse_sets(&sets)?;
            let payload = match sets2 {
                Some(second) => {
                    let second = formats::parse_sets(&second)?;
                    let rep = montecarlo::check_independence(n, r, k, &first, &second)?;
                    serde_json::to_string(&rep).unwrap()
                }
                None => {
                    let rep = montecarlo::check_eq1(n, r, k, &first, trials, seed)?;
                    serde_json::to_string(&rep).unwrap()
                }
            };
            emit(out, format!("{payload}\n"))
        }
    }
}
