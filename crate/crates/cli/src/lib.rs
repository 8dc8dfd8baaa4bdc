//! Batch experiment runner over the fermitrot library.
//!
//! JSON config in, CSV or JSON tables out, no interactive mode. Runs are
//! deterministic: identical config and seed produce byte-identical output,
//! including float formatting (shortest round-trip decimals) and across
//! any `--jobs` setting.
//!
//! Exit codes: 0 success, 2 schema violation, 3 enumeration/size budget
//! exceeded, 4 numerical failure.

mod commands;
pub mod config;
pub mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fermitrot::Error;
use serde::de::DeserializeOwned;
use serde::Serialize;

use table::{Provenance, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fermitrot",
    version,
    about = "Interacting-electron Trotterization laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON configuration file; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for all randomized pieces of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output path; "-" writes to stdout.
    #[arg(long, global = true, default_value = "-")]
    out: String,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Trotter-error sweep over t, r, p with fitted slopes.
    Error,
    /// Bound-family evaluation and dominance report.
    Bound,
    /// γ-enumeration seminorm table.
    Commutator,
    /// Degree tables and closed-form comparison.
    Pathcount,
    /// Tightness ratio report.
    Tightness,
    /// Build and serialize a coefficient pair.
    Hamiltonian,
    /// Full invariant suite.
    Selfcheck,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Error => "error",
            Command::Bound => "bound",
            Command::Commutator => "commutator",
            Command::Pathcount => "pathcount",
            Command::Tightness => "tightness",
            Command::Hamiltonian => "hamiltonian",
            Command::Selfcheck => "selfcheck",
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } | Error::SectorTooLarge { .. } => EXIT_BUDGET,
        Error::ConvergenceFailure { .. }
        | Error::NotHermitian { .. }
        | Error::DegenerateFit { .. } => EXIT_NUMERICAL,
        _ => EXIT_SCHEMA,
    }
}

/// Load the subcommand config: the file when given, defaults otherwise.
/// Returns the parsed config and the canonical bytes hashed into the
/// provenance header.
fn load_config<C: DeserializeOwned + Default + Serialize>(
    path: &Option<PathBuf>,
) -> Result<(C, Vec<u8>), String> {
    match path {
        Some(p) => {
            let bytes =
                fs::read(p).map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            let cfg = serde_json::from_slice::<C>(&bytes)
                .map_err(|e| format!("config schema violation: {e}"))?;
            Ok((cfg, bytes))
        }
        None => {
            let cfg = C::default();
            let bytes = serde_json::to_vec(&cfg).expect("default config serializes");
            Ok((cfg, bytes))
        }
    }
}

fn write_output(
    out: &str,
    emit: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> std::io::Result<()> {
    if out == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        emit(&mut lock)
    } else {
        let mut file = fs::File::create(out)?;
        emit(&mut file)
    }
}

fn emit_table(cli: &Cli, prov: &Provenance, table: &Table) -> std::io::Result<()> {
    write_output(&cli.out, |w| match cli.format {
        Format::Csv => table::write_csv(w, prov, table),
        Format::Json => table::write_json(w, prov, table),
    })
}

/// Run the CLI on explicit arguments; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help/version requests are not failures.
            let code = if err.use_stderr() {
                EXIT_SCHEMA
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };

    let jobs = cli.jobs.unwrap_or_else(num_threads_default);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("failed to build worker pool: {e}");
            return EXIT_SCHEMA;
        }
    };
    pool.install(|| dispatch(&cli))
}

fn num_threads_default() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn dispatch(cli: &Cli) -> i32 {
    macro_rules! table_command {
        ($cfg_ty:ty, $runner:expr) => {{
            let (cfg, bytes) = match load_config::<$cfg_ty>(&cli.config) {
                Ok(pair) => pair,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_SCHEMA;
                }
            };
            let prov = Provenance::new(cli.seed, cli.command.name(), &bytes);
            match $runner(&cfg) {
                Ok(table) => match emit_table(cli, &prov, &table) {
                    Ok(()) => EXIT_OK,
                    Err(e) => {
                        eprintln!("cannot write output: {e}");
                        EXIT_SCHEMA
                    }
                },
                Err(err) => {
                    eprintln!("{err}");
                    exit_code_for(&err)
                }
            }
        }};
    }

    match cli.command {
        Command::Error => {
            table_command!(config::ErrorConfig, |cfg| commands::run_error(
                cfg, cli.seed
            ))
        }
        Command::Bound => run_bound_cmd(cli),
        Command::Commutator => {
            table_command!(config::CommutatorConfig, |cfg| commands::run_commutator(
                cfg, cli.seed
            ))
        }
        Command::Pathcount => {
            table_command!(config::PathcountConfig, |cfg| commands::run_pathcount(
                cfg, cli.seed
            ))
        }
        Command::Tightness => {
            table_command!(config::TightnessConfig, commands::run_tightness)
        }
        Command::Hamiltonian => run_hamiltonian(cli),
        Command::Selfcheck => run_selfcheck_cmd(cli),
    }
}

fn run_bound_cmd(cli: &Cli) -> i32 {
    let (cfg, bytes) = match load_config::<config::BoundConfig>(&cli.config) {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_SCHEMA;
        }
    };
    let prov = Provenance::new(cli.seed, "bound", &bytes);
    match commands::run_bound(&cfg, cli.seed) {
        Ok((table, records)) => {
            // JSON emits the bound records directly ({family, params,
            // value, certified}); CSV keeps the dominance table.
            let write_result = match cli.format {
                Format::Csv => write_output(&cli.out, |w| table::write_csv(w, &prov, &table)),
                Format::Json => write_output(&cli.out, |w| {
                    let doc = serde_json::json!({
                        "provenance": {
                            "version": prov.version,
                            "seed": prov.seed,
                            "config_hash": prov.config_hash,
                        },
                        "records": records,
                    });
                    writeln!(
                        w,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("records serialize")
                    )
                }),
            };
            match write_result {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("cannot write output: {e}");
                    EXIT_SCHEMA
                }
            }
        }
        Err(err) => {
            eprintln!("{err}");
            exit_code_for(&err)
        }
    }
}

fn run_hamiltonian(cli: &Cli) -> i32 {
    if cli.format == Format::Csv {
        eprintln!("the hamiltonian artifact is a JSON document; use --format json");
        return EXIT_SCHEMA;
    }
    let (cfg, bytes) = match load_config::<config::HamiltonianConfig>(&cli.config) {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_SCHEMA;
        }
    };
    let prov = Provenance::new(cli.seed, "hamiltonian", &bytes);
    // The artifact itself is the bare coefficient document; provenance goes
    // to the log so the file schema stays round-trippable.
    eprintln!(
        "# fermitrot {} seed {} config {}",
        prov.version, prov.seed, prov.config_hash
    );
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(cli.seed);
    match cfg.family.build(&mut rng) {
        Ok(coeff) => {
            let json = serde_json::to_string_pretty(&coeff).expect("coefficients serialize");
            match write_output(&cli.out, |w| writeln!(w, "{json}")) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("cannot write output: {e}");
                    EXIT_SCHEMA
                }
            }
        }
        Err(err) => {
            eprintln!("{err}");
            exit_code_for(&err)
        }
    }
}

fn run_selfcheck_cmd(cli: &Cli) -> i32 {
    let (cfg, bytes) = match load_config::<config::SelfcheckConfig>(&cli.config) {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_SCHEMA;
        }
    };
    let prov = Provenance::new(cli.seed, "selfcheck", &bytes);
    match commands::run_selfcheck(&cfg, cli.seed) {
        Ok((table, all_passed)) => match emit_table(cli, &prov, &table) {
            Ok(()) => {
                if all_passed {
                    EXIT_OK
                } else {
                    EXIT_NUMERICAL
                }
            }
            Err(e) => {
                eprintln!("cannot write output: {e}");
                EXIT_SCHEMA
            }
        },
        Err(err) => {
            eprintln!("{err}");
            exit_code_for(&err)
        }
    }
}
