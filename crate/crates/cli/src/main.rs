use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbit_ideals::MembershipMode;
use orbit_ideals_cli::{
    cmd_dims, cmd_generators, cmd_membership, cmd_schedule, cmd_verify, cmd_witness,
    parse_partition, CliError, MembershipInput, OutputFormat, Report, RunConfig, VerifySuite,
    DEFAULT_MAX_N, DEFAULT_SAMPLES, WORKDIR_ENV,
};

/// Minimal generators of ideals of nilpotent orbit closures.
#[derive(Parser, Debug)]
#[command(name = "orbit-ideals", version, about)]
struct Cli {
    /// Jordan type, e.g. `3^2,2^2,1^5`.
    #[arg(long, global = true)]
    partition: Option<String>,

    /// Ambient matrix size (rank varieties, `dims`).
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Orbit samples per vanishing test.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    /// Elimination used by the membership oracle: auto, exact or modular.
    #[arg(long, global = true, default_value = "auto")]
    mode: MembershipMode,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest matrix size the expensive commands accept.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyman and minimal generator schedules with the arrow diagram.
    Schedule,
    /// Write the generator polynomials of the minimal schedule.
    Generators,
    /// Dimensions of the summands and ranks of the spanning families.
    Dims,
    /// Minimality and redundancy witness partitions.
    Witness,
    /// Decide membership of `f` in the ideal of `generators` (JSON input file).
    Membership { input: PathBuf },
    /// Run the vanishing, minimality and redundancy checks.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: VerifySuite,
    },
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let config = RunConfig {
        partition: cli.partition.as_deref().map(parse_partition).transpose()?,
        n: cli.n,
        seed: cli.seed,
        samples: cli.samples,
        mode: cli.mode,
        output: if cli.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        max_n: cli.max_n,
        workdir: Some(
            std::env::var_os(WORKDIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from),
        ),
    };
    fn finish(report: &impl Report, config: &RunConfig) -> Result<(String, i32), CliError> {
        Ok((report.render(config.output)?, report.exit_code()))
    }
    match cli.command {
        Command::Schedule => finish(&cmd_schedule(&config)?, &config),
        Command::Generators => finish(&cmd_generators(&config)?, &config),
        Command::Dims => finish(&cmd_dims(&config)?, &config),
        Command::Witness => finish(&cmd_witness(&config)?, &config),
        Command::Membership { input } => {
            let body = std::fs::read_to_string(&input)?;
            let input: MembershipInput = serde_json::from_str(&body)?;
            finish(&cmd_membership(&config, &input)?, &config)
        }
        Command::Verify { suite } => finish(&cmd_verify(&config, suite)?, &config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("orbit-ideals: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
