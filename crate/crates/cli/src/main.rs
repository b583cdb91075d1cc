mod artifacts;
mod build;
mod error;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bentcodes::amcheck::assmus_mattson;
use bentcodes::designs::{design_from_codewords, fingerprint};
use bentcodes::lincode::census::census_report;
use bentcodes::lincode::{macwilliams_dual, Budget, Enumerator, WeightDistribution};
use bentcodes::Exec;

use artifacts::{read, sha256_hex, to_json, write, CodeFile};
use error::{bail, certificate, precondition, CliResult};

#[derive(Parser, Debug)]
#[command(name = "bentcodes", version, about = "Codes, designs and certificates from bent vectorial functions")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
    Incidence,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write code.json, generator.txt, wd.json and manifest.json.
    Build(build::BuildArgs),
    /// Check a certificate on a code file; exit 0 iff it holds.
    Verify {
        code: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(subcommand)]
        check: verify::Check,
    },
    /// Export the design held by the weight-W codewords.
    Export {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the [16, 7, 6] codes spanned by RM(1,4) and pairs of bent functions.
    Census,
    /// Relabelling-invariant summary of the weight-W design.
    Fingerprint {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    /// Assmus-Mattson report from a stored weight distribution.
    Amcheck {
        #[arg(long)]
        wd: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Re-run a build manifest into a new directory and compare output hashes.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Enumerator honouring `BENTCODES_BUDGET`.
pub(crate) fn enumerator() -> CliResult<Enumerator> {
    let budget = match std::env::var("BENTCODES_BUDGET") {
        Err(_) => Budget::default(),
        Ok(v) => match v.trim().parse() {
            Ok(max_dimension) => Budget { max_dimension },
            Err(_) => return bail(format!("BENTCODES_BUDGET={v:?} is not a dimension")),
        },
    };
    Ok(Enumerator::new(Exec::default(), budget))
}

fn print(value: &serde_json::Value) {
    println!("{}", to_json(value).trim_end());
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return bail("--threads must be positive");
        }
        bentcodes::exec::set_thread_count(n).map_err(|e| precondition(anyhow::anyhow!(e)))?;
    }
    match cli.command {
        Command::Build(args) => {
            let manifest = build::run(&args, std::env::args().collect())?;
            print(&json!({"out": args.out, "outputs": manifest.outputs}));
        }
        Command::Verify { code, report, check } => {
            let cf = CodeFile::load(&code)?;
            let outcome = verify::run(&cf, &check)?;
            if let Some(path) = report {
                write(&path, &to_json(&outcome.report))?;
            }
            print(&outcome.report);
            if !outcome.holds && !outcome.informational {
                return Err(certificate(format!("{check:?} does not hold")));
            }
        }
        Command::Export { code, weight, format, out } => {
            let cf = CodeFile::load(&code)?;
            let d = design_from_codewords(&cf.code()?, weight, &enumerator()?)?;
            let text = match format {
                ExportFormat::Json => serde_json::to_string(&d.to_json()).expect("serializable") + "\n",
                ExportFormat::Incidence => d.to_incidence_text(),
            };
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Census => {
            let r = census_report(Exec::default());
            print(&serde_json::to_value(&r).expect("serializable"));
        }
        Command::Fingerprint { code, weight } => {
            let cf = CodeFile::load(&code)?;
            let d = design_from_codewords(&cf.code()?, weight, &enumerator()?)?;
            let f = serde_json::to_value(fingerprint(&d)).expect("serializable");
            let digest = sha256_hex(serde_json::to_string(&f).expect("serializable").as_bytes());
            print(&json!({"fingerprint": f, "sha256": digest}));
        }
        Command::Amcheck { wd, t } => {
            let wd: WeightDistribution = serde_json::from_str(&read(&wd)?).map_err(precondition)?;
            let dual = macwilliams_dual(&wd)?;
            print(&serde_json::to_value(assmus_mattson(&wd, &dual, t)?).expect("serializable"));
        }
        Command::Replay { manifest, out } => print(&build::replay(&manifest, &out)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.kind.code()
        }
    }
}
