use std::fs;
use std::io::{self, BufReader};
use std::net::TcpListener;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use socialai_core::agents::PolicyId;
use socialai_core::harness::{evaluate_runs, play, protocol, replay, EpisodeTrace};
use socialai_core::shaping::{BonusKind, BonusParams, WrapperConfig};
use socialai_core::{EnvId, EnvSpec, GrammarDoc, Role};

#[derive(Parser)]
#[command(
    name = "socialai",
    version,
    about = "Grid-world social-skill environments: evaluate, serve, replay and play"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scripted policy over consecutive seeds and print a JSON report.
    Run(RunArgs),
    /// Serve episodes over newline-delimited JSON.
    Serve(ServeArgs),
    /// Re-execute a recorded trace and report whether it reproduces.
    Replay { file: PathBuf },
    /// Play an episode from the terminal.
    Play {
        #[arg(long)]
        env: EnvId,
        #[arg(long, default_value = "exiter")]
        role: Role,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the episode trace here on exit.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print an environment's utterance grammar as JSON.
    Grammar {
        #[arg(long)]
        env: EnvId,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Explo {
    None,
    Lang,
    Vision,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    env: EnvId,
    #[arg(long, default_value = "exiter")]
    role: Role,
    #[arg(long)]
    policy: PolicyId,
    #[arg(long, default_value_t = 100)]
    episodes: usize,
    /// First seed; episode i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "none")]
    explo: Explo,
    #[arg(long = "explo-C")]
    explo_c: Option<f64>,
    #[arg(long = "explo-T")]
    explo_t: Option<f64>,
    #[arg(long = "explo-M")]
    explo_m: Option<f64>,
    /// Scale applied to the intrinsic bonus.
    #[arg(long)]
    weight: Option<f64>,
    /// Blank NPCs out of the agent's view.
    #[arg(long)]
    unsocial: bool,
    /// Also write the report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write one trace file per episode into this directory.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Exit with status 2 when the success rate is lower.
    #[arg(long)]
    min_success_rate: Option<f64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ServeArgs {
    #[arg(long)]
    stdio: bool,
    /// Listen on 127.0.0.1; 0 picks a free port.
    #[arg(long)]
    tcp: Option<u16>,
}

fn wrappers(id: EnvId, a: &RunArgs) -> WrapperConfig {
    let mut config = WrapperConfig {
        unsocial: a.unsocial,
        ..WrapperConfig::default()
    };
    let kind = match a.explo {
        Explo::None => None,
        Explo::Lang => Some(BonusKind::Lang),
        Explo::Vision => Some(BonusKind::Vision),
    };
    if let Some(kind) = kind {
        let mut p = BonusParams::<f64>::with_kind(id, kind);
        p.c = a.explo_c.unwrap_or(p.c);
        p.t = a.explo_t.unwrap_or(p.t);
        p.m = a.explo_m.unwrap_or(p.m);
        config.explo = Some(p);
    }
    if let Some(w) = a.weight {
        config.weight = w;
    }
    config
}

fn run(a: RunArgs) -> Result<ExitCode> {
    let spec = EnvSpec::with_role(a.env, a.role);
    let config = wrappers(a.env, &a);
    let (report, runs) = evaluate_runs(spec, a.policy, a.episodes, a.seed, config)?;
    let json = serde_json::to_string_pretty(&report)?;
    println!("{json}");
    if let Some(path) = &a.json {
        fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = &a.trace {
        fs::create_dir_all(dir)?;
        for r in &runs {
            let path = dir.join(format!("{}-{}-{}.json", spec.label(), a.policy, r.seed));
            fs::write(&path, r.trace.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    match a.min_success_rate {
        Some(min) if report.success_rate < min => {
            eprintln!(
                "success rate {:.3} is below the required {min:.3}",
                report.success_rate
            );
            Ok(ExitCode::from(2))
        }
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run(a) => run(a),
        Command::Serve(s) => {
            if let Some(port) = s.tcp {
                let listener = TcpListener::bind(("127.0.0.1", port))?;
                eprintln!("listening on {}", listener.local_addr()?);
                protocol::serve_tcp(listener)?;
            } else {
                protocol::serve_stdio()?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { file } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let trace: EpisodeTrace = serde_json::from_str(&text).context("parsing trace")?;
            let verdict = replay(&trace);
            println!("{}", serde_json::to_string(&verdict)?);
            Ok(if verdict.is_identical() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Play {
            env,
            role,
            seed,
            trace,
        } => {
            let stdin = io::stdin();
            let t = play(
                EnvSpec::with_role(env, role),
                seed,
                BufReader::new(stdin.lock()),
                &mut io::stdout(),
            )?;
            if let Some(path) = trace {
                fs::write(&path, t.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Grammar { env } => {
            println!(
                "{}",
                serde_json::to_string_pretty(&GrammarDoc::for_env(env))?
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
