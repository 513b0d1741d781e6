use std::io;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use uctadp_core::adp::{load_model, save_model, self_play_train_with, TdConfig};
use uctadp_core::config::apply_overrides;
use uctadp_core::{AgentKind, MlpModel, Player, SearchConfig};
use uctadp_harness::bench::{iterations_in, speed_summary};
use uctadp_harness::fixtures::{parse_fixtures, special, FixtureKind};
use uctadp_harness::tactics::{curves_summary, failure_rate_curve, DEFAULT_CHECKPOINTS};
use uctadp_harness::tournament::{play_game, round_robin, MatchSettings};

#[derive(Parser)]
#[command(name = "uctadp", version, about = "Gomoku engine: UCT search with a learned evaluator")]
struct Cli {
    /// key = value overrides for search and training settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Evaluator weights; the bundled model is used when absent
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Piskvork protocol on stdin/stdout
    Protocol {
        #[arg(long, default_value = "uct-adp-pb")]
        agent: AgentKind,
    },
    /// Self-play TD training
    Train {
        #[arg(long)]
        games: usize,
        #[arg(long)]
        out: PathBuf,
        /// Training log CSV
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Games between two agents
    Selfplay {
        #[arg(long)]
        white: AgentKind,
        #[arg(long)]
        black: AgentKind,
        #[arg(long, default_value_t = 10)]
        games: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Iterations per agent in a fixed time on the midgame fixture
    Bench {
        #[arg(long, default_value_t = 20.0)]
        seconds: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [AgentKind::UctAdp, AgentKind::UctDummy, AgentKind::UctSim])]
        agents: Vec<AgentKind>,
    },
    /// Failure rate against iterations on a fixture
    FailureRate {
        /// double-three, trap, or a path to a fixture file (first entry is used)
        #[arg(long, default_value = "double-three")]
        fixture: String,
        #[arg(long, value_delimiter = ',', default_values_t = [AgentKind::UctAdpPb, AgentKind::UctAdp, AgentKind::UctDummy, AgentKind::UctSim])]
        agents: Vec<AgentKind>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CHECKPOINTS)]
        checkpoints: Vec<u64>,
        /// Directory for one CSV per agent
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Round robin between agents
    Tournament {
        #[arg(long, value_delimiter = ',', default_values_t = [AgentKind::UctAdpPb, AgentKind::UctAdp, AgentKind::WeightedSum, AgentKind::Adp, AgentKind::UctSim])]
        agents: Vec<AgentKind>,
        #[arg(long, default_value_t = 30)]
        games: usize,
        #[arg(long, default_value_t = 2000)]
        iterations: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Standings CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// HTTP API and static web files
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        #[arg(long, default_value = "uct-adp-pb")]
        agent: AgentKind,
    },
}

struct Settings {
    search: SearchConfig,
    td: TdConfig,
}

fn load_settings(path: Option<&Path>) -> Result<Settings> {
    let mut search = SearchConfig::default();
    let mut td = TdConfig::default();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
        apply_overrides(&text, &mut search, &mut td).with_context(|| format!("in {}", p.display()))?;
        search.validate()?;
    }
    Ok(Settings { search, td })
}

fn model(path: Option<&Path>) -> Result<MlpModel> {
    match path {
        None => Ok(MlpModel::pretrained()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read model file {}", p.display()))?;
            Ok(load_model(&text).with_context(|| format!("bad model file {}", p.display()))?)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let settings = load_settings(cli.config.as_deref())?;
    let model_path = cli.model.as_deref();
    match cli.command {
        Command::Protocol { agent } => {
            let mut state = uctadp_protocol::ProtocolState::new(model(model_path)?, agent, settings.search);
            uctadp_protocol::run_loop(&mut state, io::stdin().lock(), io::stdout().lock())?;
        }
        Command::Train { games, out, log, seed } => {
            let cfg = TdConfig {
                games,
                seed: seed.unwrap_or(settings.td.seed),
                ..settings.td
            };
            let (m, training_log) = self_play_train_with(&cfg, |row| {
                eprintln!(
                    "games {:>6}  td_error {:.4}  vs_random {:.2}",
                    row.game_index, row.avg_abs_td_error, row.win_rate_vs_random
                );
            });
            std::fs::write(&out, save_model(&m)).with_context(|| format!("writing {}", out.display()))?;
            if let Some(l) = log {
                std::fs::write(&l, training_log.to_csv()).with_context(|| format!("writing {}", l.display()))?;
            }
        }
        Command::Selfplay { white, black, games, seed } => {
            let m = model(model_path)?;
            let settings = MatchSettings {
                iterations: settings.search.iteration_budget.unwrap_or(2000),
                opening_plies: 0,
                seed,
                ..MatchSettings::default()
            };
            let (mut bw, mut ww, mut draws) = (0, 0, 0);
            for g in 0..games {
                let r = play_game(black, white, &m, &settings, seed.wrapping_add(g as u64));
                let result = match r.winner {
                    Some(Player::Black) => {
                        bw += 1;
                        "black"
                    }
                    Some(Player::White) => {
                        ww += 1;
                        "white"
                    }
                    None => {
                        draws += 1;
                        "draw"
                    }
                };
                println!("game {} black={black} white={white} winner={result} plies={} end={:?}", g + 1, r.plies, r.end);
            }
            println!("summary black={black} white={white} black_wins={bw} white_wins={ww} draws={draws}");
        }
        Command::Bench { seconds, agents } => {
            let m = model(model_path)?;
            let f = special(FixtureKind::Midgame);
            let samples: Vec<_> = agents
                .iter()
                .map(|&a| iterations_in(&f.board, a, &m, Duration::from_secs_f64(seconds)))
                .collect();
            print!("{}", speed_summary(&samples));
        }
        Command::FailureRate {
            fixture,
            agents,
            trials,
            checkpoints,
            out_dir,
        } => {
            let m = model(model_path)?;
            let f = match fixture.as_str() {
                "double-three" => special(FixtureKind::DoubleThree),
                "trap" => special(FixtureKind::Trap),
                path => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    let Some(f) = parse_fixtures(&text)?.into_iter().next() else {
                        bail!("no fixtures in {path}");
                    };
                    f.verify()?;
                    f
                }
            };
            let curves: Vec<_> = agents
                .iter()
                .map(|&a| failure_rate_curve(&f, a, &m, &settings.search, &checkpoints, trials))
                .collect();
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir)?;
                for c in &curves {
                    std::fs::write(dir.join(format!("{}-{}.csv", c.fixture, c.agent)), c.to_csv())?;
                }
            }
            print!("{}", curves_summary(&curves));
        }
        Command::Tournament {
            agents,
            games,
            iterations,
            seed,
            out,
        } => {
            let m = model(model_path)?;
            let settings = MatchSettings {
                games_per_pair: games,
                iterations,
                seed,
                ..MatchSettings::default()
            };
            let st = round_robin(&agents, &m, &settings);
            if let Some(p) = out {
                std::fs::write(&p, st.to_csv())?;
            }
            print!("{}", st.summary());
        }
        Command::Serve {
            port,
            host,
            static_dir,
            agent,
        } => {
            let m = model(model_path)?;
            let addr: SocketAddr = format!("{host}:{port}").parse().context("bad host or port")?;
            let app = uctadp_server::AppState::new(m, settings.search, agent);
            eprintln!("listening on http://{addr}");
            tokio::runtime::Runtime::new()?.block_on(uctadp_server::serve(addr, app, static_dir))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
