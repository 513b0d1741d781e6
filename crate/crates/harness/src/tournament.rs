//! Round-robin matches between agents under per-turn and per-game limits.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uctadp_core::adp::random_opening;
use uctadp_core::{AgentKind, MlpModel, Outcome, Player, SearchConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct MatchSettings {
    pub games_per_pair: usize,
    /// Iterations per move; every search agent gets the same budget.
    pub iterations: u64,
    pub turn_limit: Duration,
    pub game_limit: Duration,
    pub opening_plies: usize,
    pub seed: u64,
}

impl Default for MatchSettings {
    fn default() -> Self {
        MatchSettings {
            games_per_pair: 30,
            iterations: 2000,
            turn_limit: Duration::from_secs(15),
            game_limit: Duration::from_secs(90),
            opening_plies: 2,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameEnd {
    Five,
    Draw,
    /// The loser ran out of game time.
    Timeout,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameRecord {
    pub black: AgentKind,
    pub white: AgentKind,
    pub winner: Option<Player>,
    pub end: GameEnd,
    pub plies: usize,
    pub max_turn: Duration,
}

/// Plays one game from a seeded random opening.
pub fn play_game(
    black: AgentKind,
    white: AgentKind,
    model: &MlpModel,
    settings: &MatchSettings,
    game_seed: u64,
) -> GameRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(game_seed);
    let mut board = random_opening(settings.opening_plies, &mut rng);
    let mut used = [Duration::ZERO; 2];
    let mut max_turn = Duration::ZERO;
    let mut ply = 0u64;
    while !board.is_terminal() {
        let me = board.side_to_move();
        let agent = if me == Player::Black { black } else { white };
        let left = settings.game_limit.saturating_sub(used[me.index()]);
        let budget = settings.turn_limit.min(left).mul_f64(0.9);
        let cfg = SearchConfig {
            iteration_budget: Some(settings.iterations),
            time_budget_ms: Some(budget.as_millis().max(1) as u64),
            seed: game_seed.wrapping_mul(1000).wrapping_add(ply),
            ..SearchConfig::default()
        };
        let start = Instant::now();
        let m = agent.choose_move(&board, model, &cfg).expect("game is not over");
        let took = start.elapsed();
        used[me.index()] += took;
        max_turn = max_turn.max(took);
        if took > settings.turn_limit || used[me.index()] > settings.game_limit {
            return GameRecord {
                black,
                white,
                winner: Some(me.opponent()),
                end: GameEnd::Timeout,
                plies: board.stone_count(),
                max_turn,
            };
        }
        board.play(m).expect("agents play legal moves");
        ply += 1;
    }
    let winner = match board.outcome() {
        Some(Outcome::Win(p)) => Some(p),
        _ => None,
    };
    GameRecord {
        black,
        white,
        winner,
        end: if winner.is_some() { GameEnd::Five } else { GameEnd::Draw },
        plies: board.stone_count(),
        max_turn,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub a: AgentKind,
    pub b: AgentKind,
    pub a_wins: usize,
    pub b_wins: usize,
    pub draws: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Standings {
    pub agents: Vec<AgentKind>,
    pub pairs: Vec<PairResult>,
    pub games: Vec<GameRecord>,
}

impl Standings {
    /// Wins plus half a point per draw.
    pub fn points(&self, agent: AgentKind) -> f64 {
        self.pairs
            .iter()
            .map(|p| {
                let d = p.draws as f64 * 0.5;
                if p.a == agent {
                    p.a_wins as f64 + d
                } else if p.b == agent {
                    p.b_wins as f64 + d
                } else {
                    0.0
                }
            })
            .sum()
    }

    pub fn pair(&self, a: AgentKind, b: AgentKind) -> Option<(usize, usize, usize)> {
        self.pairs.iter().find_map(|p| {
            if p.a == a && p.b == b {
                Some((p.a_wins, p.b_wins, p.draws))
            } else if p.a == b && p.b == a {
                Some((p.b_wins, p.a_wins, p.draws))
            } else {
                None
            }
        })
    }

    /// One row per pair: `agent_a,agent_b,a_wins,b_wins,draws`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("agent_a,agent_b,a_wins,b_wins,draws\n");
        for p in &self.pairs {
            let _ = writeln!(s, "{},{},{},{},{}", p.a, p.b, p.a_wins, p.b_wins, p.draws);
        }
        s
    }

    /// Cross table of wins:losses plus points.
    pub fn summary(&self) -> String {
        let mut s = String::from("agent");
        for a in &self.agents {
            let _ = write!(s, "\t{a}");
        }
        s.push_str("\tpoints\n");
        for &a in &self.agents {
            let _ = write!(s, "{a}");
            for &b in &self.agents {
                match self.pair(a, b) {
                    Some((w, l, _)) if a != b => {
                        let _ = write!(s, "\t{w}:{l}");
                    }
                    _ => s.push_str("\t-"),
                }
            }
            let _ = writeln!(s, "\t{}", self.points(a));
        }
        let timeouts = self.games.iter().filter(|g| g.end == GameEnd::Timeout).count();
        let slowest = self.games.iter().map(|g| g.max_turn).max().unwrap_or_default();
        let _ = writeln!(s, "games {} timeouts {} slowest turn {:?}", self.games.len(), timeouts, slowest);
        s
    }
}

/// Every pair plays `games_per_pair` games, swapping colours each game.
pub fn round_robin(agents: &[AgentKind], model: &MlpModel, settings: &MatchSettings) -> Standings {
    let mut pairs = Vec::new();
    let mut games = Vec::new();
    for (i, &a) in agents.iter().enumerate() {
        for &b in &agents[i + 1..] {
            let mut pr = PairResult {
                a,
                b,
                a_wins: 0,
                b_wins: 0,
                draws: 0,
            };
            for g in 0..settings.games_per_pair {
                let (black, white) = if g % 2 == 0 { (a, b) } else { (b, a) };
                // both colour assignments of a pair share an opening
                let seed = settings.seed.wrapping_mul(1_000_003).wrapping_add((g / 2) as u64);
                let rec = play_game(black, white, model, settings, seed);
                match rec.winner {
                    None => pr.draws += 1,
                    Some(p) => {
                        let w = if p == Player::Black { black } else { white };
                        if w == a {
                            pr.a_wins += 1
                        } else {
                            pr.b_wins += 1
                        }
                    }
                }
                games.push(rec);
            }
            pairs.push(pr);
        }
    }
    Standings {
        agents: agents.to_vec(),
        pairs,
        games,
    }
}
