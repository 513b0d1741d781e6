//! Piskvork (Gomocup) pipe protocol: one command per line on stdin, one
//! response per line on stdout, coordinates `x,y` from zero.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use uctadp_core::{AgentKind, BoardState, MlpModel, Move, SearchConfig, SIZE};

pub const ABOUT: &str = r#"name="uctadp", version="0.1", author="uctadp developers", country="-""#;

/// Share of `timeout_turn` the search may use.
const TURN_SHARE: f64 = 0.9;
/// Moves assumed left when splitting the remaining match time.
const EXPECTED_MOVES_LEFT: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Idle,
    Playing,
    /// Inside BOARD, collecting stones until DONE.
    Loading,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reply {
    Line(String),
    /// Command accepted, nothing to print.
    Silent,
    Quit,
}

pub struct ProtocolState {
    pub board: BoardState,
    pub info: BTreeMap<String, String>,
    pub phase: Phase,
    pub agent: AgentKind,
    pub base: SearchConfig,
    model: MlpModel,
    own: Vec<Move>,
    theirs: Vec<Move>,
}

impl ProtocolState {
    pub fn new(model: MlpModel, agent: AgentKind, base: SearchConfig) -> ProtocolState {
        ProtocolState {
            board: BoardState::new(),
            info: BTreeMap::new(),
            phase: Phase::Idle,
            agent,
            base,
            model,
            own: Vec::new(),
            theirs: Vec::new(),
        }
    }

    fn info_ms(&self, key: &str) -> Option<u64> {
        self.info.get(key)?.parse().ok()
    }

    /// Search time for the next move: the configured budget, capped by
    /// 90% of `timeout_turn` and by a 20-move share of `time_left`.
    pub fn turn_budget_ms(&self) -> Option<u64> {
        let mut caps: Vec<u64> = self.base.time_budget_ms.into_iter().collect();
        if let Some(t) = self.info_ms("timeout_turn").filter(|&t| t > 0) {
            caps.push((t as f64 * TURN_SHARE) as u64);
        }
        let match_limited = self.info_ms("timeout_match").map_or(true, |t| t > 0);
        if let Some(left) = self.info_ms("time_left").filter(|_| match_limited) {
            caps.push(left / EXPECTED_MOVES_LEFT);
        }
        caps.into_iter().min().map(|ms| ms.max(1))
    }

    fn engine_move(&mut self) -> Reply {
        if self.board.is_terminal() {
            return Reply::Line("ERROR game is over".into());
        }
        let cfg = SearchConfig {
            time_budget_ms: self.turn_budget_ms(),
            // same seed for the same position however it was reached
            seed: self.base.seed.wrapping_add(self.board.stone_count() as u64),
            ..self.base
        };
        match self.agent.choose_move(&self.board, &self.model, &cfg) {
            Ok(m) => {
                self.board.play(m).expect("engine plays legal moves");
                self.own.push(m);
                Reply::Line(format!("{},{}", m.x, m.y))
            }
            Err(e) => Reply::Line(format!("ERROR {e}")),
        }
    }

    fn reset(&mut self) {
        self.board = BoardState::new();
        self.own.clear();
        self.theirs.clear();
    }

    /// Rebuilds the board from stones received in BOARD mode. The side
    /// with more stones (or the opponent, on a tie) moved first.
    fn finish_loading(&mut self) -> Result<(), String> {
        let (first, second) = if self.own.len() == self.theirs.len() {
            (&self.own, &self.theirs)
        } else if self.theirs.len() == self.own.len() + 1 {
            (&self.theirs, &self.own)
        } else {
            return Err("ERROR inconsistent stone counts".into());
        };
        let mut order = Vec::with_capacity(first.len() + second.len());
        for i in 0..first.len() {
            order.push(first[i]);
            if let Some(&m) = second.get(i) {
                order.push(m);
            }
        }
        self.board = BoardState::from_moves(order).map_err(|e| format!("ERROR {e}"))?;
        Ok(())
    }

    pub fn handle_command(&mut self, line: &str) -> Reply {
        let line = line.trim();
        if self.phase == Phase::Loading {
            if line.eq_ignore_ascii_case("DONE") {
                self.phase = Phase::Playing;
                return match self.finish_loading() {
                    Ok(()) => self.engine_move(),
                    Err(e) => {
                        self.reset();
                        Reply::Line(e)
                    }
                };
            }
            let fields: Vec<Option<usize>> = line.split(',').map(|f| f.trim().parse().ok()).collect();
            return match fields[..] {
                [Some(x), Some(y), Some(who)] if x < SIZE && y < SIZE && (1..=3).contains(&who) => {
                    let m = Move::at(x, y);
                    if self.own.contains(&m) || self.theirs.contains(&m) {
                        return Reply::Line("ERROR illegal move".into());
                    }
                    if who == 1 {
                        self.own.push(m)
                    } else {
                        self.theirs.push(m)
                    }
                    Reply::Silent
                }
                _ => Reply::Line("ERROR malformed board line".into()),
            };
        }
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match cmd.to_ascii_uppercase().as_str() {
            "START" => match rest.parse::<usize>() {
                Ok(n) if n == SIZE => {
                    self.reset();
                    self.phase = Phase::Playing;
                    Reply::Line("OK".into())
                }
                Ok(_) => Reply::Line("ERROR unsupported size".into()),
                Err(_) => Reply::Line(format!("UNKNOWN {line}")),
            },
            "RESTART" => {
                self.reset();
                self.phase = Phase::Playing;
                Reply::Line("OK".into())
            }
            "INFO" => {
                let (k, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if k.is_empty() {
                    return Reply::Line(format!("UNKNOWN {line}"));
                }
                self.info.insert(k.to_ascii_lowercase(), v.trim().to_string());
                Reply::Silent
            }
            "ABOUT" => Reply::Line(ABOUT.into()),
            "END" => Reply::Quit,
            "BEGIN" | "TURN" | "BOARD" if self.phase != Phase::Playing => Reply::Line("ERROR game not started".into()),
            "BEGIN" => {
                if self.board.stone_count() > 0 {
                    return Reply::Line("ERROR board is not empty".into());
                }
                self.engine_move()
            }
            "TURN" => {
                let coords: Vec<Option<usize>> = rest.split(',').map(|f| f.trim().parse().ok()).collect();
                let [Some(x), Some(y)] = coords[..] else {
                    return Reply::Line(format!("UNKNOWN {line}"));
                };
                let Some(m) = Move::new(x, y) else {
                    return Reply::Line("ERROR illegal move".into());
                };
                if self.board.play(m).is_err() {
                    return Reply::Line("ERROR illegal move".into());
                }
                self.theirs.push(m);
                self.engine_move()
            }
            "BOARD" => {
                self.reset();
                self.phase = Phase::Loading;
                Reply::Silent
            }
            _ => Reply::Line(format!("UNKNOWN {line}")),
        }
    }
}

/// Reads commands until END or end of input.
pub fn run_loop(state: &mut ProtocolState, input: impl BufRead, mut output: impl Write) -> std::io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match state.handle_command(&line) {
            Reply::Line(s) => {
                writeln!(output, "{s}")?;
                output.flush()?;
            }
            Reply::Silent => {}
            Reply::Quit => break,
        }
    }
    Ok(())
}
