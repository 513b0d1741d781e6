use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uctadp_core::{AgentKind, BoardState, MlpModel, Move, SearchConfig};
use uctadp_protocol::{ProtocolState, Reply};

fn engine(iterations: Option<u64>) -> ProtocolState {
    let base = SearchConfig {
        iteration_budget: iterations,
        ..SearchConfig::default()
    };
    ProtocolState::new(MlpModel::pretrained(), AgentKind::UctAdpPb, base)
}

fn parse_move(reply: &str) -> Move {
    let (x, y) = reply.split_once(',').expect("x,y reply");
    Move::new(x.parse().unwrap(), y.parse().unwrap()).expect("on the board")
}

/// Scripted opponent: a seeded random candidate move.
fn opponent_move(board: &BoardState, rng: &mut ChaCha8Rng) -> Move {
    let c = board.candidate_moves();
    c[rng.gen_range(0..c.len())]
}

/// Drives `turns` engine replies, restarting finished games, and returns
/// the slowest response.
fn drive(s: &mut ProtocolState, turns: usize, seed: u64) -> Duration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mirror = BoardState::new();
    let mut slowest = Duration::ZERO;
    let mut engine_first = true;
    for turn in 0..turns {
        if mirror.is_terminal() || mirror.stone_count() + 2 > uctadp_core::board::CELLS {
            assert_eq!(s.handle_command("RESTART"), Reply::Line("OK".into()));
            mirror = BoardState::new();
            engine_first = !engine_first;
        }
        let cmd = if mirror.stone_count() == 0 && engine_first {
            "BEGIN".to_string()
        } else {
            let m = opponent_move(&mirror, &mut rng);
            mirror.play(m).unwrap();
            if mirror.is_terminal() {
                continue;
            }
            format!("TURN {},{}", m.x, m.y)
        };
        let start = Instant::now();
        let reply = s.handle_command(&cmd);
        slowest = slowest.max(start.elapsed());
        let Reply::Line(text) = reply else {
            panic!("turn {turn}: no reply to {cmd}");
        };
        let m = parse_move(&text);
        assert!(mirror.play(m).is_ok(), "turn {turn}: engine played {text} on an occupied cell");
    }
    slowest
}

#[test]
fn scripted_game_transcript() {
    let mut s = engine(None);
    assert_eq!(s.handle_command("START 15"), Reply::Line("OK".into()));
    for info in ["INFO timeout_turn 1000", "INFO timeout_match 90000", "INFO time_left 90000", "INFO game_type 0"] {
        assert_eq!(s.handle_command(info), Reply::Silent);
    }
    let slowest = drive(&mut s, 21, 3);
    assert!(slowest <= Duration::from_millis(1000), "slowest reply {slowest:?}");
    assert_eq!(s.handle_command("END"), Reply::Quit);
}

#[test]
fn hundred_turns_respect_timeout_turn() {
    let mut s = engine(None);
    s.handle_command("START 15");
    s.handle_command("INFO timeout_turn 100");
    let slowest = drive(&mut s, 100, 11);
    assert!(slowest <= Duration::from_millis(100), "slowest reply {slowest:?}");
}

#[test]
fn run_loop_over_pipes() {
    let mut s = engine(Some(50));
    let input = "START 15\nABOUT\nBEGIN\nTURN 8,8\nEND\nTURN 1,1\n";
    let mut out = Vec::new();
    uctadp_protocol::run_loop(&mut s, input.as_bytes(), &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "{text}");
    assert_eq!(lines[0], "OK");
    assert_eq!(lines[2], "7,7");
    parse_move(lines[3]);
}
