//! Test positions with oracle-verified optimal moves.
//!
//! File format: blocks separated by blank lines. Each block has `key: value`
//! header lines (`name`, `kind`, `source`, `optimal`, optional `trap`) then
//! the 15 board rows and an optional `turn:` line.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uctadp_core::adp::greedy_move;
use uctadp_core::patterns::find_threats;
use uctadp_core::{BoardState, MlpModel, Move, Player};

use crate::oracle::{five_cells, makes_four, shortest_win};

pub const TACTICAL: &str = include_str!("../fixtures/tactical.txt");
pub const SPECIAL: &str = include_str!("../fixtures/special.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureKind {
    WinIn1,
    BlockIn1,
    /// Shortest forced win takes three of the mover's moves, starting with a four.
    WinIn3,
    /// Shortest win starts with a move creating two open threes.
    DoubleThree,
    /// A tempting four-three loses to a counter-four; the oracle move is a
    /// separate forced win.
    Trap,
    /// Quiet middle-game position for speed benchmarks.
    Midgame,
}

impl FixtureKind {
    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::WinIn1 => "win-in-1",
            FixtureKind::BlockIn1 => "block-in-1",
            FixtureKind::WinIn3 => "win-in-3",
            FixtureKind::DoubleThree => "double-three",
            FixtureKind::Trap => "trap",
            FixtureKind::Midgame => "midgame",
        }
    }
}

impl FromStr for FixtureKind {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, FixtureError> {
        [
            FixtureKind::WinIn1,
            FixtureKind::BlockIn1,
            FixtureKind::WinIn3,
            FixtureKind::DoubleThree,
            FixtureKind::Trap,
            FixtureKind::Midgame,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| FixtureError::Parse(format!("unknown kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    DerivedBruteforce,
    DerivedThreatAnalysis,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::DerivedBruteforce => "derived-bruteforce",
            Source::DerivedThreatAnalysis => "derived-threat-analysis",
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FixtureError {
    #[error("fixture parse error: {0}")]
    Parse(String),
    #[error("fixture {name} failed verification: {reason}")]
    Invalid { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub board: BoardState,
    pub optimal: Vec<Move>,
    pub source: Source,
    pub trap: Option<Move>,
}

fn sorted(mut v: Vec<Move>) -> Vec<Move> {
    v.sort();
    v.dedup();
    v
}

impl Fixture {
    pub fn is_optimal(&self, m: Move) -> bool {
        self.optimal.contains(&m)
    }

    /// Re-derives the optimal set with the oracle and checks the kind's
    /// defining property.
    pub fn verify(&self) -> Result<(), FixtureError> {
        let fail = |reason: String| {
            Err(FixtureError::Invalid {
                name: self.name.clone(),
                reason,
            })
        };
        let b = &self.board;
        if b.is_terminal() {
            return fail("position is already decided".into());
        }
        let me = b.side_to_move();
        let opp_fives = five_cells(b, me.opponent());
        let expect_win = |k: u8| -> Result<Vec<Move>, FixtureError> {
            match shortest_win(b) {
                Some((got, moves)) if got == k => Ok(sorted(moves)),
                other => Err(FixtureError::Invalid {
                    name: self.name.clone(),
                    reason: format!("expected shortest win {k}, oracle says {other:?}"),
                }),
            }
        };
        let optimal = match self.kind {
            FixtureKind::WinIn1 => expect_win(1)?,
            FixtureKind::BlockIn1 => {
                if !five_cells(b, me).is_empty() {
                    return fail("mover can win at once".into());
                }
                if opp_fives.len() != 1 {
                    return fail(format!("opponent has {} five-cells", opp_fives.len()));
                }
                opp_fives.clone()
            }
            FixtureKind::WinIn3 | FixtureKind::DoubleThree | FixtureKind::Trap => {
                if !opp_fives.is_empty() {
                    return fail("opponent threatens five".into());
                }
                let o = expect_win(3)?;
                let fours = o.iter().filter(|&&m| makes_four(b, m)).count();
                match self.kind {
                    FixtureKind::WinIn3 if fours == 0 => return fail("no optimal move is a four".into()),
                    FixtureKind::DoubleThree if fours > 0 => return fail("an optimal move is a four".into()),
                    _ => {}
                }
                o
            }
            FixtureKind::Midgame => {
                if !is_quiet(b) {
                    return fail("position has threats".into());
                }
                return Ok(());
            }
        };
        if optimal != sorted(self.optimal.clone()) {
            return fail(format!("optimal set {:?}, oracle gives {optimal:?}", self.optimal));
        }
        if self.kind == FixtureKind::Trap {
            let Some(t) = self.trap else {
                return fail("trap move missing".into());
            };
            if optimal.contains(&t) {
                return fail("trap move is optimal".into());
            }
            // the trap is a four whose only block gives the opponent an open four
            let mut after = b.clone();
            after.play(t).map_err(|e| FixtureError::Invalid {
                name: self.name.clone(),
                reason: e.to_string(),
            })?;
            let mine = five_cells(&after, me);
            if mine.len() != 1 {
                return fail(format!("trap leaves {} five-cells", mine.len()));
            }
            after.play(mine[0]).expect("empty");
            if five_cells(&after, me.opponent()).len() < 2 {
                return fail("forced block does not make an open four".into());
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "kind: {}", self.kind.name());
        let _ = writeln!(s, "source: {}", self.source.name());
        let opt: Vec<String> = self.optimal.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(s, "optimal: {}", opt.join(" "));
        if let Some(t) = self.trap {
            let _ = writeln!(s, "trap: {t}");
        }
        s.push_str(&self.board.to_text());
        s
    }
}

/// No threat moves for the side to move and no fours for the opponent.
pub fn is_quiet(b: &BoardState) -> bool {
    let me = b.side_to_move();
    !b.is_terminal() && find_threats(b, me).is_empty() && find_threats(b, me.opponent()).vcf_moves.is_empty()
}

fn parse_moves(s: &str) -> Result<Vec<Move>, FixtureError> {
    s.split_whitespace()
        .map(|t| t.parse::<Move>().map_err(|e| FixtureError::Parse(e.to_string())))
        .collect()
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, FixtureError> {
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                out.push(parse_block(&block)?);
                block.clear();
            }
        } else if !line.starts_with('#') {
            block.push(line);
        }
    }
    Ok(out)
}

fn parse_block(lines: &[&str]) -> Result<Fixture, FixtureError> {
    let mut name = None;
    let mut kind = None;
    let mut source = Source::DerivedBruteforce;
    let mut optimal = Vec::new();
    let mut trap = None;
    let mut rows = Vec::new();
    for l in lines {
        match l.split_once(": ") {
            Some(("name", v)) => name = Some(v.trim().to_string()),
            Some(("kind", v)) => kind = Some(v.trim().parse()?),
            Some(("source", v)) => {
                source = match v.trim() {
                    "derived-bruteforce" => Source::DerivedBruteforce,
                    "derived-threat-analysis" => Source::DerivedThreatAnalysis,
                    other => return Err(FixtureError::Parse(format!("unknown source {other:?}"))),
                }
            }
            Some(("optimal", v)) => optimal = parse_moves(v)?,
            Some(("trap", v)) => trap = parse_moves(v)?.first().copied(),
            _ => rows.push(*l),
        }
    }
    let board = BoardState::from_text(&rows.join("\n")).map_err(|e| FixtureError::Parse(e.to_string()))?;
    Ok(Fixture {
        name: name.ok_or_else(|| FixtureError::Parse("missing name".into()))?,
        kind: kind.ok_or_else(|| FixtureError::Parse("missing kind".into()))?,
        board,
        optimal,
        source,
        trap,
    })
}

pub fn format_fixtures(fixtures: &[Fixture]) -> String {
    fixtures.iter().map(Fixture::to_text).collect::<Vec<_>>().join("\n")
}

/// The bundled 50-position tactical suite.
pub fn tactical_suite() -> Vec<Fixture> {
    parse_fixtures(TACTICAL).expect("bundled fixtures parse")
}

pub fn special(kind: FixtureKind) -> Fixture {
    parse_fixtures(SPECIAL)
        .expect("bundled fixtures parse")
        .into_iter()
        .find(|f| f.kind == kind)
        .expect("bundled special fixture")
}

/// Mined from seeded games mixing greedy and random moves: the first
/// position of each game matching a wanted class is kept.
pub fn generate_tactical(model: &MlpModel, seed: u64, counts: [usize; 3]) -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [FixtureKind::WinIn1, FixtureKind::BlockIn1, FixtureKind::WinIn3];
    let mut found: [Vec<Fixture>; 3] = Default::default();
    let mut game = 0;
    while found.iter().zip(counts).any(|(f, c)| f.len() < c) {
        game += 1;
        let mut b = BoardState::new();
        let mut taken = [false; 3];
        let greedy_p = rng.gen_range(0.3..0.9);
        while !b.is_terminal() {
            if b.stone_count() >= 8 {
                for (k, kind) in kinds.iter().enumerate() {
                    if taken[k] || found[k].len() >= counts[k] {
                        continue;
                    }
                    if let Some(f) = classify(&b, *kind, format!("{}-{:02}", kind.name(), found[k].len() + 1)) {
                        taken[k] = true;
                        found[k].push(f);
                    }
                }
            }
            let m = if rng.gen::<f64>() < greedy_p {
                greedy_move(model, &b)
            } else {
                let c = b.candidate_moves();
                c.get(rng.gen_range(0..c.len())).copied()
            };
            let Some(m) = m else { break };
            b.play(m).expect("legal");
        }
        assert!(game < 100_000, "fixture mining does not converge");
    }
    found.into_iter().flatten().collect()
}

fn classify(b: &BoardState, kind: FixtureKind, name: String) -> Option<Fixture> {
    let me = b.side_to_move();
    let opp_fives = five_cells(b, me.opponent());
    let optimal = match kind {
        FixtureKind::WinIn1 => {
            let w = five_cells(b, me);
            (!w.is_empty()).then_some(w)?
        }
        FixtureKind::BlockIn1 => {
            (five_cells(b, me).is_empty() && opp_fives.len() == 1).then(|| opp_fives.clone())?
        }
        FixtureKind::WinIn3 => {
            if !opp_fives.is_empty() {
                return None;
            }
            // cheap pre-filter: a four must be available
            if find_threats(b, me).vcf_moves.is_empty() {
                return None;
            }
            match shortest_win(b) {
                Some((3, m)) if m.iter().any(|&x| makes_four(b, x)) => m,
                _ => return None,
            }
        }
        _ => return None,
    };
    let f = Fixture {
        name,
        kind,
        board: b.clone(),
        optimal: sorted(optimal),
        source: Source::DerivedBruteforce,
        trap: None,
    };
    f.verify().ok().map(|_| f)
}

/// Seeded quiet positions for benchmarks.
pub fn generate_midgame(seed: u64, plies: usize) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let b = uctadp_core::adp::random_opening(plies, &mut rng);
        if is_quiet(&b) && b.side_to_move() == Player::Black {
            return Fixture {
                name: format!("midgame-{plies}"),
                kind: FixtureKind::Midgame,
                board: b,
                optimal: Vec::new(),
                source: Source::DerivedThreatAnalysis,
                trap: None,
            };
        }
    }
}
