//! Board evaluator: a 3-layer sigmoid network over pattern counts, trained by
//! TD(0) self-play.
//!
//! The network input is the 5-slot encoding of all 32 pattern counts for the
//! side to move, then for the opponent, then a side-to-move one-hot. Its
//! output is the win probability of the side to move.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{BoardState, Move, Outcome, Player};
use crate::patterns::{scan_patterns, PatternCounts, NUM_PATTERNS};

pub const SLOTS: usize = 5;
pub const INPUT_SIZE: usize = NUM_PATTERNS * SLOTS * 2 + 2;
pub const HIDDEN_SIZE: usize = 64;

const MAGIC: &str = "UCTADP-MLP v1";

/// Pretrained weights shipped with the crate.
pub const DEFAULT_MODEL: &str = include_str!("../assets/default_model.txt");

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AdpError {
    #[error("input has {got} entries, model expects {expected}")]
    Shape { expected: usize, got: usize },
    #[error("non-finite value in TD update")]
    Numeric,
    #[error("bad model file: {0}")]
    Format(String),
}

/// Encoding of one count into its 5 slots.
pub fn count_slots(n: u16) -> [f64; SLOTS] {
    let n = n as i32;
    let step = |k: i32| (n - k).clamp(0, 1) as f64;
    let tail = if n > 4 { (n - 4) as f64 / 2.0 } else { 0.0 };
    [step(0), step(1), step(2), step(3), tail]
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedInput(pub Vec<f64>);

pub fn encode_input(counts_self: &PatternCounts, counts_opp: &PatternCounts, to_move: Player) -> EncodedInput {
    let mut x = vec![0.0; INPUT_SIZE];
    for (block, counts) in [counts_self, counts_opp].into_iter().enumerate() {
        for (i, &n) in counts.0.iter().enumerate() {
            let at = (block * NUM_PATTERNS + i) * SLOTS;
            x[at..at + SLOTS].copy_from_slice(&count_slots(n));
        }
    }
    x[INPUT_SIZE - 2 + to_move.index()] = 1.0;
    EncodedInput(x)
}

pub fn encode_board(board: &BoardState) -> EncodedInput {
    let me = board.side_to_move();
    encode_input(
        &scan_patterns(board, me),
        &scan_patterns(board, me.opponent()),
        me,
    )
}

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Weights of a `inputs → hidden → 1` sigmoid network.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    inputs: usize,
    hidden: usize,
    /// hidden × inputs, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

/// Gradient of the network output with respect to every weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdConfig {
    pub alpha: f64,
    pub gamma: f64,
    pub games: usize,
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for TdConfig {
    fn default() -> Self {
        TdConfig {
            alpha: 0.05,
            gamma: 1.0,
            games: 12_000,
            epsilon: 0.1,
            seed: 1,
        }
    }
}

impl MlpModel {
    pub fn zeros(inputs: usize, hidden: usize) -> MlpModel {
        MlpModel {
            inputs,
            hidden,
            w1: vec![0.0; inputs * hidden],
            b1: vec![0.0; hidden],
            w2: vec![0.0; hidden],
            b2: 0.0,
        }
    }

    /// Uniform weights in [-0.1, 0.1].
    pub fn random(inputs: usize, hidden: usize, rng: &mut impl Rng) -> MlpModel {
        let mut m = MlpModel::zeros(inputs, hidden);
        for w in m
            .w1
            .iter_mut()
            .chain(m.b1.iter_mut())
            .chain(m.w2.iter_mut())
            .chain(std::iter::once(&mut m.b2))
        {
            *w = rng.gen_range(-0.1..=0.1);
        }
        m
    }

    /// Standard-size model with seeded random weights.
    pub fn seeded(seed: u64) -> MlpModel {
        MlpModel::random(INPUT_SIZE, HIDDEN_SIZE, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// The pretrained model bundled with the crate.
    pub fn pretrained() -> MlpModel {
        load_model(DEFAULT_MODEL).expect("bundled model parses")
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    fn hidden_activations(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend_from_slice(&self.b1);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, h) in out.iter_mut().enumerate() {
                *h += self.w1[j * self.inputs + i] * xi;
            }
        }
        for h in out.iter_mut() {
            *h = sigmoid(*h);
        }
    }

    fn check(&self, x: &[f64]) -> Result<(), AdpError> {
        if x.len() != self.inputs {
            return Err(AdpError::Shape {
                expected: self.inputs,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, x: &[f64]) -> Result<f64, AdpError> {
        self.check(x)?;
        let mut h = Vec::with_capacity(self.hidden);
        self.hidden_activations(x, &mut h);
        Ok(self.output(&h))
    }

    fn output(&self, h: &[f64]) -> f64 {
        let z: f64 = self.b2 + h.iter().zip(&self.w2).map(|(a, b)| a * b).sum::<f64>();
        sigmoid(z)
    }

    /// Output value and its gradient with respect to every weight.
    pub fn value_gradient(&self, x: &[f64]) -> Result<(f64, Gradient), AdpError> {
        self.check(x)?;
        let mut h = Vec::with_capacity(self.hidden);
        self.hidden_activations(x, &mut h);
        let v = self.output(&h);
        let dz2 = v * (1.0 - v);
        let mut g = Gradient {
            w1: vec![0.0; self.w1.len()],
            b1: vec![0.0; self.hidden],
            w2: h.iter().map(|&hj| dz2 * hj).collect(),
            b2: dz2,
        };
        for j in 0..self.hidden {
            let dz1 = dz2 * self.w2[j] * h[j] * (1.0 - h[j]);
            g.b1[j] = dz1;
            let row = &mut g.w1[j * self.inputs..(j + 1) * self.inputs];
            for (gi, &xi) in row.iter_mut().zip(x) {
                *gi = dz1 * xi;
            }
        }
        Ok((v, g))
    }

    /// One semi-gradient TD(0) step moving `V(x)` toward
    /// `r_next + gamma * v_next`. Returns the TD error before the step.
    pub fn td_update(&mut self, x: &[f64], v_next: f64, r_next: f64, cfg: &TdConfig) -> Result<f64, AdpError> {
        if !v_next.is_finite() || !r_next.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(AdpError::Numeric);
        }
        let (v, g) = self.value_gradient(x)?;
        let delta = r_next + cfg.gamma * v_next - v;
        if delta == 0.0 {
            return Ok(0.0);
        }
        let step = cfg.alpha * delta;
        self.b2 += step * g.b2;
        for (w, d) in self.w2.iter_mut().zip(&g.w2) {
            *w += step * d;
        }
        for (w, d) in self.b1.iter_mut().zip(&g.b1) {
            *w += step * d;
        }
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.hidden {
                self.w1[j * self.inputs + i] += step * g.w1[j * self.inputs + i];
            }
        }
        if !self.b2.is_finite() {
            return Err(AdpError::Numeric);
        }
        Ok(delta)
    }
}

/// Win probability for the side to move. Finished games bypass the network.
pub fn evaluate_board(model: &MlpModel, board: &BoardState) -> f64 {
    match board.outcome() {
        Some(o) => o.score_for(board.side_to_move()),
        None => model
            .forward(&encode_board(board).0)
            .expect("standard-size model"),
    }
}

// ---------------------------------------------------------------------------
// Serialization

pub fn save_model(model: &MlpModel) -> String {
    let mut s = format!("{MAGIC} in={} hidden={}\n", model.inputs, model.hidden);
    let line = |s: &mut String, vals: &[f64]| {
        let parts: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    };
    s.push_str("W1\n");
    for row in model.w1.chunks(model.inputs) {
        line(&mut s, row);
    }
    s.push_str("B1\n");
    line(&mut s, &model.b1);
    s.push_str("W2\n");
    line(&mut s, &model.w2);
    s.push_str("B2\n");
    line(&mut s, &[model.b2]);
    s
}

pub fn load_model(text: &str) -> Result<MlpModel, AdpError> {
    let bad = |msg: &str| AdpError::Format(msg.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let rest = header
        .strip_prefix(MAGIC)
        .ok_or_else(|| bad("missing magic or wrong version"))?;
    let mut inputs = None;
    let mut hidden = None;
    for field in rest.split_whitespace() {
        let (k, v) = field.split_once('=').ok_or_else(|| bad("malformed header"))?;
        let v: usize = v.parse().map_err(|_| bad("malformed header"))?;
        match k {
            "in" => inputs = Some(v),
            "hidden" => hidden = Some(v),
            _ => return Err(bad("unknown header field")),
        }
    }
    let (inputs, hidden) = match (inputs, hidden) {
        (Some(i), Some(h)) if i > 0 && h > 0 => (i, h),
        _ => return Err(bad("header needs positive in= and hidden=")),
    };

    let mut section = |name: &str, rows: usize, cols: usize| -> Result<Vec<f64>, AdpError> {
        match lines.next() {
            Some(l) if l.trim() == name => {}
            _ => return Err(AdpError::Format(format!("expected section {name}"))),
        }
        let mut out = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let l = lines
                .next()
                .ok_or_else(|| AdpError::Format(format!("{name}: missing row {r}")))?;
            let before = out.len();
            for tok in l.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| AdpError::Format(format!("{name}: bad number {tok:?}")))?;
                if !v.is_finite() {
                    return Err(AdpError::Format(format!("{name}: non-finite weight")));
                }
                out.push(v);
            }
            if out.len() - before != cols {
                return Err(AdpError::Format(format!(
                    "{name}: row {r} has {} values, expected {cols}",
                    out.len() - before
                )));
            }
        }
        Ok(out)
    };
    let w1 = section("W1", hidden, inputs)?;
    let b1 = section("B1", 1, hidden)?;
    let w2 = section("W2", 1, hidden)?;
    let b2 = section("B2", 1, 1)?[0];
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(bad("trailing data"));
    }
    Ok(MlpModel {
        inputs,
        hidden,
        w1,
        b1,
        w2,
        b2,
    })
}

// ---------------------------------------------------------------------------
// Greedy play and self-play training

/// The candidate that leaves the opponent the lowest value.
pub fn greedy_move(model: &MlpModel, board: &BoardState) -> Option<Move> {
    let mut best: Option<(f64, Move)> = None;
    let mut scratch = board.clone();
    for m in board.candidate_moves() {
        scratch.play(m).expect("candidate is legal");
        let v = 1.0 - evaluate_board(model, &scratch);
        scratch.undo().expect("just played");
        if best.map_or(true, |(bv, _)| v > bv) {
            best = Some((v, m));
        }
    }
    best.map(|(_, m)| m)
}

fn random_move(board: &BoardState, rng: &mut impl Rng) -> Option<Move> {
    let c = board.candidate_bits();
    let n = c.count();
    (n > 0).then(|| Move::from_index(c.nth(rng.gen_range(0..n)).expect("in range")))
}

/// Plays one game with a move-choosing closure per colour.
pub fn play_game(
    mut black: impl FnMut(&BoardState) -> Option<Move>,
    mut white: impl FnMut(&BoardState) -> Option<Move>,
    mut board: BoardState,
) -> (Outcome, BoardState) {
    loop {
        if let Some(o) = board.outcome() {
            return (o, board);
        }
        let m = match board.side_to_move() {
            Player::Black => black(&board),
            Player::White => white(&board),
        };
        match m {
            Some(m) => {
                board.play(m).expect("agents return legal moves");
            }
            None => return (Outcome::Draw, board),
        }
    }
}

/// A short random opening, used to diversify otherwise deterministic games.
pub fn random_opening(plies: usize, rng: &mut impl Rng) -> BoardState {
    let mut b = BoardState::new();
    for _ in 0..plies {
        if b.is_terminal() {
            break;
        }
        let m = random_move(&b, rng).expect("non-terminal");
        b.play(m).expect("legal");
    }
    b
}

/// Score of greedy `a` against greedy `b` over `games` games with colours
/// alternating and random 2-ply openings. Wins count 1, draws ½.
pub fn greedy_match(a: &MlpModel, b: &MlpModel, games: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut score = 0.0;
    for g in 0..games {
        let start = random_opening(2, &mut rng);
        let a_color = if g % 2 == 0 { Player::Black } else { Player::White };
        let pa = |bd: &BoardState| greedy_move(a, bd);
        let pb = |bd: &BoardState| greedy_move(b, bd);
        let (o, _) = if a_color == Player::Black {
            play_game(pa, pb, start)
        } else {
            play_game(pb, pa, start)
        };
        score += o.score_for(a_color);
    }
    score / games as f64
}

/// Greedy model against a uniform-random player.
pub fn win_rate_vs_random(model: &MlpModel, games: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut score = 0.0;
    for g in 0..games {
        let color = if g % 2 == 0 { Player::Black } else { Player::White };
        let mut rr = ChaCha8Rng::seed_from_u64(rng.gen());
        let greedy = |bd: &BoardState| greedy_move(model, bd);
        let random = |bd: &BoardState| random_move(bd, &mut rr);
        let (o, _) = if color == Player::Black {
            play_game(greedy, random, BoardState::new())
        } else {
            play_game(random, greedy, BoardState::new())
        };
        score += o.score_for(color);
    }
    score / games as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRow {
    pub game_index: usize,
    pub avg_abs_td_error: f64,
    pub win_rate_vs_random: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainingLog {
    pub rows: Vec<LogRow>,
}

impl TrainingLog {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("game_index,avg_abs_td_error,win_rate_vs_random\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.game_index, r.avg_abs_td_error, r.win_rate_vs_random);
        }
        s
    }

    pub fn from_csv(text: &str) -> Option<TrainingLog> {
        let mut rows = Vec::new();
        for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
            let mut f = line.split(',');
            rows.push(LogRow {
                game_index: f.next()?.trim().parse().ok()?,
                avg_abs_td_error: f.next()?.trim().parse().ok()?,
                win_rate_vs_random: f.next()?.trim().parse().ok()?,
            });
        }
        Some(TrainingLog { rows })
    }

    /// Least-squares slope of the TD error over the rows covering the last
    /// `window` games, scaled to the whole window and divided by the window
    /// mean. Small magnitudes mean the curve has flattened.
    pub fn relative_drift(&self, window: usize) -> Option<f64> {
        let last = self.rows.last()?.game_index;
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.game_index + window > last)
            .map(|r| (r.game_index as f64, r.avg_abs_td_error))
            .collect();
        if pts.len() < 3 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx * window as f64 / my)
    }
}

/// Games per training-log row.
pub const LOG_EVERY: usize = 100;
const EVAL_GAMES: usize = 10;

/// Self-play TD training from a seeded random initialisation.
pub fn self_play_train(cfg: &TdConfig) -> (MlpModel, TrainingLog) {
    self_play_train_with(cfg, |_| {})
}

/// As [`self_play_train`], calling `progress` after each log row.
pub fn self_play_train_with(cfg: &TdConfig, mut progress: impl FnMut(&LogRow)) -> (MlpModel, TrainingLog) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut model = MlpModel::random(INPUT_SIZE, HIDDEN_SIZE, &mut rng);
    let mut log = TrainingLog::default();
    let mut err_sum = 0.0;
    let mut err_n = 0usize;
    for game in 1..=cfg.games {
        let mut board = BoardState::new();
        let mut x_prev = encode_board(&board).0;
        loop {
            let m = if rng.gen::<f64>() < cfg.epsilon {
                random_move(&board, &mut rng)
            } else {
                greedy_move(&model, &board)
            };
            let Some(m) = m else { break };
            board.play(m).expect("legal");
            // value of the new position for the player who just moved
            let (v_next, r_next) = match board.outcome() {
                Some(o) => (0.0, o.score_for(board.side_to_move().opponent())),
                None => (1.0 - evaluate_board(&model, &board), 0.0),
            };
            let delta = model
                .td_update(&x_prev, v_next, r_next, cfg)
                .expect("finite training values");
            err_sum += delta.abs();
            err_n += 1;
            if board.is_terminal() {
                break;
            }
            x_prev = encode_board(&board).0;
        }
        if game % LOG_EVERY == 0 {
            let row = LogRow {
                game_index: game,
                avg_abs_td_error: err_sum / err_n.max(1) as f64,
                win_rate_vs_random: win_rate_vs_random(&model, EVAL_GAMES, cfg.seed ^ game as u64),
            };
            progress(&row);
            log.rows.push(row);
            err_sum = 0.0;
            err_n = 0;
        }
    }
    (model, log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::{prop_assert, proptest};

    #[test]
    fn table_rows() {
        assert_eq!(count_slots(0), [0.0; 5]);
        assert_eq!(count_slots(1), [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(count_slots(2), [1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(count_slots(3), [1.0, 1.0, 1.0, 0.0, 0.0]);
        assert_eq!(count_slots(4), [1.0, 1.0, 1.0, 1.0, 0.0]);
        assert_eq!(count_slots(6), [1.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(count_slots(5), [1.0, 1.0, 1.0, 1.0, 0.5]);
    }

    proptest! {
        #[test]
        fn slots_monotone(a in 0u16..60, b in 0u16..60) {
            let (lo, hi) = (a.min(b), a.max(b));
            let (s, t) = (count_slots(lo), count_slots(hi));
            for k in 0..SLOTS {
                prop_assert!(s[k] <= t[k]);
            }
        }
    }

    #[test]
    fn empty_encoding() {
        let z = PatternCounts::default();
        let x = encode_input(&z, &z, Player::Black);
        assert_eq!(x.0.len(), 322);
        assert_eq!(x.0[320], 1.0);
        assert_eq!(x.0.iter().sum::<f64>(), 1.0);
        let x = encode_input(&z, &z, Player::White);
        assert_eq!(x.0[321], 1.0);
    }

    #[test]
    fn encoding_layout() {
        let mut me = PatternCounts::default();
        let mut them = PatternCounts::default();
        me.0[3] = 3;
        them.0[0] = 6;
        let x = encode_input(&me, &them, Player::White).0;
        assert_eq!(&x[15..20], &[1.0, 1.0, 1.0, 0.0, 0.0]);
        assert_eq!(&x[160..165], &[1.0; 5]);
    }

    #[test]
    fn zero_weights_give_half() {
        let m = MlpModel::zeros(INPUT_SIZE, HIDDEN_SIZE);
        let x = encode_board(&BoardState::new()).0;
        assert_eq!(m.forward(&x).unwrap(), 0.5);
    }

    #[test]
    fn tiny_network_value() {
        let mut m = MlpModel::zeros(1, 1);
        m.w1[0] = 1.0;
        m.w2[0] = 1.0;
        let v = m.forward(&[1.0]).unwrap();
        let expected = sigmoid(sigmoid(1.0));
        assert_relative_eq!(v, expected, max_relative = 1e-15);
        assert!((v - 0.6750).abs() < 5e-5);
    }

    #[test]
    fn shape_mismatch() {
        let m = MlpModel::zeros(3, 2);
        assert_eq!(
            m.forward(&[1.0, 2.0]),
            Err(AdpError::Shape { expected: 3, got: 2 })
        );
    }

    #[test]
    fn output_in_open_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = MlpModel::random(8, 4, &mut rng);
            let x: Vec<f64> = (0..8).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let v = m.forward(&x).unwrap();
            assert!(v > 0.0 && v < 1.0);
        }
    }

    fn loss(m: &MlpModel, x: &[f64], target: f64) -> f64 {
        0.5 * (target - m.forward(x).unwrap()).powi(2)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let (ni, nh) = (rng.gen_range(1..6), rng.gen_range(1..5));
            let mut m = MlpModel::random(ni, nh, &mut rng);
            for w in m.w1.iter_mut().chain(m.w2.iter_mut()) {
                *w *= 10.0;
            }
            let x: Vec<f64> = (0..ni).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let target = rng.gen_range(0.0..1.0);
            let (v, g) = m.value_gradient(&x).unwrap();
            // analytic gradient of ½(target − V)² is −(target − V)·∇V
            let scale = -(target - v);
            let eps = 1e-6;
            let check = |analytic: f64, numeric: f64| {
                let denom = analytic.abs().max(numeric.abs()).max(1e-7);
                assert!(
                    (analytic - numeric).abs() / denom < 1e-5,
                    "analytic {analytic} numeric {numeric}"
                );
            };
            let num = |m: &MlpModel, f: &dyn Fn(&mut MlpModel, f64)| {
                let mut p = m.clone();
                f(&mut p, eps);
                let mut q = m.clone();
                f(&mut q, -eps);
                (loss(&p, &x, target) - loss(&q, &x, target)) / (2.0 * eps)
            };
            for k in 0..m.w1.len() {
                check(scale * g.w1[k], num(&m, &|p, e| p.w1[k] += e));
            }
            for k in 0..nh {
                check(scale * g.b1[k], num(&m, &|p, e| p.b1[k] += e));
                check(scale * g.w2[k], num(&m, &|p, e| p.w2[k] += e));
            }
            check(scale * g.b2, num(&m, &|p, e| p.b2 += e));
        }
    }

    #[test]
    fn zero_td_error_is_fixed_point() {
        let mut m = MlpModel::seeded(4);
        let x = encode_board(&BoardState::from_moves([Move::at(7, 7)]).unwrap()).0;
        let v = m.forward(&x).unwrap();
        let before = m.clone();
        let delta = m.td_update(&x, v, 0.0, &TdConfig::default()).unwrap();
        assert_eq!(delta, 0.0);
        assert_eq!(m, before);
    }

    #[test]
    fn win_reward_raises_value() {
        let mut m = MlpModel::seeded(5);
        let x = encode_board(&BoardState::from_moves([Move::at(7, 7)]).unwrap()).0;
        let v0 = m.forward(&x).unwrap();
        m.td_update(&x, 0.0, 1.0, &TdConfig::default()).unwrap();
        assert!(m.forward(&x).unwrap() > v0);
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = MlpModel::seeded(5);
        let x = encode_board(&BoardState::new()).0;
        assert_eq!(
            m.td_update(&x, f64::NAN, 0.0, &TdConfig::default()),
            Err(AdpError::Numeric)
        );
    }

    #[test]
    fn terminal_override() {
        // black five on row 0, white to move
        let moves = (0..5).flat_map(|i| {
            let b = Move::at(i, 0);
            let w = Move::at(i, 5);
            if i < 4 { vec![b, w] } else { vec![b] }
        });
        let b = BoardState::from_moves(moves).unwrap();
        assert_eq!(b.winner(), Some(Player::Black));
        let m = MlpModel::seeded(1);
        assert_eq!(evaluate_board(&m, &b), 0.0);
        let v = evaluate_board(&m, &BoardState::new());
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn save_load_round_trip() {
        let m = MlpModel::seeded(9);
        let text = save_model(&m);
        assert!(text.starts_with("UCTADP-MLP v1 in=322 hidden=64\n"));
        let back = load_model(&text).unwrap();
        assert_eq!(back, m);
        for (a, b) in back.w1.iter().zip(&m.w1) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn load_rejects_bad_files() {
        let text = save_model(&MlpModel::seeded(9));
        assert!(matches!(load_model(&text[..text.len() / 2]), Err(AdpError::Format(_))));
        assert!(matches!(load_model(""), Err(AdpError::Format(_))));
        assert!(matches!(
            load_model(&text.replacen("v1", "v2", 1)),
            Err(AdpError::Format(_))
        ));
        // drop one W1 row
        let mut lines: Vec<&str> = text.lines().collect();
        lines.remove(2);
        assert!(matches!(load_model(&lines.join("\n")), Err(AdpError::Format(_))));
    }

    #[test]
    fn zero_games_is_init() {
        let cfg = TdConfig {
            games: 0,
            seed: 42,
            ..TdConfig::default()
        };
        let (m, log) = self_play_train(&cfg);
        assert_eq!(m, MlpModel::seeded(42));
        assert!(log.rows.is_empty());
    }

    #[test]
    fn training_is_reproducible() {
        let cfg = TdConfig {
            games: 3,
            seed: 8,
            ..TdConfig::default()
        };
        let (a, _) = self_play_train(&cfg);
        let (b, _) = self_play_train(&cfg);
        assert_eq!(a, b);
        assert_ne!(a, MlpModel::seeded(8));
    }

    #[test]
    fn pretrained_model_loads() {
        let m = MlpModel::pretrained();
        assert_eq!((m.inputs(), m.hidden()), (INPUT_SIZE, HIDDEN_SIZE));
    }

    #[test]
    fn drift_of_flat_curve_is_zero() {
        let log = TrainingLog {
            rows: (1..=30)
                .map(|i| LogRow {
                    game_index: i * 100,
                    avg_abs_td_error: 0.2,
                    win_rate_vs_random: 1.0,
                })
                .collect(),
        };
        assert_eq!(log.relative_drift(2000), Some(0.0));
        assert_eq!(TrainingLog::from_csv(&log.to_csv()), Some(log));
    }
}
