//! UCT search with a progressive-bias selection term, threat-pruned
//! expansion and pluggable leaf evaluation.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adp::{evaluate_board, MlpModel};
use crate::board::{BoardState, Move};
use crate::patterns::{evaluate_candidates, HeuristicTable, MAX_H};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluatorKind {
    Adp,
    /// Constant 0.5.
    Dummy,
    /// Uniform random playout to the end of the game.
    Simulation,
    /// `w · adp + (1 − w) · playout`.
    WeightedSum,
}

impl EvaluatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EvaluatorKind::Adp => "adp",
            EvaluatorKind::Dummy => "dummy",
            EvaluatorKind::Simulation => "simulation",
            EvaluatorKind::WeightedSum => "weighted-sum",
        }
    }
}

impl std::str::FromStr for EvaluatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "adp" => Ok(EvaluatorKind::Adp),
            "dummy" => Ok(EvaluatorKind::Dummy),
            "simulation" | "sim" => Ok(EvaluatorKind::Simulation),
            "weighted-sum" | "weighted_sum" => Ok(EvaluatorKind::WeightedSum),
            _ => Err(format!("unknown evaluator {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub k1: f64,
    pub k2: f64,
    pub max_h: f64,
    /// Maximum tree depth in plies below the root.
    pub msd: usize,
    pub iteration_budget: Option<u64>,
    pub time_budget_ms: Option<u64>,
    pub evaluator: EvaluatorKind,
    pub weighted_sum_w: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k1: std::f64::consts::SQRT_2,
            k2: 1.0,
            max_h: MAX_H,
            msd: 12,
            iteration_budget: Some(2000),
            time_budget_ms: None,
            evaluator: EvaluatorKind::Adp,
            weighted_sum_w: 0.5,
            seed: 0,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SearchError {
    #[error("no move available: the game is over")]
    NoMoveAvailable,
    #[error("invalid search config: {0}")]
    Config(String),
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: &str| Err(SearchError::Config(m.to_string()));
        if !(self.k1 >= 0.0 && self.k2 >= 0.0) {
            return bad("k1 and k2 must be non-negative");
        }
        if self.msd < 1 {
            return bad("msd must be at least 1");
        }
        if self.iteration_budget.is_none() && self.time_budget_ms.is_none() {
            return bad("set an iteration or a time budget");
        }
        if !(self.max_h > 0.0) {
            return bad("max_h must be positive");
        }
        if !(0.0..=1.0).contains(&self.weighted_sum_w) {
            return bad("weighted_sum_w must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Selection score `q/n + k1·√(ln N / n) + k2·h / max_h`.
pub fn pb_ucb(q: f64, n: u32, parent_n: u32, h: f64, cfg: &SearchConfig) -> f64 {
    let n = n as f64;
    q / n + cfg.k1 * ((parent_n as f64).ln() / n).sqrt() + cfg.k2 * h / cfg.max_h
}

/// A tree node. `q` is accumulated from the point of view of the player who
/// made `mv`.
#[derive(Debug, Clone)]
pub struct SearchNode {
    pub mv: Option<Move>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Actions not yet expanded with their heuristic values; `None` until the
    /// node is first expanded.
    pub untried: Option<Vec<(Move, f64)>>,
    pub q: f64,
    pub n: u32,
    /// Times this node was itself a leaf and evaluated.
    pub evals: u32,
    pub depth: usize,
    pub h: f64,
    pub terminal: bool,
}

impl SearchNode {
    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.q / self.n as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChildStats {
    pub mv: Move,
    pub visits: u32,
    pub mean: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: Move,
    pub root_children: Vec<ChildStats>,
    pub iterations: u64,
    pub elapsed_ms: u64,
}

impl fmt::Display for SearchResult {
    /// Line-oriented report: a header, then one `move visits mean heuristic`
    /// line per root child, most visited first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "best {} iterations {} elapsed_ms {}",
            self.best, self.iterations, self.elapsed_ms
        )?;
        let mut rows = self.root_children.clone();
        rows.sort_by(|a, b| b.visits.cmp(&a.visits).then(a.mv.cmp(&b.mv)));
        for c in rows {
            writeln!(f, "{} {} {:.4} {}", c.mv, c.visits, c.mean, c.h)?;
        }
        Ok(())
    }
}

/// One search tree over a fixed root position.
pub struct Search<'a> {
    cfg: SearchConfig,
    model: &'a MlpModel,
    root_board: BoardState,
    nodes: Vec<SearchNode>,
    rng: ChaCha8Rng,
    iterations: u64,
    elapsed: Duration,
}

impl<'a> Search<'a> {
    pub fn new(board: &BoardState, cfg: SearchConfig, model: &'a MlpModel) -> Result<Search<'a>, SearchError> {
        cfg.validate()?;
        if board.is_terminal() {
            return Err(SearchError::NoMoveAvailable);
        }
        let root = SearchNode {
            mv: None,
            parent: None,
            children: Vec::new(),
            untried: None,
            q: 0.0,
            n: 0,
            evals: 0,
            depth: 0,
            h: 0.0,
            terminal: false,
        };
        Ok(Search {
            cfg,
            model,
            root_board: board.clone(),
            nodes: vec![root],
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            iterations: 0,
            elapsed: Duration::ZERO,
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    pub fn nodes(&self) -> &[SearchNode] {
        &self.nodes
    }

    pub fn root(&self) -> &SearchNode {
        &self.nodes[0]
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    fn init_actions(&mut self, v: usize, board: &BoardState) {
        let evals = evaluate_candidates(board, board.side_to_move(), HeuristicTable::standard());
        let preferred: Vec<(Move, f64)> = evals
            .iter()
            .filter(|e| e.is_threat())
            .map(|e| (e.mv, e.h))
            .collect();
        let actions = if preferred.is_empty() {
            evals.iter().map(|e| (e.mv, e.h)).collect()
        } else {
            preferred
        };
        self.nodes[v].untried = Some(actions);
    }

    /// Pops a random untried action of `v` and creates its child.
    pub fn expand(&mut self, v: usize, board: &mut BoardState) -> Option<usize> {
        if self.nodes[v].untried.is_none() {
            self.init_actions(v, board);
        }
        let untried = self.nodes[v].untried.as_mut().expect("initialised");
        if untried.is_empty() {
            return None;
        }
        let k = self.rng.gen_range(0..untried.len());
        let (mv, h) = untried.swap_remove(k);
        board.play(mv).expect("candidate is legal");
        let child = SearchNode {
            mv: Some(mv),
            parent: Some(v),
            children: Vec::new(),
            untried: None,
            q: 0.0,
            n: 0,
            evals: 0,
            depth: self.nodes[v].depth + 1,
            h,
            terminal: board.is_terminal(),
        };
        let id = self.nodes.len();
        self.nodes.push(child);
        self.nodes[v].children.push(id);
        Some(id)
    }

    fn best_child_ucb(&self, v: usize) -> usize {
        let node = &self.nodes[v];
        let mut best = node.children[0];
        let mut best_score = f64::NEG_INFINITY;
        for &c in &node.children {
            let ch = &self.nodes[c];
            let s = pb_ucb(ch.q, ch.n, node.n, ch.h, &self.cfg);
            if s > best_score {
                best = c;
                best_score = s;
            }
        }
        best
    }

    /// Descends from the root to the node to evaluate, expanding one new
    /// child when it meets a node with untried actions.
    pub fn tree_policy(&mut self) -> (usize, BoardState) {
        let mut board = self.root_board.clone();
        let mut v = 0;
        loop {
            let node = &self.nodes[v];
            if node.terminal || node.depth >= self.cfg.msd {
                return (v, board);
            }
            let fully_expanded = node.untried.as_ref().is_some_and(|u| u.is_empty());
            if !fully_expanded {
                if let Some(c) = self.expand(v, &mut board) {
                    return (c, board);
                }
            }
            if self.nodes[v].children.is_empty() {
                // nowhere to go: a full board
                self.nodes[v].terminal = true;
                return (v, board);
            }
            v = self.best_child_ucb(v);
            board
                .play(self.nodes[v].mv.expect("non-root"))
                .expect("tree moves are legal");
        }
    }

    /// Value of `board` for its side to move.
    pub fn evaluate_leaf(&mut self, board: &BoardState) -> f64 {
        if let Some(o) = board.outcome() {
            return o.score_for(board.side_to_move());
        }
        match self.cfg.evaluator {
            EvaluatorKind::Adp => evaluate_board(self.model, board),
            EvaluatorKind::Dummy => 0.5,
            EvaluatorKind::Simulation => playout(board, &mut self.rng),
            EvaluatorKind::WeightedSum => {
                let w = self.cfg.weighted_sum_w;
                w * evaluate_board(self.model, board) + (1.0 - w) * playout(board, &mut self.rng)
            }
        }
    }

    /// Adds `r` to `v`, `1 − r` to its parent and so on up to the root.
    pub fn back_update(&mut self, v: usize, mut r: f64) {
        self.nodes[v].evals += 1;
        let mut cur = Some(v);
        while let Some(i) = cur {
            let node = &mut self.nodes[i];
            node.n += 1;
            node.q += r;
            r = 1.0 - r;
            cur = node.parent;
        }
    }

    pub fn iterate(&mut self) {
        let (v, board) = self.tree_policy();
        let value = self.evaluate_leaf(&board);
        // the node's value belongs to the player who moved into it
        self.back_update(v, 1.0 - value);
        self.iterations += 1;
    }

    /// Runs until the configured budget (or `extra` more iterations, if
    /// given) is spent.
    pub fn run_for(&mut self, extra: Option<u64>) {
        let start = Instant::now();
        let iter_cap = match extra {
            Some(k) => Some(self.iterations + k),
            None => self.cfg.iteration_budget,
        };
        let deadline = match extra {
            Some(_) => None,
            None => self.cfg.time_budget_ms.map(|ms| start + Duration::from_millis(ms)),
        };
        loop {
            if iter_cap.is_some_and(|cap| self.iterations >= cap) {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                break;
            }
            self.iterate();
        }
        self.elapsed += start.elapsed();
    }

    /// Runs for a fixed wall-clock time regardless of the configured budget.
    pub fn run_timed(&mut self, limit: Duration) {
        let start = Instant::now();
        while start.elapsed() < limit {
            self.iterate();
        }
        self.elapsed += start.elapsed();
    }

    /// Most visited root child; ties go to the higher mean, then row-major.
    pub fn best_move(&self) -> Move {
        let root = &self.nodes[0];
        let best = root.children.iter().map(|&c| &self.nodes[c]).max_by(|a, b| {
            a.n.cmp(&b.n)
                .then(a.mean().total_cmp(&b.mean()))
                .then(b.mv.cmp(&a.mv))
        });
        match best {
            Some(node) => node.mv.expect("child has a move"),
            None => {
                let evals = evaluate_candidates(
                    &self.root_board,
                    self.root_board.side_to_move(),
                    HeuristicTable::standard(),
                );
                evals[0].mv
            }
        }
    }

    pub fn result(&self) -> SearchResult {
        let root = &self.nodes[0];
        SearchResult {
            best: self.best_move(),
            root_children: root
                .children
                .iter()
                .map(|&c| {
                    let n = &self.nodes[c];
                    ChildStats {
                        mv: n.mv.expect("child has a move"),
                        visits: n.n,
                        mean: n.mean(),
                        h: n.h,
                    }
                })
                .collect(),
            iterations: self.iterations,
            elapsed_ms: self.elapsed.as_millis() as u64,
        }
    }

    /// Text dump of the root's children, for debugging.
    pub fn dump_root(&self) -> String {
        let mut s = String::new();
        for &c in &self.nodes[0].children {
            let n = &self.nodes[c];
            let _ = writeln!(s, "{:?} n={} mean={:.3} h={}", n.mv, n.n, n.mean(), n.h);
        }
        s
    }
}

/// Uniform random playout; 1 if the side to move at `board` wins.
pub fn playout(board: &BoardState, rng: &mut impl Rng) -> f64 {
    let me = board.side_to_move();
    let mut b = board.clone();
    loop {
        if let Some(o) = b.outcome() {
            return o.score_for(me);
        }
        let c = b.candidate_bits();
        let n = c.count();
        if n == 0 {
            return 0.5;
        }
        let m = Move::from_index(c.nth(rng.gen_range(0..n)).expect("in range"));
        b.play(m).expect("candidate is legal");
    }
}

pub fn search(board: &BoardState, cfg: &SearchConfig, model: &MlpModel) -> Result<SearchResult, SearchError> {
    let mut s = Search::new(board, *cfg, model)?;
    s.run_for(None);
    Ok(s.result())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Player;
    use crate::patterns::exp_heuristic;
    use approx::assert_relative_eq;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest};

    fn cfg(evaluator: EvaluatorKind, iters: u64) -> SearchConfig {
        SearchConfig {
            evaluator,
            iteration_budget: Some(iters),
            ..SearchConfig::default()
        }
    }

    fn model() -> MlpModel {
        MlpModel::seeded(1)
    }

    /// Black to move with four on row 7 from (3,7) to (6,7); (2,7) is
    /// blocked so (7,7) is the only winning cell.
    fn win_in_one() -> BoardState {
        BoardState::from_moves([
            Move::at(3, 7),
            Move::at(2, 7),
            Move::at(4, 7),
            Move::at(3, 10),
            Move::at(5, 7),
            Move::at(9, 12),
            Move::at(6, 7),
            Move::at(12, 2),
        ])
        .unwrap()
    }

    #[test]
    fn pb_ucb_values() {
        let c = SearchConfig {
            k2: 0.0,
            ..SearchConfig::default()
        };
        assert_eq!(pb_ucb(0.7, 1, 1, 0.0, &c), 0.7);
        // √2·√(ln 8 / 2) = √(ln 8)
        assert_relative_eq!(pb_ucb(1.0, 2, 8, 0.0, &c), 0.5 + 8f64.ln().sqrt(), epsilon = 1e-12);
        assert_relative_eq!(pb_ucb(1.0, 2, 8, 0.0, &c), 1.9420, epsilon = 1e-4);
        let c = SearchConfig::default();
        assert_relative_eq!(
            pb_ucb(0.0, 1, 1, MAX_H, &c) - pb_ucb(0.0, 1, 1, 0.0, &c),
            1.0
        );
    }

    proptest! {
        #[test]
        fn pb_reduces_to_ucb1(q in 0.0f64..50.0, n in 1u32..100, extra in 0u32..1000, h in 0.0f64..1e5) {
            let parent = n + extra;
            let c = SearchConfig { k2: 0.0, ..SearchConfig::default() };
            let n_f = n as f64;
            let ucb1 = q / n_f + std::f64::consts::SQRT_2 * ((parent as f64).ln() / n_f).sqrt();
            prop_assert!((pb_ucb(q, n, parent, h, &c) - ucb1).abs() < 1e-12);
            let c = SearchConfig::default();
            prop_assert!(pb_ucb(q, n, parent, h + 1.0, &c) > pb_ucb(q, n, parent, h, &c));
        }
    }

    #[test]
    fn terminal_root_rejected() {
        let mut b = win_in_one();
        b.play(Move::at(7, 7)).unwrap();
        assert_eq!(
            search(&b, &SearchConfig::default(), &model()).unwrap_err(),
            SearchError::NoMoveAvailable
        );
    }

    #[test]
    fn first_iteration_expands_depth_one() {
        let m = model();
        let mut s = Search::new(&win_in_one(), SearchConfig::default(), &m).unwrap();
        let (v, _) = s.tree_policy();
        assert_eq!(s.nodes()[v].depth, 1);
    }

    #[test]
    fn preferred_list_only_threats() {
        let m = model();
        let b = win_in_one();
        let mut s = Search::new(&b, SearchConfig::default(), &m).unwrap();
        s.iterate();
        let untried = s.root().untried.clone().unwrap();
        let mut all: Vec<Move> = untried.iter().map(|a| a.0).collect();
        all.extend(s.root().children.iter().map(|&c| s.nodes()[c].mv.unwrap()));
        assert!(all.contains(&Move::at(7, 7)));
        assert!(all.len() < b.candidate_moves().len());
        for mv in all {
            assert!(exp_heuristic(&b, mv, Player::Black).unwrap() >= 1000.0 * 0.81 - 1e-9);
        }
    }

    #[test]
    fn quiet_position_falls_back_to_all_candidates() {
        let m = model();
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8)]).unwrap();
        let mut s = Search::new(&b, SearchConfig::default(), &m).unwrap();
        s.iterate();
        s.iterate();
        let root = s.root();
        let children: Vec<Move> = root.children.iter().map(|&c| s.nodes()[c].mv.unwrap()).collect();
        assert_eq!(children.len(), 2);
        assert_ne!(children[0], children[1]);
        assert_eq!(
            root.untried.as_ref().unwrap().len() + 2,
            b.candidate_moves().len()
        );
    }

    #[test]
    fn msd_cutoff() {
        let m = model();
        let c = SearchConfig {
            msd: 1,
            ..cfg(EvaluatorKind::Dummy, 500)
        };
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8)]).unwrap();
        let mut s = Search::new(&b, c, &m).unwrap();
        s.run_for(None);
        assert!(s.nodes().iter().all(|n| n.depth <= 1));
        assert!(s.nodes().iter().skip(1).any(|n| n.evals > 1));
    }

    #[test]
    fn back_update_alternates() {
        let m = model();
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8)]).unwrap();
        let mut s = Search::new(&b, SearchConfig::default(), &m).unwrap();
        let mut board = b.clone();
        let c1 = s.expand(0, &mut board).unwrap();
        let c2 = s.expand(c1, &mut board).unwrap();
        s.back_update(c2, 1.0);
        let n = s.nodes();
        assert_eq!((n[c2].q, n[c1].q, n[0].q), (1.0, 0.0, 1.0));
        s.back_update(c1, 0.5);
        let n = s.nodes();
        assert_eq!((n[c1].q, n[0].q), (0.5, 1.5));
    }

    #[test]
    fn evaluators() {
        let m = model();
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8)]).unwrap();
        let mut s = Search::new(&b, cfg(EvaluatorKind::Dummy, 1), &m).unwrap();
        assert_eq!(s.evaluate_leaf(&b), 0.5);
        let mut lost = win_in_one();
        lost.play(Move::at(7, 7)).unwrap();
        assert_eq!(s.evaluate_leaf(&lost), 0.0);
        // one empty cell left and it completes black's five: every playout wins
        let mut s = Search::new(&b, cfg(EvaluatorKind::Simulation, 1), &m).unwrap();
        let last = last_cell_wins();
        assert_eq!(last.candidate_moves(), vec![Move::at(7, 7)]);
        for _ in 0..20 {
            assert_eq!(s.evaluate_leaf(&last), 1.0);
        }
    }

    /// A full board except (7,7), black to move, where (7,7) completes a
    /// black five and no five exists yet.
    fn last_cell_wins() -> BoardState {
        let mut black = [[false; 15]; 15];
        for (y, row) in black.iter_mut().enumerate() {
            for (x, c) in row.iter_mut().enumerate() {
                *c = (x + 2 * y) % 4 < 2;
            }
        }
        for x in 5..=9 {
            black[7][x] = true;
        }
        let has_five = |g: &[[bool; 15]; 15], skip: (usize, usize)| {
            let cell = |x: i32, y: i32| {
                (0..15).contains(&x) && (0..15).contains(&y) && (x as usize, y as usize) != skip
            };
            for y in 0..15i32 {
                for x in 0..15i32 {
                    for (dx, dy) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
                        for colour in [true, false] {
                            if (0..5).all(|k| {
                                let (cx, cy) = (x + k * dx, y + k * dy);
                                cell(cx, cy) && g[cy as usize][cx as usize] == colour
                            }) {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        };
        let count = |g: &[[bool; 15]; 15]| g.iter().flatten().filter(|&&c| c).count();
        // rebalance to 113 black by flipping far cells that keep the board five-free
        'outer: for y in [0usize, 14, 1, 13, 2, 12] {
            for x in 0..15 {
                if count(&black) == 113 {
                    break 'outer;
                }
                if black[y][x] {
                    black[y][x] = false;
                    if has_five(&black, (7, 7)) {
                        black[y][x] = true;
                    }
                }
            }
        }
        assert_eq!(count(&black), 113);
        assert!(!has_five(&black, (7, 7)));
        let mut text = String::new();
        for (y, row) in black.iter().enumerate() {
            for (x, &c) in row.iter().enumerate() {
                text.push(match ((x, y), c) {
                    ((7, 7), _) => '.',
                    (_, true) => 'X',
                    _ => 'O',
                });
            }
            text.push('\n');
        }
        let b = BoardState::from_text(&text).unwrap();
        assert!(b.makes_five(Move::at(7, 7), Player::Black));
        b
    }

    #[test]
    fn finds_immediate_win() {
        let m = model();
        for ev in [EvaluatorKind::Adp, EvaluatorKind::Dummy, EvaluatorKind::Simulation] {
            let r = search(&win_in_one(), &cfg(ev, 50), &m).unwrap();
            assert_eq!(r.best, Move::at(7, 7), "{ev:?}\n{r}");
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let m = model();
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8), Move::at(6, 8)]).unwrap();
        let c = cfg(EvaluatorKind::Simulation, 300);
        let mut a = search(&b, &c, &m).unwrap();
        let mut z = search(&b, &c, &m).unwrap();
        a.elapsed_ms = 0;
        z.elapsed_ms = 0;
        assert_eq!(a, z);
    }

    #[test]
    fn report_lists_children() {
        let m = model();
        let r = search(&win_in_one(), &cfg(EvaluatorKind::Adp, 30), &m).unwrap();
        let text = r.to_string();
        assert!(text.starts_with("best 7,7 iterations 30"));
        assert_eq!(text.lines().count(), 1 + r.root_children.len());
    }

    proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn visit_accounting(seed in 0u64..1000, iters in 1u64..300, plies in 1usize..12) {
            let m = model();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = crate::adp::random_opening(plies, &mut rng);
            prop_assume_nonterminal(&b)?;
            let c = SearchConfig { seed, msd: 4, ..cfg(EvaluatorKind::Adp, iters) };
            let mut s = Search::new(&b, c, &m).unwrap();
            s.run_for(None);
            prop_assert_eq!(s.root().n as u64, iters);
            for node in s.nodes() {
                let child_n: u32 = node.children.iter().map(|&c| s.nodes()[c].n).sum();
                prop_assert_eq!(node.n, child_n + node.evals);
                prop_assert!(node.q >= -1e-9 && node.q <= node.n as f64 + 1e-9);
                for &c in &node.children {
                    prop_assert_eq!(s.nodes()[c].depth, node.depth + 1);
                }
            }
            let total: u32 = s.root().children.iter().map(|&c| s.nodes()[c].n).sum();
            prop_assert_eq!(total + s.root().evals, s.root().n);
        }
    }

    fn prop_assume_nonterminal(b: &BoardState) -> Result<(), proptest::test_runner::TestCaseError> {
        if b.is_terminal() {
            Err(proptest::test_runner::TestCaseError::reject("terminal"))
        } else {
            Ok(())
        }
    }
}
