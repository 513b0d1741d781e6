//! Exact short-win oracles used to verify fixtures.
//!
//! "Win in k" counts the mover's own moves: win in 1 is an immediate five,
//! win in 2 a five on the mover's second move against every defence, win in
//! 3 likewise on the third move (five plies). Defender replies are searched
//! exhaustively. The oracle works on its own grid and five detection so it
//! shares no code with the engine it checks.

use uctadp_core::{BoardState, Cell, Move, Player, SIZE};

const N: i32 = SIZE as i32;
const DIRS: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

#[derive(Clone)]
struct Grid {
    cells: [Option<Player>; SIZE * SIZE],
}

fn idx(x: i32, y: i32) -> Option<usize> {
    ((0..N).contains(&x) && (0..N).contains(&y)).then(|| (y * N + x) as usize)
}

fn xy(i: usize) -> (i32, i32) {
    ((i % SIZE) as i32, (i / SIZE) as i32)
}

impl Grid {
    fn from_board(b: &BoardState) -> Grid {
        let mut cells = [None; SIZE * SIZE];
        for (i, c) in cells.iter_mut().enumerate() {
            *c = match b.cell(Move::from_index(i)) {
                Cell::Empty => None,
                Cell::Black => Some(Player::Black),
                Cell::White => Some(Player::White),
            };
        }
        Grid { cells }
    }

    /// Would `p` on the empty cell `i` make five or more in a row?
    fn makes_five(&self, i: usize, p: Player) -> bool {
        let (x, y) = xy(i);
        DIRS.iter().any(|&(dx, dy)| {
            let run = |s: i32| {
                (1..5)
                    .take_while(|&k| idx(x + s * k * dx, y + s * k * dy).is_some_and(|j| self.cells[j] == Some(p)))
                    .count()
            };
            1 + run(1) + run(-1) >= 5
        })
    }

    fn fives(&self, p: Player) -> Vec<usize> {
        (0..SIZE * SIZE)
            .filter(|&i| self.cells[i].is_none() && self.makes_five(i, p))
            .collect()
    }

    /// Empty cells on a line through `i`, at most four steps away.
    fn line_neighbours(&self, i: usize) -> Vec<usize> {
        let (x, y) = xy(i);
        let mut out = Vec::new();
        for &(dx, dy) in &DIRS {
            for k in (-4..=4).filter(|&k| k != 0) {
                if let Some(j) = idx(x + k * dx, y + k * dy) {
                    if self.cells[j].is_none() && !out.contains(&j) {
                        out.push(j);
                    }
                }
            }
        }
        out
    }

    /// Empty cells sharing a five-window with a stone of `p`; every move
    /// that can take part in a five of `p` lies here.
    fn reach(&self, p: Player) -> Vec<usize> {
        let mut mark = [false; SIZE * SIZE];
        for i in 0..SIZE * SIZE {
            if self.cells[i] == Some(p) {
                for j in self.line_neighbours(i) {
                    mark[j] = true;
                }
            }
        }
        (0..SIZE * SIZE).filter(|&i| mark[i]).collect()
    }

    fn new_fives(&mut self, m: usize, p: Player) -> usize {
        self.cells[m] = Some(p);
        let n = self
            .line_neighbours(m)
            .into_iter()
            .filter(|&c| self.makes_five(c, p))
            .count();
        self.cells[m] = None;
        n
    }
}

/// Moves for `me` after which `me` makes five next turn whatever the reply.
/// Assumes `me` has no immediate five.
fn win2(g: &mut Grid, me: Player) -> Vec<usize> {
    let opp_fives = g.fives(me.opponent());
    g.reach(me)
        .into_iter()
        .filter(|&m| opp_fives.iter().all(|&c| c == m))
        .filter(|&m| g.new_fives(m, me) >= 2)
        .collect()
}

fn within_two(g: &mut Grid, me: Player) -> bool {
    !g.fives(me).is_empty() || !win2(g, me).is_empty()
}

/// With the defender to move, does `me` win within two more moves against
/// every reply?
fn holds_against_all(g: &mut Grid, me: Player) -> bool {
    let opp = me.opponent();
    if !g.fives(opp).is_empty() {
        return false;
    }
    let my_fives = g.fives(me);
    if my_fives.len() >= 2 {
        return true;
    }
    let replies: Vec<usize> = if my_fives.len() == 1 {
        my_fives
    } else {
        // an extra defender stone never helps the attacker, so the attack
        // must already work if the defender passes
        if !within_two(g, me) {
            return false;
        }
        (0..SIZE * SIZE).filter(|&i| g.cells[i].is_none()).collect()
    };
    replies.into_iter().all(|r| {
        g.cells[r] = Some(opp);
        let ok = within_two(g, me);
        g.cells[r] = None;
        ok
    })
}

fn win3(g: &mut Grid, me: Player) -> Vec<usize> {
    let opp_fives = g.fives(me.opponent());
    let mut out = Vec::new();
    for m in g.reach(me) {
        if opp_fives.iter().any(|&c| c != m) {
            continue;
        }
        g.cells[m] = Some(me);
        if holds_against_all(g, me) {
            out.push(m);
        }
        g.cells[m] = None;
    }
    out
}

fn moves(v: Vec<usize>) -> Vec<Move> {
    v.into_iter().map(Move::from_index).collect()
}

/// Cells where `p` would complete five.
pub fn five_cells(board: &BoardState, p: Player) -> Vec<Move> {
    moves(Grid::from_board(board).fives(p))
}

/// The fastest forced win for the side to move, as (mover moves needed,
/// every first move achieving it). `None` if nothing wins within three.
pub fn shortest_win(board: &BoardState) -> Option<(u8, Vec<Move>)> {
    if board.is_terminal() {
        return None;
    }
    let me = board.side_to_move();
    let mut g = Grid::from_board(board);
    let w1 = g.fives(me);
    if !w1.is_empty() {
        return Some((1, moves(w1)));
    }
    let w2 = win2(&mut g, me);
    if !w2.is_empty() {
        return Some((2, moves(w2)));
    }
    let w3 = win3(&mut g, me);
    (!w3.is_empty()).then(|| (3, moves(w3)))
}

/// Whether `m` makes a four (a single move from five) for the side to move.
pub fn makes_four(board: &BoardState, m: Move) -> bool {
    let mut g = Grid::from_board(board);
    g.cells[m.index()].is_none() && g.new_fives(m.index(), board.side_to_move()) >= 1
}
