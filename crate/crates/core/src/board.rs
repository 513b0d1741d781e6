//! 15×15 freestyle Gomoku board.
//!
//! Stones are kept twice: a plain cell array for lookups and one 225-bit
//! occupancy set per colour, which drives candidate generation by dilation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const SIZE: usize = 15;
pub const CELLS: usize = SIZE * SIZE;

/// The four line directions: horizontal, vertical, diagonal, anti-diagonal.
pub const DIRECTIONS: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("illegal move {0}: {1}")]
    IllegalMove(String, &'static str),
    #[error("game already finished")]
    GameFinished,
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("cannot parse board: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Black,
    White,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Black => 0,
            Player::White => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Player::Black => 'X',
            Player::White => 'O',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Black => f.write_str("black"),
            Player::White => f.write_str("white"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Cell {
    #[default]
    Empty,
    Black,
    White,
}

impl Cell {
    pub fn stone(self) -> Option<Player> {
        match self {
            Cell::Empty => None,
            Cell::Black => Some(Player::Black),
            Cell::White => Some(Player::White),
        }
    }
}

impl From<Player> for Cell {
    fn from(p: Player) -> Cell {
        match p {
            Player::Black => Cell::Black,
            Player::White => Cell::White,
        }
    }
}

/// A board coordinate: `x` is the column, `y` the row, both zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    // Field order gives row-major `Ord`.
    pub y: u8,
    pub x: u8,
}

impl Move {
    pub fn new(x: usize, y: usize) -> Option<Move> {
        (x < SIZE && y < SIZE).then(|| Move {
            x: x as u8,
            y: y as u8,
        })
    }

    /// Like [`Move::new`] for coordinates known to be on the board.
    ///
    /// Panics when out of range.
    pub fn at(x: usize, y: usize) -> Move {
        Move::new(x, y).unwrap_or_else(|| panic!("({x},{y}) is off the board"))
    }

    pub fn from_index(idx: usize) -> Move {
        debug_assert!(idx < CELLS);
        Move {
            x: (idx % SIZE) as u8,
            y: (idx / SIZE) as u8,
        }
    }

    pub fn index(self) -> usize {
        self.y as usize * SIZE + self.x as usize
    }

    pub fn center() -> Move {
        Move::at(SIZE / 2, SIZE / 2)
    }

    /// Step `k` cells along `dir`, if that stays on the board.
    pub fn offset(self, dir: (i32, i32), k: i32) -> Option<Move> {
        let x = self.x as i32 + dir.0 * k;
        let y = self.y as i32 + dir.1 * k;
        if (0..SIZE as i32).contains(&x) && (0..SIZE as i32).contains(&y) {
            Some(Move {
                x: x as u8,
                y: y as u8,
            })
        } else {
            None
        }
    }

    pub fn chebyshev(self, other: Move) -> usize {
        let dx = (self.x as i32 - other.x as i32).unsigned_abs();
        let dy = (self.y as i32 - other.y as i32).unsigned_abs();
        dx.max(dy) as usize
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for Move {
    type Err = BoardError;

    /// Parses `"x,y"`.
    fn from_str(s: &str) -> Result<Move, BoardError> {
        let (x, y) = s
            .trim()
            .split_once(',')
            .ok_or_else(|| BoardError::Parse(format!("expected x,y, got {s:?}")))?;
        let x: usize = x
            .trim()
            .parse()
            .map_err(|_| BoardError::Parse(format!("bad x in {s:?}")))?;
        let y: usize = y
            .trim()
            .parse()
            .map_err(|_| BoardError::Parse(format!("bad y in {s:?}")))?;
        Move::new(x, y).ok_or_else(|| BoardError::IllegalMove(s.to_string(), "out of bounds"))
    }
}

/// 225-bit cell set, row-major, bit `i` = cell `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits([u64; 4]);

const LAST_WORD_MASK: u64 = (1u64 << (CELLS - 192)) - 1;

impl Bits {
    pub const EMPTY: Bits = Bits([0; 4]);

    pub fn full() -> Bits {
        Bits([u64::MAX, u64::MAX, u64::MAX, LAST_WORD_MASK])
    }

    /// Cells whose column satisfies `pred`.
    fn columns(pred: impl Fn(usize) -> bool) -> Bits {
        let mut b = Bits::EMPTY;
        for i in 0..CELLS {
            if pred(i % SIZE) {
                b.insert(i);
            }
        }
        b
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn or(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }

    pub fn and(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    pub fn and_not(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }

    /// Shift towards higher indices, dropping bits beyond the board.
    fn shl(self, n: usize) -> Bits {
        let (words, bits) = (n / 64, n % 64);
        let mut out = [0u64; 4];
        for i in (words..4).rev() {
            let src = i - words;
            out[i] = self.0[src] << bits;
            if bits > 0 && src > 0 {
                out[i] |= self.0[src - 1] >> (64 - bits);
            }
        }
        out[3] &= LAST_WORD_MASK;
        Bits(out)
    }

    fn shr(self, n: usize) -> Bits {
        let (words, bits) = (n / 64, n % 64);
        let mut out = [0u64; 4];
        for i in 0..4 - words {
            let src = i + words;
            out[i] = self.0[src] >> bits;
            if bits > 0 && src + 1 < 4 {
                out[i] |= self.0[src + 1] << (64 - bits);
            }
        }
        Bits(out)
    }

    /// All cells within Chebyshev distance 2 of a set cell (including the set cells).
    pub fn dilate2(self) -> Bits {
        thread_local! {
            static MASKS: [Bits; 4] = [
                Bits::columns(|x| x >= 1),
                Bits::columns(|x| x >= 2),
                Bits::columns(|x| x + 1 < SIZE),
                Bits::columns(|x| x + 2 < SIZE),
            ];
        }
        let h = MASKS.with(|m| {
            self.or(self.shl(1).and(m[0]))
                .or(self.shl(2).and(m[1]))
                .or(self.shr(1).and(m[2]))
                .or(self.shr(2).and(m[3]))
        });
        h.or(h.shl(SIZE))
            .or(h.shl(2 * SIZE))
            .or(h.shr(SIZE))
            .or(h.shr(2 * SIZE))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + tz)
            })
        })
    }

    /// The `k`-th set bit in index order.
    pub fn nth(&self, mut k: usize) -> Option<usize> {
        for (w, &word) in self.0.iter().enumerate() {
            let c = word.count_ones() as usize;
            if k < c {
                let mut rest = word;
                for _ in 0..k {
                    rest &= rest - 1;
                }
                return Some(w * 64 + rest.trailing_zeros() as usize);
            }
            k -= c;
        }
        None
    }
}

/// Final result of a game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Win(Player),
    Draw,
}

impl Outcome {
    /// Score for `p`: 1 win, 0 loss, 0.5 draw.
    pub fn score_for(self, p: Player) -> f64 {
        match self {
            Outcome::Win(w) if w == p => 1.0,
            Outcome::Win(_) => 0.0,
            Outcome::Draw => 0.5,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoardState {
    cells: [Cell; CELLS],
    stones: [Bits; 2],
    side_to_move: Player,
    history: Vec<Move>,
    winner: Option<Player>,
}

impl Default for BoardState {
    fn default() -> Self {
        BoardState::new()
    }
}

impl BoardState {
    pub fn new() -> BoardState {
        BoardState {
            cells: [Cell::Empty; CELLS],
            stones: [Bits::EMPTY; 2],
            side_to_move: Player::Black,
            history: Vec::new(),
            winner: None,
        }
    }

    /// Replays `moves` from the empty board.
    pub fn from_moves<I: IntoIterator<Item = Move>>(moves: I) -> Result<BoardState, BoardError> {
        let mut b = BoardState::new();
        for m in moves {
            b.play(m)?;
        }
        Ok(b)
    }

    pub fn cell(&self, m: Move) -> Cell {
        self.cells[m.index()]
    }

    pub fn cell_at(&self, idx: usize) -> Cell {
        self.cells[idx]
    }

    pub fn side_to_move(&self) -> Player {
        self.side_to_move
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn last_move(&self) -> Option<Move> {
        self.history.last().copied()
    }

    pub fn stone_count(&self) -> usize {
        self.history.len()
    }

    pub fn stones(&self, p: Player) -> Bits {
        self.stones[p.index()]
    }

    pub fn occupied(&self) -> Bits {
        self.stones[0].or(self.stones[1])
    }

    pub fn winner(&self) -> Option<Player> {
        self.winner
    }

    pub fn is_full(&self) -> bool {
        self.history.len() == CELLS
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match self.winner {
            Some(p) => Some(Outcome::Win(p)),
            None if self.is_full() => Some(Outcome::Draw),
            None => None,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.outcome().is_some()
    }

    /// Places a stone for the side to move, in place. Returns the winner if
    /// this move ends the game with five or more.
    pub fn play(&mut self, m: Move) -> Result<Option<Player>, BoardError> {
        if self.winner.is_some() {
            return Err(BoardError::GameFinished);
        }
        if m.x as usize >= SIZE || m.y as usize >= SIZE {
            return Err(BoardError::IllegalMove(m.to_string(), "out of bounds"));
        }
        if self.cells[m.index()] != Cell::Empty {
            return Err(BoardError::IllegalMove(m.to_string(), "cell occupied"));
        }
        let p = self.side_to_move;
        self.cells[m.index()] = p.into();
        self.stones[p.index()].insert(m.index());
        self.history.push(m);
        self.side_to_move = p.opponent();
        self.winner = self.winner_check(m);
        Ok(self.winner)
    }

    /// Takes back the last move, in place.
    pub fn undo(&mut self) -> Result<Move, BoardError> {
        let m = self.history.pop().ok_or(BoardError::NothingToUndo)?;
        let p = self.side_to_move.opponent();
        self.cells[m.index()] = Cell::Empty;
        self.stones[p.index()].remove(m.index());
        self.side_to_move = p;
        self.winner = None;
        Ok(m)
    }

    pub fn apply_move(&self, m: Move) -> Result<BoardState, BoardError> {
        let mut next = self.clone();
        next.play(m)?;
        Ok(next)
    }

    pub fn undo_move(&self) -> Result<BoardState, BoardError> {
        let mut prev = self.clone();
        prev.undo()?;
        Ok(prev)
    }

    /// Number of consecutive stones of `p` starting next to `m` along `dir`.
    pub fn ray(&self, m: Move, dir: (i32, i32), p: Player) -> usize {
        let want: Cell = p.into();
        (1..SIZE as i32)
            .map_while(|k| m.offset(dir, k))
            .take_while(|&c| self.cells[c.index()] == want)
            .count()
    }

    /// Owner of `last` if a line of five or more through it exists.
    pub fn winner_check(&self, last: Move) -> Option<Player> {
        let p = self.cells[last.index()].stone()?;
        DIRECTIONS
            .iter()
            .any(|&d| 1 + self.ray(last, d, p) + self.ray(last, (-d.0, -d.1), p) >= 5)
            .then_some(p)
    }

    /// Whether `p` playing the empty cell `m` would complete five or more.
    pub fn makes_five(&self, m: Move, p: Player) -> bool {
        DIRECTIONS
            .iter()
            .any(|&d| 1 + self.ray(m, d, p) + self.ray(m, (-d.0, -d.1), p) >= 5)
    }

    /// Empty cells within Chebyshev distance 2 of any stone, as a bit set.
    pub fn candidate_bits(&self) -> Bits {
        let occ = self.occupied();
        if occ.is_empty() {
            let mut b = Bits::EMPTY;
            b.insert(Move::center().index());
            return b;
        }
        occ.dilate2().and_not(occ)
    }

    /// Candidate moves in row-major order. The empty board yields the centre.
    pub fn candidate_moves(&self) -> Vec<Move> {
        self.candidate_bits().iter().map(Move::from_index).collect()
    }

    pub fn empty_cells(&self) -> impl Iterator<Item = Move> + '_ {
        (0..CELLS)
            .filter(|&i| self.cells[i] == Cell::Empty)
            .map(Move::from_index)
    }

    /// 15 lines of `.`, `X`, `O` plus a `turn:` line.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(CELLS + 2 * SIZE + 10);
        for y in 0..SIZE {
            for x in 0..SIZE {
                s.push(match self.cells[y * SIZE + x] {
                    Cell::Empty => '.',
                    Cell::Black => 'X',
                    Cell::White => 'O',
                });
            }
            s.push('\n');
        }
        s.push_str(&format!("turn: {}\n", self.side_to_move.symbol()));
        s
    }

    /// Parses the fixture text format. The move history is synthesised by
    /// interleaving black and white stones in row-major order.
    pub fn from_text(text: &str) -> Result<BoardState, BoardError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut black = Vec::new();
        let mut white = Vec::new();
        for y in 0..SIZE {
            let line = lines
                .next()
                .ok_or_else(|| BoardError::Parse(format!("expected {SIZE} rows, got {y}")))?;
            let chars: Vec<char> = line.chars().collect();
            if chars.len() != SIZE {
                return Err(BoardError::Parse(format!(
                    "row {y} has {} cells, expected {SIZE}",
                    chars.len()
                )));
            }
            for (x, c) in chars.into_iter().enumerate() {
                match c {
                    '.' => {}
                    'X' | 'x' => black.push(Move::at(x, y)),
                    'O' | 'o' => white.push(Move::at(x, y)),
                    other => return Err(BoardError::Parse(format!("bad cell {other:?}"))),
                }
            }
        }
        let turn = match lines.next() {
            None => None,
            Some(l) => {
                let t = l
                    .strip_prefix("turn:")
                    .ok_or_else(|| BoardError::Parse(format!("unexpected trailing line {l:?}")))?
                    .trim();
                Some(match t {
                    "X" | "x" => Player::Black,
                    "O" | "o" => Player::White,
                    _ => return Err(BoardError::Parse(format!("bad turn {t:?}"))),
                })
            }
        };
        if black.len() != white.len() && black.len() != white.len() + 1 {
            return Err(BoardError::Parse(format!(
                "{} black and {} white stones is not a reachable position",
                black.len(),
                white.len()
            )));
        }
        let mut board = BoardState::new();
        let mut w = white.into_iter();
        for b in black {
            board.play(b)?;
            if let Some(m) = w.next() {
                board.play(m)?;
            }
        }
        if let Some(t) = turn {
            if t != board.side_to_move {
                return Err(BoardError::Parse(format!(
                    "turn {t} contradicts stone counts"
                )));
            }
        }
        Ok(board)
    }
}

impl fmt::Debug for BoardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_prefix(rng: &mut ChaCha8Rng, max_len: usize) -> BoardState {
        let mut b = BoardState::new();
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            if b.is_terminal() {
                break;
            }
            let cands = b.candidate_moves();
            let m = cands[rng.gen_range(0..cands.len())];
            b.play(m).unwrap();
        }
        b
    }

    /// Brute force over every horizontal, vertical and diagonal 5-window.
    fn brute_force_winner(b: &BoardState) -> Option<Player> {
        let mut windows = 0;
        let mut found = None;
        for y in 0..SIZE as i32 {
            for x in 0..SIZE as i32 {
                for d in DIRECTIONS {
                    let (ex, ey) = (x + 4 * d.0, y + 4 * d.1);
                    if !(0..SIZE as i32).contains(&ex) || !(0..SIZE as i32).contains(&ey) {
                        continue;
                    }
                    windows += 1;
                    let first = b.cell(Move::at(x as usize, y as usize));
                    if first == Cell::Empty {
                        continue;
                    }
                    if (1..5).all(|k| {
                        b.cell(Move::at((x + k * d.0) as usize, (y + k * d.1) as usize)) == first
                    }) {
                        found = first.stone();
                    }
                }
            }
        }
        assert_eq!(windows, 572);
        found
    }

    #[test]
    fn first_move_and_occupied() {
        let b = BoardState::new().apply_move(Move::at(7, 7)).unwrap();
        assert_eq!(b.cell(Move::at(7, 7)), Cell::Black);
        assert_eq!(b.side_to_move(), Player::White);
        assert_eq!(b.stone_count(), 1);
        assert!(matches!(
            b.apply_move(Move::at(7, 7)),
            Err(BoardError::IllegalMove(..))
        ));
    }

    #[test]
    fn out_of_bounds_is_illegal() {
        let mut b = BoardState::new();
        let off = Move { x: 15, y: 3 };
        assert!(matches!(b.play(off), Err(BoardError::IllegalMove(..))));
        assert!(Move::new(15, 0).is_none());
        assert!("3,15".parse::<Move>().is_err());
    }

    #[test]
    fn undo_inverse() {
        let empty = BoardState::new();
        let one = empty.apply_move(Move::at(7, 7)).unwrap();
        assert_eq!(one.undo_move().unwrap(), empty);
        assert_eq!(empty.undo_move(), Err(BoardError::NothingToUndo));
    }

    #[test]
    fn five_six_and_four() {
        // Black on row 7, white on row 0.
        let mut b = BoardState::new();
        for i in 0..4 {
            b.play(Move::at(3 + i, 7)).unwrap();
            b.play(Move::at(i * 2, 0)).unwrap();
        }
        assert_eq!(b.winner(), None);
        assert_eq!(b.winner_check(Move::at(6, 7)), None);
        let mut five = b.clone();
        assert_eq!(five.play(Move::at(7, 7)).unwrap(), Some(Player::Black));
        assert_eq!(
            five.play(Move::at(9, 9)),
            Err(BoardError::GameFinished)
        );

        // Overline: X X X . X X filled in the middle.
        let mut six = BoardState::from_moves([
            Move::at(2, 5),
            Move::at(0, 0),
            Move::at(3, 5),
            Move::at(0, 2),
            Move::at(4, 5),
            Move::at(0, 4),
            Move::at(6, 5),
            Move::at(0, 6),
            Move::at(7, 5),
            Move::at(0, 8),
        ])
        .unwrap();
        assert_eq!(six.play(Move::at(5, 5)).unwrap(), Some(Player::Black));
    }

    #[test]
    fn empty_board_candidates_are_centre() {
        assert_eq!(BoardState::new().candidate_moves(), vec![Move::at(7, 7)]);
    }

    #[test]
    fn single_stone_box() {
        let b = BoardState::from_moves([Move::at(7, 7)]).unwrap();
        let c = b.candidate_moves();
        // Chebyshev ball of radius 2 minus the centre.
        let expected: Vec<Move> = (5..=9)
            .flat_map(|y| (5..=9).map(move |x| Move::at(x, y)))
            .filter(|&m| m != Move::at(7, 7))
            .collect();
        assert_eq!(c.len(), 24);
        assert_eq!(c, expected);
    }

    #[test]
    fn corner_stone_clipped() {
        let b = BoardState::from_moves([Move::at(0, 0)]).unwrap();
        let c = b.candidate_moves();
        let expected: Vec<Move> = (0..=2)
            .flat_map(|y| (0..=2).map(move |x| Move::at(x, y)))
            .filter(|&m| m != Move::at(0, 0))
            .collect();
        assert_eq!(c, expected);
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn edge_wrap_does_not_leak() {
        // A stone on the right edge must not mark cells on the left edge.
        let b = BoardState::from_moves([Move::at(14, 7)]).unwrap();
        assert!(b.candidate_moves().iter().all(|m| m.x >= 12));
        let b = BoardState::from_moves([Move::at(14, 14)]).unwrap();
        assert_eq!(b.candidate_moves().len(), 8);
    }

    #[test]
    fn text_round_trip() {
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 8), Move::at(6, 7)]).unwrap();
        let t = b.to_text();
        let back = BoardState::from_text(&t).unwrap();
        assert_eq!(back.to_text(), t);
        assert_eq!(back.side_to_move(), Player::White);
        assert!(BoardState::from_text("...").is_err());
        let bad_turn = t.replace("turn: O", "turn: X");
        assert!(BoardState::from_text(&bad_turn).is_err());
    }

    #[test]
    fn winner_matches_brute_force_on_random_prefixes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let b = random_prefix(&mut rng, 120);
            let incremental = b.last_move().and_then(|m| b.winner_check(m));
            assert_eq!(incremental, brute_force_winner(&b), "{b:?}");
            assert_eq!(b.winner(), incremental);
        }
    }

    #[test]
    fn full_board_without_five_is_draw() {
        // Colouring by (x + 2y) mod 4 never puts three equal stones in a line.
        let (black, white): (Vec<Move>, Vec<Move>) = (0..CELLS)
            .map(Move::from_index)
            .partition(|m| (m.x as usize + 2 * m.y as usize) % 4 < 2);
        assert_eq!((black.len(), white.len()), (113, 112));
        let mut b = BoardState::new();
        let mut w = white.into_iter();
        for m in black {
            assert_eq!(b.play(m).unwrap(), None);
            if let Some(o) = w.next() {
                assert_eq!(b.play(o).unwrap(), None);
            }
        }
        assert!(b.is_full());
        assert_eq!(b.outcome(), Some(Outcome::Draw));
        assert!(b.candidate_moves().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn replay_and_undo_round_trip(seed in any::<u64>(), len in 0usize..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut b = BoardState::new();
            for _ in 0..len {
                if b.is_terminal() { break; }
                let c = b.candidate_moves();
                let before = b.clone();
                let m = c[rng.gen_range(0..c.len())];
                b.play(m).unwrap();
                // only the played cell changed
                for i in 0..CELLS {
                    if i != m.index() {
                        prop_assert_eq!(b.cell_at(i), before.cell_at(i));
                    }
                }
            }
            let black = b.stones(Player::Black).count();
            let white = b.stones(Player::White).count();
            prop_assert!(black == white || black == white + 1);
            prop_assert_eq!(BoardState::from_moves(b.history().iter().copied()).unwrap(), b.clone());
            let n = b.stone_count();
            for _ in 0..n { b.undo().unwrap(); }
            prop_assert_eq!(b, BoardState::new());
        }

        #[test]
        fn candidates_are_near_empty_cells(seed in any::<u64>(), len in 1usize..80) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = random_prefix(&mut rng, len);
            let stones: Vec<Move> = b.history().to_vec();
            let cands = b.candidate_moves();
            let mut sorted = cands.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(&sorted, &cands);
            for m in &cands {
                prop_assert_eq!(b.cell(*m), Cell::Empty);
                if !stones.is_empty() {
                    prop_assert!(stones.iter().any(|s| s.chebyshev(*m) <= 2));
                }
            }
            // completeness: every empty cell near a stone is a candidate
            for m in b.empty_cells() {
                let near = stones.iter().any(|s| s.chebyshev(m) <= 2);
                prop_assert_eq!(near || stones.is_empty() && m == Move::center(), cands.contains(&m));
            }
        }
    }
}
