//! Line patterns, the exponential move heuristic and threat detection.
//!
//! Every line of the board is cut into segments at opponent stones and board
//! edges. Within a segment, own stones separated by at most two empty cells
//! form a run; runs longer than a five-window are split at their densest
//! five-window. Each resulting group is classified exactly once by
//! `(length, class, shape)`, which indexes the 32-entry catalog below.
//!
//! Pattern values follow `10^L · f^d` for open patterns and
//! `10^(L-1) · f^d` for half-closed ones, with decay factor `f = 0.90` and
//! the decay exponent `d` fixed per shape.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::board::{BoardError, BoardState, Cell, Move, Player, DIRECTIONS, SIZE};

pub const NUM_PATTERNS: usize = 32;
pub const DECAY_FACTOR: f64 = 0.90;
pub const MAX_H: f64 = 100_000.0;

/// Threat threshold for VCF/VCT moves, "on the order of" 10³.
pub const THREAT_THRESHOLD: f64 = 1_000.0;

/// Both ends free with room to grow, or one end blocked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineClass {
    Open,
    HalfClosed,
}

/// Gap structure of a group. Decay exponents: 0, 1, 2, 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Contiguous,
    OneGap,
    TwoGaps,
    /// Contiguous but hemmed in: an open group with a single free cell on
    /// one side, or a half-closed group resting on the board edge.
    EdgeAdjacent,
}

impl Shape {
    pub fn decay_exponent(self) -> i32 {
        match self {
            Shape::Contiguous => 0,
            Shape::OneGap => 1,
            Shape::TwoGaps | Shape::EdgeAdjacent => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternId(pub u8);

impl PatternId {
    pub const FIVE: PatternId = PatternId(0);
    pub const LIVE_FOUR: PatternId = PatternId(1);
    pub const SLEEP_FOUR: PatternId = PatternId(2);
    pub const LIVE_THREE: PatternId = PatternId(3);
    pub const BROKEN_FOUR: PatternId = PatternId(4);
    pub const JUMP_THREE: PatternId = PatternId(5);
    pub const EDGE_SLEEP_FOUR: PatternId = PatternId(6);
    pub const CRAMPED_THREE: PatternId = PatternId(7);
    pub const SLEEP_THREE: PatternId = PatternId(8);
    pub const LIVE_TWO: PatternId = PatternId(9);
    pub const SLEEP_TWO: PatternId = PatternId(16);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn descriptor(self) -> &'static PatternDescriptor {
        &CATALOG[self.index()]
    }

    /// Five, or any four: completing it next move wins.
    pub fn is_four_class(self) -> bool {
        self.descriptor().length >= 4
    }

    /// Open three of any shape: one move from an open four.
    pub fn is_open_three(self) -> bool {
        let d = self.descriptor();
        d.length == 3 && d.class == LineClass::Open
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternDescriptor {
    pub id: PatternId,
    pub name: &'static str,
    /// Illustration: `X` own stone, `.` empty, `|` opponent stone, `#` board edge.
    pub ascii: &'static str,
    pub length: u8,
    pub class: LineClass,
    pub shape: Shape,
    /// Whether the scanner can produce this combination on a 15×15 board.
    pub reachable: bool,
}

impl PatternDescriptor {
    pub fn decay_exponent(&self) -> i32 {
        self.shape.decay_exponent()
    }

    pub fn value(&self, decay_factor: f64) -> f64 {
        let exp = match self.class {
            LineClass::Open => self.length as i32,
            LineClass::HalfClosed => self.length as i32 - 1,
        };
        10f64.powi(exp) * decay_factor.powi(self.decay_exponent())
    }
}

macro_rules! pattern {
    ($id:expr, $name:expr, $ascii:expr, $len:expr, $class:ident, $shape:ident, $reach:expr) => {
        PatternDescriptor {
            id: PatternId($id),
            name: $name,
            ascii: $ascii,
            length: $len,
            class: LineClass::$class,
            shape: Shape::$shape,
            reachable: $reach,
        }
    };
}

/// The pattern catalog, ordered by value.
pub static CATALOG: [PatternDescriptor; NUM_PATTERNS] = [
    pattern!(0, "five", "XXXXX", 5, Open, Contiguous, true),
    pattern!(1, "live four", ".XXXX.", 4, Open, Contiguous, true),
    pattern!(2, "sleep four", "|XXXX.", 4, HalfClosed, Contiguous, true),
    pattern!(3, "live three", "..XXX..", 3, Open, Contiguous, true),
    pattern!(4, "broken four", "X.XXX", 4, HalfClosed, OneGap, true),
    pattern!(5, "jump three", ".X.XX.", 3, Open, OneGap, true),
    pattern!(6, "edge sleep four", "#XXXX.", 4, HalfClosed, EdgeAdjacent, true),
    pattern!(7, "cramped live three", "|.XXX..", 3, Open, EdgeAdjacent, true),
    pattern!(8, "sleep three", "|XXX..", 3, HalfClosed, Contiguous, true),
    pattern!(9, "live two", "..XX..", 2, Open, Contiguous, true),
    pattern!(10, "sleep jump three", "|X.XX.", 3, HalfClosed, OneGap, true),
    pattern!(11, "jump two", ".X.X..", 2, Open, OneGap, true),
    pattern!(12, "split three", "X.X.X", 3, HalfClosed, TwoGaps, true),
    pattern!(13, "edge sleep three", "#XXX..", 3, HalfClosed, EdgeAdjacent, true),
    pattern!(14, "wide two", ".X..X.", 2, Open, TwoGaps, true),
    pattern!(15, "cramped live two", "|.XX...", 2, Open, EdgeAdjacent, true),
    pattern!(16, "sleep two", "|XX...", 2, HalfClosed, Contiguous, true),
    pattern!(17, "sleep jump two", "|X.X..", 2, HalfClosed, OneGap, true),
    pattern!(18, "sleep wide two", "|X..X.", 2, HalfClosed, TwoGaps, true),
    pattern!(19, "edge sleep two", "#XX...", 2, HalfClosed, EdgeAdjacent, true),
    pattern!(20, "closed five", "|XXXXX|", 5, HalfClosed, Contiguous, false),
    pattern!(21, "open gapped five", "-", 5, Open, OneGap, false),
    pattern!(22, "closed gapped five", "-", 5, HalfClosed, OneGap, false),
    pattern!(23, "open two-gap five", "-", 5, Open, TwoGaps, false),
    pattern!(24, "closed two-gap five", "-", 5, HalfClosed, TwoGaps, false),
    pattern!(25, "open edge five", "-", 5, Open, EdgeAdjacent, false),
    pattern!(26, "closed edge five", "-", 5, HalfClosed, EdgeAdjacent, false),
    pattern!(27, "open broken four", "-", 4, Open, OneGap, false),
    pattern!(28, "open two-gap four", "-", 4, Open, TwoGaps, false),
    pattern!(29, "cramped live four", "-", 4, Open, EdgeAdjacent, false),
    pattern!(30, "two-gap sleep four", "-", 4, HalfClosed, TwoGaps, false),
    pattern!(31, "open split three", "-", 3, Open, TwoGaps, false),
];

fn lookup_id(length: u8, class: LineClass, shape: Shape) -> PatternId {
    CATALOG
        .iter()
        .find(|d| d.length == length && d.class == class && d.shape == shape)
        .map(|d| d.id)
        .expect("catalog covers every (length, class, shape)")
}

/// Pattern values derived from the catalog descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicTable {
    values: [f64; NUM_PATTERNS],
    pub decay_factor: f64,
    pub max_h: f64,
}

impl HeuristicTable {
    pub fn new(decay_factor: f64, max_h: f64) -> HeuristicTable {
        HeuristicTable {
            values: std::array::from_fn(|i| CATALOG[i].value(decay_factor)),
            decay_factor,
            max_h,
        }
    }

    pub fn standard() -> &'static HeuristicTable {
        static TABLE: OnceLock<HeuristicTable> = OnceLock::new();
        TABLE.get_or_init(|| HeuristicTable::new(DECAY_FACTOR, MAX_H))
    }

    pub fn value(&self, id: PatternId) -> f64 {
        self.values[id.index()]
    }
}

/// The catalog as a text table: id, ascii, class, length, decay exponent, value.
pub fn catalog_table() -> String {
    let table = HeuristicTable::standard();
    let mut out = String::from("id\tascii\tclass\tlength\tdecay\tvalue\tname\n");
    for d in &CATALOG {
        let class = match d.class {
            LineClass::Open => "open",
            LineClass::HalfClosed => "half-closed",
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}{}",
            d.id.0,
            d.ascii,
            class,
            d.length,
            d.decay_exponent(),
            trim_float(table.value(d.id)),
            d.name,
            if d.reachable { "" } else { " (unreachable)" }
        );
    }
    out
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

// ---------------------------------------------------------------------------
// Line geometry

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lc {
    Own,
    Empty,
    Blocked,
}

struct LineTable {
    /// Cell indices of every line with at least five cells.
    lines: Vec<Vec<u16>>,
    /// For each cell and direction: (line id, position on line), or none when
    /// the line through the cell is shorter than five.
    at: Vec<[Option<(u16, u8)>; 4]>,
}

fn line_table() -> &'static LineTable {
    static LINES: OnceLock<LineTable> = OnceLock::new();
    LINES.get_or_init(|| {
        let mut lines = Vec::new();
        let mut at = vec![[None; 4]; SIZE * SIZE];
        for (di, &dir) in DIRECTIONS.iter().enumerate() {
            for idx in 0..SIZE * SIZE {
                let m = Move::from_index(idx);
                // a line starts where the previous cell is off-board
                if m.offset(dir, -1).is_some() {
                    continue;
                }
                let cells: Vec<u16> = (0..SIZE as i32)
                    .map_while(|k| m.offset(dir, k))
                    .map(|c| c.index() as u16)
                    .collect();
                if cells.len() < 5 {
                    continue;
                }
                let id = lines.len() as u16;
                for (pos, &c) in cells.iter().enumerate() {
                    at[c as usize][di] = Some((id, pos as u8));
                }
                lines.push(cells);
            }
        }
        LineTable { lines, at }
    })
}

fn line_cells(board: &BoardState, cells: &[u16], p: Player, buf: &mut [Lc; SIZE]) -> usize {
    let own: Cell = p.into();
    for (slot, &c) in buf.iter_mut().zip(cells) {
        *slot = match board.cell_at(c as usize) {
            Cell::Empty => Lc::Empty,
            x if x == own => Lc::Own,
            _ => Lc::Blocked,
        };
    }
    cells.len()
}

/// A classified group: positions of its first and last stone on the line.
#[derive(Debug, Clone, Copy)]
struct Group {
    first: u8,
    last: u8,
    id: PatternId,
}

/// Segment bounds on the line plus whether each bound is the board edge.
#[derive(Debug, Clone, Copy)]
struct Segment {
    start: u8,
    end: u8,
    edge_left: bool,
    edge_right: bool,
}

fn classify_group(stones: &[u8], seg: Segment) -> Option<Group> {
    let s = stones.len();
    if s < 2 {
        return None;
    }
    let first = stones[0] as i32;
    let last = stones[s - 1] as i32;
    let (ss, se) = (seg.start as i32, seg.end as i32);
    let span = last - first + 1;
    let gaps = span - s as i32;
    let windows = first.min(se - 4) - ss.max(last - 4) + 1;
    if windows <= 0 {
        return None;
    }
    let left_room = first - ss;
    let right_room = se - last;
    let open = left_room >= 1 && right_room >= 1 && windows >= 2;
    let shape = match gaps {
        0 if open => {
            if s <= 3 && left_room.min(right_room) == 1 {
                Shape::EdgeAdjacent
            } else {
                Shape::Contiguous
            }
        }
        0 => {
            let on_edge = (left_room == 0 && seg.edge_left) || (right_room == 0 && seg.edge_right);
            if on_edge {
                Shape::EdgeAdjacent
            } else {
                Shape::Contiguous
            }
        }
        1 => Shape::OneGap,
        2 => Shape::TwoGaps,
        _ => unreachable!("runs never hold a gap wider than two"),
    };
    let class = if open {
        LineClass::Open
    } else {
        LineClass::HalfClosed
    };
    Some(Group {
        first: first as u8,
        last: last as u8,
        id: lookup_id(s as u8, class, shape),
    })
}

/// Splits one run (stones with gaps of at most two) into groups.
fn classify_run(stones: &[u8], seg: Segment, emit: &mut dyn FnMut(Group)) {
    if stones.len() < 2 {
        return;
    }
    // five or more in a row dominates the run
    let mut best = (0, 0);
    let mut start = 0;
    for i in 1..=stones.len() {
        if i == stones.len() || stones[i] != stones[i - 1] + 1 {
            if i - start > best.1 - best.0 {
                best = (start, i);
            }
            start = i;
        }
    }
    if best.1 - best.0 >= 5 {
        emit(Group {
            first: stones[best.0],
            last: stones[best.1 - 1],
            id: PatternId::FIVE,
        });
        classify_run(&stones[..best.0], seg, emit);
        classify_run(&stones[best.1..], seg, emit);
        return;
    }
    let span = stones[stones.len() - 1] - stones[0] + 1;
    if span <= 5 {
        if let Some(g) = classify_group(stones, seg) {
            emit(g);
        }
        return;
    }
    // densest five-window, then the most compact; remaining ties go to the
    // split whose patterns rank best, which keeps mirrored lines consistent
    let mut best_key = (0usize, u8::MAX);
    let mut picks: Vec<(usize, usize)> = Vec::new();
    for i in 0..stones.len() {
        let mut j = i;
        while j + 1 < stones.len() && stones[j + 1] - stones[i] <= 4 {
            j += 1;
        }
        let key = (j - i + 1, stones[j] - stones[i]);
        if key.0 > best_key.0 || (key.0 == best_key.0 && key.1 < best_key.1) {
            picks.clear();
            best_key = key;
        }
        if key == best_key {
            picks.push((i, j));
        }
    }
    let split = |(i, j): (usize, usize)| {
        let mut groups = Vec::new();
        let mut push = |g: Group| groups.push(g);
        if let Some(g) = classify_group(&stones[i..=j], seg) {
            push(g);
        }
        classify_run(&stones[..i], seg, &mut push);
        classify_run(&stones[j + 1..], seg, &mut push);
        groups
    };
    let rank = |groups: &[Group]| {
        let mut ids: Vec<PatternId> = groups.iter().map(|g| g.id).collect();
        ids.sort();
        ids
    };
    let mut best = split(picks[0]);
    for &pick in &picks[1..] {
        let cand = split(pick);
        if rank(&cand) < rank(&best) {
            best = cand;
        }
    }
    for g in best {
        emit(g);
    }
}

fn classify_segment(line: &[Lc], seg: Segment, emit: &mut impl FnMut(Group)) {
    if seg.end - seg.start + 1 < 5 {
        return;
    }
    let mut stones = [0u8; SIZE];
    let mut n = 0;
    for pos in seg.start..=seg.end {
        if line[pos as usize] == Lc::Own {
            stones[n] = pos;
            n += 1;
        }
    }
    let stones = &stones[..n];
    let mut run_start = 0;
    for i in 1..=n {
        if i == n || stones[i] - stones[i - 1] > 3 {
            classify_run(&stones[run_start..i], seg, emit);
            run_start = i;
        }
    }
}

fn classify_line(line: &[Lc], emit: &mut impl FnMut(Group)) {
    let len = line.len();
    let mut start = 0;
    while start < len {
        if line[start] == Lc::Blocked {
            start += 1;
            continue;
        }
        let mut end = start;
        while end + 1 < len && line[end + 1] != Lc::Blocked {
            end += 1;
        }
        let seg = Segment {
            start: start as u8,
            end: end as u8,
            edge_left: start == 0,
            edge_right: end == len - 1,
        };
        classify_segment(line, seg, emit);
        start = end + 1;
    }
}

/// The group containing `pos` on `line`, or none if that stone stands alone
/// or sits in a segment too short to ever make five.
fn group_at(line: &[Lc], pos: usize) -> Option<PatternId> {
    let len = line.len();
    let mut start = pos;
    while start > 0 && line[start - 1] != Lc::Blocked {
        start -= 1;
    }
    let mut end = pos;
    while end + 1 < len && line[end + 1] != Lc::Blocked {
        end += 1;
    }
    if end - start + 1 < 5 {
        return None;
    }
    // the run through pos: extend over gaps of at most two empties
    let mut lo = pos;
    loop {
        match (1..=3).find(|&k| lo >= start + k && line[lo - k] == Lc::Own) {
            Some(k) => lo -= k,
            None => break,
        }
    }
    let mut hi = pos;
    loop {
        match (1..=3).find(|&k| hi + k <= end && line[hi + k] == Lc::Own) {
            Some(k) => hi += k,
            None => break,
        }
    }
    if lo == hi {
        return None;
    }
    let mut stones = [0u8; SIZE];
    let mut n = 0;
    for p in lo..=hi {
        if line[p] == Lc::Own {
            stones[n] = p as u8;
            n += 1;
        }
    }
    let seg = Segment {
        start: start as u8,
        end: end as u8,
        edge_left: start == 0,
        edge_right: end == len - 1,
    };
    let mut found = None;
    classify_run(&stones[..n], seg, &mut |g| {
        if g.first as usize <= pos && pos <= g.last as usize {
            found = Some(g.id);
        }
    });
    found
}

// ---------------------------------------------------------------------------
// Pattern counts

/// Per-pattern occurrence counts for one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PatternCounts(pub [u16; NUM_PATTERNS]);

impl PatternCounts {
    pub fn get(&self, id: PatternId) -> u16 {
        self.0[id.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }
}

/// Counts every catalog pattern of `p` along all four directions.
pub fn scan_patterns(board: &BoardState, p: Player) -> PatternCounts {
    let mut counts = PatternCounts::default();
    let mut buf = [Lc::Empty; SIZE];
    for cells in &line_table().lines {
        let n = line_cells(board, cells, p, &mut buf);
        if !buf[..n].contains(&Lc::Own) {
            continue;
        }
        classify_line(&buf[..n], &mut |g| counts.0[g.id.index()] += 1);
    }
    counts
}

/// Counts for both players, indexed by [`Player::index`].
pub fn scan_both(board: &BoardState) -> [PatternCounts; 2] {
    [
        scan_patterns(board, Player::Black),
        scan_patterns(board, Player::White),
    ]
}

// ---------------------------------------------------------------------------
// Move heuristics

/// Patterns a move would form, per direction, for the mover (offense) and
/// for the opponent had they played there instead (defense).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveEval {
    pub mv: Move,
    pub offense: [Option<PatternId>; 4],
    pub defense: [Option<PatternId>; 4],
    pub offense_value: f64,
    pub defense_value: f64,
    /// offense + defense, capped at `max_h`.
    pub h: f64,
}

impl MoveEval {
    pub fn makes_five(&self) -> bool {
        self.offense.contains(&Some(PatternId::FIVE))
    }

    pub fn is_vcf(&self) -> bool {
        self.offense.iter().flatten().any(|id| id.is_four_class())
    }

    pub fn is_vct(&self) -> bool {
        self.offense.iter().flatten().any(|id| id.is_open_three())
    }

    pub fn is_block(&self) -> bool {
        self.defense_value >= THREAT_THRESHOLD
    }

    pub fn is_threat(&self) -> bool {
        self.is_vcf() || self.is_vct() || self.is_block()
    }
}

/// Pattern formed through `m` in each direction if `p` had a stone there.
fn patterns_through(board: &BoardState, m: Move, p: Player) -> [Option<PatternId>; 4] {
    let table = line_table();
    let mut out = [None; 4];
    let mut buf = [Lc::Empty; SIZE];
    for (di, slot) in out.iter_mut().enumerate() {
        let Some((line, pos)) = table.at[m.index()][di] else {
            continue;
        };
        let cells = &table.lines[line as usize];
        let n = line_cells(board, cells, p, &mut buf);
        buf[pos as usize] = Lc::Own;
        *slot = group_at(&buf[..n], pos as usize);
    }
    out
}

fn sum_values(table: &HeuristicTable, ids: &[Option<PatternId>; 4]) -> f64 {
    ids.iter().flatten().map(|&id| table.value(id)).sum()
}

/// Offense/defense breakdown for an empty cell. Assumes `m` is empty.
pub fn evaluate_move(board: &BoardState, m: Move, mover: Player, table: &HeuristicTable) -> MoveEval {
    let offense = patterns_through(board, m, mover);
    let defense = patterns_through(board, m, mover.opponent());
    let offense_value = sum_values(table, &offense);
    let defense_value = sum_values(table, &defense);
    let h = if offense.contains(&Some(PatternId::FIVE)) {
        table.max_h
    } else {
        (offense_value + defense_value).min(table.max_h)
    };
    MoveEval {
        mv: m,
        offense,
        defense,
        offense_value,
        defense_value,
        h,
    }
}

/// The exponential heuristic `H` of placing `mover`'s stone at `m`.
pub fn exp_heuristic(board: &BoardState, m: Move, mover: Player) -> Result<f64, BoardError> {
    if board.cell(m) != Cell::Empty {
        return Err(BoardError::IllegalMove(m.to_string(), "cell occupied"));
    }
    Ok(evaluate_move(board, m, mover, HeuristicTable::standard()).h)
}

/// Kang's quadratic heuristic per direction: `L_open²` for a run with both
/// ends free, `(L_hclose/2)²` with one end blocked, 0 when boxed in.
pub fn kang_terms(board: &BoardState, m: Move, mover: Player) -> Result<[f64; 4], BoardError> {
    if board.cell(m) != Cell::Empty {
        return Err(BoardError::IllegalMove(m.to_string(), "cell occupied"));
    }
    let own: Cell = mover.into();
    let free = |c: Option<Move>| c.is_some_and(|c| board.cell(c) == Cell::Empty);
    Ok(std::array::from_fn(|di| {
        let d = DIRECTIONS[di];
        let back = (-d.0, -d.1);
        let fwd = board.ray(m, d, mover);
        let bwd = board.ray(m, back, mover);
        debug_assert!(own != Cell::Empty);
        let len = (1 + fwd + bwd) as f64;
        let open_ends =
            free(m.offset(d, fwd as i32 + 1)) as u8 + free(m.offset(back, bwd as i32 + 1)) as u8;
        match open_ends {
            2 => len * len,
            1 => (len / 2.0) * (len / 2.0),
            _ => 0.0,
        }
    }))
}

/// Kang's heuristic for the side to move playing `m`.
pub fn kang_heuristic(board: &BoardState, m: Move) -> Result<f64, BoardError> {
    Ok(kang_terms(board, m, board.side_to_move())?.iter().sum())
}

// ---------------------------------------------------------------------------
// Threats

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ThreatLists {
    /// Moves making a four or five.
    pub vcf_moves: Vec<Move>,
    /// Moves making an open three.
    pub vct_moves: Vec<Move>,
    /// Moves whose defense value reaches the threat threshold.
    pub block_moves: Vec<Move>,
}

impl ThreatLists {
    pub fn is_empty(&self) -> bool {
        self.vcf_moves.is_empty() && self.vct_moves.is_empty() && self.block_moves.is_empty()
    }
}

/// Evaluates every candidate move, sorted by descending `h` then row-major.
pub fn evaluate_candidates(board: &BoardState, mover: Player, table: &HeuristicTable) -> Vec<MoveEval> {
    let mut evals: Vec<MoveEval> = board
        .candidate_bits()
        .iter()
        .map(|i| evaluate_move(board, Move::from_index(i), mover, table))
        .collect();
    evals.sort_by(|a, b| b.h.total_cmp(&a.h).then(a.mv.cmp(&b.mv)));
    evals
}

pub fn find_threats(board: &BoardState, mover: Player) -> ThreatLists {
    let evals = evaluate_candidates(board, mover, HeuristicTable::standard());
    let pick = |f: fn(&MoveEval) -> bool| evals.iter().filter(|e| f(e)).map(|e| e.mv).collect();
    ThreatLists {
        vcf_moves: pick(MoveEval::is_vcf),
        vct_moves: pick(MoveEval::is_vct),
        block_moves: pick(MoveEval::is_block),
    }
}
