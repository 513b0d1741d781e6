//! Rebuilds fixtures/tactical.txt and fixtures/special.txt.

use uctadp_core::{BoardState, MlpModel, Move};
use uctadp_harness::fixtures::*;
use uctadp_harness::oracle::shortest_win;

const DOUBLE_THREE: &str = "\
O..............
...............
...............
...............
...............
.......X.......
.......X.......
.....XX........
...............
...............
...............
...............
...............
O..............
O.............O
";

const TRAP: &str = "\
O.............O
...............
...............
.......O.......
.......X.......
.......X.......
.......X.......
........XX.....
....XOO.O......
........O....X.
.........O.....
..........O..X.
.........OXXX..
...............
O..............
";

fn oracle_fixture(name: &str, kind: FixtureKind, text: &str, trap: Option<Move>) -> Fixture {
    let board = BoardState::from_text(text).unwrap();
    let (_, optimal) = shortest_win(&board).unwrap();
    let f = Fixture {
        name: name.into(),
        kind,
        board,
        optimal,
        source: Source::DerivedThreatAnalysis,
        trap,
    };
    f.verify().unwrap();
    f
}

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let model = MlpModel::pretrained();
    let t = std::time::Instant::now();
    let tactical = generate_tactical(&model, 7, [17, 17, 16]);
    eprintln!("mined {} fixtures in {:?}", tactical.len(), t.elapsed());
    std::fs::write(format!("{dir}/tactical.txt"), format_fixtures(&tactical)).unwrap();

    let special = vec![
        oracle_fixture("double-three", FixtureKind::DoubleThree, DOUBLE_THREE, None),
        oracle_fixture("trap", FixtureKind::Trap, TRAP, Some(Move::at(7, 7))),
        generate_midgame(20, 20),
    ];
    std::fs::write(format!("{dir}/special.txt"), format_fixtures(&special)).unwrap();
}
