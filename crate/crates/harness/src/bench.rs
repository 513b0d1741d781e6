//! Iterations completed in a fixed wall-clock budget.

use std::fmt::Write as _;
use std::time::Duration;

use uctadp_core::search::Search;
use uctadp_core::{AgentKind, BoardState, MlpModel, SearchConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedSample {
    pub agent: AgentKind,
    pub iterations: u64,
    pub elapsed: Duration,
}

impl SpeedSample {
    pub fn per_second(&self) -> f64 {
        self.iterations as f64 / self.elapsed.as_secs_f64().max(1e-9)
    }
}

pub fn iterations_in(board: &BoardState, agent: AgentKind, model: &MlpModel, budget: Duration) -> SpeedSample {
    let cfg = agent.search_config(&SearchConfig::default());
    let mut s = Search::new(board, cfg, model).expect("bench position is playable");
    s.run_timed(budget);
    let r = s.result();
    SpeedSample {
        agent,
        iterations: r.iterations,
        elapsed: Duration::from_millis(r.elapsed_ms),
    }
}

pub fn speed_summary(samples: &[SpeedSample]) -> String {
    let mut s = String::from("agent\titerations\tper_second\n");
    for x in samples {
        let _ = writeln!(s, "{}\t{}\t{:.0}", x.agent, x.iterations, x.per_second());
    }
    s
}
