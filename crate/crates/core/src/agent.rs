//! Named playing agents: greedy ADP and the UCT variants.

use std::fmt;
use std::str::FromStr;

use crate::adp::{greedy_move, MlpModel};
use crate::board::{BoardState, Move};
use crate::search::{EvaluatorKind, Search, SearchConfig, SearchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AgentKind {
    /// One-ply greedy on the evaluator, no search.
    Adp,
    UctAdp,
    /// UCT-ADP with the heuristic bias term switched on.
    UctAdpPb,
    UctDummy,
    UctSim,
    WeightedSum,
}

impl AgentKind {
    pub const ALL: [AgentKind; 6] = [
        AgentKind::Adp,
        AgentKind::UctAdp,
        AgentKind::UctAdpPb,
        AgentKind::UctDummy,
        AgentKind::UctSim,
        AgentKind::WeightedSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Adp => "adp",
            AgentKind::UctAdp => "uct-adp",
            AgentKind::UctAdpPb => "uct-adp-pb",
            AgentKind::UctDummy => "uct-dummy",
            AgentKind::UctSim => "uct-sim",
            AgentKind::WeightedSum => "weighted-sum",
        }
    }

    pub fn uses_model(self) -> bool {
        matches!(
            self,
            AgentKind::Adp | AgentKind::UctAdp | AgentKind::UctAdpPb | AgentKind::WeightedSum
        )
    }

    /// Search settings for this agent on top of `base`. Only the
    /// progressive-bias agent keeps a non-zero `k2`.
    pub fn search_config(self, base: &SearchConfig) -> SearchConfig {
        let (evaluator, k2) = match self {
            AgentKind::Adp | AgentKind::UctAdp => (EvaluatorKind::Adp, 0.0),
            AgentKind::UctAdpPb => (EvaluatorKind::Adp, base.k2),
            AgentKind::UctDummy => (EvaluatorKind::Dummy, 0.0),
            AgentKind::UctSim => (EvaluatorKind::Simulation, 0.0),
            AgentKind::WeightedSum => (EvaluatorKind::WeightedSum, 0.0),
        };
        SearchConfig {
            evaluator,
            k2,
            ..*base
        }
    }

    /// Picks a move for the side to move.
    pub fn choose_move(self, board: &BoardState, model: &MlpModel, base: &SearchConfig) -> Result<Move, SearchError> {
        if board.is_terminal() {
            return Err(SearchError::NoMoveAvailable);
        }
        if self == AgentKind::Adp {
            return greedy_move(model, board).ok_or(SearchError::NoMoveAvailable);
        }
        let mut s = Search::new(board, self.search_config(base), model)?;
        s.run_for(None);
        Ok(s.best_move())
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AgentKind::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = AgentKind::ALL.iter().map(|a| a.name()).collect();
                format!("unknown agent {s:?}, expected one of {}", names.join("|"))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in AgentKind::ALL {
            assert_eq!(a.name().parse::<AgentKind>().unwrap(), a);
        }
        assert!("uct".parse::<AgentKind>().is_err());
    }

    #[test]
    fn only_pb_keeps_bias() {
        let base = SearchConfig::default();
        for a in AgentKind::ALL {
            let c = a.search_config(&base);
            assert_eq!(c.k2 > 0.0, a == AgentKind::UctAdpPb, "{a}");
        }
        assert_eq!(
            AgentKind::UctSim.search_config(&base).evaluator,
            EvaluatorKind::Simulation
        );
    }

    #[test]
    fn every_agent_plays_legal_moves() {
        let model = MlpModel::seeded(2);
        let base = SearchConfig {
            iteration_budget: Some(50),
            ..SearchConfig::default()
        };
        let b = BoardState::from_moves([Move::at(7, 7), Move::at(8, 7)]).unwrap();
        for a in AgentKind::ALL {
            let m = a.choose_move(&b, &model, &base).unwrap();
            assert!(b.candidate_moves().contains(&m), "{a} played {m}");
        }
    }
}
