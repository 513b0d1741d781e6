//! Gomoku engine combining UCT search with a self-taught board evaluator.

pub mod adp;
pub mod agent;
pub mod board;
pub mod config;
pub mod patterns;
pub mod search;

pub use adp::MlpModel;
pub use agent::AgentKind;
pub use board::{BoardError, BoardState, Cell, Move, Outcome, Player, SIZE};
pub use search::{search, EvaluatorKind, SearchConfig, SearchResult};
