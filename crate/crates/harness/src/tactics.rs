//! Move-choice accuracy on fixtures and failure-rate curves.

use std::fmt::Write as _;

use rayon::prelude::*;
use uctadp_core::search::Search;
use uctadp_core::{AgentKind, MlpModel, SearchConfig};

use crate::fixtures::{Fixture, FixtureKind};

pub const DEFAULT_CHECKPOINTS: [u64; 8] = [100, 200, 500, 1000, 2000, 5000, 10000, 20000];

#[derive(Debug, Clone, PartialEq)]
pub struct KindScore {
    pub kind: FixtureKind,
    pub solved: usize,
    pub total: usize,
    pub misses: Vec<String>,
}

impl KindScore {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.solved as f64 / self.total as f64
    }
}

/// Plays each fixture once with `agent` and tallies optimal choices per kind.
pub fn score_suite(fixtures: &[Fixture], agent: AgentKind, model: &MlpModel, base: &SearchConfig) -> Vec<KindScore> {
    let picks: Vec<(FixtureKind, String, bool)> = fixtures
        .par_iter()
        .map(|f| {
            let m = agent.choose_move(&f.board, model, base).expect("fixture is playable");
            (f.kind, f.name.clone(), f.is_optimal(m))
        })
        .collect();
    let mut out: Vec<KindScore> = Vec::new();
    for (kind, name, ok) in picks {
        let i = match out.iter().position(|s| s.kind == kind) {
            Some(i) => i,
            None => {
                out.push(KindScore {
                    kind,
                    solved: 0,
                    total: 0,
                    misses: Vec::new(),
                });
                out.len() - 1
            }
        };
        out[i].total += 1;
        if ok {
            out[i].solved += 1;
        } else {
            out[i].misses.push(name);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureRateCurve {
    pub agent: AgentKind,
    pub fixture: String,
    pub trials: usize,
    /// (iterations, fraction of trees whose best move is not optimal)
    pub points: Vec<(u64, f64)>,
}

impl FailureRateCurve {
    pub fn at(&self, iterations: u64) -> Option<f64> {
        self.points.iter().find(|p| p.0 == iterations).map(|p| p.1)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("iterations,failure_rate\n");
        for (it, r) in &self.points {
            let _ = writeln!(s, "{it},{r}");
        }
        s
    }
}

/// Grows `trials` independently seeded trees on the fixture and records
/// the failure rate at each checkpoint. A tree is grown once and read off
/// at every checkpoint, which matches fresh searches of that size.
pub fn failure_rate_curve(
    fixture: &Fixture,
    agent: AgentKind,
    model: &MlpModel,
    base: &SearchConfig,
    checkpoints: &[u64],
    trials: usize,
) -> FailureRateCurve {
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    let fails: Vec<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let cfg = SearchConfig {
                seed: base.seed.wrapping_add(t as u64),
                ..agent.search_config(base)
            };
            let mut s = Search::new(&fixture.board, cfg, model).expect("fixture is playable");
            cps.iter()
                .map(|&cp| {
                    s.run_for(Some(cp - s.iterations()));
                    !fixture.is_optimal(s.best_move())
                })
                .collect()
        })
        .collect();
    let points = cps
        .iter()
        .enumerate()
        .map(|(i, &cp)| {
            let f = fails.iter().filter(|v| v[i]).count();
            (cp, f as f64 / trials.max(1) as f64)
        })
        .collect();
    FailureRateCurve {
        agent,
        fixture: fixture.name.clone(),
        trials,
        points,
    }
}

/// Plain-text table of several curves sharing checkpoints.
pub fn curves_summary(curves: &[FailureRateCurve]) -> String {
    let mut s = String::from("iterations");
    for c in curves {
        let _ = write!(s, "\t{}", c.agent);
    }
    s.push('\n');
    if let Some(first) = curves.first() {
        for (i, (it, _)) in first.points.iter().enumerate() {
            let _ = write!(s, "{it}");
            for c in curves {
                let _ = write!(s, "\t{:.2}", c.points[i].1);
            }
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tactical_suite;

    #[test]
    fn win_in_one_is_found_quickly() {
        let model = MlpModel::pretrained();
        let suite: Vec<Fixture> = tactical_suite()
            .into_iter()
            .filter(|f| f.kind == FixtureKind::WinIn1)
            .take(3)
            .collect();
        let base = SearchConfig {
            iteration_budget: Some(200),
            ..SearchConfig::default()
        };
        let score = score_suite(&suite, AgentKind::UctAdpPb, &model, &base);
        assert_eq!(score.len(), 1);
        assert_eq!(score[0].solved, 3, "{:?}", score[0].misses);
    }

    #[test]
    fn curve_has_one_point_per_checkpoint() {
        let model = MlpModel::pretrained();
        let f = &tactical_suite()[0];
        let c = failure_rate_curve(f, AgentKind::UctAdp, &model, &SearchConfig::default(), &[50, 10, 50], 3);
        assert_eq!(c.points.iter().map(|p| p.0).collect::<Vec<_>>(), vec![10, 50]);
        assert!(c.points.iter().all(|p| (0.0..=1.0).contains(&p.1)));
        assert!(c.to_csv().starts_with("iterations,failure_rate\n10,"));
    }
}
