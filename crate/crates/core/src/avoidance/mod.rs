//! Exact counting of words that avoid a finite set of forbidden factors.

mod automaton;
mod correlation;
mod counting;
mod forbidden;
mod growth;
mod ppoly;

pub use automaton::AvoidanceAutomaton;
pub use correlation::{correlation_polynomial, myers_solve_at, myers_system, CorrelationPolynomial, MyersSolution};
pub use counting::{count_avoiding, CountMode, GrowthSeries};
pub use forbidden::{build_forbidden_set, ForbiddenSet};
pub use growth::{automaton_growth, growth_rate, transfer_matrix};
pub use ppoly::{p_eval, p_eval_exact, p_largest_root, RootHypotheses, RootPolynomial};
