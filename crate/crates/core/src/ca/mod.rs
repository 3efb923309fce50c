//! Local rules, synchronous evolution on graphs, elementary and Life
//! automata, and orbit-quotient phase portraits.

pub mod eca;
mod evolve;
pub mod life;
mod portrait;
mod recurrence;
mod rule;

pub use evolve::Automaton;
pub use portrait::{phase_portrait, verify_against_states, PhasePortrait};
pub use recurrence::{Recurrence, StateGroup};
pub use rule::{symmetric_rule_count, LocalRule};
