//! Path amplitudes over finite quantizing groups, exact cyclotomic
//! arithmetic, local quantum models and permutation-representation
//! embeddings.

mod cyclo;
mod interference;
mod local;
mod poly;
mod rep;
pub mod s3;

pub use cyclo::CycloElement;
pub use interference::{interference, parse_sources, InterferencePattern, PatternPoint, Source};
pub use local::{vanishing_pairs, LocalModel, SYMBOLS};
pub use poly::{
    cyclotomic, cyclotomic_factors, free_amplitude, path_oracle, path_oracle_all, AmplitudePoly, ORACLE_MAX_STEPS,
};
pub use rep::{
    conjugacy_classes, coset_action, coset_representation, max_abs, perm_matrix, perm_representation,
    regular_representation, CMatrix, CharTable, CharTableReport, UnitaryRep, TOLERANCE,
};
