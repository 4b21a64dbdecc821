//! Inductive logic programming engine based on the learning-from-failures
//! loop: generate a candidate Datalog program, test it against labeled
//! examples, and learn hypothesis constraints from its failure that prune
//! the remaining search space.
//!
//! The engine supports three search modes:
//!
//! * **Normal**: classic generate-test-constrain, sound only for
//!   noise-free data (a single mislabeled example can prune every correct
//!   program).
//! * **Noisy**: relaxed constraints that stay sound with respect to the
//!   accuracy score `S_ACC = tp + tn` and the description-length score
//!   `S_MDL = tp + tn - size`, so the best program found is never pruned
//!   even when labels are wrong. Anytime: keeps the best program seen.
//! * **Enumerate**: exhaustive best-so-far search with no pruning at all,
//!   used as a baseline.
//!
//! Module layout mirrors the data flow: [`logic`] defines terms, clauses
//! and hypotheses; [`parse`] reads the bias/example/background files;
//! [`subsume`] implements theta-subsumption; [`eval`] tests hypotheses
//! against examples; [`score`] computes outcomes, sound-pruning triggers
//! and size bounds; [`constraint`] stores and applies learned constraints;
//! [`generate`] enumerates candidate programs; [`engine`] runs the search
//! loop; [`bench`] synthesizes benchmark tasks and writes result tables.

pub mod bench;
pub mod constraint;
pub mod engine;
pub mod eval;
pub mod generate;
pub mod logic;
pub mod parse;
pub mod score;
pub mod subsume;
