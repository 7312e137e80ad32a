//! Associativity analysis of operations induced by a generator.

pub mod axioms;
pub mod criteria;
pub mod oracle;
pub mod scenario;
pub mod verdict;

pub use axioms::{axiom_check, AxiomKind, AxiomReport, AxiomResult};
pub use criteria::{
    check_fcondition, check_sufficient, fcondition_sets, i_k_set, jfrak, union_i, FConditionSets, Jfrak,
};
pub use oracle::{oracle_otimes, oracle_t, otimes_cube, t_cube};
pub use scenario::{Scenario, WitnessConfig};
pub use verdict::{Outcome, Verdict, Witness};
