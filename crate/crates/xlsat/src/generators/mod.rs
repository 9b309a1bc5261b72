//! Instance families and transformations: exact linear regular
//! constructions from incidence geometry, linear p-chains with
//! entanglement, the exact-linear extension of eligible linear
//! formulas, and seeded random regular instances.

mod chain;
mod extend;
mod families;
mod random;

pub use chain::{
    chain_provenance, entangle, gen_linear_chain, parse_chain_provenance, recover_chain_spec,
    ChainSpec, EntanglementOp,
};
pub use extend::extend_to_exact_linear;
pub use families::{gen_complete_graph, gen_fano, gen_pg32, gen_projective_plane};
pub use random::random_monotone_regular;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{q} is not prime")]
    NotPrime { q: u32 },
    #[error("generator must be monotone, exact linear, regular and uniform: {reason}")]
    NotEligibleGenerator { reason: String },
    #[error("entanglement coordinates out of range: {reason}")]
    InvalidCoordinates { reason: String },
    #[error("slot (clause {clause}, variable {var}) was already moved by an earlier entanglement")]
    SlotAlreadyUsed { clause: u32, var: u32 },
    #[error("variable {var} does not occur in clause {clause}")]
    LiteralAbsent { clause: u32, var: u32 },
    #[error("entanglement broke a structural invariant: {reason}")]
    LinearityBroken { reason: String },
    #[error("clause {clause} is unconnected to {actual} clauses, expected {expected}")]
    HypothesisViolated {
        clause: u32,
        expected: i64,
        actual: u64,
    },
    #[error("no exact-linear completion found")]
    SearchExhausted,
    #[error("infeasible parameters: {reason}")]
    InfeasibleParameters { reason: String },
    #[error("chain structure mismatch: {reason}")]
    ChainMismatch { reason: String },
}
