//! Constructive Frobenius preimage solving.
//!
//! Solvers are certificate-producing: every returned preimage is re-verified
//! with exact ring equality before it is handed back, so heuristic choices
//! inside the recursions (which p-th root, which division witness) can never
//! leak an incorrect answer.

mod oracles;
mod solve;

pub use oracles::{
    cyclotomic_somepower_witness, derive_prmodp2, validate_somepower_witness, verify_prmodp2,
    PrModP2Hook, SolverOracles, SomepowerWitness,
};
pub use solve::{lift_one_level, solve_frobenius, solve_level1, solve_v_power_preimage, PreimageResult};
