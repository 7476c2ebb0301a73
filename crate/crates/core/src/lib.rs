//! Exact computer algebra for truncated p-typical Witt vectors.
//!
//! The crate is organized around a small tower of layers:
//!
//! - [`ring`]: exact commutative rings (integers, modular integers, prime
//!   fields, polynomial and quotient rings, p-power cyclotomic integers and
//!   their tower) with capability oracles such as exact division by p,
//!   p-th roots mod p, valuations, and quotient enumeration.
//! - [`universal`]: the sparse integer polynomial engine that computes the
//!   universal Witt polynomials (sum, product, negation, Frobenius components
//!   and their correction polynomials) by inverting the ghost map over Z,
//!   with every division verified exact.
//! - [`wittvec`]: arithmetic in W_{p^n}(R) for any supported ring R, built by
//!   evaluating the universal polynomials (or an equivalent ghost-component
//!   fast path on p-torsion-free rings).
//! - [`kernel`]: computable models of the ideal chain I_0 ⊇ I_1 ⊇ ⋯ ⊇ I_∞ and
//!   the constructive kernel-of-Frobenius machinery.
//! - [`image`]: certificate-producing Frobenius preimage solvers.
//! - [`conditions`]: the catalog of Frobenius surjectivity conditions, their
//!   decidable checkers, and implication-closure over the condition graph.
//! - [`fixtures`]: the executable regression suite used by the `verify`
//!   command.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod conditions;
pub mod error;
pub mod fixtures;
pub mod image;
pub mod kernel;
pub mod ring;
pub mod universal;
pub mod wittvec;

pub use error::{Result, WittError};
pub use ring::{Ring, RingCapabilities, RingElement};
pub use wittvec::{GhostVector, WittJson, WittVector};
