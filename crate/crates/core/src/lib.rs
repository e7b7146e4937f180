//! Exact-arithmetic model of the center of the twisted Heisenberg category.
//!
//! The crate is organized around the objects it computes with:
//!
//! * [`partitions`] — validated partition types, shifted diagrams, counting
//!   formulas (`g'_λ`, `g_λ`, `z_ρ`) and Kerov coordinates;
//! * [`schur_graph`] — edge multiplicities, up/down transition kernels,
//!   Plancherel measures and the transition moments on the Schur graph;
//! * [`gamma`] — the subalgebra `Γ` of symmetric functions generated by odd
//!   power sums, with its `p`, `Q`, `Q*` and `𝔭` bases and the character
//!   matrix connecting them;
//! * [`sergeev`] — exact element arithmetic in the finite Sergeev
//!   superalgebras, Jucys–Murphy elements, class sums and central
//!   idempotents;
//! * [`center`] — the commutative algebra of closed diagrams, its bubble and
//!   closure generators, the Fock images and the isomorphism onto `Γ`;
//! * [`waction`] — the lie bracket with central extension and the induced
//!   operators on `Γ` in the `𝔭` basis.
//!
//! All scalars are arbitrary-precision rationals; nothing in this crate uses
//! floating point. Every value is immutable after construction and all
//! operations are pure, so the types are safe to share across threads; the
//! caches in [`gamma::GammaCtx`] are internally synchronized and idempotent.

pub mod center;
pub mod gamma;
mod linalg;
pub mod partitions;
pub mod rational;
pub mod schur_graph;
pub mod sergeev;
pub mod waction;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    /// A precondition on an operation's arguments was violated.
    #[error("{0}")]
    Domain(String),
    /// A linear system that the theory guarantees to be solvable was not;
    /// this always indicates an internal inconsistency, never bad input.
    #[error("singular linear system: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
