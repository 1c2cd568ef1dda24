//! Straggler-tolerant distributed computation of linearly separable tasks.
//!
//! A master wants `K_c` linear combinations of `K` messages, each message the
//! output of a per-dataset function, computed by `N` workers of which only
//! `N_r` respond. Datasets are replicated under a cyclic (or repetition)
//! assignment, workers send coded combinations of sub-messages, and the coding
//! vectors are constructed by transmitter-side interference alignment so the
//! total traffic meets the converse bound whenever the assignment permits.
//!
//! The crate is organized around the pipeline:
//!
//! - [`field`]: exact GF(q) arithmetic and dense rank / null-space / inverse.
//! - [`model`]: parameter validation and the closed-form cost formulas.
//! - [`assign`]: cyclic and repetition dataset assignments.
//! - [`scheme`]: the coding-scheme builder (demand layering, rank-reduction
//!   matrix, virtual demands, per-worker coding vectors) plus encode/decode.
//! - [`verify`]: exhaustive and Monte-Carlo decodability verification.
//! - [`sim`]: master-worker straggler simulation with exact symbol accounting.
//! - [`cli`]: the `linsep` command-line front end.
//!
//! See the crate examples for one runnable walkthrough per capability.

pub mod assign;
pub mod cli;
pub mod field;
pub mod model;
pub mod scheme;
pub mod sim;
pub mod verify;
