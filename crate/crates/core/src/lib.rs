//! Term rank of block lower triangular Toeplitz patterns.
//!
//! Given the support pattern of a matrix Laurent series `H(s) = Σ s^-i H_i`,
//! this crate computes the term rank of the Toeplitz block matrix `T_k(H)`
//! through a weighted assignment problem on the small graph `G(H)` instead of
//! matching on the `k`-fold expanded pattern. Every answer comes with primal
//! and dual certificates, and with a 0/1 parameter assignment whose evaluated
//! matrix attains the term rank exactly over any field.
//!
//! Module map:
//! - [`pattern`]: support patterns, parameter indexing and the Toeplitz expansion.
//! - [`matching`]: the weighted bipartite graph, cardinality matching with a
//!   König cover, and the δ-curve of cardinality-constrained assignments.
//! - [`lift`]: carries an assignment certificate on `G(H)` to a matching/cover
//!   pair on `G(T_k(H))`, and builds the rank witness.
//! - [`exact_rank`]: exact rank over prime fields and the rationals.
//! - [`oracle`]: brute-force ground truth sharing no code with the above.
//! - [`cli`]: the command implementations behind the `toeprank` binary.

pub mod cli;
pub mod error;
pub mod exact_rank;
pub mod lift;
pub mod matching;
pub mod oracle;
pub mod pattern;

pub use error::{Error, Result};
pub use exact_rank::{FieldMatrix, FieldSpec, Scalar};
pub use lift::{LiftCertificate, Proposition1Report};
pub use matching::{AssignmentDual, Cover, DeltaCurve, Matching, WeightedBipartiteGraph};
pub use pattern::{LaurentPattern, ParamTriple, ParameterIndex, SupportMatrix, ToeplitzPattern};
