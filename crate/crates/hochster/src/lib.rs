//! Multigraded Betti numbers of Stanley-Reisner rings over colorful parameter
//! subalgebras, face rings of simplicial posets with their universal system of
//! parameters, and exact machine verification of the depth and resolution
//! identities connecting the two.
//!
//! Everything is computed over an exact field — the rationals or a prime field
//! — by sparse elimination; there is no floating point and no randomized rank.
//!
//! The pieces, bottom to top:
//!
//! * [`complex`]: simplicial complexes, proper colorings, color-selected
//!   subcomplexes, links, skeleta.
//! * [`poset`]: simplicial posets (Boolean lower intervals), validation,
//!   meets and minimal upper bounds, barycentric subdivision.
//! * [`field`] / [`sparse`]: exact arithmetic and sparse rank, the only
//!   numerical kernel.
//! * [`cohomology`]: reduced simplicial cohomology and the Reisner criterion.
//! * [`flags`]: flag f/h-vectors and Hilbert-series numerators.
//! * [`facering`]: standard monomials and the straightening law of the face
//!   ring, with the universal parameters θ_j.
//! * [`koszul`]: Betti tables over the colorful parameters γ_j (exact, via
//!   cohomology of color-selected subcomplexes, with a direct Koszul strand
//!   oracle) and over the universal parameters θ_j (degree-bounded Koszul
//!   homology).
//! * [`depth`]: three independent depth computations and their agreement.
//! * [`conjecture`]: the headline comparison of the two Betti tables.
//!
//! A command-line front end lives in the companion `hochster-cli` crate, and a
//! narrative guide with runnable snippets in the `book/` directory of the
//! repository.

pub mod betti;
pub mod catalog;
pub mod cohomology;
pub mod complex;
pub mod conjecture;
pub mod depth;
pub mod facering;
pub mod field;
pub mod flags;
pub mod json;
pub mod koszul;
pub mod poset;
pub mod sparse;

#[cfg(doctest)]
mod book;

/// Crate-wide error type. User-facing validation failures carry messages that
/// name the offending object; internal invariant breaks panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("improper coloring: vertices {v} and {w} lie on a common face but share color {color}")]
    ImproperColoring { v: usize, w: usize, color: usize },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("bad JSON: {0}")]
    Json(String),
}

pub use betti::{BettiTable, Degree, ParamSystem};
pub use complex::{ColorSet, Coloring, SimplicialComplex};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use poset::{PosetData, PosetElt, SimplicialPoset};
