//! Diagram groups over semigroup presentations and the geometry around
//! them.
//!
//! * [`presentation`]: alphabets, words, presentations and the shipped presets.
//! * [`diagram`]: the diagram calculus (concatenation, sum, mirror image,
//!   rightmost decomposition, dipoles, confluent reduction).
//! * [`group`]: diagram groups `D(P, w)`, the diagram metric `dist_d`, and the
//!   conditionally negative definite quadratic form.
//! * [`embedding`]: the cell-indicator map of a diagram group into `ℓ₂` of
//!   the cells of the rooted 2-tree, with `‖φ(g₁) − φ(g₂)‖² = dist_d(g₁, g₂)`.
//! * [`thompson`]: Thompson's group F, word-length BFS, and the skew cube
//!   families of pairwise commuting elements.
//! * [`universal`]: the universal group U and rewriting its elements into
//!   words over `x₀, x₁, x₂` of length below five times the cell count.
//! * [`wreath`]: restricted wreath products `Z wr H`, exact word lengths,
//!   growth, the skew cube inequality and compression slope fits.
//! * [`zwrz`]: the isomorphism between `Z wr Z` and a diagram group.

pub mod diagram;
pub mod embedding;
pub mod error;
pub mod group;
pub mod presentation;
pub mod thompson;
pub mod universal;
pub mod wreath;
pub mod zwrz;

pub use diagram::{AtomicFactor, CanonicalCode, Diagram};
pub use embedding::{CellAddress, CellAddressSet};
pub use error::{Error, Result};
pub use group::{cnd_form, dist_d, DiagramGroup, GroupElement};
pub use presentation::{presets, Dir, Letter, Presentation, Relation, Word};
pub use wreath::{GroupOracle, WreathElement};
