//! Exact-arithmetic rack and quandle (co)homology for finite shelves,
//! together with the differential graded bialgebra that organizes the
//! cochain-level structure: cup and dendriform products, the explicit
//! homotopies controlling their commutativity and Zinbielity defects, and
//! the quandle/degenerate/late splittings for spindles.
//!
//! All arithmetic is exact: arbitrary-precision integers over ℤ and modular
//! arithmetic over F_p. With the default `parallel` feature, exhaustive
//! checks and matrix assembly fan out over rayon with deterministic,
//! order-preserving aggregation; `--no-default-features` builds the same
//! code path sequentially.

pub mod complex;
pub mod dgbial;
pub mod error;
pub mod exactlin;
pub mod modp;
pub mod par;
pub mod products;
pub mod shelf;
pub mod split;
pub mod verify;

pub use error::{Error, Result};
