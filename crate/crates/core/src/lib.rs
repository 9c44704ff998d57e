//! Monomial ideals, their expansions, and minimal multigraded free
//! resolutions of expansions built from a double complex of prime-power
//! resolutions.
//!
//! Everything that does linear algebra is generic over a [`Field`]; the
//! aliases at the bottom of this file fix the exact rationals.

pub mod betti;
pub mod complex;
pub mod double_complex;
pub mod error;
pub mod expansion;
pub mod field;
pub mod formulas;
pub mod ideal;
pub mod io;
pub mod linquot;
pub mod monomial;
pub mod prime_power;
pub mod random;
pub mod verify;

pub use betti::{tor_betti, BettiTable, GradedBetti};
pub use complex::{minimize, taylor_complex, tensor, verify_resolution, ChainComplex, ChainMap, FreeModule, GradedMap};
pub use error::{Error, ParseError, Result};
pub use expansion::{ExpandedRing, ExpansionTuple};
pub use field::{Field, SparseMatrix};
pub use ideal::{MonomialIdeal, PrimaryComponent, VarSet};
pub use monomial::{Monomial, RingDescriptor};

/// Exact rationals, the coefficient field used throughout.
pub type Q = num_rational::BigRational;

pub type QMatrix = SparseMatrix<Q>;
pub type QGradedMap = GradedMap<Q>;
pub type QChainComplex = ChainComplex<Q>;
pub type QChainMap = ChainMap<Q>;
