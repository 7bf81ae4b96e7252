//! Exact computer algebra for subspace arrangements cut out by products of
//! linear forms: constructions, Groebner bases, Hilbert functions and Betti
//! tables over the rationals.

pub mod arrangements;
pub mod dodeca;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod polyring;
pub mod report;

pub use arrangements::{Family, FamilySpec, LinearSubspace, SetPartition};
pub use groebner::{GroebnerConfig, GroebnerError, HilbertData, Ideal};
pub use invariants::BettiTable;
pub use num_bigint::BigInt;
pub use polyring::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial, VarRing};
pub use report::{Check, Status, VerificationReport};
