//! Exact computations around the quadratic family `f_c(x) = x^2 + c`.
//!
//! The crate is split by subject:
//!
//! - [`exact`]: rationals, dense polynomials, resultants, square classes, bounded factoring
//! - [`dynamics`]: critical orbits, iterate polynomials, the discriminant recurrence
//! - [`galois`]: stage-by-stage maximality certificates and the `S^(n)` scanners
//! - [`curves`]: the hyperelliptic families `y^2 = h(x)` built from iterates, and maps between them
//! - [`ffield`]: small finite fields `F_{p^m}` with table-driven arithmetic
//! - [`zeta`]: point counts, Frobenius characteristic polynomials and their verifiers
//! - [`search`]: rational point search, Runge's method, local obstructions
//!
//! Everything global is exact. The only floating point in the crate is the
//! root-modulus sanity check on characteristic polynomials.

pub mod curves;
pub mod dynamics;
mod error;
pub mod exact;
pub mod ffield;
pub mod galois;
pub mod search;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{BigRat, RatPoly};

/// Size limits shared by all operations.
///
/// Orbit values grow doubly exponentially, iterate degrees exponentially, and
/// point counts linearly in the field size, so every entry point checks one of
/// these before doing work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum orbit length `n` for `f^n(0)`.
    pub orbit_cap: usize,
    /// Maximum degree of an explicitly expanded polynomial.
    pub degree_cap: usize,
    /// Maximum field size `q` for enumeration.
    pub q_width: u64,
    /// Fields up to this size get log/exp tables.
    pub table_limit: u64,
    /// Maximum bit length of an operand in `gcd_orbit_bound`.
    pub gcd_bit_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            orbit_cap: 16,
            degree_cap: 1024,
            q_width: 1 << 31,
            table_limit: 1 << 20,
            gcd_bit_cap: 1 << 33,
        }
    }
}
