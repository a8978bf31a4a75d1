//! Exact scalars and polynomials.
//!
//! Rationals are `num_rational::BigRational`. Polynomials are dense with
//! rational coefficients; resultants run over the integers after clearing
//! denominators and contents.

mod factor;
mod poly;
mod resultant;
mod square;
pub mod text;

pub use factor::{factor_bounded, is_prime_u64, is_probable_prime, Budget, Factorization};
pub use poly::{parse_rat, rat_to_string, RatPoly};
pub use resultant::{bareiss_det, discriminant, is_squarefree, resultant, resultant_int, sylvester};
pub use square::{class_membership, is_square, isqrt_exact, sqrt_rat, SquareClass};

pub(crate) use poly::rat;

pub type BigRat = num_rational::BigRational;
