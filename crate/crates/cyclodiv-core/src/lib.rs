//! Exact arithmetic for a divisor property of integer polynomials.
//!
//! The central question: for which monic `f` in `Z[x]` does `f(p)` divide
//! `f(p^p)` for every sufficiently large prime `p`?  The answer is structural:
//! exactly the polynomials of the form `x^e0 * prod_i Phi_{d_i}(x)^{e_i}`,
//! a power of `x` times a product of cyclotomic polynomials.  This crate
//! provides the pieces needed to decide membership in that family, to verify
//! the divisor property empirically at individual primes, and to probe the
//! supporting number theory (primitive prime divisors, split densities,
//! multiplicative orders) with exact integer arithmetic throughout.
//!
//! Modules:
//! - [`poly`]: dense polynomials over `Z` (exact big-integer coefficients)
//! - [`numtheory`]: primality, factorization, orders, and arithmetic functions
//! - [`modpoly`]: polynomials over `F_p` for 64-bit primes `p`
//! - [`cyclotomic`]: `Phi_d`, the product-family classifier, and identities
//! - [`verifier`]: the divisor property itself, scans, and the `N = 2` analysis
//! - [`zsigmondy`]: primitive prime divisors of `Phi_d(b)` with exact exceptions
//! - [`galois`]: split-density and root-order probes at split primes

pub mod cyclotomic;
pub mod error;
pub mod galois;
pub mod modpoly;
pub mod numtheory;
pub mod poly;
pub mod verifier;
pub mod zsigmondy;

pub use cyclotomic::{Classification, CycloFactorization};
pub use error::{Error, ErrorKind};
pub use galois::{OrderProfile, RootImplicationReport, SplitDensityReport};
pub use modpoly::FpPoly;
pub use numtheory::{FactorBudget, FactorMap};
pub use poly::IntPoly;
pub use verifier::{DivisibilityReport, N2Status, N2Verdict, N2Witness, RadicalReport};
pub use zsigmondy::{ExceptionTag, PrimitiveDivisorReport};

/// Seed used by every randomized routine when the caller does not supply one.
/// Randomness only ever steers internal search order (Pollard rho walks,
/// root-splitting); reported results are deterministic functions of the input.
pub const DEFAULT_SEED: u64 = 0x5EED_BA5E;
