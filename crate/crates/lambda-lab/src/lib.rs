//! Exact arithmetic for the p-th modular polynomial of Legendre
//! lambda-invariants and the congruences it satisfies at supersingular
//! points.
//!
//! The crate computes F_p(X,Y), the symmetric integer polynomial relating
//! lambda(tau) and lambda(p*tau), from q-expansions by exact linear algebra
//! (kernel modulo word-size primes, CRT reconstruction, integer
//! verification). On top of it sit:
//!
//! - [`finitefield`]: F_{p^2} arithmetic, the supersingular lambda census,
//!   and the evaluation of R(X) = F_p(X, X^p)/p at supersingular points;
//! - [`pairing`]: the residual pairing matrix with off-diagonal entries
//!   (lambda_i - lambda_j)^{p+1} and diagonal entries p * R(lambda_i),
//!   the latter recomputed through F_p in the unramified quadratic ring
//!   modulo p^2;
//! - [`padic`]: CM lifts of supersingular lambda in F_p to roots of
//!   F_p(X,X) in Z_p[sqrt(-p)], class numbers h(-p), and the congruence
//!   F_p(l1, l1^p) = (l1 - l1^p)^2 modulo p*sqrt(-p).

pub mod arith;
pub mod error;
pub mod finitefield;
pub mod modpoly;
pub mod padic;
pub mod pairing;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use finitefield::{Fp2Elem, Fp2Field, FpPoly, SupersingularSet};
pub use modpoly::{BivarIntPoly, SolverOpts, UnivarIntPoly};
pub use padic::{PadicInt, QuadPadic};
pub use pairing::{LeadingUnit, PairingMatrix, UnramElem, UnramifiedQuadRing};
pub use series::IntSeries;
