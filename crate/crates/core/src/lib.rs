//! Exact machinery for countable representability of nilpotent groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`puiseux`]: Puiseux polynomials over the rationals with their valuation,
//!   truncated inverses and reduction modulo the ideals `L_n = {v > n}`.
//! * [`lattice`]: small integer linear algebra (Hermite normal form, integer
//!   kernels, rational solving) used by the valuation recursion.
//! * [`valuation_lemma`]: value sets of finitely generated additive subgroups
//!   and separation bounds for cosets `z + C`.
//! * [`unitriangular`]: upper unitriangular matrices over Puiseux polynomials,
//!   congruence filtration and the central-coset separator, plus the real
//!   Hilbert symbol.
//! * [`extensions`]: bilinear-cocycle central extensions of big abelian groups
//!   and the pigeonhole commutator extraction.
//! * [`representability`]: separating families, the circle decomposition,
//!   finite group tables and induced actions.

pub mod error;
pub mod extensions;
pub mod lattice;
pub mod puiseux;
pub mod representability;
pub mod unitriangular;
pub mod valuation_lemma;

pub use error::{Error, Result};
pub use puiseux::{PuiseuxApprox, PuiseuxPoly, Rational, Valuation};
