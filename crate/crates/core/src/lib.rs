//! Reducing systems of parameters over graded-local rings.
//!
//! The ambient ring is a standard-graded polynomial ring `R = k[x_1..x_n]`
//! read as its localization at the irrelevant ideal `m`. Every module is
//! cyclic, `M = R/I` with `I` homogeneous, so dimension, depth, associated
//! primes and the Cohen-Macaulay property agree between the graded ring and
//! its localization, and every module-theoretic question becomes an ideal
//! computation.
//!
//! Layers, bottom up:
//!
//! * [`poly`], [`parse`]: exact polynomial arithmetic over `Q` and `F_p`.
//! * [`groebner`]: Buchberger and the ideal toolbox (quotients, saturation,
//!   intersection, elimination, radical membership, dimension).
//! * [`monomial_oracle`]: combinatorial decomposition of monomial ideals,
//!   used to cross-check everything above it.
//! * [`sop`]: systems of parameters, the reducing property, the one-shot
//!   Cohen-Macaulay test and an independent depth computation.
//! * [`locus`]: the strong Cohen-Macaulay locus.

pub mod error;
pub mod field;
pub mod groebner;
pub mod locus;
pub mod monomial;
pub mod monomial_oracle;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod sop;

pub use error::{Error, Result};
pub use field::{Coeff, Field, DEFAULT_PRIME};
pub use groebner::{buchberger, Ideal};
pub use locus::{CmLocusEntry, LocusCertificate, LocusPrime, LocusStatus};
pub use monomial::{Monomial, MonomialOrder};
pub use monomial_oracle::{IrreducibleComponent, MonomialIdeal, MonomialPrime};
pub use parse::parse_poly;
pub use poly::{normal_form, ArithOp, Polynomial};
pub use ring::PolyRing;
pub use sop::{CyclicModule, ParamSequence, RngSeed, Verdict, Violation, ViolationWitness, DEFAULT_RETRIES};
