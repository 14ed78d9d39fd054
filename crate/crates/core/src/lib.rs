//! Exact q-series laboratory for overpartition k-tuples with odd parts.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated power series over arbitrary-precision integers,
//!   Euler products `f_k = (q^k; q^k)_∞`, eta-quotient expansion, and a
//!   machine-word residue fast path ([`series::ModSeries`]).
//! - [`special`]: Borwein's cubic theta `a(q)`, theta sums over squares,
//!   `f_{-k}`, square-type classification and binomial p-adic valuations.
//! - [`optk`]: the counting series `OPT_k`, overpartitions and a brute-force
//!   enumeration oracle.
//! - [`identities`]: catalog of exact q-series identities (2- and
//!   3-dissections and the `OPT_4`/`OPT_8` identities).
//! - [`congruence`]: claim registry and the arithmetic-progression
//!   verification engine.
//! - [`radu`]: Radu's finite-check criterion with serialisable certificates.
//! - [`modforms`]: weights, characters, cusp orders, Hecke operators and
//!   divisibility density scans for eta-quotients.
//!
//! With the default `parallel` feature, independent work (claim groups, grid
//! points, convolution output blocks) is spread over a rayon pool. Every
//! parallel routine has a sequential twin selected by [`par::Exec`]; results
//! never depend on which one runs.

pub mod arith;
pub mod congruence;
mod error;
pub mod identities;
pub mod modforms;
pub mod optk;
pub mod par;
pub mod radu;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use series::{EtaExponentMap, ModSeries, TruncatedSeries};
