//! Exact arithmetic for q-th power residue criteria on primes of the form
//! `p = m^(q-1) + m^(q-2) n + ... + n^(q-1)`.
//!
//! The crate is split into layers:
//!
//! * [`qarith`]: integers, rationals, q-adic valuations, primality and residue symbols.
//! * [`polycore`]: the polynomial `f_q`, the residue sets `S_q`/`T_q`, negative-index
//!   polylogarithms and the polynomial identities linking them.
//! * [`cyclo`]: exact arithmetic in `Q(zeta_q)`, expansions in powers of `pi = 1 - zeta_q`,
//!   residue classes modulo `pi^e` and the Kummer element `mu^(i)`.
//! * [`verify`]: prime search, per-witness equivalence records, classical cross-checks.
//! * [`cli`]: the `qresidue` command-line front end and its JSON report.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod polycore;
pub mod qarith;
pub mod verify;

pub use error::{Error, Result};
