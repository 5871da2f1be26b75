//! Prime search over the special form, per-witness equivalence records,
//! brute-force oracles and the classical cubic and quintic cross-checks.

mod brute;
mod crosscheck;
mod equivalence;
mod search;
mod sweep;

pub use brute::{accepted_qth_power_classes, brute_force_qth_powers};
pub use crosscheck::{
    cubic_check, cubic_representations, euler_cubic_crosscheck, form_congruence_check,
    quintic_check, quintic_crosscheck, quintic_representations, CubicCheck, CubicWitness,
    QuinticCheck, QuinticRep,
};
pub use equivalence::{
    check_equivalence, check_equivalence_with, log_check, log_check_with, mu_mod_pi_squared_check,
    mu_report, pi_coefficients, EquivalenceRecord, LogCheck, MuReport, QContext,
};
pub use search::{search_form_primes, search_radius, FormPrime};
pub use sweep::{sweep_equivalences, Counterexample, PrimeSummary, SweepReport};
