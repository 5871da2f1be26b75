//! Exact arithmetic in `Q(zeta_q)` and residues modulo powers of `pi = 1 - zeta_q`.

mod field;
mod mu;
mod padic;
mod resultant;

pub use field::{cyclo_add, cyclo_mul, cyclo_pow, Basis, CycloField, CycloNum};
pub use mu::{alpha, canonical_i, mu_element, truncated_log_mu};
pub(crate) use padic::is_qth_power_class_with;
pub use padic::{is_qth_power_class, qth_powers_mod_q2, reduce_mod_pi_power, PiAdicClass};
pub use resultant::{determinant, resultant};
