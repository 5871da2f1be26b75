use std::collections::BTreeSet;

use crate::cyclo::{is_qth_power_class, PiAdicClass};
use crate::qarith::ensure_odd_prime;
use crate::Result;

/// `{x^q mod pi^e}` over every representative `x` of `Z[zeta_q] / pi^e`.
pub fn brute_force_qth_powers(q: u64, e: u64) -> Result<BTreeSet<PiAdicClass>> {
    ensure_odd_prime(q)?;
    PiAdicClass::enumerate(q, e)?
        .iter()
        .map(|c| c.pow(q as u32))
        .collect()
}

/// The classes accepted by [`is_qth_power_class`].
pub fn accepted_qth_power_classes(q: u64, e: u64) -> Result<BTreeSet<PiAdicClass>> {
    Ok(PiAdicClass::enumerate(q, e)?
        .into_iter()
        .filter(is_qth_power_class)
        .collect())
}
