//! The Kummer element `mu^(i) = zeta^i prod_j (m - n zeta^j)^(j*)` and its
//! truncated q-adic logarithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::{CycloField, CycloNum};
use crate::qarith::inv_star_u64;
use crate::{Error, Result};

pub fn mu_element(q: u64, m: &BigInt, n: &BigInt, i: u64) -> Result<CycloNum> {
    let field = CycloField::get(q)?;
    if i >= q {
        return Err(Error::InvalidArgument(format!("i = {i} outside [0, {q})")));
    }
    let mut acc = CycloNum::zeta_pow(field.clone(), i as i64);
    for j in 1..q {
        let mut coeffs = vec![BigRational::zero(); q as usize];
        coeffs[0] = BigRational::from_integer(m.clone());
        coeffs[j as usize] = BigRational::from_integer(-n);
        let factor = CycloNum::from_zeta_coeffs(field.clone(), coeffs);
        acc = &acc * &factor.pow(inv_star_u64(j, q) as u32);
    }
    Ok(acc)
}

/// The `i` in `[0, q)` with `i = -n/(m-n) mod q`.
pub fn canonical_i(q: u64, m: &BigInt, n: &BigInt) -> Result<u64> {
    let qb = BigInt::from(q);
    let diff = m - n;
    let inv = diff
        .mod_floor(&qb)
        .modinv(&qb)
        .ok_or_else(|| Error::Divisible {
            value: diff.clone(),
            modulus: qb.clone(),
        })?;
    Ok((-n * inv).mod_floor(&qb).to_u64().expect("residue below q"))
}

/// `alpha = -n/(m-n)`.
pub fn alpha(m: &BigInt, n: &BigInt) -> Result<BigRational> {
    let diff = m - n;
    if diff.is_zero() {
        return Err(Error::InvalidArgument("m = n".into()));
    }
    Ok(BigRational::new(-n, diff))
}

/// `sum_{j=1}^{q-1} sum_{t=1}^{q} -j* (alpha (1 - zeta^j))^t / t`.
///
/// This truncation of `sum_j j* log(1 - alpha(1 - zeta^j))` agrees with the
/// q-adic logarithm of `mu^(i)` modulo `pi^(q+1)`.
pub fn truncated_log_mu(q: u64, m: &BigInt, n: &BigInt, i: u64) -> Result<CycloNum> {
    let field = CycloField::get(q)?;
    let expected = canonical_i(q, m, n)?;
    if i != expected {
        return Err(Error::InvalidArgument(format!(
            "i = {i} but -n/(m-n) = {expected} mod {q}"
        )));
    }
    let alpha = alpha(m, n)?;
    let one = CycloNum::one(field.clone());
    let mut total = CycloNum::zero(field.clone());
    for j in 1..q {
        let base = (&one - &CycloNum::zeta_pow(field.clone(), j as i64)).scale(&alpha);
        let weight = -BigRational::from_integer(inv_star_u64(j, q).into());
        let mut power = one.clone();
        for t in 1..=q {
            power = &power * &base;
            let c = &weight / BigRational::from_integer(t.into());
            total = &total + &power.scale(&c);
        }
    }
    Ok(total)
}
