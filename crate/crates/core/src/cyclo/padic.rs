//! Canonical residues of `Z[zeta_q]` modulo `pi^e`, `e` in `{q, q+1}`.
//!
//! Writing `x = a_0 + a_1 pi + ... + a_{q-2} pi^{q-2}` with integer `a_k`:
//!
//! * mod `pi^q`: `a_0` mod `q^2`, every other `a_k` mod `q`;
//! * mod `pi^(q+1)`: `a_0` and `a_1` mod `q^2`, the rest mod `q`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{Basis, CycloField, CycloNum};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PiAdicClass {
    pub q: u64,
    pub e: u64,
    pub a0: u64,
    pub a1: u64,
    /// `a_2, ..., a_{q-2}`, each in `[0, q)`.
    pub rest: Vec<u64>,
}

fn check_exponent(q: u64, e: u64) -> Result<()> {
    if e == q || e == q + 1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "exponent must be {q} or {}, got {e}",
            q + 1
        )))
    }
}

impl PiAdicClass {
    /// Modulus applied to each pi-coordinate.
    fn moduli(q: u64, e: u64) -> Vec<u64> {
        (0..q - 1)
            .map(|k| match k {
                0 => q * q,
                1 if e == q + 1 => q * q,
                _ => q,
            })
            .collect()
    }

    fn from_digits(q: u64, e: u64, digits: &[u64]) -> Self {
        PiAdicClass {
            q,
            e,
            a0: digits[0],
            a1: digits[1],
            rest: digits[2..].to_vec(),
        }
    }

    pub fn digits(&self) -> Vec<u64> {
        let mut d = vec![self.a0, self.a1];
        d.extend(&self.rest);
        d
    }

    pub fn is_zero(&self) -> bool {
        self.digits().iter().all(|&d| d == 0)
    }

    /// The representative as an element of `Z[zeta_q]`.
    pub fn lift(&self) -> Result<CycloNum> {
        let field = CycloField::get(self.q)?;
        let coeffs = self
            .digits()
            .into_iter()
            .map(|d| BigRational::from_integer(d.into()))
            .collect();
        Ok(CycloNum::new(field, coeffs, Basis::Pi))
    }

    pub fn mul(&self, other: &PiAdicClass) -> Result<PiAdicClass> {
        if (self.q, self.e) != (other.q, other.e) {
            return Err(Error::InvalidArgument(
                "classes modulo different pi-powers".into(),
            ));
        }
        reduce_mod_pi_power(&(&self.lift()? * &other.lift()?), self.e)
    }

    pub fn pow(&self, k: u32) -> Result<PiAdicClass> {
        reduce_mod_pi_power(&self.lift()?.pow(k), self.e)
    }

    /// Every representative of `Z[zeta_q] / pi^e`, in lexicographic digit order.
    pub fn enumerate(q: u64, e: u64) -> Result<Vec<PiAdicClass>> {
        check_exponent(q, e)?;
        let moduli = Self::moduli(q, e);
        let total: u64 = moduli.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; moduli.len()];
        for _ in 0..total {
            out.push(Self::from_digits(q, e, &digits));
            for (d, &m) in digits.iter_mut().zip(&moduli).rev() {
                *d += 1;
                if *d < m {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

/// Canonical representative of an element of `Z[zeta_q]` modulo `pi^e`.
///
/// The result is certified: `v_pi(x - representative) >= e` via norms.
pub fn reduce_mod_pi_power(x: &CycloNum, e: u64) -> Result<PiAdicClass> {
    let q = x.q();
    check_exponent(q, e)?;
    if !x.is_integral() {
        return Err(Error::NonIntegral);
    }
    let pi = x.to_pi_basis();
    let digits: Vec<u64> = pi
        .coeffs()
        .iter()
        .zip(PiAdicClass::moduli(q, e))
        .map(|(c, m)| {
            c.to_integer()
                .mod_floor(&BigInt::from(m))
                .to_u64()
                .expect("below modulus")
        })
        .collect();
    let class = PiAdicClass::from_digits(q, e, &digits);
    let diff = &pi - &class.lift()?;
    if !diff.pi_order().at_least(e as i64) {
        return Err(Error::Invariant(format!(
            "representative of {x} mod pi^{e} is off by an element of valuation {}",
            diff.pi_order()
        )));
    }
    Ok(class)
}

/// `{b^q mod q^2 : b in Z}`.
pub fn qth_powers_mod_q2(q: u64) -> BTreeSet<u64> {
    let m = q * q;
    (0..m)
        .map(|b| (0..q).fold(1u64, |acc, _| acc * b % m))
        .collect()
}

/// Whether a class mod `pi^e` contains a q-th power of `Z[zeta_q]`.
pub fn is_qth_power_class(c: &PiAdicClass) -> bool {
    is_qth_power_class_with(c, &qth_powers_mod_q2(c.q))
}

pub(crate) fn is_qth_power_class_with(c: &PiAdicClass, powers: &BTreeSet<u64>) -> bool {
    let rest_zero = c.rest.iter().all(|&d| d == 0);
    let unit_branch = rest_zero && c.a1 == 0 && powers.contains(&c.a0);
    if c.e == c.q {
        return unit_branch;
    }
    // pi^(q+1): (b_0 + b_1 pi + ...)^q = -q b_1^q pi when q | b_0.
    let divisible_branch = rest_zero && c.a0 == 0 && c.a1.is_multiple_of(c.q);
    unit_branch || divisible_branch
}
