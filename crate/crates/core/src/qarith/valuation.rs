use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// An additive valuation value, with `Infinite` ordered above every integer.
///
/// `Infinite` is the valuation of zero, so a membership test such as
/// "lies in `q^2 Z_(q)`" is the single comparison `v >= Finite(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Multiplicity of `q` in a nonzero integer.
fn multiplicity(n: &BigInt, q: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut count = 0;
    loop {
        let (quot, rem) = n.div_rem(q);
        if !rem.is_zero() {
            return count;
        }
        n = quot;
        count += 1;
    }
}

pub fn int_valuation(n: &BigInt, q: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(multiplicity(n, &BigInt::from(q)))
}

/// `v_q(r)` normalized so that `v_q(q) = 1`.
pub fn q_valuation(r: &BigRational, q: u64) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    let q = BigInt::from(q);
    Valuation::Finite(multiplicity(r.numer(), &q) - multiplicity(r.denom(), &q))
}

/// Image of `r` in `Z / modulus`, or `None` when the denominator is not invertible.
pub fn rational_mod(r: &BigRational, modulus: &BigInt) -> Option<BigInt> {
    let inv = r.denom().mod_floor(modulus).modinv(modulus)?;
    Some((r.numer() * inv).mod_floor(modulus))
}
