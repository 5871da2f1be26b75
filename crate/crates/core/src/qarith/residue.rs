use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::primality::is_prime;
use crate::{Error, Result};

/// Value of a rational q-th power residue symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResidueSymbol {
    Minus,
    Plus,
}

impl ResidueSymbol {
    pub fn value(self) -> i8 {
        match self {
            ResidueSymbol::Plus => 1,
            ResidueSymbol::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == ResidueSymbol::Plus
    }
}

impl fmt::Display for ResidueSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidueSymbol::Plus => "+1",
            ResidueSymbol::Minus => "-1",
        })
    }
}

impl FromStr for ResidueSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(ResidueSymbol::Plus),
            "-1" | "-" => Ok(ResidueSymbol::Minus),
            other => Err(Error::InvalidArgument(format!(
                "expected +1 or -1, got {other:?}"
            ))),
        }
    }
}

impl Serialize for ResidueSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.value())
    }
}

/// `(a/p)_q`: `+1` iff `a^((p-1)/q) = 1 mod p`.
///
/// For `p = 1 mod q` this agrees with "a is congruent to a q-th power mod p",
/// since the multiplicative group mod p is cyclic of order divisible by q.
pub fn qth_residue_symbol(a: &BigInt, p: &BigInt, q: u64) -> Result<ResidueSymbol> {
    if !is_prime(&BigInt::from(q)) {
        return Err(Error::NotPrime(q.into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let qb = BigInt::from(q);
    if !p.mod_floor(&qb).is_one() {
        return Err(Error::NotOneModQ { p: p.clone(), q });
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Err(Error::Divisible {
            value: a,
            modulus: p.clone(),
        });
    }
    let exponent = (p - 1u32) / &qb;
    Ok(if a.modpow(&exponent, p).is_one() {
        ResidueSymbol::Plus
    } else {
        ResidueSymbol::Minus
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a: i64, p: i64, q: u64) -> Result<ResidueSymbol> {
        qth_residue_symbol(&a.into(), &p.into(), q)
    }

    #[test]
    fn examples() {
        assert_eq!(sym(3, 61, 3), Ok(ResidueSymbol::Plus));
        assert_eq!(sym(3, 7, 3), Ok(ResidueSymbol::Minus));
        for (p, q) in [(7, 3), (11, 5), (29, 7), (31, 5), (43, 7)] {
            assert_eq!(sym(1, p, q), Ok(ResidueSymbol::Plus));
        }
    }

    #[test]
    fn agrees_with_power_enumeration() {
        // Direct definition: a is a q-th power mod p.
        for (p, q) in [(7u64, 3u64), (13, 3), (31, 5), (41, 5), (43, 7), (71, 7)] {
            let powers: std::collections::BTreeSet<u64> = (1..p)
                .map(|b| (0..q).fold(1, |acc, _| acc * b % p))
                .collect();
            for a in 1..p {
                let expected = if powers.contains(&a) {
                    ResidueSymbol::Plus
                } else {
                    ResidueSymbol::Minus
                };
                assert_eq!(
                    sym(a as i64, p as i64, q),
                    Ok(expected),
                    "a={a} p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(sym(3, 9, 3), Err(Error::NotPrime(_))));
        assert!(matches!(sym(3, 11, 3), Err(Error::NotOneModQ { .. })));
        assert!(matches!(sym(61, 61, 3), Err(Error::Divisible { .. })));
        assert!(matches!(sym(2, 61, 4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn parse_filter() {
        assert_eq!("+1".parse::<ResidueSymbol>(), Ok(ResidueSymbol::Plus));
        assert_eq!("-1".parse::<ResidueSymbol>(), Ok(ResidueSymbol::Minus));
        assert!("0".parse::<ResidueSymbol>().is_err());
    }
}
