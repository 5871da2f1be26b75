//! Integer and rational arithmetic around a fixed odd prime `q`.

mod primality;
mod residue;
mod valuation;

pub use primality::{is_prime, is_prime_u64, primality, Primality};
pub use residue::{qth_residue_symbol, ResidueSymbol};
pub use valuation::{int_valuation, q_valuation, rational_mod, Valuation};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

pub fn ensure_odd_prime(q: u64) -> Result<()> {
    if q > 2 && is_prime_u64(q) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(q))
    }
}

/// `a*`: the representative of `a^-1 mod q` in `[1, q-1]`.
pub fn mod_inverse_star(a: &BigInt, q: u64) -> Result<u64> {
    let qb = BigInt::from(q);
    a.mod_floor(&qb)
        .modinv(&qb)
        .and_then(|inv| inv.to_u64())
        .ok_or_else(|| Error::Divisible {
            value: a.clone(),
            modulus: qb,
        })
}

/// `a*` for a small nonzero residue, `q` prime.
pub(crate) fn inv_star_u64(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    // Fermat: a^(q-2).
    let mut acc = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// `sum_{i=0}^{q-1} m^i n^(q-1-i)`, which equals `Phi_q(n/m) m^(q-1)` for `m != 0`.
pub fn eval_phi_form(m: &BigInt, n: &BigInt, q: u64) -> BigInt {
    // s_k = sum_{i<=k} m^i n^(k-i) satisfies s_k = n s_(k-1) + m^k.
    let mut acc = BigInt::one();
    let mut m_pow = BigInt::one();
    for _ in 1..q {
        m_pow *= m;
        acc = acc * n + &m_pow;
    }
    acc
}

/// `c_q = sum_{j=1}^{q-1} j j*`.
pub fn c_q(q: u64) -> BigInt {
    (1..q).map(|j| BigInt::from(j * inv_star_u64(j, q))).sum()
}

/// Both sides of `a^((q-1)q/2) = (a/q)_2 mod q^2`, as residues in `[0, q^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticEulerCheck {
    #[serde(serialize_with = "crate::cli::report::bigint_str")]
    pub power: BigInt,
    pub legendre: i8,
    pub holds: bool,
}

/// Legendre symbol `(a/q)` via Euler's criterion; `0` when `q | a`.
pub fn legendre(a: &BigInt, q: u64) -> i8 {
    let qb = BigInt::from(q);
    let a = a.mod_floor(&qb);
    if a.is_zero() {
        return 0;
    }
    if a.modpow(&BigInt::from((q - 1) / 2), &qb).is_one() {
        1
    } else {
        -1
    }
}

pub fn quadratic_euler_check(a: &BigInt, q: u64) -> Result<QuadraticEulerCheck> {
    ensure_odd_prime(q)?;
    let legendre = match legendre(a, q) {
        0 => {
            return Err(Error::Divisible {
                value: a.clone(),
                modulus: q.into(),
            })
        }
        s => s,
    };
    let q2 = BigInt::from(q * q);
    let power = a.mod_floor(&q2).modpow(&BigInt::from((q - 1) * q / 2), &q2);
    let target = BigInt::from(legendre).mod_floor(&q2);
    Ok(QuadraticEulerCheck {
        holds: power == target,
        power,
        legendre,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

    #[test]
    fn inverse_star_examples() {
        assert_eq!(mod_inverse_star(&1.into(), 7), Ok(1));
        assert_eq!(mod_inverse_star(&2.into(), 5), Ok(3));
        assert_eq!(mod_inverse_star(&4.into(), 7), Ok(2));
        assert_eq!(mod_inverse_star(&(-1).into(), 7), Ok(6));
        assert!(mod_inverse_star(&14.into(), 7).is_err());
    }

    #[test]
    fn phi_form_examples() {
        let f = |m: i64, n: i64, q| eval_phi_form(&m.into(), &n.into(), q);
        assert_eq!(f(5, 4, 3), BigInt::from(25 + 20 + 16));
        assert_eq!(f(2, 1, 5), BigInt::from(16 + 8 + 4 + 2 + 1));
        for q in PRIMES {
            assert_eq!(f(1, 0, q), 1.into());
            assert_eq!(f(0, 1, q), 1.into());
            assert_eq!(f(1, 1, q), q.into());
        }
    }

    #[test]
    fn phi_form_direct_sum() {
        for q in [3u64, 5, 7] {
            for m in -6i64..=6 {
                for n in -6i64..=6 {
                    let direct: i64 = (0..q as u32)
                        .map(|i| m.pow(i) * n.pow(q as u32 - 1 - i))
                        .sum();
                    assert_eq!(eval_phi_form(&m.into(), &n.into(), q), direct.into());
                }
            }
        }
    }

    #[test]
    fn c_q_values() {
        assert_eq!(c_q(3), 5.into());
        assert_eq!(c_q(5), 29.into());
        for q in PRIMES {
            let direct: u64 = (1..q)
                .map(|j| j * (1..q).find(|k| j * k % q == 1).unwrap())
                .sum();
            assert_eq!(c_q(q), direct.into());
            assert_eq!(c_q(q).mod_floor(&BigInt::from(q)), BigInt::from(q - 1));
        }
    }

    #[test]
    fn quadratic_euler_examples() {
        let c = quadratic_euler_check(&2.into(), 5).unwrap();
        assert_eq!(c.power, 24.into());
        assert_eq!(c.legendre, -1);
        assert!(c.holds);
        assert!(quadratic_euler_check(&1.into(), 11).unwrap().holds);
        assert!(quadratic_euler_check(&10.into(), 5).is_err());
    }

    #[test]
    fn quadratic_euler_exhaustive() {
        for q in (3..100u64).filter(|&q| is_prime_u64(q)) {
            for a in (1..q * q).filter(|a| a % q != 0) {
                assert!(
                    quadratic_euler_check(&a.into(), q).unwrap().holds,
                    "a={a} q={q}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn symbol_invariant_under_qth_powers(b in 1i64..10_000, a in 1i64..10_000) {
            for (p, q) in [(61i64, 3u64), (31, 5), (43, 7), (10501, 7)] {
                if a % p == 0 || b % p == 0 { continue; }
                let bq = BigInt::from(b).pow(q as u32);
                let lhs = qth_residue_symbol(&(BigInt::from(a) * bq), &p.into(), q).unwrap();
                let rhs = qth_residue_symbol(&a.into(), &p.into(), q).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn inverse_star_involution(idx in 0usize..8, a in 1u64..1000) {
            let q = PRIMES[idx];
            prop_assume!(a % q != 0);
            let star = mod_inverse_star(&a.into(), q).unwrap();
            prop_assert!((1..q).contains(&star));
            prop_assert_eq!(mod_inverse_star(&star.into(), q).unwrap(), a % q);
        }

        #[test]
        fn valuation_additive(a in -10_000i64..10_000, b in 1i64..10_000,
                              c in -10_000i64..10_000, d in 1i64..10_000, idx in 0usize..8) {
            prop_assume!(a != 0 && c != 0);
            let q = PRIMES[idx];
            let r = num_rational::BigRational::new(a.into(), b.into());
            let s = num_rational::BigRational::new(c.into(), d.into());
            prop_assert_eq!(q_valuation(&(&r * &s), q), q_valuation(&r, q) + q_valuation(&s, q));
        }

        #[test]
        fn phi_form_symmetric_and_fermat(m in -200i64..200, n in -200i64..200, idx in 0usize..8) {
            let q = PRIMES[idx];
            let (m, n) = (BigInt::from(m), BigInt::from(n));
            let p = eval_phi_form(&m, &n, q);
            prop_assert_eq!(&p, &eval_phi_form(&n, &m, q));
            let qb = BigInt::from(q);
            let fermat = (&m - &n).pow(q as u32 - 1).mod_floor(&qb);
            prop_assert_eq!(p.mod_floor(&qb), fermat);
        }
    }
}
