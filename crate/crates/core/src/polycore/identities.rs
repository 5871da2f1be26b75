//! Congruence identities tying `f_q` to `Li_{1-q}` and the arithmetic sums behind them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::fq::{compute_sq, compute_tq, f_q_exact, f_q_mod, pair_weights, ProjResidue};
use super::poly::PolyExact;
use super::polylog::li_at_minus_x_over_one_minus_x;
use crate::qarith::{c_q, ensure_odd_prime};
use crate::{Error, Result};

/// `f_q(x) = c_q Li_{1-q}(-x/(1-x)) mod q^2`, coefficientwise.
pub fn verify_fq_li_congruence(q: u64) -> Result<bool> {
    let fq = f_q_exact(q)?;
    let li = li_at_minus_x_over_one_minus_x(q);
    let scaled = li.scale(&BigRational::from_integer(c_q(q)));
    Ok((&scaled - &fq).reduce_mod_q2(q)?.is_zero())
}

/// `f_q(1-x) + f_q(x) = 0 mod q^2` as a polynomial identity.
pub fn verify_fq_symmetry(q: u64) -> Result<bool> {
    let fq = f_q_exact(q)?;
    let reflected = fq.compose(&PolyExact::linear(1, -1));
    Ok((&reflected + &fq).reduce_mod_q2(q)?.is_zero())
}

/// `f_q(x) = x - x^q mod q`, coefficientwise.
pub fn verify_fq_fermat(q: u64) -> Result<bool> {
    let fq = f_q_exact(q)?;
    let fermat = &PolyExact::monomial(BigRational::from_integer(1.into()), 1)
        - &PolyExact::monomial(BigRational::from_integer(1.into()), q as usize);
    let diff = (&fq - &fermat).reduce_mod_q2(q)?;
    Ok(diff.coeffs().iter().all(|c| c % q == 0))
}

/// `S_q` is exactly the zero set of `f_q mod q^2` on `Z/q^2`.
pub fn verify_sq_zero_set(q: u64) -> Result<bool> {
    let sq = compute_sq(q)?;
    let fbar = f_q_mod(q)?;
    let zeros: Vec<u64> = (0..q * q).filter(|&a| fbar.eval(a) == 0).collect();
    let members: Vec<u64> = sq
        .members()
        .filter_map(|r| match r {
            ProjResidue::Finite(a) => Some(*a),
            ProjResidue::Infinity => None,
        })
        .collect();
    Ok(sq.len() == q as usize && members == zeros)
}

/// `0, 1, 1/2 mod q^2` lie in `S_q` and `0, -1 mod q^2, inf` lie in `T_q`.
pub fn verify_distinguished_members(q: u64) -> Result<bool> {
    let sq = compute_sq(q)?;
    let tq = compute_tq(q)?;
    let q2 = q * q;
    let half = q2.div_ceil(2);
    Ok([0, 1, half].iter().all(|&a| sq.contains_residue(a))
        && [0, q2 - 1].iter().all(|&a| tq.contains_residue(a))
        && tq.contains(ProjResidue::Infinity))
}

/// Lerch: `(k^q - k)/q = sum_{j=1}^{q-1} j^-1 floor(jk/q) mod q`.
pub fn lerch_check(q: u64, k: &BigInt) -> Result<bool> {
    ensure_odd_prime(q)?;
    let qb = BigInt::from(q);
    if k.is_multiple_of(&qb) {
        return Err(Error::Divisible {
            value: k.clone(),
            modulus: qb,
        });
    }
    let fermat_quotient = (k.pow(q as u32) - k) / &qb;
    let lhs = fermat_quotient.mod_floor(&qb);
    let rhs = (1..q)
        .map(|j| {
            let inv = BigInt::from(j).modinv(&qb).expect("q prime");
            inv * (k * j).div_floor(&qb)
        })
        .sum::<BigInt>()
        .mod_floor(&qb);
    Ok(lhs == rhs)
}

/// `sum_{jl = k mod q} j l = k^q c_q mod q^2`, left side by direct double loop.
pub fn jl_sum_check(q: u64, k: &BigInt) -> Result<bool> {
    ensure_odd_prime(q)?;
    let q2 = BigInt::from(q * q);
    let residue = k.mod_floor(&BigInt::from(q));
    let mut lhs = BigInt::zero();
    for j in 1..q {
        for l in 1..q {
            if BigInt::from(j * l % q) == residue {
                lhs += j * l;
            }
        }
    }
    let rhs = k.mod_floor(&q2).modpow(&BigInt::from(q), &q2) * c_q(q);
    Ok(lhs.mod_floor(&q2) == rhs.mod_floor(&q2))
}

/// The table of `jl_sum` values used by `f_q`, checked against the closed form.
pub fn pair_weights_match_closed_form(q: u64) -> Result<bool> {
    ensure_odd_prime(q)?;
    let weights = pair_weights(q);
    Ok((0..q).all(|k| {
        let k_big = BigInt::from(k);
        let q2 = BigInt::from(q * q);
        let closed = (k_big.modpow(&BigInt::from(q), &q2) * c_q(q)).mod_floor(&q2);
        BigInt::from(weights[k as usize]).mod_floor(&q2) == closed
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::is_prime_u64;

    #[test]
    fn fermat_zero_set_and_members() {
        for q in (3..=50u64).filter(|&q| is_prime_u64(q)) {
            assert!(verify_fq_fermat(q).unwrap(), "q = {q}");
            assert!(verify_sq_zero_set(q).unwrap(), "q = {q}");
            assert!(verify_distinguished_members(q).unwrap(), "q = {q}");
        }
    }

    fn odd_primes(limit: u64) -> impl Iterator<Item = u64> {
        (3..=limit).filter(|&q| is_prime_u64(q))
    }

    #[test]
    fn li_congruence() {
        for q in odd_primes(23) {
            assert_eq!(verify_fq_li_congruence(q), Ok(true), "q = {q}");
        }
    }

    #[test]
    fn symmetry() {
        for q in odd_primes(23) {
            assert_eq!(verify_fq_symmetry(q), Ok(true), "q = {q}");
        }
        // f_3(1) = -1 - 3 - 5 = -9.
        let f3 = f_q_exact(3).unwrap();
        assert_eq!(
            f3.eval(&BigRational::from_integer(1.into())),
            BigRational::from_integer((-9).into())
        );
    }

    #[test]
    fn lerch_examples() {
        assert_eq!(lerch_check(5, &1.into()), Ok(true));
        assert_eq!(lerch_check(5, &2.into()), Ok(true));
        assert_eq!(lerch_check(7, &3.into()), Ok(true));
        assert!(lerch_check(7, &14.into()).is_err());
    }

    #[test]
    fn lerch_and_jl_exhaustive() {
        for q in odd_primes(100) {
            for k in 1..q {
                assert_eq!(lerch_check(q, &k.into()), Ok(true), "lerch q={q} k={k}");
            }
            for k in 0..q {
                assert_eq!(jl_sum_check(q, &k.into()), Ok(true), "jl q={q} k={k}");
            }
            assert_eq!(pair_weights_match_closed_form(q), Ok(true));
        }
    }

    #[test]
    fn lerch_negative_and_large_k() {
        for k in [-1i64, -2, -13, 22, 101] {
            assert_eq!(lerch_check(5, &k.into()), Ok(true), "k = {k}");
            assert_eq!(jl_sum_check(7, &k.into()), Ok(true), "k = {k}");
        }
    }

    #[test]
    fn jl_examples() {
        assert_eq!(jl_sum_check(3, &0.into()), Ok(true));
        assert_eq!(jl_sum_check(3, &1.into()), Ok(true));
        assert_eq!(jl_sum_check(5, &2.into()), Ok(true));
    }
}
