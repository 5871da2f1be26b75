use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::report::{bigint_pairs, bigint_str};
use crate::qarith::{
    ensure_odd_prime, eval_phi_form, is_prime_u64, primality, qth_residue_symbol, Primality,
    ResidueSymbol,
};
use crate::Result;

/// A prime `p = sum_i m^i n^(q-1-i)` together with every `(m, n)` found for it.
///
/// Witnesses are normalised to `m > 0` (the pair `(-m, -n)` gives the same value).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormPrime {
    pub q: u64,
    #[serde(serialize_with = "bigint_str")]
    pub p: BigInt,
    pub primality: Primality,
    pub symbol: ResidueSymbol,
    #[serde(serialize_with = "bigint_pairs")]
    pub witnesses: Vec<(BigInt, BigInt)>,
}

/// Largest `max(|m|, |n|)` that can produce a value `<= bound`.
///
/// `Phi_q(t) >= 1/2` on `[-1, 1]`, so `p >= max(|m|, |n|)^(q-1) / 2`.
pub fn search_radius(q: u64, bound: &BigInt) -> BigInt {
    let target: BigInt = bound * 2u32;
    let k = (q - 1) as u32;
    let mut r = target.nth_root(k);
    if Pow::pow(&r, k) < target {
        r += 1u32;
    }
    r + 1u32
}

/// `sum_i m^i n^(q-1-i)` in `i128`, or `None` on overflow.
fn eval_form_i128(m: i64, n: i64, q: u64) -> Option<i128> {
    let (m, n) = (m as i128, n as i128);
    let mut acc: i128 = 1;
    let mut m_pow: i128 = 1;
    for _ in 1..q {
        m_pow = m_pow.checked_mul(m)?;
        acc = acc.checked_mul(n)?.checked_add(m_pow)?;
    }
    Some(acc)
}

fn candidates_for_m(
    q: u64,
    m: i64,
    radius: i64,
    bound: &BigInt,
    bound_u: Option<u64>,
) -> Vec<(BigInt, i64, i64)> {
    let mut out = Vec::new();
    for n in -radius..=radius {
        if n == 0 || m.gcd(&n) != 1 {
            continue;
        }
        match (eval_form_i128(m, n, q), bound_u) {
            (Some(p), Some(b)) => {
                if p >= 2 && p <= b as i128 && p != q as i128 && is_prime_u64(p as u64) {
                    out.push((BigInt::from(p), m, n));
                }
            }
            _ => {
                let p = eval_phi_form(&m.into(), &n.into(), q);
                if p >= BigInt::from(2)
                    && &p <= bound
                    && p != BigInt::from(q)
                    && primality(&p).is_prime()
                {
                    out.push((p, m, n));
                }
            }
        }
    }
    out
}

/// Primes `2 <= p <= bound`, `p != q`, of the form `sum_i m^i n^(q-1-i)`, ascending.
///
/// With `symbol_filter` only primes whose symbol `(q/p)_q` matches are kept.
pub fn search_form_primes(
    q: u64,
    bound: &BigInt,
    symbol_filter: Option<ResidueSymbol>,
) -> Result<Vec<FormPrime>> {
    ensure_odd_prime(q)?;
    if bound < &BigInt::from(2) {
        return Ok(Vec::new());
    }
    let radius = search_radius(q, bound)
        .to_i64()
        .expect("search radius fits in i64");
    let bound_u = bound.to_u64();
    let mut hits: Vec<(BigInt, i64, i64)> = (1..=radius)
        .into_par_iter()
        .flat_map_iter(|m| candidates_for_m(q, m, radius, bound, bound_u))
        .collect();
    hits.sort();

    let qb = BigInt::from(q);
    let mut out: Vec<FormPrime> = Vec::new();
    for (p, m, n) in hits {
        match out.last_mut() {
            Some(last) if last.p == p => last.witnesses.push((m.into(), n.into())),
            _ => {
                let symbol = qth_residue_symbol(&qb, &p, q)?;
                let primality = primality(&p);
                out.push(FormPrime {
                    q,
                    p,
                    primality,
                    symbol,
                    witnesses: vec![(m.into(), n.into())],
                });
            }
        }
    }
    if let Some(s) = symbol_filter {
        out.retain(|fp| fp.symbol == s);
    }
    Ok(out)
}

/// Every `(m, n)` with `m > 0` representing `p`, by a direct bounded scan.
#[cfg(test)]
fn form_witnesses(q: u64, p: &BigInt) -> Vec<(BigInt, BigInt)> {
    let radius = search_radius(q, p).to_i64().expect("radius fits in i64");
    let mut out = Vec::new();
    for m in 1..=radius {
        for n in -radius..=radius {
            if &eval_phi_form(&m.into(), &n.into(), q) == p {
                out.push((m.into(), n.into()));
            }
        }
    }
    out
}
