use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::qarith::{
    ensure_odd_prime, eval_phi_form, is_prime, is_prime_u64, qth_residue_symbol, ResidueSymbol,
};
use crate::{Error, Result};

fn require_prime_one_mod(p: u64, q: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    if p % q != 1 {
        return Err(Error::NotOneModQ { p: p.into(), q });
    }
    Ok(())
}

fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// `(m, n)` from `p = m^2 + mn + n^2` and the `(L, M)` it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicWitness {
    pub m: i64,
    pub n: i64,
    pub l: i64,
    pub big_m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicCheck {
    pub p: u64,
    pub symbol: ResidueSymbol,
    /// Every `(L, M)` with `L, M >= 0` and `4p = L^2 + 27 M^2`.
    pub representations: Vec<(i64, i64)>,
    pub witnesses: Vec<CubicWitness>,
    pub holds: bool,
}

/// All `(L, M)`, `L, M >= 0`, with `4p = L^2 + 27 M^2`.
pub fn cubic_representations(p: u64) -> Vec<(i64, i64)> {
    let four_p = 4 * p as i64;
    (0..)
        .take_while(|&m: &i64| 27 * m * m <= four_p)
        .filter_map(|m| exact_sqrt(four_p - 27 * m * m).map(|l| (l, m)))
        .collect()
}

/// All `(m, n)` with `m^2 + mn + n^2 = p`.
fn cubic_form_witnesses(p: u64) -> Vec<(i64, i64)> {
    let p = p as i64;
    let mut out = Vec::new();
    let mut n: i64 = 0;
    while 3 * n * n <= 4 * p {
        for n in if n == 0 { vec![0] } else { vec![n, -n] } {
            if let Some(s) = exact_sqrt(4 * p - 3 * n * n) {
                for num in [-n + s, -n - s] {
                    if num % 2 == 0 {
                        out.push((num / 2, n));
                    }
                }
            }
        }
        n += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// The `(L, M)` attached to a witness according to which of `m`, `n`, `m + n` is divisible by 3.
fn cubic_correspondence(m: i64, n: i64) -> Option<(i64, i64)> {
    if m % 3 == 0 {
        Some((m + 2 * n, m / 3))
    } else if n % 3 == 0 {
        Some((2 * m + n, n / 3))
    } else if (m + n) % 3 == 0 {
        Some((m - n, (m + n) / 3))
    } else {
        None
    }
}

pub fn cubic_check(p: u64) -> Result<CubicCheck> {
    require_prime_one_mod(p, 3)?;
    let symbol = qth_residue_symbol(&3.into(), &p.into(), 3)?;
    let plus = symbol.is_plus();
    let representations = cubic_representations(p);
    if representations.is_empty() {
        return Err(Error::NoRepresentation {
            what: "4p = L^2 + 27M^2",
            p: p.into(),
        });
    }
    let mut holds = representations.iter().all(|&(_, m)| (m % 3 == 0) == plus);

    let mut witnesses = Vec::new();
    for (m, n) in cubic_form_witnesses(p) {
        match cubic_correspondence(m, n) {
            Some((l, big_m)) => {
                holds &= l * l + 27 * big_m * big_m == 4 * p as i64;
                holds &= (big_m % 3 == 0) == plus;
                // M = 0 mod 3 exactly when -n/(m-n) is 0, 1 or 5 mod 9.
                let d = (m - n).rem_euclid(9);
                let inv = (1..9).find(|&x| d * x % 9 == 1);
                match inv {
                    Some(inv) => {
                        let a = (-n * inv).rem_euclid(9);
                        holds &= [0, 1, 5].contains(&a) == (big_m % 3 == 0);
                    }
                    None => holds = false,
                }
                witnesses.push(CubicWitness { m, n, l, big_m });
            }
            None => holds = false,
        }
    }
    if witnesses.is_empty() {
        return Err(Error::NoRepresentation {
            what: "p = m^2 + mn + n^2",
            p: p.into(),
        });
    }
    Ok(CubicCheck {
        p,
        symbol,
        representations,
        witnesses,
        holds,
    })
}

/// `(M = 0 mod 3) <=> (3/p)_3 = +1` for every representation `4p = L^2 + 27M^2`.
pub fn euler_cubic_crosscheck(p: u64) -> Result<bool> {
    Ok(cubic_check(p)?.holds)
}

/// A solution of `16p = x^2 + 50u^2 + 50v^2 + 125w^2`, `xw = v^2 - 4uv - u^2`, `x = 1 mod 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QuinticRep {
    pub x: i64,
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuinticCheck {
    pub p: u64,
    pub symbol: ResidueSymbol,
    pub representations: Vec<QuinticRep>,
    pub holds: bool,
}

pub fn quintic_representations(p: u64) -> Vec<QuinticRep> {
    let target = 16 * p as i64;
    let mut out = Vec::new();
    let wmax = (target / 125).sqrt();
    for w in -wmax..=wmax {
        let rest_w = target - 125 * w * w;
        let umax = (rest_w / 50).sqrt();
        for u in -umax..=umax {
            let rest_u = rest_w - 50 * u * u;
            let vmax = (rest_u / 50).sqrt();
            for v in -vmax..=vmax {
                let rest_v = rest_u - 50 * v * v;
                let rhs = v * v - 4 * u * v - u * u;
                let xs: Vec<i64> = if w == 0 {
                    if rhs != 0 {
                        continue;
                    }
                    match exact_sqrt(rest_v) {
                        Some(r) => vec![r, -r],
                        None => continue,
                    }
                } else {
                    if rhs % w != 0 {
                        continue;
                    }
                    vec![rhs / w]
                };
                for x in xs {
                    if x.rem_euclid(5) == 1 && x * x == rest_v {
                        out.push(QuinticRep { x, u, v, w });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn quintic_check(p: u64) -> Result<QuinticCheck> {
    require_prime_one_mod(p, 5)?;
    let symbol = qth_residue_symbol(&5.into(), &p.into(), 5)?;
    let representations = quintic_representations(p);
    if representations.is_empty() {
        return Err(Error::NoRepresentation {
            what: "16p = x^2 + 50u^2 + 50v^2 + 125w^2",
            p: p.into(),
        });
    }
    let holds = representations
        .iter()
        .all(|r| ((r.u - 2 * r.v).rem_euclid(5) == 0) == symbol.is_plus());
    Ok(QuinticCheck {
        p,
        symbol,
        representations,
        holds,
    })
}

/// `(u = 2v mod 5) <=> (5/p)_5 = +1` for every representation found.
pub fn quintic_crosscheck(p: u64) -> Result<bool> {
    Ok(quintic_check(p)?.holds)
}

/// `sum_i m^i n^(q-1-i) = (m-n)^(q-1) mod q`; for a prime value other than `q`
/// also `q` does not divide `m - n` and the value is `1 mod q`.
pub fn form_congruence_check(q: u64, m: &BigInt, n: &BigInt) -> Result<bool> {
    ensure_odd_prime(q)?;
    let qb = BigInt::from(q);
    let p = eval_phi_form(m, n, q);
    let diff = m - n;
    let rhs: BigInt = Pow::pow(&diff, (q - 1) as u32);
    let mut ok = (&p - rhs).is_multiple_of(&qb);
    if p != qb && is_prime(&p) {
        ok &= !diff.mod_floor(&qb).is_zero();
        ok &= p.mod_floor(&qb) == BigInt::from(1);
    }
    Ok(ok)
}
