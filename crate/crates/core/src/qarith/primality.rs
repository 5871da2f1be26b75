//! Primality testing.
//!
//! Below `2^64` the answer is exact: strong probable-prime tests to the first
//! twelve prime bases have no common pseudoprime under `3.3 * 10^24`. Above
//! that, Baillie-PSW (strong base-2 test plus strong Lucas test with
//! Selfridge parameters) is used and the result is reported as probable.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Composite,
    Prime,
    /// Passed Baillie-PSW; no counterexample is known but none is excluded.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        self != Primality::Composite
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let mut x = pow_mod(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    SMALL_PRIMES
        .iter()
        .all(|&b| strong_probable_prime_u64(n, b))
}

fn strong_probable_prime_base2(n: &BigInt) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let mut x = BigInt::from(2u32).modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    let h: BigInt = x >> 1;
    h.mod_floor(n)
}

fn strong_lucas_probable_prime(n: &BigInt) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.abs() != *n => return false,
            _ => {}
        }
        d = if d.is_positive() {
            -(d + 2u32)
        } else {
            -d + 2u32
        };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / 4u32;

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().expect("n > 1");
    let k = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(n);
    for i in (0..k.bits() - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk - &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let next_u = half_mod(&p * &u + &v, n);
            let next_v = half_mod(&d * &u + &p * &v, n);
            u = next_u;
            v = next_v;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}

/// Baillie-PSW on an odd `n > 37` with no small factors.
fn baillie_psw(n: &BigInt) -> bool {
    strong_probable_prime_base2(n) && strong_lucas_probable_prime(n)
}

pub fn primality(n: &BigInt) -> Primality {
    if n.sign() != Sign::Plus {
        return Primality::Composite;
    }
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    if baillie_psw(n) {
        Primality::ProbablePrime
    } else {
        Primality::Composite
    }
}

pub fn is_prime(n: &BigInt) -> bool {
    primality(n).is_prime()
}
