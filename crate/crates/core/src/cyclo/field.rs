use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::resultant::resultant;
use crate::polycore::binomial;
use crate::qarith::{ensure_odd_prime, int_valuation, q_valuation, Valuation};
use crate::{Error, Result};

/// Per-`q` tables for `Q(zeta_q)`, immutable once built.
#[derive(Debug)]
pub struct CycloField {
    q: u64,
    /// `Phi_q(x) = 1 + x + ... + x^(q-1)`.
    phi: Vec<BigInt>,
    /// `g(y) = Phi_q(1 - y)`, the minimal polynomial of `pi = 1 - zeta`; monic.
    pi_minpoly: Vec<BigInt>,
    /// `basis_change[j][k] = (-1)^j C(k, j)`: column `k` expands `(1 - y)^k`.
    /// It maps zeta-coordinates to pi-coordinates and is its own inverse.
    basis_change: Vec<Vec<BigInt>>,
}

impl CycloField {
    fn build(q: u64) -> Self {
        let d = (q - 1) as usize;
        let phi = vec![BigInt::one(); q as usize];
        let mut pi_minpoly = vec![BigInt::zero(); q as usize];
        for (k, c) in phi.iter().enumerate() {
            for (j, slot) in pi_minpoly.iter_mut().enumerate().take(k + 1) {
                let b = binomial(k as u64, j as u64) * c;
                *slot += if j % 2 == 0 { b } else { -b };
            }
        }
        let basis_change = (0..d)
            .map(|j| {
                (0..d)
                    .map(|k| {
                        let b = binomial(k as u64, j as u64);
                        if j % 2 == 0 {
                            b
                        } else {
                            -b
                        }
                    })
                    .collect()
            })
            .collect();
        CycloField {
            q,
            phi,
            pi_minpoly,
            basis_change,
        }
    }

    /// Shared tables for `q`, built on first use.
    pub fn get(q: u64) -> Result<Arc<CycloField>> {
        ensure_odd_prime(q)?;
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("cyclotomic table cache poisoned");
        Ok(guard
            .entry(q)
            .or_insert_with(|| Arc::new(CycloField::build(q)))
            .clone())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q - 1`, the degree of the field and the length of every coordinate vector.
    pub fn degree(&self) -> usize {
        (self.q - 1) as usize
    }

    pub fn pi_minpoly(&self) -> &[BigInt] {
        &self.pi_minpoly
    }

    fn change_basis(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        self.basis_change
            .iter()
            .map(|row| {
                row.iter()
                    .zip(coeffs)
                    .filter(|(m, _)| !m.is_zero())
                    .map(|(m, c)| c * m)
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coordinates on `1, zeta, ..., zeta^(q-2)`.
    Zeta,
    /// Coordinates on `1, pi, ..., pi^(q-2)` with `pi = 1 - zeta`.
    Pi,
}

/// An element of `Q(zeta_q)` with exact rational coordinates in one of two bases.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
    basis: Basis,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloNum")
            .field("q", &self.field.q)
            .field("basis", &self.basis)
            .field(
                "coeffs",
                &self
                    .coeffs
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.q != other.field.q {
            return false;
        }
        if self.basis == other.basis {
            self.coeffs == other.coeffs
        } else {
            self.to_zeta_basis().coeffs == other.to_zeta_basis().coeffs
        }
    }
}

impl Eq for CycloNum {}

/// Product of two coordinate vectors as polynomials, folded by a monic relation
/// `y^d = -(r_0 + ... + r_{d-1} y^{d-1})`.
fn mul_reduce(a: &[BigRational], b: &[BigRational], relation: &[BigInt]) -> Vec<BigRational> {
    let d = a.len();
    let mut prod = vec![BigRational::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    reduce_by(prod, relation, d)
}

fn reduce_by(mut poly: Vec<BigRational>, relation: &[BigInt], d: usize) -> Vec<BigRational> {
    while poly.len() > d {
        let top = poly.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = poly.len() - d;
        for (k, r) in relation.iter().take(d).enumerate() {
            if !r.is_zero() {
                poly[shift + k] -= &top * r;
            }
        }
    }
    poly.resize(d, BigRational::zero());
    poly
}

impl CycloNum {
    pub fn new(field: Arc<CycloField>, coeffs: Vec<BigRational>, basis: Basis) -> Self {
        let d = field.degree();
        let relation = match basis {
            Basis::Zeta => field.phi.clone(),
            Basis::Pi => field.pi_minpoly.clone(),
        };
        let coeffs = reduce_by(coeffs, &relation, d);
        CycloNum {
            field,
            coeffs,
            basis,
        }
    }

    pub fn from_zeta_coeffs(field: Arc<CycloField>, coeffs: Vec<BigRational>) -> Self {
        Self::new(field, coeffs, Basis::Zeta)
    }

    pub fn from_int_zeta_coeffs(field: Arc<CycloField>, coeffs: &[i64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(field, coeffs, Basis::Zeta)
    }

    pub fn from_rational(field: Arc<CycloField>, r: BigRational) -> Self {
        Self::new(field, vec![r], Basis::Zeta)
    }

    pub fn from_int(field: Arc<CycloField>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: Arc<CycloField>) -> Self {
        Self::new(field, Vec::new(), Basis::Zeta)
    }

    pub fn one(field: Arc<CycloField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(field: Arc<CycloField>, k: i64) -> Self {
        let q = field.q as i64;
        let k = k.rem_euclid(q) as usize;
        let mut coeffs = vec![BigRational::zero(); q as usize];
        coeffs[k] = BigRational::one();
        Self::new(field, coeffs, Basis::Zeta)
    }

    /// `pi^k = (1 - zeta)^k`.
    pub fn pi_pow(field: Arc<CycloField>, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Self::new(field, coeffs, Basis::Pi)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Membership in `Z[zeta_q]`; both bases are `Z`-bases, so this is basis-independent.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_pi_basis(&self) -> CycloNum {
        match self.basis {
            Basis::Pi => self.clone(),
            Basis::Zeta => CycloNum {
                field: self.field.clone(),
                coeffs: self.field.change_basis(&self.coeffs),
                basis: Basis::Pi,
            },
        }
    }

    pub fn to_zeta_basis(&self) -> CycloNum {
        match self.basis {
            Basis::Zeta => self.clone(),
            Basis::Pi => CycloNum {
                field: self.field.clone(),
                coeffs: self.field.change_basis(&self.coeffs),
                basis: Basis::Zeta,
            },
        }
    }

    fn in_basis(&self, basis: Basis) -> CycloNum {
        match basis {
            Basis::Zeta => self.to_zeta_basis(),
            Basis::Pi => self.to_pi_basis(),
        }
    }

    fn ensure_same_field(&self, other: &CycloNum) -> Result<()> {
        if self.field.q == other.field.q {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.q,
                right: other.field.q,
            })
        }
    }

    pub fn checked_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.ensure_same_field(other)?;
        let other = other.in_basis(self.basis);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs,
            basis: self.basis,
        })
    }

    pub fn checked_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.checked_add(&-other)
    }

    /// Multiplication in the basis of `self`, folding by `Phi_q` (zeta basis) or
    /// by `g(y) = Phi_q(1 - y)` (pi basis).
    pub fn checked_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.ensure_same_field(other)?;
        let other = other.in_basis(self.basis);
        let relation = match self.basis {
            Basis::Zeta => &self.field.phi,
            Basis::Pi => &self.field.pi_minpoly,
        };
        let coeffs = mul_reduce(&self.coeffs, &other.coeffs, relation);
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs,
            basis: self.basis,
        })
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut acc = CycloNum::one(self.field.clone()).in_basis(self.basis);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            basis: self.basis,
        }
    }

    /// Zeta-coordinates scaled to integers: `(y, D)` with `self = y / D`, `D > 0`.
    fn cleared(&self) -> (Vec<BigInt>, BigInt) {
        let z = self.to_zeta_basis();
        let denom = z
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = z
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (ints, denom)
    }

    /// `N(self) = Res(Phi_q, representing polynomial)`.
    pub fn norm(&self) -> BigRational {
        let (mut ints, denom) = self.cleared();
        while ints.last().is_some_and(Zero::is_zero) {
            ints.pop();
        }
        if ints.is_empty() {
            return BigRational::zero();
        }
        let num = resultant(&self.field.phi, &ints);
        BigRational::new(num, denom.pow(self.field.degree() as u32))
    }

    /// `v_pi(self)` with `v_pi(1 - zeta) = 1`, computed as `v_q(N(self))`.
    pub fn pi_valuation(&self) -> Result<i64> {
        match self.pi_order() {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => Err(Error::Zero),
        }
    }

    /// As [`CycloNum::pi_valuation`] but total: zero has order `Infinite`.
    pub fn pi_order(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let (mut ints, denom) = self.cleared();
        while ints.last().is_some_and(Zero::is_zero) {
            ints.pop();
        }
        let q = self.field.q;
        let norm_val = int_valuation(&resultant(&self.field.phi, &ints), q);
        let denom_val = int_valuation(&denom, q);
        match (norm_val, denom_val) {
            (Valuation::Finite(n), Valuation::Finite(d)) => {
                Valuation::Finite(n - (q as i64 - 1) * d)
            }
            _ => unreachable!("nonzero element has nonzero norm"),
        }
    }

    /// `v_pi` from pi-coordinates: `min_k ((q-1) v_q(a_k) + k)`. The terms are
    /// pairwise distinct mod `q - 1`, so the minimum is attained once.
    pub fn pi_order_from_digits(&self) -> Valuation {
        let q = self.field.q;
        self.to_pi_basis()
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| match q_valuation(a, q) {
                Valuation::Finite(v) => Valuation::Finite((q as i64 - 1) * v + k as i64),
                Valuation::Infinite => Valuation::Infinite,
            })
            .min()
            .unwrap_or(Valuation::Infinite)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self.basis {
            Basis::Zeta => "z",
            Basis::Pi => "pi",
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (1, true) => write!(f, "{sign}{symbol}")?,
                (1, false) => write!(f, "{sign}{mag}*{symbol}")?,
                (_, true) => write!(f, "{sign}{symbol}^{k}")?,
                (_, false) => write!(f, "{sign}{mag}*{symbol}^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;

    /// Panics if the operands live in different fields; see [`CycloNum::checked_add`].
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.checked_add(rhs).expect("operands share q")
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;

    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.checked_sub(rhs).expect("operands share q")
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;

    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.checked_mul(rhs).expect("operands share q")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            basis: self.basis,
        }
    }
}

pub fn cyclo_add(x: &CycloNum, y: &CycloNum) -> Result<CycloNum> {
    x.checked_add(y)
}

pub fn cyclo_mul(x: &CycloNum, y: &CycloNum) -> Result<CycloNum> {
    x.checked_mul(y)
}

pub fn cyclo_pow(x: &CycloNum, e: u32) -> CycloNum {
    x.pow(e)
}
