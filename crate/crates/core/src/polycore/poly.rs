use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qarith::{q_valuation, rational_mod, Valuation};
use crate::{Error, Result};

/// Dense polynomial over `Q`, coefficients indexed by degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyExact {
    coeffs: Vec<BigRational>,
}

impl PolyExact {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyExact { coeffs }
    }

    pub fn from_ints<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        PolyExact { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_ints([a, b])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs
            .get(degree)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is not an integer.
    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
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

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &PolyExact) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * other) + &Self::constant(c.clone())
        })
    }

    /// True when every coefficient lies in `Z_(q)`.
    pub fn is_q_integral(&self, q: u64) -> bool {
        self.coeffs
            .iter()
            .all(|c| q_valuation(c, q) >= Valuation::Finite(0))
    }

    /// Coefficientwise reduction into `Z/q^2`, inverting denominators.
    pub fn reduce_mod_q2(&self, q: u64) -> Result<PolyQ2> {
        let modulus = BigInt::from(q * q);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                rational_mod(c, &modulus)
                    .and_then(|r| r.to_u64())
                    .ok_or_else(|| Error::NegativeValuation {
                        value: c.clone(),
                        q,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyQ2::new(q, coeffs))
    }
}

impl Add for &PolyExact {
    type Output = PolyExact;

    fn add(self, rhs: &PolyExact) -> PolyExact {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyExact::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyExact {
    type Output = PolyExact;

    fn sub(self, rhs: &PolyExact) -> PolyExact {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyExact::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &PolyExact {
    type Output = PolyExact;

    fn neg(self) -> PolyExact {
        PolyExact::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyExact {
    type Output = PolyExact;

    fn mul(self, rhs: &PolyExact) -> PolyExact {
        if self.is_zero() || rhs.is_zero() {
            return PolyExact::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyExact::new(out)
    }
}

/// Renders terms from the top degree down, e.g. `8x^3 + 6x^2 + 4x`.
fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, T, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (deg, magnitude, negative) in terms {
        let sign = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        let mag = magnitude.to_string();
        let mag = if mag == "1" && deg > 0 {
            String::new()
        } else {
            mag
        };
        match deg {
            0 => write!(f, "{sign}{mag}")?,
            1 => write!(f, "{sign}{mag}x")?,
            _ => write!(f, "{sign}{mag}x^{deg}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for PolyExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, c.abs(), c.is_negative()));
        write_terms(f, terms)
    }
}

/// Dense polynomial over `Z/q^2`, residues in `[0, q^2)`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyQ2 {
    q: u64,
    coeffs: Vec<u64>,
}

impl PolyQ2 {
    pub fn new(q: u64, coeffs: Vec<u64>) -> Self {
        let m = q * q;
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % m).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyQ2 { q, coeffs }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.q * self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus() as u128;
        let x = x as u128 % m;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x + c as u128) % m) as u64
    }
}

impl fmt::Display for PolyQ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (d, c, false));
        write_terms(f, terms)
    }
}

/// `C(n, k)` as an exact integer; zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
