//! Negative-index polylogarithms `Li_{-s}(x) = (x d/dx)^s x/(1-x)` and the
//! surjection-count polynomials `F_s`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::poly::{binomial, PolyExact};
use crate::{Error, Result};

/// `numerator(x) / (1 - x)^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    numerator: PolyExact,
    d: u32,
}

impl RatFunc {
    pub fn new(numerator: PolyExact, d: u32) -> Self {
        RatFunc { numerator, d }
    }

    pub fn numerator(&self) -> &PolyExact {
        &self.numerator
    }

    /// Exponent of `(1 - x)` in the denominator.
    pub fn exponent(&self) -> u32 {
        self.d
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let one_minus = BigRational::one() - x;
        if one_minus.is_zero() {
            return Err(Error::Pole(x.clone()));
        }
        Ok(self.numerator.eval(x) / Pow::pow(one_minus, self.d))
    }

    /// `numerator(z) (1-x)^(-d)` evaluated at `z = g(x)` where `1 - g(x) = 1/h(x)`,
    /// returned as the polynomial `sum_k N_k g_num^k h^(d-k)`.
    ///
    /// `g = g_num / h` must have `h - g_num = 1`, so that `(1 - z)^-d = h^d`.
    fn substitute_mobius(&self, g_num: &PolyExact, h: &PolyExact) -> PolyExact {
        let deg = self.numerator.degree().unwrap_or(0) as u32;
        assert!(
            deg <= self.d,
            "numerator degree exceeds denominator exponent"
        );
        self.numerator
            .coeffs()
            .iter()
            .enumerate()
            .fold(PolyExact::zero(), |acc, (k, c)| {
                let term = &g_num.pow(k as u32) * &h.pow(self.d - k as u32);
                &acc + &term.scale(c)
            })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(1-x)^{}", self.numerator, self.d)
    }
}

/// `Li_{-s}` as an exact rational function.
///
/// Applying `x d/dx` to `N/(1-x)^d` gives `(x(1-x)N' + d x N)/(1-x)^(d+1)`.
pub fn polylog_neg(s: u32) -> RatFunc {
    let x = PolyExact::linear(0, 1);
    let x_one_minus_x = PolyExact::from_ints([0, 1, -1]);
    let mut num = x.clone();
    for d in 1..=s {
        let lhs = &x_one_minus_x * &num.derivative();
        let rhs = (&x * &num).scale(&BigRational::from_integer(d.into()));
        num = &lhs + &rhs;
    }
    RatFunc::new(num, s + 1)
}

pub fn eval_polylog_neg(s: u32, x: &BigRational) -> Result<BigRational> {
    polylog_neg(s).eval(x)
}

/// `F_s(x) = sum_t (sum_k (-1)^(t-k) C(t,k) k^s) x^t`.
pub fn f_s_poly(s: u32) -> PolyExact {
    let coeffs = (0..=s as u64).map(|t| {
        (0..=t)
            .map(|k| {
                let term = binomial(t, k) * Pow::pow(BigInt::from(k), s);
                if (t - k) % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum::<BigInt>()
    });
    PolyExact::from_ints(coeffs)
}

/// Checks `(x+1) F_s(x) = Li_{-s}(x/(1+x))` as a polynomial identity.
///
/// With `z = x/(1+x)` we have `1 - z = 1/(1+x)`, so `Li_{-s}(z)` is the
/// polynomial `sum_k N_k x^k (1+x)^(s+1-k)`.
pub fn verify_fli_identity(s: u32) -> Result<bool> {
    if s == 0 {
        return Err(Error::InvalidArgument("identity holds for s >= 1".into()));
    }
    let li = polylog_neg(s);
    let substituted = li.substitute_mobius(&PolyExact::linear(0, 1), &PolyExact::linear(1, 1));
    let lhs = &PolyExact::linear(1, 1) * &f_s_poly(s);
    Ok(lhs == substituted)
}

/// `Li_{1-q}(-x/(1-x))` as the polynomial `sum_k N_k (-x)^k (1-x)^(q-k)`.
pub fn li_at_minus_x_over_one_minus_x(q: u64) -> PolyExact {
    let li = polylog_neg(q as u32 - 1);
    li.substitute_mobius(&PolyExact::linear(0, -1), &PolyExact::linear(1, -1))
}

/// Checks `Li_{1-q}(1/x) = -Li_{1-q}(x)` two ways: numerator palindromy
/// `N_k = N_(q-k)`, and exact evaluation at `q + 2` rational points.
pub fn verify_li_reciprocal(q: u64) -> bool {
    let li = polylog_neg(q as u32 - 1);
    let d = li.exponent() as usize;
    let num = li.numerator();
    // Li(1/x) = (-1)^d sum_k N_k x^(d-k) / (1-x)^d.
    let sign_flip = d % 2 == 1;
    let palindromic = (0..=d).all(|k| num.coeff(k) == num.coeff(d - k));
    let by_clearing = sign_flip && palindromic;

    let by_evaluation = (2..q as i64 + 4).all(|k| {
        let x = BigRational::new(k.into(), 1.into()) / BigRational::from_integer(3.into());
        if x.is_one() {
            return true;
        }
        let at_x = li.eval(&x).expect("x != 1");
        let at_inv = li.eval(&x.recip()).expect("1/x != 1");
        at_inv == -at_x
    });
    by_clearing && by_evaluation
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, ToPrimitive};

    fn int_coeffs(p: &PolyExact) -> Vec<i64> {
        p.to_ints()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polylog_examples() {
        let li0 = polylog_neg(0);
        assert_eq!(
            (int_coeffs(li0.numerator()), li0.exponent()),
            (vec![0, 1], 1)
        );
        let li2 = polylog_neg(2);
        assert_eq!(
            (int_coeffs(li2.numerator()), li2.exponent()),
            (vec![0, 1, 1], 3)
        );
        let li4 = polylog_neg(4);
        assert_eq!(int_coeffs(li4.numerator()), vec![0, 1, 11, 11, 1]);
        assert_eq!(li4.exponent(), 5);
        let li6 = polylog_neg(6);
        assert_eq!(int_coeffs(li6.numerator()), vec![0, 1, 57, 302, 302, 57, 1]);
        assert_eq!(li4.to_string(), "(x^4 + 11x^3 + 11x^2 + x)/(1-x)^5");
    }

    #[test]
    fn li6_mod_49_matches_table() {
        let reduced = polylog_neg(6).numerator().reduce_mod_q2(7).unwrap();
        assert_eq!(reduced.coeffs(), &[0, 1, 8, 8, 8, 8, 1]);
    }

    #[test]
    fn eulerian_oracle() {
        // Eulerian numbers from the recurrence A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1).
        let mut row = vec![1i64];
        for n in 1..=10i64 {
            let mut next = vec![0i64; n as usize];
            for k in 0..n as usize {
                let keep = if k < row.len() {
                    (k as i64 + 1) * row[k]
                } else {
                    0
                };
                let shift = if k >= 1 {
                    (n - k as i64) * row[k - 1]
                } else {
                    0
                };
                next[k] = keep + shift;
            }
            row = next;
            let mut expected = vec![0];
            expected.extend(&row);
            assert_eq!(
                int_coeffs(polylog_neg(n as u32).numerator()),
                expected,
                "s = {n}"
            );
        }
    }

    #[test]
    fn numerators_palindromic_and_coprime_to_one_minus_x() {
        for s in 1..=20u32 {
            let li = polylog_neg(s);
            let num = li.numerator();
            let top = s as usize;
            assert!(
                (1..=top).all(|k| num.coeff(k) == num.coeff(top + 1 - k)),
                "s = {s}"
            );
            // N(1) = s! != 0, so (1-x) does not divide the numerator.
            assert!(!num.eval(&BigRational::one()).is_zero());
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(eval_polylog_neg(2, &rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(eval_polylog_neg(2, &rat(-1, 1)).unwrap(), rat(0, 1));
        assert_eq!(eval_polylog_neg(2, &rat(2, 1)).unwrap(), rat(-6, 1));
        assert_eq!(eval_polylog_neg(2, &rat(1, 2)).unwrap(), rat(6, 1));
        assert!(matches!(
            eval_polylog_neg(2, &rat(1, 1)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn evaluation_matches_truncated_series_sum() {
        // Li_{-s}(x) = sum_k k^s x^k converges for |x| < 1; partial sums approach the value.
        let x = rat(1, 10);
        for s in 0..5u32 {
            let exact = eval_polylog_neg(s, &x).unwrap();
            let partial: BigRational = (1..60i64)
                .map(|k| {
                    BigRational::from_integer(Pow::pow(BigInt::from(k), s))
                        * Pow::pow(x.clone(), k as u32)
                })
                .sum();
            let gap = (exact - partial).abs();
            assert!(gap < rat(1, 1_000_000_000_000), "s = {s}");
        }
    }

    /// Multinomial-sum definition of `F_s` by enumerating compositions of `s`.
    fn f_s_by_compositions(s: u32) -> Vec<BigInt> {
        fn factorial(n: u32) -> BigInt {
            (1..=n).fold(BigInt::one(), |acc, i| acc * i)
        }
        fn walk(remaining: u32, parts: &mut Vec<u32>, s: u32, out: &mut Vec<BigInt>) {
            if remaining == 0 {
                let denom = parts
                    .iter()
                    .fold(BigInt::one(), |acc, &p| acc * factorial(p));
                out[parts.len()] += factorial(s) / denom;
                return;
            }
            for first in 1..=remaining {
                parts.push(first);
                walk(remaining - first, parts, s, out);
                parts.pop();
            }
        }
        let mut out = vec![BigInt::zero(); s as usize + 1];
        walk(s, &mut Vec::new(), s, &mut out);
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    #[test]
    fn f_s_examples() {
        assert_eq!(int_coeffs(&f_s_poly(0)), vec![1]);
        assert_eq!(int_coeffs(&f_s_poly(1)), vec![0, 1]);
        assert_eq!(int_coeffs(&f_s_poly(2)), vec![0, 1, 2]);
    }

    #[test]
    fn f_s_matches_compositions() {
        for s in 0..=8u32 {
            let by_surjections = f_s_poly(s).to_ints().unwrap();
            assert_eq!(by_surjections, f_s_by_compositions(s), "s = {s}");
        }
    }

    #[test]
    fn fli_identity() {
        for s in 1..=10 {
            assert_eq!(verify_fli_identity(s), Ok(true), "s = {s}");
        }
        assert!(verify_fli_identity(0).is_err());
    }

    #[test]
    fn substitution_oracle_q3() {
        // (-x)(1-x)^2 + x^2(1-x) = -x + 3x^2 - 2x^3
        assert_eq!(
            int_coeffs(&li_at_minus_x_over_one_minus_x(3)),
            vec![0, -1, 3, -2]
        );
    }

    #[test]
    fn reciprocal() {
        for q in [3, 5, 7, 11, 13] {
            assert!(verify_li_reciprocal(q), "q = {q}");
        }
        let li = polylog_neg(2);
        assert_eq!(li.eval(&rat(2, 1)).unwrap(), -li.eval(&rat(1, 2)).unwrap());
    }
}
