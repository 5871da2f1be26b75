//! The polynomial `f_q` and the residue sets `S_q` and `T_q`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::poly::{binomial, PolyExact, PolyQ2};
use super::polylog::polylog_neg;
use crate::qarith::{ensure_odd_prime, q_valuation, rational_mod, Valuation};
use crate::{Error, Result};

/// `W[k] = sum_{1 <= j,l <= q-1, jl = k mod q} j l`, for `k` in `[0, q)`.
pub(crate) fn pair_weights(q: u64) -> Vec<u64> {
    let mut w = vec![0u64; q as usize];
    for j in 1..q {
        for l in 1..q {
            w[(j * l % q) as usize] += j * l;
        }
    }
    w
}

/// `f_q(x) = sum_{t=1}^q (sum_{j,k,l} (-1)^k C(t,k) j l) x^t / t` over
/// `1 <= j,k,l <= q-1` with `k = jl mod q`.
///
/// Every coefficient lies in `Z_(q)`; at `t = q` the inner sum is divisible by `q`.
pub fn f_q_exact(q: u64) -> Result<PolyExact> {
    ensure_odd_prime(q)?;
    let weights = pair_weights(q);
    let mut coeffs = vec![BigRational::zero()];
    for t in 1..=q {
        // C(t, k) = 0 for k > t.
        let inner: BigInt = (1..q.min(t + 1))
            .map(|k| {
                let term = binomial(t, k) * weights[k as usize];
                if k % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        let c = BigRational::new(inner, BigInt::from(t));
        if q_valuation(&c, q) < Valuation::Finite(0) {
            return Err(Error::Invariant(format!(
                "coefficient of x^{t} in f_{q} has q in its denominator: {c}"
            )));
        }
        coeffs.push(c);
    }
    Ok(PolyExact::new(coeffs))
}

/// `f_q mod q^2`.
pub fn f_q_mod(q: u64) -> Result<PolyQ2> {
    f_q_exact(q)?.reduce_mod_q2(q)
}

/// Exact value `f_q(x)` for `x` in `Z_(q)`.
pub fn eval_fq(q: u64, x: &BigRational) -> Result<BigRational> {
    eval_fq_with(&f_q_exact(q)?, q, x)
}

pub(crate) fn eval_fq_with(fq: &PolyExact, q: u64, x: &BigRational) -> Result<BigRational> {
    if q_valuation(x, q) < Valuation::Finite(0) {
        return Err(Error::NegativeValuation {
            value: x.clone(),
            q,
        });
    }
    Ok(fq.eval(x))
}

/// A point of `Z/q^2 ∪ {∞}`, ordered with `∞` last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjResidue {
    Finite(u64),
    Infinity,
}

impl fmt::Display for ProjResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjResidue::Finite(r) => write!(f, "{r}"),
            ProjResidue::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjResidue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjResidue::Finite(r) => serializer.serialize_u64(*r),
            ProjResidue::Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    q: u64,
    members: BTreeSet<ProjResidue>,
}

impl ResidueSet {
    pub fn new(q: u64, members: impl IntoIterator<Item = ProjResidue>) -> Self {
        ResidueSet {
            q,
            members: members.into_iter().collect(),
        }
    }

    pub fn from_finite(q: u64, members: impl IntoIterator<Item = u64>) -> Self {
        Self::new(q, members.into_iter().map(ProjResidue::Finite))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = &ProjResidue> {
        self.members.iter()
    }

    pub fn contains(&self, r: ProjResidue) -> bool {
        self.members.contains(&r)
    }

    pub fn contains_residue(&self, r: u64) -> bool {
        self.contains(ProjResidue::Finite(r))
    }

    /// Membership of a rational, reading `x` with `v_q(x) <= -2` as `∞`.
    ///
    /// Values with `v_q(x) = -1` map to neither a residue nor `∞` and are
    /// never members.
    pub fn contains_rational(&self, x: &BigRational) -> bool {
        match classify_ratio(x, self.q) {
            Some(r) => self.contains(r),
            None => false,
        }
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}

/// Position of a rational in `Z/q^2 ∪ {∞}`; `None` when `v_q(x) = -1`.
pub fn classify_ratio(x: &BigRational, q: u64) -> Option<ProjResidue> {
    match q_valuation(x, q) {
        Valuation::Finite(v) if v <= -2 => Some(ProjResidue::Infinity),
        Valuation::Finite(-1) => None,
        _ => {
            let r = rational_mod(x, &BigInt::from(q * q)).expect("q-integral");
            Some(ProjResidue::Finite(r.to_u64().expect("residue below q^2")))
        }
    }
}

fn mod_q2(x: &BigRational, q: u64) -> u64 {
    rational_mod(x, &BigInt::from(q * q))
        .and_then(|r| r.to_u64())
        .expect("q-integral value")
}

pub(crate) fn sq_from(fq: &PolyExact, q: u64) -> Result<ResidueSet> {
    let image: BTreeSet<u64> = (0..q)
        .map(|a| {
            let a = BigRational::from_integer(a.into());
            mod_q2(&(&a - fq.eval(&a)), q)
        })
        .collect();
    let reduced = fq.reduce_mod_q2(q)?;
    let zeros: BTreeSet<u64> = (0..q * q).filter(|&b| reduced.eval(b) == 0).collect();
    if image != zeros || image.len() != q as usize {
        return Err(Error::Invariant(format!(
            "S_{q} image {image:?} differs from zero set {zeros:?}"
        )));
    }
    Ok(ResidueSet::from_finite(q, image))
}

/// `S_q = {a - f_q(a) mod q^2 : 0 <= a < q}`, cross-checked against the zero set
/// of `f_q mod q^2`.
pub fn compute_sq(q: u64) -> Result<ResidueSet> {
    sq_from(&f_q_exact(q)?, q)
}

fn li_has_q2(li: &super::polylog::RatFunc, x: &BigRational, q: u64) -> bool {
    q_valuation(&li.eval(x).expect("x != 1 mod q"), q).at_least(2)
}

pub(crate) fn tq_from(sq: &ResidueSet, q: u64) -> Result<ResidueSet> {
    let li = polylog_neg(q as u32 - 1);
    let q2 = q * q;
    let mut members: BTreeSet<ProjResidue> = (0..q2)
        .filter(|x| x % q != 1)
        .filter(|&x| li_has_q2(&li, &BigRational::from_integer(x.into()), q))
        .map(ProjResidue::Finite)
        .collect();
    // n/m = ∞ means m/n = y with v_q(y) >= 2; Li(1/y) = -Li(y) and y | N(y),
    // so the reciprocal test at y = 0 decides it.
    if li_has_q2(&li, &BigRational::zero(), q) {
        members.insert(ProjResidue::Infinity);
    }
    // v_q(n/m) = -1: Li(n/m) = -Li(y), v_q(y) = 1, and Li(y) mod q^2 depends only
    // on y mod q^2, so checking y = q u for each unit u settles every such ratio.
    for u in 1..q {
        let y = BigRational::from_integer((q * u).into());
        let v = q_valuation(&li.eval(&y).expect("y = 0 mod q"), q);
        if v != Valuation::Finite(1) {
            return Err(Error::Invariant(format!(
                "Li_(1-{q}) at {y} has valuation {v}, expected exactly 1"
            )));
        }
    }

    let q2b = BigInt::from(q2);
    let image: BTreeSet<ProjResidue> = sq
        .members()
        .map(|&a| match a {
            ProjResidue::Finite(1) => ProjResidue::Infinity,
            ProjResidue::Finite(a) => {
                let a = BigInt::from(a);
                let inv = (&a - 1u32).modinv(&q2b).expect("a != 1 mod q");
                ProjResidue::Finite((a * inv % &q2b).to_u64().unwrap())
            }
            ProjResidue::Infinity => unreachable!("S_q is finite"),
        })
        .collect();
    if image != members || members.len() != q as usize {
        return Err(Error::Invariant(format!(
            "T_{q} enumeration {members:?} differs from S_q image {image:?}"
        )));
    }
    Ok(ResidueSet::new(q, members))
}

/// `T_q`: residues `x` of `n/m` with `Li_{1-q}(x)` in `q^2 Z_(q)`, plus `∞`.
///
/// Checked against `{a/(a-1) : a in S_q}` with `a = 1` going to `∞`.
pub fn compute_tq(q: u64) -> Result<ResidueSet> {
    let sq = compute_sq(q)?;
    tq_from(&sq, q)
}
