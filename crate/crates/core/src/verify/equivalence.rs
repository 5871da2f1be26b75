use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::cli::report::{bigint_seq, bigint_str};
use crate::cyclo::{
    alpha, canonical_i, is_qth_power_class_with, mu_element, qth_powers_mod_q2,
    reduce_mod_pi_power, truncated_log_mu, CycloField, CycloNum,
};
use crate::polycore::{
    eval_fq_with, f_q_exact, f_q_mod, polylog_neg, sq_from, tq_from, PolyExact, PolyQ2, RatFunc,
    ResidueSet,
};
use crate::qarith::{
    ensure_odd_prime, eval_phi_form, is_prime, q_valuation, qth_residue_symbol, ResidueSymbol,
    Valuation,
};
use crate::{Error, Result};

/// Per-q tables shared by every record of a sweep.
#[derive(Debug, Clone)]
pub struct QContext {
    q: u64,
    fq: PolyExact,
    fq_bar: PolyQ2,
    sq: ResidueSet,
    tq: ResidueSet,
    li: RatFunc,
    powers: BTreeSet<u64>,
    field: Arc<CycloField>,
}

impl QContext {
    pub fn new(q: u64) -> Result<Self> {
        ensure_odd_prime(q)?;
        let fq = f_q_exact(q)?;
        let sq = sq_from(&fq, q)?;
        let tq = tq_from(&sq, q)?;
        Ok(QContext {
            q,
            fq_bar: f_q_mod(q)?,
            fq,
            sq,
            tq,
            li: polylog_neg((q - 1) as u32),
            powers: qth_powers_mod_q2(q),
            field: CycloField::get(q)?,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn fq(&self) -> &PolyExact {
        &self.fq
    }

    pub fn fq_bar(&self) -> &PolyQ2 {
        &self.fq_bar
    }

    pub fn sq(&self) -> &ResidueSet {
        &self.sq
    }

    pub fn tq(&self) -> &ResidueSet {
        &self.tq
    }

    /// `Li_{1-q}`.
    pub fn li(&self) -> &RatFunc {
        &self.li
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
}

/// The predicates attached to one witness `(m, n)` of a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceRecord {
    pub q: u64,
    #[serde(serialize_with = "bigint_str")]
    pub p: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub m: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub n: BigInt,
    pub i: u64,
    pub symbol: ResidueSymbol,
    /// `v_q(Li_{1-q}(n/m))`.
    pub vq_li: Valuation,
    /// `v_q(f_q(-n/(m-n)))`.
    pub vq_fq: Valuation,
    /// `-n/(m-n) mod q^2` lies in `S_q`.
    pub sq_member: bool,
    /// `n/m mod q^2` lies in `T_q`.
    pub tq_member: bool,
    pub a1_mod_q2_zero: bool,
    /// `a_0 = (m-n)^((q-1)q/2) mod q^2` and `a_k = 0 mod q` for `k >= 1`.
    pub a0_ok: bool,
    /// `mu^(i)` is a q-th power modulo `pi^(q+1)`.
    pub mu_qth_power: bool,
    pub all_consistent: bool,
}

impl EquivalenceRecord {
    /// The predicates that should all equal `symbol = +1`, by name.
    pub fn predicates(&self) -> [(&'static str, bool); 6] {
        [
            ("vq_li>=2", self.vq_li.at_least(2)),
            ("vq_fq>=2", self.vq_fq.at_least(2)),
            ("sq_member", self.sq_member),
            ("tq_member", self.tq_member),
            ("a1_mod_q2_zero", self.a1_mod_q2_zero),
            ("mu_qth_power", self.mu_qth_power),
        ]
    }

    /// Names of the predicates disagreeing with the symbol, plus `a0_ok` if it failed.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let plus = self.symbol.is_plus();
        let mut out: Vec<&'static str> = self
            .predicates()
            .into_iter()
            .filter(|&(_, v)| v != plus)
            .map(|(name, _)| name)
            .collect();
        if !self.a0_ok {
            out.push("a0_ok");
        }
        out
    }
}

/// `(m-n)^((q-1)q/2)`.
fn mu_constant(q: u64, m: &BigInt, n: &BigInt) -> BigInt {
    Pow::pow(m - n, ((q - 1) * q / 2) as u32)
}

/// Integer coordinates `a_0, ..., a_{q-2}` of `x` in powers of `pi = 1 - zeta`.
pub fn pi_coefficients(x: &CycloNum) -> Result<Vec<BigInt>> {
    x.to_pi_basis()
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral)
            }
        })
        .collect()
}

fn ensure_form_prime(q: u64, m: &BigInt, n: &BigInt) -> Result<BigInt> {
    let p = eval_phi_form(m, n, q);
    if p == BigInt::from(q) {
        return Err(Error::PrimeEqualsQ(p));
    }
    if !is_prime(&p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

pub fn check_equivalence(q: u64, m: &BigInt, n: &BigInt) -> Result<EquivalenceRecord> {
    check_equivalence_with(&QContext::new(q)?, m, n)
}

pub fn check_equivalence_with(ctx: &QContext, m: &BigInt, n: &BigInt) -> Result<EquivalenceRecord> {
    let q = ctx.q;
    let p = ensure_form_prime(q, m, n)?;
    if m.is_zero() {
        return Err(Error::InvalidArgument("m = 0".into()));
    }
    let qb = BigInt::from(q);
    let q2 = BigInt::from(q * q);
    let symbol = qth_residue_symbol(&qb, &p, q)?;
    let i = canonical_i(q, m, n)?;

    let ratio = BigRational::new(n.clone(), m.clone());
    let vq_li = q_valuation(&ctx.li.eval(&ratio)?, q);
    let a = alpha(m, n)?;
    let vq_fq = q_valuation(&eval_fq_with(&ctx.fq, q, &a)?, q);
    let sq_member = ctx.sq.contains_rational(&a);
    let tq_member = ctx.tq.contains_rational(&ratio);

    let mu = mu_element(q, m, n, i)?;
    let coeffs = pi_coefficients(&mu)?;
    let target = mu_constant(q, m, n);
    let a0_ok = (&coeffs[0] - &target).is_multiple_of(&q2)
        && coeffs[1..].iter().all(|c| c.is_multiple_of(&qb));
    let a1_mod_q2_zero = coeffs[1].is_multiple_of(&q2);
    let class = reduce_mod_pi_power(&mu, q + 1)?;
    let mu_qth_power = is_qth_power_class_with(&class, &ctx.powers);

    let mut record = EquivalenceRecord {
        q,
        p,
        m: m.clone(),
        n: n.clone(),
        i,
        symbol,
        vq_li,
        vq_fq,
        sq_member,
        tq_member,
        a1_mod_q2_zero,
        a0_ok,
        mu_qth_power,
        all_consistent: false,
    };
    record.all_consistent = record.disagreements().is_empty();
    Ok(record)
}

/// Valuation checks on the truncated logarithm of `mu^(i)`, `i = -n/(m-n) mod q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogCheck {
    pub q: u64,
    #[serde(serialize_with = "bigint_str")]
    pub m: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub n: BigInt,
    /// `v_pi(log)`.
    pub log_valuation: Valuation,
    /// `v_pi(log - (1 - zeta) f_q(alpha))`.
    pub gap_valuation: Valuation,
    /// For each `e` in `{q, q+1}` with `v_pi(log) >= e`: `mu^(i) = (m-n)^((q-1)q/2) mod pi^e`.
    pub congruence_holds: bool,
}

impl LogCheck {
    pub fn holds(&self) -> bool {
        let q = self.q as i64;
        self.gap_valuation.at_least(q + 1)
            && self.log_valuation.at_least(q)
            && self.congruence_holds
    }
}

pub fn log_check(q: u64, m: &BigInt, n: &BigInt) -> Result<LogCheck> {
    log_check_with(&QContext::new(q)?, m, n)
}

pub fn log_check_with(ctx: &QContext, m: &BigInt, n: &BigInt) -> Result<LogCheck> {
    let q = ctx.q;
    let field = ctx.field.clone();
    let i = canonical_i(q, m, n)?;
    let log = truncated_log_mu(q, m, n, i)?;
    let a = alpha(m, n)?;
    let fq_a = eval_fq_with(&ctx.fq, q, &a)?;
    let pi = CycloNum::pi_pow(field.clone(), 1);
    let gap = &log - &pi.scale(&fq_a);
    let log_valuation = log.pi_order();

    let mut congruence_holds = true;
    let mu = mu_element(q, m, n, i)?;
    let diff = &mu - &CycloNum::from_int(field, mu_constant(q, m, n));
    for e in [q, q + 1] {
        if log_valuation.at_least(e as i64) {
            congruence_holds &= reduce_mod_pi_power(&diff, e)?.is_zero();
        }
    }
    Ok(LogCheck {
        q,
        m: m.clone(),
        n: n.clone(),
        log_valuation,
        gap_valuation: gap.pi_order(),
        congruence_holds,
    })
}

/// `v_pi(mu^(i) - (m-n)^((q-1)q/2) zeta^(i + n (m-n)*)) >= 2` for an arbitrary `i`.
pub fn mu_mod_pi_squared_check(q: u64, m: &BigInt, n: &BigInt, i: u64) -> Result<bool> {
    let field = CycloField::get(q)?;
    let qb = BigInt::from(q);
    let diff = m - n;
    let inv = diff
        .mod_floor(&qb)
        .modinv(&qb)
        .ok_or_else(|| Error::Divisible {
            value: diff.clone(),
            modulus: qb.clone(),
        })?;
    let k = (BigInt::from(i) + n * inv).mod_floor(&qb);
    let k: i64 = k.try_into().expect("residue below q");
    let expected = CycloNum::zeta_pow(field.clone(), k)
        .scale(&BigRational::from_integer(mu_constant(q, m, n)));
    let gap = &mu_element(q, m, n, i)? - &expected;
    Ok(gap.pi_order().at_least(2))
}

/// `mu^(i)` with its `pi`-coordinates, for display.
#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub q: u64,
    #[serde(serialize_with = "bigint_str")]
    pub m: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub n: BigInt,
    pub i: u64,
    pub element: String,
    #[serde(serialize_with = "bigint_seq")]
    pub a: Vec<BigInt>,
    pub class: crate::cyclo::PiAdicClass,
}

pub fn mu_report(q: u64, m: &BigInt, n: &BigInt) -> Result<MuReport> {
    ensure_odd_prime(q)?;
    let i = canonical_i(q, m, n)?;
    let mu = mu_element(q, m, n, i)?;
    Ok(MuReport {
        q,
        m: m.clone(),
        n: n.clone(),
        i,
        element: mu.to_zeta_basis().to_string(),
        a: pi_coefficients(&mu)?,
        class: reduce_mod_pi_power(&mu, q + 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn record_for_61() {
        let r = check_equivalence(3, &b(5), &b(4)).unwrap();
        assert_eq!(r.p, b(61));
        assert_eq!(r.symbol, ResidueSymbol::Plus);
        assert_eq!(r.i, 2);
        assert!(r.vq_li.at_least(2) && r.vq_fq.at_least(2));
        assert!(r.sq_member && r.tq_member && r.a1_mod_q2_zero && r.mu_qth_power && r.a0_ok);
        assert!(r.all_consistent);
    }

    #[test]
    fn record_for_7() {
        let r = check_equivalence(3, &b(2), &b(1)).unwrap();
        assert_eq!(r.p, b(7));
        assert_eq!(r.symbol, ResidueSymbol::Minus);
        assert!(!r.vq_li.at_least(2) && !r.vq_fq.at_least(2));
        assert!(!r.sq_member && !r.tq_member && !r.a1_mod_q2_zero && !r.mu_qth_power);
        assert!(r.a0_ok && r.all_consistent);
    }

    #[test]
    fn record_for_31() {
        let r = check_equivalence(5, &b(2), &b(1)).unwrap();
        assert_eq!(r.p, b(31));
        assert_eq!(r.symbol, ResidueSymbol::Plus);
        assert!(r.sq_member && r.all_consistent);
        assert!(r.disagreements().is_empty());
    }

    #[test]
    fn rejects_non_primes() {
        assert!(matches!(
            check_equivalence(3, &b(1), &b(1)),
            Err(Error::PrimeEqualsQ(_))
        ));
        assert!(matches!(
            check_equivalence(3, &b(4), &b(1)),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn pi_coefficients_of_mu() {
        // mu = -305 - 549 zeta = -854 + 549 pi.
        let mu = mu_element(3, &b(5), &b(4), 2).unwrap();
        assert_eq!(pi_coefficients(&mu).unwrap(), vec![b(-854), b(549)]);
    }

    #[test]
    fn log_checks() {
        for (q, m, n) in [
            (3u64, 5i64, 4i64),
            (3, 2, 1),
            (5, 2, 1),
            (7, 2, 1),
            (7, 3, -1),
        ] {
            let c = log_check(q, &b(m), &b(n)).unwrap();
            assert!(c.holds(), "{c:?}");
        }
        let c = log_check(3, &b(5), &b(4)).unwrap();
        assert!(c.log_valuation.at_least(4));
    }

    #[test]
    fn mu_mod_pi_squared() {
        for (q, m, n) in [(3u64, 5i64, 4i64), (5, 2, 1), (7, 3, -1), (5, -3, 4)] {
            for i in 0..q {
                assert!(mu_mod_pi_squared_check(q, &b(m), &b(n), i).unwrap());
            }
        }
    }

    #[test]
    fn context_tables() {
        let ctx = QContext::new(7).unwrap();
        assert_eq!(ctx.sq().to_string(), "0 1 6 17 25 33 44");
        assert_eq!(ctx.sq().len(), 7);
        assert_eq!(ctx.tq().len(), 7);
        assert_eq!(ctx.li().exponent(), 7);
    }
}
