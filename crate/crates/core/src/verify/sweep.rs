use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::crosscheck::form_congruence_check;
use super::equivalence::{check_equivalence_with, log_check_with, EquivalenceRecord, QContext};
use super::search::search_form_primes;
use crate::cli::report::{bigint_seq, bigint_str};
use crate::cyclo::alpha;
use crate::qarith::{quadratic_euler_check, Primality, ResidueSymbol};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(serialize_with = "bigint_str")]
    pub p: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub m: BigInt,
    #[serde(serialize_with = "bigint_str")]
    pub n: BigInt,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSummary {
    #[serde(serialize_with = "bigint_str")]
    pub p: BigInt,
    pub primality: Primality,
    pub symbol: ResidueSymbol,
    pub witnesses: usize,
    pub sq_member: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub q: u64,
    #[serde(serialize_with = "bigint_str")]
    pub bound: BigInt,
    pub prime_count: usize,
    pub record_count: usize,
    #[serde(serialize_with = "bigint_seq")]
    pub plus_primes: Vec<BigInt>,
    pub primes: Vec<PrimeSummary>,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every check attached to one witness; `Err` strings become counterexamples.
fn witness_issues(
    ctx: &QContext,
    m: &BigInt,
    n: &BigInt,
) -> (Option<EquivalenceRecord>, Vec<String>) {
    let q = ctx.q();
    let mut issues = Vec::new();
    let record = match check_equivalence_with(ctx, m, n) {
        Ok(r) => r,
        Err(e) => return (None, vec![format!("error: {e}")]),
    };
    let bad = record.disagreements();
    if !bad.is_empty() {
        issues.push(format!(
            "symbol {} but {} disagree",
            record.symbol,
            bad.join(", ")
        ));
    }
    // (m, n) -> (n, m) sends a = -n/(m-n) to 1 - a.
    match alpha(m, n) {
        Ok(a) => {
            let swapped = BigRational::one() - &a;
            if ctx.sq().contains_rational(&a) != ctx.sq().contains_rational(&swapped) {
                issues.push("S_q membership not symmetric under (m, n) -> (n, m)".into());
            }
        }
        Err(e) => issues.push(format!("error: {e}")),
    }
    match form_congruence_check(q, m, n) {
        Ok(true) => {}
        Ok(false) => issues.push("p is not (m-n)^(q-1) mod q".into()),
        Err(e) => issues.push(format!("error: {e}")),
    }
    match quadratic_euler_check(&(m - n), q) {
        Ok(c) if c.holds => {}
        Ok(_) => issues.push("(m-n)^((q-1)q/2) differs from the Legendre symbol mod q^2".into()),
        Err(e) => issues.push(format!("error: {e}")),
    }
    match log_check_with(ctx, m, n) {
        Ok(c) if c.holds() => {}
        Ok(c) => issues.push(format!(
            "log valuations: v(log) = {}, v(gap) = {}, congruence {}",
            c.log_valuation, c.gap_valuation, c.congruence_holds
        )),
        Err(e) => issues.push(format!("error: {e}")),
    }
    (Some(record), issues)
}

/// Checks every witness of every prime up to `bound`.
///
/// The output is sorted by `(p, m, n)` and does not depend on the thread pool.
pub fn sweep_equivalences(q: u64, bound: &BigInt) -> Result<SweepReport> {
    let ctx = QContext::new(q)?;
    let primes = search_form_primes(q, bound, None)?;

    let per_prime: Vec<(PrimeSummary, Vec<Counterexample>)> = primes
        .par_iter()
        .map(|fp| {
            let mut counter = Vec::new();
            let mut verdicts = Vec::new();
            for (m, n) in &fp.witnesses {
                let (record, issues) = witness_issues(&ctx, m, n);
                if let Some(r) = record {
                    verdicts.push((r.sq_member, r.all_consistent));
                }
                counter.extend(issues.into_iter().map(|reason| Counterexample {
                    p: fp.p.clone(),
                    m: m.clone(),
                    n: n.clone(),
                    reason,
                }));
            }
            let sq_member = verdicts.first().is_some_and(|v| v.0);
            if verdicts.iter().any(|v| v.0 != sq_member) {
                let (m, n) = fp.witnesses[0].clone();
                counter.push(Counterexample {
                    p: fp.p.clone(),
                    m,
                    n,
                    reason: "witnesses of the same prime disagree on S_q membership".into(),
                });
            }
            let summary = PrimeSummary {
                p: fp.p.clone(),
                primality: fp.primality,
                symbol: fp.symbol,
                witnesses: fp.witnesses.len(),
                sq_member,
                consistent: counter.is_empty(),
            };
            (summary, counter)
        })
        .collect();

    let record_count = primes.iter().map(|fp| fp.witnesses.len()).sum();
    let plus_primes = primes
        .iter()
        .filter(|fp| fp.symbol.is_plus())
        .map(|fp| fp.p.clone())
        .collect();
    let mut summaries = Vec::with_capacity(per_prime.len());
    let mut counterexamples = Vec::new();
    for (s, c) in per_prime {
        summaries.push(s);
        counterexamples.extend(c);
    }
    Ok(SweepReport {
        q,
        bound: bound.clone(),
        prime_count: summaries.len(),
        record_count,
        plus_primes,
        primes: summaries,
        counterexamples,
    })
}
