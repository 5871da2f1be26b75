//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; all
//! comparisons are exact.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use qresidue::cyclo::PiAdicClass;
use qresidue::polycore::{
    compute_sq, compute_tq, eval_fq, f_q_mod, f_s_poly, jl_sum_check, lerch_check, polylog_neg,
    verify_distinguished_members, verify_fli_identity, verify_fq_fermat, verify_fq_li_congruence,
    verify_fq_symmetry, verify_li_reciprocal, verify_sq_zero_set,
};
use qresidue::qarith::{is_prime_u64, q_valuation, ResidueSymbol};
use qresidue::verify::{
    accepted_qth_power_classes, brute_force_qth_powers, euler_cubic_crosscheck, log_check_with,
    quintic_crosscheck, search_form_primes, sweep_equivalences, QContext,
};

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn odd_primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (3..=n).filter(|&q| is_prime_u64(q))
}

fn big(xs: &[u64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn criterion_tables(o: &mut Outcome) {
    let fq = [
        (3, "8x^3 + 6x^2 + 4x"),
        (5, "4x^5 + 15x^4 + 10x^2 + 21x"),
        (7, "20x^7 + 28x^6 + 28x^5 + 7x^4 + 14x^3 + 35x^2 + 15x"),
    ];
    for (q, expected) in fq {
        let got = f_q_mod(q)
            .map(|f| f.to_string())
            .unwrap_or_else(|e| e.to_string());
        o.check(got == expected, || {
            format!("f_{q} mod q^2 = {got}, expected {expected}")
        });
    }
    let li: [(u64, &[u64]); 3] = [
        (3, &[0, 1, 1]),
        (5, &[0, 1, 11, 11, 1]),
        (7, &[0, 1, 8, 8, 8, 8, 1]),
    ];
    for (q, expected) in li {
        let f = polylog_neg((q - 1) as u32);
        let q2 = BigInt::from(q * q);
        let got: Vec<u64> = f
            .numerator()
            .coeffs()
            .iter()
            .map(|c| (c.to_integer() % &q2).to_u64().unwrap())
            .collect();
        o.check(got == expected && f.exponent() == q as u32, || {
            format!("Li_{{1-{q}}} numerator mod q^2 = {got:?}, expected {expected:?}")
        });
    }
    for (q, expected) in [(3, "0 1 5"), (5, "0 1 2 13 24"), (7, "0 1 6 17 25 33 44")] {
        let got = compute_sq(q)
            .map(|s| s.to_string())
            .unwrap_or_else(|e| e.to_string());
        o.check(got == expected, || {
            format!("S_{q} = {got}, expected {expected}")
        });
    }
    for (q, expected) in [
        (3, "0 8 inf"),
        (5, "0 2 13 24 inf"),
        (7, "0 9 11 24 47 48 inf"),
    ] {
        let got = compute_tq(q)
            .map(|s| s.to_string())
            .unwrap_or_else(|e| e.to_string());
        o.check(got == expected, || {
            format!("T_{q} = {got}, expected {expected}")
        });
    }
}

const CUBIC_650: [u64; 17] = [
    61, 67, 73, 103, 151, 193, 271, 307, 367, 439, 499, 523, 547, 577, 613, 619, 643,
];
const QUINTIC_250000: [u64; 10] = [
    31, 19141, 30941, 48871, 114641, 125591, 141961, 170101, 225241, 246931,
];
const SEPTIC_PREFIX: [u64; 7] = [
    43, 10501, 3692053, 109894303, 115928821, 138520537, 141903217,
];

fn plus_list(q: u64, bound: u64) -> Vec<BigInt> {
    search_form_primes(q, &BigInt::from(bound), Some(ResidueSymbol::Plus))
        .unwrap()
        .into_iter()
        .map(|fp| fp.p)
        .collect()
}

fn criterion_prime_lists(o: &mut Outcome) {
    let got = plus_list(3, 650);
    o.check(got == big(&CUBIC_650), || format!("q = 3 list {got:?}"));
    let got = plus_list(5, 250_000);
    o.check(got == big(&QUINTIC_250000), || {
        format!("q = 5 list {got:?}")
    });
    let got = plus_list(7, 150_000_000);
    o.check(got.starts_with(&big(&SEPTIC_PREFIX)), || {
        format!("q = 7 list {got:?}")
    });
}

fn criterion_sweep(o: &mut Outcome) {
    for (q, bound) in [(3u64, 1_000_000u64), (5, 250_000), (7, 150_000_000)] {
        let report = sweep_equivalences(q, &BigInt::from(bound)).unwrap();
        o.check(report.is_clean(), || {
            format!(
                "q = {q}: {} counterexamples, first {:?}",
                report.counterexamples.len(),
                report.counterexamples.first()
            )
        });
        o.check(report.record_count > 0, || format!("q = {q}: no records"));
        match q {
            5 => o.check(report.plus_primes == big(&QUINTIC_250000), || {
                format!("q = 5 plus primes {:?}", report.plus_primes)
            }),
            7 => o.check(report.plus_primes.starts_with(&big(&SEPTIC_PREFIX)), || {
                format!("q = 7 plus primes {:?}", report.plus_primes)
            }),
            _ => {}
        }
    }
}

/// Surjections of an `s`-set onto a `t`-set, summed over compositions of `s` into `t` parts.
fn surjections_by_compositions(s: u32) -> Vec<BigInt> {
    fn factorial(n: u32) -> BigInt {
        (1..=n).map(BigInt::from).product()
    }
    let mut counts = vec![BigInt::zero(); s as usize + 1];
    // Bit k of `mask` marks a cut after position k + 1.
    for mask in 0u32..(1 << (s - 1)) {
        let mut parts = Vec::new();
        let mut len = 1;
        for k in 0..s - 1 {
            if mask >> k & 1 == 1 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        let denom: BigInt = parts.iter().map(|&a| factorial(a)).product();
        counts[parts.len()] += factorial(s) / denom;
    }
    counts
}

fn criterion_identities(o: &mut Outcome) {
    for q in odd_primes_up_to(50) {
        o.check(verify_fq_fermat(q).unwrap(), || {
            format!("f_{q} != x - x^q mod q")
        });
        o.check(verify_sq_zero_set(q).unwrap(), || {
            format!("S_{q} != zero set")
        });
        o.check(verify_fq_symmetry(q).unwrap(), || {
            format!("f_{q}(1-x) != -f_{q}(x)")
        });
        o.check(verify_fq_li_congruence(q).unwrap(), || {
            format!("f_{q} != c_q Li(-x/(1-x))")
        });
        o.check(verify_li_reciprocal(q), || {
            format!("Li_{{1-{q}}} reciprocity")
        });
        o.check(verify_distinguished_members(q).unwrap(), || {
            format!("members of S_{q}, T_{q}")
        });
        // Pointwise form of the reflection at q-integral rationals.
        let q2 = BigInt::from(q * q);
        for num in -6i64..=6 {
            for den in [1i64, 2, 7, 11] {
                if (den as u64).is_multiple_of(q) {
                    continue;
                }
                let x = BigRational::new(num.into(), den.into());
                let one_minus = BigRational::from_integer(1.into()) - &x;
                let sum = eval_fq(q, &x).unwrap() + eval_fq(q, &one_minus).unwrap();
                o.check(q_valuation(&sum, q).at_least(2), || {
                    format!("f_{q}({x}) + f_{q}(1-{x}) mod {q2}")
                });
            }
        }
    }
    for s in 1..=8u32 {
        let poly = f_s_poly(s);
        let oracle = surjections_by_compositions(s);
        for (t, expected) in oracle.iter().enumerate() {
            let got = poly.coeff(t);
            o.check(got == BigRational::from_integer(expected.clone()), || {
                format!("F_{s} coefficient of x^{t} = {got}, expected {expected}")
            });
        }
    }
    for s in 1..=10u32 {
        o.check(verify_fli_identity(s).unwrap(), || {
            format!("(x+1)F_s identity, s = {s}")
        });
    }
    for q in odd_primes_up_to(100) {
        for k in 1..=q * q {
            let kb = BigInt::from(k);
            if k % q != 0 {
                o.check(lerch_check(q, &kb).unwrap(), || {
                    format!("Lerch q = {q}, k = {k}")
                });
            }
            o.check(jl_sum_check(q, &kb).unwrap(), || {
                format!("jl sum q = {q}, k = {k}")
            });
        }
    }
}

fn criterion_oracles(o: &mut Outcome) {
    for e in [3u64, 4] {
        let brute = brute_force_qth_powers(3, e).unwrap();
        let accepted = accepted_qth_power_classes(3, e).unwrap();
        o.check(brute == accepted, || {
            format!("q = 3, e = {e}: brute {brute:?} vs accepted {accepted:?}")
        });
        let count = PiAdicClass::enumerate(3, e).unwrap().len();
        o.check(count == 3usize.pow(e as u32), || {
            format!("q = 3, e = {e}: {count} representatives")
        });
    }
    for q in [3u64, 5, 7] {
        let ctx = QContext::new(q).unwrap();
        let primes = search_form_primes(q, &BigInt::from(10_000), None).unwrap();
        o.check(!primes.is_empty(), || format!("q = {q}: no witnesses"));
        for fp in primes {
            for (m, n) in &fp.witnesses {
                let c = log_check_with(&ctx, m, n).unwrap();
                o.check(c.holds(), || {
                    format!("log check q = {q}, (m, n) = ({m}, {n}): {c:?}")
                });
            }
        }
    }
}

fn criterion_crosschecks(o: &mut Outcome) {
    for p in (7..100_000u64).filter(|&p| p % 3 == 1 && is_prime_u64(p)) {
        let ok = euler_cubic_crosscheck(p);
        o.check(matches!(ok, Ok(true)), || format!("cubic p = {p}: {ok:?}"));
    }
    for p in (11..10_000u64).filter(|&p| p % 5 == 1 && is_prime_u64(p)) {
        let ok = quintic_crosscheck(p);
        o.check(matches!(ok, Ok(true)), || {
            format!("quintic p = {p}: {ok:?}")
        });
    }
}

type Criterion = (&'static str, fn(&mut Outcome));

fn main() {
    let criteria: [Criterion; 6] = [
        ("1. table reproduction", criterion_tables),
        ("2. prime lists", criterion_prime_lists),
        ("3. equivalence sweep", criterion_sweep),
        ("4. identity suites", criterion_identities),
        ("5. oracle equivalence", criterion_oracles),
        ("6. classical cross-checks", criterion_crosschecks),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let started = Instant::now();
        let mut outcome = Outcome::new();
        run(&mut outcome);
        let verdict = if outcome.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "[{verdict}] {name} (exact, tolerance 0) in {:.1}s",
            started.elapsed().as_secs_f64()
        );
        for f in outcome.failures.iter().take(10) {
            println!("        {f}");
        }
        if !outcome.failures.is_empty() {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
