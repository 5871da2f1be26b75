//! The `qresidue` command line.
//!
//! Human-readable output is tab-separated on stdout; `--json PATH` writes a
//! [`report::Report`]. Exit codes: 0 success, 1 counterexample or failed
//! check, 2 usage error.

pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::cyclo::is_qth_power_class;
use crate::polycore::{
    compute_sq, compute_tq, eval_polylog_neg, f_q_mod, jl_sum_check, lerch_check,
    pair_weights_match_closed_form, polylog_neg, verify_distinguished_members, verify_fli_identity,
    verify_fq_fermat, verify_fq_li_congruence, verify_fq_symmetry, verify_li_reciprocal,
    verify_sq_zero_set,
};
use crate::qarith::{ensure_odd_prime, is_prime_u64, qth_residue_symbol, Primality, ResidueSymbol};
use crate::verify::{
    cubic_check, mu_report, quintic_check, search_form_primes, sweep_equivalences, FormPrime,
    SweepReport,
};
use crate::{Error, Result};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qresidue",
    version,
    about = "q-th power residue criteria on primes of the form sum m^i n^(q-1-i)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print f_q mod q^2.
    Fq {
        #[arg(long)]
        q: u64,
    },
    /// Print S_q.
    Sq {
        #[arg(long)]
        q: u64,
    },
    /// Print T_q.
    Tq {
        #[arg(long)]
        q: u64,
    },
    /// Print Li_{-s} as a rational function, or its value at a rational point.
    Li {
        #[arg(long)]
        s: u32,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        at: Option<BigRational>,
    },
    /// Print the residue symbol (a/p)_q.
    Symbol {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_bigint)]
        p: BigInt,
        /// Defaults to q.
        #[arg(long, value_parser = parse_bigint, allow_hyphen_values = true)]
        a: Option<BigInt>,
    },
    /// Print mu^(i), its pi-coordinates and its class modulo pi^(q+1).
    Mu {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_bigint, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, value_parser = parse_bigint, allow_hyphen_values = true)]
        n: BigInt,
    },
    /// List primes of the form up to a bound.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long = "max-p", value_parser = parse_bigint)]
        max_p: BigInt,
        #[arg(long, value_parser = parse_symbol, allow_hyphen_values = true)]
        filter: Option<ResidueSymbol>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check every equivalence on every witness up to a bound, plus the identity suites.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long = "max-p", value_parser = parse_bigint)]
        max_p: BigInt,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare against the classical cubic or quintic representation criteria.
    #[command(group(ArgGroup::new("kind").required(true).args(["cubic", "quintic"])))]
    Crosscheck {
        #[arg(long)]
        cubic: bool,
        #[arg(long)]
        quintic: bool,
        #[arg(long = "max-p")]
        max_p: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Integers, optionally written as `MeK` (for example `1.5e8`).
fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(n);
    }
    let (mantissa, exp) = s
        .split_once(['e', 'E'])
        .ok_or_else(|| format!("not an integer: {s}"))?;
    let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in {s}"))?;
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.len() as u32 > exp {
        return Err(format!("not an integer: {s}"));
    }
    let digits: BigInt = format!("{int}{frac}")
        .parse()
        .map_err(|_| format!("not an integer: {s}"))?;
    Ok(digits * num_traits::pow(BigInt::from(10), (exp - frac.len() as u32) as usize))
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    s.parse::<BigRational>()
        .map_err(|_| format!("not a rational N/D: {s}"))
}

fn parse_symbol(s: &str) -> std::result::Result<ResidueSymbol, String> {
    s.parse::<ResidueSymbol>()
        .map_err(|_| format!("expected +1 or -1, got {s}"))
}

fn primality_label(p: Primality) -> &'static str {
    match p {
        Primality::Prime => "prime",
        Primality::ProbablePrime => "probable",
        Primality::Composite => "composite",
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::NoRepresentation { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` (program name first) and run, writing to the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, &echo, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

fn write_json(path: &PathBuf, report: &Report) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    std::fs::write(path, text + "\n").map_err(io_err)
}

fn dispatch(command: Command, echo: &[String], out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    match command {
        Command::Fq { q } => {
            writeln!(out, "{}", f_q_mod(q)?).map_err(io_err)?;
        }
        Command::Sq { q } => {
            writeln!(out, "{}", compute_sq(q)?).map_err(io_err)?;
        }
        Command::Tq { q } => {
            writeln!(out, "{}", compute_tq(q)?).map_err(io_err)?;
        }
        Command::Li { s, at } => match at {
            Some(x) => writeln!(out, "{}", eval_polylog_neg(s, &x)?).map_err(io_err)?,
            None => writeln!(out, "{}", polylog_neg(s)).map_err(io_err)?,
        },
        Command::Symbol { q, p, a } => {
            let a = a.unwrap_or_else(|| BigInt::from(q));
            writeln!(out, "{}", qth_residue_symbol(&a, &p, q)?).map_err(io_err)?;
        }
        Command::Mu { q, m, n } => {
            let r = mu_report(q, &m, &n)?;
            let a: Vec<String> = r.a.iter().map(ToString::to_string).collect();
            let digits: Vec<String> = r.class.digits().iter().map(ToString::to_string).collect();
            writeln!(out, "i\t{}", r.i).map_err(io_err)?;
            writeln!(out, "mu\t{}", r.element).map_err(io_err)?;
            writeln!(out, "a\t{}", a.join(" ")).map_err(io_err)?;
            writeln!(out, "class_mod_pi^{}\t{}", r.class.e, digits.join(" ")).map_err(io_err)?;
            writeln!(out, "qth_power\t{}", is_qth_power_class(&r.class)).map_err(io_err)?;
        }
        Command::Search {
            q,
            max_p,
            filter,
            json,
        } => {
            let primes = search_form_primes(q, &max_p, filter)?;
            write_prime_table(out, &primes)?;
            if let Some(path) = json {
                let results = primes
                    .iter()
                    .map(|fp| serde_json::to_value(fp).expect("serializes"))
                    .collect();
                let report = Report::new(echo, Some(q), Some(&max_p), results, Vec::new(), started);
                write_json(&path, &report)?;
            }
        }
        Command::Verify {
            q,
            max_p,
            threads,
            json,
        } => {
            ensure_odd_prime(q)?;
            let work = || -> Result<_> { Ok((identity_suite(q)?, sweep_equivalences(q, &max_p)?)) };
            let (identities, report) = match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
                    .install(work)?,
                None => work()?,
            };
            return write_verify(
                q,
                &max_p,
                &identities,
                &report,
                echo,
                json.as_ref(),
                out,
                started,
            );
        }
        Command::Crosscheck {
            cubic,
            quintic: _,
            max_p,
            json,
        } => {
            return crosscheck_command(
                if cubic { 3 } else { 5 },
                max_p,
                echo,
                json.as_ref(),
                out,
                started,
            );
        }
    }
    Ok(EXIT_OK)
}

fn write_prime_table(out: &mut dyn Write, primes: &[FormPrime]) -> Result<()> {
    writeln!(out, "p\tsymbol\tprimality\twitnesses").map_err(io_err)?;
    for fp in primes {
        let w: Vec<String> = fp
            .witnesses
            .iter()
            .map(|(m, n)| format!("({m},{n})"))
            .collect();
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            fp.p,
            fp.symbol,
            primality_label(fp.primality),
            w.join(" ")
        )
        .map_err(io_err)?;
    }
    Ok(())
}

/// The identity suites attached to a single `q`.
fn identity_suite(q: u64) -> Result<Vec<(String, bool)>> {
    let mut out = vec![
        ("f_q = x - x^q mod q".to_string(), verify_fq_fermat(q)?),
        (
            "S_q = zeros of f_q mod q^2".to_string(),
            verify_sq_zero_set(q)?,
        ),
        (
            "f_q(1-x) = -f_q(x) mod q^2".to_string(),
            verify_fq_symmetry(q)?,
        ),
        (
            "f_q = c_q Li_{1-q}(-x/(1-x)) mod q^2".to_string(),
            verify_fq_li_congruence(q)?,
        ),
        (
            "Li_{1-q}(1/x) = -Li_{1-q}(x)".to_string(),
            verify_li_reciprocal(q),
        ),
        (
            "jl weights closed form".to_string(),
            pair_weights_match_closed_form(q)?,
        ),
        (
            "distinguished members of S_q, T_q".to_string(),
            verify_distinguished_members(q)?,
        ),
    ];
    let q2 = q * q;
    let mut lerch = true;
    let mut jl = true;
    for k in 1..=q2 {
        let k = BigInt::from(k);
        if k.clone() % q != BigInt::from(0) {
            lerch &= lerch_check(q, &k)?;
        }
        jl &= jl_sum_check(q, &k)?;
    }
    out.push(("Lerch congruence, 0 < k <= q^2".to_string(), lerch));
    out.push(("jl sums, 0 < k <= q^2".to_string(), jl));
    let fli = (1..=10)
        .map(verify_fli_identity)
        .collect::<Result<Vec<bool>>>()?;
    out.push((
        "(x+1) F_s identity, s <= 10".to_string(),
        fli.into_iter().all(|b| b),
    ));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn write_verify(
    q: u64,
    max_p: &BigInt,
    identities: &[(String, bool)],
    report: &SweepReport,
    echo: &[String],
    json: Option<&PathBuf>,
    out: &mut dyn Write,
    started: Instant,
) -> Result<i32> {
    for (name, ok) in identities {
        writeln!(
            out,
            "identity\t{}\t{}",
            if *ok { "pass" } else { "FAIL" },
            name
        )
        .map_err(io_err)?;
    }
    let plus: Vec<String> = report.plus_primes.iter().map(ToString::to_string).collect();
    writeln!(out, "primes\t{}", report.prime_count).map_err(io_err)?;
    writeln!(out, "records\t{}", report.record_count).map_err(io_err)?;
    writeln!(out, "plus_primes\t{}", plus.len()).map_err(io_err)?;
    writeln!(out, "plus_list\t{}", plus.join(" ")).map_err(io_err)?;
    writeln!(out, "counterexamples\t{}", report.counterexamples.len()).map_err(io_err)?;
    for c in &report.counterexamples {
        writeln!(
            out,
            "counterexample\t{}\t({},{})\t{}",
            c.p, c.m, c.n, c.reason
        )
        .map_err(io_err)?;
    }
    let failed = identities.iter().any(|(_, ok)| !ok) || !report.is_clean();
    if let Some(path) = json {
        let mut results: Vec<serde_json::Value> = identities
            .iter()
            .map(|(name, ok)| json!({ "kind": "identity", "name": name, "pass": ok }))
            .collect();
        results.extend(report.primes.iter().map(|s| {
            let mut v = serde_json::to_value(s).expect("serializes");
            v["kind"] = json!("prime");
            v
        }));
        let counter = report
            .counterexamples
            .iter()
            .map(|c| serde_json::to_value(c).expect("serializes"))
            .collect();
        write_json(
            path,
            &Report::new(echo, Some(q), Some(max_p), results, counter, started),
        )?;
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

fn crosscheck_command(
    q: u64,
    max_p: u64,
    echo: &[String],
    json: Option<&PathBuf>,
    out: &mut dyn Write,
    started: Instant,
) -> Result<i32> {
    use rayon::prelude::*;
    let primes: Vec<u64> = (2..=max_p)
        .filter(|&p| p % q == 1 && is_prime_u64(p))
        .collect();
    let outcomes: Vec<(u64, Result<serde_json::Value>, bool)> = primes
        .par_iter()
        .map(|&p| {
            let r = if q == 3 {
                cubic_check(p).map(|c| (serde_json::to_value(&c).expect("serializes"), c.holds))
            } else {
                quintic_check(p).map(|c| (serde_json::to_value(&c).expect("serializes"), c.holds))
            };
            match r {
                Ok((v, holds)) => (p, Ok(v), holds),
                Err(e) => (p, Err(e), false),
            }
        })
        .collect();
    let mut results = Vec::new();
    let mut counter = Vec::new();
    for (p, r, holds) in outcomes {
        match r {
            Ok(v) => {
                if !holds {
                    writeln!(out, "fail\t{p}").map_err(io_err)?;
                    counter.push(v.clone());
                }
                results.push(v);
            }
            Err(e) => {
                writeln!(out, "fail\t{p}\t{e}").map_err(io_err)?;
                counter.push(json!({ "p": p, "error": e.to_string() }));
            }
        }
    }
    writeln!(out, "checked\t{}", primes.len()).map_err(io_err)?;
    writeln!(out, "failed\t{}", counter.len()).map_err(io_err)?;
    let failed = !counter.is_empty();
    if let Some(path) = json {
        let bound = BigInt::from(max_p);
        write_json(
            path,
            &Report::new(echo, Some(q), Some(&bound), results, counter, started),
        )?;
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qresidue").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parses_scientific_bounds() {
        assert_eq!(parse_bigint("1.5e8").unwrap(), BigInt::from(150_000_000));
        assert_eq!(parse_bigint("1e6").unwrap(), BigInt::from(1_000_000));
        assert_eq!(parse_bigint("250000").unwrap(), BigInt::from(250_000));
        assert!(parse_bigint("1.25e1").is_err());
        assert!(parse_bigint("abc").is_err());
    }

    #[test]
    fn sets() {
        assert_eq!(
            run_capture(&["sq", "--q", "7"]),
            (0, "0 1 6 17 25 33 44\n".into(), String::new())
        );
        let (code, out, _) = run_capture(&["tq", "--q", "3"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("inf"));
    }

    #[test]
    fn symbol_defaults_to_q() {
        assert_eq!(run_capture(&["symbol", "--q", "3", "--p", "61"]).1, "+1\n");
        assert_eq!(run_capture(&["symbol", "--q", "3", "--p", "7"]).1, "-1\n");
        assert_eq!(
            run_capture(&["symbol", "--q", "3", "--p", "7", "--a", "-1"]).1,
            "+1\n"
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["sq", "--q", "4"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sq"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sq", "--q", "3", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["crosscheck", "--max-p", "100"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["symbol", "--q", "3", "--p", "11"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn mu_output() {
        let (code, out, _) = run_capture(&["mu", "--q", "3", "--m", "5", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("i\t2\n"));
        assert!(out.contains("a\t-854 549\n"));
        assert!(out.contains("qth_power\ttrue\n"));
    }
}
