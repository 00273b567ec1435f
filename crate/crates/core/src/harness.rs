//! End-to-end verification of a scheme: discriminant, Wedderburn data, Frame
//! number, and the radical over every tested prime, cross-checked against the
//! Frame number, the oracle and the central nilpotent witness.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::discriminant::{discriminant_standard, product_cell_sizes, product_relation_sizes};
use crate::linalg::is_prime;
use crate::radical::{central_nilpotent_witness, radical_chain, radical_oracle, ModularAlgebra};
use crate::scheme::{Configuration, Scheme};
use crate::wedderburn::{decompose, frame_number, DEFAULT_TOLERANCE};

pub const REPORT_VERSION: u32 = 1;
pub const CONTROL_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tol: f64,
    /// Every prime up to this bound is tested as a control.
    pub prime_bound: u64,
    /// The oracle runs when `p^r` is at most this.
    pub oracle_budget: u128,
    /// Worker threads for corpus runs; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, tol: DEFAULT_TOLERANCE, prime_bound: 50, oracle_budget: 1 << 16, jobs: None }
    }
}

fn prime_factors(mut m: u64, out: &mut Vec<u64>) {
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
}

/// Sorted prime divisors of `∏|R|`.
pub fn candidate_primes(scheme: &Scheme) -> Vec<u64> {
    let mut primes = Vec::new();
    for rel in 0..scheme.rank() {
        prime_factors(scheme.relation_size(rel) as u64, &mut primes);
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// Candidates, the control primes and all primes up to `options.prime_bound`.
pub fn tested_primes(scheme: &Scheme, options: &VerifyOptions) -> Vec<u64> {
    let mut primes = candidate_primes(scheme);
    primes.extend(CONTROL_PRIMES);
    primes.extend((2..=options.prime_bound).filter(|&p| is_prime(p)));
    primes.sort_unstable();
    primes.dedup();
    primes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub p_divides_frame: Option<bool>,
    pub rad_dim: Option<usize>,
    pub semisimple: Option<bool>,
    /// `None` when `p` divides no cell size.
    pub witness_ok: Option<bool>,
    /// `None` when `p^r` exceeds the oracle budget.
    pub oracle_ok: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub v: u32,
    pub scheme_id: String,
    pub n: usize,
    pub r: usize,
    pub cells: Vec<usize>,
    #[serde(rename = "prod_R")]
    pub prod_r: String,
    #[serde(rename = "prod_X")]
    pub prod_x: String,
    pub disc: Option<String>,
    pub disc_sign: Option<i8>,
    pub blocks: Vec<[usize; 2]>,
    pub wedderburn_seed: Option<u64>,
    pub frame: Option<String>,
    pub frame_quotient: Option<String>,
    pub rows: Vec<PrimeRow>,
    pub checks: BTreeMap<String, bool>,
    pub errors: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failed_rows(&self) -> impl Iterator<Item = &PrimeRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(f, "{} {verdict}", self.scheme_id)?;
        writeln!(f, "  n={} r={} cells={:?}", self.n, self.r, self.cells)?;
        writeln!(f, "  prod_R={} prod_X={} disc={} sign={}", self.prod_r, self.prod_x, opt(&self.disc), opt(&self.disc_sign))?;
        let blocks: Vec<String> = self.blocks.iter().map(|[d, m]| format!("({d},{m})")).collect();
        writeln!(f, "  blocks=[{}] F={} N={}", blocks.join(","), opt(&self.frame), opt(&self.frame_quotient))?;
        for row in &self.rows {
            writeln!(
                f,
                "  p={:<3} p|F={:<5} rad_dim={:<3} semisimple={:<5} witness={:<5} oracle={:<5} {}",
                row.p,
                opt(&row.p_divides_frame),
                opt(&row.rad_dim),
                opt(&row.semisimple),
                opt(&row.witness_ok),
                opt(&row.oracle_ok),
                if row.pass { "ok" } else { "FAIL" }
            )?;
        }
        for (name, ok) in &self.checks {
            if !ok {
                writeln!(f, "  check failed: {name}")?;
            }
        }
        for e in &self.errors {
            writeln!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

/// Runs `f`, turning a panic into an error message.
fn guarded<T>(what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    panic::catch_unwind(AssertUnwindSafe(f)).map_err(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        format!("{what}: {msg}")
    })
}

struct PrimeOutcome {
    row: PrimeRow,
    errors: Vec<String>,
}

fn verify_prime(config: &Configuration, p: u64, frame: Option<&BigInt>, prod_r: &BigInt, options: &VerifyOptions) -> PrimeOutcome {
    let mut errors = Vec::new();
    let mut row = PrimeRow {
        p,
        p_divides_frame: frame.map(|f| f.is_multiple_of(&BigInt::from(p))),
        rad_dim: None,
        semisimple: None,
        witness_ok: None,
        oracle_ok: None,
        pass: false,
    };

    let computed = guarded("radical", || {
        let alg = ModularAlgebra::new(config, p)?;
        let chain = radical_chain(&alg)?;
        Ok::<_, crate::radical::RadicalError>((alg, chain))
    });
    let (alg, chain) = match computed {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => {
            errors.push(format!("p={p}: {e}"));
            return PrimeOutcome { row, errors };
        }
        Err(e) => {
            errors.push(format!("p={p}: {e}"));
            return PrimeOutcome { row, errors };
        }
    };
    row.rad_dim = Some(chain.dim);
    row.semisimple = Some(chain.is_semisimple());

    let cell_divisible = config.cell_sizes().iter().any(|&s| (s as u64).is_multiple_of(p));
    if cell_divisible {
        row.witness_ok = Some(match guarded("witness", || central_nilpotent_witness(config, p)) {
            Ok(Ok(Some(w))) => chain.contains(alg.field(), &w.element),
            Ok(Ok(None)) => {
                errors.push(format!("p={p}: no witness although p divides a cell size"));
                false
            }
            Ok(Err(e)) => {
                errors.push(format!("p={p}: witness: {e}"));
                false
            }
            Err(e) => {
                errors.push(format!("p={p}: {e}"));
                false
            }
        });
    }

    let needed = (0..alg.rank()).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p)));
    if needed.is_some_and(|needed| needed <= options.oracle_budget) {
        row.oracle_ok = Some(match guarded("oracle", || radical_oracle(&alg, options.oracle_budget)) {
            Ok(Ok(oracle)) => oracle.basis == chain.basis,
            Ok(Err(e)) => {
                errors.push(format!("p={p}: oracle: {e}"));
                false
            }
            Err(e) => {
                errors.push(format!("p={p}: {e}"));
                false
            }
        });
    }

    let theorem = row.p_divides_frame.is_some_and(|d| d == !chain.is_semisimple());
    let a_priori = prod_r.is_multiple_of(&BigInt::from(p)) || chain.is_semisimple();
    row.pass = theorem && a_priori && row.witness_ok != Some(false) && row.oracle_ok != Some(false);
    PrimeOutcome { row, errors }
}

/// Verifies one configuration. Failures are recorded in the report.
pub fn verify_scheme(id: &str, config: &Configuration, options: &VerifyOptions) -> VerificationReport {
    let scheme = config.scheme();
    let prod_r = product_relation_sizes(scheme);
    let prod_x = product_cell_sizes(scheme);
    let mut checks = BTreeMap::new();
    let mut errors = Vec::new();

    let disc = guarded("discriminant", || discriminant_standard(config));
    checks.insert("discriminant".to_string(), disc.is_ok());
    let (disc_value, disc_sign) = match disc {
        Ok(d) => (Some(d.value.to_string()), Some(d.sign)),
        Err(e) => {
            errors.push(e);
            (None, None)
        }
    };

    let mut blocks = Vec::new();
    let mut wedderburn_seed = None;
    let mut frame = None;
    let mut quotient = None;
    match guarded("wedderburn", || decompose(config, options.seed, options.tol)) {
        Ok(Ok(wd)) => {
            blocks = wd.blocks.iter().map(|b| [b.degree, b.multiplicity]).collect();
            wedderburn_seed = Some(wd.seed);
            let sum_f2: usize = wd.blocks.iter().map(|b| b.degree * b.degree).sum();
            let sum_mf: usize = wd.blocks.iter().map(|b| b.degree * b.multiplicity).sum();
            checks.insert("wedderburn_sums".to_string(), sum_f2 == config.rank() && sum_mf == config.size());
            match frame_number(config, &wd) {
                Ok(fr) => {
                    checks.insert("frame_divisible".to_string(), true);
                    checks.insert("frame_quotient_integer".to_string(), fr.quotient_is_integer());
                    frame = Some(fr.frame);
                    quotient = Some(fr.quotient.to_string());
                }
                Err(e) => {
                    checks.insert("frame_divisible".to_string(), false);
                    errors.push(format!("frame: {e}"));
                }
            }
        }
        Ok(Err(e)) => {
            checks.insert("wedderburn_sums".to_string(), false);
            errors.push(format!("wedderburn: {e}"));
        }
        Err(e) => {
            checks.insert("wedderburn_sums".to_string(), false);
            errors.push(e);
        }
    }

    let mut rows = Vec::new();
    for p in tested_primes(scheme, options) {
        let outcome = verify_prime(config, p, frame.as_ref(), &prod_r, options);
        rows.push(outcome.row);
        errors.extend(outcome.errors);
    }

    let pass = rows.iter().all(|r| r.pass) && checks.values().all(|&ok| ok);
    VerificationReport {
        v: REPORT_VERSION,
        scheme_id: id.to_string(),
        n: config.size(),
        r: config.rank(),
        cells: config.cell_sizes(),
        prod_r: prod_r.to_string(),
        prod_x: prod_x.to_string(),
        disc: disc_value,
        disc_sign,
        blocks,
        wedderburn_seed,
        frame: frame.map(|f| f.to_string()),
        frame_quotient: quotient,
        rows,
        checks,
        errors,
        pass,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub schemes: usize,
    pub schemes_passed: usize,
    pub rows: usize,
    pub rows_failed: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        Summary {
            schemes: reports.len(),
            schemes_passed: reports.iter().filter(|r| r.pass).count(),
            rows: reports.iter().map(|r| r.rows.len()).sum(),
            rows_failed: reports.iter().map(|r| r.failed_rows().count()).sum(),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "schemes={} passed={} rows={} failed_rows={}",
            self.schemes, self.schemes_passed, self.rows, self.rows_failed
        )
    }
}

fn verify_entry(entry: &CorpusEntry, options: &VerifyOptions) -> VerificationReport {
    match entry.spec.configuration() {
        Ok(config) => verify_scheme(&entry.id, &config, options),
        Err(e) => VerificationReport {
            v: REPORT_VERSION,
            scheme_id: entry.id.clone(),
            n: 0,
            r: 0,
            cells: Vec::new(),
            prod_r: String::new(),
            prod_x: String::new(),
            disc: None,
            disc_sign: None,
            blocks: Vec::new(),
            wedderburn_seed: None,
            frame: None,
            frame_quotient: None,
            rows: Vec::new(),
            checks: BTreeMap::from([("construction".to_string(), false)]),
            errors: vec![format!("construction: {e}")],
            pass: false,
        },
    }
}

/// Verifies every entry in parallel; reports are sorted by scheme id.
pub fn verify_corpus(entries: &[CorpusEntry], options: &VerifyOptions) -> (Vec<VerificationReport>, Summary) {
    let run = || entries.par_iter().map(|e| verify_entry(e, options)).collect::<Vec<_>>();
    let mut reports = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    reports.sort_by(|a, b| a.scheme_id.cmp(&b.scheme_id));
    let summary = Summary::of(&reports);
    (reports, summary)
}

pub fn emit_json_lines(reports: &[VerificationReport]) -> String {
    reports.iter().map(|r| r.to_json_line() + "\n").collect()
}

pub fn parse_json_lines(text: &str) -> serde_json::Result<Vec<VerificationReport>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(VerificationReport::from_json_line).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SchemeSpec;

    fn report(spec: &str) -> VerificationReport {
        let spec: SchemeSpec = spec.parse().unwrap();
        verify_scheme(&spec.to_string(), &spec.configuration().unwrap(), &VerifyOptions::default())
    }

    #[test]
    fn candidates() {
        let c = |s: &str| candidate_primes(s.parse::<SchemeSpec>().unwrap().build().as_ref().unwrap());
        assert_eq!(c("rank2(3)"), vec![2, 3]);
        assert_eq!(c("discrete(2)"), Vec::<u64>::new());
        assert_eq!(c("thin-cyclic(4)"), vec![2]);
    }

    #[test]
    fn rank2_three() {
        let rep = report("rank2(3)");
        assert!(rep.pass, "{rep}");
        assert_eq!(rep.frame.as_deref(), Some("9"));
        let row = |p| rep.rows.iter().find(|r| r.p == p).unwrap();
        assert_eq!((row(2).p_divides_frame, row(2).semisimple), (Some(false), Some(true)));
        assert_eq!((row(3).p_divides_frame, row(3).rad_dim), (Some(true), Some(1)));
    }

    #[test]
    fn thin_z6_maschke() {
        let rep = report("thin-cyclic(6)");
        assert!(rep.pass, "{rep}");
        for row in &rep.rows {
            assert_eq!(row.semisimple, Some(row.p != 2 && row.p != 3), "p={}", row.p);
        }
    }

    #[test]
    fn direct_sum_with_a_point() {
        let rep = report("direct-sum(rank2(2),discrete(1))");
        assert!(rep.pass, "{rep}");
        let two = rep.rows.iter().find(|r| r.p == 2).unwrap();
        assert_eq!((two.semisimple, two.witness_ok), (Some(false), Some(true)));
    }

    #[test]
    fn json_round_trip() {
        let reports = vec![report("rank2(3)"), report("discrete(2)")];
        let text = emit_json_lines(&reports);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(parse_json_lines(&text).unwrap(), reports);
        let line: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in ["v", "scheme_id", "n", "r", "cells", "prod_R", "prod_X", "disc", "disc_sign", "blocks", "frame", "frame_quotient", "rows", "pass"] {
            assert!(line.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn empty_corpus() {
        let (reports, summary) = verify_corpus(&[], &VerifyOptions::default());
        assert!(reports.is_empty());
        assert_eq!(summary, Summary::default());
    }
}
