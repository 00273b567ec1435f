//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line; the process fails if any criterion does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed};

use cellular::discriminant::{gram_standard, product_cell_sizes, product_relation_sizes, transpose_sign};
use cellular::harness::{emit_json_lines, verify_corpus, VerifyOptions};
use cellular::linalg::{det_fraction_free, is_prime, PrimeField};
use cellular::radical::{central_nilpotent_witness, radical_chain, radical_oracle, ModularAlgebra};
use cellular::wedderburn::DEFAULT_TOLERANCE;
use cellular::{decompose, frame_number, Configuration, Corpus, SchemeSpec};

const ORACLE_BUDGET: u128 = 1 << 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus() -> Vec<(String, SchemeSpec, Configuration)> {
    Corpus::default()
        .entries()
        .into_iter()
        .map(|e| {
            let config = e.spec.configuration().expect("corpus entry is valid");
            (e.id, e.spec, config)
        })
        .collect()
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    check(spent < limit, || format!("took {spent:?}, limit {limit:?}"))?;
    Ok(spent)
}

fn frame_of(config: &Configuration, seed: u64) -> Result<BigInt, String> {
    let wd = decompose(config, seed, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    Ok(frame_number(config, &wd).map_err(|e| e.to_string())?.frame)
}

fn rad_dim(config: &Configuration, p: u64) -> Result<usize, String> {
    let alg = ModularAlgebra::new(config, p).map_err(|e| e.to_string())?;
    Ok(radical_chain(&alg).map_err(|e| e.to_string())?.dim)
}

fn corpus_shape(entries: &[(String, SchemeSpec, Configuration)]) -> Result<(), String> {
    let ids: BTreeSet<&str> = entries.iter().map(|(id, _, _)| id.as_str()).collect();
    check(entries.len() >= 25, || format!("only {} schemes", entries.len()))?;
    for id in ["hamming(2,2)", "hamming(3,2)", "johnson(4,2)", "johnson(5,2)"] {
        check(ids.contains(id), || format!("{id} missing"))?;
    }
    for n in 1..=24 {
        check(ids.contains(format!("rank2({n})").as_str()), || format!("rank2({n}) missing"))?;
    }
    let thin_orders: BTreeSet<usize> = entries
        .iter()
        .filter(|(_, s, _)| matches!(s, SchemeSpec::ThinCyclic(_) | SchemeSpec::ThinSym(_) | SchemeSpec::ThinGroup(_)))
        .map(|(_, _, c)| c.size())
        .collect();
    check((1..=8).all(|k| thin_orders.contains(&k)), || format!("thin group orders {thin_orders:?}"))?;
    check(entries.iter().any(|(_, s, _)| matches!(s, SchemeSpec::Schurian { .. })), || "no schurian".into())?;
    let inhomogeneous_sums = entries
        .iter()
        .filter(|(_, s, c)| matches!(s, SchemeSpec::DirectSum(..)) && !c.flags().homogeneous)
        .count();
    check(inhomogeneous_sums >= 5, || format!("{inhomogeneous_sums} inhomogeneous direct sums"))
}

fn discriminant_identity() -> Outcome {
    let start = Instant::now();
    let entries = corpus();
    corpus_shape(&entries)?;
    for (id, _, config) in &entries {
        let gram = gram_standard(config);
        let det = det_fraction_free(&gram.entries);
        let product = product_relation_sizes(config.scheme());
        check(det.abs() == product, || format!("{id}: |det| = {} but prod |R| = {product}", det.abs()))?;
        let sign = transpose_sign(config.scheme());
        check(det.is_negative() == (sign < 0), || format!("{id}: det {det} but sign formula gives {sign}"))?;
    }
    let spent = within(start, Duration::from_secs(10))?;
    Ok(format!("{} schemes in {spent:.2?}", entries.len()))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let entries = Corpus::default().entries();
    let options = VerifyOptions::default();
    let (reports, summary) = verify_corpus(&entries, &options);
    let expected_primes = primes_up_to(50);
    check(reports.len() == entries.len(), || "missing reports".into())?;
    for report in &reports {
        let tested: Vec<u64> = report.rows.iter().map(|r| r.p).collect();
        check(expected_primes.iter().all(|p| tested.contains(p)), || format!("{}: control primes missing", report.scheme_id))?;
        for row in &report.rows {
            let divides = row.p_divides_frame.ok_or_else(|| format!("{}: no Frame number", report.scheme_id))?;
            let dim = row.rad_dim.ok_or_else(|| format!("{} p={}: no radical", report.scheme_id, row.p))?;
            check(divides == (dim > 0), || format!("{} p={}: p|F={divides} but dim Rad={dim}", report.scheme_id, row.p))?;
        }
        check(report.pass, || format!("{} failed: {:?}", report.scheme_id, report.errors))?;
    }
    check(summary.rows_failed == 0, || format!("{} failed rows", summary.rows_failed))?;
    let spent = within(start, Duration::from_secs(60))?;
    Ok(format!("{} schemes, {} rows, 0 failed, {spent:.2?}", summary.schemes, summary.rows))
}

fn maschke() -> Outcome {
    let mut groups: Vec<(SchemeSpec, u64)> = (1..=12).map(|n| (SchemeSpec::ThinCyclic(n), n as u64)).collect();
    groups.push((SchemeSpec::ThinSym(3), 6));
    let mut rows = 0;
    for (spec, order) in &groups {
        let config = spec.configuration().map_err(|e| e.to_string())?;
        for p in primes_up_to(50) {
            let semisimple = rad_dim(&config, p)? == 0;
            check(semisimple == (order % p != 0), || format!("{spec} p={p}: semisimple={semisimple}"))?;
            rows += 1;
        }
        if let SchemeSpec::ThinCyclic(n) = spec {
            let expected = Pow::pow(BigInt::from(*n), *n as u32);
            let frame = frame_of(&config, 0)?;
            check(frame == expected, || format!("{spec}: F = {frame}, expected {expected}"))?;
        }
    }
    Ok(format!("{} groups, {rows} primes", groups.len()))
}

fn closed_forms() -> Outcome {
    for n in 2..=24usize {
        let config = SchemeSpec::Rank2(n).configuration().map_err(|e| e.to_string())?;
        let frame = frame_of(&config, 0)?;
        check(frame == BigInt::from(n * n), || format!("rank2({n}): F = {frame}"))?;
    }
    for n in 1..=5 {
        let config = SchemeSpec::Discrete(n).configuration().map_err(|e| e.to_string())?;
        let frame = frame_of(&config, 0)?;
        check(frame.is_one(), || format!("discrete({n}): F = {frame}"))?;
        for p in primes_up_to(50) {
            let dim = rad_dim(&config, p)?;
            check(dim == 0, || format!("discrete({n}) p={p}: dim Rad = {dim}"))?;
        }
    }
    Ok("rank2(2..=24), discrete(1..=5)".into())
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for (id, _, config) in corpus() {
        for p in primes_up_to(ORACLE_BUDGET as u64) {
            let needed = (0..config.rank()).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p)));
            if needed.is_none_or(|x| x > ORACLE_BUDGET) {
                break;
            }
            let alg = ModularAlgebra::new(&config, p).map_err(|e| e.to_string())?;
            let chain = radical_chain(&alg).map_err(|e| format!("{id} p={p}: {e}"))?;
            let oracle = radical_oracle(&alg, ORACLE_BUDGET).map_err(|e| format!("{id} p={p}: {e}"))?;
            check(chain.basis == oracle.basis, || format!("{id} p={p}: chain {:?} oracle {:?}", chain.basis, oracle.basis))?;
            pairs += 1;
        }
    }
    check(pairs > 0, || "no pair within budget".into())?;
    Ok(format!("{pairs} (scheme, prime) pairs"))
}

fn mat_mul(f: PrimeField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])))).collect())
        .collect()
}

fn propositions() -> Outcome {
    let (mut witnesses, mut semisimple) = (0, 0);
    for (id, _, config) in corpus() {
        let prod_r = product_relation_sizes(config.scheme());
        let prod_x = product_cell_sizes(config.scheme());
        for p in primes_up_to(50) {
            let bp = BigInt::from(p);
            let alg = ModularAlgebra::new(&config, p).map_err(|e| e.to_string())?;
            let rad = radical_chain(&alg).map_err(|e| format!("{id} p={p}: {e}"))?;
            if prod_x.is_multiple_of(&bp) {
                let w = central_nilpotent_witness(&config, p)
                    .map_err(|e| format!("{id} p={p}: {e}"))?
                    .ok_or_else(|| format!("{id} p={p}: no witness"))?;
                let f = alg.field();
                let wm = alg.matrix(&w.element);
                check(wm.iter().flatten().any(|&x| x != 0), || format!("{id} p={p}: witness is zero"))?;
                check(mat_mul(f, &wm, &wm).iter().flatten().all(|&x| x == 0), || format!("{id} p={p}: square nonzero"))?;
                for rel in 0..config.rank() {
                    let a = alg.basis_matrix(rel);
                    check(mat_mul(f, &wm, &a) == mat_mul(f, &a, &wm), || format!("{id} p={p}: not central"))?;
                }
                check(rad.contains(f, &w.element), || format!("{id} p={p}: witness outside the radical"))?;
                witnesses += 1;
            }
            if !prod_r.is_multiple_of(&bp) {
                check(rad.dim == 0, || format!("{id} p={p}: p does not divide prod |R| but dim Rad = {}", rad.dim))?;
                semisimple += 1;
            }
        }
    }
    Ok(format!("{witnesses} witnesses, {semisimple} a priori semisimple pairs"))
}

fn wedderburn_validation() -> Outcome {
    let entries = corpus();
    for (id, _, config) in &entries {
        let mut multisets = Vec::new();
        for seed in [0, 101, 20_000] {
            let wd = decompose(config, seed, DEFAULT_TOLERANCE).map_err(|e| format!("{id} seed {seed}: {e}"))?;
            let sum_f2: usize = wd.blocks.iter().map(|b| b.degree * b.degree).sum();
            let sum_mf: usize = wd.blocks.iter().map(|b| b.degree * b.multiplicity).sum();
            check(sum_f2 == config.rank(), || format!("{id}: sum f^2 = {sum_f2}, r = {}", config.rank()))?;
            check(sum_mf == config.size(), || format!("{id}: sum m f = {sum_mf}, n = {}", config.size()))?;
            let fr = frame_number(config, &wd).map_err(|e| format!("{id}: {e}"))?;
            check(fr.quotient_is_integer(), || format!("{id}: Frame quotient {} is not an integer", fr.quotient))?;
            multisets.push(wd.pairs());
        }
        check(multisets.windows(2).all(|w| w[0] == w[1]), || format!("{id}: blocks differ across seeds {multisets:?}"))?;
    }
    Ok(format!("{} schemes, 3 seeds each", entries.len()))
}

fn determinism() -> Outcome {
    let entries = Corpus { seed: 5, ..Corpus::default() }.entries();
    let options = VerifyOptions { seed: 5, ..VerifyOptions::default() };
    let first = emit_json_lines(&verify_corpus(&entries, &options).0);
    let second = emit_json_lines(&verify_corpus(&entries, &options).0);
    check(first == second, || "two runs differ".into())?;
    let serial = emit_json_lines(&verify_corpus(&entries, &VerifyOptions { jobs: Some(1), ..options.clone() }).0);
    check(first == serial, || "parallel and serial runs differ".into())?;
    check(first.lines().count() == entries.len(), || "one line per scheme".into())?;
    Ok(format!("{} bytes identical", first.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("discriminant identity", discriminant_identity),
        ("main theorem", main_theorem),
        ("Maschke recovery", maschke),
        ("closed forms", closed_forms),
        ("oracle equivalence", oracle_equivalence),
        ("proposition checks", propositions),
        ("Wedderburn validation", wedderburn_validation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
