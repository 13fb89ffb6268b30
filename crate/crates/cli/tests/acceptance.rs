//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Expected values are either fixed fixtures or recomputed
//! here by brute force.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use perfect_forge::arith::is_prime;
use perfect_forge::classify;
use perfect_forge::lab;
use perfect_forge::products;
use perfect_forge::shapes;
use perfect_forge::{factorize, Class, Factorization};
use perfect_forge_cli::run;
use perfect_forge_cli::scan::{self, OutputFormat, ScanConfig};
use rayon::prelude::*;

type Verdict = Result<String, String>;

fn nat(k: u64) -> BigUint {
    BigUint::from(k)
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("perfect-forge").chain(args.iter().copied()), &mut out, &mut err);
    if code != 0 {
        return Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)));
    }
    Ok(String::from_utf8(out).unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

// value-domain brute force

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn sigma(n: u64) -> u64 {
    divisors(n).iter().sum()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn valuation(mut n: u64, p: u64) -> u64 {
    let mut a = 0;
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    a
}

fn prime_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&d| d > 1 && (2..d).take_while(|q| q * q <= d).all(|q| d % q != 0)).collect()
}

fn e_divisors(n: u64, ps: &[u64]) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&d| {
            ps.iter().all(|&p| {
                let b = valuation(d, p);
                b >= 1 && valuation(n, p) % b == 0
            })
        })
        .collect()
}

fn product_exponents(ps: &[u64], ds: &[u64]) -> Vec<BigUint> {
    ps.iter().map(|&p| nat(ds.iter().map(|&d| valuation(d, p)).sum())).collect()
}

fn exponents(f: &Factorization) -> Vec<BigUint> {
    f.exponents().cloned().collect()
}

fn count_partitions(n: u64, min: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (min.max(2)..=n).filter(|d| n % d == 0).map(|d| count_partitions(n / d, d)).sum()
}

// criteria

fn t0tstar_table() -> Verdict {
    let table: [(u64, &str); 9] = [
        (2, "p1^3\n"),
        (3, "p1^5\n"),
        (4, "p1^7\n"),
        (5, "p1^9\n"),
        (6, "p1^11\n"),
        (7, "p1^13\n"),
        (8, "p1^15\n"),
        (9, "p1^17\np1*p2\n"),
        (10, "p1^19\n"),
    ];
    let start = Instant::now();
    for (k, rows) in table {
        let out = cli(&["solve", "--family", "t0tstar", "--k", &k.to_string()])?;
        ensure(out == rows, || format!("k = {k}: got {out:?}, expected {rows:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("9 rows in {:.2?}", start.elapsed()))
}

fn superperfect_catalog() -> Verdict {
    let bullets: [(u64, u64, u64); 11] = [
        (20, 3, 3),
        (24, 2, 2),
        (32, 4, 4),
        (48, 16, 16),
        (64, 64, 64),
        (110, 93, 93),
        (168, 6, 16),
        (168, 27, 27),
        (216, 14, 14),
        (234, 10, 10),
        (252, 8, 8),
    ];
    let start = Instant::now();
    for (k, a, b) in bullets {
        // larger exponent on the smaller prime, as shapes are written
        let f = Factorization::from_small(&[(2, a.max(b)), (3, a.min(b))]).map_err(|e| e.to_string())?;
        let got = classify::mult_e_superperfect_order(&f).map_err(|e| e.to_string())?;
        ensure(got == Some(nat(k)), || format!("{f}: order {got:?}, expected {k}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("10 bullets (11 shapes) in {:.2?}", start.elapsed()))
}

fn thirteen_examples() -> Verdict {
    let start = Instant::now();
    let out = cli(&["solve", "--family", "e-perfect", "--k", "13", "--r-max", "3", "--alpha-max", "60"])?;
    let found: Vec<&str> = out.lines().collect();
    for want in ["p1^18*p2^18", "p1^9*p2^9*p3^9"] {
        ensure(found.contains(&want), || format!("{want} missing from {found:?}"))?;
    }
    for pairs in [&[(2, 18), (3, 18)][..], &[(2, 9), (3, 9), (5, 9)]] {
        let f = Factorization::from_small(pairs).map_err(|e| e.to_string())?;
        let got = classify::mult_e_perfect_order(&f).map_err(|e| e.to_string())?;
        ensure(got == Some(nat(13)), || format!("{f}: order {got:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("solver found {found:?} in {:.2?}", start.elapsed()))
}

fn oracle_equivalences() -> Verdict {
    let start = Instant::now();
    let e_bad: Vec<u64> = (2..=100_000u64)
        .into_par_iter()
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let ps = prime_divisors(n);
            let ds = e_divisors(n, &ps);
            products::e_divisor_count(&f).unwrap() != nat(ds.len() as u64)
                || products::e_divisor_sum(&f).unwrap() != nat(ds.iter().sum())
                || exponents(&products::e_divisor_product(&f).unwrap()) != product_exponents(&ps, &ds)
        })
        .collect();
    ensure(e_bad.is_empty(), || format!("T_e/σ_e/d_e mismatches at {:?}", &e_bad[..e_bad.len().min(5)]))?;
    let t_bad: Vec<u64> = (2..=10_000u64)
        .into_par_iter()
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let ps = prime_divisors(n);
            let ds = divisors(n);
            let unitary: Vec<u64> = ds.iter().copied().filter(|&d| gcd(d, n / d) == 1).collect();
            exponents(&products::divisor_product(&f)) != product_exponents(&ps, &ds)
                || exponents(&products::unitary_divisor_product(&f)) != product_exponents(&ps, &unitary)
        })
        .collect();
    ensure(t_bad.is_empty(), || format!("T/T* mismatches at {:?}", &t_bad[..t_bad.len().min(5)]))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("0 mismatches in {:.2?}", start.elapsed()))
}

fn t_identity() -> Verdict {
    let bad: Vec<u64> = (2..=10_000u64)
        .into_par_iter()
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let t = products::t_function(&f).unwrap();
            let half = products::QExp::new(products::e_divisor_count(&f).unwrap(), nat(2));
            t.pow(&half).to_factorization().ok() != Some(products::e_divisor_product(&f).unwrap())
        })
        .collect();
    ensure(bad.is_empty(), || format!("mismatches at {:?}", &bad[..bad.len().min(5)]))?;
    Ok("0 mismatches on [2, 10^4]".into())
}

fn sandor_scan() -> Verdict {
    const LIMIT: u64 = 100_000;
    let config = ScanConfig {
        lo: 2,
        hi: LIMIT,
        classes: vec![Class::MultEPerfect, Class::MultESuperperfect],
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        output_format: OutputFormat::Jsonl,
    };
    let mut perfect = Vec::new();
    let mut superperfect = Vec::new();
    scan::scan_members(&config, |hit| {
        if hit.order == Some(nat(2)) {
            match hit.class {
                Class::MultEPerfect => perfect.push(hit.n),
                _ => superperfect.push(hit.n),
            }
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    ensure(perfect == [64, 729, 15625], || format!("e-perfect set {perfect:?}"))?;

    // p^a <= LIMIT with σ(σ(a)) = 2a
    let mut expected = Vec::new();
    for p in (2..=LIMIT).filter(|&p| is_prime(p)) {
        let mut value = p;
        let mut a = 1;
        while value <= LIMIT {
            if sigma(sigma(a)) == 2 * a {
                expected.push(value);
            }
            value = match value.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
            a += 1;
        }
    }
    expected.sort_unstable();
    ensure(superperfect == expected, || format!("superperfect set {superperfect:?}, expected {expected:?}"))?;
    let o = lab::verify_sandor_equivalence(LIMIT).map_err(|e| e.to_string())?;
    ensure(o.passed, || format!("{:?}", o.counterexamples))?;
    Ok(format!("{perfect:?}; {} superperfect members", superperfect.len()))
}

fn gcd_box() -> Verdict {
    let start = Instant::now();
    let primes: Vec<u64> = (2..=100).filter(|&p| is_prime(p)).collect();
    let o = lab::verify_gcd_characterization(&primes, 3, 60).map_err(|e| e.to_string())?;
    ensure(o.passed, || format!("counterexamples {:?}", o.counterexamples))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{} cases in {:.2?}", o.checked, start.elapsed()))
}

fn order_bound() -> Verdict {
    let instances = lab::bound_instances(200, 3, 120).map_err(|e| e.to_string())?;
    ensure(!instances.is_empty(), || "solver produced no instances".into())?;
    let o = lab::verify_bounds(&instances).map_err(|e| e.to_string())?;
    ensure(o.passed, || format!("counterexamples {:?}", o.counterexamples))?;
    let b = lab::order_upper_bound(&[6]).map_err(|e| e.to_string())?;
    ensure((b - 6f64.sqrt()).abs() < 1e-12, || format!("r = 1 bound {b}"))?;
    let qs = lab::admissible_prime_orders(&[6]).map_err(|e| e.to_string())?;
    ensure(qs == [2], || format!("admissible q for p^6: {qs:?}"))?;
    let c1 = lab::BoundConstants::c1();
    ensure((*c1.numer(), *c1.denom()) == (15379, 10000), || format!("C1 = {c1}"))?;
    Ok(format!("{} instances with all a_i >= 3; p^6 admits q = 2 only", instances.len()))
}

fn even_perfect() -> Verdict {
    let list = [2u64, 3, 5, 7, 13];
    let evens: Vec<u64> = list.iter().map(|&p| (1u64 << (p - 1)) * ((1u64 << p) - 1)).collect();
    for (&p, &n) in list.iter().zip(&evens) {
        let k = nat(3 * (2 * p - 1));
        let report = classify::classify(&factorize(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(report.t0tstar_order == Some(k.clone()), || format!("{n}: order {:?}", report.t0tstar_order))?;
        for &m in evens.iter().filter(|&&m| m != n) {
            let other = classify::t0tstar_order(&factorize(m).unwrap());
            ensure(other != Some(k.clone()), || format!("{m} also has order {k}"))?;
        }
    }
    let o = lab::verify_even_perfect_order(&list).map_err(|e| e.to_string())?;
    ensure(o.passed, || format!("{:?}", o.counterexamples))?;
    Ok(format!("{evens:?}"))
}

fn prediction_sweep() -> Verdict {
    let start = Instant::now();
    let bad: Vec<u64> = (2..=500u64)
        .into_par_iter()
        .filter(|&k| {
            shapes::solve_t0tstar(k).unwrap().shapes() != shapes::predicted_shapes(k).unwrap().shapes()
        })
        .collect();
    ensure(bad.is_empty(), || format!("disagreement at k = {bad:?}"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("k in [2, 500] in {:.2?}", start.elapsed()))
}

fn partition_counts() -> Verdict {
    for n in 2..=100u64 {
        let got = shapes::multiplicative_partitions(n, None, None).map_err(|e| e.to_string())?.len() as u64;
        let want = count_partitions(n, 2);
        ensure(got == want, || format!("n = {n}: {got} partitions, expected {want}"))?;
    }
    let out = cli(&["partitions", "125", "--parts", "3", "--mod", "4", "--residue", "1"])?;
    ensure(out == "5*5*5\n", || format!("125 filtered: {out:?}"))?;
    Ok("n in [2, 100]; 125 -> 5*5*5".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("t0tstar table k = 2..10", t0tstar_table),
        ("e-superperfect catalog", superperfect_catalog),
        ("13-multiplicatively e-perfect examples", thirteen_examples),
        ("oracle equivalences", oracle_equivalences),
        ("t(n)^(d_e/2) = T_e(n)", t_identity),
        ("e-perfect / e-superperfect scan", sandor_scan),
        ("gcd-form equivalence box", gcd_box),
        ("order bound", order_bound),
        ("even perfect t0tstar orders", even_perfect),
        ("prediction = solver, k <= 500", prediction_sweep),
        ("multiplicative partition counts", partition_counts),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
