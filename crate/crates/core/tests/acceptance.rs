//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Every check is exact; the only tolerances are the runtime budgets below.

mod common;

use std::cmp::Ordering;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seshadri::abelian::{
    factorial, floor_scan, hyperelliptic_upper, odd_theta_count, ppas_exact,
    ppas_infeasibility_scan, ppav_general_upper, AbelianModel,
};
use seshadri::intersection::{kleiman_upper, rationality_solve, PolarizedModel};
use seshadri::surface::{
    certify_rank_one, default_alpha, verify_certificate, very_general_bounds, violation_scan,
    SurfaceModel,
};
use seshadri::{canonicalize, isqrt, rad_cmp, rad_pow, Radical, Rational};

const BUDGET_C1: Duration = Duration::from_secs(1);
const BUDGET_C2: Duration = Duration::from_secs(1);
const BUDGET_C3: Duration = Duration::from_secs(1);
const BUDGET_C4: Duration = Duration::from_secs(60);
const BUDGET_C5: Duration = Duration::from_secs(1);
const BUDGET_C7: Duration = Duration::from_secs(5);
const BUDGET_C8: Duration = Duration::from_secs(1);
const BUDGET_C9: Duration = Duration::from_secs(30);

const SEED: u64 = 0x00ac_ce97;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < budget, || {
        format!("took {took:?}, budget {budget:?}")
    })?;
    Ok(took)
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

fn c1_ppas_exact() -> Outcome {
    let start = Instant::now();
    let exact = ppas_exact().map_err(|e| e.to_string())?;
    ensure(exact.value == q(4, 3), || format!("value {}", exact.value))?;
    ensure(exact.verify(), || "certificate does not verify".into())?;
    ensure(
        q(4, 3).pow(2) == q(16, 9) && q(16, 9) < Rational::from(2i64),
        || "16/9 < 2 fails".into(),
    )?;
    let sqrt2 = canonicalize(Rational::from(2i64), 2).unwrap();
    ensure(
        rad_cmp(&Radical::from(q(4, 3)), &sqrt2) == Ordering::Less,
        || "4/3 < sqrt(2) fails".into(),
    )?;
    let hits = ppas_infeasibility_scan(500);
    ensure(hits.is_empty(), || format!("scan found {hits:?}"))?;
    let took = within(start, BUDGET_C1)?;
    Ok(format!(
        "ppas value 4/3 < sqrt(2), scan a,b <= 500 empty ({took:.2?})"
    ))
}

fn c2_hyperelliptic() -> Outcome {
    let start = Instant::now();
    for g in 2..=16u32 {
        let r = hyperelliptic_upper(g).map_err(|e| e.to_string())?;
        let expected = Radical::from(q(2 * i64::from(g), i64::from(g) + 1));
        ensure(r.value == expected, || format!("g = {g}: {}", r.value))?;
        let maximal = canonicalize(Rational::from(factorial(g)), g).unwrap();
        ensure(rad_cmp(&r.value, &maximal) == Ordering::Less, || {
            format!("g = {g} not below (g!)^(1/g)")
        })?;
    }
    let took = within(start, BUDGET_C2)?;
    Ok(format!("2g/(g+1) < (g!)^(1/g) for g in 2..16 ({took:.2?})"))
}

fn c3_general() -> Outcome {
    let start = Instant::now();
    for g in 2..=16u32 {
        let r = ppav_general_upper(g).map_err(|e| e.to_string())?;
        // closed form rebuilt here from scratch
        let denom = BigUint::from(2u32).pow(g - 1) * (BigUint::from(2u32).pow(g) - 1u32);
        let radicand = Rational::new(
            num_bigint::BigInt::from(factorial(g) * 4u32),
            num_bigint::BigInt::from(denom),
        )
        .unwrap();
        let expected = canonicalize(radicand, g - 1).unwrap();
        ensure(r.value == expected, || {
            format!("g = {g}: {} vs {expected}", r.value)
        })?;
        ensure(r.witness.mult == odd_theta_count(g).unwrap(), || {
            format!("g = {g} witness")
        })?;
        ensure(r.strictness == Ordering::Less, || {
            format!("g = {g} not strict")
        })?;
    }
    let g2 = ppav_general_upper(2).unwrap().value;
    let exact = Radical::from(ppas_exact().unwrap().value);
    ensure(g2 == exact && g2 == Radical::from(q(4, 3)), || {
        format!("g = 2 gives {g2}")
    })?;
    let took = within(start, BUDGET_C3)?;
    Ok(format!(
        "closed form and strictness for g in 2..16, g = 2 is 4/3 ({took:.2?})"
    ))
}

fn c4_rank_one() -> Outcome {
    let start = Instant::now();
    for l2 in 1..=200u64 {
        let model = SurfaceModel::rank_one(l2).unwrap();
        let alpha = default_alpha(l2);
        ensure(BigUint::from(alpha) == isqrt(&BigUint::from(l2)), || {
            format!("alpha {l2}")
        })?;
        let cert = certify_rank_one(&model, alpha).map_err(|e| e.to_string())?;
        ensure(verify_certificate(&cert) == Ok(true), || {
            format!("L^2 = {l2} fails replay")
        })?;
        let hits = violation_scan(&model, alpha, 1000, 1000).map_err(|e| e.to_string())?;
        ensure(hits.is_empty(), || {
            format!("L^2 = {l2}: {:?}", &hits[..hits.len().min(5)])
        })?;
    }
    let took = within(start, BUDGET_C4)?;
    Ok(format!(
        "L^2 in 1..200 certified, violation scans 1000x1000 empty ({took:.2?})"
    ))
}

fn c5_corollaries() -> Outcome {
    let start = Instant::now();
    let check = |l2: u64, eps: u64| -> Result<(), String> {
        let b =
            very_general_bounds(&SurfaceModel::rank_one(l2).unwrap()).map_err(|e| e.to_string())?;
        let want = Radical::from(Rational::from(eps));
        ensure(
            b.exact() && b.lower().value == want && b.upper().value == want,
            || format!("L^2 = {l2}: [{}, {}]", b.lower().value, b.upper().value),
        )
    };
    for d in 1..=10u64 {
        check(4 * d * d, 2 * d)?;
    }
    for d in 2..=10u64 {
        check(d * d, d)?;
    }
    let took = within(start, BUDGET_C5)?;
    Ok(format!(
        "exact 2d at L^2 = 4d^2 and d at L^2 = d^2 ({took:.2?})"
    ))
}

fn c6_kleiman_dominates() -> Outcome {
    let mut compared = 0;
    let mut dominated = |k: &Radical, b: &Radical, what: String| -> Result<(), String> {
        compared += 1;
        ensure(rad_cmp(b, k) != Ordering::Greater, || {
            format!("{what}: {b} > {k}")
        })
    };
    let k2 = kleiman_upper(&AbelianModel::principal(2).unwrap().polarized());
    dominated(
        &k2,
        &Radical::from(ppas_exact().unwrap().value),
        "ppas".into(),
    )?;
    for g in 2..=16u32 {
        let k = kleiman_upper(&AbelianModel::principal(g).unwrap().polarized());
        dominated(
            &k,
            &hyperelliptic_upper(g).unwrap().value,
            format!("hyperelliptic g={g}"),
        )?;
        dominated(
            &k,
            &ppav_general_upper(g).unwrap().value,
            format!("general g={g}"),
        )?;
    }
    let l2s = (1..=200u64)
        .chain((1..=10).map(|d| 4 * d * d))
        .chain(2..=10);
    for l2 in l2s {
        let k = kleiman_upper(&PolarizedModel::new(2, l2, 1).unwrap());
        let b = very_general_bounds(&SurfaceModel::rank_one(l2).unwrap()).unwrap();
        dominated(&k, &b.lower().value, format!("lower L^2={l2}"))?;
        dominated(&k, &b.upper().value, format!("upper L^2={l2}"))?;
    }
    Ok(format!("{compared} bounds at or below (L^n)^(1/n)"))
}

fn c7_rationality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let d = rng.gen_range(1..=5u32);
        let ld = Rational::from(rng.gen_range(1..=1_000_000u64));
        let m = Rational::from(rng.gen_range(1..=1_000_000u64));
        let delta = rationality_solve(d, &ld, &m).map_err(|e| e.to_string())?;
        let raised = rad_pow(&delta, delta.index());
        ensure(raised.index() == 1, || {
            format!("d = {d}, {ld}/{m}: {delta}")
        })?;
        ensure(d % delta.index() == 0, || {
            format!("index {} does not divide {d}", delta.index())
        })?;
    }
    let ppas = rationality_solve(1, &Rational::from(8i64), &Rational::from(6i64)).unwrap();
    ensure(ppas.as_rational() == Some(&q(4, 3)), || {
        format!("ppas witness gives {ppas}")
    })?;
    let took = within(start, BUDGET_C7)?;
    Ok(format!(
        "10^4 random witnesses rational at their index, (1, 8, 6) gives 4/3 ({took:.2?})"
    ))
}

fn c8_floor() -> Outcome {
    let start = Instant::now();
    let rows = floor_scan(8, 100).map_err(|e| e.to_string())?;
    let flag = |nu: u64| {
        rows.iter()
            .find(|r| r.nu == nu)
            .map(|r| r.is_counterexample)
    };
    for nu in [8, 10, 11] {
        ensure(flag(nu) == Some(true), || format!("nu = {nu} not flagged"))?;
    }
    for nu in [9, 12] {
        ensure(flag(nu) == Some(false), || format!("nu = {nu} flagged"))?;
    }
    let exceptions: Vec<u64> = rows
        .iter()
        .filter(|r| !r.is_counterexample)
        .map(|r| r.nu)
        .collect();
    let took = within(start, BUDGET_C8)?;
    Ok(format!(
        "8, 10, 11 flagged; claim for all nu >= 8 fails at {exceptions:?} ({took:.2?})"
    ))
}

fn random_radical(rng: &mut ChaCha8Rng) -> Radical {
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0..=1_000_000i64);
            let d = rng.gen_range(1..=1_000_000i64);
            canonicalize(q(p, d), rng.gen_range(1..=6)).unwrap()
        }
        1 => {
            let k = rng.gen_range(1..=3u32);
            let r = q(rng.gen_range(1..=30), rng.gen_range(1..=30)).pow(k);
            canonicalize(r, k * rng.gen_range(1..=3u32)).unwrap()
        }
        _ => {
            // close to 1, where float comparisons are least reliable
            let n = rng.gen_range(1..=1_000_000i64);
            canonicalize(
                q(n, n + rng.gen_range(-1..=1i64).max(1 - n)),
                rng.gen_range(1..=6),
            )
            .unwrap()
        }
    }
}

fn c9_radical_order() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let (mut decided, mut equal) = (0u32, 0u32);
    let mut prev = random_radical(&mut rng);
    let mut prev2 = random_radical(&mut rng);
    for i in 0..100_000u32 {
        let a = random_radical(&mut rng);
        // every fourth pair compares a value with a rewritten copy of itself
        let b = if i % 4 == 0 {
            let k = rng.gen_range(2..=4u32);
            canonicalize(a.radicand().pow(k), a.index() * k).unwrap()
        } else {
            random_radical(&mut rng)
        };
        let ab = rad_cmp(&a, &b);
        ensure(ab == rad_cmp(&b, &a).reverse(), || {
            format!("antisymmetry: {a} vs {b}")
        })?;
        ensure((ab == Ordering::Equal) == (a == b), || {
            format!("canonical form: {a} vs {b}")
        })?;
        if ab == Ordering::Equal {
            equal += 1;
        }
        if let Some(expected) = common::fixed_point_order(&a, &b) {
            decided += 1;
            ensure(ab == expected, || format!("oracle: {a} vs {b}"))?;
        }
        let mut t = [prev.clone(), prev2.clone(), a.clone()];
        t.sort_by(rad_cmp);
        ensure(rad_cmp(&t[0], &t[2]) != Ordering::Greater, || {
            format!("transitivity: {t:?}")
        })?;
        prev2 = prev;
        prev = a;
    }
    let took = within(start, BUDGET_C9)?;
    Ok(format!(
        "10^5 comparisons, {decided} oracle-decided, {equal} equal ({took:.2?})"
    ))
}

fn c10_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_seshadri"))
            .arg("reproduce-paper")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        "reproduce-paper failed".into()
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("two runs byte-identical, {} bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1 ppas exact value", c1_ppas_exact),
        ("C2 hyperelliptic family", c2_hyperelliptic),
        ("C3 general ppav family", c3_general),
        ("C4 rank-one certificates", c4_rank_one),
        ("C5 exact surface values", c5_corollaries),
        ("C6 maximal bound dominates", c6_kleiman_dominates),
        ("C7 rationality of solutions", c7_rationality),
        ("C8 floor scan", c8_floor),
        ("C9 radical order", c9_radical_order),
        ("C10 determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
