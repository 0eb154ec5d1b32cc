//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed even on
//! success. Criterion 8 runs 1e8-trial simulations and only executes when
//! `EQUATOR_ACCEPTANCE_LONG=1` is set.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::{Duration, Instant};

use equator::circle::{exact_probability, flip_enumeration_count, CircleConfiguration};
use equator::constructions::{antipodal_config, vandermonde_config, verify_vandermonde};
use equator::geometry::sample_uniform_point;
use equator::hemisphere::{best_open_hemisphere, closed_bound, is_equator_balanced, max_closed_hemisphere, Configuration, DEFAULT_TOL};
use equator::montecarlo::{estimate, precision_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_261_019;

type Check = Box<dyn Fn() -> Option<Outcome>>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).max(4)
}

fn random_config(dim: usize, n: usize, rng: &mut impl Rng) -> Configuration {
    Configuration::new(dim, (0..n).map(|_| sample_uniform_point(dim, rng).unwrap()).collect()).unwrap()
}

fn closed_forms() -> Outcome {
    let table = [((2, 4), "1/8"), ((3, 5), "1/16"), ((1, 3), "1/4"), ((1, 5), "1/16"), ((1, 4), "1/2"), ((1, 6), "1/4")];
    let mut bad = Vec::new();
    for ((dim, n), want) in table {
        let got = exact_probability(dim, n).map(|p| p.to_string());
        if got.as_deref() != Some(want) {
            bad.push(format!("p({dim},{n}) = {got:?}, want {want}"));
        }
    }
    for dim in 1..=12 {
        for n in 1..=dim + 1 {
            let p = exact_probability(dim, n).unwrap();
            if !(p.numerator() == p.denominator()) {
                bad.push(format!("p({dim},{n}) = {p}, want 1"));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "all closed forms exact".into() } else { bad.join("; ") })
}

fn flip_counts() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for n in [3usize, 4, 5, 6, 7, 8] {
        let want = if n % 2 == 1 { 2 } else { 1u64 << ((n - 2) / 2 + 2) };
        for _ in 0..20 {
            let c = CircleConfiguration::new((0..n).map(|_| rng.random_range(0.0..TAU)).collect()).unwrap();
            let got = flip_enumeration_count(&c).unwrap();
            if got != want {
                bad.push(format!("n={n}: {got} != {want}"));
            }
        }
    }
    let t = start.elapsed();
    outcome(bad.is_empty() && t < Duration::from_secs(60), format!("120 configurations, {bad:?}, {:.2}s", t.as_secs_f64()))
}

fn vandermonde_grid() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut skipped = 0;
    for dim in 1..=5 {
        for n in dim + 1..=dim + 8 {
            if !verify_vandermonde(dim, n).unwrap() {
                bad.push(format!("exact ({dim},{n})"));
            }
            let exact = vandermonde_config(dim, n).unwrap();
            match is_equator_balanced(exact.normalized(), DEFAULT_TOL) {
                Ok(v) if v.balanced => skipped += v.degenerate_subsets,
                Ok(_) => bad.push(format!("float unbalanced ({dim},{n})")),
                Err(e) => bad.push(format!("float ({dim},{n}): {e}")),
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t < Duration::from_secs(120),
        format!("40 cells, failures {bad:?}, {skipped} near-degenerate subsets skipped by the floating check, {:.2}s", t.as_secs_f64()),
    )
}

fn lower_bound() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut below = 0;
    let mut mismatched = 0;
    let mut attained = 0;
    for dim in 1..=4 {
        for n in dim..=dim + 6 {
            for _ in 0..1000 {
                let c = random_config(dim, n, &mut rng);
                let max = max_closed_hemisphere(&c, DEFAULT_TOL).unwrap().max_count;
                let bound = closed_bound(dim, n);
                below += (max < bound) as usize;
                let balanced = is_equator_balanced(&c, DEFAULT_TOL).unwrap().balanced;
                mismatched += ((max == bound) != balanced) as usize;
                attained += (max == bound) as usize;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        below == 0 && mismatched == 0 && t < Duration::from_secs(300),
        format!(
            "28000 configurations, {below} below bound, {mismatched} equivalence mismatches, {attained} sharp, {:.2}s",
            t.as_secs_f64()
        ),
    )
}

fn table_rows() -> Outcome {
    let rows = [((2, 5), 3.20015, 0.02), ((2, 7), 13.980, 0.15), ((2, 9), 90.6, 2.5), ((2, 6), 168.56, 3.0)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, ((dim, n), want, tol)) in rows.into_iter().enumerate() {
        let e = estimate(dim, n, 10_000_000, SEED + i as u64, workers()).unwrap();
        let inv = e.inv_p_hat.unwrap_or(f64::INFINITY);
        let ok = (inv - want).abs() <= tol;
        pass &= ok;
        parts.push(format!("({dim},{n}) 1/p={inv:.4} want {want}±{tol} {} [{:.1}s]", if ok { "ok" } else { "OUT" }, e.elapsed_seconds));
    }
    outcome(pass, parts.join("; "))
}

fn exact_cells() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (dim, n)) in [(1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (3, 5)].into_iter().enumerate() {
        let e = estimate(dim, n, 1_000_000, SEED + 100 + i as u64, workers()).unwrap();
        let exact = exact_probability(dim, n).unwrap().to_f64();
        let z = (e.p_hat - exact).abs() / e.sigma_p;
        pass &= z <= 4.0;
        parts.push(format!("({dim},{n}) p={:.5} exact={exact:.5} z={z:.2}", e.p_hat));
    }
    let t = start.elapsed();
    outcome(pass && t < Duration::from_secs(120), format!("{} [{:.1}s]", parts.join("; "), t.as_secs_f64()))
}

fn precision_column() -> Outcome {
    let rows: [(u64, u64, f64); 6] = [
        (287_951_134_242, 1_708_252_518, 0.012),
        (293_892_632_084, 23_669_718, 7.65),
        (115_638_779_856, 42_369_783, 1.25),
        (889_631_743, 277_996_246, 0.00057),
        (3_558_495_944, 254_538_093, 0.0026),
        (11_535_004_949, 127_320_713, 0.024),
    ];
    let mut worst = 0.0f64;
    for (trials, successes, printed) in rows {
        let rel = (precision_check(trials, successes).unwrap() - printed).abs() / printed;
        worst = worst.max(rel);
    }
    outcome(worst <= 0.05, format!("worst relative error {:.2}%", 100.0 * worst))
}

fn extended_rows() -> Option<Outcome> {
    if std::env::var("EQUATOR_ACCEPTANCE_LONG").as_deref() != Ok("1") {
        return None;
    }
    let rows = [((3, 7), 2729.0, 150.0), ((2, 8), 12416.0, 500.0)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, ((dim, n), want, tol)) in rows.into_iter().enumerate() {
        let e = estimate(dim, n, 100_000_000, SEED + 200 + i as u64, workers()).unwrap();
        let inv = e.inv_p_hat.unwrap_or(f64::INFINITY);
        let ok = (inv - want).abs() <= tol;
        pass &= ok;
        parts.push(format!("({dim},{n}) 1/p={inv:.1} want {want}±{tol} {} [{:.1}s]", if ok { "ok" } else { "OUT" }, e.elapsed_seconds));
    }
    Some(outcome(pass, parts.join("; ")))
}

fn open_hemispheres() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut below = 0;
    let mut not_sharp = 0;
    for dim in 1..=3 {
        for n in 2..=9usize {
            let want = n.div_ceil(2);
            for _ in 0..100 {
                let c = random_config(dim, n, &mut rng);
                below += (best_open_hemisphere(&c, &mut rng, DEFAULT_TOL).unwrap().count < want) as usize;
                let a = antipodal_config(dim, n, &mut rng).unwrap();
                not_sharp += (best_open_hemisphere(&a, &mut rng, DEFAULT_TOL).unwrap().count != want) as usize;
            }
        }
    }
    outcome(below == 0 && not_sharp == 0, format!("2400 random + 2400 antipodal, {below} below bound, {not_sharp} not sharp"))
}

fn determinism() -> Outcome {
    let counts: Vec<u64> = [1, 2, 8].iter().map(|&w| estimate(2, 6, 300_000, SEED, w).unwrap().successes).collect();
    let cli = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_equator"))
            .args(["simulate", "--dim", "2", "--points", "5", "--trials", "100000", "--seed", "7", "--workers", w, "--json"])
            .output()
            .expect("binary runs")
            .stdout
    };
    let outputs: Vec<Vec<u8>> = ["1", "2", "8"].iter().map(|w| cli(w)).collect();
    let same_counts = counts.windows(2).all(|w| w[0] == w[1]);
    let same_bytes = outputs.windows(2).all(|w| w[0] == w[1]) && !outputs[0].is_empty();
    outcome(same_counts && same_bytes, format!("successes {counts:?}, CLI JSON byte-identical: {same_bytes}"))
}

fn main() {
    // `cargo test` forwards harness flags (e.g. --list); nothing to enumerate here.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: Vec<(u32, &str, Check)> = vec![
        (1, "exact closed forms", Box::new(|| Some(closed_forms()))),
        (2, "flip-oracle counts", Box::new(|| Some(flip_counts()))),
        (3, "Vandermonde grid (exact and floating)", Box::new(|| Some(vandermonde_grid()))),
        (4, "closed-hemisphere lower bound and sharpness equivalence", Box::new(|| Some(lower_bound()))),
        (5, "Monte Carlo vs simulation table (1e7 trials)", Box::new(|| Some(table_rows()))),
        (6, "Monte Carlo vs closed forms (1e6 trials)", Box::new(|| Some(exact_cells()))),
        (7, "precision column reproduction", Box::new(|| Some(precision_column()))),
        (8, "extended 1e8-trial rows", Box::new(extended_rows)),
        (9, "open hemispheres", Box::new(|| Some(open_hemispheres()))),
        (10, "determinism across workers", Box::new(|| Some(determinism()))),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        match check() {
            Some(o) => {
                println!("[{}] criterion {id}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
                if !o.pass {
                    failed.push(id);
                }
            }
            None => println!("[SKIP] criterion {id}: {name}: long-running, set EQUATOR_ACCEPTANCE_LONG=1"),
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
