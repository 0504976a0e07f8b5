//! One line per acceptance criterion. Exits 0 unless `ACCEPTANCE_STRICT` is
//! set, so a known failure is reported without breaking the test run.

mod common;

use std::time::Instant;

use chevalley::decompose::{compose, entry_formula, FactoredElement};
use chevalley::group::Chevalley;
use chevalley::suites::{run_suite, SuiteConfig, SuiteReport};
use chevalley::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn suite(name: &str, cfg: SuiteConfig) -> SuiteReport {
    run_suite(name, &cfg).unwrap_or_else(|e| panic!("{name} {}: {e}", cfg.system))
}

/// Runs suites and folds them into one outcome.
fn all(runs: Vec<SuiteReport>) -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for r in &runs {
        cases += r.cases;
        if !r.passed() {
            let ring = r.ring.as_deref().map(|x| format!(" {x}")).unwrap_or_default();
            bad.push(format!("{} {}{ring}: {}", r.suite, r.system, r.failures.join("; ")));
        }
    }
    if bad.is_empty() {
        (true, format!("{} runs, {cases} cases", runs.len()))
    } else {
        (false, bad.join(" | "))
    }
}

fn a2_fixture() -> Outcome {
    let ch = Chevalley::parse("A2").unwrap();
    if !common::magnitudes_match(&ch) {
        return (false, "magnitudes differ".into());
    }
    let n = common::normalization(&ch);
    if common::normalized_match(&ch, &n) {
        return (true, "magnitudes and normalized signs match".into());
    }
    (
        false,
        format!(
            "magnitudes match; best sign normalization leaves {:?}; the printed matrices give [X_a1, X_a2] != +-X_a1+a2 (closed: {})",
            n.residual,
            common::printed_is_closed()
        ),
    )
}

fn lemma2() -> Outcome {
    let mut runs = Vec::new();
    for sys in ["A2", "A3", "D4"] {
        for ring in ["zmod:3^4", "trunc:5:3"] {
            runs.push(suite("lemma2", SuiteConfig::new(sys).ring(ring).seed(1).count(100)));
        }
    }
    runs.push(suite("lemma2", SuiteConfig::new("E6").ring("zmod:3^4").seed(1).count(5)));
    all(runs)
}

fn entry_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = Ring::parse("trunc:5:3").unwrap();
    let mut bad = Vec::new();
    let mut cells = 0;

    let a2 = Chevalley::parse("A2").unwrap();
    for _ in 0..5 {
        let f = FactoredElement::random(&r, &a2.sys, &mut rng);
        let x = compose(&a2, &r, &f).unwrap().mat;
        for row in a2.sys.ids() {
            for col in a2.sys.ids() {
                cells += 1;
                if entry_formula(&a2, row, col).evaluate(&r, &f).unwrap() != x.get(row, col) {
                    bad.push(format!("A2 ({row},{col})"));
                }
            }
        }
    }

    let d4 = Chevalley::parse("D4").unwrap();
    let f = FactoredElement::random(&r, &d4.sys, &mut rng);
    let x = compose(&d4, &r, &f).unwrap().mat;
    for _ in 0..100 {
        let (row, col) = (rng.gen_range(0..d4.n()), rng.gen_range(0..d4.n()));
        cells += 1;
        if entry_formula(&d4, row, col).evaluate(&r, &f).unwrap() != x.get(row, col) {
            bad.push(format!("D4 ({row},{col})"));
        }
    }

    // λ(1-t_2u_2)/s_1, λ/(s_1s_2), λt_3 at printed cells, through the sign normalization
    let n = common::normalization(&a2);
    for _ in 0..20 {
        let f = FactoredElement::random(&r, &a2.sys, &mut rng);
        let ours = common::to_ours(&r, &n, &f);
        for (row, col, want) in common::printed_entries(&r, &f) {
            if ![(2, 2), (6, 6), (8, 6)].contains(&(row, col)) {
                continue;
            }
            cells += 1;
            let mut got = entry_formula(&a2, row - 1, col - 1).evaluate(&r, &ours).unwrap();
            if n.sigma[row - 1] * n.sigma[col - 1] < 0 {
                got = r.neg(got);
            }
            if got != want {
                bad.push(format!("printed ({row},{col})"));
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{cells} cells") } else { bad.join(", ") })
}

fn per_system(name: &str, systems: &[&str], cfg: impl Fn(SuiteConfig) -> SuiteConfig) -> Vec<SuiteReport> {
    systems.iter().map(|s| suite(name, cfg(SuiteConfig::new(s)))).collect()
}

fn kernels() -> Outcome {
    let mut runs = Vec::new();
    for ring in ["gf:3", "gf:5"] {
        runs.extend(per_system("kernel", &["A2", "A3", "D4"], |c| c.ring(ring)));
    }
    let out = all(runs.clone());
    let dims: Vec<String> = runs
        .iter()
        .map(|r| format!("{} {}: {}/{}", r.system, r.ring.as_deref().unwrap_or("-"), r.summary["kernel_dimension"], r.summary["control_kernel_dimension"]))
        .collect();
    (out.0, format!("{}; kernel/control {}", out.1, dims.join(", ")))
}

fn lemma3() -> Outcome {
    let runs = per_system("lemma3", &["A3", "D4", "E6", "E7", "E8"], |c| c.ring("zmod:5^3").seed(4).count(10));
    let e8_k = runs.last().unwrap().summary["max_k"].as_i64().unwrap_or(0);
    let (ok, msg) = all(runs);
    (ok && e8_k == 2, format!("{msg}; E8 max k = {e8_k}"))
}

fn marked() -> Outcome {
    let systems = ["A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"];
    all(per_system("marked", &systems, |c| c))
}

fn structure_constants() -> Outcome {
    let mut runs = per_system("jacobi", &["A2", "A3", "D4"], |c| c);
    runs.extend(per_system("jacobi", &["E6", "E7", "E8"], |c| c.seed(5).count(1000)));
    let oracle = runs[1].summary["sl_oracle"]["sign_map_found"] == true;
    let (ok, msg) = all(runs);
    (ok && oracle, format!("{msg}; A3 sl4 sign map found: {oracle}"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("A2 fixture", a2_fixture),
        ("round trip", lemma2),
        ("entry oracle", entry_oracle),
        ("torus action", || all(per_system("eq1", &["A2", "A3", "D4"], |c| c.seed(2).count(50)))),
        ("commutator law", || all(per_system("commutator", &["A3", "D4"], |c| c.seed(2)))),
        ("kernel", kernels),
        ("torus lift", lemma3),
        ("marked sequences", marked),
        ("structure constants", structure_constants),
        ("certificate", || all(vec![suite("certificate", SuiteConfig::new("A2").ring("zmod:3^3").seed(6).count(100))])),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<20} {} ({:.2}s) {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            detail
        );
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
