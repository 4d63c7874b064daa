//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slocckit::catalog::named;
use slocckit::classifier::{compare, emit_tables, product_label_sets, Verdict, Witness};
use slocckit::diagnostics::Diagnostic;
use slocckit::fuzz::{random_gaussian_state, run_fuzz};
use slocckit::ket::parse_state;
use slocckit::numkit::exact::gq;
use slocckit::numkit::{eigenvalues, exact_rank, rank, ComplexMatrix, ExactMatrix};
use slocckit::partitions::{eta, rho, spectrum_type_count, tri_even_count};
use slocckit::phi::{t_upsilon_residual, u_upsilon_residual};
use slocckit::{classify, classify_with, Classification, Confidence, JordanLabel, Partition, RunConfig, StateVector};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Every classification made during the run, for the structural audit.
#[derive(Default)]
struct Ledger {
    seen: Vec<(String, Confidence, Vec<Diagnostic>)>,
    fuzz_violations: Vec<String>,
    fuzz_low_confidence: usize,
}

impl Ledger {
    fn classify(&mut self, what: &str, s: &StateVector) -> Classification {
        let c = classify(s).unwrap_or_else(|e| panic!("{what}: {e}"));
        self.seen.push((what.to_string(), c.confidence, c.diagnostics.clone()));
        c
    }
}

fn state(text: &str) -> StateVector {
    named(text).unwrap_or_else(|_| parse_state(text).unwrap_or_else(|e| panic!("{text}: {e}")))
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.iter().copied())
}

fn label(tau: &[usize], pis: &[&[usize]]) -> JordanLabel {
    JordanLabel::new(p(tau), pis.iter().map(|x| p(x)).collect())
}

fn within(limit: Duration, started: Instant) -> (bool, String) {
    let took = started.elapsed();
    (took < limit, format!("{:.1} ms", took.as_secs_f64() * 1e3))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let tri: Vec<u64> = [2, 4, 6, 8].iter().map(|&m| tri_even_count(m).unwrap()).collect();
    let checks = [
        tri == vec![1, 3, 5, 10],
        rho(2, 2) == BigUint::from(3u32),
        spectrum_type_count(1) == 12,
        spectrum_type_count(2) == 915,
        eta(1) - 1u32 == BigUint::from(43u32),
    ];
    let (fast, took) = within(Duration::from_secs(1), t);
    outcome(
        checks.iter().all(|&c| c) && fast,
        format!("P*(2,4,6,8)={tri:?} rho(2,2)={} groups={}/{} eta(1)-1={} [{took}]", rho(2, 2), spectrum_type_count(1), spectrum_type_count(2), eta(1) - 1u32),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let report = emit_tables(1, &RunConfig::default()).unwrap();
    let xi: BTreeSet<String> = report.rows.iter().map(|r| r.xi.to_string()).collect();
    let table_one: BTreeSet<String> = [
        "(0;4)", "(0;3,1)", "(0;2,1,1)", "(0;2,2)", "(0;1,1,1,1)", "(2;3)", "(2;2,1)", "(2;1,1,1)", "(4;2)", "(4;1,1)",
        "(6;1)", "(8;)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let families: BTreeSet<JordanLabel> = report.families().map(|e| e.theta.clone()).collect();
    let table_three: BTreeSet<JordanLabel> = [
        label(&[], &[&[4]]),
        label(&[], &[&[2, 2]]),
        label(&[], &[&[2, 1, 1]]),
        label(&[], &[&[1, 1, 1, 1]]),
        label(&[], &[&[3, 1]]),
        label(&[], &[&[1], &[3]]),
        label(&[], &[&[1], &[2, 1]]),
        label(&[], &[&[1], &[1, 1, 1]]),
        label(&[], &[&[1], &[1], &[2]]),
        label(&[], &[&[1], &[1], &[1, 1]]),
        label(&[], &[&[1, 1], &[1, 1]]),
        label(&[], &[&[1, 1], &[2]]),
        label(&[], &[&[2], &[2]]),
        label(&[], &[&[1], &[1], &[1], &[1]]),
        label(&[1, 1], &[&[3]]),
        label(&[1, 1], &[&[2, 1]]),
        label(&[1, 1], &[&[1, 1, 1]]),
        label(&[1, 1], &[&[1], &[2]]),
        label(&[1, 1], &[&[1], &[1, 1]]),
        label(&[1, 1], &[&[1], &[1], &[1]]),
        label(&[2, 2], &[&[2]]),
        label(&[2, 2], &[&[1, 1]]),
        label(&[3, 1], &[&[2]]),
        label(&[3, 1], &[&[1, 1]]),
        label(&[1, 1, 1, 1], &[&[2]]),
        label(&[1, 1, 1, 1], &[&[1, 1]]),
        label(&[2, 2], &[&[1], &[1]]),
        label(&[3, 1], &[&[1], &[1]]),
        label(&[1, 1, 1, 1], &[&[1], &[1]]),
        label(&[5, 1], &[&[1]]),
        label(&[3, 3], &[&[1]]),
        label(&[2, 2, 1, 1], &[&[1]]),
        label(&[1, 1, 1, 1, 1, 1], &[&[1]]),
        label(&[3, 1, 1, 1], &[&[1]]),
        label(&[7, 1], &[]),
        label(&[5, 3], &[]),
        label(&[4, 4], &[]),
        label(&[2, 2, 2, 2], &[]),
        label(&[3, 3, 1, 1], &[]),
        label(&[3, 2, 2, 1], &[]),
        label(&[5, 1, 1, 1], &[]),
        label(&[2, 2, 1, 1, 1, 1], &[]),
        label(&[3, 1, 1, 1, 1, 1], &[]),
    ]
    .into_iter()
    .collect();
    let excluded = [label(&[4, 2], &[&[1]]), label(&[6, 2], &[]), label(&[4, 2, 1, 1], &[])];
    let none_excluded = excluded.iter().all(|e| !families.contains(e));
    let (fast, took) = within(Duration::from_secs(1), t);
    outcome(
        xi == table_one && families == table_three && table_three.len() == 43 && none_excluded && fast,
        format!("{} spectrum rows, {} families, exclusions honoured: {none_excluded} [{took}]", xi.len(), families.len()),
    )
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let fixtures = [
        ("|0000>", "(8;)", label(&[2, 2, 1, 1, 1, 1], &[])),
        ("|0000>+|0111>", "(8;)", label(&[3, 3, 1, 1], &[])),
        ("|0001>+|0010>+|0100>", "(8;)", label(&[3, 2, 2, 1], &[])),
        ("|0000>+|0011>", "(8;)", label(&[3, 1, 1, 1, 1, 1], &[])),
        ("|0000>+|0101>", "(8;)", label(&[2, 2, 2, 2], &[])),
        ("|0000>+|0011>+|1100>+|1111>", "(6;1)", label(&[1, 1, 1, 1, 1, 1], &[&[1]])),
        ("|0000>+|0101>+|1010>+|1111>", "(0;4)", label(&[], &[&[1, 1, 1, 1]])),
    ];
    let mut bad = Vec::new();
    for (text, xi, theta) in &fixtures {
        let c = ledger.classify(text, &state(text));
        if c.xi.to_string() != *xi || &c.theta != theta || c.confidence != Confidence::Exact {
            bad.push(format!("{text} → {} {} {}", c.xi, c.theta, c.confidence));
        }
    }
    let sets = product_label_sets(&RunConfig::default()).unwrap();
    let expected: BTreeSet<JordanLabel> = fixtures.iter().map(|f| f.2.clone()).collect();
    if sets.jordan != expected || sets.spectrum.len() != 3 {
        bad.push(format!("product label sets: {} ϑ, {} Ξ", sets.jordan.len(), sets.spectrum.len()));
    }
    let (fast, took) = within(Duration::from_secs(1), t);
    outcome(bad.is_empty() && fast, if bad.is_empty() { format!("7 fixtures, 7 product families, 3 product groups [{took}]") } else { bad.join("; ") })
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let fixtures = [
        ("L_a4(0)", p(&[4, 4])),
        ("L_abc2(0,0,0)", p(&[2, 2, 1, 1, 1, 1])),
        ("L_a2_031(0)", p(&[3, 2, 2, 1])),
        ("L_a2b2(0,0)", p(&[2, 2, 2, 2])),
    ];
    let mut bad = Vec::new();
    for (name, tau) in &fixtures {
        let c = ledger.classify(name, &state(name));
        if &c.theta.tau != tau || c.confidence != Confidence::Exact {
            bad.push(format!("{name} → {} {}", c.theta.tau, c.confidence));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "zero Segre (4,4), (2,2,1,1,1,1), (3,2,2,1), (2,2,2,2)".into() } else { bad.join("; ") })
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let cfg = RunConfig::default();
    let mut bad = Vec::new();
    let mut record = |what: &str, v: &slocckit::classifier::ComparisonVerdict| {
        ledger.seen.push((format!("{what} (left)"), v.left.confidence, v.left.diagnostics.clone()));
        ledger.seen.push((format!("{what} (right)"), v.right.confidence, v.right.diagnostics.clone()));
    };
    for other in ["GHZ(4)", "W(4)", "Cluster", "Dicke(2,4)"] {
        let v = compare(&state("Upsilon4"), &state(other), None, &cfg).unwrap();
        record(other, &v);
        if v.verdict != Verdict::Inequivalent {
            bad.push(format!("Upsilon vs {other}: {}", v.verdict));
        }
    }
    let v = compare(&state("L_ab3(0,1)"), &state("L_abc2(0,1,0)"), None, &cfg).unwrap();
    record("L_ab3 vs L_abc2", &v);
    if v.verdict != Verdict::Inequivalent || v.witness != Witness::Theta {
        bad.push(format!("L_ab3(0,1) vs L_abc2(0,1,0): {} by {}", v.verdict, v.witness));
    }
    let v = compare(&state("L_ab3(0,0)"), &state("|0000>+|0111>"), None, &cfg).unwrap();
    record("L_ab3 vs |0>GHZ", &v);
    if v.verdict != Verdict::Inconclusive || v.left.theta != label(&[3, 3, 1, 1], &[]) {
        bad.push(format!("L_ab3(0,0) vs |0>GHZ3: {} with {}", v.verdict, v.left.theta));
    }
    let (fast, took) = within(Duration::from_secs(1), t);
    outcome(bad.is_empty() && fast, if bad.is_empty() { format!("6 comparisons as expected [{took}]") } else { bad.join("; ") })
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let cfg = RunConfig::default();
    let mut corpus: Vec<(String, StateVector)> =
        ["GHZ(4)", "W(4)", "Cluster", "Dicke(2,4)", "Upsilon4", "L_a4(1)", "L_abc2(1,2,3)", "L_a2_031(1)"]
            .iter()
            .map(|n| (n.to_string(), state(n)))
            .collect();
    corpus.push(("random #11".into(), random_gaussian_state(4, 11)));
    corpus.push(("random #12".into(), random_gaussian_state(4, 12)));

    let mut failed = Vec::new();
    let (mut trials, mut worst_ratio, mut worst_orth) = (0, 0.0f64, 0.0f64);
    for (name, s) in &corpus {
        for rep in run_fuzz(s, 1000, 100, &cfg).unwrap() {
            trials += 1;
            worst_ratio = worst_ratio.max(rep.max_spectral_error);
            worst_orth = worst_orth.max(rep.appendix_a.max_deviation());
            ledger.fuzz_violations.extend(rep.property_violations.iter().cloned());
            if rep.confidence.0 == Confidence::LowConfidence || rep.confidence.1 == Confidence::LowConfidence {
                ledger.fuzz_low_confidence += 1;
            }
            if !rep.passed() {
                failed.push(format!("{name} seed {}: {}", rep.seed, rep.failures.join(", ")));
            }
        }
    }
    let t_res = t_upsilon_residual();
    let u_res = u_upsilon_residual(1).max(u_upsilon_residual(2));
    let identities = t_res < 1e-13 && u_res < 1e-13;
    let (fast, took) = within(Duration::from_secs(10), t);
    let summary = format!(
        "{}/{trials} trials pass, worst √(gh) error {worst_ratio:.1e}, worst orthogonality {worst_orth:.1e}, Tυ⊗²Tᵗ {t_res:.1e}, U†U* {u_res:.1e} [{took}]",
        trials - failed.len()
    );
    let detail = if failed.is_empty() { summary } else { format!("{summary}; first failure: {}", failed[0]) };
    outcome(failed.is_empty() && identities && fast, detail)
}

fn criterion_7(ledger: &Ledger) -> Outcome {
    let mut violations: Vec<String> = ledger
        .seen
        .iter()
        .flat_map(|(what, _, diags)| {
            diags.iter().filter(|d| matches!(d, Diagnostic::Property { .. })).map(move |d| format!("{what}: {d}"))
        })
        .collect();
    violations.extend(ledger.fuzz_violations.iter().cloned());
    let low = ledger.seen.iter().filter(|(_, c, _)| *c == Confidence::LowConfidence).count() + ledger.fuzz_low_confidence;
    let total = ledger.seen.len();
    outcome(
        violations.is_empty() && low == 0,
        if violations.is_empty() {
            format!("{total} direct classifications plus fuzz pairs: 0 property violations, {low} low-confidence")
        } else {
            format!("{} violations, first: {}", violations.len(), violations[0])
        },
    )
}

// --- independent eigenvalue oracle: Faddeev–LeVerrier + Durand–Kerner ---

fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<C64> {
    // c with det(xI − A) = Σ c[k] x^{n−k}, c[0] = 1
    let n = a.rows();
    let mut c = vec![C64::new(1.0, 0.0)];
    let mut m = ComplexMatrix::identity(n);
    for k in 1..=n {
        let am = a * &m;
        let ck = -(0..n).map(|i| am[(i, i)]).sum::<C64>() / k as f64;
        c.push(ck);
        m = &am + &ComplexMatrix::identity(n).scale(ck);
    }
    c
}

fn durand_kerner(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let eval = |z: C64| c.iter().fold(C64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let radius = 1.0 + c.iter().skip(1).map(|k| k.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n).map(|k| C64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(C64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let n = 1 + trial % 8;
        let a = ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let mut ours = eigenvalues(&a).unwrap();
        let oracle = durand_kerner(&faddeev_leverrier(&a));
        let scale = oracle.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for z in oracle {
            let (i, d) = ours
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - z).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            worst = worst.max(d / scale);
            ours.swap_remove(i);
        }
    }
    let mut rank_mismatch = 0;
    for trial in 0..50 {
        let n = 1 + trial % 8;
        let r = rng.gen_range(0..=n);
        let x = ExactMatrix::from_fn(n, r, |_, _| gq(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
        let y = ExactMatrix::from_fn(r, n, |_, _| gq(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
        let m = if r == 0 { ExactMatrix::zeros(n, n) } else { &x * &y };
        if rank(&m.to_float(), 1e-8) != exact_rank(&m) {
            rank_mismatch += 1;
        }
    }
    outcome(worst <= 1e-6 && rank_mismatch == 0, format!("worst eigenvalue deviation {worst:.1e} over 50 matrices; {rank_mismatch}/50 rank mismatches"))
}

fn criterion_9() -> Outcome {
    let mut timings = Vec::new();
    let mut ok = true;
    let cfg = RunConfig::default();
    let mut time = |what: &str, s: &StateVector, limit: Duration| {
        let t = Instant::now();
        let c = classify_with(s, None, &cfg).unwrap();
        let took = t.elapsed();
        let pass = took < limit && c.confidence != Confidence::LowConfidence;
        ok &= pass;
        timings.push(format!("{what} {:.0} ms{}", took.as_secs_f64() * 1e3, if pass { "" } else { " (over budget or low confidence)" }));
    };
    time("4q GHZ", &state("GHZ(4)"), Duration::from_millis(100));
    time("4q random", &random_gaussian_state(4, 9), Duration::from_millis(100));
    time("8q random (Φ 32×32, exact)", &random_gaussian_state(8, 9), Duration::from_secs(5));
    time("16q random (65536 amplitudes)", &random_gaussian_state(16, 9).to_float(), Duration::from_secs(5));
    outcome(ok, timings.join(", "))
}

fn main() {
    let mut ledger = Ledger::default();
    let results = [
        ("1 counting goldens", criterion_1()),
        ("2 table reproduction", criterion_2()),
        ("3 product-state fixtures", criterion_3(&mut ledger)),
        ("4 zero-eigenvalue block fixtures", criterion_4(&mut ledger)),
        ("5 inequivalence suite", criterion_5(&mut ledger)),
        ("6 invariance fuzzing", criterion_6(&mut ledger)),
        ("7 structural validators", criterion_7(&ledger)),
        ("8 numerics oracle", criterion_8()),
        ("9 performance envelope", criterion_9()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
