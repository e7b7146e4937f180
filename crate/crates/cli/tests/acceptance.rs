//! Acceptance suite: runs every verification criterion at its pinned bounds
//! and prints one pass/fail line per criterion. All checks are exact
//! rational identities; there are no tolerances anywhere.

use twheis::gamma::GammaCtx;
use twheis_cli::verify::{run_suite, VerifyParams, SUITE_NAMES};

/// Criterion descriptions, in order; the numbering is stable.
const CRITERIA: [(&str, &str); 12] = [
    (
        "path-count",
        "path counts match 2^{|λ|-ℓ} g'_λ for |λ| ≤ 10",
    ),
    (
        "coherence",
        "Plancherel coherence and normalization for n ≤ 8",
    ),
    ("petrov", "moment recursion for |λ| ≤ 8, k ≤ 5"),
    (
        "jm-moments",
        "JM realizations of the moments for n ≤ 5, k ≤ 3",
    ),
    (
        "characters",
        "idempotent/character pipeline for n ≤ 5 (dims to n ≤ 8)",
    ),
    (
        "class-sums",
        "class-sum scalar relation (n ≤ 5) and vanishing (n ≤ 3)",
    ),
    (
        "intertwining",
        "χ̃(F_n(α_μ)) = 2^{ℓ(μ)} 𝔭_μ(λ) for |μ| ≤ n ≤ 5",
    ),
    (
        "bubbles",
        "bubble identification (k ≤ 3) and recursion in F_n (n ≤ 5)",
    ),
    (
        "idempotent-closure",
        "closure of e_λ equals g_λ Q*_λ for |λ| ≤ 5",
    ),
    (
        "branching",
        "restriction multiplicities match the powers of two, n ≤ 5",
    ),
    (
        "w-action",
        "[A₋,A₊] = -2, [B_m,A₊] = 0, bracket antisymmetry + Jacobi",
    ),
    (
        "qstar-pfrak",
        "Q*/𝔭 vanishing, top-term and product properties",
    ),
];

#[test]
fn acceptance_criteria() {
    // Pinned bounds: levels ≤ 5 for the Sergeev suites, operator cutoff 8,
    // fixed seed for the randomized bracket suite.
    let params = VerifyParams {
        n_max: 5,
        cutoff: 8,
        seed: 0,
    };
    let ctx = GammaCtx::new();
    assert_eq!(CRITERIA.map(|(name, _)| name), SUITE_NAMES);

    let mut all_passed = true;
    let mut lines = Vec::new();
    for (i, (name, what)) in CRITERIA.iter().enumerate() {
        let report = run_suite(name, &params, &ctx).expect("known suite");
        let status = if report.passed() { "PASS" } else { "FAIL" };
        all_passed &= report.passed();
        lines.push(format!(
            "criterion {:>2} [{name}] {status}: {what} ({} cases, {:.3}s)",
            i + 1,
            report.cases,
            report.wall_ms as f64 / 1000.0
        ));
        for failure in &report.failures {
            lines.push(format!("    ! {failure}"));
        }
    }
    for line in &lines {
        println!("{line}");
    }
    assert!(
        all_passed,
        "acceptance criteria failed:\n{}",
        lines.join("\n")
    );
}

#[test]
fn unknown_suite_is_rejected() {
    let ctx = GammaCtx::new();
    assert!(run_suite("bogus", &VerifyParams::default(), &ctx).is_err());
}

#[test]
fn verify_is_deterministic_under_a_seed() {
    let ctx = GammaCtx::new();
    let params = VerifyParams {
        n_max: 3,
        cutoff: 6,
        seed: 12345,
    };
    let a = run_suite("w-action", &params, &ctx).unwrap();
    let b = run_suite("w-action", &params, &ctx).unwrap();
    assert_eq!(a.cases, b.cases);
    assert_eq!(a.failures, b.failures);
}
