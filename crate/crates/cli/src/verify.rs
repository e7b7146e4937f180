//! Verification suites: one per acceptance criterion, each running exact
//! identity checks at the bounds pinned below. A failure records the inputs
//! and both sides of the broken equality.

use num::traits::{One, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::time::{Duration, Instant};
use twheis::center::{
    alpha_of_partition, dbar, fock_dbar_direct, fock_image, idempotent_closure, phi, CenterElement,
    Chart,
};
use twheis::gamma::{GammaCtx, GammaElement};
use twheis::partitions::{
    count_shifted_tableaux, enumerate_odd, enumerate_strict, enumerate_strict_up_to,
    kerov_coordinates, length_parity, path_count, remove_cell_by_content, z_stat, StrictPartition,
};
use twheis::rational::{factorial, pow2, rat, rat_to_string, Int, Rat};
use twheis::schur_graph::{down_moment, down_transition, edge_multiplicity, plancherel, up_moment};
use twheis::sergeev::{
    central_idempotent, class_sum_full, class_sum_scaled, down_moment_via_jm, hyperoctahedral,
    jm_conjugation_sum, normalized_character, up_moment_via_jm, SergeevElement,
};
use twheis::waction::{bracket, LieElement, Poly, WOperator};

#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    /// Level bound for the Sergeev-algebra suites (acceptance pins 5).
    pub n_max: usize,
    /// Degree cutoff for the operator suite (acceptance pins 8).
    pub cutoff: usize,
    /// Seed for the randomized bracket suite.
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n_max: 5,
            cutoff: 8,
            seed: 0,
        }
    }
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn total_wall(&self) -> Duration {
        Duration::from_millis(self.suites.iter().map(|s| s.wall_ms as u64).sum())
    }
}

pub const SUITE_NAMES: [&str; 12] = [
    "path-count",
    "coherence",
    "petrov",
    "jm-moments",
    "characters",
    "class-sums",
    "intertwining",
    "bubbles",
    "idempotent-closure",
    "branching",
    "w-action",
    "qstar-pfrak",
];

/// A tiny tally of checks with failure descriptions.
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, lhs: T, rhs: T) {
        self.cases += 1;
        if lhs != rhs {
            self.failures
                .push(format!("{what}: lhs = {lhs:?}, rhs = {rhs:?}"));
        }
    }

    fn check_rat(&mut self, what: &str, lhs: &Rat, rhs: &Rat) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(format!(
                "{what}: lhs = {}, rhs = {}",
                rat_to_string(lhs),
                rat_to_string(rhs)
            ));
        }
    }

    fn check_that(&mut self, what: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

pub fn run_suite(
    name: &str,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<SuiteReport, twheis::Error> {
    let start = Instant::now();
    let mut tally = Tally::new();
    match name {
        "path-count" => path_count_suite(&mut tally),
        "coherence" => coherence_suite(&mut tally),
        "petrov" => petrov_suite(&mut tally),
        "jm-moments" => jm_moments_suite(&mut tally, params, ctx)?,
        "characters" => characters_suite(&mut tally, params, ctx)?,
        "class-sums" => class_sums_suite(&mut tally, params)?,
        "intertwining" => intertwining_suite(&mut tally, params, ctx)?,
        "bubbles" => bubbles_suite(&mut tally, params, ctx)?,
        "idempotent-closure" => idempotent_closure_suite(&mut tally, params, ctx)?,
        "branching" => branching_suite(&mut tally, params, ctx)?,
        "w-action" => w_action_suite(&mut tally, params, ctx)?,
        "qstar-pfrak" => qstar_pfrak_suite(&mut tally, ctx)?,
        other => {
            return Err(twheis::Error::Domain(format!("unknown suite {other:?}")));
        }
    }
    Ok(SuiteReport {
        name: name.to_string(),
        cases: tally.cases,
        failures: tally.failures,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Runs the requested suites ("all" expands to every suite).
pub fn run_verify(
    names: &[String],
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<VerifyReport, twheis::Error> {
    let expanded: Vec<String> = if names.iter().any(|n| n == "all") {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let mut suites = Vec::new();
    for name in &expanded {
        suites.push(run_suite(name, params, ctx)?);
    }
    Ok(VerifyReport { suites })
}

/// Criterion 1: dynamic-programming path count equals `2^{|λ|-ℓ} g'_λ` for
/// all strict `|λ| ≤ 10`.
fn path_count_suite(tally: &mut Tally) {
    fn dp(lambda: &StrictPartition, memo: &mut HashMap<StrictPartition, Int>) -> Int {
        if lambda.is_empty() {
            return Int::one();
        }
        if let Some(hit) = memo.get(lambda) {
            return hit.clone();
        }
        let (_, removable) = kerov_coordinates(lambda);
        let mut total = Int::zero();
        for y in removable {
            let nu = remove_cell_by_content(lambda, y).expect("removable");
            let kappa = edge_multiplicity(&nu, lambda);
            total += dp(&nu, memo) * Int::from(kappa);
        }
        memo.insert(lambda.clone(), total.clone());
        total
    }
    let mut memo = HashMap::new();
    for lambda in enumerate_strict_up_to(10) {
        let formula = pow2((lambda.size() - lambda.length()) as i64)
            * Rat::from_integer(count_shifted_tableaux(&lambda));
        tally.check(
            &format!("path count of {lambda}"),
            Rat::from_integer(dp(&lambda, &mut memo)),
            formula.clone(),
        );
        tally.check(
            &format!("closed-form path count of {lambda}"),
            Rat::from_integer(path_count(&lambda)),
            formula,
        );
    }
}

/// Criterion 2: Plancherel coherence and normalization for `n ≤ 8`.
fn coherence_suite(tally: &mut Tally) {
    let mut previous = plancherel(0);
    tally.check_rat(
        "Pl_0 normalization",
        &previous.values().cloned().sum::<Rat>(),
        &Rat::one(),
    );
    for n in 1..=8 {
        let current = plancherel(n);
        tally.check_rat(
            &format!("Pl_{n} normalization"),
            &current.values().cloned().sum::<Rat>(),
            &Rat::one(),
        );
        for (nu, mass) in &previous {
            let mut pushed = Rat::zero();
            for (lambda, m) in &current {
                pushed += down_transition(lambda, nu) * m.clone();
            }
            tally.check_rat(&format!("coherence at {nu} (level {n})"), &pushed, mass);
        }
        previous = current;
    }
}

/// Criterion 3: the transition-moment recursion
/// `𝕞↑_k = 𝕞↓_k + Σ_{i+j=k} 𝕞↑_i 𝕞↓_j` for `|λ| ≤ 8`, `1 ≤ k ≤ 5`.
fn petrov_suite(tally: &mut Tally) {
    for lambda in enumerate_strict_up_to(8) {
        for k in 1..=5usize {
            let mut rhs = down_moment(k, &lambda).expect("k ≥ 1");
            for i in 1..k {
                rhs += up_moment(i, &lambda) * down_moment(k - i, &lambda).expect("k-i ≥ 1");
            }
            tally.check_rat(
                &format!("moment recursion at λ = {lambda}, k = {k}"),
                &up_moment(k, &lambda),
                &rhs,
            );
        }
    }
}

/// Criterion 4: Jucys-Murphy realizations of the moments for `n ≤ 5`,
/// `k ≤ 3`; odd JM powers vanish under the normalized characters.
fn jm_moments_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    let n_max = params.n_max.min(5);
    for n in 0..=n_max {
        let lambdas = enumerate_strict(n);
        for k in 0..=3usize {
            // Share the projected JM power across the level; for small n also
            // exercise the per-λ entry point itself.
            let projected = fock_dbar_direct(k, n)?;
            for lambda in &lambdas {
                let expected = up_moment(k, lambda);
                let via_shared = normalized_character(lambda, &projected, ctx)?;
                tally.check_rat(
                    &format!("up moment via JM, λ = {lambda}, k = {k}"),
                    &via_shared,
                    &expected,
                );
                if n <= 4 {
                    tally.check_rat(
                        &format!("up_moment_via_jm op, λ = {lambda}, k = {k}"),
                        &up_moment_via_jm(k, lambda, ctx)?,
                        &expected,
                    );
                }
            }
            if n >= 1 && k >= 1 {
                let sum = jm_conjugation_sum(2 * (k - 1), n)?;
                for lambda in &lambdas {
                    let expected = down_moment(k, lambda).expect("k ≥ 1");
                    tally.check_rat(
                        &format!("down moment via JM, λ = {lambda}, k = {k}"),
                        &normalized_character(lambda, &sum, ctx)?,
                        &expected,
                    );
                    if n <= 4 {
                        tally.check_rat(
                            &format!("down_moment_via_jm op, λ = {lambda}, k = {k}"),
                            &down_moment_via_jm(k, lambda, ctx)?,
                            &expected,
                        );
                    }
                }
            }
        }
        // Odd JM powers give zero.
        if n >= 1 {
            for r in [1usize, 3] {
                let sum = jm_conjugation_sum(r, n)?;
                for lambda in &lambdas {
                    tally.check_rat(
                        &format!("odd JM power r = {r}, λ = {lambda}"),
                        &normalized_character(lambda, &sum, ctx)?,
                        &Rat::zero(),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Criterion 5: idempotents built from characters are orthogonal and sum to
/// one (`n ≤ 5`); the character dimension matches the closed formula and the
/// regular representation bookkeeping holds (`n ≤ 8`).
fn characters_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    for n in 0..=params.n_max.min(5) {
        let lambdas = enumerate_strict(n);
        let idempotents: Vec<SergeevElement> = lambdas
            .iter()
            .map(|l| central_idempotent(l, ctx))
            .collect::<Result<_, _>>()?;
        let mut total = SergeevElement::zero(n);
        for e in &idempotents {
            total = &total + e;
        }
        tally.check_that(
            &format!("Σ e_λ = 1 at level {n}"),
            total == SergeevElement::one(n),
        );
        for (i, a) in idempotents.iter().enumerate() {
            for (j, b) in idempotents.iter().enumerate() {
                let product = a.try_mul(b)?;
                if i == j {
                    tally.check_that(
                        &format!("e_{}² = e_{} at level {n}", lambdas[i], lambdas[i]),
                        product == *a,
                    );
                } else {
                    tally.check_that(
                        &format!("e_{} e_{} = 0 at level {n}", lambdas[i], lambdas[j]),
                        product.is_zero(),
                    );
                }
            }
        }
    }
    for n in 0..=8usize {
        let mut reg = Rat::zero();
        for lambda in enumerate_strict(n) {
            let dim = ctx.dimension(&lambda)?;
            tally.check_rat(
                &format!("dimension formula at {lambda}"),
                &dim,
                &GammaCtx::dimension_formula(&lambda),
            );
            reg += dim.clone() * dim / pow2(length_parity(&lambda) as i64);
        }
        tally.check_rat(
            &format!("Σ dim²/2^δ at level {n}"),
            &reg,
            &(pow2(n as i64) * Rat::from_integer(factorial(n))),
        );
    }
    Ok(())
}

/// Criterion 6: the scalar relation between the scaled and full class sums,
/// and vanishing of the projected non-split class sums for `n ≤ 3`.
fn class_sums_suite(tally: &mut Tally, params: &VerifyParams) -> Result<(), twheis::Error> {
    for n in 1..=params.n_max.min(5) {
        for k in 1..=n {
            for mu in enumerate_odd(k) {
                let a = class_sum_scaled(&mu, n)?;
                let padded = mu.pad_with_ones(n - k);
                let c = class_sum_full(&padded, n)?;
                let scalar = pow2(mu.length() as i64)
                    * Rat::from_integer(z_stat(padded.as_partition()))
                    / Rat::from_integer(factorial(n - k));
                tally.check_that(
                    &format!("a_{mu}^({n}) = 2^ℓ(μ) z/(n-k)! · C_{padded}"),
                    a == c.scale(&scalar),
                );
            }
        }
    }
    for n in 1..=3usize {
        for h in hyperoctahedral::all_elements(n) {
            let vanishes = hyperoctahedral::projected_full_conjugation_sum(&h, n).is_zero();
            let split = hyperoctahedral::in_split_class(&h);
            tally.check(
                &format!(
                    "projected class sum vanishing, n = {n}, signature {:?}",
                    hyperoctahedral::class_signature(&h)
                ),
                vanishes,
                !split,
            );
        }
    }
    Ok(())
}

/// Criterion 7: `χ̃^λ(F_n(α_μ)) = 2^{ℓ(μ)} 𝔭_μ(λ)` for odd `|μ| ≤ n ≤ 5`
/// and `|λ| = n`, plus agreement of the chart route with the class sums.
fn intertwining_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    for n in 1..=params.n_max.min(5) {
        let lambdas = enumerate_strict(n);
        for k in 0..=n {
            for mu in enumerate_odd(k) {
                let image = class_sum_scaled(&mu, n)?;
                let via_chart = fock_image(&alpha_of_partition(&mu, ctx)?, n)?;
                tally.check_that(
                    &format!("F_{n}(α_{mu}) equals the scaled class sum"),
                    via_chart == image,
                );
                for lambda in &lambdas {
                    let lhs = normalized_character(lambda, &image, ctx)?;
                    let rhs = pow2(mu.length() as i64) * ctx.pfrak_value(&mu, lambda)?;
                    tally.check_rat(
                        &format!("intertwining at μ = {mu}, λ = {lambda}"),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
    }
    Ok(())
}

/// Criterion 8: bubble identification `φ(d̄_{2k}) = 𝕞↑_k`,
/// `φ(d_{2k}) = 𝕞↓_{k+1}` (exactly and on `|λ| ≤ 8`), and the bubble
/// recursion inside every Fock image for `n ≤ 5`, `k ≤ 3`.
fn bubbles_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    let points = enumerate_strict_up_to(8);
    for k in 0..=3usize {
        let dbar_gamma = phi(&dbar(k), ctx)?;
        let d_gamma = phi(&CenterElement::generator(Chart::D, 2 * k)?, ctx)?;
        tally.check_that(
            &format!("φ(d̄_{}) = 𝕞↑_{k} in Γ", 2 * k),
            dbar_gamma == ctx.up_moment_gamma(k)?,
        );
        tally.check_that(
            &format!("φ(d_{}) = 𝕞↓_{} in Γ", 2 * k, k + 1),
            d_gamma == ctx.down_moment_gamma(k + 1)?,
        );
        for lambda in &points {
            tally.check_rat(
                &format!("φ(d̄_{}) at {lambda}", 2 * k),
                &dbar_gamma.evaluate(lambda),
                &up_moment(k, lambda),
            );
            tally.check_rat(
                &format!("φ(d_{}) at {lambda}", 2 * k),
                &d_gamma.evaluate(lambda),
                &down_moment(k + 1, lambda).expect("k+1 ≥ 1"),
            );
        }
    }
    for n in 0..=params.n_max.min(5) {
        for k in 0..=3usize {
            let direct = fock_dbar_direct(k, n)?;
            let via_recursion = fock_image(&dbar(k), n)?;
            tally.check_that(
                &format!("bubble recursion in F_{n}, k = {k}"),
                direct == via_recursion,
            );
        }
    }
    Ok(())
}

/// Criterion 9: the closure of `e_λ` equals `g_λ Q*_λ` for `|λ| ≤ 5`,
/// verified exactly and on all strict `|ν| ≤ 8`.
fn idempotent_closure_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    let points = enumerate_strict_up_to(8);
    for n in 0..=params.n_max.min(5) {
        for lambda in enumerate_strict(n) {
            let closure = idempotent_closure(&lambda, ctx)?;
            let expected = ctx
                .factorial_schur_q(&lambda)?
                .scale(&Rat::from_integer(path_count(&lambda)));
            tally.check_that(
                &format!("closure of e_{lambda} = g·Q* in Γ"),
                closure == expected,
            );
            for nu in &points {
                tally.check_rat(
                    &format!("closure of e_{lambda} at {nu}"),
                    &closure.evaluate(nu),
                    &expected.evaluate(nu),
                );
            }
        }
    }
    Ok(())
}

/// Criterion 10: restriction multiplicities match the branching powers of
/// two on edges (zero off them), with dimension bookkeeping.
fn branching_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    for n in 1..=params.n_max.min(5) {
        for lambda in enumerate_strict(n) {
            let multiplicities = twheis::sergeev::restriction_multiplicities(&lambda, ctx)?;
            let mut dim_sum = Rat::zero();
            for nu in enumerate_strict(n - 1) {
                let m = multiplicities.get(&nu).cloned().unwrap_or_else(Rat::zero);
                let expected = if edge_multiplicity(&nu, &lambda) > 0 {
                    let exponent = (2 + nu.length() as i64
                        - length_parity(&nu) as i64
                        - lambda.length() as i64
                        + length_parity(&lambda) as i64)
                        / 2;
                    pow2(exponent)
                } else {
                    Rat::zero()
                };
                tally.check_rat(
                    &format!("branching multiplicity [{lambda} : {nu}]"),
                    &m,
                    &expected,
                );
                dim_sum += m * ctx.dimension(&nu)?;
            }
            tally.check_rat(
                &format!("dimension bookkeeping for {lambda}"),
                &dim_sum,
                &ctx.dimension(&lambda)?,
            );
        }
    }
    Ok(())
}

/// Criterion 11: operator commutators at the cutoff and the randomized
/// bracket suite.
fn w_action_suite(
    tally: &mut Tally,
    params: &VerifyParams,
    ctx: &GammaCtx,
) -> Result<(), twheis::Error> {
    let cutoff = params.cutoff;
    let a_minus = WOperator::a_minus(cutoff, ctx)?;
    let a_plus = WOperator::a_plus(cutoff, ctx)?;
    let ladder = a_minus.commutator(&a_plus)?;
    let minus_two = WOperator::identity(cutoff).scale(&rat(-2));
    tally.check_that(
        &format!(
            "[A₋, A₊] = -2·id at cutoff {cutoff} (domain ≤ {})",
            ladder.domain_max()
        ),
        ladder.equals_on_common_domain(&minus_two) && ladder.domain_max() + 1 >= cutoff,
    );
    for m in [3usize, 5] {
        let b = WOperator::b_odd(m, cutoff, ctx)?;
        let com = b.commutator(&a_plus)?;
        let zero = WOperator::identity(cutoff).scale(&Rat::zero());
        tally.check_that(
            &format!("[B_{m}, A₊] = 0 at cutoff {cutoff}"),
            com.equals_on_common_domain(&zero) && com.domain_max() + m >= cutoff,
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let random_element = |rng: &mut ChaCha8Rng| {
        let mut out = LieElement::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let r = rng.gen_range(-3i64..=3);
            let coeffs: Vec<Rat> = (0..=4).map(|_| rat(rng.gen_range(-3i64..=3))).collect();
            out = &out + &LieElement::t_term_unrestricted(r, Poly::from_coeffs(coeffs));
        }
        out
    };
    for i in 0..50 {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let z = random_element(&mut rng);
        let anti = &bracket(&x, &y) + &bracket(&y, &x);
        tally.check_that(&format!("bracket antisymmetry, trial {i}"), anti.is_zero());
        let jac = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x)))
            + &bracket(&z, &bracket(&x, &y));
        tally.check_that(&format!("bracket Jacobi, trial {i}"), jac.is_zero());
    }
    Ok(())
}

/// Criterion 12: vanishing of `Q*_λ` off containment, top-term drops for
/// `𝔭_μ` and `Q*_λ`, and the product property for `|μ∪γ| ≤ 8`.
fn qstar_pfrak_suite(tally: &mut Tally, ctx: &GammaCtx) -> Result<(), twheis::Error> {
    let strict6 = enumerate_strict_up_to(6);
    for lambda in &strict6 {
        let qs = ctx.factorial_schur_q(lambda)?;
        for nu in &strict6 {
            if !nu.as_partition().contains(lambda.as_partition()) {
                tally.check_rat(
                    &format!("Q*_{lambda}({nu}) vanishing"),
                    &qs.evaluate(nu),
                    &Rat::zero(),
                );
            }
        }
        let diff = &qs - &ctx.schur_q(lambda);
        tally.check_that(
            &format!("deg(Q*_{lambda} - Q_{lambda}) < |λ|"),
            diff.degree().is_none_or(|d| d < lambda.size().max(1)),
        );
    }
    for d in 0..=8usize {
        for mu in enumerate_odd(d) {
            let diff = &ctx.pfrak(&mu)? - &GammaElement::p(mu.clone());
            tally.check_that(
                &format!("deg(𝔭_{mu} - p_{mu}) < |μ|"),
                diff.degree().is_none_or(|deg| deg < d.max(1)),
            );
        }
    }
    for dm in 0..=8usize {
        for dg in 0..=8 - dm {
            for mu in enumerate_odd(dm) {
                for gamma in enumerate_odd(dg) {
                    let product = &ctx.pfrak(&mu)? * &ctx.pfrak(&gamma)?;
                    let diff = &product - &ctx.pfrak(&mu.union(&gamma))?;
                    tally.check_that(
                        &format!("deg(𝔭_{mu}𝔭_{gamma} - 𝔭_union) < |μ∪γ|"),
                        diff.degree().is_none_or(|deg| deg < (dm + dg).max(1)),
                    );
                }
            }
        }
    }
    Ok(())
}
