//! The Schur graph: strict partitions graded by size, with edges weighted by
//! the multiplicity `κ`, the Markov kernels `p↓`/`p↑` they induce, the
//! Plancherel measures, and the up/down transition moments.
//!
//! Everything here is a pure function of its arguments; the counting data it
//! needs (`g_λ`) comes from closed formulas in [`crate::partitions`], so no
//! shared cache is required even for partitions with a few dozen cells.

use crate::partitions::{
    add_cell_by_content, enumerate_strict, kerov_coordinates, path_count, remove_cell_by_content,
    StrictPartition,
};
use crate::rational::{factorial, pow2, rat, Rat};
use crate::Error;
use num::traits::Zero;
use std::collections::BTreeMap;

/// One row of a transition kernel: the source vertex together with every
/// target reachable in one step and its probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionRow {
    pub source: StrictPartition,
    pub targets: BTreeMap<StrictPartition, Rat>,
}

/// Edge multiplicity `κ(ν, λ)`: 2 when `λ` covers `ν` keeping the length, 1
/// when the length grows, 0 when `λ` does not cover `ν`.
pub fn edge_multiplicity(nu: &StrictPartition, lambda: &StrictPartition) -> u8 {
    if lambda.size() != nu.size() + 1 || !covers(lambda, nu) {
        return 0;
    }
    if lambda.length() == nu.length() {
        2
    } else {
        1
    }
}

fn covers(lambda: &StrictPartition, nu: &StrictPartition) -> bool {
    // λ covers ν iff ν ⊆ λ and they differ by exactly one cell.
    lambda.as_partition().contains(nu.as_partition()) && lambda.size() == nu.size() + 1
}

/// Down transition `p↓(λ, ν) = κ(ν, λ) g_ν / g_λ`; zero off edges.
pub fn down_transition(lambda: &StrictPartition, nu: &StrictPartition) -> Rat {
    let kappa = edge_multiplicity(nu, lambda);
    if kappa == 0 {
        return Rat::zero();
    }
    rat(kappa as i64) * Rat::new(path_count(nu), path_count(lambda))
}

/// Up transition `p↑(ν, λ) = g_λ / (g_ν (|ν| + 1))`; zero off edges.
pub fn up_transition(nu: &StrictPartition, lambda: &StrictPartition) -> Rat {
    if edge_multiplicity(nu, lambda) == 0 {
        return Rat::zero();
    }
    Rat::new(
        path_count(lambda),
        path_count(nu) * rat((nu.size() + 1) as i64).to_integer(),
    )
}

/// The full row of `p↓` out of `λ`.
pub fn down_row(lambda: &StrictPartition) -> TransitionRow {
    let (_, removable) = kerov_coordinates(lambda);
    let targets = removable
        .into_iter()
        .map(|y| {
            let nu = remove_cell_by_content(lambda, y).expect("removable content");
            let p = down_transition(lambda, &nu);
            (nu, p)
        })
        .collect();
    TransitionRow {
        source: lambda.clone(),
        targets,
    }
}

/// The full row of `p↑` out of `ν`.
pub fn up_row(nu: &StrictPartition) -> TransitionRow {
    let (addable, _) = kerov_coordinates(nu);
    let targets = addable
        .into_iter()
        .map(|x| {
            let lambda = add_cell_by_content(nu, x).expect("addable content");
            let p = up_transition(nu, &lambda);
            (lambda, p)
        })
        .collect();
    TransitionRow {
        source: nu.clone(),
        targets,
    }
}

/// Plancherel measure at level `n`: `Pl_n(λ) = 2^{ℓ(λ)-n} g_λ² / n!`.
pub fn plancherel(n: usize) -> BTreeMap<StrictPartition, Rat> {
    enumerate_strict(n)
        .into_iter()
        .map(|lambda| {
            let g = path_count(&lambda);
            let value =
                pow2(lambda.length() as i64 - n as i64) * Rat::new(g.clone() * g, factorial(n));
            (lambda, value)
        })
        .collect()
}

/// `s(i) = i(i+1)`, the spectral value attached to content `i`.
pub fn spectral(i: usize) -> Rat {
    rat((i * (i + 1)) as i64)
}

/// Up moment `𝕞↑_k(λ) = Σ_{x ∈ ℭ↑(λ)} p↑(λ, λ+□(x)) s(x)^k`; `𝕞↑_0 = 1`.
pub fn up_moment(k: usize, lambda: &StrictPartition) -> Rat {
    let (addable, _) = kerov_coordinates(lambda);
    let mut acc = Rat::zero();
    for x in addable {
        let target = add_cell_by_content(lambda, x).expect("addable content");
        acc += up_transition(lambda, &target) * spectral(x).pow(k as i32);
    }
    acc
}

/// Down moment `𝕞↓_{k}(λ) = 2|λ| Σ_{y ∈ ℭ↓(λ)} p↓(λ, λ-□(y)) s(y)^{k-1}`.
/// The index starts at 1; `k = 0` is rejected rather than given a value.
pub fn down_moment(k: usize, lambda: &StrictPartition) -> Result<Rat, Error> {
    if k == 0 {
        return Err(Error::Domain("down moment index starts at 1".into()));
    }
    let (_, removable) = kerov_coordinates(lambda);
    let mut acc = Rat::zero();
    for y in removable {
        let target = remove_cell_by_content(lambda, y).expect("removable content");
        acc += down_transition(lambda, &target) * spectral(y).pow((k - 1) as i32);
    }
    Ok(rat(2 * lambda.size() as i64) * acc)
}
