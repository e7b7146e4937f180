//! The commutative algebra of closed diagrams of the twisted Heisenberg
//! category, modeled as a free polynomial algebra on either of its two
//! generating families:
//!
//! * the `α` chart, generated by the single-cycle closures `α_1, α_3, α_5, …`;
//! * the `d` chart, generated by the clockwise bubbles `d_0, d_2, d_4, …`.
//!
//! No diagrams are rewritten anywhere; both families are free polynomial
//! generators, so the symbolic model is lossless. The isomorphism `φ` onto
//! `Γ` sends `α_μ ↦ 2^{ℓ(μ)} 𝔭_μ` and `d_{2k} ↦ 𝕞↓_{k+1}`, and every
//! nontrivial conversion (nested closures, chart changes) goes through `Γ`
//! and a basis solve.
//!
//! The Fock image `F_n` lands in the even center of `Ser_n`: generators map
//! to scaled class sums and Jucys-Murphy conjugation sums, and the map
//! extends multiplicatively.

use crate::gamma::{GammaCtx, GammaElement};
use crate::partitions::{enumerate_odd, length_parity, z_stat, OddPartition, StrictPartition};
use crate::rational::{factorial, pow2, rat, Rat};
use crate::sergeev::{class_sum_scaled, jm_conjugation_sum, jm_element, SergeevElement};
use crate::{Error, Result};
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which free generating family a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Generators `α_k` for odd `k ≥ 1`.
    Alpha,
    /// Generators `d_{2k}` for even indices `2k ≥ 0`.
    D,
}

fn valid_index(chart: Chart, idx: usize) -> bool {
    match chart {
        Chart::Alpha => idx % 2 == 1,
        Chart::D => idx.is_multiple_of(2),
    }
}

/// A commutative polynomial in the chart's generators; monomial keys are
/// multisets of generator indices, sorted descending.
#[derive(Clone, PartialEq, Eq)]
pub struct CenterElement {
    chart: Chart,
    coeffs: BTreeMap<Vec<usize>, Rat>,
}

impl CenterElement {
    pub fn zero(chart: Chart) -> Self {
        CenterElement {
            chart,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(chart: Chart) -> Self {
        CenterElement::monomial(chart, Vec::new(), Rat::one()).expect("empty monomial")
    }

    /// A single generator: `α_idx` or `d_idx` depending on the chart.
    pub fn generator(chart: Chart, idx: usize) -> Result<Self> {
        CenterElement::monomial(chart, vec![idx], Rat::one())
    }

    pub fn monomial(chart: Chart, mut indices: Vec<usize>, c: Rat) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| !valid_index(chart, i)) {
            return Err(Error::Domain(format!(
                "index {bad} is not a {chart:?}-chart generator index"
            )));
        }
        indices.sort_unstable_by(|a, b| b.cmp(a));
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(indices, c);
        }
        Ok(CenterElement { chart, coeffs })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, key: Vec<usize>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> CenterElement {
        if c.is_zero() {
            return CenterElement::zero(self.chart);
        }
        CenterElement {
            chart: self.chart,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Diagram grading: `deg d_0 = 0`, `deg d_{2k} = 2k+1` for `k ≥ 1`,
    /// additive on monomials; the maximum over the support. Only defined on
    /// the `d` presentation.
    pub fn grade(&self) -> Result<usize> {
        if self.chart != Chart::D {
            return Err(Error::Domain(
                "grading is defined on the d presentation".into(),
            ));
        }
        Ok(self
            .coeffs
            .keys()
            .map(|key| key.iter().map(|&i| if i == 0 { 0 } else { i + 1 }).sum())
            .max()
            .unwrap_or(0))
    }
}

impl fmt::Debug for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.chart {
            Chart::Alpha => "α",
            Chart::D => "d",
        };
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", crate::rational::rat_to_string(c))?;
            for idx in key {
                write!(f, "·{name}{idx}")?;
            }
        }
        Ok(())
    }
}

impl Add for &CenterElement {
    type Output = CenterElement;
    fn add(self, other: &CenterElement) -> CenterElement {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CenterElement {
    type Output = CenterElement;
    fn sub(self, other: &CenterElement) -> CenterElement {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &CenterElement {
    type Output = CenterElement;
    fn neg(self) -> CenterElement {
        self.scale(&-Rat::one())
    }
}

impl Mul for &CenterElement {
    type Output = CenterElement;
    fn mul(self, other: &CenterElement) -> CenterElement {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        let mut out = CenterElement::zero(self.chart);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut key = a.clone();
                key.extend_from_slice(b);
                key.sort_unstable_by(|x, y| y.cmp(x));
                out.add_term(key, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// The isomorphism `φ: End(1) → Γ`, defined on generators by
/// `α_{2k+1} ↦ 2𝔭_{2k+1}` and `d_{2k} ↦ 𝕞↓_{k+1}` and extended
/// multiplicatively.
pub fn phi(x: &CenterElement, ctx: &GammaCtx) -> Result<GammaElement> {
    let mut acc = GammaElement::zero();
    for (key, c) in x.coeffs() {
        let mut term = GammaElement::one().scale(c);
        for &idx in key {
            let image = match x.chart() {
                Chart::Alpha => ctx.pfrak(&OddPartition::new(vec![idx])?)?.scale(&rat(2)),
                Chart::D => ctx.down_moment_gamma(idx / 2 + 1)?,
            };
            term = &term * &image;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The nested closure `α_ν` of a permutation of cycle type `ν`, expressed in
/// the `α` chart. Computed through `Γ`: `α_ν = φ^{-1}(2^{ℓ(ν)} 𝔭_ν)`, i.e.
/// `𝔭_ν` is decomposed as a polynomial in the generators `𝔭_{2k+1}` and each
/// `𝔭_{2k+1}` is replaced by `α_{2k+1}/2`.
pub fn alpha_of_partition(nu: &OddPartition, ctx: &GammaCtx) -> Result<CenterElement> {
    let target = ctx.pfrak(nu)?.scale(&pow2(nu.length() as i64));
    gamma_to_chart(&target, Chart::Alpha, ctx)
}

/// Pulls an element of `Γ` back through `φ` into the requested chart.
pub fn gamma_to_chart(f: &GammaElement, chart: Chart, ctx: &GammaCtx) -> Result<CenterElement> {
    let decomposition = match chart {
        Chart::Alpha => ctx.decompose_in_odd_generators(f, &mut |k| {
            Ok(ctx.pfrak(&OddPartition::new(vec![k])?)?.scale(&rat(2)))
        })?,
        Chart::D => {
            ctx.decompose_in_odd_generators(f, &mut |k| ctx.down_moment_gamma(k.div_ceil(2)))?
        }
    };
    let mut out = CenterElement::zero(chart);
    for (gamma, c) in decomposition {
        let key: Vec<usize> = match chart {
            Chart::Alpha => gamma.parts().to_vec(),
            // Odd degree 2k+1 belongs to the generator d_{2k}.
            Chart::D => gamma.parts().iter().map(|&p| p - 1).collect(),
        };
        out = &out + &CenterElement::monomial(chart, key, c)?;
    }
    Ok(out)
}

/// Rewrites between the `α` and `d` presentations through `Γ`.
pub fn convert(x: &CenterElement, chart: Chart, ctx: &GammaCtx) -> Result<CenterElement> {
    if x.chart() == chart {
        return Ok(x.clone());
    }
    gamma_to_chart(&phi(x, ctx)?, chart, ctx)
}

/// The counterclockwise bubble `d̄_{2k}` written in the `d` generators via
/// the recursion `d̄_{2k} = Σ_{a+b=k-1} d̄_{2a} d_{2b}`, seeded by `d̄_0 = 1`.
pub fn dbar(k: usize) -> CenterElement {
    let mut table: Vec<CenterElement> = vec![CenterElement::one(Chart::D)];
    for m in 1..=k {
        let mut acc = CenterElement::zero(Chart::D);
        for (a, entry) in table.iter().enumerate().take(m) {
            let b = m - 1 - a;
            let d_gen = CenterElement::generator(Chart::D, 2 * b).expect("even index");
            acc = &acc + &(entry * &d_gen);
        }
        table.push(acc);
    }
    table.pop().expect("nonempty")
}

/// `F_n` on a single generator.
fn fock_generator(chart: Chart, idx: usize, n: usize) -> Result<SergeevElement> {
    match chart {
        Chart::Alpha => {
            if idx <= n {
                class_sum_scaled(&OddPartition::new(vec![idx])?, n)
            } else {
                Ok(SergeevElement::zero(n))
            }
        }
        Chart::D => {
            if n == 0 {
                Ok(SergeevElement::zero(0))
            } else {
                jm_conjugation_sum(idx, n)
            }
        }
    }
}

/// The Fock image `F_n(x) ∈ Z(Ser_n)_0`: an algebra homomorphism determined
/// by `F_n(α_k) = a_{(k)}^{(n)}` (zero for `k > n`) and
/// `F_n(d_{2k}) = Σ_x x J_n^{2k} x^{-1}`.
pub fn fock_image(x: &CenterElement, n: usize) -> Result<SergeevElement> {
    let mut acc = SergeevElement::zero(n);
    for (key, c) in x.coeffs() {
        let mut term = SergeevElement::one(n).scale(c);
        for &idx in key {
            term = term.try_mul(&fock_generator(x.chart(), idx, n)?)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The direct Fock image of `d̄_{2k}`: `pr_n(J_{n+1}^{2k})`. The bubble
/// recursion says this agrees with `fock_image(dbar(k), n)`.
pub fn fock_dbar_direct(k: usize, n: usize) -> Result<SergeevElement> {
    jm_element(n + 1, n + 1)?.pow(2 * k)?.project(n)
}

/// Degree comparison behind the expansion `α_{2k+1} = d_{2k} + lower`:
/// checks that `φ(α_{2k+1}) - φ(d_{2k}) = 2𝔭_{2k+1} - 𝕞↓_{k+1}` drops to
/// `Γ`-degree `< 2k+1`.
pub fn alpha_leading_term_check(k: usize, ctx: &GammaCtx) -> Result<bool> {
    let alpha = ctx
        .pfrak(&OddPartition::new(vec![2 * k + 1])?)?
        .scale(&rat(2));
    let bubble = ctx.down_moment_gamma(k + 1)?;
    let diff = &alpha - &bubble;
    Ok(diff.degree().is_none_or(|d| d < 2 * k + 1))
}

/// Image in `Γ` of the closure of the central idempotent `e_λ`: expand
/// `e_λ` in the class sums `C_μ` and push each closure through
/// `C_μ ↦ (n!/z_μ) 2^n 𝔭_μ`. The main theorem identifies the result with
/// `g_λ Q*_λ`.
pub fn idempotent_closure(lambda: &StrictPartition, ctx: &GammaCtx) -> Result<GammaElement> {
    let n = lambda.size();
    let mut acc = GammaElement::zero();
    for mu in enumerate_odd(n) {
        let chi = ctx.character(lambda, &mu)?;
        let closure_scalar = Rat::from_integer(factorial(n))
            / Rat::from_integer(z_stat(mu.as_partition()))
            * pow2(n as i64);
        acc = &acc + &ctx.pfrak(&mu)?.scale(&(chi * closure_scalar));
    }
    let idem_scalar = pow2(-(lambda.length() as i64 + length_parity(lambda) as i64) / 2)
        * Rat::from_integer(crate::partitions::count_shifted_tableaux(lambda))
        / Rat::from_integer(factorial(n));
    Ok(acc.scale(&idem_scalar))
}
