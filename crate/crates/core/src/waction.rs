//! The Lie algebra acting on `Γ` through the trace of the category, in two
//! independent layers (no dictionary between them is asserted):
//!
//! * an abstract bracket on elements `Σ t^r f(D) + c·C` with the central
//!   2-cocycle `ψ`, and
//! * concrete linear operators on `Γ` in the `𝔭` basis, truncated at a
//!   configurable degree cutoff.
//!
//! All `√2` factors are absorbed into the rescaled generators
//! `A± = √2·ω_{±1,0}` and `B_m = √2·ω_{-m,0}`, keeping every scalar
//! rational; the usual normalization is recovered by dividing by
//! `√2` at the presentation layer.

use crate::gamma::{Basis, GammaCtx, GammaElement};
use crate::partitions::{enumerate_odd, OddPartition, Partition};
use crate::rational::{rat, Rat};
use crate::{Error, Result};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial over the rationals, dense in ascending powers with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::from_integer(1.into())])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Composition with a shift: `f(X + s)`.
    pub fn shift(&self, s: &Rat) -> Poly {
        // Horner in the shifted variable: f(X+s) = Σ c_k (X+s)^k.
        let mut acc = Poly::zero();
        let x_plus_s = Poly::from_coeffs(vec![s.clone(), Rat::from_integer(1.into())]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x_plus_s) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::from_integer(1.into()))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})D^{i}", crate::rational::rat_to_string(c))?;
        }
        Ok(())
    }
}

/// Whether `t^r f(D)` satisfies the parity constraint of the twisted
/// algebra: `f` must be symmetric about `-r/2` for odd `r` and antisymmetric
/// about `-r/2` for even `r`.
pub fn satisfies_parity(r: i64, f: &Poly) -> bool {
    let half = Rat::new((-r).into(), 2.into());
    let centered = f.shift(&half); // g(y) = f(y - r/2)
    let want_odd_coeffs_zero = r.rem_euclid(2) == 1;
    centered.coeffs().iter().enumerate().all(|(i, c)| {
        if (i % 2 == 1) == want_odd_coeffs_zero {
            c.is_zero()
        } else {
            true
        }
    })
}

/// Element `Σ_r t^r f_r(D) + central·C` of the centrally extended Lie
/// algebra, in normal form (one polynomial per power of `t`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<i64, Poly>,
    central: Rat,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    /// `c·C`.
    pub fn central(c: Rat) -> Self {
        LieElement {
            terms: BTreeMap::new(),
            central: c,
        }
    }

    /// `t^r f(D)`, enforcing the parity constraint.
    pub fn t_term(r: i64, f: Poly) -> Result<Self> {
        if !satisfies_parity(r, &f) {
            return Err(Error::Domain(format!(
                "t^{r}·({f:?}) violates the parity constraint"
            )));
        }
        Ok(Self::t_term_unrestricted(r, f))
    }

    /// `t^r f(D)` in the ambient algebra, without the parity constraint.
    /// The bracket is defined there too; the constrained span is closed
    /// under it.
    pub fn t_term_unrestricted(r: i64, f: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(r, f);
        }
        LieElement {
            terms,
            central: Rat::zero(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Poly> {
        &self.terms
    }

    pub fn central_part(&self) -> &Rat {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    /// Every `t^r` component satisfies the parity constraint.
    pub fn in_constrained_span(&self) -> bool {
        self.terms.iter().all(|(&r, f)| satisfies_parity(r, f))
    }

    fn add_term(&mut self, r: i64, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(r) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(&r, f)| (r, f.scale(c))).collect(),
            central: self.central.clone() * c.clone(),
        }
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (&r, f) in &other.terms {
            out.add_term(r, f.clone());
        }
        out.central += other.central.clone();
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, other: &LieElement) -> LieElement {
        self + &other.scale(&-Rat::from_integer(1.into()))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, poly) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "t^{r}·[{poly:?}]")?;
            first = false;
        }
        if !self.central.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})·C", crate::rational::rat_to_string(&self.central))?;
        }
        Ok(())
    }
}

/// The cocycle: `ψ(t^r f, t^s g) = Σ_{-r ≤ j ≤ -1} f(j) g(j+r)` for
/// `r = -s ≥ 0`, extended antisymmetrically to `r < 0`, zero otherwise.
fn cocycle(r: i64, f: &Poly, s: i64, g: &Poly) -> Rat {
    if r + s != 0 || r == 0 {
        return Rat::zero();
    }
    if r < 0 {
        return -cocycle(s, g, r, f);
    }
    let mut acc = Rat::zero();
    for j in -r..=-1 {
        acc += f.eval_int(j) * g.eval_int(j + r);
    }
    acc
}

/// The bracket
/// `[t^r f(D), t^s g(D)] = t^{r+s}(f(D+s)g(D) - f(D)g(D+r)) + ψ(·,·)C`,
/// extended bilinearly; `C` is central.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (&r, f) in x.terms() {
        for (&s, g) in y.terms() {
            let main = &(&f.shift(&rat(s)) * g) - &(f * &g.shift(&rat(r)));
            out.add_term(r + s, main);
            out.central += cocycle(r, f, s, g);
        }
    }
    out
}

/// A linear operator on `Γ`, stored as images of the `𝔭`-basis vectors up
/// to a degree cutoff. Images are kept as `𝔭`-coordinates. The operator is
/// total on elements supported in degrees `≤ domain_max`; everything else is
/// a cutoff error.
#[derive(Clone, PartialEq, Eq)]
pub struct WOperator {
    cutoff: usize,
    domain_max: usize,
    images: BTreeMap<OddPartition, BTreeMap<OddPartition, Rat>>,
}

impl WOperator {
    /// Builds an operator from basis images. `raise` bounds the degree
    /// shift, so the domain is `|μ| ≤ cutoff - raise`.
    pub fn from_images(
        cutoff: usize,
        raise: usize,
        ctx: &GammaCtx,
        image: &mut dyn FnMut(&OddPartition) -> Result<GammaElement>,
    ) -> Result<WOperator> {
        if raise > cutoff {
            return Err(Error::Domain(format!(
                "degree shift {raise} exceeds the cutoff {cutoff}"
            )));
        }
        let domain_max = cutoff - raise;
        let mut images = BTreeMap::new();
        for d in 0..=domain_max {
            for mu in enumerate_odd(d) {
                let img = image(&mu)?;
                if img.degree().is_some_and(|deg| deg > cutoff) {
                    return Err(Error::Domain(format!(
                        "image of 𝔭{mu} exceeds the cutoff {cutoff}"
                    )));
                }
                images.insert(mu, pfrak_coords(&img, ctx)?);
            }
        }
        Ok(WOperator {
            cutoff,
            domain_max,
            images,
        })
    }

    /// `A₋ = √2·ω_{-1,0}`: `𝔭_μ ↦ 2𝔭_{(μ,1)}`.
    pub fn a_minus(cutoff: usize, ctx: &GammaCtx) -> Result<WOperator> {
        WOperator::from_images(cutoff, 1, ctx, &mut |mu| {
            let bigger = mu.union(&OddPartition::new(vec![1])?);
            Ok(ctx.pfrak(&bigger)?.scale(&rat(2)))
        })
    }

    /// `A₊ = √2·ω_{1,0}`: `𝔭_μ ↦ 𝔭_μ + k 𝔭_{μ̂}` where `k` counts the parts
    /// of `μ` equal to one and `μ̂` drops one of them.
    pub fn a_plus(cutoff: usize, ctx: &GammaCtx) -> Result<WOperator> {
        WOperator::from_images(cutoff, 0, ctx, &mut |mu| {
            let mut img = ctx.pfrak(mu)?;
            let k = mu.as_partition().multiplicity(1);
            if k > 0 {
                let hat = drop_one_part_of_size_one(mu);
                img = &img + &ctx.pfrak(&hat)?.scale(&rat(k as i64));
            }
            Ok(img)
        })
    }

    /// `ω_{0,3}`: multiplication by `-𝔭_3 - 2𝔭_{(1,1)}`.
    pub fn omega03(cutoff: usize, ctx: &GammaCtx) -> Result<WOperator> {
        let multiplier = omega03_multiplier(ctx)?;
        WOperator::from_images(cutoff, 3, ctx, &mut |mu| Ok(&multiplier * &ctx.pfrak(mu)?))
    }

    /// `B_m = √2·ω_{-m,0}` for odd `m ≥ 3`: `𝔭_μ ↦ 2𝔭_{(μ,m)}`.
    pub fn b_odd(m: usize, cutoff: usize, ctx: &GammaCtx) -> Result<WOperator> {
        if m.is_multiple_of(2) || m < 3 {
            return Err(Error::Domain(format!("B_m requires odd m ≥ 3, got {m}")));
        }
        WOperator::from_images(cutoff, m, ctx, &mut |mu| {
            let bigger = mu.union(&OddPartition::new(vec![m])?);
            Ok(ctx.pfrak(&bigger)?.scale(&rat(2)))
        })
    }

    pub fn identity(cutoff: usize) -> WOperator {
        let mut images = BTreeMap::new();
        for d in 0..=cutoff {
            for mu in enumerate_odd(d) {
                images.insert(
                    mu.clone(),
                    BTreeMap::from([(mu, Rat::from_integer(1.into()))]),
                );
            }
        }
        WOperator {
            cutoff,
            domain_max: cutoff,
            images,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn domain_max(&self) -> usize {
        self.domain_max
    }

    /// Applies to `𝔭`-coordinates; errors when the support exceeds the
    /// domain.
    pub fn apply_coords(
        &self,
        coords: &BTreeMap<OddPartition, Rat>,
    ) -> Result<BTreeMap<OddPartition, Rat>> {
        let mut out: BTreeMap<OddPartition, Rat> = BTreeMap::new();
        for (mu, c) in coords {
            let img = self.images.get(mu).ok_or_else(|| {
                Error::Domain(format!(
                    "𝔭{mu} exceeds the operator domain (degree ≤ {})",
                    self.domain_max
                ))
            })?;
            for (gamma, a) in img {
                let entry = out.entry(gamma.clone()).or_insert_with(Rat::zero);
                *entry += c.clone() * a.clone();
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Applies to an element of `Γ`.
    pub fn apply(&self, f: &GammaElement, ctx: &GammaCtx) -> Result<GammaElement> {
        let coords = pfrak_coords(f, ctx)?;
        let image = self.apply_coords(&coords)?;
        gamma_from_pfrak(&image, ctx)
    }

    /// `self ∘ other`. The composed domain keeps every `μ` whose image
    /// under `other` stays inside `self`'s domain.
    pub fn compose(&self, other: &WOperator) -> Result<WOperator> {
        if self.cutoff != other.cutoff {
            return Err(Error::Domain("cutoff mismatch in composition".into()));
        }
        let mut domain_max = other.domain_max;
        for (mu, img) in &other.images {
            if img.keys().any(|gamma| gamma.size() > self.domain_max) {
                domain_max = domain_max.min(mu.size().saturating_sub(1));
            }
        }
        let mut images = BTreeMap::new();
        for (mu, img) in &other.images {
            if mu.size() > domain_max {
                continue;
            }
            images.insert(mu.clone(), self.apply_coords(img)?);
        }
        Ok(WOperator {
            cutoff: self.cutoff,
            domain_max,
            images,
        })
    }

    pub fn commutator(&self, other: &WOperator) -> Result<WOperator> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.sub(&ba)
    }

    pub fn add(&self, other: &WOperator) -> Result<WOperator> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &WOperator) -> Result<WOperator> {
        self.combine(other, true)
    }

    fn combine(&self, other: &WOperator, negate: bool) -> Result<WOperator> {
        if self.cutoff != other.cutoff {
            return Err(Error::Domain("cutoff mismatch".into()));
        }
        let domain_max = self.domain_max.min(other.domain_max);
        let mut images = BTreeMap::new();
        for (mu, img) in &self.images {
            if mu.size() > domain_max {
                continue;
            }
            let mut merged = img.clone();
            for (gamma, c) in &other.images[mu] {
                let delta = if negate { -c.clone() } else { c.clone() };
                let entry = merged.entry(gamma.clone()).or_insert_with(Rat::zero);
                *entry += delta;
            }
            merged.retain(|_, v| !v.is_zero());
            images.insert(mu.clone(), merged);
        }
        Ok(WOperator {
            cutoff: self.cutoff,
            domain_max,
            images,
        })
    }

    pub fn scale(&self, c: &Rat) -> WOperator {
        WOperator {
            cutoff: self.cutoff,
            domain_max: self.domain_max,
            images: self
                .images
                .iter()
                .map(|(mu, img)| {
                    let scaled = img
                        .iter()
                        .map(|(g, v)| (g.clone(), v.clone() * c.clone()))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    (mu.clone(), scaled)
                })
                .collect(),
        }
    }

    /// Agreement with another operator on the intersection of domains.
    pub fn equals_on_common_domain(&self, other: &WOperator) -> bool {
        let domain_max = self.domain_max.min(other.domain_max);
        self.images
            .iter()
            .filter(|(mu, _)| mu.size() <= domain_max)
            .all(|(mu, img)| other.images.get(mu) == Some(img))
    }

    /// Maximal degree increase over the domain.
    pub fn degree_raise(&self) -> usize {
        self.images
            .iter()
            .flat_map(|(mu, img)| {
                img.keys()
                    .map(move |gamma| gamma.size().saturating_sub(mu.size()))
            })
            .max()
            .unwrap_or(0)
    }
}

fn pfrak_coords(f: &GammaElement, ctx: &GammaCtx) -> Result<BTreeMap<OddPartition, Rat>> {
    Ok(ctx
        .to_basis(f, Basis::PFrak)?
        .into_iter()
        .map(|(p, c)| (OddPartition::from_partition(p).expect("odd keys"), c))
        .collect())
}

fn gamma_from_pfrak(coords: &BTreeMap<OddPartition, Rat>, ctx: &GammaCtx) -> Result<GammaElement> {
    let as_partitions: BTreeMap<Partition, Rat> = coords
        .iter()
        .map(|(mu, c)| (mu.as_partition().clone(), c.clone()))
        .collect();
    ctx.from_basis(&as_partitions, Basis::PFrak)
}

fn drop_one_part_of_size_one(mu: &OddPartition) -> OddPartition {
    let mut parts = mu.parts().to_vec();
    let pos = parts
        .iter()
        .rposition(|&p| p == 1)
        .expect("a part of size one");
    parts.remove(pos);
    OddPartition::new(parts).expect("still odd")
}

fn omega03_multiplier(ctx: &GammaCtx) -> Result<GammaElement> {
    let p3 = ctx.pfrak(&OddPartition::new(vec![3])?)?;
    let p11 = ctx.pfrak(&OddPartition::new(vec![1, 1])?)?;
    Ok(&(-&p3) - &p11.scale(&rat(2)))
}

/// `A₋` applied directly in `Γ`: `𝔭_μ ↦ 2𝔭_{(μ,1)}` extended linearly.
pub fn apply_a_minus(f: &GammaElement, ctx: &GammaCtx) -> Result<GammaElement> {
    let coords = pfrak_coords(f, ctx)?;
    let mut acc = GammaElement::zero();
    for (mu, c) in coords {
        let bigger = mu.union(&OddPartition::new(vec![1])?);
        acc = &acc + &ctx.pfrak(&bigger)?.scale(&(c * rat(2)));
    }
    Ok(acc)
}

/// `A₊` applied directly in `Γ`: `𝔭_μ ↦ 𝔭_μ + k 𝔭_{μ̂}`.
pub fn apply_a_plus(f: &GammaElement, ctx: &GammaCtx) -> Result<GammaElement> {
    let coords = pfrak_coords(f, ctx)?;
    let mut acc = f.clone();
    for (mu, c) in coords {
        let k = mu.as_partition().multiplicity(1);
        if k > 0 {
            let hat = drop_one_part_of_size_one(&mu);
            acc = &acc + &ctx.pfrak(&hat)?.scale(&(c * rat(k as i64)));
        }
    }
    Ok(acc)
}

/// `ω_{0,3}` applied directly: multiplication by `-𝔭_3 - 2𝔭_{(1,1)}`.
pub fn apply_omega03(f: &GammaElement, ctx: &GammaCtx) -> Result<GammaElement> {
    Ok(&omega03_multiplier(ctx)? * f)
}

/// `B_m` applied directly: `𝔭_μ ↦ 2𝔭_{(μ,m)}` for odd `m ≥ 3`.
pub fn apply_b(m: usize, f: &GammaElement, ctx: &GammaCtx) -> Result<GammaElement> {
    if m.is_multiple_of(2) || m < 3 {
        return Err(Error::Domain(format!("B_m requires odd m ≥ 3, got {m}")));
    }
    let coords = pfrak_coords(f, ctx)?;
    let mut acc = GammaElement::zero();
    for (mu, c) in coords {
        let bigger = mu.union(&OddPartition::new(vec![m])?);
        acc = &acc + &ctx.pfrak(&bigger)?.scale(&(c * rat(2)));
    }
    Ok(acc)
}

/// The derived operator
/// `ω_{0,1} = -(1/20)[[ω_{0,3}, ω_{-1,0}], ω_{1,0}] + (1/5) ω_{-1,0} ω_{1,0}`,
/// assembled from the rescaled generators (each `ω_{±1,0}` contributes a
/// `1/√2`, so the rational cocktail is `-(1/40)[[ω_{0,3}, A₋], A₊] +
/// (1/10) A₋ A₊`). Only linearity and degree bounds are checked; no
/// independent formula for its action exists in this setting.
pub fn omega01(cutoff: usize, ctx: &GammaCtx) -> Result<WOperator> {
    let a_minus = WOperator::a_minus(cutoff, ctx)?;
    let a_plus = WOperator::a_plus(cutoff, ctx)?;
    let om3 = WOperator::omega03(cutoff, ctx)?;
    let inner = om3.commutator(&a_minus)?;
    let outer = inner.commutator(&a_plus)?;
    let first = outer.scale(&Rat::new((-1).into(), 40.into()));
    let second = a_minus
        .compose(&a_plus)?
        .scale(&Rat::new(1.into(), 10.into()));
    first.add(&second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::test_util::op;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> &'static GammaCtx {
        static CTX: std::sync::OnceLock<GammaCtx> = std::sync::OnceLock::new();
        CTX.get_or_init(GammaCtx::new)
    }

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn poly_basics() {
        let f = poly(&[1, 0, 1]); // 1 + D²
        assert_eq!(f.eval_int(3), rat(10));
        let shifted = f.shift(&rat(2)); // 1 + (D+2)² = 5 + 4D + D²
        assert_eq!(shifted, poly(&[5, 4, 1]));
        assert_eq!((&f * &Poly::x()).degree(), Some(3));
        assert!(poly(&[]).is_zero());
    }

    #[test]
    fn parity_constraint() {
        // Odd r: f symmetric about -r/2. For r = 1, f = 1 works, f = D fails,
        // but f = D(D+1) is symmetric about -1/2.
        assert!(satisfies_parity(1, &poly(&[1])));
        assert!(!satisfies_parity(1, &poly(&[0, 1])));
        assert!(satisfies_parity(1, &poly(&[0, 1, 1])));
        // Even r: f antisymmetric about -r/2. For r = 0 that means odd.
        assert!(satisfies_parity(0, &poly(&[0, 1])));
        assert!(satisfies_parity(0, &poly(&[0, 1, 0, 5])));
        assert!(!satisfies_parity(0, &poly(&[1])));
        // r = 2: antisymmetric about -1: D+1 works.
        assert!(satisfies_parity(2, &poly(&[1, 1])));
        assert!(!satisfies_parity(2, &poly(&[1])));
        assert!(LieElement::t_term(1, poly(&[0, 1])).is_err());
        assert!(LieElement::t_term(1, poly(&[1])).is_ok());
    }

    #[test]
    fn bracket_examples() {
        // [t·1, t^{-1}·1] = C.
        let x = LieElement::t_term(1, poly(&[1])).unwrap();
        let y = LieElement::t_term(-1, poly(&[1])).unwrap();
        assert_eq!(bracket(&x, &y), LieElement::central(rat(1)));
        assert_eq!(bracket(&y, &x), LieElement::central(rat(-1)));
        // [t^0 f, t^0 g] = 0 for odd f, g.
        let f = LieElement::t_term(0, poly(&[0, 1])).unwrap();
        let g = LieElement::t_term(0, poly(&[0, 3, 0, 2])).unwrap();
        assert!(bracket(&f, &g).is_zero());
        // Jacobi on (t·1, t^{-1}·D², t^0·D); the middle element lives in the
        // ambient algebra only.
        let a = LieElement::t_term(1, poly(&[1])).unwrap();
        let b = LieElement::t_term_unrestricted(-1, poly(&[0, 0, 1]));
        let c = LieElement::t_term(0, poly(&[0, 1])).unwrap();
        let jac = &(&bracket(&a, &bracket(&b, &c)) + &bracket(&b, &bracket(&c, &a)))
            + &bracket(&c, &bracket(&a, &b));
        assert!(jac.is_zero(), "{jac:?}");
    }

    fn random_element(rng: &mut ChaCha8Rng, constrained: bool) -> LieElement {
        let mut out = LieElement::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let r = rng.gen_range(-3i64..=3);
            if constrained {
                // Build g (even or odd per parity of r) and shift to f.
                let even = r.rem_euclid(2) == 1;
                let mut coeffs = vec![Rat::zero(); 5];
                for (i, c) in coeffs.iter_mut().enumerate() {
                    if (i % 2 == 0) == even {
                        *c = rat(rng.gen_range(-3i64..=3));
                    }
                }
                let g = Poly::from_coeffs(coeffs);
                let f = g.shift(&Rat::new(r.into(), 2.into()));
                out = &out + &LieElement::t_term(r, f).unwrap();
            } else {
                let coeffs: Vec<Rat> = (0..=4).map(|_| rat(rng.gen_range(-3i64..=3))).collect();
                out = &out + &LieElement::t_term_unrestricted(r, Poly::from_coeffs(coeffs));
            }
        }
        out
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let x = random_element(&mut rng, false);
            let y = random_element(&mut rng, false);
            let z = random_element(&mut rng, false);
            let anti = &bracket(&x, &y) + &bracket(&y, &x);
            assert!(anti.is_zero(), "antisymmetry");
            let jac = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x)))
                + &bracket(&z, &bracket(&x, &y));
            assert!(jac.is_zero(), "jacobi");
        }
    }

    #[test]
    fn constrained_span_closed_under_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_element(&mut rng, true);
            let y = random_element(&mut rng, true);
            assert!(x.in_constrained_span() && y.in_constrained_span());
            assert!(bracket(&x, &y).in_constrained_span());
        }
    }

    #[test]
    fn a_minus_examples() {
        let ctx = ctx();
        let apply = |parts: &[usize]| apply_a_minus(&ctx.pfrak(&op(parts)).unwrap(), ctx).unwrap();
        assert_eq!(apply(&[3]), ctx.pfrak(&op(&[3, 1])).unwrap().scale(&rat(2)));
        assert_eq!(apply(&[]), ctx.pfrak(&op(&[1])).unwrap().scale(&rat(2)));
        assert_eq!(
            apply(&[1, 1]),
            ctx.pfrak(&op(&[1, 1, 1])).unwrap().scale(&rat(2))
        );
    }

    #[test]
    fn a_plus_examples() {
        let ctx = ctx();
        let apply = |parts: &[usize]| apply_a_plus(&ctx.pfrak(&op(parts)).unwrap(), ctx).unwrap();
        assert_eq!(apply(&[3]), ctx.pfrak(&op(&[3])).unwrap());
        let expected =
            &ctx.pfrak(&op(&[1, 1])).unwrap() + &ctx.pfrak(&op(&[1])).unwrap().scale(&rat(2));
        assert_eq!(apply(&[1, 1]), expected);
        // 𝔭_{(1)} ↦ 𝔭_{(1)} + 1.
        let expected = &ctx.pfrak(&op(&[1])).unwrap() + &GammaElement::one();
        assert_eq!(apply(&[1]), expected);
    }

    #[test]
    fn omega03_examples() {
        let ctx = ctx();
        let m = omega03_multiplier(ctx).unwrap();
        assert_eq!(apply_omega03(&GammaElement::one(), ctx).unwrap(), m);
        // A multiplication operator commutes with any multiplication.
        let f = ctx.pfrak(&op(&[3])).unwrap();
        let g = ctx.pfrak(&op(&[1, 1])).unwrap();
        let lhs = apply_omega03(&(&f * &g), ctx).unwrap();
        let rhs = &f * &apply_omega03(&g, ctx).unwrap();
        assert_eq!(lhs, rhs);
        // Linearity.
        let sum = &ctx.pfrak(&op(&[3])).unwrap() + &ctx.pfrak(&op(&[1])).unwrap();
        let lhs = apply_omega03(&sum, ctx).unwrap();
        let rhs = &apply_omega03(&ctx.pfrak(&op(&[3])).unwrap(), ctx).unwrap()
            + &apply_omega03(&ctx.pfrak(&op(&[1])).unwrap(), ctx).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn b_odd_examples() {
        let ctx = ctx();
        let apply =
            |m: usize, parts: &[usize]| apply_b(m, &ctx.pfrak(&op(parts)).unwrap(), ctx).unwrap();
        assert_eq!(
            apply(3, &[1]),
            ctx.pfrak(&op(&[3, 1])).unwrap().scale(&rat(2))
        );
        assert_eq!(apply(5, &[]), ctx.pfrak(&op(&[5])).unwrap().scale(&rat(2)));
        assert_eq!(
            apply(3, &[3]),
            ctx.pfrak(&op(&[3, 3])).unwrap().scale(&rat(2))
        );
        assert!(apply_b(4, &GammaElement::one(), ctx).is_err());
        assert!(apply_b(1, &GammaElement::one(), ctx).is_err());
    }

    #[test]
    fn ladder_commutator_is_minus_two() {
        let ctx = ctx();
        let cutoff = 8;
        let a_minus = WOperator::a_minus(cutoff, ctx).unwrap();
        let a_plus = WOperator::a_plus(cutoff, ctx).unwrap();
        let com = a_minus.commutator(&a_plus).unwrap();
        let expected = WOperator::identity(cutoff).scale(&rat(-2));
        assert!(com.equals_on_common_domain(&expected));
        assert!(com.domain_max() >= 7);
    }

    #[test]
    fn b_operators_commute_with_a_plus() {
        let ctx = ctx();
        let cutoff = 8;
        let a_plus = WOperator::a_plus(cutoff, ctx).unwrap();
        for m in [3usize, 5] {
            let b = WOperator::b_odd(m, cutoff, ctx).unwrap();
            let com = b.commutator(&a_plus).unwrap();
            let zero = WOperator::identity(cutoff).scale(&Rat::zero());
            assert!(com.equals_on_common_domain(&zero), "m = {m}");
            assert!(com.domain_max() >= cutoff - m);
        }
    }

    #[test]
    fn operator_apply_respects_cutoff() {
        let ctx = ctx();
        let a_minus = WOperator::a_minus(4, ctx).unwrap();
        assert_eq!(a_minus.domain_max(), 3);
        let ok = ctx.pfrak(&op(&[3])).unwrap();
        assert!(a_minus.apply(&ok, ctx).is_ok());
        let too_big = ctx.pfrak(&op(&[5])).unwrap();
        assert!(a_minus.apply(&too_big, ctx).is_err());
    }

    #[test]
    fn derived_omega01_is_well_behaved() {
        let ctx = ctx();
        let op01 = omega01(8, ctx).unwrap();
        assert!(op01.degree_raise() <= 4);
        assert!(op01.domain_max() >= 4);
        // Linearity comes with the matrix representation; spot-check one sum.
        let f = ctx.pfrak(&op(&[3])).unwrap();
        let g = ctx.pfrak(&op(&[1])).unwrap();
        let lhs = op01.apply(&(&f + &g), ctx).unwrap();
        let rhs = &op01.apply(&f, ctx).unwrap() + &op01.apply(&g, ctx).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_and_direct_actions_agree() {
        let ctx = ctx();
        // ω_{0,3} raises the degree by 3, so cutoff 8 covers inputs up to
        // degree 5.
        let cutoff = 8;
        let cases: Vec<GammaElement> = vec![
            ctx.pfrak(&op(&[3, 1])).unwrap(),
            &ctx.pfrak(&op(&[5])).unwrap() + &GammaElement::one().scale(&rat(4)),
            ctx.pfrak(&op(&[1, 1])).unwrap(),
        ];
        let a_minus = WOperator::a_minus(cutoff, ctx).unwrap();
        let a_plus = WOperator::a_plus(cutoff, ctx).unwrap();
        let om3 = WOperator::omega03(cutoff, ctx).unwrap();
        for f in cases {
            assert_eq!(
                a_minus.apply(&f, ctx).unwrap(),
                apply_a_minus(&f, ctx).unwrap()
            );
            assert_eq!(
                a_plus.apply(&f, ctx).unwrap(),
                apply_a_plus(&f, ctx).unwrap()
            );
            assert_eq!(om3.apply(&f, ctx).unwrap(), apply_omega03(&f, ctx).unwrap());
        }
    }
}
