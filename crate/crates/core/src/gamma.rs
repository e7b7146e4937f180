//! The algebra `Γ = ℚ[p_1, p_3, p_5, ...]` of odd power sums, realized as
//! sparse rational linear combinations of monomials `p_μ` indexed by odd
//! partitions.
//!
//! Besides the `p` basis the module builds three more: the Schur Q-functions
//! `Q_λ` (through the two-row Pfaffian recursion), the inhomogeneous power
//! sums `𝔭_μ` (by exact interpolation against their evaluations on strict
//! partitions), and the factorial Schur Q-functions `Q*_λ` (a character-
//! weighted combination of the `𝔭`). The character matrix `X` tying `p` to
//! `Q` carries the irreducible character values `χ^λ(μ)` used everywhere
//! else in the crate.
//!
//! Expensive objects (q-series, X matrices, `𝔭` interpolations, moment
//! interpolations) live in a [`GammaCtx`]: caches are mutex-guarded maps
//! written at most once per key, so concurrent use is safe and idempotent.

use crate::linalg::{invert, rank, solve_unique};
use crate::partitions::{
    count_shifted_tableaux, enumerate_odd, enumerate_strict, enumerate_strict_up_to, length_parity,
    z_stat, OddPartition, Partition, StrictPartition,
};
use crate::rational::{pow2, rat, Rat};
use crate::schur_graph::{down_moment, up_moment};
use crate::{Error, Result};
use num::traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

/// Element of `Γ` in the `p` basis: a finite map from odd partitions to
/// nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GammaElement {
    coeffs: BTreeMap<OddPartition, Rat>,
}

impl GammaElement {
    pub fn zero() -> Self {
        GammaElement::default()
    }

    pub fn one() -> Self {
        GammaElement::term(OddPartition::empty(), Rat::one())
    }

    /// The basis monomial `p_μ`.
    pub fn p(mu: OddPartition) -> Self {
        GammaElement::term(mu, Rat::one())
    }

    pub fn term(mu: OddPartition, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(mu, c);
        }
        GammaElement { coeffs }
    }

    pub fn from_coeffs(coeffs: BTreeMap<OddPartition, Rat>) -> Self {
        let mut out = GammaElement::zero();
        for (mu, c) in coeffs {
            out.add_term(mu, c);
        }
        out
    }

    fn add_term(&mut self, mu: OddPartition, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(mu) {
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<OddPartition, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, mu: &OddPartition) -> Rat {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rat::zero)
    }

    /// Maximal `|μ|` over the support; `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|mu| mu.size()).max()
    }

    /// The homogeneous part of degree `d`.
    pub fn homogeneous_component(&self, d: usize) -> GammaElement {
        GammaElement {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(mu, _)| mu.size() == d)
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> GammaElement {
        if c.is_zero() {
            return GammaElement::zero();
        }
        GammaElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|(mu, v)| (mu.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Evaluation `f(λ)`: substitute `p_k(λ) = Σ_i λ_i^k`.
    pub fn evaluate(&self, lambda: &StrictPartition) -> Rat {
        let mut power_sums: HashMap<usize, Rat> = HashMap::new();
        let mut result = Rat::zero();
        for (mu, c) in &self.coeffs {
            let mut term = c.clone();
            for &k in mu.parts() {
                let ps = power_sums.entry(k).or_insert_with(|| {
                    let mut acc = Rat::zero();
                    for &part in lambda.parts() {
                        acc += Rat::from_integer(num::BigInt::from(part).pow(k as u32));
                    }
                    acc
                });
                term *= ps.clone();
            }
            result += term;
        }
        result
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (mu, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*p{}", crate::rational::rat_to_string(c), mu)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (mu, c) in &other.coeffs {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (mu, c) in &other.coeffs {
            out.add_term(mu.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        self.scale(&-Rat::one())
    }
}

/// Bilinear product via `p_μ · p_γ = p_{μ∪γ}`.
impl Mul for &GammaElement {
    type Output = GammaElement;
    fn mul(self, other: &GammaElement) -> GammaElement {
        let mut out = GammaElement::zero();
        for (mu, a) in &self.coeffs {
            for (gamma, b) in &other.coeffs {
                out.add_term(mu.union(gamma), a.clone() * b.clone());
            }
        }
        out
    }
}

/// The change-of-basis data at level `n`: `X_μ^λ`, defined by
/// `p_μ = Σ_λ 2^{-ℓ(λ)} X_μ^λ Q_λ` over `μ ∈ OP_n`, `λ ∈ SP_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMatrix {
    n: usize,
    odd: Vec<OddPartition>,
    strict: Vec<StrictPartition>,
    /// `entries[i][j] = X_{odd[i]}^{strict[j]}`.
    entries: Vec<Vec<Rat>>,
}

impl CharacterMatrix {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn odd_index(&self) -> &[OddPartition] {
        &self.odd
    }

    pub fn strict_index(&self) -> &[StrictPartition] {
        &self.strict
    }

    pub fn entry(&self, mu: &OddPartition, lambda: &StrictPartition) -> Result<Rat> {
        let i =
            self.odd.iter().position(|m| m == mu).ok_or_else(|| {
                Error::Domain(format!("{mu} is not an odd partition of {}", self.n))
            })?;
        let j = self
            .strict
            .iter()
            .position(|l| l == lambda)
            .ok_or_else(|| {
                Error::Domain(format!("{lambda} is not a strict partition of {}", self.n))
            })?;
        Ok(self.entries[i][j].clone())
    }

    pub fn rows(&self) -> impl Iterator<Item = (&OddPartition, &Vec<Rat>)> {
        self.odd.iter().zip(self.entries.iter())
    }
}

/// Which linear basis of `Γ` to expand in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    P,
    PFrak,
    Q,
    QStar,
}

impl Basis {
    pub fn parse(s: &str) -> Result<Basis> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Basis::P),
            "pfrak" | "frakp" | "pstar" => Ok(Basis::PFrak),
            "q" => Ok(Basis::Q),
            "qstar" | "q*" => Ok(Basis::QStar),
            other => Err(Error::Domain(format!("unknown basis {other:?}"))),
        }
    }
}

/// Shared caches for the expensive constructions. All methods take `&self`;
/// cache writes are idempotent, so racing constructions of the same entry
/// are harmless.
#[derive(Default)]
pub struct GammaCtx {
    q_series: Mutex<HashMap<usize, GammaElement>>,
    x_matrices: Mutex<HashMap<usize, CharacterMatrix>>,
    pfrak: Mutex<HashMap<OddPartition, GammaElement>>,
    up_moments: Mutex<HashMap<usize, GammaElement>>,
    down_moments: Mutex<HashMap<usize, GammaElement>>,
}

/// How far past the degree bound the interpolation point set is allowed to
/// grow before reporting failure.
const MAX_INTERPOLATION_SLACK: usize = 4;

impl GammaCtx {
    pub fn new() -> Self {
        GammaCtx::default()
    }

    /// `q_r = Q_{(r)}`: coefficient of `t^r` in `exp(2 Σ_{k odd} p_k t^k / k)`.
    pub fn q_series(&self, r: usize) -> GammaElement {
        if let Some(hit) = self.q_series.lock().unwrap().get(&r) {
            return hit.clone();
        }
        // Series coefficients q_0..q_r all at once.
        let mut series: Vec<GammaElement> = vec![GammaElement::one()];
        for k in (1..=r).step_by(2) {
            // Multiply by exp(2 p_k t^k / k) truncated at degree r.
            let mut next: Vec<GammaElement> = vec![GammaElement::zero(); r + 1];
            for (deg, cur) in series.iter().enumerate() {
                if cur.is_zero() {
                    continue;
                }
                let mut power = GammaElement::one();
                let mut factor = Rat::one();
                let mut j = 0;
                while deg + j * k <= r {
                    if j > 0 {
                        power = &power * &GammaElement::p(OddPartition::new(vec![k]).unwrap());
                        factor *= Rat::new(rat(2).to_integer(), rat((k * j) as i64).to_integer());
                    }
                    next[deg + j * k] = &next[deg + j * k] + &(&power * cur).scale(&factor);
                    j += 1;
                }
            }
            series = next;
        }
        series.resize(r + 1, GammaElement::zero());
        let mut cache = self.q_series.lock().unwrap();
        for (i, q) in series.iter().enumerate() {
            cache.entry(i).or_insert_with(|| q.clone());
        }
        series[r].clone()
    }

    /// Two-row function `Q_{(r,s)} = q_r q_s + 2 Σ_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}`.
    fn q_two_row(&self, r: usize, s: usize) -> GammaElement {
        let mut acc = &self.q_series(r) * &self.q_series(s);
        for i in 1..=s {
            let prod = (&self.q_series(r + i) * &self.q_series(s - i)).scale(&rat(2));
            if i % 2 == 1 {
                acc = &acc - &prod;
            } else {
                acc = &acc + &prod;
            }
        }
        acc
    }

    /// Schur Q-function `Q_λ` as the Pfaffian of the two-row values, with a
    /// zero part appended when the length is odd.
    pub fn schur_q(&self, lambda: &StrictPartition) -> GammaElement {
        let mut parts = lambda.parts().to_vec();
        if parts.is_empty() {
            return GammaElement::one();
        }
        if parts.len() == 1 {
            return self.q_series(parts[0]);
        }
        if parts.len() % 2 == 1 {
            parts.push(0);
        }
        let m = parts.len();
        let mut matrix: Vec<Vec<GammaElement>> = vec![vec![GammaElement::zero(); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let entry = self.q_two_row(parts[i], parts[j]);
                matrix[j][i] = -&entry;
                matrix[i][j] = entry;
            }
        }
        pfaffian(&matrix)
    }

    /// The character matrix at level `n`, solving `p_μ = Σ_λ 2^{-ℓ(λ)} X_μ^λ Q_λ`.
    pub fn x_matrix(&self, n: usize) -> Result<CharacterMatrix> {
        if let Some(hit) = self.x_matrices.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let odd = enumerate_odd(n);
        let strict = enumerate_strict(n);
        assert_eq!(odd.len(), strict.len(), "Euler's theorem");
        let dim = odd.len();
        // Columns: coordinates of 2^{-ℓ(λ)} Q_λ in the p-basis.
        let mut m = vec![vec![Rat::zero(); dim]; dim];
        for (j, lambda) in strict.iter().enumerate() {
            let q = self.schur_q(lambda).scale(&pow2(-(lambda.length() as i64)));
            for (mu, c) in q.coeffs() {
                let i = odd
                    .iter()
                    .position(|o| o == mu)
                    .expect("Q_λ is supported on odd partitions of n");
                m[i][j] = c.clone();
            }
        }
        let m_inv = invert(&m).map_err(|_| {
            Error::Singular(format!(
                "Q-basis solve at level {n} is singular; the Pfaffian construction is broken"
            ))
        })?;
        // p_μ = Σ_λ M[.][λ] X_μ^λ, so the row X_μ^• is M^{-1} e_μ read off per λ.
        let entries: Vec<Vec<Rat>> = (0..dim)
            .map(|i| (0..dim).map(|j| m_inv[j][i].clone()).collect())
            .collect();
        let xm = CharacterMatrix {
            n,
            odd,
            strict,
            entries,
        };
        debug_assert!(self.x_matrix_inverse_relation_holds(&xm));
        let mut cache = self.x_matrices.lock().unwrap();
        Ok(cache.entry(n).or_insert(xm).clone())
    }

    /// The inverse relation `Q_λ = Σ_μ (2^{ℓ(μ)}/z_μ) X_μ^λ p_μ`.
    pub fn x_matrix_inverse_relation_holds(&self, xm: &CharacterMatrix) -> bool {
        xm.strict.iter().enumerate().all(|(j, lambda)| {
            let mut rebuilt = GammaElement::zero();
            for (i, mu) in xm.odd.iter().enumerate() {
                let c = pow2(mu.length() as i64) / Rat::from_integer(z_stat(mu.as_partition()))
                    * xm.entries[i][j].clone();
                rebuilt = &rebuilt + &GammaElement::term(mu.clone(), c);
            }
            rebuilt == self.schur_q(lambda)
        })
    }

    /// Irreducible character value `χ^λ(μ) = 2^{ℓ(μ) - (ℓ(λ)-δ(λ))/2} X_μ^λ`.
    pub fn character(&self, lambda: &StrictPartition, mu: &OddPartition) -> Result<Rat> {
        if lambda.size() != mu.size() {
            return Err(Error::Domain(format!(
                "character requires |λ| = |μ|, got {lambda} and {mu}"
            )));
        }
        let xm = self.x_matrix(lambda.size())?;
        let x = xm.entry(mu, lambda)?;
        let shift =
            mu.length() as i64 - (lambda.length() as i64 - length_parity(lambda) as i64) / 2;
        Ok(pow2(shift) * x)
    }

    /// `dim L^λ = χ^λ(1^n)`; also equal to `2^{n-(ℓ(λ)-δ(λ))/2} g'_λ`.
    pub fn dimension(&self, lambda: &StrictPartition) -> Result<Rat> {
        let ones = OddPartition::empty().pad_with_ones(lambda.size());
        self.character(lambda, &ones)
    }

    /// The closed dimension formula, used as a cross-check on the character
    /// pipeline.
    pub fn dimension_formula(lambda: &StrictPartition) -> Rat {
        let shift =
            lambda.size() as i64 - (lambda.length() as i64 - length_parity(lambda) as i64) / 2;
        pow2(shift) * Rat::from_integer(count_shifted_tableaux(lambda))
    }

    /// Evaluation of `𝔭_μ` at `λ`:
    /// `2^{k-ℓ(μ)} n↓k χ^λ(μ ∪ 1^{n-k}) / χ^λ(1^n)` for `n = |λ| ≥ k = |μ|`,
    /// and `0` otherwise.
    pub fn pfrak_value(&self, mu: &OddPartition, lambda: &StrictPartition) -> Result<Rat> {
        let k = mu.size();
        let n = lambda.size();
        if n < k {
            return Ok(Rat::zero());
        }
        let padded = mu.pad_with_ones(n - k);
        let num = self.character(lambda, &padded)?;
        let den = self.dimension(lambda)?;
        Ok(pow2(k as i64 - mu.length() as i64)
            * Rat::from_integer(crate::rational::falling(n, k))
            * num
            / den)
    }

    /// Interpolates the unique element of `Γ` of degree at most `bound`
    /// whose evaluations on strict partitions match `values`. The point set
    /// is every strict `|λ| ≤ bound + slack`, with the slack grown until the
    /// system pins a unique answer.
    fn interpolate(
        &self,
        bound: usize,
        what: &str,
        values: &mut dyn FnMut(&StrictPartition) -> Result<Rat>,
    ) -> Result<GammaElement> {
        let basis: Vec<OddPartition> = (0..=bound).flat_map(enumerate_odd).collect();
        let mut last_err = None;
        for slack in 2..=MAX_INTERPOLATION_SLACK {
            let points = enumerate_strict_up_to(bound + slack);
            let mut a = Vec::with_capacity(points.len());
            let mut b = Vec::with_capacity(points.len());
            for lambda in &points {
                a.push(
                    basis
                        .iter()
                        .map(|gamma| GammaElement::p(gamma.clone()).evaluate(lambda))
                        .collect::<Vec<_>>(),
                );
                b.push(values(lambda)?);
            }
            match solve_unique(&a, &b) {
                Ok(x) => {
                    let coeffs = basis
                        .iter()
                        .cloned()
                        .zip(x)
                        .collect::<BTreeMap<OddPartition, Rat>>();
                    return Ok(GammaElement::from_coeffs(coeffs));
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(Error::Singular(format!(
            "interpolation of {what} (degree ≤ {bound}) still rank-deficient after slack {MAX_INTERPOLATION_SLACK}: {}",
            last_err.map(|e| e.to_string()).unwrap_or_default()
        )))
    }

    /// `𝔭_μ`: the unique element of degree ≤ `|μ|` matching the character
    /// evaluation formula on all strict partitions.
    pub fn pfrak(&self, mu: &OddPartition) -> Result<GammaElement> {
        if let Some(hit) = self.pfrak.lock().unwrap().get(mu) {
            return Ok(hit.clone());
        }
        let bound = mu.size();
        let f = self.interpolate(bound, &format!("𝔭{mu}"), &mut |lambda| {
            self.pfrak_value(mu, lambda)
        })?;
        let mut cache = self.pfrak.lock().unwrap();
        Ok(cache.entry(mu.clone()).or_insert(f).clone())
    }

    /// Factorial Schur Q-function
    /// `Q*_λ = 2^{(ℓ(λ)-δ(λ))/2} Σ_{μ ∈ OP_n} (χ^λ(μ)/z_μ) 𝔭_μ`.
    pub fn factorial_schur_q(&self, lambda: &StrictPartition) -> Result<GammaElement> {
        let n = lambda.size();
        let mut acc = GammaElement::zero();
        for mu in enumerate_odd(n) {
            let c = self.character(lambda, &mu)? / Rat::from_integer(z_stat(mu.as_partition()));
            acc = &acc + &self.pfrak(&mu)?.scale(&c);
        }
        let shift = (lambda.length() as i64 - length_parity(lambda) as i64) / 2;
        Ok(acc.scale(&pow2(shift)))
    }

    /// The up moment `𝕞↑_k` as an element of `Γ` (degree `2k-1` for `k ≥ 1`).
    pub fn up_moment_gamma(&self, k: usize) -> Result<GammaElement> {
        if k == 0 {
            return Ok(GammaElement::one());
        }
        if let Some(hit) = self.up_moments.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let f = self.interpolate(2 * k - 1, &format!("m↑_{k}"), &mut |lambda| {
            Ok(up_moment(k, lambda))
        })?;
        let mut cache = self.up_moments.lock().unwrap();
        Ok(cache.entry(k).or_insert(f).clone())
    }

    /// The down moment `𝕞↓_k` as an element of `Γ` (degree `2k-1`, `k ≥ 1`).
    pub fn down_moment_gamma(&self, k: usize) -> Result<GammaElement> {
        if k == 0 {
            return Err(Error::Domain("down moment index starts at 1".into()));
        }
        if let Some(hit) = self.down_moments.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let f = self.interpolate(2 * k - 1, &format!("m↓_{k}"), &mut |lambda| {
            down_moment(k, lambda)
        })?;
        let mut cache = self.down_moments.lock().unwrap();
        Ok(cache.entry(k).or_insert(f).clone())
    }

    /// Expands `f` in the requested basis. Keys of the result are plain
    /// partitions (odd for `p`/`𝔭`, strict for `Q`/`Q*`).
    pub fn to_basis(&self, f: &GammaElement, basis: Basis) -> Result<BTreeMap<Partition, Rat>> {
        match basis {
            Basis::P => Ok(f
                .coeffs()
                .iter()
                .map(|(mu, c)| (mu.as_partition().clone(), c.clone()))
                .collect()),
            Basis::PFrak => self.eliminate_by_top_terms(f, &mut |mu| self.pfrak(mu)),
            Basis::Q => {
                let mut out = BTreeMap::new();
                let mut residual = f.clone();
                while let Some(d) = residual.degree() {
                    let top = residual.homogeneous_component(d);
                    for (lambda, c) in self.expand_homogeneous_in_q(&top, d)? {
                        residual = &residual - &self.schur_q(&lambda).scale(&c);
                        out.insert(lambda.into_partition(), c);
                    }
                    debug_assert!(residual.degree().is_none_or(|nd| nd < d));
                }
                Ok(out)
            }
            Basis::QStar => {
                let mut out = BTreeMap::new();
                let mut residual = f.clone();
                while let Some(d) = residual.degree() {
                    let top = residual.homogeneous_component(d);
                    for (lambda, c) in self.expand_homogeneous_in_q(&top, d)? {
                        residual = &residual - &self.factorial_schur_q(&lambda)?.scale(&c);
                        out.insert(lambda.into_partition(), c);
                    }
                    if residual.degree().is_some_and(|nd| nd >= d) {
                        return Err(Error::Singular(
                            "Q* elimination failed to reduce the degree".into(),
                        ));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Rebuilds an element from coordinates in the given basis.
    pub fn from_basis(
        &self,
        coords: &BTreeMap<Partition, Rat>,
        basis: Basis,
    ) -> Result<GammaElement> {
        let mut acc = GammaElement::zero();
        for (key, c) in coords {
            let elem = match basis {
                Basis::P => GammaElement::p(OddPartition::from_partition(key.clone())?),
                Basis::PFrak => self.pfrak(&OddPartition::from_partition(key.clone())?)?,
                Basis::Q => self.schur_q(&StrictPartition::from_partition(key.clone())?),
                Basis::QStar => {
                    self.factorial_schur_q(&StrictPartition::from_partition(key.clone())?)?
                }
            };
            acc = &acc + &elem.scale(c);
        }
        Ok(acc)
    }

    /// Shared elimination for bases of the form `b_μ = p_μ + lower`: strips
    /// the top homogeneous component repeatedly.
    fn eliminate_by_top_terms(
        &self,
        f: &GammaElement,
        basis_elem: &mut dyn FnMut(&OddPartition) -> Result<GammaElement>,
    ) -> Result<BTreeMap<Partition, Rat>> {
        let mut out = BTreeMap::new();
        let mut residual = f.clone();
        while let Some(d) = residual.degree() {
            let coeffs: Vec<(OddPartition, Rat)> = residual
                .homogeneous_component(d)
                .coeffs()
                .iter()
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect();
            for (mu, c) in coeffs {
                residual = &residual - &basis_elem(&mu)?.scale(&c);
                let prev = out.insert(mu.as_partition().clone(), c);
                debug_assert!(prev.is_none());
            }
            if residual.degree().is_some_and(|nd| nd >= d) {
                return Err(Error::Singular(
                    "top-term elimination failed to reduce the degree".into(),
                ));
            }
        }
        Ok(out)
    }

    /// Expands a homogeneous degree-`d` element in `{Q_λ}_{λ ∈ SP_d}`.
    fn expand_homogeneous_in_q(
        &self,
        f: &GammaElement,
        d: usize,
    ) -> Result<Vec<(StrictPartition, Rat)>> {
        let strict = enumerate_strict(d);
        let odd = enumerate_odd(d);
        let mut a = vec![vec![Rat::zero(); strict.len()]; odd.len()];
        for (j, lambda) in strict.iter().enumerate() {
            for (mu, c) in self.schur_q(lambda).coeffs() {
                let i = odd.iter().position(|o| o == mu).expect("odd support");
                a[i][j] = c.clone();
            }
        }
        let b: Vec<Rat> = odd.iter().map(|mu| f.coeff(mu)).collect();
        let x = solve_unique(&a, &b)?;
        Ok(strict
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// Decomposes `f` as a polynomial in a family of one generator per odd
    /// degree (`gen(1), gen(3), gen(5), ...`). The result maps the odd
    /// partition `γ` to the coefficient of `Π_i gen(γ_i)`.
    pub fn decompose_in_odd_generators(
        &self,
        f: &GammaElement,
        gen: &mut dyn FnMut(usize) -> Result<GammaElement>,
    ) -> Result<BTreeMap<OddPartition, Rat>> {
        let Some(d) = f.degree() else {
            return Ok(BTreeMap::new());
        };
        let monomials: Vec<OddPartition> = (0..=d).flat_map(enumerate_odd).collect();
        let mut generators: HashMap<usize, GammaElement> = HashMap::new();
        for k in (1..=d).step_by(2) {
            generators.insert(k, gen(k)?);
        }
        // Column per generator monomial, row per p-basis monomial of Γ_{≤d}.
        let rows = monomials.clone();
        let mut a = vec![vec![Rat::zero(); monomials.len()]; rows.len()];
        for (j, gamma) in monomials.iter().enumerate() {
            let mut prod = GammaElement::one();
            for &part in gamma.parts() {
                prod = &prod * &generators[&part];
            }
            for (mu, c) in prod.coeffs() {
                let i = rows.iter().position(|r| r == mu).ok_or_else(|| {
                    Error::Singular("generator product escapes the degree window".into())
                })?;
                a[i][j] = c.clone();
            }
        }
        let b: Vec<Rat> = rows.iter().map(|mu| f.coeff(mu)).collect();
        let x = solve_unique(&a, &b)?;
        Ok(monomials
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// Rank of the evaluation matrix of `{p_μ : |μ| ≤ d odd}` on
    /// `{strict λ : |λ| ≤ points}`; full column rank certifies that the
    /// interpolation point set separates `Γ_{≤d}`.
    pub fn evaluation_rank(&self, d: usize, points: usize) -> (usize, usize) {
        let basis: Vec<OddPartition> = (0..=d).flat_map(enumerate_odd).collect();
        let rows: Vec<Vec<Rat>> = enumerate_strict_up_to(points)
            .iter()
            .map(|lambda| {
                basis
                    .iter()
                    .map(|mu| GammaElement::p(mu.clone()).evaluate(lambda))
                    .collect()
            })
            .collect();
        (rank(&rows), basis.len())
    }

    /// Snapshot of the X-matrix cache for persistence.
    pub fn export_x_matrices(&self) -> Vec<CharacterMatrix> {
        self.x_matrices.lock().unwrap().values().cloned().collect()
    }

    /// Seeds the X-matrix cache, e.g. from a disk cache. Entries are trusted.
    pub fn import_x_matrix(&self, xm: CharacterMatrix) {
        self.x_matrices.lock().unwrap().entry(xm.n).or_insert(xm);
    }

    /// Snapshot of the `𝔭` cache for persistence.
    pub fn export_pfrak(&self) -> Vec<(OddPartition, GammaElement)> {
        self.pfrak
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn import_pfrak(&self, mu: OddPartition, f: GammaElement) {
        self.pfrak.lock().unwrap().entry(mu).or_insert(f);
    }
}

/// Builds a character matrix from raw parts; used by the disk cache loader.
pub fn character_matrix_from_entries(
    n: usize,
    entries: Vec<(OddPartition, StrictPartition, Rat)>,
) -> Result<CharacterMatrix> {
    let odd = enumerate_odd(n);
    let strict = enumerate_strict(n);
    let mut m = vec![vec![None; strict.len()]; odd.len()];
    for (mu, lambda, v) in entries {
        let i = odd
            .iter()
            .position(|o| o == &mu)
            .ok_or_else(|| Error::Domain(format!("{mu} is not odd of size {n}")))?;
        let j = strict
            .iter()
            .position(|s| s == &lambda)
            .ok_or_else(|| Error::Domain(format!("{lambda} is not strict of size {n}")))?;
        m[i][j] = Some(v);
    }
    let entries: Option<Vec<Vec<Rat>>> = m
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect();
    let entries = entries.ok_or_else(|| Error::Domain(format!("incomplete X matrix at {n}")))?;
    Ok(CharacterMatrix {
        n,
        odd,
        strict,
        entries,
    })
}

/// Pfaffian of an antisymmetric matrix over `Γ`, by expansion along the
/// first row.
fn pfaffian(m: &[Vec<GammaElement>]) -> GammaElement {
    let n = m.len();
    debug_assert!(n.is_multiple_of(2));
    if n == 0 {
        return GammaElement::one();
    }
    if n == 2 {
        return m[0][1].clone();
    }
    let mut acc = GammaElement::zero();
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&r| r != j).collect();
        let minor: Vec<Vec<GammaElement>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let term = &m[0][j] * &pfaffian(&minor);
        // Sign (-1)^{j+1} with 0-based j: columns 1,2,3,... get +,-,+,...
        if j % 2 == 1 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::test_util::{op, sp};
    use crate::rational::frac;
    use proptest::prelude::*;

    fn p_elem(parts: &[usize]) -> GammaElement {
        GammaElement::p(op(parts))
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&p_elem(&[1]) * &p_elem(&[1]), p_elem(&[1, 1]));
        assert_eq!(&p_elem(&[3]) * &p_elem(&[1, 1]), p_elem(&[3, 1, 1]));
        let sum = &p_elem(&[1]) + &p_elem(&[3]);
        assert_eq!(&sum * &p_elem(&[1]), &p_elem(&[1, 1]) + &p_elem(&[3, 1]));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p_elem(&[1]).evaluate(&sp(&[3, 1])), rat(4));
        assert_eq!(p_elem(&[3]).evaluate(&sp(&[2, 1])), rat(9));
        assert_eq!(p_elem(&[3, 1]).evaluate(&sp(&[3])), rat(81));
    }

    #[test]
    fn q_series_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(ctx.q_series(0), GammaElement::one());
        assert_eq!(ctx.q_series(1), p_elem(&[1]).scale(&rat(2)));
        assert_eq!(ctx.q_series(2), p_elem(&[1, 1]).scale(&rat(2)));
        // q_3 = (4/3) p_1^3 + (2/3) p_3, from expanding the exponential.
        let q3 = &p_elem(&[1, 1, 1]).scale(&frac(4, 3)) + &p_elem(&[3]).scale(&frac(2, 3));
        assert_eq!(ctx.q_series(3), q3);
    }

    #[test]
    fn schur_q_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(ctx.schur_q(&StrictPartition::empty()), GammaElement::one());
        assert_eq!(ctx.schur_q(&sp(&[2])), p_elem(&[1, 1]).scale(&rat(2)));
        // Q_{(2,1)} = q_2 q_1 - 2 q_3 = (4/3) p_1^3 - (4/3) p_3.
        let expected = &p_elem(&[1, 1, 1]).scale(&frac(4, 3)) - &p_elem(&[3]).scale(&frac(4, 3));
        assert_eq!(ctx.schur_q(&sp(&[2, 1])), expected);
        // Q_λ is nonzero and homogeneous of degree |λ|.
        for n in 0..=8 {
            for lambda in enumerate_strict(n) {
                let q = ctx.schur_q(&lambda);
                assert_eq!(q.degree(), Some(n), "{lambda}");
                assert!(q.coeffs().keys().all(|mu| mu.size() == n));
            }
        }
    }

    #[test]
    fn x_matrix_examples() {
        let ctx = GammaCtx::new();
        let x0 = ctx.x_matrix(0).unwrap();
        assert_eq!(
            x0.entry(&OddPartition::empty(), &StrictPartition::empty())
                .unwrap(),
            rat(1)
        );
        let x2 = ctx.x_matrix(2).unwrap();
        assert_eq!(x2.entry(&op(&[1, 1]), &sp(&[2])).unwrap(), rat(1));
        let x3 = ctx.x_matrix(3).unwrap();
        assert_eq!(x3.entry(&op(&[3]), &sp(&[3])).unwrap(), rat(1));
        assert_eq!(x3.entry(&op(&[3]), &sp(&[2, 1])).unwrap(), rat(-2));
        assert_eq!(x3.entry(&op(&[1, 1, 1]), &sp(&[3])).unwrap(), rat(1));
        assert_eq!(x3.entry(&op(&[1, 1, 1]), &sp(&[2, 1])).unwrap(), rat(1));
    }

    #[test]
    fn x_matrix_defining_relations() {
        let ctx = GammaCtx::new();
        for n in 0..=8 {
            let xm = ctx.x_matrix(n).unwrap();
            // Forward relation: p_μ = Σ_λ 2^{-ℓ(λ)} X_μ^λ Q_λ.
            for mu in enumerate_odd(n) {
                let mut acc = GammaElement::zero();
                for lambda in enumerate_strict(n) {
                    let c = pow2(-(lambda.length() as i64)) * xm.entry(&mu, &lambda).unwrap();
                    acc = &acc + &ctx.schur_q(&lambda).scale(&c);
                }
                assert_eq!(acc, GammaElement::p(mu.clone()), "p{mu} at level {n}");
            }
            // Inverse relation.
            assert!(ctx.x_matrix_inverse_relation_holds(&xm), "level {n}");
        }
    }

    #[test]
    fn character_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(ctx.character(&sp(&[2]), &op(&[1, 1])).unwrap(), rat(4));
        assert_eq!(
            ctx.character(&sp(&[2, 1]), &op(&[1, 1, 1])).unwrap(),
            rat(4)
        );
        assert_eq!(ctx.character(&sp(&[3]), &op(&[1, 1, 1])).unwrap(), rat(8));
        assert!(ctx.character(&sp(&[2]), &op(&[1])).is_err());
    }

    #[test]
    fn character_dimension_matches_formula() {
        let ctx = GammaCtx::new();
        for n in 0..=8 {
            for lambda in enumerate_strict(n) {
                assert_eq!(
                    ctx.dimension(&lambda).unwrap(),
                    GammaCtx::dimension_formula(&lambda),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn pfrak_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(
            ctx.pfrak(&OddPartition::empty()).unwrap(),
            GammaElement::one()
        );
        assert_eq!(ctx.pfrak(&op(&[1])).unwrap(), p_elem(&[1]));
        let expected = &p_elem(&[1, 1]) - &p_elem(&[1]);
        assert_eq!(ctx.pfrak(&op(&[1, 1])).unwrap(), expected);
        // 𝔭_3 - p_3 has degree < 3.
        let diff = &ctx.pfrak(&op(&[3])).unwrap() - &p_elem(&[3]);
        assert!(diff.degree().unwrap_or(0) < 3);
    }

    #[test]
    fn pfrak_top_term_and_product_property() {
        let ctx = GammaCtx::new();
        for d in 0..=6 {
            for mu in enumerate_odd(d) {
                let diff = &ctx.pfrak(&mu).unwrap() - &GammaElement::p(mu.clone());
                assert!(
                    diff.is_zero() || diff.degree().unwrap() < d,
                    "top term of 𝔭{mu}"
                );
            }
        }
        // 𝔭_μ 𝔭_γ - 𝔭_{μ∪γ} has degree < |μ∪γ| for |μ|+|γ| ≤ 8.
        for dm in 0..=4 {
            for dg in 0..=(8 - dm).min(4) {
                for mu in enumerate_odd(dm) {
                    for gamma in enumerate_odd(dg) {
                        let prod = &ctx.pfrak(&mu).unwrap() * &ctx.pfrak(&gamma).unwrap();
                        let expected = ctx.pfrak(&mu.union(&gamma)).unwrap();
                        let diff = &prod - &expected;
                        assert!(
                            diff.is_zero() || diff.degree().unwrap() < dm + dg,
                            "product property for {mu}, {gamma}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pfrak_reproduces_values() {
        let ctx = GammaCtx::new();
        for d in 0..=5 {
            for mu in enumerate_odd(d) {
                let f = ctx.pfrak(&mu).unwrap();
                for lambda in enumerate_strict_up_to(8) {
                    assert_eq!(
                        f.evaluate(&lambda),
                        ctx.pfrak_value(&mu, &lambda).unwrap(),
                        "𝔭{mu} at {lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorial_schur_q_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(
            ctx.factorial_schur_q(&StrictPartition::empty()).unwrap(),
            GammaElement::one()
        );
        let q2s = ctx.factorial_schur_q(&sp(&[2])).unwrap();
        assert_eq!(q2s.evaluate(&sp(&[1])), rat(0));
        let top_diff = &q2s - &ctx.schur_q(&sp(&[2]));
        assert!(top_diff.is_zero() || top_diff.degree().unwrap() <= 1);
    }

    #[test]
    fn factorial_schur_q_vanishing_and_top_term() {
        let ctx = GammaCtx::new();
        for n in 0..=6 {
            for lambda in enumerate_strict(n) {
                let qs = ctx.factorial_schur_q(&lambda).unwrap();
                for m in 0..=6 {
                    for nu in enumerate_strict(m) {
                        if !nu.as_partition().contains(lambda.as_partition()) {
                            assert_eq!(qs.evaluate(&nu), rat(0), "Q*{lambda} at {nu}");
                        }
                    }
                }
                let diff = &qs - &ctx.schur_q(&lambda);
                assert!(
                    diff.is_zero() || diff.degree().unwrap() < n.max(1),
                    "Q*{lambda} top term"
                );
            }
        }
    }

    /// N-variable factorial Schur Q polynomial by direct symmetrization,
    /// evaluated at a point with distinct nonzero coordinates.
    fn factorial_q_oracle(lambda: &StrictPartition, point: &[usize]) -> Rat {
        let n_vars = point.len();
        let l = lambda.length();
        if l > n_vars {
            return Rat::zero();
        }
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let falling_pow = |x: i64, a: usize| -> Rat {
            let mut acc = Rat::one();
            for i in 0..a {
                acc *= rat(x - i as i64);
            }
            acc
        };
        let mut total = Rat::zero();
        for sigma in perms(n_vars) {
            let x = |i: usize| point[sigma[i]] as i64; // x_{i+1} after permuting
            let mut term = Rat::one();
            for (i, &part) in lambda.parts().iter().enumerate() {
                term *= falling_pow(x(i), part);
            }
            for i in 0..l {
                for j in i + 1..n_vars {
                    term *= Rat::new(rat(x(i) + x(j)).to_integer(), rat(x(i) - x(j)).to_integer());
                }
            }
            total += term;
        }
        let norm = pow2(l as i64) / Rat::from_integer(crate::rational::factorial(n_vars - l));
        norm * total
    }

    #[test]
    fn factorial_schur_q_matches_symmetrization_oracle() {
        let ctx = GammaCtx::new();
        // Evaluation points: strict partitions, used with exactly as many
        // variables as they have parts so every coordinate is distinct.
        let points: Vec<StrictPartition> = vec![
            sp(&[1]),
            sp(&[4]),
            sp(&[2, 1]),
            sp(&[4, 2]),
            sp(&[4, 2, 1]),
            sp(&[5, 3, 1]),
            sp(&[5, 4, 2, 1]),
            sp(&[6, 4, 3, 2, 1]),
            sp(&[7, 6, 4, 3, 2, 1]),
        ];
        for d in 0..=4 {
            for lambda in enumerate_strict(d) {
                let qs = ctx.factorial_schur_q(&lambda).unwrap();
                for nu in &points {
                    let expected = factorial_q_oracle(&lambda, nu.parts());
                    assert_eq!(qs.evaluate(nu), expected, "Q*{lambda} at {nu}");
                }
            }
        }
    }

    #[test]
    fn moments_in_gamma() {
        let ctx = GammaCtx::new();
        // Hand-derived closed forms at low degree.
        assert_eq!(
            ctx.down_moment_gamma(1).unwrap(),
            p_elem(&[1]).scale(&rat(2))
        );
        let m_down_2 = &p_elem(&[3]).scale(&rat(2)) - &p_elem(&[1, 1]).scale(&rat(2));
        assert_eq!(ctx.down_moment_gamma(2).unwrap(), m_down_2);
        let m_up_2 = &p_elem(&[3]).scale(&rat(2)) + &p_elem(&[1, 1]).scale(&rat(2));
        assert_eq!(ctx.up_moment_gamma(2).unwrap(), m_up_2);
        assert_eq!(ctx.up_moment_gamma(0).unwrap(), GammaElement::one());
        assert_eq!(ctx.up_moment_gamma(1).unwrap(), p_elem(&[1]).scale(&rat(2)));
        assert!(ctx.down_moment_gamma(0).is_err());

        for k in 1..=4 {
            let up = ctx.up_moment_gamma(k).unwrap();
            let down = ctx.down_moment_gamma(k).unwrap();
            assert_eq!(up.degree(), Some(2 * k - 1), "deg 𝕞↑_{k}");
            assert_eq!(down.degree(), Some(2 * k - 1), "deg 𝕞↓_{k}");
            for lambda in enumerate_strict_up_to(9) {
                assert_eq!(
                    up.evaluate(&lambda),
                    up_moment(k, &lambda),
                    "𝕞↑_{k} at {lambda}"
                );
                assert_eq!(
                    down.evaluate(&lambda),
                    down_moment(k, &lambda).unwrap(),
                    "𝕞↓_{k} at {lambda}"
                );
            }
        }
    }

    #[test]
    fn to_basis_examples() {
        let ctx = GammaCtx::new();
        let in_pfrak = ctx.to_basis(&p_elem(&[1]), Basis::PFrak).unwrap();
        assert_eq!(
            in_pfrak,
            BTreeMap::from([(op(&[1]).into_partition(), rat(1))])
        );
        let in_pfrak = ctx.to_basis(&p_elem(&[1, 1]), Basis::PFrak).unwrap();
        assert_eq!(
            in_pfrak,
            BTreeMap::from([
                (op(&[1, 1]).into_partition(), rat(1)),
                (op(&[1]).into_partition(), rat(1)),
            ])
        );
        let q2 = ctx.schur_q(&sp(&[2]));
        let in_q = ctx.to_basis(&q2, Basis::Q).unwrap();
        assert_eq!(in_q, BTreeMap::from([(sp(&[2]).into_partition(), rat(1))]));
    }

    #[test]
    fn evaluation_matrix_full_rank() {
        let ctx = GammaCtx::new();
        for d in 0..=6 {
            let (rank, cols) = ctx.evaluation_rank(d, d + 2);
            assert_eq!(rank, cols, "degree {d}");
        }
    }

    /// Elements with support on odd parts from {1, 3, 5} and at most two
    /// parts per monomial, keeping degrees small enough for the basis-solve
    /// machinery to stay fast in tests.
    fn arb_gamma(max_part: usize, max_len: usize) -> impl Strategy<Value = GammaElement> {
        proptest::collection::vec(
            (
                proptest::collection::vec(
                    (1usize..=max_part.div_ceil(2)).prop_map(|v| 2 * v - 1),
                    0..=max_len,
                ),
                -6i64..=6,
            ),
            0..4,
        )
        .prop_map(|terms| {
            let mut acc = GammaElement::zero();
            for (parts, c) in terms {
                acc = &acc
                    + &GammaElement::term(
                        OddPartition::from_partition(Partition::from_unsorted(parts)).unwrap(),
                        rat(c),
                    );
            }
            acc
        })
    }

    fn shared_ctx() -> &'static GammaCtx {
        static CTX: std::sync::OnceLock<GammaCtx> = std::sync::OnceLock::new();
        CTX.get_or_init(GammaCtx::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn product_is_commutative_and_degree_additive(
            a in arb_gamma(13, 3),
            b in arb_gamma(13, 3),
        ) {
            let ab = &a * &b;
            let ba = &b * &a;
            prop_assert_eq!(&ab, &ba);
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!(ab.degree(), Some(da + db));
            }
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_gamma(13, 3), b in arb_gamma(13, 3)) {
            let lambda = sp(&[4, 2, 1]);
            let lhs = (&a * &b).evaluate(&lambda);
            prop_assert_eq!(lhs, a.evaluate(&lambda) * b.evaluate(&lambda));
        }

        #[test]
        fn basis_round_trips(a in arb_gamma(5, 2)) {
            let ctx = shared_ctx();
            for basis in [Basis::P, Basis::PFrak, Basis::Q, Basis::QStar] {
                let coords = ctx.to_basis(&a, basis).unwrap();
                let back = ctx.from_basis(&coords, basis).unwrap();
                prop_assert_eq!(&back, &a, "basis {:?}", basis);
            }
        }
    }
}
