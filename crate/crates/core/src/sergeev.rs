//! Exact arithmetic in the finite Sergeev superalgebras `Ser_n`.
//!
//! Elements are sparse rational combinations of normal-form monomials
//! `c_{i_1}...c_{i_t} σ` with a strictly increasing Clifford word on the left
//! and a permutation on the right. The defining relations
//! `c_i² = -1`, `c_i c_j = -c_j c_i` and `σ c_i = c_{σ(i)} σ` reduce every
//! product to this form with an explicit sign.
//!
//! The twisted hyperoctahedral group only appears where it genuinely must:
//! conjugacy-class sums are computed by an orbit BFS on triples
//! `(z-exponent, a-word, permutation)` and projected down via `z ↦ -1`.
//!
//! Levels are always explicit. The standard embedding `Ser_{n-1} ↪ Ser_n`
//! is [`SergeevElement::embed`], never implicit.

use crate::gamma::GammaCtx;
use crate::linalg::solve_unique;
use crate::partitions::{
    enumerate_odd, enumerate_strict, length_parity, z_stat, OddPartition, Partition,
    StrictPartition,
};
use crate::rational::{factorial, falling, pow2, Rat};
use crate::{Error, Result};
use num::traits::{One, Zero};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A permutation of `{0, .., n-1}` in one-line form (`images[i] = σ(i)`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation, e.g. `[2,1,3]` for `s_1` at `n = 3`.
    pub fn from_one_line(one_based: Vec<usize>) -> Result<Self> {
        let n = one_based.len();
        let mut seen = vec![false; n];
        let mut images = vec![0; n];
        for (i, &v) in one_based.iter().enumerate() {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Domain(format!("{one_based:?} is not a permutation")));
            }
            seen[v - 1] = true;
            images[i] = v - 1;
        }
        Ok(Permutation { images })
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// The Coxeter generator `s_i` swapping strands `i` and `i+1` (1-based,
    /// `1 ≤ i ≤ n-1`).
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// The transposition `(i, j)` on 1-based points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// The longest element `τ_0`, i.e. the order reversal.
    pub fn longest_element(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Pads with fixed points up to degree `m`.
    pub fn embed(&self, m: usize) -> Permutation {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Permutation { images }
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            cycles.push(len);
        }
        Partition::from_unsorted(cycles)
    }

    /// True when every 0-based point in `0..k` is fixed.
    pub fn fixes_prefix(&self, k: usize) -> bool {
        (0..k).all(|i| self.images[i] == i)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{:?}", self.one_line())
    }
}

/// Sorts a word of generator indices, tracking the parity picked up from
/// anticommuting swaps and squared letters (`x_i² = ±core`). Returns the
/// parity flip and the surviving strictly increasing word.
fn normalize_word(mut word: Vec<usize>) -> (bool, Vec<usize>) {
    // Insertion sort, counting transpositions of distinct letters.
    let mut swaps = 0usize;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    let mut out = Vec::with_capacity(word.len());
    let mut squared = 0usize;
    let mut idx = 0;
    while idx < word.len() {
        if idx + 1 < word.len() && word[idx] == word[idx + 1] {
            squared += 1;
            idx += 2;
        } else {
            out.push(word[idx]);
            idx += 1;
        }
    }
    ((swaps + squared) % 2 == 1, out)
}

/// Normal-form monomial `c_S σ` (indices in `S` are 0-based and strictly
/// increasing).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SergeevMonomial {
    clifford: Vec<usize>,
    perm: Permutation,
}

impl SergeevMonomial {
    pub fn new(clifford: Vec<usize>, perm: Permutation) -> Result<Self> {
        let n = perm.degree();
        if clifford.iter().any(|&i| i >= n) {
            return Err(Error::Domain("Clifford index out of range".into()));
        }
        if !clifford.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "Clifford word must be strictly increasing".into(),
            ));
        }
        Ok(SergeevMonomial { clifford, perm })
    }

    pub fn identity(n: usize) -> Self {
        SergeevMonomial {
            clifford: Vec::new(),
            perm: Permutation::identity(n),
        }
    }

    pub fn from_perm(perm: Permutation) -> Self {
        SergeevMonomial {
            clifford: Vec::new(),
            perm,
        }
    }

    /// `c_i` (0-based index).
    pub fn clifford_gen(n: usize, i: usize) -> Self {
        assert!(i < n);
        SergeevMonomial {
            clifford: vec![i],
            perm: Permutation::identity(n),
        }
    }

    pub fn clifford(&self) -> &[usize] {
        &self.clifford
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn level(&self) -> usize {
        self.perm.degree()
    }

    /// Super-degree: the length of the Clifford word mod 2.
    pub fn parity(&self) -> u8 {
        (self.clifford.len() % 2) as u8
    }

    /// Product with sign: `(c_S σ)(c_T τ) = ± c_W (στ)`.
    pub fn mul(&self, other: &SergeevMonomial) -> (bool, SergeevMonomial) {
        debug_assert_eq!(self.level(), other.level());
        let mut word = self.clifford.clone();
        word.extend(other.clifford.iter().map(|&t| self.perm.apply(t)));
        let (flip, clifford) = normalize_word(word);
        (
            flip,
            SergeevMonomial {
                clifford,
                perm: self.perm.compose(&other.perm),
            },
        )
    }

    /// Inverse with sign: `(c_S σ)^{-1} = (-1)^{t(t+1)/2} c_{σ^{-1}(S)} σ^{-1}`.
    pub fn inv(&self) -> (bool, SergeevMonomial) {
        let t = self.clifford.len();
        let base_flip = (t * (t + 1) / 2) % 2 == 1;
        let inv_perm = self.perm.inverse();
        let (sort_flip, clifford) =
            normalize_word(self.clifford.iter().map(|&s| inv_perm.apply(s)).collect());
        (
            base_flip ^ sort_flip,
            SergeevMonomial {
                clifford,
                perm: inv_perm,
            },
        )
    }

    fn embed(&self, m: usize) -> SergeevMonomial {
        SergeevMonomial {
            clifford: self.clifford.clone(),
            perm: self.perm.embed(m),
        }
    }
}

impl fmt::Debug for SergeevMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.clifford {
            write!(f, "c{}", i + 1)?;
        }
        write!(f, "{:?}", self.perm)
    }
}

/// Sparse element of `Ser_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SergeevElement {
    n: usize,
    terms: BTreeMap<SergeevMonomial, Rat>,
}

impl SergeevElement {
    pub fn zero(n: usize) -> Self {
        SergeevElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        SergeevElement::monomial(SergeevMonomial::identity(n), Rat::one())
    }

    pub fn monomial(m: SergeevMonomial, c: Rat) -> Self {
        let n = m.level();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SergeevElement { n, terms }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<SergeevMonomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &SergeevMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: SergeevMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.level(), self.n);
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Rat) -> SergeevElement {
        if c.is_zero() {
            return SergeevElement::zero(self.n);
        }
        SergeevElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Every monomial has an even Clifford word.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.parity() == 0)
    }

    /// Checked product; the levels must agree.
    pub fn try_mul(&self, other: &SergeevElement) -> Result<SergeevElement> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "level mismatch: Ser_{} vs Ser_{}",
                self.n, other.n
            )));
        }
        let mut out = SergeevElement::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (flip, m) = a.mul(b);
                let c = ca.clone() * cb.clone();
                out.add_term(m, if flip { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<SergeevElement> {
        let mut acc = SergeevElement::one(self.n);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Conjugate `x · self · x^{-1}` by a monomial.
    pub fn conjugate_by(&self, x: &SergeevMonomial) -> SergeevElement {
        let (inv_flip, x_inv) = x.inv();
        let mut out = SergeevElement::zero(self.n);
        for (m, c) in &self.terms {
            let (f1, xm) = x.mul(m);
            let (f2, xmx) = xm.mul(&x_inv);
            let flip = f1 ^ f2 ^ inv_flip;
            out.add_term(xmx, if flip { -c.clone() } else { c.clone() });
        }
        out
    }

    /// The standard embedding into `Ser_m` for `m ≥ n`.
    pub fn embed(&self, m: usize) -> Result<SergeevElement> {
        if m < self.n {
            return Err(Error::Domain(format!(
                "cannot embed Ser_{} into Ser_{m}",
                self.n
            )));
        }
        Ok(SergeevElement {
            n: m,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (mono.embed(m), c.clone()))
                .collect(),
        })
    }

    /// The linear projection `pr_k`: keeps monomials lying in `Ser_k`,
    /// re-leveled to `k`.
    pub fn project(&self, k: usize) -> Result<SergeevElement> {
        if k > self.n {
            return Err(Error::Domain(format!(
                "cannot project Ser_{} onto Ser_{k}",
                self.n
            )));
        }
        let mut out = SergeevElement::zero(k);
        for (m, c) in &self.terms {
            if m.clifford.iter().all(|&i| i < k) && (k..self.n).all(|i| m.perm.apply(i) == i) {
                let perm = Permutation {
                    images: (0..k).map(|i| m.perm.apply(i)).collect(),
                };
                out.add_term(
                    SergeevMonomial {
                        clifford: m.clifford.clone(),
                        perm,
                    },
                    c.clone(),
                );
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0@Ser_{}", self.n);
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})·{:?}", crate::rational::rat_to_string(c), m)?;
        }
        Ok(())
    }
}

impl Add for &SergeevElement {
    type Output = SergeevElement;
    fn add(self, other: &SergeevElement) -> SergeevElement {
        assert_eq!(self.n, other.n, "level mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SergeevElement {
    type Output = SergeevElement;
    fn sub(self, other: &SergeevElement) -> SergeevElement {
        assert_eq!(self.n, other.n, "level mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SergeevElement {
    type Output = SergeevElement;
    fn neg(self) -> SergeevElement {
        self.scale(&-Rat::one())
    }
}

impl Mul for &SergeevElement {
    type Output = SergeevElement;
    fn mul(self, other: &SergeevElement) -> SergeevElement {
        self.try_mul(other).expect("level mismatch")
    }
}

/// `m^{-1}` as a (single-term) element; `m · inverse_monomial(m) = 1`.
pub fn inverse_monomial(m: &SergeevMonomial) -> SergeevElement {
    let (flip, inv) = m.inv();
    SergeevElement::monomial(inv, if flip { -Rat::one() } else { Rat::one() })
}

/// Jucys-Murphy element `J_k = Σ_{j<k} (j,k)(1 + c_j c_k)` in `Ser_n`
/// (1-based `k ≤ n`; `J_1 = 0`). In normal form each summand reads
/// `(1 - c_j c_k)(j,k)`; this factor order is the one that makes the family
/// commute under the composition convention `σ c_i = c_{σ(i)} σ` used here.
pub fn jm_element(k: usize, n: usize) -> Result<SergeevElement> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("J_{k} undefined in Ser_{n}")));
    }
    let mut out = SergeevElement::zero(n);
    for j in 1..k {
        let t = Permutation::transposition(n, j, k);
        out.add_term(SergeevMonomial::from_perm(t.clone()), Rat::one());
        out.add_term(
            SergeevMonomial {
                clifford: vec![j - 1, k - 1],
                perm: t,
            },
            -Rat::one(),
        );
    }
    Ok(out)
}

/// The distinguished permutation `π_μ ∈ S_k` built from descending cycles on
/// consecutive blocks, one per part.
#[allow(clippy::needless_range_loop)]
fn pi_mu(mu: &OddPartition, k: usize) -> Permutation {
    let mut images: Vec<usize> = (0..k).collect();
    let mut start = 0; // 0-based block start
    for &part in mu.parts() {
        // Cycle (start+part, ..., start+1) 1-based: start+1 ↦ start+part,
        // x ↦ x-1 for the rest.
        images[start] = start + part - 1;
        for x in start + 1..start + part {
            images[x] = x - 1;
        }
        start += part;
    }
    Permutation { images }
}

/// `π̃_μ^{(n)} = τ_0 π_μ τ_0^{-1}`: cycle type `μ ∪ 1^{n-k}`, fixing the
/// first `n-k` points.
pub fn distinguished_perm(mu: &OddPartition, n: usize) -> Result<Permutation> {
    let k = mu.size();
    if k > n {
        return Err(Error::Domain(format!("|μ| = {k} exceeds the level {n}")));
    }
    let tau = Permutation::longest_element(n);
    let pi = pi_mu(mu, k).embed(n);
    Ok(tau.compose(&pi).compose(&tau.inverse()))
}

/// Left coset representatives `L_{n,k}` of `Ser_k` in `Ser_n`: the
/// `n↓(n-k) · 2^{n-k}` products `Π_j (s_{i_j}..s_{j-1} c_j^{ε_j})`, as
/// monomials (signs are dropped; they cancel in every conjugation sum).
pub fn coset_reps(n: usize, k: usize) -> Result<Vec<SergeevMonomial>> {
    if k > n {
        return Err(Error::Domain(format!("sublevel {k} exceeds level {n}")));
    }
    let mut reps = vec![SergeevMonomial::identity(n)];
    for j in k + 1..=n {
        let mut blocks = Vec::new();
        for i in 1..=j {
            for eps in 0..2 {
                // s_i s_{i+1} ... s_{j-1} c_j^eps (1-based; empty when i = j).
                let mut block = SergeevElement::one(n);
                for t in i..j {
                    let s = SergeevElement::monomial(
                        SergeevMonomial::from_perm(Permutation::adjacent(n, t)),
                        Rat::one(),
                    );
                    block = block.try_mul(&s)?;
                }
                if eps == 1 {
                    let c = SergeevElement::monomial(
                        SergeevMonomial::clifford_gen(n, j - 1),
                        Rat::one(),
                    );
                    block = block.try_mul(&c)?;
                }
                debug_assert_eq!(block.num_terms(), 1);
                blocks.push(block.terms.keys().next().unwrap().clone());
            }
        }
        let mut next = Vec::with_capacity(reps.len() * blocks.len());
        for block in &blocks {
            for rep in &reps {
                let (_, m) = block.mul(rep);
                next.push(m);
            }
        }
        reps = next;
    }
    let expected = falling(n, n - k) * crate::rational::int(2).pow((n - k) as u32);
    debug_assert_eq!(crate::rational::int(reps.len() as i64), expected);
    debug_assert_eq!(
        reps.iter().collect::<std::collections::BTreeSet<_>>().len(),
        reps.len(),
        "coset representatives must be pairwise distinct"
    );
    Ok(reps)
}

/// Scaled class sum `a_μ^{(n)} = Σ_{x ∈ L_{n,n-k}} x π̃_μ^{(n)} x^{-1}`.
pub fn class_sum_scaled(mu: &OddPartition, n: usize) -> Result<SergeevElement> {
    let k = mu.size();
    let pi = SergeevElement::monomial(
        SergeevMonomial::from_perm(distinguished_perm(mu, n)?),
        Rat::one(),
    );
    let mut out = SergeevElement::zero(n);
    for x in coset_reps(n, n - k)? {
        out = &out + &pi.conjugate_by(&x);
    }
    Ok(out)
}

/// An element of the group `B̂_n`: `z^ε a_S σ` in normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct HyperElement {
    z: bool,
    word: Vec<usize>,
    perm: Permutation,
}

impl HyperElement {
    fn mul(&self, other: &HyperElement) -> HyperElement {
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&t| self.perm.apply(t)));
        let (flip, word) = normalize_word(word);
        HyperElement {
            z: self.z ^ other.z ^ flip,
            word,
            perm: self.perm.compose(&other.perm),
        }
    }

    fn inv(&self) -> HyperElement {
        let t = self.word.len();
        let base = (t * (t + 1) / 2) % 2 == 1;
        let inv_perm = self.perm.inverse();
        let (flip, word) = normalize_word(self.word.iter().map(|&s| inv_perm.apply(s)).collect());
        HyperElement {
            z: self.z ^ base ^ flip,
            word,
            perm: inv_perm,
        }
    }
}

/// Conjugation orbit of `h` in `B̂_n` under the generators `{s_i, a_1}`.
fn orbit(h: HyperElement, n: usize) -> HashSet<HyperElement> {
    let mut gens: Vec<HyperElement> = (1..n)
        .map(|i| HyperElement {
            z: false,
            word: Vec::new(),
            perm: Permutation::adjacent(n, i),
        })
        .collect();
    if n >= 1 {
        gens.push(HyperElement {
            z: false,
            word: vec![0],
            perm: Permutation::identity(n),
        });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(h.clone());
    queue.push_back(h);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let conj = g.mul(&cur).mul(&g.inv());
            if seen.insert(conj.clone()) {
                queue.push_back(conj);
            }
        }
    }
    seen
}

/// Class sum `C_μ`: the projection to `Ser_n` of the conjugacy-class sum of
/// `π̃_μ^{(n)}` in `B̂_n`, for `μ ∈ OP_n`. Computed by orbit closure under
/// conjugation by group generators.
pub fn class_sum_full(mu: &OddPartition, n: usize) -> Result<SergeevElement> {
    if mu.size() != n {
        return Err(Error::Domain(format!(
            "C_μ requires |μ| = n, got {mu} at level {n}"
        )));
    }
    let seed = HyperElement {
        z: false,
        word: Vec::new(),
        perm: distinguished_perm(mu, n)?,
    };
    let mut out = SergeevElement::zero(n);
    for g in orbit(seed, n) {
        let m = SergeevMonomial {
            clifford: g.word,
            perm: g.perm,
        };
        out.add_term(m, if g.z { -Rat::one() } else { Rat::one() });
    }
    Ok(out)
}

/// Expected size of the conjugacy class of `π̃_μ^{(n)}` in `B̂_n`:
/// `(n!/z_μ) 2^{n-ℓ(μ)}`.
pub fn class_size(mu: &OddPartition, n: usize) -> Rat {
    Rat::from_integer(factorial(n)) / Rat::from_integer(z_stat(mu.as_partition()))
        * pow2(n as i64 - mu.length() as i64)
}

/// All elements of `B̂_n`, and the projected full-group conjugation sum
/// `π(Σ_g g h g^{-1})`; exposed for the vanishing checks at small `n`.
pub mod hyperoctahedral {
    use super::*;

    /// Opaque handle on a group element of `B̂_n`.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
    pub struct GroupElement(pub(super) HyperElement);

    impl GroupElement {
        /// Cycle type of the underlying permutation.
        pub fn cycle_type(&self) -> Partition {
            self.0.perm.cycle_type()
        }
    }

    /// Every element of `B̂_n` (there are `2^{n+1} n!`).
    pub fn all_elements(n: usize) -> Vec<GroupElement> {
        fn perms(n: usize) -> Vec<Permutation> {
            if n == 0 {
                return vec![Permutation::identity(0)];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                let line = p.one_line();
                for i in 0..=line.len() {
                    let mut q: Vec<usize> = line.clone();
                    q.insert(i, n);
                    out.push(Permutation::from_one_line(q).unwrap());
                }
            }
            out
        }
        let mut out = Vec::new();
        for perm in perms(n) {
            for mask in 0..(1usize << n) {
                let word: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                for z in [false, true] {
                    out.push(GroupElement(HyperElement {
                        z,
                        word: word.clone(),
                        perm: perm.clone(),
                    }));
                }
            }
        }
        out
    }

    /// Class signature in the quotient `B_n`: cycle types `(ρ+, ρ-)` of the
    /// positive and negative cycles (a cycle is negative when it carries an
    /// odd number of `a` letters).
    pub fn class_signature(h: &GroupElement) -> (Partition, Partition) {
        let perm = &h.0.perm;
        let n = perm.degree();
        let mut seen = vec![false; n];
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut letters = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                if h.0.word.contains(&cur) {
                    letters += 1;
                }
                cur = perm.apply(cur);
                len += 1;
            }
            if letters % 2 == 0 {
                positive.push(len);
            } else {
                negative.push(len);
            }
        }
        (
            Partition::from_unsorted(positive),
            Partition::from_unsorted(negative),
        )
    }

    /// Whether `h` belongs to one of the split odd classes `(μ, ∅, ε)` with
    /// `μ` odd — the classes whose sums span the even center.
    pub fn in_odd_split_class(h: &GroupElement) -> bool {
        let (pos, neg) = class_signature(h);
        neg.is_empty() && pos.is_odd()
    }

    /// Whether the class of `h` splits over `B_n`: this happens for
    /// `(μ, ∅, ε)` with `μ` odd, and for `(∅, λ, ε)` with `λ` strict of odd
    /// length (precisely the odd-parity classes; established here by
    /// exhaustive computation for n ≤ 4 plus negative-class representatives
    /// through n = 6). For every other class `zh` is conjugate to `h`, so
    /// the projected class sum cancels in pairs.
    pub fn in_split_class(h: &GroupElement) -> bool {
        let (pos, neg) = class_signature(h);
        (neg.is_empty() && pos.is_odd())
            || (pos.is_empty() && neg.is_strict() && neg.length() % 2 == 1)
    }

    /// `π(Σ_{g ∈ B̂_n} g h g^{-1})` as an element of `Ser_n`.
    pub fn projected_full_conjugation_sum(h: &GroupElement, n: usize) -> SergeevElement {
        let mut out = SergeevElement::zero(n);
        for g in all_elements(n) {
            let conj = g.0.mul(&h.0).mul(&g.0.inv());
            let m = SergeevMonomial {
                clifford: conj.word,
                perm: conj.perm,
            };
            out.add_term(m, if conj.z { -Rat::one() } else { Rat::one() });
        }
        out
    }
}

/// Central idempotent
/// `e_λ = 2^{(-ℓ(λ)-δ(λ))/2} (g'_λ/n!) Σ_{μ ∈ OP_n} χ^λ(μ) C_μ`.
pub fn central_idempotent(lambda: &StrictPartition, ctx: &GammaCtx) -> Result<SergeevElement> {
    let n = lambda.size();
    let mut acc = SergeevElement::zero(n);
    for mu in enumerate_odd(n) {
        let chi = ctx.character(lambda, &mu)?;
        acc = &acc + &class_sum_full(&mu, n)?.scale(&chi);
    }
    let scalar = pow2(-(lambda.length() as i64 + length_parity(lambda) as i64) / 2)
        * Rat::from_integer(crate::partitions::count_shifted_tableaux(lambda))
        / Rat::from_integer(factorial(n));
    Ok(acc.scale(&scalar))
}

/// Normalized character `χ̃^λ(x)` of a central even element, extracted from
/// the eigenvalue equation `x e_λ = χ̃^λ(x) e_λ`. Rejects `x` that is not
/// central (the product then fails to be proportional to `e_λ`).
pub fn normalized_character(
    lambda: &StrictPartition,
    x: &SergeevElement,
    ctx: &GammaCtx,
) -> Result<Rat> {
    let n = lambda.size();
    if x.level() != n {
        return Err(Error::Domain(format!(
            "χ̃^λ needs an element of Ser_{n}, got level {}",
            x.level()
        )));
    }
    if !x.is_even() {
        return Err(Error::Domain(
            "normalized character needs an even element".into(),
        ));
    }
    let e = central_idempotent(lambda, ctx)?;
    let product = x.try_mul(&e)?;
    let reference = SergeevMonomial::identity(n);
    let denom = e.coeff(&reference);
    debug_assert!(!denom.is_zero(), "e_λ always supports the identity");
    let value = product.coeff(&reference) / denom;
    if product != e.scale(&value) {
        return Err(Error::Domain(
            "element is not central: x·e_λ is not proportional to e_λ".into(),
        ));
    }
    Ok(value)
}

/// `χ̃^λ(pr_n(J_{n+1}^{2k})) = 𝕞↑_k(λ)`.
pub fn up_moment_via_jm(k: usize, lambda: &StrictPartition, ctx: &GammaCtx) -> Result<Rat> {
    let n = lambda.size();
    let jm = jm_element(n + 1, n + 1)?;
    let projected = jm.pow(2 * k)?.project(n)?;
    normalized_character(lambda, &projected, ctx)
}

/// `Σ_{x ∈ L_{n,n-1}} x J_n^r x^{-1}`; central for every exponent `r`.
pub fn jm_conjugation_sum(r: usize, n: usize) -> Result<SergeevElement> {
    let jm_pow = jm_element(n, n)?.pow(r)?;
    let mut acc = SergeevElement::zero(n);
    for x in coset_reps(n, n - 1)? {
        acc = &acc + &jm_pow.conjugate_by(&x);
    }
    Ok(acc)
}

/// `χ̃^λ(Σ_x x J_n^{2(k-1)} x^{-1}) = 𝕞↓_k(λ)`, indexed from `k = 1`.
pub fn down_moment_via_jm(k: usize, lambda: &StrictPartition, ctx: &GammaCtx) -> Result<Rat> {
    if k == 0 {
        return Err(Error::Domain("down moment index starts at 1".into()));
    }
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Domain(
            "down moments need a nonempty partition".into(),
        ));
    }
    let sum = jm_conjugation_sum(2 * (k - 1), n)?;
    normalized_character(lambda, &sum, ctx)
}

/// Multiplicities of the restriction of `L^λ` to `Ser_{n-1}`, solved from
/// the character system `χ^λ(γ ∪ 1) = Σ_ν m_ν χ^ν(γ)` over `γ ∈ OP_{n-1}`.
pub fn restriction_multiplicities(
    lambda: &StrictPartition,
    ctx: &GammaCtx,
) -> Result<BTreeMap<StrictPartition, Rat>> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Domain("cannot restrict the level-0 module".into()));
    }
    let odd = enumerate_odd(n - 1);
    let strict = enumerate_strict(n - 1);
    let mut a = vec![vec![Rat::zero(); strict.len()]; odd.len()];
    let mut b = vec![Rat::zero(); odd.len()];
    for (i, gamma) in odd.iter().enumerate() {
        for (j, nu) in strict.iter().enumerate() {
            a[i][j] = ctx.character(nu, gamma)?;
        }
        b[i] = ctx.character(lambda, &gamma.pad_with_ones(1))?;
    }
    let x = solve_unique(&a, &b).map_err(|e| {
        Error::Singular(format!("restriction system for {lambda} is singular: {e}"))
    })?;
    Ok(strict
        .into_iter()
        .zip(x)
        .filter(|(_, m)| !m.is_zero())
        .collect())
}

#[cfg(test)]
mod tests {

    use super::*;
    use crate::partitions::test_util::{op, sp};
    use crate::rational::rat;
    use crate::schur_graph::{down_moment, up_moment};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn mono(clifford: &[usize], one_line: &[usize]) -> SergeevMonomial {
        SergeevMonomial::new(
            clifford.to_vec(),
            Permutation::from_one_line(one_line.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn elem(m: SergeevMonomial) -> SergeevElement {
        SergeevElement::monomial(m, Rat::one())
    }

    /// A representative of the negative class (∅, λ): block cycles with one
    /// Clifford letter per cycle.
    #[allow(clippy::needless_range_loop)]
    fn negative_class_rep(lambda: &[usize], n: usize) -> hyperoctahedral::GroupElement {
        let mut images: Vec<usize> = (0..n).collect();
        let mut word = Vec::new();
        let mut start = 0usize;
        for &part in lambda {
            images[start] = start + part - 1;
            for x in start + 1..start + part {
                images[x] = x - 1;
            }
            word.push(start);
            start += part;
        }
        word.sort_unstable();
        hyperoctahedral::GroupElement(HyperElement {
            z: false,
            word,
            perm: Permutation { images },
        })
    }

    #[test]
    fn split_class_rule_matches_brute_force() {
        use hyperoctahedral::*;
        // Exhaustive at n ≤ 3: a class splits exactly when the projected
        // full conjugation sum survives.
        for n in 1..=3usize {
            for h in all_elements(n) {
                let vanishes = projected_full_conjugation_sum(&h, n).is_zero();
                assert_eq!(vanishes, !in_split_class(&h), "{:?}", class_signature(&h));
            }
        }
        // Negative classes with parts of odd vs even length; the decisive
        // case is λ = (3,2,1) with three cycles.
        for (n, lambda, splits) in [
            (5usize, vec![5], true),
            (5, vec![4, 1], false),
            (5, vec![3, 2], false),
            (6, vec![5, 1], false),
            (6, vec![3, 2, 1], true),
        ] {
            let h = negative_class_rep(&lambda, n);
            assert_eq!(in_split_class(&h), splits, "λ = {lambda:?}");
            let vanishes = projected_full_conjugation_sum(&h, n).is_zero();
            assert_eq!(vanishes, !splits, "sum for λ = {lambda:?}");
        }
    }

    #[test]
    fn clifford_relations() {
        let n = 2;
        let c1 = elem(mono(&[0], &[1, 2]));
        let c2 = elem(mono(&[1], &[1, 2]));
        // c_1² = -1.
        assert_eq!(&c1 * &c1, SergeevElement::one(n).scale(&rat(-1)));
        // c_1 c_2 = -c_2 c_1.
        assert_eq!(&c1 * &c2, (&c2 * &c1).scale(&rat(-1)));
        // s_1 c_1 = c_2 s_1.
        let s1 = elem(mono(&[], &[2, 1]));
        assert_eq!(&s1 * &c1, elem(mono(&[1], &[2, 1])));
        // (c_1 c_2)² = -1.
        let c12 = &c1 * &c2;
        assert_eq!(&c12 * &c12, SergeevElement::one(n).scale(&rat(-1)));
    }

    #[test]
    fn level_mismatch_rejected() {
        let a = SergeevElement::one(2);
        let b = SergeevElement::one(3);
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn inverse_monomial_examples() {
        // c_1^{-1} = -c_1.
        let c1 = mono(&[0], &[1]);
        assert_eq!(inverse_monomial(&c1), elem(c1.clone()).scale(&rat(-1)));
        // s_1^{-1} = s_1.
        let s1 = mono(&[], &[2, 1]);
        assert_eq!(inverse_monomial(&s1), elem(s1.clone()));
        // (c_1 s_1)^{-1} = -c_2 s_1, and the product with the original is 1.
        let c1s1 = mono(&[0], &[2, 1]);
        assert_eq!(
            inverse_monomial(&c1s1),
            elem(mono(&[1], &[2, 1])).scale(&rat(-1))
        );
        for m in [c1, s1, c1s1, mono(&[0, 2], &[3, 1, 2])] {
            let n = m.level();
            let prod = elem(m.clone()).try_mul(&inverse_monomial(&m)).unwrap();
            assert_eq!(prod, SergeevElement::one(n), "{m:?}");
        }
    }

    #[test]
    fn jm_examples() {
        assert!(jm_element(1, 3).unwrap().is_zero());
        // J_2² = 2.
        let j2 = jm_element(2, 2).unwrap();
        assert_eq!(j2.pow(2).unwrap(), SergeevElement::one(2).scale(&rat(2)));
        // J_2 J_3 = J_3 J_2 in Ser_3.
        let j2 = jm_element(2, 3).unwrap();
        let j3 = jm_element(3, 3).unwrap();
        assert_eq!(j2.try_mul(&j3).unwrap(), j3.try_mul(&j2).unwrap());
    }

    #[test]
    fn jm_elements_commute_up_to_level_5() {
        for n in 2..=5 {
            let jms: Vec<_> = (1..=n).map(|k| jm_element(k, n).unwrap()).collect();
            for a in &jms {
                for b in &jms {
                    assert_eq!(a.try_mul(b).unwrap(), b.try_mul(a).unwrap());
                }
            }
        }
    }

    #[test]
    fn coset_reps_examples() {
        let l10 = coset_reps(1, 0).unwrap();
        assert_eq!(l10.len(), 2);
        assert!(l10.contains(&mono(&[], &[1])));
        assert!(l10.contains(&mono(&[0], &[1])));

        // {1, c_2, s_1, s_1 c_2}; the last normalizes to c_1 s_1.
        let l21 = coset_reps(2, 1).unwrap();
        assert_eq!(l21.len(), 4);
        for expected in [
            mono(&[], &[1, 2]),
            mono(&[1], &[1, 2]),
            mono(&[], &[2, 1]),
            mono(&[0], &[2, 1]),
        ] {
            assert!(l21.contains(&expected), "{expected:?}");
        }

        // |L_{n,k}| = n↓(n-k) · 2^{n-k} = |B̂_n| / |B̂_k|; at (3,1) this is 24.
        assert_eq!(coset_reps(3, 1).unwrap().len(), 24);
        assert_eq!(coset_reps(3, 2).unwrap().len(), 6);
        assert!(coset_reps(2, 3).is_err());
    }

    #[test]
    fn distinguished_perm_examples() {
        assert!(distinguished_perm(&op(&[1]), 3).unwrap().is_identity());
        let p33 = distinguished_perm(&op(&[3]), 3).unwrap();
        assert_eq!(p33.cycle_type().parts(), &[3]);
        let p34 = distinguished_perm(&op(&[3]), 4).unwrap();
        assert_eq!(p34.cycle_type().parts(), &[3, 1]);
        assert!(p34.fixes_prefix(1));
        let p = distinguished_perm(&op(&[3, 1, 1]), 7).unwrap();
        assert_eq!(p.cycle_type().parts(), &[3, 1, 1, 1, 1]);
        assert!(p.fixes_prefix(2));
    }

    #[test]
    fn class_sum_scaled_examples() {
        // a_{(1)}^{(n)} = 2n · 1.
        for n in 1..=5 {
            let a = class_sum_scaled(&op(&[1]), n).unwrap();
            assert_eq!(a, SergeevElement::one(n).scale(&rat(2 * n as i64)));
        }
    }

    #[test]
    fn class_sum_scaled_is_central_and_even() {
        for n in 1..=4 {
            for k in 1..=n {
                for mu in enumerate_odd(k) {
                    let a = class_sum_scaled(&mu, n).unwrap();
                    assert!(a.is_even());
                    // Centrality: commutes with s_i and c_1.
                    let mut gens = vec![elem(mono(&[0], &Permutation::identity(n).one_line()))];
                    for i in 1..n {
                        gens.push(elem(SergeevMonomial::from_perm(Permutation::adjacent(
                            n, i,
                        ))));
                    }
                    for g in gens {
                        assert_eq!(
                            a.try_mul(&g).unwrap(),
                            g.try_mul(&a).unwrap(),
                            "a_{mu}^{n} centrality"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn class_sum_full_examples() {
        // The identity class.
        for n in 1..=4 {
            let ones = OddPartition::empty().pad_with_ones(n);
            assert_eq!(class_sum_full(&ones, n).unwrap(), SergeevElement::one(n));
        }
        // Orbit size for μ = (3), n = 3 is 8, all coefficients ±1.
        let c3 = class_sum_full(&op(&[3]), 3).unwrap();
        assert_eq!(c3.num_terms(), 8);
        assert_eq!(class_size(&op(&[3]), 3), rat(8));
        for n in 1..=5 {
            for mu in enumerate_odd(n) {
                let c = class_sum_full(&mu, n).unwrap();
                assert_eq!(
                    rat(c.num_terms() as i64),
                    class_size(&mu, n),
                    "orbit size {mu}"
                );
            }
        }
    }

    #[test]
    fn class_sum_scalar_relation() {
        // a_μ^{(n)} = 2^{ℓ(μ)} (z_{μ∪1^{n-k}} / (n-k)!) C_{μ∪1^{n-k}}.
        for n in 1..=4 {
            for k in 1..=n {
                for mu in enumerate_odd(k) {
                    let a = class_sum_scaled(&mu, n).unwrap();
                    let padded = mu.pad_with_ones(n - k);
                    let c = class_sum_full(&padded, n).unwrap();
                    let scalar = pow2(mu.length() as i64)
                        * Rat::from_integer(z_stat(padded.as_partition()))
                        / Rat::from_integer(factorial(n - k));
                    assert_eq!(a, c.scale(&scalar), "μ = {mu}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn non_split_class_sums_vanish() {
        use hyperoctahedral::*;
        // π_2(Σ_g g s_1 g^{-1}) = 0: s_1 lies in a non-split class of B̂_2.
        let s1 = GroupElement(HyperElement {
            z: false,
            word: vec![],
            perm: Permutation::adjacent(2, 1),
        });
        assert!(!in_split_class(&s1));
        assert!(projected_full_conjugation_sum(&s1, 2).is_zero());
        // Exhaustive at n = 2: the projected full conjugation sum vanishes
        // exactly off the split classes.
        for h in all_elements(2) {
            let vanishes = projected_full_conjugation_sum(&h, 2).is_zero();
            assert_eq!(vanishes, !in_split_class(&h), "{:?}", class_signature(&h));
        }
    }

    #[test]
    fn central_idempotents_small_levels() {
        let ctx = GammaCtx::new();
        // n = 2: single simple module, so e_{(2)} = 1.
        let e2 = central_idempotent(&sp(&[2]), &ctx).unwrap();
        assert_eq!(e2, SergeevElement::one(2));
        // n = 3: orthogonal idempotents summing to 1.
        let e3 = central_idempotent(&sp(&[3]), &ctx).unwrap();
        let e21 = central_idempotent(&sp(&[2, 1]), &ctx).unwrap();
        assert_eq!(&e3 + &e21, SergeevElement::one(3));
        assert!(e3.try_mul(&e21).unwrap().is_zero());
        assert_eq!(e3.try_mul(&e3).unwrap(), e3);
        assert_eq!(e21.try_mul(&e21).unwrap(), e21);
    }

    #[test]
    fn normalized_character_examples() {
        let ctx = GammaCtx::new();
        let lambda = sp(&[2, 1]);
        assert_eq!(
            normalized_character(&lambda, &SergeevElement::one(3), &ctx).unwrap(),
            rat(1)
        );
        let a1 = class_sum_scaled(&op(&[1]), 3).unwrap();
        assert_eq!(normalized_character(&lambda, &a1, &ctx).unwrap(), rat(6));
        // χ̃^{(2,1)}(a_{(3)}^{(3)}) = 2³·3↓3·χ^{(2,1)}((3))/χ^{(2,1)}(1³).
        let a3 = class_sum_scaled(&op(&[3]), 3).unwrap();
        let expected = rat(8) * rat(6) * ctx.character(&lambda, &op(&[3])).unwrap()
            / ctx.character(&lambda, &op(&[1, 1, 1])).unwrap();
        assert_eq!(normalized_character(&lambda, &a3, &ctx).unwrap(), expected);
        // Non-central elements are rejected.
        let s1 = elem(SergeevMonomial::from_perm(Permutation::adjacent(3, 1)));
        assert!(normalized_character(&lambda, &s1, &ctx).is_err());
    }

    #[test]
    fn jm_moment_examples() {
        let ctx = GammaCtx::new();
        assert_eq!(up_moment_via_jm(0, &sp(&[2, 1]), &ctx).unwrap(), rat(1));
        assert_eq!(up_moment_via_jm(1, &sp(&[1]), &ctx).unwrap(), rat(2));
        assert_eq!(
            up_moment_via_jm(2, &sp(&[2, 1]), &ctx).unwrap(),
            up_moment(2, &sp(&[2, 1]))
        );
        for (k, lambda) in [(1usize, sp(&[2, 1])), (2, sp(&[3, 1]))] {
            assert_eq!(
                down_moment_via_jm(k, &lambda, &ctx).unwrap(),
                down_moment(k, &lambda).unwrap(),
                "k = {k}"
            );
        }
        assert!(down_moment_via_jm(0, &sp(&[1]), &ctx).is_err());
        // Odd JM powers have vanishing conjugation sums under χ̃.
        let odd_sum = jm_conjugation_sum(1, 3).unwrap();
        assert_eq!(
            normalized_character(&sp(&[2, 1]), &odd_sum, &ctx).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn restriction_examples() {
        let ctx = GammaCtx::new();
        let m2 = restriction_multiplicities(&sp(&[2]), &ctx).unwrap();
        assert_eq!(m2, BTreeMap::from([(sp(&[1]), rat(2))]));
        let m21 = restriction_multiplicities(&sp(&[2, 1]), &ctx).unwrap();
        assert_eq!(m21, BTreeMap::from([(sp(&[2]), rat(1))]));
        let m31 = restriction_multiplicities(&sp(&[3, 1]), &ctx).unwrap();
        assert_eq!(
            m31,
            BTreeMap::from([(sp(&[3]), rat(1)), (sp(&[2, 1]), rat(2))])
        );
    }

    #[test]
    fn restriction_matches_branching_powers_up_to_level_8() {
        use crate::schur_graph::edge_multiplicity;
        let ctx = GammaCtx::new();
        for n in 1..=8usize {
            for lambda in enumerate_strict(n) {
                let m = restriction_multiplicities(&lambda, &ctx).unwrap();
                for nu in enumerate_strict(n - 1) {
                    let got = m.get(&nu).cloned().unwrap_or_else(Rat::zero);
                    let expected = if edge_multiplicity(&nu, &lambda) > 0 {
                        let e = (2 + nu.length() as i64
                            - length_parity(&nu) as i64
                            - lambda.length() as i64
                            + length_parity(&lambda) as i64)
                            / 2;
                        pow2(e)
                    } else {
                        Rat::zero()
                    };
                    assert_eq!(got, expected, "branching [{lambda}:{nu}]");
                }
            }
        }
    }

    #[test]
    fn regular_representation_dimension_identity() {
        let ctx = GammaCtx::new();
        // Σ_λ dim(L^λ)² / 2^{δ(λ)} = 2^n n! for n ≤ 8.
        for n in 0..=8 {
            let mut acc = Rat::zero();
            for lambda in enumerate_strict(n) {
                let d = ctx.dimension(&lambda).unwrap();
                acc += d.clone() * d / pow2(length_parity(&lambda) as i64);
            }
            assert_eq!(
                acc,
                pow2(n as i64) * Rat::from_integer(factorial(n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 4;
        let random_monomial = |rng: &mut ChaCha8Rng| {
            let clifford: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let mut line: Vec<usize> = (1..=n).collect();
            line.shuffle(rng);
            SergeevMonomial::new(clifford, Permutation::from_one_line(line).unwrap()).unwrap()
        };
        for _ in 0..200 {
            let (x, y, z) = (
                elem(random_monomial(&mut rng)),
                elem(random_monomial(&mut rng)),
                elem(random_monomial(&mut rng)),
            );
            let left = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
            let right = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn project_and_embed() {
        let j3 = jm_element(3, 3).unwrap();
        // J_3 involves strand 3 in every term, so pr_2 kills it.
        assert!(j3.project(2).unwrap().is_zero());
        let one = SergeevElement::one(3);
        assert_eq!(one.project(2).unwrap(), SergeevElement::one(2));
        let j2 = jm_element(2, 2).unwrap();
        assert_eq!(j2.embed(3).unwrap().project(2).unwrap(), j2);
        assert!(j2.embed(1).is_err());
    }
}
