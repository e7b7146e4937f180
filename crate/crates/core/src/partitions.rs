//! Integer partitions, shifted diagrams, and the counting formulas attached
//! to them.
//!
//! Three validated flavours are used throughout the crate: plain partitions
//! (weakly decreasing), strict partitions (pairwise distinct parts, the
//! vertices of the Schur graph) and odd partitions (every part odd, the index
//! set of the split even conjugacy classes). Empty partitions are valid
//! everywhere and denote the unit object.
//!
//! Canonical order for every enumeration is descending lexicographic, so
//! `[n]` always comes first and `[1,1,...,1]` last.

use crate::rational::{factorial, int, Int, Rat};
use crate::Error;
use num::traits::One;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A partition: weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given parts into decreasing order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|ρ|`, the number being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(ρ)`, the number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at 1-based index `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Number of parts equal to `v`.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// Disjoint union of parts, re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// Appends `m` parts equal to one (`ρ ∪ 1^m`).
    pub fn pad_with_ones(&self, m: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, m));
        Partition { parts }
    }

    /// Containment of Young diagrams: every row of `other` fits in this one.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.length()).all(|i| self.part(i) >= other.part(i))
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_odd(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 1)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PartsVisitor;
        impl<'de> Visitor<'de> for PartsVisitor {
            type Value = Vec<usize>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a JSON array of positive integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut parts = Vec::new();
                while let Some(p) = seq.next_element::<usize>()? {
                    parts.push(p);
                }
                Ok(parts)
            }
        }
        let parts = deserializer.deserialize_seq(PartsVisitor)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

macro_rules! partition_wrapper {
    ($name:ident, $pred:ident, $what:literal) => {
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Partition);

        impl $name {
            pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
                Self::from_partition(Partition::new(parts)?)
            }

            pub fn from_partition(p: Partition) -> Result<Self, Error> {
                if p.$pred() {
                    Ok($name(p))
                } else {
                    Err(Error::InvalidPartition(format!("{p} is not {}", $what)))
                }
            }

            pub fn empty() -> Self {
                $name(Partition::empty())
            }

            pub fn as_partition(&self) -> &Partition {
                &self.0
            }

            pub fn into_partition(self) -> Partition {
                self.0
            }

            pub fn parts(&self) -> &[usize] {
                self.0.parts()
            }

            pub fn size(&self) -> usize {
                self.0.size()
            }

            pub fn length(&self) -> usize {
                self.0.length()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn part(&self, i: usize) -> usize {
                self.0.part(i)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                self.0.serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let p = Partition::deserialize(deserializer)?;
                $name::from_partition(p).map_err(serde::de::Error::custom)
            }
        }
    };
}

partition_wrapper!(StrictPartition, is_strict, "strict (distinct parts)");
partition_wrapper!(OddPartition, is_odd, "odd (all parts odd)");

impl OddPartition {
    /// Disjoint union of two odd partitions.
    pub fn union(&self, other: &OddPartition) -> OddPartition {
        OddPartition(self.0.union(&other.0))
    }

    /// `μ ∪ 1^m`.
    pub fn pad_with_ones(&self, m: usize) -> OddPartition {
        OddPartition(self.0.pad_with_ones(m))
    }
}

/// A cell of a shifted Young diagram, 1-based; row `i` occupies columns
/// `i ..= i + λ_i - 1`, hence `col >= row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftedCell {
    pub row: usize,
    pub col: usize,
}

impl ShiftedCell {
    pub fn new(row: usize, col: usize) -> Result<Self, Error> {
        if row == 0 || col < row {
            return Err(Error::InvalidPartition(format!(
                "({row},{col}) is not a shifted-diagram cell"
            )));
        }
        Ok(ShiftedCell { row, col })
    }

    /// Content `col - row`; nonnegative on shifted diagrams.
    pub fn content(&self) -> usize {
        self.col - self.row
    }
}

/// The cells of the shifted diagram of a strict partition, row by row.
pub fn shifted_cells(lambda: &StrictPartition) -> Vec<ShiftedCell> {
    let mut cells = Vec::with_capacity(lambda.size());
    for (i, &p) in lambda.parts().iter().enumerate() {
        let row = i + 1;
        for col in row..row + p {
            cells.push(ShiftedCell { row, col });
        }
    }
    cells
}

fn enumerate_rec(
    remaining: usize,
    max_part: usize,
    prefix: &mut Vec<usize>,
    strict: bool,
    odd: bool,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        if odd && p % 2 == 0 {
            continue;
        }
        prefix.push(p);
        let next_max = if strict { p.saturating_sub(1) } else { p };
        enumerate_rec(remaining - p, next_max, prefix, strict, odd, out);
        prefix.pop();
    }
}

/// All partitions of `n` in descending lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    enumerate_rec(n, n, &mut Vec::new(), false, false, &mut out);
    out
}

/// All strict partitions of `n` in descending lexicographic order.
pub fn enumerate_strict(n: usize) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    enumerate_rec(n, n, &mut Vec::new(), true, false, &mut out);
    out.into_iter().map(StrictPartition).collect()
}

/// All odd partitions of `n` in descending lexicographic order.
pub fn enumerate_odd(n: usize) -> Vec<OddPartition> {
    let mut out = Vec::new();
    enumerate_rec(n, n, &mut Vec::new(), false, true, &mut out);
    out.into_iter().map(OddPartition).collect()
}

/// All strict partitions of sizes `0 ..= n`, by level.
pub fn enumerate_strict_up_to(n: usize) -> Vec<StrictPartition> {
    (0..=n).flat_map(enumerate_strict).collect()
}

/// `δ(λ)`: the parity of the number of parts.
pub fn length_parity(lambda: &StrictPartition) -> u8 {
    (lambda.length() % 2) as u8
}

/// `z_ρ = Π i^{m_i} m_i!`, the centralizer size of a permutation of cycle
/// type `ρ`.
pub fn z_stat(rho: &Partition) -> Int {
    let mut acc = Int::one();
    let mut i = 0;
    while i < rho.length() {
        let v = rho.parts()[i];
        let mut m = 0;
        while i < rho.length() && rho.parts()[i] == v {
            m += 1;
            i += 1;
        }
        acc *= int(v as i64).pow(m as u32) * factorial(m);
    }
    acc
}

/// `g'_λ`: the number of standard shifted Young tableaux of shape `λ`, by the
/// closed product formula.
pub fn count_shifted_tableaux(lambda: &StrictPartition) -> Int {
    let n = lambda.size();
    let parts = lambda.parts();
    let mut value = Rat::from_integer(factorial(n));
    for &p in parts {
        value /= Rat::from_integer(factorial(p));
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            value *= Rat::new(
                int((parts[i] - parts[j]) as i64),
                int((parts[i] + parts[j]) as i64),
            );
        }
    }
    debug_assert!(value.denom().is_one(), "g' formula must yield an integer");
    value.to_integer()
}

/// `g_λ = 2^{|λ|-ℓ(λ)} g'_λ`: the number of paths from `∅` to `λ` in the
/// Schur graph, counted with edge multiplicity.
pub fn path_count(lambda: &StrictPartition) -> Int {
    let e = (lambda.size() - lambda.length()) as u32;
    count_shifted_tableaux(lambda) * int(2).pow(e)
}

/// Kerov coordinates: contents of the addable and removable cells of the
/// shifted diagram.
pub fn kerov_coordinates(lambda: &StrictPartition) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut addable = BTreeSet::new();
    let mut removable = BTreeSet::new();
    let l = lambda.length();
    for i in 1..=l {
        let p = lambda.part(i);
        // Adding at the end of row i yields content λ_i.
        if i == 1 || lambda.part(i - 1) > p + 1 {
            addable.insert(p);
        }
        // Removing the end of row i yields content λ_i - 1.
        let shrunk = p - 1;
        if (shrunk == 0 && i == l) || (shrunk > 0 && shrunk > lambda.part(i + 1)) {
            removable.insert(shrunk);
        }
    }
    // A fresh row of length one has content 0.
    if l == 0 || lambda.part(l) > 1 {
        addable.insert(0);
    }
    (addable, removable)
}

/// Adds the unique addable cell of content `x`; errors when `x` is not an
/// addable content of `λ`.
pub fn add_cell_by_content(lambda: &StrictPartition, x: usize) -> Result<StrictPartition, Error> {
    let (addable, _) = kerov_coordinates(lambda);
    if !addable.contains(&x) {
        return Err(Error::Domain(format!(
            "{x} is not an addable content of {lambda}"
        )));
    }
    let mut parts = lambda.parts().to_vec();
    if let Some(i) = parts.iter().position(|&p| p == x) {
        parts[i] += 1;
    } else {
        debug_assert_eq!(x, 0);
        parts.push(1);
    }
    StrictPartition::new(parts)
}

/// Removes the unique removable cell of content `y`; errors when `y` is not a
/// removable content of `λ`.
pub fn remove_cell_by_content(
    lambda: &StrictPartition,
    y: usize,
) -> Result<StrictPartition, Error> {
    let (_, removable) = kerov_coordinates(lambda);
    if !removable.contains(&y) {
        return Err(Error::Domain(format!(
            "{y} is not a removable content of {lambda}"
        )));
    }
    let mut parts = lambda.parts().to_vec();
    let i = parts
        .iter()
        .position(|&p| p == y + 1)
        .expect("removable content");
    parts[i] -= 1;
    if parts[i] == 0 {
        parts.remove(i);
    }
    StrictPartition::new(parts)
}
