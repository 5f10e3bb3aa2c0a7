//! Sparse symmetric connection strengths of orders 1 to 3.
//!
//! Entries are stored once under their ascending index key, which gives the
//! zero diagonal and full permutation symmetry for free: `T_ij = T_ji`,
//! `T_ijk = T_[ijk]`, and any key with a repeated index reads as zero.
//!
//! The energy over canonical keys is
//!
//! ```text
//! E = - sum_{i<j<k} 2 T_ijk x_i x_j x_k - sum_{i<j} T_ij x_i x_j - sum_i T_i x_i
//! ```
//!
//! where the factor 2 is `3! * 1/3` and the factor 1 is `2! * 1/2`: the
//! permutation copies of a full tensor sum folded onto one stored entry.
//! The local field is the matching derivative,
//! `h_i = sum_{j<k} 2 T_ijk x_j x_k + sum_j T_ij x_j + T_i`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{check_index, Interpretation};
use crate::{Error, Result};

/// Entries with magnitude at or below this are dropped on write.
pub const PRUNE_TOLERANCE: f64 = 1e-15;

/// Numeric encoding of a truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Representation {
    /// `V` in {0, 1}.
    #[default]
    Binary,
    /// `S` in {-1, +1}.
    Bipolar,
}

impl Representation {
    pub fn value(self, truth: bool) -> f64 {
        match (self, truth) {
            (_, true) => 1.0,
            (Representation::Binary, false) => 0.0,
            (Representation::Bipolar, false) => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Representation::Binary => "binary",
            Representation::Bipolar => "bipolar",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Canonical (strictly ascending) connection key.
///
/// The derived ordering sorts by order first, then lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    One(usize),
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl Key {
    /// Canonicalizes 1 to 3 indices by sorting. Repeated indices are a
    /// diagonal entry and rejected.
    pub fn new(indices: &[usize]) -> Result<Key> {
        match Self::canonical(indices)? {
            Some(key) => Ok(key),
            None => Err(Error::DiagonalWrite(indices.to_vec())),
        }
    }

    /// Like [`Key::new`] but maps diagonal keys to `None`.
    fn canonical(indices: &[usize]) -> Result<Option<Key>> {
        let key = match *indices {
            [i] => Key::One(i),
            [i, j] => {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                if a == b {
                    return Ok(None);
                }
                Key::Two(a, b)
            }
            [i, j, k] => {
                let mut s = [i, j, k];
                s.sort_unstable();
                if s[0] == s[1] || s[1] == s[2] {
                    return Ok(None);
                }
                Key::Three(s[0], s[1], s[2])
            }
            _ => return Err(Error::KeyArity(indices.len())),
        };
        Ok(Some(key))
    }

    pub fn order(&self) -> usize {
        match self {
            Key::One(_) => 1,
            Key::Two(..) => 2,
            Key::Three(..) => 3,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Key::One(i) => alloc::vec![i],
            Key::Two(i, j) => alloc::vec![i, j],
            Key::Three(i, j, k) => alloc::vec![i, j, k],
        }
    }

    pub fn max_index(&self) -> usize {
        match *self {
            Key::One(i) | Key::Two(_, i) | Key::Three(_, _, i) => i,
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        match *self {
            Key::One(i) => i == a,
            Key::Two(i, j) => i == a || j == a,
            Key::Three(i, j, k) => i == a || j == a || k == a,
        }
    }

    /// Product of the numeric values of the key's atoms.
    fn monomial(&self, x: &[f64]) -> f64 {
        match *self {
            Key::One(i) => x[i],
            Key::Two(i, j) => x[i] * x[j],
            Key::Three(i, j, k) => x[i] * x[j] * x[k],
        }
    }

    /// Weight of the stored entry in the energy sum over canonical keys.
    fn energy_factor(&self) -> f64 {
        match self {
            Key::Three(..) => 2.0,
            _ => 1.0,
        }
    }
}

/// Sparse symmetric synapses plus a constant energy offset `E_0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynapseSet {
    n_atoms: usize,
    entries: BTreeMap<Key, f64>,
    offset: f64,
}

impl SynapseSet {
    pub fn new(n_atoms: usize) -> Self {
        Self {
            n_atoms,
            entries: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn add_offset(&mut self, delta: f64) {
        self.offset += delta;
    }

    /// Number of stored (nonzero) entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_key(&self, key: &Key) -> Result<()> {
        check_index(key.max_index(), self.n_atoms)
    }

    /// Permutation-invariant read. Keys with repeated indices read as 0.
    pub fn get(&self, indices: &[usize]) -> Result<f64> {
        for &i in indices {
            check_index(i, self.n_atoms)?;
        }
        Ok(match Key::canonical(indices)? {
            Some(key) => self.value(key),
            None => 0.0,
        })
    }

    pub fn value(&self, key: Key) -> f64 {
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn add(&mut self, indices: &[usize], delta: f64) -> Result<()> {
        let key = Key::new(indices)?;
        self.add_key(key, delta)
    }

    pub fn set(&mut self, indices: &[usize], value: f64) -> Result<()> {
        let key = Key::new(indices)?;
        self.set_key(key, value)
    }

    pub fn add_key(&mut self, key: Key, delta: f64) -> Result<()> {
        self.check_key(&key)?;
        let value = self.value(key) + delta;
        self.store(key, value);
        Ok(())
    }

    pub fn set_key(&mut self, key: Key, value: f64) -> Result<()> {
        self.check_key(&key)?;
        self.store(key, value);
        Ok(())
    }

    fn store(&mut self, key: Key, value: f64) {
        if value.abs() <= PRUNE_TOLERANCE {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    /// Nonzero entries, ordered by connection order then key.
    pub fn entries(&self) -> impl Iterator<Item = (Key, f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Nonzero entries of a single order.
    pub fn entries_of_order(&self, order: usize) -> impl Iterator<Item = (Key, f64)> + '_ {
        self.entries().filter(move |(k, _)| k.order() == order)
    }

    /// `self += factor * other`, offset included.
    pub fn add_scaled(&mut self, other: &SynapseSet, factor: f64) -> Result<()> {
        for (key, v) in other.entries() {
            self.add_key(key, factor * v)?;
        }
        self.offset += factor * other.offset;
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> SynapseSet {
        let mut out = SynapseSet::new(self.n_atoms);
        for (key, v) in self.entries() {
            out.store(key, factor * v);
        }
        out.offset = factor * self.offset;
        out
    }

    /// Largest absolute entrywise difference over the union of keys,
    /// ignoring the offsets.
    pub fn max_abs_diff(&self, other: &SynapseSet) -> f64 {
        let mut worst: f64 = 0.0;
        for (key, v) in self.entries() {
            worst = worst.max((v - other.value(key)).abs());
        }
        for (key, v) in other.entries() {
            if !self.entries.contains_key(&key) {
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    /// Renames atom `i` to `perm[i]` in every key.
    pub fn relabel(&self, perm: &[usize]) -> Result<SynapseSet> {
        if perm.len() != self.n_atoms {
            return Err(Error::LengthMismatch {
                expected: self.n_atoms,
                found: perm.len(),
            });
        }
        let mut out = SynapseSet::new(self.n_atoms);
        for (key, v) in self.entries() {
            let mapped: Vec<usize> = key.indices().iter().map(|&i| perm[i]).collect();
            out.add(&mapped, v)?;
        }
        out.offset = self.offset;
        Ok(out)
    }

    fn numeric_view(&self, x: &Interpretation, r: Representation) -> Result<Vec<f64>> {
        if x.len() != self.n_atoms {
            return Err(Error::LengthMismatch {
                expected: self.n_atoms,
                found: x.len(),
            });
        }
        Ok(x.to_numeric(r))
    }

    /// Energy without the constant offset.
    pub fn energy(&self, x: &Interpretation, r: Representation) -> Result<f64> {
        let x = self.numeric_view(x, r)?;
        Ok(self.energy_numeric(&x))
    }

    /// Energy including the constant offset `E_0`.
    pub fn energy_total(&self, x: &Interpretation, r: Representation) -> Result<f64> {
        Ok(self.energy(x, r)? + self.offset)
    }

    pub(crate) fn energy_numeric(&self, x: &[f64]) -> f64 {
        -self
            .entries()
            .map(|(key, t)| key.energy_factor() * t * key.monomial(x))
            .sum::<f64>()
    }

    pub fn local_field(&self, x: &Interpretation, r: Representation, i: usize) -> Result<f64> {
        check_index(i, self.n_atoms)?;
        let x = self.numeric_view(x, r)?;
        Ok(self.local_field_numeric(&x, i))
    }

    fn local_field_numeric(&self, x: &[f64], i: usize) -> f64 {
        self.entries()
            .filter(|(key, _)| key.contains(i))
            .map(|(key, t)| {
                let others = match key {
                    Key::One(_) => 1.0,
                    Key::Two(a, b) => x[if a == i { b } else { a }],
                    Key::Three(a, b, c) => {
                        let (p, q) = if a == i {
                            (b, c)
                        } else if b == i {
                            (a, c)
                        } else {
                            (a, b)
                        };
                        x[p] * x[q]
                    }
                };
                key.energy_factor() * t * others
            })
            .sum()
    }
}
