//! Hebbian learning of order 1 to 3 connection strengths from event records.
//!
//! Every record adds `a_o * sigma_i * sigma_j * ...` to each connection of
//! order `o`, where `sigma = 2V - 1` is the bipolar view of the record. The
//! products are summed as integers and scaled by the rates once at the end,
//! so the result does not depend on record order.

use alloc::vec::Vec;

use crate::logic::{AtomTable, Clause, Interpretation};
use crate::synapse::{Key, SynapseSet};
use crate::{Error, Result};

/// Default guard for [`learn`]; the cost is cubic in the atom count.
pub const DEFAULT_MAX_LEARN_ATOMS: usize = 64;

/// Boolean records over a named atom table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventTable {
    atoms: AtomTable,
    records: Vec<Interpretation>,
}

impl EventTable {
    pub fn new(atoms: AtomTable, records: Vec<Vec<bool>>) -> Result<Self> {
        Self::from_interpretations(atoms, records.into_iter().map(Interpretation::new).collect())
    }

    pub fn from_models(atoms: AtomTable, models: &[Interpretation]) -> Result<Self> {
        Self::from_interpretations(atoms, models.to_vec())
    }

    fn from_interpretations(atoms: AtomTable, records: Vec<Interpretation>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::NoRecords);
        }
        if let Some(bad) = records.iter().find(|r| r.len() != atoms.len()) {
            return Err(Error::LengthMismatch {
                expected: atoms.len(),
                found: bad.len(),
            });
        }
        Ok(Self { atoms, records })
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn records(&self) -> &[Interpretation] {
        &self.records
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn n_records(&self) -> usize {
        self.records.len()
    }
}

/// Learning rate per connection order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningRates {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Default for LearningRates {
    /// `(1, 1, 1/2)`: the third-order rate at half the second-order one, which
    /// makes a clause's learned pattern proportional to its bipolar energy.
    fn default() -> Self {
        Self {
            a1: 1.0,
            a2: 1.0,
            a3: 0.5,
        }
    }
}

impl LearningRates {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let rates = Self { a1, a2, a3 };
        rates.validate()?;
        Ok(rates)
    }

    pub fn uniform(a: f64) -> Result<Self> {
        Self::new(a, a, a)
    }

    pub fn validate(&self) -> Result<()> {
        if [self.a1, self.a2, self.a3]
            .iter()
            .all(|a| a.is_finite() && *a > 0.0)
        {
            Ok(())
        } else {
            Err(Error::InvalidConfig("learning rates must be finite and positive"))
        }
    }

    /// Rate for connections of the given order (1, 2 or 3).
    pub fn for_order(&self, order: usize) -> f64 {
        match order {
            1 => self.a1,
            2 => self.a2,
            3 => self.a3,
            _ => panic!("no learning rate for order {order}"),
        }
    }
}

/// Learns synapses from `ev`, refusing tables wider than
/// [`DEFAULT_MAX_LEARN_ATOMS`].
pub fn learn(ev: &EventTable, rates: &LearningRates) -> Result<SynapseSet> {
    learn_with_limit(ev, rates, DEFAULT_MAX_LEARN_ATOMS)
}

pub fn learn_with_limit(
    ev: &EventTable,
    rates: &LearningRates,
    max_atoms: usize,
) -> Result<SynapseSet> {
    rates.validate()?;
    let n = ev.n_atoms();
    if n > max_atoms {
        return Err(Error::Capacity {
            what: "hebbian learning",
            n,
            limit: max_atoms,
        });
    }
    let counts = SignCounts::tally(n, ev.records());
    counts.into_synapses(rates)
}

/// Integer sums of bipolar products per canonical key, stored densely.
struct SignCounts {
    n: usize,
    c1: Vec<i64>,
    c2: Vec<i64>,
    c3: Vec<i64>,
}

impl SignCounts {
    fn tally(n: usize, records: &[Interpretation]) -> Self {
        let mut counts = Self {
            n,
            c1: alloc::vec![0; n],
            c2: alloc::vec![0; n * n],
            c3: alloc::vec![0; n * n * n],
        };
        let mut sigma = alloc::vec![0i64; n];
        for record in records {
            for (i, s) in sigma.iter_mut().enumerate() {
                *s = if record.get(i) { 1 } else { -1 };
            }
            for (i, &si) in sigma.iter().enumerate() {
                counts.c1[i] += si;
                for (j, &sj) in sigma.iter().enumerate().skip(i + 1) {
                    let sij = si * sj;
                    counts.c2[i * n + j] += sij;
                    for (k, &sk) in sigma.iter().enumerate().skip(j + 1) {
                        counts.c3[(i * n + j) * n + k] += sij * sk;
                    }
                }
            }
        }
        counts
    }

    fn into_synapses(self, rates: &LearningRates) -> Result<SynapseSet> {
        let n = self.n;
        let mut s = SynapseSet::new(n);
        for i in 0..n {
            s.add_key(Key::One(i), rates.a1 * self.c1[i] as f64)?;
            for j in i + 1..n {
                s.add_key(Key::Two(i, j), rates.a2 * self.c2[i * n + j] as f64)?;
                for k in j + 1..n {
                    let c = self.c3[(i * n + j) * n + k];
                    s.add_key(Key::Three(i, j, k), rates.a3 * c as f64)?;
                }
            }
        }
        Ok(s)
    }
}

/// Closed-form net Hebbian pattern of a clause's complete local model set.
///
/// Over all `2^L` assignments of the clause's atoms every nonempty sign
/// product sums to zero, and the models are all assignments but the violating
/// one. So the connection on each atom subset `S` receives
/// `-a_|S| * prod_{i in S} sigma_i` with `sigma` taken at the violating
/// assignment (head `-1`, body atoms `+1`). For `x <- y, z` this is
/// `T_xyz = +a3`, `T_xy = T_xz = +a2`, `T_yz = -a2`, `T_x = +a1`,
/// `T_y = T_z = -a1`.
///
/// Works for denials too (every entry `-a_o`). See
/// [`single_clause_signature`] for the definite-only variant.
pub fn clause_signature(c: &Clause, rates: &LearningRates, n_atoms: usize) -> Result<SynapseSet> {
    let literals = c.literal_count();
    if literals > 3 {
        return Err(Error::UnsupportedOrder { literals });
    }
    let violating = c.violating_assignment();
    let mut s = SynapseSet::new(n_atoms);
    for mask in 1u32..(1 << violating.len()) {
        let subset: Vec<(usize, bool)> = violating
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &pair)| pair)
            .collect();
        let sign: f64 = subset
            .iter()
            .map(|&(_, v)| if v { 1.0 } else { -1.0 })
            .product();
        let indices: Vec<usize> = subset.iter().map(|&(a, _)| a).collect();
        s.add(&indices, -sign * rates.for_order(indices.len()))?;
    }
    Ok(s)
}

/// [`clause_signature`] restricted to definite clauses.
pub fn single_clause_signature(
    c: &Clause,
    rates: &LearningRates,
    n_atoms: usize,
) -> Result<SynapseSet> {
    if !c.is_definite() {
        return Err(Error::NotDefinite);
    }
    clause_signature(c, rates, n_atoms)
}
