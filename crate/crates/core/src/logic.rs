//! Propositional Horn clauses over a named atom table.
//!
//! Atom indices double as neuron indices: atom `i` of a program is neuron `i`
//! of the network compiled from it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::synapse::Representation;
use crate::{Error, Result};

/// Default guard for [`enumerate_models`].
pub const DEFAULT_MAX_ENUM_ATOMS: usize = 20;

/// Returns true if `name` is a valid atom identifier:
/// a letter or underscore followed by letters, digits or underscores.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Ordered, duplicate-free list of atom names. Position is the atom index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = Self::new();
        for name in names {
            table.insert(name.as_ref())?;
        }
        Ok(table)
    }

    /// Appends a new atom; fails if the name is taken or malformed.
    pub fn insert(&mut self, name: &str) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateAtomName(name.to_string()));
        }
        self.intern(name)
    }

    /// Returns the index of `name`, registering it if it is new.
    pub fn intern(&mut self, name: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        if !is_identifier(name) {
            return Err(Error::InvalidAtomName(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn name(&self, i: usize) -> Option<&str> {
        self.names.get(i).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub(crate) fn check(&self, i: usize) -> Result<()> {
        check_index(i, self.len())
    }
}

pub(crate) fn check_index(index: usize, n_atoms: usize) -> Result<()> {
    if index < n_atoms {
        Ok(())
    } else {
        Err(Error::AtomOutOfRange { index, n_atoms })
    }
}

/// A Horn clause `head <- body`.
///
/// The body is kept strictly ascending. A clause without a head is a denial,
/// a clause without a body is a fact; at least one literal is required.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    head: Option<usize>,
    body: Vec<usize>,
}

impl Clause {
    pub fn new(head: Option<usize>, body: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut body: Vec<usize> = body.into_iter().collect();
        body.sort_unstable();
        if let Some(w) = body.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateBodyAtom(w[0]));
        }
        if let Some(h) = head {
            if body.binary_search(&h).is_ok() {
                return Err(Error::HeadInBody(h));
            }
        }
        if head.is_none() && body.is_empty() {
            return Err(Error::EmptyClause);
        }
        Ok(Self { head, body })
    }

    pub fn fact(head: usize) -> Self {
        Self {
            head: Some(head),
            body: Vec::new(),
        }
    }

    pub fn rule(head: usize, body: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(Some(head), body)
    }

    pub fn denial(body: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(None, body)
    }

    pub fn head(&self) -> Option<usize> {
        self.head
    }

    pub fn body(&self) -> &[usize] {
        &self.body
    }

    pub fn is_definite(&self) -> bool {
        self.head.is_some()
    }

    /// Number of literals: body size plus one for the head.
    pub fn literal_count(&self) -> usize {
        self.body.len() + usize::from(self.head.is_some())
    }

    /// All atoms of the clause in ascending order.
    pub fn atoms(&self) -> Vec<usize> {
        let mut atoms = self.body.clone();
        if let Some(h) = self.head {
            let pos = atoms.partition_point(|&b| b < h);
            atoms.insert(pos, h);
        }
        atoms
    }

    pub fn max_atom(&self) -> usize {
        let body_max = self.body.last().copied().unwrap_or(0);
        self.head.map_or(body_max, |h| h.max(body_max))
    }

    /// The truth value of the clause: head true or some body atom false.
    pub fn holds(&self, x: &Interpretation) -> Result<bool> {
        check_index(self.max_atom(), x.len())?;
        Ok(self.holds_unchecked(x))
    }

    fn holds_unchecked(&self, x: &Interpretation) -> bool {
        self.head.is_some_and(|h| x.get(h)) || self.body.iter().any(|&b| !x.get(b))
    }

    /// The unique assignment of the clause's own atoms that violates it:
    /// head false, every body atom true. Returned as `(atom, value)` pairs
    /// in ascending atom order.
    pub fn violating_assignment(&self) -> Vec<(usize, bool)> {
        self.atoms()
            .into_iter()
            .map(|a| (a, Some(a) != self.head))
            .collect()
    }
}

/// See [`Clause::holds`].
pub fn evaluate_clause(c: &Clause, x: &Interpretation) -> Result<bool> {
    c.holds(x)
}

/// A Horn-clause program. Duplicate clauses are kept and count separately.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    atoms: AtomTable,
    clauses: Vec<Clause>,
}

impl Program {
    pub fn new(atoms: AtomTable, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            atoms.check(c.max_atom())?;
        }
        Ok(Self { atoms, clauses })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// A program over `atoms` with no clauses yet.
    pub fn with_atoms(atoms: AtomTable) -> Self {
        Self {
            atoms,
            clauses: Vec::new(),
        }
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn atoms_mut(&mut self) -> &mut AtomTable {
        &mut self.atoms
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn push(&mut self, clause: Clause) -> Result<()> {
        self.atoms.check(clause.max_atom())?;
        self.clauses.push(clause);
        Ok(())
    }

    /// Adds `head <- body`, registering unknown atom names on the way.
    pub fn add_rule(&mut self, head: &str, body: &[&str]) -> Result<()> {
        let head = self.atoms.intern(head)?;
        let body = self.intern_all(body)?;
        self.push(Clause::rule(head, body)?)
    }

    pub fn add_fact(&mut self, head: &str) -> Result<()> {
        let head = self.atoms.intern(head)?;
        self.push(Clause::fact(head))
    }

    pub fn add_denial(&mut self, body: &[&str]) -> Result<()> {
        let body = self.intern_all(body)?;
        self.push(Clause::denial(body)?)
    }

    fn intern_all(&mut self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.atoms.intern(n)).collect()
    }

    /// Concatenation of two programs over the same atom table.
    pub fn union(&self, other: &Program) -> Result<Program> {
        if self.atoms != other.atoms {
            return Err(Error::InvalidConfig("programs have different atom tables"));
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Ok(Self {
            atoms: self.atoms.clone(),
            clauses,
        })
    }
}

/// One truth value per atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    values: Vec<bool>,
}

impl Interpretation {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn all(n_atoms: usize, value: bool) -> Self {
        Self::new(alloc::vec![value; n_atoms])
    }

    /// Atom `i` takes bit `i` of `bits` (atom 0 least significant).
    pub fn from_bits(n_atoms: usize, bits: u64) -> Self {
        debug_assert!(n_atoms <= 64);
        Self::new((0..n_atoms).map(|i| (bits >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.values[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.values[i] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// `V_i` in {0, 1}.
    pub fn binary(&self, i: usize) -> f64 {
        Representation::Binary.value(self.values[i])
    }

    /// `s_i = 2 V_i - 1` in {-1, +1}.
    pub fn bipolar(&self, i: usize) -> f64 {
        Representation::Bipolar.value(self.values[i])
    }

    pub fn numeric(&self, i: usize, r: Representation) -> f64 {
        r.value(self.values[i])
    }

    pub fn to_numeric(&self, r: Representation) -> Vec<f64> {
        self.values.iter().map(|&v| r.value(v)).collect()
    }
}

/// Binary counting order with atom 0 least significant.
impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values
            .len()
            .cmp(&other.values.len())
            .then_with(|| self.values.iter().rev().cmp(other.values.iter().rev()))
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_cover(p: &Program, x: &Interpretation) -> Result<()> {
    if x.len() != p.n_atoms() {
        return Err(Error::LengthMismatch {
            expected: p.n_atoms(),
            found: x.len(),
        });
    }
    Ok(())
}

/// Number of clauses of `p` violated by `x`.
pub fn cost(p: &Program, x: &Interpretation) -> Result<usize> {
    check_cover(p, x)?;
    Ok(p.clauses.iter().filter(|c| !c.holds_unchecked(x)).count())
}

pub fn is_model(p: &Program, x: &Interpretation) -> Result<bool> {
    Ok(cost(p, x)? == 0)
}

/// All `2^N` interpretations over `n_atoms` atoms in binary counting order.
pub fn all_interpretations(
    n_atoms: usize,
    max_atoms: usize,
) -> Result<impl Iterator<Item = Interpretation>> {
    let limit = max_atoms.min(63);
    if n_atoms > limit {
        return Err(Error::Capacity {
            what: "exhaustive enumeration",
            n: n_atoms,
            limit,
        });
    }
    Ok((0..1u64 << n_atoms).map(move |bits| Interpretation::from_bits(n_atoms, bits)))
}

/// Every model of `p` in ascending binary order.
pub fn enumerate_models(p: &Program, max_atoms: usize) -> Result<Vec<Interpretation>> {
    Ok(all_interpretations(p.n_atoms(), max_atoms)?
        .filter(|x| p.clauses.iter().all(|c| c.holds_unchecked(x)))
        .collect())
}
