//! Compiling Horn-clause programs into synapses.
//!
//! Each clause gets a cost polynomial that is 1 on the clause's violating
//! assignment and 0 elsewhere:
//!
//! * binary: `(1 - V_head) * prod_b V_b`
//! * bipolar: `2^-L * (1 - S_head) * prod_b (1 + S_b)` for `L` literals
//!
//! (a missing head drops its factor). Summing over clauses gives the number
//! of violated clauses. Expanding the sum and matching coefficients against
//! the energy convention of [`crate::synapse`] gives the synapses:
//!
//! | monomial          | synapse update     |
//! |-------------------|--------------------|
//! | `c x_i x_j x_k`   | `T_ijk += -c / 2`  |
//! | `c x_i x_j`       | `T_ij  += -c`      |
//! | `c x_i`           | `T_i   += -c`      |
//! | `c`               | `E_0   += c`       |
//!
//! The `1/2` in the cubic row is the inverse of the energy factor 2 that folds
//! six permuted `-1/3 T_ijk` terms onto one stored entry.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::logic::{Clause, Interpretation, Program};
use crate::synapse::{Key, Representation, SynapseSet};
use crate::{Error, Result};

/// Highest connection order the network supports.
pub const MAX_ORDER: usize = 3;

/// Multilinear polynomial of degree at most 3 with sparse coefficients.
///
/// Keys are ascending atom subsets; the empty subset is the constant term.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<usize>, f64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn coefficient(&self, subset: &[usize]) -> f64 {
        self.terms.get(subset).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, subset: Vec<usize>, c: f64) {
        let v = self.coefficient(&subset) + c;
        if v == 0.0 {
            self.terms.remove(&subset);
        } else {
            self.terms.insert(subset, v);
        }
    }

    pub fn add(&mut self, other: &Polynomial) {
        for (k, v) in other.terms() {
            self.add_term(k.to_vec(), v);
        }
    }

    /// Multiplies by `(a + b * x_atom)`. `atom` must not occur in any term.
    fn mul_linear(&self, atom: usize, a: f64, b: f64) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, &v) in &self.terms {
            debug_assert!(!k.contains(&atom));
            out.add_term(k.clone(), a * v);
            let mut with = k.clone();
            let pos = with.partition_point(|&i| i < atom);
            with.insert(pos, atom);
            out.add_term(with, b * v);
        }
        out
    }

    pub fn evaluate(&self, x: &Interpretation, r: Representation) -> f64 {
        self.terms
            .iter()
            .map(|(k, &c)| c * k.iter().map(|&i| x.numeric(i, r)).product::<f64>())
            .sum()
    }

    /// Adds the coefficient-matched synapses of this polynomial to `s`.
    pub fn accumulate_into(&self, s: &mut SynapseSet) -> Result<()> {
        for (k, c) in self.terms() {
            match k.len() {
                0 => s.add_offset(c),
                1 | 2 => s.add_key(Key::new(k)?, -c)?,
                3 => s.add_key(Key::new(k)?, -c / 2.0)?,
                n => return Err(Error::UnsupportedOrder { literals: n }),
            }
        }
        Ok(())
    }
}

/// Cost polynomial of a single clause: 1 when violated, 0 when satisfied.
pub fn clause_cost(c: &Clause, r: Representation) -> Result<Polynomial> {
    let literals = c.literal_count();
    if literals > MAX_ORDER {
        return Err(Error::UnsupportedOrder { literals });
    }
    let mut p = match r {
        Representation::Binary => Polynomial::constant(1.0),
        Representation::Bipolar => Polynomial::constant(1.0 / f64::from(1u32 << literals)),
    };
    if let Some(h) = c.head() {
        p = p.mul_linear(h, 1.0, -1.0);
    }
    for &b in c.body() {
        p = match r {
            Representation::Binary => p.mul_linear(b, 0.0, 1.0),
            Representation::Bipolar => p.mul_linear(b, 1.0, 1.0),
        };
    }
    Ok(p)
}

/// Sum of the clause cost polynomials of a program.
pub fn program_cost(p: &Program, r: Representation) -> Result<Polynomial> {
    let mut total = Polynomial::zero();
    for c in p.clauses() {
        total.add(&clause_cost(c, r)?);
    }
    Ok(total)
}

/// Synapses whose total energy equals the number of violated clauses.
pub fn compile(p: &Program, r: Representation) -> Result<SynapseSet> {
    let mut s = SynapseSet::new(p.n_atoms());
    for c in p.clauses() {
        clause_cost(c, r)?.accumulate_into(&mut s)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{all_interpretations, cost};
    use alloc::vec;

    fn p1() -> Program {
        let mut p = Program::empty();
        p.add_rule("A", &["B", "C"]).unwrap();
        p.add_rule("D", &["B"]).unwrap();
        p.add_fact("C").unwrap();
        p
    }

    #[test]
    fn bipolar_two_literal_cost() {
        // C <- D with C = 0, D = 1: 1/4 (1 - S_C)(1 + S_D)
        let c = Clause::rule(0, [1]).unwrap();
        let p = clause_cost(&c, Representation::Bipolar).unwrap();
        assert_eq!(p.coefficient(&[]), 0.25);
        assert_eq!(p.coefficient(&[0]), -0.25);
        assert_eq!(p.coefficient(&[1]), 0.25);
        assert_eq!(p.coefficient(&[0, 1]), -0.25);
        assert_eq!(p.terms().count(), 4);
    }

    #[test]
    fn binary_three_literal_cost() {
        let c = Clause::rule(0, [1, 2]).unwrap();
        let p = clause_cost(&c, Representation::Binary).unwrap();
        assert_eq!(p.coefficient(&[1, 2]), 1.0);
        assert_eq!(p.coefficient(&[0, 1, 2]), -1.0);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn fact_and_denial_costs() {
        let p = clause_cost(&Clause::fact(0), Representation::Binary).unwrap();
        assert_eq!(p.coefficient(&[]), 1.0);
        assert_eq!(p.coefficient(&[0]), -1.0);
        assert_eq!(p.terms().count(), 2);

        let d = Clause::denial([0, 1]).unwrap();
        let p = clause_cost(&d, Representation::Binary).unwrap();
        assert_eq!(p.coefficient(&[0, 1]), 1.0);
        assert_eq!(p.terms().count(), 1);
        let p = clause_cost(&d, Representation::Bipolar).unwrap();
        for k in [&[][..], &[0], &[1], &[0, 1]] {
            assert_eq!(p.coefficient(k), 0.25);
        }
    }

    #[test]
    fn four_literals_rejected() {
        let c = Clause::rule(0, [1, 2, 3]).unwrap();
        assert_eq!(
            clause_cost(&c, Representation::Binary),
            Err(Error::UnsupportedOrder { literals: 4 })
        );
        let mut p = Program::empty();
        p.add_rule("A", &["B", "C", "D"]).unwrap();
        assert!(compile(&p, Representation::Bipolar).is_err());
    }

    #[test]
    fn clause_cost_is_an_indicator() {
        let clauses = [
            Clause::fact(1),
            Clause::rule(2, [0]).unwrap(),
            Clause::rule(0, [1, 2]).unwrap(),
            Clause::denial([0, 2]).unwrap(),
            Clause::denial([0, 1, 2]).unwrap(),
        ];
        for c in &clauses {
            for r in [Representation::Binary, Representation::Bipolar] {
                let p = clause_cost(c, r).unwrap();
                for x in all_interpretations(3, 3).unwrap() {
                    let expected = if c.holds(&x).unwrap() { 0.0 } else { 1.0 };
                    assert_eq!(p.evaluate(&x, r), expected);
                }
            }
        }
    }

    #[test]
    fn compile_p1_binary() {
        let s = compile(&p1(), Representation::Binary).unwrap();
        // atoms A=0, B=1, C=2, D=3
        let mut expected = SynapseSet::new(4);
        expected.set(&[0, 1, 2], 0.5).unwrap();
        expected.set(&[1, 2], -1.0).unwrap();
        expected.set(&[1, 3], 1.0).unwrap();
        expected.set(&[1], -1.0).unwrap();
        expected.set(&[2], 1.0).unwrap();
        expected.set_offset(1.0);
        assert_eq!(s, expected);
    }

    #[test]
    fn compile_p1_energy_examples() {
        let s = compile(&p1(), Representation::Binary).unwrap();
        let r = Representation::Binary;
        let all_true = Interpretation::all(4, true);
        assert_eq!(s.energy(&all_true, r).unwrap(), -1.0);
        assert_eq!(s.energy_total(&all_true, r).unwrap(), 0.0);
        let all_false = Interpretation::all(4, false);
        assert_eq!(s.energy(&all_false, r).unwrap(), 0.0);
        assert_eq!(s.energy_total(&all_false, r).unwrap(), 1.0);
        let x = Interpretation::new(vec![false, true, true, false]);
        assert_eq!(s.energy_total(&x, r).unwrap(), 2.0);
        // only T_C survives when every V is 0
        assert_eq!(s.local_field(&all_false, r, 2).unwrap(), 1.0);
    }

    #[test]
    fn compile_three_literal_bipolar() {
        let mut p = Program::empty();
        p.add_rule("A", &["B", "C"]).unwrap();
        let s = compile(&p, Representation::Bipolar).unwrap();
        let mut expected = SynapseSet::new(3);
        expected.set(&[0, 1, 2], 1.0 / 16.0).unwrap();
        expected.set(&[0, 1], 0.125).unwrap();
        expected.set(&[0, 2], 0.125).unwrap();
        expected.set(&[1, 2], -0.125).unwrap();
        expected.set(&[0], 0.125).unwrap();
        expected.set(&[1], -0.125).unwrap();
        expected.set(&[2], -0.125).unwrap();
        expected.set_offset(0.125);
        assert_eq!(s, expected);
    }

    #[test]
    fn compile_two_literal_bipolar() {
        let mut p = Program::empty();
        p.add_rule("C", &["D"]).unwrap();
        let s = compile(&p, Representation::Bipolar).unwrap();
        let mut expected = SynapseSet::new(2);
        expected.set(&[0, 1], 0.25).unwrap();
        expected.set(&[0], 0.25).unwrap();
        expected.set(&[1], -0.25).unwrap();
        expected.set_offset(0.25);
        assert_eq!(s, expected);
    }

    #[test]
    fn energy_total_counts_violations_p1() {
        let p = p1();
        for r in [Representation::Binary, Representation::Bipolar] {
            let s = compile(&p, r).unwrap();
            for x in all_interpretations(4, 4).unwrap() {
                let e = s.energy_total(&x, r).unwrap();
                assert_eq!(e, cost(&p, &x).unwrap() as f64);
            }
        }
    }
}
