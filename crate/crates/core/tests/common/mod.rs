#![allow(dead_code)]

use logicmine_core::logic::{AtomTable, Clause, Interpretation, Program};
use logicmine_core::SynapseSet;
use proptest::prelude::*;

pub fn atoms(n: usize) -> AtomTable {
    AtomTable::from_names((0..n).map(|i| format!("x{i}"))).unwrap()
}

/// A clause with 1 to `max_literals` distinct atoms below `n`; the head is
/// drawn among them or omitted when `allow_denials`.
pub fn arb_clause(n: usize, max_literals: usize, allow_denials: bool) -> BoxedStrategy<Clause> {
    let max_l = max_literals.min(n);
    (1..=max_l)
        .prop_flat_map(move |l| {
            (
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), l),
                0..l + usize::from(allow_denials),
            )
        })
        .prop_map(|(atoms, head_pos)| {
            let head = atoms.get(head_pos).copied();
            let body = atoms.into_iter().filter(|&a| Some(a) != head);
            Clause::new(head, body).unwrap()
        })
        .boxed()
}

pub fn arb_program(max_atoms: usize, max_clauses: usize) -> impl Strategy<Value = Program> {
    (1..=max_atoms).prop_flat_map(move |n| {
        proptest::collection::vec(arb_clause(n, 3, true), 0..=max_clauses)
            .prop_map(move |clauses| Program::new(atoms(n), clauses).unwrap())
    })
}

/// Random symmetric zero-diagonal synapses with entries in [-2, 2].
pub fn arb_synapses(min_atoms: usize, max_atoms: usize) -> impl Strategy<Value = SynapseSet> {
    (min_atoms..=max_atoms).prop_flat_map(|n| {
        let entry = (proptest::collection::vec(0..n, 1..=3), -2.0f64..2.0);
        (proptest::collection::vec(entry, 0..40), -1.0f64..1.0).prop_map(move |(es, offset)| {
            let mut s = SynapseSet::new(n);
            for (idx, v) in es {
                // diagonal draws are simply skipped
                let _ = s.add(&idx, v);
            }
            s.set_offset(offset);
            s
        })
    })
}

/// Every definite clause with at most 3 literals over atoms `0..n`.
pub fn all_definite_clauses(n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for h in 0..n {
        out.push(Clause::fact(h));
        for b in 0..n {
            if b != h {
                out.push(Clause::rule(h, [b]).unwrap());
            }
        }
        for b in 0..n {
            for c in b + 1..n {
                if b != h && c != h {
                    out.push(Clause::rule(h, [b, c]).unwrap());
                }
            }
        }
    }
    out
}

pub fn bits_of(x: &Interpretation) -> u64 {
    x.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| u64::from(v) << i)
        .sum()
}
