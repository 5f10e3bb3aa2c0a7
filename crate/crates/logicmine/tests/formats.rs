use logicmine::events_csv::{read_events, write_events};
use logicmine::program_text::{parse_program, print_program};
use logicmine::rules_text::{read_rules, write_rules, RulesFile};
use logicmine::synapse_text::{read_synapses, write_synapses};
use logicmine_core::hebb::EventTable;
use logicmine_core::logic::{AtomTable, Clause, Program};
use logicmine_core::mine::{MinedRule, ResidualReport};
use logicmine_core::{Key, SynapseSet};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn names(n: usize) -> Vec<String> {
    // mixed case and underscores to exercise the identifier grammar
    (0..n).map(|i| format!("{}_{i}", ["a", "Bq", "x9", "Zz"][i % 4])).collect()
}

fn arb_clause(n: usize) -> impl Strategy<Value = Clause> {
    (subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(3)), any::<bool>(), any::<prop::sample::Index>()).prop_map(
        |(atoms, denial, pick)| {
            if denial {
                Clause::denial(atoms).unwrap()
            } else {
                let head = atoms[pick.index(atoms.len())];
                Clause::rule(head, atoms.into_iter().filter(|&a| a != head)).unwrap()
            }
        },
    )
}

fn arb_finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        (-8i32..8).prop_map(|k| f64::from(k) / 4.0),
        Just(f64::MIN_POSITIVE),
        Just(-0.1),
    ]
}

fn arb_synapses() -> impl Strategy<Value = SynapseSet> {
    (1usize..7).prop_flat_map(|n| {
        let keys = prop::collection::vec(subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(3)), 0..12);
        (keys, prop::collection::vec(arb_finite(), 12), arb_finite()).prop_map(move |(keys, values, offset)| {
            let mut s = SynapseSet::new(n);
            for (k, v) in keys.iter().zip(values) {
                s.set(k, v).unwrap();
            }
            s.set_offset(offset);
            s
        })
    })
}

fn arb_rule(n: usize) -> impl Strategy<Value = MinedRule> {
    (
        arb_clause(n),
        arb_finite(),
        1u8..=3,
        any::<bool>(),
        prop::option::of(0usize..1000),
        prop::option::of(0.0f64..=1.0),
    )
        .prop_map(|(clause, weight, pass, ambiguous_head, support, confidence)| MinedRule {
            clause,
            weight,
            pass,
            ambiguous_head,
            support,
            confidence,
        })
}

proptest! {
    #[test]
    fn programs_round_trip(clauses in (1usize..9).prop_flat_map(|n| prop::collection::vec(arb_clause(n), 0..8).prop_map(move |c| (n, c)))) {
        let (n, clauses) = clauses;
        // atoms must be registered in first-appearance order for the text to reproduce them
        let mut order: Vec<usize> = Vec::new();
        for c in &clauses {
            for a in c.head().into_iter().chain(c.body().iter().copied()) {
                if !order.contains(&a) {
                    order.push(a);
                }
            }
        }
        let all = names(n);
        let atoms = AtomTable::from_names(order.iter().map(|&a| all[a].as_str())).unwrap();
        let remap = |a: usize| order.iter().position(|&o| o == a).unwrap();
        let clauses = clauses
            .iter()
            .map(|c| Clause::new(c.head().map(remap), c.body().iter().map(|&b| remap(b))).unwrap())
            .collect();
        let p = Program::new(atoms, clauses).unwrap();
        let text = print_program(&p);
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_program(&back), text);
    }

    #[test]
    fn synapses_round_trip_bit_exactly(s in arb_synapses()) {
        let atoms = AtomTable::from_names(names(s.n_atoms())).unwrap();
        let text = write_synapses(&atoms, &s);
        let (atoms_back, back) = read_synapses(&text).unwrap();
        prop_assert_eq!(atoms_back, atoms);
        prop_assert_eq!(back.offset().to_bits(), s.offset().to_bits());
        let bits = |s: &SynapseSet| s.entries().map(|(k, v)| (k, v.to_bits())).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back), bits(&s));
    }

    #[test]
    fn events_round_trip(n in 1usize..10, rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 10), 1..20)) {
        let ev = EventTable::new(
            AtomTable::from_names(names(n)).unwrap(),
            rows.into_iter().map(|r| r[..n].to_vec()).collect(),
        ).unwrap();
        let mut buf = Vec::new();
        write_events(&mut buf, &ev).unwrap();
        prop_assert_eq!(read_events(buf.as_slice()).unwrap(), ev);
    }

    #[test]
    fn rules_round_trip(
        rules in prop::collection::vec(arb_rule(6), 0..8),
        dropped in prop::collection::vec(arb_rule(6), 0..3),
        residual in prop::collection::vec((subsequence((0..6).collect::<Vec<_>>(), 1..=3), arb_finite()), 0..5),
        l1 in prop::array::uniform3(0.0f64..100.0),
    ) {
        let atoms = AtomTable::from_names(names(6)).unwrap();
        let file = RulesFile {
            rules,
            dropped,
            residual: ResidualReport {
                entries: residual.into_iter().map(|(k, v)| (Key::new(&k).unwrap(), v)).collect(),
                l1_norm: l1,
            },
        };
        let text = write_rules(&atoms, &file);
        let back = read_rules(&atoms, &text).unwrap();
        prop_assert_eq!(write_rules(&atoms, &back), text);
        prop_assert_eq!(&back.residual, &file.residual);
        prop_assert_eq!(back.rules.len(), file.rules.len());
        for r in &back.rules {
            prop_assert!(file.rules.contains(r));
        }
    }
}
