//! Asynchronous relaxation and random-restart model search.
//!
//! Each neuron takes the sign of its local field (the step function for
//! binary neurons); a zero field keeps the current state. A sweep visits the
//! neurons in a fresh seeded permutation and updates take effect at once.
//! Since a flip only happens when the new value agrees in sign with `h_i`,
//! every flip changes the energy by `-(x_new - x_old) * h_i < 0`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{cost, Interpretation, Program};
use crate::synapse::{Key, Representation, SynapseSet};
use crate::translate::compile;
use crate::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelaxConfig {
    pub max_sweeps: usize,
    pub seed: u64,
    pub representation: Representation,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
            seed: 0,
            representation: Representation::Bipolar,
        }
    }
}

impl RelaxConfig {
    pub fn new(representation: Representation, seed: u64) -> Self {
        Self {
            representation,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_sweeps == 0 {
            return Err(Error::InvalidConfig("max_sweeps must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxResult {
    pub final_state: Interpretation,
    /// A full sweep finished without any flip.
    pub stable: bool,
    pub sweeps_used: usize,
    /// Total energy (offset included) of the starting state.
    pub initial_energy: f64,
    /// Total energy after each flip, in flip order.
    pub energy_trace: Vec<f64>,
}

impl RelaxResult {
    pub fn final_energy(&self) -> f64 {
        self.energy_trace
            .last()
            .copied()
            .unwrap_or(self.initial_energy)
    }
}

/// Per-neuron adjacency lists for fast local-field evaluation.
struct FieldIndex {
    bias: Vec<f64>,
    pairs: Vec<Vec<(usize, f64)>>,
    triples: Vec<Vec<(usize, usize, f64)>>,
}

impl FieldIndex {
    fn new(s: &SynapseSet) -> Self {
        let n = s.n_atoms();
        let mut index = Self {
            bias: alloc::vec![0.0; n],
            pairs: alloc::vec![Vec::new(); n],
            triples: alloc::vec![Vec::new(); n],
        };
        for (key, t) in s.entries() {
            match key {
                Key::One(i) => index.bias[i] = t,
                Key::Two(i, j) => {
                    index.pairs[i].push((j, t));
                    index.pairs[j].push((i, t));
                }
                Key::Three(i, j, k) => {
                    let w = 2.0 * t;
                    index.triples[i].push((j, k, w));
                    index.triples[j].push((i, k, w));
                    index.triples[k].push((i, j, w));
                }
            }
        }
        index
    }

    fn field(&self, x: &[f64], i: usize) -> f64 {
        let cubic: f64 = self.triples[i].iter().map(|&(j, k, w)| w * x[j] * x[k]).sum();
        let quadratic: f64 = self.pairs[i].iter().map(|&(j, t)| t * x[j]).sum();
        cubic + quadratic + self.bias[i]
    }
}

/// The update rule for one neuron: `Some(new truth value)`, or `None` on a
/// zero field.
fn update(h: f64) -> Option<bool> {
    if h > 0.0 {
        Some(true)
    } else if h < 0.0 {
        Some(false)
    } else {
        None
    }
}

fn check_len(s: &SynapseSet, x: &Interpretation) -> Result<()> {
    if x.len() != s.n_atoms() {
        return Err(Error::LengthMismatch {
            expected: s.n_atoms(),
            found: x.len(),
        });
    }
    Ok(())
}

/// Runs asynchronous sweeps from `x0` until a sweep makes no flip or
/// `max_sweeps` is reached. Deterministic in `(s, x0, cfg)`.
pub fn relax(s: &SynapseSet, x0: &Interpretation, cfg: &RelaxConfig) -> Result<RelaxResult> {
    cfg.validate()?;
    check_len(s, x0)?;
    let r = cfg.representation;
    let index = FieldIndex::new(s);
    let mut state = x0.clone();
    let mut x = x0.to_numeric(r);
    let initial_energy = s.energy_numeric(&x) + s.offset();
    let mut energy = initial_energy;
    let mut energy_trace = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..s.n_atoms()).collect();
    let mut stable = false;
    let mut sweeps_used = 0;

    while sweeps_used < cfg.max_sweeps {
        sweeps_used += 1;
        order.shuffle(&mut rng);
        let mut flipped = false;
        for &i in &order {
            let h = index.field(&x, i);
            let Some(next) = update(h) else { continue };
            if next == state.get(i) {
                continue;
            }
            let value = r.value(next);
            energy -= (value - x[i]) * h;
            x[i] = value;
            state.set(i, next);
            energy_trace.push(energy);
            flipped = true;
        }
        if !flipped {
            stable = true;
            break;
        }
    }

    Ok(RelaxResult {
        final_state: state,
        stable,
        sweeps_used,
        initial_energy,
        energy_trace,
    })
}

/// True if the update rule leaves every neuron of `x` unchanged.
pub fn is_fixed_point(s: &SynapseSet, x: &Interpretation, r: Representation) -> Result<bool> {
    check_len(s, x)?;
    let index = FieldIndex::new(s);
    let numeric = x.to_numeric(r);
    Ok((0..s.n_atoms()).all(|i| update(index.field(&numeric, i)).is_none_or(|v| v == x.get(i))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub representation: Representation,
    pub restarts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            representation: Representation::Bipolar,
            restarts: 64,
            seed: 0,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub restarts: usize,
    /// Restarts whose relaxed state is a model.
    pub successes: usize,
    /// Restarts that ended on a stable state.
    pub stable: usize,
    pub distinct_models: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Distinct models found, in binary counting order.
    pub models: Vec<Interpretation>,
    pub stats: SolveStats,
}

/// One restart: random start state and relaxation seed, both drawn from a
/// ChaCha stream selected by the restart index.
pub fn restart(
    s: &SynapseSet,
    cfg: &SolveConfig,
    restart_index: usize,
) -> Result<RelaxResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart_index as u64);
    let x0 = Interpretation::new((0..s.n_atoms()).map(|_| rng.random::<bool>()).collect());
    let relax_cfg = RelaxConfig {
        max_sweeps: cfg.max_sweeps,
        seed: rng.random(),
        representation: cfg.representation,
    };
    relax(s, &x0, &relax_cfg)
}

/// Searches for models of `p` by relaxing the compiled network from random
/// states. Every returned interpretation is checked clause by clause.
pub fn solve(p: &Program, cfg: &SolveConfig) -> Result<SolveOutcome> {
    let s = compile(p, cfg.representation)?;
    let mut found = BTreeSet::new();
    let mut stats = SolveStats {
        restarts: cfg.restarts,
        ..SolveStats::default()
    };
    for k in 0..cfg.restarts {
        let result = restart(&s, cfg, k)?;
        if result.stable {
            stats.stable += 1;
        }
        if cost(p, &result.final_state)? == 0 {
            stats.successes += 1;
            found.insert(result.final_state);
        }
    }
    stats.distinct_models = found.len();
    Ok(SolveOutcome {
        models: found.into_iter().collect(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::all_interpretations;

    fn p1() -> Program {
        let mut p = Program::empty();
        p.add_rule("A", &["B", "C"]).unwrap();
        p.add_rule("D", &["B"]).unwrap();
        p.add_fact("C").unwrap();
        p
    }

    #[test]
    fn zero_synapses_are_stable_immediately() {
        let s = SynapseSet::new(5);
        for bits in [0u64, 7, 31] {
            let x0 = Interpretation::from_bits(5, bits);
            let res = relax(&s, &x0, &RelaxConfig::new(Representation::Binary, 3)).unwrap();
            assert!(res.stable);
            assert_eq!(res.sweeps_used, 1);
            assert_eq!(res.final_state, x0);
            assert!(res.energy_trace.is_empty());
        }
    }

    #[test]
    fn positive_bias_drives_all_true() {
        let n = 6;
        let mut s = SynapseSet::new(n);
        for i in 0..n {
            s.set(&[i], 1.0).unwrap();
        }
        let x0 = Interpretation::all(n, false);
        let res = relax(&s, &x0, &RelaxConfig::new(Representation::Bipolar, 11)).unwrap();
        assert!(res.stable);
        assert_eq!(res.final_state, Interpretation::all(n, true));
        assert_eq!(res.initial_energy, 6.0);
        assert_eq!(res.energy_trace.len(), n);
        let mut prev = res.initial_energy;
        for &e in &res.energy_trace {
            assert_eq!(prev - e, 2.0);
            prev = e;
        }
        assert_eq!(res.final_energy(), -6.0);
    }

    /// Relaxing P1 from all 16 starts with 32 seeds each ends in a model,
    /// except for one spurious attractor: A=F, B=T, C=F, D=T violates only
    /// `C <-.`, and turning C on would violate `A <- B, C.` instead, so
    /// `h_C = 0` and no single flip lowers the energy.
    #[test]
    fn p1_relaxation_end_states() {
        let p = p1();
        let spurious = Interpretation::new(alloc::vec![false, true, false, true]);
        for r in [Representation::Binary, Representation::Bipolar] {
            let s = compile(&p, r).unwrap();
            let mut spurious_hits = 0;
            for x0 in all_interpretations(4, 4).unwrap() {
                for seed in 0..32 {
                    let res = relax(&s, &x0, &RelaxConfig::new(r, seed)).unwrap();
                    assert!(res.stable);
                    if cost(&p, &res.final_state).unwrap() != 0 {
                        assert_eq!(res.final_state, spurious, "{r} start {x0:?} seed {seed}");
                        spurious_hits += 1;
                    }
                }
            }
            assert!(spurious_hits > 0);

            assert!(is_fixed_point(&s, &spurious, r).unwrap());
            let e = s.energy_total(&spurious, r).unwrap();
            assert_eq!(e, 1.0);
            for i in 0..4 {
                let mut y = spurious.clone();
                y.set(i, !y.get(i));
                assert!(s.energy_total(&y, r).unwrap() >= e);
            }
        }
    }

    #[test]
    fn relax_is_deterministic() {
        let s = compile(&p1(), Representation::Binary).unwrap();
        let x0 = Interpretation::from_bits(4, 0b0110);
        let cfg = RelaxConfig::new(Representation::Binary, 99);
        assert_eq!(relax(&s, &x0, &cfg).unwrap(), relax(&s, &x0, &cfg).unwrap());
    }

    #[test]
    fn relax_rejects_bad_input() {
        let s = SynapseSet::new(3);
        let cfg = RelaxConfig {
            max_sweeps: 0,
            ..RelaxConfig::default()
        };
        assert!(matches!(
            relax(&s, &Interpretation::all(3, true), &cfg),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            relax(&s, &Interpretation::all(2, true), &RelaxConfig::default()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let mut unsat = Program::empty();
        unsat.add_fact("A").unwrap();
        unsat.add_denial(&["A"]).unwrap();
        let out = solve(&unsat, &SolveConfig::default()).unwrap();
        assert!(out.models.is_empty());
        assert_eq!(out.stats.successes, 0);

        let mut fact = Program::empty();
        fact.add_fact("D").unwrap();
        let out = solve(&fact, &SolveConfig::default()).unwrap();
        assert_eq!(out.models, alloc::vec![Interpretation::all(1, true)]);
    }

    #[test]
    fn solve_p1_finds_only_oracle_models() {
        let p = p1();
        let oracle = crate::logic::enumerate_models(&p, 20).unwrap();
        for r in [Representation::Binary, Representation::Bipolar] {
            let cfg = SolveConfig {
                representation: r,
                restarts: 64,
                ..SolveConfig::default()
            };
            let out = solve(&p, &cfg).unwrap();
            assert!(!out.models.is_empty());
            for m in &out.models {
                assert!(oracle.contains(m));
            }
            assert_eq!(out.stats.distinct_models, out.models.len());
        }
    }
}
