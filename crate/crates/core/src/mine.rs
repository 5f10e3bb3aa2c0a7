//! Reverse analysis: reading Horn clauses back out of learned synapses.
//!
//! The analysis works on a copy of the synapses in three passes, from the
//! highest connection order down. In each pass, every connection at or above
//! the order's threshold `theta * a_o` becomes a clause over its atoms, with
//! weight `T / a_o`, and that many copies of the clause's signature (see
//! [`crate::hebb::clause_signature`]) are subtracted before moving on:
//!
//! 1. triples: the head is picked by the sign pattern of the surrounding
//!    pairs and singles ([`identify_head`]),
//! 2. pairs: the head is the member with the larger first-order strength,
//! 3. singles: facts.
//!
//! Within a pass, connections are taken in descending strength with ties
//! broken by key. Strongly negative connections are left in the residual
//! unless denial emission is switched on.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::hebb::{clause_signature, learn, EventTable, LearningRates};
use crate::logic::{check_index, Clause};
use crate::synapse::{Key, SynapseSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MineConfig {
    pub rates: LearningRates,
    /// Fraction of the per-order rate a connection must reach to count.
    pub theta: f64,
    /// Drop rules whose confidence on the events is below this.
    pub min_confidence: Option<f64>,
    pub emit_denials: bool,
}

impl Default for MineConfig {
    fn default() -> Self {
        Self {
            rates: LearningRates::default(),
            theta: 0.5,
            min_confidence: None,
            emit_denials: false,
        }
    }
}

impl MineConfig {
    pub fn validate(&self) -> Result<()> {
        self.rates.validate()?;
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return Err(Error::InvalidConfig("theta must lie in (0, 1]"));
        }
        if let Some(c) = self.min_confidence {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::InvalidConfig("min_confidence must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    /// Absolute threshold for connections of the given order.
    pub fn threshold(&self, order: usize) -> f64 {
        self.theta * self.rates.for_order(order)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinedRule {
    pub clause: Clause,
    /// Number of clean copies of the clause the connection strength implies.
    pub weight: f64,
    /// Connection order that produced the rule (3, 2 or 1).
    pub pass: u8,
    pub ambiguous_head: bool,
    pub support: Option<usize>,
    pub confidence: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResidualReport {
    /// Connections still at or above their threshold in magnitude.
    pub entries: Vec<(Key, f64)>,
    /// Sum of absolute leftover strengths for orders 1, 2 and 3, counting
    /// every remaining entry, not only the thresholded ones.
    pub l1_norm: [f64; 3],
}

impl ResidualReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadChoice {
    pub head: usize,
    /// How many of the six expected signs hold (0 to 6).
    pub score: u8,
    /// More than one candidate reached the best score.
    pub ambiguous: bool,
}

/// Picks the head of a triple from the current pair and single strengths.
///
/// For head `x` and body `{y, z}` a clean clause shows `T_xy > 0`,
/// `T_xz > 0`, `T_yz < 0`, `T_x > 0`, `T_y < 0` and `T_z < 0`. Each
/// candidate is scored by how many of these hold (zero never counts); the
/// best score wins and ties go to the lowest atom index.
pub fn identify_head(triple: [usize; 3], s: &SynapseSet) -> HeadChoice {
    let pair = |a: usize, b: usize| s.value(Key::new(&[a, b]).expect("distinct triple"));
    let single = |a: usize| s.value(Key::One(a));
    let mut best: Option<HeadChoice> = None;
    let mut sorted = triple;
    sorted.sort_unstable();
    for (pos, &x) in sorted.iter().enumerate() {
        let (y, z) = match pos {
            0 => (sorted[1], sorted[2]),
            1 => (sorted[0], sorted[2]),
            _ => (sorted[0], sorted[1]),
        };
        let score = [
            pair(x, y) > 0.0,
            pair(x, z) > 0.0,
            pair(y, z) < 0.0,
            single(x) > 0.0,
            single(y) < 0.0,
            single(z) < 0.0,
        ]
        .iter()
        .filter(|&&ok| ok)
        .count() as u8;
        best = match best {
            None => Some(HeadChoice {
                head: x,
                score,
                ambiguous: false,
            }),
            Some(b) if score > b.score => Some(HeadChoice {
                head: x,
                score,
                ambiguous: false,
            }),
            Some(b) if score == b.score => Some(HeadChoice {
                ambiguous: true,
                ..b
            }),
            keep => keep,
        };
    }
    best.expect("three candidates")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    /// Rules in emission order.
    pub rules: Vec<MinedRule>,
    pub residual: ResidualReport,
    /// The synapses after every emitted rule has been deflated.
    pub remaining: SynapseSet,
}

struct Analyzer<'a> {
    cfg: &'a MineConfig,
    work: SynapseSet,
    rules: Vec<MinedRule>,
}

impl Analyzer<'_> {
    /// Keys of `order` at or beyond the threshold with the given sign,
    /// strongest first, ties by key.
    fn candidates(&self, order: usize, positive: bool) -> Vec<Key> {
        let tau = self.cfg.threshold(order);
        let mut found: Vec<(Key, f64)> = self
            .work
            .entries_of_order(order)
            .filter(|&(_, v)| if positive { v >= tau } else { v <= -tau })
            .collect();
        found.sort_by(|a, b| {
            let by_strength = if positive {
                b.1.partial_cmp(&a.1)
            } else {
                a.1.partial_cmp(&b.1)
            };
            by_strength
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(&b.0))
        });
        found.into_iter().map(|(k, _)| k).collect()
    }

    /// Emits `clause` with weight `|T_anchor| / a_o` and removes that many
    /// signature copies. The anchor connection is consumed exactly.
    fn emit(&mut self, anchor: Key, clause: Clause, ambiguous_head: bool) -> Result<()> {
        let order = anchor.order();
        let weight = self.work.value(anchor).abs() / self.cfg.rates.for_order(order);
        let signature = clause_signature(&clause, &self.cfg.rates, self.work.n_atoms())?;
        self.work.add_scaled(&signature, -weight)?;
        self.work.set_key(anchor, 0.0)?;
        self.rules.push(MinedRule {
            clause,
            weight,
            pass: order as u8,
            ambiguous_head,
            support: None,
            confidence: None,
        });
        Ok(())
    }

    fn still_strong(&self, key: Key, positive: bool) -> bool {
        let tau = self.cfg.threshold(key.order());
        let v = self.work.value(key);
        if positive {
            v >= tau
        } else {
            v <= -tau
        }
    }

    fn pass(&mut self, order: usize) -> Result<()> {
        for key in self.candidates(order, true) {
            if !self.still_strong(key, true) {
                continue;
            }
            let (clause, ambiguous) = match key {
                Key::Three(a, b, c) => {
                    let choice = identify_head([a, b, c], &self.work);
                    let body = [a, b, c].into_iter().filter(|&i| i != choice.head);
                    (Clause::rule(choice.head, body)?, choice.ambiguous)
                }
                Key::Two(a, b) => {
                    let (ta, tb) = (self.work.value(Key::One(a)), self.work.value(Key::One(b)));
                    match ta.partial_cmp(&tb) {
                        Some(Ordering::Less) => (Clause::rule(b, [a])?, false),
                        Some(Ordering::Greater) => (Clause::rule(a, [b])?, false),
                        _ => (Clause::rule(a, [b])?, true),
                    }
                }
                Key::One(a) => (Clause::fact(a), false),
            };
            self.emit(key, clause, ambiguous)?;
        }
        if self.cfg.emit_denials {
            for key in self.candidates(order, false) {
                if self.still_strong(key, false) {
                    self.emit(key, Clause::denial(key.indices())?, false)?;
                }
            }
        }
        Ok(())
    }

    fn residual(&self) -> ResidualReport {
        let mut report = ResidualReport::default();
        for (key, v) in self.work.entries() {
            report.l1_norm[key.order() - 1] += v.abs();
            if v.abs() >= self.cfg.threshold(key.order()) {
                report.entries.push((key, v));
            }
        }
        report
    }
}

/// Extracts clauses from `s` by descending-order signature matching and
/// deflation.
pub fn reverse_analyze(s: &SynapseSet, cfg: &MineConfig) -> Result<Analysis> {
    cfg.validate()?;
    let mut analyzer = Analyzer {
        cfg,
        work: s.clone(),
        rules: Vec::new(),
    };
    for order in [3, 2, 1] {
        analyzer.pass(order)?;
    }
    let residual = analyzer.residual();
    Ok(Analysis {
        rules: analyzer.rules,
        residual,
        remaining: analyzer.work,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleStats {
    /// Records whose body atoms are all true.
    pub support: usize,
    /// Fraction of supporting records with the head true; 1 without support.
    pub confidence: f64,
}

/// How well `c` agrees with the records of `ev`. Denials have no head, so
/// every supporting record counts against them.
pub fn rule_confidence(c: &Clause, ev: &EventTable) -> Result<RuleStats> {
    check_index(c.max_atom(), ev.n_atoms())?;
    let supporting = ev
        .records()
        .iter()
        .filter(|r| c.body().iter().all(|&b| r.get(b)));
    let (mut support, mut hits) = (0usize, 0usize);
    for r in supporting {
        support += 1;
        if c.head().is_some_and(|h| r.get(h)) {
            hits += 1;
        }
    }
    let confidence = if support == 0 {
        1.0
    } else {
        hits as f64 / support as f64
    };
    Ok(RuleStats {
        support,
        confidence,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MineReport {
    pub rules: Vec<MinedRule>,
    /// Rules removed by the confidence filter.
    pub dropped: Vec<MinedRule>,
    pub residual: ResidualReport,
    /// The learned synapses before any deflation.
    pub synapses: SynapseSet,
}

/// The full pipeline: learn, reverse-analyze, score each rule against the
/// events and apply the optional confidence filter.
pub fn mine(ev: &EventTable, cfg: &MineConfig) -> Result<MineReport> {
    cfg.validate()?;
    let synapses = learn(ev, &cfg.rates)?;
    let analysis = reverse_analyze(&synapses, cfg)?;
    let mut rules = Vec::new();
    let mut dropped = Vec::new();
    for mut rule in analysis.rules {
        let stats = rule_confidence(&rule.clause, ev)?;
        rule.support = Some(stats.support);
        rule.confidence = Some(stats.confidence);
        match cfg.min_confidence {
            Some(min) if stats.confidence < min => dropped.push(rule),
            _ => rules.push(rule),
        }
    }
    Ok(MineReport {
        rules,
        dropped,
        residual: analysis.residual,
        synapses,
    })
}
