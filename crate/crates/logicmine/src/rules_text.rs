//! Mined rule files.
//!
//! One rule per line, the clause followed by tab-separated fields (shown
//! here with spaces):
//!
//! ```text
//! A <- B, C.  weight=1  pass=3  confidence=1  support=7  ambiguous=false
//! # dropped
//! D <- B.  weight=1  pass=2  confidence=0.5  support=2  ambiguous=false
//! # residual
//! T3 Cheese Sausage Burger -0.5
//! L1 0 0 0.5
//! ```
//!
//! Rules are sorted by pass (descending), weight (descending), then clause
//! text. The `# dropped` section lists rules removed by the confidence
//! filter and only appears when there are any. The residual lists the
//! above-threshold connections left after reverse analysis, by atom name,
//! followed by the per-order L1 norms of everything left over.

use std::cmp::Ordering;

use logicmine_core::logic::AtomTable;
use logicmine_core::mine::{MineReport, MinedRule, ResidualReport};
use logicmine_core::Key;

use crate::error::{FormatError, Result};
use crate::program_text::{format_clause, parse_clause_with};
use crate::synapse_text::key_tag;

const DROPPED: &str = "# dropped";
const RESIDUAL: &str = "# residual";

/// The contents of a rules file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RulesFile {
    pub rules: Vec<MinedRule>,
    pub dropped: Vec<MinedRule>,
    pub residual: ResidualReport,
}

impl RulesFile {
    pub fn from_report(report: &MineReport) -> Self {
        Self {
            rules: report.rules.clone(),
            dropped: report.dropped.clone(),
            residual: report.residual.clone(),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn format_rule(atoms: &AtomTable, rule: &MinedRule) -> String {
    format!(
        "{}\tweight={}\tpass={}\tconfidence={}\tsupport={}\tambiguous={}",
        format_clause(atoms, &rule.clause),
        rule.weight,
        rule.pass,
        opt(rule.confidence),
        opt(rule.support),
        rule.ambiguous_head,
    )
}

/// Rules in file order: pass desc, weight desc, clause text asc.
pub fn sorted_rules<'a>(atoms: &AtomTable, rules: &'a [MinedRule]) -> Vec<&'a MinedRule> {
    let mut keyed: Vec<(String, &MinedRule)> = rules
        .iter()
        .map(|r| (format_clause(atoms, &r.clause), r))
        .collect();
    keyed.sort_by(|(ta, a), (tb, b)| {
        b.pass
            .cmp(&a.pass)
            .then_with(|| b.weight.partial_cmp(&a.weight).unwrap_or(Ordering::Equal))
            .then_with(|| ta.cmp(tb))
    });
    keyed.into_iter().map(|(_, r)| r).collect()
}

pub fn write_rules(atoms: &AtomTable, file: &RulesFile) -> String {
    let mut out = String::new();
    for rule in sorted_rules(atoms, &file.rules) {
        out.push_str(&format_rule(atoms, rule));
        out.push('\n');
    }
    if !file.dropped.is_empty() {
        out.push_str(DROPPED);
        out.push('\n');
        for rule in sorted_rules(atoms, &file.dropped) {
            out.push_str(&format_rule(atoms, rule));
            out.push('\n');
        }
    }
    out.push_str(RESIDUAL);
    out.push('\n');
    for (key, v) in &file.residual.entries {
        out.push_str(key_tag(key));
        for i in key.indices() {
            out.push(' ');
            out.push_str(atoms.name(i).unwrap_or("?"));
        }
        out.push_str(&format!(" {v}\n"));
    }
    let [l1, l2, l3] = file.residual.l1_norm;
    out.push_str(&format!("L1 {l1} {l2} {l3}\n"));
    out
}

fn parse_field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| FormatError::at(line, 1, format!("bad {name} value {raw:?}")))
}

fn parse_optional<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<Option<T>> {
    if raw == "-" {
        Ok(None)
    } else {
        parse_field(line, name, raw).map(Some)
    }
}

fn parse_rule(atoms: &AtomTable, line_no: usize, line: &str) -> Result<MinedRule> {
    let mut parts = line.split('\t');
    let clause_text = parts.next().unwrap_or_default();
    let clause = parse_clause_with(atoms, clause_text).map_err(|e| match e {
        FormatError::Parse { column, message, .. } => FormatError::at(line_no, column, message),
        other => FormatError::at(line_no, 1, other),
    })?;
    let mut rule = MinedRule {
        clause,
        weight: f64::NAN,
        pass: 0,
        ambiguous_head: false,
        support: None,
        confidence: None,
    };
    let mut seen = [false; 5];
    for field in parts {
        let (name, raw) = field
            .split_once('=')
            .ok_or_else(|| FormatError::at(line_no, 1, format!("bad field {field:?}")))?;
        let slot = match name {
            "weight" => {
                rule.weight = parse_field(line_no, name, raw)?;
                0
            }
            "pass" => {
                rule.pass = parse_field(line_no, name, raw)?;
                1
            }
            "confidence" => {
                rule.confidence = parse_optional(line_no, name, raw)?;
                2
            }
            "support" => {
                rule.support = parse_optional(line_no, name, raw)?;
                3
            }
            "ambiguous" => {
                rule.ambiguous_head = parse_field(line_no, name, raw)?;
                4
            }
            other => return Err(FormatError::at(line_no, 1, format!("unknown field {other:?}"))),
        };
        if std::mem::replace(&mut seen[slot], true) {
            return Err(FormatError::at(line_no, 1, format!("field {name} given twice")));
        }
    }
    if !seen[0] || !seen[1] {
        return Err(FormatError::at(line_no, 1, "weight and pass are required"));
    }
    Ok(rule)
}

fn parse_residual_line(atoms: &AtomTable, line_no: usize, line: &str, residual: &mut ResidualReport) -> Result<()> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || FormatError::at(line_no, 1, format!("bad residual line {line:?}"));
    let (tag, rest) = fields.split_first().ok_or_else(bad)?;
    if *tag == "L1" {
        if rest.len() != 3 {
            return Err(bad());
        }
        for (slot, raw) in residual.l1_norm.iter_mut().zip(rest) {
            *slot = parse_field(line_no, "L1", raw)?;
        }
        return Ok(());
    }
    let arity = match *tag {
        "T1" => 1,
        "T2" => 2,
        "T3" => 3,
        _ => return Err(bad()),
    };
    if rest.len() != arity + 1 {
        return Err(bad());
    }
    let indices = rest[..arity]
        .iter()
        .map(|name| atoms.lookup(name).map_err(|e| FormatError::on_line(line_no, e)))
        .collect::<Result<Vec<usize>>>()?;
    let key = Key::new(&indices).map_err(|e| FormatError::on_line(line_no, e))?;
    residual.entries.push((key, parse_field(line_no, "residual", rest[arity])?));
    Ok(())
}

/// Reads a rules file, resolving atom names against `atoms`.
pub fn read_rules(atoms: &AtomTable, text: &str) -> Result<RulesFile> {
    #[derive(PartialEq)]
    enum Section {
        Rules,
        Dropped,
        Residual,
    }
    let mut file = RulesFile::default();
    let mut section = Section::Rules;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        match line.trim() {
            DROPPED => {
                section = Section::Dropped;
                continue;
            }
            RESIDUAL => {
                section = Section::Residual;
                continue;
            }
            l if l.starts_with('#') => continue,
            _ => {}
        }
        match section {
            Section::Rules => file.rules.push(parse_rule(atoms, line_no, line)?),
            Section::Dropped => file.dropped.push(parse_rule(atoms, line_no, line)?),
            Section::Residual => parse_residual_line(atoms, line_no, line, &mut file.residual)?,
        }
    }
    Ok(file)
}
