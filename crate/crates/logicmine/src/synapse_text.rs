//! Line-oriented synapse files.
//!
//! ```text
//! atoms: A B C D
//! E0 1.0000000000000000e0
//! T1 1 -1.0000000000000000e0
//! T2 1 2 -1.0000000000000000e0
//! T3 0 1 2 5.0000000000000000e-1
//! ```
//!
//! Indices are ascending within a key and lines are sorted by order, then
//! key. Values carry 17 significant digits so every `f64` reads back exactly.

use logicmine_core::logic::AtomTable;
use logicmine_core::{Key, SynapseSet};

use crate::error::{FormatError, Result};

/// Formats `v` with 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn key_tag(key: &Key) -> &'static str {
    match key.order() {
        1 => "T1",
        2 => "T2",
        _ => "T3",
    }
}

pub fn write_synapses(atoms: &AtomTable, s: &SynapseSet) -> String {
    let mut out = String::from("atoms:");
    for name in atoms.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out.push_str(&format!("E0 {}\n", format_value(s.offset())));
    for (key, v) in s.entries() {
        out.push_str(key_tag(&key));
        for i in key.indices() {
            out.push_str(&format!(" {i}"));
        }
        out.push_str(&format!(" {}\n", format_value(v)));
    }
    out
}

pub fn read_synapses(text: &str) -> Result<(AtomTable, SynapseSet)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| FormatError::at(1, 1, "missing 'atoms:' header"))?;
    let names = header
        .strip_prefix("atoms:")
        .ok_or_else(|| FormatError::at(header_line, 1, "expected 'atoms:' header"))?;
    let atoms = AtomTable::from_names(names.split_whitespace())
        .map_err(|e| FormatError::on_line(header_line, e))?;

    let mut s = SynapseSet::new(atoms.len());
    let mut seen_offset = false;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (tag, rest) = fields.split_first().expect("nonempty line");
        let arity = match *tag {
            "E0" => 0,
            "T1" => 1,
            "T2" => 2,
            "T3" => 3,
            other => {
                return Err(FormatError::at(line_no, 1, format!("unknown line tag {other:?}")))
            }
        };
        if rest.len() != arity + 1 {
            return Err(FormatError::at(
                line_no,
                1,
                format!("{tag} takes {arity} indices and a value"),
            ));
        }
        let value: f64 = rest[arity]
            .parse()
            .map_err(|_| FormatError::at(line_no, 1, format!("bad value {:?}", rest[arity])))?;
        if !value.is_finite() {
            return Err(FormatError::at(line_no, 1, "value must be finite"));
        }
        if arity == 0 {
            if seen_offset {
                return Err(FormatError::at(line_no, 1, "E0 given twice"));
            }
            seen_offset = true;
            s.set_offset(value);
            continue;
        }
        let indices = rest[..arity]
            .iter()
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| FormatError::at(line_no, 1, format!("bad index {f:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FormatError::at(line_no, 1, format!("non-ascending key {indices:?}")));
        }
        let key = Key::new(&indices).map_err(|e| FormatError::on_line(line_no, e))?;
        if s.value(key) != 0.0 {
            return Err(FormatError::at(line_no, 1, format!("duplicate key {indices:?}")));
        }
        s.set_key(key, value)
            .map_err(|e| FormatError::on_line(line_no, e))?;
    }
    Ok((atoms, s))
}
