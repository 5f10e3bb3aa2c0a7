//! Event tables as CSV: a header of atom names, then one row per record.
//!
//! Values are `0`/`1`, or `-1`/`1` for bipolar files. The alphabet is
//! detected per file; a file using both `0` and `-1` is rejected.

use std::io::{Read, Write};

use logicmine_core::hebb::EventTable;
use logicmine_core::logic::AtomTable;

use crate::error::{FormatError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Alphabet {
    Binary,
    Bipolar,
}

pub fn read_events<R: Read>(input: R) -> Result<EventTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let header = reader.headers()?.clone();
    let atoms = AtomTable::from_names(header.iter()).map_err(|e| FormatError::on_line(1, e))?;

    let mut alphabet: Option<(Alphabet, usize)> = None;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let mut values = Vec::with_capacity(row.len());
        for (col, field) in row.iter().enumerate() {
            let (value, seen) = match field {
                "1" => (true, None),
                "0" => (false, Some(Alphabet::Binary)),
                "-1" => (false, Some(Alphabet::Bipolar)),
                other => {
                    return Err(FormatError::at(line, col + 1, format!("unknown value {other:?}")))
                }
            };
            if let Some(seen) = seen {
                match alphabet {
                    None => alphabet = Some((seen, line)),
                    Some((first, first_line)) if first != seen => {
                        return Err(FormatError::at(
                            line,
                            col + 1,
                            format!("mixed 0/1 and -1/1 values (first false value on line {first_line})"),
                        ))
                    }
                    _ => {}
                }
            }
            values.push(value);
        }
        records.push(values);
    }
    EventTable::new(atoms, records).map_err(|e| FormatError::on_line(1, e))
}

/// Writes `0`/`1` values.
pub fn write_events<W: Write>(output: W, ev: &EventTable) -> Result<()> {
    let mut writer = csv::Writer::from_writer(output);
    writer.write_record(ev.atoms().names())?;
    for r in ev.records() {
        writer.write_record(r.values().iter().map(|&v| if v { "1" } else { "0" }))?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE1: &str = "Bread,Jam,Cheese,Sausage,Burger
1,0,0,0,0
0,1,1,1,0
1,0,0,0,1
0,1,0,0,1
1,0,1,1,0
";

    #[test]
    fn reads_table1() {
        let ev = read_events(TABLE1.as_bytes()).unwrap();
        assert_eq!(ev.n_atoms(), 5);
        assert_eq!(ev.n_records(), 5);
        // Peter buys only bread
        assert_eq!(ev.records()[0].values(), &[true, false, false, false, false]);
    }

    #[test]
    fn bipolar_file_reads_the_same() {
        let bipolar = TABLE1.replace('0', "-1");
        assert_eq!(
            read_events(bipolar.as_bytes()).unwrap(),
            read_events(TABLE1.as_bytes()).unwrap()
        );
    }

    #[test]
    fn write_then_read() {
        let ev = read_events(TABLE1.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_events(&mut out, &ev).unwrap();
        assert_eq!(String::from_utf8(out.clone()).unwrap(), TABLE1);
        assert_eq!(read_events(out.as_slice()).unwrap(), ev);
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            "a,b\n1,0\n-1,1\n",  // mixed alphabets
            "a,b\n1,2\n",        // unknown symbol
            "a,b\n1,0\n1\n",     // ragged
            "a,b\n",             // no records
            "a,a\n1,0\n",        // duplicate atom
            "a,b c\n1,0\n",      // bad identifier
            "a,b\ntrue,false\n", // not numeric
        ] {
            assert!(read_events(bad.as_bytes()).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn mixed_alphabet_error_points_at_the_cell() {
        let err = read_events("a,b\n1,0\n-1,1\n".as_bytes()).unwrap_err().to_string();
        assert!(err.starts_with("line 3, column 1"), "{err}");
    }
}
