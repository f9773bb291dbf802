//! Knot diagrams as cyclic extended Gauss codes.
//!
//! A diagram with `n` crossings is a cyclic sequence of `2n` entries; each
//! entry records the crossing label, whether the strand passes over or under,
//! and the crossing sign. The textual form concatenates tokens like `O1+` and
//! `U3-`, e.g. `O1+U2+O3+U1+O2+U3+` for a trefoil.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which strand of a crossing an entry describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pass {
    Over,
    Under,
}

impl Pass {
    pub fn flipped(self) -> Pass {
        match self {
            Pass::Over => Pass::Under,
            Pass::Under => Pass::Over,
        }
    }
}

/// Crossing sign (+1 or -1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One passage through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    pub label: u32,
    pub pass: Pass,
    pub sign: Sign,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussCodeError {
    #[error("syntax error at byte {pos}: {reason}")]
    Syntax { pos: usize, reason: String },
    #[error("label {label} does not occur exactly once over and once under")]
    Pairing { label: u32 },
    #[error("label {label} carries both signs")]
    SignMismatch { label: u32 },
}

/// A knot diagram. The entry sequence is cyclic; the stored rotation is kept
/// as constructed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    entries: Vec<GaussEntry>,
}

impl Diagram {
    /// Validates the extended-Gauss-code invariants: every label occurs
    /// exactly twice, once over and once under, with a consistent sign.
    pub fn new(entries: Vec<GaussEntry>) -> Result<Self, GaussCodeError> {
        let mut seen: BTreeMap<u32, (Vec<Pass>, Sign)> = BTreeMap::new();
        for e in &entries {
            if e.label == 0 {
                return Err(GaussCodeError::Syntax {
                    pos: 0,
                    reason: "label must be positive".into(),
                });
            }
            match seen.entry(e.label) {
                Entry::Vacant(v) => {
                    v.insert((vec![e.pass], e.sign));
                }
                Entry::Occupied(mut o) => {
                    let (passes, sign) = o.get_mut();
                    if *sign != e.sign {
                        return Err(GaussCodeError::SignMismatch { label: e.label });
                    }
                    passes.push(e.pass);
                }
            }
        }
        for (&label, (passes, _)) in &seen {
            if passes.len() != 2 || passes[0] == passes[1] {
                return Err(GaussCodeError::Pairing { label });
            }
        }
        Ok(Diagram { entries })
    }

    pub fn entries(&self) -> &[GaussEntry] {
        &self.entries
    }

    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Positions of the two occurrences of each label, keyed by label, in
    /// first-occurrence order of the underlying sequence.
    pub fn occurrences(&self) -> Vec<(u32, usize, usize)> {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out: Vec<(u32, usize, usize)> = Vec::with_capacity(self.crossing_count());
        for (i, e) in self.entries.iter().enumerate() {
            match first.entry(e.label) {
                Entry::Vacant(v) => {
                    v.insert(i);
                }
                Entry::Occupied(o) => out.push((e.label, *o.get(), i)),
            }
        }
        out.sort_by_key(|&(_, p1, _)| p1);
        out
    }

    /// Mirror image: all signs flipped and over/under swapped.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            entries: self
                .entries
                .iter()
                .map(|e| GaussEntry {
                    label: e.label,
                    pass: e.pass.flipped(),
                    sign: e.sign.flipped(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_gauss(self))
    }
}

/// Parses an extended Gauss code. Whitespace between tokens is ignored; the
/// empty string is the 0-crossing unknot diagram.
pub fn parse_gauss(text: &str) -> Result<Diagram, GaussCodeError> {
    let bytes = text.as_bytes();
    let mut entries = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pass = match bytes[i] {
            b'O' => Pass::Over,
            b'U' => Pass::Under,
            c => {
                return Err(GaussCodeError::Syntax {
                    pos: i,
                    reason: format!("expected 'O' or 'U', found {:?}", c as char),
                })
            }
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return Err(GaussCodeError::Syntax {
                pos: i,
                reason: "expected a crossing label".into(),
            });
        }
        let label: u32 = text[start..i].parse().map_err(|_| GaussCodeError::Syntax {
            pos: start,
            reason: "label out of range".into(),
        })?;
        if label == 0 {
            return Err(GaussCodeError::Syntax {
                pos: start,
                reason: "label must be positive".into(),
            });
        }
        let sign = match bytes.get(i) {
            Some(b'+') => Sign::Plus,
            Some(b'-') => Sign::Minus,
            _ => {
                return Err(GaussCodeError::Syntax {
                    pos: i,
                    reason: "expected '+' or '-'".into(),
                })
            }
        };
        i += 1;
        entries.push(GaussEntry { label, pass, sign });
    }
    Diagram::new(entries)
}

/// Renders a diagram with labels renumbered 1..n in order of first
/// appearance, keeping the stored rotation.
pub fn render_gauss(d: &Diagram) -> String {
    let mut renumber: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next = 1;
    let mut out = String::with_capacity(d.entries.len() * 4);
    for e in &d.entries {
        let label = *renumber.entry(e.label).or_insert_with(|| {
            let l = next;
            next += 1;
            l
        });
        out.push(match e.pass {
            Pass::Over => 'O',
            Pass::Under => 'U',
        });
        out.push_str(&label.to_string());
        out.push(match e.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        });
    }
    out
}

/// Diagrammatic connected sum: `d2`'s entries, with labels shifted above
/// `d1`'s maximum label, concatenated after `d1`'s. No new crossings are
/// introduced.
pub fn connected_sum(d1: &Diagram, d2: &Diagram) -> Diagram {
    let shift = d1.entries.iter().map(|e| e.label).max().unwrap_or(0);
    let mut entries = d1.entries.clone();
    entries.extend(d2.entries.iter().map(|e| GaussEntry {
        label: e.label + shift,
        pass: e.pass,
        sign: e.sign,
    }));
    Diagram { entries }
}

/// A named knot in a database.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub id: String,
    pub diagram: Diagram,
}

#[derive(Debug, Error)]
pub enum DatabaseError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: invalid record: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: record {id:?}: {source}")]
    Gauss {
        line: usize,
        id: String,
        #[source]
        source: GaussCodeError,
    },
    #[error("line {line}: record id is empty")]
    EmptyId { line: usize },
    #[error("line {line}: duplicate record id {id:?}")]
    DuplicateId { line: usize, id: String },
}

/// An ordered collection of knot records with pairwise-distinct ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotDatabase {
    records: Vec<KnotRecord>,
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    id: String,
    gauss: String,
}

impl KnotDatabase {
    /// `line` in errors refers to the record's ordinal (1-based).
    pub fn new(records: Vec<KnotRecord>) -> Result<Self, DatabaseError> {
        let mut seen = BTreeSet::new();
        for (i, r) in records.iter().enumerate() {
            if r.id.is_empty() {
                return Err(DatabaseError::EmptyId { line: i + 1 });
            }
            if !seen.insert(r.id.as_str()) {
                return Err(DatabaseError::DuplicateId {
                    line: i + 1,
                    id: r.id.clone(),
                });
            }
        }
        Ok(KnotDatabase { records })
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Reads the JSON Lines database format: one `{"id": ..., "gauss": ...}`
    /// object per line. Blank lines are skipped.
    pub fn from_jsonl<R: BufRead>(reader: R) -> Result<Self, DatabaseError> {
        let mut records = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RecordLine =
                serde_json::from_str(&line).map_err(|source| DatabaseError::Json {
                    line: line_no,
                    source,
                })?;
            if raw.id.is_empty() {
                return Err(DatabaseError::EmptyId { line: line_no });
            }
            if !seen.insert(raw.id.clone()) {
                return Err(DatabaseError::DuplicateId {
                    line: line_no,
                    id: raw.id,
                });
            }
            let diagram = parse_gauss(&raw.gauss).map_err(|source| DatabaseError::Gauss {
                line: line_no,
                id: raw.id.clone(),
                source,
            })?;
            records.push(KnotRecord {
                id: raw.id,
                diagram,
            });
        }
        Ok(KnotDatabase { records })
    }

    /// Writes the JSON Lines format with LF line endings.
    pub fn to_jsonl<W: Write>(&self, mut writer: W) -> io::Result<()> {
        for r in &self.records {
            let line = serde_json::to_string(&RecordLine {
                id: r.id.clone(),
                gauss: render_gauss(&r.diagram),
            })
            .expect("record serialization cannot fail");
            writer.write_all(line.as_bytes())?;
            writer.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.to_jsonl(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("jsonl output is utf-8")
    }
}
