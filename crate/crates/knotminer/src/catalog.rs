//! Built-in table of prime knots up to seven crossings and fingerprint
//! identification.
//!
//! Diagrams are standard minimal-crossing alternating extended Gauss codes.
//! Fingerprints are computed from the bundled diagrams at construction time,
//! never transcribed, so the table can never drift from the bracket
//! implementation. Chiral knots get an `m`-suffixed mirror entry; amphichiral
//! knots (detected as a Jones polynomial fixed under `t -> t^-1`) appear once.
//!
//! Fingerprints outside the table are named `x:<8 hex digits>` from the
//! FNV-1a hash of the canonical Jones text, so unknown primes still get
//! stable, content-addressed identifiers.

use std::fmt;
use std::io::BufRead;

use serde::Deserialize;
use thiserror::Error;

use crate::diagram::{parse_gauss, Diagram, GaussCodeError};
use crate::invariants::{fingerprint, Fingerprint, InvariantError, DEFAULT_BRACKET_CAP};

/// Identifier of a prime knot: a catalog name such as `3_1` or `5_2m`
/// (`m` = mirror), `x:<hash>` for primes outside the catalog, or the reserved
/// `0_1` for the trivial knot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeId(String);

impl PrimeId {
    pub const TRIVIAL: &'static str = "0_1";

    pub fn new(id: impl Into<String>) -> Self {
        PrimeId(id.into())
    }

    pub fn trivial() -> Self {
        PrimeId(Self::TRIVIAL.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == Self::TRIVIAL
    }

    /// True for content-addressed ids of primes outside the catalog.
    pub fn is_unknown(&self) -> bool {
        self.0.starts_with("x:")
    }
}

impl fmt::Display for PrimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Minimal alternating diagrams of the prime knots through 7 crossings.
/// Mirror entries are derived, not listed.
const BUILTIN_TABLE: &[(&str, &str)] = &[
    ("3_1", "U1+O2+U3+O1+U2+O3+"),
    ("4_1", "O1+U2+O3-U4-O2+U1+O4-U3-"),
    ("5_1", "U1+O2+U3+O4+U5+O1+U2+O3+U4+O5+"),
    ("5_2", "O1+U2+O3+U4+O5+U3+O2+U1+O4+U5+"),
    ("6_1", "O1+U2+O3+U4+O5-U6-O4+U3+O2+U1+O6-U5-"),
    ("6_2", "U1+O2+U3+O4-U5-O1+U2+O3+U6+O5-U4-O6+"),
    ("6_3", "O1-U2-O3-U4+O5+U1-O2-U6+O4+U5+O6+U3-"),
    ("7_1", "U1+O2+U3+O4+U5+O6+U7+O1+U2+O3+U4+O5+U6+O7+"),
    ("7_2", "O1+U2+O3+U4+O5+U6+O7+U5+O4+U3+O2+U1+O6+U7+"),
    ("7_3", "U1+O2+U3+O4+U5+O6+U7+O1+U2+O3+U4+O7+U6+O5+"),
    ("7_4", "O1+U2+O3+U4+O5+U6+O7+U3+O2+U1+O6+U5+O4+U7+"),
    ("7_5", "U1+O2+U3+O4+U5+O1+U2+O3+U6+O7+U4+O5+U7+O6+"),
    ("7_6", "O1+U2+O3-U4-O5+U6+O7+U5+O2+U1+O6+U7+O4-U3-"),
    ("7_7", "O1+U2+O3-U4-O5+U6+O4-U7-O2+U1+O6+U5+O7-U3-"),
];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("max_crossings {max} outside the bundled range 3..=7")]
    Range { max: usize },
    #[error("line {line}: invalid record: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: entry {id:?}: {source}")]
    Gauss {
        line: usize,
        id: String,
        #[source]
        source: GaussCodeError,
    },
    #[error("line {line}: entry {id:?}: {source}")]
    Invariant {
        line: usize,
        id: String,
        #[source]
        source: InvariantError,
    },
    #[error("entry {id:?} duplicates the id of an existing entry")]
    DuplicateId { id: String },
    #[error("entry {id:?} has the same fingerprint as {existing}")]
    FingerprintCollision { id: String, existing: PrimeId },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: PrimeId,
    pub diagram: Diagram,
    pub fingerprint: Fingerprint,
}

/// Ordered list of (id, diagram, fingerprint) with pairwise-distinct
/// fingerprints, sorted by (crossing number, id).
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// Builds the catalog of all prime knots through `max_crossings` (3..=7),
/// with mirror entries for every chiral knot.
pub fn builtin_catalog(max_crossings: usize) -> Result<Catalog, CatalogError> {
    if !(3..=7).contains(&max_crossings) {
        return Err(CatalogError::Range { max: max_crossings });
    }
    let mut entries = Vec::new();
    for &(name, code) in BUILTIN_TABLE {
        let diagram = parse_gauss(code).expect("builtin table codes are valid");
        if diagram.crossing_count() > max_crossings {
            continue;
        }
        let fp =
            fingerprint(&diagram, DEFAULT_BRACKET_CAP).expect("builtin diagrams fit the capacity");
        let amphichiral = fp.jones == fp.jones.invert_variable();
        if !amphichiral {
            let mirror = diagram.mirror();
            let mfp = fingerprint(&mirror, DEFAULT_BRACKET_CAP).expect("mirror fits the capacity");
            entries.push(CatalogEntry {
                id: PrimeId::new(format!("{name}m")),
                diagram: mirror,
                fingerprint: mfp,
            });
        }
        entries.push(CatalogEntry {
            id: PrimeId::new(name),
            diagram,
            fingerprint: fp,
        });
    }
    let mut catalog = Catalog { entries };
    catalog.sort();
    debug_assert!(catalog.fingerprints_distinct());
    Ok(catalog)
}

impl Catalog {
    fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            (a.diagram.crossing_count(), &a.id).cmp(&(b.diagram.crossing_count(), &b.id))
        });
    }

    fn fingerprints_distinct(&self) -> bool {
        for (i, a) in self.entries.iter().enumerate() {
            if self.entries[i + 1..]
                .iter()
                .any(|b| b.fingerprint == a.fingerprint)
            {
                return false;
            }
        }
        true
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &PrimeId) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| &e.id == id)
    }

    /// Maps a fingerprint to a prime id: `0_1` for the trivial fingerprint, a
    /// catalog id on an exact match, and a stable content-addressed `x:` id
    /// otherwise. The determinant is compared first as the cheap filter.
    pub fn identify(&self, f: &Fingerprint) -> PrimeId {
        if f.is_trivial() {
            return PrimeId::trivial();
        }
        for e in &self.entries {
            if e.fingerprint.determinant == f.determinant && e.fingerprint.jones == f.jones {
                return e.id.clone();
            }
        }
        unknown_id(f)
    }

    /// Merges user entries from a JSON Lines reader (`{"id": ..., "gauss":
    /// ...}`). A fingerprint equal to an existing entry's is a load error.
    pub fn extend_from_jsonl<R: BufRead>(
        &mut self,
        reader: R,
        cap: usize,
    ) -> Result<(), CatalogError> {
        #[derive(Deserialize)]
        struct EntryLine {
            id: String,
            gauss: String,
        }
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: EntryLine =
                serde_json::from_str(&line).map_err(|source| CatalogError::Json {
                    line: line_no,
                    source,
                })?;
            let diagram = parse_gauss(&raw.gauss).map_err(|source| CatalogError::Gauss {
                line: line_no,
                id: raw.id.clone(),
                source,
            })?;
            let fp = fingerprint(&diagram, cap).map_err(|source| CatalogError::Invariant {
                line: line_no,
                id: raw.id.clone(),
                source,
            })?;
            let id = PrimeId::new(raw.id.clone());
            if self.entries.iter().any(|e| e.id == id) {
                return Err(CatalogError::DuplicateId { id: raw.id });
            }
            if let Some(existing) = self.entries.iter().find(|e| e.fingerprint == fp) {
                return Err(CatalogError::FingerprintCollision {
                    id: raw.id,
                    existing: existing.id.clone(),
                });
            }
            self.entries.push(CatalogEntry {
                id,
                diagram,
                fingerprint: fp,
            });
        }
        self.sort();
        Ok(())
    }
}

/// Stable id for a fingerprint outside the catalog: the first 8 hex digits of
/// the 64-bit FNV-1a hash of the canonical Jones text.
pub fn unknown_id(f: &Fingerprint) -> PrimeId {
    let hash = fnv1a64(f.jones.to_text('t').as_bytes());
    PrimeId::new(format!("x:{}", &format!("{hash:016x}")[..8]))
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
