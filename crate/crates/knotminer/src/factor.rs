//! Prime decomposition of knot diagrams.
//!
//! Decomposition runs in three stages: greedy R1/R2 simplification, splitting
//! of the Gauss code into connected-sum blocks (the finest partition of the
//! cyclic entry sequence into intervals closed under the label pairing), and
//! per-block fingerprint identification against the catalog. Blocks that
//! identify as unknown fall back to an exact Jones-polynomial factorization
//! over the catalog.

use std::collections::btree_map;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::catalog::{Catalog, PrimeId};
use crate::diagram::{Diagram, KnotDatabase};
use crate::invariants::{fingerprint, Fingerprint, InvariantError};
use crate::laurent::LaurentPoly;
use crate::mining::{PrimeIndex, PrimeIndexEntry};
use crate::moves::simplify;

/// Multiset of prime factors with positive counts. The trivial knot is the
/// empty multiset; `0_1` is never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    factors: BTreeMap<PrimeId, u32>,
}

impl Decomposition {
    pub fn new() -> Self {
        Decomposition::default()
    }

    pub fn from_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (PrimeId, u32)>,
    {
        let mut d = Decomposition::new();
        for (id, n) in counts {
            d.bump(id, n);
        }
        d
    }

    /// Adds `by` copies of a factor; trivial factors and zero counts are
    /// ignored.
    pub fn bump(&mut self, id: PrimeId, by: u32) {
        if by == 0 || id.is_trivial() {
            return;
        }
        *self.factors.entry(id).or_insert(0) += by;
    }

    pub fn count(&self, id: &PrimeId) -> u32 {
        self.factors.get(id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, PrimeId, u32> {
        self.factors.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn union(&mut self, other: &Decomposition) {
        for (id, &n) in other.iter() {
            self.bump(id.clone(), n);
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (id, n)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{id}:{n}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("record {id:?}: {source}")]
    Record {
        id: String,
        #[source]
        source: InvariantError,
    },
}

/// Finest partition of the cyclic entry sequence into nonempty intervals
/// closed under the label pairing, one diagram per interval. A diagram with
/// no proper closed interval is returned as a single block; the 0-crossing
/// diagram yields no blocks.
pub fn split_blocks(d: &Diagram) -> Vec<Diagram> {
    let entries = d.entries();
    let m = entries.len();
    if m == 0 {
        return Vec::new();
    }
    // Open-label sets per gap: two gaps can both be cut points of a block
    // partition exactly when their open sets agree. The largest class of
    // gaps with equal open sets gives the finest partition.
    let mut open: Vec<u32> = Vec::new();
    let mut classes: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (gap, entry) in entries.iter().enumerate() {
        classes.entry(open.clone()).or_default().push(gap);
        match open.binary_search(&entry.label) {
            Ok(i) => {
                open.remove(i);
            }
            Err(i) => open.insert(i, entry.label),
        }
    }
    let cuts = classes
        .into_values()
        .max_by(|a, b| (a.len(), std::cmp::Reverse(a[0])).cmp(&(b.len(), std::cmp::Reverse(b[0]))))
        .expect("at least one gap class");
    if cuts.len() < 2 {
        return vec![d.clone()];
    }
    let mut blocks = Vec::with_capacity(cuts.len());
    for (i, &start) in cuts.iter().enumerate() {
        let end = cuts[(i + 1) % cuts.len()];
        let mut block = Vec::new();
        let mut p = start;
        while p != end {
            block.push(entries[p]);
            p = (p + 1) % m;
        }
        blocks.push(Diagram::new(block).expect("closed intervals have full label pairs"));
    }
    blocks
}

/// A block whose fingerprint matched no catalog entry.
#[derive(Clone, Debug)]
pub struct UnknownPrime {
    pub id: PrimeId,
    pub diagram: Diagram,
    pub fingerprint: Fingerprint,
}

pub(crate) fn decompose_detailed(
    d: &Diagram,
    catalog: &Catalog,
    cap: usize,
) -> Result<(Decomposition, Vec<UnknownPrime>), InvariantError> {
    let reduced = simplify(d);
    let mut out = Decomposition::new();
    let mut unknowns = Vec::new();
    for block in split_blocks(&reduced) {
        let fp = fingerprint(&block, cap)?;
        let id = catalog.identify(&fp);
        if id.is_trivial() {
            continue;
        }
        if id.is_unknown() {
            if let Some(sub) = factor_jones(&fp.jones, catalog) {
                out.union(&sub);
            } else {
                unknowns.push(UnknownPrime {
                    id: id.clone(),
                    diagram: block,
                    fingerprint: fp,
                });
                out.bump(id, 1);
            }
        } else {
            out.bump(id, 1);
        }
    }
    Ok((out, unknowns))
}

/// Prime decomposition: simplify, split into blocks, identify each block, and
/// fall back to Jones factorization for unknown blocks. Trivial factors are
/// dropped.
pub fn decompose(
    d: &Diagram,
    catalog: &Catalog,
    cap: usize,
) -> Result<Decomposition, InvariantError> {
    decompose_detailed(d, catalog, cap).map(|(dec, _)| dec)
}

/// Searches for a multiset of catalog entries whose Jones polynomials multiply
/// to `v` exactly. Candidates are tried in catalog order and the first
/// multiset found is returned; `None` if no factorization exists.
pub fn factor_jones(v: &LaurentPoly, catalog: &Catalog) -> Option<Decomposition> {
    fn search(v: &LaurentPoly, start: usize, catalog: &Catalog) -> Option<Decomposition> {
        if v.is_one() {
            return Some(Decomposition::new());
        }
        for (i, entry) in catalog.entries().iter().enumerate().skip(start) {
            if let Some(quotient) = v.div_exact(&entry.fingerprint.jones) {
                if let Some(mut rest) = search(&quotient, i, catalog) {
                    rest.bump(entry.id.clone(), 1);
                    return Some(rest);
                }
            }
        }
        None
    }
    search(v, 0, catalog)
}

/// Decomposes every record and returns the deduplicated, deterministically
/// ordered list of primes occurring anywhere in the database.
pub fn build_prime_index(
    db: &KnotDatabase,
    catalog: &Catalog,
    cap: usize,
) -> Result<PrimeIndex, FactorError> {
    Ok(index_from_decompositions(
        &decompose_all(db, catalog, cap)?,
        catalog,
    ))
}

pub(crate) fn decompose_all(
    db: &KnotDatabase,
    catalog: &Catalog,
    cap: usize,
) -> Result<Vec<(Decomposition, Vec<UnknownPrime>)>, FactorError> {
    db.records()
        .iter()
        .map(|r| {
            decompose_detailed(&r.diagram, catalog, cap).map_err(|source| FactorError::Record {
                id: r.id.clone(),
                source,
            })
        })
        .collect()
}

pub(crate) fn index_from_decompositions(
    per_record: &[(Decomposition, Vec<UnknownPrime>)],
    catalog: &Catalog,
) -> PrimeIndex {
    let mut entries: BTreeMap<PrimeId, PrimeIndexEntry> = BTreeMap::new();
    for (dec, unknowns) in per_record {
        for (id, _) in dec.iter() {
            if entries.contains_key(id) {
                continue;
            }
            let entry = if let Some(c) = catalog.get(id) {
                PrimeIndexEntry {
                    id: id.clone(),
                    representative: c.diagram.clone(),
                    fingerprint: c.fingerprint.clone(),
                }
            } else {
                let u = unknowns
                    .iter()
                    .find(|u| &u.id == id)
                    .expect("unknown ids carry their block diagram");
                PrimeIndexEntry {
                    id: id.clone(),
                    representative: u.diagram.clone(),
                    fingerprint: u.fingerprint.clone(),
                }
            };
            entries.insert(id.clone(), entry);
        }
    }
    let mut list: Vec<PrimeIndexEntry> = entries.into_values().collect();
    list.sort_by(|a, b| {
        (a.representative.crossing_count(), &a.id).cmp(&(b.representative.crossing_count(), &b.id))
    });
    PrimeIndex::new(list)
}

/// Multiset inclusion of prime factors.
pub fn subknot(k: &Decomposition, l: &Decomposition) -> bool {
    k.iter().all(|(id, &n)| n <= l.count(id))
}

/// Number of database decompositions that `k` is a subknot of.
pub fn support_knot(k: &Decomposition, db: &[Decomposition]) -> usize {
    db.iter().filter(|l| subknot(k, l)).count()
}
