//! Count-vector encoding of knot databases and the level-wise frequent
//! multiset miner.
//!
//! Every knot record becomes a transaction: the vector of multiplicities of
//! the database's primes in its decomposition. Mining works directly on the
//! count vectors. Patterns are enumerated level by level (total count); the
//! unique parent of a pattern drops one from its largest nonzero index, so
//! every non-empty pattern is generated exactly once, and anti-monotone
//! pruning never expands an infrequent pattern. A pattern is frequent when
//! its support strictly exceeds the threshold.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, PrimeId};
use crate::diagram::{connected_sum, render_gauss, Diagram, KnotDatabase};
use crate::factor::{decompose_all, index_from_decompositions, FactorError};
use crate::invariants::Fingerprint;

/// One prime of the database: id, representative diagram, fingerprint.
#[derive(Clone, Debug)]
pub struct PrimeIndexEntry {
    pub id: PrimeId,
    pub representative: Diagram,
    pub fingerprint: Fingerprint,
}

/// The ordered, deduplicated primes of a database (`primes(D)`).
#[derive(Clone, Debug, Default)]
pub struct PrimeIndex {
    entries: Vec<PrimeIndexEntry>,
}

impl PrimeIndex {
    pub fn new(entries: Vec<PrimeIndexEntry>) -> Self {
        PrimeIndex { entries }
    }

    pub fn entries(&self) -> &[PrimeIndexEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, id: &PrimeId) -> Option<usize> {
        self.entries.iter().position(|e| &e.id == id)
    }
}

/// Count vector of one knot record over the prime index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transaction {
    pub counts: Vec<u32>,
}

/// A mined count-vector pattern with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub counts: Vec<u32>,
    pub support: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MiningError {
    #[error("length mismatch: pattern has {pattern} components, transactions have {transactions}")]
    LengthMismatch { pattern: usize, transactions: usize },
    #[error("the all-zero pattern decodes to the trivial knot and is not emitted")]
    EmptyPattern,
}

/// Encodes a database: builds the prime index and, per record in order, the
/// transaction of factor multiplicities.
pub fn encode_db(
    db: &KnotDatabase,
    catalog: &Catalog,
    cap: usize,
) -> Result<(PrimeIndex, Vec<Transaction>), FactorError> {
    let per_record = decompose_all(db, catalog, cap)?;
    let index = index_from_decompositions(&per_record, catalog);
    let transactions = per_record
        .iter()
        .map(|(dec, _)| Transaction {
            counts: index.entries().iter().map(|e| dec.count(&e.id)).collect(),
        })
        .collect();
    Ok((index, transactions))
}

/// Number of transactions dominating the pattern componentwise.
pub fn support_pattern(
    pattern: &[u32],
    transactions: &[Transaction],
) -> Result<usize, MiningError> {
    if let Some(t) = transactions
        .iter()
        .find(|t| t.counts.len() != pattern.len())
    {
        return Err(MiningError::LengthMismatch {
            pattern: pattern.len(),
            transactions: t.counts.len(),
        });
    }
    Ok(transactions
        .iter()
        .filter(|t| dominates(&t.counts, pattern))
        .count())
}

fn dominates(t: &[u32], m: &[u32]) -> bool {
    t.iter().zip(m).all(|(a, b)| a >= b)
}

fn last_nonzero(m: &[u32]) -> usize {
    m.iter().rposition(|&c| c > 0).map_or(0, |i| i)
}

/// All non-empty patterns with support strictly greater than `sigma`,
/// level-wise by total count, sorted by (total count, then by name order of
/// the decoded knot, i.e. descending count vectors within a level).
pub fn mine_frequent(
    transactions: &[Transaction],
    sigma: usize,
) -> Result<Vec<Pattern>, MiningError> {
    let Some(first) = transactions.first() else {
        return Ok(Vec::new());
    };
    let p = first.counts.len();
    let mut maxes = vec![0u32; p];
    for t in transactions {
        if t.counts.len() != p {
            return Err(MiningError::LengthMismatch {
                pattern: p,
                transactions: t.counts.len(),
            });
        }
        for (m, &c) in maxes.iter_mut().zip(&t.counts) {
            *m = (*m).max(c);
        }
    }

    let mut out: Vec<Pattern> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    for i in 0..p {
        if maxes[i] >= 1 {
            let mut m = vec![0u32; p];
            m[i] = 1;
            frontier.push(m);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in frontier {
            let support = support_pattern(&m, transactions)?;
            if support <= sigma {
                continue;
            }
            for i in last_nonzero(&m)..p {
                if m[i] < maxes[i] {
                    let mut child = m.clone();
                    child[i] += 1;
                    next.push(child);
                }
            }
            out.push(Pattern { counts: m, support });
        }
        frontier = next;
    }
    out.sort_by(|a, b| {
        let ta: u32 = a.counts.iter().sum();
        let tb: u32 = b.counts.iter().sum();
        ta.cmp(&tb).then_with(|| b.counts.cmp(&a.counts))
    });
    Ok(out)
}

/// Decodes a pattern into the connected sum of index representatives, each
/// repeated its count, in index order. The name joins the ids with ` # `.
pub fn decode(pattern: &[u32], index: &PrimeIndex) -> Result<(String, Diagram), MiningError> {
    if pattern.len() != index.len() {
        return Err(MiningError::LengthMismatch {
            pattern: pattern.len(),
            transactions: index.len(),
        });
    }
    if pattern.iter().all(|&c| c == 0) {
        return Err(MiningError::EmptyPattern);
    }
    let mut names = Vec::new();
    let mut diagram = Diagram::default();
    for (entry, &count) in index.entries().iter().zip(pattern) {
        for _ in 0..count {
            names.push(entry.id.as_str().to_string());
            diagram = connected_sum(&diagram, &entry.representative);
        }
    }
    Ok((names.join(" # "), diagram))
}

/// One frequent knot of the mining report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub multiset: BTreeMap<String, u32>,
    pub support: usize,
    pub gauss: String,
}

/// Encode, mine, decode. When `restrict_to_db` is set, only patterns equal to
/// some transaction are reported (every reported knot then occurs verbatim in
/// the database).
pub fn run_knotminer(
    db: &KnotDatabase,
    sigma: usize,
    catalog: &Catalog,
    cap: usize,
    restrict_to_db: bool,
) -> Result<Vec<ReportRow>, FactorError> {
    let (index, transactions) = encode_db(db, catalog, cap)?;
    let patterns =
        mine_frequent(&transactions, sigma).expect("encoded transactions share one length");
    let mut rows = Vec::new();
    for pat in patterns {
        if restrict_to_db && !transactions.iter().any(|t| t.counts == pat.counts) {
            continue;
        }
        let (name, diagram) = decode(&pat.counts, &index).expect("mined patterns are non-empty");
        let multiset = index
            .entries()
            .iter()
            .zip(&pat.counts)
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| (e.id.as_str().to_string(), c))
            .collect();
        rows.push(ReportRow {
            name,
            multiset,
            support: pat.support,
            gauss: render_gauss(&diagram),
        });
    }
    Ok(rows)
}

/// CSV export of the transaction table: header `id,<prime ids>`, one row per
/// record in database order.
pub fn transactions_csv(
    db: &KnotDatabase,
    index: &PrimeIndex,
    transactions: &[Transaction],
) -> String {
    let mut out = String::from("id");
    for e in index.entries() {
        out.push(',');
        out.push_str(e.id.as_str());
    }
    out.push('\n');
    for (r, t) in db.records().iter().zip(transactions) {
        out.push_str(&r.id);
        for c in &t.counts {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}
