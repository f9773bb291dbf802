//! Seeded synthetic knot-database generator.
//!
//! Every record is a connected sum of catalog primes, each factor obfuscated
//! independently before composition so the sum stays splittable into blocks.
//! The planted factor multisets are returned alongside the database as ground
//! truth for recovery tests. Generation is a pure function of the parameters;
//! per-record randomness derives from (seed, record index), so records are
//! independent of each other.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::builtin_catalog;
use crate::diagram::{connected_sum, Diagram, KnotDatabase, KnotRecord};
use crate::factor::Decomposition;
use crate::moves::obfuscate;

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub count: usize,
    pub max_factors: usize,
    pub moves: usize,
    pub max_crossings: usize,
    pub seed: u64,
    /// Extra moves applied after composition; these can entangle factor
    /// boundaries and route decomposition through the Jones fallback.
    pub global_moves: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("max_factors must be at least 1")]
    NoFactors,
    #[error("max_crossings {max} outside the bundled catalog range 3..=7")]
    Range { max: usize },
}

fn record_rng(seed: u64, record: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (record as u64 + 1).wrapping_mul(0x9e3779b97f4a7c15))
}

/// Generates `count` records, each a seeded-random connected sum of 1 to
/// `max_factors` catalog primes with `moves` obfuscating insertions per
/// factor. Returns the database and the planted decompositions in record
/// order.
pub fn gen_database(params: &GenParams) -> Result<(KnotDatabase, Vec<Decomposition>), GenError> {
    if params.max_factors == 0 {
        return Err(GenError::NoFactors);
    }
    let catalog = builtin_catalog(params.max_crossings).map_err(|_| GenError::Range {
        max: params.max_crossings,
    })?;
    let mut records = Vec::with_capacity(params.count);
    let mut planted = Vec::with_capacity(params.count);
    for i in 0..params.count {
        let mut rng = record_rng(params.seed, i);
        let factor_count = rng.random_range(1..=params.max_factors);
        let mut truth = Decomposition::new();
        let mut factors = Vec::with_capacity(factor_count);
        for _ in 0..factor_count {
            let entry = &catalog.entries()[rng.random_range(0..catalog.len())];
            truth.bump(entry.id.clone(), 1);
            let factor_seed = rng.random::<u64>();
            factors.push(obfuscate(&entry.diagram, params.moves, factor_seed));
        }
        factors.shuffle(&mut rng);
        let mut diagram = Diagram::default();
        for f in &factors {
            diagram = connected_sum(&diagram, f);
        }
        if params.global_moves > 0 {
            let global_seed = rng.random::<u64>();
            diagram = obfuscate(&diagram, params.global_moves, global_seed);
        }
        records.push(KnotRecord {
            id: format!("k{i:04}"),
            diagram,
        });
        planted.push(truth);
    }
    let db = KnotDatabase::new(records).expect("generated ids are distinct");
    Ok((db, planted))
}

#[derive(Serialize, Deserialize)]
struct TruthRow {
    id: String,
    multiset: std::collections::BTreeMap<String, u32>,
}

/// Sidecar JSON with the planted multiset per record id.
pub fn planted_truth_json(db: &KnotDatabase, planted: &[Decomposition]) -> String {
    let rows: Vec<TruthRow> = db
        .records()
        .iter()
        .zip(planted)
        .map(|(r, dec)| TruthRow {
            id: r.id.clone(),
            multiset: dec
                .iter()
                .map(|(id, &n)| (id.as_str().to_string(), n))
                .collect(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("truth rows serialize");
    out.push('\n');
    out
}
