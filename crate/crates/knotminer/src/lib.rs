//! Frequent knot mining over databases of knot diagrams.
//!
//! A knot database is encoded into a transaction database by decomposing every
//! knot into its prime connected-sum factors, frequent count-vector patterns
//! are mined level-wise, and each frequent pattern is decoded back into a knot
//! diagram. Knot equivalence is decided by an invariant fingerprint (Jones
//! polynomial plus determinant) against a built-in table of prime knots up to
//! seven crossings.
//!
//! Pipeline: [`mining::encode_db`] → [`mining::mine_frequent`] →
//! [`mining::decode`], wired together by [`mining::run_knotminer`].
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so the whole API is safe to share across threads.

pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod factor;
pub mod invariants;
pub mod laurent;
pub mod mining;
pub mod moves;

pub use catalog::{builtin_catalog, Catalog, PrimeId};
pub use diagram::{
    connected_sum, parse_gauss, render_gauss, Diagram, GaussEntry, KnotDatabase, KnotRecord, Pass,
    Sign,
};
pub use factor::{decompose, split_blocks, subknot, support_knot, Decomposition};
pub use invariants::{
    determinant, fingerprint, jones, kauffman_bracket, writhe, Fingerprint, DEFAULT_BRACKET_CAP,
};
pub use laurent::{laurent_mul, LaurentPoly};
pub use mining::{
    decode, encode_db, mine_frequent, run_knotminer, support_pattern, Pattern, PrimeIndex,
    Transaction,
};
pub use moves::{obfuscate, simplify};
