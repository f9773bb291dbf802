//! Reidemeister R1/R2 reduction and seeded inverse moves.
//!
//! `simplify` greedily removes reducing patterns until none remain; every
//! step strictly decreases the crossing count, so the fixpoint is reached in
//! finitely many steps and the result is idempotent. Only R1 and R2 are
//! implemented; the corpus generator only ever inserts their inverses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, GaussEntry, Pass, Sign};

/// Smallest position where a label's two occurrences are cyclically adjacent.
fn find_r1(entries: &[GaussEntry]) -> Option<usize> {
    let m = entries.len();
    (0..m).find(|&i| entries[i].label == entries[(i + 1) % m].label)
}

/// Smallest position pair `(i, j)` such that entries `i, i+1` share one pass,
/// entries `j, j+1` the other, over the same two labels with opposite signs.
fn find_r2(entries: &[GaussEntry]) -> Option<(usize, usize)> {
    let m = entries.len();
    for i in 0..m {
        let (a, b) = (entries[i], entries[(i + 1) % m]);
        if a.label == b.label || a.pass != b.pass || a.sign == b.sign {
            continue;
        }
        for j in 0..m {
            let (c, d) = (entries[j], entries[(j + 1) % m]);
            if c.pass == a.pass.flipped()
                && d.pass == c.pass
                && (c.label == a.label && d.label == b.label
                    || c.label == b.label && d.label == a.label)
            {
                return Some((i, j));
            }
        }
    }
    None
}

fn remove_positions(entries: &[GaussEntry], remove: &[usize]) -> Vec<GaussEntry> {
    entries
        .iter()
        .enumerate()
        .filter(|(i, _)| !remove.contains(i))
        .map(|(_, e)| *e)
        .collect()
}

/// Applies reducing R1 and R2 moves to a fixpoint. Deterministic: at each
/// step the applicable move at the smallest cyclic position is taken, with R1
/// tried before R2.
pub fn simplify(d: &Diagram) -> Diagram {
    let mut entries = d.entries().to_vec();
    loop {
        let m = entries.len();
        if let Some(i) = find_r1(&entries) {
            entries = remove_positions(&entries, &[i, (i + 1) % m]);
            continue;
        }
        if let Some((i, j)) = find_r2(&entries) {
            entries = remove_positions(&entries, &[i, (i + 1) % m, j, (j + 1) % m]);
            continue;
        }
        break;
    }
    Diagram::new(entries).expect("deleting paired entries preserves validity")
}

fn max_label(entries: &[GaussEntry]) -> u32 {
    entries.iter().map(|e| e.label).max().unwrap_or(0)
}

fn insert_pair(entries: &mut Vec<GaussEntry>, gap: usize, pair: [GaussEntry; 2]) {
    entries.splice(gap..gap, pair);
}

fn random_gap(rng: &mut ChaCha8Rng, len: usize) -> usize {
    if len == 0 {
        0
    } else {
        rng.random_range(0..len)
    }
}

/// Applies `k` seeded-random inserting R1 or R2 moves. Deterministic given
/// `(d, k, seed)`; each move adds one (R1) or two (R2) crossings.
pub fn obfuscate(d: &Diagram, k: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = d.entries().to_vec();
    for _ in 0..k {
        let sign = if rng.random_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        if rng.random_bool(0.5) {
            // R1 insert: a kink, both occurrences adjacent.
            let label = max_label(&entries) + 1;
            let over_first = rng.random_bool(0.5);
            let gap = random_gap(&mut rng, entries.len());
            let (p1, p2) = if over_first {
                (Pass::Over, Pass::Under)
            } else {
                (Pass::Under, Pass::Over)
            };
            insert_pair(
                &mut entries,
                gap,
                [
                    GaussEntry {
                        label,
                        pass: p1,
                        sign,
                    },
                    GaussEntry {
                        label,
                        pass: p2,
                        sign,
                    },
                ],
            );
        } else {
            // R2 insert: an over-pair and an under-pair with opposite signs.
            let a = max_label(&entries) + 1;
            let b = a + 1;
            let gap = random_gap(&mut rng, entries.len());
            insert_pair(
                &mut entries,
                gap,
                [
                    GaussEntry {
                        label: a,
                        pass: Pass::Over,
                        sign,
                    },
                    GaussEntry {
                        label: b,
                        pass: Pass::Over,
                        sign: sign.flipped(),
                    },
                ],
            );
            let gap = random_gap(&mut rng, entries.len());
            let under = if rng.random_bool(0.5) { [a, b] } else { [b, a] };
            insert_pair(
                &mut entries,
                gap,
                [
                    GaussEntry {
                        label: under[0],
                        pass: Pass::Under,
                        sign: if under[0] == a { sign } else { sign.flipped() },
                    },
                    GaussEntry {
                        label: under[1],
                        pass: Pass::Under,
                        sign: if under[1] == a { sign } else { sign.flipped() },
                    },
                ],
            );
        }
    }
    Diagram::new(entries).expect("inserted moves preserve validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss, render_gauss};
    use crate::invariants::{jones, DEFAULT_BRACKET_CAP};

    fn trefoil() -> Diagram {
        parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap()
    }

    #[test]
    fn r1_kink_reduces_to_unknot() {
        let d = parse_gauss("O1+U1+").unwrap();
        assert!(simplify(&d).is_empty());
    }

    #[test]
    fn r2_pair_reduces_to_unknot() {
        let d = parse_gauss("O1+O2-U2-U1+").unwrap();
        assert!(simplify(&d).is_empty());
        // the other under-order reduces too
        let d = parse_gauss("O1+O2-U1+U2-").unwrap();
        assert!(simplify(&d).is_empty());
    }

    #[test]
    fn same_sign_pairs_are_not_r2() {
        // both crossings positive: not a reducing R2 pattern
        let d = parse_gauss("O1+O2+U1+U2+").unwrap();
        assert_eq!(simplify(&d), d);
    }

    #[test]
    fn trefoil_is_reduced() {
        assert_eq!(simplify(&trefoil()), trefoil());
    }

    #[test]
    fn wrapping_r1_is_found() {
        // the adjacent pair sits across the vector boundary
        let d = parse_gauss("U1+O2+U2+O1+").unwrap();
        assert!(simplify(&d).is_empty());
    }

    #[test]
    fn obfuscate_zero_moves_is_identity() {
        let d = trefoil();
        assert_eq!(obfuscate(&d, 0, 123), d);
    }

    #[test]
    fn obfuscate_is_deterministic() {
        let a = obfuscate(&trefoil(), 10, 42);
        let b = obfuscate(&trefoil(), 10, 42);
        assert_eq!(a, b);
        let c = obfuscate(&trefoil(), 10, 43);
        assert_ne!(render_gauss(&a), render_gauss(&c));
    }

    #[test]
    fn obfuscate_grows_by_one_or_two_per_move() {
        let d = trefoil();
        for seed in 0..20 {
            let o = obfuscate(&d, 5, seed);
            let grown = o.crossing_count() - d.crossing_count();
            assert!((5..=10).contains(&grown), "grew by {grown}");
        }
    }

    #[test]
    fn single_insert_simplifies_back_to_unknot() {
        for seed in 0..20 {
            let o = obfuscate(&Diagram::default(), 1, seed);
            assert!(!o.is_empty());
            assert!(simplify(&o).is_empty());
        }
    }

    #[test]
    fn simplify_is_idempotent() {
        for seed in 0..10 {
            let o = obfuscate(&trefoil(), 8, seed);
            let s = simplify(&o);
            assert_eq!(simplify(&s), s);
        }
    }

    #[test]
    fn jones_is_invariant_under_moves() {
        let cap = DEFAULT_BRACKET_CAP;
        let v = jones(&trefoil(), cap).unwrap();
        for seed in [1, 7, 99] {
            let o = obfuscate(&trefoil(), 6, seed);
            assert_eq!(jones(&o, cap).unwrap(), v, "seed {seed}");
            assert_eq!(jones(&simplify(&o), cap).unwrap(), v, "seed {seed}");
        }
    }

    #[test]
    fn simplify_never_increases_crossings() {
        for seed in 0..10 {
            let o = obfuscate(&trefoil(), 10, seed);
            assert!(simplify(&o).crossing_count() <= o.crossing_count());
        }
    }
}
