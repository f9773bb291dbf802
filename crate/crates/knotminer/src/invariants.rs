//! Kauffman bracket, writhe, Jones polynomial, determinant, and invariant
//! fingerprints.
//!
//! The bracket is a full state sum: each of the `2^n` smoothing states
//! contributes `A^(a-b) * delta^(loops-1)` with `delta = -A^2 - A^-2`, where
//! `a`/`b` count A- and B-smoothings and loops are counted by disjoint-set
//! union over the `2n` arc segments of the Gauss code. For a +1 crossing the
//! orientation-respecting smoothing is the A-smoothing; for a -1 crossing it
//! is the B-smoothing.
//!
//! The Jones polynomial is `(-A^3)^(-writhe) * bracket` re-expressed in
//! `t = A^-4`; every exponent of the normalized bracket must be divisible by
//! four, which turns orientation bookkeeping bugs into hard errors instead of
//! silently wrong invariants.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::laurent::{laurent_mul, LaurentPoly};

/// Default crossing capacity of the state sum (2^24 states worst case).
pub const DEFAULT_BRACKET_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, exceeding the bracket capacity {cap}")]
    CapacityExceeded { crossings: usize, cap: usize },
    #[error("normalized bracket exponent {exponent} is not divisible by 4")]
    ExponentNotMultipleOfFour { exponent: i64 },
    #[error("determinant does not fit in 64 bits")]
    DeterminantTooLarge,
}

/// Sum of crossing signs, one per label.
pub fn writhe(d: &Diagram) -> i64 {
    d.occurrences()
        .iter()
        .map(|&(_, p1, _)| d.entries()[p1].sign.value())
        .sum()
}

struct ArcUnion {
    parent: Vec<u32>,
    merges: usize,
}

impl ArcUnion {
    fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
        self.merges = 0;
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
            self.merges += 1;
        }
    }
}

/// Kauffman bracket in the variable `A`. The 0-crossing diagram has bracket 1.
pub fn kauffman_bracket(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let n = d.crossing_count();
    if n > cap {
        return Err(InvariantError::CapacityExceeded { crossings: n, cap });
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let m = 2 * n;
    // Arc i runs from entry i to entry i+1 (cyclically); the passage at
    // position p enters on arc p-1 and leaves on arc p.
    let crossings: Vec<(bool, u32, u32, u32, u32)> = d
        .occurrences()
        .iter()
        .map(|&(label, p1, p2)| {
            let sign_plus = d.entries()[p1].sign.value() > 0;
            debug_assert_eq!(d.entries()[p1].label, label);
            let in1 = ((p1 + m - 1) % m) as u32;
            let out1 = p1 as u32;
            let in2 = ((p2 + m - 1) % m) as u32;
            let out2 = p2 as u32;
            (sign_plus, in1, out1, in2, out2)
        })
        .collect();

    // States are grouped by (a-b, loop count); the polynomial is assembled
    // once at the end from the group counts.
    let mut counts = vec![vec![0u64; n + 2]; 2 * n + 1];
    let mut dsu = ArcUnion {
        parent: Vec::with_capacity(m),
        merges: 0,
    };
    for state in 0u64..(1u64 << n) {
        dsu.reset(m);
        let a_smoothings = state.count_ones() as i64;
        for (k, &(sign_plus, in1, out1, in2, out2)) in crossings.iter().enumerate() {
            let use_a = (state >> k) & 1 == 1;
            let oriented = use_a == sign_plus;
            if oriented {
                dsu.union(in1, out2);
                dsu.union(in2, out1);
            } else {
                dsu.union(in1, in2);
                dsu.union(out1, out2);
            }
        }
        let loops = m - dsu.merges;
        let a_minus_b = 2 * a_smoothings - n as i64;
        counts[(a_minus_b + n as i64) as usize][loops] += 1;
    }

    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut delta_pows = Vec::with_capacity(n + 1);
    delta_pows.push(LaurentPoly::one());
    for _ in 0..n {
        delta_pows.push(laurent_mul(delta_pows.last().expect("nonempty"), &delta));
    }
    let mut bracket = LaurentPoly::zero();
    for (row, per_loops) in counts.iter().enumerate() {
        let a_minus_b = row as i64 - n as i64;
        for (loops, &cnt) in per_loops.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for (e, c) in delta_pows[loops - 1].terms() {
                bracket.add_term(e + a_minus_b, c * BigInt::from(cnt));
            }
        }
    }
    Ok(bracket)
}

/// Jones polynomial in `t`: the writhe-normalized bracket with each
/// `A`-exponent `e` mapped to `t`-exponent `-e/4`.
pub fn jones(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let bracket = kauffman_bracket(d, cap)?;
    let w = writhe(d);
    // (-A^3)^(-w) = (-1)^w A^(-3w)
    let norm = LaurentPoly::monomial(-3 * w, if w.rem_euclid(2) == 0 { 1 } else { -1 });
    let f = laurent_mul(&bracket, &norm);
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        if e % 4 != 0 {
            return Err(InvariantError::ExponentNotMultipleOfFour { exponent: e });
        }
        out.add_term(-e / 4, c.clone());
    }
    Ok(out)
}

/// `|V(-1)|`, the knot determinant.
pub fn determinant(d: &Diagram, cap: usize) -> Result<u64, InvariantError> {
    let v = jones(d, cap)?;
    let det = v.eval_at_minus_one().abs();
    u64::try_from(det).map_err(|_| InvariantError::DeterminantTooLarge)
}

/// Jones polynomial plus determinant; equality of fingerprints is the
/// library's knot-equivalence test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub jones: LaurentPoly,
    pub determinant: u64,
}

impl Fingerprint {
    pub fn is_trivial(&self) -> bool {
        self.jones.is_one()
    }
}

pub fn fingerprint(d: &Diagram, cap: usize) -> Result<Fingerprint, InvariantError> {
    let jones = jones(d, cap)?;
    let det = jones.eval_at_minus_one().abs();
    let determinant = u64::try_from(det).map_err(|_| InvariantError::DeterminantTooLarge)?;
    Ok(Fingerprint { jones, determinant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{connected_sum, parse_gauss};
    use crate::laurent::laurent_mul;
    use crate::moves::obfuscate;

    const CAP: usize = DEFAULT_BRACKET_CAP;

    fn trefoil() -> Diagram {
        parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap()
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&Diagram::default()), 0);
        assert_eq!(writhe(&trefoil()), 3);
        assert_eq!(writhe(&trefoil().mirror()), -3);
        assert_eq!(writhe(&parse_gauss("O1+U1+").unwrap()), 1);
    }

    #[test]
    fn bracket_of_unknot_is_one() {
        assert_eq!(
            kauffman_bracket(&Diagram::default(), CAP).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn bracket_of_positive_kink() {
        let d = parse_gauss("O1+U1+").unwrap();
        assert_eq!(
            kauffman_bracket(&d, CAP).unwrap(),
            LaurentPoly::monomial(3, -1)
        );
    }

    #[test]
    fn bracket_of_trefoil() {
        // A^-7 - A^-3 - A^5
        let expected = LaurentPoly::from_terms([(-7, 1), (-3, -1), (5, -1)]);
        assert_eq!(kauffman_bracket(&trefoil(), CAP).unwrap(), expected);
    }

    #[test]
    fn granny_bracket_is_square_of_trefoil_bracket() {
        let t = kauffman_bracket(&trefoil(), CAP).unwrap();
        let granny = connected_sum(&trefoil(), &trefoil());
        let g = kauffman_bracket(&granny, CAP).unwrap();
        assert_eq!(g, laurent_mul(&t, &t));
    }

    #[test]
    fn jones_examples() {
        assert_eq!(jones(&Diagram::default(), CAP).unwrap(), LaurentPoly::one());
        assert_eq!(
            jones(&parse_gauss("O1+U1+").unwrap(), CAP).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            jones(&parse_gauss("O1-U1-").unwrap(), CAP).unwrap(),
            LaurentPoly::one()
        );
        // right trefoil: -t^4 + t^3 + t
        let expected = LaurentPoly::from_terms([(1, 1), (3, 1), (4, -1)]);
        assert_eq!(jones(&trefoil(), CAP).unwrap(), expected);
    }

    #[test]
    fn jones_of_mirror_inverts_the_variable() {
        let v = jones(&trefoil(), CAP).unwrap();
        let vm = jones(&trefoil().mirror(), CAP).unwrap();
        assert_eq!(vm, v.invert_variable());
        assert_ne!(vm, v);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&Diagram::default(), CAP).unwrap(), 1);
        assert_eq!(determinant(&trefoil(), CAP).unwrap(), 3);
        let figure8 = parse_gauss("O1+U2+O3-U4-O2+U1+O4-U3-").unwrap();
        assert_eq!(determinant(&figure8, CAP).unwrap(), 5);
    }

    #[test]
    fn fingerprint_examples() {
        let unknot = fingerprint(&Diagram::default(), CAP).unwrap();
        assert!(unknot.is_trivial());
        assert_eq!(unknot.determinant, 1);

        let t = fingerprint(&trefoil(), CAP).unwrap();
        let obf = fingerprint(&obfuscate(&trefoil(), 10, 7), CAP).unwrap();
        assert_eq!(t, obf);

        let m = fingerprint(&trefoil().mirror(), CAP).unwrap();
        assert_ne!(t, m);
        assert_eq!(m.jones, t.jones.invert_variable());
    }

    #[test]
    fn jones_multiplicative_under_connected_sum() {
        let figure8 = parse_gauss("O1+U2+O3-U4-O2+U1+O4-U3-").unwrap();
        let sum = connected_sum(&trefoil(), &figure8);
        let v = jones(&sum, CAP).unwrap();
        let prod = laurent_mul(
            &jones(&trefoil(), CAP).unwrap(),
            &jones(&figure8, CAP).unwrap(),
        );
        assert_eq!(v, prod);
    }

    #[test]
    fn capacity_is_enforced() {
        assert_eq!(
            kauffman_bracket(&trefoil(), 2),
            Err(InvariantError::CapacityExceeded {
                crossings: 3,
                cap: 2
            })
        );
        assert!(jones(&trefoil(), 3).is_ok());
    }

    #[test]
    fn bracket_term_count_is_bounded() {
        for code in ["O1+U1+", "O1+U2+O3+U1+O2+U3+", "O1+U2+O3-U4-O2+U1+O4-U3-"] {
            let d = parse_gauss(code).unwrap();
            let b = kauffman_bracket(&d, CAP).unwrap();
            assert!(b.term_count() <= 1 << d.crossing_count());
        }
    }
}
