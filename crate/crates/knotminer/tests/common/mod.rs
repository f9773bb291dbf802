//! Shared test oracles, kept independent of the library's bracket
//! implementation.
//!
//! `skein_bracket` resolves crossings one at a time by explicit circle
//! surgery: the diagram is a set of circles carrying the remaining crossing
//! passages, and each smoothing either splits a circle, merges two, or
//! reverses a segment. No arc indexing or union-find is involved, so it fails
//! independently of the state-sum path it cross-checks.

use knotminer::diagram::Diagram;
use knotminer::laurent::LaurentPoly;
use knotminer::mining::Transaction;

#[derive(Clone, Copy)]
struct Passage {
    crossing: usize,
    flipped: bool,
}

type Circle = Vec<Passage>;

fn locate(circles: &[Circle], crossing: usize) -> Vec<(usize, usize)> {
    let mut found = Vec::with_capacity(2);
    for (ci, c) in circles.iter().enumerate() {
        for (pi, p) in c.iter().enumerate() {
            if p.crossing == crossing {
                found.push((ci, pi));
            }
        }
    }
    found
}

fn reversed_flipped(part: &[Passage]) -> Vec<Passage> {
    part.iter()
        .rev()
        .map(|p| Passage {
            crossing: p.crossing,
            flipped: !p.flipped,
        })
        .collect()
}

/// Applies one smoothing of `crossing` and returns the new circle set.
/// `oriented` selects the orientation-respecting reconnection as defined on
/// the original strand directions.
fn smooth(circles: &[Circle], crossing: usize, oriented: bool) -> Vec<Circle> {
    let found = locate(circles, crossing);
    assert_eq!(found.len(), 2, "a crossing has exactly two passages");
    let ((c1, i), (c2, j)) = (found[0], found[1]);
    let mut out: Vec<Circle> = Vec::with_capacity(circles.len() + 1);
    if c1 == c2 {
        let c = &circles[c1];
        let (f1, f2) = (c[i].flipped, c[j].flipped);
        // passages in one circle: i < j by construction of locate
        let arc_a: Vec<Passage> = c[i + 1..j].to_vec();
        let arc_b: Vec<Passage> = c[j + 1..].iter().chain(&c[..i]).copied().collect();
        let parallel = oriented == (f1 == f2);
        for (ci, other) in circles.iter().enumerate() {
            if ci != c1 {
                out.push(other.clone());
            }
        }
        if parallel {
            out.push(arc_a);
            out.push(arc_b);
        } else {
            let mut merged = arc_b;
            merged.extend(reversed_flipped(&arc_a));
            out.push(merged);
        }
    } else {
        let (f1, f2) = (circles[c1][i].flipped, circles[c2][j].flipped);
        let rest1: Vec<Passage> = circles[c1][i + 1..]
            .iter()
            .chain(&circles[c1][..i])
            .copied()
            .collect();
        let rest2: Vec<Passage> = circles[c2][j + 1..]
            .iter()
            .chain(&circles[c2][..j])
            .copied()
            .collect();
        for (ci, other) in circles.iter().enumerate() {
            if ci != c1 && ci != c2 {
                out.push(other.clone());
            }
        }
        let parallel = oriented == (f1 == f2);
        let mut merged = rest1;
        if parallel {
            merged.extend(rest2);
        } else {
            merged.extend(reversed_flipped(&rest2));
        }
        out.push(merged);
    }
    out
}

fn recurse(
    circles: Vec<Circle>,
    next: usize,
    signs: &[bool],
    a_exp: i64,
    delta_pows: &[LaurentPoly],
    acc: &mut LaurentPoly,
) {
    if next == signs.len() {
        for (e, c) in delta_pows[circles.len() - 1].terms() {
            acc.add_term(e + a_exp, c.clone());
        }
        return;
    }
    let positive = signs[next];
    // A-smoothing is the oriented one at a positive crossing
    let a_branch = smooth(&circles, next, positive);
    recurse(a_branch, next + 1, signs, a_exp + 1, delta_pows, acc);
    let b_branch = smooth(&circles, next, !positive);
    recurse(b_branch, next + 1, signs, a_exp - 1, delta_pows, acc);
}

pub fn skein_bracket(d: &Diagram) -> LaurentPoly {
    let occ = d.occurrences();
    let n = occ.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let m = 2 * n;
    let mut crossing_of_pos = vec![0usize; m];
    let mut signs = vec![false; n];
    for (k, &(_, p1, p2)) in occ.iter().enumerate() {
        crossing_of_pos[p1] = k;
        crossing_of_pos[p2] = k;
        signs[k] = d.entries()[p1].sign.value() > 0;
    }
    let start: Circle = (0..m)
        .map(|p| Passage {
            crossing: crossing_of_pos[p],
            flipped: false,
        })
        .collect();
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut delta_pows = vec![LaurentPoly::one()];
    for _ in 0..n + 1 {
        delta_pows.push(laurent_product(delta_pows.last().unwrap(), &delta));
    }
    let mut acc = LaurentPoly::zero();
    recurse(vec![start], 0, &signs, 0, &delta_pows, &mut acc);
    acc
}

fn laurent_product(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    knotminer::laurent::laurent_mul(p, q)
}

pub fn skein_jones(d: &Diagram) -> LaurentPoly {
    let bracket = skein_bracket(d);
    let w: i64 = d
        .occurrences()
        .iter()
        .map(|&(_, p1, _)| d.entries()[p1].sign.value())
        .sum();
    let norm = LaurentPoly::monomial(-3 * w, if w.rem_euclid(2) == 0 { 1 } else { -1 });
    let f = laurent_product(&bracket, &norm);
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        assert_eq!(
            e % 4,
            0,
            "normalized bracket exponent {e} not divisible by 4"
        );
        out.add_term(-e / 4, c.clone());
    }
    out
}

/// Brute-force frequent-pattern oracle: every vector bounded by the
/// componentwise transaction maximum, kept when its support exceeds sigma.
pub fn brute_force_patterns(ts: &[Transaction], sigma: usize) -> Vec<(Vec<u32>, usize)> {
    let Some(first) = ts.first() else {
        return Vec::new();
    };
    let p = first.counts.len();
    let mut maxes = vec![0u32; p];
    for t in ts {
        for (m, &c) in maxes.iter_mut().zip(&t.counts) {
            *m = (*m).max(c);
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; p];
    loop {
        if current.iter().any(|&c| c > 0) {
            let support = ts
                .iter()
                .filter(|t| t.counts.iter().zip(&current).all(|(a, b)| a >= b))
                .count();
            if support > sigma {
                out.push((current.clone(), support));
            }
        }
        let mut i = 0;
        loop {
            if i == p {
                return out;
            }
            if current[i] < maxes[i] {
                current[i] += 1;
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}
