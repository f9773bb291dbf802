//! Exact Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! The variable is implicit: bracket values live in `A`, Jones values in `t`.
//! No zero coefficient is ever stored, so term-wise equality is polynomial
//! equality. Coefficients are `BigInt`, which rules out silent overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exponent: i64, coefficient: impl Into<BigInt>) -> Self {
        let c = coefficient.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shifted(&self, shift: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x -> x^-1`, negating every exponent.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Value at `x = -1`; well defined for Laurent polynomials since
    /// `(-1)^-1 = -1`.
    pub fn eval_at_minus_one(&self) -> BigInt {
        let mut sum = BigInt::zero();
        for (&e, c) in &self.terms {
            if e.rem_euclid(2) == 0 {
                sum += c;
            } else {
                sum -= c;
            }
        }
        sum
    }

    /// Exact division: `Some(q)` with `q * divisor == self`, or `None` when
    /// the quotient does not exist over the integers.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let num_min = self.min_exponent().expect("nonzero");
        let den_min = divisor.min_exponent().expect("nonzero");
        let den_max = divisor.max_exponent().expect("nonzero");
        let den_deg = den_max - den_min;
        let den_lead = divisor.coefficient(den_max);

        // Work with the shift that makes the divisor an ordinary polynomial
        // with nonzero constant term; the quotient then has min exponent 0.
        let mut rem = self.shifted(-num_min);
        let den = divisor.shifted(-den_min);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let top = rem.max_exponent().expect("nonzero");
            if top < den_deg {
                return None;
            }
            let c = rem.coefficient(top);
            if !(&c % &den_lead).is_zero() {
                return None;
            }
            let qc = &c / &den_lead;
            let qe = top - den_deg;
            for (e, dc) in den.terms() {
                rem.add_term(e + qe, -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot.shifted(num_min - den_min))
    }

    /// Canonical text form: terms by ascending exponent, e.g. `t + t^3 - t^4`;
    /// `1` for the constant one and `0` for zero.
    pub fn to_text(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if e == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push(var);
                if e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }
}

/// Exact convolution product.
pub fn laurent_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p * q
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('t'))
    }
}
