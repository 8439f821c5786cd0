//! Hilbert series of graded modules presented by monomial lead-term data:
//! numerator over (1 - z)^m, with Krull dimension read off the pole order
//! and multiplicity/length from the cleared numerator.

use crate::poly::Monomial;
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub type Numerator = BTreeMap<i64, BigInt>;

fn canon(mut n: Numerator) -> Numerator {
    n.retain(|_, c| !c.is_zero());
    n
}

pub fn numer_add(a: &Numerator, b: &Numerator) -> Numerator {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_insert_with(BigInt::zero) += v;
    }
    canon(out)
}

pub fn numer_shift(a: &Numerator, s: i64) -> Numerator {
    a.iter().map(|(k, v)| (k + s, v.clone())).collect()
}

/// Multiply by (1 - z^d).
pub fn numer_mul_one_minus_zd(a: &Numerator, d: i64) -> Numerator {
    let mut out = a.clone();
    for (k, v) in a {
        *out.entry(k + d).or_insert_with(BigInt::zero) -= v;
    }
    canon(out)
}

fn eval_at_1(a: &Numerator) -> BigInt {
    a.values().sum()
}

/// Quotient by (1 - z); requires the value at 1 to vanish.
fn divide_one_minus_z(a: &Numerator) -> Numerator {
    debug_assert!(eval_at_1(a).is_zero());
    let mut out = Numerator::new();
    let mut acc = BigInt::zero();
    let (lo, hi) = match (a.keys().next(), a.keys().last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return out,
    };
    for k in lo..hi {
        if let Some(c) = a.get(&k) {
            acc += c;
        }
        if !acc.is_zero() {
            out.insert(k, acc.clone());
        }
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut keep = vec![true; gens.len()];
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j && keep[j] && gens[i].try_div(&gens[j]).is_some() && (gens[i] != gens[j] || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect()
}

type Memo = HashMap<Vec<Monomial>, Numerator>;

/// Numerator of the Hilbert series of Q/M over (1 - z)^nvars, for a monomial
/// ideal M, by the pivot-variable splitting recursion
/// H(Q/M) = H(Q/(M + x)) + z * H(Q/(M : x)).
fn monomial_numerator(nvars: usize, gens: &[Monomial], memo: &mut Memo) -> Numerator {
    let gens = minimalize(gens.to_vec());
    if gens.iter().any(|g| g.is_one()) {
        return Numerator::new();
    }
    if gens.is_empty() {
        let mut out = Numerator::new();
        out.insert(0, BigInt::one());
        return out;
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    // Pairwise coprime generators: product formula.
    let coprime = (0..gens.len()).all(|i| {
        (0..i).all(|j| {
            gens[i]
                .0
                .iter()
                .zip(&gens[j].0)
                .all(|(a, b)| *a == 0 || *b == 0)
        })
    });
    let result = if coprime {
        let mut out = Numerator::new();
        out.insert(0, BigInt::one());
        for g in &gens {
            out = numer_mul_one_minus_zd(&out, g.degree());
        }
        out
    } else {
        // Pivot: variable dividing the most generators.
        let pivot = (0..nvars)
            .max_by_key(|&v| gens.iter().filter(|g| g.0[v] > 0).count())
            .unwrap();
        let x = Monomial::var(nvars, pivot);
        let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.0[pivot] == 0).cloned().collect();
        plus.push(x.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| {
                let mut e = g.0.clone();
                if e[pivot] > 0 {
                    e[pivot] -= 1;
                }
                Monomial(e)
            })
            .collect();
        numer_add(
            &monomial_numerator(nvars, &plus, memo),
            &numer_shift(&monomial_numerator(nvars, &colon, memo), 1),
        )
    };
    memo.insert(gens, result.clone());
    result
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numer: Numerator,
    pub denom_pow: usize,
}

impl HilbertSeries {
    /// Series of a free-module quotient from leading terms of a Groebner
    /// basis of the submodule: per coordinate, a monomial-ideal quotient
    /// shifted by the coordinate degree.
    pub fn from_lead_terms(
        nvars: usize,
        shifts: &[i64],
        lead_terms: &[(usize, Monomial)],
    ) -> HilbertSeries {
        let mut memo = Memo::new();
        let mut numer = Numerator::new();
        for (coord, &s) in shifts.iter().enumerate() {
            let gens: Vec<Monomial> = lead_terms
                .iter()
                .filter(|(c, _)| *c == coord)
                .map(|(_, m)| m.clone())
                .collect();
            let part = monomial_numerator(nvars, &gens, &mut memo);
            numer = numer_add(&numer, &numer_shift(&part, s));
        }
        HilbertSeries {
            numer,
            denom_pow: nvars,
        }
    }

    pub fn free_ring(nvars: usize) -> HilbertSeries {
        HilbertSeries::from_lead_terms(nvars, &[0], &[])
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    /// Order of vanishing of the numerator at z = 1.
    fn numer_pole_cancellation(&self) -> (usize, Numerator) {
        let mut n = self.numer.clone();
        let mut v = 0usize;
        while !n.is_empty() && eval_at_1(&n).is_zero() {
            n = divide_one_minus_z(&n);
            v += 1;
        }
        (v, n)
    }

    /// Krull dimension; -1 for the zero module.
    pub fn dim(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let (v, _) = self.numer_pole_cancellation();
        self.denom_pow as i64 - v as i64
    }

    /// Hilbert-Samuel multiplicity with respect to the irrelevant maximal
    /// ideal; equals the length in dimension <= 0.
    pub fn multiplicity(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let (_, cleared) = self.numer_pole_cancellation();
        eval_at_1(&cleared)
    }

    pub fn is_finite_length(&self) -> bool {
        self.dim() <= 0
    }

    pub fn length(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_finite_length() {
            Some(self.multiplicity())
        } else {
            None
        }
    }

    /// Coefficient of z^d in the expanded series: the vector-space dimension
    /// of the graded piece.
    pub fn graded_dim(&self, d: i64) -> BigInt {
        // numer(z) * sum_{k>=0} binom(k+m-1, m-1) z^k
        let m = self.denom_pow as i64;
        let mut acc = BigInt::zero();
        for (k, c) in &self.numer {
            let e = d - k;
            if e < 0 {
                continue;
            }
            acc += c * binom(e + m - 1, m - 1);
        }
        acc
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numer.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.numer {
            if first {
                write!(f, "{c}")?;
                first = false;
            } else if c.sign() == num::bigint::Sign::Minus {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if *k != 0 {
                write!(f, "*z^{k}")?;
            }
            if first {
                first = false;
            }
        }
        write!(f, " / (1-z)^{}", self.denom_pow)
    }
}
