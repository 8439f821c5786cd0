//! Exact coefficient arithmetic: a prime field F_p with machine-word
//! representatives, or the rationals with arbitrary precision.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// F_p for a prime p <= 2^31.
    Prime(u32),
    Rationals,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. `Fp` values are always reduced representatives in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u64),
    Rat(BigRational),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(a) => *a == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp(a) => *a == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Prime(p) => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                Ok(())
            }
            FieldSpec::Rationals => Ok(()),
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(0),
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(1),
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Prime(p) => {
                let p = *p as i64;
                Coeff::Fp(n.rem_euclid(p) as u64)
            }
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Coeff {
        let d = self.inv(&self.from_int(den));
        self.mul(&self.from_int(num), &d)
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp((a + b) % *p as u64),
            (FieldSpec::Rationals, Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(a)) => {
                let p = *p as u64;
                Coeff::Fp(if *a == 0 { 0 } else { p - a })
            }
            (FieldSpec::Rationals, Coeff::Rat(a)) => Coeff::Rat(-a),
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp((a * b) % *p as u64),
            (FieldSpec::Rationals, Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(a)) => {
                assert!(*a != 0, "division by zero");
                // Fermat: a^(p-2) mod p.
                let p = *p as u64;
                let mut base = *a;
                let mut e = p - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Coeff::Fp(acc)
            }
            (FieldSpec::Rationals, Coeff::Rat(a)) => {
                assert!(!a.is_zero(), "division by zero");
                Coeff::Rat(a.recip())
            }
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Canonical textual form: integers in F_p, `a/b` or integers in Q.
    pub fn display(&self, a: &Coeff) -> String {
        match a {
            Coeff::Fp(a) => a.to_string(),
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// True when the canonical sign of the coefficient is negative (Q only;
    /// F_p representatives are never negative).
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(_) => false,
            Coeff::Rat(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "QQ"),
        }
    }
}
