//! Elements of graded free modules: a fixed-rank vector of polynomials,
//! graded via per-coordinate degree shifts.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{Monomial, PolyRing, Polynomial};
use std::cmp::Ordering;
use std::sync::Arc;

pub type FreeElem = Vec<Polynomial>;

pub fn elem_zero(ring: &Arc<PolyRing>, rank: usize) -> FreeElem {
    (0..rank).map(|_| Polynomial::zero(ring)).collect()
}

pub fn elem_is_zero(v: &FreeElem) -> bool {
    v.iter().all(|p| p.is_zero())
}

pub fn elem_add(a: &FreeElem, b: &FreeElem) -> FreeElem {
    a.iter().zip(b).map(|(p, q)| p.add(q)).collect()
}

pub fn elem_sub(a: &FreeElem, b: &FreeElem) -> FreeElem {
    a.iter().zip(b).map(|(p, q)| p.sub(q)).collect()
}

pub fn elem_neg(a: &FreeElem) -> FreeElem {
    a.iter().map(|p| p.neg()).collect()
}

pub fn elem_scale(a: &FreeElem, c: &Coeff) -> FreeElem {
    a.iter().map(|p| p.scale(c)).collect()
}

pub fn elem_mul_term(a: &FreeElem, m: &Monomial, c: &Coeff) -> FreeElem {
    a.iter().map(|p| p.mul_term(m, c)).collect()
}

pub fn elem_mul_poly(a: &FreeElem, p: &Polynomial) -> FreeElem {
    a.iter().map(|q| q.mul(p)).collect()
}

/// Standard basis vector `p * e_i` of a rank-`rank` free module.
pub fn elem_unit(ring: &Arc<PolyRing>, rank: usize, i: usize, p: &Polynomial) -> FreeElem {
    let mut v = elem_zero(ring, rank);
    v[i] = p.clone();
    v
}

/// Position-over-term order with coordinate priority by index: terms in a
/// lower-indexed coordinate are greater; ties break by the ring's monomial
/// order.
pub fn term_cmp(
    ring: &PolyRing,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ring.order.cmp(a.1, b.1),
    }
}

/// Leading term of a free-module element under the position-over-term order.
pub fn elem_lead(v: &FreeElem) -> Option<(usize, &Monomial, &Coeff)> {
    for (i, p) in v.iter().enumerate() {
        if let Some((m, c)) = p.leading() {
            return Some((i, m, c));
        }
    }
    None
}

/// Degree of a homogeneous element with respect to coordinate shifts: every
/// nonzero entry must satisfy deg(entry) + shift = common value.
pub fn elem_degree(v: &FreeElem, shifts: &[i64]) -> Result<Option<i64>> {
    let mut deg: Option<i64> = None;
    for (p, &s) in v.iter().zip(shifts) {
        if p.is_zero() {
            continue;
        }
        let d = p
            .homogeneous_degree()?
            .expect("nonzero polynomial has a degree")
            + s;
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::Inhomogeneous(format_elem(v)));
            }
            _ => {}
        }
    }
    Ok(deg)
}

pub fn elem_is_homogeneous(v: &FreeElem, shifts: &[i64]) -> bool {
    elem_degree(v, shifts).is_ok()
}

pub fn format_elem(v: &FreeElem) -> String {
    let entries: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    format!("[{}]", entries.join(", "))
}

/// Matrix-by-column application: columns are elements of the source free
/// module expressed over the target one.
pub fn apply_columns(columns: &[FreeElem], coeffs: &FreeElem) -> FreeElem {
    let mut acc = columns[0].iter().map(|p| Polynomial::zero(&p.ring)).collect::<Vec<_>>();
    for (col, c) in columns.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = elem_add(&acc, &elem_mul_poly(col, c));
        }
    }
    acc
}
