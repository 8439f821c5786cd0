//! Homogeneous ideals with Groebner-backed arithmetic. Ideals of the
//! quotient A = Q/(f) are represented by generators over Q; every basis
//! computation over A appends the regular sequence.

use crate::error::{Error, Result};
use crate::free::{elem_is_zero, FreeElem};
use crate::groebner::{lift_kernel, GroebnerBasis, TaggedBasis};
use crate::hilbert::HilbertSeries;
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::ring::RingPresentation;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct IdealData {
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Polynomial>,
}

impl IdealData {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<IdealData> {
        for g in &gens {
            g.check_ring(&Polynomial::zero(ring))?;
            g.homogeneous_degree()?;
        }
        Ok(IdealData {
            ring: Arc::clone(ring),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> IdealData {
        IdealData {
            ring: Arc::clone(ring),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> IdealData {
        IdealData {
            ring: Arc::clone(ring),
            gens: vec![Polynomial::one(ring)],
        }
    }

    pub fn maximal(ring: &Arc<PolyRing>) -> IdealData {
        IdealData {
            ring: Arc::clone(ring),
            gens: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
        }
    }

    fn columns(&self) -> Vec<FreeElem> {
        self.gens.iter().map(|g| vec![g.clone()]).collect()
    }

    /// Reduced basis of the ideal in A = Q/(f) (generators plus f).
    pub fn gb(&self, rp: &RingPresentation) -> GroebnerBasis {
        GroebnerBasis::new(&self.ring, 1, &self.columns(), rp.modulus())
    }

    pub fn contains(&self, rp: &RingPresentation, p: &Polynomial) -> Result<bool> {
        self.gb(rp).contains(&vec![p.clone()])
    }

    /// Equality as ideals of A, decided by reduced-basis identity.
    pub fn equals(&self, rp: &RingPresentation, other: &IdealData) -> bool {
        let a = self.gb(rp);
        let b = other.gb(rp);
        a.elems == b.elems
    }

    pub fn is_unit(&self, rp: &RingPresentation) -> bool {
        let gb = self.gb(rp);
        gb.elems.len() == 1 && gb.elems[0][0] == Polynomial::one(&self.ring)
    }

    pub fn is_zero_in(&self, rp: &RingPresentation) -> bool {
        self.gens.iter().all(|g| rp.nf(g).is_zero())
    }

    /// Krull dimension of A/J; -1 for the unit ideal.
    pub fn krull_dim(&self, rp: &RingPresentation) -> i64 {
        self.hilbert_series(rp).dim()
    }

    pub fn hilbert_series(&self, rp: &RingPresentation) -> HilbertSeries {
        let gb = self.gb(rp);
        HilbertSeries::from_lead_terms(self.ring.nvars(), &[0], &gb.lead_terms())
    }

    /// Minimal generating set over A (greedy by degree; f-multiples drop out).
    pub fn minimal_gens(&self, rp: &RingPresentation) -> Vec<Polynomial> {
        let mut candidates: Vec<(i64, usize, Polynomial)> = self
            .gens
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let g = rp.nf(g);
                if g.is_zero() {
                    None
                } else {
                    Some((g.degree().unwrap(), i, g))
                }
            })
            .collect();
        candidates.sort_by_key(|(d, i, _)| (*d, *i));
        let mut accepted: Vec<Polynomial> = Vec::new();
        for (_, _, g) in candidates {
            let cols: Vec<FreeElem> = accepted.iter().map(|a| vec![a.clone()]).collect();
            let gb = GroebnerBasis::new(&self.ring, 1, &cols, rp.modulus());
            if !gb.contains(&vec![g.clone()]).unwrap() {
                accepted.push(g);
            }
        }
        accepted
    }

    pub fn min_num_gens(&self, rp: &RingPresentation) -> usize {
        self.minimal_gens(rp).len()
    }

    pub fn product(&self, rp: &RingPresentation, other: &IdealData) -> IdealData {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(rp.nf(&a.mul(b)));
            }
        }
        let gens = IdealData {
            ring: Arc::clone(&self.ring),
            gens,
        }
        .minimal_gens(rp);
        IdealData {
            ring: Arc::clone(&self.ring),
            gens,
        }
    }

    /// I^n with a minimal generating set; I^0 = (1).
    pub fn power(&self, rp: &RingPresentation, n: u32) -> IdealData {
        let mut acc = IdealData::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(rp, self);
        }
        acc
    }

    /// Colon ideal (self : p) in A.
    pub fn colon(&self, rp: &RingPresentation, p: &Polynomial) -> IdealData {
        // a with a*p in self: coefficient vectors from the lift kernel.
        let mut targets = self.columns();
        if let Some(f) = rp.modulus() {
            targets.extend(f.iter().map(|fi| vec![fi.clone()]));
        }
        let gens_in = vec![vec![p.clone()]];
        let coeffs = lift_kernel(&self.ring, 1, &gens_in, &targets);
        let gens: Vec<Polynomial> = coeffs.into_iter().map(|c| rp.nf(&c[0])).collect();
        let id = IdealData {
            ring: Arc::clone(&self.ring),
            gens,
        };
        IdealData {
            gens: id.minimal_gens(rp),
            ring: Arc::clone(&self.ring),
        }
    }

    /// Intersection of ideals of A.
    pub fn intersect(&self, rp: &RingPresentation, other: &IdealData) -> IdealData {
        // a with (a, a) in I + (f) (+) J + (f) inside Q^2.
        let mut targets: Vec<FreeElem> = Vec::new();
        let zero = Polynomial::zero(&self.ring);
        for g in self.gens.iter().chain(rp.regular_sequence.iter()) {
            targets.push(vec![g.clone(), zero.clone()]);
        }
        for g in other.gens.iter().chain(rp.regular_sequence.iter()) {
            targets.push(vec![zero.clone(), g.clone()]);
        }
        let one = Polynomial::one(&self.ring);
        let coeffs = lift_kernel(&self.ring, 2, &[vec![one.clone(), one]], &targets);
        let gens: Vec<Polynomial> = coeffs.into_iter().map(|c| rp.nf(&c[0])).collect();
        let id = IdealData {
            ring: Arc::clone(&self.ring),
            gens,
        };
        IdealData {
            gens: id.minimal_gens(rp),
            ring: Arc::clone(&self.ring),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Canonical printable generator list (reduced basis over A).
    pub fn canonical_strings(&self, rp: &RingPresentation) -> Vec<String> {
        self.gb(rp)
            .elems
            .iter()
            .map(|e| e[0].to_string())
            .collect()
    }
}

/// Express a polynomial as a combination of the given generators (mod
/// nothing); used for operator extraction.
pub fn express_in_ideal(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    p: &Polynomial,
) -> Result<Option<Vec<Polynomial>>> {
    let cols: Vec<FreeElem> = gens.iter().map(|g| vec![g.clone()]).collect();
    let tb = TaggedBasis::new(ring, 1, &cols);
    tb.express(&vec![p.clone()])
}

/// Minimal primes of a square-free-ed monomial ideal, as variable index
/// sets (minimal covers of the generator supports).
pub fn monomial_minimal_primes(nvars: usize, gens: &[Monomial]) -> Vec<Vec<usize>> {
    let supports: Vec<Vec<usize>> = gens
        .iter()
        .filter(|g| !g.is_one())
        .map(|g| {
            (0..nvars).filter(|&v| g.0[v] > 0).collect::<Vec<usize>>()
        })
        .collect();
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    fn covers(supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
        match supports.first() {
            None => vec![Vec::new()],
            Some(first) => {
                let mut out = Vec::new();
                for &v in first {
                    let rest: Vec<Vec<usize>> = supports[1..]
                        .iter()
                        .filter(|s| !s.contains(&v))
                        .cloned()
                        .collect();
                    for mut c in covers(&rest) {
                        c.push(v);
                        c.sort_unstable();
                        c.dedup();
                        out.push(c);
                    }
                }
                out
            }
        }
    }
    let mut all = covers(&supports);
    all.sort();
    all.dedup();
    // keep inclusion-minimal covers only
    let minimal: Vec<Vec<usize>> = all
        .iter()
        .filter(|c| {
            !all.iter()
                .any(|d| d.len() < c.len() && d.iter().all(|v| c.contains(v)))
        })
        .cloned()
        .collect();
    minimal
}

/// True when every generator is a monomial (after reduction to A-normal
/// form the check is syntactic).
pub fn is_monomial_ideal(gens: &[Polynomial]) -> bool {
    gens.iter().all(|g| g.terms.len() <= 1)
}

pub fn check_rank(v: &FreeElem, rank: usize) -> Result<()> {
    if v.len() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            got: v.len(),
        });
    }
    Ok(())
}

pub fn nonzero(v: &FreeElem) -> bool {
    !elem_is_zero(v)
}
