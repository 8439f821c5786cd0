//! A graded complete-intersection presentation A = Q/(f_1..f_c).

use crate::error::{Error, Result};
use crate::free::FreeElem;
use crate::groebner::GroebnerBasis;
use crate::hilbert::{numer_mul_one_minus_zd, HilbertSeries, Numerator};
use crate::poly::{PolyRing, Polynomial};
use num::{BigInt, One};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub ring: Arc<PolyRing>,
    pub regular_sequence: Vec<Polynomial>,
    f_gb: GroebnerBasis,
}

impl RingPresentation {
    pub fn new(ring: &Arc<PolyRing>, f: Vec<Polynomial>) -> Result<Arc<RingPresentation>> {
        for fi in &f {
            fi.check_ring(&Polynomial::zero(ring))?;
            if fi.is_zero() {
                return Err(Error::NotRegularSequence("zero entry".into()));
            }
            fi.homogeneous_degree()?;
        }
        let cols: Vec<FreeElem> = f.iter().map(|fi| vec![fi.clone()]).collect();
        let f_gb = GroebnerBasis::new(ring, 1, &cols, None);
        Ok(Arc::new(RingPresentation {
            ring: Arc::clone(ring),
            regular_sequence: f,
            f_gb,
        }))
    }

    /// The regular ring Q itself, with empty sequence.
    pub fn regular(ring: &Arc<PolyRing>) -> Arc<RingPresentation> {
        RingPresentation::new(ring, Vec::new()).expect("empty sequence is valid")
    }

    pub fn codim(&self) -> usize {
        self.regular_sequence.len()
    }

    /// Normal form of a Q-polynomial modulo (f): the canonical representative
    /// of its class in A.
    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        if self.regular_sequence.is_empty() {
            return p.clone();
        }
        self.f_gb.normal_form(&vec![p.clone()]).expect("rank 1")[0].clone()
    }

    pub fn nf_elem(&self, v: &FreeElem) -> FreeElem {
        v.iter().map(|p| self.nf(p)).collect()
    }

    pub fn modulus(&self) -> Option<&[Polynomial]> {
        if self.regular_sequence.is_empty() {
            None
        } else {
            Some(&self.regular_sequence)
        }
    }

    pub fn f_basis(&self) -> &GroebnerBasis {
        &self.f_gb
    }

    /// Koszul criterion via Hilbert series: f is a regular sequence iff the
    /// series of Q/(f) equals the series of Q times prod (1 - z^{deg f_j}).
    pub fn is_regular_sequence(&self) -> bool {
        let nvars = self.ring.nvars();
        let actual =
            HilbertSeries::from_lead_terms(nvars, &[0], &self.f_gb.lead_terms());
        let mut expected: Numerator = Numerator::new();
        expected.insert(0, BigInt::one());
        for fj in &self.regular_sequence {
            let d = fj.degree().expect("nonzero");
            expected = numer_mul_one_minus_zd(&expected, d);
        }
        actual.numer == expected
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::from_lead_terms(self.ring.nvars(), &[0], &self.f_gb.lead_terms())
    }
}
